"""Certified semistable fans in height-1 slice form.

A smooth Γ-admissible semistable cone decomposition of the cone over
X^v_R is stored as its height-1 slice: a Y-periodic unimodular
triangulation of R^t whose vertex set is X^v ≅ Z^t.  The translation
lattice is Λ_b, spanned by the functionals b(e_i, -) (the rows of b).
Cones are recovered as cones over the simplices placed at height 1; the
apex ray sits over the vertex 0.

The certification checks are windowed: the configuration repeats modulo
Λ_b, so scanning translates with ‖λ‖_∞ up to an internally computed safe
bound is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .degeneration import DegenerationData, base_change
from .errors import (
    SchemaError,
    SingularPairing,
    UncertifiedFan,
    UnsupportedRank,
    WindowTooSmall,
)
from .lattice import IntMatrix, smith_normal_form, unimodular_inverse

Vector = tuple[int, ...]


def _solve_exact(a: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a small square system exactly; raises ValueError if singular."""
    n = len(rhs)
    m = [list(row) + [rhs[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


class LatticeSimplex:
    """A lattice simplex: 1 to t+1 distinct, affinely independent points of Z^t."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Sequence[int]], _checked: bool = False):
        verts = tuple(sorted(tuple(int(x) for x in v) for v in vertices))
        object.__setattr__(self, "vertices", verts)
        if _checked:
            return
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise ValueError(f"repeated vertices: {verts}")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("vertices of mixed dimension")
        k = len(verts) - 1
        if k > 0:
            diffs = IntMatrix([[a - b for a, b in zip(v, verts[0])] for v in verts[1:]],
                              shape=(k, len(verts[0])))
            d, _, _ = smith_normal_form(diffs)
            if sum(1 for x in d.diagonal_entries() if x != 0) != k:
                raise ValueError(f"vertices are affinely dependent: {verts}")

    def __setattr__(self, name, value):
        raise AttributeError("LatticeSimplex is immutable")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def translate(self, shift: Sequence[int]) -> "LatticeSimplex":
        return LatticeSimplex([tuple(a + s for a, s in zip(v, shift)) for v in self.vertices],
                              _checked=True)

    def negate(self) -> "LatticeSimplex":
        return LatticeSimplex([tuple(-a for a in v) for v in self.vertices], _checked=True)

    def faces(self) -> list["LatticeSimplex"]:
        """Codimension-1 faces, in vertex-deletion order."""
        if self.dim == 0:
            return []
        return [LatticeSimplex(self.vertices[:i] + self.vertices[i + 1:], _checked=True)
                for i in range(len(self.vertices))]

    def diameter_inf(self) -> int:
        vs = self.vertices
        return max((abs(a - b) for v in vs for w in vs for a, b in zip(v, w)), default=0)

    def max_coord(self) -> int:
        return max((abs(x) for v in self.vertices for x in v), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeSimplex) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticeSimplex({list(self.vertices)!r})"


class _CosetMap:
    """Canonical representatives of Z^t modulo the row span of a lattice matrix.

    lattice=None means the full lattice Z^t (every point is equivalent to 0).
    """

    def __init__(self, rank: int, lattice: IntMatrix | None):
        self.rank = rank
        if lattice is None:
            self.diag = (1,) * rank
            self.u = IntMatrix.identity(rank)
            self.uinv = IntMatrix.identity(rank)
            self.index = 1
            return
        if lattice.rows != rank or lattice.cols != rank:
            raise SchemaError(f"lattice must be {rank}x{rank}")
        if rank > 0 and lattice.det() == 0:
            raise SingularPairing("translation lattice is degenerate (det = 0)")
        d, u, _ = smith_normal_form(lattice.transpose())
        self.diag = d.diagonal_entries()
        self.u = u
        self.uinv = unimodular_inverse(u)
        idx = 1
        for x in self.diag:
            idx *= x
        self.index = idx

    def canonical_point(self, x: Vector) -> Vector:
        z = self.u.matvec(x)
        r = tuple(zi % di for zi, di in zip(z, self.diag))
        return self.uinv.matvec(r)

    def coset_representatives(self) -> list[Vector]:
        return [self.uinv.matvec(r) for r in product(*(range(d) for d in self.diag))]


class PeriodicTriangulation:
    """Finite set of simplex classes modulo the translation lattice Λ_b.

    Representatives are canonical: the lex-least vertex of each simplex is
    moved to its canonical coset representative.  Classes of every dimension
    0..t are stored, closed under faces.  ``lattice=None`` denotes the
    unit-cell form (periodicity lattice Z^t itself), which is how the
    standard triangulations are built before a pairing is attached.
    """

    def __init__(self, rank: int, simplices: Iterable[LatticeSimplex],
                 lattice: IntMatrix | None):
        self.rank = rank
        self.lattice = lattice
        self._cosets = _CosetMap(rank, lattice)
        canon = {self.canonical_simplex(s) for s in simplices}
        queue = list(canon)
        while queue:
            s = queue.pop()
            for f in s.faces():
                cf = self.canonical_simplex(f)
                if cf not in canon:
                    canon.add(cf)
                    queue.append(cf)
        self.simplices: tuple[LatticeSimplex, ...] = tuple(
            sorted(canon, key=lambda s: (s.dim, s.vertices)))
        self._by_dim: dict[int, tuple[LatticeSimplex, ...]] = {
            k: tuple(s for s in self.simplices if s.dim == k) for k in range(rank + 1)}
        self._index = frozenset(self.simplices)
        self.certificates: dict[str, bool] = {}

    def canonical_point(self, x: Vector) -> Vector:
        return self._cosets.canonical_point(x)

    def canonical_shift(self, s: LatticeSimplex) -> Vector:
        anchor = s.vertices[0]
        target = self._cosets.canonical_point(anchor)
        return tuple(t - a for t, a in zip(target, anchor))

    def canonical_simplex(self, s: LatticeSimplex) -> LatticeSimplex:
        return s.translate(self.canonical_shift(s))

    def contains_class(self, s: LatticeSimplex) -> bool:
        return self.canonical_simplex(s) in self._index

    def by_dim(self, k: int) -> tuple[LatticeSimplex, ...]:
        return self._by_dim.get(k, ())

    def class_index(self) -> int:
        return self._cosets.index

    def with_lattice(self, lattice: IntMatrix) -> "PeriodicTriangulation":
        """Develop a unit-cell triangulation over the cosets of Z^t modulo Λ_b."""
        if self.lattice is not None:
            raise ValueError("triangulation already has a lattice attached")
        cosets = _CosetMap(self.rank, lattice).coset_representatives()
        developed = [s.translate(g) for s in self.simplices for g in cosets]
        t = PeriodicTriangulation(self.rank, developed, lattice)
        expected = len(self.simplices) * len(cosets)
        if len(t.simplices) != expected:
            raise ValueError("unit-cell classes collapsed while developing")
        return t

    def max_diameter(self) -> int:
        return max((s.diameter_inf() for s in self.simplices), default=0)

    def max_vertex_coord(self) -> int:
        return max((s.max_coord() for s in self.simplices), default=0)

    def lattice_max(self) -> int:
        if self.lattice is None:
            return 1
        return max((abs(x) for row in self.lattice.entries for x in row), default=0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PeriodicTriangulation) and self.rank == other.rank
                and self.simplices == other.simplices and self.lattice == other.lattice)

    def __repr__(self) -> str:
        return (f"PeriodicTriangulation(rank={self.rank}, "
                f"classes={[len(self.by_dim(k)) for k in range(self.rank + 1)]})")


def standard_triangulation(t: int) -> PeriodicTriangulation:
    """The uniform triangulation of R^t with vertex set Z^t, in unit-cell form.

    t = 0: the single vertex.  t = 1: unit intervals.  t = 2: unit squares
    each cut by the diagonal of direction (1, 1).  The result carries no
    lattice; attach one with ``with_lattice``.
    """
    if t == 0:
        reps = [LatticeSimplex([()])]
    elif t == 1:
        reps = [LatticeSimplex([(0,)]), LatticeSimplex([(0,), (1,)])]
    elif t == 2:
        reps = [
            LatticeSimplex([(0, 0)]),
            LatticeSimplex([(0, 0), (1, 0)]),
            LatticeSimplex([(0, 0), (0, 1)]),
            LatticeSimplex([(0, 0), (1, 1)]),
            LatticeSimplex([(0, 0), (1, 0), (1, 1)]),
            LatticeSimplex([(0, 0), (0, 1), (1, 1)]),
        ]
    else:
        raise UnsupportedRank(f"toric rank {t} does not occur for abelian surfaces")
    return PeriodicTriangulation(t, reps, None)


def is_unimodular(s: LatticeSimplex) -> bool:
    """True iff the vectors (v, 1), v a vertex, extend to a basis of Z^(t+1)."""
    rows = [v + (1,) for v in s.vertices]
    d, _, _ = smith_normal_form(IntMatrix(rows, shape=(len(rows), len(rows[0]))))
    diag = d.diagonal_entries()
    return len(diag) == len(rows) and all(x == 1 for x in diag)


def check_semistable(t: PeriodicTriangulation) -> bool:
    """All rays of the developed fan are of the form (l, 1) and the apex ray
    over 0 belongs to the fan: every vertex is a lattice point (structural)
    and the class of the vertex 0 is present."""
    if not t.simplices:
        return False
    zero = LatticeSimplex([(0,) * t.rank])
    return t.contains_class(zero)


def safe_window(t: PeriodicTriangulation) -> int:
    """Window radius beyond which translates cannot meet a representative."""
    return t.max_diameter() + t.lattice_max() + 1


def _h_free_safe_window(t: PeriodicTriangulation) -> int:
    # The reflection -S = S + λ forces λ = -2·centroid(S), bounded by twice
    # the largest vertex coordinate; take the max with the generic bound.
    return max(safe_window(t), 2 * t.max_vertex_coord() + 1)


def required_window(t: PeriodicTriangulation) -> int:
    """Smallest window accepted by every check without --unsafe."""
    return max(safe_window(t), _h_free_safe_window(t))


def _resolve_window(t: PeriodicTriangulation, window: int | None, bound: int,
                    allow_unsafe: bool) -> int:
    if window is None:
        return bound
    if window < bound and not allow_unsafe:
        raise WindowTooSmall(f"window {window} is below the safe bound {bound}")
    return window


def _lattice_translates(t: PeriodicTriangulation, window: int) -> list[Vector]:
    """Nonzero λ in the translation lattice with ‖λ‖_∞ <= window."""
    if t.rank == 0 or t.lattice is None:
        return []
    w = t.lattice
    n = t.rank
    inv_cols = []
    for i in range(n):
        rhs = [Fraction(1 if j == i else 0) for j in range(n)]
        a = [[Fraction(w.entries[j][k]) for j in range(n)] for k in range(n)]  # a = W^T
        inv_cols.append(_solve_exact(a, rhs))  # column i of (W^T)^{-1}
    # y = (W^T)^{-1} λ, so ‖y‖_∞ <= max-row-abs-sum of (W^T)^{-1} times ‖λ‖_∞.
    norm = max(sum(abs(inv_cols[c][r]) for c in range(n)) for r in range(n))
    ybound = int(norm * window) + 1
    out = []
    for y in product(range(-ybound, ybound + 1), repeat=n):
        if all(v == 0 for v in y):
            continue
        lam = tuple(sum(y[i] * w.entries[i][j] for i in range(n)) for j in range(n))
        if max(abs(x) for x in lam) <= window:
            out.append(lam)
    return sorted(set(out))


def _lattice_coefficients(t: PeriodicTriangulation, lam: Vector) -> Vector:
    """Express λ in the row basis of the lattice (the Y-coordinates)."""
    w = t.lattice
    n = t.rank
    a = [[Fraction(w.entries[j][k]) for j in range(n)] for k in range(n)]
    sol = _solve_exact(a, [Fraction(x) for x in lam])
    if any(x.denominator != 1 for x in sol):
        raise ValueError(f"{lam} is not in the translation lattice")
    return tuple(int(x) for x in sol)


# -- convex hull intersection in rank <= 2 -----------------------------------

def _orient(a: Vector, b: Vector, c: Vector) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _point_in_hull(p: Vector, s: LatticeSimplex) -> bool:
    vs = s.vertices
    if len(vs) == 1:
        return p == vs[0]
    if len(p) == 1:
        lo, hi = vs[0][0], vs[-1][0]
        return lo <= p[0] <= hi
    if len(vs) == 2:
        a, b = vs
        if _orient(a, b, p) != 0:
            return False
        return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
    a, b, c = vs
    d1, d2, d3 = _orient(a, b, p), _orient(b, c, p), _orient(c, a, p)
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def _on_segment(a: Vector, b: Vector, p: Vector) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect(p1: Vector, p2: Vector, q1: Vector, q2: Vector) -> bool:
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _edges(s: LatticeSimplex) -> list[tuple[Vector, Vector]]:
    vs = s.vertices
    return [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def hulls_intersect(s1: LatticeSimplex, s2: LatticeSimplex) -> bool:
    """Exact test for whether the convex hulls share a point (rank <= 2)."""
    t = len(s1.vertices[0])
    if t == 0:
        return True
    if t == 1:
        lo1, hi1 = s1.vertices[0][0], s1.vertices[-1][0]
        lo2, hi2 = s2.vertices[0][0], s2.vertices[-1][0]
        return max(lo1, lo2) <= min(hi1, hi2)
    if any(_point_in_hull(v, s2) for v in s1.vertices):
        return True
    if any(_point_in_hull(v, s1) for v in s2.vertices):
        return True
    return any(_segments_intersect(a, b, c, d)
               for a, b in _edges(s1) for c, d in _edges(s2))


# -- the certification checks -------------------------------------------------

def check_property_d(t: PeriodicTriangulation, window: int | None = None, *,
                     allow_unsafe: bool = False) -> list[tuple[Vector, LatticeSimplex]]:
    """Violations of the disjointness condition: nonzero λ = b(y,-) in the
    window with hull(S) ∩ hull(S + λ) nonempty.  Empty result = certified.

    A violating translate satisfies ‖λ‖_∞ <= diameter(S), so the default
    window (diameter + lattice bound + 1) is exhaustive.
    """
    if t.lattice is None:
        raise ValueError("property (d) needs a translation lattice attached")
    w = _resolve_window(t, window, safe_window(t), allow_unsafe)
    out = []
    translates = _lattice_translates(t, w)
    for s in t.simplices:
        for lam in translates:
            if hulls_intersect(s, s.translate(lam)):
                out.append((lam, s))
    return out


def check_h_freeness(t: PeriodicTriangulation, d: DegenerationData | None = None,
                     window: int | None = None, *,
                     allow_unsafe: bool = False) -> list[tuple[Vector, LatticeSimplex]]:
    """Fixed classes of the inversion: pairs (y, S) with dim S >= 1 and
    -S = S + b(y,-).  Empty for even pairings; the odd control b = (3)
    produces -[1,2] = [1,2] - 3.

    y is reported in coordinates relative to the lattice's row basis, which
    are the Y-coordinates whenever the lattice is the row lattice of b.
    """
    if t.lattice is None:
        raise ValueError("H-freeness needs a translation lattice attached")
    w = _resolve_window(t, window, _h_free_safe_window(t), allow_unsafe)
    out = []
    translates = _lattice_translates(t, w)
    for s in t.simplices:
        if s.dim < 1:
            continue
        neg = set(s.negate().vertices)
        for lam in translates:
            if {tuple(a + b for a, b in zip(v, lam)) for v in s.vertices} == neg:
                out.append((_lattice_coefficients(t, lam), s))
    return out


def vertices_complete(t: PeriodicTriangulation) -> bool:
    """Developed vertex set is all of X^v: one vertex class per coset."""
    return len(t.by_dim(0)) == t.class_index()


def check_gamma_admissible(t: PeriodicTriangulation, y_radius: int = 3) -> bool:
    """The developed fan is stable under S_(y,h) for ‖y‖_∞ <= y_radius, h = ±1."""
    if t.lattice is None:
        raise ValueError("Γ-admissibility needs a translation lattice attached")
    n = t.rank
    w = t.lattice
    for y in product(range(-y_radius, y_radius + 1), repeat=n):
        lam = tuple(sum(y[i] * w.entries[i][j] for i in range(n)) for j in range(n))
        for h in (1, -1):
            for s in t.simplices:
                image = (s if h == 1 else s.negate()).translate(lam)
                if not t.contains_class(image):
                    return False
    return True


# -- polarization surrogate ----------------------------------------------------

@dataclass(frozen=True)
class PolarizationForm:
    """Quadratic form Q(l) = l^T·gram·l used as PL vertex values.

    gram is symmetric with integer diagonal and half-integral off-diagonal
    entries, so Q takes integer values on Z^t.
    """

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")
                if (2 * g[i][j]).denominator != 1:
                    raise ValueError("off-diagonal entries must be half-integral")
            if g[i][i].denominator != 1:
                raise ValueError("diagonal entries must be integral")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def value(self, l: Sequence[int]) -> int:
        total = Fraction(0)
        for i in range(self.rank):
            for j in range(self.rank):
                total += self.gram[i][j] * l[i] * l[j]
        assert total.denominator == 1
        return int(total)

    def is_positive_definite(self) -> bool:
        n = self.rank
        for k in range(1, n + 1):
            sub = [row[:k] for row in self.gram[:k]]
            if _fraction_det(sub) <= 0:
                return False
        return True


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def default_polarization_form(t: int) -> PolarizationForm:
    """Strictly convex form compatible with the standard triangulation.

    For t = 2 this is Q(m, n) = m² + n² - mn, whose Delaunay subdivision is
    exactly the (1,1)-diagonal cut of the unit squares.
    """
    if t == 0:
        return PolarizationForm(())
    if t == 1:
        return PolarizationForm(((Fraction(1),),))
    if t == 2:
        h = Fraction(-1, 2)
        return PolarizationForm(((Fraction(1), h), (h, Fraction(1))))
    raise UnsupportedRank(f"toric rank {t} does not occur for abelian surfaces")


def _wall_neighbors(t: PeriodicTriangulation):
    """For each facet of each top-dimensional representative, the developed
    simplex on the other side.  Yields (top, facet, neighbor) or
    (top, facet, None) when the wall is not interior."""
    top = t.by_dim(t.rank)
    incidence: dict[tuple, list[tuple[LatticeSimplex, Vector]]] = {}
    for s in top:
        for f in s.faces():
            shift = t.canonical_shift(f)
            key = f.translate(shift).vertices
            incidence.setdefault(key, []).append((s, shift))
    for s in top:
        for f in s.faces():
            shift = t.canonical_shift(f)
            key = f.translate(shift).vertices
            neighbors = []
            for other, other_shift in incidence.get(key, []):
                cand = other.translate(tuple(a - b for a, b in zip(other_shift, shift)))
                if cand != s:
                    neighbors.append(cand)
            yield s, f, (neighbors[0] if len(neighbors) == 1 else None)


def _polarization_margins(t: PeriodicTriangulation,
                          form: PolarizationForm) -> list[Fraction] | None:
    """Convexity margins across the interior walls; None if a wall has no
    unique neighbor (not a proper periodic triangulation)."""
    if t.rank == 0:
        return []
    margins = []
    for s, f, neighbor in _wall_neighbors(t):
        if neighbor is None:
            return None
        w = next(v for v in neighbor.vertices if v not in set(f.vertices))
        # Affine interpolation of Q over the vertices of s, evaluated at w.
        a = [[Fraction(1)] + [Fraction(x) for x in v] for v in s.vertices]
        rhs = [Fraction(form.value(v)) for v in s.vertices]
        coeffs = _solve_exact(a, rhs)
        affine_at_w = coeffs[0] + sum(c * x for c, x in zip(coeffs[1:], w))
        margins.append(Fraction(form.value(w)) - affine_at_w)
    return margins


def check_polarization(t: PeriodicTriangulation, form: PolarizationForm,
                       window: int | None = None) -> bool:
    """Surrogate for the existence of a Γ-admissible polarization function:
    the PL interpolation of Q over the triangulation is strictly convex
    across every interior wall.  Central symmetry Q(-l) = Q(l) and the
    affine-linearity of Q(l + λ) - Q(l) hold for every quadratic Q.
    """
    if not (t.certificates.get("semistable") and t.certificates.get("unimodular")):
        raise UncertifiedFan(
            "polarization check requires semistable + unimodular certificates")
    del window  # wall enumeration is class-based, hence already exhaustive
    return _polarization_check(t, form)


def _polarization_check(t: PeriodicTriangulation, form: PolarizationForm) -> bool:
    if form.rank != t.rank:
        return False
    if t.rank > 0 and not form.is_positive_definite():
        return False
    margins = _polarization_margins(t, form)
    return margins is not None and all(m > 0 for m in margins)


# -- certification and scaling --------------------------------------------------

def certify(t: PeriodicTriangulation, d: DegenerationData | None = None,
            form: PolarizationForm | None = None,
            window: int | None = None, allow_unsafe: bool = False) -> dict[str, bool]:
    """Run every check and attach the certificate dict to the triangulation."""
    certs = {
        "semistable": check_semistable(t),
        "unimodular": all(is_unimodular(s) for s in t.simplices),
        "property_d": not check_property_d(t, window, allow_unsafe=allow_unsafe),
        "h_free": not check_h_freeness(t, d, window, allow_unsafe=allow_unsafe),
        "vertices_complete": vertices_complete(t),
    }
    if certs["semistable"] and certs["unimodular"]:
        certs["polarization"] = _polarization_check(
            t, form if form is not None else default_polarization_form(t.rank))
    else:
        certs["polarization"] = False
    t.certificates = dict(certs)
    return certs


def auto_scale(d: DegenerationData) -> tuple[int, PeriodicTriangulation]:
    """Smallest base-change index ν for which the standard triangulation with
    lattice Λ_(ν·b) passes all four fan checks; the returned triangulation is
    certified for base_change(d, ν).

    Terminates: scaling spreads Λ beyond the fixed simplex diameter (so
    property (d) holds) and even ν makes ν·b even (so H-freeness holds).
    """
    t = d.rank
    unit = standard_triangulation(t)
    nu = 1
    while True:
        scaled = base_change(d, nu)
        tri = unit.with_lattice(scaled.b)
        certs = certify(tri, scaled)
        if all(certs[k] for k in ("semistable", "unimodular", "property_d", "h_free")):
            return nu, tri
        nu += 1


# -- JSON documents --------------------------------------------------------------
#
# Fan document: {"rank": int, "lattice": [[int]], "simplices": [[[int]]]}
# auto_scale result: {"nu": int, "fan": <fan document>, "certificates": {...}}


def fan_to_json(t: PeriodicTriangulation) -> dict:
    if t.lattice is None:
        raise ValueError("cannot serialize a triangulation without a lattice")
    return {
        "rank": t.rank,
        "lattice": [list(row) for row in t.lattice.entries],
        "simplices": [[list(v) for v in s.vertices] for s in t.simplices],
    }


def fan_from_json(doc: Mapping) -> PeriodicTriangulation:
    if not isinstance(doc, Mapping):
        raise SchemaError("fan document must be a JSON object")
    rank = doc.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SchemaError("field 'rank' must be a nonnegative integer")
    raw_lattice = doc.get("lattice")
    if (not isinstance(raw_lattice, list) or len(raw_lattice) != rank
            or any(not isinstance(r, list) or len(r) != rank for r in raw_lattice)
            or any(not isinstance(x, int) or isinstance(x, bool)
                   for r in raw_lattice for x in r)):
        raise SchemaError(f"field 'lattice' must be a {rank}x{rank} integer matrix")
    raw_simplices = doc.get("simplices")
    if not isinstance(raw_simplices, list):
        raise SchemaError("field 'simplices' must be a list of simplices")
    simplices = []
    for raw in raw_simplices:
        if (not isinstance(raw, list) or not raw
                or any(not isinstance(v, list) or len(v) != rank for v in raw)
                or any(not isinstance(x, int) or isinstance(x, bool) for v in raw for x in v)):
            raise SchemaError("each simplex must be a nonempty list of rank-length "
                              "integer vectors")
        try:
            simplices.append(LatticeSimplex(raw))
        except ValueError as exc:
            raise SchemaError(f"bad simplex {raw}: {exc}") from exc
    try:
        return PeriodicTriangulation(rank, simplices, IntMatrix(raw_lattice, shape=(rank, rank)))
    except (ValueError, SingularPairing) as exc:
        raise SchemaError(str(exc)) from exc
