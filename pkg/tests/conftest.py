import pytest

from kummer_kulikov.degeneration import DegenerationData
from kummer_kulikov.lattice import IntMatrix
from kummer_kulikov.monodromy import RationalOperator

I4 = RationalOperator.identity(4)


def elem(i, j, c=1):
    """4x4 elementary matrix c·E_ij."""
    return RationalOperator([[c if (r, s) == (i, j) else 0 for s in range(4)]
                             for r in range(4)])


def random_unimodular(rng, steps=6):
    """Product of integer shears; returns (g, g^{-1}) exactly."""
    g = I4
    ginv = I4
    for _ in range(steps):
        i, j = rng.sample(range(4), 2)
        c = rng.randint(-2, 2)
        g = g * (I4 + elem(i, j, c))
        ginv = (I4 + elem(i, j, -c)) * ginv
    return g, ginv


def random_unipotent(rng):
    n = RationalOperator([[rng.randint(-3, 3) if r < s else 0 for s in range(4)]
                          for r in range(4)])
    g, ginv = random_unimodular(rng)
    return g * (I4 + n) * ginv


def random_square_zero(rng):
    # Support on (0,1), (0,3), (2,3) maps im into ker, so the square is 0.
    m = elem(0, 1, rng.randint(-3, 3)) + elem(0, 3, rng.randint(-3, 3)) \
        + elem(2, 3, rng.randint(-3, 3))
    g, ginv = random_unimodular(rng)
    return g * m * ginv


def make_data(rank, b_rows, phi_rows=None, a_basis=None):
    """Degeneration datum with phi defaulting to the identity and a_basis to
    the H-invariant choice M_ii/2."""
    if phi_rows is None:
        phi_rows = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    phi = IntMatrix(phi_rows, shape=(rank, rank))
    b = IntMatrix(b_rows, shape=(rank, rank))
    if a_basis is None:
        m = b.mul(phi).entries
        assert all(m[i][i] % 2 == 0 for i in range(rank))
        a_basis = tuple(m[i][i] // 2 for i in range(rank))
    return DegenerationData(rank=rank, phi=phi, b=b, a_basis=tuple(a_basis))


@pytest.fixture
def data_2I2():
    return make_data(2, [[2, 0], [0, 2]])


@pytest.fixture
def data_b4():
    return make_data(1, [[4]])


@pytest.fixture
def data_rank0():
    return make_data(0, [])
