from __future__ import annotations

import numpy as np
import pytest

from toplattice.groups import (
    direct_product,
    make_cyclic,
    make_dihedral,
    make_elementary_abelian,
    make_heisenberg,
    make_quaternion,
    make_symmetric,
)
from toplattice.lattices import lattice_from_leq


@pytest.fixture(scope="session")
def klein():
    return make_elementary_abelian(2, 2)


@pytest.fixture(scope="session")
def z6():
    return make_cyclic(6)


@pytest.fixture(scope="session")
def s3():
    return make_symmetric(3)


@pytest.fixture(scope="session")
def d4():
    return make_dihedral(4)


@pytest.fixture(scope="session")
def q8():
    return make_quaternion()


@pytest.fixture(scope="session")
def heis3():
    return make_heisenberg(3)


@pytest.fixture(scope="session")
def z2z4():
    return direct_product(make_cyclic(2), make_cyclic(4))


def _closed_leq(n: int, covers: list[tuple[int, int]]) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for i, j in covers:
        leq[i, j] = True
    for k in range(n):
        leq |= leq[:, k][:, None] & leq[k, :][None, :]
    return leq


@pytest.fixture(scope="session")
def pentagon():
    """N5: 0 bottom, 1 lone atom, 2 < 3 on the other side, 4 top."""
    return lattice_from_leq(_closed_leq(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]))


@pytest.fixture(scope="session")
def diamond():
    """M3: three incomparable atoms between bottom 0 and top 4."""
    return lattice_from_leq(_closed_leq(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


@pytest.fixture(scope="session")
def centered_hexagon():
    """S7: the smallest semimodular lattice that is not modular."""
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)]
    return lattice_from_leq(_closed_leq(7, covers))


@pytest.fixture(scope="session")
def boolean3():
    subs = [frozenset(s) for s in
            [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]]
    leq = np.array([[a <= b for b in subs] for a in subs], dtype=bool)
    return lattice_from_leq(leq, labels=subs)
