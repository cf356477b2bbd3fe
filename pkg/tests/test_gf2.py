"""GF(2) solver sanity checks against exhaustive enumeration."""

import random

from envchain import gf2


def _brute(rows, rhs, ncols):
    out = set()
    for x in range(1 << ncols):
        if all(bin(rows[i] & x).count("1") % 2 == rhs[i] for i in range(len(rows))):
            out.add(x)
    return out


def test_small_systems_match_enumeration():
    rng = random.Random(7)
    for _ in range(200):
        ncols = rng.randint(1, 8)
        nrows = rng.randint(0, 10)
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        rhs = [rng.getrandbits(1) for _ in range(nrows)]
        expected = _brute(rows, rhs, ncols)
        got = set(gf2.solutions(rows, rhs, ncols))
        assert got == expected


def test_inconsistent_system():
    assert gf2.solve([0b1, 0b1], [0, 1], 1) is None
    assert list(gf2.solutions([0b1, 0b1], [0, 1], 1)) == []


def test_unique_solution():
    # x0 = 1, x1 = 0
    res = gf2.solve([0b01, 0b10], [1, 0], 2)
    assert res is not None
    particular, basis = res
    assert particular == 0b01 and basis == []
