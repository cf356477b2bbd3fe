"""Dense GF(2) linear solving on int-bitmask rows."""

from __future__ import annotations


def solve(rows: list[int], rhs: list[int], ncols: int) -> tuple[int, list[int]] | None:
    """Solve A x = b over GF(2) by Gaussian elimination.

    ``rows[i]`` is the coefficient bitmask of equation i (bit j is the
    coefficient of x_j) and ``rhs[i]`` its right-hand bit.  Returns
    ``(particular, basis)`` where every solution is ``particular`` XORed with
    any subset of ``basis`` (solutions encoded as bitmasks), or None if the
    system is inconsistent.
    """
    aug = [(rows[i] << 1) | (rhs[i] & 1) for i in range(len(rows))]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in range(ncols):
        bit = 1 << (col + 1)
        piv = None
        for i in range(r, len(aug)):
            if aug[i] & bit:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(len(aug)):
            if i != r and (aug[i] & bit):
                aug[i] ^= aug[r]
        pivot_of_col[col] = r
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i] == 1:
            return None
    particular = 0
    for col, row in pivot_of_col.items():
        if aug[row] & 1:
            particular |= 1 << col
    basis = []
    for col in range(ncols):
        if col in pivot_of_col:
            continue
        vec = 1 << col
        for pcol, row in pivot_of_col.items():
            if aug[row] & (1 << (col + 1)):
                vec |= 1 << pcol
        basis.append(vec)
    return particular, basis


def solutions(rows: list[int], rhs: list[int], ncols: int, max_free: int = 20):
    """Iterate every solution bitmask of A x = b; empty if inconsistent.

    Refuses to enumerate solution spaces with more than ``max_free`` free
    variables.
    """
    res = solve(rows, rhs, ncols)
    if res is None:
        return
    particular, basis = res
    if len(basis) > max_free:
        raise ValueError(f"solution space too large: 2^{len(basis)} elements")
    for mask in range(1 << len(basis)):
        x = particular
        m = mask
        i = 0
        while m:
            if m & 1:
                x ^= basis[i]
            m >>= 1
            i += 1
        yield x
