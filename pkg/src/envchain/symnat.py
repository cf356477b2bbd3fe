"""Symbolic model of a block-permutation subgroup of Sym(N).

Points pair into blocks {2x, 2x+1}.  Every element handled here is a product

    B(b) * P(sigma) * f^m          (right factor acts first)

where B(b) swaps within block x exactly when the bit function b(x) is 1,
P(sigma) rigidly permutes finitely many blocks, and f is the rigid block
permutation along the index map `f_map` (even indices step forward, odd ones
step backward, 1 wraps to 0), whose powers shift along the single bi-infinite
orbit ..., 5, 3, 1, 0, 2, 4, ...

Bit functions are eventually periodic and always kept in canonical form
(minimal prefix, then minimal period), so equality of elements is decidable
and exact.  The ascending chain of finite bit-function groups computed by
`iterated_centralizer_model` consists of the centralizer-chain levels of the
subgroup generated by the finite block swaps together with f; each level is
cut out of the previous one by a GF(2) linear system over one period block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _iterproduct
from typing import Callable, Iterable

from . import gf2
from .perm import Permutation

# --- the block index map ----------------------------------------------------


def f_map(x: int) -> int:
    """Even x -> x+2; odd x -> x-2, except 1 -> 0."""
    if x % 2 == 0:
        return x + 2
    return 0 if x == 1 else x - 2


def f_inv(y: int) -> int:
    if y == 0:
        return 1
    return y - 2 if y % 2 == 0 else y + 2


def f_pow(x: int, m: int) -> int:
    """m-fold iterate of f_map (negative m iterates the inverse)."""
    step = f_map if m >= 0 else f_inv
    for _ in range(abs(m)):
        x = step(x)
    return x


# --- eventually periodic bit functions ---------------------------------------


class BitFn:
    """An eventually periodic function N -> {0, 1} in canonical form.

    Stored as a finite prefix plus one repeating block; the constructor
    minimizes the period and then the prefix, so two instances are equal
    exactly when they agree pointwise.
    """

    __slots__ = ("prefix", "block")

    def __init__(self, prefix: Iterable[int] = (), block: Iterable[int] = (0,)):
        pre = [int(b) for b in prefix]
        blk = [int(b) for b in block]
        if not blk:
            raise ValueError("period block must be nonempty")
        if any(b not in (0, 1) for b in pre + blk):
            raise ValueError("bits must be 0 or 1")
        p = len(blk)
        for d in range(1, p + 1):
            if p % d == 0 and all(blk[i] == blk[i % d] for i in range(p)):
                blk = blk[:d]
                break
        while pre and pre[-1] == blk[-1]:
            blk.insert(0, blk.pop())
            pre.pop()
        object.__setattr__(self, "prefix", tuple(pre))
        object.__setattr__(self, "block", tuple(blk))

    def __setattr__(self, name, value):
        raise AttributeError("BitFn is immutable")

    @property
    def period(self) -> int:
        return len(self.block)

    @property
    def is_zero(self) -> bool:
        return not self.prefix and self.block == (0,)

    @property
    def pure_periodic(self) -> bool:
        return not self.prefix

    def __call__(self, x: int) -> int:
        if x < len(self.prefix):
            return self.prefix[x]
        return self.block[(x - len(self.prefix)) % len(self.block)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitFn)
            and self.prefix == other.prefix
            and self.block == other.block
        )

    def __hash__(self) -> int:
        return hash((self.prefix, self.block))

    def sort_key(self) -> tuple:
        return (len(self.prefix), self.prefix, len(self.block), self.block)

    def __lt__(self, other: "BitFn") -> bool:
        return self.sort_key() < other.sort_key()

    def __xor__(self, other: "BitFn") -> "BitFn":
        pre = max(len(self.prefix), len(other.prefix))
        per = math.lcm(self.period, other.period)
        return BitFn.from_fn(lambda x: self(x) ^ other(x), pre, per, check=False)

    def to_text(self) -> str:
        return "".join(map(str, self.prefix)) + "|" + "".join(map(str, self.block))

    def __repr__(self) -> str:
        return f"BitFn({self.to_text()!r})"

    @classmethod
    def from_text(cls, text: str) -> "BitFn":
        if text.count("|") != 1:
            raise ValueError(f"expected 'prefix|block', got {text!r}")
        pre, blk = text.split("|")
        if not blk:
            raise ValueError("period block must be nonempty")
        if not set(pre + blk) <= {"0", "1"}:
            raise ValueError(f"bits must be 0 or 1 in {text!r}")
        return cls(map(int, pre), map(int, blk))

    @classmethod
    def zero(cls) -> "BitFn":
        return cls((), (0,))

    @classmethod
    def ones(cls) -> "BitFn":
        return cls((), (1,))

    @classmethod
    def from_pattern(cls, bits: Iterable[int]) -> "BitFn":
        """Purely periodic function repeating `bits`."""
        return cls((), tuple(bits))

    @classmethod
    def from_fn(cls, fn: Callable[[int], int], prefix_len: int, period: int, check: bool = True) -> "BitFn":
        """Sample an eventually periodic function exactly.

        The caller asserts `fn` is periodic with period `period` from
        `prefix_len` on.  With `check`, the claim is re-verified on a window
        past the sampled one and a violation aborts loudly: a non-eventually-
        periodic value can only come from an internal bug.
        """
        out = cls(
            (fn(x) for x in range(prefix_len)),
            (fn(prefix_len + i) for i in range(period)),
        )
        if check:
            for x in range(prefix_len, prefix_len + 2 * period):
                if fn(x) != out(x):
                    raise RuntimeError(
                        f"function is not ({prefix_len}, {period}) eventually periodic at x={x}"
                    )
        return out


def delta(j: BitFn) -> BitFn:
    """x -> j(x) XOR j(f_map(x)); the bit-level form of commutation with f."""
    pre = len(j.prefix) + 2
    per = math.lcm(j.period, 2)
    return BitFn.from_fn(lambda x: j(x) ^ j(f_map(x)), pre, per)


# --- finite-support block permutations ----------------------------------------


class BlockPerm:
    """A permutation of the block indices N moving only finitely many."""

    __slots__ = ("_map",)

    def __init__(self, mapping: dict[int, int] | None = None):
        m = {int(x): int(y) for x, y in (mapping or {}).items() if x != y}
        if any(x < 0 or y < 0 for x, y in m.items()):
            raise ValueError("block indices must be naturals")
        if set(m) != set(m.values()):
            raise ValueError(f"mapping {m!r} is not a bijection of its support")
        object.__setattr__(self, "_map", m)

    def __setattr__(self, name, value):
        raise AttributeError("BlockPerm is immutable")

    @classmethod
    def identity(cls) -> "BlockPerm":
        return cls()

    @classmethod
    def swap(cls, a: int, b: int) -> "BlockPerm":
        return cls({a: b, b: a})

    def __call__(self, x: int) -> int:
        return self._map.get(x, x)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._map)

    @property
    def is_identity(self) -> bool:
        return not self._map

    def inverse(self) -> "BlockPerm":
        return BlockPerm({y: x for x, y in self._map.items()})

    def __mul__(self, other: "BlockPerm") -> "BlockPerm":
        """self after other:  (self * other)(x) == self(other(x))."""
        keys = set(self._map) | set(other._map)
        return BlockPerm({x: self(other(x)) for x in keys})

    def conj_by_fpow(self, m: int) -> "BlockPerm":
        """The map x -> f^m(self(f^-m(x))), i.e. this permutation shifted along f."""
        return BlockPerm({f_pow(x, m): f_pow(y, m) for x, y in self._map.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockPerm) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def cycles_text(self) -> str:
        if not self._map:
            return "()"
        done = set()
        parts = []
        for start in sorted(self._map):
            if start in done:
                continue
            cyc = [start]
            done.add(start)
            x = self._map[start]
            while x != start:
                cyc.append(x)
                done.add(x)
                x = self._map[x]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BlockPerm({self.cycles_text()!r})"


# --- model elements in normal form --------------------------------------------


@dataclass(frozen=True)
class SymElem:
    """B(bits) * P(sigma) * f^power, in unique normal form."""

    bits: BitFn
    sigma: BlockPerm
    power: int

    @classmethod
    def identity(cls) -> "SymElem":
        return cls(BitFn.zero(), BlockPerm.identity(), 0)

    @classmethod
    def from_bits(cls, b: BitFn) -> "SymElem":
        return cls(b, BlockPerm.identity(), 0)

    @classmethod
    def from_blocks(cls, sigma: BlockPerm) -> "SymElem":
        return cls(BitFn.zero(), sigma, 0)

    @classmethod
    def f_power(cls, m: int) -> "SymElem":
        return cls(BitFn.zero(), BlockPerm.identity(), m)

    @property
    def is_identity(self) -> bool:
        return self.bits.is_zero and self.sigma.is_identity and self.power == 0

    def __mul__(self, other: "SymElem") -> "SymElem":
        return sym_mul(self, other)

    def to_text(self) -> str:
        return f"B({self.bits.to_text()}) P({self.sigma.cycles_text()}) F^{self.power}"

    def __repr__(self) -> str:
        return f"SymElem({self.to_text()!r})"


def _pull_bits(b: BitFn, first: BlockPerm, m: int) -> BitFn:
    """The bit function x -> b(f_pow(first(x), m)).

    This is how a B-factor looks after being pulled through P(first^-1) f^-m;
    it stays eventually periodic because `first` moves finitely many blocks
    and the f-orbit is eventually two arithmetic progressions.
    """
    shift = 2 * abs(m)
    prefix_len = max(
        len(b.prefix) + shift,
        shift + 2,
        max(first.support, default=-1) + 1,
        1,
    )
    period = math.lcm(b.period, 2)
    return BitFn.from_fn(lambda x: b(f_pow(first(x), m)), prefix_len, period)


def sym_mul(a: SymElem, b: SymElem) -> SymElem:
    """Product in normal form; the right factor acts first."""
    pulled = _pull_bits(b.bits, a.sigma.inverse(), -a.power)
    return SymElem(
        a.bits ^ pulled,
        a.sigma * b.sigma.conj_by_fpow(a.power),
        a.power + b.power,
    )


def sym_inv(a: SymElem) -> SymElem:
    """Inverse in normal form."""
    return sym_mul(
        sym_mul(SymElem.f_power(-a.power), SymElem.from_blocks(a.sigma.inverse())),
        SymElem.from_bits(a.bits),
    )


def sym_commutator(a: SymElem, b: SymElem) -> SymElem:
    """[a, b] = a^-1 b^-1 a b."""
    return sym_mul(sym_mul(sym_mul(sym_inv(a), sym_inv(b)), a), b)


def sym_apply(a: SymElem, x: int) -> int:
    """Left action of a on the point x."""
    x = 2 * f_pow(x // 2, a.power) + (x & 1)
    x = 2 * a.sigma(x // 2) + (x & 1)
    return x ^ a.bits(x // 2)


def bits_to_permutation(b: BitFn, degree: int | None = None) -> Permutation:
    """The finite permutation B(b) of a finite-support bit function."""
    if b.block != (0,):
        raise ValueError("bit function does not have finite support")
    if degree is None:
        degree = max(2 * len(b.prefix), 2)
    if degree < 2 * len(b.prefix):
        raise ValueError(f"degree {degree} too small for support")
    images = list(range(degree))
    for x, bit in enumerate(b.prefix):
        if bit:
            images[2 * x], images[2 * x + 1] = images[2 * x + 1], images[2 * x]
    return Permutation(images)


# --- the centralizer-chain model ----------------------------------------------


class ModelBudgetError(RuntimeError):
    """The chain model grew past its memory budget.

    `partial` holds the model up to the last level that fit."""

    def __init__(self, level_reached: int, cells: int, budget: int, partial: "IterChainModel"):
        super().__init__(
            f"budget exceeded after level {level_reached}"
            f" ({cells} > {budget} stored bits)"
        )
        self.level_reached = level_reached
        self.partial = partial


class DescentScanError(RuntimeError):
    """No strict-descent witness found in the scanned range.

    `exhausted` is True when the scan genuinely reached scan_max, False when
    the model was too shallow to keep scanning (not evidence either way)."""

    def __init__(self, message: str, exhausted: bool):
        super().__init__(message)
        self.exhausted = exhausted


class IterChainModel:
    """Ascending chain of finite bit-function groups C^1 < C^2 < ...

    `level(i)` is C^i as a frozenset of canonical BitFns (level 0 is the
    trivial group).  Every member of level i is purely periodic with period
    dividing 2^i, and each level is a group under pointwise XOR.
    """

    def __init__(self, levels: list[frozenset[BitFn]]):
        self._levels = list(levels)

    @property
    def depth(self) -> int:
        return len(self._levels) - 1

    def level(self, i: int) -> frozenset[BitFn]:
        if not 0 <= i <= self.depth:
            raise IndexError(f"level {i} not computed (depth {self.depth})")
        return self._levels[i]

    @property
    def levels(self) -> tuple[frozenset[BitFn], ...]:
        """C^1, C^2, ... (without the trivial level)."""
        return tuple(self._levels[1:])

    def sizes(self) -> list[int]:
        return [len(s) for s in self._levels[1:]]


def _solve_level_for(h: BitFn, period: int) -> list[BitFn]:
    """All purely `period`-periodic g with delta(g) = h, by GF(2) elimination.

    Unknowns are one period block of g; the equations are the pointwise
    commutation relations g(x) + g(f(x)) = h(x) folded onto the block: one per
    even place, one per odd place (both with wraparound), plus the x = 1
    relation that couples the parities.
    """
    P = period
    rows = []
    rhs = []
    for a in range(P // 2):
        rows.append((1 << (2 * a)) ^ (1 << ((2 * a + 2) % P)))
        rhs.append(h(2 * a))
    for a in range(P // 2):
        rows.append((1 << ((2 * a + 3) % P)) ^ (1 << (2 * a + 1)))
        rhs.append(h(2 * a + 3))
    rows.append((1 << 1) ^ (1 << 0))
    rhs.append(h(1))
    out = []
    for mask in gf2.solutions(rows, rhs, P):
        out.append(BitFn.from_pattern((mask >> i) & 1 for i in range(P)))
    return out


def _xor_closed(level: frozenset[BitFn], period: int) -> bool:
    """A set of period-dividing BitFns containing zero is XOR-closed iff its
    size is 2^rank of its members as GF(2) vectors over one period block."""
    basis: list[int] = []
    for member in level:
        vec = 0
        for i in range(period):
            vec |= member(i) << i
        for b in basis:
            vec = min(vec, vec ^ b)
        if vec:
            basis.append(vec)
    return len(level) == 1 << len(basis)


def iterated_centralizer_model(imax: int, budget: int = 1 << 26) -> IterChainModel:
    """Compute levels C^1..C^imax of the chain model.

    Level i+1 is assembled by solving, for every h in level i, the GF(2)
    system over one 2^(i+1)-block; each level is verified XOR-closed.  Raises
    `ModelBudgetError` naming the last completed level if the stored bits
    would exceed `budget`.
    """
    if imax < 1:
        raise ValueError("imax must be >= 1")
    levels = [frozenset({BitFn.zero()})]
    cells = 1
    for i in range(imax):
        P = 2 ** (i + 1)
        nxt = set()
        for h in levels[-1]:
            nxt.update(_solve_level_for(h, P))
        new_level = frozenset(nxt)
        cells += len(new_level) * P
        if cells > budget:
            raise ModelBudgetError(i, cells, budget, IterChainModel(levels))
        if not _xor_closed(new_level, P):
            raise RuntimeError(f"level {i + 1} is not XOR-closed: internal bug")
        if not levels[-1] <= new_level:
            raise RuntimeError(f"level {i + 1} does not contain level {i}: internal bug")
        levels.append(new_level)
    return IterChainModel(levels)


def brute_force_level(i: int) -> frozenset[BitFn]:
    """Independent oracle: enumerate all period-2^i patterns and keep those
    whose delta lies in the brute-forced previous level."""
    if i < 1:
        raise ValueError("i must be >= 1")
    if i > 4:
        raise ValueError(f"enumeration of 2^{2 ** i} candidates is infeasible (i={i} > 4)")
    prev = frozenset({BitFn.zero()}) if i == 1 else brute_force_level(i - 1)
    out = set()
    for bits in _iterproduct((0, 1), repeat=2 ** i):
        g = BitFn.from_pattern(bits)
        if delta(g) in prev:
            out.add(g)
    return frozenset(out)


def _first_one_at_parity(h: BitFn, parity: int) -> int | None:
    """Least x of the given parity with h(x) = 1, or None; h purely periodic."""
    window = max(h.period, 2)
    for x in range(parity, parity + window, 2):
        if h(x):
            return x
    return None


def ascent_witness(i: int, model: IterChainModel) -> BitFn:
    """A member of level i+1 outside level i, built by seeded recursion.

    Among the nontrivial members of level i, fix the h whose first 1-place
    within a parity class is maximal; solving the commutation relations with
    right side h, seeded at that parity, yields a g whose own first 1-place
    in that parity is larger still, so g cannot lie in level i.  The result
    is cross-checked against the solver-computed levels.
    """
    if not 1 <= i < model.depth:
        raise ValueError(f"need 1 <= i < depth={model.depth}")
    best: tuple[int, tuple, BitFn] | None = None
    for h in sorted(model.level(i), key=BitFn.sort_key):
        if h.is_zero:
            continue
        for parity in (0, 1):
            x0 = _first_one_at_parity(h, parity)
            if x0 is None:
                continue
            if best is None or x0 > best[0] or (x0 == best[0] and h.sort_key() < best[1]):
                best = (x0, h.sort_key(), h)
    assert best is not None, "level i has no nontrivial member"
    x0, _, h = best
    P = 2 ** (i + 1)
    vals = [0] * P
    if x0 % 2 == 0:
        vals[0] = 0
        vals[1] = vals[0] ^ h(1)
    else:
        vals[1] = 0
        vals[0] = vals[1] ^ h(1)
    for a in range(P // 2 - 1):
        vals[2 * a + 2] = vals[2 * a] ^ h(2 * a)
        vals[2 * a + 3] = vals[2 * a + 1] ^ h(2 * a + 3)
    if vals[P - 2] ^ h(P - 2) != vals[0] or vals[P - 1] ^ h(P + 1) != vals[1]:
        raise RuntimeError("seeded recursion is not periodic: internal bug")
    g = BitFn.from_pattern(vals)
    if delta(g) != h:
        raise RuntimeError("seeded recursion does not solve its system: internal bug")
    if g in model.level(i) or g not in model.level(i + 1):
        raise RuntimeError("witness disagrees with the solver levels: internal bug")
    return g


def gxl_generators(x: int, l: int, count: int) -> list[SymElem]:
    """The first `count` residue-class block swaps for residue x mod 2^l.

    Generator (i, i') swaps blocks x + 2^l i and x + 2^l i'; pairs i < i' are
    taken in lexicographic order, so the first `count` all have i = 0.
    """
    if l < 0 or not 0 <= x < 2 ** l:
        raise ValueError(f"need 0 <= x < 2^l, got x={x}, l={l}")
    if count < 1:
        raise ValueError("count must be >= 1")
    step = 2 ** l
    return [
        SymElem.from_blocks(BlockPerm.swap(x, x + step * ip))
        for ip in range(1, count + 1)
    ]


@dataclass(frozen=True)
class DescentWitness:
    """Evidence that the envelope chain drops strictly again after step k+1.

    `g` is a block swap lying in every normalizer-relevant set at step k+1
    (it commutes with all of level k+1) whose commutator with B(h), for an h
    in level kprime+1, is a nonidentity finite-support permutation and hence
    outside every chain level."""

    kprime: int
    l: int
    x0: int
    g: SymElem
    h: BitFn
    commutator: Permutation


def descent_witness(k: int, scan_max: int, model: IterChainModel) -> DescentWitness:
    """Scan k' = k+1..scan_max for the first strict-descent witness after k.

    l is minimal with every member of level k+1 being 2^l-periodic; the
    witness is the block swap g of blocks x0 and x0 + 2^l for the first
    (k', h, x0) in lexicographic scan order with h in level k'+1 and
    h(x0) != h(x0 + 2^l).  Both defining commutator properties are verified
    on the symbolic algebra before returning.
    """
    if k < 0 or k + 1 > model.depth:
        raise ValueError(f"need 0 <= k <= depth-1 = {model.depth - 1}")
    lev = model.level(k + 1)
    l = 0
    for member in lev:
        p = member.period
        if p & (p - 1):
            raise RuntimeError(f"level member has non-power-of-two period {p}")
        l = max(l, p.bit_length() - 1)
    step = 2 ** l
    limit = min(scan_max, model.depth - 1)
    for kp in range(k + 1, limit + 1):
        for h in sorted(model.level(kp + 1), key=BitFn.sort_key):
            for x0 in range(step):
                if h(x0) == h(x0 + step):
                    continue
                g = SymElem.from_blocks(BlockPerm.swap(x0, x0 + step))
                for hprime in sorted(lev, key=BitFn.sort_key):
                    if not sym_commutator(g, SymElem.from_bits(hprime)).is_identity:
                        raise RuntimeError(
                            f"witness swap fails to centralize level {k + 1}: internal bug"
                        )
                comm = sym_commutator(g, SymElem.from_bits(h))
                expected = BitFn.from_fn(
                    lambda t: 1 if t in (x0, x0 + step) else 0, x0 + step + 1, 1
                )
                if not (comm.sigma.is_identity and comm.power == 0 and comm.bits == expected):
                    raise RuntimeError("witness commutator has unexpected form: internal bug")
                return DescentWitness(
                    kprime=kp,
                    l=l,
                    x0=x0,
                    g=g,
                    h=h,
                    commutator=bits_to_permutation(comm.bits),
                )
    if limit < scan_max:
        raise DescentScanError(
            f"no witness for k={k} with k' <= {limit}; model depth {model.depth} "
            f"is too shallow to scan to {scan_max}",
            exhausted=False,
        )
    raise DescentScanError(
        f"no witness for k={k} with k' in {k + 1}..{scan_max}", exhausted=True
    )
