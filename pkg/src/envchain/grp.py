"""Finite permutation group engine.

Groups are materialized by breadth-first closure over their generators and
every subgroup is an explicit element set, so all queries (centralizers,
normalizers, central series) are exact set filters.  Element order is always
the sorted image-tuple order, which keeps every derived object deterministic.

Internally a group indexes its elements 0..n-1 and small groups cache a
multiplication table, so the chain computations in `chains` run on plain ints.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

from .perm import (
    CycleParseError,
    DegreeMismatchError,
    Permutation,
    compose,
    format_cycles,
    parse_cycles,
)

DEFAULT_CAP = 20000

# Orders up to this bound get cached multiplication/commutator tables.
_TABLE_LIMIT = 1024


class ClosureCapError(RuntimeError):
    """Closure grew past the requested cap."""

    def __init__(self, cap: int, reached: int):
        super().__init__(f"closure exceeded cap {cap} (at least {reached} elements)")
        self.cap = cap
        self.reached = reached


class GroupFileError(ValueError):
    """Bad group file; `line` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FiniteGroup:
    """An explicitly enumerated permutation group."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.index_of = {g: i for i, g in enumerate(self.elements)}
        self.identity_idx = self.index_of[Permutation.identity(degree)]
        self._table: list[int] | None = None
        self._inv: list[int] | None = None
        self._comm: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.index_of

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, degree={self.degree})"

    # --- index arithmetic -------------------------------------------------

    def _build_tables(self):
        n = self.order
        els = self.elements
        idx = self.index_of
        table = [0] * (n * n)
        for i, a in enumerate(els):
            ai = a.images
            row = i * n
            for j, b in enumerate(els):
                bi = b.images
                table[row + j] = idx[Permutation(ai[bi[x]] for x in range(len(ai)))]
        inv = [0] * n
        e = self.identity_idx
        for i in range(n):
            row = i * n
            for j in range(n):
                if table[row + j] == e:
                    inv[i] = j
                    break
        self._table = table
        self._inv = inv

    def mul_idx(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j] (j acts first)."""
        if self._table is None:
            if self.order <= _TABLE_LIMIT:
                self._build_tables()
            else:
                return self.index_of[compose(self.elements[i], self.elements[j])]
        return self._table[i * self.order + j]

    def inv_idx(self, i: int) -> int:
        if self._inv is None:
            if self.order <= _TABLE_LIMIT:
                self._build_tables()
            else:
                return self.index_of[self.elements[i].inverse()]
        return self._inv[i]

    def comm_idx(self, i: int, j: int) -> int:
        """Index of [elements[i], elements[j]]."""
        if self._comm is not None:
            return self._comm[i * self.order + j]
        if self.order <= _TABLE_LIMIT:
            self.mul_idx(0, 0)  # force tables
            n = self.order
            table = self._table
            inv = self._inv
            comm = [0] * (n * n)
            for i2 in range(n):
                gi = inv[i2]
                for j2 in range(n):
                    comm[i2 * n + j2] = table[table[table[gi * n + inv[j2]] * n + i2] * n + j2]
            self._comm = comm
            return comm[i * self.order + j]
        gi = self.inv_idx(i)
        return self.mul_idx(self.mul_idx(self.mul_idx(gi, self.inv_idx(j)), i), j)

    def conj_idx(self, h: int, g: int) -> int:
        """Index of g^-1 h g."""
        return self.mul_idx(self.mul_idx(self.inv_idx(g), h), g)

    # --- subgroup constructors -------------------------------------------

    def _index(self, m: Union[Permutation, int]) -> int:
        if isinstance(m, int):
            return m
        i = self.index_of.get(m)
        if i is None:
            raise ValueError(f"element {format_cycles(m)} is not in the group")
        return i

    def subgroup(self, members: Iterable[Union[Permutation, int]]) -> "Subgroup":
        """Subgroup from an already-closed element collection."""
        return Subgroup(self, frozenset(self._index(m) for m in members))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset({self.identity_idx}))

    def generated_subgroup(self, gens: Iterable[Union[Permutation, int]]) -> "Subgroup":
        return Subgroup(self, closure_indices(self, [self._index(g) for g in gens]))


class Subgroup:
    """A subgroup of a `FiniteGroup`, stored as an index set into the parent.

    Subgroups of subgroups are plain subgroups of the same parent; nesting is
    just index-set containment.
    """

    __slots__ = ("parent", "indices")

    def __init__(self, parent: FiniteGroup, indices: frozenset[int]):
        self.parent = parent
        self.indices = indices

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(self.parent.elements[i] for i in sorted(self.indices))

    def __contains__(self, p: Union[Permutation, int]) -> bool:
        if isinstance(p, int):
            return p in self.indices
        i = self.parent.index_of.get(p)
        return i is not None and i in self.indices

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.indices == other.indices
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.indices))

    def __le__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.indices <= other.indices

    def key(self) -> tuple[int, ...]:
        """Deterministic sort/deduplication key."""
        return tuple(sorted(self.indices))

    def is_full(self) -> bool:
        return len(self.indices) == self.parent.order

    def __repr__(self) -> str:
        gens = ",".join(format_cycles(g) for g in self.elements[:4])
        more = "..." if self.order > 4 else ""
        return f"Subgroup(order={self.order}, {{{gens}{more}}})"


# --- index-set algebra (used heavily by `chains`) --------------------------


def closure_indices(group: FiniteGroup, seeds: Iterable[int]) -> frozenset[int]:
    """Subgroup of `group` generated by the seed indices."""
    e = group.identity_idx
    els = {e}
    frontier = sorted(set(seeds) - {e})
    gens = list(frontier)
    els.update(frontier)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = group.mul_idx(g, a)
                if c not in els:
                    els.add(c)
                    new.append(c)
        frontier = new
    # finite order: the products of generators already contain all inverses
    return frozenset(els)


def centralizer_indices(group: FiniteGroup, members: frozenset[int], targets: Iterable[int]) -> frozenset[int]:
    """{g in members : g commutes with every target}."""
    e = group.identity_idx
    out = members
    for t in targets:
        out = frozenset(g for g in out if group.comm_idx(g, t) == e)
    return out


def normalizer_indices(group: FiniteGroup, members: frozenset[int], sub: frozenset[int]) -> frozenset[int]:
    """{g in members : g^-1 (sub) g == sub}."""
    return frozenset(
        g for g in members if all(group.conj_idx(s, g) in sub for s in sub)
    )


def is_abelian_indices(group: FiniteGroup, indices: frozenset[int]) -> bool:
    e = group.identity_idx
    idx = sorted(indices)
    for a in idx:
        for b in idx:
            if b >= a:
                break
            if group.comm_idx(a, b) != e:
                return False
    return True


def central_series_indices(group: FiniteGroup, sub: frozenset[int]) -> list[frozenset[int]]:
    """Upper central series of `sub` viewed as a group in its own right.

    Returns [Z_0, Z_1, ...] up to the first repeat, so the last entry is the
    hypercenter of the subgroup.
    """
    e = group.identity_idx
    series = [frozenset({e})]
    while True:
        prev = series[-1]
        nxt = frozenset(
            g for g in sub if all(group.comm_idx(g, x) in prev for x in sub)
        )
        if nxt == prev:
            return series
        series.append(nxt)


def series_level(series: list[frozenset[int]], k: int) -> frozenset[int]:
    """k-th term of a stalled-at-the-end ascending series (constant past it)."""
    return series[k] if k < len(series) else series[-1]


# --- public operations ------------------------------------------------------


def closure(generators: Sequence[Permutation], cap: int = DEFAULT_CAP, degree: int | None = None) -> FiniteGroup:
    """The group generated by `generators`, enumerated breadth-first.

    Raises `ClosureCapError` as soon as the element count passes `cap`.
    `degree` is only required when no generators are given.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    if not generators:
        if degree is None:
            raise ValueError("need a degree when there are no generators")
        return FiniteGroup(degree, (), [Permutation.identity(degree)])
    deg = generators[0].degree
    for g in generators:
        if g.degree != deg:
            raise DegreeMismatchError(f"generator degrees differ: {g.degree} != {deg}")
    if degree is not None and degree != deg:
        raise DegreeMismatchError(f"generators have degree {deg}, not {degree}")
    e = Permutation.identity(deg)
    els = {e}
    gens = sorted(set(generators) - {e})
    els.update(gens)
    if len(els) > cap:
        raise ClosureCapError(cap, len(els))
    frontier = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = compose(g, a)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > cap:
                        raise ClosureCapError(cap, len(els))
        frontier = new
    return FiniteGroup(deg, generators, els)


def _as_index_view(ambient: Union[FiniteGroup, Subgroup]) -> tuple[FiniteGroup, frozenset[int]]:
    if isinstance(ambient, Subgroup):
        return ambient.parent, ambient.indices
    return ambient, frozenset(range(ambient.order))


def _target_indices(group: FiniteGroup, targets) -> list[int]:
    if isinstance(targets, Subgroup):
        if targets.parent is not group:
            raise ValueError("target subgroup belongs to a different group")
        return sorted(targets.indices)
    out = []
    for t in targets:
        if isinstance(t, int):
            out.append(t)
        else:
            i = group.index_of.get(t)
            if i is None:
                raise ValueError(f"element {format_cycles(t)} is not in the group")
            out.append(i)
    return sorted(set(out))


def centralizer(ambient: Union[FiniteGroup, Subgroup], targets) -> Subgroup:
    """Elements of `ambient` commuting with every element of `targets`.

    `targets` may be any iterable of group elements (commuting with a
    generating set is enough to commute with the subgroup it generates) or a
    `Subgroup`.
    """
    group, members = _as_index_view(ambient)
    return Subgroup(group, centralizer_indices(group, members, _target_indices(group, targets)))


def normalizer(ambient: Union[FiniteGroup, Subgroup], sub: Subgroup) -> Subgroup:
    """Elements of `ambient` conjugating `sub` onto itself."""
    group, members = _as_index_view(ambient)
    if sub.parent is not group:
        raise ValueError("subgroup belongs to a different group")
    if not sub.indices <= members:
        raise ValueError("subgroup is not contained in the ambient")
    return Subgroup(group, normalizer_indices(group, members, sub.indices))


def center(ambient: Union[FiniteGroup, Subgroup]) -> Subgroup:
    group, members = _as_index_view(ambient)
    return Subgroup(group, centralizer_indices(group, members, sorted(members)))


def upper_central_series(ambient: Union[FiniteGroup, Subgroup]) -> list[Subgroup]:
    """[Z_0, Z_1, ...] up to the first repeat (Z_0 is trivial)."""
    group, members = _as_index_view(ambient)
    return [Subgroup(group, s) for s in central_series_indices(group, members)]


def nilpotency_class(ambient: Union[FiniteGroup, Subgroup]) -> int | None:
    """Least k with Z_k the whole group, or None when the series stalls below it."""
    group, members = _as_index_view(ambient)
    series = central_series_indices(group, members)
    if series[-1] == members:
        return len(series) - 1
    return None


def is_abelian(ambient: Union[FiniteGroup, Subgroup]) -> bool:
    group, members = _as_index_view(ambient)
    return is_abelian_indices(group, members)


# --- group files ------------------------------------------------------------


def parse_group_file(text: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Parse the group file format:

        # comment
        degree: 4
        (0 1 2 3)
        (1 3)

    One generator per line in cycle notation; '#' starts a comment.
    """
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            if not line.startswith("degree:"):
                raise GroupFileError("expected 'degree: <n>' before generators", lineno)
            body = line[len("degree:"):].strip()
            try:
                degree = int(body)
            except ValueError:
                raise GroupFileError(f"bad degree {body!r}", lineno) from None
            if degree <= 0:
                raise GroupFileError(f"degree must be positive, got {degree}", lineno)
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except CycleParseError as exc:
            raise GroupFileError(str(exc), lineno) from exc
    if degree is None:
        raise GroupFileError("missing 'degree: <n>' line", 1)
    return closure(gens, cap=cap, degree=degree)


def format_group_file(degree: int, generators: Sequence[Permutation], header: str = "") -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append(f"degree: {degree}")
    lines.extend(format_cycles(g) for g in generators)
    return "\n".join(lines) + "\n"


def default_kmax(group_order: int, h_class: int | None) -> int:
    """Chain-depth default: the nilpotency class when known, else a log window."""
    if h_class is not None:
        return max(h_class, 1)
    return int(2 * math.log2(max(group_order, 2))) + 2
