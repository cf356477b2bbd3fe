"""Independent naive oracle: every chain notion recomputed by direct set
filtering over raw Permutation objects, with no index tables and no caching.

Deliberately duplicates none of the package's machinery so that agreement is
meaningful.
"""

from __future__ import annotations

from envchain.perm import Permutation, commutator, compose, conjugate


def naive_closure(gens: set[Permutation], degree: int) -> frozenset[Permutation]:
    els = {Permutation.identity(degree)} | set(gens)
    while True:
        new = {compose(a, b) for a in els for b in els} | {g.inverse() for g in els}
        if new <= els:
            return frozenset(els)
        els |= new


def naive_centralizer(ambient: frozenset[Permutation], targets) -> frozenset[Permutation]:
    return frozenset(g for g in ambient if all(compose(g, t) == compose(t, g) for t in targets))


def naive_normalizer(ambient: frozenset[Permutation], sub: frozenset[Permutation]) -> frozenset[Permutation]:
    return frozenset(g for g in ambient if {conjugate(s, g) for s in sub} == sub)


def naive_center_series(sub: frozenset[Permutation]) -> list[frozenset[Permutation]]:
    degree = next(iter(sub)).degree
    series = [frozenset({Permutation.identity(degree)})]
    while True:
        prev = series[-1]
        nxt = frozenset(g for g in sub if all(commutator(g, x) in prev for x in sub))
        if nxt == prev:
            return series
        series.append(nxt)


def _at(series, k):
    return series[k] if k < len(series) else series[-1]


def naive_nilpotency_class(sub: frozenset[Permutation]):
    series = naive_center_series(sub)
    return len(series) - 1 if series[-1] == sub else None


def naive_iterated_levels(
    within: frozenset[Permutation], target: frozenset[Permutation], kmax: int
) -> list[frozenset[Permutation]]:
    degree = next(iter(within)).degree
    levels = [frozenset({Permutation.identity(degree)})]
    for k in range(1, kmax + 1):
        cand = within
        for n in range(k):
            cand = cand & naive_normalizer(within, levels[n])
        new = frozenset(
            x for x in cand if all(commutator(x, a) in levels[k - 1] for a in target)
        )
        if new == levels[-1]:
            break
        levels.append(new)
    return levels


def naive_ek_terms(
    whole: frozenset[Permutation], sub: frozenset[Permutation], kmax: int
) -> list[frozenset[Permutation]]:
    terms = [whole]
    for k in range(kmax):
        ek = terms[-1]
        levels = naive_iterated_levels(ek, sub, k + 1)
        ck = _at(levels, k)
        ck1 = _at(levels, k + 1)
        terms.append(frozenset(g for g in ek if all(commutator(g, c) in ck for c in ck1)))
    return terms
