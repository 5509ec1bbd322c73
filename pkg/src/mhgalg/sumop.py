"""The disjoint sum ``A +_M B`` and what it decomposes.

``A +_M B`` is the disjoint union of ``A`` and ``B`` with every cross pair at
distance ``M``. Its indecomposables are the spaces whose graph of non-``M``
pairs is connected.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyRange, TriangleViolation
from .metric import EMPTY, MetricSpace, induced, relabel
from .params import INF, ParameterSequence, age_violation, fmt
from .report import FAIL, PASS, Report


@dataclass(frozen=True)
class MagicRange:
    lo: int
    hi: int
    excluded: frozenset[int]
    default: int

    @property
    def valid_set(self) -> list[int]:
        return [m for m in range(self.lo, self.hi + 1) if m not in self.excluded]

    def __contains__(self, m: int) -> bool:
        return m in self.valid_set

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "excluded": sorted(self.excluded),
            "valid": self.valid_set,
            "default": self.default,
        }


def magic_range(p: ParameterSequence) -> MagicRange:
    """Distances ``M`` for which the age is closed under ``+_M``.

    ``max(K1, ceil(delta/2)) <= M <= min(K2, floor((C-delta-1)/2), delta)``,
    with ``M = delta`` removed when ``C > 2delta+1`` and some Henson
    constraint uses distance ``delta``.
    """
    d = p.delta
    if p.k1 == INF:
        raise EmptyRange("K1 is infinite, so max(K1, delta/2) <= M has no solution")
    lo = max(int(p.k1), math.ceil(d / 2))
    hi_parts = [d]
    if p.k2 != INF:
        hi_parts.append(int(p.k2))
    if p.C != INF:
        hi_parts.append((int(p.C) - d - 1) // 2)
    hi = min(hi_parts)
    excluded = frozenset()
    if p.C > 2 * d + 1 and any(d in H.distances for H in p.henson):
        excluded = frozenset({d})
    rng = MagicRange(lo, hi, excluded, lo)
    if not rng.valid_set:
        if lo > hi:
            raise EmptyRange(
                f"max(K1, ceil(delta/2)) = {lo} > {hi} = min(K2, floor((C-delta-1)/2)) "
                f"[K1={fmt(p.k1)}, K2={fmt(p.k2)}, C={fmt(p.C)}, delta={d}]"
            )
        raise EmptyRange(f"only candidate M = {d} is excluded by a Henson constraint using distance delta")
    return rng


def sum_m(A: MetricSpace, B: MetricSpace, M: int) -> MetricSpace:
    """``A +_M B``: points of ``A`` first, then those of ``B``."""
    if A.n == 0:
        return B
    if B.n == 0:
        return A
    n = A.n + B.n
    D = np.full((n, n), M, dtype=np.int64)
    D[: A.n, : A.n] = A.matrix
    D[A.n :, A.n :] = B.matrix
    np.fill_diagonal(D, 0)
    # only triangles with a cross pair can fail: (M, M, d) needs d <= 2M and M <= M + d
    for X, off in ((A, 0), (B, A.n)):
        for i, j, v in X.pairs():
            if v > 2 * M:
                other = A.n if off == 0 else 0
                raise TriangleViolation(off + i, other, off + j, (M, M, v))
    return MetricSpace.from_matrix(D, check=False)


def sum_all(parts: Iterable[MetricSpace], M: int) -> MetricSpace:
    out = EMPTY
    for P in parts:
        out = sum_m(out, P, M)
    return out


def components(A: MetricSpace, M: int) -> list[list[int]]:
    """Connected components of the graph of pairs at distance != M."""
    parent = list(range(A.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, v in A.pairs():
        if v != M:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for x in range(A.n):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def is_indecomposable(A: MetricSpace, M: int) -> bool:
    return A.n >= 1 and len(components(A, M)) == 1


@dataclass(frozen=True)
class Decomposition:
    factors: tuple[MetricSpace, ...]
    m: int

    def recompose(self) -> MetricSpace:
        return sum_all(self.factors, self.m)

    @property
    def codes(self) -> tuple:
        return tuple(F.code for F in self.factors)

    def multiset(self) -> Counter:
        return Counter(self.codes)

    def to_json(self) -> dict:
        return {"m": self.m, "factors": [F.to_json() for F in self.factors]}


def decompose(A: MetricSpace, M: int) -> Decomposition:
    factors = [induced(A, comp) for comp in components(A, M)]
    factors.sort(key=lambda F: F.code)
    return Decomposition(tuple(factors), M)


def _bijection(B, A, M, phi, used, k) -> bool:
    if k == B.n:
        return True
    for v in range(A.n):
        if used[v]:
            continue
        if any(B.d(i, k) != M and B.d(i, k) != A.d(phi[i], v) for i in range(k)):
            continue
        phi.append(v)
        used[v] = True
        if _bijection(B, A, M, phi, used, k + 1):
            return True
        phi.pop()
        used[v] = False
    return False


def leq(B: MetricSpace, A: MetricSpace, M: int) -> bool:
    """True iff ``B`` is obtained from a relabelling of ``A`` by resetting some distances to ``M``."""
    if B.n != A.n:
        return False
    return _bijection(B, A, M, [], [False] * A.n, 0)


def non_m_pairs(A: MetricSpace, M: int) -> int:
    return sum(1 for v in A.upper if v != M)


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions, blocks in order of least element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for k in range(len(part)):
            yield [*part[:k], [first, *part[k]], *part[k + 1 :]]


def _age_levels(p: ParameterSequence, max_size: int, budget=None) -> list[list[MetricSpace]]:
    from .enumeration import enumerate_age

    return [enumerate_age(p, n, budget=budget) for n in range(max_size + 1)]


def verify_closure(p: ParameterSequence, M: int, max_total: int, budget=None) -> Report:
    """Exhaustively check that ``A +_M B`` stays in the age for ``|A| + |B| <= max_total``.

    Pairs are visited by total size, then ``|A|`` descending, then codes;
    the first failure is the witness.
    """
    levels = _age_levels(p, max(max_total - 1, 0), budget)
    checked = 0
    for total in range(2, max_total + 1):
        for a in range(total - 1, 0, -1):
            b = total - a
            if b > a:
                break
            for A in levels[a]:
                for B in levels[b]:
                    checked += 1
                    try:
                        S = sum_m(A, B, M)
                    except TriangleViolation as exc:
                        violation = {"kind": "metric", "sides": list(exc.sides)}
                        return _closure_fail(A, B, M, None, violation, checked)
                    violation = age_violation(p, S)
                    if violation is not None:
                        return _closure_fail(A, B, M, S, violation, checked)
    return Report("closure", PASS, details={"m": M, "max_total": max_total, "pairs_checked": checked})


def _closure_fail(A, B, M, S, violation, checked) -> Report:
    witness = {"A": A.to_json(), "B": B.to_json(), "m": M, "violation": violation}
    if S is not None:
        witness["sum"] = S.to_json()
    return Report("closure", FAIL, witness=witness, details={"m": M, "pairs_checked": checked})


def verify_freeness(p: ParameterSequence, M: int, max_size: int, budget=None) -> Report:
    """Free-decomposition checks on every age member up to ``max_size`` points.

    For each member ``A`` and each set partition of its points, the sum of the
    induced parts must lie in the age and be ``<= A``. The factor multiset of
    ``A`` must not depend on the labelling and must recompose to ``A``.
    """
    levels = _age_levels(p, max_size, budget)
    partitions_checked = 0
    for n in range(1, max_size + 1):
        for A in levels[n]:
            for blocks in set_partitions(list(range(n))):
                partitions_checked += 1
                parts = [induced(A, blk) for blk in blocks]
                try:
                    S = sum_all(parts, M)
                except TriangleViolation as exc:
                    return _freeness_fail("sum not metric", A, blocks, M, {"sides": list(exc.sides)})
                violation = age_violation(p, S)
                if violation is not None:
                    return _freeness_fail("sum outside age", A, blocks, M, violation)
                if not leq(S, A, M):
                    return _freeness_fail("sum not <= A", A, blocks, M, {"sum": S.to_json()})
            dec = decompose(A, M)
            if dec.recompose().code != A.code:
                return _freeness_fail("recomposition differs", A, None, M, dec.to_json())
            for perm in _sample_perms(n):
                if decompose(relabel(A, perm), M).codes != dec.codes:
                    return _freeness_fail("factors depend on labelling", A, None, M, {"perm": list(perm)})
    return Report(
        "freeness", PASS, details={"m": M, "max_size": max_size, "partitions_checked": partitions_checked}
    )


def _sample_perms(n: int, limit: int = 120) -> list[tuple[int, ...]]:
    return list(itertools.islice(itertools.permutations(range(n)), limit))


def _freeness_fail(reason, A, blocks, M, info) -> Report:
    witness = {"A": A.to_json(), "m": M, "reason": reason, "info": info}
    if blocks is not None:
        witness["partition"] = blocks
    return Report("freeness", FAIL, witness=witness, details={"m": M})
