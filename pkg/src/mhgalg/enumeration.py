"""Isomorph-free enumeration of age members.

Level ``n`` is built from level ``n - 1`` by adding one point in every way
that keeps the new triangles allowed (and avoids Henson constraints through
the new point), then deduplicating by canonical code. Since ages are
hereditary this reaches every type. Levels are cached per parameter
sequence.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ResourceLimit
from .metric import MetricSpace, TriangleType, brute_isometric, embeds, from_code, induced, make_space
from .params import ParameterSequence, triangle_allowed
from .sumop import is_indecomposable


@dataclass(frozen=True)
class Budget:
    max_types: int = 10**6
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget()

_LEVELS: dict[ParameterSequence, list[list[tuple]]] = {}


@dataclass(frozen=True)
class Profile:
    counts: tuple[int, ...]

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        if isinstance(other, Profile):
            return self.counts == other.counts
        return self.counts == tuple(other)

    __hash__ = None


@dataclass(frozen=True)
class Census:
    """``counts[d - 1]`` is the number of indecomposable types on ``d`` points."""

    counts: tuple[int, ...]
    m: int | None = None

    def __getitem__(self, d):
        return self.counts[d]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def c(self, d: int) -> int:
        return self.counts[d - 1]


def _extend_parent(p: ParameterSequence, code: tuple) -> set[tuple]:
    D = np.ascontiguousarray(from_code(code).matrix)
    n = D.shape[0]
    rows = kernels.extension_rows(D, p.allowed_table, p.delta)
    if p.henson and len(rows):
        keep = []
        for r in rows:
            E = np.zeros((n + 1, n + 1), dtype=np.int64)
            E[:n, :n] = D
            E[n, :n] = r
            E[:n, n] = r
            S = MetricSpace.from_matrix(E, check=False)
            if not any(embeds(H, S, through=n) for H in p.henson):
                keep.append(r)
        rows = np.array(keep, dtype=np.int64).reshape(len(keep), n)
    if not len(rows):
        return set()
    codes = np.unique(kernels.canon_batch(D, rows), axis=0)
    return {(n + 1, *map(int, c)) for c in codes}


def _extend_chunk(args) -> set[tuple]:
    p, codes = args
    out: set[tuple] = set()
    for code in codes:
        out |= _extend_parent(p, code)
    return out


def _build_level(p: ParameterSequence, parents: list[tuple], budget: Budget, jobs: int) -> list[tuple]:
    start = time.monotonic()
    found: set[tuple] = set()

    def check():
        if len(found) > budget.max_types:
            raise ResourceLimit(f"more than {budget.max_types} types at one size")
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise ResourceLimit(f"enumeration exceeded {budget.max_seconds}s")

    if jobs > 1 and len(parents) > 1:
        chunks = [parents[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_extend_chunk, [(p, c) for c in chunks]):
                found |= part
                check()
    else:
        for code in parents:
            found |= _extend_parent(p, code)
            check()
    return sorted(found)


def enumerate_codes(p: ParameterSequence, n: int, *, budget: Budget | None = None, jobs: int = 1) -> list[tuple]:
    if n < 0:
        raise ValueError("size must be nonnegative")
    budget = budget or DEFAULT_BUDGET
    levels = _LEVELS.setdefault(p, [[(0,)]])
    while len(levels) <= n:
        levels.append(_build_level(p, levels[-1], budget, jobs))
    return levels[n]


def enumerate_age(p: ParameterSequence, n: int, *, budget: Budget | None = None, jobs: int = 1) -> list[MetricSpace]:
    """One canonically labelled representative per ``n``-point type, sorted by code."""
    return [from_code(c) for c in enumerate_codes(p, n, budget=budget, jobs=jobs)]


def clear_cache() -> None:
    _LEVELS.clear()


def profile(p: ParameterSequence, n_max: int, *, budget: Budget | None = None, jobs: int = 1) -> Profile:
    return Profile(tuple(len(enumerate_codes(p, n, budget=budget, jobs=jobs)) for n in range(n_max + 1)))


def indecomposables(p: ParameterSequence, M: int, n: int, *, budget: Budget | None = None) -> list[MetricSpace]:
    return [A for A in enumerate_age(p, n, budget=budget) if is_indecomposable(A, M)]


def indecomposable_census(p: ParameterSequence, M: int, n_max: int, *, budget: Budget | None = None) -> Census:
    counts = tuple(len(indecomposables(p, M, d, budget=budget)) for d in range(1, n_max + 1))
    return Census(counts, M)


def _labelled_metric(n: int, upper: Sequence[int]) -> bool:
    d = {}
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = upper[t]
            t += 1
    for x, y, z in itertools.permutations(range(n), 3):
        if d[x, z] > d[x, y] + d[y, z]:
            return False
    return True


def oracle_enumerate(p: ParameterSequence, n: int, bound: int = 4) -> int:
    """Type count by brute force: every labelled assignment, exhaustive isomorphism tests."""
    if n > bound:
        raise ResourceLimit(f"oracle bound is {bound} points, asked for {n}")
    if n <= 1:
        return 1
    pairs = n * (n - 1) // 2
    reps: dict[tuple, list[MetricSpace]] = {}
    count = 0
    for upper in itertools.product(range(1, p.delta + 1), repeat=pairs):
        if not _labelled_metric(n, upper):
            continue
        A = make_space(n, upper)
        ok = all(
            triangle_allowed(p, TriangleType((A.d(x, y), A.d(y, z), A.d(x, z))))
            for x, y, z in itertools.combinations(range(n), 3)
        )
        if not ok or any(embeds(H, A) for H in p.henson):
            continue
        bucket = reps.setdefault(tuple(sorted(upper)), [])
        if not any(brute_isometric(A, B) for B in bucket):
            bucket.append(A)
            count += 1
    return count


def dump_jsonl(spaces: Iterable[MetricSpace]) -> str:
    return "".join(
        json.dumps({"code": list(A.code), "n": A.n, "upper": list(A.upper)}) + "\n" for A in spaces
    )


def check_hereditary(p: ParameterSequence, n: int) -> list[tuple]:
    """Codes of level ``n - 1`` types reached by deleting a point that are missing from level ``n - 1``."""
    below = set(enumerate_codes(p, n - 1))
    missing = []
    for A in enumerate_age(p, n):
        for x in range(n):
            code = induced(A, [y for y in range(n) if y != x]).code
            if code not in below:
                missing.append(code)
    return missing

