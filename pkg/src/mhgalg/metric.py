"""Finite integer-distance metric spaces.

A space on ``n`` points is stored by its strict upper triangle in row-major
order, ``d(0,1), d(0,2), ..., d(n-2,n-1)``; the same order is used by the
JSON space format ``{"n": ..., "upper": [...]}``.

Canonical codes use a different (column-major) order, ``d(0,1), d(0,2),
d(1,2), d(0,3), ...``, so that the lexicographic minimum can be pruned
point by point. A code is the tuple ``(n, *entries)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import InvalidInput, NonPositiveDistance, TriangleViolation

CanonicalCode = tuple  # (n, *column-major upper triangle of the canonical labelling)


def _pair_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class MetricSpace:
    n: int
    upper: tuple[int, ...]
    diameter_bound: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(int(x) for x in self.upper))
        if self.n < 0:
            raise InvalidInput(f"point count must be nonnegative, got {self.n}")
        if len(self.upper) != self.n * (self.n - 1) // 2:
            raise InvalidInput(
                f"expected {self.n * (self.n - 1) // 2} distances for n={self.n}, got {len(self.upper)}"
            )
        _validate(self)

    @classmethod
    def _trusted(cls, n: int, upper: tuple[int, ...]) -> "MetricSpace":
        # skips validation; callers guarantee the metric axioms
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "upper", upper)
        object.__setattr__(obj, "diameter_bound", None)
        return obj

    @classmethod
    def from_matrix(cls, D: np.ndarray, *, check: bool = True) -> "MetricSpace":
        D = np.asarray(D, dtype=np.int64)
        n = D.shape[0]
        iu, ju = np.triu_indices(n, 1)
        upper = tuple(int(x) for x in D[iu, ju])
        if check:
            return cls(n, upper)
        return cls._trusted(n, upper)

    def d(self, i: int, j: int) -> int:
        if i == j:
            return 0
        return self.upper[_pair_index(self.n, i, j)]

    @cached_property
    def matrix(self) -> np.ndarray:
        D = np.zeros((self.n, self.n), dtype=np.int64)
        if self.n > 1:
            iu, ju = np.triu_indices(self.n, 1)
            D[iu, ju] = self.upper
            D[ju, iu] = self.upper
        D.setflags(write=False)
        return D

    @cached_property
    def code(self) -> CanonicalCode:
        return canonical_code(self)

    @property
    def distances(self) -> set[int]:
        return set(self.upper)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, d(i,j))`` for ``i < j``."""
        t = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j, self.upper[t]
                t += 1

    def __len__(self) -> int:
        return self.n

    def to_json(self) -> dict:
        return {"n": self.n, "upper": list(self.upper)}

    def __repr__(self) -> str:
        return f"MetricSpace(n={self.n}, upper={list(self.upper)})"


def _validate(A: MetricSpace) -> None:
    for i, j, v in A.pairs():
        if v < 1:
            raise NonPositiveDistance(i, j, v)
    if A.diameter_bound is not None:
        for i, j, v in A.pairs():
            if v > A.diameter_bound:
                raise InvalidInput(f"d({i},{j}) = {v} exceeds diameter bound {A.diameter_bound}")
    for x, y, z in itertools.combinations(range(A.n), 3):
        a, b, c = A.d(x, y), A.d(y, z), A.d(x, z)
        if c > a + b:
            raise TriangleViolation(x, y, z, (a, b, c))
        if a > b + c:
            raise TriangleViolation(x, z, y, (c, b, a))
        if b > a + c:
            raise TriangleViolation(y, x, z, (a, c, b))


def make_space(n: int, upper: Sequence[int], diameter_bound: int | None = None) -> MetricSpace:
    """Build and validate a space from its row-major upper triangle."""
    return MetricSpace(n, tuple(upper), diameter_bound)


EMPTY = MetricSpace._trusted(0, ())
POINT = MetricSpace._trusted(1, ())


def pair(dist: int) -> MetricSpace:
    return make_space(2, [dist])


def uniform(n: int, dist: int) -> MetricSpace:
    """``n`` points, all pairwise at the same distance."""
    return make_space(n, [dist] * (n * (n - 1) // 2))


def space_from_json(obj: dict | str) -> MetricSpace:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return make_space(int(obj["n"]), [int(x) for x in obj["upper"]])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed space object: {obj!r}") from exc


def from_code(code: CanonicalCode) -> MetricSpace:
    """The canonically labelled representative whose code is ``code``."""
    n = code[0]
    D = np.zeros((n, n), dtype=np.int64)
    t = 1
    for j in range(1, n):
        for i in range(j):
            D[i, j] = D[j, i] = code[t]
            t += 1
    return MetricSpace.from_matrix(D, check=False)


def canonical_code(A: MetricSpace) -> CanonicalCode:
    """Complete isometry invariant.

    Points are colour-refined by distance multisets until stable; among the
    labellings that list colour classes in order, the one with the
    lexicographically least column-major upper triangle is chosen.
    """
    if A.n <= 1:
        return (A.n,)
    entries = kernels.canonical_entries(A.matrix)
    return (A.n, *(int(x) for x in entries))


def relabel(A: MetricSpace, perm: Sequence[int]) -> MetricSpace:
    """Space whose point ``k`` is point ``perm[k]`` of ``A``."""
    p = np.asarray(perm, dtype=np.int64)
    return MetricSpace.from_matrix(A.matrix[np.ix_(p, p)], check=False)


def induced(A: MetricSpace, S: Iterable[int]) -> MetricSpace:
    """Induced subspace on the points ``S``, kept in increasing order."""
    pts = sorted(set(S))
    if any(x < 0 or x >= A.n for x in pts):
        raise InvalidInput(f"subset {pts} is not contained in a {A.n}-point space")
    return relabel(A, pts)


def isometric(A: MetricSpace, B: MetricSpace) -> bool:
    return A.n == B.n and A.code == B.code


def _extend_injection(P, A, phi, used, k, forced=None) -> bool:
    if k == P.n:
        return forced is None or forced in phi
    for v in range(A.n):
        if used[v]:
            continue
        if any(P.d(i, k) != A.d(phi[i], v) for i in range(k)):
            continue
        phi.append(v)
        used[v] = True
        if _extend_injection(P, A, phi, used, k + 1, forced):
            return True
        phi.pop()
        used[v] = False
    return False


def embeds(P: MetricSpace, A: MetricSpace, *, through: int | None = None) -> bool:
    """True iff ``P`` is isometric to an induced subspace of ``A``.

    With ``through`` set, only embeddings whose image contains that point of
    ``A`` count.
    """
    if P.n > A.n:
        return False
    if P.n == 0:
        return through is None
    if not P.distances <= A.distances | {0}:
        return False
    return _extend_injection(P, A, [], [False] * A.n, 0, through)


@dataclass(frozen=True, order=True)
class TriangleType:
    sides: tuple[int, int, int]

    def __post_init__(self):
        s = tuple(sorted(int(x) for x in self.sides))
        if s[0] < 1:
            raise InvalidInput(f"triangle sides must be positive: {s}")
        if s[2] > s[0] + s[1]:
            raise InvalidInput(f"{s} is not a metric triple")
        object.__setattr__(self, "sides", s)

    @classmethod
    def of(cls, i: int, j: int, k: int) -> "TriangleType":
        return cls((i, j, k))

    @property
    def perimeter(self) -> int:
        return sum(self.sides)

    def __iter__(self):
        return iter(self.sides)

    def __repr__(self) -> str:
        return f"TriangleType{self.sides}"


def triangle_types(A: MetricSpace) -> list[TriangleType]:
    """One sorted triple per 3-subset of points (a multiset, as a list)."""
    return [
        TriangleType((A.d(x, y), A.d(y, z), A.d(x, z)))
        for x, y, z in itertools.combinations(range(A.n), 3)
    ]


def brute_isometric(A: MetricSpace, B: MetricSpace) -> bool:
    """Exhaustive permutation search; independent of canonical codes."""
    if A.n != B.n or sorted(A.upper) != sorted(B.upper):
        return False
    for perm in itertools.permutations(range(B.n)):
        if all(A.d(i, j) == B.d(perm[i], perm[j]) for i in range(A.n) for j in range(i + 1, A.n)):
            return True
    return False
