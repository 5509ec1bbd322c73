"""The bipartite antipodal age of diameter 3.

Members are bipartite: distance 2 inside each part, 1 or 3 across, with
the distance-3 pairs forming a partial matching. A member is determined up
to isometry by its signature ``(k, m, n)``: ``k`` antipodal pairs, parts of
sizes ``m <= n``. Signatures form the free commutative semigroup on
``x = (0,0,1)``, ``y = (0,1,1)``, ``z = (1,1,1)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .algebra import euler_transform
from .enumeration import Budget, enumerate_age, profile
from .errors import InvalidInput, NotInClass
from .metric import MetricSpace
from .params import INF, ParameterSequence, in_age
from .report import FAIL, PASS, Report

ANTIPODAL_PARAMS = ParameterSequence(delta=3, k1=INF, k2=0, c0=8, c1=7)


class AntipodalSignature(NamedTuple):
    k: int
    m: int
    n: int

    def validate(self) -> "AntipodalSignature":
        if not 0 <= self.k <= self.m <= self.n:
            raise InvalidInput(f"signature {tuple(self)} violates 0 <= k <= m <= n")
        return self

    def __add__(self, other):  # pointwise, not tuple concatenation
        return AntipodalSignature(self.k + other[0], self.m + other[1], self.n + other[2])

    @property
    def size(self) -> int:
        return self.m + self.n


X = AntipodalSignature(0, 0, 1)
Y = AntipodalSignature(0, 1, 1)
Z = AntipodalSignature(1, 1, 1)


class Multiplicities(NamedTuple):
    z: int
    y: int
    x: int


def bipartition(A: MetricSpace) -> tuple[list[int], list[int]]:
    """Parts of ``A`` under the relation "distance is even", smaller part first."""
    if A.n == 0:
        return [], []
    side = [-1] * A.n
    side[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(A.n):
            if v == u:
                continue
            want = side[u] ^ (A.d(u, v) % 2)
            if side[v] == -1:
                side[v] = want
                stack.append(v)
            elif side[v] != want:
                raise NotInClass(f"distance parities of {A} admit no bipartition")
    p0 = [v for v in range(A.n) if side[v] == 0]
    p1 = [v for v in range(A.n) if side[v] == 1]
    return (p0, p1) if len(p0) <= len(p1) else (p1, p0)


def alpha(A: MetricSpace) -> AntipodalSignature:
    if not in_age(ANTIPODAL_PARAMS, A):
        raise NotInClass(f"{A} is not in the bipartite antipodal diameter-3 age")
    small, large = bipartition(A)
    k = sum(1 for v in A.upper if v == 3)
    return AntipodalSignature(k, len(small), len(large))


def beta(s) -> MetricSpace:
    """Standard member with signature ``s``: parts ``V1`` (size m) then ``V2`` (size n)."""
    k, m, n = AntipodalSignature(*s).validate()
    size = m + n
    D = np.full((size, size), 1, dtype=np.int64)
    D[:m, :m] = 2
    D[m:, m:] = 2
    for i in range(k):
        D[i, m + i] = D[m + i, i] = 3
    np.fill_diagonal(D, 0)
    return MetricSpace.from_matrix(D, check=False)


def signature_decompose(s) -> Multiplicities:
    k, m, n = AntipodalSignature(*s).validate()
    return Multiplicities(z=k, y=m - k, x=n - m)


def signature_compose(mult: Multiplicities) -> AntipodalSignature:
    z, y, x = mult
    return AntipodalSignature(z, z + y, z + y + x)


def signature_leq(s1, s2) -> bool:
    k1, m1, n1 = s1
    k2, m2, n2 = s2
    return k1 <= k2 and m1 <= m2 and m1 + n1 == m2 + n2


def signatures(size: int) -> list[AntipodalSignature]:
    return [
        AntipodalSignature(k, m, size - m)
        for m in range(size // 2 + 1)
        for k in range(m + 1)
    ]


def antipodal_profile(n_max: int) -> tuple[int, ...]:
    """Counts of signatures ``k <= m <= n`` with ``m + n = size``, for ``size <= n_max``."""
    return tuple(len(signatures(size)) for size in range(n_max + 1))


def verify_antipodal(n_max: int, budget: Budget | None = None) -> Report:
    """Triple count, Euler transform of (1, 2) and general enumeration must agree; alpha/beta invert."""
    triples = list(antipodal_profile(n_max))
    euler = list(euler_transform([1, 2], n_max))
    general = list(profile(ANTIPODAL_PARAMS, n_max, budget=budget))
    details = {"triples": triples, "euler": euler, "enumeration": general}
    if not triples == euler == general:
        return Report("antipodal", FAIL, degree=n_max, witness={"reason": "profiles disagree"}, details=details)
    for n in range(n_max + 1):
        seen = set()
        for A in enumerate_age(ANTIPODAL_PARAMS, n, budget=budget):
            try:
                s = alpha(A)
            except NotInClass as exc:
                return Report("antipodal", FAIL, degree=n, witness={"A": A.to_json(), "reason": str(exc)})
            if beta(s).code != A.code or alpha(beta(s)) != s or s in seen:
                return Report("antipodal", FAIL, degree=n, witness={"A": A.to_json(), "signature": list(s)})
            seen.add(s)
        if seen != set(signatures(n)):
            return Report("antipodal", FAIL, degree=n, witness={"reason": "signature set mismatch"})
    return Report("antipodal", PASS, degree=n_max, details=details)
