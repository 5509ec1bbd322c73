"""Exact power series and the orbit algebra.

All arithmetic is over ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .enumeration import Budget, Census, Profile, enumerate_codes, indecomposables, indecomposable_census, profile
from .metric import from_code, induced
from .params import ParameterSequence
from .report import FAIL, PASS, Report


class RationalSeries:
    """Power series truncated after ``x**order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least a constant term")
        self.coeffs = cs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff=1) -> "RationalSeries":
        cs = [0] * (order + 1)
        if degree <= order:
            cs[degree] = coeff
        return cls(cs)

    def _align(self, other):
        if not isinstance(other, RationalSeries):
            other = RationalSeries([other], self.order)
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other):
        a, b, _ = self._align(other)
        return RationalSeries([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-x for x in self.coeffs])

    def __sub__(self, other):
        a, b, _ = self._align(other)
        return RationalSeries([x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            return RationalSeries([x * other for x in self.coeffs])
        a, b, n = self._align(other)
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(n + 1 - i):
                    out[i + j] += x * b[j]
        return RationalSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv = [Fraction(0)] * len(a)
        inv[0] = 1 / a[0]
        for k in range(1, len(a)):
            inv[k] = -sum(a[i] * inv[k - i] for i in range(1, k + 1)) / a[0]
        return RationalSeries(inv)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = RationalSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RationalSeries):
            return self.coeffs == other.coeffs
        return self.coeffs == [Fraction(x) for x in other]

    __hash__ = None

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"RationalSeries({[str(c) for c in self.coeffs]})"


def euler_transform(c: Census | Sequence[int], n_max: int) -> Profile:
    """Coefficients of ``prod_d (1 - x^d)^(-c_d)`` up to ``x^n_max``.

    ``c`` lists ``c_1, c_2, ...``; missing entries count as zero.
    """
    counts = list(c)
    series = RationalSeries.one(n_max)
    for d in range(1, n_max + 1):
        cd = counts[d - 1] if d - 1 < len(counts) else 0
        if cd:
            series = series * (RationalSeries.one(n_max) - RationalSeries.monomial(d, n_max)) ** (-cd)
    out = []
    for x in series:
        if x.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {x}")
        out.append(int(x))
    return Profile(tuple(out))


@dataclass
class OrbitFunction:
    """A degree-``n`` element: rational values on the codes of ``n``-point types."""

    degree: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {k: Fraction(v) for k, v in self.values.items() if v != 0}
        for k in self.values:
            if k[0] != self.degree:
                raise ValueError(f"code {k} does not have size {self.degree}")

    def __call__(self, code) -> Fraction:
        return self.values.get(tuple(code), Fraction(0))

    @classmethod
    def indicator(cls, code) -> "OrbitFunction":
        code = tuple(code)
        return cls(code[0], {code: 1})

    def __eq__(self, other):
        return isinstance(other, OrbitFunction) and self.degree == other.degree and self.values == other.values

    def __add__(self, other: "OrbitFunction") -> "OrbitFunction":
        if other.degree != self.degree:
            raise ValueError("only homogeneous sums are supported")
        vals = Counter(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + v
        return OrbitFunction(self.degree, dict(vals))

    def __mul__(self, scalar) -> "OrbitFunction":
        return OrbitFunction(self.degree, {k: v * scalar for k, v in self.values.items()})

    __rmul__ = __mul__


UNIT = OrbitFunction.indicator((0,))


@lru_cache(maxsize=None)
def split_counts(code: tuple, m: int) -> tuple[tuple[tuple, tuple, int], ...]:
    """Ordered splits of a type into an ``m``-point part and the rest, counted by the parts' codes."""
    A = from_code(code)
    n = A.n
    counts: Counter = Counter()
    for X1 in itertools.combinations(range(n), m):
        rest = [x for x in range(n) if x not in X1]
        counts[induced(A, X1).code, induced(A, rest).code] += 1
    return tuple(sorted((a, b, k) for (a, b), k in counts.items()))


def orbit_product(f: OrbitFunction, g: OrbitFunction, p: ParameterSequence, *, budget: Budget | None = None) -> OrbitFunction:
    """``(fg)(X) = sum over X = X1 ⊔ X2 of f(X1) g(X2)`` on every type of the right size."""
    n = f.degree + g.degree
    out = {}
    for code in enumerate_codes(p, n, budget=budget):
        total = Fraction(0)
        for a, b, k in split_counts(code, f.degree):
            fa = f.values.get(a)
            if fa:
                gb = g.values.get(b)
                if gb:
                    total += k * fa * gb
        if total:
            out[code] = total
    return OrbitFunction(n, out)


def monomial_value(codes: Sequence[tuple], p: ParameterSequence, _memo: dict | None = None) -> OrbitFunction:
    """Product of the indicators of ``codes``, multiplied left to right."""
    memo = {} if _memo is None else _memo
    key = tuple(codes)
    if key in memo:
        return memo[key]
    if not key:
        result = UNIT
    elif len(key) == 1:
        result = OrbitFunction.indicator(key[0])
    else:
        result = orbit_product(monomial_value(key[:-1], p, memo), OrbitFunction.indicator(key[-1]), p)
    memo[key] = result
    return result


def generator_monomials(gens: Sequence[tuple], degree: int) -> list[tuple]:
    """Multisets of generator codes (sorted tuples) whose sizes add to ``degree``."""
    gens = sorted(gens)
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            g = gens[i]
            if g[0] <= remaining:
                acc.append(g)
                rec(i, remaining - g[0], acc)
                acc.pop()

    rec(0, degree, [])
    return out


def rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows or not rows[0]:
        return 0
    # clear denominators row by row so the elimination stays in the integers
    M = []
    for r in rows:
        lcm = math.lcm(*(x.denominator for x in r))
        M.append([int(x * lcm) for x in r])
    nrows, ncols = len(M), len(M[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(col + 1, ncols):
                M[i][j] = (M[i][j] * M[r][col] - M[i][col] * M[r][j]) // prev
            M[i][col] = 0
        prev = M[r][col]
        r += 1
        if r == nrows:
            break
    return r


def verify_hilbert(p: ParameterSequence, M: int, n_max: int, *, budget: Budget | None = None) -> Report:
    prof = profile(p, n_max, budget=budget)
    census = indecomposable_census(p, M, n_max, budget=budget)
    euler = euler_transform(census, n_max)
    details = {"m": M, "profile": list(prof), "census": list(census), "euler": list(euler)}
    for n in range(n_max + 1):
        if prof[n] != euler[n]:
            return Report("hilbert", FAIL, degree=n, witness={"profile": prof[n], "euler": euler[n]}, details=details)
    return Report("hilbert", PASS, degree=n_max, details=details)


def evaluation_matrix(p: ParameterSequence, M: int, degree: int, *, budget: Budget | None = None):
    """Monomials in indecomposable indicators of total size ``degree``, evaluated on every type."""
    gens = [A.code for d in range(1, degree + 1) for A in indecomposables(p, M, d, budget=budget)]
    monos = generator_monomials(gens, degree)
    types = enumerate_codes(p, degree, budget=budget)
    memo: dict = {}
    matrix = []
    for mono in monos:
        f = monomial_value(mono, p, memo)
        matrix.append([f(t) for t in types])
    return monos, types, matrix


def verify_polynomial_rank(p: ParameterSequence, M: int, degree: int, *, budget: Budget | None = None) -> Report:
    monos, types, matrix = evaluation_matrix(p, M, degree, budget=budget)
    details = {"m": M, "monomials": len(monos), "types": len(types)}
    if len(monos) != len(types):
        return Report("rank", FAIL, degree=degree, witness={"reason": "count mismatch"}, details=details)
    r = rank(matrix)
    details["rank"] = r
    if r != len(types):
        return Report("rank", FAIL, degree=degree, witness={"reason": "rank deficient", "rank": r}, details=details)
    return Report("rank", PASS, degree=degree, details=details)
