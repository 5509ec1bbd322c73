"""Parameter sequences, admissibility and age membership.

Extended naturals are plain ``int`` values or ``math.inf``; Python already
orders them correctly and ``inf + n == inf``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np

from .errors import InvalidInput
from .metric import MetricSpace, TriangleType, embeds, space_from_json, triangle_types

log = logging.getLogger(__name__)

INF = math.inf
ExtNat = Union[int, float]


def ext_nat(value) -> ExtNat:
    """Parse an extended natural: a nonnegative int, ``"inf"`` or ``math.inf``."""
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("inf", "infinity", "∞"):
            return INF
        try:
            value = int(v)
        except ValueError:
            raise InvalidInput(f"not an extended natural: {value!r}") from None
    if isinstance(value, float):
        if value == INF:
            return INF
        if value.is_integer():
            value = int(value)
        else:
            raise InvalidInput(f"not an extended natural: {value!r}")
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidInput(f"not an extended natural: {value!r}")
    return value


def ext_to_json(value: ExtNat):
    return "inf" if value == INF else int(value)


def fmt(value: ExtNat) -> str:
    return "inf" if value == INF else str(value)


@dataclass(frozen=True)
class ParameterSequence:
    delta: int
    k1: ExtNat
    k2: ExtNat
    c0: ExtNat
    c1: ExtNat
    henson: tuple[MetricSpace, ...] = field(default=())

    def __post_init__(self):
        if isinstance(self.delta, bool) or not isinstance(self.delta, int):
            raise InvalidInput(f"delta must be a finite integer, got {self.delta!r}")
        if self.delta < 3:
            raise InvalidInput(f"delta must be at least 3, got {self.delta}")
        for name in ("k1", "k2", "c0", "c1"):
            object.__setattr__(self, name, ext_nat(getattr(self, name)))
        object.__setattr__(self, "henson", tuple(self.henson))
        self._check_henson_shape()

    def _check_henson_shape(self) -> None:
        if not self.henson:
            return
        alphabet = {1, self.delta - 1} if self.C == 2 * self.delta + 1 else {1, self.delta}
        for H in self.henson:
            if H.n < 2:
                raise InvalidInput(f"Henson constraint {H} needs at least 2 points")
            if not H.distances <= alphabet:
                raise InvalidInput(
                    f"Henson constraint {H} uses distances outside {sorted(alphabet)}"
                )
        log.warning("Henson set accepted on shape only; catalogue-level admissibility is not checked")

    @property
    def C(self) -> ExtNat:
        return min(self.c0, self.c1)

    @property
    def C_prime(self) -> ExtNat:
        return max(self.c0, self.c1)

    def bound(self, parity: int) -> ExtNat:
        """Perimeter bound for perimeters of the given parity."""
        return self.c0 if parity % 2 == 0 else self.c1

    @cached_property
    def allowed_table(self) -> np.ndarray:
        """``T[a, b, c]`` is True iff sides ``a, b, c`` (any order) form an allowed triangle."""
        d = self.delta
        T = np.zeros((d + 1, d + 1, d + 1), dtype=np.bool_)
        for a in range(1, d + 1):
            for b in range(1, d + 1):
                for c in range(1, d + 1):
                    s = sorted((a, b, c))
                    T[a, b, c] = s[2] <= s[0] + s[1] and triangle_allowed(self, TriangleType(tuple(s)))
        T.setflags(write=False)
        return T

    def label(self) -> str:
        core = ",".join(fmt(x) for x in (self.delta, self.k1, self.k2, self.c0, self.c1))
        return f"({core}, S={len(self.henson)})"

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "k1": ext_to_json(self.k1),
            "k2": ext_to_json(self.k2),
            "c0": ext_to_json(self.c0),
            "c1": ext_to_json(self.c1),
            "henson": [H.to_json() for H in self.henson],
        }


def params_from_json(obj: dict | str) -> ParameterSequence:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return ParameterSequence(
            delta=int(obj["delta"]),
            k1=ext_nat(obj["k1"]),
            k2=ext_nat(obj["k2"]),
            c0=ext_nat(obj["c0"]),
            c1=ext_nat(obj["c1"]),
            henson=tuple(space_from_json(h) for h in obj.get("henson", [])),
        )
    except KeyError as exc:
        raise InvalidInput(f"parameter object is missing {exc}") from None


@dataclass(frozen=True)
class AdmissibilityVerdict:
    case: str  # "bipartite" | "low_c" | "high_c" | "rejected"
    failed: tuple[str, ...] = ()
    tried: str | None = None

    @property
    def admissible(self) -> bool:
        return self.case != "rejected"

    @property
    def tag(self) -> str:
        return {
            "bipartite": "Bipartite(a)",
            "low_c": "LowC(b)",
            "high_c": "HighC(c)",
            "rejected": "Rejected",
        }[self.case]

    def to_json(self) -> dict:
        out = {"verdict": self.tag, "admissible": self.admissible}
        if self.tried:
            out["case_tested"] = self.tried
        if self.failed:
            out["failed"] = list(self.failed)
        return out


# Condition identifiers reported by classify_admissible.
A_K2_ZERO = "a: K2 = 0"
A_C1 = "a: C1 = 2delta+1"
B_C_FORM = "b: C = 2K1+2K2+1"
B_C_LOWER = "b: C >= 2delta+1"
B_K_SUM = "b: K1+2K2 <= 2delta-1"
B_WIDE_EQ = "b: C' > C+1 implies K1 = K2"
B_WIDE_3K2 = "b: C' > C+1 implies 3K2 = 2delta-1"
C_K_SUM = "c: K1+2K2 >= 2delta-1"
C_3K2 = "c: 3K2 >= 2delta"
C_TIGHT = "c: K1+2K2 = 2delta-1 implies C >= 2delta+K1+2"
C_WIDE = "c: C' > C+1 implies C >= 2delta+K2"
K_ORDER = "K1 <= K2"


def classify_admissible(p: ParameterSequence) -> AdmissibilityVerdict:
    """Match ``p`` against the three admissible cases and check every side condition."""
    d, k1, k2, C, Cp = p.delta, p.k1, p.k2, p.C, p.C_prime
    failed: list[str] = []
    if k1 == INF:
        tried = "bipartite"
        if k2 != 0:
            failed.append(A_K2_ZERO)
        if p.c1 != 2 * d + 1:
            failed.append(A_C1)
    else:
        if k1 > k2:
            failed.append(K_ORDER)
        if C <= 2 * d + k1:
            tried = "low_c"
            if C != 2 * k1 + 2 * k2 + 1:
                failed.append(B_C_FORM)
            if not C >= 2 * d + 1:
                failed.append(B_C_LOWER)
            if not k1 + 2 * k2 <= 2 * d - 1:
                failed.append(B_K_SUM)
            if Cp > C + 1:
                if k1 != k2:
                    failed.append(B_WIDE_EQ)
                if 3 * k2 != 2 * d - 1:
                    failed.append(B_WIDE_3K2)
        else:
            tried = "high_c"
            if not k1 + 2 * k2 >= 2 * d - 1:
                failed.append(C_K_SUM)
            if not 3 * k2 >= 2 * d:
                failed.append(C_3K2)
            if k1 + 2 * k2 == 2 * d - 1 and not C >= 2 * d + k1 + 2:
                failed.append(C_TIGHT)
            if Cp > C + 1 and not C >= 2 * d + k2:
                failed.append(C_WIDE)
    if failed:
        return AdmissibilityVerdict("rejected", tuple(failed), tried)
    return AdmissibilityVerdict(tried)


def triangle_allowed(p: ParameterSequence, t: TriangleType) -> bool:
    i, j, k = t.sides
    if k > p.delta:
        return False
    per = i + j + k
    if per % 2 == 1 and not (2 * p.k1 < per < 2 * p.k2 + 2 * i):
        return False
    return per < p.bound(per % 2)


def forbidden_triangles(p: ParameterSequence) -> list[TriangleType]:
    """The finite set of metric triples with sides <= delta that are not allowed."""
    out = []
    d = p.delta
    for k in range(1, d + 1):
        for j in range(1, k + 1):
            for i in range(1, j + 1):
                if k <= i + j:
                    t = TriangleType((i, j, k))
                    if not triangle_allowed(p, t):
                        out.append(t)
    return sorted(out)


def age_violation(p: ParameterSequence, A: MetricSpace) -> dict | None:
    """First reason ``A`` is outside the age, or None if it is a member."""
    for i, j, v in A.pairs():
        if v > p.delta:
            return {"kind": "distance", "pair": [i, j], "distance": v}
    for t in triangle_types(A):
        if not triangle_allowed(p, t):
            return {"kind": "triangle", "type": list(t.sides)}
    for h, H in enumerate(p.henson):
        if embeds(H, A):
            return {"kind": "henson", "index": h, "constraint": H.to_json()}
    return None


def in_age(p: ParameterSequence, A: MetricSpace) -> bool:
    return age_violation(p, A) is None
