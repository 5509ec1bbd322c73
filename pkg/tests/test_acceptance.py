"""Acceptance suite: one PASS/FAIL line per criterion.

Every criterion is exact (integer or rational equality), so the tolerance
for each is zero. Run directly with ``python3 tests/test_acceptance.py`` or
through pytest.
"""

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mhgalg import params as P  # noqa: E402
from mhgalg.algebra import (  # noqa: E402
    UNIT,
    OrbitFunction,
    euler_transform,
    orbit_product,
    verify_hilbert,
    verify_polynomial_rank,
)
from mhgalg.antipodal import (  # noqa: E402
    ANTIPODAL_PARAMS,
    alpha,
    antipodal_profile,
    beta,
    signatures,
)
from mhgalg.enumeration import (  # noqa: E402
    enumerate_age,
    enumerate_codes,
    indecomposable_census,
    oracle_enumerate,
    profile,
)
from mhgalg.errors import EmptyRange  # noqa: E402
from mhgalg.metric import POINT, pair, relabel, uniform  # noqa: E402
from mhgalg.params import INF, ParameterSequence, classify_admissible, in_age  # noqa: E402
from mhgalg.sumop import decompose, magic_range, sum_all, verify_closure, verify_freeness  # noqa: E402

from conftest import ALL_SEQUENCES, HENSON, MAIN  # noqa: E402

TOLERANCE = 0  # all comparisons are exact


def criterion_1():
    prof = profile(MAIN, 6)
    if tuple(prof[:4]) != (1, 1, 3, 9) or oracle_enumerate(MAIN, 3) != 9:
        return False, f"prefix {tuple(prof)}"
    for M in (2, 3):
        euler = euler_transform(indecomposable_census(MAIN, M, 6), 6)
        if euler != prof:
            return False, f"M={M}: profile {tuple(prof)} != euler {tuple(euler)}"
    return True, f"profile {tuple(prof)} = euler(census) for M=2,3"


def criterion_2():
    rng = magic_range(MAIN)
    if rng.valid_set != [2, 3]:
        return False, f"magic range {rng.valid_set}"
    for M in (2, 3):
        r = verify_closure(MAIN, M, 6)
        if not r.passed:
            return False, f"closure fails at M={M}: {r.witness}"
    r = verify_closure(MAIN, 1, 6)
    w = r.witness or {}
    ok = not r.passed and w.get("A") == pair(3).to_json() and w.get("B") == POINT.to_json()
    return ok, f"M=1 witness {w.get('A')} + {w.get('B')}"


def criterion_3():
    rng = magic_range(HENSON)
    if 3 in rng or rng.valid_set != [2]:
        return False, f"magic range {rng.valid_set}"
    r = verify_closure(HENSON, 3, 6)
    w = r.witness or {}
    H = HENSON.henson[0]
    ok = (
        not r.passed
        and w.get("violation", {}).get("kind") == "henson"
        and w.get("sum") is not None
        and w["sum"] == H.to_json()
    )
    return ok, f"valid {rng.valid_set}; M=3 witness {w.get('A')} + {w.get('B')} -> {w.get('sum')}"


def criterion_4():
    for M in (2, 3):
        r = verify_freeness(MAIN, M, 4)
        if not r.passed:
            return False, f"freeness M={M}: {r.witness}"
    rnd = random.Random(7)
    checked = 0
    for M in (2, 3):
        for n in range(7):
            for A in enumerate_age(MAIN, n):
                dec = decompose(A, M)
                # sum of the factors recovers A
                if dec.recompose().code != A.code:
                    return False, f"sum(decompose(A)) != A for {A}"
                # decomposing a shuffled sum of the factors returns the same multiset
                factors = list(dec.factors)
                rnd.shuffle(factors)
                S = sum_all(factors, M)
                perm = list(range(S.n))
                rnd.shuffle(perm)
                if decompose(relabel(S, perm), M).multiset() != dec.multiset():
                    return False, f"decompose(sum) differs for {A}"
                checked += 1
    return True, f"freeness to 4 for M=2,3; identities on {checked} member/M pairs to 6"


def criterion_5():
    parts = []
    for M in (2, 3):
        for degree in range(5):
            r = verify_polynomial_rank(MAIN, M, degree)
            if not r.passed:
                return False, f"M={M} degree {degree}: {r.witness} {r.details}"
            parts.append(r.details["rank"])
    return True, f"full rank, sizes {parts[:5]} for M=2 and M=3"


def criterion_6():
    for M in (2, 3):
        c = indecomposable_census(MAIN, M, 6)
        for n in range(1, 7):
            clique = uniform(n, 1)
            if c.c(n) < 1 or not in_age(MAIN, clique) or len(decompose(clique, M).factors) != 1:
                return False, f"M={M} n={n}: c_n={c.c(n)}"
    return True, f"c_1..c_6 = {tuple(c)} (M=3), all >= 1"


def criterion_7():
    expected = (1, 1, 3, 3, 6, 6, 10, 10, 15)
    triples = antipodal_profile(8)
    euler = tuple(euler_transform([1, 2], 8))
    general = tuple(profile(ANTIPODAL_PARAMS, 6))
    if not (triples == euler == expected and general == expected[:7]):
        return False, f"triples {triples} euler {euler} general {general}"
    for n in range(7):
        seen = set()
        for A in enumerate_age(ANTIPODAL_PARAMS, n):
            s = alpha(A)
            if beta(s).code != A.code or s in seen:
                return False, f"alpha/beta fails on {A}"
            seen.add(s)
        if seen != set(signatures(n)) or any(alpha(beta(s)) != s for s in signatures(n)):
            return False, f"signature set mismatch at n={n}"
    return True, f"profile {expected}; bijection to 6 points"


NEAR_MISSES = [
    ((3, INF, 1, 8, 7), {P.A_K2_ZERO}),
    ((3, INF, 0, 8, 9), {P.A_C1}),
    ((3, 1, 2, 10, 8), {P.C_TIGHT}),
    ((5, 3, 3, 16, 15), {P.C_3K2}),
    ((3, 0, 2, 10, 9), {P.C_K_SUM}),
    ((3, 1, 3, 8, 11), {P.C_WIDE}),
    ((3, 3, 2, 10, 11), {P.K_ORDER}),
    ((4, 2, 2, 10, 11), {P.B_C_FORM}),
    ((4, 1, 1, 5, 6), {P.B_C_LOWER}),
    ((5, 2, 3, 11, 16), {P.B_WIDE_EQ}),
    ((4, 2, 2, 9, 12), {P.B_WIDE_3K2}),
]


def _random_near_misses(count, seed=1016):
    """Admissible sequences with one finite parameter moved by one, rejected afterwards."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(3, 6)
        base = [d, rng.choice([rng.randint(0, 6), INF]), rng.randint(0, 6), rng.randint(5, 22), rng.randint(5, 22)]
        if not classify_admissible(ParameterSequence(*base)).admissible:
            continue
        slot = rng.randint(1, 4)
        if base[slot] == INF:
            continue
        moved = list(base)
        moved[slot] = max(0, base[slot] + rng.choice([-1, 1]))
        if not classify_admissible(ParameterSequence(*moved)).admissible:
            out.append(tuple(moved))
    return out


def criterion_8():
    worked = [
        ((3, INF, 0, 8, 7), "Bipartite(a)", None),
        ((3, 1, 2, 10, 9), "HighC(c)", None),
        ((3, 1, 1, 10, 9), "Rejected", P.C_3K2),
    ]
    for seq, tag, cond in worked:
        v = classify_admissible(ParameterSequence(*seq))
        if v.tag != tag or (cond is not None and cond not in v.failed):
            return False, f"{seq}: {v.tag} {v.failed}"
    for seq, expected in NEAR_MISSES:
        v = classify_admissible(ParameterSequence(*seq))
        if v.tag != "Rejected" or set(v.failed) != expected:
            return False, f"{seq}: {v.tag} {v.failed}, expected {expected}"
    randoms = _random_near_misses(10)
    for seq in randoms:
        v = classify_admissible(ParameterSequence(*seq))
        if v.tag != "Rejected" or not v.failed:
            return False, f"{seq}: {v.tag}"
    return True, f"3 worked examples, {len(NEAR_MISSES)} hand near-misses, {len(randoms)} random near-misses"


def criterion_9():
    rows = []
    for p in ALL_SEQUENCES:
        fast = [len(enumerate_codes(p, n)) for n in range(5)]
        slow = [oracle_enumerate(p, n) for n in range(5)]
        if fast != slow:
            return False, f"{p.label()}: {fast} != {slow}"
        rows.append(fast)
    return True, f"{len(ALL_SEQUENCES)} sequences agree to n=4"


def criterion_10():
    ind = [OrbitFunction.indicator(c) for n in range(5) for c in enumerate_codes(MAIN, n)]
    prod = {}

    def mul(i, j):
        key = (i, j)
        if key not in prod:
            f, g = (ind[i] if isinstance(i, int) else i), (ind[j] if isinstance(j, int) else j)
            prod[key] = orbit_product(f, g, MAIN)
        return prod[key]

    n_checks = 0
    for i, j in itertools.product(range(len(ind)), repeat=2):
        if ind[i].degree + ind[j].degree <= 4:
            if mul(i, j) != mul(j, i):
                return False, f"commutativity fails on {i},{j}"
            n_checks += 1
    for i, j, k in itertools.product(range(len(ind)), repeat=3):
        if ind[i].degree + ind[j].degree + ind[k].degree <= 4:
            left = orbit_product(mul(i, j), ind[k], MAIN)
            right = orbit_product(ind[i], mul(j, k), MAIN)
            if left != right:
                return False, f"associativity fails on {i},{j},{k}"
            n_checks += 1
    for f in ind:
        if orbit_product(UNIT, f, MAIN) != f or orbit_product(f, UNIT, MAIN) != f:
            return False, f"unit fails on degree {f.degree}"
        n_checks += 1
    return True, f"{n_checks} identities on {len(ind)} indicators"


CRITERIA = {
    1: ("Hilbert series equals Euler transform of census", criterion_1),
    2: ("closure window and M=1 witness", criterion_2),
    3: ("Henson exclusion of M=delta", criterion_3),
    4: ("free decomposition", criterion_4),
    5: ("polynomiality rank", criterion_5),
    6: ("a generator in every degree", criterion_6),
    7: ("antipodal case", criterion_7),
    8: ("admissibility classifier", criterion_8),
    9: ("oracle equivalence", criterion_9),
    10: ("algebra axioms", criterion_10),
}


def run_criterion(n):
    name, fn = CRITERIA[n]
    t0 = time.perf_counter()
    ok, detail = fn()
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'} [{name}] tol={TOLERANCE} ({time.perf_counter() - t0:.1f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
