import pytest
from hypothesis import given
from hypothesis import strategies as st

from mhgalg.algebra import euler_transform
from mhgalg.antipodal import (
    ANTIPODAL_PARAMS,
    X,
    Y,
    Z,
    AntipodalSignature,
    Multiplicities,
    alpha,
    antipodal_profile,
    beta,
    signature_compose,
    signature_decompose,
    signature_leq,
    signatures,
    verify_antipodal,
)
from mhgalg.enumeration import enumerate_age, profile
from mhgalg.errors import InvalidInput, NotInClass
from mhgalg.metric import POINT, TriangleType, induced, make_space, pair, uniform
from mhgalg.params import in_age, triangle_allowed
from mhgalg.sumop import set_partitions


def test_alpha_examples():
    assert alpha(POINT) == (0, 0, 1)
    assert alpha(pair(3)) == (1, 1, 1)
    assert alpha(beta((1, 1, 2))) == (1, 1, 2)


def test_alpha_rejects_non_members():
    with pytest.raises(NotInClass):
        alpha(uniform(3, 1))


def test_beta_examples():
    assert beta((0, 0, 1)) == POINT
    assert beta((1, 1, 1)) == pair(3)
    B = beta((1, 1, 2))
    # a = 0, b = 1, c = 2
    assert (B.d(0, 1), B.d(0, 2), B.d(1, 2)) == (3, 1, 2)
    assert in_age(ANTIPODAL_PARAMS, B)


def test_beta_rejects_bad_signature():
    with pytest.raises(InvalidInput):
        beta((2, 1, 3))


def test_decompose_examples():
    assert signature_decompose((0, 0, 1)) == Multiplicities(z=0, y=0, x=1)
    assert signature_decompose((1, 1, 2)) == Multiplicities(z=1, y=0, x=1)
    assert signature_decompose((2, 3, 5)) == Multiplicities(z=2, y=1, x=2)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_free_generation(z, y, x):
    s = signature_compose(Multiplicities(z, y, x))
    total = AntipodalSignature(0, 0, 0)
    for g, k in ((Z, z), (Y, y), (X, x)):
        for _ in range(k):
            total = total + g
    assert total == s
    assert signature_decompose(s) == (z, y, x)


def test_leq_examples():
    assert signature_leq((1, 2, 2), (1, 2, 2))
    assert signature_leq((0, 1, 3), (1, 2, 2))
    assert not signature_leq((1, 1, 1), (0, 1, 1))


def test_profile_examples():
    assert antipodal_profile(2) == (1, 1, 3)
    assert antipodal_profile(4) == (1, 1, 3, 3, 6)
    assert antipodal_profile(0) == (1,)
    assert antipodal_profile(4) == tuple(euler_transform([1, 2], 4))


def test_three_way_agreement():
    assert tuple(profile(ANTIPODAL_PARAMS, 6)) == antipodal_profile(6) == tuple(euler_transform([1, 2], 6))


def test_bijection():
    for n in range(7):
        seen = set()
        for A in enumerate_age(ANTIPODAL_PARAMS, n):
            s = alpha(A)
            assert beta(s).code == A.code
            seen.add(s)
        assert seen == set(signatures(n))
        for s in signatures(n):
            assert alpha(beta(s)) == s


def test_freeness_order():
    for n in range(1, 6):
        for A in enumerate_age(ANTIPODAL_PARAMS, n):
            sA = alpha(A)
            for blocks in set_partitions(list(range(n))):
                total = AntipodalSignature(0, 0, 0)
                for blk in blocks:
                    total = total + alpha(induced(A, blk))
                assert signature_leq(total, sA)


def test_matching_is_emergent():
    for t in ((2, 3, 3), (1, 3, 3), (3, 3, 3)):
        assert not triangle_allowed(ANTIPODAL_PARAMS, TriangleType(t))


def test_verify_report():
    assert verify_antipodal(5).passed
