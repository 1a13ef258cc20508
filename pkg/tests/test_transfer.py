import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_lengths_imag, imag_elements
from orderscope.errors import DomainError
from orderscope.ordercore import order_context
from orderscope.quadfield import QuadField
from orderscope.transfer import (INDETERMINATE, NOT_TRANSFER_KRULL, TRANSFER_KRULL, beta,
                                 compare_lengths, consistency_violations, decide,
                                 is_absolutely_irreducible, is_order_atom, is_R_atom,
                                 lengths_in_order, oracle_check, order_elements, r_elements,
                                 r_factorizations, remark_scenario, verify_T1, verify_T2)
from orderscope.zerosum import is_atom

SWEEP = [(d, f) for d in (-6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13) for f in (2, 3, 4, 5)]
TRUE_CELLS = {(-3, 2), (2, 3), (5, 2), (5, 3), (13, 2)}


def test_decide_examples():
    v = decide(order_context(5, 2))
    assert v.verdict == TRANSFER_KRULL and v.branch == 1
    assert v.consequences == {"inclusion_is_transfer_hom": True, "beta_available": True}
    v = decide(order_context(-1, 2))
    assert v.verdict == NOT_TRANSFER_KRULL and not v.condition_a.holds
    v = decide(order_context(-5, 2))
    assert v.branch == 2 and not v.condition_b.holds
    assert v.condition_b.witness.valuation == 3


def test_decide_resource_limit(monkeypatch):
    monkeypatch.setenv("ORDERSCOPE_CAPS", "disc=10")
    v = decide(order_context(-89, 2))
    assert v.verdict == INDETERMINATE and v.is_transfer_krull is None and v.reason


def test_branch_two_fixture():
    v = decide(order_context(10, 7))
    assert v.branch == 2 and v.condition_a.holds and v.verdict == TRANSFER_KRULL
    assert v.profiles == {7: {1}}


@pytest.mark.parametrize("d, f", SWEEP)
def test_sweep_verdicts_agree_with_oracles(d, f):
    o = order_context(d, f)
    v = decide(o)
    assert v.is_transfer_krull == ((d, f) in TRUE_CELLS)
    assert oracle_check(o, 60, v)["agrees"]
    assert consistency_violations(o) == []


def test_gaussian_conductor_two_lengths():
    o = order_context(-1, 2)
    K = o.field
    assert lengths_in_order(o, K(8)) == brute_lengths_imag(-1, 2, (8, 0)) == {2, 3}


def test_eisenstein_conductor_two_is_half_factorial():
    # Z[sqrt(-3)]: every element up to norm 200 has a single factorization length
    o = order_context(-3, 2)
    K = o.field
    for a, b, _ in imag_elements(-3, 200):
        if b % 2 == 0 and (a, b) > (0, 0):
            assert len(brute_lengths_imag(-3, 2, (a, b))) == 1
            if abs(K(a, b).norm()) > 1:
                assert lengths_in_order(o, K(a, b)) == brute_lengths_imag(-3, 2, (a, b))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(-1, 2), (-1, 3), (-2, 2), (-5, 2), (-6, 3)]), st.data())
def test_lengths_match_divisor_oracle(df, data):
    d, f = df
    o = order_context(d, f)
    K = o.field
    cands = [(a, b) for a, b, N in imag_elements(d, 150) if b % f == 0 and N > 1]
    a, b = data.draw(st.sampled_from(cands))
    assert lengths_in_order(o, K(a, b)) == brute_lengths_imag(d, f, (a, b))


def test_verify_T2_examples():
    r = verify_T2(order_context(-1, 2), 20)
    assert not r.ok
    u, b, c = r.witness.u, r.witness.b, r.witness.c
    assert b * c == u and str(u) == "-2"
    r = verify_T2(order_context(5, 4), 100)
    assert not r.ok and str(r.witness.u) == "-4*w"
    r = verify_T2(order_context(5, 2), 400)
    assert r.ok and r.checked == 259
    with pytest.raises(DomainError):
        verify_T2(order_context(5, 2), 1)


def test_verify_T1_examples():
    t = verify_T1(order_context(5, 2))
    assert t["holds"] and t["witness"] is None
    t = verify_T1(order_context(-1, 3))
    assert not t["holds"] and t["witness"] == "1+w"


def test_compare_lengths():
    r = compare_lengths(order_context(5, 2), 200)
    assert r["ok"] and r["all_singletons"] and r["checked"] > 0
    with pytest.raises(DomainError):
        compare_lengths(order_context(-1, 2), 50)


def test_compare_lengths_nontrivial_class_group():
    r = compare_lengths(order_context(10, 7), 300)
    # two ideal classes make the zero-sum side half-factorial
    assert r["ok"] and r["all_singletons"]


def test_remark_scenario():
    with pytest.raises(DomainError):
        remark_scenario(order_context(5, 2), 100)
    # h = 2 but the profile over 2 is {2,3}, so no construction applies
    assert remark_scenario(order_context(-5, 2), 400) is None


def test_beta_multiplicative_and_atoms():
    K = QuadField(-5)
    xs = r_elements(K, 60)
    for x in xs[:25]:
        for y in xs[:25]:
            assert beta(K, x * y) == beta(K, x) * beta(K, y)
    for x in xs:
        assert is_R_atom(K, x) == is_atom(beta(K, x))


def test_absolute_irreducibility():
    K = QuadField(-5)
    assert is_absolutely_irreducible(K, K(2))  # 2R is the square of a prime ideal
    assert not is_absolutely_irreducible(K, K(1, 1))  # (1+w)^2 is also 2 times an element of norm 9
    assert len(r_factorizations(K, K(1, 1) ** 2)) == 2
    assert is_absolutely_irreducible(K, K(3, 2))  # prime element of norm 29
    assert len(r_factorizations(K, K(6))) == 2


def test_order_atoms_are_order_elements():
    o = order_context(-1, 3)
    for x in order_elements(o, 80):
        assert o.is_in_order(x)
        if is_order_atom(o, x):
            assert lengths_in_order(o, x) == {1}
