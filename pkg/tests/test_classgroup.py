import itertools

import pytest

from oracles import analytic_class_number
from orderscope.classgroup import class_group, minkowski_bound
from orderscope.errors import ResourceLimitError
from orderscope.quadfield import QuadField, ideal


@pytest.mark.parametrize("d", [-1, -2, -3, -5, -6, -14, -21, -23, -26, -30, 2, 3, 5, 6, 7, 10, 13,
                               15, 79, 82])
def test_class_number_matches_analytic_formula(d):
    assert class_group(QuadField(d)).h == analytic_class_number(d)


@pytest.mark.parametrize("d, invariants", [
    (-1, ()), (-5, (2,)), (10, (2,)), (-14, (4,)), (-21, (2, 2)), (-30, (2, 2)), (-26, (6,)),
])
def test_structure(d, invariants):
    assert class_group(QuadField(d)).group.invariant_factors == invariants


@pytest.mark.parametrize("d", [-5, -14, -21, 10, 15])
def test_class_map_is_a_homomorphism(d):
    K = QuadField(d)
    cl = class_group(K)
    G = cl.group
    primes = [P for p in (2, 3, 5, 7, 11) for P in K.primes_over(p)]
    for P, Q in itertools.product(primes, repeat=2):
        assert cl.class_of(P * Q) == G.add(cl.class_of(P), cl.class_of(Q))
    for P in primes:
        principal = K.is_principal(P) is not None
        assert (cl.class_of(P) == G.zero) == principal


def test_every_class_has_a_prime_coprime_to_avoid():
    K = QuadField(-21)
    cl = class_group(K)
    avoid = ideal(K, 6)
    for g in cl.group.elements:
        P = cl.representative_prime(g, avoid)
        assert cl.class_of(P) == g and avoid.norm % P.norm and (P + avoid).norm == 1


def test_minkowski_bounds():
    assert minkowski_bound(QuadField(-5)) == 2
    assert minkowski_bound(QuadField(10)) == 3


def test_disc_cap(monkeypatch):
    monkeypatch.setenv("ORDERSCOPE_CAPS", "disc=100")
    with pytest.raises(ResourceLimitError):
        class_group(QuadField(-101))
