import itertools

import pytest

from orderscope.errors import DomainError
from orderscope.localmonoid import UNBOUNDED, LocalState, condition_b, local_context
from orderscope.ordercore import order_context

SWEEP = [(d, f) for d in (-6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13) for f in (2, 3, 4, 5)]


def lctx(d, f, p):
    return local_context(order_context(d, f), p)


def test_context_examples():
    l = lctx(5, 2, 2)
    assert l.rank == 1 and l.alpha == (1,) and l.cap == 2
    l = lctx(-1, 3, 3)
    assert l.rank == 1 and l.alpha == (1,)
    l = lctx(-1, 5, 5)
    assert l.rank == 2 and l.alpha == (1, 1)
    with pytest.raises(DomainError):
        lctx(-1, 3, 2)


def test_membership_examples():
    l = lctx(5, 2, 2)
    K = l.field
    assert l.membership(K(2)) and l.membership(K.sqrt_d())
    l3 = lctx(-1, 3, 3)
    assert not l3.membership(l3.field(0, 1))
    assert l3.membership(l3.field(0, 1), 2) is False
    with pytest.raises(DomainError):
        l3.membership(l3.field(1), 3)


# hand-derived from the residue ring R/p^k R (see test docstrings in the README)
@pytest.mark.parametrize("d, f, p, profile", [
    (5, 2, 2, {1}),
    (5, 4, 2, {1, 2}),
    (2, 2, 2, {2, 3}),
    (-1, 2, 2, {2, 3}),
    (-1, 3, 3, {1}),
    (-3, 2, 2, {1}),
])
def test_rank_one_profiles(d, f, p, profile):
    assert lctx(d, f, p).local_atoms()[1] == profile


def test_rank_two_is_unbounded():
    assert lctx(-1, 5, 5).local_atoms() == ([], UNBOUNDED)


def test_condition_b_examples():
    o = order_context(5, 2)
    assert condition_b(o, o.classgroup.h).holds
    o = order_context(2, 2)
    r = condition_b(o, o.classgroup.h)
    assert not r.holds and r.witness.valuation == 2
    o = order_context(-1, 5)
    assert not condition_b(o, 1).holds


def test_branch_two_rules():
    # inert 7 in Q(sqrt(10)): profile {1}, so both branches accept
    o = order_context(10, 7)
    assert condition_b(o, 2).holds and condition_b(o, 1).holds
    # a {1,2} profile over a principal prime fails under either branch
    o = order_context(5, 4)
    assert not condition_b(o, 2).holds and not condition_b(o, 1).holds


@pytest.mark.parametrize("d, f", SWEEP)
def test_local_invariants(d, f):
    o = order_context(d, f)
    K = o.field
    for p in (2, 3, 5):
        if f % p:
            continue
        l = local_context(o, p)
        if l.rank == 1:
            atoms, profile = l.local_atoms()
            (alpha,) = l.alpha
            assert max(profile) < 2 * alpha
            n = len(l.quotient_reps)
            for v in range(0, l.cap + 1):
                for q in range(n):
                    s = LocalState((v,), q)
                    if l.is_member(s) and not l.is_unit(s):
                        assert v >= 1
                    if v >= alpha:
                        assert l.is_member(s)
            # atom set closed under the action of local units of O (trivial class)
            assert all(l.is_atom_state(l.mul(a, LocalState((0,), 0))) for a in atoms)
        else:
            for k in range(1, 11):
                s = l.large_atom(k)
                assert s is not None and max(s.valuations) > k
        # local states of global elements agree with global membership
        for a, b in itertools.product(range(-6, 7), repeat=2):
            x = K(a, b)
            if x:
                assert l.membership(x) == (x.b % l.M == 0)
