"""Finite-state model of the localization of an order at a conductor prime.

Fix a prime ``p | f`` with ``k = v_p(f)`` and put ``M = p**k``.  Locally at
``p`` the order is ``O_p = Z_(p) + M*R_p``, and ``R_p`` is a semilocal PID
with primes ``P_1, ..., P_s`` over ``p``.  Writing ``x = u * pi**v`` with
fixed uniformizers ``pi_i`` and a local unit ``u``, the element ``x`` lies
in ``O_p`` iff ``u * pi**v`` reduces into ``B = Z/M`` inside ``A = R/MR``.
Units of ``O_p`` are exactly the ``u`` with residue in ``B^x``, so the
reduced monoid of ``O_p`` is the set of member states
``(v, q)`` with ``q`` in ``A^x / B^x``; products add ``v`` and multiply ``q``.

Atom bound in rank one: if ``v >= 2*alpha`` then
``(v, q) = (alpha, 1) * (v - alpha, q)`` and both factors have valuation at
least ``alpha``, hence lie in ``M*R_p`` and are members.  So every atom has
``v < 2*alpha`` and a table up to ``2*alpha`` is complete.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from sympy import factorint

from .caps import get_caps
from .errors import DomainError, ResourceLimitError
from .ordercore import ConditionResult, OrderContext
from .quadfield import Ideal, QuadInt


class _Unbounded:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNBOUNDED"

    def __str__(self):
        return "unbounded"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


@dataclass(frozen=True, order=True)
class LocalState:
    """Class of a local element: valuations at ``P_1..P_s`` and unit class index."""

    valuations: tuple[int, ...]
    residue: int

    def to_dict(self):
        return {"valuations": list(self.valuations), "residue": self.residue}


class LocalMonoidContext:
    def __init__(self, octx: OrderContext, p: int):
        if octx.f % p or len(factorint(p)) != 1 or factorint(p)[p] != 1:
            raise DomainError(f"{p} is not a prime containing the conductor; the localization is a DVR")
        K = octx.field
        self.order = octx
        self.field = K
        self.p = p
        self.k = factorint(octx.f)[p]
        self.M = p ** self.k
        self.primes_over: tuple[Ideal, ...] = K.primes_over(p)
        self.rank = len(self.primes_over)
        self.alpha = tuple(K.ideal_valuation(octx.conductor, P) for P in self.primes_over)
        self.cap = 2 * max(self.alpha)
        size = self.M ** 2
        if size > get_caps().local_states:
            raise ResourceLimitError(f"|R/{self.M}R| = {size} exceeds cap", size=size)

    def __repr__(self):
        return f"LocalMonoidContext(d={self.field.d}, f={self.order.f}, p={self.p})"

    # -- residue ring A = R/MR and the unit quotient A^x / B^x ----------------------------

    def _red(self, x: QuadInt) -> tuple[int, int]:
        return (x.a % self.M, x.b % self.M)

    def _mul(self, r, s) -> tuple[int, int]:
        K = self.field
        return self._red(QuadInt(r[0], r[1], K) * QuadInt(s[0], s[1], K))

    @cached_property
    def _B_units(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, 0) for a in range(self.M) if a % self.p)

    @cached_property
    def _quotient(self):
        """Canonical representatives of A^x/B^x, and the class map."""
        K, M = self.field, self.M
        reps, cls = [], {}
        # the class of 1 gets index 0
        for r in [(1 % M, 0)] + [(a, b) for a in range(M) for b in range(M)]:
            if r in cls or QuadInt(r[0], r[1], K).norm() % self.p == 0:
                continue
            orbit = {self._mul(r, u) for u in self._B_units}
            idx = len(reps)
            reps.append(min(orbit))
            for s in orbit:
                cls[s] = idx
        return tuple(reps), cls

    @property
    def quotient_reps(self) -> tuple[tuple[int, int], ...]:
        return self._quotient[0]

    def class_index(self, r) -> int:
        return self._quotient[1][(r[0] % self.M, r[1] % self.M)]

    @cached_property
    def _qmul(self) -> tuple[tuple[int, ...], ...]:
        reps = self.quotient_reps
        return tuple(tuple(self.class_index(self._mul(r, s)) for s in reps) for r in reps)

    def qmul(self, i: int, j: int) -> int:
        return self._qmul[i][j]

    @cached_property
    def _qinv(self) -> tuple[int, ...]:
        n = len(self.quotient_reps)
        return tuple(next(j for j in range(n) if self._qmul[i][j] == 0) for i in range(n))

    # -- uniformizers and the element pi^v --------------------------------------------------

    @cached_property
    def uniformizers(self) -> tuple[QuadInt, ...]:
        """``pi_i`` with v_{P_i} = 1 and v_{P_j} = 0 for the other primes over p."""
        K = self.field
        out = []
        for i, P in enumerate(self.primes_over):
            found = None
            for r in itertools.count(1):
                for a, b in sorted(itertools.product(range(-r, r + 1), repeat=2),
                                   key=lambda ab: (abs(ab[0]) + abs(ab[1]), ab)):
                    x = QuadInt(a, b, K)
                    if not x:
                        continue
                    if all(K.valuation(x, Q) == (1 if j == i else 0)
                           for j, Q in enumerate(self.primes_over)):
                        found = x
                        break
                if found is not None:
                    break
            out.append(found)
        return tuple(out)

    def _pi_power(self, v) -> QuadInt:
        x = self.field.one
        for pi, e in zip(self.uniformizers, v):
            x = x * pi ** e
        return x

    @cached_property
    def _pi_res_cache(self) -> dict:
        return {}

    def _pi_residue(self, v) -> tuple[int, int]:
        v = tuple(v)
        c = self._pi_res_cache
        if v not in c:
            r = (1 % self.M, 0)
            for pi, e in zip(self.uniformizers, v):
                for _ in range(e):
                    r = self._mul(r, self._red(pi))
            c[v] = r
        return c[v]

    # -- states ---------------------------------------------------------------------------------

    def is_member(self, state: LocalState) -> bool:
        rep = self.quotient_reps[state.residue]
        r = self._mul(rep, self._pi_residue(state.valuations))
        return r[1] == 0

    def is_unit(self, state: LocalState) -> bool:
        return not any(state.valuations) and state.residue == 0

    def mul(self, s: LocalState, t: LocalState) -> LocalState:
        return LocalState(tuple(a + b for a, b in zip(s.valuations, t.valuations)),
                          self.qmul(s.residue, t.residue))

    def divide(self, s: LocalState, t: LocalState) -> LocalState | None:
        v = tuple(a - b for a, b in zip(s.valuations, t.valuations))
        if min(v) < 0:
            return None
        return LocalState(v, self.qmul(s.residue, self._qinv[t.residue]))

    def states_at(self, v) -> list[LocalState]:
        return [LocalState(tuple(v), q) for q in range(len(self.quotient_reps))]

    def is_atom_state(self, s: LocalState) -> bool:
        """Exact test: a decomposition only involves componentwise smaller valuations."""
        if not self.is_member(s) or self.is_unit(s):
            return False
        for w in itertools.product(*(range(x + 1) for x in s.valuations)):
            if not any(w) or w == s.valuations:
                continue
            for t in self.states_at(w):
                if self.is_member(t):
                    rest = self.divide(s, t)
                    if self.is_member(rest):
                        return False
        return True

    def state_of(self, x: QuadInt, denominator: QuadInt | int = 1) -> LocalState:
        """Local state of ``x / denominator`` (denominator a unit at every P_i)."""
        K = self.field
        den = K(denominator) if isinstance(denominator, int) else denominator
        if not x or not den:
            raise DomainError("zero has no local state")
        if any(K.valuation(den, P) for P in self.primes_over):
            raise DomainError("denominator is not a unit at p")
        v = tuple(K.valuation(x, P) for P in self.primes_over)
        Pi = self._pi_power(v) * den
        N = Pi.norm()
        e = 0
        while N % self.p == 0:
            N //= self.p
            e += 1
        y = x * Pi.conj()
        pe = self.p ** e
        if y.a % pe or y.b % pe:
            raise AssertionError("unit part is not integral at p")
        u = QuadInt(y.a // pe, y.b // pe, K) * pow(N, -1, self.M)
        return LocalState(v, self.class_index(self._red(u)))

    def membership(self, x: QuadInt, denominator: QuadInt | int = 1) -> bool:
        if any(self.field.valuation(x, P) < 0 for P in self.primes_over):
            return False
        return self.is_member(self.state_of(x, denominator))

    # -- atoms ----------------------------------------------------------------------------------

    @cached_property
    def _rank_one_table(self):
        if self.rank != 1:
            raise DomainError("exhaustive atom tables exist only in rank one")
        n = len(self.quotient_reps)
        if n * (self.cap + 1) > get_caps().local_states:
            raise ResourceLimitError("local state table too large", states=n * (self.cap + 1))
        members = {v: [q for q in range(n) if self.is_member(LocalState((v,), q))]
                   for v in range(self.cap + 1)}
        (alpha,) = self.alpha
        atoms = []
        for v in range(1, self.cap + 1):
            for q in members[v]:
                s = LocalState((v,), q)
                if self.is_atom_state(s):
                    atoms.append(s)
        # finitely primary axioms and the atom bound
        if members[0] != [0]:
            raise AssertionError("a valuation-zero member is not a unit")
        for v in range(alpha, self.cap + 1):
            if len(members[v]) != n:
                raise AssertionError(f"valuation {v} >= alpha but some class is not a member")
        if any(s.valuations[0] >= 2 * alpha for s in atoms):
            raise AssertionError("atom found at valuation >= 2*alpha")
        return members, tuple(atoms)

    def local_atoms(self):
        """(atoms, profile); rank >= 2 returns ([], UNBOUNDED)."""
        if self.rank >= 2:
            return [], UNBOUNDED
        _, atoms = self._rank_one_table
        return list(atoms), frozenset(s.valuations[0] for s in atoms)

    @property
    def profile(self):
        return self.local_atoms()[1]

    def large_atom(self, bound: int, search: int | None = None) -> LocalState | None:
        """An atom with some valuation > ``bound`` (rank >= 2), or None."""
        if self.rank < 2:
            raise DomainError("rank one profiles are finite")
        search = 2 * max(self.alpha) + 2 if search is None else search
        for extra in range(search):
            v1 = bound + 1 + extra
            for rest in itertools.product(range(1, search + 1), repeat=self.rank - 1):
                for s in self.states_at((v1,) + rest):
                    if self.is_atom_state(s):
                        return s
        return None

    def to_dict(self):
        _, profile = self.local_atoms()
        K = self.field
        cl = self.order.classgroup
        return {
            "prime": {
                "over": self.p,
                "norm": [P.norm for P in self.primes_over],
                "r_primes": [str(P) for P in self.primes_over],
                "principal": [K.is_principal(P) is not None for P in self.primes_over],
            },
            "rank": self.rank,
            "alpha": list(self.alpha),
            "atom_valuations": "unbounded" if profile is UNBOUNDED else sorted(profile),
        }


def local_context(octx: OrderContext, p: int) -> LocalMonoidContext:
    cache = octx.__dict__.setdefault("_local_cache", {})
    if p not in cache:
        cache[p] = LocalMonoidContext(octx, p)
    return cache[p]


def membership(lctx: LocalMonoidContext, x: QuadInt, denominator=1) -> bool:
    return lctx.membership(x, denominator)


def local_atoms(lctx: LocalMonoidContext):
    return lctx.local_atoms()


@dataclass(frozen=True)
class ConditionBWitness:
    p: int
    prime: str
    valuation: object      # int, "unbounded", or None for a Spec-map failure
    reason: str

    def to_dict(self):
        return {"p": self.p, "prime": self.prime, "reason": self.reason,
                "valuation": self.valuation}


def condition_b(octx: OrderContext, cl_size: int) -> ConditionResult:
    spec = octx.spec_map()
    bad = spec.first_non_injective()
    if bad is not None:
        p, Ps = bad
        return ConditionResult(False, ConditionBWitness(p.p, str(p), None, "spec-map not injective"))
    K = octx.field
    for p in sorted(factorint(octx.f)):
        lctx = local_context(octx, p)
        _, profile = lctx.local_atoms()
        P = lctx.primes_over[0]
        if profile is UNBOUNDED:
            return ConditionResult(False, ConditionBWitness(p, str(P), "unbounded", "rank >= 2"))
        if cl_size == 2:
            allowed = {1} if K.is_principal(P) is not None else {1, 2}
        else:
            allowed = {1}
        off = sorted(profile - allowed)
        if off:
            reason = ("valuation outside {1} over a principal prime" if allowed == {1}
                      else "valuation outside {1, 2}")
            return ConditionResult(False, ConditionBWitness(p, str(P), off[0], reason))
    return ConditionResult(True, None)
