"""Transfer Krull decision for quadratic orders, and brute-force cross-checks.

:func:`decide` combines two tests.  The global one asks whether every
residue mod ``fR`` can be moved into ``O/fR`` by a unit of ``R``.  The
local one reads the atom valuations at each prime over the conductor.
The remaining functions check the resulting verdict against first
principles on bounded element ranges: factorizations inside ``O``, the
lifting property for the inclusion ``O -> R``, and sets of lengths against
the zero-sum model of the class group.

Elements of ``O`` are handled up to associates in ``O``: an element ``x``
is the generator ``g`` of ``xR`` times one representative of
``R^x / O^x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy import factorint

from .classgroup import class_group
from .errors import DomainError, ResourceLimitError
from .localmonoid import UNBOUNDED, condition_b, local_context
from .ordercore import ConditionResult, OrderContext
from .quadfield import QuadField, QuadInt, ideal, ideal_divisors
from .zerosum import ZeroSumSequence, is_atom, length_set

TRANSFER_KRULL = "transfer_krull"
NOT_TRANSFER_KRULL = "not_transfer_krull"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class TransferVerdict:
    verdict: str
    branch: int | None
    condition_a: ConditionResult | None
    condition_b: ConditionResult | None
    consequences: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict)
    reason: str | None = None

    @property
    def is_transfer_krull(self) -> bool | None:
        if self.verdict == INDETERMINATE:
            return None
        return self.verdict == TRANSFER_KRULL

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "branch": self.branch,
            "condition_a": self.condition_a.to_dict() if self.condition_a else None,
            "condition_b": self.condition_b.to_dict() if self.condition_b else None,
            "consequences": dict(self.consequences),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class T2Witness:
    """``u = b*c`` in R with no unit ``e`` putting both ``e*b`` and ``c/e`` in O."""

    u: QuadInt
    b: QuadInt
    c: QuadInt

    def to_dict(self):
        return {"u": str(self.u), "b": str(self.b), "c": str(self.c)}


def _inverse_unit(e: QuadInt) -> QuadInt:
    return e.conj() * e.norm()


def _profiles(octx: OrderContext) -> dict:
    return {p: local_context(octx, p).local_atoms()[1] for p in sorted(factorint(octx.f))}


def decide(octx: OrderContext) -> TransferVerdict:
    """Verdict on whether the order is transfer Krull; resource limits give INDETERMINATE."""
    try:
        h = octx.classgroup.h
        branch = 2 if h == 2 else 1
        a = octx.condition_a()
        b = condition_b(octx, h)
        profiles = _profiles(octx) if octx.spec_map().bijective else {}
    except ResourceLimitError as exc:
        return TransferVerdict(INDETERMINATE, None, None, None,
                               {"inclusion_is_transfer_hom": None, "beta_available": None},
                               reason=str(exc))
    tk = a.holds and b.holds
    all_one = bool(profiles) and all(pr is not UNBOUNDED and pr == {1} for pr in profiles.values())
    inclusion = tk and all_one
    return TransferVerdict(
        TRANSFER_KRULL if tk else NOT_TRANSFER_KRULL,
        branch, a, b,
        {"inclusion_is_transfer_hom": inclusion, "beta_available": inclusion},
        profiles,
    )


# -- element enumeration ----------------------------------------------------------------------


def r_elements(K: QuadField, norm_bound: int, min_norm: int = 2) -> list[QuadInt]:
    """Generators of the principal ideals with norm in [min_norm, norm_bound]."""
    out = []
    for I in K.ideals_up_to(norm_bound):
        if I.norm >= min_norm:
            g = K.is_principal(I)
            if g is not None:
                out.append(g)
    return out


def order_elements(octx: OrderContext, norm_bound: int, min_norm: int = 2) -> list[QuadInt]:
    """Nonzero elements of O up to associates in O, ordered by (norm, ideal, coset)."""
    out = []
    for g in r_elements(octx.field, norm_bound, min_norm):
        for e in octx.unit_coset_reps:
            x = g * e
            if octx.is_in_order(x):
                out.append(x)
    return out


def _assoc_key(octx: OrderContext, x: QuadInt):
    K = octx.field
    I = ideal(K, x)
    g = K.is_principal(I)
    eps = x / g
    for j, e in enumerate(octx.unit_coset_reps):
        if octx.is_in_order(eps * _inverse_unit(e)):
            return I.key, j
    raise AssertionError("unit coset not found")


def _proper_principal_divisors(K: QuadField, x: QuadInt):
    I = ideal(K, x)
    for J in ideal_divisors(K, I):
        if J.norm in (1, I.norm):
            continue
        b = K.is_principal(J)
        if b is not None:
            yield b


def order_splits(octx: OrderContext, x: QuadInt):
    """All ``(y, z)`` with ``x = y*z``, ``y, z`` non-units of O (up to O-units)."""
    for b in _proper_principal_divisors(octx.field, x):
        c = x / b
        for e in octx.unit_coset_reps:
            y, z = b * e, c * _inverse_unit(e)
            if octx.is_in_order(y) and octx.is_in_order(z):
                yield y, z


def is_order_atom(octx: OrderContext, x: QuadInt) -> bool:
    if not octx.is_in_order(x):
        raise DomainError(f"{x} is not in the order")
    if not x or x.is_unit():
        return False
    return next(order_splits(octx, x), None) is None


def is_R_atom(K: QuadField, x: QuadInt) -> bool:
    if not x or x.is_unit():
        return False
    return next(_proper_principal_divisors(K, x), None) is None


def lengths_in_order(octx: OrderContext, x: QuadInt) -> frozenset[int]:
    """The set of lengths of ``x`` in the multiplicative monoid of O."""
    if not x:
        raise DomainError("zero has no factorizations")
    if not octx.is_in_order(x):
        raise DomainError(f"{x} is not in the order")
    memo = octx.__dict__.setdefault("_lengths_memo", {})
    return _lengths_rec(octx, x, memo)


def _lengths_rec(octx, x, memo):
    if x.is_unit():
        return frozenset({0})
    key = _assoc_key(octx, x)
    if key in memo:
        return memo[key]
    result = set()
    for y, z in order_splits(octx, x):
        ly = _lengths_rec(octx, y, memo)
        lz = _lengths_rec(octx, z, memo)
        result.update(a + b for a in ly for b in lz)
    out = frozenset(result) if result else frozenset({1})
    memo[key] = out
    return out


# -- beta and factorizations in R ---------------------------------------------------------------


def beta(ctx: OrderContext | QuadField, x: QuadInt) -> ZeroSumSequence:
    """The sequence of ideal classes of the primes dividing ``xR``."""
    K = ctx.field if isinstance(ctx, OrderContext) else ctx
    cl = class_group(K)
    classes = []
    for P, e in K.factor(x):
        classes += [cl.class_of(P)] * e
    return ZeroSumSequence.from_elements(cl.group, classes)


def r_factorizations(K: QuadField, x: QuadInt) -> set[tuple]:
    """Factorizations of ``x`` in R, each a sorted tuple of atom exponent vectors
    over the prime ideals dividing ``x``."""
    cl = class_group(K)
    G = cl.group
    primes = [(P, e) for P, e in K.factor(x)]
    classes = [cl.class_of(P) for P, _ in primes]

    def zero(d):
        return G.sum(itertools.chain.from_iterable([g] * k for g, k in zip(classes, d))) == G.zero

    def minimal(d):
        for sub in itertools.product(*(range(k + 1) for k in d)):
            if any(sub) and sub != d and zero(sub):
                return False
        return True

    out = set()

    def rec(exps, acc):
        if not any(exps):
            out.add(tuple(sorted(acc)))
            return
        i = next(j for j, k in enumerate(exps) if k)
        ranges = [range(k + 1) for k in exps]
        ranges[i] = range(1, exps[i] + 1)
        for d in itertools.product(*ranges):
            if zero(d) and minimal(d):
                rec(tuple(k - c for k, c in zip(exps, d)), acc + [d])

    rec(tuple(e for _, e in primes), [])
    return out


def is_absolutely_irreducible(K: QuadField, x: QuadInt, max_power: int = 4) -> bool:
    """Atom of R whose powers up to ``max_power`` factor uniquely."""
    if not is_R_atom(K, x):
        return False
    return all(len(r_factorizations(K, x ** n)) == 1 for n in range(2, max_power + 1))


# -- verifiers --------------------------------------------------------------------------------------


def verify_T1(octx: OrderContext, norm_bound: int = 1) -> dict:
    """Surjectivity up to units and unit reflection for the inclusion O -> R."""
    if norm_bound < 1:
        raise DomainError("norm_bound must be >= 1")
    a = octx.condition_a()
    reflect = True
    for u in sorted(octx.unit_image):
        if octx.in_order_residue(u):
            inv = octx.reduce(_inverse_unit(octx.lift(u)))
            reflect &= octx.in_order_residue(inv)
    return {"holds": a.holds and reflect, "surjective": a.holds, "unit_reflection": reflect,
            "witness": str(a.witness) if a.witness is not None else None}


@dataclass(frozen=True)
class T2Report:
    ok: bool
    witness: T2Witness | None
    checked: int
    norm_bound: int

    def to_dict(self):
        return {"ok": self.ok, "witness": self.witness.to_dict() if self.witness else None,
                "coverage": {"elements": self.checked, "norm_bound": self.norm_bound}}


def _t2_failure(octx, u):
    for b in _proper_principal_divisors(octx.field, u):
        c = u / b
        if not any(octx.is_in_order(b * e) and octx.is_in_order(c * _inverse_unit(e))
                   for e in octx.unit_coset_reps):
            return T2Witness(u, b, c)
    return None


def verify_T2(octx: OrderContext, norm_bound: int) -> T2Report:
    """Lifting of R-factorizations to O for every element up to ``norm_bound``."""
    if norm_bound < 2:
        raise DomainError("norm_bound must be >= 2")
    elements = order_elements(octx, norm_bound)
    for i, u in enumerate(elements):
        w = _t2_failure(octx, u)
        if w is not None:
            return T2Report(False, w, i + 1, norm_bound)
    return T2Report(True, None, len(elements), norm_bound)


def find_length_anomaly(octx: OrderContext, norm_bound: int):
    """First ``(u, L_O(u), L(beta(u)))`` with differing length sets, or None."""
    for u in order_elements(octx, norm_bound):
        lo = lengths_in_order(octx, u)
        lb = length_set(beta(octx, u))
        if lo != lb:
            return u, lo, lb
    return None


def compare_lengths(octx: OrderContext, norm_bound: int) -> dict:
    verdict = decide(octx)
    if not verdict.is_transfer_krull:
        raise DomainError("length comparison applies only to transfer Krull orders")
    mismatches = []
    singletons = True
    elements = order_elements(octx, norm_bound)
    for u in elements:
        lo = lengths_in_order(octx, u)
        lb = length_set(beta(octx, u))
        singletons &= len(lo) == 1
        if lo != lb:
            mismatches.append({"u": str(u), "order": sorted(lo), "zero_sum": sorted(lb)})
    return {"ok": not mismatches, "checked": len(elements), "norm_bound": norm_bound,
            "all_singletons": singletons, "mismatches": mismatches}


def remark_scenario(octx: OrderContext, norm_bound: int) -> T2Witness | None:
    """With two ideal classes and a {1,2} profile over a non-principal prime,
    build an O-atom ``a`` with ``aR = (PQ)^2`` that defeats the lifting property."""
    cl = octx.classgroup
    if cl.h != 2:
        raise DomainError("the scenario needs exactly two ideal classes")
    K = octx.field
    for p, profile in _profiles(octx).items():
        lctx = local_context(octx, p)
        P = lctx.primes_over[0]
        if profile is UNBOUNDED or profile != {1, 2} or K.is_principal(P) is not None:
            continue
        Q = cl.representative_prime(cl.class_of(P), avoid=octx.conductor)
        if ((P * Q) ** 2).norm > norm_bound:
            continue
        g = K.is_principal((P * Q) ** 2)
        b = K.is_principal(P * Q)
        for e in octx.unit_coset_reps:
            a = g * e
            if octx.is_in_order(a) and is_order_atom(octx, a):
                c = a / b
                if not any(octx.is_in_order(b * t) and octx.is_in_order(c * _inverse_unit(t))
                           for t in octx.unit_coset_reps):
                    return T2Witness(a, b, c)
    return None


def consistency_violations(octx: OrderContext) -> list[str]:
    """Implications that must hold on every order; returns the violated ones."""
    out = []
    a = octx.condition_a()
    if a.holds:
        iso, _, _ = octx.picard_comparison()
        if not iso:
            out.append("condition (a) holds but Pic(O) and Cl(R) differ")
        if not octx.spec_map().bijective:
            out.append("condition (a) holds but the Spec-map is not bijective")
        else:
            for p, pr in _profiles(octx).items():
                if pr is UNBOUNDED or 1 not in pr:
                    out.append(f"condition (a) holds but 1 is not an atom valuation over {p}")
    v = decide(octx)
    if v.is_transfer_krull:
        if not octx.picard_comparison()[0]:
            out.append("transfer Krull but Pic(O) and Cl(R) differ")
        if not octx.spec_map().bijective:
            out.append("transfer Krull but the Spec-map is not bijective")
    if v.branch == 2 and v.consequences.get("inclusion_is_transfer_hom"):
        if any(pr is UNBOUNDED or 2 in pr for pr in v.profiles.values()):
            out.append("inclusion flagged as transfer with valuation 2 atoms")
    return out


def oracle_check(octx: OrderContext, norm_bound: int, verdict: TransferVerdict | None = None) -> dict:
    """Cross-check a verdict against the brute-force verifiers.

    A positive verdict must pass both lifting checks; a negative one must be
    explained by a failed T1 (global witness) or, when only the local test
    failed, by a T2 witness or a length-set anomaly within the bound.
    """
    v = decide(octx) if verdict is None else verdict
    t1 = verify_T1(octx, norm_bound)
    t2 = verify_T2(octx, norm_bound)
    anomaly = None
    if v.is_transfer_krull is None:
        agrees = None
    elif v.is_transfer_krull:
        agrees = t1["holds"] and t2.ok
    elif not v.condition_a.holds:
        agrees = not t1["holds"]
    else:
        if t2.ok:
            found = find_length_anomaly(octx, norm_bound)
            if found is not None:
                u, lo, lb = found
                anomaly = {"u": str(u), "order": sorted(lo), "zero_sum": sorted(lb)}
        agrees = (not t2.ok) or anomaly is not None
    return {"agrees": agrees, "t1": t1, "t2": t2.to_dict(), "anomaly": anomaly,
            "coverage": {"norm_bound": norm_bound, "elements": t2.checked}}
