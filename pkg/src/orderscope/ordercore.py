"""Orders ``O = Z + f*R`` in a quadratic ring of integers ``R``.

The conductor of ``O`` is ``fR``, so everything about ``O`` is visible in
the finite ring ``R/fR``: residues are pairs ``(a, b)`` with
``a, b in [0, f)`` and ``O/fR`` is the copy of ``Z/f`` given by ``b = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint

from .caps import get_caps
from .classgroup import ClassGroupData, class_group
from .errors import DomainError, NotProperOrderError, ResourceLimitError
from .quadfield import Ideal, QuadField, QuadInt, unit_image_mod

Residue = tuple[int, int]


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: object = None

    def to_dict(self):
        w = self.witness
        if hasattr(w, "to_dict"):
            w = w.to_dict()
        elif w is not None and not isinstance(w, (int, str, list, dict)):
            w = str(w)
        return {"holds": self.holds, "witness": w}


@dataclass(frozen=True)
class OPrime:
    """The prime ``pZ + fR`` of ``O`` lying over a prime divisor ``p`` of ``f``."""

    p: int
    f: int

    def __str__(self):
        return f"{self.p}Z+{self.f}R"


@dataclass(frozen=True)
class SpecReport:
    primes_over_conductor: tuple[tuple[OPrime, tuple[Ideal, ...]], ...]

    @property
    def bijective(self) -> bool:
        return all(len(Ps) == 1 for _, Ps in self.primes_over_conductor)

    def first_non_injective(self):
        for p, Ps in self.primes_over_conductor:
            if len(Ps) > 1:
                return p, Ps
        return None

    def to_dict(self):
        return {
            "bijective": self.bijective,
            "primes": [{"o_prime": str(p), "r_primes": [str(P) for P in Ps]}
                       for p, Ps in self.primes_over_conductor],
        }


class OrderContext:
    """The order of conductor ``f`` in ``field``, with its residue data mod ``fR``."""

    def __init__(self, field: QuadField, f: int):
        f = int(f)
        if f < 2:
            raise NotProperOrderError(f"f = {f}: only proper orders (f >= 2) are supported")
        if f * f > get_caps().residue_ring:
            raise ResourceLimitError(f"|R/fR| = {f * f} exceeds cap", size=f * f)
        self.field = field
        self.f = f
        self.conductor = Ideal(f, 0, f, field)
        self.residues: tuple[Residue, ...] = tuple(self.conductor.residue_classes())
        if len(self.residues) != self.conductor.norm:
            raise AssertionError("residue enumeration disagrees with N(fR)")
        self._check_conductor()

    def __repr__(self):
        return f"OrderContext(d={self.field.d}, f={self.f})"

    def _check_conductor(self):
        # every nonzero residue r of R/fR has r*R outside O/fR
        w = (0, 1 % self.f)
        for r in self.residues:
            if r != (0, 0) and self.in_order_residue(self.rmul(r, w)) and self.in_order_residue(r):
                raise AssertionError(f"residue {r} would lie in the conductor")

    # -- residue arithmetic -----------------------------------------------------

    def reduce(self, x: QuadInt) -> Residue:
        return (x.a % self.f, x.b % self.f)

    def lift(self, r: Residue) -> QuadInt:
        return QuadInt(r[0], r[1], self.field)

    def rmul(self, r: Residue, s: Residue) -> Residue:
        return self.reduce(self.lift(r) * self.lift(s))

    def in_order_residue(self, r: Residue) -> bool:
        return r[1] % self.f == 0

    def is_unit_residue(self, r: Residue) -> bool:
        return math.gcd(self.lift(r).norm(), self.f) == 1

    @cached_property
    def classgroup(self) -> ClassGroupData:
        return class_group(self.field)

    @cached_property
    def units_R_mod_f(self) -> frozenset[Residue]:
        return frozenset(r for r in self.residues if self.is_unit_residue(r))

    @cached_property
    def units_O_mod_f(self) -> frozenset[Residue]:
        return frozenset((a, 0) for a in range(self.f) if math.gcd(a, self.f) == 1)

    @cached_property
    def unit_image(self) -> frozenset[Residue]:
        return unit_image_mod(self.field, self.conductor)

    @cached_property
    def unit_image_times_O(self) -> frozenset[Residue]:
        return frozenset(self.rmul(u, o) for u in self.unit_image for o in self.units_O_mod_f)

    @cached_property
    def picard_order(self) -> int:
        num = self.classgroup.h * len(self.units_R_mod_f)
        den = len(self.unit_image_times_O)
        if num % den:
            raise AssertionError("Picard order is not an integer")
        return num // den

    # -- units of R modulo units of O ----------------------------------------------

    @cached_property
    def unit_coset_reps(self) -> tuple[QuadInt, ...]:
        """Representatives of R^x / O^x (with 1 first)."""
        K = self.field
        if K.is_real:
            eps = K.fundamental_unit
            reps, e = [K.one], eps
            while not self.is_in_order(e):
                reps.append(e)
                e = e * eps
            return tuple(reps)
        reps = []
        for u in K.units():
            if not any(self.is_in_order(u * v.conj()) for v in reps):  # u / v
                reps.append(u)
        return tuple(reps)

    # -- membership -------------------------------------------------------------------

    def is_in_order(self, x: QuadInt) -> bool:
        return x.b % self.f == 0

    def is_regular(self, x: QuadInt) -> bool:
        """``x`` in O with invertible residue in O/fR."""
        if not self.is_in_order(x):
            raise DomainError(f"{x} is not in the order")
        return math.gcd(x.a, self.f) == 1

    def is_regular_R(self, x: QuadInt) -> bool:
        """``x`` in R with invertible residue in R/fR."""
        return math.gcd(x.norm(), self.f) == 1

    # -- Spec-map and Picard group --------------------------------------------------------

    def spec_map(self) -> SpecReport:
        groups = []
        K = self.field
        for p in sorted(factorint(self.f)):
            by_contraction: dict[frozenset, list[Ideal]] = {}
            for P in K.primes_over(p):
                # P n O, read off on the residues of O/fR
                contraction = frozenset(a for a in range(self.f) if P.contains(K(a)))
                by_contraction.setdefault(contraction, []).append(P)
            for Ps in by_contraction.values():
                groups.append((OPrime(p, self.f), tuple(Ps)))
        return SpecReport(tuple(groups))

    def picard_comparison(self) -> tuple[bool, int, QuadInt | None]:
        covered = self.unit_image_times_O
        missing = sorted(self.units_R_mod_f - covered)
        witness = self.lift(missing[0]) if missing else None
        return not missing, self.picard_order, witness

    def condition_a(self) -> ConditionResult:
        """Whether every residue of R/fR is moved into O/fR by some unit of R."""
        U = sorted(self.unit_image)
        for r in self.residues_sorted:
            if not any(self.in_order_residue(self.rmul(u, r)) for u in U):
                return ConditionResult(False, self.lift(r))
        return ConditionResult(True, None)

    @cached_property
    def residues_sorted(self) -> tuple[Residue, ...]:
        return tuple(sorted(self.residues))


def order_context(field: QuadField | int, f: int) -> OrderContext:
    if isinstance(field, int):
        field = QuadField(field)
    return OrderContext(field, f)


def is_in_order(octx: OrderContext, x: QuadInt) -> bool:
    return octx.is_in_order(x)


def is_regular(octx: OrderContext, x: QuadInt) -> bool:
    return octx.is_regular(x)


def is_regular_R(octx: OrderContext, x: QuadInt) -> bool:
    return octx.is_regular_R(x)


def spec_map(octx: OrderContext) -> SpecReport:
    return octx.spec_map()


def picard_comparison(octx: OrderContext):
    return octx.picard_comparison()


def condition_a(octx: OrderContext) -> ConditionResult:
    return octx.condition_a()
