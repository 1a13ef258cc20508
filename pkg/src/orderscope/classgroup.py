"""Ideal class group of a quadratic ring of integers.

Every class contains an ideal of norm at most the Minkowski bound, so the
classes are read off from the ideals up to that bound: ``I ~ J`` iff
``I * conj(J)`` is principal.  The multiplication table of the classes is
then matched to an abstract :class:`FiniteAbelianGroup`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import factorint, nextprime

from .abelian import FiniteAbelianGroup, GroupElement, make_group
from .caps import get_caps
from .errors import ResourceLimitError
from .quadfield import Ideal, QuadField


def minkowski_bound(K: QuadField) -> int:
    D = abs(K.disc)
    if K.is_real:
        return max(1, math.isqrt(D // 4))  # floor(sqrt(D)/2)
    return max(1, math.floor(2 * math.sqrt(D) / math.pi))


def _invariant_factors(table, h):
    """Invariant factors of the group with Cayley table ``table``."""
    def times(k, x):
        y = 0
        for _ in range(k):
            y = table[y][x]
        return y

    factors = []
    for p in factorint(h):
        counts = [1]
        k = 1
        while counts[-1] < p ** factorint(h)[p]:
            counts.append(sum(1 for x in range(h) if times(p ** k, x) == 0))
            k += 1
        # number of cyclic p-factors of exponent >= k is log_p(N_k / N_{k-1})
        ge = [round(math.log(counts[k] // counts[k - 1], p)) for k in range(1, len(counts))]
        for k in range(len(ge)):
            exact = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
            factors += [p ** (k + 1)] * exact
    return make_group(factors)


def _span(table, gens, orders):
    out = {0: ()}
    for g, n in zip(gens, orders):
        new = {}
        for x, coords in out.items():
            y = x
            for c in range(n):
                new[y] = coords + (c,)
                y = table[y][g]
        if len(new) < len(out) * n:
            return None
        out = new
    return out


def _find_basis(table, h, G: FiniteAbelianGroup):
    facs = G.invariant_factors
    order = [1] * h
    for x in range(1, h):
        y, k = x, 1
        while y:
            y, k = table[y][x], k + 1
        order[x] = k

    def rec(gens):
        i = len(gens)
        if i == len(facs):
            return gens
        for x in range(h):
            if order[x] == facs[i] and _span(table, gens + [x], facs[:i + 1]) is not None:
                found = rec(gens + [x])
                if found is not None:
                    return found
        return None

    gens = rec([])
    return _span(table, gens, facs)


@dataclass
class ClassGroupData:
    """Class group of ``field`` with explicit class assignment.

    ``representatives[i]`` is the least ideal of class ``classes[i]``
    (the zero class is the unit ideal).
    """

    field: QuadField
    group: FiniteAbelianGroup
    representatives: tuple[Ideal, ...]
    classes: tuple[GroupElement, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def h(self) -> int:
        return self.group.order

    def class_of(self, I: Ideal) -> GroupElement:
        key = I.key
        if key in self._cache:
            return self._cache[key]
        K = self.field
        for J, g in zip(self.representatives, self.classes):
            if K.is_principal(I * J.conj()) is not None:
                self._cache[key] = g
                return g
        raise AssertionError(f"{I} matches no class representative")

    def representative_prime(self, g: GroupElement, avoid: Ideal | None = None) -> Ideal:
        """Least-norm prime ideal of class ``g`` coprime to ``avoid``."""
        K = self.field
        cap = get_caps().prime_norm
        p = 2
        while p <= cap:
            if avoid is None or avoid.norm % p:
                for P in K.primes_over(p):
                    if P.norm <= cap and self.class_of(P) == g:
                        return P
            p = nextprime(p)
        raise ResourceLimitError(f"no prime of class {g} with norm <= {cap}", cap=cap)


def class_group(K: QuadField) -> ClassGroupData:
    cached = getattr(K, "_class_group", None)
    if cached is not None:
        return cached
    cap = get_caps().disc
    if abs(K.disc) > cap:
        raise ResourceLimitError(f"|disc| = {abs(K.disc)} exceeds cap {cap}", disc=K.disc, cap=cap)
    reps: list[Ideal] = []
    for I in K.ideals_up_to(minkowski_bound(K)):
        if all(K.is_principal(I * J.conj()) is None for J in reps):
            reps.append(I)
    h = len(reps)

    def locate(I):
        for k, J in enumerate(reps):
            if K.is_principal(I * J.conj()) is not None:
                return k
        raise ResourceLimitError(f"class of {I} not among the enumerated classes")

    table = [[locate(reps[i] * reps[j]) for j in range(h)] for i in range(h)]
    G = _invariant_factors(table, h)
    basis = _find_basis(table, h, G)
    classes = tuple(G.element(basis[i]) for i in range(h))
    data = ClassGroupData(K, G, tuple(reps), classes)
    for I, g in zip(reps, classes):
        data._cache[I.key] = g
    K._class_group = data
    return data
