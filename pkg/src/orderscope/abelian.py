"""Finite abelian groups in invariant-factor form.

A group is stored as its invariant factors ``n_1 | n_2 | ... | n_k`` so
that two isomorphic groups compare equal structurally.  Elements are
coordinate tuples, coordinate ``i`` reduced modulo ``n_i``.

>>> G = make_group([2, 3])
>>> G.invariant_factors
(6,)
>>> G.elem_order(G.element((2,)))
3
"""

from __future__ import annotations

import itertools
import math
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint

from .caps import get_caps
from .errors import InvalidGroupError, ResourceLimitError


@dataclass(frozen=True, order=True)
class GroupElement:
    coords: tuple[int, ...]

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        facs = self.invariant_factors
        for i, n in enumerate(facs):
            if n < 2:
                raise InvalidGroupError(f"invariant factor {n} < 2")
            if i and n % facs[i - 1]:
                raise InvalidGroupError(f"{facs} is not a divisor chain")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"C_{n}" for n in self.invariant_factors)

    # -- elements -----------------------------------------------------------

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    def element(self, coords) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise InvalidGroupError(f"element {coords} has wrong length for {self}")
        return GroupElement(tuple(c % n for c, n in zip(coords, self.invariant_factors)))

    def contains(self, g: GroupElement) -> bool:
        return len(g.coords) == self.rank and all(
            0 <= c < n for c, n in zip(g.coords, self.invariant_factors))

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return GroupElement(tuple(
            (x + y) % n for x, y, n in zip(g.coords, h.coords, self.invariant_factors)))

    def neg(self, g: GroupElement) -> GroupElement:
        return GroupElement(tuple((-x) % n for x, n in zip(g.coords, self.invariant_factors)))

    def mul(self, k: int, g: GroupElement) -> GroupElement:
        return GroupElement(tuple((k * x) % n for x, n in zip(g.coords, self.invariant_factors)))

    def sum(self, elements) -> GroupElement:
        total = [0] * self.rank
        for g in elements:
            for i, c in enumerate(g.coords):
                total[i] += c
        return self.element(total)

    def elem_order(self, g: GroupElement) -> int:
        order = 1
        for c, n in zip(g.coords, self.invariant_factors):
            order = math.lcm(order, n // math.gcd(c, n))
        return order

    def enumerate(self, cap: int | None = None) -> list[GroupElement]:
        cap = get_caps().group_enum if cap is None else cap
        if self.order > cap:
            raise ResourceLimitError(f"|G| = {self.order} exceeds enumeration cap {cap}",
                                     order=self.order, cap=cap)
        return list(self.elements)

    # Index maps used by the search kernels.  Index 0 is always the identity
    # and indices follow the lexicographic coordinate order of enumerate().

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(c) for c in
                     itertools.product(*(range(n) for n in self.invariant_factors)))

    @cached_property
    def _index(self) -> dict[GroupElement, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index_of(self, g: GroupElement) -> int:
        return self._index[g]

    @cached_property
    def addition_table(self) -> tuple[int, ...]:
        """Flat table: ``table[i * |G| + j]`` is the index of ``g_i + g_j``."""
        els = self.elements
        idx = self._index
        return tuple(idx[self.add(g, h)] for g in els for h in els)

    @cached_property
    def negation_table(self) -> tuple[int, ...]:
        idx = self._index
        return tuple(idx[self.neg(g)] for g in self.elements)


def make_group(factors) -> FiniteAbelianGroup:
    """Normalize an arbitrary list of cyclic orders to invariant-factor form."""
    factors = [int(n) for n in factors]
    for n in factors:
        if n <= 1:
            raise InvalidGroupError(f"cyclic factor {n} must be >= 2")
    by_prime: dict[int, list[int]] = defaultdict(list)
    for n in factors:
        for p, e in factorint(n).items():
            by_prime[p].append(e)
    k = max((len(v) for v in by_prime.values()), default=0)
    inv = [1] * k
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            inv[k - 1 - i] *= p ** e
    return FiniteAbelianGroup(tuple(inv))


def elem_order(G: FiniteAbelianGroup, g: GroupElement) -> int:
    return G.elem_order(g)


def enumerate_group(G: FiniteAbelianGroup, cap: int | None = None) -> list[GroupElement]:
    return G.enumerate(cap)


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse ``"3,3"`` (or ``""``/``"trivial"`` for the trivial group)."""
    text = text.strip()
    if text in ("", "trivial", "1"):
        return FiniteAbelianGroup(())
    try:
        factors = [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidGroupError(f"bad group literal {text!r}") from None
    return make_group(factors)


_ELEMENT_RE = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\)$")


def parse_element(G: FiniteAbelianGroup, text: str) -> GroupElement:
    """Parse ``"(a,b)"``; a bare integer is accepted for cyclic groups."""
    text = text.strip()
    if re.fullmatch(r"-?\d+", text):
        text = f"({text})"
    if not _ELEMENT_RE.match(text):
        raise InvalidGroupError(f"bad element literal {text!r}")
    inner = text[1:-1].strip()
    coords = [int(x) for x in inner.split(",")] if inner else []
    return G.element(coords)
