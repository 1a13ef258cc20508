"""Sequences over a finite abelian group and the monoid of zero-sum sequences.

A sequence is a finite multiset of group elements, written
multiplicatively (``g1*g2*...``).  Zero-sum sequences form a Krull monoid
whose atoms are the minimal zero-sum sequences; this module computes
atoms, the Davenport constant, sets of lengths, distances and elasticity
by exhaustive search.

A zero-sum sequence ``S`` is minimal iff ``S`` with one element removed is
zero-sum free, which is what every atom test below relies on.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernels
from .abelian import FiniteAbelianGroup, GroupElement, parse_element
from .caps import get_caps
from .errors import DomainError, InvalidGroupError, ResourceLimitError


@dataclass(frozen=True)
class ZeroSumSequence:
    """A sequence over ``group`` (an element of the free abelian monoid).

    Despite the name the sequence need not sum to zero; use
    :func:`is_zero_sum`.  ``counts`` is sorted by element, which makes
    equality and hashing canonical.
    """

    group: FiniteAbelianGroup
    counts: tuple[tuple[GroupElement, int], ...] = ()

    @classmethod
    def from_elements(cls, group, elements) -> "ZeroSumSequence":
        tally = Counter()
        for g in elements:
            if not isinstance(g, GroupElement):
                g = group.element(g if isinstance(g, (tuple, list)) else (g,))
            if not group.contains(g):
                raise InvalidGroupError(f"{g} is not an element of {group}")
            tally[g] += 1
        return cls(group, tuple(sorted(tally.items())))

    @classmethod
    def from_counts(cls, group, counts) -> "ZeroSumSequence":
        tally = Counter()
        for g, m in dict(counts).items():
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                tally[g] += m
        return cls(group, tuple(sorted(tally.items())))

    def __len__(self):
        return sum(m for _, m in self.counts)

    def __iter__(self):
        for g, m in self.counts:
            for _ in range(m):
                yield g

    def __mul__(self, other: "ZeroSumSequence") -> "ZeroSumSequence":
        if other.group != self.group:
            raise InvalidGroupError("sequences over different groups")
        tally = Counter(dict(self.counts))
        tally.update(dict(other.counts))
        return ZeroSumSequence(self.group, tuple(sorted(tally.items())))

    def multiplicity(self, g: GroupElement) -> int:
        return dict(self.counts).get(g, 0)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.counts)

    def __str__(self):
        if not self.counts:
            return "1"
        return " ".join(str(g) if m == 1 else f"{g}x{m}" for g, m in self.counts)


_TOKEN_RE = re.compile(r"^(\(.*?\)|-?\d+)(?:x(\d+))?$")


def parse_sequence(group: FiniteAbelianGroup, text: str) -> ZeroSumSequence:
    """Parse ``"(1,0)x2 (0,1)x3"``; ``""`` or ``"1"`` is the empty sequence."""
    text = text.strip()
    if text in ("", "1", "empty"):
        return ZeroSumSequence(group)
    tally = Counter()
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise InvalidGroupError(f"bad sequence token {token!r}")
        g = parse_element(group, m.group(1))
        tally[g] += int(m.group(2) or 1)
    return ZeroSumSequence.from_counts(group, tally)


def _indices(S: ZeroSumSequence) -> list[int]:
    G = S.group
    return [G.index_of(g) for g in S]


def sigma(S: ZeroSumSequence) -> GroupElement:
    return S.group.sum(S)


def is_zero_sum(S: ZeroSumSequence) -> bool:
    return sigma(S) == S.group.zero


def is_zero_sum_free(S: ZeroSumSequence) -> bool:
    G = S.group
    return _kernels.zero_sum_free(G.addition_table, G.negation_table, G.order, _indices(S))


def _require_zero_sum(S):
    if not is_zero_sum(S):
        raise DomainError(f"{S} is not a zero-sum sequence")


def is_atom(S: ZeroSumSequence) -> bool:
    """True iff ``S`` is a minimal zero-sum sequence."""
    _require_zero_sum(S)
    idx = _indices(S)
    if not idx:
        return False
    G = S.group
    return _kernels.zero_sum_free(G.addition_table, G.negation_table, G.order, idx[1:])


def _check_search_group(G, cap=None):
    cap = get_caps().group_lengths if cap is None else cap
    if G.order > cap:
        raise ResourceLimitError(f"|G| = {G.order} exceeds search cap {cap}",
                                 order=G.order, cap=cap)


def atoms_up_to(G: FiniteAbelianGroup, maxlen: int, cap: int | None = None) -> set[ZeroSumSequence]:
    """All minimal zero-sum sequences of length at most ``maxlen``.

    Every atom is ``T * (-sigma(T))`` for a zero-sum free ``T``; the empty
    ``T`` yields the atom ``(0)``.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    _check_search_group(G, cap)
    els = G.elements
    neg = G.negation_table
    free = _kernels.zero_sum_free_sequences(G.addition_table, neg, G.order, maxlen - 1)
    atoms = set()
    for t in free:
        s = 0
        for g in t:
            s = G.addition_table[s * G.order + g]
        atoms.add(ZeroSumSequence.from_elements(G, [els[i] for i in t] + [els[neg[s]]]))
    return atoms


def davenport(G: FiniteAbelianGroup, cap: int | None = None) -> int:
    """Maximal length of a minimal zero-sum sequence over ``G``."""
    _check_search_group(G, cap)
    length, _ = _kernels.max_zero_sum_free(G.addition_table, G.negation_table, G.order)
    return length + 1


def _check_length_caps(S):
    caps = get_caps()
    _check_search_group(S.group, caps.group_lengths)
    if len(S) > caps.seq_len:
        raise ResourceLimitError(f"|S| = {len(S)} exceeds cap {caps.seq_len}",
                                 length=len(S), cap=caps.seq_len)


@lru_cache(maxsize=None)
def _lengths(G: FiniteAbelianGroup, key: tuple[tuple[int, int], ...]) -> frozenset[int]:
    # key: sorted (element index, multiplicity) pairs of a zero-sum sequence
    if not key:
        return frozenset({0})
    n = G.order
    support = [g for g, _ in key]
    mults = [m for _, m in key]
    first = support[0]
    mults[0] -= 1
    target = G.negation_table[first]
    result = set()
    for chosen in _kernels.zsf_subsequences(G.addition_table, G.negation_table, n,
                                            support, mults, target):
        rest = tuple((g, m - c - (i == 0)) for i, (g, m, c)
                     in enumerate(zip(support, (m for _, m in key), chosen))
                     if m - c - (i == 0) > 0)
        result.update(l + 1 for l in _lengths(G, rest))
    return frozenset(result)


def length_set(S: ZeroSumSequence) -> frozenset[int]:
    """All ``k`` such that ``S`` is a product of ``k`` minimal zero-sum sequences."""
    _require_zero_sum(S)
    _check_length_caps(S)
    G = S.group
    key = tuple((G.index_of(g), m) for g, m in S.counts)
    return _lengths(G, key)


def distances_and_elasticity(S: ZeroSumSequence) -> tuple[frozenset[int], Fraction]:
    """Successive gaps of the length set, and max/min length.

    The identity has elasticity 1 by convention.
    """
    lengths = sorted(length_set(S))
    gaps = frozenset(b - a for a, b in zip(lengths, lengths[1:]))
    if lengths == [0]:
        return gaps, Fraction(1)
    return gaps, Fraction(lengths[-1], lengths[0])


def sequence_report(S: ZeroSumSequence) -> dict:
    """JSON-ready summary used by the CLI."""
    report = {
        "group": list(S.group.invariant_factors),
        "sequence": str(S),
        "sigma": str(sigma(S)),
        "is_zero_sum": is_zero_sum(S),
    }
    if report["is_zero_sum"]:
        delta, rho = distances_and_elasticity(S)
        report.update(
            is_atom=is_atom(S),
            lengths=sorted(length_set(S)),
            delta=sorted(delta),
            elasticity=str(rho),
        )
    else:
        report.update(is_atom=False, lengths=None, delta=None, elasticity=None)
    return report
