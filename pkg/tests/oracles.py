"""Independent brute-force oracles used to derive expected values.

Nothing here imports the package's algorithms beyond plain element
arithmetic; each oracle recomputes a quantity from definitions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from sympy.functions.combinatorial.numbers import kronecker_symbol


def field_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def analytic_class_number(d: int) -> int:
    """Class number from Dirichlet's formula with the Kronecker character."""
    D = field_disc(d)
    chi = [int(kronecker_symbol(D, a)) for a in range(abs(D))]
    if D < 0:
        w = {-3: 6, -4: 4}.get(D, 2)
        s = sum(chi[a] * a for a in range(1, -D))
        return round(Fraction(-w * s, 2 * -D))
    # 2 h log(eps) = -sum_{0<a<D} chi(a) log sin(pi a / D)
    eps = pell_fundamental_unit_float(d)
    total = -sum(chi[a] * math.log(math.sin(math.pi * a / D)) for a in range(1, D))
    return round(total / (2 * math.log(eps)))


def pell_fundamental_unit(d: int) -> tuple[int, int]:
    """Unit a + b*w > 1 with the least b > 0, by direct search over b."""
    t, n = (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)
    b = 1
    while True:
        # N(a + b w) = a^2 + t a b + n b^2 = +-1; a + b w > 1 forces a >= 0
        found = []
        for target in (1, -1):
            disc = (t * b) ** 2 - 4 * (n * b * b - target)
            if disc >= 0:
                r = math.isqrt(disc)
                if r * r == disc:
                    found += [num // 2 for num in (-t * b + r, -t * b - r)
                              if num % 2 == 0 and num >= 0]
        if found:
            return min(found), b
        b += 1


def pell_fundamental_unit_float(d: int) -> float:
    a, b = pell_fundamental_unit(d)
    w = (1 + math.sqrt(d)) / 2 if d % 4 == 1 else math.sqrt(d)
    return a + b * w


def imag_elements(d: int, max_norm: int):
    """All (a, b) with 0 < N(a + b w) <= max_norm in an imaginary field."""
    t, n = (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)
    D = abs(field_disc(d))
    bmax = math.isqrt(4 * max_norm // D) + 1
    out = []
    for b in range(-bmax, bmax + 1):
        amax = math.isqrt(max_norm) + abs(b) + 2
        for a in range(-amax, amax + 1):
            N = a * a + t * a * b + n * b * b
            if 0 < N <= max_norm:
                out.append((a, b, N))
    return out


def brute_lengths_imag(d: int, f: int, x: tuple[int, int]) -> frozenset[int]:
    """Set of lengths of x in Z + f*R for imaginary d by enumerating all divisors."""
    t, n = (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)

    def mul(u, v):
        return (u[0] * v[0] - n * u[1] * v[1], u[0] * v[1] + u[1] * v[0] + t * u[1] * v[1])

    def norm(u):
        return u[0] * u[0] + t * u[0] * u[1] + n * u[1] * u[1]

    def div(u, v):
        c = (v[0] + t * v[1], -v[1])
        num = mul(u, c)
        N = norm(v)
        if num[0] % N or num[1] % N:
            return None
        return (num[0] // N, num[1] // N)

    N0 = norm(x)
    cands = [(a, b) for a, b, N in imag_elements(d, N0)
             if b % f == 0 and 1 < N < N0 and N0 % N == 0]
    memo = {}

    def L(u):
        Nu = norm(u)
        if Nu == 1:
            return frozenset({0})
        key = u
        if key in memo:
            return memo[key]
        res = set()
        for y in cands:
            if Nu % norm(y) or norm(y) == Nu:
                continue
            z = div(u, y)
            if z is not None and z[1] % f == 0:
                res.update(a + b for a in L(y) for b in L(z))
        memo[key] = frozenset(res) if res else frozenset({1})
        return memo[key]

    return L(x)


def brute_zero_sum_free(group_orders, seq) -> bool:
    """Every nonempty subsequence has a nonzero sum (tuples mod group_orders)."""
    for r in range(1, len(seq) + 1):
        for sub in itertools.combinations(seq, r):
            if all(sum(c[i] for c in sub) % n == 0 for i, n in enumerate(group_orders)):
                return False
    return True


def brute_residue_classes(f: int) -> set[tuple[int, int]]:
    """Cosets of Z^2 modulo the lattice f*Z^2, found by reducing a box of points."""
    return {(a % f, b % f) for a in range(-f, 2 * f) for b in range(-f, 2 * f)}


def ideal_count(d: int, n: int) -> int:
    """Number of ideals of norm n: sum of the Kronecker character over divisors of n."""
    D = field_disc(d)
    return sum(int(kronecker_symbol(D, m)) for m in range(1, n + 1) if n % m == 0)
