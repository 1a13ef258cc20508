"""Arithmetic in the ring of integers R = Z[w] of a quadratic field Q(sqrt(d)).

``w`` is ``sqrt(d)`` for d = 2, 3 mod 4 and ``(1 + sqrt(d))/2`` for
d = 1 mod 4; in both cases ``w**2 = t*w - n`` with ``t = tr(w)`` and
``n = N(w)``.  Elements are pairs ``a + b*w`` of Python ints, ideals are
stored in Hermite normal form ``A*Z + (B + C*w)*Z`` with ``C | A``,
``C | B`` and ``0 <= B < A``.

>>> K = QuadField(-5)
>>> K.is_principal(ideal(K, 2, K(1, 1))) is None
True
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint, primerange
from sympy.ntheory import sqrt_mod

from .caps import get_caps
from .errors import DomainError, InvalidFieldError, ResourceLimitError


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def is_squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in factorint(abs(d)).values())


def _sign_surd(u: int, v: int, D: int) -> int:
    """Exact sign of u + v*sqrt(D) for a non-square D > 0."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0 or (u > 0) == (v > 0):
        return 1 if v > 0 or u > 0 else -1
    bigger_surd = v * v * D > u * u
    if u > 0:
        return -1 if bigger_surd else 1
    return 1 if bigger_surd else -1


@dataclass(frozen=True)
class PrimeData:
    p: int
    kind: str            # "split", "inert" or "ramified"
    root: int | None     # w = root mod P for degree-one primes


class QuadField:
    """The field Q(sqrt(d)) together with its ring of integers.

    Instances cache prime ideals, principality results, the fundamental
    unit and the class group, so build one per ``d`` and share it.
    """

    def __init__(self, d: int):
        d = int(d)
        if d in (0, 1) or not is_squarefree(d):
            raise InvalidFieldError(f"d = {d} must be a squarefree integer other than 0, 1")
        self.d = d
        if d % 4 == 1:
            self.t, self.n, self.disc = 1, (1 - d) // 4, d
        else:
            self.t, self.n, self.disc = 0, -d, 4 * d
        self.is_real = d > 0
        self._primes: dict[int, tuple[Ideal, ...]] = {}
        self._prime_info: dict[tuple[int, int, int], PrimeData] = {}
        self._generators: dict[tuple[int, int, int], QuadInt | None] = {}
        self._ideals_cache: dict[int, tuple[Ideal, ...]] = {}

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.d == self.d

    def __hash__(self):
        return hash(("QuadField", self.d))

    def __repr__(self):
        return f"QuadField({self.d})"

    @property
    def signature(self) -> str:
        return "real" if self.is_real else "imaginary"

    @property
    def omega_str(self) -> str:
        return f"(1+sqrt({self.d}))/2" if self.t else f"sqrt({self.d})"

    def __call__(self, a: int, b: int = 0) -> "QuadInt":
        return QuadInt(int(a), int(b), self)

    @property
    def omega(self) -> "QuadInt":
        return QuadInt(0, 1, self)

    @property
    def one(self) -> "QuadInt":
        return QuadInt(1, 0, self)

    @property
    def unit_ideal(self) -> "Ideal":
        return Ideal(1, 0, 1, self)

    def sqrt_d(self) -> "QuadInt":
        """sqrt(d) as an element of R."""
        return QuadInt(-1, 2, self) if self.t else QuadInt(0, 1, self)

    # -- real embeddings -----------------------------------------------------

    def embed(self, x: "QuadInt") -> tuple[float, float]:
        """(x, conj(x)) as floats; real fields only."""
        s = math.sqrt(self.disc)
        w1, w2 = (self.t + s) / 2, (self.t - s) / 2
        return x.a + x.b * w1, x.a + x.b * w2

    def sign(self, x: "QuadInt") -> int:
        if not self.is_real:
            raise DomainError("sign is only defined in real fields")
        return _sign_surd(2 * x.a + x.b * self.t, x.b, self.disc)

    # -- prime ideals ---------------------------------------------------------

    def primes_over(self, p: int) -> tuple["Ideal", ...]:
        """The prime ideals of R above the rational prime ``p``, canonically sorted."""
        if p in self._primes:
            return self._primes[p]
        t, n = self.t, self.n
        if p == 2:
            roots = [r for r in range(2) if (r * r - t * r + n) % 2 == 0]
            kind = {0: "inert", 1: "ramified", 2: "split"}[len(roots)]
            if kind == "ramified" and self.disc % 2:
                kind = "inert"  # unreachable for fundamental discriminants
        else:
            inv2 = pow(2, -1, p)
            D = self.disc % p
            if D == 0:
                roots, kind = [t * inv2 % p], "ramified"
            elif pow(D, (p - 1) // 2, p) == 1:
                s = sqrt_mod(D, p)
                roots, kind = sorted({(t + s) * inv2 % p, (t - s) * inv2 % p}), "split"
            else:
                roots, kind = [], "inert"
        if kind == "inert":
            P = Ideal(p, 0, p, self)
            self._prime_info[P.key] = PrimeData(p, "inert", None)
            primes = (P,)
        else:
            primes = []
            for r in roots:
                P = Ideal(p, (-r) % p, 1, self)
                self._prime_info[P.key] = PrimeData(p, kind, r)
                primes.append(P)
            primes = tuple(sorted(primes, key=lambda I: I.key))
        self._primes[p] = primes
        return primes

    def prime_data(self, P: "Ideal") -> PrimeData:
        info = self._prime_info.get(P.key)
        if info is None:
            N = P.norm
            f = factorint(N)
            if len(f) == 1:
                (p, _), = f.items()
                self.primes_over(p)
                info = self._prime_info.get(P.key)
        if info is None:
            raise DomainError(f"{P} is not a prime ideal")
        return info

    def is_prime(self, P: "Ideal") -> bool:
        try:
            self.prime_data(P)
        except DomainError:
            return False
        return True

    def valuation(self, x: "QuadInt", P: "Ideal") -> int:
        """Exponent of ``P`` in the factorization of ``xR``."""
        info = self.prime_data(P)
        if not x:
            raise DomainError("valuation of zero")
        p, k = info.p, 0
        a, b = x.a, x.b
        if info.kind == "inert":
            while a % p == 0 and b % p == 0:
                a, b, k = a // p, b // p, k + 1
            return k
        r = info.root
        # multiplying by rho (in conj(P), and in P only when ramified) and
        # dividing by p lowers v_P by exactly one
        rho_a = -((self.t - r) % p)
        while (a + b * r) % p == 0:
            a, b = (a * rho_a - self.n * b) , (a + b * rho_a + self.t * b)
            a, b = a // p, b // p
            k += 1
        return k

    def ideal_valuation(self, I: "Ideal", P: "Ideal") -> int:
        return min(self.valuation(g, P) for g in I.basis())

    # -- enumeration ------------------------------------------------------------

    def ideals_up_to(self, bound: int) -> tuple["Ideal", ...]:
        """Every nonzero ideal of norm <= bound, sorted by (norm, HNF)."""
        if bound in self._ideals_cache:
            return self._ideals_cache[bound]
        options = []
        for p in primerange(2, bound + 1):
            powers = []
            primes = self.primes_over(p)
            if len(primes) == 2:
                P, Q = primes
                i, Pi = 0, self.unit_ideal
                while Pi.norm <= bound:
                    j, PQ = 0, Pi
                    while PQ.norm <= bound:
                        if i or j:
                            powers.append(PQ)
                        PQ, j = PQ * Q, j + 1
                    Pi, i = Pi * P, i + 1
            else:
                P = primes[0]
                Pi = P
                while Pi.norm <= bound:
                    powers.append(Pi)
                    Pi = Pi * P
            if powers:
                options.append(sorted(powers, key=lambda I: I.norm))
        out = []

        def rec(i, current):
            out.append(current)
            for j in range(i, len(options)):
                for J in options[j]:
                    if current.norm * J.norm > bound:
                        break
                    rec(j + 1, current * J)

        rec(0, self.unit_ideal)
        result = tuple(sorted(out, key=lambda I: (I.norm, I.key)))
        self._ideals_cache[bound] = result
        return result

    # -- units --------------------------------------------------------------------

    @cached_property
    def fundamental_unit(self) -> "QuadInt":
        """The unit > 1 generating R^x together with -1 (real fields only).

        Found as the first convergent p/q of the continued fraction of w
        for which p - q*w has norm +-1.
        """
        if not self.is_real:
            raise DomainError("imaginary quadratic fields have no fundamental unit")
        D, s = self.disc, math.isqrt(self.disc)
        P, Q = self.t, 2
        h_prev, h = 0, 1
        k_prev, k = 1, 0
        for _ in range(get_caps().search_steps):
            a = (P + s) // Q if Q > 0 else -((P + s) // -Q + 1)
            h_prev, h = h, a * h + h_prev
            k_prev, k = k, a * k + k_prev
            u = QuadInt(h, -k, self)
            if abs(u.norm()) == 1:
                for cand in (u, -u, u.conj(), -u.conj()):
                    if self.sign(cand - 1) > 0:
                        return cand
            P = a * Q - P
            Q = (D - P * P) // Q
        raise ResourceLimitError("continued fraction expansion did not reach a unit")

    def units(self) -> list["QuadInt"]:
        """All units of an imaginary quadratic field."""
        if self.is_real:
            raise DomainError("real quadratic fields have infinitely many units")
        if self.d == -1:
            return [self(1), self(-1), self(0, 1), self(0, -1)]
        if self.d == -3:
            return [self(1), self(-1), self(0, 1), self(0, -1), self(-1, 1), self(1, -1)]
        return [self(1), self(-1)]

    def unit_generators(self) -> list["QuadInt"]:
        if self.is_real:
            return [self(-1), self.fundamental_unit]
        return self.units()

    # -- principality ---------------------------------------------------------------

    def is_principal(self, I: "Ideal") -> "QuadInt | None":
        """A generator of ``I`` if it is principal, else ``None``."""
        key = I.key
        if key in self._generators:
            return self._generators[key]
        gen = self._find_generator(I)
        self._generators[key] = gen
        return gen

    def _find_generator(self, I: "Ideal"):
        N = I.norm
        if N == 1:
            return self.one
        D, t, C = self.disc, self.t, I.C
        if self.is_real:
            eps = max(abs(v) for v in self.embed(self.fundamental_unit))
            bound = int((eps + 1) * math.sqrt(N / D)) + 2
            signs = (1, -1)
        else:
            bound = math.isqrt(4 * N // -D)
            signs = (1,)
        if bound // C > get_caps().search_steps:
            raise ResourceLimitError(f"principality search for {I} too large", bound=bound)
        for m in range(bound // C + 1):
            for x1 in ((0,) if m == 0 else (m * C, -m * C)):
                for sg in signs:
                    disc = x1 * x1 * D + 4 * sg * N
                    if disc < 0:
                        continue
                    r = math.isqrt(disc)
                    if r * r != disc:
                        continue
                    for num in sorted({-t * x1 - r, -t * x1 + r}):
                        if num % 2 == 0:
                            x = QuadInt(num // 2, x1, self)
                            if I.contains(x):
                                return x
        return None

    # -- factorization ------------------------------------------------------------------

    def factor(self, x: "QuadInt") -> "IdealFactorization":
        if not x:
            raise DomainError("cannot factor zero")
        out = []
        for p in sorted(factorint(abs(x.norm()))):
            for P in self.primes_over(p):
                v = self.valuation(x, P)
                if v:
                    out.append((P, v))
        return IdealFactorization(tuple(sorted(out, key=lambda pe: (pe[0].norm, pe[0].key))))

    def factor_ideal(self, I: "Ideal") -> "IdealFactorization":
        out = []
        for p in sorted(factorint(I.norm)):
            for P in self.primes_over(p):
                v = self.ideal_valuation(I, P)
                if v:
                    out.append((P, v))
        return IdealFactorization(tuple(sorted(out, key=lambda pe: (pe[0].norm, pe[0].key))))


@dataclass(frozen=True, slots=True)
class QuadInt:
    """The element ``a + b*w`` of the ring of integers of ``K``."""

    a: int
    b: int
    K: QuadField

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.K != self.K:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.K)
        return NotImplemented

    def __bool__(self):
        return bool(self.a or self.b)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a + o.a, self.b + o.b, self.K)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.K)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a - o.a, self.b - o.b, self.K)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.K
        bb = self.b * o.b
        return QuadInt(self.a * o.a - K.n * bb, self.a * o.b + self.b * o.a + K.t * bb, K)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not integral in general")
        result, base = self.K.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QuadInt":
        return QuadInt(self.a + self.b * self.K.t, -self.b, self.K)

    def norm(self) -> int:
        K = self.K
        return self.a * self.a + K.t * self.a * self.b + K.n * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.K.t * self.b

    def divides(self, other: "QuadInt") -> bool:
        return other.exact_div(self) is not None

    def exact_div(self, other) -> "QuadInt | None":
        """``self / other`` if it lies in R, else ``None``."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero")
        num = self * o.conj()
        N = o.norm()
        if num.a % N or num.b % N:
            return None
        return QuadInt(num.a // N, num.b // N, self.K)

    def __truediv__(self, other):
        q = self.exact_div(other)
        if q is None:
            raise DomainError(f"{other} does not divide {self}")
        return q

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        wb = "w" if b == 1 else "-w" if b == -1 else f"{b}*w"
        if a == 0:
            return wb
        return f"{a}{wb}" if wb.startswith("-") else f"{a}+{wb}"

    def __repr__(self):
        return f"QuadInt({self}, d={self.K.d})"


def _hnf(vectors) -> tuple[int, int, int]:
    pivot = None
    A = 0
    for u0, u1 in vectors:
        if u1 == 0:
            A = math.gcd(A, u0)
            continue
        if pivot is None:
            pivot = (u0, u1)
            continue
        p0, p1 = pivot
        g, s, t = _egcd(p1, u1)
        A = math.gcd(A, (u1 // g) * p0 - (p1 // g) * u0)
        pivot = (s * p0 + t * u0, g)
    if pivot is None or A == 0:
        raise DomainError("generators do not span a full lattice (zero ideal?)")
    B, C = pivot
    if C < 0:
        B, C = -B, -C
    return A, B % A, C


@dataclass(frozen=True)
class Ideal:
    """Nonzero ideal ``A*Z + (B + C*w)*Z`` in Hermite normal form."""

    A: int
    B: int
    C: int
    K: QuadField

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    @property
    def norm(self) -> int:
        return self.A * self.C

    def is_unit(self) -> bool:
        return self.norm == 1

    def basis(self) -> tuple[QuadInt, QuadInt]:
        return QuadInt(self.A, 0, self.K), QuadInt(self.B, self.C, self.K)

    def contains(self, x: QuadInt) -> bool:
        if x.b % self.C:
            return False
        return (x.a - (x.b // self.C) * self.B) % self.A == 0

    def __contains__(self, x):
        return self.contains(x)

    def reduce(self, x: QuadInt) -> tuple[int, int]:
        """Canonical representative (r0, r1) of ``x`` mod this ideal."""
        q = x.b // self.C
        return (x.a - q * self.B) % self.A, x.b - q * self.C

    def residue_classes(self):
        for r1 in range(self.C):
            for r0 in range(self.A):
                yield (r0, r1)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.K != self.K:
            raise DomainError("ideals of different fields")
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        vecs = []
        for x in self.basis():
            for y in other.basis():
                z = x * y
                vecs.append((z.a, z.b))
        return Ideal(*_hnf(vecs), self.K)

    def __pow__(self, k: int) -> "Ideal":
        result, base = self.K.unit_ideal, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __add__(self, other: "Ideal") -> "Ideal":
        vecs = [(x.a, x.b) for x in self.basis() + other.basis()]
        return Ideal(*_hnf(vecs), self.K)

    def conj(self) -> "Ideal":
        vecs = []
        for x in self.basis():
            y = x.conj()
            vecs.append((y.a, y.b))
            z = y * self.K.omega
            vecs.append((z.a, z.b))
        return Ideal(*_hnf(vecs), self.K)

    def divides(self, other: "Ideal") -> bool:
        """``self | other``, i.e. ``other`` is contained in ``self``."""
        return all(self.contains(x) for x in other.basis())

    def __str__(self):
        b = QuadInt(self.B, self.C, self.K)
        return f"<{self.A}, {b}>"


RIdeal = Ideal


def ideal(K: QuadField, *gens) -> Ideal:
    """The ideal of R generated by ``gens`` (ints or QuadInts)."""
    vecs = []
    for g in gens:
        g = K(g) if isinstance(g, int) else g
        if not g:
            continue
        vecs.append((g.a, g.b))
        h = g * K.omega
        vecs.append((h.a, h.b))
    if not vecs:
        raise DomainError("the zero ideal is not supported")
    return Ideal(*_hnf(vecs), K)


@dataclass(frozen=True)
class IdealFactorization:
    factors: tuple[tuple[Ideal, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def ideal(self, K: QuadField) -> Ideal:
        I = K.unit_ideal
        for P, e in self.factors:
            I = I * P ** e
        return I

    def total_exponent(self) -> int:
        return sum(e for _, e in self.factors)


def field_context(d: int) -> QuadField:
    return QuadField(d)


def factor_element(K: QuadField, x: QuadInt) -> IdealFactorization:
    return K.factor(x)


def v_P(K: QuadField, x: QuadInt, P: Ideal) -> int:
    return K.valuation(x, P)


def is_principal(K: QuadField, I: Ideal) -> QuadInt | None:
    return K.is_principal(I)


def fundamental_unit(K: QuadField) -> QuadInt:
    return K.fundamental_unit


def unit_group(K: QuadField) -> list[QuadInt]:
    return K.units()


def residue_mul(m: Ideal, r, s) -> tuple[int, int]:
    K = m.K
    return m.reduce(QuadInt(r[0], r[1], K) * QuadInt(s[0], s[1], K))


def unit_image_mod(K: QuadField, m: Ideal) -> frozenset[tuple[int, int]]:
    """Residues mod ``m`` of all units of R, as canonical pairs."""
    gens = [m.reduce(u) for u in K.unit_generators()]
    one = m.reduce(K.one)
    seen = {one}
    frontier = [one]
    while frontier:
        r = frontier.pop()
        for g in gens:
            s = residue_mul(m, r, g)
            if s not in seen:
                seen.add(s)
                frontier.append(s)
    return frozenset(seen)


def ideal_divisors(K: QuadField, I: Ideal) -> list[Ideal]:
    """All ideal divisors of ``I`` sorted by (norm, HNF)."""
    divs = [K.unit_ideal]
    for P, e in K.factor_ideal(I):
        divs = [D * P ** k for D in divs for k in range(e + 1)]
    return sorted(divs, key=lambda J: (J.norm, J.key))


# -- literal parsing -----------------------------------------------------------

_TERM_RE = re.compile(r"[+-]?[^+-]+")


def parse_quadint(K: QuadField, text: str) -> QuadInt:
    """Parse ``"a+b*w"``-style literals (``w`` is the integral generator)."""
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty element literal")
    a = b = 0
    if s[0] not in "+-":
        s = "+" + s
    terms = _TERM_RE.findall(s)
    if "".join(terms) != s:
        raise DomainError(f"bad element literal {text!r}")
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term[1:]
        try:
            if body.endswith("w"):
                coef = body[:-1].rstrip("*")
                b += sign * (int(coef) if coef else 1)
            else:
                a += sign * int(body)
        except ValueError:
            raise DomainError(f"bad element literal {text!r}") from None
    return QuadInt(a, b, K)


def parse_ideal(K: QuadField, text: str) -> Ideal:
    """Parse ``"<g1, g2>"`` (angle brackets or the unicode pair)."""
    s = text.strip()
    if s[:1] in "<⟨" and s[-1:] in ">⟩":
        s = s[1:-1]
    gens = [parse_quadint(K, g) for g in s.split(",") if g.strip()]
    return ideal(K, *gens)
