"""Exact arithmetic primitives: rationals, real-quadratic elements, small
finite fields, Bernoulli machinery and rational reconstruction.

Rationals are plain ``fractions.Fraction`` (kept reduced with positive
denominator by construction), re-exported as ``Rat``.  High-precision reals
are mpmath floats; precision is always set explicitly by the caller through
``mpmath.workprec``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

Rat = Fraction


class NoConvergent(Exception):
    """No continued-fraction convergent meets the residual bound."""


# ---------------------------------------------------------------------------
# rational serialization


def rat_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def rat_from_str(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials


@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa gives the B1 = +1/2 convention; flip the sign of B1.
    row = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n >= 1:
        out[1] = Fraction(-1, 2)
    return tuple(out)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the B_1 = -1/2 convention."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= 3 and n % 2 == 1:
        return Fraction(0)
    return _bernoulli_list(n)[n]


def bernoulli_poly(r: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_r(x) = sum_k C(r,k) B_k x^(r-k)."""
    x = Fraction(x)
    return sum(
        (math.comb(r, k) * bernoulli(k) * x ** (r - k) for k in range(r + 1)),
        Fraction(0),
    )


def zeta_neg(k: int) -> Fraction:
    """zeta(1-k) = -B_k/k for k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return -bernoulli(k) / k


# ---------------------------------------------------------------------------
# Kronecker symbol and fundamental discriminants


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), completely multiplicative in n."""
    if n == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    # factor out 2
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    # Jacobi symbol via quadratic reciprocity for odd n > 1
    a = D % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return True
    if D == 0:
        return False
    if D % 4 == 1:
        return _is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def gen_bernoulli(r: int, D: int) -> Fraction:
    """Generalized Bernoulli number B_{r,chi_D} for a fundamental discriminant D.

    B_{r,chi} = |D|^(r-1) sum_{a mod |D|} chi_D(a) B_r(a/|D|); realizes
    L(1-r, chi_D) = -B_{r,chi_D}/r.  For D = 1 this reduces to B_r with
    B_1 = -1/2 (the a = 0 term carries the trivial character).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    m = abs(D)
    total = Fraction(0)
    for a in range(m):
        chi = kronecker(D, a) if m > 1 else 1
        if chi:
            total += chi * bernoulli_poly(r, Fraction(a, m))
    return m ** (r - 1) * total


# ---------------------------------------------------------------------------
# elementary multiplicative helpers


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of 0")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def sigma_div(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    return sum(d ** k for d in divisors(n))


def squarefree_part(n: int) -> tuple[int, int]:
    """(s, c) with n = s c^2 and s squarefree, for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    s, c = 1, 1
    for p, e in factorize(n).items():
        c *= p ** (e // 2)
        s *= p ** (e % 2)
    return s, c


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [p for p in range(n + 1) if sieve[p]]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond 64 bits for these bases)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| > 0 as {prime: exponent}."""
    n = abs(n)
    if n == 0:
        raise ValueError("factorize(0)")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


# ---------------------------------------------------------------------------
# real quadratic field elements


@dataclass(frozen=True)
class QuadElem:
    """Element a + b*sqrt(disc) of a real quadratic field.

    disc must be a positive non-square; elements of different fields never
    mix (raises ValueError), which keeps e.g. Q(sqrt(18209)) and
    Q(sqrt(25249)) computations honestly separated.
    """

    disc: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.disc <= 0 or math.isqrt(self.disc) ** 2 == self.disc:
            raise ValueError(f"disc must be a positive non-square, got {self.disc}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.disc != self.disc:
                raise ValueError(f"mixed discriminants {self.disc} and {other.disc}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.disc, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.disc, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.disc, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.disc, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(
            self.disc,
            self.a * o.a + self.disc * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        conj = o.conjugate()
        num = self * conj
        return QuadElem(self.disc, num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return QuadElem(self.disc, Fraction(other), Fraction(0)) / self

    def __pow__(self, n: int):
        if n < 0:
            return QuadElem(self.disc, 1, 0) / self ** (-n)
        out = QuadElem(self.disc, 1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.disc, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.disc * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def embed(self, plus: bool = True) -> mp.mpf:
        """Numeric value a + b*sqrt(disc) (plus) or a - b*sqrt(disc)."""
        root = mp.sqrt(self.disc)
        return mp.mpf(self.a.numerator) / self.a.denominator + (
            1 if plus else -1
        ) * root * self.b.numerator / self.b.denominator

    def min_poly(self) -> list[int]:
        """Integer coefficients [c0, c1, c2] of a polynomial vanishing at self.

        Monic-scaled: c2 * x^2 + c1 * x + c0 with content 1, or degree 1
        [c0, c1] when the element is rational.
        """
        if self.b == 0:
            den = self.a.denominator
            return [-self.a.numerator, den]
        tr = self.trace()
        nm = self.norm()
        den = math.lcm(tr.denominator, nm.denominator)
        c2, c1, c0 = den, -tr * den, nm * den
        g = math.gcd(int(c2), math.gcd(int(c1), int(c0)))
        return [int(c0) // g, int(c1) // g, int(c2) // g]

    def to_json(self) -> dict:
        return {"disc": self.disc, "a": rat_str(self.a), "b": rat_str(self.b)}

    @staticmethod
    def from_json(obj: dict) -> "QuadElem":
        return QuadElem(obj["disc"], rat_from_str(obj["a"]), rat_from_str(obj["b"]))

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.disc})"


# ---------------------------------------------------------------------------
# small finite fields


class Fq:
    """Finite field of order q = p, p^2 or (as a tower) p^4.

    Elements are integers 0..q-1.  A prime field encodes residues directly;
    an extension of degree 2 over its base field encodes lo + hi*base.q for
    the element lo + hi*theta, where theta^2 + A*theta + B = 0 with (A, B)
    the lexicographically smallest pair making x^2 + A x + B irreducible
    over the base.  That choice is deterministic, so census caches built on
    top of these fields are reproducible.
    """

    def __init__(self, p: int, base: "Fq | None" = None):
        if base is None:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            self.p = p
            self.q = p
            self.base = None
            self.modulus = None
        else:
            self.p = base.p
            self.q = base.q ** 2
            self.base = base
            self.modulus = self._find_modulus(base)

    @staticmethod
    def _find_modulus(base: "Fq") -> tuple[int, int]:
        for a in range(base.q):
            for b in range(base.q):
                if all(
                    base.add(base.mul(x, base.add(x, a)), b) != 0
                    for x in range(base.q)
                ):
                    return (a, b)
        raise AssertionError("no irreducible quadratic found")

    # -- scalar arithmetic

    def add(self, x: int, y: int) -> int:
        if self.base is None:
            return (x + y) % self.p
        b = self.base
        return b.add(x % b.q, y % b.q) + b.q * b.add(x // b.q, y // b.q)

    def neg(self, x: int) -> int:
        if self.base is None:
            return (-x) % self.p
        b = self.base
        return b.neg(x % b.q) + b.q * b.neg(x // b.q)

    def mul(self, x: int, y: int) -> int:
        if self.base is None:
            return (x * y) % self.p
        b = self.base
        x0, x1 = x % b.q, x // b.q
        y0, y1 = y % b.q, y // b.q
        A, B = self.modulus
        # (x0 + x1 t)(y0 + y1 t) with t^2 = -B - A t
        z2 = b.mul(x1, y1)
        z1 = b.add(b.mul(x0, y1), b.mul(x1, y0))
        z0 = b.mul(x0, y0)
        lo = b.add(z0, b.neg(b.mul(B, z2)))
        hi = b.add(z1, b.neg(b.mul(A, z2)))
        return lo + b.q * hi

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise ZeroDivisionError
            return 1 if n == 0 else 0
        n %= self.q - 1
        out, base = 1, x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError
        return self.pow(x, self.q - 2)

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def embed(self, x: int) -> int:
        """Embed a base-field element into this extension."""
        if self.base is None:
            raise ValueError("prime field has no base")
        return x

    def chi(self, x: int) -> int:
        """Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0."""
        if x == 0:
            return 0
        if self.p == 2:
            return 1
        return 1 if self.pow(x, (self.q - 1) // 2) == 1 else -1

    def trace_to_prime(self, x: int) -> int:
        """Absolute trace to F_p."""
        out = x
        y = x
        deg = 1
        q = self.q
        while self.p ** deg < q:
            y = self.frobenius(y)
            out = self.add(out, y)
            deg += 1
        return out

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"Fq({self.q})"


@lru_cache(maxsize=None)
def finite_field(q: int) -> Fq:
    """Field with q elements for q = p, p^2 or p^4 (tower of quadratics)."""
    for p in range(2, q + 1):
        if is_prime(p):
            if q == p:
                return Fq(p)
            if q == p * p:
                return Fq(p, base=finite_field(p))
            if q == p ** 4:
                return Fq(p, base=finite_field(p * p))
            if q % p == 0:
                break
    raise ValueError(f"unsupported field order {q}")


# ---------------------------------------------------------------------------
# rational reconstruction


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -val if sign else val


def rational_reconstruct(
    x, max_den: int, guard_bits: int | None = None
) -> Fraction:
    """Best continued-fraction convergent p/q of x with q <= max_den.

    Raises NoConvergent when the residual exceeds 2^-guard_bits (the guard
    defaults to half the current working precision), which signals that x
    wasn't computed accurately enough to pin down a rational.
    """
    if guard_bits is None:
        guard_bits = mp.mp.prec // 2
    exact = x if isinstance(x, Fraction) else mpf_to_fraction(x)
    # continued-fraction convergents of `exact`
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    num, den = exact.numerator, exact.denominator
    best = None
    while den != 0:
        a = num // den
        num, den = den, num - a * den
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > max_den:
            break
        best = Fraction(p_cur, q_cur)
    if best is None:
        raise NoConvergent(f"no convergent with denominator <= {max_den}")
    residual = abs(exact - best)
    if residual > Fraction(1, 2 ** guard_bits):
        raise NoConvergent(
            f"residual {float(residual):.3e} exceeds 2^-{guard_bits}"
        )
    return best
