"""Exact genus-2 Fourier expansions for classical (scalar) Siegel modular
forms: Eisenstein series through Cohen's function, the cusp forms of weight
10 and 12, the Siegel operator, diagonal restriction, Fourier-Jacobi
coefficients, and the Maass lift machinery.

Coefficients are indexed by half-integral matrices [n, r, m]; only one
representative per GL(2, Z)-class is stored (reduced to 0 <= r <= n <= m)
and queries reduce on the fly.  Querying outside a table's stored range is
an error, never a silent zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import (
    divisors,
    gen_bernoulli,
    kronecker,
    mobius,
    rat_str,
    sigma_div,
    squarefree_part,
    zeta_neg,
)
from .g1_modforms import QExpansion, eisenstein_e


class InsufficientTable(Exception):
    pass


class DegenerateNormalization(Exception):
    pass


# ---------------------------------------------------------------------------
# half-integral matrices [n, r, m] = (n, r/2; r/2, m)


def reduce_form(n: int, r: int, m: int) -> tuple[int, int, int]:
    """GL(2, Z)-reduced representative with 0 <= r <= n <= m.

    Positive semi-definite input required; rank-1 forms reduce to
    (0, 0, content).
    """
    if n < 0 or m < 0 or 4 * n * m - r * r < 0:
        raise ValueError(f"form [{n},{r},{m}] is not positive semi-definite")
    r = abs(r)
    while True:
        if n > m:
            n, m = m, n
        if n == 0:
            # semi-definite with n = 0 forces r = 0
            assert r == 0
            return (0, 0, m)
        if r > n:
            t = (r + n) // (2 * n)  # shift x -> x - t y
            m += t * t * n - t * r
            r = abs(r - 2 * t * n)
            continue
        if n > m:
            continue
        return (n, r, m)


@dataclass(frozen=True)
class HalfIntegralMatrix:
    n: int
    r: int
    m: int

    @property
    def disc(self) -> int:
        return 4 * self.n * self.m - self.r * self.r

    @property
    def content(self) -> int:
        return math.gcd(self.n, math.gcd(self.r, self.m))

    def is_psd(self) -> bool:
        return self.n >= 0 and self.m >= 0 and self.disc >= 0

    def is_definite(self) -> bool:
        return self.is_psd() and self.disc > 0

    def reduced(self) -> "HalfIntegralMatrix":
        return HalfIntegralMatrix(*reduce_form(self.n, self.r, self.m))

    def transform(self, u) -> "HalfIntegralMatrix":
        """u^t N u for a 2x2 integer matrix u = ((a, b), (c, d))."""
        (a, b), (c, d) = u
        n2 = self.n * a * a + self.r * a * c + self.m * c * c
        m2 = self.n * b * b + self.r * b * d + self.m * d * d
        r2 = 2 * self.n * a * b + self.r * (a * d + b * c) + 2 * self.m * c * d
        return HalfIntegralMatrix(n2, r2, m2)


class SiegelCoeffTable:
    """Fourier coefficients of a scalar genus-2 form, one value per reduced
    class, definite classes up to max_disc and rank <= 1 classes [0,0,c]
    with c <= sing_max."""

    def __init__(self, weight: int, max_disc: int, sing_max: int):
        self.weight = weight
        self.max_disc = max_disc
        self.sing_max = sing_max
        self.coeffs: dict[tuple[int, int, int], Fraction] = {}

    def reduced_keys(self):
        return sorted(self.coeffs, key=lambda k: (4 * k[0] * k[2] - k[1] ** 2, k))

    def covers(self, n: int, r: int, m: int) -> bool:
        d = 4 * n * m - r * r
        if d < 0 or n < 0 or m < 0:
            return True  # Koecher zero
        if d == 0:
            return math.gcd(n, math.gcd(r, m)) <= self.sing_max or (n, r, m) == (0, 0, 0)
        return d <= self.max_disc

    def get(self, n: int, r: int, m: int) -> Fraction:
        if n < 0 or m < 0 or 4 * n * m - r * r < 0:
            return Fraction(0)  # Koecher principle
        key = reduce_form(n, r, m)
        if key in self.coeffs:
            return self.coeffs[key]
        raise InsufficientTable(
            f"[{n},{r},{m}] (reduced {key}) outside stored range "
            f"(max_disc={self.max_disc}, sing_max={self.sing_max})"
        )

    def set(self, n: int, r: int, m: int, value) -> None:
        self.coeffs[reduce_form(n, r, m)] = Fraction(value)

    def is_cusp(self) -> bool:
        """All stored singular (disc 0) coefficients vanish."""
        return all(
            v == 0
            for (n, r, m), v in self.coeffs.items()
            if 4 * n * m - r * r == 0
        )

    def scale(self, c) -> "SiegelCoeffTable":
        out = SiegelCoeffTable(self.weight, self.max_disc, self.sing_max)
        c = Fraction(c)
        out.coeffs = {k: c * v for k, v in self.coeffs.items()}
        return out

    def _combine(self, other: "SiegelCoeffTable", sign: int) -> "SiegelCoeffTable":
        if self.weight != other.weight:
            raise ValueError("weights differ")
        out = SiegelCoeffTable(
            self.weight,
            min(self.max_disc, other.max_disc),
            min(self.sing_max, other.sing_max),
        )
        for key in set(self.coeffs) & set(other.coeffs):
            if out.covers(*key):
                out.coeffs[key] = self.coeffs[key] + sign * other.coeffs[key]
        return out

    def __add__(self, other: "SiegelCoeffTable") -> "SiegelCoeffTable":
        return self._combine(other, 1)

    def __sub__(self, other: "SiegelCoeffTable") -> "SiegelCoeffTable":
        return self._combine(other, -1)

    def __mul__(self, other: "SiegelCoeffTable") -> "SiegelCoeffTable":
        """Product expansion; target classes limited to what the factors'
        stored boxes can certify."""
        out = SiegelCoeffTable(
            self.weight + other.weight,
            min(self.max_disc, other.max_disc),
            min(self.sing_max, other.sing_max),
        )
        for n, r, m in _reduced_classes(out.max_disc, out.sing_max):
            total = Fraction(0)
            for n1 in range(n + 1):
                for m1 in range(m + 1):
                    n2, m2 = n - n1, m - m1
                    # r1 range: both halves positive semi-definite
                    b1 = _isqrt(4 * n1 * m1)
                    for r1 in range(-b1, b1 + 1):
                        r2 = r - r1
                        if r2 * r2 > 4 * n2 * m2:
                            continue
                        total += self.get(n1, r1, m1) * other.get(n2, r2, m2)
            out.coeffs[(n, r, m)] = total
        return out

    def to_json_rows(self) -> list:
        return [
            [n, r, m, rat_str(self.coeffs[(n, r, m)])]
            for (n, r, m) in sorted(
                self.coeffs, key=lambda k: (4 * k[0] * k[2] - k[1] ** 2, k[0], k[1], k[2])
            )
        ]


def _isqrt(x: int) -> int:
    return math.isqrt(x) if x >= 0 else -1


@lru_cache(maxsize=None)
def _reduced_classes(max_disc: int, sing_max: int) -> tuple[tuple[int, int, int], ...]:
    """All reduced classes with 0 < disc <= max_disc, plus [0,0,c] c <= sing_max
    and the zero class."""
    out = [(0, 0, c) for c in range(sing_max + 1)]
    n = 1
    while 3 * n * n <= max_disc:
        for r in range(n + 1):
            m = n
            while 4 * n * m - r * r <= max_disc:
                if m >= n and 4 * n * m - r * r > 0:
                    out.append((n, r, m))
                m += 1
        n += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Cohen's function and the Eisenstein series


def cohen_H(r: int, N: int) -> Fraction:
    """H(r, N): zeta(1-2r) at N = 0, and the L-value L(1-r, chi_D) with the
    divisor correction for -N = D f^2, D fundamental; 0 unless N = 0, 3 mod 4."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if N < 0 or N % 4 in (1, 2):
        return Fraction(0)
    if N == 0:
        return zeta_neg(2 * r)
    s, c = squarefree_part(N)
    if (-s) % 4 == 1:
        D, f = -s, c
    else:
        assert c % 2 == 0
        D, f = -4 * s, c // 2
    lval = -gen_bernoulli(r, D) / r
    corr = sum(
        mobius(d) * kronecker(D, d) * d ** (r - 1) * sigma_div(2 * r - 1, f // d)
        for d in divisors(f)
    )
    return lval * corr


def eisenstein_g2(k: int, max_disc: int = 20, sing_max: int = 8) -> SiegelCoeffTable:
    """Genus-2 Siegel Eisenstein series with constant term 1; nonzero
    coefficients are 2/(zeta(1-k) zeta(3-2k)) sum_{d | (n,r,m)} d^(k-1)
    H(k-1, 4 det N / d^2)."""
    if k % 2 or k < 4:
        raise ValueError("weight must be even and >= 4")
    const = 2 / (zeta_neg(k) * zeta_neg(2 * k - 2))
    tab = SiegelCoeffTable(k, max_disc, sing_max)
    for n, r, m in _reduced_classes(max_disc, sing_max):
        if (n, r, m) == (0, 0, 0):
            tab.coeffs[(n, r, m)] = Fraction(1)
            continue
        g = math.gcd(n, math.gcd(r, m))
        disc = 4 * n * m - r * r
        total = Fraction(0)
        for d in divisors(g):
            total += d ** (k - 1) * cohen_H(k - 1, disc // (d * d))
        tab.coeffs[(n, r, m)] = const * total
    return tab


def _normalize_cusp(diff: SiegelCoeffTable) -> SiegelCoeffTable:
    pivot = diff.get(1, 1, 1)
    if pivot == 0:
        raise DegenerateNormalization("a([1,1,1]) vanished")
    return diff.scale(1 / pivot)


@lru_cache(maxsize=None)
def chi10(max_disc: int = 20, sing_max: int = 8) -> SiegelCoeffTable:
    """The weight-10 cusp form E4 E6 - E10, scaled so a([1,1,1]) = 1.

    Cuspidality is automatic: Phi maps the difference to e4 e6 - e10 = 0
    because M_10(Gamma_1) is one-dimensional.
    """
    e4 = eisenstein_g2(4, max_disc, sing_max)
    e6 = eisenstein_g2(6, max_disc, sing_max)
    return _normalize_cusp(e4 * e6 - eisenstein_g2(10, max_disc, sing_max))


@lru_cache(maxsize=None)
def chi12(max_disc: int = 20, sing_max: int = 8) -> SiegelCoeffTable:
    """The weight-12 cusp form, scaled so a([1,1,1]) = 1.

    M_12(Gamma_1) is two-dimensional, so E6^2 - E12 alone is not cuspidal;
    the cusp form is the combination of E4^3, E6^2 and E12 killed by the
    Siegel operator, with the two coefficients solved from the genus-1
    images (the classical 441 E4^3 + 250 E6^2 - 691 E12 up to scale).
    """
    e4_1 = eisenstein_e(4, 3)
    e6_1 = eisenstein_e(6, 3)
    e12_1 = eisenstein_e(12, 3)
    f1, f2 = e4_1 ** 3, e6_1 ** 2
    # a f1 + b f2 = e12 at q^0 and q^1 kills the Siegel image of E12 - ...
    det = f1[0] * f2[1] - f1[1] * f2[0]
    a = (e12_1[0] * f2[1] - e12_1[1] * f2[0]) / det
    b = (f1[0] * e12_1[1] - f1[1] * e12_1[0]) / det
    e4 = eisenstein_g2(4, max_disc, sing_max)
    e6 = eisenstein_g2(6, max_disc, sing_max)
    comb = (e4 * e4 * e4).scale(a) + (e6 * e6).scale(b)
    return _normalize_cusp(comb - eisenstein_g2(12, max_disc, sing_max))


# ---------------------------------------------------------------------------
# Siegel operator and diagonal restriction


def phi_operator(F: SiegelCoeffTable, prec: int | None = None) -> QExpansion:
    """Genus-lowering operator: (Phi F)(n) = a([n, 0, 0])."""
    if prec is None:
        prec = F.sing_max + 1
    if prec > F.sing_max + 1:
        raise InsufficientTable(f"singular classes stored up to {F.sing_max}")
    return QExpansion(F.weight, [F.get(n, 0, 0) for n in range(prec)])


@dataclass
class TwoVarQExpansion:
    """sum c(n, m) q1^n q2^m through n, m < prec."""

    weight: int
    prec: int
    coeffs: dict

    def __getitem__(self, nm):
        return self.coeffs.get(nm, Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self[(n, m)] == self[(m, n)] for (n, m) in self.coeffs)


def diagonal_restriction(F: SiegelCoeffTable, prec: int) -> TwoVarQExpansion:
    """Restriction to the diagonal z = 0: coefficient of q1^n q2^m is
    sum_r a([n, r, m])."""
    coeffs = {}
    for n in range(prec):
        for m in range(prec):
            b = _isqrt(4 * n * m)
            if 4 * n * m > F.max_disc and n > 0 and m > 0:
                raise InsufficientTable(f"need disc up to {4 * n * m}")
            total = Fraction(0)
            for r in range(-b, b + 1):
                total += F.get(n, r, m)
            coeffs[(n, m)] = total
    return TwoVarQExpansion(F.weight, prec, coeffs)


def tensor_expansion(f: QExpansion, g: QExpansion, prec: int) -> TwoVarQExpansion:
    coeffs = {
        (n, m): f[n] * g[m] for n in range(prec) for m in range(prec)
    }
    return TwoVarQExpansion(f.weight, prec, coeffs)


# ---------------------------------------------------------------------------
# Jacobi forms and the Maass lift


class JacobiFormQ:
    """Jacobi form coefficient table: c(n, r) keyed by the class invariant
    (D, r mod 2m) with D = 4mn - r^2 >= 0."""

    def __init__(self, weight: int, index: int, coeffs: dict):
        self.weight = weight
        self.index = index
        self.coeffs = dict(coeffs)

    @property
    def max_D(self) -> int:
        return max(d for d, _ in self.coeffs) if self.coeffs else -1

    def key(self, n: int, r: int) -> tuple[int, int]:
        return (4 * self.index * n - r * r, r % (2 * self.index))

    def c(self, n: int, r: int) -> Fraction:
        D = 4 * self.index * n - r * r
        if D < 0:
            return Fraction(0)
        key = (D, r % (2 * self.index))
        if key not in self.coeffs:
            raise InsufficientTable(f"c({n},{r}) with invariant {key} not stored")
        return self.coeffs[key]

    def c_D(self, D: int) -> Fraction:
        """Index-1 access by discriminant: D determines r mod 2."""
        if self.index != 1:
            raise ValueError("c_D is for index 1")
        if D < 0:
            return Fraction(0)
        if D % 4 == 0:
            return self.c(D // 4, 0)
        if D % 4 == 3:
            return self.c((D + 1) // 4, 1)
        return Fraction(0)


def fourier_jacobi(F: SiegelCoeffTable, m: int = 1) -> JacobiFormQ:
    """Index-m Fourier-Jacobi coefficient: c(n, r) = a([n, r, m]).

    Consistency of c across (n, r) with the same class invariant is checked
    while the table is read off.
    """
    coeffs: dict[tuple[int, int], Fraction] = {}
    n = 0
    while True:
        row_done = True
        for r in range(-2 * _isqrt(m * n) - 2 * m, 2 * _isqrt(m * n) + 2 * m + 1):
            D = 4 * m * n - r * r
            if D < 0 or not F.covers(n, r, m):
                continue
            row_done = False
            key = (D, r % (2 * m))
            val = F.get(n, r, m)
            if key in coeffs:
                assert coeffs[key] == val, f"coefficient class {key} inconsistent"
            else:
                coeffs[key] = val
        if row_done and 4 * m * n > F.max_disc:
            break
        n += 1
    return JacobiFormQ(F.weight, m, coeffs)


def V_l(phi: JacobiFormQ, l: int) -> JacobiFormQ:
    """The index-raising operator on coefficients:
    c_out(n, r) = sum_{a | (n, r, l)} a^(k-1) c(n l / a^2, r / a)."""
    if phi.index != 1:
        raise ValueError("V_l implemented for index-1 input")
    if l < 1:
        raise ValueError("l must be >= 1")
    k = phi.weight
    coeffs: dict[tuple[int, int], Fraction] = {}
    n_max = phi.max_D // (4 * l) + l + 1
    for n in range(n_max + 1):
        for r in range(-2 * _isqrt(l * n), 2 * _isqrt(l * n) + 1):
            D = 4 * l * n - r * r
            if D < 0 or D > phi.max_D:
                continue
            total = Fraction(0)
            for a in divisors(math.gcd(n, math.gcd(r, l))):
                total += a ** (k - 1) * phi.c(n * l // (a * a), r // a)
            key = (D, r % (2 * l))
            if key in coeffs:
                assert coeffs[key] == total, "V_l output not class-invariant"
            else:
                coeffs[key] = total
    return JacobiFormQ(k, l, coeffs)


def maass_lift(phi: JacobiFormQ, max_disc: int = 20, sing_max: int = 8) -> SiegelCoeffTable:
    """Siegel form with a([n,r,m]) = sum_{d | (n,r,m)} d^(k-1)
    c((4mn - r^2)/d^2); defined here for cuspidal input (c(0) = 0)."""
    if phi.index != 1:
        raise ValueError("maass_lift takes an index-1 form")
    if phi.c_D(0) != 0:
        raise ValueError("constant term of the lift undefined for c(0) != 0")
    k = phi.weight
    tab = SiegelCoeffTable(k, max_disc, sing_max)
    for n, r, m in _reduced_classes(max_disc, sing_max):
        if (n, r, m) == (0, 0, 0):
            tab.coeffs[(n, r, m)] = Fraction(0)
            continue
        g = math.gcd(n, math.gcd(r, m))
        disc = 4 * n * m - r * r
        total = Fraction(0)
        for d in divisors(g):
            total += d ** (k - 1) * phi.c_D(disc // (d * d))
        tab.coeffs[(n, r, m)] = total
    return tab


def maass_check(F: SiegelCoeffTable) -> bool:
    """Does every stored coefficient satisfy a([n,r,m]) =
    sum_{d | (n,r,m)} d^(k-1) a([1, r/d, nm/d^2])?"""
    k = F.weight
    for (n, r, m), val in F.coeffs.items():
        if (n, r, m) == (0, 0, 0):
            continue
        g = math.gcd(n, math.gcd(r, m))
        total = Fraction(0)
        for d in divisors(g):
            total += d ** (k - 1) * F.get(1, r // d, (n * m) // (d * d))
        if total != val:
            return False
    return True


# ---------------------------------------------------------------------------
# dimensions of the classical genus-2 ring


@lru_cache(maxsize=None)
def hilbert_series(parity: str, N: int) -> tuple[int, ...]:
    """Coefficients 0..N of the dimension generating series of the classical
    genus-2 ring: 1/((1-t^4)(1-t^6)(1-t^10)(1-t^12)) for the even part, the
    same series shifted by t^35 for the odd part."""
    series = [0] * (N + 1)
    series[0] = 1
    for d in (4, 6, 10, 12):
        for i in range(d, N + 1):
            series[i] += series[i - d]
    if parity == "even":
        return tuple(series)
    if parity == "odd":
        return tuple(series[i - 35] if i >= 35 else 0 for i in range(N + 1))
    raise ValueError("parity must be 'even' or 'odd'")


def dims_g2(k: int) -> int:
    """dim M_k(Gamma_2) for classical weight k >= 0."""
    if k < 0:
        return 0
    return hilbert_series("even" if k % 2 == 0 else "odd", k)[k]
