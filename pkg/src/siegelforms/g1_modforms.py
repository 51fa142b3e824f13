"""Level-1 elliptic modular forms with exact q-expansions.

Everything is built from the Eisenstein generators e4, e6 and the
discriminant cusp form; Hecke operators act on an echelonized monomial
basis of the cusp space.  Critical values of completed L-functions are
evaluated with the incomplete-gamma series and rationalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .exact_arith import (
    QuadElem,
    bernoulli,
    factorize,
    is_prime,
    primes_upto,
    rat_str,
    rational_reconstruct,
    sigma_div,
    squarefree_part,
)


class InsufficientPrecision(Exception):
    pass


class DimTooLarge(Exception):
    pass


class PrecisionLoss(Exception):
    pass


class QExpansion:
    """Truncated q-expansion sum a(n) q^n, 0 <= n < prec, exact coefficients."""

    __slots__ = ("weight", "prec", "coeffs")

    def __init__(self, weight: int, coeffs, prec: int | None = None):
        self.weight = weight
        coeffs = [Fraction(c) for c in coeffs]
        if prec is not None:
            coeffs = coeffs[:prec] + [Fraction(0)] * (prec - len(coeffs))
        self.prec = len(coeffs)
        self.coeffs = coeffs

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n]

    def __eq__(self, other):
        return (
            isinstance(other, QExpansion)
            and self.weight == other.weight
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("weights differ")
        prec = min(self.prec, other.prec)
        return QExpansion(
            self.weight, [self.coeffs[n] + other.coeffs[n] for n in range(prec)]
        )

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("weights differ")
        prec = min(self.prec, other.prec)
        return QExpansion(
            self.weight, [self.coeffs[n] - other.coeffs[n] for n in range(prec)]
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        prec = min(self.prec, other.prec)
        out = [Fraction(0)] * prec
        for i in range(min(self.prec, prec)):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(min(other.prec, prec - i)):
                out[i + j] += a * other.coeffs[j]
        return QExpansion(self.weight + other.weight, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QExpansion":
        out = QExpansion(0, [Fraction(1)], self.prec)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return QExpansion(self.weight, [c * a for a in self.coeffs])

    def is_cusp(self) -> bool:
        return self.prec > 0 and self.coeffs[0] == 0

    def __repr__(self):
        head = ", ".join(rat_str(c) for c in self.coeffs[:6])
        return f"QExpansion(weight={self.weight}, prec={self.prec}, [{head}...])"


def eisenstein_e(k: int, prec: int) -> QExpansion:
    """Normalized Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k % 2 != 0 or k < 4:
        raise ValueError("weight must be even and >= 4")
    c = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [c * sigma_div(k - 1, n) for n in range(1, prec)]
    return QExpansion(k, coeffs)


def delta(prec: int) -> QExpansion:
    """The weight-12 cusp form (e4^3 - e6^2)/1728, computed from the relation."""
    if prec < 2:
        raise ValueError("prec must be >= 2")
    e4 = eisenstein_e(4, prec)
    e6 = eisenstein_e(6, prec)
    return (e4 ** 3 - e6 ** 2).scale(Fraction(1, 1728))


def dim_M(k: int) -> int:
    if k < 0 or k % 2 != 0:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_S(k: int) -> int:
    if k < 12 or k % 2 != 0:
        return 0
    return dim_M(k) - 1


@lru_cache(maxsize=None)
def basis_S(k: int, prec: int = 40) -> tuple[QExpansion, ...]:
    """Echelonized basis of S_k(Gamma_1) from monomials Delta^c e4^a e6^b.

    Monomial order is lexicographic in (c, a, b); dependent monomials are
    pruned during row reduction, leaving forms with a(n) = delta_{n,i} for
    n <= dim.
    """
    if k % 2 != 0:
        return ()
    mons = []
    for c in range(1, k // 12 + 1):
        rem = k - 12 * c
        for a in range(rem // 4 + 1):
            if (rem - 4 * a) % 6 == 0:
                mons.append((c, a, (rem - 4 * a) // 6))
    mons.sort()
    if not mons:
        return ()
    e4 = eisenstein_e(4, prec)
    e6 = eisenstein_e(6, prec)
    dl = delta(prec)
    rows = [(dl ** c * e4 ** a * e6 ** b).coeffs for (c, a, b) in mons]
    # Gauss-Jordan; pivots march through q^1, q^2, ...
    pivots = []
    r = 0
    for col in range(1, prec):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = [QExpansion(k, rows[i]) for i in range(r)]
    assert len(basis) == dim_S(k), f"rank {len(basis)} != dim {dim_S(k)} at k={k}"
    assert pivots == list(range(1, r + 1)), "basis not in echelon position"
    return tuple(basis)


def hecke_T(k: int, m: int, prec: int | None = None) -> list[list[Fraction]]:
    """Matrix of T(m), m prime, on basis_S(k); columns are images."""
    if not is_prime(m):
        raise ValueError("m must be prime")
    d = dim_S(k)
    need = m * (d + 1) + 1
    if prec is None:
        prec = need
    if prec < need:
        raise InsufficientPrecision(f"prec {prec} < {need}")
    basis = basis_S(k, prec)
    pk = Fraction(m) ** (k - 1)
    mat = [[Fraction(0)] * d for _ in range(d)]
    for j, f in enumerate(basis):
        for i in range(1, d + 1):
            b = f[m * i]
            if i % m == 0:
                b += pk * f[i // m]
            mat[i - 1][j] = b
    return mat


def mat_trace(mat) -> Fraction:
    return sum((mat[i][i] for i in range(len(mat))), Fraction(0))


def char_poly_2x2(mat) -> tuple[Fraction, Fraction]:
    """(trace, det) of a 2x2 matrix."""
    t = mat[0][0] + mat[1][1]
    d = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    return t, d


@dataclass
class EigenformG1:
    """Normalized Hecke eigenform of level 1.

    For a 2-dimensional cusp space the coefficients live in Q(sqrt(D));
    embedding_choice tags which root of the T(2) characteristic polynomial
    was taken ("plus" means b > 0 in a(2) = a + b sqrt(D)).
    """

    weight: int
    field_disc: int
    embedding_choice: str
    coeffs: list  # a(0..prec-1), Fraction or QuadElem
    a_p: dict = field(default_factory=dict)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def a(self, n: int):
        if n >= self.prec:
            raise InsufficientPrecision(f"a({n}) beyond stored precision")
        return self.coeffs[n]

    def ap(self, p: int):
        return self.a_p[p]

    def a_min_poly(self, p: int) -> list[int]:
        """Monic-scaled integer minimal polynomial of a(p)."""
        v = self.a_p[p]
        if isinstance(v, QuadElem):
            return v.min_poly()
        v = Fraction(v)
        assert v.denominator == 1
        return [-v.numerator, 1]

    def embed_coeff(self, n: int) -> mp.mpf:
        # coefficients already carry the chosen root of the T(2) polynomial,
        # so the numeric embedding is always b -> +sqrt(D)
        v = self.coeffs[n]
        if isinstance(v, QuadElem):
            return v.embed(plus=True)
        return mp.mpf(v.numerator) / v.denominator

    def to_json(self) -> dict:
        ap = {}
        for p, v in sorted(self.a_p.items()):
            ap[str(p)] = v.to_json() if isinstance(v, QuadElem) else rat_str(v)
        return {"weight": self.weight, "disc": self.field_disc, "a_p": ap}


def eigenforms(k: int, prec: int = 128) -> list[EigenformG1]:
    """Normalized eigenforms of S_k(Gamma_1); supports dim <= 2."""
    d = dim_S(k)
    if d == 0:
        return []
    if d > 2:
        raise DimTooLarge(f"dim S_{k} = {d}")
    prec = max(prec, 2 * (d + 1) + 2)
    basis = basis_S(k, prec)
    ps = primes_upto(prec - 1)
    if d == 1:
        f = basis[0]
        ap = {p: f[p] for p in ps}
        return [EigenformG1(k, 1, "plus", list(f.coeffs), ap)]
    t, det = char_poly_2x2(hecke_T(k, 2))
    disc = t * t - 4 * det
    assert disc > 0, "T(2) must have real distinct eigenvalues"
    # disc = D * s^2 with D squarefree and s rational
    D, c = squarefree_part(disc.numerator * disc.denominator)
    s = Fraction(c, disc.denominator)
    assert D * s * s == disc
    out = []
    for tag, sign in (("plus", 1), ("minus", -1)):
        lam2 = QuadElem(D, t / 2, sign * s / 2)
        coeffs = [basis[0][n] + lam2 * basis[1][n] for n in range(prec)]
        ap = {p: coeffs[p] for p in ps}
        out.append(EigenformG1(k, D, tag, coeffs, ap))
    return out


def motive_trace(k: int, p: int, i: int) -> Fraction:
    """Trace of the i-th Frobenius power on the weight-k cusp motive.

    Computed from u_j = T(p) u_{j-1} - p^(k-1) u_{j-2}, u_0 = 2 Id,
    u_1 = T(p); the result is the trace of u_i and is always rational.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    d = dim_S(k)
    if d == 0:
        return Fraction(0)
    tp = hecke_T(k, p)
    pk = Fraction(p) ** (k - 1)
    prev = [[Fraction(2 if a == b else 0) for b in range(d)] for a in range(d)]
    cur = [row[:] for row in tp]
    for _ in range(i - 1):
        nxt = [
            [
                sum(tp[a][c] * cur[c][b] for c in range(d)) - pk * prev[a][b]
                for b in range(d)
            ]
            for a in range(d)
        ]
        prev, cur = cur, nxt
    return mat_trace(cur)


# ---------------------------------------------------------------------------
# completed L-function values


@dataclass
class CriticalValues:
    weight: int
    values: list  # (t, mpf) for t = weight-1 .. weight/2
    normalized: list  # (t, int) for the even-t class, coprime integers


def _n_terms(r: int, prec_bits: int) -> int:
    # tail of sum a(n) (2 pi n)^(s-1) e^(-2 pi n) with |a(n)| <= 2 sigma_0 n^((r-1)/2)
    target = (prec_bits + 48) * math.log(2)
    n = 8
    while 2 * math.pi * n - (1.5 * r) * math.log(2 * math.pi * n) < target:
        n += 1
        if n > 4000:
            raise PrecisionLoss("tail bound not met")
    return n


def _lambda_sum(an, r: int, s) -> mp.mpf:
    sign = (-1) ** (r // 2)
    acc = mp.mpf(0)
    for n in range(1, len(an)):
        x = 2 * mp.pi * n
        acc += an[n] * (
            x ** (-s) * mp.gammainc(s, x) + sign * x ** (s - r) * mp.gammainc(r - s, x)
        )
    return acc


def lambda_value_at(f: EigenformG1, s, prec_bits: int = 256) -> mp.mpf:
    """Completed L-value Lambda(f, s) at a single (real) point."""
    n_terms = _n_terms(f.weight, prec_bits)
    if n_terms >= f.prec:
        raise PrecisionLoss(f"need {n_terms} coefficients, eigenform stores {f.prec}")
    with mp.workprec(prec_bits + 64):
        an = [f.embed_coeff(n) for n in range(n_terms + 1)]
        return _lambda_sum(an, f.weight, s)


def lambda_values(f: EigenformG1, prec_bits: int = 256) -> CriticalValues:
    """Lambda(f, t) = Gamma(t)/(2 pi)^t L(f, t) for t = r-1 .. r/2.

    Uses the two-sided incomplete-gamma series; the functional equation
    Lambda(s) = (-1)^(r/2) Lambda(r-s) is available as a consistency check.
    """
    r = f.weight
    n_terms = _n_terms(r, prec_bits)
    if n_terms >= f.prec:
        raise PrecisionLoss(
            f"need {n_terms} coefficients, eigenform stores {f.prec}"
        )
    values = []
    with mp.workprec(prec_bits + 64):
        an = [f.embed_coeff(n) for n in range(n_terms + 1)]
        for t in range(r - 1, r // 2 - 1, -1):
            values.append((t, _lambda_sum(an, r, t)))
    # ratio normalization is rational only for a rational eigenform; the
    # quadratic case is normalized pairwise across embeddings in the scan
    normalized = (
        _normalize_class(values, r, parity=0, prec_bits=prec_bits)
        if f.field_disc == 1
        else []
    )
    return CriticalValues(r, values, normalized)


def _structural_zero(r: int, t: int) -> bool:
    return 2 * t == r and (-1) ** (r // 2) == -1


def _normalize_class(values, r: int, parity: int, prec_bits: int) -> list:
    """Coprime integer vector proportional to the Lambda values with t of the
    given parity and r/2 <= t <= r-2, sign fixed so the first entry is
    positive.  The endpoint t = r-1 is excluded: its ratio to the interior
    values carries the numerator of B_r, which would pollute the gcd."""
    vals = [
        (t, v)
        for (t, v) in values
        if t % 2 == parity and t <= r - 2 and not _structural_zero(r, t)
    ]
    if not vals:
        return []
    t0, v0 = vals[0]
    ratios = []
    with mp.workprec(prec_bits + 64):
        for t, v in vals:
            ratios.append(rational_reconstruct(v / v0, 10 ** 18, guard_bits=140))
    lcm = math.lcm(*(x.denominator for x in ratios))
    ints = [int(x * lcm) for x in ratios]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return [(t, n) for (t, _), n in zip(vals, ints)]


def critical_ratios(f: EigenformG1, prec_bits: int = 256) -> list[int]:
    """Coprime integers proportional to (Lambda(f, r-2), Lambda(f, r-4), ...)."""
    if f.field_disc != 1:
        raise DimTooLarge("rational eigenforms only; use congruence_prime_scan")
    cv = lambda_values(f, prec_bits)
    return [n for (_, n) in cv.normalized]


def congruence_prime_scan(r: int, prec_bits: int = 256) -> list[tuple[int, int, int, int]]:
    """Primes ell > r dividing a normalized critical entry of the weight-r
    eigenform(s), emitted as (ell, t, j, k) with j = 2t-r-2, k = r-t+2.

    Both parity classes of t are scanned (each normalized separately); for a
    2-dimensional space divisibility is tested on the norm over Q of the
    entries, written in Q(sqrt(D)).
    """
    d = dim_S(r)
    if d not in (1, 2):
        raise DimTooLarge(f"dim S_{r} = {d}")
    out = []
    if d == 1:
        cv = lambda_values(eigenforms(r)[0], prec_bits)
        for parity in (0, 1):
            entries = _normalize_class(cv.values, r, parity, prec_bits)
            out.extend(_scan_entries(entries, r, lambda n: n))
    else:
        fp, fm = eigenforms(r, prec=140)
        cvp = lambda_values(fp, prec_bits)
        cvm = lambda_values(fm, prec_bits)
        D = fp.field_disc
        for parity in (0, 1):
            pairs = _normalize_quad_class(cvp.values, cvm.values, D, r, parity, prec_bits)
            out.extend(_scan_entries(pairs, r, lambda ab: ab[0] ** 2 - D * ab[1] ** 2))
    return sorted(set(out))


def _scan_entries(entries, r, to_int):
    found = []
    for t, entry in entries:
        j, k = 2 * t - r - 2, r - t + 2
        if j < 0 or k < 4:
            continue
        n = abs(to_int(entry))
        if n == 0:
            continue
        for ell in factorize(n):
            if ell > r:
                found.append((ell, t, j, k))
    return found


def _normalize_quad_class(values_p, values_m, D, r, parity, prec_bits):
    """Integral primitive vector of (a_t, b_t) with entry a_t + b_t sqrt(D)."""
    vals = [
        (t, vp, vm)
        for (t, vp), (_, vm) in zip(values_p, values_m)
        if t % 2 == parity and t <= r - 2 and not _structural_zero(r, t)
    ]
    if not vals:
        return []
    _, v0p, v0m = vals[0]
    coords = []
    with mp.workprec(prec_bits + 64):
        sqrtD = mp.sqrt(D)
        for t, vp, vm in vals:
            xp, xm = vp / v0p, vm / v0m
            a = rational_reconstruct((xp + xm) / 2, 10 ** 18, guard_bits=140)
            b = rational_reconstruct((xp - xm) / (2 * sqrtD), 10 ** 18, guard_bits=140)
            coords.append((t, a, b))
    lcm = math.lcm(*(x.denominator for _, a, b in coords for x in (a, b)))
    ints = [(t, int(a * lcm), int(b * lcm)) for t, a, b in coords]
    g = math.gcd(*(abs(x) for _, a, b in ints for x in (a, b)))
    return [(t, (a // g, b // g)) for t, a, b in ints]
