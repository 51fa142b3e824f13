"""Exhaustive automorphism-weighted censuses of elliptic and genus-2 curves
over small finite fields.

Everything is a mass formula: instead of classifying curves up to
isomorphism we enumerate raw models and divide by the order of the model
transformation group (orbit-stabilizer turns that into sum 1/#Aut).  The
genus-2 enumeration is reduced to monic sextics/quintics: an arbitrary
squarefree binary sextic is lambda * g with g monic of degree 5 or 6, the
quadratic twist by lambda flips the sign of the trace term and leaves the
F_{q^2} data alone, so each monic model stands for (q-1)/2 models per twist
class.

Point counts over F_{q^2} only evaluate one point per Frobenius-conjugate
pair: the coefficients live in F_q, so chi(g(x^q)) = chi(g(x)).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .exact_arith import Fq, finite_field, rat_str

CACHE_VERSION = 1

MAX_Q_G2 = 13  # hard cap: beyond this the naive enumeration is out of scope


class FieldTooLarge(Exception):
    pass


class CacheError(Exception):
    pass


_cache_dir: Path | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None
    if _cache_dir is not None:
        _cache_dir.mkdir(parents=True, exist_ok=True)


# ---------------------------------------------------------------------------
# numpy arithmetic tables


@lru_cache(maxsize=None)
def _tables(q: int):
    """(mul, add, neg, chi, inv) numpy tables for F_q."""
    F = finite_field(q)
    mul = np.empty((q, q), dtype=np.int32)
    add = np.empty((q, q), dtype=np.int32)
    for x in range(q):
        for y in range(q):
            mul[x, y] = F.mul(x, y)
            add[x, y] = F.add(x, y)
    neg = np.array([F.neg(x) for x in range(q)], dtype=np.int32)
    chi = np.array([F.chi(x) for x in range(q)], dtype=np.int8)
    inv = np.array([0] + [F.inv(x) for x in range(1, q)], dtype=np.int32)
    return mul, add, neg, chi, inv


@lru_cache(maxsize=None)
def _ext_context(q: int):
    """Data for the quadratic extension F_{q^2} of F_q used in genus-2 counts.

    Returns (chi2, reps) where chi2 is the quadratic character table of
    F_{q^2} indexed by lo + q*hi, and reps is a list of power tables
    [(lo_i, hi_i) for i = 0..6] for one representative per conjugate pair
    of F_{q^2} - F_q.
    """
    F = finite_field(q)
    E = Fq(F.p, base=F)
    q2 = q * q
    chi2 = np.zeros(q2, dtype=np.int8)
    squares = set()
    for x in range(1, q2):
        squares.add(E.mul(x, x))
    for x in range(1, q2):
        chi2[x] = 1 if x in squares else -1
    reps = []
    seen = set()
    for x in range(q2):
        if x < q or x in seen:  # x < q: lies in the base field
            continue
        fx = E.pow(x, q)
        seen.add(fx)
        powers = []
        v = 1
        for _ in range(7):
            powers.append((v % q, v // q))
            v = E.mul(v, x)
        reps.append(powers)
    assert len(reps) == (q2 - q) // 2
    return chi2, reps


def _digits(idx: np.ndarray, q: int, n: int) -> np.ndarray:
    out = np.empty((len(idx), n), dtype=np.int32)
    rem = idx.copy()
    for i in range(n):
        out[:, i] = rem % q
        rem //= q
    return out


# ---------------------------------------------------------------------------
# census result types


@dataclass
class EllCensus:
    """Trace distribution of elliptic curves over F_q, weighted by 1/#Aut."""

    q: int
    counts: dict[int, int]  # Frobenius trace -> number of models
    group_order: int
    model_count: int

    @property
    def masses(self) -> dict[int, Fraction]:
        return {t: Fraction(c, self.group_order) for t, c in self.counts.items()}

    def mass_sum(self) -> Fraction:
        return Fraction(sum(self.counts.values()), self.group_order)


@dataclass
class G2Census:
    """Distribution of (t1, e) = (a1 + a2, a1 a2) for genus-2 curves over F_q.

    counts are in (monic model, twist sign) units; each unit carries mass
    (q-1)/2 / group_order.
    """

    q: int
    counts: dict[tuple[int, int], int]
    group_order: int
    model_count: int

    @property
    def masses(self) -> dict[tuple[int, int], Fraction]:
        u = Fraction(self.q - 1, 2 * self.group_order)
        return {k: c * u for k, c in self.counts.items()}

    def mass_sum(self) -> Fraction:
        return sum(self.counts.values()) * Fraction(self.q - 1, 2 * self.group_order)


# ---------------------------------------------------------------------------
# elliptic censuses


def _ell_short(q: int) -> EllCensus:
    """y^2 = x^3 + Ax + B, char >= 5; transformation group has order q - 1."""
    mul, add, neg, chi, _ = _tables(q)
    idx = np.arange(q * q, dtype=np.int64)
    A = (idx % q).astype(np.int32)
    B = (idx // q).astype(np.int32)
    A3 = mul[mul[A, A], A]
    B2 = mul[B, B]
    F = finite_field(q)
    disc = add[mul[A3, 4 % F.p], mul[B2, 27 % F.p]]
    good = disc != 0
    A, B = A[good], B[good]
    s = np.zeros(len(A), dtype=np.int32)
    for x in range(q):
        fx = add[add[mul[A, x], B], F.pow(x, 3)]
        s += chi[fx]
    return _ell_from_traces(q, -s, group_order=q - 1)


def _ell_char3_reduced(q: int) -> EllCensus:
    """y^2 = x^3 + b x^2 + c x + d in characteristic 3; group order q(q-1)."""
    mul, add, neg, chi, _ = _tables(q)
    idx = np.arange(q ** 3, dtype=np.int64)
    dig = _digits(idx, q, 3)
    b, c, d = dig[:, 0], dig[:, 1], dig[:, 2]
    # cubic discriminant 18bcd - 4b^3d + b^2c^2 - 4c^3 - 27d^2, constants mod 3
    b2, c2 = mul[b, b], mul[c, c]
    b3, c3 = mul[b2, b], mul[c2, c]
    disc = add[
        add[mul[mul[b, c], mul[d, 18 % 3]], mul[mul[b3, d], (-4) % 3]],
        add[add[mul[b2, c2], mul[c3, (-4) % 3]], mul[mul[d, d], (-27) % 3]],
    ]
    good = disc != 0
    b, c, d = b[good], c[good], d[good]
    s = np.zeros(len(b), dtype=np.int32)
    F = finite_field(q)
    for x in range(q):
        x2, x3 = F.mul(x, x), F.pow(x, 3)
        fx = add[add[mul[b, x2], mul[c, x]], add[d, x3]]
        s += chi[fx]
    return _ell_from_traces(q, -s, group_order=q * (q - 1))


def _ell_full(q: int) -> EllCensus:
    """Five-coefficient Weierstrass model; group order q^3 (q-1)."""
    mul, add, neg, chi, inv = _tables(q)
    F = finite_field(q)
    p = F.p
    idx = np.arange(q ** 5, dtype=np.int64)
    dig = _digits(idx, q, 5)
    a1, a2, a3, a4, a6 = (dig[:, i] for i in range(5))
    # b-invariants with universal integer constants reduced into the field
    b2 = add[mul[a1, a1], mul[a2, 4 % p]]
    b4 = add[mul[a4, 2 % p], mul[a1, a3]]
    b6 = add[mul[a3, a3], mul[a6, 4 % p]]
    b8 = add[
        add[mul[mul[a1, a1], a6], mul[mul[a2, a6], 4 % p]],
        add[
            add[neg[mul[mul[a1, a3], a4]], mul[a2, mul[a3, a3]]],
            neg[mul[a4, a4]],
        ],
    ]
    # disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    disc = add[
        add[neg[mul[mul[b2, b2], b8]], neg[mul[mul[b4, mul[b4, b4]], 8 % p]]],
        add[mul[mul[b6, b6], (-27) % p], mul[mul[b2, mul[b4, b6]], 9 % p]],
    ]
    good = disc != 0
    a1, a2, a3, a4, a6 = a1[good], a2[good], a3[good], a4[good], a6[good]
    n_aff = np.zeros(len(a1), dtype=np.int32)
    if p == 2:
        tr = np.array([F.trace_to_prime(x) for x in range(q)], dtype=np.int8)
        for x in range(q):
            x2, x3 = F.mul(x, x), F.pow(x, 3)
            h = add[mul[a1, x], a3]
            v = add[add[mul[a2, x2], mul[a4, x]], add[a6, x3]]
            u = mul[v, inv[mul[h, h]]]
            sol = np.where(h == 0, 1, 2 * (tr[u] == 0).astype(np.int32))
            n_aff += sol
    else:
        for x in range(q):
            x2, x3 = F.mul(x, x), F.pow(x, 3)
            h = add[mul[a1, x], a3]
            v = add[add[mul[a2, x2], mul[a4, x]], add[a6, x3]]
            w = add[mul[v, 4 % p], mul[h, h]]
            n_aff += 1 + chi[w]
    traces = q - n_aff  # t = q + 1 - (1 + n_aff)
    return _ell_from_traces(q, traces, group_order=q ** 3 * (q - 1))


def _ell_from_traces(q: int, traces: np.ndarray, group_order: int) -> EllCensus:
    bound = 2 * int(np.sqrt(q)) + 1
    offset = bound
    cnt = np.bincount(traces + offset, minlength=2 * bound + 1)
    counts = {int(t - offset): int(c) for t, c in enumerate(cnt) if c}
    assert all(t * t <= 4 * q for t in counts), "Hasse bound violated"
    census = EllCensus(q, counts, group_order, int(traces.size))
    assert census.mass_sum() == q, f"mass sum {census.mass_sum()} != {q}"
    return census


def _ell_census_compute(q: int) -> EllCensus:
    F = finite_field(q)
    p = F.p
    if p >= 5:
        return _ell_short(q)
    if p == 3 and q <= 9:
        return _ell_full(q)
    if p == 3:
        # q = 81 arises as the twisted-sector field of the F_9 census; the
        # five-coefficient space is out of reach there, but the reduced
        # cubic model gives the same masses (cross-checked at q = 3, 9).
        return _ell_char3_reduced(q)
    if p == 2 and q <= 16:
        return _ell_full(q)
    raise FieldTooLarge(f"elliptic census unsupported for q = {q}")


@lru_cache(maxsize=None)
def ell_census(q: int) -> EllCensus:
    cached = _load_cache("ell", q)
    if cached is not None:
        return cached
    census = _ell_census_compute(q)
    _save_cache("ell", q, census)
    return census


# ---------------------------------------------------------------------------
# genus-2 census


def _monic_irreducibles(q: int, e: int) -> list[tuple[int, ...]]:
    """Monic irreducible polynomials of degree e <= 3 over F_q, coefficient
    tuples lowest-first including the leading 1."""
    F = finite_field(q)
    if e == 1:
        return [(F.neg(a), 1) for a in range(q)]
    polys = []
    for idx in range(q ** e):
        coeffs = tuple((idx // q ** i) % q for i in range(e)) + (1,)
        # degree 2 or 3: irreducible iff no root
        if all(_poly_eval(F, coeffs, x) != 0 for x in range(q)):
            polys.append(coeffs)
    return polys


def _poly_eval(F: Fq, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _poly_mul(F: Fq, a, b) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return tuple(out)


def _nonsquarefree_bitmap(q: int, d: int) -> np.ndarray:
    """Bitmap over monic degree-d polynomials (indexed by sum c_i q^i of the
    lower coefficients) marking every g divisible by the square of an
    irreducible."""
    F = finite_field(q)
    mul, add, _, _, _ = _tables(q)
    bitmap = np.zeros(q ** d, dtype=bool)
    powers = q ** np.arange(d, dtype=np.int64)
    for e in range(1, d // 2 + 1):
        h2s = [_poly_mul(F, h, h) for h in _monic_irreducibles(q, e)]
        dm = d - 2 * e
        m_idx = np.arange(q ** dm, dtype=np.int64)
        m_dig = np.hstack([_digits(m_idx, q, dm), np.ones((len(m_idx), 1), np.int32)])
        for h2 in h2s:
            g = np.zeros((len(m_idx), d), dtype=np.int32)
            for u, hu in enumerate(h2):
                if hu == 0:
                    continue
                for v in range(dm + 1):
                    j = u + v
                    if j >= d:
                        continue
                    g[:, j] = add[g[:, j], mul[m_dig[:, v], hu]]
            idx = g.astype(np.int64) @ powers
            bitmap[idx] = True
    return bitmap


def _g2_chunks(q: int, d: int, chunk_order: str = "ascending"):
    total = q ** d
    chunk = 1 << 19
    ranges = [
        (i, lo, min(lo + chunk, total))
        for i, lo in enumerate(range(0, total, chunk))
    ]
    return ranges[::-1] if chunk_order == "reversed" else ranges


def _g2_pass(q: int, d: int, chunk_order: str = "ascending", skip=None):
    """Yield (chunk_id, S1, S2chi) integer arrays over squarefree monic
    degree-d polynomials; chunks listed in `skip` are not recomputed."""
    mul, add, _, chi, _ = _tables(q)
    chi2, reps = _ext_context(q)
    bitmap = _nonsquarefree_bitmap(q, d)
    for cid, lo, hi in _g2_chunks(q, d, chunk_order):
        if skip and (d, cid) in skip:
            continue
        idx = np.arange(lo, hi, dtype=np.int64)
        sf = ~bitmap[lo:hi]
        idx = idx[sf]
        if len(idx) == 0:
            continue
        dig = _digits(idx, q, d)
        n = len(idx)
        S1 = np.zeros(n, dtype=np.int32)
        nz = np.zeros(n, dtype=np.int32)
        for x in range(q):
            v = np.full(n, 1, dtype=np.int32)  # monic leading coefficient
            for i in range(d - 1, -1, -1):
                v = add[mul[v, x], dig[:, i]]
            S1 += chi[v]
            nz += v != 0
        if d == 6:
            S1 += 1  # point [1:0], F evaluates to the leading coefficient 1
            nz += 1
        S2 = nz.copy()  # chi_{q^2} is 1 on nonzero base-field values
        glo = np.empty(n, dtype=np.int32)
        ghi = np.empty(n, dtype=np.int32)
        for powers in reps:
            plo, phi = powers[d]
            glo[:] = plo
            ghi[:] = phi
            for i in range(d):
                plo, phi = powers[i]
                glo = add[glo, mul[dig[:, i], plo]]
                ghi = add[ghi, mul[dig[:, i], phi]]
            S2 += 2 * chi2[glo + q * ghi]
        yield cid, S1, S2


def _chunk_stats(q: int, S1, S2) -> tuple[dict[tuple[int, int], int], int]:
    counts: dict[tuple[int, int], int] = {}
    ssum = S1.astype(np.int64) ** 2 + S2 - 4 * q
    assert not np.any(ssum & 1), "parity of t1^2 - (a1^2+a2^2) broken"
    e = ssum >> 1
    for t1 in (-S1, S1):
        keys = (t1.astype(np.int64) + 2 * q) * (4 * q * q + 1) + (e + 2 * q * q)
        uniq, cnt = np.unique(keys, return_counts=True)
        for kk, cc in zip(uniq.tolist(), cnt.tolist()):
            t = kk // (4 * q * q + 1) - 2 * q
            ee = kk % (4 * q * q + 1) - 2 * q * q
            counts[(t, ee)] = counts.get((t, ee), 0) + cc
    return counts, len(S1)


def _merge_counts(total: dict, part: dict) -> None:
    for key, c in part.items():
        total[key] = total.get(key, 0) + c


def _partial_path(q: int, d: int, cid: int) -> Path | None:
    if _cache_dir is None:
        return None
    pdir = _cache_dir / "partial"
    pdir.mkdir(exist_ok=True)
    return pdir / f"g2_q{q}_d{d}_c{cid}_v{CACHE_VERSION}.json"


def _g2_census_compute(
    q: int,
    chunk_order: str = "ascending",
    checkpoint: bool = False,
    resume: bool = False,
) -> G2Census:
    F = finite_field(q)
    if F.p == 2:
        raise FieldTooLarge("characteristic-2 genus-2 census is not implemented")
    if q > MAX_Q_G2:
        raise FieldTooLarge(f"genus-2 census capped at q <= {MAX_Q_G2}")
    counts: dict[tuple[int, int], int] = {}
    model_count = 0
    done: set[tuple[int, int]] = set()
    partials = []
    if resume and _cache_dir is not None:
        for d in (6, 5):
            for cid, _, _ in _g2_chunks(q, d):
                path = _partial_path(q, d, cid)
                if path is not None and path.exists():
                    payload = json.loads(path.read_text())
                    _merge_counts(
                        counts,
                        {(t, e): c for t, e, c in payload["key_counts"]},
                    )
                    model_count += payload["models"]
                    done.add((d, cid))
                    partials.append(path)
    for d in (6, 5):
        for cid, S1, S2 in _g2_pass(q, d, chunk_order, skip=done):
            part, models = _chunk_stats(q, S1, S2)
            _merge_counts(counts, part)
            model_count += models
            if checkpoint:
                path = _partial_path(q, d, cid)
                if path is not None:
                    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
                    with os.fdopen(fd, "w") as fh:
                        json.dump(
                            {
                                "key_counts": [[t, e, c] for (t, e), c in part.items()],
                                "models": models,
                            },
                            fh,
                        )
                    os.replace(tmp, path)
                    partials.append(path)
    census = G2Census(
        q,
        counts,
        group_order=(q * q - 1) * (q * q - q),
        model_count=model_count * (q - 1),
    )
    _validate_g2(census)
    for path in partials:
        path.unlink(missing_ok=True)
    return census


def _validate_g2(census: G2Census) -> None:
    q = census.q
    assert census.mass_sum() == q ** 3, "total genus-2 mass must be q^3"
    for (t1, e), c in census.counts.items():
        assert c > 0
        # x^2 - t1 x + e must have two real roots in [-2 sqrt(q), 2 sqrt(q)]
        assert t1 * t1 >= 4 * e, f"complex roots at {(t1, e)}"
        assert 4 * q + e >= 0 and (4 * q + e) ** 2 >= 4 * q * t1 * t1, (
            f"Weil bound violated at {(t1, e)}"
        )


@lru_cache(maxsize=None)
def g2_census(q: int, resume: bool = False) -> G2Census:
    """Genus-2 census with disk caching; only complete caches satisfy
    reads, but with a cache directory the computation checkpoints per
    chunk for q >= 11 and `resume` continues from those checkpoints."""
    cached = _load_cache("g2", q)
    if cached is not None:
        return cached
    checkpoint = _cache_dir is not None and q >= 11
    census = _g2_census_compute(q, checkpoint=checkpoint, resume=resume)
    _save_cache("g2", q, census)
    return census


# ---------------------------------------------------------------------------
# single-model operations (reference implementations; the census kernels are
# cross-checked against these in the tests)


@dataclass(frozen=True)
class SexticForm:
    """Binary sextic F(x, z) = sum c_i x^i z^(6-i) with coefficients in F_q."""

    coeffs: tuple[int, int, int, int, int, int, int]
    q: int

    def __post_init__(self):
        if all(c == 0 for c in self.coeffs):
            raise ValueError("zero form")


def squarefree_sextic(F: SexticForm, q: int) -> bool:
    """True iff F has six distinct roots in P^1 over the algebraic closure."""
    K = finite_field(q)
    f = list(F.coeffs)
    while f and f[-1] == 0:
        f.pop()
    if not f:
        return False
    deg = len(f) - 1
    if deg <= 4:
        return False  # z^2 divides the binary form
    fp = [K.mul(c, i % K.p) for i, c in enumerate(f)][1:]
    while fp and fp[-1] == 0:
        fp.pop()
    if not fp:
        return deg == 0
    return len(_poly_gcd(K, f, fp)) == 1


def _poly_gcd(K: Fq, a: list[int], b: list[int]) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _poly_mod(K, a, b)
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def _poly_mod(K: Fq, a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    inv = K.inv(b[-1])
    while len(a) >= len(b):
        c = K.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = K.add(a[shift + i], K.neg(K.mul(c, bc)))
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def count_points_g2(F: SexticForm, q: int, ext: int = 1) -> int:
    """#C(F_{q^ext}) for y^2 = F(x, z) by summing 1 + chi(F(P)) over P^1."""
    if ext not in (1, 2):
        raise ValueError("ext must be 1 or 2")
    E = finite_field(q ** ext) if ext == 2 else finite_field(q)
    total = 0
    for x in E.elements():
        acc = 0
        for c in reversed(F.coeffs):
            acc = E.add(E.mul(acc, x), c)
        total += 1 + E.chi(acc)
    total += 1 + E.chi(F.coeffs[6])  # the point [1:0]
    return total


def g2_census_direct_masses(q: int) -> tuple[dict[tuple[int, int], Fraction], int]:
    """All-models reference masses (tiny q only); validates the
    monic-times-twist optimization in g2_census."""
    if q ** 7 > 10 ** 5:
        raise FieldTooLarge("direct census is for validation at tiny q")
    group = (q * q - 1) * (q * q - q)
    masses: dict[tuple[int, int], Fraction] = {}
    models = 0
    for idx in range(1, q ** 7):
        coeffs = tuple((idx // q ** i) % q for i in range(7))
        form = SexticForm(coeffs, q)
        if not squarefree_sextic(form, q):
            continue
        models += 1
        n1 = count_points_g2(form, q, 1)
        n2 = count_points_g2(form, q, 2)
        t1 = q + 1 - n1
        a_sq = q * q + 1 - n2 + 4 * q
        e = (t1 * t1 - a_sq) // 2
        key = (t1, e)
        masses[key] = masses.get(key, Fraction(0)) + Fraction(1, group)
    return masses, models


# ---------------------------------------------------------------------------
# weighted symmetric-power sums


def cheb_second_kind(n: int, a, q):
    """D_1 = 1, D_2 = a, D_n = a D_{n-1} - q D_{n-2}; D_{k+1}(t, q) is the
    degree-k symmetric power sum alpha^k + alpha^(k-1) conj + ... + conj^k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return a * 0 + 1
    prev, cur = a * 0 + 1, a
    for _ in range(n - 2):
        prev, cur = cur, a * cur - q * prev
    return cur


def sigma_weighted(k: int, q: int) -> Fraction:
    """sigma_k(q) = -sum_E h(k, E)/#Aut(E) over the elliptic census."""
    census = ell_census(q)
    total = 0
    for t, c in census.counts.items():
        total += c * cheb_second_kind(k + 1, t, q)
    return Fraction(-total, census.group_order)


# ---------------------------------------------------------------------------
# disk cache


def _cache_path(kind: str, q: int) -> Path | None:
    if _cache_dir is None:
        return None
    return _cache_dir / f"{kind}_q{q}_v{CACHE_VERSION}.json"


def _save_cache(kind: str, q: int, census) -> None:
    path = _cache_path(kind, q)
    if path is None:
        return
    if kind == "ell":
        masses = [[t, rat_str(m)] for t, m in sorted(census.masses.items())]
        counts = [[t, c] for t, c in sorted(census.counts.items())]
    else:
        masses = [[t1, e, rat_str(m)] for (t1, e), m in sorted(census.masses.items())]
        counts = [[t1, e, c] for (t1, e), c in sorted(census.counts.items())]
    payload = {
        "q": q,
        "kind": kind,
        "masses": masses,
        "counts": counts,
        "group_order": census.group_order,
        "model_count": census.model_count,
        "version": CACHE_VERSION,
    }
    # never leave a partially written cache behind
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def _load_cache(kind: str, q: int):
    path = _cache_path(kind, q)
    if path is None or not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
        if payload.get("version") != CACHE_VERSION or payload.get("q") != q:
            return None
        if kind == "ell":
            counts = {int(t): int(c) for t, c in payload["counts"]}
            return EllCensus(q, counts, payload["group_order"], payload["model_count"])
        counts = {(int(t1), int(e)): int(c) for t1, e, c in payload["counts"]}
        return G2Census(q, counts, payload["group_order"], payload["model_count"])
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise CacheError(f"corrupt census cache {path}: {exc}") from exc
