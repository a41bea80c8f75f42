"""Completed L-functions of expansions in L = log|q|, q and qbar.

For f = sum_k L^k sum a^(k)_{m,n} q^m qbar^n with Dirichlet coefficients
c^(k)(l) = sum_{m+n=l} a^(k)_{m,n} (l >= 1), termwise Mellin transforms give

    Lambda(f; s) = sum_k (-1)^k (2 pi)^-s Gamma(s + k) sum_l c^(k)(l) l^-(s+k),

which is summed directly; there is no analytic continuation.

The real-analytic Eisenstein series have a mode profile independent of the
mode: a^(k)_{m,0} = sigma_{w+1}(m) (2m)^(k-1) beta_k and likewise in qbar,
so their coefficient streams are available to any length.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_arith import SvScalar, sv_eval, zeta
from .qseries import BiSeries, maass
from .raeis import mode_coefficients

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z):
    """Lanczos approximation (g = 7) with reflection below 1/2."""
    if isinstance(z, complex):
        if z.real < 0.5:
            return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1 - z))
        z -= 1
        x = _LANCZOS[0] + sum(c / (z + i) for i, c in enumerate(_LANCZOS[1:], 1))
        t = z + _LANCZOS_G + 0.5
        return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * x
    if z < 0.5:
        return math.pi / (math.sin(math.pi * z) * gamma(1 - z))
    z -= 1
    x = _LANCZOS[0] + sum(c / (z + i) for i, c in enumerate(_LANCZOS[1:], 1))
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * math.exp(-t) * x


def xi(s: float) -> float:
    """pi^(-s/2) Gamma(s/2) zeta(s)."""
    return math.pi ** (-s / 2) * gamma(s / 2) * zeta(s)


def sigma_array(p: int, T: int) -> np.ndarray:
    """sigma_p(l) for l = 0..T as floats (index 0 unused)."""
    out = np.zeros(T + 1)
    for d in range(1, T + 1):
        out[d::d] += float(d) ** p
    return out


class OutOfRegime(ValueError):
    pass


@dataclass
class LSeriesData:
    """Dirichlet coefficient streams c^(k)(l), l >= 1, for each L-power k.

    ``streams[k]`` maps a number of terms T to the array c^(k)(1..T);
    ``growth[k] = (A, g)`` bounds |c^(k)(l)| <= A l^g; ``max_terms`` is the
    number of coefficients the source actually determines.
    """

    weights: tuple
    streams: dict
    growth: dict
    max_terms: int | None = None
    label: str = ""

    def coefficients(self, k: int, T: int) -> np.ndarray:
        return self.streams[k](T)


def _to_float(c) -> float:
    if isinstance(c, SvScalar):
        return sv_eval(c)
    return float(c)


def from_biseries(f: BiSeries) -> LSeriesData:
    """Streams read off a truncated expansion (complete for l <= trunc)."""
    N = f.trunc
    per_k = {}
    for (k, m, n), c in f.coeffs.items():
        l = m + n
        if l == 0 or l > N:
            continue
        arr = per_k.setdefault(k, np.zeros(N + 1))
        arr[l] += _to_float(c)
    streams = {}
    growth = {}
    for k, arr in per_k.items():
        streams[k] = (lambda T, arr=arr: arr[1 : T + 1])
        growth[k] = (float(np.max(np.abs(arr))), 0.0)
    return LSeriesData(f.weights, streams, growth, N, "biseries")


def holomorphic_eisenstein(k: int) -> LSeriesData:
    """G_k as a series of weights (k, 0): c^(0)(l) = sigma_{k-1}(l)."""
    bound = zeta(k - 1) if k > 2 else 1.0

    def stream(T):
        return sigma_array(k - 1, T)[1:]

    return LSeriesData((k, 0), {0: stream}, {0: (bound, float(k - 1))}, None, f"G{k}")


def eisenstein_profile(w: int) -> dict:
    """{(r, s): {k: (beta_hol, beta_antihol)}} with a^(k)_{m,0} = sigma(m) (2m)^(k-1) beta_hol."""
    hol = mode_coefficients(w, 1, 0)
    anti = mode_coefficients(w, 0, 1)
    out = {}
    for (r, s, k), c in hol.items():
        out.setdefault((r, s), {}).setdefault(k, [Fraction(0), Fraction(0)])[0] = c / Fraction(2) ** (k - 1)
    for (r, s, k), c in anti.items():
        out.setdefault((r, s), {}).setdefault(k, [Fraction(0), Fraction(0)])[1] = c / Fraction(2) ** (k - 1)
    return {rs: {k: tuple(v) for k, v in d.items()} for rs, d in out.items()}


def real_eisenstein(r: int, s: int) -> LSeriesData:
    """E_{r,s}: c^(k)(l) = sigma_{r+s+1}(l) (2l)^(k-1) (beta_hol + beta_antihol)."""
    w = r + s
    profile = eisenstein_profile(w).get((r, s), {})
    streams = {}
    growth = {}
    zb = zeta(w + 1)
    for k, (bh, ba) in profile.items():
        beta = float(bh + ba)
        if not beta:
            continue

        def stream(T, k=k, beta=beta):
            ells = np.arange(1, T + 1, dtype=float)
            return sigma_array(w + 1, T)[1:] * (2 * ells) ** (k - 1) * beta

        streams[k] = stream
        growth[k] = (abs(beta) * 2.0 ** (k - 1) * zb, float(w + 1 + k - 1))
    return LSeriesData((r, s), streams, growth, None, f"E{r},{s}")


@dataclass
class LambdaValue:
    value: complex | float
    tail_bound: float
    terms: int
    per_k: dict = field(default_factory=dict)


def lambda_completed(data: LSeriesData, s, terms: int = 100000) -> LambdaValue:
    """Direct summation of the Dirichlet expression with a tail bound."""
    alpha, beta = data.weights
    re_s = s.real if isinstance(s, complex) else s
    if re_s < alpha + beta + 3:
        raise OutOfRegime(f"Re(s) = {re_s} is below the summation regime {alpha + beta + 3}")
    if data.max_terms is not None:
        terms = min(terms, data.max_terms)
    ells = np.arange(1, terms + 1, dtype=float)
    logs = np.log(ells)
    total = 0
    tail = 0.0
    per_k = {}
    for k in sorted(data.streams):
        c = data.coefficients(k, terms)
        sk = s + k
        series = np.sum(c * np.exp(-sk * logs))
        pref = (-1) ** k * (2 * math.pi) ** (-s) * gamma(sk)
        contribution = pref * series
        per_k[k] = contribution
        total += contribution
        A, g = data.growth[k]
        expo = re_s + k - g - 1
        if expo <= 0:
            raise OutOfRegime(f"L^{k} stream does not converge at Re(s) = {re_s}")
        if data.max_terms is None:
            tail += abs(pref) * A * terms ** (-expo) / expo
    if isinstance(total, np.generic):
        total = total.item()
    return LambdaValue(total, tail, terms, per_k)


def lambda_holomorphic_eisenstein(k: int, s: float) -> float:
    """(2 pi)^-s Gamma(s) zeta(s) zeta(s - k + 1)."""
    return (2 * math.pi) ** (-s) * gamma(s) * zeta(s) * zeta(s - k + 1)


def mode_mellin(k: int, ell: int, s: float) -> float:
    """Closed form of int_0^oo (-2 pi y)^k exp(-2 pi ell y) y^(s-1) dy."""
    return (-1) ** k * (2 * math.pi) ** (-s) * gamma(s + k) * ell ** (-(s + k))


# ---------------------------------------------------------------------------
# exact identities

def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for i, a in p.items():
        for j, b in q.items():
            v = out.get(i + j, 0) + a * b
            if v:
                out[i + j] = v
            else:
                out.pop(i + j, None)
    return out


def _formal_lambda(f: BiSeries, multiplier: dict, k0: int, out: dict):
    """Add multiplier(s) * Lambda(f; s) in the basis B_{k0,l} = (-1)^k0 (2pi)^-s Gamma(s+k0) l^-(s+k0).

    B_{k,l} = prod_{j=k0}^{k-1} (-(s+j)/l) B_{k0,l} by the Gamma recursion.
    """
    for (k, m, n), c in f.coeffs.items():
        l = m + n
        if l == 0 or l > f.trunc:
            continue
        poly = dict(multiplier)
        for j in range(k0, k):
            poly = _poly_mul(poly, {0: Fraction(-j, l), 1: Fraction(-1, l)})
        target = out.setdefault(l, {})
        for e, v in poly.items():
            nv = target.get(e, 0) + c * v
            if nv:
                target[e] = nv
            else:
                target.pop(e, None)


def verify_dlambda_identity(f: BiSeries) -> dict:
    """Residues of Lambda(df) + Lambda(dbar f) + (2s - w) Lambda(f) as polynomials in s.

    Returns {l: {power of s: coefficient}} for every l with a nonzero residue.
    """
    w = sum(f.weights)
    d = maass(f, "raise")
    db = maass(f, "lower")
    ks = [k for (k, _, _) in f.coeffs] + [k for (k, _, _) in d.coeffs] + [k for (k, _, _) in db.coeffs]
    k0 = min(ks, default=0)
    out = {}
    _formal_lambda(d, {0: Fraction(1)}, k0, out)
    _formal_lambda(db, {0: Fraction(1)}, k0, out)
    _formal_lambda(f, {0: Fraction(-w), 1: Fraction(2)}, k0, out)
    return {l: p for l, p in out.items() if p}


def det_Mw(w: int) -> dict:
    """Determinant of the tridiagonal matrix with diagonal 2s - w, superdiagonal
    1..w and subdiagonal w..1, as {power of s: coefficient}."""
    if w < 0 or w % 2:
        raise ValueError("w must be even and non-negative")
    diag = {e: c for e, c in {0: Fraction(-w), 1: Fraction(2)}.items() if c}
    prev, cur = {0: Fraction(1)}, diag
    for i in range(1, w + 1):
        sup, sub = i, w - i + 1
        nxt = _poly_mul(diag, cur)
        for e, v in prev.items():
            nv = nxt.get(e, 0) - sup * sub * v
            if nv:
                nxt[e] = nv
            else:
                nxt.pop(e, None)
        prev, cur = cur, nxt
    return cur


def falling_product(w: int) -> dict:
    """2^(w+1) s (s-1) ... (s-w) as {power: coefficient}."""
    out = {0: Fraction(2) ** (w + 1)}
    for j in range(w + 1):
        out = _poly_mul(out, {0: Fraction(-j), 1: Fraction(1)})
    return out


# ---------------------------------------------------------------------------
# printed examples

def _relative(a, b) -> float:
    return abs(a - b) / abs(b)


def eisenstein_lambda_examples(s: float = 8.0, terms: int = 100000) -> dict:
    """Lambda(E_{2,0}; s) and Lambda(E_{1,1}; s) against multiples of Lambda(G_4; s+1)."""
    ref = lambda_holomorphic_eisenstein(4, s + 1)
    e20 = lambda_completed(real_eisenstein(2, 0), s, terms)
    e11 = lambda_completed(real_eisenstein(1, 1), s, terms)
    want20 = (s - 1) * math.pi / (s * (s - 2)) * ref
    want11 = -2 * math.pi / (s * (s - 2)) * ref
    return {
        "E2,0": {"value": e20.value, "tail_bound": e20.tail_bound, "reference": want20,
                 "discrepancy": _relative(e20.value, want20)},
        "E1,1": {"value": e11.value, "tail_bound": e11.tail_bound, "reference": want11,
                 "discrepancy": _relative(e11.value, want11)},
    }


def xi_identity_check(k: int = 1, s: float = 8.0, terms: int = 100000) -> dict:
    """(-4 pi)^k Lambda(E_{k,k}; s) against (2k-1)!/(k-1)! xi(s+1) xi(s-2k)."""
    if k != 1:
        raise ValueError("only k = 1 is checked")
    if s - 2 * k <= 1:
        raise OutOfRegime("xi(s - 2k) needs s - 2k > 1")
    lam = lambda_completed(real_eisenstein(k, k), s, terms)
    lhs = (-4 * math.pi) ** k * lam.value
    rhs = math.factorial(2 * k - 1) / math.factorial(k - 1) * xi(s + 1) * xi(s - 2 * k)
    return {"lhs": lhs, "rhs": rhs, "discrepancy": _relative(lhs, rhs), "tail_bound": lam.tail_bound}
