"""Real-analytic Eisenstein series E_{r,s} and vector-valued forms.

For even w >= 2 the family {E_{r,s}}_{r+s=w} is determined by

    d E_{w,0}    = L G_{w+2}          d E_{r,s}    = (r+1) E_{r+1,s-1}   (s >= 1)
    dbar E_{0,w} = L Gbar_{w+2}       dbar E_{r,s} = (s+1) E_{r-1,s+1}   (r >= 1)

together with the constant part

    -B_{w+2}/(2(w+1)(w+2)) L + (-1)^s/2 * w!/2^w * C(w,r) zeta(w+1) L^(-w).

Every non-constant Fourier mode q^m qbar^n is obtained by solving a finite
triangular linear system in the unknowns a^(k)_{m,n}; the constant mode
carries the zeta value and is pinned directly.

A vector-valued form is stored by its components in the basis
U^r V^s with U = X - tau Y and V = X - taubar Y.  In de Rham coordinates

    U = Xdr - log q Ydr,    V = Xdr + log qbar Ydr,

and inversely Ydr = (V - U)/(2L), Xdr = (log qbar U + log q V)/(2L).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .exact_arith import SvScalar, bernoulli, sigma, zsv
from .qseries import (
    BiSeries,
    ExtendedSeries,
    eisenstein_q,
    eisenstein_qbar,
    laplacian,
    maass,
    multiply,
    reduce_to_L,
)
from .sl2rep import DERHAM, HomPoly, delta_k

__all__ = [
    "InconsistentSystem",
    "OddWeight",
    "VectorModularForm",
    "build_real_eisenstein",
    "constant_part",
    "mode_coefficients",
    "system_residuals",
    "laplace_residuals",
    "components_from_vector",
    "vector_from_components",
    "m_filtration_ok",
    "delta_family",
    "product_decomposition",
    "laplace_inhomogeneous_decomposition",
    "delta_component_formula",
    "delta_component_check",
]


class InconsistentSystem(ArithmeticError):
    pass


class OddWeight(ValueError):
    pass


@dataclass
class VectorModularForm:
    """Components f_{r,s} (r + s = w) of a form sum f_{r,s} U^r V^s."""

    total_weight: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        for (r, s), f in self.components.items():
            if r + s != self.total_weight:
                raise ValueError(f"component ({r},{s}) does not have weight {self.total_weight}")
            if f.weights != (r, s):
                raise ValueError(f"component ({r},{s}) carries weights {f.weights}")

    def __getitem__(self, rs) -> BiSeries:
        return self.components[tuple(rs)]

    def items(self):
        return sorted(self.components.items())

    def keys(self):
        return sorted(self.components)

    @property
    def trunc(self) -> int:
        return min(f.trunc for f in self.components.values())

    def scale(self, c) -> "VectorModularForm":
        return VectorModularForm(self.total_weight, {k: f.scale(c) for k, f in self.components.items()})

    def conjugate(self) -> "VectorModularForm":
        return VectorModularForm(
            self.total_weight, {(s, r): f.conjugate() for (r, s), f in self.components.items()}
        )


# ---------------------------------------------------------------------------
# the Eisenstein system

def constant_part(w: int, r: int, s: int) -> dict:
    """Constant mode of E_{r,s} as {L-exponent: coefficient}."""
    if w % 2:
        raise OddWeight(f"weight {w} is odd")
    lin = -bernoulli(w + 2) / (2 * (w + 1) * (w + 2))
    zcoeff = Fraction((-1) ** s * math.factorial(w) * math.comb(w, r), 2 * 2 ** w)
    # zeta(w+1) = zeta_sv(w+1)/2
    return {1: lin, -w: zsv(w + 1) * (zcoeff / 2)}


def _mode_rhs(w: int, m: int, n: int):
    """Right-hand sides of the system in mode (m, n): (hol, antihol) at L^1."""
    g = sigma(w + 1, m) if (n == 0 and m >= 1) else 0
    gbar = sigma(w + 1, n) if (m == 0 and n >= 1) else 0
    return g, gbar


def _solve_mode(w: int, m: int, n: int, K: int) -> dict:
    """Solve the system in a non-constant mode; returns {(r, s, k): coeff}."""
    g, gbar = _mode_rhs(w, m, n)
    if not g and not gbar:
        return {}
    ks = range(-K, K + 1)
    unknowns = [(r, w - r, k) for r in range(w + 1) for k in ks]
    cols = {u: {} for u in unknowns}

    def put(u, eq, c):
        if u in cols and c:
            cols[u][eq] = cols[u].get(eq, 0) + c

    for r in range(w + 1):
        s = w - r
        for k in range(-K, K + 2):
            eq = ("d", r, k)
            put((r, s, k), eq, k + r)
            put((r, s, k - 1), eq, 2 * m)
            if s >= 1:
                put((r + 1, s - 1, k), eq, -(r + 1))
            eq = ("db", r, k)
            put((r, s, k), eq, k + s)
            put((r, s, k - 1), eq, 2 * n)
            if r >= 1:
                put((r - 1, s + 1, k), eq, -(s + 1))
    target = {}
    if g:
        target[("d", w, 1)] = Fraction(g)
    if gbar:
        target[("db", 0, 1)] = Fraction(gbar)
    columns = [cols[u] for u in unknowns]
    try:
        coeffs, residual = linalg.solve(columns, target, unique=True)
    except ValueError as exc:
        raise InconsistentSystem(f"mode ({m},{n}): {exc}") from None
    if residual:
        raise InconsistentSystem(f"mode ({m},{n}) has no solution in the L-band [-{K},{K}]")
    return {u: c for u, c in zip(unknowns, coeffs) if c}


def mode_coefficients(w: int, m: int, n: int, K: int | None = None) -> dict:
    """Coefficients {(r, s, k): a^(k)_{m,n} of E_{r,s}} in one non-constant mode."""
    if w % 2:
        raise OddWeight(f"weight {w} is odd")
    if m == 0 and n == 0:
        raise ValueError("the constant mode is given by constant_part")
    return _solve_mode(w, m, n, w + 4 if K is None else K)


def build_real_eisenstein(w: int, N: int = 16, K: int | None = None) -> VectorModularForm:
    """The family E_{r,s}, r + s = w, truncated at q-order N."""
    if w % 2:
        raise OddWeight(f"weight {w} is odd")
    if w < 2:
        raise ValueError("weight must be at least 2")
    if K is None:
        K = w + 4
    coeffs = {(r, w - r): {} for r in range(w + 1)}
    for r in range(w + 1):
        for k, c in constant_part(w, r, w - r).items():
            coeffs[(r, w - r)][(k, 0, 0)] = c
    for m in range(N + 1):
        for n in range(N + 1):
            if m == 0 and n == 0:
                continue
            for (r, s, k), c in _solve_mode(w, m, n, K).items():
                coeffs[(r, s)][(k, m, n)] = c
    return VectorModularForm(
        w, {rs: BiSeries(rs, N, c) for rs, c in coeffs.items()}
    )


def system_residuals(E: VectorModularForm) -> list:
    """Violations of the differential system; empty when it holds exactly."""
    w = E.total_weight
    N = E.trunc
    LG = eisenstein_q(w + 2, N).shift_L(1)
    LGb = eisenstein_qbar(w + 2, N).shift_L(1)
    bad = []
    for r in range(w + 1):
        s = w - r
        d = maass(E[(r, s)], "raise")
        target = LG if s == 0 else E[(r + 1, s - 1)].scale(r + 1)
        if not d.equals(target):
            bad.append(("d", r, s))
        db = maass(E[(r, s)], "lower")
        target = LGb if r == 0 else E[(r - 1, s + 1)].scale(s + 1)
        if not db.equals(target):
            bad.append(("dbar", r, s))
    return bad


def laplace_residuals(E: VectorModularForm) -> list:
    w = E.total_weight
    return [rs for rs, f in E.items() if laplacian(f) + f.scale(w)]


def m_filtration_ok(f: BiSeries, bound: int = 1) -> bool:
    """Every coefficient of L^k has M-weight + k <= bound (deg_M L = 1)."""
    for (k, _, _), c in f.coeffs.items():
        wt = c.weight() if isinstance(c, SvScalar) else 0
        if wt + k > bound:
            return False
    return True


# ---------------------------------------------------------------------------
# change of basis between Xdr^a Ydr^b and U^r V^s

@lru_cache(maxsize=None)
def _uv_in_xy(N: int):
    """U and V as degree-1 polynomials in Xdr, Ydr with ExtendedSeries coefficients."""
    one = ExtendedSeries.constant(1, N)
    U = HomPoly(1, {(1, 0): one, (0, 1): -ExtendedSeries.log_q(N)}, DERHAM)
    V = HomPoly(1, {(1, 0): one, (0, 1): ExtendedSeries.log_qbar(N)}, DERHAM)
    return U, V


@lru_cache(maxsize=None)
def _xy_in_uv(N: int):
    """Xdr and Ydr as degree-1 polynomials in U, V (exponent pairs index U, V)."""
    inv = ExtendedSeries.L_power(-1, N, Fraction(1, 2))
    X = HomPoly(1, {(1, 0): ExtendedSeries.log_qbar(N) * inv, (0, 1): ExtendedSeries.log_q(N) * inv}, DERHAM)
    Y = HomPoly(1, {(1, 0): -inv, (0, 1): inv}, DERHAM)
    return X, Y


def _power(p: HomPoly, e: int, cache: dict, key) -> HomPoly:
    if (key, e) in cache:
        return cache[(key, e)]
    if e == 0:
        one = next(iter(p.coeffs.values()))
        out = HomPoly(0, {(0, 0): ExtendedSeries.constant(1, one.trunc)}, p.basis)
    else:
        out = _power(p, e - 1, cache, key) * p
    cache[(key, e)] = out
    return out


def _substitute(F: HomPoly, A: HomPoly, B: HomPoly) -> HomPoly:
    """F(A, B) for linear forms A, B."""
    cache = {}
    out = HomPoly(F.degree, {}, DERHAM)
    for (a, b), c in F.coeffs.items():
        term = _power(A, a, cache, "A") * _power(B, b, cache, "B")
        out = out + term.scale(c)
    return out


def _as_extended(c, N):
    if isinstance(c, ExtendedSeries):
        return c
    if isinstance(c, BiSeries):
        return ExtendedSeries.from_bi(c)
    return ExtendedSeries.constant(c, N)


def components_from_vector(F: HomPoly, reduce: bool = True, trunc: int | None = None):
    """Components of sum F_{a,b} Xdr^a Ydr^b in the basis U^r V^s.

    With ``reduce`` the components are passed through reduce_to_L and a
    VectorModularForm is returned; otherwise a dict of ExtendedSeries.
    """
    if F.basis != DERHAM:
        raise ValueError("components are extracted from de Rham coordinates")
    N = trunc
    if N is None:
        N = min((c.trunc for c in F.coeffs.values() if hasattr(c, "trunc")), default=16)
    Fe = HomPoly(F.degree, {k: _as_extended(c, N) for k, c in F.coeffs.items()}, DERHAM)
    X, Y = _xy_in_uv(N)
    sub = _substitute(Fe, X, Y)
    comps = {(r, F.degree - r): sub.coeffs.get((r, F.degree - r), ExtendedSeries(N)) for r in range(F.degree + 1)}
    if not reduce:
        return comps
    return VectorModularForm(F.degree, {rs: reduce_to_L(c, rs) for rs, c in comps.items()})


def vector_from_components(E) -> HomPoly:
    """Inverse of components_from_vector: sum f_{r,s} U^r V^s in Xdr, Ydr."""
    if isinstance(E, VectorModularForm):
        w = E.total_weight
        comps = {rs: ExtendedSeries.from_bi(f) for rs, f in E.components.items()}
        N = E.trunc
    else:
        comps = {rs: _as_extended(c, 16) for rs, c in E.items()}
        w = sum(next(iter(comps)))
        N = min(c.trunc for c in comps.values())
    U, V = _uv_in_xy(N)
    P = HomPoly(w, {rs: c for rs, c in comps.items()}, DERHAM)
    return _substitute(P, U, V)


# ---------------------------------------------------------------------------
# products and the inhomogeneous Laplace equation

def _flatten(f: BiSeries) -> dict:
    out = {}
    for (k, m, n), c in f.coeffs.items():
        items = c.items() if isinstance(c, SvScalar) else [((), Fraction(c))]
        for mono, v in items:
            out[(k, m, n, mono)] = v
    return out


def delta_family(E: VectorModularForm, F: VectorModularForm, k: int, normalized: bool = True) -> VectorModularForm:
    """Components of delta^k(E (x) F) computed in de Rham coordinates."""
    vE = vector_from_components(E)
    vF = vector_from_components(F)
    P = delta_k(vE, vF, k)
    if normalized:
        P = P.map_coefficients(lambda c: c * Fraction(1, math.factorial(k) ** 2))
    return components_from_vector(P, trunc=min(E.trunc, F.trunc))


def product_decomposition(N: int = 8):
    """Write E_{2,0} E_{0,2} through the delta^k components of E (x) E, k = 0, 1, 2.

    Returns (coefficients, residual) where the target is matched against
    L^(-k) * delta^k(E (x) E)_{2-k, 2-k}.
    """
    E = build_real_eisenstein(2, N)
    target = multiply(E[(2, 0)], E[(0, 2)])
    columns = []
    labels = []
    for k in range(3):
        comp = delta_family(E, E, k)[(2 - k, 2 - k)]
        columns.append(_flatten(comp.shift_L(-k)))
        labels.append(k)
    coeffs, residual = linalg.solve(columns, _flatten(target))
    return dict(zip(labels, coeffs)), residual


def laplace_inhomogeneous_decomposition(F: BiSeries, w_inner: int = 2, g_weight: int = 4, N: int | None = None):
    """Decompose (Delta + r + s) F in the span of L^j G E, L^j Gbar E, L^j G Gbar.

    ``E`` runs over the components of the weight ``w_inner`` Eisenstein family
    and G is the holomorphic Eisenstein series of weight ``g_weight``.
    Returns (coefficients by label, residual).
    """
    r, s = F.weights
    N = F.trunc if N is None else N
    target = laplacian(F) + F.scale(r + s)
    E = build_real_eisenstein(w_inner, N)
    G = eisenstein_q(g_weight, N)
    Gb = eisenstein_qbar(g_weight, N)
    basis = {}
    for (r1, s1), e in E.items():
        for lab, h in (("G", G), ("Gbar", Gb)):
            prod = multiply(h, e)
            # L^j lowers both weights by j
            j = prod.weights[0] - r
            if j == prod.weights[1] - s:
                basis[(lab, r1, s1, j)] = prod.shift_L(j)
    GG = multiply(G, Gb)
    j = GG.weights[0] - r
    if j == GG.weights[1] - s:
        basis[("GGbar", j)] = GG.shift_L(j)
    labels = sorted(basis, key=repr)
    coeffs, residual = linalg.solve([_flatten(basis[l]) for l in labels], _flatten(target))
    return {l: c for l, c in zip(labels, coeffs) if c}, residual


# ---------------------------------------------------------------------------
# delta^k against U^{2m}

def delta_component_formula(m: int, n: int, k: int, r: int, s: int, A: dict) -> ExtendedSeries:
    """Component (r, s) of delta^k(U^{2m} (x) A)/(k!)^2 by the closed formula.

    ``A`` maps (p, q) with p + q = 2n to coefficients; missing entries are zero.
    """
    if k > 2 * m or k > 2 * n:
        return ExtendedSeries(0)
    c = A.get((r - 2 * m + k, s + k), 0)
    if not c:
        return ExtendedSeries(0)
    factor = 2 ** k * math.comb(2 * m, k) * math.comb(s + k, k)
    return ExtendedSeries.L_power(k, 0, c * factor)


def delta_component_check(max_mn: int = 3) -> list:
    """Compare the closed formula with delta^k computed in de Rham coordinates.

    A runs over the basis vectors U^p V^q of V_{2n}, which suffices by
    linearity.  Returns the mismatching (m, n, k, (p, q), (r, s)); every k up
    to 2 max(m, n) + 1 is tried so the vanishing range is covered too.
    """
    bad = []
    for m in range(max_mn + 1):
        left = vector_from_components({(2 * m, 0): ExtendedSeries.constant(1, 0)})
        for n in range(max_mn + 1):
            for p in range(2 * n + 1):
                A = {(p, 2 * n - p): 1}
                right = vector_from_components({(p, 2 * n - p): ExtendedSeries.constant(1, 0)})
                for k in range(2 * max(m, n) + 2):
                    P = delta_k(left, right, k)
                    P = P.map_coefficients(lambda c: c * Fraction(1, math.factorial(k) ** 2))
                    comps = components_from_vector(P, reduce=False, trunc=0) if P.coeffs else {}
                    for r in range(P.degree + 1):
                        rs = (r, P.degree - r)
                        got = comps.get(rs, ExtendedSeries(0))
                        if got != delta_component_formula(m, n, k, r, rs[1], A):
                            bad.append((m, n, k, (p, 2 * n - p), rs))
    return bad
