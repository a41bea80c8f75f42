"""Truncated expansions in q, qbar and L = log|q|.

Three containers live here:

``BiSeries``
    sum_k L^k sum_{m,n} a^(k)_{m,n} q^m qbar^n with modular weights (r, s).
``HolLogSeries``
    truncated element of Q[[q]][log q] (or of its complex conjugate,
    Q[[qbar]][log qbar], when ``conjugate`` is set).
``ExtendedSeries``
    staging type with coefficients polynomial in L^(+-1) and in
    D = log q - log qbar.  Since log q = L + D/2 and log qbar = L - D/2,
    every expansion in q, qbar, log q, log qbar, L^(+-1) fits, and a
    T-invariant one has no D.

All coefficients are exact: Fractions or SvScalars.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .exact_arith import SvScalar, bernoulli, sigma

DEFAULT_TRUNC = 16


class NonModularResidue(ValueError):
    """Raised when a series still depends on log q - log qbar."""


def _add_into(out: dict, key, value):
    if not value:
        return
    new = out.get(key, 0) + value
    if new:
        out[key] = new
    else:
        out.pop(key, None)


def _coeff_json(c):
    if isinstance(c, SvScalar):
        return c.to_json_obj()
    c = Fraction(c)
    return [{"monomial": [], "coeff": f"{c.numerator}/{c.denominator}"}] if c else []


# ---------------------------------------------------------------------------
# BiSeries

class BiSeries:
    """Truncated expansion sum_k L^k sum_{m,n<=N} a^(k)_{m,n} q^m qbar^n."""

    __slots__ = ("weights", "trunc", "coeffs")

    def __init__(self, weights=(0, 0), trunc: int = DEFAULT_TRUNC, coeffs: dict | None = None):
        self.weights = (int(weights[0]), int(weights[1]))
        self.trunc = trunc
        clean = {}
        for (k, m, n), c in (coeffs or {}).items():
            if m < 0 or n < 0:
                raise ValueError("negative q-exponent")
            if m <= trunc and n <= trunc:
                _add_into(clean, (k, m, n), c)
        self.coeffs = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def L_power(cls, k: int, weights=(0, 0), trunc: int = DEFAULT_TRUNC, coeff=1) -> "BiSeries":
        return cls(weights, trunc, {(k, 0, 0): coeff})

    @classmethod
    def monomial(cls, k: int, m: int, n: int, weights=(0, 0), trunc: int = DEFAULT_TRUNC, coeff=1):
        return cls(weights, trunc, {(k, m, n): coeff})

    # -- access -------------------------------------------------------------
    def __getitem__(self, kmn):
        return self.coeffs.get(tuple(kmn), 0)

    def items(self):
        return self.coeffs.items()

    def mode(self, m: int, n: int) -> dict:
        return {k: c for (k, mm, nn), c in self.coeffs.items() if mm == m and nn == n}

    def constant_part(self) -> dict:
        return self.mode(0, 0)

    def pole_order(self) -> int:
        """Smallest L-exponent present (0 for the zero series)."""
        return min((k for k, _, _ in self.coeffs), default=0)

    def top_order(self) -> int:
        return max((k for k, _, _ in self.coeffs), default=0)

    def total_weight(self) -> int:
        return self.weights[0] + self.weights[1]

    def truncate(self, N: int) -> "BiSeries":
        return BiSeries(self.weights, min(N, self.trunc), self.coeffs)

    def with_weights(self, weights) -> "BiSeries":
        return BiSeries(weights, self.trunc, self.coeffs)

    def conjugate(self) -> "BiSeries":
        """Complex conjugate: swap q and qbar and the two weights."""
        return BiSeries(
            (self.weights[1], self.weights[0]),
            self.trunc,
            {(k, n, m): c for (k, m, n), c in self.coeffs.items()},
        )

    # -- arithmetic ---------------------------------------------------------
    def _check_weights(self, other):
        if self.weights != other.weights and self.coeffs and other.coeffs:
            raise ValueError(f"weights differ: {self.weights} vs {other.weights}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_weights(other)
        weights = self.weights if self.coeffs else other.weights
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _add_into(out, key, c)
        return BiSeries(weights, min(self.trunc, other.trunc), out)

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.weights, self.trunc, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def scale(self, c) -> "BiSeries":
        return BiSeries(self.weights, self.trunc, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def shift_L(self, j: int, weights=None) -> "BiSeries":
        """Multiply by L^j; weights drop by (j, j) unless given."""
        if weights is None:
            weights = (self.weights[0] - j, self.weights[1] - j)
        return BiSeries(weights, self.trunc, {(k + j, m, n): c for (k, m, n), c in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def equals(self, other: "BiSeries", check_weights: bool = True) -> bool:
        """Equality of coefficients up to the common truncation."""
        N = min(self.trunc, other.trunc)
        if check_weights and (self.coeffs or other.coeffs) and self.weights != other.weights:
            return False
        return self.truncate(N).coeffs == other.truncate(N).coeffs

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"BiSeries(weights={self.weights}, trunc={self.trunc}, terms={len(self.coeffs)})"


def multiply(f: BiSeries, g: BiSeries) -> BiSeries:
    """Product of expansions: weights add, coefficients convolve in (k, m, n)."""
    N = min(f.trunc, g.trunc)
    out = {}
    gitems = list(g.coeffs.items())
    for (k1, m1, n1), c1 in f.coeffs.items():
        for (k2, m2, n2), c2 in gitems:
            m, n = m1 + m2, n1 + n2
            if m <= N and n <= N:
                _add_into(out, (k1 + k2, m, n), c1 * c2)
    return BiSeries((f.weights[0] + g.weights[0], f.weights[1] + g.weights[1]), N, out)


def eisenstein_q(k: int, N: int = DEFAULT_TRUNC) -> BiSeries:
    """Holomorphic Eisenstein series -B_k/2k + sum sigma_{k-1}(m) q^m, weights (k, 0)."""
    if k % 2 or k < 4:
        raise ValueError("Eisenstein weight must be even and at least 4")
    coeffs = {(0, 0, 0): -bernoulli(k) / (2 * k)}
    for m in range(1, N + 1):
        coeffs[(0, m, 0)] = sigma(k - 1, m)
    return BiSeries((k, 0), N, coeffs)


def eisenstein_qbar(k: int, N: int = DEFAULT_TRUNC) -> BiSeries:
    return eisenstein_q(k, N).conjugate()


def maass(f: BiSeries, direction: str) -> BiSeries:
    """Raising operator (z - zbar) d/dz + r, or lowering (zbar - z) d/dzbar + s."""
    r, s = f.weights
    out = {}
    if direction == "raise":
        for (k, m, n), c in f.coeffs.items():
            _add_into(out, (k, m, n), c * (k + r))
            if m:
                _add_into(out, (k + 1, m, n), c * (2 * m))
        return BiSeries((r + 1, s - 1), f.trunc, out)
    if direction == "lower":
        for (k, m, n), c in f.coeffs.items():
            _add_into(out, (k, m, n), c * (k + s))
            if n:
                _add_into(out, (k + 1, m, n), c * (2 * n))
        return BiSeries((r - 1, s + 1), f.trunc, out)
    raise ValueError("direction must be 'raise' or 'lower'")


def partial(f: BiSeries) -> BiSeries:
    return maass(f, "raise")


def partial_bar(f: BiSeries) -> BiSeries:
    return maass(f, "lower")


def laplacian(f: BiSeries, check: bool = True) -> BiSeries:
    """Delta_{r,s} = -dbar d + r(s-1), checked against -d dbar + s(r-1)."""
    r, s = f.weights
    first = -maass(maass(f, "raise"), "lower") + f.scale(r * (s - 1))
    if check:
        second = -maass(maass(f, "lower"), "raise") + f.scale(s * (r - 1))
        if first.coeffs != second.coeffs:
            raise AssertionError("the two Laplacian formulas disagree")
    return first.with_weights((r, s))


# ---------------------------------------------------------------------------
# HolLogSeries

class HolLogSeries:
    """Truncated sum c_{i,j} q^i (log q)^j.

    With ``conjugate=True`` the variables are qbar and log qbar instead.
    """

    __slots__ = ("trunc", "coeffs", "conjugate")

    def __init__(self, trunc: int = DEFAULT_TRUNC, coeffs: dict | None = None, conjugate: bool = False):
        self.trunc = trunc
        self.conjugate = conjugate
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if i <= trunc:
                _add_into(clean, (i, j), c)
        self.coeffs = clean

    @classmethod
    def one(cls, trunc: int = DEFAULT_TRUNC) -> "HolLogSeries":
        return cls(trunc, {(0, 0): 1})

    @classmethod
    def log_q(cls, trunc: int = DEFAULT_TRUNC) -> "HolLogSeries":
        return cls(trunc, {(0, 1): 1})

    @classmethod
    def from_q_series(cls, f: BiSeries) -> "HolLogSeries":
        """Holomorphic L^0 part of a BiSeries (all other terms must vanish)."""
        out = {}
        for (k, m, n), c in f.coeffs.items():
            if k or n:
                raise ValueError("series is not holomorphic in q")
            out[(m, 0)] = c
        return cls(f.trunc, out)

    def __getitem__(self, ij):
        return self.coeffs.get(tuple(ij), 0)

    def items(self):
        return self.coeffs.items()

    def log_degree(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    def _check(self, other):
        if self.conjugate != other.conjugate:
            raise ValueError("cannot combine q- and qbar-series")

    def __add__(self, other: "HolLogSeries") -> "HolLogSeries":
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _add_into(out, key, c)
        return HolLogSeries(min(self.trunc, other.trunc), out, self.conjugate)

    def __neg__(self):
        return HolLogSeries(self.trunc, {k: -c for k, c in self.coeffs.items()}, self.conjugate)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HolLogSeries":
        return HolLogSeries(self.trunc, {k: v * c for k, v in self.coeffs.items()}, self.conjugate)

    def __mul__(self, other):
        if not isinstance(other, HolLogSeries):
            return self.scale(other)
        self._check(other)
        N = min(self.trunc, other.trunc)
        out = {}
        oitems = list(other.coeffs.items())
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in oitems:
                if i1 + i2 <= N:
                    _add_into(out, (i1 + i2, j1 + j2), c1 * c2)
        return HolLogSeries(N, out, self.conjugate)

    def __rmul__(self, other):
        return self.scale(other)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HolLogSeries):
            return NotImplemented
        N = min(self.trunc, other.trunc)
        a = {k: c for k, c in self.coeffs.items() if k[0] <= N}
        b = {k: c for k, c in other.coeffs.items() if k[0] <= N}
        return self.conjugate == other.conjugate and a == b

    __hash__ = None

    def conj(self) -> "HolLogSeries":
        """Complex conjugate (coefficients are real)."""
        return HolLogSeries(self.trunc, self.coeffs, not self.conjugate)

    def q_dlog(self) -> "HolLogSeries":
        """q d/dq, i.e. the derivative along log q."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if i:
                _add_into(out, (i, j), c * i)
            if j:
                _add_into(out, (i, j - 1), c * j)
        return HolLogSeries(self.trunc, out, self.conjugate)

    def value_at_cusp(self):
        """Regularized value at the tangential base point: q -> 0, log q -> 0."""
        return self.coeffs.get((0, 0), 0)

    def __repr__(self):
        return f"HolLogSeries(trunc={self.trunc}, terms={len(self.coeffs)}, conjugate={self.conjugate})"


def reg_primitive(h: HolLogSeries) -> HolLogSeries:
    """Primitive H with q dH/dq = h and regularized value 0 at the cusp.

    The constant mode c (log q)^j goes to c (log q)^(j+1)/(j+1).  For i >= 1,
    q^i (log q)^j integrates by parts to
        q^i sum_t (-1)^t j!/(j-t)! (log q)^(j-t) / i^(t+1).
    """
    out = {}
    for (i, j), c in h.coeffs.items():
        if i == 0:
            _add_into(out, (0, j + 1), c * Fraction(1, j + 1))
            continue
        fall = 1
        for t in range(j + 1):
            coeff = Fraction((-1) ** t * fall, i ** (t + 1))
            _add_into(out, (i, j - t), c * coeff)
            fall *= j - t
    return HolLogSeries(h.trunc, out, h.conjugate)


# ---------------------------------------------------------------------------
# ExtendedSeries

class ExtendedSeries:
    """Sum c_{a,b,m,n} L^a D^b q^m qbar^n with D = log q - log qbar."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int = DEFAULT_TRUNC, coeffs: dict | None = None):
        self.trunc = trunc
        clean = {}
        for (a, b, m, n), c in (coeffs or {}).items():
            if b < 0 or m < 0 or n < 0:
                raise ValueError("negative exponent")
            if m <= trunc and n <= trunc:
                _add_into(clean, (a, b, m, n), c)
        self.coeffs = clean

    @classmethod
    def constant(cls, c, trunc: int = DEFAULT_TRUNC) -> "ExtendedSeries":
        return cls(trunc, {(0, 0, 0, 0): c})

    @classmethod
    def L_power(cls, a: int, trunc: int = DEFAULT_TRUNC, coeff=1) -> "ExtendedSeries":
        return cls(trunc, {(a, 0, 0, 0): coeff})

    @classmethod
    def log_q(cls, trunc: int = DEFAULT_TRUNC) -> "ExtendedSeries":
        return cls(trunc, {(1, 0, 0, 0): 1, (0, 1, 0, 0): Fraction(1, 2)})

    @classmethod
    def log_qbar(cls, trunc: int = DEFAULT_TRUNC) -> "ExtendedSeries":
        return cls(trunc, {(1, 0, 0, 0): 1, (0, 1, 0, 0): Fraction(-1, 2)})

    @classmethod
    def from_bi(cls, f: BiSeries) -> "ExtendedSeries":
        return cls(f.trunc, {(k, 0, m, n): c for (k, m, n), c in f.coeffs.items()})

    @classmethod
    def from_hol(cls, h: HolLogSeries) -> "ExtendedSeries":
        """Rewrite (log q)^j = (L + D/2)^j, or (L - D/2)^j for a qbar-series."""
        sign = -1 if h.conjugate else 1
        out = {}
        for (i, j), c in h.coeffs.items():
            m, n = (0, i) if h.conjugate else (i, 0)
            for b in range(j + 1):
                coeff = Fraction(math.comb(j, b) * sign ** b, 2 ** b)
                _add_into(out, (j - b, b, m, n), c * coeff)
        return cls(h.trunc, out)

    def __getitem__(self, key):
        return self.coeffs.get(tuple(key), 0)

    def items(self):
        return self.coeffs.items()

    def __add__(self, other):
        if not isinstance(other, ExtendedSeries):
            if not other:
                return self
            other = ExtendedSeries.constant(other, self.trunc)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _add_into(out, key, c)
        return ExtendedSeries(min(self.trunc, other.trunc), out)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedSeries(self.trunc, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ExtendedSeries":
        if not c:
            return ExtendedSeries(self.trunc)
        return ExtendedSeries(self.trunc, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, ExtendedSeries):
            return self.scale(other)
        N = min(self.trunc, other.trunc)
        out = {}
        oitems = list(other.coeffs.items())
        for (a1, b1, m1, n1), c1 in self.coeffs.items():
            for (a2, b2, m2, n2), c2 in oitems:
                m, n = m1 + m2, n1 + n2
                if m <= N and n <= N:
                    _add_into(out, (a1 + a2, b1 + b2, m, n), c1 * c2)
        return ExtendedSeries(N, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = ExtendedSeries.constant(1, self.trunc)
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SvScalar)):
            other = ExtendedSeries.constant(other, self.trunc)
        if not isinstance(other, ExtendedSeries):
            return NotImplemented
        N = min(self.trunc, other.trunc)
        a = {k: c for k, c in self.coeffs.items() if k[2] <= N and k[3] <= N}
        b = {k: c for k, c in other.coeffs.items() if k[2] <= N and k[3] <= N}
        return a == b

    __hash__ = None

    def residue(self) -> dict:
        """Terms that still carry a power of D."""
        return {k: c for k, c in self.coeffs.items() if k[1] > 0}

    def __repr__(self):
        return f"ExtendedSeries(trunc={self.trunc}, terms={len(self.coeffs)})"


def reduce_to_L(f: ExtendedSeries, weights=(0, 0)) -> BiSeries:
    """Drop to a BiSeries, raising NonModularResidue if any D-dependence survives."""
    res = f.residue()
    if res:
        worst = max(k[1] for k in res)
        raise NonModularResidue(
            f"{len(res)} coefficient(s) on (log q - log qbar)^j survive, up to j = {worst}"
        )
    return BiSeries(weights, f.trunc, {(a, m, n): c for (a, _, m, n), c in f.coeffs.items()})


# ---------------------------------------------------------------------------
# export

def series_rows(f: BiSeries):
    for (k, m, n) in sorted(f.coeffs):
        yield k, m, n, _coeff_json(f.coeffs[(k, m, n)])


def export_csv(f: BiSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "m", "n", "coeff"])
    for k, m, n, c in series_rows(f):
        # plain rationals stay readable; zeta-valued entries keep their JSON form
        if len(c) == 1 and not c[0]["monomial"]:
            cell = c[0]["coeff"]
        else:
            cell = json.dumps(c, separators=(",", ":"))
        w.writerow([k, m, n, cell])
    return buf.getvalue()


def export_json(f: BiSeries, label: str | None = None) -> dict:
    out = {
        "weights": list(f.weights),
        "truncation": f.trunc,
        "pole_order": -f.pole_order() if f.coeffs else 0,
        "coefficients": [
            {"k": k, "m": m, "n": n, "coeff": c} for k, m, n, c in series_rows(f)
        ],
    }
    if label is not None:
        out["label"] = label
    return out


def import_json(obj: dict) -> BiSeries:
    coeffs = {}
    for t in obj["coefficients"]:
        c = SvScalar.from_json_obj(t["coeff"])
        coeffs[(t["k"], t["m"], t["n"])] = c.to_rational() if c.is_rational() else c
    return BiSeries(tuple(obj["weights"]), obj["truncation"], coeffs)
