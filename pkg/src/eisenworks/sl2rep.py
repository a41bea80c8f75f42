"""Binary forms V_{2n} with the right SL2 action and the projectors delta^k.

A ``HomPoly`` is a homogeneous polynomial in two variables, either in the
Betti basis (X, Y) or in the de Rham basis (Xdr, Ydr).  Coefficients may be
taken from any commutative ring whose elements support ``+``, ``-``, ``*``
and multiplication by integers (Fractions, SvScalars, series).

The comparison between the two bases sends Xdr to X and Ydr to Y / (2 pi i).
Powers of 2 pi i are never evaluated; :class:`TwistedBetti` keeps them as an
integer exponent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

BETTI = "betti"
DERHAM = "derham"
_BASES = (BETTI, DERHAM)


class BasisMismatch(ValueError):
    pass


def _add_into(out: dict, key, value):
    if not value:
        return
    cur = out.get(key)
    new = value if cur is None else cur + value
    if new:
        out[key] = new
    else:
        out.pop(key, None)


class HomPoly:
    """Homogeneous polynomial sum c_{r,s} X^r Y^s of a fixed degree."""

    __slots__ = ("degree", "basis", "coeffs")

    def __init__(self, degree: int, coeffs: dict | None = None, basis: str = DERHAM):
        if basis not in _BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.degree = degree
        self.basis = basis
        clean = {}
        for (r, s), c in (coeffs or {}).items():
            if r < 0 or s < 0 or r + s != degree:
                raise ValueError(f"monomial X^{r}Y^{s} does not have degree {degree}")
            _add_into(clean, (r, s), c)
        self.coeffs = clean

    @classmethod
    def monomial(cls, r: int, s: int, coeff=1, basis: str = DERHAM) -> "HomPoly":
        return cls(r + s, {(r, s): coeff}, basis)

    def __getitem__(self, rs):
        return self.coeffs.get(rs, 0)

    def items(self):
        return self.coeffs.items()

    def _check(self, other: "HomPoly"):
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check(other)
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add polynomials of different degree")
        degree = self.degree if self.coeffs else other.degree
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _add_into(out, k, c)
        return HomPoly(degree, out, self.basis)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.degree, {k: -c for k, c in self.coeffs.items()}, self.basis)

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c) -> "HomPoly":
        return HomPoly(self.degree, {k: v * c for k, v in self.coeffs.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            self._check(other)
            out = {}
            for (r1, s1), c1 in self.coeffs.items():
                for (r2, s2), c2 in other.coeffs.items():
                    _add_into(out, (r1 + r2, s1 + s2), c1 * c2)
            return HomPoly(self.degree + other.degree, out, self.basis)
        return self.scale(other)

    def __rmul__(self, other):
        return HomPoly(self.degree, {k: other * v for k, v in self.coeffs.items()}, self.basis)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return (self.basis, self.degree, self.coeffs) == (other.basis, other.degree, other.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        x, y = ("X", "Y") if self.basis == BETTI else ("Xdr", "Ydr")
        terms = []
        for (r, s), c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(p for p in (f"{x}^{r}" if r else "", f"{y}^{s}" if s else "") if p)
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms)

    def m_degree(self, rs) -> int:
        """M-degree of the monomial Xdr^r Ydr^s, which is -s."""
        if self.basis != DERHAM:
            raise BasisMismatch("M-degree is defined on the de Rham basis")
        return -rs[1]

    def map_coefficients(self, f) -> "HomPoly":
        return HomPoly(self.degree, {k: f(c) for k, c in self.coeffs.items()}, self.basis)


@dataclass(frozen=True)
class SL2Matrix:
    """A 2x2 matrix [[a, b], [c, d]] tagged with the basis it acts on."""

    a: Any
    b: Any
    c: Any
    d: Any
    basis: str = BETTI

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        if self.basis != other.basis:
            raise BasisMismatch("matrices in different bases")
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.basis,
        )


S = SL2Matrix(0, -1, 1, 0)
T = SL2Matrix(1, 1, 0, 1)
IDENTITY = SL2Matrix(1, 0, 0, 1)


def _linear_power(u, v, n):
    """Coefficients of (u X + v Y)^n as {(i, n-i): C(n,i) u^i v^(n-i)}."""
    out = {}
    for i in range(n + 1):
        c = math.comb(n, i)
        term = c
        for _ in range(i):
            term = term * u
        for _ in range(n - i):
            term = term * v
        if term:
            out[(i, n - i)] = term
    return out


def sl2_act(p: HomPoly, g: SL2Matrix) -> HomPoly:
    """Right action (X, Y)|g = (aX + bY, cX + dY) by substitution."""
    if p.basis != g.basis:
        raise BasisMismatch(f"polynomial in {p.basis} basis, matrix in {g.basis} basis")
    out = {}
    xs = {}
    ys = {}
    for (r, s), coeff in p.coeffs.items():
        if r not in xs:
            xs[r] = _linear_power(g.a, g.b, r)
        if s not in ys:
            ys[s] = _linear_power(g.c, g.d, s)
        for (i1, j1), c1 in xs[r].items():
            for (i2, j2), c2 in ys[s].items():
                _add_into(out, (i1 + i2, j1 + j2), coeff * (c1 * c2))
    return HomPoly(p.degree, out, p.basis)


def _falling(n: int, k: int) -> int:
    return math.perm(n, k) if 0 <= k <= n else 0


def delta_k(p: HomPoly, q: HomPoly, k: int) -> HomPoly:
    """mu o (d_X (x) d_Y - d_Y (x) d_X)^k applied to p (x) q."""
    if p.basis != q.basis:
        raise BasisMismatch(f"{p.basis} vs {q.basis}")
    if k < 0:
        raise ValueError("k must be non-negative")
    degree = p.degree + q.degree - 2 * k
    if k > p.degree or k > q.degree:
        return HomPoly(max(degree, 0), {}, p.basis)
    out = {}
    for j in range(k + 1):
        # binomial term C(k,j) (-1)^j (d_X^{k-j} d_Y^j p) (d_Y^{k-j} d_X^j q)
        sign = -1 if j % 2 else 1
        comb = sign * math.comb(k, j)
        for (r1, s1), c1 in p.coeffs.items():
            f1 = _falling(r1, k - j) * _falling(s1, j)
            if not f1:
                continue
            for (r2, s2), c2 in q.coeffs.items():
                f2 = _falling(r2, j) * _falling(s2, k - j)
                if not f2:
                    continue
                key = (r1 - (k - j) + r2 - j, s1 - j + s2 - (k - j))
                _add_into(out, key, (c1 * c2) * (comb * f1 * f2))
    return HomPoly(degree, out, p.basis)


@dataclass(frozen=True)
class TwistedBetti:
    """Betti polynomial sum c_{r,s} (2 pi i)^(shift - s) X^r Y^s.

    ``poly`` holds the bare coefficients c_{r,s}; the power of 2 pi i carried
    by each monomial is determined by ``shift`` and the Y-exponent.
    """

    poly: HomPoly
    shift: int = 0


def compare(p: HomPoly) -> TwistedBetti:
    """Comparison isomorphism Xdr -> X, Ydr -> Y / (2 pi i)."""
    if p.basis != DERHAM:
        raise BasisMismatch("comparison starts from the de Rham basis")
    return TwistedBetti(HomPoly(p.degree, p.coeffs, BETTI), 0)


def betti_delta_k(A: TwistedBetti, B: TwistedBetti, k: int) -> TwistedBetti:
    """Betti delta^k on twisted polynomials; the 2 pi i exponents add up."""
    return TwistedBetti(delta_k(A.poly, B.poly, k), A.shift + B.shift - k)


def twisted_scale(A: TwistedBetti, n: int) -> TwistedBetti:
    """Multiply by (2 pi i)^n."""
    return TwistedBetti(A.poly, A.shift + n)
