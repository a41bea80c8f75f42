"""Rational functions attached to b-graded words and linearized double shuffle.

A depth-r ``RatFn`` is P(x_1..x_r) / (x_1 (x_1 - x_2) ... (x_{r-1} - x_r) x_r)
with P a polynomial over Q.  At depth 1 the denominator is x_1.

Identities between substituted rational functions are decided exactly: each
term's denominator is a product of linear forms, so everything is brought
over the least common multiple of those forms and the numerators are added.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product

from .freelie import LieElement


def _padd(out: dict, key, c):
    if not c:
        return
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _padd(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return out


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        _padd(out, e, c)
    return out


def _linear(coeffs) -> dict:
    r = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * r
            e[i] = 1
            out[tuple(e)] = Fraction(c)
    return out


def _one(r: int) -> dict:
    return {(0,) * r: Fraction(1)}


def substitute(p: dict, forms: list, r: int) -> dict:
    """p(L_1, ..., L_k) where each L_i is a coefficient tuple of length r."""
    lin = [_linear(f) for f in forms]
    powers = [[_one(r)] for _ in forms]
    out = {}
    for e, c in p.items():
        term = {(0,) * r: Fraction(c)}
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(poly_mul(powers[i][-1], lin[i]))
            term = poly_mul(term, powers[i][k])
        out = poly_add(out, term)
    return out


def canonical_denominator(r: int) -> list:
    """Linear factors of x_1 (x_1 - x_2) ... (x_{r-1} - x_r) x_r."""
    if r <= 0:
        raise ValueError("depth must be positive")

    def unit(i, sign=1):
        f = [0] * r
        f[i] = sign
        return f

    if r == 1:
        return [tuple(unit(0))]
    factors = [tuple(unit(0))]
    for i in range(r - 1):
        f = unit(i)
        f[i + 1] = -1
        factors.append(tuple(f))
    factors.append(tuple(unit(r - 1)))
    return factors


def _compose_form(form, forms, r):
    out = [Fraction(0)] * r
    for c, L in zip(form, forms):
        for j in range(r):
            out[j] += c * L[j]
    return out


def _normalize_form(f):
    """Scale a linear form so its first nonzero entry is 1; return (form, scalar)."""
    lead = next((c for c in f if c), 0)
    if not lead:
        raise ZeroDivisionError("substitution makes a denominator vanish")
    return tuple(Fraction(c) / lead for c in f), Fraction(lead)


class RatFn:
    """P / canonical denominator, in depth r."""

    __slots__ = ("depth", "numerator")

    def __init__(self, depth: int, numerator: dict | None = None):
        if depth <= 0:
            raise ValueError("depth must be positive")
        self.depth = depth
        self.numerator = {}
        for e, c in (numerator or {}).items():
            if len(e) != depth:
                raise ValueError("exponent length does not match depth")
            _padd(self.numerator, tuple(e), Fraction(c))

    def __add__(self, other: "RatFn") -> "RatFn":
        if self.depth != other.depth:
            raise ValueError("depth mismatch")
        return RatFn(self.depth, poly_add(self.numerator, other.numerator))

    def __mul__(self, c) -> "RatFn":
        return RatFn(self.depth, {e: v * c for e, v in self.numerator.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.depth == other.depth and self.numerator == other.numerator

    __hash__ = None

    def __bool__(self):
        return bool(self.numerator)

    def degrees(self) -> set:
        """Total degrees of the rational function (numerator degree minus r + 1)."""
        return {sum(e) - (self.depth + 1 if self.depth > 1 else 1) for e in self.numerator}

    def degree_slice(self, d: int) -> "RatFn":
        shift = self.depth + 1 if self.depth > 1 else 1
        return RatFn(self.depth, {e: c for e, c in self.numerator.items() if sum(e) - shift == d})

    def __call__(self, *point) -> Fraction:
        if len(point) != self.depth:
            raise ValueError("wrong number of arguments")
        num = Fraction(0)
        for e, c in self.numerator.items():
            t = Fraction(c)
            for x, k in zip(point, e):
                t *= Fraction(x) ** k
            num += t
        den = Fraction(1)
        for f in canonical_denominator(self.depth):
            den *= sum(Fraction(a) * Fraction(x) for a, x in zip(f, point))
        return num / den

    def substituted(self, forms: list, r: int):
        """self(L_1, ..., L_depth) as (numerator, Counter of normalized linear factors)."""
        num = substitute(self.numerator, forms, r)
        den = Counter()
        scale = Fraction(1)
        for f in canonical_denominator(self.depth):
            g, s = _normalize_form(_compose_form(f, forms, r))
            den[g] += 1
            scale *= s
        return {e: c / scale for e, c in num.items()}, den

    def __repr__(self):
        return f"RatFn({self.depth}, {self.numerator})"


def combine(terms: list, r: int) -> tuple:
    """Sum of substituted terms over a common denominator.

    ``terms`` holds (RatFn, forms, coefficient).  Returns (numerator,
    denominator factors); the sum vanishes iff the numerator is empty.
    """
    parts = [(f.substituted(forms, r), c) for f, forms, c in terms]
    lcd = Counter()
    for (_, den), _ in parts:
        for g, k in den.items():
            lcd[g] = max(lcd[g], k)
    total = {}
    for (num, den), c in parts:
        extra = _one(r)
        for g, k in (lcd - den).items():
            for _ in range(k):
                extra = poly_mul(extra, _linear(g))
        total = poly_add(total, {e: v * c for e, v in poly_mul(num, extra).items()})
    return total, lcd


LEADING_IGNORE = "ignore"
LEADING_VANISH = "vanish"


def rho(x, r: int, leading: str = LEADING_IGNORE) -> RatFn:
    """Words a^i0 b a^i1 ... b a^ir of b-degree r go to x_1^i1 ... x_r^ir / denominator.

    With ``leading="ignore"`` the exponent i0 is simply dropped.  With
    ``leading="vanish"`` a leading block a^i0 carries a factor x_0^i0 taken at
    x_0 = 0, so only words starting with b contribute.
    """
    if r <= 0:
        raise ValueError("depth must be positive")
    if leading not in (LEADING_IGNORE, LEADING_VANISH):
        raise ValueError(f"unknown leading convention {leading!r}")
    tensor = x.tensor if isinstance(x, LieElement) else dict(x)
    out = {}
    for w, c in tensor.items():
        if w.count("b") != r:
            continue
        blocks = w.split("b")
        if leading == LEADING_VANISH and blocks[0]:
            continue
        _padd(out, tuple(len(s) for s in blocks[1:]), Fraction(c))
    return RatFn(r, out)


def _forms(rows):
    return [tuple(row) for row in rows]


def lds_equations(depth: int) -> dict:
    """The linearized double shuffle equations as lists of substitutions."""
    if depth == 2:
        return {
            "antisymmetry": [_forms([(1, 0), (0, 1)]), _forms([(0, 1), (1, 0)])],
            "stuffle": [_forms([(1, 0), (1, 1)]), _forms([(0, 1), (1, 1)])],
        }
    if depth == 3:
        return {
            "shuffle": [
                _forms([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
                _forms([(0, 1, 0), (1, 0, 0), (0, 0, 1)]),
                _forms([(0, 1, 0), (0, 0, 1), (1, 0, 0)]),
            ],
            "stuffle": [
                _forms([(1, 0, 0), (1, 1, 0), (1, 1, 1)]),
                _forms([(0, 1, 0), (1, 1, 0), (1, 1, 1)]),
                _forms([(0, 1, 0), (0, 1, 1), (1, 1, 1)]),
            ],
        }
    raise ValueError("only depths 2 and 3 are supported")


def check_lds(f: RatFn) -> dict:
    """Residue numerators of each equation; an empty dict means f satisfies all of them."""
    report = {}
    for name, subs in lds_equations(f.depth).items():
        num, _ = combine([(f, forms, 1) for forms in subs], f.depth)
        if num:
            report[name] = num
    return report


def format_polynomial(p: dict) -> str:
    if not p:
        return "0"
    names = [f"x{i + 1}" for i in range(len(next(iter(p))))]
    terms = []
    for e, c in sorted(p.items(), reverse=True):
        mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
        terms.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(terms)


def all_monomials(r: int, degree: int):
    for e in product(range(degree + 1), repeat=r):
        if sum(e) == degree:
            yield e


def bracket_image(i: int, j: int):
    """ev_a of [eps^v_i, eps^v_j], the value of the bracket on a."""
    from .freelie import der_bracket, epsilon

    return der_bracket(epsilon(i, "dual"), epsilon(j, "dual")).on_a


def depth2_report(max_sum: int = 4, leading: str = LEADING_IGNORE) -> dict:
    """check_lds on rho of the b-degree-2 slice of ev_a([eps^v_{2a+2}, eps^v_{2b+2}]).

    Covers 1 <= a <= b with a + b <= max_sum; a = b gives the zero bracket.
    Returns {(2a+2, 2b+2): {"homogeneous": bool, "residues": {...}}}.
    """
    out = {}
    for a in range(1, max_sum):
        for b in range(a, max_sum - a + 1):
            f = rho(bracket_image(2 * a + 2, 2 * b + 2).b_slice(2), 2, leading)
            out[(2 * a + 2, 2 * b + 2)] = {
                "nonzero": bool(f),
                "homogeneous": len(f.degrees()) <= 1,
                "residues": check_lds(f),
            }
    return out
