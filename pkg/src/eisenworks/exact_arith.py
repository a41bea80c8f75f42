"""Exact rationals, Bernoulli numbers, divisor sums and the sv-zeta ring.

Rationals are :class:`fractions.Fraction`.  ``SvScalar`` is a sparse
polynomial over the rationals in the formal generators

    zsv3, zsv5, zsv7, ...      (single-valued zeta(2n+1) = 2 zeta(2n+1))
    zsv353                     (single-valued zeta(3,5,3), weight 11)

with no relations imposed.  This is a graded *model* of the ring of
single-valued multiple zeta values, adequate up to weight 11 where no
relations occur among these generators.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Fraction",
    "bernoulli",
    "sigma",
    "SvScalar",
    "zsv",
    "zsv353",
    "sv_eval",
    "zeta",
    "mzv2",
    "mzv3",
    "as_scalar",
    "is_zero",
]


# ---------------------------------------------------------------------------
# combinatorics

@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * B[j]
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    if n >= 3 and n % 2 == 1:
        return Fraction(0)
    return _bernoulli_table(n)[n]


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    if k < 1 or n < 1:
        raise ValueError("sigma requires k >= 1 and n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


# ---------------------------------------------------------------------------
# formal single-valued zeta values

def _gen_weight(name: str) -> int:
    if name == "zsv353":
        return 11
    if not name.startswith("zsv"):
        raise ValueError(f"unknown generator {name!r}")
    k = int(name[3:])
    if k < 3 or k % 2 == 0:
        raise ValueError(f"unknown generator {name!r}")
    return k


def _gen_key(name: str):
    return (_gen_weight(name), name)


def _normalize_monomial(mono) -> tuple:
    mono = tuple(mono)
    for g in mono:
        _gen_weight(g)
    return tuple(sorted(mono, key=_gen_key))


class SvScalar:
    """Sparse polynomial in the sv-zeta generators with rational coefficients.

    Instances are immutable.  Arithmetic mixes freely with ``int`` and
    ``Fraction``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[_normalize_monomial(mono)] = clean.get(_normalize_monomial(mono), 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SvScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, c) -> "SvScalar":
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    # -- grading ------------------------------------------------------------
    @staticmethod
    def monomial_weight(mono) -> int:
        return sum(_gen_weight(g) for g in mono)

    def weights(self) -> set:
        return {self.monomial_weight(m) for m in self._terms}

    def weight(self) -> int:
        """Maximal M-weight of a stored monomial (0 for the zero element)."""
        return max(self.weights(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def is_rational(self) -> bool:
        return all(m == () for m in self._terms)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("SvScalar has irrational part")
        return self._terms.get((), Fraction(0))

    def coefficient(self, mono=()) -> Fraction:
        return self._terms.get(_normalize_monomial(mono), Fraction(0))

    # -- arithmetic ---------------------------------------------------------
    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SvScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SvScalar._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SvScalar._raw({})
            return SvScalar._raw({m: c * other for m, c in self._terms.items()})
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(sorted(m1 + m2, key=_gen_key))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SvScalar._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SvScalar):
            other = other.to_rational()
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = SvScalar.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._terms.get((), Fraction(0)))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (self.monomial_weight(m), m)):
            c = self._terms[m]
            if m == ():
                parts.append(str(c))
            else:
                mono = "*".join(m)
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    # -- serialization ------------------------------------------------------
    def to_json_obj(self) -> list:
        return [
            {"monomial": list(m), "coeff": f"{c.numerator}/{c.denominator}"}
            for m, c in sorted(self._terms.items(), key=lambda t: (self.monomial_weight(t[0]), t[0]))
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "SvScalar":
        return cls({tuple(t["monomial"]): Fraction(t["coeff"]) for t in obj})

    @classmethod
    def from_json(cls, text: str) -> "SvScalar":
        return cls.from_json_obj(json.loads(text))


def as_scalar(x):
    if isinstance(x, SvScalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return SvScalar.rational(x)
    return NotImplemented


def is_zero(x) -> bool:
    return not x


def zsv(k: int) -> SvScalar:
    """The formal generator zeta^sv(k) for odd k >= 3."""
    return SvScalar({(f"zsv{k}",): 1})


def zsv353() -> SvScalar:
    return SvScalar({("zsv353",): 1})


# ---------------------------------------------------------------------------
# numerics

_EM_N = 16
_EM_TERMS = 14


def zeta(s):
    """Riemann zeta by Euler-Maclaurin summation; real or complex s with Re(s) > 1."""
    if isinstance(s, complex):
        if s.real <= 1:
            raise ValueError("zeta is only summed for Re(s) > 1")
    elif s <= 1:
        raise ValueError("zeta is only summed for Re(s) > 1")
    N = _EM_N
    head = [n ** -s for n in range(1, N)]
    total = sum(head) if isinstance(s, complex) else math.fsum(head)
    total += N ** (1 - s) / (s - 1) + N ** -s / 2
    # rising factorial s(s+1)...(s+2j-2)
    rising = s
    power = N ** (-s - 1)
    for j in range(1, _EM_TERMS + 1):
        total += float(bernoulli(2 * j)) / math.factorial(2 * j) * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= N * N
    return total


_MZV_M = 4000


def _tail_power(s: int, M: int) -> float:
    """Sum_{m > M} m^-s via Euler-Maclaurin at the cut."""
    return zeta(s) - math.fsum(m ** -s for m in range(1, M + 1))


@lru_cache(maxsize=None)
def mzv2(s1: int, s2: int) -> float:
    """zeta(s1, s2) = sum_{m > n >= 1} m^-s1 n^-s2 for s1, s2 >= 2."""
    if s1 < 2 or s2 < 2:
        raise ValueError("the tail estimate needs every argument >= 2")
    M = _MZV_M
    inner = 0.0
    terms = []
    for m in range(1, M + 1):
        terms.append(m ** -s1 * inner)
        inner += m ** -s2
    head = math.fsum(terms)
    # for m > M the inner sum equals zeta(s2) minus a tail of size O(m^(1-s2));
    # the dropped piece is bounded by sum_{m>M} m^-s1 (m^-s2 + m^(1-s2)/(s2-1))
    return head + zeta(s2) * _tail_power(s1, M) - _cross_tail(s1, s2, M)


def _cross_tail(s1: int, s2: int, M: int) -> float:
    # sum_{m>M} m^-s1 sum_{n>=m} n^-s2, approximated by its leading Euler-Maclaurin terms
    # sum_{n>=m} n^-s2 ~ m^(1-s2)/(s2-1) + m^-s2/2 + s2 m^(-s2-1)/12
    a = _tail_power(s1 + s2 - 1, M) / (s2 - 1)
    b = _tail_power(s1 + s2, M) / 2
    c = s2 * _tail_power(s1 + s2 + 1, M) / 12
    return a + b + c


@lru_cache(maxsize=None)
def mzv3(s1: int, s2: int, s3: int) -> float:
    """zeta(s1, s2, s3) = sum_{m > n > p >= 1} m^-s1 n^-s2 p^-s3, all arguments >= 2."""
    if min(s1, s2, s3) < 2:
        raise ValueError("the tail estimate needs every argument >= 2")
    M = _MZV_M
    inner3 = 0.0   # sum_{p < n} p^-s3
    inner2 = 0.0   # sum_{n < m} n^-s2 * inner3(n)
    terms = []
    for m in range(1, M + 1):
        terms.append(m ** -s1 * inner2)
        inner2 += m ** -s2 * inner3
        inner3 += m ** -s3
    head = math.fsum(terms)
    z23 = mzv2(s2, s3)
    # inner2(m) = z23 - sum_{n >= m} n^-s2 inner3(n), and inner3(n) -> zeta(s3)
    return head + z23 * _tail_power(s1, M) - zeta(s3) * _cross_tail(s1, s2, M)


def _generator_value(name: str) -> float:
    if name == "zsv353":
        z3 = zeta(3)
        return 2 * mzv3(3, 5, 3) - 2 * z3 * mzv2(3, 5) - 10 * z3 * z3 * zeta(5)
    return 2 * zeta(_gen_weight(name))


def sv_eval(x, precision: int = 15) -> float:
    """Numerical value of an SvScalar, absolute error below 10^(1 - precision)."""
    if precision > 15:
        raise ValueError("sv_eval works in double precision; precision must be <= 15")
    x = as_scalar(x)
    if x is NotImplemented:
        raise TypeError("sv_eval expects an SvScalar or rational")
    values = {}
    total = []
    for mono, c in x.items():
        v = float(c)
        for g in mono:
            if g not in values:
                values[g] = _generator_value(g)
            v *= values[g]
        total.append(v)
    return math.fsum(total)
