"""The free Lie algebra Lie(a, b) and derivations annihilating [a, b].

Lie elements are kept as Lie polynomials inside the free associative
algebra Q<a, b> (dicts word -> coefficient, words are strings over "ab").
The embedding is injective, so equality of Lie elements is equality of
these sparse vectors.  Coordinates in the Lyndon basis, with the standard
bracketing P_w = [P_u, P_v] for the standard factorization w = uv, are
recovered on demand: P_w = w + (lexicographically larger words), so the
smallest word in the support of a Lie polynomial is Lyndon and can be
peeled off.

A derivation D of Lie(a, b) is determined by D(a) and D(b); the ones used
here kill Theta = [a, b].  Bidegree convention: D has bidegree (p, q) when
D(a) has bidegree (p + 1, q) and D(b) has bidegree (p, q + 1).
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg


def _add_into(out: dict, key, value):
    if not value:
        return
    new = out.get(key, 0) + value
    if new:
        out[key] = new
    else:
        out.pop(key, None)


def _tmul(x: dict, y: dict) -> dict:
    out = {}
    for u, c in x.items():
        for v, d in y.items():
            _add_into(out, u + v, c * d)
    return out


def _tsub(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, c in y.items():
        _add_into(out, k, -c)
    return out


def _tadd(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, c in y.items():
        _add_into(out, k, c)
    return out


def _tscale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def _bidegree(word: str):
    return (word.count("a"), word.count("b"))


class LieElement:
    """An element of Lie(a, b), stored through its tensor expansion."""

    __slots__ = ("_t",)

    def __init__(self, tensor: dict | None = None):
        self._t = {w: c for w, c in (tensor or {}).items() if c}

    @classmethod
    def generator(cls, name: str) -> "LieElement":
        if name not in ("a", "b"):
            raise ValueError("generators are 'a' and 'b'")
        return cls({name: 1})

    @classmethod
    def from_lyndon(cls, coords: dict) -> "LieElement":
        out = {}
        for w, c in coords.items():
            for v, d in lyndon_bracket(w)._t.items():
                _add_into(out, v, c * d)
        return cls(out)

    @property
    def tensor(self) -> dict:
        return dict(self._t)

    @property
    def lyndon(self) -> dict:
        """Coordinates in the Lyndon basis."""
        rest = dict(self._t)
        out = {}
        while rest:
            w = min(rest, key=lambda u: (len(u), u))
            c = rest[w]
            if not is_lyndon(w):
                raise ValueError("tensor is not a Lie polynomial")
            out[w] = c
            for v, d in lyndon_bracket(w)._t.items():
                _add_into(rest, v, -c * d)
        return out

    def bidegrees(self) -> set:
        return {_bidegree(w) for w in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self):
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return next(iter(degs))

    def b_slice(self, r: int) -> "LieElement":
        """The part of b-degree r (a Lie element again, since the grading is by Lie degree)."""
        return LieElement({w: c for w, c in self._t.items() if w.count("b") == r})

    def m_degree(self) -> int:
        """M-degree -deg_a of a homogeneous element."""
        return -self.bidegree()[0]

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(_tadd(self._t, other._t))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement(_tsub(self._t, other._t))

    def __neg__(self) -> "LieElement":
        return LieElement({w: -c for w, c in self._t.items()})

    def __mul__(self, c) -> "LieElement":
        return LieElement(_tscale(self._t, c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._t
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._t == other._t

    __hash__ = None

    def __bool__(self):
        return bool(self._t)

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(f"({c})*{w}" for w, c in sorted(self.lyndon.items(), key=lambda t: (len(t[0]), t[0])))


A = LieElement.generator("a")
B = LieElement.generator("b")
ZERO = LieElement()


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return LieElement(_tsub(_tmul(x._t, y._t), _tmul(y._t, x._t)))


def ad_power(x: LieElement, y: LieElement, n: int) -> LieElement:
    """ad(x)^n (y)."""
    for _ in range(n):
        y = bracket(x, y)
    return y


def theta() -> LieElement:
    return bracket(A, B)


# ---------------------------------------------------------------------------
# Lyndon words

def is_lyndon(w: str) -> bool:
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(n: int, alphabet: str = "ab") -> list:
    """Lyndon words of length exactly n (Duval's algorithm)."""
    out = []
    k = len(alphabet)
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append("".join(alphabet[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_factorization(w: str):
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w!r} has no standard factorization")


@lru_cache(maxsize=None)
def _lyndon_bracket_cached(w: str) -> tuple:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(bracket(lyndon_bracket(u), lyndon_bracket(v))._t.items())


def lyndon_bracket(w: str) -> LieElement:
    """The standard bracketing P_w of a Lyndon word."""
    if not is_lyndon(w):
        raise ValueError(f"{w!r} is not a Lyndon word")
    return LieElement(dict(_lyndon_bracket_cached(w)))


# ---------------------------------------------------------------------------
# derivations

class DerivationTheta:
    """Derivation of Lie(a, b) given by its values on a and b, killing [a, b]."""

    __slots__ = ("on_a", "on_b", "label")

    def __init__(self, on_a: LieElement, on_b: LieElement, label: str = "", check: bool = True):
        self.on_a = on_a
        self.on_b = on_b
        self.label = label
        if check and (bracket(on_a, B) + bracket(A, on_b)):
            raise ValueError(f"derivation {label or ''} does not annihilate [a, b]".replace("  ", " "))

    def __call__(self, x: LieElement) -> LieElement:
        return der_apply(self, x)

    def bidegrees(self) -> set:
        out = set()
        for w in self.on_a._t:
            p, q = _bidegree(w)
            out.add((p - 1, q))
        for w in self.on_b._t:
            p, q = _bidegree(w)
            out.add((p, q - 1))
        return out

    def bidegree(self):
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("derivation is not homogeneous")
        return next(iter(degs))

    def is_zero(self) -> bool:
        return not self.on_a and not self.on_b

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        return DerivationTheta(self.on_a + other.on_a, self.on_b + other.on_b, check=False)

    def __sub__(self, other):
        return DerivationTheta(self.on_a - other.on_a, self.on_b - other.on_b, check=False)

    def __neg__(self):
        return DerivationTheta(-self.on_a, -self.on_b, self.label, check=False)

    def __mul__(self, c):
        return DerivationTheta(self.on_a * c, self.on_b * c, check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DerivationTheta):
            return NotImplemented
        return self.on_a == other.on_a and self.on_b == other.on_b

    __hash__ = None

    def vector(self) -> dict:
        """Joint coordinates of (D(a), D(b)) used for rank computations."""
        out = {("a", w): Fraction(c) for w, c in self.on_a._t.items()}
        out.update({("b", w): Fraction(c) for w, c in self.on_b._t.items()})
        return out

    def __repr__(self):
        return f"DerivationTheta({self.label or '?'})"


def _apply_tensor(on_a: dict, on_b: dict, x: dict) -> dict:
    images = {"a": on_a, "b": on_b}
    out = {}
    for w, c in x.items():
        for i, letter in enumerate(w):
            img = images[letter]
            if not img:
                continue
            left, right = w[:i], w[i + 1:]
            for v, d in img.items():
                _add_into(out, left + v + right, c * d)
    return out


def der_apply(d: DerivationTheta, x: LieElement) -> LieElement:
    """Extend d from the generators by the Leibniz rule."""
    return LieElement(_apply_tensor(d.on_a._t, d.on_b._t, x._t))


def der_bracket(d1: DerivationTheta, d2: DerivationTheta, check: bool = False) -> DerivationTheta:
    """[d1, d2] = d1 d2 - d2 d1 evaluated on a and b."""
    on_a = der_apply(d1, d2.on_a) - der_apply(d2, d1.on_a)
    on_b = der_apply(d1, d2.on_b) - der_apply(d2, d1.on_b)
    label = f"[{d1.label},{d2.label}]" if d1.label and d2.label else ""
    return DerivationTheta(on_a, on_b, label, check=check)


def der_ad_power(d: DerivationTheta, e: DerivationTheta, n: int) -> DerivationTheta:
    for _ in range(n):
        e = der_bracket(d, e)
    return e


def epsilon0() -> DerivationTheta:
    """-a d/db."""
    return DerivationTheta(ZERO, -A, "e0")


def epsilon0_dual() -> DerivationTheta:
    """b d/da."""
    return DerivationTheta(B, ZERO, "e0v")


def _swap_S(x: LieElement) -> LieElement:
    """Automorphism a -> -b, b -> a."""
    out = {}
    for w, c in x._t.items():
        sign = -1 if w.count("a") % 2 else 1
        out[w.translate(str.maketrans("ab", "ba"))] = c * sign
    return LieElement(out)


def conjugate_by_S(d: DerivationTheta) -> DerivationTheta:
    """sigma d sigma^-1 for sigma: (a, b) -> (-b, a); sigma^-1 is (a, b) -> (b, -a)."""
    on_a = _swap_S(d.on_b)
    on_b = -_swap_S(d.on_a)
    return DerivationTheta(on_a, on_b, d.label.replace("v", "") if d.label else "")


@lru_cache(maxsize=None)
def _epsilon_dual_cached(index: int):
    n2 = index - 2  # 2n
    ad_b = [B]
    for _ in range(n2 + 2):
        ad_b.append(bracket(A, ad_b[-1]))
    on_a = ad_b[n2 + 2]
    on_b = ZERO
    # 1/2 sum_{i+j=2n+1} (-1)^i [ad(a)^i b, ad(a)^j b] = sum_{i<j} (-1)^i [...]
    for i in range((n2 + 1) // 2 + 1):
        j = n2 + 1 - i
        if i < j:
            term = bracket(ad_b[i], ad_b[j])
            on_b = on_b + (term if i % 2 == 0 else -term)
    return on_a, on_b


def epsilon(index: int, variant: str = "dual") -> DerivationTheta:
    """The derivation eps_index (variant 'lowest') or its dual (variant 'dual')."""
    if index % 2 or index < 2:
        raise ValueError("epsilon index must be even and at least 2")
    on_a, on_b = _epsilon_dual_cached(index)
    dual = DerivationTheta(on_a, on_b, f"e{index}v")
    if variant == "dual":
        return dual
    if variant == "lowest":
        low = conjugate_by_S(dual)
        low.label = f"e{index}"
        return low
    raise ValueError("variant must be 'dual' or 'lowest'")


@lru_cache(maxsize=None)
def _eps_string_cached(index: int, m: int):
    if m == 0:
        d = epsilon(index, "lowest")
    else:
        prev = eps_string(index, m - 1)
        d = -der_bracket(epsilon0(), prev)
    return d.on_a._t, d.on_b._t


def eps_string(index: int, m: int) -> DerivationTheta:
    """eps^(m)_index = ad(-eps0)^m eps_index."""
    on_a, on_b = _eps_string_cached(index, m)
    return DerivationTheta(LieElement(on_a), LieElement(on_b), f"e{index}^({m})", check=False)


# ---------------------------------------------------------------------------
# ranks and relations

def rank_of_span(ds: list):
    """Rank of the span of homogeneous derivations of one bidegree, and the relations."""
    if not ds:
        return 0, []
    degs = set()
    for d in ds:
        if d:
            degs |= d.bidegrees()
    if len(degs) > 1:
        raise ValueError(f"derivations are not homogeneous of one bidegree: {sorted(degs)}")
    rel = linalg.kernel([d.vector() for d in ds])
    return len(ds) - len(rel), [[int(c) for c in r] for r in rel]


def pollack_relations():
    """The two quadratic relations among brackets of dual epsilons in degrees 14 and 18."""
    e = {k: epsilon(k, "dual") for k in (4, 6, 8, 10, 12, 14)}
    first = [der_bracket(e[10], e[4]), der_bracket(e[8], e[6])]
    second = [der_bracket(e[14], e[4]), der_bracket(e[12], e[6]), der_bracket(e[10], e[8])]
    return {
        (10, 4, 8, 6): rank_of_span(first),
        (14, 4, 12, 6, 10, 8): rank_of_span(second),
    }


def independence_families(max_sum: int = 4):
    """Brackets [eps0^i eps_{2a+2}, eps0^j eps_{2b+2}] grouped by bidegree.

    Unordered: a < b with all (i, j), and a = b with i < j.
    Returns {bidegree: list of (label, derivation)}.
    """
    groups = defaultdict(list)
    for a in range(1, max_sum):
        for b in range(a, max_sum - a + 1):
            for i in range(2 * a + 1):
                for j in range(2 * b + 1):
                    if a == b and i >= j:
                        continue
                    d = der_bracket(eps_string(2 * a + 2, i), eps_string(2 * b + 2, j))
                    label = (2 * a + 2, i, 2 * b + 2, j)
                    groups[(2 + i + j, 2 * a + 2 * b + 2 - i - j)].append((label, d))
    return dict(groups)


class CostGuard(ValueError):
    pass


def _generators(max_degree: int):
    gens = []
    for idx in range(4, max_degree + 1, 2):
        for i in range(idx - 1):
            gens.append(((idx, i), eps_string(idx, i)))
    return gens


def dimension_table(max_bracket_length: int, degree_window: int, max_p: int | None = None):
    """Ranks of spans of iterated brackets of eps0^i eps_{2n+2}.

    ``degree_window`` bounds the total degree p + q of the brackets, and
    ``max_p`` optionally bounds the a-shift p.  Returns
    {(length, (p, q)): (number of spanning brackets, rank)}.
    """
    if max_bracket_length > 3:
        raise CostGuard("bracket length is limited to 3")
    estimate = (degree_window // 2) ** (2 * max_bracket_length)
    if estimate > 10 ** 7:
        raise CostGuard(f"window too large: about {estimate} brackets")
    gens = _generators(degree_window)

    def keep(bideg):
        p, q = bideg
        return p + q <= degree_window and (max_p is None or p <= max_p)

    levels = {1: [(lab, d, d.bidegree()) for lab, d in gens if keep(d.bidegree())]}
    if max_bracket_length >= 2:
        lev = []
        for (l1, d1, b1), (l2, d2, b2) in combinations(levels[1], 2):
            bd = (b1[0] + b2[0], b1[1] + b2[1])
            if keep(bd):
                lev.append(((l1, l2), der_bracket(d1, d2), bd))
        levels[2] = lev
    if max_bracket_length >= 3:
        lev = []
        for l1, d1, b1 in levels[1]:
            for l2, d2, b2 in levels[2]:
                bd = (b1[0] + b2[0], b1[1] + b2[1])
                if keep(bd):
                    lev.append(((l1, l2), der_bracket(d1, d2), bd))
        levels[3] = lev
    table = {}
    for length, lev in levels.items():
        groups = defaultdict(list)
        for _, d, bd in lev:
            groups[bd].append(d)
        for bd, ds in sorted(groups.items()):
            table[(length, bd)] = (len(ds), rank_of_span(ds)[0])
    return table


def geometric_dims(p: int, max_q: int) -> dict:
    """dim of u^geom in bidegree (p, q) for q <= max_q, all bracket lengths <= p.

    Every generator eps0^i eps_{2n+2} has a-shift 1 + i >= 1, so brackets of
    a-shift p have length at most p.
    """
    if p > 3:
        raise CostGuard("a-shift is limited to 3")
    # eps0^i eps_idx has bidegree (1 + i, idx - 1 - i), so idx <= max_q + p suffices
    gens = [(lab, d, d.bidegree()) for lab, d in _generators(max_q + p) if d.bidegree()[0] <= p]
    spans = defaultdict(list)
    frontier = gens
    for d in gens:
        spans[d[2]].append(d[1])
    seen_len = 1
    while seen_len < p:
        new = []
        for l1, d1, b1 in gens:
            for l2, d2, b2 in frontier:
                bd = (b1[0] + b2[0], b1[1] + b2[1])
                if bd[0] <= p and bd[1] <= max_q:
                    new.append(((l1, l2), der_bracket(d1, d2), bd))
        for _, d, bd in new:
            spans[bd].append(d)
        frontier = new
        seen_len += 1
    return {q: rank_of_span(spans[(p, q)])[0] if spans.get((p, q)) else 0 for q in range(max_q + 1)}


def poincare_series(k: int, max_q: int) -> list:
    """Taylor coefficients of u_1, u_2, u_3 up to s^max_q."""
    den = {1: (2,), 2: (2, 6), 3: (2, 4, 6)}[k]
    num_shift = {1: 1, 2: 2, 3: 1}[k]
    coeffs = [0] * (max_q + 1)
    if num_shift <= max_q:
        coeffs[num_shift] = 1
    for d in den:
        for i in range(d, max_q + 1):
            coeffs[i] += coeffs[i - d]
    return coeffs


def poincare_comparison(max_q: int = 13) -> dict:
    """Computed dims against u_k for k = 1, 2, 3, indexing s^q by bidegree (k, q).

    Returns {k: (computed, predicted, [q where they differ])}.  The length-one
    series u_1 counts an s^1 term that would be eps_2, which is not a
    generator here, so k = 1 is expected to differ exactly at q = 1.
    """
    out = {}
    for k in (1, 2, 3):
        dims = geometric_dims(k, max_q)
        got = [dims[q] for q in range(max_q + 1)]
        want = poincare_series(k, max_q)
        out[k] = (got, want, [q for q in range(max_q + 1) if got[q] != want[q]])
    return out
