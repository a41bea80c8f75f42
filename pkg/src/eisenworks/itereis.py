"""Regularized iterated Eisenstein integrals and their image in the epsilon letters.

Letters ``EisLetter(2n+2, m)`` stand for e_{2n+2} Xdr^(2n-m) Ydr^m.  The
connection form pairs that letter with

    C(2n, m) (-log q)^m G_{2n+2}(q) dq/q,

the Xdr^(2n-m) Ydr^m coefficient of G_{2n+2}(q) (Xdr - log q Ydr)^(2n) dq/q.
A word w = l w' has coefficient -P(f_l I_{w'}), with P the primitive
regularized at the cusp (``reg_primitive``): this is the series solving
q dI/dq = -Omega I with I = 1 at the tangential base point, letters acting
by left concatenation.

``EpsLetter(2n+2, m)`` stands for eps^(m)_{2n+2} = ad(-eps0)^m eps_{2n+2}.
The map ``mu_map`` is letterwise and J is kept in the free algebra on these
letters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import freelie
from .exact_arith import bernoulli, zsv
from .qseries import ExtendedSeries, HolLogSeries, eisenstein_q, reg_primitive
from .raeis import build_real_eisenstein, components_from_vector, constant_part, system_residuals
from .sl2rep import DERHAM, HomPoly


class CostGuard(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EisLetter:
    weight: int
    m: int

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise ValueError(f"bad Eisenstein weight {self.weight}")
        if not 0 <= self.m <= self.weight - 2:
            raise ValueError(f"vector index {self.m} out of range for weight {self.weight}")

    @property
    def n(self) -> int:
        return (self.weight - 2) // 2

    @property
    def m_degree(self) -> int:
        return -1 - self.m

    def __str__(self):
        return f"e{self.weight}[{self.m}]"


@dataclass(frozen=True, order=True)
class EpsLetter:
    weight: int
    m: int

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise ValueError(f"bad epsilon weight {self.weight}")
        if not 0 <= self.m <= self.weight - 2:
            raise ValueError(f"depth {self.m} out of range for weight {self.weight}")

    @property
    def n(self) -> int:
        return (self.weight - 2) // 2

    @property
    def m_degree(self) -> int:
        return -1 - self.m

    def __str__(self):
        return f"eps{self.weight}^({self.m})"


def word_m_degree(word) -> int:
    return sum(letter.m_degree for letter in word)


def word_label(word) -> str:
    return " ".join(str(x) for x in word) or "1"


@dataclass
class GroupSeries:
    """Coefficients word -> HolLogSeries, words of length at most ``maxlen``."""

    alphabet: str
    maxlen: int
    trunc: int
    coeffs: dict = field(default_factory=dict)

    def __getitem__(self, word) -> HolLogSeries:
        word = tuple(word)
        c = self.coeffs.get(word)
        if c is not None:
            return c
        conj = any(s.conjugate for s in self.coeffs.values())
        return HolLogSeries(self.trunc, {}, conj)

    def words(self, length: int | None = None):
        return sorted(w for w in self.coeffs if length is None or len(w) == length)

    def letters(self):
        return sorted({x for w in self.coeffs for x in w})


def eis_letters(maxweight: int):
    return [EisLetter(k, m) for k in range(4, maxweight + 1, 2) for m in range(k - 1)]


@lru_cache(maxsize=None)
def _form(letter: EisLetter, N: int) -> HolLogSeries:
    """C(2n, m) (-log q)^m G_{2n+2}(q)."""
    G = HolLogSeries.from_q_series(eisenstein_q(letter.weight, N))
    c = math.comb(2 * letter.n, letter.m) * (-1) ** letter.m
    return G * HolLogSeries(N, {(0, letter.m): c})


def build_I(maxlen: int = 2, maxweight: int = 10, N: int = 12) -> GroupSeries:
    """Generating series of regularized iterated Eisenstein integrals."""
    if maxlen > 3:
        raise CostGuard("maxlen is limited to 3")
    if maxweight % 2 or maxweight < 4:
        raise ValueError("maxweight must be even and at least 4")
    letters = eis_letters(maxweight)
    if len(letters) ** maxlen > 20000:
        raise CostGuard(f"{len(letters) ** maxlen} words requested; lower maxlen or maxweight")
    coeffs = {(): HolLogSeries.one(N)}
    previous = [()]
    for _ in range(maxlen):
        current = []
        for rest in previous:
            inner = coeffs[rest]
            for letter in letters:
                word = (letter,) + rest
                coeffs[word] = -reg_primitive(_form(letter, N) * inner)
                current.append(word)
        previous = current
    return GroupSeries("eis", maxlen, N, coeffs)


def verify_dI(I: GroupSeries) -> list:
    """Words where q dI/dq = -Omega I fails."""
    bad = []
    for word, c in I.coeffs.items():
        if not word:
            if c.q_dlog():
                bad.append(word)
            continue
        rhs = -(_form(word[0], I.trunc) * I[word[1:]])
        if c.q_dlog() != rhs:
            bad.append(word)
    return bad


def log_degree_bound(word) -> int:
    return sum(2 * x.n for x in word) + len(word)


def log_degree_violations(G: GroupSeries) -> list:
    return [w for w, c in G.coeffs.items() if c.log_degree() > log_degree_bound(w)]


def cusp_values(G: GroupSeries) -> dict:
    """Regularized values at the tangential base point, nonzero entries only."""
    return {w: c.value_at_cusp() for w, c in G.coeffs.items() if c.value_at_cusp()}


def _shuffles(u: tuple, v: tuple):
    if not u:
        yield v
        return
    if not v:
        yield u
        return
    for w in _shuffles(u[1:], v):
        yield (u[0],) + w
    for w in _shuffles(u, v[1:]):
        yield (v[0],) + w


def shuffle_check(G: GroupSeries, max_pairs: int | None = None) -> list:
    """Pairs (u, v) with coeff(u) coeff(v) != sum over shuffles of coeff(w).

    All pairs of nonempty words with len(u) + len(v) <= maxlen are checked,
    plus the unit axiom for the empty word.
    """
    bad = []
    one = G[()]
    for w in G.coeffs:
        if w and one * G[w] != G[w]:
            bad.append(((), w))
    words = [w for w in G.coeffs if w]
    count = 0
    for u in words:
        for v in words:
            if len(u) + len(v) > G.maxlen or u > v:
                continue
            count += 1
            if max_pairs is not None and count > max_pairs:
                return bad
            total = HolLogSeries(G.trunc, {}, G[u].conjugate)
            for w in _shuffles(u, v):
                total = total + G[w]
            if G[u] * G[v] != total:
                bad.append((u, v))
    return bad


# ---------------------------------------------------------------------------
# the monodromy image J

def mu_factor(letter) -> Fraction:
    """e_{2n+2} Xdr^(2n-m) Ydr^m -> (2/(2n)!) ((2n-m)!/(2n)!) eps^(m)_{2n+2}."""
    n2 = 2 * letter.n
    return Fraction(2, math.factorial(n2)) * Fraction(math.factorial(n2 - letter.m), math.factorial(n2))


def mu_map(I: GroupSeries) -> GroupSeries:
    out = {}
    for word, c in I.coeffs.items():
        f = Fraction(1)
        for x in word:
            f *= mu_factor(x)
        out[tuple(EpsLetter(x.weight, x.m) for x in word)] = c.scale(f)
    return GroupSeries("eps", I.maxlen, I.trunc, out)


@lru_cache(maxsize=None)
def _omega_disk(letter: EpsLetter, N: int) -> HolLogSeries:
    """Coefficient of eps^(m) in mu(Omega): (2/(2n)!) (-log q)^m / m! G_{2n+2}."""
    G = HolLogSeries.from_q_series(eisenstein_q(letter.weight, N))
    c = Fraction(2 * (-1) ** letter.m, math.factorial(2 * letter.n) * math.factorial(letter.m))
    return G * HolLogSeries(N, {(0, letter.m): c})


def _raise(word: tuple, i: int, step: int):
    x = word[i]
    m = x.m + step
    if m < 0 or m > x.weight - 2:
        return None
    return word[:i] + (EpsLetter(x.weight, m),) + word[i + 1:]


def gauge_transform(J: GroupSeries) -> GroupSeries:
    """K = exp(-log q D) J, D the derivation with D(eps^(m)) = [eps0, eps^(m)] = -eps^(m+1).

    exp(-log q D) sends eps^(m) to sum_j (log q)^j / j! eps^(m+j), so
    K_v = sum over w below v (same weights, m_i <= p_i) of
    prod (log q)^(p_i - m_i) / (p_i - m_i)! * J_w.
    """
    N = J.trunc
    out = {}
    for v in J.coeffs:
        total = HolLogSeries(N)
        for lowered in product(*[range(x.m + 1) for x in v]):
            w = tuple(EpsLetter(x.weight, m) for x, m in zip(v, lowered))
            if w not in J.coeffs:
                continue
            jump = sum(x.m - m for x, m in zip(v, lowered))
            den = 1
            for x, m in zip(v, lowered):
                den *= math.factorial(x.m - m)
            total = total + J.coeffs[w] * HolLogSeries(N, {(0, jump): Fraction(1, den)})
        out[v] = total
    return GroupSeries("eps", J.maxlen, N, out)


def verify_dJ(J: GroupSeries, ad_sign: int = 1) -> dict:
    """Check the differential equation of J in two frames.

    ``disk``: q dJ/dq = -mu(Omega) J, mu(Omega) = sum (2/(2n)!) sum_m
    (-log q)^m/m! eps^(m) G dq/q acting by left concatenation.

    ``gauge``: K = exp(-log q D) J satisfies
    q dK/dq = -(ad_sign * D(K) + omega' K) with omega' = sum (2/(2n)!) eps G,
    D the derivation extending ad(eps0) on depth indices.  The identity
    holds for ad_sign = 1.

    Returns {"disk": [failing words], "gauge": [failing words]}.
    """
    N = J.trunc
    disk = []
    for word, c in J.coeffs.items():
        if not word:
            if c.q_dlog():
                disk.append(word)
            continue
        if c.q_dlog() != -(_omega_disk(word[0], N) * J[word[1:]]):
            disk.append(word)
    K = gauge_transform(J)
    gauge = []
    for v, c in K.coeffs.items():
        rhs = HolLogSeries(N)
        # -ad_sign D(K)_v = ad_sign * sum_i K_{v with p_i lowered}
        for i in range(len(v)):
            u = _raise(v, i, -1)
            if u is not None and u in K.coeffs:
                rhs = rhs + K.coeffs[u].scale(ad_sign)
        if v and v[0].m == 0:
            G = HolLogSeries.from_q_series(eisenstein_q(v[0].weight, N))
            rhs = rhs - (G * K[v[1:]]).scale(Fraction(2, math.factorial(2 * v[0].n)))
        if c.q_dlog() != rhs:
            gauge.append(v)
    return {"disk": disk, "gauge": gauge}


def sv_twist(G: GroupSeries) -> GroupSeries:
    """Conjugate the coefficients and multiply each word by (-1)^(M-degree)."""
    out = {}
    for word, c in G.coeffs.items():
        sign = -1 if word_m_degree(word) % 2 else 1
        out[word] = c.conj().scale(sign)
    return GroupSeries(G.alphabet, G.maxlen, G.trunc, out)


# ---------------------------------------------------------------------------
# bridge to derivations

def letter_derivation(letter: EpsLetter) -> freelie.DerivationTheta:
    return freelie.eps_string(letter.weight, letter.m)


def evaluate_on(word, x: freelie.LieElement) -> freelie.LieElement:
    """Apply the composite of the letters' derivations, rightmost first, to x."""
    for letter in reversed(tuple(word)):
        x = freelie.der_apply(letter_derivation(letter), x)
    return x


@lru_cache(maxsize=None)
def dual_in_string(weight: int) -> Fraction:
    """lambda with eps^v_weight = lambda * eps^(weight-2)_weight."""
    top = freelie.eps_string(weight, weight - 2)
    dual = freelie.epsilon(weight, "dual")
    for ours, theirs in ((top.on_a, dual.on_a), (top.on_b, dual.on_b)):
        t = ours.tensor
        if t:
            w, c = next(iter(t.items()))
            lam = Fraction(theirs.tensor.get(w, 0)) / Fraction(c)
            break
    else:
        raise ArithmeticError("top of the string vanishes")
    if dual.on_a != top.on_a * lam or dual.on_b != top.on_b * lam:
        raise ArithmeticError("dual epsilon is not proportional to the end of the string")
    return lam


# ---------------------------------------------------------------------------
# length one equivariant piece

def _length_one(weight: int, N: int) -> dict:
    return {m: -reg_primitive(_form(EisLetter(weight, m), N)) for m in range(weight - 1)}


def jeqv_length1_vector(w: int, N: int = 12) -> HomPoly:
    """Vector-valued length-one coefficient of J (b^sv)^-1 sv(J)^-1.

    In the letter eps^(m)_{w+2} the coefficient is
        f_m (I_m + (-1)^m conj(I_m)) - [m = w] zeta_sv(w+1) lambda,
    with f_m = mu_factor and eps^v = lambda eps^(w); dividing by f_m gives
    the Xdr^(w-m) Ydr^m coefficient.
    """
    if w % 2 or w < 2:
        raise ValueError("weight must be even and at least 2")
    I = _length_one(w + 2, N)
    lam = dual_in_string(w + 2)
    coeffs = {}
    for m, c in I.items():
        f = mu_factor(EpsLetter(w + 2, m))
        val = ExtendedSeries.from_hol(c) + ExtendedSeries.from_hol(c.conj()).scale((-1) ** m)
        if m == w:
            val = val - ExtendedSeries.constant(zsv(w + 1) * (lam / f), N)
        coeffs[(w - m, m)] = val
    return HomPoly(w, coeffs, DERHAM)


def jeqv_length1(w: int, N: int = 12):
    """Modular components of the length-one equivariant coefficient.

    Raises NonModularResidue if any log q - log qbar dependence survives.
    """
    return components_from_vector(jeqv_length1_vector(w, N), trunc=N)


def jeqv_length1_report(w: int, N: int = 12) -> dict:
    """Compare jeqv_length1 with the real-analytic Eisenstein family.

    The scalar c is read off the L^1 constant term of the (w, 0) component;
    the report records whether F = c E holds for every coefficient and
    whether F / c satisfies the differential system.
    """
    F = jeqv_length1(w, N)
    E = build_real_eisenstein(w, N)
    lin = constant_part(w, w, 0)[1]
    c = Fraction(F[(w, 0)][(1, 0, 0)]) / lin
    scaled = F.scale(1 / c)
    return {
        "weight": w,
        "scalar": c,
        "matches_eisenstein": all(scaled[rs].equals(E[rs]) for rs in E.keys()),
        "system_residuals": system_residuals(scaled),
    }


def n_plus(maxweight: int) -> dict:
    """Coefficients of N_+ = sum B_{2n+2}/(4n+4) (2/(2n)!) eps_{2n+2}."""
    out = {}
    for k in range(4, maxweight + 1, 2):
        n = (k - 2) // 2
        out[EpsLetter(k, 0)] = bernoulli(k) / (4 * n + 4) * Fraction(2, math.factorial(2 * n))
    return out
