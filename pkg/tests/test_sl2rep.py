from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from eisenworks.exact_arith import zsv
from eisenworks.sl2rep import (
    BETTI, DERHAM, IDENTITY, S, T, BasisMismatch, HomPoly, SL2Matrix,
    betti_delta_k, compare, delta_k, sl2_act, twisted_scale,
)

from conftest import small_fractions

X, Y = sympy.symbols("X Y")


def poly(terms, basis=BETTI):
    degree = sum(next(iter(terms)))
    return HomPoly(degree, terms, basis)


def to_sympy(p: HomPoly):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * X ** r * Y ** s
                            for (r, s), c in ((k, Fraction(v)) for k, v in p.coeffs.items())))


def from_sympy(expr, degree, basis=BETTI):
    P = sympy.Poly(sympy.expand(expr), X, Y)
    return HomPoly(degree, {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms() if c}, basis)


def hompolys(degree, basis=BETTI):
    return st.dictionaries(
        st.integers(0, degree).map(lambda r: (r, degree - r)), small_fractions, max_size=degree + 1
    ).map(lambda d: HomPoly(degree, d, basis))


def test_act_examples():
    assert sl2_act(poly({(2, 0): 1}), S) == poly({(0, 2): 1})
    assert sl2_act(poly({(1, 1): 1}), IDENTITY) == poly({(1, 1): 1})
    assert sl2_act(poly({(2, 0): 1}), T) == poly({(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_act_is_right_action():
    p = poly({(3, 1): 2, (1, 3): -1})
    for g in (S, T):
        for h in (S, T, S @ T):
            assert sl2_act(sl2_act(p, g), h) == sl2_act(p, g @ h)


def test_basis_mismatch_rejected():
    with pytest.raises(BasisMismatch):
        sl2_act(poly({(2, 0): 1}, DERHAM), S)
    with pytest.raises(BasisMismatch):
        delta_k(poly({(2, 0): 1}), poly({(2, 0): 1}, DERHAM), 1)


def test_degree_checked():
    with pytest.raises(ValueError):
        HomPoly(2, {(2, 1): 1})


def test_delta_examples():
    assert delta_k(poly({(2, 0): 1}), poly({(0, 2): 1}), 1) == poly({(1, 1): 4})
    p, q = poly({(2, 0): 3, (1, 1): 1}), poly({(0, 4): 2})
    assert delta_k(p, q, 0) == p * q
    assert not delta_k(poly({(2, 0): 1}), poly({(2, 0): 1}), 1)


def test_delta_vanishes_beyond_degree():
    p, q = poly({(2, 0): 1, (0, 2): 1}), poly({(3, 1): 1})
    assert not delta_k(p, q, 3)
    assert delta_k(p, q, 3).degree == 0


def _sympy_delta(p, q, k):
    # (d_X (x) d_Y - d_Y (x) d_X)^k via two independent variable pairs, then X1=X2
    X1, Y1, X2, Y2 = sympy.symbols("X1 Y1 X2 Y2")
    f = to_sympy(p).subs({X: X1, Y: Y1}, simultaneous=True) * to_sympy(q).subs({X: X2, Y: Y2}, simultaneous=True)
    for _ in range(k):
        f = sympy.diff(f, X1, Y2) - sympy.diff(f, Y1, X2)
    return sympy.expand(f.subs({X1: X, X2: X, Y1: Y, Y2: Y}))


@given(hompolys(4), hompolys(2), st.integers(0, 3))
def test_delta_against_sympy(p, q, k):
    got = delta_k(p, q, k)
    assert to_sympy(got) == _sympy_delta(p, q, k)


@given(hompolys(4), hompolys(2), st.integers(0, 2), st.sampled_from(["S", "T", "ST"]))
def test_delta_equivariance(p, q, k, gname):
    g = {"S": S, "T": T, "ST": S @ T}[gname]
    assert delta_k(sl2_act(p, g), sl2_act(q, g), k) == sl2_act(delta_k(p, q, k), g)


@given(hompolys(2, DERHAM), hompolys(4, DERHAM), st.integers(0, 2))
def test_betti_derham_compatibility(p, q, k):
    # Ydr = Y/(2 pi i): Betti delta^k of the compared forms carries (2 pi i)^-k
    lhs = betti_delta_k(compare(p), compare(q), k)
    rhs = compare(delta_k(p, q, k))
    assert lhs.poly == rhs.poly
    assert twisted_scale(lhs, k).shift == rhs.shift


def test_m_degree():
    p = HomPoly.monomial(1, 3, basis=DERHAM)
    assert p.m_degree((1, 3)) == -3


def test_coefficients_in_sv_ring():
    p = HomPoly(2, {(2, 0): zsv(3), (0, 2): 1})
    q = HomPoly(2, {(1, 1): zsv(5)})
    # (d_X p)(d_Y q) - (d_Y p)(d_X q) = 2 z3 z5 X^2 - 2 z5 Y^2
    out = delta_k(p, q, 1)
    assert out == HomPoly(2, {(2, 0): zsv(3) * zsv(5) * 2, (0, 2): zsv(5) * -2})
    assert SL2Matrix(1, 0, 0, 1) == IDENTITY
