from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from eisenworks.freelie import A, B, LieElement, bracket, der_bracket, epsilon
from eisenworks.pls import (
    LEADING_IGNORE, LEADING_VANISH, RatFn, canonical_denominator, check_lds, combine,
    depth2_report, format_polynomial, lds_equations, rho,
)

X = sympy.symbols("x1:4")


def as_sympy(f: RatFn):
    xs = X[: f.depth]
    num = sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x ** k for x, k in zip(xs, e)])
              for e, c in f.numerator.items())
    den = sympy.Mul(*[sum(a * x for a, x in zip(form, xs)) for form in canonical_denominator(f.depth)])
    return num / den


def sympy_residue(f: RatFn, subs):
    expr = as_sympy(f)
    xs = X[: f.depth]
    total = 0
    for forms in subs:
        args = [sum(c * x for c, x in zip(form, xs)) for form in forms]
        total += expr.subs(dict(zip(xs, args)), simultaneous=True)
    return sympy.cancel(sympy.together(total))


numerators2 = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-4, 4), max_size=4
)


def test_canonical_denominator():
    assert canonical_denominator(1) == [(1,)]
    assert canonical_denominator(3) == [(1, 0, 0), (1, -1, 0), (0, 1, -1), (0, 0, 1)]
    with pytest.raises(ValueError):
        canonical_denominator(0)


def test_rho_examples():
    # bab -> x1^1 x2^0 over x1 (x1 - x2) x2
    assert rho({"bab": 1}, 2) == RatFn(2, {(1, 0): 1})
    assert rho({"bab": 1, "abb": 5}, 2, LEADING_VANISH) == RatFn(2, {(1, 0): 1})
    assert rho({"abb": 5}, 2, LEADING_IGNORE) == RatFn(2, {(0, 0): 5})
    assert rho({"baa": 3}, 1) == RatFn(1, {(2,): 3})
    assert rho(LieElement(), 2) == RatFn(2)
    assert not rho(A, 1)
    assert rho(B, 1)(7) == Fraction(1, 7)


def test_rho_rejects_bad_input():
    with pytest.raises(ValueError):
        rho(B, 0)
    with pytest.raises(ValueError):
        rho(B, 1, "drop")


def test_ratfn_basic():
    f = RatFn(2, {(1, 0): 1, (0, 1): 1})
    assert f + f == 2 * f
    assert f.degrees() == {-2}
    assert f(3, 1) == Fraction(4, 3 * 2 * 1)
    with pytest.raises(ValueError):
        RatFn(2, {(1,): 1})
    with pytest.raises(ValueError):
        f(1)
    assert format_polynomial(f.numerator) == "(1)*x1 + (1)*x2"


@given(numerators2, st.integers(1, 9), st.integers(-9, -1))
def test_ratfn_evaluation_matches_sympy(num, a, b):
    f = RatFn(2, num)
    expr = as_sympy(f)
    got = f(a, b)
    want = expr.subs({X[0]: a, X[1]: b})
    assert sympy.Rational(got.numerator, got.denominator) == want


@given(numerators2)
def test_check_lds_matches_sympy(num):
    f = RatFn(2, num)
    report = check_lds(f)
    for name, subs in lds_equations(2).items():
        assert (name in report) == (sympy_residue(f, subs) != 0)


def test_lds_examples():
    # x1 + x2 over x1 (x1 - x2) x2 is odd under the swap but fails the stuffle equation
    sym = RatFn(2, {(1, 0): 1, (0, 1): 1})
    assert set(check_lds(sym)) == {"stuffle"}
    assert set(check_lds(RatFn(2, {(1, 0): 1}))) == {"antisymmetry", "stuffle"}
    assert check_lds(RatFn(2)) == {}


def test_combine_cancels():
    f = RatFn(2, {(1, 0): 1})
    num, _ = combine([(f, [(1, 0), (0, 1)], 1), (f, [(1, 0), (0, 1)], -1)], 2)
    assert num == {}


def test_lds_depth_bounds():
    with pytest.raises(ValueError):
        lds_equations(4)


def test_depth2_verbatim():
    rep = depth2_report(4, LEADING_IGNORE)
    assert sorted(k for k, v in rep.items() if v["residues"]) == [(4, 6), (4, 8)]
    assert sorted(k for k, v in rep.items() if not v["homogeneous"]) == [(4, 6), (4, 8)]
    assert all(set(v["residues"]) <= {"stuffle"} for v in rep.values())


def test_depth2_vanish():
    rep = depth2_report(4, LEADING_VANISH)
    assert all(not v["residues"] and v["homogeneous"] for v in rep.values())
    assert rep[(4, 6)]["nonzero"] and rep[(4, 8)]["nonzero"]
    assert not rep[(4, 4)]["nonzero"] and not rep[(6, 6)]["nonzero"]


def test_depth2_vanish_against_sympy():
    from eisenworks.pls import bracket_image

    f = rho(bracket_image(4, 6).b_slice(2), 2, LEADING_VANISH)
    for subs in lds_equations(2).values():
        assert sympy_residue(f, subs) == 0


def test_depth3_triple_bracket():
    d = der_bracket(epsilon(4), der_bracket(epsilon(4), epsilon(6)))
    f = rho(d.on_a.b_slice(3), 3, LEADING_VANISH)
    assert f and f.degrees() == {8}
    assert check_lds(f) == {}
    assert set(check_lds(rho(d.on_a.b_slice(3), 3, LEADING_IGNORE))) == {"shuffle", "stuffle"}


def test_depth3_check_against_sympy():
    d = der_bracket(epsilon(4), der_bracket(epsilon(4), epsilon(6)))
    f = rho(d.on_a.b_slice(3), 3, LEADING_VANISH)
    assert sympy_residue(f, lds_equations(3)["shuffle"]) == 0


def test_theta_slice_is_lie():
    x = bracket(B, bracket(A, B))
    assert x.b_slice(2) == x
    assert not x.b_slice(1)
