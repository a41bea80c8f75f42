import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from scipy.integrate import quad

from eisenworks.lfun import (
    OutOfRegime, det_Mw, eisenstein_lambda_examples, eisenstein_profile, falling_product,
    from_biseries, gamma, holomorphic_eisenstein, lambda_completed, lambda_holomorphic_eisenstein,
    mode_mellin, real_eisenstein, sigma_array, verify_dlambda_identity, xi, xi_identity_check,
)
from eisenworks.qseries import BiSeries, eisenstein_q
from eisenworks.raeis import build_real_eisenstein

from conftest import small_fractions


@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 2.5, 7.3, 15.0, -0.5, -2.7])
def test_gamma_real(z):
    assert gamma(z) == pytest.approx(float(mpmath.gamma(z)), rel=1e-12)


@pytest.mark.parametrize("z", [complex(8, 3), complex(0.2, -1.5), complex(-1.5, 0.5)])
def test_gamma_complex(z):
    assert abs(gamma(z) - complex(mpmath.gamma(z))) < 1e-11 * abs(complex(mpmath.gamma(z)))


@pytest.mark.parametrize("s", [2.0, 3.5, 9.0])
def test_xi(s):
    want = mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)
    assert xi(s) == pytest.approx(float(want), rel=1e-12)


def test_sigma_array():
    arr = sigma_array(3, 30)
    assert [int(v) for v in arr[1:]] == [int(sympy.divisor_sigma(l, 3)) for l in range(1, 31)]


def test_holomorphic_eisenstein_lambda():
    s = 8.0
    got = lambda_completed(holomorphic_eisenstein(4), s)
    want = (2 * mpmath.pi) ** (-s) * mpmath.gamma(s) * mpmath.zeta(s) * mpmath.zeta(s - 3)
    assert got.value == pytest.approx(float(want), rel=1e-12)
    assert lambda_holomorphic_eisenstein(4, s) == pytest.approx(float(want), rel=1e-12)
    assert got.tail_bound < 1e-20


@pytest.mark.parametrize("k,ell,s", [(0, 1, 3.0), (1, 1, 4.0), (2, 3, 5.5), (3, 2, 7.0), (1, 5, 9.0)])
def test_mode_mellin(k, ell, s):
    val, err = quad(lambda y: (-2 * math.pi * y) ** k * math.exp(-2 * math.pi * ell * y) * y ** (s - 1),
                    0, math.inf)
    assert mode_mellin(k, ell, s) == pytest.approx(val, rel=1e-9)


biseries = st.dictionaries(
    st.tuples(st.integers(-3, 2), st.integers(0, 4), st.integers(0, 4)), small_fractions, max_size=6
).flatmap(lambda c: st.tuples(st.integers(0, 4), st.integers(0, 4)).map(lambda w: BiSeries(w, 4, c)))


@given(biseries)
def test_dlambda_identity_formal(f):
    assert verify_dlambda_identity(f) == {}


@pytest.mark.parametrize("w", [2, 4])
def test_dlambda_identity_on_eisenstein(w):
    E = build_real_eisenstein(w, 6)
    for rs, f in E.items():
        assert verify_dlambda_identity(f) == {}


@pytest.mark.parametrize("w", range(0, 11, 2))
def test_det_Mw(w):
    s = sympy.Symbol("s")
    M = sympy.zeros(w + 1, w + 1)
    for i in range(w + 1):
        M[i, i] = 2 * s - w
        if i < w:
            M[i, i + 1] = i + 1
            M[i + 1, i] = w - i
    want = sympy.Poly(sympy.expand(M.det()), s)
    got = det_Mw(w)
    assert {e[0]: Fraction(int(c)) for e, c in want.terms()} == got
    assert got == falling_product(w)


def test_det_Mw_examples():
    assert det_Mw(0) == {1: 2}
    assert det_Mw(2) == {1: 16, 2: -24, 3: 8}
    with pytest.raises(ValueError):
        det_Mw(3)


def test_profile_matches_expansion():
    # coefficient streams from the closed profile agree with the truncated expansion
    N = 8
    E = build_real_eisenstein(2, N)
    for (r, s) in [(2, 0), (1, 1), (0, 2)]:
        direct = from_biseries(E[(r, s)])
        closed = real_eisenstein(r, s)
        assert set(direct.streams) == set(closed.streams)
        for k in closed.streams:
            assert np.allclose(direct.coefficients(k, N), closed.coefficients(k, N), rtol=1e-13, atol=0)


def test_profile_shape():
    prof = eisenstein_profile(2)
    assert set(prof) == {(2, 0), (1, 1), (0, 2)}
    assert prof[(2, 0)][0] == (Fraction(1), Fraction(0))


def test_eisenstein_examples():
    ex = eisenstein_lambda_examples(8.0, 100000)
    for key in ("E2,0", "E1,1"):
        assert ex[key]["discrepancy"] < 1e-6
        assert ex[key]["tail_bound"] < 1e-20


def test_xi_identity():
    rep = xi_identity_check(1, 8.0)
    assert rep["discrepancy"] < 1e-6
    with pytest.raises(ValueError):
        xi_identity_check(2, 8.0)
    with pytest.raises(OutOfRegime):
        xi_identity_check(1, 2.5)


def test_out_of_regime():
    with pytest.raises(OutOfRegime):
        lambda_completed(real_eisenstein(2, 0), 4.0)
    with pytest.raises(OutOfRegime):
        lambda_completed(holomorphic_eisenstein(4), complex(6.0, 1.0))


def test_zero_series():
    val = lambda_completed(from_biseries(BiSeries((2, 0), 4)), 9.0)
    assert val.value == 0
    assert val.tail_bound == 0


def test_truncated_source_caps_terms():
    data = from_biseries(eisenstein_q(4, 6))
    val = lambda_completed(data, 8.0, terms=1000)
    assert val.terms == 6
    partial = sum(float(sympy.divisor_sigma(l, 3)) * mode_mellin(0, l, 8.0) for l in range(1, 7))
    assert val.value == pytest.approx(partial, rel=1e-12)
