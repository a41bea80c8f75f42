import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from eisenworks.exact_arith import SvScalar, bernoulli, sv_eval, zsv
from eisenworks.qseries import BiSeries, ExtendedSeries, eisenstein_q, multiply
from eisenworks.raeis import (
    OddWeight, VectorModularForm, build_real_eisenstein, components_from_vector,
    constant_part, delta_component_check, delta_family, laplace_inhomogeneous_decomposition,
    laplace_residuals, m_filtration_ok, mode_coefficients, product_decomposition,
    system_residuals, vector_from_components,
)
from eisenworks.sl2rep import DERHAM, HomPoly

from conftest import small_fractions


@pytest.fixture(scope="module")
def families():
    return {w: build_real_eisenstein(w, 12) for w in (2, 4, 6, 8)}


def test_constant_examples():
    assert constant_part(2, 2, 0) == {1: Fraction(1, 720), -2: zsv(3) * Fraction(1, 8)}
    assert constant_part(2, 1, 1) == {1: Fraction(1, 720), -2: zsv(3) * Fraction(-1, 4)}


def test_odd_weight_rejected():
    with pytest.raises(OddWeight):
        build_real_eisenstein(3, 2)
    with pytest.raises(OddWeight):
        mode_coefficients(5, 1, 0)
    with pytest.raises(ValueError):
        mode_coefficients(2, 0, 0)


@pytest.mark.parametrize("w", [2, 4, 6, 8])
def test_system_and_laplace(families, w):
    E = families[w]
    assert len(E.keys()) == w + 1
    assert system_residuals(E) == []
    assert laplace_residuals(E) == []


@pytest.mark.parametrize("w", [2, 4, 6, 8])
def test_pole_bound_and_m_filtration(families, w):
    for rs, f in families[w].items():
        assert f.pole_order() >= -w
        assert m_filtration_ok(f)


@pytest.mark.parametrize("w", [2, 4, 6])
def test_conjugation_symmetry(families, w):
    E = families[w]
    for (r, s), f in E.items():
        assert f.conjugate() == E[(s, r)]


@pytest.mark.parametrize("w", [2, 4, 6, 8])
def test_holomorphic_profile(w):
    # a^(k)_{m,0} / (sigma_{w+1}(m) m^(k-1)) does not depend on m
    base = mode_coefficients(w, 1, 0)
    for m in (2, 3, 5):
        other = mode_coefficients(w, m, 0)
        for (r, s, k), c in base.items():
            want = c * sigma_ratio(w, m, k)
            assert other[(r, s, k)] == want
        assert set(other) == set(base)


def sigma_ratio(w, m, k):
    from eisenworks.exact_arith import sigma
    return sigma(w + 1, m) * Fraction(m) ** (k - 1)


def test_vector_form_validates_weights():
    with pytest.raises(ValueError):
        VectorModularForm(2, {(1, 1): BiSeries((2, 0))})
    with pytest.raises(ValueError):
        VectorModularForm(2, {(2, 1): BiSeries((2, 1))})


def test_vector_round_trip_weight_zero():
    P = vector_from_components({(0, 0): ExtendedSeries.constant(1, 4)})
    assert P.degree == 0
    assert P[(0, 0)] == ExtendedSeries.constant(1, 4)


@given(st.lists(small_fractions, min_size=5, max_size=5))
def test_components_round_trip(values):
    comps = {(r, 4 - r): ExtendedSeries.constant(v, 2) for r, v in enumerate(values)}
    back = components_from_vector(vector_from_components(comps), reduce=False, trunc=2)
    for rs, c in comps.items():
        assert back[rs] == c


def test_x_squared_in_new_basis():
    # X = (log qbar U + log q V)/(2L): X^2 has UV coefficient 2 log q log qbar / (4 L^2)
    N = 2
    one = ExtendedSeries.constant(1, N)
    comps = components_from_vector(HomPoly(2, {(2, 0): one}, DERHAM), reduce=False, trunc=N)
    lq, lqb = ExtendedSeries.log_q(N), ExtendedSeries.log_qbar(N)
    want = (lq * lqb).scale(Fraction(2, 4)) * ExtendedSeries.L_power(-2, N)
    assert comps[(1, 1)] == want


def test_eisenstein_vector_is_modular(families):
    # the vector sum E_{r,s} U^r V^s has no (log q - log qbar) dependence left after the round trip
    E = families[2]
    back = components_from_vector(vector_from_components(E), trunc=E.trunc)
    for rs in E.keys():
        assert back[rs].equals(E[rs])


def test_product_decomposition():
    coeffs, residual = product_decomposition(8)
    assert residual == {}
    assert coeffs == {0: Fraction(1, 6), 1: 0, 2: Fraction(1, 12)}


def test_delta_component_formula():
    assert delta_component_check(3) == []


def test_delta_family_degrees(families):
    E = families[2]
    for k in range(3):
        D = delta_family(E, E, k)
        assert D.total_weight == 4 - 2 * k
    assert all(not f.coeffs for f in delta_family(E, E, 1).components.values())


def test_laplace_inhomogeneous_on_delta_components():
    E = build_real_eisenstein(2, 8)
    for k in range(3):
        for rs, f in delta_family(E, E, k).items():
            _, residual = laplace_inhomogeneous_decomposition(f, 2, 4, 8)
            assert residual == {}


def test_bare_product_leaves_l_shifted_piece():
    # (Delta + 4)(E20 E02) = 4 E20 E02 - E11^2 - L^2 G4 G4bar; the first two terms are not in the span
    E = build_real_eisenstein(2, 8)
    F = multiply(E[(2, 0)], E[(0, 2)])
    _, residual = laplace_inhomogeneous_decomposition(F, 2, 4, 8)
    assert residual


# ---------------------------------------------------------------------------
# numeric comparison with the lattice sum w!/(2 pi i)^(w+2) (1/2) sum L/((mz+n)^(r+1) (m zbar+n)^(s+1))

def _full_line(j, a):
    if j == 1:
        return mpmath.pi * mpmath.cot(mpmath.pi * a)
    return mpmath.zeta(j, a) + (-1) ** j * mpmath.zeta(j, 1 - a)


def _inner(p, t, a, b):
    # sum over n of 1/((n+a)^p (n+b)^t) by partial fractions
    d = b - a
    tot = 0
    for i in range(1, p + 1):
        tot += (-1) ** (p - i) * math.comb(t + p - i - 1, p - i) * d ** (-t - p + i) * _full_line(i, a)
    for j in range(1, t + 1):
        tot += (-1) ** (t - j) * math.comb(p + t - j - 1, t - j) * (-d) ** (-p - t + j) * _full_line(j, b)
    return tot


def _lattice(r, s, z):
    w = r + s
    zb = mpmath.conj(z)
    tot = 2 * mpmath.zeta(w + 2)
    tot += mpmath.nsum(lambda m: _inner(r + 1, s + 1, m * z, m * zb) + _inner(r + 1, s + 1, -m * z, -m * zb),
                       [1, mpmath.inf])
    L = -2 * mpmath.pi * z.imag
    return mpmath.factorial(w) / (2 * mpmath.pi * 1j) ** (w + 2) / 2 * L * tot


def _evaluate(f, z):
    q = mpmath.exp(2j * mpmath.pi * z)
    L = -2 * mpmath.pi * z.imag
    return sum(sv_eval(c) * L ** k * q ** m * mpmath.conj(q) ** n for (k, m, n), c in f.items())


@pytest.mark.slow
@pytest.mark.parametrize("rs", [(2, 0), (1, 1), (0, 2), (2, 2)])
def test_against_lattice_sum(families, rs):
    with mpmath.workdps(25):
        z = mpmath.mpc(0.3, 1.1)
        got = _evaluate(families[sum(rs)][rs], z)
        want = _lattice(*rs, z)
        assert abs(got - want) < 1e-13 * abs(want)
