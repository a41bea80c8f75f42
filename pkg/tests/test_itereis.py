import math
from fractions import Fraction

import mpmath
import pytest

from eisenworks.exact_arith import sigma
from eisenworks.itereis import (
    CostGuard, EisLetter, EpsLetter, GroupSeries, build_I, cusp_values, dual_in_string,
    eis_letters, evaluate_on, jeqv_length1_report, log_degree_violations, mu_factor, mu_map,
    n_plus, shuffle_check, sv_twist, verify_dI, verify_dJ, word_label, word_m_degree,
)
from eisenworks.freelie import A, B, der_apply, eps_string
from eisenworks.qseries import HolLogSeries


@pytest.fixture(scope="module")
def I():
    return build_I(2, 6, 8)


def evaluate(h: HolLogSeries, q):
    return sum(float(c) * q ** i * mpmath.log(q) ** j for (i, j), c in h.items())


def test_letters():
    assert len(eis_letters(8)) == 3 + 5 + 7
    with pytest.raises(ValueError):
        EisLetter(5, 0)
    with pytest.raises(ValueError):
        EisLetter(4, 3)
    with pytest.raises(ValueError):
        EpsLetter(2, 0)
    word = (EisLetter(4, 1), EisLetter(6, 0))
    assert word_m_degree(word) == -3
    assert word_label(word) == "e4[1] e6[0]"
    assert word_label(()) == "1"


def test_length_one_e4(I):
    c = I[(EisLetter(4, 0),)]
    # -(log q)/240 - sum sigma_3(n) q^n / n
    assert c[(0, 1)] == Fraction(-1, 240)
    for n in range(1, 9):
        assert c[(n, 0)] == -Fraction(sigma(3, n), n)
    assert c.log_degree() == 1


def test_length_one_e4_with_log(I):
    c = I[(EisLetter(4, 1),)]
    # -P(-2 log q G4): the constant 1/240 gives (log q)^2 / 240
    assert c[(0, 2)] == Fraction(1, 240)
    assert c[(1, 1)] == 2
    assert c[(1, 0)] == -2


def test_unit_and_cusp_values(I):
    assert I[()] == HolLogSeries.one(8)
    assert cusp_values(I) == {(): 1}


def test_differential_equation(I):
    assert verify_dI(I) == []
    assert log_degree_violations(I) == []
    assert shuffle_check(I) == []


def test_differential_equation_numerically(I):
    # q d/dq of the length-two coefficient against -C(2n,m)(-log q)^m G(q) times the tail
    u, v = EisLetter(4, 1), EisLetter(6, 2)
    q0 = mpmath.mpf("0.01")
    lhs = q0 * mpmath.diff(lambda q: evaluate(I[(u, v)], q), q0)
    G4 = Fraction(1, 240) + sum(sigma(3, n) * q0 ** n for n in range(1, 9))
    rhs = -2 * (-mpmath.log(q0)) * G4 * evaluate(I[(v,)], q0)
    assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_shuffle_square(I):
    x = (EisLetter(4, 0),)
    assert I[x] * I[x] == I[x + x].scale(2)


def test_cost_guard():
    with pytest.raises(CostGuard):
        build_I(4, 4, 4)
    with pytest.raises(CostGuard):
        build_I(3, 20, 4)
    with pytest.raises(ValueError):
        build_I(1, 5, 4)


def test_mu_factor():
    assert mu_factor(EisLetter(4, 0)) == 1
    assert mu_factor(EisLetter(4, 1)) == Fraction(1, 2)
    assert mu_factor(EisLetter(4, 2)) == Fraction(1, 2)
    assert mu_factor(EisLetter(6, 0)) == Fraction(1, 12)


def test_mu_map_letterwise(I):
    J = mu_map(I)
    u, v = EisLetter(4, 1), EisLetter(6, 0)
    assert J[(EpsLetter(4, 1), EpsLetter(6, 0))] == I[(u, v)].scale(mu_factor(u) * mu_factor(v))


def test_dJ_frames(I):
    J = mu_map(I)
    rep = verify_dJ(J)
    assert rep == {"disk": [], "gauge": []}
    assert verify_dJ(J, ad_sign=-1)["gauge"]


def test_sv_twist(I):
    J = mu_map(I)
    T = sv_twist(J)
    assert sv_twist(T).coeffs == J.coeffs
    word = (EpsLetter(4, 0),)
    assert T[word] == -J[word].conj()
    word = (EpsLetter(4, 1),)
    assert T[word] == J[word].conj()


def test_missing_word_is_zero(I):
    assert not I[(EisLetter(8, 0),)]


def test_dual_in_string():
    assert dual_in_string(4) == Fraction(1, 2)
    assert dual_in_string(6) == Fraction(1, 24)


def test_evaluate_on():
    word = (EpsLetter(4, 0),)
    assert evaluate_on(word, A) == der_apply(eps_string(4, 0), A)
    assert evaluate_on((), B) == B


@pytest.mark.parametrize("w", [2, 4, 6])
def test_length_one_equivariant(w):
    rep = jeqv_length1_report(w, 10)
    assert rep["scalar"] == -2
    assert rep["matches_eisenstein"]
    assert rep["system_residuals"] == []


def test_n_plus():
    assert n_plus(4) == {EpsLetter(4, 0): Fraction(-1, 240)}
    got = n_plus(8)
    assert got[EpsLetter(6, 0)] == Fraction(1, 6048)
    assert got[EpsLetter(8, 0)] == Fraction(-1, 172800)
    # B_{2n+2}/(4n+4) * 2/(2n)! written out for 2n+2 = 8
    assert got[EpsLetter(8, 0)] == Fraction(-1, 30) / 16 * Fraction(2, math.factorial(6))


def test_group_series_defaults():
    G = GroupSeries("eis", 1, 4, {(): HolLogSeries.one(4)})
    assert G.words() == [()]
    assert G.letters() == []
