import math

import pytest
from hypothesis import given, strategies as st

from eisenworks.freelie import (
    A, B, CostGuard, DerivationTheta, LieElement, ad_power, bracket, conjugate_by_S,
    der_ad_power, der_apply, der_bracket, dimension_table, epsilon, epsilon0, epsilon0_dual,
    eps_string, independence_families, is_lyndon, lyndon_bracket, lyndon_words,
    poincare_comparison, pollack_relations, rank_of_span, theta,
)

WORDS = [w for n in range(1, 5) for w in lyndon_words(n)]

lie_elements = st.dictionaries(st.sampled_from(WORDS), st.integers(-3, 3), max_size=4).map(
    LieElement.from_lyndon
)


def ad_power_words(x, y, n):
    # ad(x)^n y = sum_i (-1)^i C(n, i) x^(n-i) y x^i for single letters x, y
    return {x * (n - i) + y + x * i: (-1) ** i * math.comb(n, i) for i in range(n + 1)}


def test_bracket_examples():
    assert bracket(A, B).tensor == {"ab": 1, "ba": -1}
    assert bracket(A, A) == 0
    assert theta() == -bracket(B, A)
    assert ad_power(A, B, 3).tensor == ad_power_words("a", "b", 3)


def test_lyndon_words_count():
    # necklace count (1/n) sum_{d | n} mu(d) 2^(n/d)
    assert [len(lyndon_words(n)) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert all(is_lyndon(w) for w in lyndon_words(6))
    with pytest.raises(ValueError):
        lyndon_bracket("ba")


@given(lie_elements)
def test_lyndon_coordinates_round_trip(x):
    assert LieElement.from_lyndon(x.lyndon) == x


@given(lie_elements, lie_elements, lie_elements)
def test_jacobi(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total == 0


@given(lie_elements, lie_elements)
def test_antisymmetry(x, y):
    assert bracket(x, y) == -bracket(y, x)


@pytest.mark.parametrize("index", [4, 6, 8])
def test_dual_epsilon_on_a(index):
    assert epsilon(index, "dual").on_a.tensor == ad_power_words("a", "b", index)


def test_dual_epsilon4_on_b():
    # 1/2 sum_{i+j=3} (-1)^i [ad(a)^i b, ad(a)^j b] = [b, ad(a)^3 b] - [ad(a) b, ad(a)^2 b]
    want = bracket(B, ad_power(A, B, 3)) - bracket(ad_power(A, B, 1), ad_power(A, B, 2))
    assert epsilon(4, "dual").on_b == want


@pytest.mark.parametrize("index", [2, 4, 6, 8, 10, 12, 14])
def test_theta_annihilated(index):
    for variant in ("dual", "lowest"):
        d = epsilon(index, variant)
        assert der_apply(d, theta()) == 0


@pytest.mark.parametrize("index", [4, 6, 8])
def test_lowest_from_S_conjugation(index):
    low = epsilon(index, "lowest")
    assert low.on_b == -ad_power(B, A, index)
    assert conjugate_by_S(conjugate_by_S(epsilon(index, "dual"))) == epsilon(index, "dual")


def test_epsilon2_lowest():
    e2 = epsilon(2, "lowest")
    assert e2.on_a == ad_power(A, B, 2)
    assert e2.on_b == -ad_power(B, A, 2)


def test_bad_index():
    for bad in (3, 0, -2):
        with pytest.raises(ValueError):
            epsilon(bad)
    with pytest.raises(ValueError):
        epsilon(4, "middle")


def test_derivation_rejects_non_theta():
    with pytest.raises(ValueError):
        DerivationTheta(A, LieElement(), "bad")


@given(lie_elements, lie_elements)
def test_leibniz(x, y):
    d = epsilon(4, "dual")
    assert der_apply(d, bracket(x, y)) == bracket(der_apply(d, x), y) + bracket(x, der_apply(d, y))


@given(lie_elements)
def test_derivation_bracket_is_commutator(x):
    d1, d2 = epsilon(4, "dual"), epsilon0()
    lhs = der_apply(der_bracket(d1, d2), x)
    assert lhs == der_apply(d1, der_apply(d2, x)) - der_apply(d2, der_apply(d1, x))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_nilpotency(n):
    e = epsilon(2 * n + 2, "dual")
    assert not der_ad_power(epsilon0_dual(), e, 2 * n + 1).vector()
    assert der_ad_power(epsilon0_dual(), e, 2 * n).vector()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lowest_string_nilpotency(n):
    assert eps_string(2 * n + 2, 2 * n).vector()
    assert not eps_string(2 * n + 2, 2 * n + 1).vector()


@pytest.mark.parametrize("k", [4, 6, 8])
def test_epsilon2_commutes(k):
    assert not der_bracket(epsilon(2, "lowest"), epsilon(k, "dual")).vector()


def test_pollack_kernels():
    rel = pollack_relations()
    assert rel[(10, 4, 8, 6)] == (1, [[1, -3]])
    assert rel[(14, 4, 12, 6, 10, 8)] == (2, [[2, -7, 11]])


def test_independence_small_weights():
    for bideg, family in independence_families(4).items():
        r, rel = rank_of_span([d for _, d in family])
        assert r == len(family), bideg
        assert rel == []


def test_rank_of_span_rejects_mixed_bidegree():
    with pytest.raises(ValueError):
        rank_of_span([epsilon(4), epsilon(6)])
    assert rank_of_span([]) == (0, [])


def test_dimension_table():
    table = dimension_table(1, 8)
    assert all(n == r for n, r in table.values())
    assert all(length == 1 for length, _ in table)
    table = dimension_table(2, 14, max_p=2)
    drops = {k: v for k, v in table.items() if v[0] != v[1]}
    assert drops == {(2, (2, 12)): (2, 1)}


def test_dimension_table_guard():
    with pytest.raises(CostGuard):
        dimension_table(4, 10)
    with pytest.raises(CostGuard):
        dimension_table(3, 200)


def test_poincare_comparison():
    cmp = poincare_comparison(11)
    assert cmp[1][2] == [1]
    assert cmp[1][0][1] == 0 and cmp[1][1][1] == 1
    assert cmp[2][2] == []
    assert cmp[3][2] == []
