from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from basecert import weights as W
from basecert.census import u5_2_fixed_space_classes, EnumeratedClass


@pytest.mark.parametrize("kind,rank,nroots,weyl", [
    ("A", 3, 12, 24), ("A", 5, 30, 720), ("B", 3, 18, 48), ("C", 4, 32, 384), ("D", 4, 24, 192), ("D", 6, 60, 23040),
])
def test_root_system_sizes(kind, rank, nroots, weyl):
    rs = W.root_system(kind, rank)
    assert len(rs.roots) == nroots
    assert rs.weyl_order == weyl
    assert len(rs.positive_roots()) == nroots // 2


def test_fundamental_weights_are_dual_to_simple_coroots():
    for kind, rank in [("A", 4), ("B", 4), ("C", 4), ("D", 5)]:
        rs = W.root_system(kind, rank)
        for i in range(1, rank + 1):
            assert rs.dynkin(rs.weight(W.fundamental(rank, i))) == tuple(Fraction(int(t == i - 1)) for t in range(rank))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_minuscule_orbits_have_module_dimension(n):
    rs = W.root_system("A", n)
    for k in range(1, n + 1):
        lam = W.fundamental(n, k)
        assert W.dominant_weights("A", n, lam) == [lam]
        assert rs.orbit_size(rs.weight(lam)) == comb(n + 1, k)
    if n >= 4:
        d = W.root_system("D", n)
        assert d.orbit_size(d.weight(W.fundamental(n, n))) == 2 ** (n - 1)
        assert len(W.half_spin_weights(n)) == 2 ** (n - 1)


def test_dominant_weights_of_adjoint():
    # the adjoint module of A_3 has dominant weights λ1+λ3 and 0
    assert W.dominant_weights("A", 3, (1, 0, 1)) == [(1, 0, 1), (0, 0, 0)]


@st.composite
def signed_permutation(draw, rank):
    perm = draw(st.permutations(range(rank)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=rank, max_size=rank))
    return perm, signs


@given(st.sampled_from([("B", 3), ("C", 3), ("C", 4), ("B", 4)]), st.data())
@settings(max_examples=80, deadline=None)
def test_r_mu_is_weyl_invariant(kr, data):
    kind, rank = kr
    rs = W.root_system(kind, rank)
    labels = data.draw(st.lists(st.integers(0, 2), min_size=rank, max_size=rank))
    mu = rs.weight(labels)
    perm, signs = data.draw(signed_permutation(rank))
    image = tuple(signs[i] * mu[perm[i]] for i in range(rank))
    assert W.r_mu(kind, rank, image, labels=False) == W.r_mu(kind, rank, mu, labels=False)
    assert W.r_mu(kind, rank, image, long=True, labels=False) == W.r_mu(kind, rank, mu, long=True, labels=False)


@given(st.integers(2, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_r_mu_weyl_invariant_type_a(n, data):
    rs = W.root_system("A", n)
    labels = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    mu = rs.weight(labels)
    perm = data.draw(st.permutations(range(n + 1)))
    image = tuple(mu[i] for i in perm)
    assert W.r_mu("A", n, image, labels=False) == W.r_mu("A", n, mu, labels=False)


def test_r_mu_of_zero_weight_vanishes():
    assert W.r_mu("C", 4, (0, 0, 0, 0)) == 0


@pytest.mark.parametrize("n", range(5, 22))
def test_a_lambda3_row(n):
    assert W.s_lambda("A", n, W.fundamental(n, 3)).bound == Fraction((n - 1) * (n - 2), 2)


def test_codim_lower_bound_kinds():
    lam = W.fundamental(4, 4)
    assert W.codim_lower_bound("B", 4, lam, "semisimple") == 8
    assert W.codim_lower_bound("B", 4, lam, "long-root unipotent") == 4
    assert W.codim_lower_bound("B", 4, lam, "unipotent") == 4
    with pytest.raises(W.WeightError):
        W.codim_lower_bound("D", 5, W.fundamental(5, 5), "long-root unipotent")
    with pytest.raises(W.WeightError):
        W.codim_lower_bound("D", 5, W.fundamental(5, 5), "mystery")


def test_net_census_d6_and_d5():
    assert W.spin_net_census(6, "(A1)^(2)") == {2: 16}
    assert W.spin_net_census(5, "(A1^2)^(1)") == {4: 1, 2: 4, 1: 4}
    for n, tag in [(5, "A1"), (6, "(A1^3)^(1)"), (6, "(A1^3)^(2)"), (5, "(A1^2)^(2)")]:
        census = W.spin_net_census(n, tag)
        assert sum(k * v for k, v in census.items()) == 2 ** (n - 1)


def test_net_codim_bounds():
    assert W.net_codim_bound(5, "(A1^2)^(1)") == 6
    assert W.d56_codim(6, "semisimple") == W.net_codim_bound(6, "(A1^2)^(2)")
    assert W.d56_codim(6, "unipotent-nonroot") == 12
    assert W.d56_codim(6, "a2") == 8
    with pytest.raises(W.WeightError):
        W.d56_codim(7, "semisimple")
    with pytest.raises(W.WeightError):
        W.subsystem(5, "(A1^3)^(1)")


def test_d6_spin_inequality_fails():
    assert W.d6_spin_check(2) is False


def test_covering_inequality_trivial_cases():
    # the identity alone fixes everything
    assert W.covering_inequality_check(4, 3, [(1, 4)])
    assert not W.covering_inequality_check(4, 3, [(10, 3)])
    assert W.covering_inequality_check(4, 3, [(3**6, 3)])


def test_alpha_bounds():
    with pytest.raises(W.ExcludedCase):
        W.alpha_bound("U", 4, 2)
    assert W.alpha_bound("U", 4) == 6
    assert W.fixed_dim_cap(5, 6) >= 3
    assert W.alpha_bound("U", 5, 2) == 5
    assert W.alpha_bound("PSp", 8, 4) == 9
    assert W.alpha_bound("PSp", 4, 3) == 5
    assert W.alpha_bound("U", 2, 7) == 4
    with pytest.raises(W.ExcludedCase):
        W.alpha_bound("U", 2, 9)
    with pytest.raises(W.WeightError):
        W.alpha_bound("PSp", 6)
    with pytest.raises(W.WeightError):
        W.alpha_bound("E", 6, 2)


def test_alpha_caps_cover_the_u5_2_fixed_spaces():
    # on the natural 5-dimensional module of SU_5(2), transvections fix a 4-space
    assert W.fixed_dim_cap(5, W.alpha_bound("U", 5, 2)) >= 4
    cap10 = W.fixed_dim_cap(10, W.alpha_bound("U", 5, 2))
    fake = [EnumeratedClass(lab, 2, 1) for lab in ("2A", "2B", "2C", "5A", "11A", "11B")]
    assert max(d for _, d in u5_2_fixed_space_classes(fake)) <= cap10


@given(st.integers(1, 200), st.integers(2, 12))
def test_fixed_dim_cap_is_floor(d, alpha):
    cap = W.fixed_dim_cap(d, alpha)
    assert Fraction(cap) <= Fraction(alpha - 1, alpha) * d < cap + 1


def test_abd_filter_and_exponent():
    assert W.crude_exponent(10, 4) == 18
    assert W.abd_filter(1, 2, 4, 10)
    assert not W.abd_filter(100, 2, 4, 10)
