from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from basecert import classdata as cd, fpr
from basecert.matgrp.groups import sp_order
from basecert.oracle import fixed_point_oracle

SWEEP = [(n, q) for n in (6, 8, 10, 12) for q in (2, 3, 4, 5)]

# classes where a closed-form estimate is beaten by the exact value:
# (n, q, invariants, which estimate)
UNSOUND = {
    (6, 3, "inv gl+ s=3 outer", "meet"),
    (6, 5, "inv gl+ s=3", "meet"),
    (6, 5, "inv gl- s=3 outer", "meet"),
    (8, 3, "inv gl+ s=4 outer", "meet"),
    (8, 3, "unip (2^4) disc=0", "size"),
    (8, 3, "unip (2^4) disc=1", "size"),
    (8, 5, "inv gl+ s=4", "meet"),
    (8, 5, "inv gl- s=4 outer", "meet"),
    (8, 5, "unip (2^4) disc=0", "size"),
    (8, 5, "unip (2^4) disc=1", "size"),
    (8, 5, "unip (4^2) disc=0", "size"),
    (8, 5, "unip (4^2) disc=1", "size"),
    (10, 3, "inv gl+ s=5 outer", "meet"),
    (10, 3, "inv gl- s=5", "meet"),
    (10, 5, "inv gl+ s=5", "meet"),
    (10, 5, "inv gl- s=5 outer", "meet"),
    (12, 3, "inv gl+ s=6 outer", "meet"),
    (12, 3, "inv gl- s=6", "meet"),
    (12, 3, "inv sp2 s=6 outer", "meet"),
    (12, 3, "unip (2^6) disc=0", "size"),
    (12, 3, "unip (2^6) disc=1", "size"),
    (12, 5, "inv gl+ s=6", "meet"),
    (12, 5, "inv gl- s=6 outer", "meet"),
    (12, 5, "inv sp2 s=6 outer", "meet"),
    (12, 5, "unip (2^6) disc=0", "size"),
    (12, 5, "unip (2^6) disc=1", "size"),
}


def test_action_parameters():
    assert fpr.ActionSpec(6, 3).r == 2
    assert fpr.ActionSpec(8, 3).r == 2
    assert fpr.ActionSpec(10, 3).r == 4
    assert fpr.ActionSpec(12, 3).r == 4
    with pytest.raises(ValueError):
        fpr.ActionSpec(4, 3)


def test_grassmannian_size():
    assert fpr.grassmannian_size(2, 4, 2) == 35
    assert fpr.grassmannian_size(3, 5, 1) == 121
    assert fpr.grassmannian_size(5, 6, 0) == 1


@pytest.mark.parametrize("n,q", [(6, 2), (6, 3)])
def test_brute_force_fixed_points_match_formula(n, q):
    rows = fixed_point_oracle(n, q)
    assert rows and all(r.matches for r in rows), [r for r in rows if not r.matches]


@pytest.mark.parametrize("n,q", SWEEP)
def test_fixed_point_identity(n, q):
    # fix(x) * |x^G| = |x^G ∩ H| * |Ω|
    a = fpr.ActionSpec(n, q)
    for rec in cd.enumerate_prime_order_classes(n, q):
        assert fpr.fixed_points_exact(rec.cls, a) * rec.size == fpr.split_count_exact(rec.cls, a) * a.orbit_size


@pytest.mark.parametrize("n,q", SWEEP)
def test_ratio_decision_agrees_with_high_precision_logs(n, q):
    a = fpr.ActionSpec(n, q)
    mpmath.mp.prec = 200
    for rec in cd.enumerate_prime_order_classes(n, q):
        meet = fpr.split_count_exact(rec.cls, a)
        if meet == 0:
            assert fpr.ratio_passes(meet, rec.size)
            continue
        lhs = 15 * mpmath.log(meet)
        rhs = 11 * mpmath.log(rec.size)
        assert abs(lhs - rhs) > mpmath.mpf(2) ** -150
        assert fpr.ratio_passes(meet, rec.size) == (lhs < rhs)


@pytest.mark.parametrize("n,q", SWEEP)
def test_bounds_sound_outside_documented_cases(n, q):
    a = fpr.ActionSpec(n, q)
    seen = set()
    for rec in cd.enumerate_prime_order_classes(n, q):
        label = rec.cls.label()
        if fpr.fixed_count_bound(rec.cls, a) < fpr.split_count_exact(rec.cls, a):
            seen.add((n, q, label, "meet"))
        if fpr.class_size_lower_bound(rec.cls, n, q) > rec.size:
            seen.add((n, q, label, "size"))
    assert seen == {u for u in UNSOUND if u[:2] == (n, q)}


@pytest.mark.parametrize("n,q", SWEEP)
def test_only_sp8_transvections_fail(n, q):
    a = fpr.ActionSpec(n, q)
    failures = [fpr.ratio_test(rec.cls, a) for rec in cd.enumerate_prime_order_classes(n, q)]
    failures = [v for v in failures if not v.passed]
    if n == 8:
        assert len(failures) == 1 and failures[0].exception
        assert failures[0].size == q**8 - 1
        assert failures[0].meet == q**6 + q**2 - 2
    else:
        assert failures == []


@given(st.integers(0, 10**30), st.integers(2, 10**30))
@settings(max_examples=200)
def test_ratio_passes_is_exact_power_comparison(meet, size):
    assert fpr.ratio_passes(meet, size) == (Fraction(meet) ** 15 < Fraction(size) ** 11)


def test_brute_count_respects_limit():
    from basecert.matgrp.chain import ResourceLimitExceeded

    a = fpr.ActionSpec(6, 3)
    g = np.eye(6, dtype=np.int64)
    with pytest.raises(ResourceLimitExceeded):
        fpr.brute_fixed_count(g, a, limit=10)


def test_identity_fixes_every_point():
    a = fpr.ActionSpec(6, 2)
    assert fpr.brute_fixed_count(np.eye(6, dtype=np.int64), a) == a.orbit_size
    assert a.orbit_size == sp_order(6, 2) // (sp_order(2, 2) * sp_order(4, 2))
