"""One test per acceptance criterion, each reporting a PASS/FAIL line."""

import time
from fractions import Fraction

from basecert import bases as B
from basecert import certifier as C
from basecert import classdata as cd
from basecert import fpr
from basecert import weights as W
from basecert.census import u5_2_covering_check
from basecert.matgrp.classreps import representative
from basecert.oracle import census_oracle

SWEEP = [(n, q) for n in (6, 8, 10, 12) for q in (2, 3, 4, 5)]


def test_criterion_01_m_lambda_table(verdict):
    t0 = time.perf_counter()
    f = W.fundamental
    rows = [(W.s_lambda("A", n, f(n, 3)).bound, Fraction((n - 1) * (n - 2), 2)) for n in range(5, 22)]
    rows += [
        (W.s_lambda("A", 7, f(7, 4)).bound, 20),
        (W.s_lambda("C", 3, f(3, 3)).bound, 4),
        (W.s_lambda("C", 4, f(4, 3), p=3).bound, 12),
        (W.s_lambda("C", 4, f(4, 4)).bound, 13),
        (W.s_lambda("C", 5, f(5, 3), p=2).bound, 24),
    ]
    rows += [(W.s_lambda("D", n, f(n, n)).bound, 2 ** (n - 3)) for n in (5, 6)]
    rows += [(W.s_lambda("B", n, f(n, n)).bound, 2 ** (n - 2)) for n in (3, 4, 5)]
    elapsed = time.perf_counter() - t0
    ok = all(a == b for a, b in rows) and elapsed < 1
    assert verdict("criterion 1 (M_lambda table)", ok, f"{len(rows)} values, {elapsed:.2f}s")


def test_criterion_02_net_census(verdict):
    t0 = time.perf_counter()
    d6 = W.spin_net_census(6, "(A1)^(2)")
    d5 = W.spin_net_census(5, "(A1^2)^(1)")
    elapsed = time.perf_counter() - t0
    ok = d6 == {2: 16} and d5 == {4: 1, 2: 4, 1: 4} and elapsed < 1
    assert verdict("criterion 2 (Psi-net census)", ok, f"D6 {d6}, D5 {d5}")


def test_criterion_03_sp8_exception(verdict):
    t0 = time.perf_counter()
    ok = True
    for q in (2, 3):
        a = fpr.ActionSpec(8, q)
        (rec,) = [r for r in cd.enumerate_prime_order_classes(8, q) if fpr.is_sp8_exception(r.cls, 8)]
        fix = fpr.brute_fixed_count(representative(rec.cls, 8, q), a)
        ok &= rec.size == q**8 - 1
        ok &= fix * rec.size == (q**6 + q**2 - 2) * a.orbit_size
        ok &= fpr.split_count_exact(rec.cls, a) == q**6 + q**2 - 2
    for q in (2, 3, 4, 5):
        a = fpr.ActionSpec(8, q)
        failing = [r for r in cd.enumerate_prime_order_classes(8, q) if not fpr.ratio_test(r.cls, a).passed]
        ok &= len(failing) == 1 and fpr.is_sp8_exception(failing[0].cls, 8)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    assert verdict("criterion 3 (Sp8 exception)", ok, f"{elapsed:.1f}s")


def test_criterion_04_ratio_sweep(verdict):
    t0 = time.perf_counter()
    failures, total = [], 0
    for n, q in SWEEP:
        a = fpr.ActionSpec(n, q)
        for rec in cd.enumerate_prime_order_classes(n, q):
            total += 1
            v = fpr.ratio_test(rec.cls, a)
            if not v.passed:
                failures.append((n, q, v.exception))
    elapsed = time.perf_counter() - t0
    ok = [(n, q) for n, q, _ in failures] == [(8, q) for q in (2, 3, 4, 5)] and all(e for *_, e in failures)
    ok &= elapsed < 600
    assert verdict("criterion 4 (ratio sweep)", ok, f"{total} classes, {len(failures)} exceptions")


def test_criterion_05_eta(verdict):
    t0 = time.perf_counter()
    sp8 = {q: C.eta(8, q, bits=128) for q in (2, 3, 4, 5)}
    ok = all(v < Fraction(396, 1000) for v in sp8.values())
    ok &= all(C.eta(n, q, bits=128) < 1 for n, q in SWEEP)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    worst = max(float(v) for v in sp8.values())
    assert verdict("criterion 5 (eta bounds)", ok, f"max eta PGSp8 = {worst:.6f}")


def test_criterion_06_certificates(verdict):
    t0 = time.perf_counter()
    certs = [C.certify_base(n, q, 5) for n, q in SWEEP]
    ok = all(c.certified and c.q_upper < 1 for c in certs)
    ok &= all(C.verify_certificate(c) for c in certs)
    decomps = [C.sp8_decomposition(q) for q in (2, 3, 4, 5)]
    ok &= all(d.termwise and d.exceptional_matches and d.holds for d in decomps)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 600
    worst = max(float(c.q_upper) for c in certs)
    assert verdict("criterion 6 (base certificates)", ok, f"max Q = {worst:.4f}")


def test_criterion_07_census_oracle(verdict):
    t0 = time.perf_counter()
    res = census_oracle(6, 2)
    elapsed = time.perf_counter() - t0
    ok = res.group_order == 1451520 and res.matches
    ok &= res.brute_classes == res.formula_classes and res.brute_elements == res.formula_elements
    ok &= elapsed < 600
    assert verdict("criterion 7 (Sp6(2) census oracle)", ok,
                   f"{res.brute_classes} classes, {res.brute_elements} elements, {elapsed:.0f}s")


def test_criterion_08_explicit_bases(verdict):
    t0 = time.perf_counter()
    ok = True
    for cand in (B.gu4_base(3), B.gu4_base(4), B.gu5_base(2), B.gu5_base(3)):
        rep = B.verify_base(cand)
        q = cand.group.q
        ok &= rep.is_base and rep.stabilizer_order == q + 1
    for q in (2, 3):
        order, diag = B.stabilizer_is_diagonal(B.gu5_base(q).prefix(3))
        ok &= diag and order == (q + 1) ** 5
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    assert verdict("criterion 8 (explicit unitary bases)", ok, f"{elapsed:.0f}s")


def test_criterion_09_matrix_pairs_and_forms(verdict):
    t0 = time.perf_counter()
    reps = [B.adjoint_base(n, q0) for n in (3, 4, 5) for q0 in (2, 3)]
    ok = all(r.contained for r in reps)
    form = B.form_vector_stabilizer_check("alternating", 4, 2)
    ok &= form.stabilizer_order == 720
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 120
    assert verdict("criterion 9 (adjoint pair, form vector)", ok, f"|Stab| = {form.stabilizer_order}")


# (family, n, N) with N typed in from the dimension table
TABLE_SPOTS = [
    ("L", 2, Fraction(10, 3)), ("L", 3, Fraction(25, 3)), ("L", 4, Fraction(17)), ("L", 5, Fraction(65, 3)),
    ("L", 6, Fraction(37)), ("L", 7, Fraction(175, 3)), ("L", 8, Fraction(260, 3)), ("L", 10, Fraction(505, 3)),
    ("U", 3, Fraction(25, 3)), ("U", 5, Fraction(65, 3)),
    ("PSp", 6, Fraction(161, 6)), ("PSp", 8, Fraction(57)), ("PSp", 10, Fraction(209, 2)),
    ("PSp", 12, Fraction(520, 3)),
    ("POmega", 7, Fraction(161, 6)), ("POmega", 8, Fraction(40)), ("POmega", 9, Fraction(57)),
    ("POmega", 10, Fraction(235, 3)), ("POmega", 12, Fraction(136)),
]


def _spot_ok(family, n, N, q=3):
    top = -(-N.numerator // N.denominator)  # smallest integer d with d >= N
    return (W.dimension_threshold(family, n) == N and W.dimension_filter(family, n, q, top - 1)
            and not W.dimension_filter(family, n, q, top))


def test_criterion_10_inequality_engine(verdict, su5_2):
    t0 = time.perf_counter()
    u5 = u5_2_covering_check(su5_2)
    d6 = W.d6_spin_check(2)
    spots = [_spot_ok(*s) for s in TABLE_SPOTS]
    # the twentieth case: PΩ8+(2) with N = 40 + log_2 6, so d = 42 survives and 43 does not
    spots.append(W.dimension_filter("POmega", 8, 2, 42, omega8_plus=True)
                 and not W.dimension_filter("POmega", 8, 2, 43, omega8_plus=True))
    elapsed = time.perf_counter() - t0
    ok = u5 is False and d6 is False and len(spots) == 20 and all(spots) and elapsed < 300
    assert verdict("criterion 10 (inequality engine)", ok,
                   f"U5(2) {u5}, D6 spin {d6}, table spots {sum(spots)}/20")
