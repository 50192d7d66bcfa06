import numpy as np

from basecert import census as cs
from basecert.matgrp.groups import GroupSpec, gu_order, su_order


def test_order3_patterns():
    pats = cs._order3_patterns(5)
    assert len(pats) == 6
    assert all(sum(p) == 5 and (p[1] - p[2]) % 3 == 0 for p in pats)


def test_centralizer_of_identity_and_diagonal():
    spec = GroupSpec("SU", 3, 2)
    F = spec.field
    assert cs.centralizer_order(F, np.eye(3, dtype=np.int64), spec.form, max_dim=9) == su_order(3, 2)
    w = F.gen
    x = np.diag([1, w, F.mul(w, w)])
    # a regular diagonal element: centralizer is the diagonal torus of SU_3(2)
    assert cs.centralizer_order(F, x, spec.form) == 9


def test_class_sizes(su5_2):
    size = {c.label: c.size for c in su5_2}
    order = su_order(5, 2)
    assert size["2A"] == 165
    # 2B: centralizer q^8 |GU_2(2)| |GU_1(2)| modulo the determinant
    assert size["2B"] == order * 3 // (2**8 * gu_order(2, 2) * gu_order(1, 2))
    assert sorted(c.size for c in su5_2 if c.order == 3) == [176, 176, 3520, 3520, 7040, 42240]
    assert size["5A"] == 912384
    assert size["11A"] == size["11B"] == 1244160
    assert size["2C"] == 19008
    for c in su5_2:
        if c.label != "2C":
            assert order % c.size == 0


def test_class_counts(su5_2):
    counts = {}
    for c in su5_2:
        if c.label != "2C":
            counts[c.order] = counts.get(c.order, 0) + 1
    assert counts == cs.EXPECTED_CLASS_COUNTS


def test_fixed_space_rows(su5_2):
    rows = cs.u5_2_fixed_space_classes(su5_2)
    assert rows == [(165, 2), (165, 8), (2970, 6), (2970, 4), (19008, 5), (19008, 5),
                    (912384, 2), (2488320, 0), (56672, 8), (1, 0)]


def test_covering_check_fails(su5_2):
    assert cs.u5_2_covering_check(su5_2) is False
