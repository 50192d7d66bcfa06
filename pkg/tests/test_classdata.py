from fractions import Fraction

import pytest

from basecert import classdata as cd
from basecert.classdata import (
    InadmissibleClass,
    SemisimpleInvolutionClass,
    SemisimpleOddClass,
    UnipotentInvolutionClass,
    UnipotentOddClass,
)
from basecert.matgrp.groups import sp_order

GRID = [(n, q) for n in (4, 6, 8, 10, 12) for q in (2, 3, 4, 5, 7, 8, 9)]


@pytest.mark.parametrize("n,q", GRID)
def test_orbit_stabilizer(n, q):
    # |PGSp_n(q)| = |Sp_n(q)| for every q
    for rec in cd.enumerate_prime_order_classes(n, q):
        assert rec.size * rec.centralizer == sp_order(n, q)
        assert rec.count >= 1
        cd.validate(rec.cls, n, q)


def test_sp4_2_is_s6():
    # S6: 75 involutions, 80 elements of order 3, 144 of order 5
    assert cd.prime_order_element_count(4, 2) == 299
    by_order = {}
    for rec in cd.enumerate_prime_order_classes(4, 2):
        by_order[rec.cls.order] = by_order.get(rec.cls.order, 0) + rec.elements
    assert by_order == {2: 75, 3: 80, 5: 144}


@pytest.mark.parametrize("n,q", [(4, 5), (4, 7), (6, 7), (6, 11)])
def test_unipotent_count_matches_steinberg(n, q):
    # when p > n every non-trivial unipotent element has order p
    total = sum(rec.elements for rec in cd.enumerate_prime_order_classes(n, q)
                if isinstance(rec.cls, UnipotentOddClass))
    assert total + 1 == q ** (n * n // 2)


def test_transvection_class_dimension():
    for n in (4, 6, 8, 10):
        assert cd.dim_class(UnipotentInvolutionClass("b", 1), n) == n
        assert cd.dim_class(UnipotentOddClass(3, (2,) + (1,) * (n - 2), ((2, 0),)), n) == n


def test_transvections_fuse_in_pgsp():
    u = UnipotentOddClass(3, (2, 1, 1, 1, 1, 1, 1), ((2, 1),))
    assert cd.unipotent_fused(u)
    assert cd.canonical_unipotent(u).forms == ((2, 0),)
    assert cd.class_size(u, 8, 3) == 3**8 - 1


@pytest.mark.parametrize("cls,n,q", [
    (SemisimpleOddClass(3, 2, 2, (1,)), 4, 3),          # r = p
    (SemisimpleOddClass(5, 4, 2, (1,)), 4, 3),          # sizes do not add up
    (SemisimpleOddClass(5, 2, 0, (1,)), 4, 3),          # wrong i
    (SemisimpleInvolutionClass("t", 3), 8, 3),          # odd s
    (SemisimpleInvolutionClass("t", 2), 8, 4),          # q even
    (SemisimpleInvolutionClass("sp2", 3, False), 6, 3),  # n/2 odd
    (UnipotentOddClass(3, (4, 2, 2)), 8, 3),             # part larger than p
    (UnipotentOddClass(5, (3, 1)), 4, 5),                 # odd part, odd multiplicity
    (UnipotentInvolutionClass("a", 1), 6, 2),
    (UnipotentInvolutionClass("b", 2), 6, 2),
    (UnipotentInvolutionClass("c", 4), 6, 2),
])
def test_inadmissible(cls, n, q):
    with pytest.raises(InadmissibleClass):
        cd.validate(cls, n, q)


def test_bad_dimensions():
    with pytest.raises(InadmissibleClass):
        cd.enumerate_prime_order_classes(5, 3)
    with pytest.raises(InadmissibleClass):
        cd.enumerate_prime_order_classes(18, 3)


def test_semisimple_count_is_orbit_choice():
    # r = 7, q = 2: i = 3, two inverse-pair orbits of size 3; one orbit chosen
    cls = SemisimpleOddClass(7, 3, 0, (1,))
    assert cd.class_count(cls, 6, 2) == 1
    cls = SemisimpleOddClass(13, 3, 0, (1,))
    assert cd.class_count(cls, 6, 3) == 2


def test_nx_bound_is_at_least_half_the_class():
    for n in (6, 8, 10, 12):
        for q in (2, 3):
            for rec in cd.enumerate_prime_order_classes(n, q):
                b = cd.nx_bound(rec.cls, n, 2 if n % 4 == 0 else 1)
                assert b >= Fraction(rec.dim, 2)
    with pytest.raises(ValueError):
        cd.nx_bound(UnipotentInvolutionClass("b", 1), 8, 3)


def test_census_table_columns():
    lines = cd.census_table(4, 3).splitlines()
    assert tuple(lines[0].split("\t")) == cd.CENSUS_HEADER
    assert len(lines) == 1 + len(cd.enumerate_prime_order_classes(4, 3))
