import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from basecert import classdata as cd
from basecert.gf import field
from basecert.matgrp import matrix as M
from basecert.matgrp.chain import (
    ResourceLimitExceeded,
    StabilizerChain,
    SubspaceAction,
    orbit_and_stabilizer,
    pointwise_stabilizer_order,
)
from basecert.matgrp.classreps import representative
from basecert.matgrp.elements import classify_prime_order, jordan_partition
from basecert.matgrp.enumerate import conjugacy_orbit_size, enumerate_group
from basecert.matgrp.forms import preserves_form, similitude_multiplier
from basecert.matgrp.groups import GroupSpec, gl_order, sp_order, standard_generators


def _random_invertible(F, n, rng):
    while True:
        A = rng.integers(0, F.q, size=(n, n))
        if M.det(F, A):
            return A


@st.composite
def square_matrices(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 9]))
    n = draw(st.integers(1, 4))
    vals = draw(st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n))
    return field(q), np.array(vals, dtype=np.int64).reshape(n, n)


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity_and_inverse(t):
    F, A = t
    n = A.shape[0]
    N = M.nullspace(F, A)
    assert M.rank(F, A) + len(N) == n
    if len(N):
        assert not M.matmul(F, A, M.transpose(N)).any()
    if M.det(F, A):
        assert M.is_identity(M.matmul(F, A, M.inverse(F, A)))
    else:
        assert M.rank(F, A) < n


@given(square_matrices(), st.integers(0, 2**31))
@settings(max_examples=80, deadline=None)
def test_det_is_multiplicative(t, seed):
    F, A = t
    B = np.random.default_rng(seed).integers(0, F.q, size=A.shape)
    assert M.det(F, M.matmul(F, A, B)) == F.mul(M.det(F, A), M.det(F, B))


@pytest.mark.parametrize("family,n,q", [
    ("SL", 2, 3), ("SL", 3, 2), ("SL", 3, 3), ("GL", 2, 4), ("Sp", 4, 2), ("Sp", 4, 3),
    ("GSp", 4, 3), ("SU", 3, 2), ("SU", 3, 3), ("GU", 3, 2), ("SU", 4, 2),
    ("Omega", 5, 3), ("SO", 4, 3, ), ("Sp", 6, 2),
])
def test_generators_reach_group_order(family, n, q):
    sign = "+" if family in ("SO", "Omega") and n % 2 == 0 else None
    spec = GroupSpec(family, n, q, sign)
    gens = standard_generators(spec)
    for g in gens:
        if spec.form is not None and family not in ("GSp",):
            assert preserves_form(spec.field, g, spec.form)
    assert StabilizerChain(spec.field, gens).order == spec.order


def test_chain_membership():
    spec = GroupSpec("Sp", 4, 3)
    F = spec.field
    ch = StabilizerChain(F, standard_generators(spec))
    assert ch.contains(standard_generators(spec)[0])
    assert not ch.contains(np.diag([2, 1, 1, 1]))


def test_chain_respects_point_limit():
    spec = GroupSpec("SL", 4, 3)
    with pytest.raises(ResourceLimitExceeded):
        StabilizerChain(spec.field, standard_generators(spec), limit=10)


def test_orbit_stabilizer_on_lines():
    spec = GroupSpec("SL", 3, 3)
    F = spec.field
    orbit, stab = orbit_and_stabilizer(F, standard_generators(spec), np.array([1, 0, 0]), "lines")
    assert orbit == 13
    assert StabilizerChain(F, stab).order * orbit == spec.order


def test_pointwise_stabilizer_of_frame_is_scalar():
    spec = GroupSpec("GL", 3, 4)
    F = spec.field
    pts = [np.eye(3, dtype=np.int64)[i] for i in range(3)] + [np.ones(3, dtype=np.int64)]
    order, mod = pointwise_stabilizer_order(F, standard_generators(spec), pts, "lines", order_hint=spec.order)
    assert order == 3 and mod == 1


@pytest.mark.parametrize("q,n,k", [(2, 5, 2), (3, 4, 2), (4, 5, 3), (5, 4, 1), (3, 6, 4)])
def test_plucker_keys_ignore_choice_of_basis(q, n, k):
    F = field(q)
    act = SubspaceAction(F)
    rng = np.random.default_rng(q * 100 + n * 10 + k)
    for _ in range(20):
        while True:
            P = rng.integers(0, q, size=(k, n))
            if M.rank(F, P) == k:
                break
        A = _random_invertible(F, k, rng)
        assert act.key(P) == act.key(M.matmul(F, A, P))
        Q = rng.integers(0, q, size=(k, n))
        if M.rank(F, Q) == k and M.rank(F, np.vstack([P, Q])) > k:
            assert act.key(P) != act.key(Q)


def test_batched_keys_match_single():
    F = field(3)
    act = SubspaceAction(F)
    rng = np.random.default_rng(1)
    cands = (rng.integers(0, 3, size=(2, 5)) for _ in range(30))
    pts = np.array([p for p in cands if M.rank(F, p) == 2])
    assert act.key_batch(pts) == [act.key(p) for p in pts]


def test_enumerate_group_sizes():
    spec = GroupSpec("Sp", 4, 2)
    assert len(enumerate_group(spec.field, standard_generators(spec))) == 720
    spec = GroupSpec("GSp", 4, 3)
    keys = enumerate_group(spec.field, standard_generators(spec), projective=True)
    assert len(keys) == spec.order // 2


def test_transvection_class_size_in_sl3_2():
    spec = GroupSpec("SL", 3, 2)
    t = np.eye(3, dtype=np.int64)
    t[0, 1] = 1
    assert conjugacy_orbit_size(spec.field, standard_generators(spec), t) == 21


def test_commutant_of_scalar_is_everything():
    F = field(3)
    assert len(M.commutant(F, [np.eye(3, dtype=np.int64)])) == 9


def test_group_order_formulas():
    assert gl_order(2, 3) == 48
    assert sp_order(6, 2) == 1451520


@pytest.mark.parametrize("n,q", [(4, 2), (4, 3), (6, 2), (6, 3), (4, 5), (6, 4)])
def test_class_representatives_round_trip(n, q):
    spec = GroupSpec("GSp", n, q)
    for rec in cd.enumerate_prime_order_classes(n, q):
        g = representative(rec.cls, n, q)
        assert similitude_multiplier(spec.field, g, spec.form) is not None
        assert classify_prime_order(g, spec) == rec.cls


def test_jordan_partition_of_transvection():
    F = field(5)
    t = np.eye(4, dtype=np.int64)
    t[0, 3] = 1
    assert jordan_partition(F, t) == (2, 1, 1)
