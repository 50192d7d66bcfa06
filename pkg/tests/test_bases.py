import numpy as np
import pytest

from basecert import bases as B
from basecert.matgrp.groups import GroupSpec, sp_order


@pytest.mark.parametrize("q,mod", [(2, 3), (3, 64), (4, 5)])
def test_gu4_base_and_its_prefix(q, mod):
    cand = B.gu4_base(q)
    assert cand.c == (4 if q % 2 else 5)
    rep = B.verify_base(cand)
    assert rep.is_base and rep.verdict == "BASE"
    assert rep.stabilizer_order == q + 1
    short = B.verify_base(cand.prefix(cand.c - 1))
    assert short.modulo_scalars == mod and not short.is_base


def test_gu5_base_q2_and_diagonal_prefix():
    cand = B.gu5_base(2)
    assert B.verify_base(cand).is_base
    order, diag = B.stabilizer_is_diagonal(cand.prefix(3))
    assert diag and order == 3**5


def test_gu5_planes_are_distinct_and_nondegenerate():
    cand = B.gu5_base(2)
    keys = {np.asarray(p).tobytes() for p in cand.points}
    assert len(keys) == 5
    assert all(np.atleast_2d(p).shape == (2, 5) for p in cand.points)


def test_empty_candidate_is_not_a_base():
    rep = B.verify_base(B.BaseCandidate(GroupSpec("GU", 4, 3), "lines", [], 0))
    assert rep.verdict == "NOT A BASE"


def test_random_candidate_reproducible():
    G = GroupSpec("SU", 4, 2)
    a, b = B.random_candidate(G, 6, seed=3), B.random_candidate(G, 6, seed=3)
    assert all(np.array_equal(x, y) for x, y in zip(a.points, b.points))
    assert B.verify_base(B.random_candidate(G, 6, seed=0)).is_base


def test_candidate_validation():
    G = GroupSpec("GU", 4, 2)
    with pytest.raises(ValueError):
        B.BaseCandidate(G, "lines", [[1, 0, 0, 0]], 2)
    with pytest.raises(ValueError):
        B.BaseCandidate(G, "lines", [[0, 0, 0, 0]], 1)
    with pytest.raises(ValueError):
        B.BaseCandidate(G, "subspaces", [[[1, 0, 0, 0], [1, 0, 0, 0]]], 1)
    cand = B.gu4_base(2)
    assert len(cand.describe()) == 5


@pytest.mark.parametrize("n,q0", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_adjoint_containment(n, q0):
    rep = B.adjoint_base(n, q0)
    assert rep.contained
    assert rep.dimension == 2


def test_adjoint_over_larger_field():
    rep = B.adjoint_base(3, 4, q0=2)
    assert rep.contained and rep.dimension == 2


def test_adjoint_rejects_non_generating_pair():
    I = np.eye(2, dtype=np.int64)
    with pytest.raises(ValueError):
        B.adjoint_base(3, 3, X=I, Y=I)
    with pytest.raises(ValueError):
        B.adjoint_base(2, 3)


def test_generating_pair():
    X, Y = B.sl_generating_pair(3, 2)
    assert B.generates_sl(X, Y, 2)
    assert not B.generates_sl(X, X, 2)


@pytest.mark.parametrize("kind,n,q,expected", [
    ("alternating", 4, 2, 720),
    ("alternating", 2, 3, 24),
    ("symmetric", 4, 3, 576),
    ("symmetric", 3, 3, 24),
])
def test_form_vector_stabilizers(kind, n, q, expected):
    rep = B.form_vector_stabilizer_check(kind, n, q)
    assert rep.stabilizer_order == expected and rep.matches


def test_form_vector_errors():
    with pytest.raises(ValueError):
        B.form_vector_stabilizer_check("alternating", 3, 3)
    with pytest.raises(ValueError):
        B.form_vector_stabilizer_check("symmetric", 4, 2)
    with pytest.raises(ValueError):
        B.form_vector_stabilizer_check("hermitian", 4, 3)
    assert sp_order(2, 3) == 24
