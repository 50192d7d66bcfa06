import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from basecert.gf import GF, FieldElem, FieldError, field, field_arith, prime_power, subfield_embedding

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@st.composite
def field_triple(draw):
    q = draw(st.sampled_from(ORDERS))
    F = field(q)
    a, b, c = (draw(st.integers(0, q - 1)) for _ in range(3))
    return F, a, b, c


@given(field_triple())
@settings(max_examples=300, deadline=None)
def test_field_axioms(t):
    F, a, b, c = t
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1


@given(field_triple())
@settings(max_examples=100, deadline=None)
def test_vectorized_ops_agree_with_scalar(t):
    F, a, b, _ = t
    xs = np.arange(F.q)
    assert F.vadd(xs, b).tolist() == [F.add(int(x), b) for x in xs]
    assert F.vmul(xs, a).tolist() == [F.mul(int(x), a) for x in xs]
    assert F.vneg(xs).tolist() == [F.neg(int(x)) for x in xs]


def test_multiplicative_group_is_cyclic():
    for q in ORDERS:
        F = field(q)
        orders = [F.order(a) for a in F.nonzero()]
        assert max(orders) == q - 1
        assert F.order(F.gen) == q - 1 or q == 2


@pytest.mark.parametrize("q", [4, 9, 16, 25])
def test_conjugation_is_involutive_automorphism(q):
    F = field(q)
    q0 = F.base_order
    for a in F.elements():
        assert F.conj(F.conj(a)) == a
        assert F.conj(a) == F.pow(a, q0)
        for b in range(F.q):
            assert F.conj(F.mul(a, b)) == F.mul(F.conj(a), F.conj(b))


def test_squares():
    F = field(9)
    assert sum(F.is_square(a) for a in F.nonzero()) == 4
    assert not F.is_square(F.nonsquare())


@pytest.mark.parametrize("q0,q", [(2, 4), (2, 8), (4, 16), (3, 9), (5, 25), (4, 4)])
def test_subfield_embedding_is_homomorphism(q0, q):
    F0, F = field(q0), field(q)
    emb = subfield_embedding(q0, q)
    assert len(set(emb.tolist())) == q0
    for a in range(q0):
        for b in range(q0):
            assert emb[F0.add(a, b)] == F.add(int(emb[a]), int(emb[b]))
            assert emb[F0.mul(a, b)] == F.mul(int(emb[a]), int(emb[b]))


def test_subfield_embedding_rejects_non_subfield():
    with pytest.raises(FieldError):
        subfield_embedding(4, 8)


def test_prime_power_rejects():
    with pytest.raises(FieldError):
        prime_power(6)
    assert prime_power(27) == (3, 3)


def test_field_elem_operators():
    F = field(8)
    x, y = FieldElem(F, 3), FieldElem(F, 5)
    assert (x * y) / y == x
    assert field_arith(x, y, "add") == x + y
    assert field_arith(x, None, "inv") * x == FieldElem(F, 1)
    with pytest.raises(FieldError):
        x + FieldElem(field(4), 1)
    with pytest.raises(FieldError):
        FieldElem(F, 8)


def test_fields_are_shared():
    assert field(16) == GF(16)
    assert hash(field(16)) == hash(GF(16))
