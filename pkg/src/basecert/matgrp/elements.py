"""Invariants of individual matrices: Jordan partitions and prime-order class data."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..gf import GF, field
from . import matrix as M
from .forms import FormSpec, similitude_multiplier


class ClassificationError(ValueError):
    pass


def jordan_partition(F: GF, g) -> tuple[int, ...]:
    """Jordan block sizes of a unipotent matrix, in descending order."""
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[0]
    N = M.sub(F, g, np.eye(n, dtype=np.int64))
    ranks = [n]
    P = np.eye(n, dtype=np.int64)
    while ranks[-1]:
        if len(ranks) > n:
            raise ClassificationError("matrix is not unipotent")
        P = M.matmul(F, P, N)
        ranks.append(M.rank(F, P))
        if ranks[-1] == ranks[-2]:
            raise ClassificationError("matrix is not unipotent")
    # blocks of size >= k number rank(N^{k-1}) - rank(N^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        parts += [k] * (c - nxt)
    return tuple(sorted(parts, reverse=True))


def _scale_to_order(F: GF, g, r: int, form: FormSpec | None):
    """A scalar multiple c*g with (c*g)^r = I and multiplier 1, if one exists."""
    for c in F.nonzero():
        h = M.scale(F, c, g)
        if not M.is_identity(M.matpow(F, h, r)):
            continue
        if form is None or similitude_multiplier(F, h, form) == 1:
            return h
    return None


def _prime_factor_order(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _symmetric_discriminant(F: GF, S) -> tuple[int, int]:
    """(rank, discriminant class) of a symmetric matrix over GF(q), q odd.

    The class is 0 when the product of the non-zero diagonal entries after
    congruence diagonalisation is a square, and 1 otherwise.
    """
    A = np.array(S, dtype=np.int64, copy=True)
    n = A.shape[0]
    det = 1
    rank = 0
    k = 0
    while k < n:
        sub = A[k:, k:]
        diag = np.flatnonzero(np.diag(sub))
        if diag.size == 0:
            nz = np.argwhere(sub != 0)
            if nz.size == 0:
                break
            i, j = (int(x) + k for x in nz[0])
            # v_i <- v_i + v_j gives diagonal entry 2 A_ij != 0
            A[i] = F.vadd(A[i], A[j])
            A[:, i] = F.vadd(A[:, i], A[:, j])
            continue
        i = int(diag[0]) + k
        if i != k:
            A[[k, i]] = A[[i, k]]
            A[:, [k, i]] = A[:, [i, k]]
        piv = int(A[k, k])
        det = F.mul(det, piv)
        rank += 1
        inv = F.inv(piv)
        for t in range(k + 1, n):
            if A[t, k]:
                f = F.neg(F.mul(int(A[t, k]), inv))
                A[t] = F.vadd(A[t], F.vmul(A[k], f))
                A[:, t] = F.vadd(A[:, t], F.vmul(A[:, k], f))
        k += 1
    return rank, 0 if F.is_square(det) else 1


def unipotent_form_discriminants(F: GF, u, gram) -> tuple[tuple[int, int], ...]:
    """Discriminants of the forms ω(v, v'·N^(j-1)) on the multiplicity spaces of even parts j.

    N = u - u^-1 is skew-adjoint for ω, so for even j the form is symmetric;
    its radical on ker N^j has codimension equal to the multiplicity of j.
    """
    u = np.asarray(u, dtype=np.int64)
    n = u.shape[0]
    N = M.sub(F, u, M.inverse(F, u))
    lam = jordan_partition(F, u)
    G = np.asarray(gram, dtype=np.int64)
    out = []
    for j in sorted({x for x in lam if x % 2 == 0}, reverse=True):
        a = lam.count(j)
        K = M.left_nullspace(F, M.matpow(F, N, j))
        Nj1 = M.matpow(F, N, j - 1)
        S = M.matmul(F, M.matmul(F, M.matmul(F, K, G), M.transpose(Nj1)), M.transpose(K))
        rank, disc = _symmetric_discriminant(F, S)
        if rank != a:
            raise ClassificationError("multiplicity space form has unexpected rank")
        out.append((j, disc))
    return tuple(out)


@lru_cache(maxsize=None)
def _irreducible_cached(q: int, r: int, i: int) -> np.ndarray:
    F = field(q)
    rng = np.random.default_rng(1000 * r + 10 * i + q)
    I = np.eye(i, dtype=np.int64)
    k = (q**i - 1) // r
    while True:
        C = np.zeros((i, i), dtype=np.int64)
        for t in range(i - 1):
            C[t, t + 1] = 1
        C[i - 1] = rng.integers(0, q, size=i)
        if C[i - 1, 0] == 0:
            continue
        B = M.matpow(F, C, k)
        if M.is_identity(M.matpow(F, B, r)) and M.rank(F, M.sub(F, B, I)) == i:
            B.setflags(write=False)
            return B


def irreducible_of_order(F: GF, r: int, i: int) -> np.ndarray:
    """An i x i matrix of order r with no eigenvalue 1, where i = ord_r(q).

    Every eigenvalue is a primitive r-th root of unity of degree i over GF(q),
    so the characteristic polynomial is irreducible.
    """
    return _irreducible_cached(F.q, r, i).copy()


def minimal_polynomial(F: GF, C) -> list[int]:
    """Monic minimal polynomial (constant term first) of a matrix acting irreducibly."""
    C = np.asarray(C, dtype=np.int64)
    i = C.shape[0]
    rows = [np.eye(i, dtype=np.int64)[0]]
    for _ in range(i):
        rows.append(M.matmul(F, rows[-1][None], C)[0])
    # a relation sum c_k v C^k = 0 with c_i = 1
    rel = M.left_nullspace(F, np.array(rows, dtype=np.int64))[0]
    lead = int(rel[-1])
    return [F.div(int(c), lead) for c in rel]


def _poly_at(F: GF, poly: list[int], g) -> np.ndarray:
    n = g.shape[0]
    I = np.eye(n, dtype=np.int64)
    acc = M.scale(F, poly[-1], I)
    for c in reversed(poly[:-1]):
        acc = M.add(F, M.matmul(F, acc, g), M.scale(F, c, I))
    return acc


def eigen_multiplicities(F: GF, g, r: int) -> tuple[int, int, dict[int, int]]:
    """For g of odd prime order r coprime to q: (i, ell, {k: multiplicity of ω^k}).

    i = ord_r(q), ω is an eigenvalue of ``irreducible_of_order(F, r, i)`` and
    multiplicities are eigenspace dimensions over GF(q^i).  The multiplicity
    of ω^k is dim ker f_k(g) / i, with f_k the minimal polynomial of ω^k.
    """
    from ..classdata import multiplicative_order

    i = multiplicative_order(F.q, r)
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[0]
    W = irreducible_of_order(F, r, i)
    mult = {}
    for k in range(1, r):
        f = minimal_polynomial(F, M.matpow(F, W, k))
        mult[k] = (n - M.rank(F, _poly_at(F, f, g))) // i
    ell = n - M.rank(F, M.sub(F, g, np.eye(n, dtype=np.int64)))
    return i, ell, mult


def _orbit_multiset(q: int, r: int, i: int, mult: dict[int, int]) -> tuple[int, ...]:
    seen = set()
    out = []
    for k in range(1, r):
        if k in seen:
            continue
        orbit = {k * pow(q, t, r) % r for t in range(i)}
        if i % 2:
            orbit |= {(-x) % r for x in orbit}
        seen |= orbit
        vals = {mult[x] for x in orbit}
        if len(vals) != 1:
            raise ClassificationError("eigenvalue multiplicities not constant on a Frobenius orbit")
        v = vals.pop()
        if v:
            out.append(v)
    return tuple(sorted(out, reverse=True))


def _involution_q_odd(F: GF, g, form: FormSpec, n: int):
    from ..classdata import SemisimpleInvolutionClass

    mu = similitude_multiplier(F, g, form)
    lam = int(M.matmul(F, g, g)[0, 0])
    kappa = F.div(lam, mu)
    if F.is_square(mu):
        c = F.inv(_sqrt(F, mu))
        h = M.scale(F, c, g)
        if kappa == 1:
            s = n - M.rank(F, M.sub(F, h, np.eye(n, dtype=np.int64)))
            s = min(s, n - s)
            return SemisimpleInvolutionClass("t", s)
        plus = F.q % 4 == 1
        return SemisimpleInvolutionClass("gl+" if plus else "gl-", n // 2, True)
    if kappa == 1:
        return SemisimpleInvolutionClass("sp2", n // 2, False)
    plus = F.q % 4 == 3
    return SemisimpleInvolutionClass("gl+" if plus else "gl-", n // 2, False)


def _sqrt(F: GF, a: int) -> int:
    for x in F.elements():
        if F.mul(x, x) == a:
            return x
    raise ClassificationError("not a square")


def _a_type(F: GF, g, gram) -> bool:
    A = M.matmul(F, np.asarray(gram, dtype=np.int64), M.transpose(g))
    return not np.any(np.diag(A)) and np.array_equal(A, A.T)


def classify_prime_order(g, spec):
    """Class descriptor (see classdata) of an element of prime order in PGSp_n(q).

    ``g`` may be any similitude of the form of ``spec``; scalar multiples give
    the same answer.
    """
    from ..classdata import (
        SemisimpleOddClass,
        UnipotentInvolutionClass,
        UnipotentOddClass,
        canonical_unipotent,
    )

    if spec.family not in ("Sp", "GSp"):
        raise ClassificationError("class descriptors are defined for symplectic groups")
    F = spec.field
    g = np.asarray(g, dtype=np.int64)
    n = spec.n
    if similitude_multiplier(F, g, spec.form) is None:
        raise ClassificationError("element is not a similitude of the symplectic form")
    r = M.projective_order(F, g, limit=F.q ** (n + 1))
    if not _prime_factor_order(r):
        raise ClassificationError(f"projective order {r} is not prime")
    if r == 2 and F.p != 2:
        return _involution_q_odd(F, g, spec.form, n)
    h = _scale_to_order(F, g, r, spec.form)
    if h is None:
        raise ClassificationError("no scalar multiple of order r in Sp")
    if r == F.p:
        lam = jordan_partition(F, h)
        if F.p == 2:
            l = sum(1 for x in lam if x == 2)
            if l % 2:
                return UnipotentInvolutionClass("b", l)
            return UnipotentInvolutionClass("a" if _a_type(F, h, spec.form.gram) else "c", l)
        forms = unipotent_form_discriminants(F, h, spec.form.gram)
        return canonical_unipotent(UnipotentOddClass(F.p, lam, forms))
    i, ell, mult = eigen_multiplicities(F, h, r)
    return SemisimpleOddClass(r, i, ell, _orbit_multiset(F.q, r, i, mult))
