"""Explicit representatives of prime-order classes of PGSp_n(q).

Each representative is a similitude of the standard alternating form.  Blocks
are built on a convenient non-degenerate space and carried to the standard
basis with ``symplectic_basis``.
"""

from __future__ import annotations

import numpy as np

from .. import classdata as cd
from ..classdata import (
    PrimeOrderClass,
    SemisimpleInvolutionClass,
    SemisimpleOddClass,
    UnipotentInvolutionClass,
    UnipotentOddClass,
)
from ..gf import GF, field
from . import matrix as M
from .elements import irreducible_of_order
from .forms import symplectic_basis


def _J(F: GF, k: int) -> np.ndarray:
    """Gram matrix [[0, I_k], [-I_k, 0]]."""
    G = np.zeros((2 * k, 2 * k), dtype=np.int64)
    G[:k, k:] = np.eye(k, dtype=np.int64)
    G[k:, :k] = F.neg(1) * np.eye(k, dtype=np.int64)
    return G


def _to_standard(F: GF, g, gram) -> np.ndarray:
    P = symplectic_basis(F, gram)
    return M.matmul(F, M.matmul(F, P, g), M.inverse(F, P))


def _block_sum(F: GF, pieces):
    gs = [g for g, _ in pieces]
    grams = [G for _, G in pieces]
    return M.block_diag(*gs), M.block_diag(*grams)


# -- semisimple of odd prime order ---------------------------------------------------------


def _invariant_alternating(F: GF, C) -> np.ndarray:
    """A non-zero alternating X with C X C^T = X (non-degenerate when C acts irreducibly)."""
    i = C.shape[0]
    pairs = [(a, b) for a in range(i) for b in range(a + 1, i)]
    cols = []
    for a, b in pairs:
        E = np.zeros((i, i), dtype=np.int64)
        E[a, b] = 1
        E[b, a] = F.neg(1)
        D = M.sub(F, M.matmul(F, M.matmul(F, C, E), M.transpose(C)), E)
        cols.append(D.reshape(-1))
    sol = M.nullspace(F, np.array(cols, dtype=np.int64).T)
    if not len(sol):
        raise ValueError("no invariant alternating form")
    X = np.zeros((i, i), dtype=np.int64)
    for (a, b), c in zip(pairs, sol[0]):
        X[a, b] = c
        X[b, a] = F.neg(int(c))
    return X


def _eigen_orbits(q: int, r: int, i: int) -> list[int]:
    """One exponent k per orbit of <q, -1> on (Z/r)^*, in increasing order."""
    seen, out = set(), []
    for k in range(1, r):
        if k in seen:
            continue
        orbit = {k * pow(q, t, r) % r for t in range(i)}
        orbit |= {(-x) % r for x in orbit}
        seen |= orbit
        out.append(k)
    return out


def _semisimple_odd(F: GF, cls: SemisimpleOddClass, n: int):
    q, r, i = F.q, cls.r, cls.i
    W = irreducible_of_order(F, r, i)
    pieces = []
    # powers of W over orbit representatives land in distinct orbits
    for k, a in zip(_eigen_orbits(q, r, i), cls.a):
        C = M.matpow(F, W, k)
        if cls.e == 2:
            g = M.block_diag(C, M.transpose(M.inverse(F, C)))
            G = _J(F, i)
        else:
            g, G = C, _invariant_alternating(F, C)
        pieces += [(g, G)] * a
    if cls.ell:
        pieces.append((np.eye(cls.ell, dtype=np.int64), _J(F, cls.ell // 2)))
    return _block_sum(F, pieces)


# -- unipotent classes, p odd --------------------------------------------------------------


def _unipotent_odd(F: GF, cls: UnipotentOddClass, n: int):
    disc = dict(cls.forms)
    nu = F.nonsquare()
    pieces = []
    for j, a in sorted(cls.multiplicities.items(), reverse=True):
        N = np.zeros((j, j), dtype=np.int64)
        for k in range(j - 1):
            N[k, k + 1] = 1
        sign = [1 if k % 2 == 0 else F.neg(1) for k in range(j)]
        if j % 2 == 0:
            for b in range(a):
                t = nu if (b == 0 and disc[j]) else 1
                G = np.zeros((j, j), dtype=np.int64)
                for k in range(j):
                    G[k, j - 1 - k] = F.mul(sign[k], t)
                pieces.append((N, G))
        else:
            NN = M.block_diag(N, N)
            for _ in range(a // 2):
                G = np.zeros((2 * j, 2 * j), dtype=np.int64)
                for k in range(j):
                    G[k, j + (j - 1 - k)] = sign[k]
                    G[j + (j - 1 - k), k] = F.neg(sign[k])
                pieces.append((NN, G))
    N, G = _block_sum(F, pieces)
    # Cayley transform of the skew-adjoint N keeps its Jordan type
    c = F.inv(F.from_int(4))
    I = np.eye(n, dtype=np.int64)
    cN = M.scale(F, c, N)
    u = M.matmul(F, M.add(F, I, cN), M.inverse(F, M.sub(F, I, cN)))
    return u, G


# -- involutions -----------------------------------------------------------------------------------


def _involution_q_odd(F: GF, cls: SemisimpleInvolutionClass, n: int) -> np.ndarray:
    minus, nu = F.neg(1), F.nonsquare()
    if cls.kind == "t":
        d = [minus] * cls.s + [1] * (n - cls.s)
        return np.diag(np.array(d, dtype=np.int64))
    if cls.kind == "sp2":
        X = np.diag(np.array([nu, 1], dtype=np.int64))
        Y = np.diag(np.array([1, nu], dtype=np.int64))
        B = np.zeros((4, 4), dtype=np.int64)
        B[:2, 2:] = X
        B[2:, :2] = Y
        return M.block_diag(*([B] * (n // 4)))
    if cls.inner:
        B = np.array([[0, 1], [minus, 0]], dtype=np.int64)
    else:
        B = np.array([[0, 1], [F.neg(nu), 0]], dtype=np.int64)
    return M.block_diag(*([B] * (n // 2)))


def _involution_q_even(cls: UnipotentInvolutionClass, n: int) -> np.ndarray:
    b1 = np.array([[1, 1], [0, 1]], dtype=np.int64)
    a2 = np.eye(4, dtype=np.int64)
    a2[1, 2] = 1  # f1 -> f1 + e2
    a2[3, 0] = 1  # f2 -> f2 + e1
    l = cls.l
    if cls.kind == "a":
        blocks = [a2] * (l // 2)
    elif cls.kind == "b":
        blocks = [b1] + [a2] * ((l - 1) // 2)
    else:
        blocks = [b1, b1] + [a2] * ((l - 2) // 2)
    used = sum(b.shape[0] for b in blocks)
    return M.block_diag(*blocks, np.eye(n - used, dtype=np.int64))


def representative(cls: PrimeOrderClass, n: int, q: int) -> np.ndarray:
    """A matrix in GSp_n(q) (standard alternating form) whose image in PGSp_n(q) lies in ``cls``."""
    cd.validate(cls, n, q)
    F = field(q)
    if isinstance(cls, SemisimpleInvolutionClass):
        return _involution_q_odd(F, cls, n)
    if isinstance(cls, UnipotentInvolutionClass):
        return _involution_q_even(cls, n)
    if isinstance(cls, SemisimpleOddClass):
        g, G = _semisimple_odd(F, cls, n)
    else:
        g, G = _unipotent_odd(F, cls, n)
    return _to_standard(F, g, G)
