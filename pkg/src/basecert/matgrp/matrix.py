"""Dense matrices over GF(q) stored as numpy arrays of element codes.

Vectors are rows and groups act on the right (``v -> v @ g``), matching the
convention ``vg`` used throughout.  ``matmul`` broadcasts over leading batch
axes, which is what the enumeration oracles rely on.
"""

from __future__ import annotations

import numpy as np

from ..gf import GF


def identity(F: GF, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(n: int, m: int | None = None) -> np.ndarray:
    return np.zeros((n, n if m is None else m), dtype=np.int64)


def asmat(rows) -> np.ndarray:
    return np.array(rows, dtype=np.int64)


def matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.e == 1:
        return (A @ B) % F.p
    prod = F.vmul(A[..., :, :, None], B[..., None, :, :])
    return F.vsum(prod, axis=-2)


def add(F: GF, A, B) -> np.ndarray:
    return F.vadd(A, B)


def sub(F: GF, A, B) -> np.ndarray:
    return F.vadd(A, F.vneg(B))


def scale(F: GF, c: int, A) -> np.ndarray:
    return F.vmul(np.full(np.shape(A), c, dtype=np.int64), A)


def transpose(A) -> np.ndarray:
    return np.swapaxes(np.asarray(A), -1, -2)


def frob(F: GF, A) -> np.ndarray:
    """Entrywise unitary conjugation x -> x**sqrt(q)."""
    return F.vconj(A)


def is_identity(A) -> bool:
    A = np.asarray(A)
    return A.shape[-1] == A.shape[-2] and np.array_equal(A, np.eye(A.shape[-1], dtype=A.dtype))


def is_scalar(A) -> bool:
    A = np.asarray(A)
    return np.array_equal(A, A[0, 0] * np.eye(A.shape[0], dtype=A.dtype))


def key(A) -> bytes:
    """Hashable canonical encoding of a code array."""
    A = np.asarray(A)
    return A.astype(np.uint16).tobytes()


def rref(F: GF, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    M = np.array(A, dtype=np.int64, copy=True)
    rows, cols = M.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = F.inv(int(M[r, c]))
        if inv != 1:
            M[r] = F.vmul(M[r], inv)
        for i in range(rows):
            if i != r and M[i, c]:
                f = F.neg(int(M[i, c]))
                M[i] = F.vadd(M[i], F.vmul(M[r], f))
        piv.append(c)
        r += 1
    return M[:r], piv


def rank(F: GF, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: GF, A) -> np.ndarray:
    """Basis (as rows) of {x : A @ x^T = 0}, i.e. the right kernel of A."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = F.neg(int(R[i, f]))
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def left_nullspace(F: GF, A) -> np.ndarray:
    """Basis of {v : v @ A = 0}."""
    return nullspace(F, transpose(A))


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(F: GF, A) -> int:
    M = np.array(A, dtype=np.int64, copy=True)
    n = M.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            M[[c, k]] = M[[k, c]]
            d = F.neg(d)
        pv = int(M[c, c])
        d = F.mul(d, pv)
        ip = F.inv(pv)
        for i in range(c + 1, n):
            if M[i, c]:
                f = F.neg(F.mul(int(M[i, c]), ip))
                M[i] = F.vadd(M[i], F.vmul(M[c], f))
    return d


def matpow(F: GF, A, k: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if k < 0:
        A = inverse(F, A)
        k = -k
    result = np.broadcast_to(np.eye(A.shape[-1], dtype=np.int64), A.shape).copy()
    base = A
    while k:
        if k & 1:
            result = matmul(F, result, base)
        k >>= 1
        if k:
            base = matmul(F, base, base)
    return result


def trace(F: GF, A) -> int:
    out = 0
    for i in range(np.shape(A)[0]):
        out = F.add(out, int(A[i, i]))
    return out


def block_diag(*blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    M = np.zeros((n, n), dtype=np.int64)
    k = 0
    for b in blocks:
        s = b.shape[0]
        M[k:k + s, k:k + s] = b
        k += s
    return M


def element_order(F: GF, A, limit: int = 10**6) -> int:
    """Multiplicative order of an invertible matrix (naive, for small orders)."""
    A = np.asarray(A, dtype=np.int64)
    cur = A.copy()
    for k in range(1, limit + 1):
        if is_identity(cur):
            return k
        cur = matmul(F, cur, A)
    raise ValueError("order exceeds limit")


def projective_order(F: GF, A, limit: int = 10**6) -> int:
    """Order of A modulo scalar matrices."""
    A = np.asarray(A, dtype=np.int64)
    cur = A.copy()
    for k in range(1, limit + 1):
        if is_scalar(cur):
            return k
        cur = matmul(F, cur, A)
    raise ValueError("order exceeds limit")


def commutant(F: GF, mats) -> np.ndarray:
    """Basis (rows of flattened n x n matrices) of {g : g A = A g for every A in ``mats``}."""
    mats = [np.asarray(A, dtype=np.int64) for A in mats]
    n = mats[0].shape[0]
    blocks = []
    for A in mats:
        cols = []
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n), dtype=np.int64)
                E[i, j] = 1
                cols.append(sub(F, matmul(F, E, A), matmul(F, A, E)).reshape(-1))
        blocks.append(np.array(cols, dtype=np.int64).T)
    return nullspace(F, np.vstack(blocks))
