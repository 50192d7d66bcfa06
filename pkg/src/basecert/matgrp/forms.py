"""Classical forms, isometry tests and adapted bases.

Gram matrices act on row vectors: ``B(x, y) = x @ G @ y.T`` (bilinear) or
``x @ G @ conj(y).T`` (hermitian).  The standard alternating form pairs the
coordinates as ``(e1, f1, e2, f2, ...)`` with ``B(e_i, f_i) = 1``, so a
leading block of coordinates always spans a non-degenerate subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..gf import GF, FieldError
from . import matrix as M


@dataclass(frozen=True, eq=False)
class FormSpec:
    kind: str  # "alternating" | "hermitian" | "symmetric" | "quadratic"
    gram: np.ndarray
    sign: str | None = None  # "+", "-" or None
    quad: np.ndarray | None = None  # upper-triangular matrix of Q, characteristic 2 only

    def __post_init__(self):
        if self.kind not in {"alternating", "hermitian", "symmetric", "quadratic"}:
            raise ValueError(f"unknown form kind {self.kind!r}")


def standard_alternating(F: GF, n: int) -> FormSpec:
    if n % 2:
        raise ValueError("alternating forms need even dimension")
    G = np.zeros((n, n), dtype=np.int64)
    for k in range(0, n, 2):
        G[k, k + 1] = 1
        G[k + 1, k] = F.neg(1)
    return FormSpec("alternating", G)


def standard_hermitian(F: GF, n: int) -> FormSpec:
    """Identity Gram matrix: GU_n(q) = {g : g^T g^(q) = I}."""
    F.base_order  # raises unless F is a quadratic extension
    return FormSpec("hermitian", np.eye(n, dtype=np.int64))


def standard_symmetric(F: GF, n: int, sign: str | None = None) -> FormSpec:
    """Symmetric bilinear form of Witt type ``sign`` (q odd)."""
    if F.p == 2:
        raise FieldError("use quadratic forms in characteristic 2")
    G = np.zeros((n, n), dtype=np.int64)
    k = 0
    hyperbolic = n // 2 - (1 if (n % 2 == 0 and sign == "-") else 0)
    for _ in range(hyperbolic):
        G[k, k + 1] = G[k + 1, k] = 1
        k += 2
    if n % 2:
        G[k, k] = 1
    elif sign == "-":
        # x^2 - nu*y^2 is anisotropic for nu a non-square
        G[k, k] = 1
        G[k + 1, k + 1] = F.neg(F.nonsquare())
    elif sign not in ("+", None):
        raise ValueError(f"bad sign {sign!r}")
    return FormSpec("symmetric", G, sign if n % 2 == 0 else None)


def bilinear(F: GF, x, G, y) -> int:
    return int(M.matmul(F, M.matmul(F, np.atleast_2d(x), G), np.atleast_2d(y).T)[0, 0])


def hermitian(F: GF, x, G, y) -> int:
    yc = F.vconj(np.atleast_2d(y))
    return int(M.matmul(F, M.matmul(F, np.atleast_2d(x), G), yc.T)[0, 0])


def form_value(F: GF, form: FormSpec, x, y) -> int:
    if form.kind == "hermitian":
        return hermitian(F, x, form.gram, y)
    return bilinear(F, x, form.gram, y)


def quad_value(F: GF, form: FormSpec, x) -> int:
    x = np.atleast_2d(x)
    return int(M.matmul(F, M.matmul(F, x, form.quad), x.T)[0, 0])


def transformed_gram(F: GF, g, form: FormSpec) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64)
    if form.kind == "hermitian":
        return M.matmul(F, M.matmul(F, g, form.gram), F.vconj(g).T)
    return M.matmul(F, M.matmul(F, g, form.gram), g.T)


def preserves_form(F: GF, g, form: FormSpec) -> bool:
    g = np.asarray(g, dtype=np.int64)
    if g.shape != form.gram.shape:
        raise ValueError("dimension mismatch between element and form")
    if not np.array_equal(transformed_gram(F, g, form), form.gram):
        return False
    if form.kind == "quadratic" and form.quad is not None:
        n = g.shape[0]
        return all(quad_value(F, form, g[i]) == int(form.quad[i, i]) for i in range(n))
    return True


def similitude_multiplier(F: GF, g, form: FormSpec) -> int | None:
    """The scalar mu with g G g^T = mu G, or None if g is not a similitude."""
    T = transformed_gram(F, g, form)
    i, j = np.argwhere(form.gram != 0)[0]
    mu = F.div(int(T[i, j]), int(form.gram[i, j]))
    if np.array_equal(T, M.scale(F, mu, form.gram)):
        return mu
    return None


def symplectic_basis(F: GF, gram) -> np.ndarray:
    """Rows (v1, w1, v2, w2, ...) with B(v_i, w_i) = 1 and all other pairings 0.

    With P the returned matrix, ``P @ gram @ P.T`` is the standard alternating
    Gram matrix, and ``P @ g @ inverse(P)`` carries an isometry of ``gram``
    to an isometry of the standard form.
    """
    G = np.asarray(gram, dtype=np.int64)
    n = G.shape[0]
    pool = [row for row in np.eye(n, dtype=np.int64)]
    out = []
    while pool:
        v = pool.pop(0)
        for idx, w in enumerate(pool):
            b = bilinear(F, v, G, w)
            if b:
                break
        else:
            raise ValueError("form is degenerate")
        w = F.vmul(pool.pop(idx), F.inv(b))
        out += [v, w]
        rest = []
        for u in pool:
            a = F.neg(bilinear(F, u, G, w))
            c = bilinear(F, u, G, v)
            rest.append(F.vadd(F.vadd(u, F.vmul(v, a)), F.vmul(w, c)))
        pool = rest
    return np.array(out, dtype=np.int64)


def _norm_preimage(F: GF, t: int) -> int:
    """Some lam in GF(q^2) with lam * conj(lam) = t, for t in the fixed field."""
    for lam in F.nonzero():
        if F.mul(lam, F.conj(lam)) == t:
            return lam
    raise FieldError("norm map not surjective onto the requested value")


def orthonormal_basis(F: GF, gram) -> np.ndarray:
    """Rows P with ``P @ gram @ conj(P).T == I`` for a non-degenerate hermitian gram."""
    G = np.asarray(gram, dtype=np.int64)
    n = G.shape[0]
    pool = [row for row in np.eye(n, dtype=np.int64)]
    out = []
    while pool:
        pick = next((i for i, u in enumerate(pool) if hermitian(F, u, G, u)), None)
        if pick is None:
            # every pool vector is isotropic; some u_i + c*u_j is not
            for i in range(len(pool)):
                for j in range(len(pool)):
                    if i == j:
                        continue
                    for c in F.nonzero():
                        cand = F.vadd(pool[i], F.vmul(pool[j], c))
                        if hermitian(F, cand, G, cand):
                            pool[i], pick = cand, i
                            break
                    if pick is not None:
                        break
                if pick is not None:
                    break
            if pick is None:
                raise ValueError("hermitian form is degenerate")
        v = pool.pop(pick)
        h = hermitian(F, v, G, v)
        lam = _norm_preimage(F, F.inv(h))
        v = F.vmul(v, lam)
        out.append(v)
        rest = []
        for u in pool:
            c = F.neg(hermitian(F, u, G, v))
            u2 = F.vadd(u, F.vmul(v, c))
            if np.any(u2):
                rest.append(u2)
        # keep a basis of the complement
        if rest:
            R, _ = M.rref(F, np.array(rest))
            rest = [row for row in R]
        pool = rest
    P = np.array(out, dtype=np.int64)
    if P.shape[0] != n:
        raise ValueError("hermitian form is degenerate")
    return P
