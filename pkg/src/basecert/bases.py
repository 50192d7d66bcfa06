"""Explicit bases for small classical groups, and the matrix-pair and
form-vector constructions behind the module base bounds.

Every construction comes with a verifier that recomputes the relevant
stabilizer from scratch, either with a stabilizer chain or by exact linear
algebra.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .gf import field, subfield_embedding
from .matgrp import matrix as M
from .matgrp.chain import (
    ResourceLimitExceeded,
    StabilizerChain,
    point_limit,
    pointwise_stabilizer_order,
)
from .matgrp.forms import hermitian, orthonormal_basis, standard_alternating
from .matgrp.groups import GroupSpec, sl_order, so_order, sp_order, standard_generators


class BaseSearchError(RuntimeError):
    """A deterministic search for completing points came up empty."""


@dataclass
class BaseCandidate:
    group: GroupSpec
    action: str
    points: list
    c: int

    def __post_init__(self):
        self.points = [np.atleast_1d(np.asarray(p, dtype=np.int64)) for p in self.points]
        if len(self.points) != self.c:
            raise ValueError(f"{len(self.points)} points but claimed bound {self.c}")
        n = self.group.n
        for p in self.points:
            if p.shape[-1] != n or not p.any():
                raise ValueError("point does not lie in the natural module")
            if p.ndim == 2 and M.rank(self.group.field, p) != p.shape[0]:
                raise ValueError("subspace rows are linearly dependent")

    def prefix(self, k: int) -> "BaseCandidate":
        return BaseCandidate(self.group, self.action, self.points[:k], k)

    def describe(self) -> list[str]:
        out = []
        for p in self.points:
            rows = np.atleast_2d(p)
            out.append("<" + "; ".join(" ".join(str(int(x)) for x in r) for r in rows) + ">")
        return out


@dataclass
class BaseReport:
    candidate: BaseCandidate
    stabilizer_order: int
    modulo_scalars: int
    generators: list = dc_field(default_factory=list, repr=False)

    @property
    def is_base(self) -> bool:
        return self.modulo_scalars == 1

    @property
    def verdict(self) -> str:
        return "BASE" if self.is_base else "NOT A BASE"


def _unitary_frame(q: int, n: int) -> tuple[GroupSpec, np.ndarray]:
    G = GroupSpec("GU", n, q)
    return G, orthonormal_basis(G.field, G.form.gram)


def gu4_base(q: int) -> BaseCandidate:
    """Four (q odd) or five (q even) 1-spaces of the natural GU_4(q)-module."""
    G, v = _unitary_frame(q, 4)
    F = G.field
    s = lambda *idx: F.vsum(v[list(idx)], axis=0)
    if q % 2:
        pts = [v[0], v[1], v[2], s(0, 1, 2, 3)]
    else:
        pts = [v[0], v[1], v[2], s(0, 1, 2), s(1, 2, 3)]
    return BaseCandidate(G, "lines", pts, len(pts))


def _nondegenerate_plane(F, gram, a, b) -> bool:
    h = [[hermitian(F, x, gram, y) for y in (a, b)] for x in (a, b)]
    return F.sub(F.mul(h[0][0], h[1][1]), F.mul(h[0][1], h[1][0])) != 0


def gu5_base(q: int) -> BaseCandidate:
    """Five non-degenerate 2-spaces of the natural GU_5(q)-module.

    The first three are spanned by consecutive frame vectors.  The last two
    are the lexicographically first distinct non-degenerate planes through
    the sum of the frame.
    """
    G, v = _unitary_frame(q, 5)
    F, gram = G.field, G.form.gram
    pts = [np.array([v[i], v[i + 1]]) for i in range(3)]
    w = F.vsum(v, axis=0)
    found: list[np.ndarray] = []
    seen: set[bytes] = set()
    for coords in product(range(F.q), repeat=5):
        u = np.array(coords, dtype=np.int64)
        plane = np.array([w, u])
        if M.rank(F, plane) < 2:
            continue
        R, _ = M.rref(F, plane)
        k = M.key(R)
        if k in seen:
            continue
        seen.add(k)
        if _nondegenerate_plane(F, gram, w, u):
            found.append(R)
            if len(found) == 2:
                break
    if len(found) < 2:
        raise BaseSearchError("no two non-degenerate planes through the frame sum")
    return BaseCandidate(G, "subspaces", pts + found, 5)


def _chain(cand: BaseCandidate) -> StabilizerChain:
    G = cand.group
    base = [(p, cand.action) for p in cand.points]
    return StabilizerChain(G.field, standard_generators(G), base=base, order_hint=G.order)


def verify_base(cand: BaseCandidate) -> BaseReport:
    """Order of the pointwise stabilizer of ``cand.points``, absolute and modulo scalars."""
    G = cand.group
    order, mod = pointwise_stabilizer_order(
        G.field, standard_generators(G), cand.points, cand.action, order_hint=G.order
    )
    return BaseReport(cand, order, mod)


def stabilizer_is_diagonal(cand: BaseCandidate) -> tuple[int, bool]:
    """(order, all generators diagonal) for the pointwise stabilizer of ``cand``."""
    ch = _chain(cand)
    depth = len(cand.points)
    gens = ch.stabilizer_generators(depth)
    diag = all(not np.any(g - np.diag(np.diag(g))) for g in gens)
    return ch.stabilizer_order(depth), diag


def random_candidate(group: GroupSpec, k: int, seed: int = 0) -> BaseCandidate:
    """``k`` pseudo-random 1-spaces, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    F = group.field
    pts = []
    while len(pts) < k:
        u = rng.integers(0, F.q, size=group.n)
        if u.any():
            pts.append(u)
    return BaseCandidate(group, "lines", pts, k)


# -- the adjoint-module matrix pair -------------------------------------------


@dataclass
class AdjointReport:
    n: int
    q: int
    q0: int
    A: np.ndarray
    B: np.ndarray
    centralizer: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.centralizer)

    @property
    def contained(self) -> bool:
        """Every joint centralizer element has the shape diag(lam*I, mu)."""
        n = self.n
        for g in self.centralizer.reshape(-1, n, n):
            top = g[: n - 1, : n - 1]
            if g[: n - 1, n - 1].any() or g[n - 1, : n - 1].any():
                return False
            if np.any(top != top[0, 0] * np.eye(n - 1, dtype=np.int64)):
                return False
        return True


def generates_sl(X, Y, q0: int) -> bool:
    m = np.asarray(X).shape[0]
    F0 = field(q0)
    target = sl_order(m, q0)
    gens = [g for g in (X, Y) if not M.is_identity(g)]
    if not gens:
        return target == 1
    return StabilizerChain(F0, gens, order_hint=target).order == target


def sl_generating_pair(m: int, q0: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """A transvection and a pseudo-random element generating SL_m(q0)."""
    if m < 2:
        raise ValueError("need m >= 2")
    F0 = field(q0)
    X = np.eye(m, dtype=np.int64)
    X[0, 1] = 1
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        Y = rng.integers(0, q0, size=(m, m))
        d = M.det(F0, Y)
        if d == 0:
            continue
        Y[0] = F0.vmul(Y[0], F0.inv(d))
        if generates_sl(X, Y, q0):
            return X, Y
    raise BaseSearchError(f"no generating pair found for SL_{m}({q0})")


def adjoint_base(n: int, q: int, q0: int | None = None, X=None, Y=None) -> AdjointReport:
    """Trace-zero pair built from generators of SL_{n-1}(q0), with its joint centralizer.

    ``X`` and ``Y`` default to a chain-verified generating pair; supplied
    matrices are checked to generate.
    """
    q0 = q if q0 is None else q0
    if n < 3:
        raise ValueError("need n >= 3")
    F0, F = field(q0), field(q)
    emb = subfield_embedding(q0, q)
    if X is None or Y is None:
        X, Y = sl_generating_pair(n - 1, q0)
    X, Y = np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64)
    for Z in (X, Y):
        if Z.shape != (n - 1, n - 1) or M.det(F0, Z) != 1:
            raise ValueError("X and Y must lie in SL_{n-1}(q0)")
    if not generates_sl(X, Y, q0):
        raise ValueError("X and Y do not generate SL_{n-1}(q0)")

    def lift(Z):
        out = np.zeros((n, n), dtype=np.int64)
        out[: n - 1, : n - 1] = emb[Z]
        out[n - 1, n - 1] = F.neg(int(emb[M.trace(F0, Z)]))
        return out

    A, B = lift(X), lift(Y)
    if M.trace(F, A) or M.trace(F, B):
        raise ValueError("matrices leave the trace-zero module")
    return AdjointReport(n, q, q0, A, B, M.commutant(F, [A, B]))


# -- form vectors in the square of the natural module ---------------------------------


@dataclass
class FormVectorReport:
    kind: str
    n: int
    q: int
    orbit_size: int
    stabilizer_order: int
    expected: int

    @property
    def matches(self) -> bool:
        return self.stabilizer_order == self.expected


def _orthogonal_sign(F, n: int) -> int:
    """Witt type of the identity form in even dimension n: +1 iff (-1)^(n/2) is a square."""
    d = F.pow(F.neg(1), n // 2)
    return 1 if F.is_square(d) else -1


def congruence_orbit_size(q: int, gens, X) -> int:
    F = field(q)
    limit = point_limit()
    start = np.asarray(X, dtype=np.int64)
    seen = {M.key(start)}
    queue = deque([start])
    gts = [(g, M.transpose(g)) for g in gens]
    while queue:
        Z = queue.popleft()
        for g, gt in gts:
            W = M.matmul(F, M.matmul(F, gt, Z), g)
            k = M.key(W)
            if k not in seen:
                seen.add(k)
                if len(seen) > limit:
                    raise ResourceLimitExceeded(f"orbit exceeds {limit} points")
                queue.append(W)
    return len(seen)


def form_vector_stabilizer_check(kind: str, n: int, q: int) -> FormVectorReport:
    """Stabilizer in SL_n(q) of the standard alternating or symmetric form, by orbit size."""
    F = field(q)
    if kind == "alternating":
        if n % 2:
            raise ValueError("alternating forms need even n")
        X = standard_alternating(F, n).gram
        expected = sp_order(n, q)
    elif kind == "symmetric":
        if q % 2 == 0:
            raise ValueError("symmetric case needs q odd")
        X = np.eye(n, dtype=np.int64)
        expected = so_order(n, q, 0 if n % 2 else _orthogonal_sign(F, n))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    gens = standard_generators(GroupSpec("SL", n, q))
    orbit = congruence_orbit_size(q, gens, X)
    total = sl_order(n, q)
    return FormVectorReport(kind, n, q, orbit, total // orbit, expected)
