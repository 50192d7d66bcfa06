"""Deterministic Schreier-Sims stabilizer chains for matrix groups.

Each level of a chain carries its own action, so a base may start with
subspaces or matrices (the points whose pointwise stabilizer is wanted) and
finish with basis vectors, on which the group acts faithfully.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..gf import GF
from . import matrix as M

DEFAULT_POINT_LIMIT = 10**8


class ResourceLimitExceeded(RuntimeError):
    """An orbit grew beyond the configured point budget."""


def point_limit() -> int:
    env = os.environ.get("BASECERT_MEM_LIMIT")
    return int(env) if env else DEFAULT_POINT_LIMIT


# -- actions --------------------------------------------------------------------


def _row_keys(A) -> list[bytes]:
    """``M.key`` of every leading-axis slice of A."""
    A = np.asarray(A)
    flat = np.ascontiguousarray(A.reshape(len(A), -1).astype(np.uint16))
    return flat.view(np.dtype((np.void, flat.shape[1] * 2))).ravel().tolist()


def _normalize_rows(F: GF, P) -> np.ndarray:
    """Scale each non-zero row so its first non-zero entry is 1."""
    lead_idx = np.argmax(P != 0, axis=1)
    lead = P[np.arange(len(P)), lead_idx]
    return F.vmul(P, F.vinv(lead)[:, None])


def _permutations(k: int):
    """(permutation, sign) pairs of range(k)."""
    from itertools import permutations

    out = []
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        out.append((perm, -1 if inv % 2 else 1))
    return out


class Action:
    name = "abstract"

    def __init__(self, F: GF):
        self.F = F

    def canon(self, pt) -> np.ndarray:
        return np.asarray(pt, dtype=np.int64)

    def image(self, pt, g, ginv) -> np.ndarray:
        raise NotImplementedError

    def key(self, pt) -> bytes:
        return M.key(pt)

    def image_batch(self, pts, g, ginv) -> np.ndarray:
        return np.stack([self.image(p, g, ginv) for p in pts])

    def key_batch(self, pts) -> list[bytes]:
        return [self.key(p) for p in pts]


class VectorAction(Action):
    name = "vectors"

    def image(self, pt, g, ginv):
        return M.matmul(self.F, pt[None, :], g)[0]

    def image_batch(self, pts, g, ginv):
        return M.matmul(self.F, pts, g)

    def key_batch(self, pts):
        return _row_keys(pts)


class LineAction(Action):
    name = "lines"

    def canon(self, pt):
        pt = np.asarray(pt, dtype=np.int64)
        if not pt.any():
            raise ValueError("zero vector does not span a line")
        return _normalize_rows(self.F, pt[None])[0]

    def image(self, pt, g, ginv):
        return self.canon(M.matmul(self.F, pt[None, :], g)[0])

    def image_batch(self, pts, g, ginv):
        return _normalize_rows(self.F, M.matmul(self.F, pts, g))

    def key_batch(self, pts):
        return _row_keys(pts)


class SubspaceAction(Action):
    """Subspaces given by a row basis.

    Points are stored as whatever basis the action produced; the key is the
    normalized vector of maximal minors, which depends only on the span.
    Beyond ``PLUCKER_MAX`` rows the key falls back to the reduced echelon form.
    """

    name = "subspaces"
    PLUCKER_MAX = 3

    def canon(self, pt):
        R, _ = M.rref(self.F, np.atleast_2d(pt))
        return R

    def image(self, pt, g, ginv):
        return M.matmul(self.F, np.atleast_2d(pt), g)

    def image_batch(self, pts, g, ginv):
        return M.matmul(self.F, pts, g)

    def _plucker(self, pts) -> np.ndarray:
        F = self.F
        N, k, n = pts.shape
        from itertools import combinations

        cols = []
        perms = _permutations(k)
        for sub in combinations(range(n), k):
            acc = np.zeros(N, dtype=np.int64)
            for perm, sign in perms:
                term = np.ones(N, dtype=np.int64)
                for r in range(k):
                    term = F.vmul(term, pts[:, r, sub[perm[r]]])
                acc = F.vadd(acc, term if sign > 0 else F.vneg(term))
            cols.append(acc)
        return _normalize_rows(F, np.stack(cols, axis=1))

    def key_batch(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        if pts.shape[1] > self.PLUCKER_MAX:
            return [M.key(self.canon(p)) for p in pts]
        return _row_keys(self._plucker(pts))

    def key(self, pt):
        return self.key_batch(np.atleast_2d(pt)[None])[0]


class ConjugationAction(Action):
    name = "conjugation"

    def image(self, pt, g, ginv):
        return M.matmul(self.F, M.matmul(self.F, ginv, pt), g)

    def image_batch(self, pts, g, ginv):
        return M.matmul(self.F, M.matmul(self.F, ginv, pts), g)


class CongruenceAction(Action):
    """X -> g^T X g: forms (alternating or symmetric) as points."""

    name = "congruence"

    def image(self, pt, g, ginv):
        return M.matmul(self.F, M.matmul(self.F, M.transpose(g), pt), g)

    def image_batch(self, pts, g, ginv):
        return M.matmul(self.F, M.matmul(self.F, M.transpose(g), pts), g)


ACTIONS = {
    "vectors": VectorAction,
    "lines": LineAction,
    "1-spaces": LineAction,
    "subspaces": SubspaceAction,
    "r-subspaces": SubspaceAction,
    "conjugation": ConjugationAction,
    "congruence": CongruenceAction,
}


def make_action(F: GF, action) -> Action:
    if isinstance(action, Action):
        return action
    try:
        return ACTIONS[action](F)
    except KeyError:
        raise ValueError(f"unknown action {action!r}") from None


# -- chain ----------------------------------------------------------------------


@dataclass
class Level:
    action: Action
    point: np.ndarray
    gens: list = dc_field(default_factory=list)  # pairs (g, g^-1)
    orbit: dict = dc_field(default_factory=dict)  # key -> (point, parent key, generator index)
    order: list = dc_field(default_factory=list)  # orbit keys in discovery order
    cache: dict = dc_field(default_factory=dict)  # key -> (u, u^-1), filled on demand

    def image(self, g, ginv) -> bytes:
        return self.action.key(self.action.image(self.point, g, ginv))


class StabilizerChain:
    """Stabilizer chain for the group generated by ``gens``.

    ``base`` is an optional list of ``(point, action)`` pairs placed first in
    the chain, in order.  ``order_hint`` is a known upper bound on the order
    (for instance the order of a classical group containing the generators);
    construction stops as soon as the chain reaches it, which is sound because
    the product of the transversal lengths never exceeds the true order.
    """

    BATCH = 4096

    def __init__(self, F: GF, gens, base=(), order_hint: int | None = None,
                 limit: int | None = None):
        self.F = F
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        self.n = gens[0].shape[0] if gens else (np.atleast_2d(base[0][0]).shape[-1] if base else 0)
        self.I = np.eye(self.n, dtype=np.int64)
        self.limit = limit if limit is not None else point_limit()
        self.order_hint = order_hint
        self.levels: list[Level] = []
        for pt, act in base:
            a = make_action(F, act)
            self.levels.append(Level(a, a.canon(pt)))
        self.prefix = len(self.levels)
        self._checked: set = set()
        self._vector = VectorAction(F)
        gens = [g for g in gens if not M.is_identity(g)]
        self._pairs = [(g, M.inverse(F, g)) for g in gens]
        if self._pairs:
            self._ensure_depth(self._pairs)
            for lvl in self.levels[:1]:
                lvl.gens.extend(self._pairs)
            self._grow_orbits(0)
        self._schreier_sims()

    # -- orbits -----------------------------------------------------------------
    def _mul(self, a, b):
        return M.matmul(self.F, a, b)

    def _grow_orbits(self, start: int) -> None:
        for i in range(start, len(self.levels)):
            self._extend_orbit(self.levels[i])

    def _extend_orbit(self, lvl: Level) -> None:
        act = lvl.action
        if not lvl.orbit:
            k = act.key(lvl.point)
            lvl.orbit[k] = (lvl.point, None, -1)
            lvl.cache[k] = (self.I, self.I)
            lvl.order.append(k)
        # re-scan every known point against all generators (new generators may extend it)
        idx = 0
        while idx < len(lvl.order):
            chunk = lvl.order[idx: idx + self.BATCH]
            pts = np.stack([lvl.orbit[k][0] for k in chunk])
            for gi, (g, ginv) in enumerate(lvl.gens):
                imgs = act.image_batch(pts, g, ginv)
                for j, k in enumerate(act.key_batch(imgs)):
                    if k not in lvl.orbit:
                        lvl.orbit[k] = (imgs[j], chunk[j], gi)
                        lvl.order.append(k)
                if len(lvl.orbit) > self.limit:
                    raise ResourceLimitExceeded(
                        f"orbit exceeds {self.limit} points at {act.name} level")
            idx += len(chunk)

    def _transversal(self, lvl: Level, k: bytes):
        """(u, u^-1) with base point . u = orbit point ``k``, rebuilt from the Schreier vector."""
        hit = lvl.cache.get(k)
        if hit is not None:
            return hit
        path = []
        while k not in lvl.cache:
            _, parent, gi = lvl.orbit[k]
            path.append((k, gi))
            k = parent
        u, uinv = lvl.cache[k]
        for key, gi in reversed(path):
            g, ginv = lvl.gens[gi]
            u, uinv = self._mul(u, g), self._mul(ginv, uinv)
            lvl.cache[key] = (u, uinv)
        return u, uinv

    def _ensure_depth(self, pairs) -> None:
        """Append basis-vector levels until every element in ``pairs`` moves a base point."""
        for g, ginv in pairs:
            if not self._moves_base(g, ginv):
                self._append_vector_level(g)

    def _moves_base(self, g, ginv) -> bool:
        return any(lvl.image(g, ginv) != lvl.action.key(lvl.point) for lvl in self.levels)

    def _append_vector_level(self, g) -> None:
        for k in range(self.n):
            e = self.I[k]
            if not np.array_equal(M.matmul(self.F, e[None, :], g)[0], e):
                if any(lvl.action is self._vector and np.array_equal(lvl.point, e) for lvl in self.levels):
                    continue
                self.levels.append(Level(self._vector, e.copy()))
                return
        raise AssertionError("non-identity element fixes every basis vector")

    # -- sifting ----------------------------------------------------------------
    def strip(self, g, ginv=None, start: int = 0):
        """Sift g through levels ``start..``; return (residue, residue^-1, level reached)."""
        if ginv is None:
            ginv = M.inverse(self.F, g)
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            k = lvl.image(g, ginv)
            if k not in lvl.orbit:
                return g, ginv, i
            u, uinv = self._transversal(lvl, k)
            g = self._mul(g, uinv)
            ginv = self._mul(u, ginv)
        return g, ginv, len(self.levels)

    def contains(self, g) -> bool:
        g = np.asarray(g, dtype=np.int64)
        try:
            ginv = M.inverse(self.F, g)
        except ZeroDivisionError:
            return False
        h, _, j = self.strip(g, ginv)
        return j == len(self.levels) and M.is_identity(h)

    # -- main loop --------------------------------------------------------------
    def _done(self) -> bool:
        return self.order_hint is not None and self.order >= self.order_hint

    def _schreier_sims(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            if self._done():
                return
            restart = self._process_level(i)
            i = restart if restart is not None else i - 1

    def _process_level(self, i: int):
        lvl = self.levels[i]
        act = lvl.action
        pos = 0
        while pos < len(lvl.order):
            kb = lvl.order[pos]
            pt = lvl.orbit[kb][0]
            for gi, (g, ginv) in enumerate(lvl.gens):
                memo = (i, kb, gi)
                if memo in self._checked:
                    continue
                self._checked.add(memo)
                k2 = act.key(act.image(pt, g, ginv))
                if lvl.orbit[k2][1] == kb and lvl.orbit[k2][2] == gi:
                    continue  # tree edge: the Schreier generator is trivial
                u, uinv = self._transversal(lvl, kb)
                v, vinv = self._transversal(lvl, k2)
                h = self._mul(self._mul(u, g), vinv)
                if M.is_identity(h):
                    continue
                hinv = self._mul(self._mul(v, ginv), uinv)
                res, resinv, j = self.strip(h, hinv, i + 1)
                if j == len(self.levels) and M.is_identity(res):
                    continue
                if j == len(self.levels):
                    self._append_vector_level(res)
                for lv in self.levels[i + 1:j + 1]:
                    lv.gens.append((res, resinv))
                self._grow_orbits(i + 1)
                if self._done():
                    return i
                return j
            pos += 1
        return None

    # -- queries ----------------------------------------------------------------
    @property
    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.orbit) if lvl.orbit else 1
        return out

    def stabilizer_order(self, depth: int) -> int:
        """Order of the pointwise stabilizer of the first ``depth`` base points."""
        out = 1
        for lvl in self.levels[depth:]:
            out *= len(lvl.orbit) if lvl.orbit else 1
        return out

    def stabilizer_generators(self, depth: int) -> list[np.ndarray]:
        if depth >= len(self.levels):
            return []
        return [g for g, _ in self.levels[depth].gens]

    def transversal_sizes(self) -> list[int]:
        return [len(lvl.orbit) if lvl.orbit else 1 for lvl in self.levels]


# -- convenience wrappers ---------------------------------------------------------


def orbit_and_stabilizer(F: GF, generators, point, action, order_hint: int | None = None):
    """Return (orbit size, stabilizer generators) for ``point`` under ``action``."""
    ch = StabilizerChain(F, generators, base=[(point, action)], order_hint=order_hint)
    return len(ch.levels[0].orbit), ch.stabilizer_generators(1)


def scalars_in(F: GF, chain: StabilizerChain, depth: int) -> int:
    """Number of scalar matrices in the pointwise stabilizer of the first ``depth`` base points."""
    count = 0
    n = chain.n
    for lam in F.nonzero():
        s = np.eye(n, dtype=np.int64) * lam
        if not chain.contains(s):
            continue
        sinv = np.eye(n, dtype=np.int64) * F.inv(lam)
        if all(lvl.image(s, sinv) == lvl.action.key(lvl.point) for lvl in chain.levels[:depth]):
            count += 1
    return count


def pointwise_stabilizer_order(F: GF, generators, points, action, order_hint: int | None = None):
    """Return (|G_(points)|, |G_(points)| modulo the scalars it contains).

    ``action`` is one action name for all points, or a list with one per point.
    """
    acts = [action] * len(points) if isinstance(action, (str, Action)) else list(action)
    ch = StabilizerChain(F, generators, base=list(zip(points, acts)), order_hint=order_hint)
    depth = len(points)
    order = ch.stabilizer_order(depth)
    return order, order // scalars_in(F, ch, depth)
