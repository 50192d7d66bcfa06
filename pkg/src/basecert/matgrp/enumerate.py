"""Exhaustive enumeration of small matrix groups and their conjugacy classes.

Matrices are packed into one unsigned 64-bit key (``ceil(log2 q)`` bits per
entry), so only groups with ``n*n*bits <= 64`` are supported.  Elements are
kept as a sorted key array; membership is a binary search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..gf import GF
from . import matrix as M
from .chain import ResourceLimitExceeded, point_limit

BATCH = 1 << 17


def _bits(q: int) -> int:
    return max(1, (q - 1).bit_length())


class Packer:
    def __init__(self, F: GF, n: int):
        self.F, self.n = F, n
        self.b = _bits(F.q)
        if n * n * self.b > 64:
            raise ValueError(f"{n}x{n} matrices over GF({F.q}) do not fit a 64-bit key")
        self.shifts = (np.arange(n * n, dtype=np.uint64) * np.uint64(self.b))

    def pack(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.uint64).reshape(-1, self.n * self.n)
        return np.bitwise_or.reduce(X << self.shifts, axis=1)

    def unpack(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.uint64)[:, None]
        mask = np.uint64((1 << self.b) - 1)
        return ((keys >> self.shifts) & mask).astype(np.int64).reshape(-1, self.n, self.n)


def _canon_projective(F: GF, pk: Packer, X) -> np.ndarray:
    """Least key among the scalar multiples of each matrix."""
    best = None
    for c in F.nonzero():
        k = pk.pack(M.scale(F, c, X))
        best = k if best is None else np.minimum(best, k)
    return best


def _keys(F: GF, pk: Packer, X, projective: bool) -> np.ndarray:
    return _canon_projective(F, pk, X) if projective else pk.pack(X)


def _batched(arr, size=BATCH):
    for s in range(0, len(arr), size):
        yield arr[s:s + size]


def enumerate_group(F: GF, gens, projective: bool = False, limit: int | None = None) -> np.ndarray:
    """Sorted keys of all elements of <gens> (modulo scalars when ``projective``)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    pk = Packer(F, n)
    limit = limit if limit is not None else point_limit()
    I = np.eye(n, dtype=np.int64)[None]
    seen = np.sort(_keys(F, pk, I, projective))
    frontier = I
    while len(frontier):
        new = []
        for chunk in _batched(frontier):
            for g in gens:
                Y = M.matmul(F, chunk, g)
                new.append((_keys(F, pk, Y, projective), Y))
        keys = np.concatenate([k for k, _ in new])
        mats = np.concatenate([y for _, y in new])
        keys, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        keys, mats = keys[fresh], mats[first[fresh]]
        seen = np.union1d(seen, keys)
        if len(seen) > limit:
            raise ResourceLimitExceeded(f"group enumeration exceeds {limit} elements")
        frontier = mats
    return seen


def matrices(F: GF, n: int, keys) -> np.ndarray:
    return Packer(F, n).unpack(keys)


def conjugacy_labels(F: GF, gens, keys, projective: bool = False) -> np.ndarray:
    """Component label of every element under conjugation by the generators."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    pk = Packer(F, n)
    N = len(keys)
    rows, cols = [], []
    for g in gens:
        ginv = M.inverse(F, g)
        for s in range(0, N, BATCH):
            X = pk.unpack(keys[s:s + BATCH])
            Y = M.matmul(F, M.matmul(F, ginv, X), g)
            idx = np.searchsorted(keys, _keys(F, pk, Y, projective))
            rows.append(np.arange(s, s + len(X)))
            cols.append(idx)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _is_scalar_batch(X) -> np.ndarray:
    n = X.shape[-1]
    d = X[:, 0, 0]
    eye = np.eye(n, dtype=bool)
    return np.all(np.where(eye, X == d[:, None, None], X == 0), axis=(1, 2))


def prime_order_mask(F: GF, n: int, keys, primes, projective: bool = False) -> np.ndarray:
    """Order (prime from ``primes``) of each element, or 0 when the order is not prime."""
    pk = Packer(F, n)
    out = np.zeros(len(keys), dtype=np.int64)
    for s in range(0, len(keys), BATCH):
        X = pk.unpack(keys[s:s + BATCH])
        trivial = _is_scalar_batch(X) if projective else np.all(X == np.eye(n, dtype=np.int64), axis=(1, 2))
        for r in primes:
            P = M.matpow(F, X, r)
            hit = _is_scalar_batch(P) if projective else np.all(P == np.eye(n, dtype=np.int64), axis=(1, 2))
            sel = hit & ~trivial & (out[s:s + len(X)] == 0)
            out[s:s + len(X)][sel] = r
    return out


@dataclass(frozen=True)
class EnumeratedClass:
    order: int
    size: int
    representative: np.ndarray


def prime_order_class_census(F: GF, gens, primes, projective: bool = False) -> tuple[int, list[EnumeratedClass]]:
    """(group order, prime-order classes) of <gens>, found by brute force."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    keys = enumerate_group(F, gens, projective)
    orders = prime_order_mask(F, n, keys, primes, projective)
    sel = np.flatnonzero(orders)
    sub = keys[sel]
    labels = conjugacy_labels_subset(F, gens, sub, projective)
    out = []
    for lab in np.unique(labels):
        members = np.flatnonzero(labels == lab)
        rep = Packer(F, n).unpack(sub[members[:1]])[0]
        out.append(EnumeratedClass(int(orders[sel[members[0]]]), len(members), rep))
    out.sort(key=lambda c: (c.order, c.size))
    return len(keys), out


def conjugacy_labels_subset(F: GF, gens, keys, projective: bool = False) -> np.ndarray:
    """Like conjugacy_labels for a conjugation-closed subset given by sorted keys."""
    return conjugacy_labels(F, gens, keys, projective)


def conjugacy_orbit_size(F: GF, gens, x, projective: bool = False, limit: int | None = None,
                         twist=None) -> int:
    """Size of the orbit of x under g: y -> g^-1 y g (or g^-1 y twist(g) when given)."""
    return len(conjugacy_orbit_keys(F, gens, x, projective, limit, twist))


def conjugacy_orbit_keys(F: GF, gens, x, projective: bool = False, limit: int | None = None,
                         twist=None) -> np.ndarray:
    """Sorted packed keys of the orbit described in ``conjugacy_orbit_size``."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    pk = Packer(F, n)
    limit = limit if limit is not None else point_limit()
    pairs = [(M.inverse(F, g), g if twist is None else twist(g)) for g in gens]
    x = np.asarray(x, dtype=np.int64)[None]
    seen = np.sort(_keys(F, pk, x, projective))
    frontier = x
    while len(frontier):
        new = []
        for chunk in _batched(frontier):
            for ginv, gt in pairs:
                Y = M.matmul(F, M.matmul(F, ginv, chunk), gt)
                new.append((_keys(F, pk, Y, projective), Y))
        keys = np.concatenate([k for k, _ in new])
        mats = np.concatenate([y for _, y in new])
        keys, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        keys, mats = keys[fresh], mats[first[fresh]]
        seen = np.union1d(seen, keys)
        if len(seen) > limit:
            raise ResourceLimitExceeded(f"conjugacy orbit exceeds {limit} elements")
        frontier = mats
    return seen
