"""Fixed points of prime-order elements on non-degenerate subspaces.

For G = PGSp_n(q) acting on the orbit N_r of non-degenerate r-subspaces,
r = n/2 - m with m = (n, 4)/2, and H the stabilizer of one such subspace:

    |x^G ∩ H| = fix(x) * |x^G| / |N_r|.

``fixed_points_exact`` counts fix(x) by splitting the class invariants of x
between a fixed subspace W and its perpendicular space, summing
|C(x)| / (|C_W(x|W)| |C_W⊥(x|W⊥)|) over the admissible splittings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod

import numpy as np

from . import classdata as cd
from .classdata import (
    PrimeOrderClass,
    SemisimpleInvolutionClass,
    SemisimpleOddClass,
    UnipotentInvolutionClass,
    UnipotentOddClass,
)
from .exact import Bound
from .gf import GF
from .matgrp import matrix as M
from .matgrp.chain import ResourceLimitExceeded, point_limit
from .matgrp.groups import GroupSpec, gl_order, gu_order, sp_order


class UnsupportedSplitting(ValueError):
    pass


@dataclass(frozen=True)
class ActionSpec:
    """PGSp_n(q) on non-degenerate r-subspaces, r = n/2 - m."""

    n: int
    q: int

    def __post_init__(self):
        if self.n % 2 or self.n < 6:
            raise ValueError("need even n >= 6 so that r >= 2")

    @property
    def m(self) -> int:
        return gcd(self.n, 4) // 2

    @property
    def r(self) -> int:
        return self.n // 2 - self.m

    @property
    def group(self) -> GroupSpec:
        return GroupSpec("Sp", self.n, self.q)

    @property
    def orbit_size(self) -> int:
        n, r, q = self.n, self.r, self.q
        return sp_order(n, q) // (sp_order(r, q) * sp_order(n - r, q))

    def label(self) -> str:
        return f"PGSp_{self.n}({self.q}) on N_{self.r}"


# -- exact splitting counts -----------------------------------------------------------


def _ss_factor(a: int, q: int, i: int) -> int:
    if a == 0:
        return 1
    return gl_order(a, q**i) if i % 2 else gu_order(a, q ** (i // 2))


def _fix_semisimple_odd(cls: SemisimpleOddClass, n: int, r: int, q: int) -> int:
    e, i = cls.e, cls.i
    whole = sp_order(cls.ell, q) * prod(_ss_factor(a, q, i) for a in cls.a)
    total = 0
    for b in product(*(range(a + 1) for a in cls.a)):
        l1 = r - e * i * sum(b)
        l2 = cls.ell - l1
        if l1 < 0 or l2 < 0 or l1 % 2:
            continue
        c1 = sp_order(l1, q) * prod(_ss_factor(x, q, i) for x in b)
        c2 = sp_order(l2, q) * prod(_ss_factor(a - x, q, i) for a, x in zip(cls.a, b))
        total += whole // (c1 * c2)
    return total


def _fix_involution(cls: SemisimpleInvolutionClass, n: int, r: int, q: int) -> int:
    if cls.kind == "t":
        s = cls.s
        whole = sp_order(s, q) * sp_order(n - s, q)
        total = 0
        for s1 in range(0, min(s, r) + 1, 2):
            s2 = s - s1
            if s2 > n - r:
                continue
            total += whole // (sp_order(s1, q) * sp_order(r - s1, q) * sp_order(s2, q) * sp_order(n - r - s2, q))
        return total
    if cls.kind == "sp2":
        if r % 4 or (n - r) % 4:
            return 0
        Q = q * q
        return sp_order(n // 2, Q) // (sp_order(r // 2, Q) * sp_order((n - r) // 2, Q))
    f = gl_order if cls.kind == "gl+" else gu_order
    return f(n // 2, q) // (f(r // 2, q) * f((n - r) // 2, q))


def _unip_centralizer(mult: dict[int, int], disc: dict[int, int], dim: int, q: int, p: int) -> int:
    parts = tuple(sorted((j for j, a in mult.items() for _ in range(a)), reverse=True))
    if not parts or max(parts) == 1:
        return sp_order(dim, q)
    forms = tuple((j, disc.get(j, 0)) for j in sorted((j for j in mult if j % 2 == 0 and mult[j]), reverse=True))
    return cd.sp_centralizer_order(UnipotentOddClass(p, parts, forms), dim, q)


def _fix_unipotent_odd(cls: UnipotentOddClass, n: int, r: int, q: int) -> int:
    mult = cls.multiplicities
    disc = dict(cls.forms)
    whole = cd.sp_centralizer_order(cls, n, q)
    sizes = sorted(mult)
    total = 0
    for b in product(*(range(mult[j] + 1) for j in sizes)):
        if sum(j * x for j, x in zip(sizes, b)) != r:
            continue
        if any(j % 2 and x % 2 for j, x in zip(sizes, b)):
            continue
        m1 = {j: x for j, x in zip(sizes, b) if x}
        m2 = {j: mult[j] - x for j, x in zip(sizes, b) if mult[j] - x}
        evens = [j for j in sizes if j % 2 == 0]
        choices = []
        for j in evens:
            if j in m1 and j in m2:
                choices.append([(d1, (disc[j] - d1) % 2) for d1 in (0, 1)])
            elif j in m1:
                choices.append([(disc[j], 0)])
            else:
                choices.append([(0, disc[j])])
        for pick in product(*choices):
            d1 = {j: x for j, (x, _) in zip(evens, pick)}
            d2 = {j: y for j, (_, y) in zip(evens, pick)}
            c1 = _unip_centralizer(m1, d1, r, q, cls.p)
            c2 = _unip_centralizer(m2, d2, n - r, q, cls.p)
            total += whole // (c1 * c2)
    return total


def _invol_types(dim: int):
    yield ("1", 0)
    for l in range(1, dim // 2 + 1):
        if l % 2:
            yield ("b", l)
        else:
            yield ("a", l)
            yield ("c", l)


def _invol_centralizer(kind: str, l: int, dim: int, q: int) -> int:
    if kind == "1":
        return sp_order(dim, q)
    return cd.sp_centralizer_order(UnipotentInvolutionClass(kind, l), dim, q)


def combine_involution_types(t1: str, l1: int, t2: str, l2: int) -> tuple[str, int]:
    """Type of y1 ⊕ y2 for characteristic-2 involutions (or identities, type '1')."""
    l = l1 + l2
    if l == 0:
        return ("1", 0)
    if t1 in ("a", "1") and t2 in ("a", "1"):
        return ("a", l)
    return ("b", l) if l % 2 else ("c", l)


def _fix_unipotent_involution(cls: UnipotentInvolutionClass, n: int, r: int, q: int) -> int:
    whole = cd.sp_centralizer_order(cls, n, q)
    total = 0
    for t1, l1 in _invol_types(r):
        for t2, l2 in _invol_types(n - r):
            if combine_involution_types(t1, l1, t2, l2) != (cls.kind, cls.l):
                continue
            total += whole // (_invol_centralizer(t1, l1, r, q) * _invol_centralizer(t2, l2, n - r, q))
    return total


def fixed_points_exact(cls: PrimeOrderClass, action: ActionSpec) -> int:
    """Number of subspaces in N_r fixed by an element of the class."""
    n, r, q = action.n, action.r, action.q
    cd.validate(cls, n, q)
    if isinstance(cls, SemisimpleOddClass):
        return _fix_semisimple_odd(cls, n, r, q)
    if isinstance(cls, SemisimpleInvolutionClass):
        return _fix_involution(cls, n, r, q)
    if isinstance(cls, UnipotentOddClass):
        return _fix_unipotent_odd(cls, n, r, q)
    if isinstance(cls, UnipotentInvolutionClass):
        return _fix_unipotent_involution(cls, n, r, q)
    raise UnsupportedSplitting(f"no splitting rule for {cls!r}")


def split_count_exact(cls: PrimeOrderClass, action: ActionSpec) -> int:
    """|x^G ∩ H| computed exactly."""
    fix = fixed_points_exact(cls, action)
    size = cd.class_size(cls, action.n, action.q)
    num = fix * size
    if num % action.orbit_size:
        raise ArithmeticError(f"fix * |x^G| not divisible by |N_r| for {cls.label()}")
    return num // action.orbit_size


# -- bounds from the closed-form estimates ------------------------------------------------


def _sum_upper(*bounds: Bound) -> int:
    return sum(b.upper() for b in bounds)


def _distinct_nontrivial_parts(partition) -> list[int]:
    return sorted({x for x in partition if x > 1}, reverse=True)


def fixed_count_bound(cls: PrimeOrderClass, action: ActionSpec) -> int:
    """Closed-form upper bound on |x^G ∩ H| (integer, rounded up)."""
    n, q, m = action.n, action.q, action.m
    cd.validate(cls, n, q)
    dim = Fraction(cd.dim_class(cls, n))
    F = Fraction
    if isinstance(cls, SemisimpleOddClass):
        d, e, i, ell = cls.d, cls.e, cls.i, cls.ell
        pre = F(n - ell, d * i) + 1
        return Bound(2 ** (d * (e - 1)), [(pre, F(d, e)), (q, dim / 2 + F(n - ell, 4) + m * m)]).upper()
    if isinstance(cls, SemisimpleInvolutionClass):
        if cls.kind == "t":
            s = cls.s
            return Bound(4 * F(q * q + 1, q * q - 1), [(q, F(s * (n - s), 2) - m * (1 - m))]).upper()
        if cls.kind == "sp2":
            if (n // 4) % 2 == 0:
                return 0
            return Bound(F(1, 4), [(q, F(n * n, 8) + 2)]).upper()
        return Bound(F(1, 4), [(q, F(n * n, 8) + F(n, 2) + F(m * m, 2))]).upper()
    if isinstance(cls, UnipotentOddClass):
        lam = cls.partition
        ones = lam.count(1)
        big = _distinct_nontrivial_parts(lam)
        odd_parts = sum(1 for x in lam if x % 2)
        if ones == 0 and len(big) == 1:
            return Bound(4, [(q, dim / 2 + F(n - odd_parts, 4) + m * m)]).upper()
        if big == [2]:
            j = lam.count(2)
            if j == 1:
                return q ** (n // 2 + m) + q ** (n // 2 - m)
            if j == 2:
                return q ** ((n - 2 * m) // 2 + (n + 2 * m) // 2) + 2 * q ** (n - 4 + m * (m - 1)) + 2 * q ** (n + m * (m - 1))
            return Bound(4 * (j + 1), [(q, dim / 2 + F(j, 2) + m * m)]).upper()
        l = ones
        d = len(big)
        if d == 1:
            k = big[0]
            alpha = k % 2
            return Bound(4 * (F(n - l, k) + 1), [(q, dim / 2 + F(n - l, 4) * (1 - F(alpha, k)) + m * m)]).upper()
        inner = (F(n, 2) - F(d * d, 4) + F(d, 4) - F(l, 2) - 1) / d + 1
        return Bound(4**d * inner**d, [(q, dim / 2 + F(n - l, 4) + m * m)]).upper()
    l = cls.l
    if cls.kind == "a":
        if l == 2:
            return 2 * q ** (2 * (n // 2 - m - 2)) + 2 * q ** (2 * (n // 2 + m - 2))
        return Bound(4 * (F(l, 2) + 1), [(q, (F(1, 2) + F(3 * m, 2 * n)) * l * (n - l))]).upper()
    if l == 1:
        return q ** (n // 2 - m) + q ** (n // 2 + m)
    if l == 2:
        return q**n + q ** (2 * (n // 2 - m - 1)) + q ** (2 * (n // 2 + m - 1))
    c = 4 * F(q * q + 1, q * q - 1)
    return _sum_upper(
        Bound(c, [(q, dim / 2 + 2 * m - 1)]),
        Bound(c, [(q, dim / 2 + m - 1)]),
        Bound(c, [(q, dim / 2 + F(l, 2) + m)]),
    )


def class_size_lower_bound(cls: PrimeOrderClass, n: int, q: int) -> int:
    """Closed-form lower bound on |x^G| (integer, rounded down)."""
    cd.validate(cls, n, q)
    dim = cd.dim_class(cls, n)
    F = Fraction
    if isinstance(cls, SemisimpleOddClass):
        return Bound(F(1, 2) * F(q, q + 1) ** (cls.d * (2 - cls.e)), [(q, dim)]).lower()
    if isinstance(cls, SemisimpleInvolutionClass):
        if cls.kind == "t":
            return Bound(F(1, 2) if cls.s < n // 2 else F(1, 4), [(q, dim)]).lower()
        if cls.kind == "sp2":
            return Bound(F(1, 4), [(q, F(n * n, 4))]).lower()
        return Bound(F(1, 4) * F(q, q + 1), [(q, F(n * (n + 2), 4))]).lower()
    if isinstance(cls, UnipotentOddClass):
        lam = cls.partition
        ones = lam.count(1)
        big = _distinct_nontrivial_parts(lam)
        if ones == 0 and len(big) == 1:
            return Bound(F(q, q + 1), [(q, dim)]).lower()
        if big == [2]:
            j = lam.count(2)
            if j == 1:
                return Bound(F(1, 4), [(q, n)]).lower()
            if j == 2:
                return Bound(F(1, 4 * (q + 1)), [(q, 2 * n - 1)]).lower()
            return Bound(F(1, 4), [(q, j * (n - j + 1))]).lower()
        d = len(big)
        return Bound(F(1, 2 ** (d + 1)) * F(q, q + 1) ** d, [(q, dim)]).lower()
    if cls.kind == "a":
        return Bound(F(1, 2), [(q, cls.l * (n - cls.l))]).lower()
    return Bound(F(1, 2), [(q, cls.l * (n - cls.l + 1))]).lower()


# -- ratio test ---------------------------------------------------------------------------


def ratio_passes(meet: int, size: int) -> bool:
    """log(meet)/log(size) < 11/15, decided exactly as meet^15 < size^11."""
    return meet**15 < size**11


def is_sp8_exception(cls: PrimeOrderClass, n: int) -> bool:
    """The class of transvections (Jordan form (2, 1^6)) in dimension 8."""
    if n != 8:
        return False
    if isinstance(cls, UnipotentInvolutionClass):
        return cls.kind == "b" and cls.l == 1
    if isinstance(cls, UnipotentOddClass):
        return cls.partition == (2,) + (1,) * 6
    return False


@dataclass(frozen=True)
class RatioVerdict:
    cls: PrimeOrderClass
    meet: int  # |x^G ∩ H| exactly, or an upper bound
    size: int  # |x^G| exactly, or a lower bound
    exact: bool
    passed: bool
    exception: bool


def ratio_test(cls: PrimeOrderClass, action: ActionSpec, use_exact: bool = True) -> RatioVerdict:
    n, q = action.n, action.q
    exact_size = cd.class_size(cls, n, q)
    if exact_size < 2:
        raise ValueError("ratio test needs a class of size at least 2")
    if use_exact:
        meet, size = split_count_exact(cls, action), exact_size
    else:
        meet, size = fixed_count_bound(cls, action), class_size_lower_bound(cls, n, q)
    ok = ratio_passes(meet, size) if size > 1 else False
    return RatioVerdict(cls, meet, size, use_exact, ok, is_sp8_exception(cls, n))


# -- brute force ------------------------------------------------------------------------------


def _rref_batches(F: GF, n: int, k: int, chunk: int = 1 << 18):
    """All k-dimensional subspaces of GF(q)^n as batches of reduced echelon bases."""
    from itertools import combinations

    q = F.q
    for piv in combinations(range(n), k):
        free = [(t, c) for t in range(k) for c in range(piv[t] + 1, n) if c not in piv]
        total = q ** len(free)
        base = np.zeros((k, n), dtype=np.int64)
        for t, c in enumerate(piv):
            base[t, c] = 1
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            B = np.broadcast_to(base, (len(idx), k, n)).copy()
            rem = idx.copy()
            for t, c in free:
                B[:, t, c] = rem % q
                rem //= q
            yield piv, B


def _batch_rank(F: GF, A) -> np.ndarray:
    """Ranks of a batch of matrices (leading axis) over GF(q)."""
    A = np.array(A, dtype=np.int64, copy=True)
    b, rows, cols = A.shape
    rank = np.zeros(b, dtype=np.int64)
    row = np.zeros(b, dtype=np.int64)
    ar = np.arange(b)
    for c in range(cols):
        col = A[:, :, c]
        cand = (col != 0) & (np.arange(rows)[None, :] >= row[:, None])
        has = cand.any(axis=1)
        pr = np.argmax(cand, axis=1)
        sel = ar[has]
        if sel.size == 0:
            continue
        prow = A[sel, pr[sel]]
        target = A[sel, row[sel]]
        A[sel, row[sel]] = prow
        A[sel, pr[sel]] = target
        pv = A[sel, row[sel], c]
        inv = F.vinv(pv)
        A[sel, row[sel]] = F.vmul(A[sel, row[sel]], inv[:, None])
        pivot_rows = A[sel, row[sel]]
        for t in range(rows):
            mask = t != row[sel]
            f = F.vneg(A[sel, t, c]) * mask
            A[sel, t] = F.vadd(A[sel, t], F.vmul(pivot_rows, f[:, None]))
        row[sel] += 1
        rank[sel] += 1
    return rank


def grassmannian_size(q: int, n: int, k: int) -> int:
    num = prod(q ** (n - t) - 1 for t in range(k))
    den = prod(q ** (k - t) - 1 for t in range(k))
    return num // den


def brute_fixed_count(g, action: ActionSpec, gram=None, limit: int | None = None) -> int:
    """Count non-degenerate r-subspaces W with Wg = W by scanning all r-subspaces."""
    F = action.group.field
    n, r = action.n, action.r
    limit = limit if limit is not None else point_limit()
    if grassmannian_size(F.q, n, r) > limit:
        raise ResourceLimitExceeded("Grassmannian too large to scan")
    G = action.group.form.gram if gram is None else np.asarray(gram, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    count = 0
    for piv, B in _rref_batches(F, n, r):
        gram_w = M.matmul(F, M.matmul(F, B, G), M.transpose(B))
        nondeg = _batch_rank(F, gram_w) == r
        B = B[nondeg]
        if not len(B):
            continue
        Y = M.matmul(F, B, g)
        # y lies in the row space iff y = sum_t y[piv_t] * B_t
        recon = np.zeros_like(Y)
        for t, c in enumerate(piv):
            recon = F.vadd(recon, F.vmul(Y[:, :, c:c + 1], B[:, t:t + 1, :]))
        count += int(np.all(recon == Y, axis=(1, 2)).sum())
    return count
