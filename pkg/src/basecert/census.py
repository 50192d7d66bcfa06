"""Prime-order class sizes of U_5(2) and its outer involutions, by orbit enumeration.

Each class size is the length of a conjugation orbit computed element by
element.  Representatives of the involution and order-3 classes are written
down directly.  The 5- and 11-classes are found by seeded random search and told apart by
their eigenvalue patterns (semisimple classes of SU_5(2) are determined by
them since gcd(5, 3) = 1).  Their sizes come from listing the centralizer
inside the commutant algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .gf import GF
from .matgrp import matrix as M
from .matgrp.elements import eigen_multiplicities
from .matgrp.enumerate import conjugacy_orbit_size
from .matgrp.forms import preserves_form
from .matgrp.groups import GroupSpec, standard_generators
from .weights import covering_inequality_check

# expected number of classes of each prime order in SU_5(2)
EXPECTED_CLASS_COUNTS = {2: 2, 3: 6, 5: 1, 11: 2}


@dataclass(frozen=True)
class EnumeratedClass:
    label: str
    order: int
    size: int


def _transvection_product(F: GF, vectors) -> np.ndarray:
    """Product of unitary transvections x -> x + (x . conj(v)) v for isotropic v (char 2)."""
    n = len(vectors[0])
    g = np.eye(n, dtype=np.int64)
    for v in vectors:
        v = np.asarray(v, dtype=np.int64)
        T = M.add(F, np.eye(n, dtype=np.int64), M.matmul(F, F.vconj(v)[:, None], v[None, :]))
        g = M.matmul(F, g, T)
    return g


def centralizer_order(F: GF, x, form, max_dim: int = 8) -> int:
    """|C(x)| in the special isometry group of ``form``, by listing the commutant algebra of x."""
    basis = M.commutant(F, [x])
    d, n = len(basis), x.shape[0]
    if d > max_dim:
        raise ValueError(f"commutant of dimension {d} is too large to list")
    coeffs = np.array(list(iproduct(range(F.q), repeat=d)), dtype=np.int64).reshape(-1, d)
    E = np.zeros((len(coeffs), n * n), dtype=np.int64)
    for k in range(d):
        E = F.vadd(E, F.vmul(coeffs[:, k, None], basis[k][None, :]))
    E = E.reshape(-1, n, n)
    G = form.gram
    image = M.matmul(F, M.matmul(F, E, G), np.swapaxes(F.vconj(E), 1, 2))
    isometries = E[np.all(image == G, axis=(1, 2))]
    return sum(1 for g in isometries if M.det(F, g) == 1)


def _order3_patterns(n: int) -> list[tuple[int, int, int]]:
    """Multiplicities (a, b, c) of 1, w, w^2 with det 1, excluding the identity."""
    return [(a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)
            if (b - (n - a - b)) % 3 == 0 and a != n]


class _Sampler:
    """Seeded random walk through a matrix group."""

    def __init__(self, F: GF, gens, seed: int):
        self.F = F
        self.rng = np.random.default_rng(seed)
        self.gens = [np.asarray(g, dtype=np.int64) for g in gens]
        self.x = np.eye(self.gens[0].shape[0], dtype=np.int64)

    def __call__(self) -> np.ndarray:
        for _ in range(8):
            g = self.gens[self.rng.integers(len(self.gens))]
            self.x = M.matmul(self.F, self.x, g)
        return self.x


def su5_2_census(seed: int = 0, tries: int = 2000) -> list[EnumeratedClass]:
    """Prime-order classes of SU_5(2) = U_5(2), plus the outer involution class 2C."""
    spec = GroupSpec("SU", 5, 2)
    F = spec.field
    gens = standard_generators(spec)
    w = F.gen  # primitive cube root of unity in GF(4)
    out: list[EnumeratedClass] = []

    for label, vecs in (("2A", [[1, 1, 0, 0, 0]]), ("2B", [[1, 1, 0, 0, 0], [0, 0, 1, 1, 0]])):
        g = _transvection_product(F, vecs)
        assert preserves_form(F, g, spec.form)
        out.append(EnumeratedClass(label, 2, conjugacy_orbit_size(F, gens, g)))

    for k, (a, b, c) in enumerate(_order3_patterns(5)):
        g = np.diag(np.array([1] * a + [w] * b + [F.mul(w, w)] * c, dtype=np.int64))
        out.append(EnumeratedClass("3" + "ABCDEF"[k], 3, conjugacy_orbit_size(F, gens, g)))

    found: dict[int, dict] = {5: {}, 11: {}}
    sample = _Sampler(F, gens, seed)
    for _ in range(tries):
        if all(len(found[p]) == EXPECTED_CLASS_COUNTS[p] for p in found):
            break
        x = sample()
        o = M.element_order(F, x)
        for p in found:
            if o % p == 0:
                y = M.matpow(F, x, o // p)
                pattern = tuple(sorted(eigen_multiplicities(F, y, p)[2].items()))
                found[p].setdefault(pattern, y)
    order = spec.order
    for p, reps in found.items():
        if len(reps) != EXPECTED_CLASS_COUNTS[p]:
            raise RuntimeError(f"found {len(reps)} classes of order {p}")
        for k, (_, y) in enumerate(sorted(reps.items())):
            out.append(EnumeratedClass(f"{p}{'AB'[k]}", p, order // centralizer_order(F, y, spec.form)))

    # outer involutions: the coset of the Frobenius map, conjugated by h gives h^-1 h^sigma
    frob = lambda h: F.vconj(h)
    size = conjugacy_orbit_size(F, gens, np.eye(5, dtype=np.int64), twist=frob)
    out.append(EnumeratedClass("2C", 2, size))
    return out


def u5_2_fixed_space_classes(census: list[EnumeratedClass]) -> list[tuple[int, int]]:
    """(count, fixed-space dimension) pairs for <-I> x U_5(2).2 on its 10-dimensional module over GF(3).

    Involution classes pair with their negatives; elements of order 3 are
    capped at dimension 8.  The central involution -I fixes nothing.
    """
    size = {c.label: c.size for c in census}
    dims = {"2A": (2, 8), "2B": (6, 4), "2C": (5, 5)}
    rows = [(size[k], d) for k, pair in dims.items() for d in pair]
    rows.append((size["5A"], 2))
    rows.append((size["11A"] + size["11B"], 0))
    rows.append((sum(c.size for c in census if c.order == 3), 8))
    rows.append((1, 0))
    return rows


def u5_2_covering_check(census: list[EnumeratedClass] | None = None) -> bool:
    """The covering inequality for U_5(2) in GL_10(3); False means contradiction."""
    census = su5_2_census() if census is None else census
    return covering_inequality_check(10, 3, u5_2_fixed_space_classes(census))
