"""Classical group specifications, exact orders and generating sets."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import gcd, prod

import numpy as np

from ..gf import GF, field, prime_power
from . import matrix as M
from .forms import FormSpec, standard_alternating, standard_hermitian, standard_symmetric

FAMILIES = ("GL", "SL", "GU", "SU", "Sp", "GSp", "SO", "Omega")


class InadmissibleGroup(ValueError):
    pass


def gl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def gu_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(1, n + 1))


def su_order(n: int, q: int) -> int:
    return gu_order(n, q) // (q + 1)


def gl_eps_order(n: int, q: int, eps: int) -> int:
    """|GL_n(q)| for eps = +1 and |GU_n(q)| for eps = -1."""
    return gl_order(n, q) if eps == 1 else gu_order(n, q)


def sp_order(n: int, q: int) -> int:
    if n % 2 or n < 0:
        raise InadmissibleGroup(f"Sp needs even dimension, got {n}")
    k = n // 2
    return q ** (k * k) * prod(q ** (2 * i) - 1 for i in range(1, k + 1))


def o_order(n: int, q: int, eps: int = 0) -> int:
    """Order of the full isometry group O^eps_n(q) of a non-degenerate quadratic form."""
    if n == 0:
        return 1
    if n % 2:
        if q % 2 == 0:
            raise InadmissibleGroup("odd-dimensional orthogonal groups need q odd here")
        k = n // 2
        return 2 * q ** (k * k) * prod(q ** (2 * i) - 1 for i in range(1, k + 1))
    k = n // 2
    if eps not in (1, -1):
        raise InadmissibleGroup("even-dimensional orthogonal group needs a sign")
    return 2 * q ** (k * (k - 1)) * (q**k - eps) * prod(q ** (2 * i) - 1 for i in range(1, k))


def so_order(n: int, q: int, eps: int = 0) -> int:
    if q % 2 == 0:
        return o_order(n, q, eps)
    return o_order(n, q, eps) // 2


def omega_order(n: int, q: int, eps: int = 0) -> int:
    if q % 2 == 0:
        if n % 2:
            return sp_order(n - 1, q)
        return o_order(n, q, eps) // 2
    return o_order(n, q, eps) // 4 if n > 1 else 1


def _sign_int(sign) -> int:
    return {"+": 1, "-": -1, None: 0, 1: 1, -1: -1, 0: 0}[sign]


@dataclass(eq=False)
class GroupSpec:
    family: str
    n: int
    q: int
    sign: str | None = None
    form: FormSpec | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InadmissibleGroup(f"unknown family {self.family!r}")
        prime_power(self.q)
        if self.n < 1:
            raise InadmissibleGroup("dimension must be positive")
        if self.family in ("Sp", "GSp") and (self.n % 2 or self.n < 2):
            raise InadmissibleGroup(f"{self.family} needs even n >= 2")
        if self.family in ("SL", "SU", "GU") and self.n < 1:
            raise InadmissibleGroup("bad dimension")
        if self.family in ("SO", "Omega"):
            if self.n % 2 == 0 and self.sign not in ("+", "-"):
                raise InadmissibleGroup("even-dimensional orthogonal groups need sign '+' or '-'")
            if self.n % 2 == 1 and self.q % 2 == 0:
                raise InadmissibleGroup("odd-dimensional orthogonal groups need q odd")
        if self.form is None:
            self.form = default_form(self)

    @property
    def field(self) -> GF:
        return field(self.q**2 if self.family in ("GU", "SU") else self.q)

    @cached_property
    def order(self) -> int:
        return group_order(self)

    @property
    def center_order(self) -> int:
        n, q, f = self.n, self.q, self.family
        if f == "GL":
            return q - 1
        if f == "SL":
            return gcd(n, q - 1)
        if f == "GU":
            return q + 1
        if f == "SU":
            return gcd(n, q + 1)
        if f == "Sp":
            return gcd(2, q - 1)
        if f == "GSp":
            return q - 1
        if f == "SO":
            return 1 if (n % 2 or q % 2 == 0) else (2 if (q ** (n // 2) - _sign_int(self.sign)) % 2 == 0 else 1)
        if n % 2 or q % 2 == 0:
            return 1
        return gcd(4, q ** (n // 2) - _sign_int(self.sign)) // 2

    def label(self) -> str:
        s = self.sign or ""
        return f"{self.family}{s}_{self.n}({self.q})"


def default_form(spec: GroupSpec) -> FormSpec | None:
    F = spec.field
    if spec.family in ("Sp", "GSp"):
        return standard_alternating(F, spec.n)
    if spec.family in ("GU", "SU"):
        return standard_hermitian(F, spec.n)
    if spec.family in ("SO", "Omega"):
        return standard_symmetric(F, spec.n, spec.sign)
    return None


def group_order(spec: GroupSpec) -> int:
    n, q, f = spec.n, spec.q, spec.family
    eps = _sign_int(spec.sign)
    if f == "GL":
        return gl_order(n, q)
    if f == "SL":
        return sl_order(n, q)
    if f == "GU":
        return gu_order(n, q)
    if f == "SU":
        return su_order(n, q)
    if f == "Sp":
        return sp_order(n, q)
    if f == "GSp":
        return sp_order(n, q) * (q - 1)
    if f == "SO":
        return so_order(n, q, eps)
    if f == "Omega":
        return omega_order(n, q, eps)
    raise InadmissibleGroup(f)


def scalar_subgroup_order(spec: GroupSpec) -> int:
    """Number of scalar matrices lying in the matrix group."""
    return spec.center_order


# -- generators -----------------------------------------------------------------


def _elementary(n: int, i: int, j: int, t: int) -> np.ndarray:
    E = np.eye(n, dtype=np.int64)
    E[i, j] = t
    return E


def _field_basis(F: GF) -> list[int]:
    """x^0, ..., x^(e-1): an additive basis of GF(q) over GF(p)."""
    return [int(F.exp[k]) for k in range(F.e)] if F.e > 1 else [1]


def _perm_matrix(perm) -> np.ndarray:
    n = len(perm)
    P = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        P[i, j] = 1
    return P


def _sl_generators(F: GF, n: int) -> list[np.ndarray]:
    gens = []
    for t in _field_basis(F):
        for i in range(n - 1):
            gens.append(_elementary(n, i, i + 1, t))
            gens.append(_elementary(n, i + 1, i, t))
    return gens


def _sp_generators(F: GF, n: int) -> list[np.ndarray]:
    k = n // 2
    gens = []
    for t in _field_basis(F):
        gens.append(_elementary(n, 0, 1, t))
        gens.append(_elementary(n, 1, 0, t))
    if k > 1:
        # swap the first two hyperbolic pairs, and cycle all pairs
        perm = list(range(n))
        perm[0:4] = [2, 3, 0, 1]
        gens.append(_perm_matrix(perm))
        cyc = [(2 * ((i // 2 + 1) % k)) + i % 2 for i in range(n)]
        gens.append(_perm_matrix(cyc))
        # symplectic transvection along e1 + e2
        G = standard_alternating(F, n).gram
        v = np.zeros((1, n), dtype=np.int64)
        v[0, 0] = v[0, 2] = 1
        gens.append(M.add(F, np.eye(n, dtype=np.int64), M.matmul(F, M.matmul(F, G, v.T), v)))
    return gens


def _su2_generators(F: GF) -> list[np.ndarray]:
    """A generating set for SU_2 with the identity hermitian form."""
    q = F.base_order
    target = q * (q * q - 1)
    norm = [F.mul(a, F.conj(a)) for a in range(F.q)]
    cands = []
    for a in F.elements():
        for b in F.elements():
            if F.add(norm[a], norm[b]) == 1 and b != 0:
                cands.append(np.array([[a, b], [F.neg(F.conj(b)), F.conj(a)]], dtype=np.int64))
    gens: list[np.ndarray] = []
    closure = {M.key(np.eye(2, dtype=np.int64))}
    for c in cands:
        if M.key(c) in closure:
            continue
        gens.append(c)
        closure = _close(F, gens)
        if len(closure) == target:
            return gens
    raise RuntimeError("failed to generate SU_2")


def _close(F: GF, gens) -> set[bytes]:
    seen = {M.key(np.eye(gens[0].shape[0], dtype=np.int64)): np.eye(gens[0].shape[0], dtype=np.int64)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = M.matmul(F, x, g)
                k = M.key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
    return set(seen)


def _unitary_generators(F: GF, n: int, full: bool) -> list[np.ndarray]:
    gens = []
    for s in _su2_generators(F) if n > 1 else []:
        g = np.eye(n, dtype=np.int64)
        g[:2, :2] = s
        gens.append(g)
    minus = F.neg(1)
    if n > 2:
        t = _perm_matrix([1, 0] + list(range(2, n)))
        t[0] = F.vmul(t[0], minus)
        gens.append(t)
        c = _perm_matrix([(i + 1) % n for i in range(n)])
        if (n - 1) % 2:
            c[0] = F.vmul(c[0], minus)
        gens.append(c)
    q = F.base_order
    lam = F.pow(F.gen, q - 1)  # generates the norm-one subgroup of order q + 1
    if full:
        d = np.eye(n, dtype=np.int64)
        d[0, 0] = lam
        gens.append(d)
    elif n == 1:
        gens.append(np.eye(1, dtype=np.int64))
    return gens


def _random_unitary(F: GF, n: int, rng: np.random.Generator) -> np.ndarray:
    """A determinant-one isometry of the identity hermitian form.

    For invertible A the Gram matrix A conj(A)^T is hermitian, and any P with
    P (A conj(A)^T) conj(P)^T = I makes PA unitary.
    """
    from .forms import orthonormal_basis

    while True:
        A = rng.integers(0, F.q, size=(n, n))
        if M.det(F, A):
            break
    U = M.matmul(F, orthonormal_basis(F, M.matmul(F, A, F.vconj(A).T)), A)
    U[0] = F.vmul(U[0], F.inv(M.det(F, U)))
    return U


def _complete_unitary(spec: GroupSpec, gens: list[np.ndarray]) -> list[np.ndarray]:
    """Append seeded random unitary elements until the chain order reaches |G|.

    Small fields make the norm-one SU_2 blocks monomial, so the structured
    generators alone can span a proper subgroup.
    """
    from .chain import StabilizerChain

    F = spec.field
    rng = np.random.default_rng(spec.n * 1000 + spec.q)
    target = spec.order
    for _ in range(16):
        if StabilizerChain(F, gens, order_hint=target).order == target:
            return gens
        gens = gens + [_random_unitary(F, spec.n, rng)]
    raise RuntimeError(f"could not generate {spec.label()}")


@lru_cache(maxsize=None)
def _unitary_generator_cache(fam: str, n: int, q: int) -> tuple:
    spec = GroupSpec(fam, n, q)
    gens = _complete_unitary(spec, _unitary_generators(spec.field, n, full=(fam == "GU")))
    for g in gens:
        g.setflags(write=False)
    return tuple(gens)


def _reflection(F: GF, G, v) -> np.ndarray:
    """Orthogonal reflection in the non-singular vector v (q odd)."""
    n = G.shape[0]
    v = np.atleast_2d(v)
    Bvv = int(M.matmul(F, M.matmul(F, v, G), v.T)[0, 0])
    c = F.neg(F.div(2 % F.p, Bvv))
    return M.add(F, np.eye(n, dtype=np.int64), M.scale(F, c, M.matmul(F, M.matmul(F, G, v.T), v)))


def _orthogonal_generators(F: GF, spec: GroupSpec) -> list[np.ndarray]:
    """Greedy products of two reflections in vectors with entries in {0, 1, -1} (q odd).

    A product r_u r_w has spinor norm Q(u)Q(w) modulo squares, so pairs from
    one square class lie in Omega; SO also admits mixed pairs.
    """
    from itertools import product as iproduct

    from .chain import StabilizerChain

    if F.p == 2:
        raise NotImplementedError("orthogonal generators are implemented for odd q only")
    G = spec.form.gram
    n = spec.n
    classes: dict[bool, list] = {True: [], False: []}
    for coeffs in iproduct((0, 1, F.neg(1)), repeat=n):
        v = np.array(coeffs, dtype=np.int64)
        if not v.any() or int(v[np.flatnonzero(v)[0]]) != 1:
            continue
        val = int(M.matmul(F, M.matmul(F, v[None], G), v[None].T)[0, 0])
        if val:
            classes[F.is_square(val)].append(v)
    cands = []
    for vs in classes.values():
        cands += [M.matmul(F, _reflection(F, G, vs[0]), _reflection(F, G, w)) for w in vs[1:]]
    if spec.family == "SO" and classes[True] and classes[False]:
        cands.append(M.matmul(F, _reflection(F, G, classes[True][0]), _reflection(F, G, classes[False][0])))
    target = spec.order
    gens: list[np.ndarray] = []
    chain = None
    for c in cands:
        if M.is_identity(c) or (chain is not None and chain.contains(c)):
            continue
        gens.append(c)
        chain = StabilizerChain(F, gens, order_hint=target)
        if chain.order == target:
            return gens
    raise RuntimeError(f"could not generate {spec.label()}")


def standard_generators(spec: GroupSpec) -> list[np.ndarray]:
    F = spec.field
    n = spec.n
    fam = spec.family
    if fam in ("SL", "GL"):
        gens = _sl_generators(F, n) if n > 1 else []
        if fam == "GL" or n == 1:
            d = np.eye(n, dtype=np.int64)
            d[0, 0] = F.gen if fam == "GL" else 1
            gens.append(d)
        return gens
    if fam in ("Sp", "GSp"):
        gens = _sp_generators(F, n)
        if fam == "GSp":
            # similitude scaling the e_i by a primitive element
            d = np.eye(n, dtype=np.int64)
            for k in range(0, n, 2):
                d[k, k] = F.gen
            gens.append(d)
        return gens
    if fam in ("SU", "GU"):
        return list(_unitary_generator_cache(fam, n, spec.q))
    if fam in ("SO", "Omega"):
        return _orthogonal_generators(F, spec)
    raise InadmissibleGroup(fam)
