"""Prime-order conjugacy classes of PGSp_n(q) described by invariants.

Classes are never stored as matrices.  Each descriptor carries the data that
determines its class (eigenvalue multiplicities, a Jordan partition with its
form discriminants, or an involution type), and the functions here turn that
into exact centralizer orders, class sizes and algebraic class dimensions.

Sizes are for the projective group G = PGSp_n(q).  Since |PGSp_n(q)| equals
|Sp_n(q)|, ``centralizer_order`` returns |G| / |x^G|.

Semisimple classes of odd order come in Galois families: assignments of the
same multiplicity multiset to different Frobenius orbits of r-th roots of
unity give distinct classes with identical data.  A descriptor stands for the
whole family, and ``class_count`` says how many classes it covers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Union

from .gf import prime_power
from .matgrp.groups import gl_order, gu_order, sp_order


class InadmissibleClass(ValueError):
    pass


# -- descriptors ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SemisimpleOddClass:
    """Element of odd prime order r coprime to q.

    ``i`` is the order of q modulo r, ``ell`` the dimension of the 1-eigenspace
    and ``a`` the non-zero eigenvalue multiplicities, one per Frobenius orbit
    (i even) or per pair of mutually inverse orbits (i odd), sorted descending.
    """

    r: int
    i: int
    ell: int
    a: tuple[int, ...]

    @property
    def e(self) -> int:
        return 1 if self.i % 2 == 0 else 2

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def order(self) -> int:
        return self.r

    def label(self) -> str:
        return f"ss r={self.r} i={self.i} l={self.ell} a={','.join(map(str, self.a))}"


@dataclass(frozen=True, order=True)
class SemisimpleInvolutionClass:
    """Involution of PGSp_n(q), q odd.

    kind ``t``: eigenspaces of dimensions s and n - s (s even, s <= n/2);
    ``gl+`` / ``gl-``: centralizer GL_{n/2}(q).2 / GU_{n/2}(q).2;
    ``sp2``: centralizer Sp_{n/2}(q^2).2.  ``inner`` records whether the class
    meets PSp_n(q).
    """

    kind: str
    s: int
    inner: bool = True

    @property
    def order(self) -> int:
        return 2

    def label(self) -> str:
        tag = "" if self.inner else " outer"
        return f"inv {self.kind} s={self.s}{tag}"


@dataclass(frozen=True, order=True)
class UnipotentOddClass:
    """Unipotent element of odd prime order p.

    ``partition`` lists Jordan block sizes in descending order.  ``forms``
    gives, for each even part size j that occurs, the discriminant class
    (0 square, 1 non-square) of the induced symmetric form on the
    multiplicity space of j.
    """

    p: int
    partition: tuple[int, ...]
    forms: tuple[tuple[int, int], ...] = ()

    @property
    def order(self) -> int:
        return self.p

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.partition))

    def label(self) -> str:
        parts = ",".join(f"{j}^{m}" if m > 1 else str(j) for j, m in sorted(self.multiplicities.items(), reverse=True))
        disc = "".join(str(dv) for _, dv in self.forms)
        return f"unip ({parts})" + (f" disc={disc}" if disc else "")


@dataclass(frozen=True, order=True)
class UnipotentInvolutionClass:
    """Involution in characteristic 2 with Jordan form (2^l, 1^(n-2l)).

    Types a and c need l even; a-type involutions satisfy (v, vx) = 0 for
    all v, and every odd l gives a single class of type b.
    """

    kind: str
    l: int

    @property
    def order(self) -> int:
        return 2

    def label(self) -> str:
        return f"{self.kind}{self.l}"


PrimeOrderClass = Union[SemisimpleOddClass, SemisimpleInvolutionClass, UnipotentOddClass, UnipotentInvolutionClass]

TYPE_NAMES = {
    SemisimpleOddClass: "semisimple-odd",
    SemisimpleInvolutionClass: "semisimple-involution",
    UnipotentOddClass: "unipotent-odd",
    UnipotentInvolutionClass: "unipotent-involution",
}


def type_name(cls: PrimeOrderClass) -> str:
    return TYPE_NAMES[type(cls)]


# -- small group orders -------------------------------------------------------------


def multiplicative_order(q: int, r: int) -> int:
    if q % r == 0:
        raise InadmissibleClass(f"{r} divides {q}")
    k, x = 1, q % r
    while x != 1:
        x = x * q % r
        k += 1
    return k


def o_even_order(a: int, q: int, eps: int) -> int:
    k = a // 2
    return 2 * q ** (k * (k - 1)) * (q**k - eps) * prod(q ** (2 * j) - 1 for j in range(1, k))


def orthogonal_order(a: int, q: int, disc: int) -> int:
    """|O(f)| for a symmetric form f of dimension a and discriminant class ``disc`` (q odd)."""
    if a == 0:
        return 1
    if a % 2:
        k = a // 2
        return 2 * q ** (k * k) * prod(q ** (2 * j) - 1 for j in range(1, k + 1))
    k = a // 2
    minus_one_square = q % 4 == 1
    # (-1)^k * det is a square  <=>  plus type
    sq = (disc == 0) == (minus_one_square or k % 2 == 0)
    return o_even_order(a, q, 1 if sq else -1)


def _check_nq(n: int, q: int) -> None:
    prime_power(q)
    if n % 2 or n < 2:
        raise InadmissibleClass(f"symplectic dimension must be even and positive, got {n}")


# -- admissibility ------------------------------------------------------------------------


def validate(cls: PrimeOrderClass, n: int, q: int) -> None:
    _check_nq(n, q)
    p, _ = prime_power(q)
    if isinstance(cls, SemisimpleOddClass):
        if cls.r % 2 == 0 or cls.r == p or cls.r < 3:
            raise InadmissibleClass("semisimple odd class needs an odd prime r different from p")
        if multiplicative_order(q, cls.r) != cls.i:
            raise InadmissibleClass(f"i must be the order of q mod r, got {cls.i}")
        if not cls.a or any(x <= 0 for x in cls.a) or list(cls.a) != sorted(cls.a, reverse=True):
            raise InadmissibleClass("multiplicities must be positive and sorted descending")
        if len(cls.a) > (cls.r - 1) // (cls.e * cls.i):
            raise InadmissibleClass("more multiplicities than eigenvalue orbits")
        if cls.ell + cls.e * cls.i * sum(cls.a) != n or cls.ell % 2:
            raise InadmissibleClass("eigenvalue multiplicities do not add up to n")
    elif isinstance(cls, SemisimpleInvolutionClass):
        if p == 2:
            raise InadmissibleClass("semisimple involutions need q odd")
        if cls.kind == "t":
            if cls.s % 2 or not 0 < cls.s <= n // 2 or not cls.inner:
                raise InadmissibleClass("t-type involution needs even s with 0 < s <= n/2")
        elif cls.kind in ("gl+", "gl-"):
            want = (cls.kind == "gl+") == (q % 4 == 1)
            if cls.s != n // 2 or cls.inner != want:
                raise InadmissibleClass("GL-type involution has s = n/2 and fixed inner/outer status")
        elif cls.kind == "sp2":
            if cls.s != n // 2 or (n // 2) % 2 or cls.inner:
                raise InadmissibleClass("Sp(q^2)-type involution needs n/2 even and is outer")
        else:
            raise InadmissibleClass(f"unknown involution kind {cls.kind!r}")
    elif isinstance(cls, UnipotentOddClass):
        if p == 2 or cls.p != p:
            raise InadmissibleClass("odd unipotent class needs p = char(GF(q)) odd")
        lam = cls.partition
        if sum(lam) != n or list(lam) != sorted(lam, reverse=True) or max(lam) > p or max(lam) < 2:
            raise InadmissibleClass("partition must sum to n, be descending, with parts <= p and not all 1")
        mult = cls.multiplicities
        if any(j % 2 and m % 2 for j, m in mult.items()):
            raise InadmissibleClass("odd parts need even multiplicity")
        evens = sorted((j for j in mult if j % 2 == 0), reverse=True)
        if [j for j, _ in cls.forms] != evens or any(dv not in (0, 1) for _, dv in cls.forms):
            raise InadmissibleClass("need one discriminant per even part, in descending part order")
    elif isinstance(cls, UnipotentInvolutionClass):
        if p != 2:
            raise InadmissibleClass("a/b/c involutions need q even")
        if cls.kind == "b" and cls.l % 2 == 1 and 1 <= cls.l <= n // 2:
            return
        if cls.kind in ("a", "c") and cls.l % 2 == 0 and 2 <= cls.l <= n // 2:
            return
        raise InadmissibleClass(f"inadmissible involution {cls.label()}")
    else:
        raise InadmissibleClass(f"unknown class descriptor {cls!r}")


# -- fusion of odd unipotent classes --------------------------------------------------


def unipotent_fused(cls: UnipotentOddClass) -> bool:
    """True when two Sp-classes merge in PGSp (some even part has odd multiplicity)."""
    mult = cls.multiplicities
    return any(j % 2 == 0 and mult[j] % 2 for j in mult)


def unipotent_partner(cls: UnipotentOddClass) -> UnipotentOddClass:
    """The Sp-class obtained by conjugating with a similitude of non-square multiplier."""
    mult = cls.multiplicities
    forms = tuple((j, (dv + mult[j]) % 2) for j, dv in cls.forms)
    return UnipotentOddClass(cls.p, cls.partition, forms)


def canonical_unipotent(cls: UnipotentOddClass) -> UnipotentOddClass:
    """Representative of the PGSp-class: the smaller of the two fused labels."""
    return min(cls, unipotent_partner(cls)) if unipotent_fused(cls) else cls


# -- centralizers, sizes, dimensions ------------------------------------------------------


def dual_partition_sums(partition) -> list[int]:
    """Sizes of the columns of the Young diagram: #{parts >= i} for i = 1..max."""
    return [sum(1 for x in partition if x >= i) for i in range(1, max(partition) + 1)]


def _unipotent_centralizer_dim(partition) -> int:
    cols = dual_partition_sums(partition)
    odd_parts = sum(1 for x in partition if x % 2)
    return (sum(c * c for c in cols) + odd_parts) // 2


def sp_centralizer_order(cls: PrimeOrderClass, n: int, q: int) -> int:
    """|C_{Sp_n(q)}(x)| for a representative x in Sp_n(q) (inner classes only)."""
    validate(cls, n, q)
    if isinstance(cls, SemisimpleOddClass):
        if cls.i % 2:
            parts = prod(gl_order(a, q**cls.i) for a in cls.a)
        else:
            parts = prod(gu_order(a, q ** (cls.i // 2)) for a in cls.a)
        return sp_order(cls.ell, q) * parts
    if isinstance(cls, SemisimpleInvolutionClass):
        if not cls.inner:
            raise InadmissibleClass("outer involutions have no preimage in Sp_n(q)")
        if cls.kind == "t":
            return sp_order(cls.s, q) * sp_order(n - cls.s, q)
        return gl_order(n // 2, q) if cls.kind == "gl+" else gu_order(n // 2, q)
    if isinstance(cls, UnipotentOddClass):
        mult = cls.multiplicities
        disc = dict(cls.forms)
        red_dim = 0
        red = 1
        for j, a in mult.items():
            if j % 2:
                red *= sp_order(a, q)
                red_dim += a * (a + 1) // 2
            else:
                red *= orthogonal_order(a, q, disc[j])
                red_dim += a * (a - 1) // 2
        return q ** (_unipotent_centralizer_dim(cls.partition) - red_dim) * red
    l = cls.l
    base = l * (l + 1) // 2 + l * (n - 2 * l)
    rest = sp_order(n - 2 * l, q)
    if cls.kind == "b":
        return q**base * sp_order(l - 1, q) * rest
    if cls.kind == "a":
        return q**base * sp_order(l, q) * rest
    return q ** (base + l - 1) * sp_order(l - 2, q) * rest


def centralizer_order(cls: PrimeOrderClass, n: int, q: int) -> int:
    """|C_G(x)| in G = PGSp_n(q), i.e. |Sp_n(q)| / |x^G|."""
    validate(cls, n, q)
    if isinstance(cls, SemisimpleInvolutionClass):
        if cls.kind == "t":
            c = sp_order(cls.s, q) * sp_order(n - cls.s, q)
            return c if cls.s < n // 2 else 2 * c
        if cls.kind == "sp2":
            return 2 * sp_order(n // 2, q * q)
        return 2 * (gl_order(n // 2, q) if cls.kind == "gl+" else gu_order(n // 2, q))
    c = sp_centralizer_order(cls, n, q)
    if isinstance(cls, UnipotentOddClass) and unipotent_fused(cls):
        return c // 2
    return c


def class_size(cls: PrimeOrderClass, n: int, q: int) -> int:
    order = sp_order(n, q)
    c = centralizer_order(cls, n, q)
    if order % c:
        raise ArithmeticError(f"centralizer order of {cls.label()} does not divide |G|")
    return order // c


def dim_class(cls: PrimeOrderClass, n: int) -> int:
    """Dimension of the class of x in the algebraic group Sp_n(K)."""
    top = n * (n + 1) // 2
    if isinstance(cls, SemisimpleOddClass):
        sq = cls.ell * cls.ell + cls.e * cls.i * sum(a * a for a in cls.a)
        return top - (cls.ell + sq) // 2
    if isinstance(cls, SemisimpleInvolutionClass):
        if cls.kind == "t":
            return cls.s * (n - cls.s)
        if cls.kind == "sp2":
            return n * n // 4
        return n * n // 4 + n // 2
    if isinstance(cls, UnipotentOddClass):
        return top - _unipotent_centralizer_dim(cls.partition)
    if cls.kind == "a":
        return cls.l * (n - cls.l)
    return cls.l * (n - cls.l + 1)


def class_count(cls: PrimeOrderClass, n: int, q: int) -> int:
    """Number of G-classes sharing this descriptor's data."""
    validate(cls, n, q)
    if isinstance(cls, SemisimpleOddClass):
        k = (cls.r - 1) // (cls.e * cls.i)
        reps = Counter(cls.a)
        return factorial(k) // (factorial(k - cls.d) * prod(factorial(m) for m in reps.values()))
    return 1


# -- dimension bound on x^G ∩ H ----------------------------------------------------------------------


def nx_bound(cls: PrimeOrderClass, n: int, m: int) -> Fraction:
    """Upper bound on dim(x^G ∩ H) in the algebraic group, H = Sp_{n/2-m} x Sp_{n/2+m}."""
    if m not in (1, 2):
        raise ValueError("m must be 1 or 2")
    dim = Fraction(dim_class(cls, n))
    if isinstance(cls, SemisimpleOddClass):
        return dim / 2 + Fraction(n - cls.ell, 4) + m * m
    if isinstance(cls, SemisimpleInvolutionClass):
        return (Fraction(1, 2) + Fraction(2, n)) * dim
    if isinstance(cls, UnipotentOddClass):
        odd = sum(1 for x in cls.partition if x % 2)
        return dim / 2 + Fraction(n - odd, 4) + m * m
    if cls.kind == "a":
        return (Fraction(1, 2) + Fraction(3 * m, 2 * n)) * dim
    return (Fraction(1, 2) + Fraction(2 * m + 1, n + 2)) * dim


# -- enumeration ----------------------------------------------------------------------------


def _prime_divisors(x: int) -> list[int]:
    out, d = [], 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _multisets(total_max: int, k: int, largest: int | None = None):
    """Descending tuples of positive integers, at most k entries, sum <= total_max."""
    largest = total_max if largest is None else largest
    yield ()
    if k == 0:
        return
    for first in range(min(largest, total_max), 0, -1):
        for rest in _multisets(total_max - first, k - 1, first):
            yield (first,) + rest


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _semisimple_odd(n: int, q: int, p: int):
    primes = set()
    for j in range(1, n // 2 + 1):
        primes.update(_prime_divisors(q ** (2 * j) - 1))
    for r in sorted(primes):
        if r == 2 or r == p:
            continue
        i = multiplicative_order(q, r)
        e = 1 if i % 2 == 0 else 2
        k = (r - 1) // (e * i)
        for a in _multisets(n // (e * i), k):
            if not a:
                continue
            ell = n - e * i * sum(a)
            yield SemisimpleOddClass(r, i, ell, a)


def _semisimple_involutions(n: int, q: int):
    for s in range(2, n // 2 + 1, 2):
        yield SemisimpleInvolutionClass("t", s)
    plus_inner = q % 4 == 1
    yield SemisimpleInvolutionClass("gl+", n // 2, plus_inner)
    yield SemisimpleInvolutionClass("gl-", n // 2, not plus_inner)
    if (n // 2) % 2 == 0:
        yield SemisimpleInvolutionClass("sp2", n // 2, False)


def _unipotent_odd(n: int, p: int):
    for lam in _partitions(n, p):
        if max(lam) < 2:
            continue
        mult = Counter(lam)
        if any(j % 2 and m % 2 for j, m in mult.items()):
            continue
        evens = sorted((j for j in mult if j % 2 == 0), reverse=True)
        seen = set()
        for discs in product((0, 1), repeat=len(evens)):
            cls = canonical_unipotent(UnipotentOddClass(p, lam, tuple(zip(evens, discs))))
            if cls not in seen:
                seen.add(cls)
                yield cls


def _unipotent_involutions(n: int):
    for l in range(1, n // 2 + 1):
        if l % 2:
            yield UnipotentInvolutionClass("b", l)
        else:
            yield UnipotentInvolutionClass("a", l)
            yield UnipotentInvolutionClass("c", l)


@dataclass(frozen=True)
class ClassRecord:
    cls: PrimeOrderClass
    count: int
    centralizer: int
    size: int
    dim: int

    @property
    def elements(self) -> int:
        return self.count * self.size

    def row(self) -> tuple[str, ...]:
        return (type_name(self.cls), self.cls.label(), str(self.count), str(self.centralizer),
                str(self.size), str(self.dim))


MAX_N = 16
MAX_Q = 16


def _sort_key(cls: PrimeOrderClass):
    order = list(TYPE_NAMES).index(type(cls))
    return (cls.order, order, repr(cls))


@lru_cache(maxsize=64)
def enumerate_prime_order_classes(n: int, q: int, max_n: int = MAX_N, max_q: int = MAX_Q) -> tuple[ClassRecord, ...]:
    """Every prime-order class type of PGSp_n(q), in canonical order."""
    _check_nq(n, q)
    if not 4 <= n <= max_n or q > max_q:
        raise InadmissibleClass(f"(n, q) = ({n}, {q}) outside the supported range")
    p, _ = prime_power(q)
    classes: list[PrimeOrderClass] = list(_semisimple_odd(n, q, p))
    if p == 2:
        classes += list(_unipotent_involutions(n))
    else:
        classes += list(_semisimple_involutions(n, q))
        classes += list(_unipotent_odd(n, p))
    classes.sort(key=_sort_key)
    return tuple(
        ClassRecord(c, class_count(c, n, q), centralizer_order(c, n, q), class_size(c, n, q), dim_class(c, n))
        for c in classes
    )


def prime_order_element_count(n: int, q: int) -> int:
    return sum(rec.elements for rec in enumerate_prime_order_classes(n, q))


CENSUS_HEADER = ("type", "invariants", "count", "|C_G(x)|", "|x^G|", "dim x^G")


def census_table(n: int, q: int) -> str:
    """Tab-separated census, one row per class type."""
    lines = ["\t".join(CENSUS_HEADER)]
    lines += ["\t".join(rec.row()) for rec in enumerate_prime_order_classes(n, q)]
    return "\n".join(lines) + "\n"
