"""Small finite fields GF(p^e) with integer-coded elements.

An element is the integer ``sum(c_k * p**k)`` where ``c_k`` is the
coefficient of ``x**k`` in its residue modulo the field's defining
polynomial.  Multiplication goes through discrete log tables built from
the class of ``x``, which is a generator because every shipped modulus is
primitive.  Both scalar (plain ``int``) and vectorised (numpy) entry points
are provided; the vectorised ones are what the matrix layer uses.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 1 << 16

# Conway polynomials, low degree coefficient first (constant term at index 0).
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
}


class FieldError(ArithmeticError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not _is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _poly_powers_of_x(p, e, modulus):
    """Sequence x^0, x^1, ... mod `modulus` as coefficient tuples, until it cycles to 1."""
    cur = [1] + [0] * (e - 1)
    seen = []
    for _ in range(p**e):
        seen.append(tuple(cur))
        # multiply by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(e):
                cur[k] = (cur[k] - top * modulus[k]) % p
        if cur == [1] + [0] * (e - 1):
            break
    return seen


def is_primitive(p: int, e: int, modulus) -> bool:
    if len(modulus) != e + 1 or modulus[-1] != 1:
        return False
    if e == 1:
        g = (-modulus[0]) % p
        return g != 0 and len({pow(g, k, p) for k in range(p - 1)}) == p - 1
    return len(_poly_powers_of_x(p, e, modulus)) == p**e - 1


@lru_cache(maxsize=None)
def canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Shipped Conway polynomial, else the lexicographically least primitive one."""
    if (p, e) in CONWAY:
        return CONWAY[(p, e)]
    for tail in product(range(p), repeat=e):
        cand = tuple(reversed(tail)) + (1,)
        if cand[0] and is_primitive(p, e, cand):
            return cand
    raise FieldError(f"no primitive polynomial found for GF({p}^{e})")


class GF:
    """The field with q = p**e elements."""

    def __init__(self, q: int):
        p, e = prime_power(q)
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.e, self.q = p, e, q
        self.modulus = canonical_modulus(p, e)
        self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if e == 1:
            g = (-self.modulus[0]) % p
            val = 1
            for k in range(q - 1):
                exp[k] = val
                log[val] = k
                val = val * g % p
        else:
            for k, coeffs in enumerate(_poly_powers_of_x(p, e, self.modulus)):
                code = sum(c * p**j for j, c in enumerate(coeffs))
                exp[k] = code
                log[code] = k
        exp[q - 1:] = exp[: q - 1]
        self.exp, self.log = exp, log
        self._exp = exp.tolist()
        self._log = log.tolist()
        self._pw = [p**j for j in range(e)]
        if e > 1 and p > 2:
            digits = np.array([[(a // p**j) % p for j in range(e)] for a in range(q)], dtype=np.int64)
            self._digits = digits
        self.gen = int(exp[1]) if q > 2 else 1

    # -- scalar arithmetic -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, p = 0, self.p
        for w in self._pw:
            out += ((a // w + b // w) % p) * w
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        out, p = 0, self.p
        for w in self._pw:
            out += ((-(a // w)) % p) * w
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> GF(q)."""
        return k % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.p == 2 or self._log[a] % 2 == 0

    def nonsquare(self) -> int:
        if self.p == 2:
            raise FieldError("every element of a field of characteristic 2 is a square")
        return self.gen

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        from math import gcd
        return (self.q - 1) // gcd(self.q - 1, self._log[a])

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p**k)

    # -- unitary conjugation ------------------------------------------------
    @property
    def is_quadratic_extension(self) -> bool:
        return self.e % 2 == 0

    @property
    def base_order(self) -> int:
        """Order of the subfield fixed by conjugation (requires even degree)."""
        if not self.is_quadratic_extension:
            raise FieldError(f"GF({self.q}) is not a quadratic extension")
        return self.p ** (self.e // 2)

    def conj(self, a: int) -> int:
        """The involution x -> x**sqrt(q) of GF(q) over GF(sqrt(q))."""
        return self.pow(a, self.base_order)

    # -- vectorised arithmetic ----------------------------------------------
    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        res = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        d = self._digits
        return ((d[a] + d[b]) % self.p) @ np.array(self._pw, dtype=np.int64)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return ((-self._digits[a]) % self.p) @ np.array(self._pw, dtype=np.int64)

    def vsum(self, a, axis):
        """Field sum of an array of codes along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self._digits[a]
        ax = axis if axis >= 0 else axis - 1
        return (d.sum(axis=ax) % self.p) @ np.array(self._pw, dtype=np.int64)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def vconj(self, a):
        a = np.asarray(a, dtype=np.int64)
        k = self.base_order
        res = self.exp[(self.log[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, res)

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Shared immutable field instance for order q."""
    return GF(q)


class FieldElem:
    """A field element bound to its field; supports the usual operators."""

    __slots__ = ("F", "value")

    def __init__(self, F: GF, value: int):
        if not 0 <= value < F.q:
            raise FieldError(f"{value} is not a code of {F!r}")
        self.F = F
        self.value = value

    def _check(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.F != self.F:
            raise FieldError(f"mismatched fields {self.F!r} and {other.F!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.F, self.F.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.F, self.F.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.F, self.F.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElem(self.F, self.F.div(self.value, other.value))

    def __neg__(self):
        return FieldElem(self.F, self.F.neg(self.value))

    def __pow__(self, k: int):
        return FieldElem(self.F, self.F.pow(self.value, k))

    def inverse(self):
        return FieldElem(self.F, self.F.inv(self.value))

    def conjugate(self):
        return FieldElem(self.F, self.F.conj(self.value))

    def __eq__(self, other):
        return isinstance(other, FieldElem) and other.F == self.F and other.value == self.value

    def __hash__(self):
        return hash((self.F.q, self.value))

    def __repr__(self):
        return f"FieldElem(GF({self.F.q}), {self.value})"


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Apply ``op`` in {'add', 'mul', 'inv', 'neg'}; unary ops ignore ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown field operation {op!r}")


def conjugate(a: FieldElem) -> FieldElem:
    return a.conjugate()


@lru_cache(maxsize=None)
def subfield_embedding(q0: int, q: int) -> np.ndarray:
    """Table sending each code of GF(q0) to its image in GF(q), a field homomorphism."""
    F0, F = field(q0), field(q)
    if F0.p != F.p or F.e % F0.e:
        raise FieldError(f"GF({q0}) is not a subfield of GF({q})")
    emb = np.arange(q0, dtype=np.int64)
    if F0.e == 1:
        return emb
    step = (q - 1) // (q0 - 1)
    mod = F0.modulus
    for j in range(1, q0 - 1):
        y = int(F.exp[j * step])
        acc, yk = 0, 1
        for c in mod:
            acc = F.add(acc, F.mul(F.from_int(c), yk))
            yk = F.mul(yk, y)
        if acc == 0 and F.order(y) == q0 - 1:
            for k in range(q0 - 1):
                emb[int(F0.exp[k])] = F.pow(y, k)
            return emb
    raise FieldError("no root of the subfield modulus found")
