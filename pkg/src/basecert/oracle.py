"""Brute-force cross-checks of the closed-form class and fixed-point data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import classdata as cd
from . import fpr
from .matgrp.classreps import representative
from .matgrp.enumerate import prime_order_class_census
from .matgrp.groups import GroupSpec, standard_generators


def _primes(x: int) -> list[int]:
    out, p = [], 2
    while p * p <= x:
        if x % p == 0:
            out.append(p)
            while x % p == 0:
                x //= p
        p += 1
    if x > 1:
        out.append(x)
    return out


@dataclass(frozen=True)
class CensusComparison:
    n: int
    q: int
    group_order: int
    expected_order: int
    brute_sizes: tuple[tuple[int, int, int], ...]  # (prime, class size, how many classes)
    formula_sizes: tuple[tuple[int, int, int], ...]

    @property
    def brute_classes(self) -> int:
        return sum(k for _, _, k in self.brute_sizes)

    @property
    def formula_classes(self) -> int:
        return sum(k for _, _, k in self.formula_sizes)

    @property
    def brute_elements(self) -> int:
        return sum(s * k for _, s, k in self.brute_sizes)

    @property
    def formula_elements(self) -> int:
        return sum(s * k for _, s, k in self.formula_sizes)

    @property
    def matches(self) -> bool:
        return self.group_order == self.expected_order and self.brute_sizes == self.formula_sizes


def _tally(pairs) -> tuple[tuple[int, int, int], ...]:
    return tuple(sorted((p, s, k) for (p, s), k in Counter(pairs).items()))


def census_oracle(n: int, q: int) -> CensusComparison:
    """Enumerate PGSp_n(q) and partition its prime-order elements into classes."""
    odd = q % 2 == 1
    spec = GroupSpec("GSp" if odd else "Sp", n, q)
    expected = spec.order // (q - 1)
    primes = _primes(expected)
    order, classes = prime_order_class_census(spec.field, standard_generators(spec), primes, projective=odd)
    brute = _tally((c.order, c.size) for c in classes)
    formula = []
    for rec in cd.enumerate_prime_order_classes(n, q):
        formula += [(rec.cls.order, rec.size)] * rec.count
    return CensusComparison(n, q, order, expected, brute, _tally(formula))


@dataclass(frozen=True)
class FixedPointComparison:
    label: str
    brute: int
    formula: int

    @property
    def matches(self) -> bool:
        return self.brute == self.formula


def fixed_point_oracle(n: int, q: int) -> list[FixedPointComparison]:
    """Fixed non-degenerate r-spaces of one representative per class: scan against formula."""
    action = fpr.ActionSpec(n, q)
    out = []
    for rec in cd.enumerate_prime_order_classes(n, q):
        g = representative(rec.cls, n, q)
        out.append(FixedPointComparison(rec.cls.label(), fpr.brute_fixed_count(g, action),
                                        fpr.fixed_points_exact(rec.cls, action)))
    return out
