"""Base-size certificates for PGSp_n(q) on non-degenerate r-subspaces.

With X a set of representatives of the prime-order classes of G and H the
stabilizer of a point,

    Q(G, c) = sum_x |x^G| (|x^G ∩ H| / |x^G|)^c

bounds the probability that c random points fail to form a base, so
Q(G, c) < 1 certifies b(G) <= c.  Q is summed exactly as a Fraction.
η_G(t) = sum_C |C|^-t is bounded above with fixed-point arithmetic,
rounding every root up.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import classdata as cd
from . import fpr
from .exact import power_ceil

DEFAULT_BITS = 128
DEFAULT_C = 5


class CertificateError(ValueError):
    pass


# -- η ------------------------------------------------------------------------------------


def root_term_upper(size: int, t: Fraction, bits: int) -> int:
    """ceil(2^bits * size^-t) for rational t > 0."""
    t = Fraction(t)
    a, b = t.numerator, t.denominator
    # least y with y^b * size^a >= 2^(bits*b)
    return power_ceil(Fraction(1 << (bits * b), size**a), Fraction(1, b))


def eta_from_sizes(classes, t: Fraction = Fraction(1, 3), bits: int = DEFAULT_BITS) -> Fraction:
    """Upper bound on sum count * size^-t over ``(count, size)`` pairs, as a dyadic rational."""
    total = sum(count * root_term_upper(size, t, bits) for count, size in classes)
    return Fraction(total, 1 << bits)


def eta(n: int, q: int, t: Fraction = Fraction(1, 3), bits: int = DEFAULT_BITS) -> Fraction:
    """Upper bound on η_G(t) for G = PGSp_n(q)."""
    census = cd.enumerate_prime_order_classes(n, q)
    if not census:
        raise CertificateError(f"no prime-order census for n={n}, q={q}")
    return eta_from_sizes(((rec.count, rec.size) for rec in census), t, bits)


# -- Q(G, c) ----------------------------------------------------------------------------------


def contribution(count: int, size: int, meet: int, c: int) -> Fraction:
    """count * size * (meet/size)^c."""
    return Fraction(count * meet**c, size ** (c - 1))


def q_from_rows(rows, c: int) -> Fraction:
    return sum((contribution(r.count, r.size, r.meet, c) for r in rows), Fraction(0))


@dataclass(frozen=True)
class AuditRow:
    class_type: str
    invariants: str
    count: int
    size: int
    meet: int
    exact: bool
    num: int
    den: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


def _row(args) -> AuditRow:
    rec, n, q, c, exact = args
    action = fpr.ActionSpec(n, q)
    if exact:
        meet, size = fpr.split_count_exact(rec.cls, action), rec.size
    else:
        meet, size = fpr.fixed_count_bound(rec.cls, action), fpr.class_size_lower_bound(rec.cls, n, q)
    v = contribution(rec.count, size, meet, c)
    return AuditRow(cd.type_name(rec.cls), rec.cls.label(), rec.count, size, meet, exact, v.numerator, v.denominator)


def audit_rows(n: int, q: int, c: int = DEFAULT_C, exact: bool = True, workers: int = 1) -> list[AuditRow]:
    """One row per class family, in canonical class order."""
    jobs = [(rec, n, q, c, exact) for rec in cd.enumerate_prime_order_classes(n, q)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_row, jobs))
    return [_row(j) for j in jobs]


def q_bound(n: int, q: int, c: int = DEFAULT_C, exact: bool = True) -> Fraction:
    """Q(G, c) exactly (``exact``), or the upper estimate built from closed-form bounds."""
    return q_from_rows(audit_rows(n, q, c, exact), c)


# -- certificates ---------------------------------------------------------------------------


@dataclass
class Certificate:
    n: int
    q: int
    r: int
    c: int
    mode: str
    rows: list[AuditRow]
    q_upper: Fraction
    eta_upper: Fraction
    bits: int
    certified: bool
    unsound_rows: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def group(self) -> str:
        return f"PGSp_{self.n}({self.q})"

    @property
    def action(self) -> str:
        return f"N_{self.r}"

    def verdict_line(self) -> str:
        return f"CERTIFIED b(G,N_r) <= {self.c}" if self.certified else "NOT CERTIFIED"

    def to_text(self, timing: bool = False) -> str:
        out = [
            "# base-size certificate",
            f"group\t{self.group}",
            f"action\t{self.action}",
            f"c\t{self.c}",
            f"mode\t{self.mode}",
            f"eta_bits\t{self.bits}",
            f"eta_upper\t{self.eta_upper.numerator}/{self.eta_upper.denominator}",
            f"Q_upper\t{self.q_upper.numerator}/{self.q_upper.denominator}",
            f"Q_upper_float\t{float(self.q_upper):.6e}",
        ]
        if self.unsound_rows:
            out.append("unsound\t" + ";".join(self.unsound_rows))
        if timing:
            out.append(f"elapsed\t{self.elapsed:.3f}")
        out.append(f"rows\t{len(self.rows)}")
        out.append("type\tinvariants\tcount\tsize\tmeet\tflag\tcontrib_num\tcontrib_den")
        for r in self.rows:
            flag = "exact" if r.exact else "bounded"
            out.append(f"{r.class_type}\t{r.invariants}\t{r.count}\t{r.size}\t{r.meet}\t{flag}\t{r.num}\t{r.den}")
        out.append(self.verdict_line())
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        d = asdict(self)
        d["q_upper"] = [self.q_upper.numerator, self.q_upper.denominator]
        d["eta_upper"] = [self.eta_upper.numerator, self.eta_upper.denominator]
        d["rows"] = [asdict(r) for r in self.rows]
        for r in d["rows"]:
            for k in ("size", "meet", "num", "den"):
                r[k] = str(r[k])
        d["verdict"] = self.verdict_line()
        return json.dumps(d, indent=1, sort_keys=True)


def _parse_fraction(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def certificate_from_text(text: str) -> Certificate:
    """Parse the output of ``Certificate.to_text``."""
    try:
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        head, i = {}, 0
        while not lines[i].startswith("type\t"):
            k, _, v = lines[i].partition("\t")
            head[k] = v
            i += 1
        rows = []
        for ln in lines[i + 1:-1]:
            t, inv, cnt, size, meet, flag, num, den = ln.split("\t")
            if flag not in ("exact", "bounded"):
                raise ValueError(f"bad flag {flag!r}")
            rows.append(AuditRow(t, inv, int(cnt), int(size), int(meet), flag == "exact", int(num), int(den)))
        if len(rows) != int(head["rows"]):
            raise ValueError("row count does not match header")
        group = head["group"]
        n = int(group[group.index("_") + 1:group.index("(")])
        q = int(group[group.index("(") + 1:group.index(")")])
        c = int(head["c"])
        verdict = lines[-1]
        if verdict not in (f"CERTIFIED b(G,N_r) <= {c}", "NOT CERTIFIED"):
            raise ValueError(f"bad verdict line {verdict!r}")
        return Certificate(
            n=n, q=q, r=int(head["action"][2:]), c=c, mode=head["mode"], rows=rows,
            q_upper=_parse_fraction(head["Q_upper"]), eta_upper=_parse_fraction(head["eta_upper"]),
            bits=int(head["eta_bits"]), certified=verdict.startswith("CERTIFIED"),
            unsound_rows=[x for x in head.get("unsound", "").split(";") if x],
            elapsed=float(head.get("elapsed", 0.0)),
        )
    except (KeyError, IndexError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc


def _unsound(rows: list[AuditRow], n: int, q: int) -> list[str]:
    """Bounded rows whose bound is beaten by the exact value."""
    action = fpr.ActionSpec(n, q)
    out = []
    for row, rec in zip(rows, cd.enumerate_prime_order_classes(n, q)):
        if row.exact:
            continue
        if fpr.split_count_exact(rec.cls, action) > row.meet or rec.size < row.size:
            out.append(row.invariants)
    return out


def certify_base(n: int, q: int, c: int = DEFAULT_C, exact: bool = True, bits: int = DEFAULT_BITS,
                 workers: int = 1) -> Certificate:
    """Certify b(PGSp_n(q), N_r) <= c when Q(G, c) < 1.

    In bounded mode each row uses the closed-form estimates; any row whose
    estimate is contradicted by the exact count is listed as unsound and
    blocks certification.
    """
    if c < 1:
        raise ValueError("c must be positive")
    t0 = time.perf_counter()
    action = fpr.ActionSpec(n, q)
    rows = audit_rows(n, q, c, exact, workers)
    total = q_from_rows(rows, c)
    unsound = [] if exact else _unsound(rows, n, q)
    return Certificate(
        n=n, q=q, r=action.r, c=c, mode="exact" if exact else "bounded", rows=rows, q_upper=total,
        eta_upper=eta(n, q, Fraction(1, 3), bits), bits=bits, certified=total < 1 and not unsound,
        unsound_rows=unsound, elapsed=time.perf_counter() - t0,
    )


def verify_certificate(cert: Certificate) -> bool:
    """Recompute every row, the sum, η and the verdict; true iff all agree."""
    try:
        fresh = certify_base(cert.n, cert.q, cert.c, cert.mode == "exact", cert.bits)
    except (ValueError, ArithmeticError):
        return False
    if cert.r != fresh.r or len(cert.rows) != len(fresh.rows):
        return False
    for a, b in zip(cert.rows, fresh.rows):
        if a != b or contribution(a.count, a.size, a.meet, cert.c) != a.value:
            return False
    if q_from_rows(cert.rows, cert.c) != cert.q_upper or cert.q_upper != fresh.q_upper:
        return False
    if cert.eta_upper != fresh.eta_upper or cert.unsound_rows != fresh.unsound_rows:
        return False
    return cert.certified == (cert.q_upper < 1 and not cert.unsound_rows)


# -- the PGSp_8(q) decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class Sp8Decomposition:
    q: int
    q_exact: Fraction
    eta_upper: Fraction
    exceptional_term: Fraction
    termwise: bool  # every other class contributes at most its η term
    exceptional_matches: bool  # the exceptional class contributes exactly the closed form
    holds: bool  # Q(G,5) < η + exceptional term, and that sum is < 1


def sp8_decomposition(q: int, bits: int = DEFAULT_BITS) -> Sp8Decomposition:
    """Check Q(G,5) < η_G(1/3) + (q^8-1)((q^6+q^2-2)/(q^8-1))^5 for G = PGSp_8(q), term by term."""
    n, c = 8, 5
    exc = contribution(1, q**8 - 1, q**6 + q**2 - 2, c)
    census = cd.enumerate_prime_order_classes(n, q)
    rows = audit_rows(n, q, c)
    termwise, matches = True, False
    for rec, row in zip(census, rows):
        if fpr.is_sp8_exception(rec.cls, n):
            matches = row.value == exc and row.count == 1
            continue
        bound = Fraction(rec.count * root_term_upper(rec.size, Fraction(1, 3), bits), 1 << bits)
        termwise &= row.value <= bound
    total = q_from_rows(rows, c)
    et = eta(n, q, Fraction(1, 3), bits)
    holds = total < et + exc < 1
    return Sp8Decomposition(q, total, et, exc, termwise, matches, holds)


# -- exhibiting a base --------------------------------------------------------------------


def random_nondegenerate_subspace(F, n: int, r: int, gram, rng) -> np.ndarray:
    from .matgrp import matrix as M

    while True:
        W = rng.integers(0, F.q, size=(r, n))
        if M.rank(F, M.matmul(F, M.matmul(F, W, gram), M.transpose(W))) == r:
            return M.rref(F, W)[0]


def exhibit_base(n: int, q: int, c: int, seed: int = 0, tries: int = 20):
    """Search for c points of N_r whose pointwise stabilizer in GSp_n(q) is scalar.

    Returns the list of subspaces, or None when no base turned up.
    """
    from .matgrp.chain import pointwise_stabilizer_order
    from .matgrp.groups import GroupSpec, standard_generators

    spec = GroupSpec("GSp", n, q)
    F, action = spec.field, fpr.ActionSpec(n, q)
    gens = standard_generators(spec)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        pts = [random_nondegenerate_subspace(F, n, action.r, spec.form.gram, rng) for _ in range(c)]
        _, mod_scalars = pointwise_stabilizer_order(F, gens, pts, "subspaces", order_hint=spec.order)
        if mod_scalars == 1:
            return pts
    return None
