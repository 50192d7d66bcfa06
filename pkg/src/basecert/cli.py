"""Command-line interface.

Every report starts with the tool version and a full parameter echo.  Exit
status: 0 computed (and certified / verified where applicable), 1 not
certified or check failed, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .matgrp.chain import ResourceLimitExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

PSI_TAGS = {
    "a1": "A1",
    "a1-2": "(A1)^(2)",
    "a1a1-1": "(A1^2)^(1)",
    "a1a1-2": "(A1^2)^(2)",
    "a1a1a1-1": "(A1^3)^(1)",
    "a1a1a1-2": "(A1^3)^(2)",
}
FILTER_FAMILIES = {"l": "L", "u": "U", "psp": "PSp", "pomega": "POmega"}


class UsageError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("bad-arguments", message)


def _fraction(s: str) -> Fraction:
    try:
        num, _, den = s.partition("/")
        return Fraction(int(num), int(den or 1))
    except (ValueError, ZeroDivisionError):
        raise UsageError("bad-rational", f"expected a/b, got {s!r}") from None


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _decimal(x: Fraction, digits: int = 12) -> str:
    """Decimal expansion rounded up at ``digits`` places (an upper bound for x >= 0)."""
    scaled = -((-x.numerator * 10**digits) // x.denominator)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10**digits}.{scaled % 10**digits:0{digits}d}"


def _require_sp(args) -> None:
    if args.family.lower() != "sp":
        raise UsageError("unsupported-family", f"family {args.family!r} is not supported by {args.verb}")


# -- verbs ------------------------------------------------------------------------
# each returns (status, result dict, text lines)


def _certify(args):
    from .certifier import certify_base

    _require_sp(args)
    cert = certify_base(args.n, args.q, args.c, exact=args.mode == "exact", bits=args.bits,
                        workers=args.threads)
    result = json.loads(cert.to_json())
    result.pop("elapsed", None)
    lines = cert.to_text().rstrip("\n").split("\n")
    if args.out_dir:
        from .report import write_report

        paths = write_report(cert, args.out_dir)
        result["files"] = {k: str(v) for k, v in paths.items()}
        lines += [f"file\t{k}\t{v}" for k, v in paths.items()]
    return (EXIT_OK if cert.certified else EXIT_FAIL), result, lines


def _eta(args):
    from .certifier import eta

    _require_sp(args)
    t = _fraction(args.t)
    if not 0 < t:
        raise UsageError("bad-exponent", "t must be positive")
    val = eta(args.n, args.q, t, args.bits)
    result = {"eta_upper": _frac_str(val), "eta_upper_decimal": _decimal(val), "precision_bits": str(args.bits),
              "rounding": "up"}
    lines = [f"eta_upper\t{_frac_str(val)}", f"eta_upper_decimal\t{_decimal(val)}\t(rounded up, {args.bits}-bit terms)"]
    return EXIT_OK, result, lines


def _classes(args):
    from . import classdata as cd

    _require_sp(args)
    recs = cd.enumerate_prime_order_classes(args.n, args.q)
    rows = [dict(zip(cd.CENSUS_HEADER, rec.row())) for rec in recs]
    total = sum(rec.elements for rec in recs)
    lines = cd.census_table(args.n, args.q).rstrip("\n").split("\n")
    lines.append(f"prime_order_elements\t{total}")
    return EXIT_OK, {"classes": rows, "prime_order_elements": str(total)}, lines


def _slambda(args):
    from .weights import fundamental, root_system, s_lambda

    kind, rank = args.type.upper(), args.rank
    rs = root_system(kind, rank)
    hw = args.hw.lower()
    if hw == "spin":
        if kind not in ("B", "D"):
            raise UsageError("bad-weight", "spin weights exist for types B and D only")
        lam = fundamental(rank, rank)
    elif hw.startswith("l") and hw[1:].isdigit():
        i = int(hw[1:])
        if not 1 <= i <= rank:
            raise UsageError("bad-weight", f"no fundamental weight {hw} in rank {rank}")
        lam = fundamental(rank, i)
    else:
        try:
            lam = tuple(int(x) for x in hw.split(","))
        except ValueError:
            raise UsageError("bad-weight", f"cannot read highest weight {args.hw!r}") from None
        if len(lam) != rank:
            raise UsageError("bad-weight", "label count does not match the rank")
    s = s_lambda(kind, rank, lam, args.p)
    result = {
        "type": f"{rs.kind}{rank}",
        "highest_weight": ",".join(map(str, lam)),
        "dominant_weights": [",".join(map(str, w)) for w in s.weights],
        "r": [_frac_str(x) for x in s.r],
        "s": _frac_str(s.s),
        "s_long": None if s.s_long is None else _frac_str(s.s_long),
        "bound": _frac_str(s.bound),
    }
    lines = ["mu\tr_mu" + ("\tr_mu_long" if s.r_long else "")]
    for k, w in enumerate(s.weights):
        extra = f"\t{_frac_str(s.r_long[k])}" if s.r_long else ""
        lines.append(f"{','.join(map(str, w))}\t{_frac_str(s.r[k])}{extra}")
    lines.append(f"s\t{_frac_str(s.s)}")
    if s.s_long is not None:
        lines.append(f"s_long\t{_frac_str(s.s_long)}")
    lines.append(f"total\t{_frac_str(s.bound)}")
    return EXIT_OK, result, lines


def _nets(args):
    from .weights import net_codim_bound, spin_net_census

    try:
        tag = PSI_TAGS[args.psi.lower()]
    except KeyError:
        raise UsageError("bad-subsystem", f"unknown subsystem {args.psi!r}; choose from {sorted(PSI_TAGS)}") from None
    census = spin_net_census(args.rank, tag)
    bound = net_codim_bound(args.rank, tag)
    result = {"subsystem": tag, "nets": {str(k): str(v) for k, v in sorted(census.items(), reverse=True)},
              "codim_bound": str(bound)}
    lines = ["size\tcount"] + [f"{k}\t{v}" for k, v in sorted(census.items(), reverse=True)]
    lines.append(f"codim_bound\t{bound}")
    return EXIT_OK, result, lines


def _verify_base(args):
    from . import bases

    preset = args.preset.lower()
    if preset in ("gu4", "gu5"):
        cand = bases.gu4_base(args.q) if preset == "gu4" else bases.gu5_base(args.q)
        if args.drop_last:
            cand = cand.prefix(cand.c - 1)
        rep = bases.verify_base(cand)
        result = {"group": cand.group.label(), "action": cand.action, "points": cand.describe(),
                  "stabilizer_order": str(rep.stabilizer_order), "modulo_scalars": str(rep.modulo_scalars),
                  "verdict": rep.verdict}
        lines = [f"group\t{cand.group.label()}", f"action\t{cand.action}"]
        lines += [f"point\t{p}" for p in cand.describe()]
        lines += [f"stabilizer_order\t{rep.stabilizer_order}", f"modulo_scalars\t{rep.modulo_scalars}", rep.verdict]
        return (EXIT_OK if rep.is_base else EXIT_FAIL), result, lines
    if preset == "adjoint":
        if args.n is None:
            raise UsageError("missing-parameter", "--n is required for the adjoint preset")
        rep = bases.adjoint_base(args.n, args.q, args.q0 or args.q)
        ok = rep.contained and rep.dimension == 2
        result = {"centralizer_dimension": str(rep.dimension), "contained": rep.contained,
                  "verdict": "VERIFIED" if ok else "FAILED"}
        lines = [f"A\t{rep.A.tolist()}", f"B\t{rep.B.tolist()}", f"centralizer_dimension\t{rep.dimension}",
                 f"contained_in_diag\t{rep.contained}", result["verdict"]]
        return (EXIT_OK if ok else EXIT_FAIL), result, lines
    if preset in ("alternating", "symmetric"):
        if args.n is None:
            raise UsageError("missing-parameter", f"--n is required for the {preset} preset")
        rep = bases.form_vector_stabilizer_check(preset, args.n, args.q)
        result = {"orbit_size": str(rep.orbit_size), "stabilizer_order": str(rep.stabilizer_order),
                  "expected": str(rep.expected), "verdict": "VERIFIED" if rep.matches else "FAILED"}
        lines = [f"orbit_size\t{rep.orbit_size}", f"stabilizer_order\t{rep.stabilizer_order}",
                 f"expected\t{rep.expected}", result["verdict"]]
        return (EXIT_OK if rep.matches else EXIT_FAIL), result, lines
    raise UsageError("bad-preset", f"unknown preset {args.preset!r}")


def _oracle(args):
    from . import oracle

    if args.check == "class-census":
        _require_sp(args)
        rep = oracle.census_oracle(args.n, args.q)
        result = {"group_order": str(rep.group_order), "expected_order": str(rep.expected_order),
                  "brute_classes": str(rep.brute_classes), "formula_classes": str(rep.formula_classes),
                  "brute_elements": str(rep.brute_elements), "formula_elements": str(rep.formula_elements),
                  "verdict": "MATCH" if rep.matches else "MISMATCH"}
        lines = [f"{k}\t{v}" for k, v in result.items() if k != "verdict"]
        lines.append("prime\tclass_size\tclasses_brute\tclasses_formula")
        formula = {(p, s): k for p, s, k in rep.formula_sizes}
        brute = {(p, s): k for p, s, k in rep.brute_sizes}
        for key in sorted(set(formula) | set(brute)):
            lines.append(f"{key[0]}\t{key[1]}\t{brute.get(key, 0)}\t{formula.get(key, 0)}")
        lines.append(result["verdict"])
        return (EXIT_OK if rep.matches else EXIT_FAIL), result, lines
    if args.check == "fixed-points":
        _require_sp(args)
        rows = oracle.fixed_point_oracle(args.n, args.q)
        ok = all(r.matches for r in rows)
        result = {"rows": [{"class": r.label, "brute": str(r.brute), "formula": str(r.formula)} for r in rows],
                  "verdict": "MATCH" if ok else "MISMATCH"}
        lines = ["class\tbrute\tformula"] + [f"{r.label}\t{r.brute}\t{r.formula}" for r in rows]
        lines.append(result["verdict"])
        return (EXIT_OK if ok else EXIT_FAIL), result, lines
    if args.check == "u5-2":
        from .census import su5_2_census, u5_2_covering_check

        census = su5_2_census()
        covered = u5_2_covering_check(census)
        result = {"classes": {c.label: str(c.size) for c in census},
                  "covering_inequality_holds": covered,
                  "verdict": "CONTRADICTION" if not covered else "NO CONTRADICTION"}
        lines = ["class\tsize"] + [f"{c.label}\t{c.size}" for c in census]
        lines += [f"covering_inequality_holds\t{covered}", result["verdict"]]
        return (EXIT_OK if not covered else EXIT_FAIL), result, lines
    raise UsageError("bad-check", f"unknown oracle check {args.check!r}")


def _filter(args):
    from .weights import dimension_filter, dimension_threshold

    try:
        fam = FILTER_FAMILIES[args.family.lower()]
    except KeyError:
        raise UsageError("unsupported-family", f"unknown family {args.family!r}") from None
    N = dimension_threshold(fam, args.n)
    survives = dimension_filter(fam, args.n, args.q, args.d, args.omega8_plus)
    result = {"family": fam, "threshold": _frac_str(N), "threshold_decimal": _decimal(N, 6),
              "survives": survives}
    lines = [f"threshold\t{_frac_str(N)}", f"survives\t{survives}"]
    return EXIT_OK, result, lines


VERBS = {
    "certify": _certify,
    "eta": _eta,
    "classes": _classes,
    "slambda": _slambda,
    "nets": _nets,
    "verify-base": _verify_base,
    "oracle": _oracle,
    "filter": _filter,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")

    p = _Parser(prog="basecert", description="Exact base-size certificates for finite classical groups.")
    p.add_argument("--version", action="version", version=f"basecert {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def group_args(sp, family=True):
        if family:
            sp.add_argument("--family", required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)

    sp = sub.add_parser("certify", parents=[common], help="certify b(PGSp_n(q), N_r) <= c")
    group_args(sp)
    sp.add_argument("--c", type=int, default=5)
    sp.add_argument("--mode", choices=("exact", "bounded"), default="exact")
    sp.add_argument("--bits", type=int, default=128)
    sp.add_argument("--out-dir", help="also write certificate, audit CSV and figures here")

    sp = sub.add_parser("eta", parents=[common], help="upper bound on eta_G(t)")
    group_args(sp)
    sp.add_argument("--t", default="1/3")
    sp.add_argument("--bits", type=int, default=128)

    sp = sub.add_parser("classes", parents=[common], help="prime-order class census")
    group_args(sp)

    sp = sub.add_parser("slambda", parents=[common], help="dominant weights and codimension totals")
    sp.add_argument("--type", required=True, choices=("A", "B", "C", "D", "a", "b", "c", "d"))
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--hw", required=True, help="lK, spin, or comma-separated Dynkin labels")
    sp.add_argument("--p", type=int, default=None, help="characteristic (default: generic)")

    sp = sub.add_parser("nets", parents=[common], help="Psi-net census on the half-spin weights of D_n")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--psi", required=True, help=", ".join(sorted(PSI_TAGS)))

    sp = sub.add_parser("verify-base", parents=[common], help="verify an explicit base or construction")
    sp.add_argument("--preset", required=True, help="gu4, gu5, adjoint, alternating, symmetric")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--q0", type=int, default=None)
    sp.add_argument("--drop-last", action="store_true", help="verify the candidate without its last point")

    sp = sub.add_parser("oracle", parents=[common], help="brute-force cross-checks")
    sp.add_argument("check", choices=("class-census", "fixed-points", "u5-2"))
    sp.add_argument("--family", default="sp")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--q", type=int, default=2)

    sp = sub.add_parser("filter", parents=[common], help="dimension filter against the crude bound")
    sp.add_argument("--family", required=True, help="l, u, psp, pomega")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--omega8-plus", action="store_true")
    return p


def _params(args) -> dict[str, str]:
    return {k: str(v) for k, v in sorted(vars(args).items()) if k not in ("format", "threads")}


def _emit(fmt: str, verb: str, params: dict, status: int, result=None, error=None, out=sys.stdout) -> None:
    if fmt == "json":
        doc = {"tool": "basecert", "version": __version__, "verb": verb, "params": params, "status": status}
        if error is not None:
            doc["error"] = error
        else:
            doc["result"] = result
        out.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return
    out.write(f"# basecert {__version__}\n")
    out.write(f"# verb\t{verb}\n")
    for k, v in params.items():
        out.write(f"# param\t{k}\t{v}\n")
    out.write("---\n")
    if error is not None:
        out.write(f"error\t{error['reason']}\t{error['message']}\n")
    else:
        out.write("\n".join(result) + "\n")
    out.write("---\n")
    out.write(f"status\t{status}\n")


def run(argv=None, out=sys.stdout) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "--format" in argv and argv[argv.index("--format") + 1:][:1] == ["json"] else "text"
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit(fmt, "?", {"argv": " ".join(argv)}, EXIT_USAGE, error={"reason": exc.reason, "message": str(exc)},
              out=out)
        return EXIT_USAGE
    params = _params(args)
    try:
        if getattr(args, "threads", 1) < 1:
            raise UsageError("bad-threads", "--threads must be at least 1")
        status, result, lines = VERBS[args.verb](args)
    except UsageError as exc:
        status, err = EXIT_USAGE, {"reason": exc.reason, "message": str(exc)}
    except ResourceLimitExceeded as exc:
        status, err = EXIT_RESOURCE, {"reason": "resource-guard", "message": str(exc)}
    except (ValueError, ArithmeticError) as exc:
        status, err = EXIT_USAGE, {"reason": "invalid-input", "message": str(exc)}
    else:
        _emit(args.format, args.verb, params, status, result if args.format == "json" else lines, out=out)
        return status
    _emit(args.format, args.verb, params, status, error=err, out=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
