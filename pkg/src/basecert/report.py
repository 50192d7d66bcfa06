"""Write a certificate bundle to disk: the certificate text, an audit CSV and two figures."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import classdata as cd  # noqa: E402
from . import fpr  # noqa: E402
from .certifier import Certificate  # noqa: E402

AUDIT_HEADER = ("type", "invariants", "count", "size", "meet", "flag", "contrib_num", "contrib_den",
                "log10_contrib", "ratio_passes")


def _log10(x: int) -> float:
    # exact integers can overflow float conversion; go through the bit length
    if x <= 0:
        return float("-inf")
    shift = max(x.bit_length() - 53, 0)
    return math.log10(x >> shift) + shift * math.log10(2)


def write_audit_csv(cert: Certificate, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(AUDIT_HEADER)
        for r in cert.rows:
            passes = fpr.ratio_passes(r.meet, r.size)
            w.writerow([r.class_type, r.invariants, r.count, r.size, r.meet,
                        "exact" if r.exact else "bounded", r.num, r.den,
                        f"{_log10(r.num) - _log10(r.den):.4f}", int(passes)])


def plot_ratio(cert: Certificate, path: Path) -> None:
    """log |x^G ∩ H| against log |x^G|, with the line of slope 11/15."""
    action = fpr.ActionSpec(cert.n, cert.q)
    recs = cd.enumerate_prime_order_classes(cert.n, cert.q)
    xs, ys, bad = [], [], []
    for rec in recs:
        meet = fpr.split_count_exact(rec.cls, action)
        if meet == 0:
            continue
        xs.append(_log10(rec.size))
        ys.append(_log10(meet))
        bad.append(not fpr.ratio_passes(meet, rec.size))
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    ok = [i for i, b in enumerate(bad) if not b]
    ko = [i for i, b in enumerate(bad) if b]
    ax.scatter([xs[i] for i in ok], [ys[i] for i in ok], s=14, c="tab:blue", label="passes")
    if ko:
        ax.scatter([xs[i] for i in ko], [ys[i] for i in ko], s=30, c="tab:red", marker="x", label="fails")
    top = max(xs) if xs else 1.0
    ax.plot([0, top], [0, top * 11 / 15], "k--", lw=1, label="slope 11/15")
    ax.set_xlabel(r"$\log_{10}|x^G|$")
    ax.set_ylabel(r"$\log_{10}|x^G \cap H|$")
    ax.set_title(f"{cert.group} on {cert.action}")
    ax.legend(loc="upper left", frameon=False)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_contributions(cert: Certificate, path: Path) -> None:
    vals = [_log10(r.num) - _log10(r.den) for r in cert.rows]
    fig, ax = plt.subplots(figsize=(max(5.0, 0.12 * len(vals) + 2), 4.0))
    ax.bar(range(len(vals)), vals, color=["tab:red" if v > -1 else "tab:gray" for v in vals])
    ax.axhline(math.log10(float(cert.q_upper)) if cert.q_upper > 0 else 0, color="k", lw=1, ls="--",
               label="log10 Q")
    ax.set_xlabel("class row")
    ax.set_ylabel("log10 contribution")
    ax.set_title(f"Q({cert.group}, {cert.c})")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(cert: Certificate, out_dir) -> dict[str, Path]:
    """Write the bundle into ``out_dir`` and return the paths by role."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"sp{cert.n}_q{cert.q}_c{cert.c}"
    paths = {
        "certificate": out / f"{stem}.cert.txt",
        "audit": out / f"{stem}.audit.csv",
        "ratio": out / f"{stem}.ratio.png",
        "contributions": out / f"{stem}.q.png",
    }
    paths["certificate"].write_text(cert.to_text())
    write_audit_csv(cert, paths["audit"])
    plot_ratio(cert, paths["ratio"])
    plot_contributions(cert, paths["contributions"])
    return paths
