"""Optional matplotlib rendering of report data to image files.

Imported lazily by the CLI; requires the `viz` extra.  Figures are written
next to the delimited report output."""

from __future__ import annotations

import os


def _plt():
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        return plt
    except ImportError as exc:
        raise RuntimeError(
            "figure rendering needs matplotlib (pip install 'chromalg[viz]')"
        ) from exc


def render_figures(report: dict, outdir: str) -> list[str]:
    plt = _plt()
    os.makedirs(outdir, exist_ok=True)
    written = []
    written.append(_suite_summary(plt, report, outdir))
    written.append(_duality_dims(plt, outdir))
    written.append(_cohomology_ranks(plt, outdir))
    return written


def _suite_summary(plt, report, outdir):
    counts = {}
    for c in report["checks"]:
        suite = c["suite"]
        counts.setdefault(suite, {"pass": 0, "fail": 0, "skipped": 0})
        counts[suite][c["status"]] += 1
    suites = sorted(counts)
    fig, ax = plt.subplots(figsize=(7, 0.5 * len(suites) + 1.5))
    y = range(len(suites))
    passes = [counts[s]["pass"] for s in suites]
    fails = [counts[s]["fail"] for s in suites]
    ax.barh(y, passes, color="#2d7dd2", label="pass")
    ax.barh(y, fails, left=passes, color="#d1495b", label="fail")
    ax.set_yticks(list(y))
    ax.set_yticklabels(suites)
    ax.set_xlabel("checks")
    ax.set_title("verification results by suite")
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = os.path.join(outdir, "suite_summary.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _duality_dims(plt, outdir):
    from .steenrod import Profile, bstar_dims, quotient_dims_convolution
    N = 32
    q = quotient_dims_convolution(Profile("E", 2), N)
    b = bstar_dims(2, 2, N)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.step(range(N + 1), q, where="mid", label="cohomology quotient dims", lw=2)
    ax.step(range(N + 1), b, where="mid", label="homology subalgebra dims",
            ls="--", lw=2)
    ax.set_xlabel("degree")
    ax.set_ylabel("dim over F2")
    ax.set_title("duality of dimension tables (n = 2)")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, "duality_dims.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _cohomology_ranks(plt, outdir):
    from .moduli import h0_rank, h1_rank
    ns = list(range(-12, 13))
    h0 = [h0_rank(n) for n in ns]
    h1 = [-h1_rank(n) for n in ns]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(ns, h0, color="#2d7dd2", label="rank H0")
    ax.bar(ns, h1, color="#d1495b", label="-rank H1")
    ax.axhline(0, color="black", lw=0.8)
    ax.set_xlabel("twist n")
    ax.set_ylabel("rank")
    ax.set_title("weighted projective line-bundle cohomology")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, "cohomology_ranks.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
