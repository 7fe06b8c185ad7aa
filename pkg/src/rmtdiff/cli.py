"""Command-line front end.

Subcommands: sample, hist, aed, moments, distance, fig, verify.  The master
seed can be overridden with the RMTDIFF_SEED environment variable (useful
in CI).  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass


from .acceptance import run_verify
from .asym_law import aed_grid
from .errors import RmtDiffError
from .figures import FIGURE_IDS, run_fig
from .harness import default_meta, run_hist, write_histogram_csv, write_xy_csv
from .moments import (
    absolute_moment,
    distance_to_mixed_asymptotic,
    moment_via_quadrature,
    operator_norm_asymptotic,
    trace_distance_asymptotic,
)
from .montecarlo import difference_spectra
from .sampling import EnsembleParams
from .svgplot import render_xy

_SEED_ENV = "RMTDIFF_SEED"


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        try:
            lo_s, hi_s, n_s = text.split(":")
            spec = cls(float(lo_s), float(hi_s), int(n_s))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(
                f"grid must be lo:hi:count, got {text!r}"
            ) from exc
        if not (spec.lo < spec.hi and spec.count >= 2):
            raise argparse.ArgumentTypeError("grid requires lo < hi and count >= 2")
        return spec


@dataclass(frozen=True)
class RunConfig:
    """Resolved configuration of one Monte Carlo CLI run."""

    command: str
    params: EnsembleParams
    samples: int = 1000
    bins: int = 60
    grid: GridSpec | None = None
    output_path: str | None = None
    workers: int = 1
    format: str = "csv"

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.format not in ("csv", "svg"):
            raise ValueError("format must be csv or svg")


def _ensemble_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="kept dimension N")
    p.add_argument("--m", type=int, required=True, help="traced-out dimension M")
    p.add_argument("--p", type=float, default=1.0, help="weight of the first state")
    p.add_argument("--q", type=float, default=1.0, help="weight of the second state")
    p.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--bins", type=int, default=60)
    p.add_argument("--grid", type=GridSpec.parse, default=None,
                   help="lo:hi:count (use --grid=-3:3:61 for a negative lo)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="output file or directory")
    p.add_argument("--format", choices=("csv", "svg"), default="csv",
                   help="svg additionally renders a quick-look chart")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rmtdiff",
        description="Spectral statistics of differences of random density matrices.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="dump raw difference spectra")
    _ensemble_args(p)
    _common_args(p)

    p = sub.add_parser("hist", help="histogram of rescaled spectra vs theory")
    _ensemble_args(p)
    _common_args(p)

    p = sub.add_parser("aed", help="asymptotic density on a grid")
    p.add_argument("--c", type=float, default=None, help="dimension ratio N/M")
    p.add_argument("--eta", type=float, default=1.0, help="weight ratio q/p")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--count", type=int, default=6001)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("moments", help="absolute moments: closed form vs quadrature")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--z", type=float, nargs="+", default=[0.5, 1.0, 2.0, 4.0])
    p.add_argument("--out", default=None)

    p = sub.add_parser("distance", help="asymptotic distance measures vs c")
    p.add_argument("--c", type=float, nargs="+", required=True)
    p.add_argument("--n", type=int, default=1, help="dimension for the operator norm")
    p.add_argument("--out", default=None)

    p = sub.add_parser("fig", help="reproduce a preset comparison dataset")
    p.add_argument("--id", required=True, choices=FIGURE_IDS)
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--fast", action="store_true", help="tenth of the samples")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "svg"), default="svg")

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--level", choices=("fast", "full"), default="full")
    p.add_argument("--out", default=None, help="machine-readable report path")
    return ap


def _seed_override(seed: int) -> int:
    env = os.environ.get(_SEED_ENV)
    return int(env) if env else seed


def _params(args) -> EnsembleParams:
    return EnsembleParams(
        n_small=args.n, m_large=args.m, weight_p=args.p, weight_q=args.q,
        seed=_seed_override(args.seed),
    )


def _run_config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        params=_params(args),
        samples=args.samples,
        bins=args.bins,
        grid=args.grid,
        output_path=args.out,
        workers=args.workers,
        format=args.format,
    )


def _cmd_sample(args) -> int:
    cfg = _run_config(args)
    spectra = difference_spectra(cfg.params, cfg.samples, rescaled=True)
    out = cfg.output_path or "spectra.csv"
    with open(out, "w") as fh:
        fh.write("draw,k,x\n")
        for i, row in enumerate(spectra):
            for k, v in enumerate(row):
                fh.write("%d,%d,%.17g\n" % (i, k, v))
        meta = default_meta(cfg.params, cfg.samples, 0, 1)
        del meta["bins"]
        for key, val in meta.items():
            fh.write(f"# {key}={val}\n")
    print(f"wrote {out} ({spectra.size} eigenvalues, rescaled x = N*lambda)")
    return 0


def _cmd_hist(args) -> int:
    cfg = _run_config(args)
    vrange = (cfg.grid.lo, cfg.grid.hi) if cfg.grid else None
    hist, overlay, theory = run_hist(
        cfg.params, cfg.samples, cfg.bins, workers=cfg.workers, value_range=vrange
    )
    meta = default_meta(cfg.params, cfg.samples, cfg.bins, cfg.workers)
    meta["overlay"] = overlay.label
    if overlay.atom_threshold is not None:
        meta["atom_threshold"] = "%.17g" % overlay.atom_threshold
        meta["atom_fraction"] = "%.17g" % hist.atom_fraction
    out = cfg.output_path or "hist.csv"
    write_histogram_csv(out, hist, theory, meta)
    print(f"wrote {out}")
    if cfg.format == "svg":
        svg = os.path.splitext(out)[0] + ".svg"
        render_xy(
            svg,
            title=f"n={cfg.params.n_small} m={cfg.params.m_large} ({cfg.samples} samples)",
            bars=(hist.bin_edges, hist.normalized_density, "steelblue"),
            lines=[(hist.centers, theory, "crimson")],
        )
        print(f"wrote {svg}")
    return 0


def _cmd_aed(args) -> int:
    if args.c is None:
        if args.n is None or args.m is None:
            print("aed: provide --c or both --n and --m", file=sys.stderr)
            return 2
        c = args.n / args.m
    else:
        c = args.c
    res = aed_grid(c, args.eta, count=args.count)
    out = args.out or "aed.csv"
    res.to_csv(out)
    print(
        f"wrote {out} (c={c:g}, eta={args.eta:g}, atom={res.atom_weight:.6g}, "
        f"x_plus={res.x_plus:.6g})"
    )
    if args.format == "svg":
        svg = os.path.splitext(out)[0] + ".svg"
        render_xy(svg, title=f"asymptotic density, c={c:g}, eta={args.eta:g}",
                  lines=[(res.grid, res.density, "royalblue")])
        print(f"wrote {svg}")
    return 0


def _cmd_moments(args) -> int:
    rows = []
    for z in args.z:
        closed = absolute_moment(z, args.c)
        quadv = moment_via_quadrature(z, args.c)
        rows.append((z, closed, quadv))
        print(f"m_{z:g}({args.c:g}) = {closed!r}  (quadrature {quadv!r})")
    if args.out:
        write_xy_csv(
            args.out, "z,closed_form,quadrature",
            [[r[0] for r in rows], [r[1] for r in rows], [r[2] for r in rows]],
            meta={"c": "%.17g" % args.c},
        )
        print(f"wrote {args.out}")
    return 0


def _cmd_distance(args) -> int:
    ctab, dtr, dop, dmix = [], [], [], []
    for c in args.c:
        ctab.append(c)
        dtr.append(trace_distance_asymptotic(c))
        dop.append(operator_norm_asymptotic(c, args.n))
        dmix.append(distance_to_mixed_asymptotic(c))
        print(
            f"c={c:g}: trace={dtr[-1]:.10g} opnorm(n={args.n})={dop[-1]:.10g} "
            f"to-mixed={dmix[-1]:.10g}"
        )
    if args.out:
        write_xy_csv(
            args.out, "c,trace_distance,operator_norm,distance_to_mixed",
            [ctab, dtr, dop, dmix], meta={"n": args.n},
        )
        print(f"wrote {args.out}")
    return 0


def _cmd_fig(args) -> int:
    files = run_fig(
        args.id, args.out, fast=args.fast, svg=(args.format == "svg"),
        workers=args.workers,
    )
    for f in files:
        print(f"wrote {f}")
    return 0


def _cmd_verify(args) -> int:
    return run_verify(args.level, args.out)


_DISPATCH = {
    "sample": _cmd_sample,
    "hist": _cmd_hist,
    "aed": _cmd_aed,
    "moments": _cmd_moments,
    "distance": _cmd_distance,
    "fig": _cmd_fig,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except RmtDiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
