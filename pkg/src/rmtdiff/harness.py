"""Monte Carlo vs theory comparison harness shared by the CLI and figures.

Units: histograms pool rescaled eigenvalues x = N * lambda of
Z = p rho1 - q rho2.  Theory overlays are expressed in the same units; the
weighted asymptotic density is computed for the normalized difference
rho1 - eta rho2 and mapped back by x -> x/p, density -> density/p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .asym_law import aed_numeric, aed_symmetric, atom_weight, find_support_numeric, support_points
from .finite_law import n2_exact_density, single_eigenvalue_marginal
from .montecarlo import HistogramResult, bin_theory_mass, build_histogram, pooled_spectrum
from .sampling import EnsembleParams

__all__ = [
    "TheoryOverlay",
    "theory_overlay",
    "run_hist",
    "write_histogram_csv",
    "write_xy_csv",
]


@dataclass(frozen=True)
class TheoryOverlay:
    """Density curve (rescaled units), atom weight and atom threshold."""

    density: object  # callable x -> float
    atom_weight: float
    atom_threshold: float | None
    label: str


def _exact_marginal_callable(n: int, m: int, p: float):
    scale = n * p

    if n == 2:
        def f(x: float) -> float:
            u = x / scale
            return n2_exact_density(u, m) / scale if abs(u) < 1.0 else 0.0

        return f

    def f3(x: float) -> float:
        u = x / scale
        if abs(u) >= 1.0:
            return 0.0
        return float(single_eigenvalue_marginal(3, m, [u])[0]) / scale

    return f3


def theory_overlay(params: EnsembleParams, *, prefer_exact: bool = True) -> TheoryOverlay:
    """Reference density for the rescaled spectrum of the given ensemble.

    Equal weights at n = 2 or 3 use the exact finite-dimension law (what the
    histogram actually estimates there); anything else falls back to the
    asymptotic density, numerically inverted when the weights differ.
    """
    n = params.n_small
    c = params.dim_ratio
    p = params.weight_p
    eta = params.weight_ratio
    if eta == 1.0:
        if prefer_exact and n in (2, 3) and n <= params.m_large:
            return TheoryOverlay(
                density=_exact_marginal_callable(n, params.m_large, p),
                atom_weight=0.0,
                atom_threshold=None,
                label=f"exact n={n}",
            )
        atom = atom_weight(c)
        x_minus, _ = support_points(c)
        threshold = 0.5 * p * x_minus if (atom > 0.0 and x_minus) else None

        def f(x: float) -> float:
            return aed_symmetric(x / p, c) / p

        return TheoryOverlay(
            density=f, atom_weight=atom, atom_threshold=threshold, label="aed"
        )
    atom = atom_weight(c, eta)
    threshold = None
    if atom > 0.0:
        intervals = find_support_numeric(c, eta)
        gap = min(
            (abs(v) for ab in intervals for v in ab if abs(v) > 1e-9), default=None
        )
        threshold = 0.5 * p * gap if gap else None

    def fw(x: float) -> float:
        return aed_numeric(x / p, c, eta) / p

    return TheoryOverlay(
        density=fw, atom_weight=atom, atom_threshold=threshold, label="aed-weighted"
    )


def run_hist(
    params: EnsembleParams,
    samples: int,
    bins: int = 60,
    *,
    workers: int = 1,
    value_range: tuple[float, float] | None = None,
    prefer_exact: bool = True,
) -> tuple[HistogramResult, TheoryOverlay, np.ndarray]:
    """Pool rescaled difference spectra, bin them, and tabulate the overlay.

    Returns (histogram, overlay, per-bin theory density).  Eigenvalues in
    the atom window |x| < threshold (gap half-width, present when the
    origin carries a point mass) are excluded from the bins but kept in the
    normalization denominator, so the continuous parts are comparable.
    """
    pooled = pooled_spectrum(params, samples, workers=workers, rescaled=True)
    overlay = theory_overlay(params, prefer_exact=prefer_exact)
    hist = build_histogram(
        pooled, bins, value_range=value_range, atom_threshold=overlay.atom_threshold
    )
    theory = bin_theory_mass(overlay.density, hist.bin_edges) / hist.widths
    return hist, overlay, theory


def _meta_lines(meta: dict) -> list[str]:
    return [f"# {k}={v}" for k, v in meta.items()]


def write_histogram_csv(path, hist: HistogramResult, theory: np.ndarray, meta: dict) -> None:
    """Rows `bin_lo,bin_hi,empirical,theory` with 17-significant-digit values."""
    with open(path, "w") as fh:
        fh.write("bin_lo,bin_hi,empirical,theory\n")
        for lo, hi, emp, th in zip(
            hist.bin_edges[:-1], hist.bin_edges[1:], hist.normalized_density, theory
        ):
            fh.write("%.17g,%.17g,%.17g,%.17g\n" % (lo, hi, emp, th))
        for line in _meta_lines(meta):
            fh.write(line + "\n")


def write_xy_csv(path, header: str, columns, meta: dict | None = None) -> None:
    """Generic numeric CSV with a fixed header and 17-digit formatting."""
    arrays = [np.asarray(col, dtype=float) for col in columns]
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in zip(*arrays):
            fh.write(",".join("%.17g" % v for v in row) + "\n")
        if meta:
            for line in _meta_lines(meta):
                fh.write(line + "\n")


def default_meta(params: EnsembleParams, samples: int, bins: int, workers: int) -> dict:
    return {
        "version": _version,
        "n": params.n_small,
        "m": params.m_large,
        "p": "%.17g" % params.weight_p,
        "q": "%.17g" % params.weight_q,
        "seed": params.seed,
        "samples": samples,
        "bins": bins,
        "workers": workers,
    }
