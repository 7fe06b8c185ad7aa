"""Batched Monte Carlo over difference spectra, with deterministic parallelism.

Worker w draws from its own counter-based sub-stream (see ``sampling``), so
results are byte-reproducible for a fixed (seed, workers) pair and worker
counts only redistribute which stream produced which draw.  Heavy lifting
(matrix products, eigensolves) happens in numpy batches, which release the
GIL, so a thread pool gives real speedup without pickling overhead.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .sampling import EnsembleParams, make_rng

__all__ = [
    "difference_spectra",
    "pooled_spectrum",
    "HistogramResult",
    "build_histogram",
    "bin_theory_mass",
    "l1_distance",
    "trace_distance_mc",
    "operator_norm_mc",
    "mean_entropy_mc",
    "mean_purity_mc",
]

# Batch size is a pure function of the dimensions so that sample streams do
# not depend on memory pressure.
_BATCH_ENTRIES = 4_000_000


def _batch_size(n: int, m: int) -> int:
    return max(1, _BATCH_ENTRIES // max(n * m, n * n))


def difference_spectra(
    params: EnsembleParams,
    n_samples: int,
    rng: np.random.Generator | None = None,
    *,
    rescaled: bool = True,
) -> np.ndarray:
    """(n_samples, N) ascending eigenvalues of independent difference draws."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if rng is None:
        rng = params.rng()
    n, m = params.n_small, params.m_large
    p, q = params.weight_p, params.weight_q
    out = np.empty((n_samples, n))
    done = 0
    batch = _batch_size(n, m)
    while done < n_samples:
        b = min(batch, n_samples - done)
        g1 = rng.standard_normal((b, n, m)) + 1j * rng.standard_normal((b, n, m))
        g2 = rng.standard_normal((b, n, m)) + 1j * rng.standard_normal((b, n, m))
        s1 = g1 @ g1.conj().transpose(0, 2, 1)
        s2 = g2 @ g2.conj().transpose(0, 2, 1)
        t1 = np.trace(s1, axis1=1, axis2=2).real
        t2 = np.trace(s2, axis1=1, axis2=2).real
        z = p * s1 / t1[:, None, None] - q * s2 / t2[:, None, None]
        out[done : done + b] = np.linalg.eigvalsh(z)
        done += b
    if rescaled:
        out *= n
    return out


def _worker_counts(n_samples: int, workers: int) -> list[int]:
    base, extra = divmod(n_samples, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def pooled_spectrum(
    params: EnsembleParams,
    n_samples: int,
    *,
    workers: int = 1,
    rescaled: bool = True,
) -> np.ndarray:
    """All eigenvalues of n_samples draws pooled into one array.

    Draws are split across ``workers`` sub-streams and merged in worker
    order, so the output is deterministic for fixed (seed, workers).
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    counts = _worker_counts(n_samples, workers)

    def job(w: int) -> np.ndarray:
        if counts[w] == 0:
            return np.empty((0,))
        rng = make_rng(params.seed, w)
        return difference_spectra(params, counts[w], rng, rescaled=rescaled).ravel()

    if workers == 1:
        parts = [job(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(workers)))
    return np.concatenate(parts)


@dataclass(frozen=True)
class HistogramResult:
    """Normalized histogram of pooled eigenvalues.

    ``normalized_density`` integrates to the fraction of all pooled
    eigenvalues that fell inside the range (atom-excluded values and
    out-of-range values count in the denominator but not in any bin).
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    normalized_density: np.ndarray
    total_samples: int
    atom_fraction: float = 0.0
    atom_threshold: float | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)


def build_histogram(
    values: np.ndarray,
    bins: int,
    *,
    value_range: tuple[float, float] | None = None,
    atom_threshold: float | None = None,
) -> HistogramResult:
    """Histogram pooled values; optionally split off |x| < atom_threshold as atom mass."""
    if bins < 2:
        raise ValueError("bins must be >= 2")
    values = np.asarray(values, dtype=float).ravel()
    total = values.size
    atom_fraction = 0.0
    continuous = values
    if atom_threshold is not None:
        mask = np.abs(values) < atom_threshold
        atom_fraction = float(mask.sum()) / total
        continuous = values[~mask]
    if value_range is None:
        value_range = (float(continuous.min()), float(continuous.max()))
    counts, edges = np.histogram(continuous, bins=bins, range=value_range)
    widths = np.diff(edges)
    density = counts / (total * widths)
    return HistogramResult(
        bin_edges=edges,
        counts=counts,
        normalized_density=density,
        total_samples=total,
        atom_fraction=atom_fraction,
        atom_threshold=atom_threshold,
    )


_GL5_NODES, _GL5_WEIGHTS = np.polynomial.legendre.leggauss(5)


def bin_theory_mass(theory_density, edges: np.ndarray) -> np.ndarray:
    """Per-bin mass of a density function, by 5-point Gauss-Legendre."""
    edges = np.asarray(edges, dtype=float)
    masses = np.empty(len(edges) - 1)
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        xs = 0.5 * (b - a) * _GL5_NODES + 0.5 * (a + b)
        masses[i] = 0.5 * (b - a) * float(
            np.dot(_GL5_WEIGHTS, [theory_density(float(x)) for x in xs])
        )
    return masses


def l1_distance(hist: HistogramResult, theory_density) -> float:
    """L1 distance between bin masses of the histogram and of a theory density."""
    emp = hist.normalized_density * hist.widths
    th = bin_theory_mass(theory_density, hist.bin_edges)
    return float(np.sum(np.abs(emp - th)))


def trace_distance_mc(params: EnsembleParams, n_samples: int, *, workers: int = 1) -> float:
    """Monte Carlo mean of (1/2) sum |lambda_i| over difference draws."""
    counts = _worker_counts(n_samples, workers)

    def job(w: int) -> float:
        if counts[w] == 0:
            return 0.0
        rng = make_rng(params.seed, w)
        spec = difference_spectra(params, counts[w], rng, rescaled=False)
        return float(np.sum(np.abs(spec)) * 0.5)

    if workers == 1:
        totals = [job(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            totals = list(pool.map(job, range(workers)))
    return sum(totals) / n_samples


def operator_norm_mc(params: EnsembleParams, n_samples: int, *, workers: int = 1) -> float:
    """Monte Carlo mean of max |lambda_i| (raw, unrescaled)."""
    counts = _worker_counts(n_samples, workers)

    def job(w: int) -> float:
        if counts[w] == 0:
            return 0.0
        rng = make_rng(params.seed, w)
        spec = difference_spectra(params, counts[w], rng, rescaled=False)
        return float(np.sum(np.max(np.abs(spec), axis=1)))

    if workers == 1:
        totals = [job(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            totals = list(pool.map(job, range(workers)))
    return sum(totals) / n_samples


def _reduced_density_batch(n: int, m: int, b: int, rng: np.random.Generator) -> np.ndarray:
    """Batch of reduced density matrices via the normalized-state path."""
    psi = rng.standard_normal((b, n * m)) + 1j * rng.standard_normal((b, n * m))
    psi /= np.linalg.norm(psi, axis=1)[:, None]
    v = psi.reshape(b, n, m)
    return v @ v.conj().transpose(0, 2, 1)


def mean_entropy_mc(params: EnsembleParams, n_samples: int) -> float:
    """Mean von Neumann entropy (nats) of sampled reduced density matrices."""
    rng = params.rng()
    n, m = params.n_small, params.m_large
    total = 0.0
    done = 0
    batch = _batch_size(n, m)
    while done < n_samples:
        b = min(batch, n_samples - done)
        lam = np.linalg.eigvalsh(_reduced_density_batch(n, m, b, rng))
        lam = np.clip(lam, 1e-300, None)
        total += float(-np.sum(lam * np.log(lam)))
        done += b
    return total / n_samples


def mean_purity_mc(params: EnsembleParams, n_samples: int, *, path: str = "ginibre") -> float:
    """Mean Tr(rho^2); ``path`` selects which of the two samplers to exercise."""
    rng = params.rng()
    n, m = params.n_small, params.m_large
    total = 0.0
    done = 0
    batch = _batch_size(n, m)
    while done < n_samples:
        b = min(batch, n_samples - done)
        if path == "ginibre":
            g = rng.standard_normal((b, n, m)) + 1j * rng.standard_normal((b, n, m))
            s = g @ g.conj().transpose(0, 2, 1)
            rho = s / np.trace(s, axis1=1, axis2=2).real[:, None, None]
        elif path == "pure-state":
            rho = _reduced_density_batch(n, m, b, rng)
        else:
            raise ValueError("path must be 'ginibre' or 'pure-state'")
        total += float(np.einsum("bij,bji->", rho, rho).real)
        done += b
    return total / n_samples
