"""Random reduced density matrices, weighted differences, and spectra.

Partial-tracing a uniformly random bipartite pure state gives a random
density matrix; the same law is obtained by normalizing G G^H of a complex
Gaussian (Ginibre) rectangle by its trace.  Both constructions are provided
as independent sampling paths so they can cross-validate each other.

All samplers take an explicit ``numpy.random.Generator``; streams are
derived from a 64-bit master seed and a worker index through a Philox
counter-based generator, so parallel sub-streams never overlap and every
run is reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionOrder, NoConvergence, NonHermitian, ZeroMatrix

__all__ = [
    "EnsembleParams",
    "SpectrumSample",
    "make_rng",
    "sample_ginibre",
    "reduced_density_from_ginibre",
    "sample_pure_state_reduced",
    "sample_difference",
    "hermitian_eigenvalues",
    "page_entropy_mean",
    "von_neumann_entropy",
    "is_density_matrix",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

HERMITIAN_TOL = 1e-10


def _mix64(v: int) -> int:
    """SplitMix64 finalizer; a bijective 64-bit scrambler."""
    v = (v + _GOLDEN) & _MASK64
    v ^= v >> 30
    v = (v * 0xBF58476D1CE4E5B9) & _MASK64
    v ^= v >> 27
    v = (v * 0x94D049BB133111EB) & _MASK64
    v ^= v >> 31
    return v


def worker_seed(master_seed: int, worker: int) -> int:
    """Derive the sub-stream key for one worker from the master seed."""
    return _mix64((master_seed & _MASK64) ^ _mix64(worker + 1))


def make_rng(seed: int, worker: int = 0) -> np.random.Generator:
    """Counter-based generator for (seed, worker); distinct workers never overlap."""
    return np.random.Generator(np.random.Philox(key=worker_seed(seed, worker)))


@dataclass(frozen=True)
class EnsembleParams:
    """Dimensions, difference weights and master seed of one ensemble.

    ``n_small`` is the dimension the density matrices live in, ``m_large``
    the dimension traced out.  The difference matrix is
    ``weight_p * rho1 - weight_q * rho2``.
    """

    n_small: int
    m_large: int
    weight_p: float = 1.0
    weight_q: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_small < 1 or self.m_large < 1:
            raise ValueError("dimensions must be positive integers")
        if not (self.weight_p > 0.0 and self.weight_q > 0.0):
            raise ValueError("weights must be positive")
        if math.isinf(self.dim_ratio) or math.isinf(self.weight_ratio):
            raise ValueError("derived ratios must be finite")

    @property
    def dim_ratio(self) -> float:
        """Ratio of kept to traced-out dimension (the MP-type parameter)."""
        return self.n_small / self.m_large

    @property
    def weight_ratio(self) -> float:
        """Ratio weight_q / weight_p of the two difference weights."""
        return self.weight_q / self.weight_p

    def rng(self, worker: int = 0) -> np.random.Generator:
        return make_rng(self.seed, worker)


@dataclass(frozen=True)
class SpectrumSample:
    """Ascending eigenvalues of one draw; ``rescaled`` means x = N * lambda."""

    eigenvalues: np.ndarray
    rescaled: bool = False


def sample_ginibre(n_rows: int, n_cols: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian matrix; each entry has unit-variance real and imaginary parts."""
    if n_rows < 1 or n_cols < 1:
        raise ValueError("matrix dimensions must be >= 1")
    re = rng.standard_normal((n_rows, n_cols))
    im = rng.standard_normal((n_rows, n_cols))
    return re + 1j * im


def reduced_density_from_ginibre(g: np.ndarray) -> np.ndarray:
    """G G^H normalized to unit trace: a fixed-trace Wishart density matrix."""
    s = g @ g.conj().T
    tr = float(np.trace(s).real)
    if tr <= 0.0:
        raise ZeroMatrix("Tr(G G^H) vanished; degenerate input matrix")
    return s / tr


def sample_pure_state_reduced(
    params: EnsembleParams, rng: np.random.Generator
) -> np.ndarray:
    """Reduced density matrix of a uniformly random bipartite pure state.

    Draws a normalized complex Gaussian vector in dimension N*M (equivalent
    to a Haar-uniform unit vector), reshapes to N x M, and traces out the
    M-dimensional factor.  Distributionally identical to
    ``reduced_density_from_ginibre`` but computed along an independent code
    path for cross-validation.
    """
    n, m = params.n_small, params.m_large
    psi = rng.standard_normal(n * m) + 1j * rng.standard_normal(n * m)
    nrm = np.linalg.norm(psi)
    if nrm == 0.0:
        raise ZeroMatrix("zero state vector")
    v = (psi / nrm).reshape(n, m)
    return v @ v.conj().T


def sample_difference(params: EnsembleParams, rng: np.random.Generator) -> np.ndarray:
    """One draw of weight_p * rho1 - weight_q * rho2 with independent rho1, rho2."""
    n, m = params.n_small, params.m_large
    r1 = reduced_density_from_ginibre(sample_ginibre(n, m, rng))
    r2 = reduced_density_from_ginibre(sample_ginibre(n, m, rng))
    return params.weight_p * r1 - params.weight_q * r2


def hermitian_eigenvalues(
    h: np.ndarray, *, check_residual: bool = False
) -> SpectrumSample:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises NonHermitian when the max entrywise deviation from h^H exceeds
    1e-10.  With ``check_residual`` the eigenvectors are computed as well and
    the reconstruction residual is verified against 1e-9 * max|h|.
    """
    h = np.asarray(h)
    dev = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NonHermitian(f"max |h - h^H| = {dev:.3e} exceeds {HERMITIAN_TOL}")
    try:
        if check_residual:
            vals, vecs = np.linalg.eigh(h)
            recon = (vecs * vals) @ vecs.conj().T
            scale = max(np.max(np.abs(h)), 1e-300)
            resid = np.max(np.abs(h - recon))
            if resid > 1e-9 * scale:
                raise NoConvergence(
                    f"eigendecomposition residual {resid:.3e} exceeds 1e-9 * {scale:.3e}"
                )
        else:
            vals = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:  # iteration budget exceeded in LAPACK
        raise NoConvergence(str(exc)) from exc
    return SpectrumSample(eigenvalues=vals, rescaled=False)


def page_entropy_mean(n: int, m: int) -> float:
    """Mean entanglement entropy of a random pure state: sum_{k=m+1}^{mn} 1/k - (n-1)/(2m)."""
    if n < 1 or m < 1:
        raise ValueError("dimensions must be >= 1")
    if n > m:
        raise DimensionOrder(f"requires n <= m, got n={n} > m={m}")
    harmonic = sum(1.0 / k for k in range(m + 1, m * n + 1))
    return harmonic - (n - 1) / (2.0 * m)


def von_neumann_entropy(eigenvalues: np.ndarray) -> float:
    """Entropy -sum(l log l) in nats; zero and tiny-negative eigenvalues contribute 0."""
    lam = np.asarray(eigenvalues, dtype=float)
    lam = lam[lam > 1e-300]
    return float(-np.sum(lam * np.log(lam)))


def is_density_matrix(
    rho: np.ndarray,
    *,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    psd_tol: float = 1e-10,
) -> bool:
    """Check the density-matrix invariants: Hermitian, unit trace, PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        return False
    if abs(np.trace(rho).real - 1.0) > trace_tol:
        return False
    return bool(np.linalg.eigvalsh(rho)[0] >= -psd_tol)
