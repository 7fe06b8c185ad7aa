"""Exact finite-dimension eigenvalue laws for the difference matrix.

On the zero-sum hyperplane the joint density of the diagonal elements of
Z = rho1 - rho2 is, inside each sign orthant, an explicit polynomial with
rational coefficients (a multinomial sum over Laguerre-type weights times
powers of gamma = 1 - (1/2) sum |z_i|).  Applying the Vandermonde
differential operator prod_{i<j}(d_i - d_j) and multiplying by the
Vandermonde determinant yields the joint eigenvalue density.

Measure convention: the hyperplane delta is consumed by eliminating the last
coordinate, i.e. every returned density is with respect to
(lambda_1, ..., lambda_{N-1}) with lambda_N = -sum of the others.  Under
this convention all densities integrate to one, which is what the tests pin.

Evaluation is exact big-rational arithmetic by default (the differential
operator amplifies cancellation catastrophically in floating point for the
binomially large coefficients involved); a float fast path exists for bulk
grid work such as marginalization, where 1e-6 absolute suffices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import (
    BoundaryPoint,
    DimensionOrder,
    DomainError,
    NegativeDensityWarning,
    SizeLimit,
    Unsupported,
)

__all__ = [
    "OrthantPiecewisePoly",
    "build_psi_poly",
    "joint_eigen_density",
    "n2_exact_density",
    "w_poly",
    "derivative_principle_selftest",
    "single_eigenvalue_marginal",
    "region_gamma",
]

BOUNDARY_TOL = 1e-9

Poly = dict


def region_gamma(lambdas) -> float:
    """gamma = 1 - (1/2) sum |z_i|; positive exactly on the interior of the support region."""
    return 1.0 - 0.5 * float(np.sum(np.abs(np.asarray(lambdas, dtype=float))))


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def _sign_factor(signs, exponents) -> int:
    f = 1
    for s, e in zip(signs, exponents):
        if s < 0 and e % 2 == 1:
            f = -f
    return f


@dataclass(frozen=True)
class OrthantPiecewisePoly:
    """Piecewise polynomial indexed by sign orthant.

    Within orthant s the substitution |z_i| -> s_i z_i makes every piece a
    polynomial in z; the pieces share one base coefficient table because the
    sign dependence factors as prod_i s_i^{e_i} per monomial (the |z_i|
    powers and the gamma expansion contribute s_i with the same parity as
    the total exponent).
    """

    n_vars: int
    m_large: int
    base: Poly  # exponent tuple -> Fraction, all-positive orthant

    def piece(self, signs: tuple[int, ...]) -> Poly:
        return {
            e: c if _sign_factor(signs, e) > 0 else -c for e, c in self.base.items()
        }

    def evaluate(self, point, *, exact: bool = True) -> float:
        """Evaluate the smooth prefactor psi at a hyperplane point."""
        pt = np.asarray(point, dtype=float)
        signs = tuple(1 if v > 0 else -1 for v in pt)
        poly = self.piece(signs)
        if exact:
            fr = [Fraction(float(v)) for v in pt]
            acc = Fraction(0)
            for e, c in poly.items():
                term = c
                for fv, k in zip(fr, e):
                    term *= fv**k
                acc += term
            return float(acc)
        E, C = _float_table(poly)
        return float(C @ np.prod(pt[None, :] ** E, axis=1))

    @property
    def term_count(self) -> int:
        return len(self.base)

    def to_csv(self, path) -> None:
        """Per-orthant rows `orthant,e_1,...,e_N,coefficient` with exact rationals."""
        with open(path, "w") as fh:
            cols = ",".join(f"e{i+1}" for i in range(self.n_vars))
            fh.write(f"orthant,{cols},coefficient\n")
            for signs in product((1, -1), repeat=self.n_vars):
                tag = "".join("+" if s > 0 else "-" for s in signs)
                piece = self.piece(signs)
                for e in sorted(piece):
                    c = piece[e]
                    fh.write(
                        "%s,%s,%s/%s\n"
                        % (tag, ",".join(map(str, e)), c.numerator, c.denominator)
                    )


def _float_table(poly: Poly):
    E = np.array(list(poly.keys()), dtype=np.int64).reshape(len(poly), -1)
    C = np.array([float(c) for c in poly.values()])
    return E, C


def build_psi_poly(n: int, m: int, *, max_terms: int = 10_000_000) -> OrthantPiecewisePoly:
    """Expand the diagonal-element density prefactor into monomials.

    psi(z) = Gamma(MN)^2/Gamma(M)^N * sum over k in {0..M-1}^N of
    gamma^(D - sum k) / (D - sum k)! * prod_i w_{k_i} |z_i|^{k_i} with
    D = N(2M-1) - 1 and w_k the Laguerre-type integer weights.  Raises
    SizeLimit when the multinomial expansion would exceed ``max_terms``
    generated terms.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > m:
        raise DimensionOrder(f"requires n <= m, got n={n} > m={m}")
    D = n * (2 * m - 1) - 1
    prefactor = Fraction(
        math.factorial(n * m - 1) ** 2, math.factorial(m - 1) ** n
    )
    lag = [
        Fraction(
            math.factorial(2 * (m - 1) - k),
            math.factorial(k) * math.factorial(m - 1 - k),
        )
        for k in range(m)
    ]
    base: Poly = {}
    generated = 0
    # binomial row cache for the gamma-power expansion
    half = Fraction(1, 2)
    for ks in product(range(m), repeat=n):
        e = D - sum(ks)
        coef = prefactor / math.factorial(e)
        for k in ks:
            coef *= lag[k]
        for j in range(e + 1):
            cj = coef * math.comb(e, j) * (-half) ** j
            fj = math.factorial(j)
            for js in _compositions(j, n):
                generated += 1
                if generated > max_terms:
                    raise SizeLimit(
                        f"psi expansion for (n={n}, m={m}) exceeded {max_terms} terms"
                    )
                cc = cj * fj
                for ji in js:
                    cc /= math.factorial(ji)
                ex = tuple(k + ji for k, ji in zip(ks, js))
                prev = base.get(ex)
                base[ex] = cc if prev is None else prev + cc
    base = {e: c for e, c in base.items() if c != 0}
    return OrthantPiecewisePoly(n_vars=n, m_large=m, base=base)


def _apply_difference_operator(poly: Poly, n: int) -> Poly:
    """Apply prod_{i<j} (d/dz_i - d/dz_j) to a monomial table."""
    cur = poly
    for i in range(n):
        for j in range(i + 1, n):
            nxt: Poly = {}
            for e, c in cur.items():
                if e[i] > 0:
                    e2 = list(e)
                    e2[i] -= 1
                    key = tuple(e2)
                    nxt[key] = nxt.get(key, Fraction(0)) + c * e[i]
                if e[j] > 0:
                    e2 = list(e)
                    e2[j] -= 1
                    key = tuple(e2)
                    nxt[key] = nxt.get(key, Fraction(0)) - c * e[j]
            cur = {e: c for e, c in nxt.items() if c != 0}
    return cur


@lru_cache(maxsize=16)
def _law_tables(n: int, m: int):
    """psi, its Vandermonde-differentiated pieces, and float tables per orthant."""
    psi = build_psi_poly(n, m)
    diff = {}
    tables = {}
    for signs in product((1, -1), repeat=n):
        q = _apply_difference_operator(psi.piece(signs), n)
        diff[signs] = q
        tables[signs] = _float_table(q)
    norm = Fraction(1)
    for p in range(1, n + 1):
        norm *= math.factorial(p)
    return psi, diff, tables, norm


def _vandermonde(lam) -> float:
    v = 1.0
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            v *= lam[j] - lam[i]
    return v


def joint_eigen_density(lambdas, n: int, m: int, *, exact: bool = True) -> float:
    """Joint eigenvalue density at an interior point of the support region.

    Implements the derivative principle for unitarily invariant ensembles:
    density = (prod_p p!)^{-1} * Vandermonde(lambda) * [product of pairwise
    derivative differences applied to psi](lambda); the hyperplane delta
    commutes through the operator and is consumed per the module convention.

    Points within 1e-9 of an orthant wall (some lambda_i = 0) or of the
    support-region boundary (gamma = 0) are rejected: distributional
    boundary contributions are out of scope.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (n,):
        raise ValueError(f"expected {n} eigenvalues, got shape {lam.shape}")
    if n > m:
        raise DimensionOrder(f"requires n <= m, got n={n} > m={m}")
    if abs(float(lam.sum())) > 1e-12:
        raise ValueError("eigenvalues must sum to zero (within 1e-12)")
    if float(np.min(np.abs(lam))) <= BOUNDARY_TOL:
        raise BoundaryPoint("a coordinate is within 1e-9 of an orthant wall")
    gam = region_gamma(lam)
    if gam <= BOUNDARY_TOL:
        if gam <= -BOUNDARY_TOL:
            return 0.0  # outside the support region entirely
        raise BoundaryPoint("point is within 1e-9 of the support-region boundary")
    _, diff, tables, norm = _law_tables(n, m)
    signs = tuple(1 if v > 0 else -1 for v in lam)
    if exact:
        fr = [Fraction(float(v)) for v in lam]
        acc = Fraction(0)
        for e, c in diff[signs].items():
            term = c
            for fv, k in zip(fr, e):
                term *= fv**k
            acc += term
        vand = Fraction(1)
        for i in range(n):
            for j in range(i + 1, n):
                vand *= fr[j] - fr[i]
        val = float(vand * acc / norm)
    else:
        E, C = tables[signs]
        q = float(C @ np.prod(lam[None, :] ** E, axis=1))
        val = _vandermonde(lam) * q / float(norm)
    if val < -1e-9:
        warnings.warn(
            f"joint density evaluated to {val:.3e} < 0 at {lam}",
            NegativeDensityWarning,
            stacklevel=2,
        )
    return val


def w_poly(m: int) -> list[Fraction]:
    """Exact coefficients of W(a) = sum_k C(M-1,k) ((2(M-1)-k)!)^2 / (4(M-1)-2k+1)! a^k.

    W is the degree-(M-1) polynomial through which the two-dimensional
    marginal density is expressed; Python big integers keep it exact for
    any M.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    mm = m - 1
    return [
        Fraction(
            math.comb(mm, k) * math.factorial(2 * mm - k) ** 2,
            math.factorial(4 * mm - 2 * k + 1),
        )
        for k in range(m)
    ]


@lru_cache(maxsize=64)
def _w_poly_logs(m: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    ws = w_poly(m)
    logs = tuple(math.log(w.numerator) - math.log(w.denominator) for w in ws)
    dlogs = tuple(math.log(k) + logs[k] for k in range(1, m))
    return logs, dlogs


def _logsumexp(values) -> float:
    peak = max(values)
    return peak + math.log(sum(math.exp(v - peak) for v in values))


def n2_exact_density(lam: float, m: int) -> float:
    """Closed-form marginal eigenvalue density for the two-dimensional case.

    rho(lambda) = -lambda d/dlambda [ K (1-|lambda|)^{4M-3} W(|lambda|/(1-|lambda|)^2) ]
    with K = Gamma(2M)^2 / Gamma(M)^4, differentiated analytically and
    evaluated in log space (stable for any M; the factorial ratios never
    overflow).  Even in lambda; vanishes at 0 by eigenvalue repulsion.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    t = abs(float(lam))
    if t >= 1.0:
        raise DomainError("|lambda| must be < 1")
    if t == 0.0:
        return 0.0
    logs, dlogs = _w_poly_logs(m)
    ln_alpha = math.log(t) - 2.0 * math.log1p(-t)
    lnW = _logsumexp([logs[k] + k * ln_alpha for k in range(m)])
    if m > 1:
        lnW1 = _logsumexp([dlogs[k - 1] + (k - 1) * ln_alpha for k in range(1, m)])
        ratio = math.exp(lnW1 - lnW)
    else:
        ratio = 0.0
    lnK = 2.0 * math.lgamma(2 * m) - 4.0 * math.lgamma(m)
    ln_f = lnK + (4 * m - 3) * math.log1p(-t) + lnW
    dln_f = -(4 * m - 3) / (1.0 - t) + ratio * (1.0 + t) / (1.0 - t) ** 3
    return -t * math.exp(ln_f) * dln_f


def _marginal_2(points, m: int) -> np.ndarray:
    return np.array([n2_exact_density(float(x), m) for x in np.asarray(points)])


def _marginal_3(points, m: int, order: int) -> np.ndarray:
    _, _, tables, norm = _law_tables(3, m)
    nodes, weights = leggauss(order)
    fnorm = float(norm)

    def dens(l1: float, l2: float) -> float:
        l3 = -l1 - l2
        lam = (l1, l2, l3)
        if min(abs(v) for v in lam) < 1e-13:
            return 0.0
        if 1.0 - 0.5 * (abs(l1) + abs(l2) + abs(l3)) <= 0.0:
            return 0.0
        signs = tuple(1 if v > 0 else -1 for v in lam)
        E, C = tables[signs]
        mono = (l1 ** E[:, 0]) * (l2 ** E[:, 1]) * (l3 ** E[:, 2])
        q = float(C @ mono)
        return (l2 - l1) * (l3 - l1) * (l3 - l2) * q / fnorm

    out = np.empty(len(points))
    for idx, l1 in enumerate(np.asarray(points, dtype=float)):
        if abs(l1) >= 1.0:
            out[idx] = 0.0
            continue
        lo = -1.0 if l1 >= 0.0 else -1.0 - l1
        hi = 1.0 - l1 if l1 >= 0.0 else 1.0
        cuts = sorted({lo, hi, 0.0, -l1})
        cuts = [v for v in cuts if lo <= v <= hi]
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a < 1e-14:
                continue
            xs = 0.5 * (b - a) * nodes + 0.5 * (a + b)
            total += 0.5 * (b - a) * float(
                np.dot(weights, [dens(float(l1), float(x)) for x in xs])
            )
        out[idx] = total
    return out


def single_eigenvalue_marginal(n: int, m: int, points, *, gauss_order: int = 24) -> np.ndarray:
    """Average (single-eigenvalue) density at the given raw-lambda points.

    n = 2 uses the closed form; n = 3 marginalizes the joint law by
    piecewise Gauss-Legendre quadrature over the hexagonal support (the
    integrand is polynomial between orthant walls, so modest orders are
    exact).  Larger n is out of scope.
    """
    if n == 2:
        return _marginal_2(points, m)
    if n == 3:
        if m < 3:
            raise DimensionOrder("requires n <= m")
        return _marginal_3(points, m, gauss_order)
    raise Unsupported("marginal density implemented for n in {2, 3} only")


def derivative_principle_selftest(*, tol: float = 1e-10, verbose: bool = False) -> bool:
    """Check the derivative principle on an analytically solvable ensemble.

    For a product-Gaussian diagonal law (the 2x2 GUE case) the principle
    must reproduce (1/(4 pi)) (l1-l2)^2 exp(-(l1^2+l2^2)/2) exactly.  The
    pairwise derivative difference is applied by Richardson-extrapolated
    central differences so the check shares no code with the polynomial
    path.  Returns False (with diagnostics) on mismatch.
    """

    def psi(a: float, b: float) -> float:
        return math.exp(-0.5 * (a * a + b * b)) / (2.0 * math.pi)

    def directional(a: float, b: float, h: float) -> float:
        # derivative of s -> psi(a + s, b - s) at 0
        return (psi(a + h, b - h) - psi(a - h, b + h)) / (2.0 * h)

    h = 1e-5
    ok = True
    for l1 in (-1.5, -0.5, 0.3, 1.1, 2.0):
        for l2 in (-1.5, -0.5, 0.3, 1.1, 2.0):
            if l1 == l2:
                continue
            d = (4.0 * directional(l1, l2, h / 2.0) - directional(l1, l2, h)) / 3.0
            got = 0.5 * (l2 - l1) * d
            want = (l1 - l2) ** 2 * math.exp(-0.5 * (l1 * l1 + l2 * l2)) / (4.0 * math.pi)
            if abs(got - want) > tol:
                ok = False
                if verbose:
                    print(
                        f"selftest mismatch at ({l1}, {l2}): got {got!r}, want {want!r}"
                    )
    return ok
