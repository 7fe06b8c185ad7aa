"""Distances between two random states, and the moment formula behind them.

The trace distance converges to an arcsine-type closed form (half the first
absolute moment of the limiting density); the operator norm converges to
the support edge over N.  Both are checked here against Monte Carlo, the
moment formula against independent quadrature, including a complex order.
"""

import math


from rmtdiff import (
    EnsembleParams,
    absolute_moment,
    distance_to_mixed_asymptotic,
    even_moment,
    moment_via_quadrature,
    operator_norm_asymptotic,
    operator_norm_mc,
    trace_distance_asymptotic,
    trace_distance_mc,
)

print("trace distance, limiting formula vs Monte Carlo:")
for c, n, m in ((1.0, 100, 100), (5.0, 100, 20)):
    params = EnsembleParams(n_small=n, m_large=m, seed=505)
    mc = trace_distance_mc(params, 500)
    th = trace_distance_asymptotic(c)
    print(f"  c={c}: MC({n}x{m}, 500 draws)={mc:.5f}  formula={th:.5f}")

params = EnsembleParams(n_small=200, m_large=200, seed=506)
mc_norm = 200 * operator_norm_mc(params, 200)
th_norm = 200 * operator_norm_asymptotic(1.0, 200)
print(f"\noperator norm (rescaled), N=M=200: MC={mc_norm:.4f}  formula={th_norm:.4f}")

print("\nabsolute moments: closed form vs quadrature oracle")
for z, c in ((0.5, 1.0), (1.0, 3.0), (3.7, 1.9)):
    a = absolute_moment(z, c)
    q = moment_via_quadrature(z, c)
    print(f"  m_{z}({c}) = {a:.10f}   quadrature {q:.10f}")
print(f"  even-moment route m_4(1) = {even_moment(2, 1.0):.10f}")
zc = 1.5 + 1.0j
print(f"  complex order m_z(1), z={zc}: {absolute_moment(zc, 1.0):.6f}")

print("\nsmall-c universality: both distances shrink like sqrt(c), ratio sqrt(2)")
for c in (1e-2, 1e-3):
    r = trace_distance_asymptotic(c) / distance_to_mixed_asymptotic(c)
    print(f"  c={c:g}: d(rho1, rho2) / d(rho1, mixed) = {r:.5f}"
          f"   (sqrt(2) = {math.sqrt(2):.5f})")
