"""Error bounds: explicit exponents versus what samples actually show.

On a compact region the natural residual bounds the distance to the
solution set: c dist(x, SOL)^alpha <= ||m(x)|| with the explicit
exponent alpha = R(3n-1, d+1), R(n, d) = d(3d-3)^(n-1).  The exponent is
worst-case and astronomically loose, so reports always carry a fitted
empirical exponent next to the certified constant.  Globally the bound
can fail outright; the hyperbola pair reproduces that failure.
"""

import numpy as np

from pcpkit import (
    PcpInstance,
    PolyMap,
    Polynomial,
    SolveConfig,
    distance_to_solutions,
    enumerate_solutions,
    exponent_R,
    holder_exponent,
    naive_exponent,
    natural_map,
    verify_global_bound,
    verify_local_bound,
)

print("== the exponent ladder ==")
print("  R(n, d) = d (3d - 3)^(n-1), and 1 when d = 1")
for n, d in ((2, 2), (5, 3), (8, 4)):
    print(f"  R({n}, {d}) = {exponent_R(n, d)}")

y1 = Polynomial(2, {(0, 1): 1.0, (0, 0): -1.0})
xy1 = Polynomial(2, {(1, 1): 1.0, (0, 0): -1.0})
hyperbola = PcpInstance(PolyMap((y1, xy1)), PolyMap((y1, xy1)))
alpha = holder_exponent(hyperbola)
print(f"\n  n = 2, d = 2 instance: bound exponent  R(5, 3) = {alpha.alpha}")
print(f"  the route through the defining inequalities would need "
      f"R(6, 5) = {naive_exponent(hyperbola)}")
print("  measuring violations through the min map buys a factor of "
      f"{naive_exponent(hyperbola) // alpha.alpha} in the exponent\n")

cfg = SolveConfig(starts_per_subsystem=120)
sols = enumerate_solutions(hyperbola, cfg)

print("== local verification near the solution ==")
report = verify_local_bound(hyperbola, sols, [[0.0, 2.0], [0.0, 2.0]], 10_000, alpha=1)
print(f"  certified constant at alpha = 1 : {report.c_best:.4f}")
print(f"  fitted exponent near SOL        : {report.fitted.slope:.3f} "
      f"(r^2 = {report.fitted.r_squared:.3f})")
print("  locally the bound is far better than the worst-case exponent\n")

print("== affine instances are Lipschitz ==")
g = PolyMap(
    (
        Polynomial(2, {(1, 0): 1.0, (0, 0): -1.0}),
        Polynomial(2, {(0, 1): 1.0, (0, 0): -1.0}),
    )
)
affine = PcpInstance(PolyMap.identity(2), g)
affine_sols = enumerate_solutions(affine, cfg)
affine_report = verify_local_bound(
    affine, affine_sols, [[-2.0, 3.0], [-2.0, 3.0]], 10_000, alpha=1
)
print(f"  fitted exponent: {affine_report.fitted.slope:.4f}, "
      f"c_best = {affine_report.c_best:.4f}\n")

print("== the global failure, reproduced ==")
valley = np.array([[k, 1.0 / k] for k in (10.0, 100.0, 1000.0)])
for z in valley:
    residual = float(np.linalg.norm(natural_map(hyperbola, z)))
    dist = distance_to_solutions(sols, z)
    print(f"  at ({z[0]:6.0f}, {z[1]:7.3f}): ||m|| = {residual:.3f}, "
          f"dist = {dist:8.1f}, ratio = {residual / dist:.5f}")
global_report = verify_global_bound(
    hyperbola, sols, [1.0, 5.0, 20.0], 2000, alpha=1,
    extra_points=valley, claimed_c=0.02,
)
print(f"  certified global constant collapses to {global_report.c_best:.5f}")
print(f"  claimed c = 0.02 is breached by {len(global_report.violations)} sample(s):")
print("  no global bound with any exponent can hold for this pair")
