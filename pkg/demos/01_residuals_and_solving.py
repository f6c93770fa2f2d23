"""Solve two small complementarity problems and inspect their residuals.

A complementarity instance is a pair of polynomial maps (f, g); a point x
solves it when f(x) >= 0, g(x) >= 0 and <f(x), g(x)> = 0.  Everything in
pcpkit is driven by the natural residual m(x) = min{f(x), g(x)}, whose
zero set is exactly the solution set.
"""

import numpy as np

from pcpkit import (
    PcpInstance,
    PolyMap,
    Polynomial,
    SolveConfig,
    certify_solution,
    enumerate_solutions,
    min_phi,
    natural_map,
    r_residual,
)

# f = g = (y - 1, xy - 1): one isolated solution at (1, 1)
y1 = Polynomial(2, {(0, 1): 1.0, (0, 0): -1.0})
xy1 = Polynomial(2, {(1, 1): 1.0, (0, 0): -1.0})
hyperbola = PcpInstance(PolyMap((y1, xy1)), PolyMap((y1, xy1)))

print("== residuals along the hyperbola valley ==")
for k in (2.0, 10.0, 100.0):
    z = np.array([k, 1.0 / k])
    print(f"  m({k:6.1f}, {1/k:6.3f}) = {natural_map(hyperbola, z)}")
print("  the residual stays bounded while the points run off to infinity\n")

print("== enumeration by index-set decomposition ==")
cfg = SolveConfig(starts_per_subsystem=120)
sols = enumerate_solutions(hyperbola, cfg)
print(f"  solutions found: {sols.points.tolist()}")
cert = sols.certificates[0]
print(f"  residual norm     : {cert.residual_norm:.2e}")
print(f"  active index set  : {cert.active_set}")
print(f"  strict complement.: {cert.strict_complementarity}   (f = g forces f_i + g_i = 0)")
print(f"  min |det Jac_I|   : {cert.min_abs_det_jac:.3f}\n")

print("== a pair with no solution at all ==")
x = Polynomial(2, {(1, 0): 1.0})
unsolvable = PcpInstance(PolyMap((x, xy1)), PolyMap((x, xy1)))
empty = enumerate_solutions(unsolvable, cfg)
print(f"  solutions found: {len(empty)}  (x = 0 and xy = 1 cannot hold together)\n")

print("== index-set residuals at a non-solution ==")
point = np.array([0.5, 0.5])
value, argmin = min_phi(hyperbola, point)
print(f"  point             : {point.tolist()}")
print(f"  ||m(x)||          : {np.linalg.norm(natural_map(hyperbola, point)):.4f}")
print(f"  min_I Phi_I(x)    : {value:.4f}  attained by I = {argmin}")
print(f"  r(x)              : {r_residual(hyperbola, point):.4f}")
print("  the sandwich ||m|| <= min Phi <= 2 sqrt(n) ||m|| always holds\n")

print("== certification rejects non-solutions ==")
try:
    certify_solution(hyperbola, [0.0, 0.0], cfg)
except Exception as rejection:
    print(f"  (0, 0) rejected: {rejection}")
