"""Enneper data g = z, omega = 1 under the four formulas.

F4 extends to an entire graph over a light-like plane; F1 and F2 are time-like
and degenerate exactly along u^2 - v^2 = 1.
"""
import numpy as np

from zmc import catalog as C
from zmc import verify as V
from zmc.paracomplex import ParaComplex
from zmc.weierstrass import SurfacePatch, conformal_factor

u, v = np.meshgrid(np.linspace(-3, 3, 50), np.linspace(-3, 3, 50))
z = ParaComplex(u.ravel(), v.ravel())
pts = np.array(SurfacePatch(C.ENNEPER, "F4")(z))
print("F4 on E4, max residual:", V.membership_residual(pts, C.IMPLICIT["enneper_E4"]))

g = C.GRAPHS["graph_E4"]
for point in ((-1.0, 0.0), (1.0, 0.0), (1.0, 2.0)):
    print("graph_E4 at", point, "->", V.causal_classify(g, *point).kind.name.lower())

for f in ("F1", "F2", "F3"):
    print(f, "conformal factor at 0.5+0.2j:", conformal_factor(C.ENNEPER, f, ParaComplex(0.5, 0.2)))

scan = V.singular_locus_scan(C.ENNEPER, "F1", (-2, 2, -2, 2), n=400)
print(f"F1 singular scan: {len(scan.points)} flagged points in {len(scan.clusters)} branches")
s = np.linspace(-1.5, 1.5, 4001)
hyper = np.concatenate([np.column_stack([np.cosh(s), np.sinh(s)]),
                        np.column_stack([-np.cosh(s), np.sinh(s)])])
hyper = hyper[np.all(np.abs(hyper) <= 2, axis=1)]
print("Hausdorff distance to u^2 - v^2 = 1:", V.hausdorff_distance(scan.points, hyper),
      "grid step:", scan.step)
