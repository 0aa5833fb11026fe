"""
Three layers: surfaces, slices and the delta-prime plane
========================================================

With three intensities the resonance sets are surfaces.  Fixing ``a3``
gives planar slices; intersecting the K-surface with the plane
``a1 + a2 + a3 = 0`` gives potentials whose distributional limit is a
multiple ``kappa`` of the derivative of delta.
"""

# %%
from pitool import ResidualFamily, delta_prime_kappa, kurasov_triple, slice_surface
from pitool.limits import k_theta

a = kurasov_triple(1.0, 1.0, 0.4)
print("triple", a, "theta, rho", k_theta(a, 0.4))

# %%
sl = slice_surface(ResidualFamily("K3", 0.4), -2.0, (-12, 6, -12, 6), grid=256)
print(len(sl.contours), "contours in the a3 = -2 slice; worst residual",
      max(r.max() for r in sl.residuals()))

# %%
for s in delta_prime_kappa(-5.0, 0.4):
    print(f"a = ({s.a1}, {s.a2:.6f}, {s.a3:.6f})  kappa = {s.kappa:.6f}  sheet {s.sheet}")
