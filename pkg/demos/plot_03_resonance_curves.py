"""
Resonance curves at the critical power
======================================

At ``mu = 2, tau = 1`` the connected limits live on the zero set of a
transcendental residual in ``(a1, a2)``.  Tracing it in the rescaled
coordinates ``X = sign(a1)|a1|**0.5`` shows a countable family of curves.
"""

# %%
import numpy as np

from pitool import ResidualFamily, trace_curve, vertex_b0

F2 = ResidualFamily("F2", 0.4)
curves = trace_curve(F2, (-16, 2, -16, 2), grid=512)
for cur in curves:
    print(f"branch {cur.branch:2d}: {len(cur):5d} points, closest to origin {cur.min_distance_to_origin():.3f}")

# %%
# Branch 0 goes through the origin and stays inside the angle a1, a2 >= -b0.
b0 = vertex_b0(0.4)
z = curves[0]
print("b0 =", b0, " min X, Y on branch 0:", z.X.min(), z.Y.min(), " -sqrt(b0) =", -np.sqrt(b0))

# %%
# The two-layer K-set at the same c has just two pieces.
print(len(trace_curve(ResidualFamily("K2", 0.4), (-4, 2, -4, 2))), "branches of K2")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 6))
    for cur in curves:
        ax.plot(cur.X, cur.Y, lw=1)
        ax.annotate(str(cur.branch), (cur.X[len(cur) // 2], cur.Y[len(cur) // 2]))
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    ax.set_aspect("equal")
    fig.savefig("f2_curves.png", dpi=120)
