"""
Transfer matrices of layered potentials
=======================================

A piecewise-constant potential maps ``(psi, psi')`` on its left edge to its
right edge through a real 2x2 matrix of determinant one.  This script builds
a few of them and reads off transmission probabilities.
"""

# %%
# A single layer, a free stretch and a delta kick
import math

import numpy as np

from pitool import (
    DeltaComb,
    PotentialProfile,
    comb_matrix,
    delta_matrix,
    free_matrix,
    layer_matrix,
    profile_matrix,
    transmission_probability,
)

print("half period of free motion:", tuple(layer_matrix(1.0, math.pi)))
print("barrier q = -1, width 1:   ", tuple(np.round(tuple(layer_matrix(-1.0, 1.0)), 5)))
print("delta of strength 2:       ", tuple(delta_matrix(2.0)))

# %%
# Products are written later @ earlier.  A delta followed by free flight is
# not the same as free flight followed by the delta.
d, f = delta_matrix(1.0), free_matrix(1.0, 0.5)
print("f @ d =", tuple(np.round(tuple(f @ d), 4)))
print("d @ f =", tuple(np.round(tuple(d @ f), 4)))

# %%
# Tunnelling through a double barrier: transmission against energy shows the
# resonant peaks between the two walls.
prof = PotentialProfile(((0.2, 40.0), (1.0, 0.0), (0.2, 40.0)))
ks = np.linspace(0.2, 6.0, 400)
T = np.array([transmission_probability(profile_matrix(prof, k), k)[0] for k in ks])
peaks = ks[1:-1][(T[1:-1] > T[:-2]) & (T[1:-1] > T[2:]) & (T[1:-1] > 0.5)]
print("resonant wavenumbers:", np.round(peaks, 3))

# %%
# The same kind of system made of two deltas: a comb.
comb = DeltaComb((8.0, 8.0), (0.0, 1.0))
T_comb = [transmission_probability(comb_matrix(comb, k), k)[0] for k in ks]

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(ks, T, label="two layers")
    ax.plot(ks, T_comb, label="two deltas")
    ax.set_xlabel("k")
    ax.set_ylabel("T")
    ax.legend()
    fig.savefig("transmission.png", dpi=120)
