"""
Where a squeezed stack ends up
==============================

Layers of height ``a_j eps**-mu`` and width ``eps`` separated by gaps
``c eps**tau`` shrink to a point as ``eps -> 0``.  What is left depends on
``(mu, tau)`` and, on the critical lines, on whether the intensities sit on a
resonance set.
"""

# %%
# The region map
from pitool import SqueezeParams, classify, kurasov_pair, predict
from pitool.limits import diagnose

for mu, tau in [(0.5, 1.0), (1.0, 0.4), (1.5, 0.5), (1.5, 0.75), (1.5, 1.0), (1.5, 3.0),
                (2.0, 1.0), (2.0, 1.5), (2.0, 2.0), (2.0, 2.5), (2.5, 1.0)]:
    print(f"mu={mu:<4} tau={tau:<4} -> {classify(mu, tau).value}")

# %%
# On the line tau = mu - 1 the limit is a diagonal matrix diag(theta, 1/theta)
# when the intensities satisfy a1 + a2 + c a1 a2 = 0.  ``kurasov_pair``
# produces such a pair for a prescribed strength gamma.
c = 0.4
for gamma in (0.5, 1.0, 1.5):
    a = kurasov_pair(gamma, c)
    print(gamma, [round(x, 4) for x in a], predict(SqueezeParams(a, c, 1.5, 0.5)))

# %%
# Off the resonance set the two sides decouple.
d = diagnose(SqueezeParams((1.0, 3.0), c, 1.5, 0.5))
print(d.interaction, "residual", d.residual)

# %%
# The symmetric double well a1 = a2 = -2/c is fully transparent.
print(predict(SqueezeParams((-2 / c, -2 / c), c, 1.5, 0.5)))
