"""
Watching the limit happen
=========================

The exact transfer matrix of the squeezed stack is computed along a
geometric schedule of ``eps`` and compared with the predicted limit.
"""

# %%
from pitool import SebaParams, SqueezeParams, SweepConfig, eps_schedule, kurasov_pair, sweep

c = 0.4
rep = sweep(SweepConfig(SqueezeParams(kurasov_pair(1.0, c), c, 1.25, 0.25), 1.0, eps_schedule(1e-2, 4, 1)))
print(rep.predicted, rep.verdict)
for e, d in zip(rep.schedule, rep.max_deviation()):
    print(f"  eps={e:.0e}  max deviation {d:.4f}")
print("fitted rate:", round(rep.slopes["max"], 3))

# %%
# Off resonance on the Q1 region the coupling element blows up with a power
# of eps set by (mu, tau).
rep = sweep(SweepConfig(SqueezeParams((2.0, -2.0), 1.0, 1.25, 0.3), 1.0, eps_schedule(1e-2, 12, 1)))
print(rep.verdict, "slope of |m21|:", round(rep.slopes["m21"], 3))

# %%
# A three-delta comb with strengths a_j (c/eps)**sigma switches from transparent
# to a delta well to a wall as sigma crosses 1/2.
for sigma in (0.4, 0.5, 0.6):
    r = sweep(SweepConfig(SebaParams((1.0, 2.0, -3.0), 1.0, sigma), 1.0, eps_schedule(1e-2, 10, 1), "seba-comb"))
    print(f"sigma={sigma}: {r.predicted} -> {r.verdict}")
