"""Squeezing limits of two- and three-layer delta-like potentials.

Exact transfer matrices for piecewise-constant layer stacks, the
(mu, tau) taxonomy of their squeezing limits, resonance residuals with
curve tracing, and epsilon-sweep convergence checks.
"""

from pitool.specfun import cs, sn
from pitool.transfer import (
    DeltaComb,
    PotentialProfile,
    TransferMatrix,
    comb_matrix,
    compose,
    delta_matrix,
    free_matrix,
    layer_matrix,
    profile_matrix,
    transmission_probability,
)
from pitool.squeeze import (
    SebaParams,
    SqueezeParams,
    classify,
    eps_schedule,
    realize,
    realize_seba,
    seba_equivalent,
)
from pitool.resonance import (
    ResidualFamily,
    ResonanceCurve,
    ResonanceSlice,
    delta_prime_kappa,
    full_transmission_points,
    kurasov_pair,
    kurasov_triple,
    residual,
    slice_surface,
    trace_curve,
    vertex_b0,
)
from pitool.limits import (
    Delta,
    DeltaPlusDeltaPrime,
    DeltaPrimeDiagonal,
    Separated,
    Transparent,
    alpha_P2,
    gamma_from_theta,
    limit_matrix,
    predict,
    theta_from_gamma,
    theta_P1,
)
from pitool.verify import SweepConfig, estimate_rate, sweep
from pitool.cli import run

__version__ = "0.1.0"
