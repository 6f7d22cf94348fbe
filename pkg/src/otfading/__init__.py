"""Oblivious transfer over quasi-static fading channels.

Simulation and optimization toolkit: MIMO-to-parallel channel reduction,
best-with-worst subchannel pairing, closed-form pairwise water-filling,
secrecy-rate computation, message-level OT sessions with privacy auditing,
and a deterministic Monte Carlo sweep harness.
"""

from ._backend import BACKEND
from .channels import (
    ChannelRealization,
    MimoModel,
    OfdmModel,
    ReducedChannel,
    apply_parallel,
    reduce_mimo,
    sample_mimo,
    sample_ofdm,
)
from .errors import AllocationError, NumericalError, SvdConvergenceError
from .harness import (
    RateCurve,
    RatePoint,
    SweepConfig,
    curve_to_csv,
    curve_to_json,
    run_capacity_baseline,
    run_sweep,
    write_curve,
)
from .linalg import (
    Permutation,
    SvdResult,
    sample_haar_unitary,
    sample_permutation,
    singular_values,
    svd,
)
from .pairing import (
    ChoiceAssignment,
    Pairing,
    assign_subchannels,
    brute_force_best_pairing,
    optimal_pairing,
    swap_within_pairs,
)
from .protocol import (
    PrivacyAuditReport,
    SessionConfig,
    SessionResult,
    Transcript,
    audit_alice_privacy,
    audit_bob_secrecy,
    leaky_assignment,
    run_session,
)
from .rates import (
    RateReport,
    asymptotic_constant,
    multiplexing_gain,
    pair_rates,
    secrecy_capacity,
)
from .waterfill import (
    PowerAllocation,
    allocate_block,
    allocate_ergodic,
    pair_powers_at,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationError",
    "BACKEND",
    "ChannelRealization",
    "ChoiceAssignment",
    "MimoModel",
    "NumericalError",
    "OfdmModel",
    "Pairing",
    "Permutation",
    "PowerAllocation",
    "PrivacyAuditReport",
    "RateCurve",
    "RatePoint",
    "RateReport",
    "ReducedChannel",
    "SessionConfig",
    "SessionResult",
    "SvdConvergenceError",
    "SvdResult",
    "SweepConfig",
    "Transcript",
    "allocate_block",
    "allocate_ergodic",
    "apply_parallel",
    "assign_subchannels",
    "asymptotic_constant",
    "audit_alice_privacy",
    "audit_bob_secrecy",
    "brute_force_best_pairing",
    "curve_to_csv",
    "curve_to_json",
    "leaky_assignment",
    "multiplexing_gain",
    "optimal_pairing",
    "pair_powers_at",
    "pair_rates",
    "reduce_mimo",
    "run_capacity_baseline",
    "run_session",
    "run_sweep",
    "sample_haar_unitary",
    "sample_mimo",
    "sample_ofdm",
    "sample_permutation",
    "secrecy_capacity",
    "singular_values",
    "svd",
    "swap_within_pairs",
    "write_curve",
]
