"""Rate regions and random-binning simulation for two-user channels with
confidential messages and wiretappers."""

from .errors import (
    AxisError,
    DomainError,
    InfeasibleRateError,
    InternalConsistencyError,
    MacwtError,
    MarkovViolationError,
    ResourceCapError,
)
from .info_core import (
    GaussianMacParams,
    JointTable,
    TransitionKernel,
    binary_and_kernel,
    binary_entropy,
    bsc_kernel,
    cascade_degrade,
    entropy,
    half_log1p_ratio,
    inverse_binary_entropy,
    lift_inputs,
    mutual_information,
)
from .regions import (
    AuxiliaryModel,
    ConstraintRegion,
    FrontierCurve,
    LinearConstraint,
    MacWiretapChannel,
    PowerSplit,
    RatePoint,
    RegionUnion,
    binary_cm_region,
    binary_cm_secrecy,
    binary_macwt_coop_region,
    binary_macwt_coop_secrecy,
    binary_macwt_noncoop_secrecy,
    cm_inner,
    cm_outer,
    cm_secrecy,
    degradedness_residual,
    frontier_sweep,
    gaussian_beta_star,
    gaussian_cm_region,
    gaussian_cm_secrecy,
    gaussian_secrecy_curve,
    macwt_coop_region,
    macwt_coop_search,
    macwt_coop_secrecy,
    macwt_noncoop_inner,
    macwt_noncoop_outer,
    membership,
    noncoop_secrecy,
    r1_max,
    vertices,
)
from .coding_sim import (
    Codebook,
    SimConfig,
    SimulationReport,
    TrialResult,
    block_equivocation,
    build_codebooks,
    decode_map,
    encode,
    run_simulation,
    transmit,
)

__all__ = [n for n in dir() if not n.startswith("_")]
