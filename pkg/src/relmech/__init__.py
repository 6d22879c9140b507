"""Metric-derived relativistic mechanics.

Static diagonal metrics built from scalar potentials, the reparameterization
factor Gamma and Lagrangians in every regime, modified local Lorentz boosts
with time dilation / length contraction / gravitational redshift, equations
of motion and their conserved quantities, an adaptive integrator, the
Bohlin-Arnold oscillator-Kepler duality, and the relativistic Lienard
oscillator with its Chiellini first integral and reconstructed damped metric.
"""

__version__ = "0.1.0"

from .core import (
    Constants,
    ParticleState,
    RelmechError,
    ScalarPotential,
    SingularPointError,
    SpeedLimitError,
    HorizonError,
    StaticMetric,
    TrajectoryRecord,
    check_gradient,
    flat_metric,
    free_potential,
    from_callable,
    hooke_potential,
    kepler_potential,
    make_potential,
)
from .kinematics import (
    LagrangianRegime,
    big_gamma,
    classical_lagrangian,
    gamma,
    momenta_energy,
    relativistic_lagrangian,
    speed_limit,
)
from .lorentz import (
    BoostMatrix,
    SuperluminalFrameError,
    boost_from_g00,
    build_boost,
    length_contraction,
    redshift,
    redshift_ratio,
    redshift_weak_limit,
    time_dilation,
    verify_invariance,
)
from .dynamics import (
    ConservedSet,
    EomForm,
    Flow,
    NotAPotentialError,
    build_flow,
    conserved,
    deformed_el_residual,
    derive_metric_from_eom,
    eom_rhs,
    hamiltonian_rhs,
    propagate,
)
from .integrate import IntegrationReport, IntegratorSpec, StiffnessError, integrate
from .duality import (
    BranchPointError,
    CentralParams,
    DualityInputError,
    DualityReport,
    PlanarTrajectory,
    analytic_oscillator,
    bohlin_map,
    central_system_rhs,
    run_oscillator,
    verify_duality,
)
from .lienard import (
    DampedMetric,
    DegenerateParameterError,
    IntegratingFactorError,
    LienardSystem,
    LienardTrajectory,
    NoRealAlphaError,
    chiellini_alpha,
    damped_metric,
    damped_oscillator,
    first_integral,
    lienard_rhs,
    run_lienard,
)
