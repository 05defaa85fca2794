//! Principal eigenvalues of Pucci-type operators with the singular potential
//! `r^-gamma` on the unit ball, computed for radial functions.

// `!(x > 0.0)` is the idiom that also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extrapolate;
pub mod fd;
pub mod harness;
pub mod operator;
pub mod profile;
mod rk;
pub mod rayleigh;
pub mod shoot;
pub mod tridiag;

pub use error::{Error, Result};
pub use operator::{
    dimension_like, explicit_eigenfunction_gamma2, explicit_lambda2, ode_rhs, pucci_minus_radial,
    pucci_plus_radial, BranchCoefficients, Gamma2Eigenfunction, OperatorKind, PotentialSpec,
    PucciParams, RadialMap, RadialOperator, Regime,
};
pub use profile::{Diagnostics, EigenResult, Engine, RadialProfile};
pub use shoot::{
    eigenvalue_from_first_zero, integrate_outward, local_seed, local_seed_for, shoot_eigenvalue,
    SeedConfig, SeedSolution, ShootConfig, Trajectory,
};
pub use rayleigh::{
    hardy_limit, minimizer_shape_check, profile_shape_check, rayleigh_quotient,
    variational_eigenvalue, variational_eigenvalue_with, ShapeReport, VariationalConfig,
    VariationalResult, WeightedMesh,
};
pub use extrapolate::{aitken_limit, log_log_slope};
pub use fd::{
    fd_principal_eigenvalue, fd_principal_eigenvalue_with, linear_radial_solve,
    pucci_dirichlet_solve, pucci_dirichlet_solve_with, stability_sweep, AnnulusGrid,
    DirichletProblem, DirichletSolution, FdConfig, NodeCoefficients, SchedulePoint,
    StabilityTable, SweepRow,
};
pub use harness::{
    barrier_profile, comparison_check, derivative_bounds_check, derivative_growth_check,
    gamma_gt2_probe, maximum_principle_check, simplicity_check, supersolution_residual,
    DegenerationTable, Principle, PrincipleReport,
};
