//! Executable checks of qualitative properties (comparison, maximum
//! principle, derivative bounds, simplicity) over raw radial profiles.
//!
//! Residuals are always recomputed from the profile: analytic second
//! derivatives when present, otherwise the three-point stencils of the
//! finite-difference engine.

use std::fmt;

use crate::error::{Error, Result};
use crate::extrapolate::log_log_slope;
use crate::fd::{fd_principal_eigenvalue_with, grid_derivatives, AnnulusGrid, FdConfig};
use crate::operator::{pucci_plus_radial, PotentialSpec, PucciParams, RadialMap, RadialOperator};
use crate::profile::RadialProfile;

/// Relative tolerance of the sub/supersolution residual checks.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Grid cells next to each boundary excluded from residual checks.
pub const BOUNDARY_CELLS: usize = 2;
/// Relative tolerance of the derivative bracket.
pub const DERIVATIVE_TOL: f64 = 0.05;
/// Default cutoff of the neighbourhood of the origin for derivative bounds.
pub const DERIVATIVE_WINDOW: f64 = 0.1;
/// Scalar-multiple tolerance of the simplicity check.
pub const SIMPLICITY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Principle {
    Comparison,
    Maximum,
    DerivativeBounds,
    SupersolutionResidual,
    Simplicity,
}

impl Principle {
    pub fn tag(&self) -> &'static str {
        match self {
            Principle::Comparison => "comparison",
            Principle::Maximum => "maximum",
            Principle::DerivativeBounds => "derivative_bounds",
            Principle::SupersolutionResidual => "supersolution_residual",
            Principle::Simplicity => "simplicity",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrincipleReport {
    pub principle: Principle,
    pub passed: bool,
    pub worst_violation: f64,
    pub tolerance: f64,
    pub location: Option<f64>,
}

impl PrincipleReport {
    fn from_worst(principle: Principle, worst: f64, location: Option<f64>, tolerance: f64) -> Self {
        Self {
            principle,
            passed: worst <= tolerance,
            worst_violation: worst,
            tolerance,
            location,
        }
    }
}

impl fmt::Display for PrincipleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} worst={:.3e} tol={:.1e}",
            self.principle,
            if self.passed { "PASS" } else { "FAIL" },
            self.worst_violation,
            self.tolerance
        )?;
        if let Some(r) = self.location {
            write!(f, " at r={r:.6e}")?;
        }
        Ok(())
    }
}

/// `(u'', u'/r, rounding allowance)` at every node of a profile.
fn pointwise_derivatives(profile: &RadialProfile) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let r = &profile.radii;
    let n = r.len();
    if let Some(second) = &profile.second_derivs {
        let p = (0..n)
            .map(|i| {
                if r[i] > 0.0 {
                    profile.derivs[i] / r[i]
                } else {
                    second[i]
                }
            })
            .collect();
        return (second.clone(), p, vec![0.0; n]);
    }
    let (m, p) = grid_derivatives(r, &profile.values);
    // a stencil applied to stored values cannot resolve less than the
    // rounding error of those values
    let noise = (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                return 0.0;
            }
            let hm = r[i] - r[i - 1];
            let hp = r[i + 1] - r[i];
            let u = profile.values[i - 1..=i + 1]
                .iter()
                .fold(0.0f64, |a, v| a.max(v.abs()));
            let scale = 4.0 / (hm * hp) + 2.0 / (hm.min(hp) * r[i].max(f64::MIN_POSITIVE));
            8.0 * f64::EPSILON * u * scale
        })
        .collect();
    (m, p, noise)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    /// `F(D^2 u) - beta w u >= f w`
    Sub,
    /// `F(D^2 u) - beta w u <= f w`
    Super,
}

/// Verify a one-sided residual inequality at interior nodes.
fn verify_residual(
    profile: &RadialProfile,
    op: &RadialOperator,
    potential: &PotentialSpec,
    beta: f64,
    f: &dyn Fn(f64) -> f64,
    sense: Sense,
) -> Result<()> {
    let n = profile.len();
    let (m, p, noise) = pointwise_derivatives(profile);
    let (mut worst, mut at) = (0.0f64, f64::NAN);
    for i in BOUNDARY_CELLS..n.saturating_sub(BOUNDARY_CELLS) {
        let r = profile.radii[i];
        if r <= 0.0 {
            continue;
        }
        let w = potential.weight(r);
        let lhs = op.evaluate(m[i], p[i]) - beta * w * profile.values[i];
        let rhs = f(r) * w;
        let gap = match sense {
            Sense::Sub => rhs - lhs,
            Sense::Super => lhs - rhs,
        };
        let local = rhs.abs() + (beta * w * profile.values[i]).abs();
        let allowed = RESIDUAL_TOL * local + noise[i] * op.params.lambda_max * profile.params.dim as f64;
        if gap > allowed {
            let excess = (gap - allowed) / local.max(f64::MIN_POSITIVE);
            if excess > worst || at.is_nan() {
                worst = excess;
                at = r;
            }
        }
    }
    if at.is_nan() {
        Ok(())
    } else {
        Err(Error::PreconditionResidualFailure { worst, radius: at })
    }
}

fn same_grid(u: &RadialProfile, v: &RadialProfile) -> Result<()> {
    if u.radii != v.radii {
        return Err(Error::InvalidInput("profiles must share a grid".into()));
    }
    Ok(())
}

/// Comparison between a subsolution `u` (data `f`) and a supersolution `v`
/// (data `g`) of `F(D^2 .) - beta w . = data * w`: with `f >= g` and
/// `u(1) <= v(1)`, asserts `u <= v` at every node.
#[allow(clippy::too_many_arguments)]
pub fn comparison_check(
    u: &RadialProfile,
    v: &RadialProfile,
    f: &dyn Fn(f64) -> f64,
    g: &dyn Fn(f64) -> f64,
    beta: f64,
    op: &RadialOperator,
    potential: &PotentialSpec,
) -> Result<PrincipleReport> {
    same_grid(u, v)?;
    if !(beta >= 0.0) {
        return Err(Error::InvalidInput(format!("beta must be nonnegative (got {beta})")));
    }
    let n = u.len();
    let scale = u.sup_norm().max(v.sup_norm()).max(f64::MIN_POSITIVE);
    let tol = RESIDUAL_TOL * scale;
    for &r in &u.radii {
        if f(r) < g(r) {
            return Err(Error::PreconditionResidualFailure {
                worst: g(r) - f(r),
                radius: r,
            });
        }
    }
    if u.values[n - 1] > v.values[n - 1] + tol {
        return Err(Error::PreconditionResidualFailure {
            worst: u.values[n - 1] - v.values[n - 1],
            radius: u.radii[n - 1],
        });
    }
    verify_residual(u, op, potential, beta, f, Sense::Sub)?;
    verify_residual(v, op, potential, beta, g, Sense::Super)?;
    let (mut worst, mut at) = (0.0f64, None);
    for i in 0..n {
        let d = u.values[i] - v.values[i];
        if d > worst {
            worst = d;
            at = Some(u.radii[i]);
        }
    }
    Ok(PrincipleReport::from_worst(Principle::Comparison, worst, at, tol))
}

/// Log-spaced radii in `[1e-3, 1]`.
fn probe_radii(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| 10f64.powf(-3.0 + 3.0 * i as f64 / (count - 1) as f64))
        .collect()
}

/// Constant `C = tau Lambda (N+ - 1 - |tau - 1|)` of the barrier `1 - r^tau`,
/// after checking `M+(D^2(1 - r^tau)) <= -C r^-gamma` at 100 radii.
pub fn supersolution_residual(tau: f64, params: &PucciParams, gamma: f64) -> Result<f64> {
    let upper = 2.0 - gamma;
    if !(tau > 0.0 && tau <= upper) {
        return Err(Error::BadTau { tau, upper });
    }
    let c = tau * params.lambda_max * (params.n_tilde_plus - 1.0 - (tau - 1.0).abs());
    for r in probe_radii(100) {
        let second = -tau * (tau - 1.0) * r.powf(tau - 2.0);
        let slope = -tau * r.powf(tau - 2.0);
        let lhs = pucci_plus_radial(second, slope, params);
        let bound = -c * r.powf(-gamma);
        if lhs > bound + 1e-12 * bound.abs().max(lhs.abs()) {
            return Err(Error::PreconditionResidualFailure {
                worst: lhs - bound,
                radius: r,
            });
        }
    }
    Ok(c)
}

/// The barrier `1 - r^tau` on the given radii, with exact derivatives.
pub fn barrier_profile(radii: Vec<f64>, tau: f64, gamma: f64, params: PucciParams) -> Result<RadialProfile> {
    RadialProfile::from_fn(radii, gamma, params, |r| {
        if r == 0.0 {
            return (1.0, 0.0, if tau == 2.0 { -2.0 } else { 0.0 });
        }
        (
            1.0 - r.powf(tau),
            -tau * r.powf(tau - 1.0),
            -tau * (tau - 1.0) * r.powf(tau - 2.0),
        )
    })
}

/// Maximum principle below the principal eigenvalue: a subsolution of
/// `F(D^2 u) + mu w u >= 0` with `u(1) <= 0` must be nonpositive.
///
/// `mu` below the principal eigenvalue is the caller's responsibility; at or
/// above it the check is expected to fail (the eigenfunction is a positive
/// subsolution).
pub fn maximum_principle_check(
    mu: f64,
    op: &RadialOperator,
    potential: &PotentialSpec,
    trial: &RadialProfile,
) -> Result<PrincipleReport> {
    let n = trial.len();
    let tol = RESIDUAL_TOL * trial.sup_norm();
    if trial.values[n - 1] > tol {
        return Err(Error::PreconditionResidualFailure {
            worst: trial.values[n - 1],
            radius: trial.radii[n - 1],
        });
    }
    verify_residual(trial, op, potential, -mu, &|_| 0.0, Sense::Sub)?;
    let (mut worst, mut at) = (0.0f64, None);
    for (r, v) in trial.radii.iter().zip(&trial.values) {
        if *v > worst {
            worst = *v;
            at = Some(*r);
        }
    }
    Ok(PrincipleReport::from_worst(Principle::Maximum, worst, at, tol))
}

/// Two-sided bound on `u'` near the origin for `M+(D^2 u) = f r^-gamma` with
/// `0 < f_min <= f <= f_max`:
/// `f_min r^(1-gamma) / (Lambda (N- - gamma)) <= u' <= f_max r^(1-gamma) / (lambda (N - gamma))`.
///
/// Negative bounds select the mirrored statement for `M-` with
/// `f_min <= f <= f_max < 0`. Nodes in `window = (r_lo, r_hi)` are checked.
pub fn derivative_bounds_check(
    profile: &RadialProfile,
    params: &PucciParams,
    gamma: f64,
    f_bounds: (f64, f64),
    window: (f64, f64),
) -> Result<PrincipleReport> {
    let (f_min, f_max) = f_bounds;
    if !(f_min <= f_max) || f_min < 0.0 && f_max > 0.0 || f_min == 0.0 && f_max == 0.0 {
        return Err(Error::InvalidInput(
            "f bounds must be ordered and of one sign".into(),
        ));
    }
    let n = params.dim as f64;
    let wide = params.lambda_max * (params.n_tilde_minus - gamma);
    let narrow = params.lambda_min * (n - gamma);
    let (lo_c, hi_c) = if f_min >= 0.0 {
        (f_min / wide, f_max / narrow)
    } else {
        (f_min / narrow, f_max / wide)
    };
    let (mut worst, mut at) = (0.0f64, None);
    for (r, d) in profile.radii.iter().zip(&profile.derivs) {
        if !(*r > window.0 && *r < window.1) {
            continue;
        }
        let s = r.powf(1.0 - gamma);
        let (lo, hi) = (lo_c * s, hi_c * s);
        let v = ((lo - d) / lo.abs()).max((d - hi) / hi.abs());
        if v > worst {
            worst = v;
            at = Some(*r);
        }
    }
    Ok(PrincipleReport::from_worst(
        Principle::DerivativeBounds,
        worst,
        at,
        DERIVATIVE_TOL,
    ))
}

/// Growth bound `|u'| <= sup|f| r^(1-gamma) / D` near the origin for any
/// operator of the class, where `D = min (a (1 - gamma) + b)` over
/// `a in [lambda, Lambda]` and `b in [lambda (N-1), Lambda (N-1)]`.
pub fn derivative_growth_check(
    profile: &RadialProfile,
    params: &PucciParams,
    gamma: f64,
    f_sup: f64,
    window: (f64, f64),
) -> Result<PrincipleReport> {
    if !(f_sup > 0.0) {
        return Err(Error::InvalidInput("sup |f| must be positive".into()));
    }
    let n = params.dim as f64;
    let d = if gamma < 1.0 {
        params.lambda_min * (n - gamma)
    } else {
        params.lambda_max * (params.n_tilde_plus - gamma)
    };
    if !(d > 0.0) {
        return Err(Error::InvalidInput("growth constant is not positive".into()));
    }
    let (mut worst, mut at) = (0.0f64, None);
    let mut seen = false;
    for (r, du) in profile.radii.iter().zip(&profile.derivs) {
        if !(*r > window.0 && *r < window.1) {
            continue;
        }
        seen = true;
        let v = du.abs() * r.powf(gamma - 1.0) * d / f_sup - 1.0;
        if v > worst {
            worst = v;
            at = Some(*r);
        }
    }
    if !seen {
        return Err(Error::InvalidInput("no nodes in the derivative window".into()));
    }
    Ok(PrincipleReport::from_worst(
        Principle::DerivativeBounds,
        worst,
        at,
        DERIVATIVE_TOL,
    ))
}

/// Radii used to compare eigenfunctions from different engines.
pub fn comparison_radii() -> Vec<f64> {
    let mut r: Vec<f64> = (1..=40).map(|i| 10f64.powf(-4.0 + 2.0 * i as f64 / 40.0)).collect();
    r.extend((2..100).map(|i| i as f64 / 100.0));
    r
}

/// All profiles agree up to a positive scalar: after sup normalization on
/// common radii, the sup distance to the first profile stays below `tol`.
pub fn simplicity_check(profiles: &[&RadialProfile], tol: f64) -> Result<PrincipleReport> {
    if profiles.len() < 2 {
        return Err(Error::InvalidInput("need at least two profiles".into()));
    }
    let radii = comparison_radii();
    let sample = |p: &RadialProfile| -> Result<Vec<f64>> {
        let v = p.resample(&radii);
        let s = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if !(s > 0.0) {
            return Err(Error::InvalidInput("profile vanishes on the comparison radii".into()));
        }
        Ok(v.iter().map(|x| x / s).collect())
    };
    let base = sample(profiles[0])?;
    let (mut worst, mut at) = (0.0f64, None);
    for p in &profiles[1..] {
        let other = sample(p)?;
        for ((a, b), r) in base.iter().zip(&other).zip(&radii) {
            let d = (a - b).abs();
            if d > worst {
                worst = d;
                at = Some(*r);
            }
        }
    }
    Ok(PrincipleReport::from_worst(Principle::Simplicity, worst, at, tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationTable {
    pub gamma: f64,
    pub deltas: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub strictly_decreasing: bool,
    /// Fitted exponent `p` in `lambda ~ delta^p`.
    pub decay_exponent: Option<f64>,
}

/// Annulus eigenvalues for `gamma > 2` along a shrinking inner radius.
pub fn gamma_gt2_probe(
    op: &RadialOperator,
    gamma: f64,
    deltas: &[f64],
    n_nodes: usize,
    cfg: &FdConfig,
) -> Result<DegenerationTable> {
    if !(gamma > 2.0) {
        return Err(Error::InvalidInput(format!("gamma must exceed 2 (got {gamma})")));
    }
    if deltas.len() < 2 || deltas.iter().any(|&d| !(d > 0.0 && d < 1.0)) {
        return Err(Error::InvalidInput("need at least two inner radii in (0, 1)".into()));
    }
    let potential = PotentialSpec::singular(gamma)?;
    let eigenvalues = deltas
        .iter()
        .map(|&d| {
            let grid = AnnulusGrid::new(d, n_nodes, potential)?;
            Ok(fd_principal_eigenvalue_with(op, &grid, cfg)?.eigenvalue)
        })
        .collect::<Result<Vec<f64>>>()?;
    let strictly_decreasing = eigenvalues.windows(2).all(|w| w[1] < w[0]);
    Ok(DegenerationTable {
        gamma,
        deltas: deltas.to_vec(),
        decay_exponent: log_log_slope(deltas, &eigenvalues),
        eigenvalues,
        strictly_decreasing,
    })
}
