//! Dispatch from a resolved configuration to one of the three engines.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use singular_eig_core::{
    fd_principal_eigenvalue_with, shoot_eigenvalue, variational_eigenvalue_with, AnnulusGrid,
    Diagnostics, Engine, FdConfig, OperatorKind, RadialProfile, ShootConfig, VariationalConfig,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::Num;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub eigenvalue: f64,
    pub first_zero: Option<f64>,
    pub log_first_zero: Option<f64>,
    /// Minimum of the weighted quotient, before the ellipticity factor.
    pub lambda_var: Option<f64>,
    pub profile: RadialProfile,
    pub diagnostics: Diagnostics,
}

pub fn fd_config(cfg: &RunConfig) -> CliResult<FdConfig> {
    let base = FdConfig::from_env().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(FdConfig { tol: cfg.tol, ..base })
}

pub fn seed(cfg: &RunConfig) -> u64 {
    match cfg.engine {
        Engine::FiniteDifference => FdConfig::from_env().map(|c| c.seed).unwrap_or(0),
        _ => 0,
    }
}

/// Dimension-like parameter and ellipticity factor tying the weighted
/// quotient to the operator.
fn bridge(cfg: &RunConfig) -> CliResult<(f64, f64)> {
    let p = cfg.params()?;
    match cfg.operator {
        OperatorKind::PucciPlus => Ok((p.n_tilde_plus, p.lambda_max)),
        OperatorKind::PucciMinus => Ok((p.n_tilde_minus, p.lambda_min)),
        OperatorKind::Laplacian => Ok((p.dim as f64, 1.0)),
        OperatorKind::ConvexCombination(_) => Err(CliError::Config(
            "the var engine supports pucci+, pucci- and laplacian only".into(),
        )),
    }
}

pub fn run_engine(cfg: &RunConfig) -> CliResult<Outcome> {
    if cfg.engine != Engine::FiniteDifference && cfg.delta > 0.0 {
        return Err(CliError::Config(format!(
            "--delta applies to the fd engine only (engine {})",
            cfg.engine
        )));
    }
    match cfg.engine {
        Engine::Shoot => {
            let shoot = ShootConfig {
                rtol: cfg.tol,
                atol: cfg.tol * 1e-2,
                ..ShootConfig::default()
            };
            let r = shoot_eigenvalue(&cfg.params()?, cfg.gamma, cfg.operator, &shoot)?;
            Ok(Outcome {
                eigenvalue: r.eigenvalue,
                first_zero: r.first_zero,
                log_first_zero: r.log_first_zero,
                lambda_var: None,
                profile: r.profile,
                diagnostics: r.diagnostics,
            })
        }
        Engine::Variational => {
            let (n_tilde, factor) = bridge(cfg)?;
            let var = VariationalConfig {
                nodes: cfg.nodes,
                tol: cfg.tol,
                ..VariationalConfig::default()
            };
            let r = variational_eigenvalue_with(n_tilde, cfg.gamma, &cfg.params()?, &var)?;
            let mut diagnostics = Diagnostics {
                iterations: r.quotient_history.len(),
                ..Diagnostics::default()
            };
            diagnostics.push("second_eigenvalue", r.second_eigenvalue);
            diagnostics.push("n_tilde", r.n_tilde);
            diagnostics.push("truncation", r.truncation);
            diagnostics.push("tail_fraction", r.tail_fraction);
            diagnostics.push("exploratory", if r.exploratory { 1.0 } else { 0.0 });
            Ok(Outcome {
                eigenvalue: factor * r.lambda_var,
                first_zero: None,
                log_first_zero: None,
                lambda_var: Some(r.lambda_var),
                profile: r.minimizer,
                diagnostics,
            })
        }
        Engine::FiniteDifference => {
            cfg.check_grid()?;
            let grid = AnnulusGrid::new(cfg.delta, cfg.nodes, cfg.grid_potential()?)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let r = fd_principal_eigenvalue_with(&cfg.operator()?, &grid, &fd_config(cfg)?)?;
            Ok(Outcome {
                eigenvalue: r.eigenvalue,
                first_zero: None,
                log_first_zero: None,
                lambda_var: None,
                profile: r.profile,
                diagnostics: r.diagnostics,
            })
        }
    }
}

/// Radii on which the eigenfunction is reported: uniform on `[delta, 1]`.
pub fn sample_radii(cfg: &RunConfig) -> Vec<f64> {
    let k = cfg.samples;
    let a = if cfg.engine == Engine::FiniteDifference { cfg.delta } else { 0.0 };
    (0..k)
        .map(|i| if i + 1 == k { 1.0 } else { a + (1.0 - a) * i as f64 / (k - 1) as f64 })
        .collect()
}

pub struct DiagnosticsRecord<'a>(pub &'a Diagnostics);

impl Serialize for DiagnosticsRecord<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.0;
        let mut m = s.serialize_map(Some(5 + d.extra.len()))?;
        m.serialize_entry("iterations", &d.iterations)?;
        m.serialize_entry("residual", &Num(d.residual))?;
        m.serialize_entry("accepted_steps", &d.accepted_steps)?;
        m.serialize_entry("rejected_steps", &d.rejected_steps)?;
        m.serialize_entry("events", &d.events)?;
        for (k, v) in &d.extra {
            m.serialize_entry(k, &Num(*v))?;
        }
        m.end()
    }
}

pub fn diagnostics_key_values(d: &Diagnostics) -> Vec<(String, String)> {
    let mut out = vec![
        ("diagnostics.iterations".to_string(), d.iterations.to_string()),
        ("diagnostics.residual".to_string(), crate::output::fmt_f64(d.residual)),
        ("diagnostics.accepted_steps".to_string(), d.accepted_steps.to_string()),
        ("diagnostics.rejected_steps".to_string(), d.rejected_steps.to_string()),
        ("diagnostics.events".to_string(), d.events.to_string()),
    ];
    for (k, v) in &d.extra {
        out.push((format!("diagnostics.{k}"), crate::output::fmt_f64(*v)));
    }
    out
}
