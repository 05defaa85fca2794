//! End-to-end self-check: analytic oracles plus the harness principles on
//! fresh engine output.

use std::io::Write;

use singular_eig_core::harness::{DERIVATIVE_WINDOW, SIMPLICITY_TOL};
use singular_eig_core::{
    barrier_profile, comparison_check, derivative_bounds_check, derivative_growth_check,
    fd_principal_eigenvalue_with, gamma_gt2_probe, maximum_principle_check, pucci_dirichlet_solve_with,
    pucci_plus_radial, shoot_eigenvalue, simplicity_check, supersolution_residual, variational_eigenvalue,
    AnnulusGrid, DirichletProblem, EigenResult, FdConfig, Gamma2Eigenfunction, OperatorKind, PotentialSpec,
    PrincipleReport, PucciParams, RadialOperator, RadialProfile, ShootConfig,
};

use crate::error::{CliError, CliResult};
use crate::output::sink;
use crate::VerifyArgs;

/// First positive zero of the Bessel function J_1.
const J1_FIRST_ZERO: f64 = 3.831_705_970_207_512;
const EPS: f64 = 1e-6;
const FD_NODES: usize = 8192;

pub const CHECKS: &[(&str, &str)] = &[
    ("gamma2-residual", "explicit gamma = 2 eigenfunction solves the equation"),
    ("laplacian-oracle", "Laplacian eigenvalues match Bessel zeros"),
    ("supersolution", "barrier 1 - r^tau is a strict supersolution"),
    ("comparison", "eigenfunction lies below a scaled barrier"),
    ("maximum", "maximum principle below the eigenvalue"),
    ("derivative-bounds", "derivative bracket and growth near the origin"),
    ("simplicity", "eigenfunctions of all engines are proportional"),
    ("bridge", "Lambda times the variational value matches shooting"),
    ("degeneration", "annulus eigenvalues for gamma > 2 decrease with delta"),
];

#[derive(Debug, Clone)]
struct Outcome {
    passed: bool,
    worst: f64,
    tol: f64,
    detail: String,
}

impl Outcome {
    fn from_value(worst: f64, tol: f64, detail: String) -> Self {
        Self {
            passed: worst <= tol,
            worst,
            tol,
            detail,
        }
    }

    /// All reports must pass; the worst relative excess is reported.
    fn from_reports(reports: Vec<singular_eig_core::Result<PrincipleReport>>) -> Self {
        let mut out = Self {
            passed: true,
            worst: 0.0,
            tol: 0.0,
            detail: String::new(),
        };
        let mut parts = vec![];
        for r in reports {
            match r {
                Ok(rep) => {
                    out.passed &= rep.passed;
                    if rep.worst_violation / rep.tolerance >= out.worst / out.tol.max(f64::MIN_POSITIVE) {
                        out.worst = rep.worst_violation;
                        out.tol = rep.tolerance;
                    }
                    if !rep.passed {
                        parts.push(rep.to_string());
                    }
                }
                Err(e) => {
                    out.passed = false;
                    out.worst = f64::INFINITY;
                    parts.push(format!("precondition: {e}"));
                }
            }
        }
        out.detail = parts.join("; ");
        out
    }
}

/// Test-mode mutation: `sign = -1` flips the first-order term. The
/// eigenvalue oracles (laplacian-oracle, bridge, degeneration) run unmutated.
#[derive(Debug, Clone, Copy)]
struct Mutation {
    sign: f64,
}

impl Mutation {
    /// Copy with the stored `u'` multiplied by the mutation sign.
    fn profile(&self, p: &RadialProfile) -> RadialProfile {
        let mut q = p.clone();
        q.derivs.iter_mut().for_each(|d| *d *= self.sign);
        q
    }

    fn values(&self, p: &RadialProfile) -> RadialProfile {
        p.scaled(self.sign)
    }
}

fn params(l: f64, big: f64, n: usize) -> CliResult<PucciParams> {
    Ok(PucciParams::new_relaxed(l, big, n)?)
}

fn shoot(p: &PucciParams, gamma: f64, kind: OperatorKind) -> CliResult<EigenResult> {
    Ok(shoot_eigenvalue(p, gamma, kind, &ShootConfig::default())?)
}

fn fd_ball(op: &RadialOperator, gamma: f64) -> CliResult<EigenResult> {
    let grid = AnnulusGrid::ball(FD_NODES, PotentialSpec::new(gamma, EPS)?)?;
    Ok(fd_principal_eigenvalue_with(op, &grid, &fd_config()?)?)
}

fn fd_config() -> CliResult<FdConfig> {
    FdConfig::from_env().map_err(|e| CliError::Config(e.to_string()))
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

fn gamma2_residual(m: Mutation) -> CliResult<Outcome> {
    let mut worst = 0.0f64;
    for (l, big, n) in [(1.0, 1.0, 4), (1.0, 2.0, 5), (0.5, 1.5, 6)] {
        let p = params(l, big, n)?;
        let u = Gamma2Eigenfunction::new(&p, OperatorKind::PucciPlus, 1.0, 0.0)?;
        let k = (p.n_tilde_plus - 2.0) / 2.0;
        for r in log_spaced(1e-3, 1.0 - 1e-3, 100) {
            let (v, d1, d2) = (u.value(r)?, u.first_derivative(r)?, u.second_derivative(r)?);
            let potential = big * k * k * v / (r * r);
            let res = pucci_plus_radial(d2, m.sign * d1 / r, &p) + potential;
            let scale = big * (d2.abs() + (n - 1) as f64 * (d1 / r).abs()) + potential.abs();
            worst = worst.max(res.abs() / scale);
        }
    }
    Ok(Outcome::from_value(worst, 1e-10, "relative residual at 100 radii, 3 parameter sets".into()))
}

fn laplacian_oracle() -> CliResult<Outcome> {
    let p = PucciParams::laplacian(3)?;
    let l0 = shoot(&p, 0.0, OperatorKind::Laplacian)?.eigenvalue;
    let l1 = shoot(&p, 1.0, OperatorKind::Laplacian)?.eigenvalue;
    let pi2 = std::f64::consts::PI.powi(2);
    let e0 = (l0 - pi2).abs() / 1e-6;
    let e1 = (l1 - 0.25 * J1_FIRST_ZERO * J1_FIRST_ZERO).abs() / 1e-5;
    // errors in units of their tolerances
    Ok(Outcome::from_value(
        e0.max(e1),
        1.0,
        format!("gamma=0: {l0:.12}; gamma=1: {l1:.12} (error / tolerance)"),
    ))
}

fn supersolution(m: Mutation) -> CliResult<Outcome> {
    let mut worst = f64::NEG_INFINITY;
    for (l, big, n) in [(1.0, 2.0, 5), (0.5, 1.5, 6)] {
        let p = params(l, big, n)?;
        for gamma in [0.5, 1.5, 1.9] {
            let tau = 2.0 - gamma;
            let c = supersolution_residual(tau, &p, gamma)?;
            for r in log_spaced(1e-3, 1.0, 100) {
                let second = -tau * (tau - 1.0) * r.powf(tau - 2.0);
                let slope = -m.sign * tau * r.powf(tau - 2.0);
                let lhs = pucci_plus_radial(second, slope, &p);
                let bound = -c * r.powf(-gamma);
                worst = worst.max((lhs - bound) / bound.abs());
            }
        }
    }
    Ok(Outcome::from_value(
        worst.max(0.0),
        1e-12,
        "relative excess of M+(1 - r^tau) over -C r^-gamma".into(),
    ))
}

struct Fixture {
    p: PucciParams,
    gamma: f64,
    op: RadialOperator,
    shoot: EigenResult,
}

fn fixture() -> CliResult<Fixture> {
    let p = params(1.0, 2.0, 5)?;
    let gamma = 1.5;
    Ok(Fixture {
        p,
        gamma,
        op: RadialOperator::pucci_plus(p),
        shoot: shoot(&p, gamma, OperatorKind::PucciPlus)?,
    })
}

fn comparison(fx: &Fixture, m: Mutation) -> CliResult<Outcome> {
    let pot = PotentialSpec::singular(fx.gamma)?;
    let phi = fx.shoot.profile.normalized_sup()?;
    let lam = fx.shoot.eigenvalue;
    let tau = 2.0 - fx.gamma;
    let c = supersolution_residual(tau, &fx.p, fx.gamma)?;
    // a flipped u' on the subsolution side errs in the safe direction
    let barrier = m.profile(&barrier_profile(phi.radii.clone(), tau, fx.gamma, fx.p)?.scaled(lam / c));
    let sub_data = |r: f64| -lam * phi.value_at(r);
    let super_data = |_: f64| -lam;
    Ok(Outcome::from_reports(vec![comparison_check(
        &phi,
        &barrier,
        &sub_data,
        &super_data,
        0.0,
        &fx.op,
        &pot,
    )]))
}

fn maximum(fx: &Fixture, m: Mutation) -> CliResult<Outcome> {
    let pot = PotentialSpec::singular(fx.gamma)?;
    let phi = m.profile(&fx.shoot.profile.normalized_sup()?);
    let mu = 0.9 * fx.shoot.eigenvalue;
    Ok(Outcome::from_reports(vec![maximum_principle_check(
        mu,
        &fx.op,
        &pot,
        &phi.scaled(-1.0),
    )]))
}

fn derivative_bounds(fx: &Fixture, m: Mutation) -> CliResult<Outcome> {
    let pot = PotentialSpec::new(fx.gamma, EPS)?;
    let problem = DirichletProblem::constant_rhs(1.0, 0.0, 0.0, 0.0, fx.op, pot)?;
    let grid = AnnulusGrid::ball(FD_NODES, pot)?;
    let u = m.profile(&pucci_dirichlet_solve_with(&problem, &grid, &fd_config()?)?.profile);
    let window = (1e3 * EPS, DERIVATIVE_WINDOW);
    let phi = fx.shoot.profile.normalized_sup()?;
    let lam = fx.shoot.eigenvalue;
    Ok(Outcome::from_reports(vec![
        derivative_bounds_check(&u, &fx.p, fx.gamma, (1.0 - 1e-5, 1.0), window),
        derivative_growth_check(&phi, &fx.p, fx.gamma, lam, (0.0, DERIVATIVE_WINDOW)),
    ]))
}

fn simplicity(fx: &Fixture, m: Mutation) -> CliResult<Outcome> {
    let fd = fd_ball(&fx.op, fx.gamma)?;
    let var = variational_eigenvalue(&fx.p, fx.gamma, 4096)?;
    let fd_profile = m.values(&fd.profile);
    Ok(Outcome::from_reports(vec![simplicity_check(
        &[&fx.shoot.profile, &fd_profile, &var.minimizer],
        SIMPLICITY_TOL,
    )]))
}

fn bridge(fx: &Fixture) -> CliResult<Outcome> {
    let mut worst = 0.0f64;
    for gamma in [1.1, 1.5, 1.9] {
        let s = shoot(&fx.p, gamma, OperatorKind::PucciPlus)?.eigenvalue;
        let v = variational_eigenvalue(&fx.p, gamma, 4096)?.lambda_var;
        worst = worst.max((fx.p.lambda_max * v - s).abs() / s);
    }
    Ok(Outcome::from_value(worst, 1e-3, "relative gap, gamma in {1.1, 1.5, 1.9}".into()))
}

fn degeneration() -> CliResult<Outcome> {
    let p = params(1.0, 2.0, 3)?;
    let mut ok = true;
    let mut parts = vec![];
    for op in [RadialOperator::pucci_plus(p), RadialOperator::pucci_minus(p)] {
        let t = gamma_gt2_probe(&op, 2.5, &[0.1, 0.05, 0.01], FD_NODES, &fd_config()?)?;
        ok &= t.strictly_decreasing;
        parts.push(format!("{}: exponent {:.4}", op.kind, t.decay_exponent.unwrap_or(f64::NAN)));
    }
    Ok(Outcome {
        passed: ok,
        worst: if ok { 0.0 } else { 1.0 },
        tol: 0.0,
        detail: parts.join("; "),
    })
}

fn selected(args: &VerifyArgs) -> CliResult<Vec<&'static str>> {
    if args.only.is_empty() {
        return Ok(CHECKS.iter().map(|(n, _)| *n).collect());
    }
    let mut out = vec![];
    for name in &args.only {
        let (n, _) = CHECKS.iter().find(|(n, _)| n == name).ok_or_else(|| {
            let known: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
            CliError::Config(format!("unknown check '{name}' (known: {})", known.join(", ")))
        })?;
        if !out.contains(n) {
            out.push(*n);
        }
    }
    Ok(out)
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let mut out = sink(args.out.as_deref())?;
    if args.list {
        for (n, d) in CHECKS {
            writeln!(out, "{n:<18} {d}")?;
        }
        out.flush()?;
        return Ok(());
    }
    let names = selected(args)?;
    let m = Mutation {
        sign: if args.inject_sign_bug { -1.0 } else { 1.0 },
    };
    let needs_fixture = names
        .iter()
        .any(|n| matches!(*n, "comparison" | "maximum" | "derivative-bounds" | "simplicity" | "bridge"));
    let fx = if needs_fixture { Some(fixture()?) } else { None };
    let fx = || fx.as_ref().expect("fixture built for this check");

    writeln!(out, "{:<18} {:<6} {:>10} {:>10}  detail", "check", "status", "worst", "tol")?;
    let mut failed = 0;
    for name in &names {
        let result = match *name {
            "gamma2-residual" => gamma2_residual(m),
            "laplacian-oracle" => laplacian_oracle(),
            "supersolution" => supersolution(m),
            "comparison" => comparison(fx(), m),
            "maximum" => maximum(fx(), m),
            "derivative-bounds" => derivative_bounds(fx(), m),
            "simplicity" => simplicity(fx(), m),
            "bridge" => bridge(fx()),
            "degeneration" => degeneration(),
            other => unreachable!("unlisted check {other}"),
        };
        let o = match result {
            Ok(o) => o,
            Err(CliError::Config(msg)) => return Err(CliError::Config(msg)),
            Err(e) => Outcome {
                passed: false,
                worst: f64::INFINITY,
                tol: 0.0,
                detail: format!("error: {e}"),
            },
        };
        failed += usize::from(!o.passed);
        writeln!(
            out,
            "{:<18} {:<6} {:>10.3e} {:>10.1e}  {}",
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.worst,
            o.tol,
            o.detail
        )?;
    }
    writeln!(out, "{} of {} checks passed", names.len() - failed, names.len())?;
    out.flush()?;
    if failed > 0 {
        return Err(CliError::Verify {
            failed,
            total: names.len(),
        });
    }
    Ok(())
}
