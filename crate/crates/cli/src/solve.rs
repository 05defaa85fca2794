use serde::Serialize;
use singular_eig_core::{pucci_dirichlet_solve_with, AnnulusGrid, DirichletProblem, Engine};

use crate::config::{pick, ConfigRecord, RunConfig};
use crate::engine::{fd_config, sample_radii, seed};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, nums, write_json, write_key_values, Format, Num};
use crate::SolveArgs;

#[derive(Serialize)]
struct Solution {
    r: Vec<Num>,
    u: Vec<Num>,
}

#[derive(Serialize)]
struct SolveRecord {
    config: ConfigRecord,
    beta: Num,
    rhs: Num,
    boundary: Num,
    outer_iterations: usize,
    linear_solves: usize,
    min_interior_value: Num,
    max_value: Num,
    solution: Solution,
}

pub fn run(args: &SolveArgs) -> CliResult<()> {
    let mut run = args.run.clone();
    match run.engine.as_deref() {
        None | Some("fd") | Some("finite_difference") => run.engine = Some("fd".into()),
        Some(other) => {
            return Err(CliError::Config(format!(
                "solve runs on the fd grid; --engine {other} is not supported"
            )))
        }
    }
    let (cfg, file) = RunConfig::resolve(&run, Format::Json)?;
    debug_assert_eq!(cfg.engine, Engine::FiniteDifference);
    let beta = pick(args.beta, &file, "beta")?.unwrap_or(0.0);
    let rhs = pick(args.rhs, &file, "rhs")?.unwrap_or(-1.0);
    let boundary = pick(args.boundary, &file, "boundary")?.unwrap_or(0.0);
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(CliError::Config(format!("--beta must be finite and >= 0 (got {beta})")));
    }
    if !(rhs.is_finite() && boundary.is_finite() && cfg.mu.is_finite()) {
        return Err(CliError::Config("--mu, --rhs and --boundary must be finite".into()));
    }

    let potential = cfg.grid_potential()?;
    let grid = AnnulusGrid::new(cfg.delta, cfg.nodes, potential).map_err(|e| CliError::Config(e.to_string()))?;
    let problem = DirichletProblem::constant_rhs(rhs, cfg.mu, beta, boundary, cfg.operator()?, potential)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let sol = pucci_dirichlet_solve_with(&problem, &grid, &fd_config(&cfg)?)?;

    let values = &sol.profile.values;
    let interior = &values[..values.len() - 1];
    let min_interior = interior.iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let radii = sample_radii(&cfg);
    let sampled: Vec<f64> = radii.iter().map(|&r| sol.profile.value_at(r)).collect();
    let seed = seed(&cfg);

    match cfg.format {
        Format::Json => write_json(
            cfg.out.as_deref(),
            &SolveRecord {
                config: cfg.record(seed),
                beta: Num(beta),
                rhs: Num(rhs),
                boundary: Num(boundary),
                outer_iterations: sol.outer_iterations,
                linear_solves: sol.linear_solves,
                min_interior_value: Num(min_interior),
                max_value: Num(max_value),
                solution: Solution {
                    r: nums(&radii),
                    u: nums(&sampled),
                },
            },
        ),
        Format::Csv => {
            let mut rows = cfg.key_values(seed);
            rows.push(("beta".into(), fmt_f64(beta)));
            rows.push(("rhs".into(), fmt_f64(rhs)));
            rows.push(("boundary".into(), fmt_f64(boundary)));
            rows.push(("outer_iterations".into(), sol.outer_iterations.to_string()));
            rows.push(("linear_solves".into(), sol.linear_solves.to_string()));
            rows.push(("min_interior_value".into(), fmt_f64(min_interior)));
            rows.push(("max_value".into(), fmt_f64(max_value)));
            for (i, (r, u)) in radii.iter().zip(&sampled).enumerate() {
                rows.push((format!("r.{i}"), fmt_f64(*r)));
                rows.push((format!("u.{i}"), fmt_f64(*u)));
            }
            write_key_values(cfg.out.as_deref(), &rows)
        }
    }
}
