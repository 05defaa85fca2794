use serde::Serialize;

use crate::config::{ConfigRecord, RunArgs, RunConfig};
use crate::engine::{diagnostics_key_values, run_engine, sample_radii, seed, DiagnosticsRecord, Outcome};
use crate::error::CliResult;
use crate::output::{fmt_f64, nums, write_json, write_key_values, Format, Num};

#[derive(Serialize)]
struct Eigenfunction {
    r: Vec<Num>,
    u: Vec<Num>,
}

#[derive(Serialize)]
struct EigRecord<'a> {
    config: ConfigRecord,
    engine: &'static str,
    eigenvalue: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_var: Option<Num>,
    first_zero: Option<Num>,
    log_first_zero: Option<Num>,
    diagnostics: DiagnosticsRecord<'a>,
    eigenfunction: Eigenfunction,
}

fn sampled(cfg: &RunConfig, out: &Outcome) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let radii = sample_radii(cfg);
    let profile = out.profile.normalized_sup()?;
    let values = radii.iter().map(|&r| profile.value_at(r)).collect();
    Ok((radii, values))
}

pub fn run(args: &RunArgs) -> CliResult<()> {
    let (cfg, _) = RunConfig::resolve(args, Format::Json)?;
    let out = run_engine(&cfg)?;
    let (radii, values) = sampled(&cfg, &out)?;
    let seed = seed(&cfg);
    match cfg.format {
        Format::Json => {
            let record = EigRecord {
                config: cfg.record(seed),
                engine: cfg.engine.tag(),
                eigenvalue: Num(out.eigenvalue),
                lambda_var: out.lambda_var.map(Num),
                first_zero: out.first_zero.map(Num),
                log_first_zero: out.log_first_zero.map(Num),
                diagnostics: DiagnosticsRecord(&out.diagnostics),
                eigenfunction: Eigenfunction {
                    r: nums(&radii),
                    u: nums(&values),
                },
            };
            write_json(cfg.out.as_deref(), &record)
        }
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
            let mut rows = cfg.key_values(seed);
            rows.push(("engine".into(), cfg.engine.tag().into()));
            rows.push(("eigenvalue".into(), fmt_f64(out.eigenvalue)));
            if let Some(v) = out.lambda_var {
                rows.push(("lambda_var".into(), fmt_f64(v)));
            }
            rows.push(("first_zero".into(), opt(out.first_zero)));
            rows.push(("log_first_zero".into(), opt(out.log_first_zero)));
            rows.extend(diagnostics_key_values(&out.diagnostics));
            for (i, (r, u)) in radii.iter().zip(&values).enumerate() {
                rows.push((format!("r.{i}"), fmt_f64(*r)));
                rows.push((format!("u.{i}"), fmt_f64(*u)));
            }
            write_key_values(cfg.out.as_deref(), &rows)
        }
    }
}
