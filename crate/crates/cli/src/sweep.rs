use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use singular_eig_core::{aitken_limit, explicit_lambda2, Engine, OperatorKind};
use rayon::prelude::*;

use crate::config::{pick, ConfigFile, ConfigRecord, RunArgs, RunConfig};
use crate::engine::{run_engine, seed};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, write_json, write_table, Format, Num};
use crate::SweepArgs;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Vary {
    Gamma,
    Delta,
    Eps,
}

impl Vary {
    fn parse(s: &str) -> CliResult<Self> {
        match s {
            "gamma" => Ok(Vary::Gamma),
            "delta" => Ok(Vary::Delta),
            "eps" => Ok(Vary::Eps),
            _ => Err(CliError::Config(format!("--vary must be gamma, delta or eps (got '{s}')"))),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Vary::Gamma => "gamma",
            Vary::Delta => "delta",
            Vary::Eps => "eps",
        }
    }
}

fn short(engine: Engine) -> &'static str {
    match engine {
        Engine::Shoot => "shoot",
        Engine::Variational => "var",
        Engine::FiniteDifference => "fd",
    }
}

/// Bare-word name of an error, safe in an unquoted CSV field.
fn status_word(e: &CliError) -> String {
    let name = match e {
        CliError::Solver(inner) => format!("{inner:?}"),
        other => format!("{other:?}"),
    };
    let head: String = name.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in head.chars().enumerate() {
        if c.is_ascii_uppercase() && i > 0 {
            out.push('_');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Int(usize),
    Word(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Word(w) => w.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) => Num(*x).serialize(s),
            Cell::Int(n) => s.serialize_u64(*n as u64),
            Cell::Word(w) => s.serialize_str(w),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Empty => s.serialize_none(),
        }
    }
}

struct Row<'a> {
    header: &'a [String],
    cells: &'a [Cell],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.cells.len()))?;
        for (k, v) in self.header.iter().zip(self.cells) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    config: ConfigRecord,
    vary: &'static str,
    engines: Vec<&'static str>,
    rows: Vec<Row<'a>>,
}

struct Schedule {
    vary: Vary,
    values: Vec<f64>,
    engines: Vec<Engine>,
}

fn schedule(args: &SweepArgs, file: &ConfigFile) -> CliResult<Schedule> {
    let vary = match pick(args.vary.clone(), file, "vary")? {
        Some(s) => Vary::parse(&s)?,
        None => return Err(CliError::Config("sweep needs --vary gamma|delta|eps".into())),
    };
    let values = match &args.values {
        Some(v) => v.clone(),
        None => match file.get_raw("values") {
            Some(list) => list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Config(format!("config key 'values': cannot parse '{t}'")))
                })
                .collect::<CliResult<Vec<_>>>()?,
            None => vec![],
        },
    };
    if values.is_empty() {
        return Err(CliError::Config("sweep needs a nonempty --values schedule".into()));
    }
    let names: Vec<String> = match &args.engines {
        Some(v) => v.clone(),
        None => match file.get_raw("engines") {
            Some(list) => list.split(',').map(|t| t.trim().to_string()).collect(),
            None => vec![pick(args.run.engine.clone(), file, "engine")?.unwrap_or_else(|| "shoot".into())],
        },
    };
    let mut engines = Vec::new();
    for n in &names {
        let e = n
            .parse::<Engine>()
            .map_err(|_| CliError::Config(format!("unknown engine '{n}' (expected shoot, var or fd)")))?;
        if !engines.contains(&e) {
            engines.push(e);
        }
    }
    Ok(Schedule { vary, values, engines })
}

/// Outcome of one engine at one schedule point.
struct Cellset {
    eigenvalue: Result<f64, CliError>,
    nodes: Option<usize>,
    tol: Option<f64>,
}

fn point_args(args: &SweepArgs, vary: Vary, value: f64, engine: Engine) -> RunArgs {
    let mut run = args.run.clone();
    run.engine = Some(short(engine).to_string());
    match vary {
        Vary::Gamma => run.gamma = Some(value),
        Vary::Delta => run.delta = Some(value),
        Vary::Eps => run.eps = Some(value),
    }
    run
}

fn run_point(args: &SweepArgs, vary: Vary, value: f64, engine: Engine) -> Cellset {
    match RunConfig::resolve(&point_args(args, vary, value, engine), Format::Csv) {
        Err(e) => Cellset {
            eigenvalue: Err(e),
            nodes: None,
            tol: None,
        },
        Ok((cfg, _)) => Cellset {
            eigenvalue: run_engine(&cfg).map(|o| o.eigenvalue),
            nodes: Some(cfg.nodes),
            tol: Some(cfg.tol),
        },
    }
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let file = match &args.run.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let plan = schedule(args, &file)?;
    // configuration errors outside the schedule abort the whole sweep
    let (base, _) = RunConfig::resolve(
        &point_args(args, plan.vary, plan.values[0], plan.engines[0]),
        Format::Csv,
    )?;
    let lambda2 = match base.operator {
        OperatorKind::PucciPlus | OperatorKind::PucciMinus if plan.vary == Vary::Gamma => {
            Some(explicit_lambda2(&base.params()?, base.operator)?)
        }
        _ => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(base.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} workers: {e}", base.jobs)))?;
    let jobs: Vec<(usize, Engine)> = (0..plan.values.len())
        .flat_map(|i| plan.engines.iter().map(move |&e| (i, e)))
        .collect();
    let results: Vec<Cellset> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, e)| run_point(args, plan.vary, plan.values[i], e))
            .collect()
    });

    let mut header: Vec<String> = ["row", "operator", "lam", "Lam", "dim", "gamma", "eps", "delta"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for e in &plan.engines {
        let e = short(*e);
        for col in ["nodes", "tol", "eigenvalue", "status", "decreasing", "aitken"] {
            header.push(format!("{e}_{col}"));
        }
    }
    if lambda2.is_some() {
        header.push("explicit_lambda2".into());
        for e in &plan.engines {
            header.push(format!("{}_over_lambda2", short(*e)));
        }
    }

    let n_eng = plan.engines.len();
    let mut failed = 0;
    let mut history: Vec<Vec<f64>> = vec![vec![]; n_eng];
    let mut decreasing = vec![true; n_eng];
    let mut complete = vec![true; n_eng];
    let mut table: Vec<Vec<Cell>> = Vec::new();
    for (i, &value) in plan.values.iter().enumerate() {
        let (mut gamma, mut eps, mut delta) = (base.gamma, base.eps, base.delta);
        match plan.vary {
            Vary::Gamma => gamma = value,
            Vary::Delta => delta = value,
            Vary::Eps => eps = value,
        }
        let mut row = vec![
            Cell::Int(i),
            Cell::Word(base.operator.tag()),
            Cell::Num(base.lam),
            Cell::Num(base.lam_max),
            Cell::Int(base.dim),
            Cell::Num(gamma),
            Cell::Num(eps),
            Cell::Num(delta),
        ];
        let mut row_failed = false;
        let mut ratios = Vec::new();
        for (k, engine) in plan.engines.iter().enumerate() {
            let cell = &results[i * n_eng + k];
            row.push(cell.nodes.map(Cell::Int).unwrap_or(Cell::Empty));
            row.push(cell.tol.map(Cell::Num).unwrap_or(Cell::Empty));
            match &cell.eigenvalue {
                Ok(v) => {
                    if let Some(&prev) = history[k].last() {
                        decreasing[k] &= *v < prev;
                    }
                    history[k].push(*v);
                    row.push(Cell::Num(*v));
                    row.push(Cell::Word("ok".into()));
                    ratios.push(lambda2.map(|l| Cell::Num(v / l)).unwrap_or(Cell::Empty));
                }
                Err(e) => {
                    eprintln!("row {i} ({} = {value}, {}): {e}", plan.vary.tag(), short(*engine));
                    row_failed = true;
                    complete[k] = false;
                    decreasing[k] = false;
                    row.push(Cell::Num(f64::NAN));
                    row.push(Cell::Word(status_word(e)));
                    ratios.push(Cell::Empty);
                }
            }
            row.push(Cell::Bool(complete[k] && decreasing[k]));
            let h = &history[k];
            let aitken = if complete[k] && h.len() >= 3 {
                aitken_limit([h[h.len() - 3], h[h.len() - 2], h[h.len() - 1]])
            } else {
                None
            };
            row.push(aitken.map(Cell::Num).unwrap_or(Cell::Empty));
        }
        if let Some(l) = lambda2 {
            row.push(Cell::Num(l));
            row.extend(ratios);
        }
        failed += usize::from(row_failed);
        table.push(row);
    }

    match base.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(Cell::csv).collect()).collect();
            write_table(base.out.as_deref(), &header, &rows)?;
        }
        Format::Json => {
            let record = SweepRecord {
                config: base.record(seed(&base)),
                vary: plan.vary.tag(),
                engines: plan.engines.iter().map(|e| short(*e)).collect(),
                rows: table.iter().map(|cells| Row { header: &header, cells }).collect(),
            };
            write_json(base.out.as_deref(), &record)?;
        }
    }
    if failed > 0 {
        return Err(CliError::SweepRows {
            failed,
            total: plan.values.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_words_are_bare() {
        let e = CliError::Solver(singular_eig_core::Error::PolicyCycle(100));
        assert_eq!(status_word(&e), "policy_cycle");
        assert_eq!(status_word(&CliError::Config("x, y".into())), "config");
    }
}
