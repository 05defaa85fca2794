//! Finite differences on regularized radial domains.
//!
//! The grid is either the ball with a smoothed potential (node 0 at the
//! origin, symmetric there) or an annulus `[delta, 1]` with the bare
//! potential. Every Pucci regime yields a tridiagonal M-matrix; nonlinear
//! equations are resolved by policy iteration over the regimes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extrapolate::aitken_limit;
use crate::operator::{RadialMap, RadialOperator, Regime};
use crate::profile::{Diagnostics, EigenResult, Engine, RadialProfile};
use crate::tridiag::Tridiagonal;
use crate::PotentialSpec;

/// Environment variable holding the seed of the random starting vector.
pub const SEED_ENV: &str = "SINGULAR_EIG_SEED";

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusGrid {
    pub delta: f64,
    pub n_nodes: usize,
    pub nodes: Vec<f64>,
    pub potential: PotentialSpec,
}

impl AnnulusGrid {
    /// `delta = 0` gives the ball and requires a smoothed potential.
    pub fn new(delta: f64, n_nodes: usize, potential: PotentialSpec) -> Result<Self> {
        if n_nodes < 4 {
            return Err(Error::InvalidInput("a grid needs at least 4 nodes".into()));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidInput(format!(
                "inner radius must lie in [0, 1) (got {delta})"
            )));
        }
        if delta == 0.0 && potential.smoothing == 0.0 && potential.gamma > 0.0 {
            return Err(Error::InvalidInput(
                "a grid reaching the origin needs a smoothed potential (eps > 0) or delta > 0"
                    .into(),
            ));
        }
        let geometric = |lo: f64, count: usize| -> Vec<f64> {
            let l = lo.ln();
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        1.0
                    } else if i == 0 {
                        lo
                    } else {
                        (l * (1.0 - i as f64 / (count - 1) as f64)).exp()
                    }
                })
                .collect()
        };
        let nodes = if delta == 0.0 {
            let first = if potential.smoothing > 0.0 {
                1e-6f64.min(0.05 * potential.smoothing)
            } else {
                1e-6
            };
            let mut v = vec![0.0];
            v.extend(geometric(first, n_nodes - 1));
            v
        } else {
            geometric(delta, n_nodes)
        };
        Ok(Self {
            delta,
            n_nodes,
            nodes,
            potential,
        })
    }

    pub fn ball(n_nodes: usize, potential: PotentialSpec) -> Result<Self> {
        Self::new(0.0, n_nodes, potential)
    }

    pub fn includes_origin(&self) -> bool {
        self.delta == 0.0
    }

    pub fn weights(&self) -> Vec<f64> {
        self.nodes.iter().map(|&r| self.potential.weight(r)).collect()
    }

    /// Node indices carrying unknowns.
    fn unknowns(&self) -> std::ops::Range<usize> {
        if self.includes_origin() {
            0..self.n_nodes - 1
        } else {
            1..self.n_nodes - 1
        }
    }
}

/// Difference weights for `u''` and `u'` at node `i`, in the order
/// `(left, centre, right)`.
fn stencil(r: &[f64], i: usize) -> ([f64; 3], [f64; 3]) {
    let hm = r[i] - r[i - 1];
    let hp = r[i + 1] - r[i];
    let s = hm + hp;
    let second = [2.0 / (hm * s), -2.0 / (hm * hp), 2.0 / (hp * s)];
    let first = [-hp / (hm * s), (hp - hm) / (hm * hp), hm / (hp * s)];
    (second, first)
}

/// `(u'', u'/r)` at every node from nodal values. At the origin both equal
/// `2 (u_1 - u_0) / h^2`; at the outer node one-sided values are used.
pub fn grid_derivatives(r: &[f64], u: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = r.len();
    let mut m = vec![0.0; n];
    let mut p = vec![0.0; n];
    for i in 0..n {
        if i == 0 {
            if r[0] == 0.0 {
                let v = 2.0 * (u[1] - u[0]) / (r[1] * r[1]);
                m[0] = v;
                p[0] = v;
            } else {
                let (s, _) = stencil(r, 1);
                m[0] = s[0] * u[0] + s[1] * u[1] + s[2] * u[2];
                let h = r[1] - r[0];
                p[0] = ((u[1] - u[0]) / h - 0.5 * h * m[0]) / r[0];
            }
        } else if i == n - 1 {
            let (s, _) = stencil(r, n - 2);
            m[i] = s[0] * u[n - 3] + s[1] * u[n - 2] + s[2] * u[n - 1];
            let h = r[n - 1] - r[n - 2];
            p[i] = ((u[n - 1] - u[n - 2]) / h + 0.5 * h * m[i]) / r[i];
        } else {
            let (s, f) = stencil(r, i);
            m[i] = s[0] * u[i - 1] + s[1] * u[i] + s[2] * u[i + 1];
            p[i] = (f[0] * u[i - 1] + f[1] * u[i] + f[2] * u[i + 1]) / r[i];
        }
    }
    (m, p)
}

/// Nodal values plus difference-quotient derivatives as a profile.
pub fn profile_from_nodes(
    grid: &AnnulusGrid,
    values: Vec<f64>,
    gamma: f64,
    params: crate::PucciParams,
) -> Result<RadialProfile> {
    let (_, p) = grid_derivatives(&grid.nodes, &values);
    let derivs = p.iter().zip(&grid.nodes).map(|(pi, r)| pi * r).collect();
    RadialProfile::new(grid.nodes.clone(), values, derivs, gamma, params)
}

/// Per-node linear operator `a u'' + b u'/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCoefficients {
    pub second: f64,
    pub first: f64,
}

/// Left boundary treatment of a linear solve.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Left {
    Origin,
    Value(f64),
}

/// Assemble rows `a_i u''_i + b_i u'_i/r_i + c_i u_i = g_i` on the unknowns.
fn assemble(
    r: &[f64],
    coeff: &dyn Fn(usize) -> NodeCoefficients,
    diag_extra: &[f64],
    rhs: &[f64],
    left: Left,
    right: f64,
) -> (Tridiagonal, Vec<f64>, usize) {
    let n = r.len();
    let first = if matches!(left, Left::Origin) { 0 } else { 1 };
    let count = n - 1 - first;
    let mut t = Tridiagonal::zeros(count);
    let mut b = vec![0.0; count];
    #[allow(clippy::needless_range_loop)]
    for row in 0..count {
        let i = row + first;
        let c = coeff(i);
        let (lo, mid, hi) = if i == 0 {
            let k = 2.0 * (c.second + c.first) / (r[1] * r[1]);
            (0.0, -k, k)
        } else {
            let (s, f) = stencil(r, i);
            (
                c.second * s[0] + c.first * f[0] / r[i],
                c.second * s[1] + c.first * f[1] / r[i],
                c.second * s[2] + c.first * f[2] / r[i],
            )
        };
        t.diag[row] = mid + diag_extra[i];
        b[row] = rhs[i];
        if i > first {
            t.lower[row - 1] = lo;
        } else if let Left::Value(v) = left {
            b[row] -= lo * v;
        }
        if i + 1 < n - 1 {
            t.upper[row] = hi;
        } else {
            b[row] -= hi * right;
        }
    }
    (t, b, first)
}

fn expand(sol: &[f64], first: usize, n: usize, left: Left, right: f64) -> Vec<f64> {
    let mut u = vec![0.0; n];
    if let Left::Value(v) = left {
        u[0] = v;
    }
    u[first..first + sol.len()].copy_from_slice(sol);
    u[n - 1] = right;
    u
}

/// Solve `a(r) u'' + b(r) u'/r = rhs` with `u(1) = right` and either the
/// symmetry condition at the origin (ball grids) or `u(delta) = left`.
pub fn linear_radial_solve(
    grid: &AnnulusGrid,
    coefficients: &[NodeCoefficients],
    rhs: &[f64],
    left: f64,
    right: f64,
) -> Result<Vec<f64>> {
    let n = grid.n_nodes;
    if coefficients.len() != n || rhs.len() != n {
        return Err(Error::InvalidInput("coefficient and rhs arrays must match the grid".into()));
    }
    if coefficients.iter().any(|c| !(c.second > 0.0 && c.first > 0.0)) {
        return Err(Error::InvalidInput("coefficients must be positive".into()));
    }
    let l = if grid.includes_origin() {
        Left::Origin
    } else {
        Left::Value(left)
    };
    let zeros = vec![0.0; n];
    let (t, b, first) = assemble(&grid.nodes, &|i| coefficients[i], &zeros, rhs, l, right);
    let sol = t.solve(&b)?;
    Ok(expand(&sol, first, n, l, right))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub max_iters: usize,
    pub tol: f64,
    pub max_policy_iters: usize,
    /// Seed for the random positive starting vector.
    pub seed: u64,
    /// Outer-iteration growth that signals divergence in the Dirichlet solve.
    pub divergence_threshold: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self {
            max_iters: 500,
            tol: 1e-10,
            max_policy_iters: 100,
            seed: 0,
            divergence_threshold: 1e6,
        }
    }
}

impl FdConfig {
    /// Default configuration with the seed read from `SINGULAR_EIG_SEED`.
    pub fn from_env() -> Result<Self> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(s) => s.trim().parse::<u64>().map_err(|_| {
                Error::InvalidInput(format!("{SEED_ENV} must be an unsigned integer (got '{s}')"))
            })?,
            Err(_) => 0,
        };
        Ok(Self {
            seed,
            ..Self::default()
        })
    }
}

/// A node whose regime has flipped this often within one solve sits on a
/// kink resolved only to round-off; its regime is frozen from then on.
const MAX_FLIPS: u8 = 4;

/// Nonlinear solver state: operator, grid, current regime per node.
struct PolicySolver<'a> {
    op: &'a RadialOperator,
    grid: &'a AnnulusGrid,
    policy: Vec<Regime>,
    solves: usize,
    max_iters: usize,
}

impl<'a> PolicySolver<'a> {
    fn new(op: &'a RadialOperator, grid: &'a AnnulusGrid, max_iters: usize) -> Self {
        let start = Regime {
            second_nonneg: false,
            slope_nonneg: false,
        };
        Self {
            op,
            grid,
            policy: vec![start; grid.n_nodes],
            solves: 0,
            max_iters,
        }
    }

    /// Solve `F(D^2 u) + c u = g` with Dirichlet data, by Howard's algorithm.
    fn solve(&mut self, diag_extra: &[f64], rhs: &[f64], left: f64, right: f64) -> Result<Vec<f64>> {
        let r = &self.grid.nodes;
        let n = r.len();
        let l = if self.grid.includes_origin() {
            Left::Origin
        } else {
            Left::Value(left)
        };
        let mut flips = vec![0u8; n];
        for _ in 0..self.max_iters {
            let policy = self.policy.clone();
            let op = self.op;
            let coeff = move |i: usize| {
                let b = op.branch(policy[i]);
                NodeCoefficients {
                    second: b.second,
                    first: b.first,
                }
            };
            let (t, b, first) = assemble(r, &coeff, diag_extra, rhs, l, right);
            let sol = t.solve(&b)?;
            self.solves += 1;
            let u = expand(&sol, first, n, l, right);
            let (_, p) = grid_derivatives(r, &u);
            let scale_p = p.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let mut changed = false;
            for i in first..n - 1 {
                let old = self.policy[i];
                // values within round-off of a kink keep their regime
                let slope_nonneg = if i == 0 || p[i].abs() <= 1e-13 * scale_p {
                    old.slope_nonneg
                } else {
                    p[i] >= 0.0
                };
                // The sign of u'' is read off the row equation: second
                // differences are swamped by round-off on the finest cells.
                let b_coef = self.op.branch(Regime { slope_nonneg, ..old }).first;
                let drift = if i == 0 { 0.0 } else { b_coef * p[i] };
                let rest = rhs[i] - diag_extra[i] * u[i];
                let resid = rest - drift;
                let tie = 1e-12 * (rest.abs() + drift.abs());
                let second_nonneg = if resid.abs() <= tie {
                    old.second_nonneg
                } else {
                    resid >= 0.0
                };
                let slope_nonneg = if i == 0 { second_nonneg } else { slope_nonneg };
                let new = Regime {
                    second_nonneg,
                    slope_nonneg,
                };
                if new != old && flips[i] < MAX_FLIPS {
                    changed = true;
                    flips[i] += 1;
                    self.policy[i] = new;
                }
            }
            if !changed {
                return Ok(u);
            }
        }
        Err(Error::PolicyCycle(self.max_iters))
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Principal eigenpair by inverse power iteration: `F(D^2 v_{k+1}) = -v_k w`.
pub fn fd_principal_eigenvalue_with(
    op: &RadialOperator,
    grid: &AnnulusGrid,
    cfg: &FdConfig,
) -> Result<EigenResult> {
    let n = grid.n_nodes;
    let w = grid.weights();
    let unknowns = grid.unknowns();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v = vec![0.0; n];
    for i in unknowns.clone() {
        v[i] = rng.gen_range(0.5..1.5);
    }
    let mut solver = PolicySolver::new(op, grid, cfg.max_policy_iters);
    let zeros = vec![0.0; n];
    let mut lambda = f64::NAN;
    let mut history = Vec::new();
    for it in 1..=cfg.max_iters {
        let rhs: Vec<f64> = (0..n).map(|i| -v[i] * w[i]).collect();
        let z = solver.solve(&zeros, &rhs, 0.0, 0.0)?;
        let zs = sup(&z);
        if !(zs > 0.0) {
            return Err(Error::SingularSystem(0));
        }
        let next = sup(&v) / zs;
        let mut cw_lo = f64::INFINITY;
        let mut cw_hi = 0.0f64;
        for i in unknowns.clone() {
            if z[i] > 0.0 {
                let q = v[i] / z[i];
                cw_lo = cw_lo.min(q);
                cw_hi = cw_hi.max(q);
            }
        }
        v = z.iter().map(|x| x / zs).collect();
        history.push(next);
        let change = (next - lambda).abs() / next;
        lambda = next;
        if it > 1 && change <= cfg.tol {
            let mut diagnostics = Diagnostics {
                iterations: it,
                residual: (cw_hi - cw_lo) / lambda,
                accepted_steps: 0,
                rejected_steps: 0,
                events: 0,
                extra: vec![],
            };
            diagnostics.push("collatz_wielandt_lower", cw_lo);
            diagnostics.push("collatz_wielandt_upper", cw_hi);
            diagnostics.push("linear_solves", solver.solves as f64);
            diagnostics.push("last_change", change);
            let profile = profile_from_nodes(grid, v, grid.potential.gamma, op.params)?;
            return Ok(EigenResult {
                eigenvalue: lambda,
                first_zero: None,
                log_first_zero: None,
                profile,
                engine: Engine::FiniteDifference,
                diagnostics,
            });
        }
    }
    let change = match history.as_slice() {
        [.., a, b] => (b - a).abs() / b,
        _ => f64::NAN,
    };
    Err(Error::NoConvergence {
        iterations: cfg.max_iters,
        change,
    })
}

/// [`fd_principal_eigenvalue_with`] using the grid's potential and the
/// default configuration with the seed taken from the environment.
pub fn fd_principal_eigenvalue(
    op: &RadialOperator,
    potential: &PotentialSpec,
    grid: &AnnulusGrid,
) -> Result<EigenResult> {
    let mut g = grid.clone();
    g.potential = *potential;
    let g = AnnulusGrid::new(g.delta, g.n_nodes, g.potential)?;
    fd_principal_eigenvalue_with(op, &g, &FdConfig::from_env()?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletProblem {
    pub mu: f64,
    pub beta: f64,
    /// Right-hand side `f`, evaluated on the grid by interpolation.
    pub rhs: RadialProfile,
    pub boundary_value: f64,
    pub operator: RadialOperator,
    pub potential: PotentialSpec,
}

impl DirichletProblem {
    pub fn constant_rhs(
        value: f64,
        mu: f64,
        beta: f64,
        boundary_value: f64,
        operator: RadialOperator,
        potential: PotentialSpec,
    ) -> Result<Self> {
        let rhs = RadialProfile::new(
            vec![0.0, 1.0],
            vec![value, value],
            vec![0.0, 0.0],
            potential.gamma,
            operator.params,
        )?;
        Ok(Self {
            mu,
            beta,
            rhs,
            boundary_value,
            operator,
            potential,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolution {
    pub profile: RadialProfile,
    pub outer_iterations: usize,
    pub linear_solves: usize,
}

/// Monotone recursion `F(D^2 u_{n+1}) - beta w u_{n+1} = (f - mu u_n) w`
/// from `u_0 = 0`, each step resolved by policy iteration.
pub fn pucci_dirichlet_solve_with(
    problem: &DirichletProblem,
    grid: &AnnulusGrid,
    cfg: &FdConfig,
) -> Result<DirichletSolution> {
    if !(problem.beta >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "beta must be nonnegative (got {})",
            problem.beta
        )));
    }
    let grid = AnnulusGrid::new(grid.delta, grid.n_nodes, problem.potential)?;
    let n = grid.n_nodes;
    let w = grid.weights();
    let f: Vec<f64> = grid.nodes.iter().map(|&r| problem.rhs.value_at(r)).collect();
    let diag: Vec<f64> = w.iter().map(|wi| -problem.beta * wi).collect();
    let b = problem.boundary_value;
    let mut solver = PolicySolver::new(&problem.operator, &grid, cfg.max_policy_iters);
    let mut prev = vec![0.0; n];
    let mut first_sup = None;
    for it in 1..=cfg.max_iters {
        let rhs: Vec<f64> = (0..n).map(|i| (f[i] - problem.mu * prev[i]) * w[i]).collect();
        let u = solver.solve(&diag, &rhs, b, b)?;
        let s = sup(&u);
        let s1 = *first_sup.get_or_insert(s);
        if s1 > 0.0 && s > cfg.divergence_threshold * s1 {
            return Err(Error::DivergentIteration {
                iterations: it,
                growth: s / s1,
            });
        }
        let diff = u.iter().zip(&prev).fold(0.0f64, |m, (a, c)| m.max((a - c).abs()));
        prev = u;
        if diff <= 1e-12 * s {
            let profile = profile_from_nodes(&grid, prev, problem.potential.gamma, problem.operator.params)?;
            return Ok(DirichletSolution {
                profile,
                outer_iterations: it,
                linear_solves: solver.solves,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iters,
        change: f64::NAN,
    })
}

pub fn pucci_dirichlet_solve(problem: &DirichletProblem, grid: &AnnulusGrid) -> Result<RadialProfile> {
    Ok(pucci_dirichlet_solve_with(problem, grid, &FdConfig::from_env()?)?.profile)
}

/// Residual `F(D^2 u) - (f - mu u) w` of a grid function at every node,
/// using the discrete derivatives of the solver. Exposed for tests.
pub fn discrete_residual(op: &RadialOperator, grid: &AnnulusGrid, u: &[f64], target: &[f64]) -> Vec<f64> {
    let (m, p) = grid_derivatives(&grid.nodes, u);
    (0..u.len()).map(|i| op.evaluate(m[i], p[i]) - target[i]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulePoint {
    pub gamma: f64,
    pub delta: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: SchedulePoint,
    pub eigenvalue: std::result::Result<f64, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityTable {
    pub rows: Vec<SweepRow>,
    /// Eigenvalues strictly decrease along the schedule (the regularization
    /// is removed in schedule order).
    pub strictly_decreasing: bool,
    /// Aitken limit of the last three values, when they converge geometrically.
    pub extrapolated_limit: Option<f64>,
}

/// Finite-difference eigenvalue at every schedule point.
pub fn stability_sweep(
    op: &RadialOperator,
    schedule: &[SchedulePoint],
    n_nodes: usize,
    cfg: &FdConfig,
) -> Result<StabilityTable> {
    if schedule.is_empty() {
        return Err(Error::InvalidInput("empty schedule".into()));
    }
    let mut rows = Vec::with_capacity(schedule.len());
    for &point in schedule {
        let potential = PotentialSpec::new(point.gamma, point.eps)?;
        let grid = AnnulusGrid::new(point.delta, n_nodes, potential)?;
        let eigenvalue = fd_principal_eigenvalue_with(op, &grid, cfg).map(|r| r.eigenvalue);
        rows.push(SweepRow { point, eigenvalue });
    }
    let values: Vec<f64> = rows.iter().filter_map(|r| r.eigenvalue.as_ref().ok().copied()).collect();
    let complete = values.len() == rows.len();
    let strictly_decreasing = complete && values.windows(2).all(|w| w[1] < w[0]);
    let extrapolated_limit = if complete && values.len() >= 3 {
        let k = values.len();
        aitken_limit([values[k - 3], values[k - 2], values[k - 1]])
    } else {
        None
    };
    Ok(StabilityTable {
        rows,
        strictly_decreasing,
        extrapolated_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{OperatorKind, PucciParams};
    use approx::assert_relative_eq;

    fn lap(n: usize) -> RadialOperator {
        RadialOperator::new(OperatorKind::Laplacian, PucciParams::laplacian(n).unwrap()).unwrap()
    }

    #[test]
    fn grid_invariants() {
        let pot = PotentialSpec::new(1.5, 1e-6).unwrap();
        let g = AnnulusGrid::ball(100, pot).unwrap();
        assert_eq!(g.nodes[0], 0.0);
        assert_relative_eq!(g.nodes[1], 5e-8);
        assert_eq!(*g.nodes.last().unwrap(), 1.0);
        assert!(g.nodes.windows(2).all(|w| w[1] > w[0]));
        let a = AnnulusGrid::new(0.01, 50, PotentialSpec::singular(2.5).unwrap()).unwrap();
        assert_eq!(a.nodes[0], 0.01);
        assert!(AnnulusGrid::ball(100, PotentialSpec::singular(1.0).unwrap()).is_err());
    }

    #[test]
    fn torsion_function() {
        let pot = PotentialSpec::new(0.0, 1e-6).unwrap();
        let g = AnnulusGrid::ball(4000, pot).unwrap();
        let coeff = vec![NodeCoefficients { second: 1.0, first: 2.0 }; g.n_nodes];
        let u = linear_radial_solve(&g, &coeff, &vec![-1.0; g.n_nodes], 0.0, 0.0).unwrap();
        for (r, v) in g.nodes.iter().zip(&u) {
            assert!((v - (1.0 - r * r) / 6.0).abs() < 1e-6);
        }
    }

    #[test]
    fn zero_data_gives_zero() {
        let g = AnnulusGrid::new(0.1, 50, PotentialSpec::singular(0.0).unwrap()).unwrap();
        let coeff = vec![NodeCoefficients { second: 1.0, first: 2.0 }; g.n_nodes];
        let u = linear_radial_solve(&g, &coeff, &vec![0.0; 50], 0.0, 0.0).unwrap();
        assert!(u.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn singular_source_on_annulus() {
        let g = AnnulusGrid::new(1e-6, 4000, PotentialSpec::singular(0.5).unwrap()).unwrap();
        let exact = |r: f64| (1.0 - r.powf(1.5)) / 3.75;
        let coeff = vec![NodeCoefficients { second: 1.0, first: 2.0 }; g.n_nodes];
        let rhs: Vec<f64> = g.nodes.iter().map(|r| -r.powf(-0.5)).collect();
        let u = linear_radial_solve(&g, &coeff, &rhs, exact(1e-6), 0.0).unwrap();
        for (r, v) in g.nodes.iter().zip(&u) {
            assert!((v - exact(*r)).abs() < 1e-6);
        }
    }

    #[test]
    fn laplacian_dirichlet_is_torsion() {
        let op = lap(3);
        let pot = PotentialSpec::new(0.0, 1e-6).unwrap();
        let prob = DirichletProblem::constant_rhs(-1.0, 0.0, 0.0, 0.0, op, pot).unwrap();
        let g = AnnulusGrid::ball(2000, pot).unwrap();
        let sol = pucci_dirichlet_solve_with(&prob, &g, &FdConfig::default()).unwrap();
        for (r, v) in sol.profile.radii.iter().zip(&sol.profile.values) {
            assert!((v - (1.0 - r * r) / 6.0).abs() < 1e-6);
        }
    }

    #[test]
    fn laplacian_eigenvalue() {
        let pot = PotentialSpec::new(0.0, 1e-8).unwrap();
        let g = AnnulusGrid::ball(8192, pot).unwrap();
        let res = fd_principal_eigenvalue_with(&lap(3), &g, &FdConfig::default()).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((res.eigenvalue - pi2).abs() / pi2 < 1e-5, "{}", res.eigenvalue);
        let lo = res.diagnostics.get("collatz_wielandt_lower").unwrap();
        let hi = res.diagnostics.get("collatz_wielandt_upper").unwrap();
        assert!(lo <= res.eigenvalue * (1.0 + 1e-9) && res.eigenvalue <= hi * (1.0 + 1e-9));
        let interior = &res.profile.values[..res.profile.len() - 1];
        assert!(interior.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn seed_from_env_is_parsed() {
        assert_eq!(FdConfig::default().seed, 0);
    }
}
