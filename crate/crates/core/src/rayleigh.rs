//! Weighted Rayleigh quotient `int u'^2 r^(d-1) / int u^2 r^(d-1-gamma)` over
//! radial functions vanishing at `r = 1`, and its discrete minimization.
//!
//! The discretization uses linear elements in `t = -ln r`, where the
//! quotient reads `int u_t^2 e^(-a t) dt / int u^2 e^(-b t) dt` with
//! `a = d - 2`, `b = d - gamma`. The half-line is truncated at `t = T` and
//! `u` is continued by the constant `u(T)`, whose mass `u(T)^2 e^(-bT) / b`
//! is added to the last node. That continuation is admissible, so every
//! discrete value bounds the continuous infimum from above.

use crate::error::{Error, Result};
use crate::operator::PucciParams;
use crate::profile::RadialProfile;
use crate::tridiag::Tridiagonal;

/// `((N+ - 2) / 2)^2`.
pub fn hardy_limit(params: &PucciParams) -> f64 {
    let k = (params.n_tilde_plus - 2.0) / 2.0;
    k * k
}

/// Quadrature nodes with the two weights of the quotient sampled on them.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMesh {
    pub nodes: Vec<f64>,
    pub stiffness_weight: Vec<f64>,
    pub mass_weight: Vec<f64>,
    pub n_tilde: f64,
    pub gamma: f64,
}

impl WeightedMesh {
    pub fn new(nodes: Vec<f64>, n_tilde: f64, gamma: f64) -> Result<Self> {
        if nodes.len() < 3
            || nodes[0] <= 0.0
            || *nodes.last().unwrap() != 1.0
            || nodes.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::InvalidInput(
                "mesh nodes must be increasing in (0, 1], end at 1 and number at least 3".into(),
            ));
        }
        let stiffness_weight = nodes.iter().map(|r| r.powf(n_tilde - 1.0)).collect();
        let mass_weight = nodes.iter().map(|r| r.powf(n_tilde - 1.0 - gamma)).collect();
        Ok(Self {
            nodes,
            stiffness_weight,
            mass_weight,
            n_tilde,
            gamma,
        })
    }

    /// Geometric nodes from `r_min` to 1.
    pub fn geometric(n_tilde: f64, gamma: f64, r_min: f64, n_nodes: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min < 1.0) || n_nodes < 3 {
            return Err(Error::InvalidInput("need 0 < r_min < 1 and at least 3 nodes".into()));
        }
        let lo = r_min.ln();
        let nodes = (0..n_nodes)
            .map(|i| {
                if i + 1 == n_nodes {
                    1.0
                } else {
                    (lo * (1.0 - i as f64 / (n_nodes - 1) as f64)).exp()
                }
            })
            .collect();
        Self::new(nodes, n_tilde, gamma)
    }
}

/// Composite Simpson rule on arbitrary nodes.
fn simpson(x: &[f64], f: &[f64]) -> f64 {
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
    }
    let mut s = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        s += (h0 + h1) / 6.0
            * ((2.0 - h1 / h0) * f[i]
                + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1]
                + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // odd number of intervals: close with the quadratic through the last three nodes
        let h0 = x[n - 2] - x[n - 3];
        let h1 = x[n - 1] - x[n - 2];
        let alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        let beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        let eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        s += alpha * f[n - 1] + beta * f[n - 2] - eta * f[n - 3];
    }
    s
}

/// Linear interpolation of the first derivative of a profile.
fn deriv_at(profile: &RadialProfile, r: f64) -> f64 {
    let radii = &profile.radii;
    let n = radii.len();
    if r <= radii[0] {
        return profile.derivs[0];
    }
    if r >= radii[n - 1] {
        return profile.derivs[n - 1];
    }
    let k = radii.partition_point(|&q| q <= r) - 1;
    let t = (r - radii[k]) / (radii[k + 1] - radii[k]);
    profile.derivs[k] + t * (profile.derivs[k + 1] - profile.derivs[k])
}

/// The weighted Rayleigh quotient of a profile, by Simpson's rule in `ln r`
/// over the mesh nodes.
pub fn rayleigh_quotient(profile: &RadialProfile, mesh: &WeightedMesh) -> Result<f64> {
    let same_nodes = profile.radii == mesh.nodes;
    let (u, du): (Vec<f64>, Vec<f64>) = if same_nodes {
        (profile.values.clone(), profile.derivs.clone())
    } else {
        mesh.nodes
            .iter()
            .map(|&r| (profile.value_at(r), deriv_at(profile, r)))
            .unzip()
    };
    let s: Vec<f64> = mesh.nodes.iter().map(|r| r.ln()).collect();
    let num: Vec<f64> = (0..s.len())
        .map(|i| du[i] * du[i] * mesh.stiffness_weight[i] * mesh.nodes[i])
        .collect();
    let den: Vec<f64> = (0..s.len())
        .map(|i| u[i] * u[i] * mesh.mass_weight[i] * mesh.nodes[i])
        .collect();
    let d = simpson(&s, &den);
    if !(d > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(simpson(&s, &num) / d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalConfig {
    pub nodes: usize,
    /// Grading exponent of the map `t = T (e^(k s) - 1) / (e^k - 1)`.
    pub grading: f64,
    /// Fixed truncation `T`; `None` doubles `T` until the tail mass is negligible.
    pub truncation: Option<f64>,
    pub tail_tol: f64,
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for VariationalConfig {
    fn default() -> Self {
        Self {
            nodes: 4096,
            grading: 3.0,
            truncation: None,
            tail_tol: 1e-14,
            tol: 1e-12,
            max_iters: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalResult {
    pub lambda_var: f64,
    /// Second discrete eigenvalue, used for the separation check.
    pub second_eigenvalue: f64,
    /// Nonnegative minimizer with unit weighted mass.
    pub minimizer: RadialProfile,
    pub quotient_history: Vec<f64>,
    pub n_tilde: f64,
    pub gamma: f64,
    pub truncation: f64,
    /// Fraction of the weighted mass carried by the constant tail.
    pub tail_fraction: f64,
    /// `gamma <= 1`: outside the range where the quotient is tied to `M+`.
    pub exploratory: bool,
}

/// `I_k(z) = int_0^1 s^k e^(-z s) ds` for `k = 0, 1, 2`.
fn exp_moments(z: f64) -> [f64; 3] {
    if z.abs() < 1.0 {
        exp_moments_series(z)
    } else {
        exp_moments_recursive(z)
    }
}

fn exp_moments_series(z: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut term = 1.0;
        let mut sum = 0.0;
        for j in 0..40 {
            let add = term / (k + j + 1) as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
            term *= -z / (j + 1) as f64;
        }
        *o = sum;
    }
    out
}

fn exp_moments_recursive(z: f64) -> [f64; 3] {
    let e = (-z).exp();
    let i0 = -(-z).exp_m1() / z;
    let i1 = (i0 - e) / z;
    let i2 = (2.0 * i1 - e) / z;
    [i0, i1, i2]
}

struct Pencil {
    t: Vec<f64>,
    stiffness: Tridiagonal,
    mass: Tridiagonal,
}

fn assemble(a: f64, b: f64, truncation: f64, nodes: usize, grading: f64) -> Pencil {
    let n = nodes - 1;
    let t: Vec<f64> = (0..=n)
        .map(|j| {
            let xi = j as f64 / n as f64;
            if grading == 0.0 {
                truncation * xi
            } else {
                truncation * (grading * xi).exp_m1() / grading.exp_m1()
            }
        })
        .collect();
    // unknowns are the nodes 1..=n, scaled by e^(-a t / 2)
    let mut k = Tridiagonal::zeros(n);
    let mut m = Tridiagonal::zeros(n);
    for e in 0..n {
        let (t0, t1) = (t[e], t[e + 1]);
        let h = t1 - t0;
        let ks = exp_moments(a * h)[0] / h;
        let mm = exp_moments(b * h);
        let mass_loc = [mm[0] - 2.0 * mm[1] + mm[2], mm[1] - mm[2], mm[2]];
        let w = |p: f64, q: f64, rate: f64| (-rate * t0 + 0.5 * a * (p + q)).exp();
        // local node 0 is global unknown e - 1 (absent for e = 0)
        let i1 = e;
        k.diag[i1] += ks * w(t1, t1, a);
        m.diag[i1] += h * mass_loc[2] * w(t1, t1, b);
        if e > 0 {
            let i0 = e - 1;
            k.diag[i0] += ks * w(t0, t0, a);
            m.diag[i0] += h * mass_loc[0] * w(t0, t0, b);
            let koff = -ks * w(t0, t1, a);
            let moff = h * mass_loc[1] * w(t0, t1, b);
            k.upper[i0] += koff;
            k.lower[i0] += koff;
            m.upper[i0] += moff;
            m.lower[i0] += moff;
        }
    }
    m.diag[n - 1] += ((a - b) * truncation).exp() / b;
    Pencil {
        t,
        stiffness: k,
        mass: m,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn quotient(p: &Pencil, w: &[f64]) -> (f64, f64) {
    let num = dot(w, &p.stiffness.mul_vec(w));
    let den = dot(w, &p.mass.mul_vec(w));
    (num / den, den)
}

/// Number of discrete eigenvalues below `sigma`.
fn count_below(p: &Pencil, sigma: f64) -> Result<usize> {
    let shifted = p.stiffness.shifted(sigma, &p.mass);
    let ones = vec![1.0; shifted.len()];
    match shifted.solve_counting(&ones) {
        Ok((_, neg)) => Ok(neg),
        // sigma is (numerically) an eigenvalue; nudge it
        Err(Error::SingularSystem(_)) => Ok(shifted
            .shifted(-1e-12 * sigma.abs().max(1e-300), &p.mass)
            .solve_counting(&ones)?
            .1),
        Err(e) => Err(e),
    }
}

struct Eigenpair {
    value: f64,
    vector: Vec<f64>,
    history: Vec<f64>,
}

fn smallest_eigenpair(p: &Pencil, tol: f64, max_iters: usize) -> Result<Eigenpair> {
    let n = p.stiffness.len();
    let mut w = vec![1.0; n];
    let (mut lam, mut den) = quotient(p, &w);
    w.iter_mut().for_each(|v| *v /= den.sqrt());
    let mut history = vec![lam];
    let mut sigma = 0.0;
    for _ in 0..max_iters {
        let rhs = p.mass.mul_vec(&w);
        let (z, neg) = p.stiffness.shifted(sigma, &p.mass).solve_counting(&rhs)?;
        if neg > 0 {
            // the shift passed the smallest eigenvalue; retreat
            sigma *= 0.5;
            continue;
        }
        let (next, d) = quotient(p, &z);
        den = d;
        w = z.iter().map(|v| v / den.sqrt()).collect();
        let change = (next - lam).abs() / next.abs();
        lam = next;
        history.push(lam);
        if change < tol {
            if w.iter().sum::<f64>() < 0.0 {
                w.iter_mut().for_each(|v| *v = -*v);
            }
            return Ok(Eigenpair {
                value: lam,
                vector: w,
                history,
            });
        }
        if change < 1e-3 {
            sigma = 0.9 * lam;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iters,
        change: history
            .windows(2)
            .last()
            .map_or(f64::NAN, |h| (h[1] - h[0]).abs()),
    })
}

/// Second eigenvalue by bisection on the inertia of the shifted pencil.
fn second_eigenvalue(p: &Pencil, first: f64) -> Result<f64> {
    let mut lo = first;
    let mut hi = 2.0 * first.max(1e-300);
    let mut guard = 0;
    while count_below(p, hi)? < 2 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::MeshTooCoarse {
                first,
                second: f64::INFINITY,
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(p, mid)? >= 2 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn solve_at(
    n_tilde: f64,
    gamma: f64,
    truncation: f64,
    cfg: &VariationalConfig,
) -> Result<(Pencil, Eigenpair, f64)> {
    let a = n_tilde - 2.0;
    let b = n_tilde - gamma;
    let pencil = assemble(a, b, truncation, cfg.nodes, cfg.grading);
    let pair = smallest_eigenpair(&pencil, cfg.tol, cfg.max_iters)?;
    let last = *pair.vector.last().unwrap();
    let tail = last * last * ((a - b) * truncation).exp() / b;
    let mass = dot(&pair.vector, &pencil.mass.mul_vec(&pair.vector));
    Ok((pencil, pair, tail / mass))
}

/// Smallest value of the quotient with dimension-like parameter `n_tilde`.
pub fn variational_eigenvalue_with(
    n_tilde: f64,
    gamma: f64,
    params: &PucciParams,
    cfg: &VariationalConfig,
) -> Result<VariationalResult> {
    if !(0.0..2.0).contains(&gamma) {
        return Err(Error::InvalidInput(format!(
            "the variational engine needs 0 <= gamma < 2 (got {gamma})"
        )));
    }
    if n_tilde <= gamma {
        return Err(Error::InvalidInput(format!(
            "dimension-like parameter {n_tilde} must exceed gamma = {gamma}"
        )));
    }
    if cfg.nodes < 3 {
        return Err(Error::InvalidInput("need at least 3 nodes".into()));
    }
    let b = n_tilde - gamma;
    let (pencil, pair, tail_fraction, truncation) = match cfg.truncation {
        Some(t) => {
            let (p, e, f) = solve_at(n_tilde, gamma, t, cfg)?;
            (p, e, f, t)
        }
        None => {
            let mut t = 36.0 / b;
            let mut attempt = solve_at(n_tilde, gamma, t, cfg)?;
            for _ in 0..8 {
                if attempt.2 <= cfg.tail_tol {
                    break;
                }
                t *= 2.0;
                attempt = solve_at(n_tilde, gamma, t, cfg)?;
            }
            (attempt.0, attempt.1, attempt.2, t)
        }
    };

    let lambda = pair.value;
    let second = second_eigenvalue(&pencil, lambda)?;
    if (second - lambda) / lambda < 1e-10 {
        return Err(Error::MeshTooCoarse {
            first: lambda,
            second,
        });
    }

    // back to u, ordered by increasing radius
    let a = n_tilde - 2.0;
    let t = &pencil.t;
    let n = t.len();
    let mut u = vec![0.0; n];
    for j in 1..n {
        u[j] = pair.vector[j - 1] * (0.5 * a * t[j]).exp();
    }
    let slope = |e: usize| (u[e + 1] - u[e]) / (t[e + 1] - t[e]);
    let du_dt: Vec<f64> = (0..n)
        .map(|j| {
            if j == 0 {
                slope(0)
            } else if j == n - 1 {
                slope(n - 2)
            } else {
                0.5 * (slope(j - 1) + slope(j))
            }
        })
        .collect();
    let mut radii = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    let mut derivs = Vec::with_capacity(n);
    for j in (0..n).rev() {
        let r = (-t[j]).exp();
        radii.push(r);
        values.push(u[j].max(0.0));
        derivs.push(-du_dt[j] / r);
    }
    let minimizer = RadialProfile::new(radii, values, derivs, gamma, *params)?;
    Ok(VariationalResult {
        lambda_var: lambda,
        second_eigenvalue: second,
        minimizer,
        quotient_history: pair.history,
        n_tilde,
        gamma,
        truncation,
        tail_fraction,
        exploratory: gamma <= 1.0,
    })
}

/// Minimize the quotient with `N+` on a mesh of `mesh_size` nodes.
pub fn variational_eigenvalue(
    params: &PucciParams,
    gamma: f64,
    mesh_size: usize,
) -> Result<VariationalResult> {
    let cfg = VariationalConfig {
        nodes: mesh_size,
        ..VariationalConfig::default()
    };
    variational_eigenvalue_with(params.n_tilde_plus, gamma, params, &cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeReport {
    pub monotone: bool,
    pub convex: bool,
    /// Radii where the profile increases.
    pub monotonicity_violations: Vec<f64>,
    /// Radii where the slope decreases.
    pub convexity_violations: Vec<f64>,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.convex
    }
}

/// Discrete monotonicity and convexity of a profile normalized to unit sup norm.
pub fn profile_shape_check(profile: &RadialProfile, tol: f64) -> ShapeReport {
    let r = &profile.radii;
    let s = profile.sup_norm();
    let scale = if s > 0.0 { 1.0 / s } else { 1.0 };
    let u: Vec<f64> = profile.values.iter().map(|v| v * scale).collect();
    let mut mono = vec![];
    let mut conv = vec![];
    for i in 0..r.len().saturating_sub(1) {
        if u[i + 1] - u[i] > tol {
            mono.push(r[i + 1]);
        }
    }
    let slopes: Vec<f64> = (0..r.len().saturating_sub(1))
        .map(|i| (u[i + 1] - u[i]) / (r[i + 1] - r[i]))
        .collect();
    for i in 0..slopes.len().saturating_sub(1) {
        let mag = slopes[i].abs().max(slopes[i + 1].abs()).max(1.0);
        if slopes[i + 1] - slopes[i] < -tol * mag {
            conv.push(r[i + 1]);
        }
    }
    ShapeReport {
        monotone: mono.is_empty(),
        convex: conv.is_empty(),
        monotonicity_violations: mono,
        convexity_violations: conv,
    }
}

/// Shape check of a discrete minimizer with tolerance `1e-8`.
pub fn minimizer_shape_check(result: &VariationalResult) -> ShapeReport {
    profile_shape_check(&result.minimizer, 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn hardy_limit_examples() {
        assert_eq!(hardy_limit(&PucciParams::laplacian(4).unwrap()), 1.0);
        let p = PucciParams::new(1.0, 2.0, 5).unwrap();
        assert_eq!(hardy_limit(&p), 0.25);
        assert_eq!(
            p.lambda_max * hardy_limit(&p),
            crate::operator::explicit_lambda2(&p, crate::operator::OperatorKind::PucciPlus).unwrap()
        );
    }

    #[test]
    fn simpson_exact_on_quadratics_with_uneven_nodes() {
        for x in [vec![0.0, 0.1, 0.35, 0.4, 0.9, 1.0], vec![0.0, 0.3, 0.35, 1.0]] {
            let f: Vec<f64> = x.iter().map(|t| 3.0 * t * t - 2.0 * t + 1.0).collect();
            assert_relative_eq!(simpson(&x, &f), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn moments_agree_across_branches() {
        for &z in &[0.5, 1.0, -0.7, -1.0, 2.5] {
            let m = exp_moments_series(z);
            let n = exp_moments_recursive(z);
            for k in 0..3 {
                assert!((m[k] - n[k]).abs() < 1e-13, "z={z} k={k}");
            }
        }
        let m = exp_moments(3.0);
        assert_relative_eq!(m[0], (1.0 - (-3.0f64).exp()) / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn quotient_of_polynomial() {
        let params = PucciParams::laplacian(3).unwrap();
        let mesh = WeightedMesh::geometric(3.0, 0.0, 1e-8, 4001).unwrap();
        let prof = RadialProfile::from_fn(mesh.nodes.clone(), 0.0, params, |r| {
            (1.0 - r * r, -2.0 * r, -2.0)
        })
        .unwrap();
        assert_relative_eq!(rayleigh_quotient(&prof, &mesh).unwrap(), 10.5, max_relative = 1e-7);
        let doubled = prof.scaled(2.0);
        assert_relative_eq!(
            rayleigh_quotient(&doubled, &mesh).unwrap(),
            rayleigh_quotient(&prof, &mesh).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn zero_profile_has_no_quotient() {
        let params = PucciParams::laplacian(3).unwrap();
        let mesh = WeightedMesh::geometric(3.0, 0.0, 1e-3, 11).unwrap();
        let prof = RadialProfile::new(mesh.nodes.clone(), vec![0.0; 11], vec![0.0; 11], 0.0, params).unwrap();
        assert!(matches!(rayleigh_quotient(&prof, &mesh), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn laplacian_ball_pi_squared() {
        let p = PucciParams::laplacian(3).unwrap();
        let res = variational_eigenvalue(&p, 0.0, 4096).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((res.lambda_var - pi2).abs() / pi2 < 1e-4, "{}", res.lambda_var);
        assert!(res.lambda_var >= pi2);
        assert!(res.exploratory);
        assert!(res.minimizer.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn minimizer_quotient_matches_eigenvalue() {
        let p = PucciParams::new(1.0, 2.0, 5).unwrap();
        let res = variational_eigenvalue(&p, 1.5, 4096).unwrap();
        let mesh = WeightedMesh::new(res.minimizer.radii.clone(), res.n_tilde, 1.5).unwrap();
        let q = rayleigh_quotient(&res.minimizer, &mesh).unwrap();
        assert!((q - res.lambda_var).abs() / res.lambda_var < 1e-3, "{q} vs {}", res.lambda_var);
    }

    #[test]
    fn minimizer_is_monotone_and_convex() {
        let p = PucciParams::new(1.0, 2.0, 5).unwrap();
        let res = variational_eigenvalue(&p, 1.5, 4096).unwrap();
        let rep = minimizer_shape_check(&res);
        assert!(rep.passed(), "{:?}", &rep.convexity_violations[..rep.convexity_violations.len().min(5)]);
    }

    #[test]
    fn shape_check_flags_constructed_bump() {
        let params = PucciParams::laplacian(3).unwrap();
        let radii: Vec<f64> = (1..=50).map(|k| k as f64 / 50.0).collect();
        let mut prof = RadialProfile::from_fn(radii, 1.5, params, |r| ((1.0 - r).powi(2), 0.0, 0.0)).unwrap();
        let flat = profile_shape_check(&prof, 1e-8);
        assert!(flat.passed());
        prof.values[20] += 0.05;
        let rep = profile_shape_check(&prof, 1e-8);
        assert!(!rep.passed());
        assert!(rep.monotonicity_violations.contains(&prof.radii[20]));
        let constant = RadialProfile::new(vec![0.5, 1.0], vec![1.0, 1.0], vec![0.0, 0.0], 1.5, params).unwrap();
        assert!(profile_shape_check(&constant, 1e-8).passed());
    }

    #[test]
    fn refinement_decreases_eigenvalue() {
        let p = PucciParams::new(1.0, 2.0, 5).unwrap();
        let mut prev = f64::INFINITY;
        for nodes in [65, 129, 257, 513] {
            let cfg = VariationalConfig {
                nodes,
                truncation: Some(30.0),
                ..VariationalConfig::default()
            };
            let res = variational_eigenvalue_with(p.n_tilde_plus, 1.5, &p, &cfg).unwrap();
            assert!(res.lambda_var <= prev * (1.0 + 1e-12));
            prev = res.lambda_var;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn nonincreasing_in_gamma(g in 1.0..1.9f64, dg in 0.01..0.09f64) {
            let p = PucciParams::new(1.0, 2.0, 5).unwrap();
            let cfg = VariationalConfig { nodes: 257, truncation: Some(60.0), ..VariationalConfig::default() };
            let lo = variational_eigenvalue_with(p.n_tilde_plus, g, &p, &cfg).unwrap().lambda_var;
            let hi = variational_eigenvalue_with(p.n_tilde_plus, g + dg, &p, &cfg).unwrap().lambda_var;
            // the mass weight r^(d-1-gamma) grows with gamma on (0, 1]
            prop_assert!(hi <= lo * (1.0 + 1e-12), "{} {}", lo, hi);
        }
    }
}
