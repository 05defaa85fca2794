//! Pucci operator algebra on radial functions.
//!
//! For a radial `u` the Hessian has the eigenvalue `u''` once and `u'/r` with
//! multiplicity `N - 1`, so every rotationally invariant, positively
//! 1-homogeneous operator in the ellipticity class reduces to a map of the
//! pair `(m, p) = (u'', u'/r)`. All operators handled here are piecewise
//! linear in each slot with a kink at zero.

use crate::error::{Error, Result};

/// Ellipticity constants, dimension and the derived dimension-like parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PucciParams {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub dim: usize,
    pub n_tilde_plus: f64,
    pub n_tilde_minus: f64,
}

impl PucciParams {
    /// Validated constructor: rejects `N+ <= 2`.
    pub fn new(lambda_min: f64, lambda_max: f64, dim: usize) -> Result<Self> {
        let params = Self::new_relaxed(lambda_min, lambda_max, dim)?;
        if params.n_tilde_plus <= 2.0 {
            return Err(Error::DimensionLikeTooSmall {
                n_tilde_plus: params.n_tilde_plus,
            });
        }
        Ok(params)
    }

    /// Same as [`PucciParams::new`] without the `N+ > 2` requirement.
    ///
    /// Needed for configurations such as `(1, 2, 3)` where only `N- > 2`
    /// matters (the `M-` problem) or where `gamma < 2` keeps the radial
    /// problem well posed with `N+ = 2`.
    pub fn new_relaxed(lambda_min: f64, lambda_max: f64, dim: usize) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_min <= lambda_max && lambda_max.is_finite()) {
            return Err(Error::NonElliptic {
                lambda_min,
                lambda_max,
            });
        }
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        let n1 = (dim - 1) as f64;
        Ok(Self {
            lambda_min,
            lambda_max,
            dim,
            n_tilde_plus: lambda_min / lambda_max * n1 + 1.0,
            n_tilde_minus: lambda_max / lambda_min * n1 + 1.0,
        })
    }

    pub fn laplacian(dim: usize) -> Result<Self> {
        Self::new_relaxed(1.0, 1.0, dim)
    }

    pub fn is_isotropic(&self) -> bool {
        self.lambda_min == self.lambda_max
    }
}

/// `dimension_like(lambda, Lambda, N)`; see [`PucciParams::new`].
pub fn dimension_like(lambda_min: f64, lambda_max: f64, dim: usize) -> Result<PucciParams> {
    PucciParams::new(lambda_min, lambda_max, dim)
}

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

#[inline]
fn neg(x: f64) -> f64 {
    (-x).max(0.0)
}

/// `M+` evaluated on a radial Hessian with `u'' = second` and `u'/r = slope_over_radius`.
pub fn pucci_plus_radial(second: f64, slope_over_radius: f64, params: &PucciParams) -> f64 {
    let n1 = (params.dim - 1) as f64;
    let (lo, hi) = (params.lambda_min, params.lambda_max);
    hi * n1 * pos(slope_over_radius) - lo * n1 * neg(slope_over_radius) + hi * pos(second)
        - lo * neg(second)
}

/// `M-` evaluated on a radial Hessian.
pub fn pucci_minus_radial(second: f64, slope_over_radius: f64, params: &PucciParams) -> f64 {
    let n1 = (params.dim - 1) as f64;
    let (lo, hi) = (params.lambda_min, params.lambda_max);
    lo * n1 * pos(slope_over_radius) - hi * n1 * neg(slope_over_radius) + lo * pos(second)
        - hi * neg(second)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    PucciPlus,
    PucciMinus,
    /// `theta * M+ + (1 - theta) * M-`.
    ConvexCombination(f64),
    Laplacian,
}

impl OperatorKind {
    pub fn tag(&self) -> String {
        match self {
            OperatorKind::PucciPlus => "pucci+".to_string(),
            OperatorKind::PucciMinus => "pucci-".to_string(),
            OperatorKind::ConvexCombination(theta) => format!("mix:{theta}"),
            OperatorKind::Laplacian => "laplacian".to_string(),
        }
    }
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.tag())
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pucci+" | "plus" | "M+" => Ok(OperatorKind::PucciPlus),
            "pucci-" | "minus" | "M-" => Ok(OperatorKind::PucciMinus),
            "laplacian" | "lap" => Ok(OperatorKind::Laplacian),
            other => {
                let theta = other
                    .strip_prefix("mix:")
                    .and_then(|t| t.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown operator '{other}'")))?;
                if !(0.0..=1.0).contains(&theta) {
                    return Err(Error::InvalidInput(format!(
                        "mixing weight {theta} outside [0, 1]"
                    )));
                }
                Ok(OperatorKind::ConvexCombination(theta))
            }
        }
    }
}

/// Sign pattern of `(u'', u'/r)` selecting one linear branch of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Regime {
    pub second_nonneg: bool,
    pub slope_nonneg: bool,
}

impl Regime {
    pub fn of(second: f64, slope_over_radius: f64) -> Self {
        Self {
            second_nonneg: second >= 0.0,
            slope_nonneg: slope_over_radius >= 0.0,
        }
    }
}

/// The linear operator active on one regime: `value = second * m + first * p`.
/// `first` already includes the factor `N - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCoefficients {
    pub second: f64,
    pub first: f64,
}

impl BranchCoefficients {
    /// Effective dimension `d` with `value = second * (m + (d - 1) p)`.
    pub fn effective_dimension(&self) -> f64 {
        self.first / self.second + 1.0
    }
}

/// Abstract radial operator `F(m, p)`: positively 1-homogeneous, monotone in
/// both slots and squeezed between `M-` and `M+`.
pub trait RadialMap {
    fn evaluate(&self, second: f64, slope_over_radius: f64) -> f64;

    fn params(&self) -> &PucciParams;

    /// The unique `m` with `evaluate(m, p) = target`.
    fn solve_second_derivative(&self, target: f64, slope_over_radius: f64) -> f64 {
        solve_second_by_bisection(self, target, slope_over_radius)
    }
}

/// Bisection inversion of a monotone radial map in its first slot.
///
/// The bracket follows from the squeeze `M- <= F <= M+`: both Pucci maps have
/// slopes in `[lambda, Lambda]`, so the root lies within `|residual| / lambda`
/// of the origin of the second slot.
pub fn solve_second_by_bisection<F: RadialMap + ?Sized>(
    op: &F,
    target: f64,
    slope_over_radius: f64,
) -> f64 {
    let params = op.params();
    let f0 = op.evaluate(0.0, slope_over_radius) - target;
    if f0 == 0.0 {
        return 0.0;
    }
    let reach = f0.abs() / params.lambda_min * 1.01 + f64::MIN_POSITIVE;
    let (mut lo, mut hi) = if f0 > 0.0 { (-reach, 0.0) } else { (0.0, reach) };
    let scale = reach;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if op.evaluate(mid, slope_over_radius) - target > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * scale.max(mid.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Concrete radial operator: one of the Pucci maps, a convex combination of
/// them, or the Laplacian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOperator {
    pub kind: OperatorKind,
    pub params: PucciParams,
    // slopes of the second slot for m >= 0 / m < 0; the first slot uses the
    // same pair for p >= 0 / p < 0
    slope_pos: f64,
    slope_neg: f64,
}

impl RadialOperator {
    pub fn new(kind: OperatorKind, params: PucciParams) -> Result<Self> {
        let (lo, hi) = (params.lambda_min, params.lambda_max);
        let (slope_pos, slope_neg) = match kind {
            OperatorKind::PucciPlus => (hi, lo),
            OperatorKind::PucciMinus => (lo, hi),
            OperatorKind::ConvexCombination(theta) => {
                if !(0.0..=1.0).contains(&theta) {
                    return Err(Error::InvalidInput(format!(
                        "mixing weight {theta} outside [0, 1]"
                    )));
                }
                (theta * hi + (1.0 - theta) * lo, theta * lo + (1.0 - theta) * hi)
            }
            OperatorKind::Laplacian => {
                if !(lo <= 1.0 && 1.0 <= hi) {
                    return Err(Error::InvalidInput(
                        "the Laplacian lies in the ellipticity class only when lambda <= 1 <= Lambda"
                            .into(),
                    ));
                }
                (1.0, 1.0)
            }
        };
        Ok(Self {
            kind,
            params,
            slope_pos,
            slope_neg,
        })
    }

    pub fn pucci_plus(params: PucciParams) -> Self {
        Self::new(OperatorKind::PucciPlus, params).expect("Pucci operators are always valid")
    }

    pub fn pucci_minus(params: PucciParams) -> Self {
        Self::new(OperatorKind::PucciMinus, params).expect("Pucci operators are always valid")
    }

    pub fn branch(&self, regime: Regime) -> BranchCoefficients {
        let n1 = (self.params.dim - 1) as f64;
        BranchCoefficients {
            second: if regime.second_nonneg {
                self.slope_pos
            } else {
                self.slope_neg
            },
            first: n1
                * if regime.slope_nonneg {
                    self.slope_pos
                } else {
                    self.slope_neg
                },
        }
    }

    /// Regime of a solution near the origin: decreasing, and concave for
    /// `gamma < 1` or convex for `gamma >= 1`.
    pub fn origin_regime(&self, gamma: f64) -> Regime {
        Regime {
            second_nonneg: gamma >= 1.0,
            slope_nonneg: false,
        }
    }

    /// `u''` solving `F(u'', u'/r) = -mu * u * w(r)` at radius `r`.
    pub fn ode_rhs(
        &self,
        r: f64,
        u: f64,
        u_prime: f64,
        potential: &PotentialSpec,
        mu: f64,
    ) -> Result<f64> {
        if r <= 0.0 {
            return Err(Error::NonpositiveRadius(r));
        }
        let target = -mu * u * potential.weight(r);
        Ok(self.solve_second_derivative(target, u_prime / r))
    }
}

impl RadialMap for RadialOperator {
    fn evaluate(&self, second: f64, slope_over_radius: f64) -> f64 {
        let b = self.branch(Regime::of(second, slope_over_radius));
        b.second * second + b.first * slope_over_radius
    }

    fn params(&self) -> &PucciParams {
        &self.params
    }

    /// Exact inversion: the first-order contribution does not depend on `m`,
    /// and the sign of what remains selects the branch of the second slot.
    fn solve_second_derivative(&self, target: f64, slope_over_radius: f64) -> f64 {
        let n1 = (self.params.dim - 1) as f64;
        let first = n1
            * if slope_over_radius >= 0.0 {
                self.slope_pos
            } else {
                self.slope_neg
            }
            * slope_over_radius;
        let rest = target - first;
        if rest >= 0.0 {
            rest / self.slope_pos
        } else {
            rest / self.slope_neg
        }
    }
}

/// Singular potential `r^-gamma`, optionally regularized to `(r^2 + eps^2)^(-gamma/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub gamma: f64,
    pub smoothing: f64,
}

impl PotentialSpec {
    pub fn new(gamma: f64, smoothing: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidInput(format!("gamma must be >= 0 (got {gamma})")));
        }
        if !(smoothing >= 0.0 && smoothing.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "smoothing must be >= 0 (got {smoothing})"
            )));
        }
        Ok(Self { gamma, smoothing })
    }

    pub fn singular(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0)
    }

    pub fn weight(&self, r: f64) -> f64 {
        if self.gamma == 0.0 {
            return 1.0;
        }
        if self.smoothing > 0.0 {
            let e = self.smoothing;
            // hypot avoids underflow of r^2 + eps^2 for tiny radii
            r.hypot(e).powf(-self.gamma)
        } else {
            r.powf(-self.gamma)
        }
    }
}

/// `u''` for `M+(D^2 u) = -u r^-gamma` (or its smoothed version).
pub fn ode_rhs(
    r: f64,
    u: f64,
    u_prime: f64,
    params: &PucciParams,
    potential: &PotentialSpec,
) -> Result<f64> {
    RadialOperator::pucci_plus(*params).ode_rhs(r, u, u_prime, potential, 1.0)
}

/// Closed-form eigenvalue at `gamma = 2` for the Pucci maps.
pub fn explicit_lambda2(params: &PucciParams, kind: OperatorKind) -> Result<f64> {
    match kind {
        OperatorKind::PucciPlus => {
            let k = (params.n_tilde_plus - 2.0) / 2.0;
            Ok(params.lambda_max * k * k)
        }
        OperatorKind::PucciMinus => {
            let k = (params.n_tilde_minus - 2.0) / 2.0;
            Ok(params.lambda_min * k * k)
        }
        other => Err(Error::UnsupportedOperator(other.tag())),
    }
}

/// `u(r) = r^(-(d-2)/2) (c1 (-ln r) + c2)` with `d` the dimension-like
/// parameter of the operator, together with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma2Eigenfunction {
    pub exponent: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Gamma2Eigenfunction {
    pub fn new(params: &PucciParams, kind: OperatorKind, c1: f64, c2: f64) -> Result<Self> {
        let n_tilde = match kind {
            OperatorKind::PucciPlus => params.n_tilde_plus,
            OperatorKind::PucciMinus => params.n_tilde_minus,
            other => return Err(Error::UnsupportedOperator(other.tag())),
        };
        if !(c1 >= 0.0 && c2 >= 0.0 && c1 + c2 > 0.0) {
            return Err(Error::InvalidInput(
                "coefficients must satisfy c1, c2 >= 0 and c1 + c2 > 0".into(),
            ));
        }
        Ok(Self {
            exponent: (n_tilde - 2.0) / 2.0,
            c1,
            c2,
        })
    }

    fn check(r: f64) -> Result<()> {
        if r <= 0.0 || r > 1.0 || r.is_nan() {
            return Err(Error::NonpositiveRadius(r));
        }
        Ok(())
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        Ok(r.powf(-self.exponent) * (self.c1 * (-r.ln()) + self.c2))
    }

    pub fn first_derivative(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        let k = self.exponent;
        let bracket = self.c1 * (-r.ln()) + self.c2;
        Ok(-r.powf(-k - 1.0) * (k * bracket + self.c1))
    }

    pub fn second_derivative(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        let k = self.exponent;
        let bracket = self.c1 * (-r.ln()) + self.c2;
        Ok(r.powf(-k - 2.0) * ((k + 1.0) * (k * bracket + self.c1) + k * self.c1))
    }
}

pub fn explicit_eigenfunction_gamma2(
    r: f64,
    params: &PucciParams,
    kind: OperatorKind,
    c1: f64,
    c2: f64,
) -> Result<f64> {
    Gamma2Eigenfunction::new(params, kind, c1, c2)?.value(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn p125() -> PucciParams {
        PucciParams::new(1.0, 2.0, 5).unwrap()
    }

    fn p123() -> PucciParams {
        PucciParams::new_relaxed(1.0, 2.0, 3).unwrap()
    }

    #[test]
    fn dimension_like_examples() {
        let p = dimension_like(1.0, 1.0, 3).unwrap();
        assert_eq!((p.n_tilde_plus, p.n_tilde_minus), (3.0, 3.0));
        let p = dimension_like(1.0, 2.0, 5).unwrap();
        assert_eq!((p.n_tilde_plus, p.n_tilde_minus), (3.0, 9.0));
        assert!(matches!(
            dimension_like(1.0, 2.0, 3),
            Err(Error::DimensionLikeTooSmall { .. })
        ));
        assert!(matches!(
            dimension_like(0.0, 2.0, 5),
            Err(Error::NonElliptic { .. })
        ));
        assert!(matches!(
            dimension_like(3.0, 2.0, 5),
            Err(Error::NonElliptic { .. })
        ));
    }

    #[test]
    fn dimension_like_ordering() {
        for &(lo, hi, n) in &[(1.0, 1.0, 4), (1.0, 2.0, 5), (0.5, 3.0, 9)] {
            let p = PucciParams::new_relaxed(lo, hi, n).unwrap();
            assert!(p.n_tilde_plus <= n as f64 && n as f64 <= p.n_tilde_minus);
            assert_eq!(p.n_tilde_plus == p.n_tilde_minus, lo == hi);
        }
    }

    #[test]
    fn pucci_plus_examples() {
        let p = p123();
        assert_eq!(pucci_plus_radial(1.0, 0.0, &p), 2.0);
        assert_eq!(pucci_plus_radial(1.0, 1.0, &p), 6.0);
        assert_eq!(pucci_plus_radial(-1.0, 0.5, &p), 1.0);
    }

    #[test]
    fn pucci_minus_examples() {
        let p = p123();
        assert_eq!(pucci_minus_radial(1.0, 1.0, &p), 3.0);
        assert_eq!(pucci_minus_radial(-1.0, -1.0, &p), -6.0);
    }

    #[test]
    fn ode_rhs_examples() {
        let p = p125();
        let pot = PotentialSpec::singular(1.3).unwrap();
        assert_eq!(ode_rhs(0.5, 0.0, 0.0, &p, &pot).unwrap(), 0.0);
        assert!(matches!(
            ode_rhs(0.0, 1.0, 0.0, &p, &pot),
            Err(Error::NonpositiveRadius(_))
        ));

        // sin(r)/r solves u'' + (2/r) u' + u = 0
        let lap = PucciParams::laplacian(3).unwrap();
        let flat = PotentialSpec::singular(0.0).unwrap();
        let r = 1.0_f64;
        let u = r.sin() / r;
        let up = (r * r.cos() - r.sin()) / (r * r);
        let upp = ode_rhs(r, u, up, &lap, &flat).unwrap();
        assert_relative_eq!(upp, -u - 2.0 / r * up, epsilon = 1e-15);
    }

    #[test]
    fn ode_rhs_reproduces_gamma2_eigenfunction() {
        let p = p125();
        let lam2 = explicit_lambda2(&p, OperatorKind::PucciPlus).unwrap();
        let f = Gamma2Eigenfunction::new(&p, OperatorKind::PucciPlus, 1.0, 0.0).unwrap();
        let r = (-1.0_f64).exp();
        let op = RadialOperator::pucci_plus(p);
        let pot = PotentialSpec::singular(2.0).unwrap();
        let upp = op
            .ode_rhs(r, f.value(r).unwrap(), f.first_derivative(r).unwrap(), &pot, lam2)
            .unwrap();
        assert_relative_eq!(upp, f.second_derivative(r).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn explicit_lambda2_examples() {
        let lap4 = PucciParams::laplacian(4).unwrap();
        assert_eq!(explicit_lambda2(&lap4, OperatorKind::PucciPlus).unwrap(), 1.0);
        assert_eq!(explicit_lambda2(&p125(), OperatorKind::PucciPlus).unwrap(), 0.5);
        assert_eq!(explicit_lambda2(&p125(), OperatorKind::PucciMinus).unwrap(), 12.25);
        assert!(matches!(
            explicit_lambda2(&p125(), OperatorKind::Laplacian),
            Err(Error::UnsupportedOperator(_))
        ));
    }

    #[test]
    fn gamma2_eigenfunction_examples() {
        let lap4 = PucciParams::laplacian(4).unwrap();
        let v = explicit_eigenfunction_gamma2(1.0, &lap4, OperatorKind::PucciPlus, 1.0, 0.0);
        assert_eq!(v.unwrap(), 0.0);
        let v = explicit_eigenfunction_gamma2(
            (-1.0_f64).exp(),
            &lap4,
            OperatorKind::PucciPlus,
            1.0,
            0.0,
        )
        .unwrap();
        assert_relative_eq!(v, 1.0_f64.exp(), max_relative = 1e-14);
        assert!(explicit_eigenfunction_gamma2(0.0, &lap4, OperatorKind::PucciPlus, 1.0, 0.0).is_err());
        assert!(explicit_eigenfunction_gamma2(0.5, &lap4, OperatorKind::PucciPlus, 0.0, 0.0).is_err());
    }

    #[test]
    fn gamma2_residual_both_operators() {
        for params in [p125(), PucciParams::new(1.0, 1.5, 4).unwrap(), PucciParams::laplacian(4).unwrap()] {
            for kind in [OperatorKind::PucciPlus, OperatorKind::PucciMinus] {
                let lam2 = explicit_lambda2(&params, kind).unwrap();
                let f = Gamma2Eigenfunction::new(&params, kind, 0.7, 0.3).unwrap();
                let op = RadialOperator::new(kind, params).unwrap();
                for i in 0..100 {
                    let r = 1e-3_f64 * (0.999e3_f64).powf(i as f64 / 99.0);
                    let u = f.value(r).unwrap();
                    let m = f.second_derivative(r).unwrap();
                    let p = f.first_derivative(r).unwrap() / r;
                    let res = op.evaluate(m, p) + lam2 * u / (r * r);
                    let scale = op.evaluate(m, p).abs() + 1.0;
                    assert!(res.abs() <= 1e-10 * scale, "residual {res} at r={r}");
                }
            }
        }
    }

    #[test]
    fn laplacian_requires_unit_in_class() {
        assert!(RadialOperator::new(OperatorKind::Laplacian, p125()).is_ok());
        let p = PucciParams::new(2.0, 3.0, 5).unwrap();
        assert!(RadialOperator::new(OperatorKind::Laplacian, p).is_err());
    }

    #[test]
    fn operator_kind_parsing() {
        assert_eq!("pucci+".parse::<OperatorKind>().unwrap(), OperatorKind::PucciPlus);
        assert_eq!(
            "mix:0.25".parse::<OperatorKind>().unwrap(),
            OperatorKind::ConvexCombination(0.25)
        );
        assert!("mix:2".parse::<OperatorKind>().is_err());
        assert!("bogus".parse::<OperatorKind>().is_err());
    }

    #[test]
    fn smoothed_potential() {
        let pot = PotentialSpec::new(2.0, 1e-2).unwrap();
        assert_relative_eq!(pot.weight(0.0), 1e4, max_relative = 1e-14);
        assert!(pot.weight(0.5) < 4.0);
        assert!(PotentialSpec::new(-1.0, 0.0).is_err());
    }

    fn kinds() -> impl Strategy<Value = OperatorKind> {
        prop_oneof![
            Just(OperatorKind::PucciPlus),
            Just(OperatorKind::PucciMinus),
            (0.0..=1.0f64).prop_map(OperatorKind::ConvexCombination),
            Just(OperatorKind::Laplacian),
        ]
    }

    fn params() -> impl Strategy<Value = PucciParams> {
        (0.2..1.0f64, 1.0..4.0f64, 2usize..9)
            .prop_map(|(lo, hi, n)| PucciParams::new_relaxed(lo, hi, n).unwrap())
    }

    proptest! {
        #[test]
        fn duality(m in -1e3..1e3f64, p in -1e3..1e3f64, params in params()) {
            prop_assert_eq!(
                pucci_minus_radial(m, p, &params),
                -pucci_plus_radial(-m, -p, &params)
            );
        }

        #[test]
        fn homogeneity(m in -1e3..1e3f64, p in -1e3..1e3f64, t in 1e-6..1e3f64,
                       params in params(), kind in kinds()) {
            let op = RadialOperator::new(kind, params).unwrap();
            let lhs = op.evaluate(t * m, t * p);
            let rhs = t * op.evaluate(m, p);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs() + t * (m.abs() + p.abs())));
        }

        #[test]
        fn squeeze(m in -1e3..1e3f64, p in -1e3..1e3f64, params in params(), kind in kinds()) {
            let op = RadialOperator::new(kind, params).unwrap();
            let v = op.evaluate(m, p);
            let tol = 1e-12 * (m.abs() + p.abs()) * params.lambda_max * params.dim as f64;
            prop_assert!(pucci_minus_radial(m, p, &params) <= v + tol);
            prop_assert!(v <= pucci_plus_radial(m, p, &params) + tol);
        }

        #[test]
        fn monotone(m in -1e2..1e2f64, p in -1e2..1e2f64, dm in 0.0..10.0f64, dp in 0.0..10.0f64,
                    params in params(), kind in kinds()) {
            let op = RadialOperator::new(kind, params).unwrap();
            prop_assert!(op.evaluate(m + dm, p) >= op.evaluate(m, p) - 1e-12);
            prop_assert!(op.evaluate(m, p + dp) >= op.evaluate(m, p) - 1e-12);
        }

        #[test]
        fn ode_rhs_round_trip(r in 1e-4..10.0f64, u in -1e2..1e2f64, up in -1e2..1e2f64,
                              gamma in 0.0..3.0f64, params in params()) {
            let pot = PotentialSpec::singular(gamma).unwrap();
            let upp = ode_rhs(r, u, up, &params, &pot).unwrap();
            let w = r.powf(-gamma);
            let res = pucci_plus_radial(upp, up / r, &params) + u * w;
            let scale = 1.0 + u.abs() * w + params.lambda_max * params.dim as f64 * (up / r).abs();
            prop_assert!(res.abs() <= 1e-12 * scale, "res {} scale {}", res, scale);
        }

        #[test]
        fn exact_inversion_matches_bisection(target in -1e3..1e3f64, p in -1e3..1e3f64,
                                             params in params(), kind in kinds()) {
            let op = RadialOperator::new(kind, params).unwrap();
            let exact = op.solve_second_derivative(target, p);
            let bis = solve_second_by_bisection(&op, target, p);
            prop_assert!((exact - bis).abs() <= 1e-12 * (1.0 + exact.abs() + target.abs() + p.abs() * 10.0));
        }
    }
}
