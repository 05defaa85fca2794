use crate::error::{Error, Result};
use crate::operator::PucciParams;

type ScalarMap = Box<dyn Fn(f64) -> f64>;

/// A sampled radial function: values and first derivatives on a grid.
///
/// The first radius may be `0` for grids that include the origin. When the
/// producing engine knows the second derivative exactly (shooting, closed
/// forms) it is stored in `second_derivs`; finite-difference outputs leave it
/// empty and consumers fall back to difference quotients.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
    pub second_derivs: Option<Vec<f64>>,
    pub gamma: f64,
    pub params: PucciParams,
}

impl RadialProfile {
    pub fn new(
        radii: Vec<f64>,
        values: Vec<f64>,
        derivs: Vec<f64>,
        gamma: f64,
        params: PucciParams,
    ) -> Result<Self> {
        if radii.is_empty() || radii.len() != values.len() || radii.len() != derivs.len() {
            return Err(Error::InvalidInput(format!(
                "profile arrays must be nonempty and of equal length ({}, {}, {})",
                radii.len(),
                values.len(),
                derivs.len()
            )));
        }
        if radii[0] < 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "profile radii must be nonnegative and strictly increasing".into(),
            ));
        }
        Ok(Self {
            radii,
            values,
            derivs,
            second_derivs: None,
            gamma,
            params,
        })
    }

    pub fn with_second_derivs(mut self, second: Vec<f64>) -> Result<Self> {
        if second.len() != self.radii.len() {
            return Err(Error::InvalidInput(
                "second derivative array has the wrong length".into(),
            ));
        }
        self.second_derivs = Some(second);
        Ok(self)
    }

    /// Sample `f(r) -> (u, u', u'')` on the given radii.
    pub fn from_fn<F>(radii: Vec<f64>, gamma: f64, params: PucciParams, f: F) -> Result<Self>
    where
        F: Fn(f64) -> (f64, f64, f64),
    {
        let samples: Vec<_> = radii.iter().map(|&r| f(r)).collect();
        let values = samples.iter().map(|s| s.0).collect();
        let derivs = samples.iter().map(|s| s.1).collect();
        let second = samples.iter().map(|s| s.2).collect();
        Self::new(radii, values, derivs, gamma, params)?.with_second_derivs(second)
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= factor);
        out.derivs.iter_mut().for_each(|v| *v *= factor);
        if let Some(s) = out.second_derivs.as_mut() {
            s.iter_mut().for_each(|v| *v *= factor);
        }
        out
    }

    /// Rescale to unit sup norm.
    pub fn normalized_sup(&self) -> Result<Self> {
        let s = self.sup_norm();
        if s == 0.0 || !s.is_finite() {
            return Err(Error::InvalidInput("cannot normalize a zero profile".into()));
        }
        Ok(self.scaled(1.0 / s))
    }

    /// Interpolated value at `r`, clamped to the sampled range.
    ///
    /// Cubic Hermite in `x = r^(2-gamma)` when `gamma < 2` (the natural
    /// variable near the origin, where `u` is smooth in `x`), otherwise in `ln r`.
    pub fn value_at(&self, r: f64) -> f64 {
        let n = self.radii.len();
        if n == 1 || r <= self.radii[0] {
            return self.values[0];
        }
        if r >= self.radii[n - 1] {
            return self.values[n - 1];
        }
        let k = self.radii.partition_point(|&q| q <= r) - 1;
        let (r0, r1) = (self.radii[k], self.radii[k + 1]);
        let (u0, u1) = (self.values[k], self.values[k + 1]);
        if r0 == 0.0 {
            // derivative in the interpolation variable is not available at
            // the origin; fall back to linear in x
            let beta = (2.0 - self.gamma).max(1e-3);
            let t = (r / r1).powf(beta);
            return u0 + t * (u1 - u0);
        }
        let (map, dmap): (ScalarMap, ScalarMap) = if self.gamma < 2.0 {
            let beta = 2.0 - self.gamma;
            (
                Box::new(move |q: f64| q.powf(beta)),
                Box::new(move |q: f64| beta * q.powf(beta - 1.0)),
            )
        } else {
            (Box::new(|q: f64| q.ln()), Box::new(|q: f64| 1.0 / q))
        };
        let (x0, x1, x) = (map(r0), map(r1), map(r));
        let h = x1 - x0;
        if h <= 0.0 || !h.is_finite() {
            let t = (r - r0) / (r1 - r0);
            return u0 + t * (u1 - u0);
        }
        let d0 = self.derivs[k] / dmap(r0);
        let d1 = self.derivs[k + 1] / dmap(r1);
        let t = (x - x0) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let v = h00 * u0 + h10 * h * d0 + h01 * u1 + h11 * h * d1;
        if v.is_finite() {
            v
        } else {
            u0 + t * (u1 - u0)
        }
    }

    /// Interpolate onto another set of radii.
    pub fn resample(&self, radii: &[f64]) -> Vec<f64> {
        radii.iter().map(|&r| self.value_at(r)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Shoot,
    Variational,
    FiniteDifference,
}

impl Engine {
    pub fn tag(&self) -> &'static str {
        match self {
            Engine::Shoot => "shoot",
            Engine::Variational => "variational",
            Engine::FiniteDifference => "finite_difference",
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shoot" => Ok(Engine::Shoot),
            "var" | "variational" => Ok(Engine::Variational),
            "fd" | "finite_difference" => Ok(Engine::FiniteDifference),
            other => Err(Error::InvalidInput(format!("unknown engine '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub iterations: usize,
    pub residual: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub events: usize,
    /// Engine-specific named quantities, in insertion order.
    pub extra: Vec<(String, f64)>,
}

impl Diagnostics {
    pub fn push(&mut self, name: &str, value: f64) {
        self.extra.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.extra.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub eigenvalue: f64,
    /// First zero of the solution normalized by `u(0) = 1`; absent when it
    /// is not representable as a double or the engine has no such notion.
    pub first_zero: Option<f64>,
    /// Natural log of the first zero, always finite when the engine shoots.
    pub log_first_zero: Option<f64>,
    pub profile: RadialProfile,
    pub engine: Engine,
    pub diagnostics: Diagnostics,
}
