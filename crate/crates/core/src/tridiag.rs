//! Tridiagonal solves.

use crate::error::{Error, Result};

/// A tridiagonal matrix stored by diagonals. `lower[i]` couples row `i+1`
/// to column `i`, `upper[i]` couples row `i` to column `i+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn zeros(n: usize) -> Self {
        Self {
            lower: vec![0.0; n.saturating_sub(1)],
            diag: vec![0.0; n],
            upper: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// `self - sigma * other`.
    pub fn shifted(&self, sigma: f64, other: &Tridiagonal) -> Tridiagonal {
        let comb = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - sigma * y).collect();
        Tridiagonal {
            lower: comb(&self.lower, &other.lower),
            diag: comb(&self.diag, &other.diag),
            upper: comb(&self.upper, &other.upper),
        }
    }

    /// Thomas algorithm without pivoting. Stable for diagonally dominant and
    /// symmetric positive definite matrices, which is all this crate needs.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let (x, _) = self.solve_counting(rhs)?;
        Ok(x)
    }

    /// Solve and also return the number of negative pivots. For a symmetric
    /// matrix this is the number of negative eigenvalues.
    pub fn solve_counting(&self, rhs: &[f64]) -> Result<(Vec<f64>, usize)> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::InvalidInput("rhs length mismatch".into()));
        }
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut negative = 0;
        let scale = self.diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tiny = 1e-300f64.max(scale * 1e-300);
        for i in 0..n {
            let mut piv = self.diag[i];
            let mut rhs_i = rhs[i];
            if i > 0 {
                piv -= self.lower[i - 1] * c[i - 1];
                rhs_i -= self.lower[i - 1] * d[i - 1];
            }
            if !(piv.abs() > tiny) {
                return Err(Error::SingularSystem(i));
            }
            if piv < 0.0 {
                negative += 1;
            }
            if i + 1 < n {
                c[i] = self.upper[i] / piv;
            }
            d[i] = rhs_i / piv;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        Ok((d, negative))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singular_detected() {
        let mut t = Tridiagonal::zeros(3);
        t.diag = vec![1.0, 0.0, 1.0];
        assert!(matches!(t.solve(&[1.0, 1.0, 1.0]), Err(Error::SingularSystem(1))));
    }

    #[test]
    fn inertia_of_shifted_laplacian() {
        // eigenvalues of tridiag(-1, 2, -1) are 2 - 2 cos(k pi / (n+1))
        let n = 10;
        let t = Tridiagonal {
            lower: vec![-1.0; n - 1],
            diag: vec![2.0; n],
            upper: vec![-1.0; n - 1],
        };
        let mut id = Tridiagonal::zeros(n);
        id.diag = vec![1.0; n];
        let ev = |k: usize| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        let sigma = 0.5 * (ev(3) + ev(4));
        let (_, neg) = t.shifted(sigma, &id).solve_counting(&vec![1.0; n]).unwrap();
        assert_eq!(neg, 3);
    }

    proptest! {
        #[test]
        fn solves_diagonally_dominant(
            off in proptest::collection::vec(-1.0..1.0f64, 1..40),
            rhs_seed in -1.0..1.0f64,
        ) {
            let n = off.len() + 1;
            let t = Tridiagonal {
                lower: off.clone(),
                diag: (0..n).map(|i| 2.5 + (i as f64).sin()).collect(),
                upper: off.iter().map(|v| 0.5 * v).collect(),
            };
            let b: Vec<f64> = (0..n).map(|i| rhs_seed + i as f64 * 0.1).collect();
            let x = t.solve(&b).unwrap();
            let back = t.mul_vec(&x);
            for (p, q) in back.iter().zip(&b) {
                prop_assert!((p - q).abs() < 1e-12);
            }
        }
    }
}
