//! Limits of sequences sampled along geometric parameter schedules.

/// Aitken's delta-squared limit of three consecutive values.
///
/// Exact when `v_k = L + C q^k`, which covers `v = L + C h^p` sampled at
/// geometric `h` with unknown order `p`. Returns `None` when the differences
/// do not shrink geometrically with a common sign.
pub fn aitken_limit(v: [f64; 3]) -> Option<f64> {
    let d1 = v[1] - v[0];
    let d2 = v[2] - v[1];
    let denom = d2 - d1;
    if d1 == 0.0 || d2 == 0.0 {
        return Some(v[2]);
    }
    let ratio = d2 / d1;
    if !(ratio > 0.0 && ratio < 1.0) || denom == 0.0 {
        return None;
    }
    Some(v[2] - d2 * d2 / denom)
}

/// Least-squares slope of `ln|y|` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && b.abs() > 0.0 && b.is_finite())
        .map(|(a, b)| (a.ln(), b.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_sequence_is_exact() {
        let l = aitken_limit([2.0 + 0.5, 2.0 + 0.05, 2.0 + 0.005]).unwrap();
        assert!((l - 2.0).abs() < 1e-13);
    }

    #[test]
    fn diverging_differences_rejected() {
        assert!(aitken_limit([1.0, 2.0, 4.0]).is_none());
        assert!(aitken_limit([1.0, 2.0, 1.5]).is_none());
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1e-6, 1e-5, 1e-4, 1e-3];
        let y: Vec<f64> = x.iter().map(|t: &f64| 3.0 * t.powf(-0.5)).collect();
        assert!((log_log_slope(&x, &y).unwrap() + 0.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_power_law_limits(l in -5.0..5.0f64, c in 0.1..10.0f64, p in 0.3..3.0f64) {
            let v = [0.1f64, 0.01, 0.001].map(|h| l + c * h.powf(p));
            let est = aitken_limit(v).unwrap();
            prop_assert!((est - l).abs() < 1e-8 * (1.0 + c));
        }
    }
}
