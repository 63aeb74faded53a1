use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::bessel::ln_bessel_k_half;
use super::rng::RngState;
use crate::error::{Error, Result};

/// Inverse Gaussian law in the (roughness ω, mean η) parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IGParams {
    pub omega: f64,
    pub eta: f64,
}

impl IGParams {
    pub fn new(omega: f64, eta: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) || !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::Parameter(format!(
                "IG parameters must be positive and finite, got omega={omega}, eta={eta}"
            )));
        }
        Ok(Self { omega, eta })
    }

    /// Unit-mean backscatter law with roughness `omega`.
    pub fn unit_mean(omega: f64) -> Result<Self> {
        Self::new(omega, 1.0)
    }

    pub fn mean(&self) -> f64 {
        self.eta
    }

    pub fn variance(&self) -> f64 {
        self.eta * self.eta / self.omega
    }
}

/// `ln f(x) = ½ ln(ωη / (2π x³)) − (ω/2)(x−η)²/(xη)`; `−∞` off the support.
pub fn ig_ln_pdf(p: &IGParams, x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NEG_INFINITY;
    }
    let (w, e) = (p.omega, p.eta);
    0.5 * (w * e / (2.0 * PI * x * x * x)).ln() - 0.5 * w * (x - e).powi(2) / (x * e)
}

pub fn ig_pdf(p: &IGParams, x: f64) -> f64 {
    ig_ln_pdf(p, x).exp()
}

/// `E[X^r] = √(2ω/π) e^ω η^r K_{r−1/2}(ω)` for integer `r ≥ 0`.
pub fn ig_moment(p: &IGParams, r: u32) -> Result<f64> {
    // K_{r−1/2} = K_{|r−1/2|}; half-integer index p + 1/2 with p = r−1 (r ≥ 1) or 0.
    let idx = r.saturating_sub(1);
    let ln = 0.5 * (2.0 * p.omega / PI).ln()
        + p.omega
        + r as f64 * p.eta.ln()
        + ln_bessel_k_half(idx, p.omega)?;
    Ok(ln.exp())
}

/// Deterministic core of the Michael–Schucany–Haas generator: maps a
/// standard normal `t` and a uniform `u` to an IG variate.
pub fn ig_transform(p: &IGParams, t: f64, u: f64) -> f64 {
    let (w, e) = (p.omega, p.eta);
    let q = t * t / (2.0 * w);
    // Smaller root of the quadratic, written without cancellation:
    // η(1 + q − √(2q + q²)) = η / (1 + q + √(2q + q²)).
    let v = e / (1.0 + q + (2.0 * q + q * q).sqrt());
    if u <= e / (e + v) {
        v
    } else {
        e * e / v
    }
}

pub fn sample_ig(p: &IGParams, rng: &mut RngState) -> f64 {
    let t: f64 = rng.sample(StandardNormal);
    let u: f64 = rng.random();
    ig_transform(p, t, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{cdf_at_sorted, golden_section_min, integrate_semi_infinite, ks_distance};

    #[test]
    fn rejects_bad_params() {
        assert!(IGParams::new(0.0, 1.0).is_err());
        assert!(IGParams::new(1.0, -1.0).is_err());
        assert!(IGParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn support() {
        let p = IGParams::new(1.0, 1.0).unwrap();
        assert_eq!(ig_pdf(&p, 0.0), 0.0);
        assert_eq!(ig_pdf(&p, -1.0), 0.0);
    }

    #[test]
    fn mode_matches_stationary_point() {
        let p = IGParams::new(1.0, 1.0).unwrap();
        let x = golden_section_min(|x| -ig_ln_pdf(&p, x), 0.01, 5.0, 1e-10);
        // Root of −3x − ωx²/η + ωη = 0.
        let analytic = p.eta * (-3.0 + (9.0 + 4.0 * p.omega * p.omega).sqrt()) / (2.0 * p.omega);
        assert!((x - analytic).abs() < 1e-6, "{x} vs {analytic}");
    }

    #[test]
    fn normalization_mean_variance() {
        let p = IGParams::new(2.0, 3.0).unwrap();
        let total = integrate_semi_infinite(|x| ig_pdf(&p, x), 3.0, 1e-10).value;
        assert!((total - 1.0).abs() < 1e-8);
        let mean = integrate_semi_infinite(|x| x * ig_pdf(&p, x), 3.0, 1e-10).value;
        assert!((mean - 3.0).abs() < 1e-4);
        let p = IGParams::new(4.0, 1.0).unwrap();
        let var = integrate_semi_infinite(|x| (x - 1.0).powi(2) * ig_pdf(&p, x), 1.0, 1e-10).value;
        assert!((var - 0.25).abs() < 1e-4);
    }

    #[test]
    fn closed_form_moments() {
        let p = IGParams::new(2.0, 3.0).unwrap();
        assert!((ig_moment(&p, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((ig_moment(&p, 1).unwrap() - 3.0).abs() < 1e-12);
        let m2 = ig_moment(&p, 2).unwrap();
        assert!((m2 - (p.variance() + 9.0)).abs() < 1e-10);
    }

    #[test]
    fn transform_forced_branches() {
        let p = IGParams::new(3.0, 1.0).unwrap();
        // t = 0 collapses v to η; both branches return η for η = 1.
        assert_eq!(ig_transform(&p, 0.0, 0.3), 1.0);
        assert_eq!(ig_transform(&p, 0.0, 0.7), 1.0);
        let p = IGParams::new(3.0, 2.0).unwrap();
        let v = ig_transform(&p, 1.5, 0.0);
        assert!(v < 2.0);
        assert!((ig_transform(&p, 1.5, 1.0) - 4.0 / v).abs() < 1e-12);
    }

    #[test]
    fn sampler_matches_cdf() {
        let p = IGParams::new(10.0, 1.0).unwrap();
        let mut rng = RngState::new(11);
        let mut xs: Vec<f64> = (0..20_000).map(|_| sample_ig(&p, &mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        let cdf = cdf_at_sorted(|x| ig_pdf(&p, x), 0.0, &xs);
        assert!(ks_distance(&xs, &cdf) < 0.015);
    }

    #[test]
    fn sampler_moments() {
        let p = IGParams::new(2.0, 1.5).unwrap();
        let mut rng = RngState::new(5);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| sample_ig(&p, &mut rng)).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n as f64;
        assert!((m / p.mean() - 1.0).abs() < 0.01);
        assert!((v / p.variance() - 1.0).abs() < 0.03);
    }
}
