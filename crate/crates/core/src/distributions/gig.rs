use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::bessel::ln_bessel_k;
use crate::error::{Error, Result};

/// Generalized Inverse Gaussian law with density
/// `(λ/γ)^{α/2} / (2 K_α(√(λγ))) · x^{α−1} exp(−(λx + γ/x)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GIGParams {
    pub alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl GIGParams {
    /// Admissible region: `γ>0, λ≥0` for `α<0`; `γ>0, λ>0` for `α=0`;
    /// `γ≥0, λ>0` for `α>0`.
    pub fn new(alpha: f64, gamma: f64, lambda: f64) -> Result<Self> {
        let finite = alpha.is_finite() && gamma.is_finite() && lambda.is_finite();
        let ok = finite
            && if alpha < 0.0 {
                gamma > 0.0 && lambda >= 0.0
            } else if alpha == 0.0 {
                gamma > 0.0 && lambda > 0.0
            } else {
                gamma >= 0.0 && lambda > 0.0
            };
        if !ok {
            return Err(Error::Domain(format!(
                "GIG parameters outside admissible region: alpha={alpha}, gamma={gamma}, lambda={lambda}"
            )));
        }
        Ok(Self {
            alpha,
            gamma,
            lambda,
        })
    }
}

pub fn gig_ln_pdf(p: &GIGParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Ok(f64::NEG_INFINITY);
    }
    let GIGParams {
        alpha: a,
        gamma: g,
        lambda: l,
    } = *p;
    let kernel = (a - 1.0) * x.ln();
    let ln_norm = if g == 0.0 {
        // Gamma(α, rate λ/2).
        a * (0.5 * l).ln() - ln_gamma(a)
    } else if l == 0.0 {
        // Inverse gamma(−α, scale γ/2).
        -a * (0.5 * g).ln() - ln_gamma(-a)
    } else {
        0.5 * a * (l / g).ln() - std::f64::consts::LN_2 - ln_bessel_k(a, (l * g).sqrt())?
    };
    Ok(ln_norm + kernel - 0.5 * (l * x + g / x))
}

pub fn gig_pdf(p: &GIGParams, x: f64) -> Result<f64> {
    Ok(gig_ln_pdf(p, x)?.exp())
}
