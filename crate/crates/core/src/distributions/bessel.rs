//! Modified Bessel function of the second kind.
//!
//! Half-integer orders use the terminating series
//! `K_{p+1/2}(ν) = √(π/(2ν)) e^{−ν} Σ_{k=0}^{p} (p+k)! / (k! (p−k)! (2ν)^k)`,
//! summed in log space so that large orders at small arguments do not
//! overflow before the final exponentiation. General orders fall back to
//! quadrature of `K_ν(z) = ∫₀^∞ e^{−z cosh t} cosh(νt) dt`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::integrate_semi_infinite;

/// `ln K_{p+1/2}(ν)`.
pub fn ln_bessel_k_half(p: u32, nu: f64) -> Result<f64> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel K argument must be finite and > 0, got {nu}"
        )));
    }
    // ln a_k with a_0 = 1 and a_{k+1}/a_k = (p+k+1)(p−k) / ((k+1)·2ν).
    let mut ln_terms = Vec::with_capacity(p as usize + 1);
    let mut ln_a = 0.0;
    ln_terms.push(ln_a);
    let pf = p as f64;
    let ln_2nu = (2.0 * nu).ln();
    for k in 0..p {
        let kf = k as f64;
        ln_a += ((pf + kf + 1.0) * (pf - kf)).ln() - (kf + 1.0).ln() - ln_2nu;
        ln_terms.push(ln_a);
    }
    let max = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = ln_terms.iter().map(|t| (t - max).exp()).sum();
    Ok(0.5 * (PI / (2.0 * nu)).ln() - nu + max + sum.ln())
}

/// `K_{p+1/2}(ν)`. Returns `+∞` when the value exceeds the `f64` range
/// (large orders at tiny arguments); use [`ln_bessel_k_half`] there.
pub fn bessel_k_half(p: u32, nu: f64) -> Result<f64> {
    Ok(ln_bessel_k_half(p, nu)?.exp())
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln K_ν(z)` for any real order. Half-integer orders take the closed form;
/// other orders are integrated numerically.
pub fn ln_bessel_k(order: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel K argument must be finite and > 0, got {z}"
        )));
    }
    if !order.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel K order must be finite, got {order}"
        )));
    }
    let nu = order.abs();
    let twice = 2.0 * nu;
    if (twice - twice.round()).abs() < 1e-12 && (twice.round() as i64) % 2 == 1 {
        return ln_bessel_k_half(((twice.round() as i64 - 1) / 2) as u32, z);
    }
    // e^{z} K_ν(z) = ∫ exp(g(t)) dt with g(t) = −z(cosh t − 1) + ln cosh(νt).
    let g = |t: f64| -z * (t.cosh() - 1.0) + ln_cosh(nu * t);
    // Locate the peak of g to rescale the integrand and pick a scale.
    let mut t_peak = 0.0;
    let mut g_peak = g(0.0);
    let mut t = 1e-3;
    while t < 50.0 {
        let v = g(t);
        if v > g_peak {
            g_peak = v;
            t_peak = t;
        }
        t *= 1.05;
    }
    let scale = t_peak.max(1.0);
    let q = integrate_semi_infinite(|t| (g(t) - g_peak).exp(), scale, 1e-13);
    Ok(q.value.ln() + g_peak - z)
}

/// `K_ν(z)` for any real order.
pub fn bessel_k(order: f64, z: f64) -> Result<f64> {
    Ok(ln_bessel_k(order, z)?.exp())
}
