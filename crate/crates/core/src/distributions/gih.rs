use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use super::bessel::ln_bessel_k_half;
use crate::error::{Error, Result};

fn check(omega: f64, eta: f64, n: u32) -> Result<()> {
    if !(omega > 0.0 && eta > 0.0) || n < 1 {
        return Err(Error::Parameter(format!(
            "intensity law needs omega>0, eta>0, n>=1; got {omega}, {eta}, {n}"
        )));
    }
    Ok(())
}

/// Log density of a single-channel intensity under IG backscatter and
/// `n`-look Gamma speckle, with mean `eta`.
pub fn gih_ln_pdf(omega: f64, eta: f64, n: u32, z: f64) -> Result<f64> {
    check(omega, eta, n)?;
    if !(z > 0.0) {
        return Ok(f64::NEG_INFINITY);
    }
    let nf = n as f64;
    let s = omega * eta + 2.0 * nf * z;
    Ok(nf * nf.ln() - ln_gamma(nf)
        + 0.5 * (2.0 * omega * eta / PI).ln()
        + omega
        + (0.5 * nf + 0.25) * (omega / (eta * s)).ln()
        + (nf - 1.0) * z.ln()
        + ln_bessel_k_half(n, (omega / eta * s).sqrt())?)
}

pub fn gih_pdf(omega: f64, eta: f64, n: u32, z: f64) -> Result<f64> {
    Ok(gih_ln_pdf(omega, eta, n, z)?.exp())
}

/// `E[Z^r] = (η/n)^r e^ω √(2ω/π) K_{r−1/2}(ω) Γ(n+r)/Γ(n)`.
pub fn gih_moment(omega: f64, eta: f64, n: u32, r: u32) -> Result<f64> {
    check(omega, eta, n)?;
    let (nf, rf) = (n as f64, r as f64);
    let ln = rf * (eta / nf).ln()
        + omega
        + 0.5 * (2.0 * omega / PI).ln()
        + ln_bessel_k_half(r.saturating_sub(1), omega)?
        + ln_gamma(nf + rf)
        - ln_gamma(nf);
    Ok(ln.exp())
}
