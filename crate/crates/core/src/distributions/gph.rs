use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use super::bessel::ln_bessel_k_half;
use crate::error::{Error, Result};
use crate::hermitian::{trace_product, GHParams, HermitianCov3};

fn check_looks(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::Parameter(format!(
            "the polarimetric density needs at least 3 looks, got {n}"
        )));
    }
    Ok(())
}

fn support_det(z: &HermitianCov3) -> Result<f64> {
    let det = z.det();
    if !(det > 0.0) || !z.d.iter().all(|d| *d > 0.0) {
        return Err(Error::Support(format!(
            "observation determinant {det:e} is not positive"
        )));
    }
    Ok(det)
}

fn sigma_inverse(sigma: &HermitianCov3) -> Result<(HermitianCov3, f64)> {
    let inv = sigma
        .inverse()
        .map_err(|e| Error::Parameter(format!("covariance: {e}")))?;
    Ok((inv, sigma.det()))
}

/// `ln Γ(n) + ln Γ(n−1) + ln Γ(n−2)`.
fn ln_multigamma(n: f64) -> f64 {
    ln_gamma(n) + ln_gamma(n - 1.0) + ln_gamma(n - 2.0)
}

/// Log density of the `n`-look scaled complex Wishart matrix
/// `Y = (1/n) Σ T Tᴴ`, `T ~ CN(0, Σ)`:
/// `n^{3n} |y|^{n−3} exp(−n tr(Σ⁻¹y)) / (π³ Γ(n)Γ(n−1)Γ(n−2) |Σ|ⁿ)`.
pub fn wishart_mean_log_pdf(sigma: &HermitianCov3, n: u32, y: &HermitianCov3) -> Result<f64> {
    check_looks(n)?;
    let det_y = support_det(y)?;
    let (inv, det_s) = sigma_inverse(sigma)?;
    let nf = n as f64;
    let t = trace_product(&inv, y)?;
    Ok(3.0 * nf * nf.ln() + (nf - 3.0) * det_y.ln()
        - nf * t
        - 3.0 * PI.ln()
        - ln_multigamma(nf)
        - nf * det_s.ln())
}

/// Log density of `Z` given backscatter `X = x`: `−9 ln x + ln f_Y(z/x)`.
pub fn gph_conditional_log_pdf(
    sigma: &HermitianCov3,
    n: u32,
    x: f64,
    z: &HermitianCov3,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("backscatter must be > 0, got {x}")));
    }
    Ok(-9.0 * x.ln() + wishart_mean_log_pdf(sigma, n, &z.scale(1.0 / x))?)
}

/// Log density of the polarimetric 𝒢ᴾᴴ law (IG(ω, 1) backscatter times
/// `n`-look Wishart speckle), with `T = tr(Σ⁻¹z)`:
///
/// `3n ln n + (n−3) ln|z| − 3 ln π − Σ ln Γ(n−k) − n ln|Σ| + ½ ln(2/π) + ω
///  + (3n/2 + 3/4) ln ω − (3n/2 + 1/4) ln(2nT + ω) + ln K_{3n+1/2}(√(ω(2nT + ω)))`.
pub fn gph_log_pdf(p: &GHParams, z: &HermitianCov3) -> Result<f64> {
    check_looks(p.looks)?;
    let det_z = support_det(z)?;
    let (inv, det_s) = sigma_inverse(&p.sigma)?;
    let nf = p.looks as f64;
    let w = p.omega;
    let t = trace_product(&inv, z)?;
    let s = 2.0 * nf * t + w;
    Ok(3.0 * nf * nf.ln() + (nf - 3.0) * det_z.ln()
        - 3.0 * PI.ln()
        - ln_multigamma(nf)
        - nf * det_s.ln()
        + 0.5 * (2.0 / PI).ln()
        + w
        + (1.5 * nf + 0.75) * w.ln()
        - (1.5 * nf + 0.25) * s.ln()
        + ln_bessel_k_half(3 * p.looks, (w * s).sqrt())?)
}

pub fn gph_pdf(p: &GHParams, z: &HermitianCov3) -> Result<f64> {
    Ok(gph_log_pdf(p, z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{
        ig_ln_pdf, sample_wishart_mean, ComplexGaussianSampler, IGParams, RngState,
    };
    use crate::fixtures::sigma_forest;
    use crate::hermitian::Complex;
    use crate::numeric::integrate_semi_infinite;

    fn random_points(sigma: &HermitianCov3, n: u32, count: usize, seed: u64) -> Vec<HermitianCov3> {
        let sampler = ComplexGaussianSampler::new(sigma).unwrap();
        let mut rng = RngState::new(seed);
        (0..count)
            .map(|i| sample_wishart_mean(&sampler, n, &mut rng).scale(0.5 + 0.4 * i as f64))
            .collect()
    }

    #[test]
    fn conditional_identity() {
        let sigma = sigma_forest();
        for z in random_points(&sigma, 3, 4, 1) {
            for x in [0.3, 1.0, 2.5] {
                let a = gph_conditional_log_pdf(&sigma, 3, x, &z).unwrap();
                let b = -9.0 * x.ln() + wishart_mean_log_pdf(&sigma, 3, &z.scale(1.0 / x)).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn wishart_identity_case() {
        // Σ = I, n = 3, y = I: 3³ⁿ e^{−9} / (π³ Γ(3)Γ(2)Γ(1)) in log.
        let v = wishart_mean_log_pdf(&HermitianCov3::identity(), 3, &HermitianCov3::identity())
            .unwrap();
        let want = 9.0 * 3f64.ln() - 9.0 - 3.0 * PI.ln() - 2f64.ln();
        assert!((v - want).abs() < 1e-12);
    }

    #[test]
    fn mixture_consistency() {
        let sigma = sigma_forest();
        let p = GHParams::new(10.0, sigma, 3).unwrap();
        let ig = IGParams::new(10.0, 1.0).unwrap();
        for z in random_points(&sigma, 3, 5, 2) {
            let closed = gph_log_pdf(&p, &z).unwrap();
            let ratio = integrate_semi_infinite(
                |x| {
                    (gph_conditional_log_pdf(&sigma, 3, x, &z).unwrap() + ig_ln_pdf(&ig, x)
                        - closed)
                        .exp()
                },
                1.0,
                1e-10,
            )
            .value;
            assert!((ratio - 1.0).abs() < 1e-6, "ratio {ratio}");
        }
    }

    #[test]
    fn large_intensities_stay_finite() {
        let sigma = crate::fixtures::sigma_urban();
        let p = GHParams::new(0.43, sigma, 3).unwrap();
        for z in random_points(&sigma, 3, 3, 3) {
            assert!(gph_log_pdf(&p, &z).unwrap().is_finite());
        }
        let p = GHParams::new(20.0, sigma, 16).unwrap();
        assert!(gph_log_pdf(&p, &sigma).unwrap().is_finite());
    }

    #[test]
    fn errors() {
        let p = GHParams::new(1.0, HermitianCov3::identity(), 3).unwrap();
        let singular = HermitianCov3 {
            d: [1.0, 1.0, 1.0],
            o: [
                Complex::new(1.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(1.0, 0.0),
            ],
        };
        assert!(matches!(gph_log_pdf(&p, &singular), Err(Error::Support(_))));
        let p2 = GHParams { looks: 2, ..p };
        assert!(matches!(
            gph_log_pdf(&p2, &HermitianCov3::identity()),
            Err(Error::Parameter(_))
        ));
        let p3 = GHParams {
            sigma: singular,
            ..p
        };
        assert!(matches!(
            gph_log_pdf(&p3, &HermitianCov3::identity()),
            Err(Error::Parameter(_))
        ));
    }
}
