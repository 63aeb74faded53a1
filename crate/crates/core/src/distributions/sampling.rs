use nalgebra::{Matrix6, SymmetricEigen, Vector6};
use rand::Rng;
use rand_distr::StandardNormal;

use super::ig::{sample_ig, IGParams};
use super::rng::RngState;
use crate::error::{Error, Result};
use crate::hermitian::{Complex, GHParams, HermitianCov3, ScatteringVector};

/// Zero-mean circular complex Gaussian generator for a fixed covariance.
///
/// The 6×6 real covariance of `[Re T₀, Im T₀, Re T₁, Im T₁, Re T₂, Im T₂]`
/// has diagonal blocks `(σ_k²/2) I` and off-diagonal blocks
/// `(σ_kσ_ℓ/2) [[a, −b], [b, a]]` with `a + jb = Σ_kℓ / (σ_kσ_ℓ)`. It is
/// factored once as `Φ Λ^{1/2}` and applied to i.i.d. standard normals.
#[derive(Debug, Clone)]
pub struct ComplexGaussianSampler {
    transform: Matrix6<f64>,
}

impl ComplexGaussianSampler {
    pub fn new(sigma: &HermitianCov3) -> Result<Self> {
        sigma.validate()?;
        let full = sigma.to_full();
        let mut cov = Matrix6::<f64>::zeros();
        for k in 0..3 {
            for l in 0..3 {
                let s = full[k][l];
                cov[(2 * k, 2 * l)] = 0.5 * s.re;
                cov[(2 * k, 2 * l + 1)] = -0.5 * s.im;
                cov[(2 * k + 1, 2 * l)] = 0.5 * s.im;
                cov[(2 * k + 1, 2 * l + 1)] = 0.5 * s.re;
            }
        }
        let eig = SymmetricEigen::new(cov);
        let max = eig.eigenvalues.max();
        let min = eig.eigenvalues.min();
        if !(min > 1e-13 * max) {
            return Err(Error::Parameter(format!(
                "covariance is not positive definite (eigenvalue {min:e})"
            )));
        }
        let sqrt_l = Matrix6::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
        Ok(Self {
            transform: eig.eigenvectors * sqrt_l,
        })
    }

    pub fn sample(&self, rng: &mut RngState) -> ScatteringVector {
        let w = Vector6::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let y = self.transform * w;
        ScatteringVector::new(
            Complex::new(y[0], y[1]),
            Complex::new(y[2], y[3]),
            Complex::new(y[4], y[5]),
        )
    }
}

pub fn sample_complex_gaussian(
    sigma: &HermitianCov3,
    rng: &mut RngState,
) -> Result<ScatteringVector> {
    Ok(ComplexGaussianSampler::new(sigma)?.sample(rng))
}

/// `(1/n) Σ_{k=1}^{n} T(k) T(k)ᴴ`.
pub fn sample_wishart_mean(
    sampler: &ComplexGaussianSampler,
    n: u32,
    rng: &mut RngState,
) -> HermitianCov3 {
    let mut acc = HermitianCov3 {
        d: [0.0; 3],
        o: [Complex::new(0.0, 0.0); 3],
    };
    for _ in 0..n {
        acc = acc.add(&sampler.sample(rng).outer());
    }
    acc.scale(1.0 / n as f64)
}

/// Reusable 𝒢ᴾᴴ generator: `Z = X · Y` with `X ~ IG(ω, 1)` and `Y` the
/// `n`-look Wishart mean.
#[derive(Debug, Clone)]
pub struct GphSampler {
    gauss: ComplexGaussianSampler,
    backscatter: IGParams,
    looks: u32,
}

impl GphSampler {
    pub fn new(p: &GHParams) -> Result<Self> {
        Ok(Self {
            gauss: ComplexGaussianSampler::new(&p.sigma)?,
            backscatter: IGParams::unit_mean(p.omega)?,
            looks: p.looks,
        })
    }

    pub fn sample(&self, rng: &mut RngState) -> HermitianCov3 {
        let x = sample_ig(&self.backscatter, rng);
        sample_wishart_mean(&self.gauss, self.looks, rng).scale(x)
    }
}

pub fn sample_gph(p: &GHParams, rng: &mut RngState) -> Result<HermitianCov3> {
    Ok(GphSampler::new(p)?.sample(rng))
}
