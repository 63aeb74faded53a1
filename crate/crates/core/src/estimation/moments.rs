use serde::{Deserialize, Serialize};
use serde_json::json;

use super::epsilon::minimize_epsilon;
use crate::error::{Error, Result};
use crate::hermitian::{Complex, HermitianCov3, OFFDIAG_INDEX};

/// Upper end of the roughness range used wherever a total order on ω̂ is
/// needed; invalid estimates map here.
pub const OMEGA_MAX: f64 = 100.0;

/// Correlation magnitudes above this are flagged as implausible.
pub const CORRELATION_FLAG: f64 = 1.05;

/// First and second sample moments of one intensity channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelMoments {
    pub m1: f64,
    pub m2: f64,
    pub count: usize,
}

impl ChannelMoments {
    pub fn new(m1: f64, m2: f64, count: usize) -> Result<Self> {
        if !(m1 > 0.0) || !m1.is_finite() {
            return Err(Error::Estimation(format!(
                "degenerate sample: mean intensity {m1}"
            )));
        }
        if count < 2 {
            return Err(Error::Estimation(format!(
                "need at least 2 samples, got {count}"
            )));
        }
        if !(m2 >= m1 * m1 * (1.0 - 1e-12)) || !m2.is_finite() {
            return Err(Error::Estimation(format!(
                "second moment {m2} below squared mean {}",
                m1 * m1
            )));
        }
        Ok(Self { m1, m2, count })
    }

    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        let n = xs.len();
        if n == 0 {
            return Err(Error::Estimation("empty sample".into()));
        }
        let m1 = xs.iter().sum::<f64>() / n as f64;
        let m2 = xs.iter().map(|x| x * x).sum::<f64>() / n as f64;
        Self::new(m1, m2, n)
    }

    /// Moments of channel `ch` over a set of observations.
    pub fn of_channel(samples: &[HermitianCov3], ch: usize) -> Result<Self> {
        let xs: Vec<f64> = samples.iter().map(|s| s.d[ch]).collect();
        Self::from_samples(&xs)
    }
}

/// A roughness estimate, or the marker for data less dispersed than pure
/// speckle (no finite ω explains it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaEstimate {
    Valid(f64),
    Invalid,
}

impl OmegaEstimate {
    pub fn value(&self) -> Option<f64> {
        match *self {
            OmegaEstimate::Valid(w) => Some(w),
            OmegaEstimate::Invalid => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, OmegaEstimate::Valid(_))
    }

    /// Value clamped to `OMEGA_MAX`, with invalid estimates mapped to it.
    pub fn or_sentinel(&self) -> f64 {
        self.value().map_or(OMEGA_MAX, |w| w.min(OMEGA_MAX))
    }
}

/// `ω̂ = 1 / ((n/(n+1)) m₂/m₁² − 1)`, invalid when the denominator is ≤ 0.
pub fn estimate_omega_channel(m: &ChannelMoments, n: u32) -> Result<OmegaEstimate> {
    if !(m.m1 > 0.0) {
        return Err(Error::Estimation(format!(
            "degenerate sample: mean intensity {}",
            m.m1
        )));
    }
    if n < 1 {
        return Err(Error::Parameter("looks must be >= 1".into()));
    }
    let nf = n as f64;
    let den = nf / (nf + 1.0) * m.m2 / (m.m1 * m.m1) - 1.0;
    Ok(if den > 0.0 && (1.0 / den).is_finite() {
        OmegaEstimate::Valid(1.0 / den)
    } else {
        OmegaEstimate::Invalid
    })
}

/// `σ̂² = m₁`.
pub fn estimate_sigma_channel(m: &ChannelMoments) -> Result<f64> {
    if !(m.m1 > 0.0) {
        return Err(Error::Estimation(format!(
            "degenerate sample: mean intensity {}",
            m.m1
        )));
    }
    Ok(m.m1)
}

/// `â + jb̂ = Ê[Z_i Z_ℓ*] / (σ̂_i σ̂_ℓ)` for the pairs (HH,HV), (HH,VV),
/// (HV,VV). `sigma2_hat` holds the channel variances σ̂ᵢ².
pub fn estimate_offdiag(samples: &[HermitianCov3], sigma2_hat: [f64; 3]) -> Result<[Complex; 3]> {
    if samples.len() < 2 {
        return Err(Error::Estimation(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    if !sigma2_hat.iter().all(|s| *s > 0.0 && s.is_finite()) {
        return Err(Error::Estimation(format!(
            "degenerate channel variances {sigma2_hat:?}"
        )));
    }
    let n = samples.len() as f64;
    Ok(std::array::from_fn(|k| {
        let (i, j) = OFFDIAG_INDEX[k];
        let mean: Complex = samples.iter().map(|s| s.o[k]).sum::<Complex>() / n;
        mean / (sigma2_hat[i] * sigma2_hat[j]).sqrt()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombineMethod {
    /// Arithmetic mean of the valid per-channel estimates.
    #[default]
    MeanOfChannels,
    /// Single ω minimizing the squared distance between the model densities
    /// and per-channel histograms.
    EpsilonMinimization,
}

impl CombineMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CombineMethod::MeanOfChannels => "mean-of-channels",
            CombineMethod::EpsilonMinimization => "epsilon-minimization",
        }
    }
}

/// Fitted 𝒢ᴾᴴ parameters of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub omega_per_channel: [OmegaEstimate; 3],
    pub omega_combined: f64,
    /// Estimated covariance: σ̂ᵢ² on the diagonal, `Ê[Z_i Z_ℓ*]` off it.
    pub sigma: HermitianCov3,
    /// Complex correlation coefficients `â + jb̂`.
    pub correlation: [Complex; 3],
    pub method: CombineMethod,
    pub count: usize,
}

impl FitResult {
    /// Pairs whose correlation magnitude exceeds [`CORRELATION_FLAG`].
    pub fn correlation_flags(&self) -> [bool; 3] {
        self.correlation.map(|c| c.norm() > CORRELATION_FLAG)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let [hh, hv, vv] = self.omega_per_channel.map(|w| w.value());
        json!({
            "omega": self.omega_combined,
            "omega_hh": hh,
            "omega_hv": hv,
            "omega_vv": vv,
            "sigma": self.sigma.to_array9(),
            "method": self.method.as_str(),
        })
    }
}

pub fn estimate_omega_combined(
    samples: &[HermitianCov3],
    n: u32,
    method: CombineMethod,
) -> Result<FitResult> {
    let moments: Vec<ChannelMoments> = (0..3)
        .map(|ch| ChannelMoments::of_channel(samples, ch))
        .collect::<Result<_>>()?;
    let mut per_channel = [OmegaEstimate::Invalid; 3];
    let mut sigma2 = [0.0; 3];
    for ch in 0..3 {
        per_channel[ch] = estimate_omega_channel(&moments[ch], n)?;
        sigma2[ch] = estimate_sigma_channel(&moments[ch])?;
    }
    let correlation = estimate_offdiag(samples, sigma2)?;
    let valid: Vec<f64> = per_channel.iter().filter_map(|w| w.value()).collect();
    let omega_combined = match method {
        CombineMethod::MeanOfChannels => {
            if valid.is_empty() {
                return Err(Error::Estimation(
                    "all three channels are less dispersed than pure speckle".into(),
                ));
            }
            valid.iter().sum::<f64>() / valid.len() as f64
        }
        CombineMethod::EpsilonMinimization => minimize_epsilon(samples, sigma2, n)?,
    };
    let sigma = HermitianCov3 {
        d: sigma2,
        o: std::array::from_fn(|k| {
            let (i, j) = OFFDIAG_INDEX[k];
            correlation[k] * (sigma2[i] * sigma2[j]).sqrt()
        }),
    };
    Ok(FitResult {
        omega_per_channel: per_channel,
        omega_combined,
        sigma,
        correlation,
        method,
        count: samples.len(),
    })
}
