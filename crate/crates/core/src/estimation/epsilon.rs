use crate::distributions::gih_pdf;
use crate::error::{Error, Result};
use crate::hermitian::HermitianCov3;
use crate::numeric::{golden_section_min, quantile_sorted};

use super::moments::OMEGA_MAX;

const MIN_SAMPLES: usize = 100;
const MAX_BINS: usize = 512;

/// Density-normalized histogram of one intensity channel, evaluated at bin
/// centres. Bins use the Freedman–Diaconis width over `[min, q₀.₉₉₅]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelHistogram {
    pub centres: Vec<f64>,
    pub density: Vec<f64>,
}

impl ChannelHistogram {
    pub fn new(values: &[f64]) -> Result<Self> {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        if n < 2 {
            return Err(Error::Estimation(
                "histogram needs at least 2 samples".into(),
            ));
        }
        let lo = v[0];
        let hi = quantile_sorted(&v, 0.995);
        let iqr = quantile_sorted(&v, 0.75) - quantile_sorted(&v, 0.25);
        let fd = 2.0 * iqr / (n as f64).cbrt();
        let range = hi - lo;
        if !(range > 0.0) {
            return Err(Error::Estimation("histogram range is empty".into()));
        }
        let bins = if fd > 0.0 {
            ((range / fd).ceil() as usize).clamp(1, MAX_BINS)
        } else {
            MAX_BINS
        };
        let width = range / bins as f64;
        let mut counts = vec![0usize; bins];
        for &x in v.iter().take_while(|&&x| x <= hi) {
            let b = (((x - lo) / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let norm = 1.0 / (n as f64 * width);
        Ok(Self {
            centres: (0..bins).map(|b| lo + (b as f64 + 0.5) * width).collect(),
            density: counts.iter().map(|&c| c as f64 * norm).collect(),
        })
    }
}

/// `ε(ω) = Σᵢ Σ_b (f_{Zᵢ}(ω, σ̂ᵢ²; c_b) − h_i(c_b))²`.
pub fn epsilon_objective(omega: f64, hists: &[ChannelHistogram], sigma2: &[f64], n: u32) -> f64 {
    hists
        .iter()
        .zip(sigma2)
        .map(|(h, &s2)| {
            h.centres
                .iter()
                .zip(&h.density)
                .map(|(&c, &d)| {
                    let f = gih_pdf(omega, s2, n, c).unwrap_or(f64::NAN);
                    (f - d).powi(2)
                })
                .sum::<f64>()
        })
        .sum()
}

/// Roughness minimizing ε: coarse search over `0.05·1.3ᵏ ≤ 100`, refined by
/// golden-section search to relative tolerance 1e−3.
pub fn minimize_epsilon(samples: &[HermitianCov3], sigma2: [f64; 3], n: u32) -> Result<f64> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::Estimation(format!(
            "epsilon minimization needs at least {MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let hists: Vec<ChannelHistogram> = (0..3)
        .map(|ch| ChannelHistogram::new(&samples.iter().map(|s| s.d[ch]).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let eps = |w: f64| epsilon_objective(w, &hists, &sigma2, n);
    let mut grid = Vec::new();
    let mut w = 0.05;
    while w < OMEGA_MAX {
        grid.push(w);
        w *= 1.3;
    }
    grid.push(OMEGA_MAX);
    let values: Vec<f64> = grid.iter().map(|&w| eps(w)).collect();
    let best = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or_else(|| {
            Error::Estimation("epsilon objective is not finite on the search grid".into())
        })?;
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let refined = golden_section_min(eps, lo, hi, 1e-3);
    Ok(if eps(refined) <= values[best] {
        refined
    } else {
        grid[best]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{GphSampler, RngState};
    use crate::estimation::{estimate_omega_combined, CombineMethod};
    use crate::fixtures::sigma_forest;
    use crate::hermitian::GHParams;

    #[test]
    fn histogram_integrates_to_covered_mass() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
        let h = ChannelHistogram::new(&xs).unwrap();
        let width = h.centres[1] - h.centres[0];
        let mass: f64 = h.density.iter().sum::<f64>() * width;
        assert!((mass - 0.995).abs() < 0.01, "{mass}");
        assert!(h.density.len() <= MAX_BINS);
    }

    #[test]
    fn too_few_samples() {
        let xs = vec![HermitianCov3::identity(); 50];
        assert!(matches!(
            minimize_epsilon(&xs, [1.0; 3], 3),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn recovers_forest_roughness() {
        let g = GphSampler::new(&GHParams::new(10.0, sigma_forest(), 3).unwrap()).unwrap();
        let mut rng = RngState::new(17);
        let xs: Vec<HermitianCov3> = (0..10_000).map(|_| g.sample(&mut rng)).collect();
        let fit = estimate_omega_combined(&xs, 3, CombineMethod::EpsilonMinimization).unwrap();
        assert!(
            (fit.omega_combined / 10.0 - 1.0).abs() < 0.15,
            "{}",
            fit.omega_combined
        );
        let sigma2 = fit.sigma.d;
        let hists: Vec<ChannelHistogram> = (0..3)
            .map(|ch| {
                ChannelHistogram::new(&xs.iter().map(|s| s.d[ch]).collect::<Vec<_>>()).unwrap()
            })
            .collect();
        let at = epsilon_objective(fit.omega_combined, &hists, &sigma2, 3);
        let mut w = 0.05;
        while w < OMEGA_MAX {
            assert!(at <= epsilon_objective(w, &hists, &sigma2, 3) * (1.0 + 1e-9));
            w *= 1.3;
        }
    }
}
