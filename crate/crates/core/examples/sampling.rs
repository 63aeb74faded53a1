//! Draw 𝒢ᴾᴴ observations and compare sample moments with the closed forms.

use polsar_gh::distributions::{gih_moment, GphSampler, RngState};
use polsar_gh::fixtures::sigma_forest;
use polsar_gh::hermitian::CHANNELS;
use polsar_gh::GHParams;

fn main() -> polsar_gh::Result<()> {
    let params = GHParams::new(10.0, sigma_forest(), 3)?;
    let sampler = GphSampler::new(&params)?;
    let mut rng = RngState::new(42);
    let n = 50_000;
    let xs: Vec<_> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    for (ch, name) in CHANNELS.iter().enumerate() {
        let m1 = xs.iter().map(|z| z.d[ch]).sum::<f64>() / n as f64;
        let m2 = xs.iter().map(|z| z.d[ch].powi(2)).sum::<f64>() / n as f64;
        let e1 = gih_moment(params.omega, params.sigma.d[ch], params.looks, 1)?;
        let e2 = gih_moment(params.omega, params.sigma.d[ch], params.looks, 2)?;
        println!("{name}: E[Z] {m1:.4e} (exact {e1:.4e}), E[Z²] {m2:.4e} (exact {e2:.4e})");
    }
    Ok(())
}
