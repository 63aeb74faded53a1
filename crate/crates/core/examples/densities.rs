//! Bessel K of half-integer order and the single-channel intensity laws.

use polsar_gh::distributions::{bessel_k_half, gih_moment, gih_pdf, ig_pdf, IGParams};
use polsar_gh::numeric::integrate_semi_infinite;

fn main() -> polsar_gh::Result<()> {
    println!("K_(p+1/2)(z):");
    for p in 0..4 {
        let row: Vec<String> = [0.1, 1.0, 5.0, 20.0]
            .iter()
            .map(|&z| bessel_k_half(p, z).map(|k| format!("{k:12.5e}")))
            .collect::<polsar_gh::Result<_>>()?;
        println!("  p={p}: {}", row.join(" "));
    }

    let ig = IGParams::unit_mean(4.0)?;
    let mass = integrate_semi_infinite(|x| ig_pdf(&ig, x), 1.0, 1e-10).value;
    println!(
        "IG(ω=4, η=1): mean {}, variance {}, mass {mass:.12}",
        ig.mean(),
        ig.variance()
    );

    let (omega, eta, n) = (10.0, 3.6e5, 3);
    let mass = integrate_semi_infinite(|z| gih_pdf(omega, eta, n, z).unwrap(), eta, 1e-10).value;
    println!(
        "intensity law (ω={omega}, η={eta:e}, n={n}): mass {mass:.12}, E[Z] {:.1}, E[Z²] {:.4e}",
        gih_moment(omega, eta, n, 1)?,
        gih_moment(omega, eta, n, 2)?
    );
    Ok(())
}
