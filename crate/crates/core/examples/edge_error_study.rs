//! Monte Carlo edge-localisation error on two-texture phantoms: empirical
//! `f(k)` for each channel and for the combined estimate.

use polsar_gh::estimation::Channel;
use polsar_gh::evaluation::{run_error_study, twelve_situations, StudyParams};

fn main() -> polsar_gh::Result<()> {
    let reps = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let params = StudyParams {
        replications: reps,
        ..StudyParams::default()
    };
    println!("{reps} replications per situation; f(k) at k = 1, 3, 5, 10");
    for s in twelve_situations() {
        let r = run_error_study(&s, &params, 2024)?;
        let cells: Vec<String> = Channel::ALL
            .iter()
            .map(|&ch| {
                let c = r.curve(ch);
                format!(
                    "{} {:.2}/{:.2}/{:.2}/{:.2}",
                    ch.as_str(),
                    c.at(1),
                    c.at(3),
                    c.at(5),
                    c.at(10)
                )
            })
            .collect();
        println!(
            "{:>4}  ω {:>4} vs {:>4}  {}",
            s.label,
            s.left.omega,
            s.right.omega,
            cells.join("  ")
        );
    }
    Ok(())
}
