use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phantom::{make_phantom, TextureParams, PHANTOM_WIDTH, TRUE_EDGE};
use crate::contour::{detect_transition, EdgePlacement, SeriesScale};
use crate::distributions::RngState;
use crate::error::Result;
use crate::estimation::{windowed_omega_series, Channel, WindowParams};
use crate::fixtures::{sigma_forest, sigma_pasture, sigma_urban};
use crate::image::PolSarImage;

/// One left/right texture pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Situation {
    pub index: usize,
    pub label: String,
    pub left: TextureParams,
    pub right: TextureParams,
}

const ROMAN: [&str; 12] = [
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
];

/// Urban {1, 5} × forest {10, 15}, urban {1, 5} × pasture {20, 25},
/// forest {10, 15} × pasture {20, 25}, labelled I–XII in that order.
pub fn twelve_situations() -> Vec<Situation> {
    let pairs = [
        ((sigma_urban(), [1.0, 5.0]), (sigma_forest(), [10.0, 15.0])),
        ((sigma_urban(), [1.0, 5.0]), (sigma_pasture(), [20.0, 25.0])),
        (
            (sigma_forest(), [10.0, 15.0]),
            (sigma_pasture(), [20.0, 25.0]),
        ),
    ];
    let mut out = Vec::with_capacity(12);
    for ((sa, wa), (sb, wb)) in pairs {
        for a in wa {
            for b in wb {
                let index = out.len();
                out.push(Situation {
                    index,
                    label: ROMAN[index].to_string(),
                    left: TextureParams::new(sa, a),
                    right: TextureParams::new(sb, b),
                });
            }
        }
    }
    out
}

/// Settings of the error study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyParams {
    pub replications: usize,
    pub looks: u32,
    pub window: WindowParams,
    pub mask_half: usize,
    pub scale: SeriesScale,
    pub placement: EdgePlacement,
    /// Largest `k` of the reported curves.
    pub max_k: usize,
}

impl Default for StudyParams {
    fn default() -> Self {
        Self {
            replications: 200,
            looks: 1,
            window: WindowParams::default(),
            mask_half: 5,
            scale: SeriesScale::Log,
            placement: EdgePlacement::SmoothSide,
            max_k: 50,
        }
    }
}

/// Empirical `f(k) = #{r : E(r) < k} / R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCurve {
    pub channel: Channel,
    pub k: Vec<usize>,
    pub f: Vec<f64>,
    pub replications: usize,
}

impl ErrorCurve {
    pub fn from_errors(channel: Channel, errors: &[usize], max_k: usize) -> Self {
        let reps = errors.len();
        let k: Vec<usize> = (0..=max_k).collect();
        let f = k
            .iter()
            .map(|&k| errors.iter().filter(|&&e| e < k).count() as f64 / reps.max(1) as f64)
            .collect();
        Self {
            channel,
            k,
            f,
            replications: reps,
        }
    }

    pub fn at(&self, k: usize) -> f64 {
        self.f[k.min(self.f.len() - 1)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyResult {
    pub situation: Situation,
    /// HH, HV, VV, combined.
    pub curves: [ErrorCurve; 4],
    /// Per replication, per channel edge error.
    pub errors: Vec<[usize; 4]>,
}

impl StudyResult {
    pub fn curve(&self, ch: Channel) -> &ErrorCurve {
        &self.curves[Channel::ALL
            .iter()
            .position(|c| *c == ch)
            .expect("known channel")]
    }
}

/// Edge errors `|50 − b|` of one phantom for HH, HV, VV and combined, with
/// the transition searched along the horizontal centre line. A missed edge
/// counts as the largest possible error.
pub fn phantom_errors(img: &PolSarImage, params: &StudyParams) -> [usize; 4] {
    let y = (img.height() / 2) as i64;
    let path: Vec<(i64, i64)> = (0..img.width() as i64).map(|x| (x, y)).collect();
    let miss = TRUE_EDGE.max(img.width() - TRUE_EDGE);
    let Ok(series) = windowed_omega_series(img, &path, &params.window) else {
        return [miss; 4];
    };
    Channel::ALL.map(|ch| {
        let values = params.scale.apply(series.values(ch));
        match detect_transition(&values, &series.positions, params.mask_half) {
            Ok(t) if !t.no_edge => params
                .placement
                .position(&t, &series.positions, params.window.win_len)
                .abs_diff(TRUE_EDGE),
            _ => miss,
        }
    })
}

/// Monte Carlo edge-error study for one situation. Replication `r` draws
/// its phantom from stream `(index << 32) | r` of `seed`, so results do not
/// depend on the number of worker threads.
pub fn run_error_study(s: &Situation, params: &StudyParams, seed: u64) -> Result<StudyResult> {
    // Fail early on invalid textures.
    s.left.gh(params.looks)?;
    s.right.gh(params.looks)?;
    let errors: Vec<[usize; 4]> = (0..params.replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = RngState::stream(seed, ((s.index as u64) << 32) | r as u64);
            let (img, _) = make_phantom(&s.left, &s.right, params.looks, &mut rng)?;
            Ok(phantom_errors(&img, params))
        })
        .collect::<Result<_>>()?;
    let curves = std::array::from_fn(|i| {
        let e: Vec<usize> = errors.iter().map(|row| row[i]).collect();
        ErrorCurve::from_errors(Channel::ALL[i], &e, params.max_k.min(PHANTOM_WIDTH))
    });
    Ok(StudyResult {
        situation: s.clone(),
        curves,
        errors,
    })
}

/// CSV with columns `situation,channel,k,f`.
pub fn curves_to_csv(results: &[StudyResult]) -> String {
    let mut out = String::from("situation,channel,k,f\n");
    for r in results {
        for c in &r.curves {
            for (k, f) in c.k.iter().zip(&c.f) {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.situation.label,
                    c.channel.as_str(),
                    k,
                    f
                );
            }
        }
    }
    out
}
