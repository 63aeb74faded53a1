//! Two-texture phantoms and the Monte Carlo edge-localization study.

mod phantom;
mod study;

pub use phantom::{
    make_phantom, make_phantom_sized, TextureParams, PHANTOM_HEIGHT, PHANTOM_WIDTH, TRUE_EDGE,
};
pub use study::{
    curves_to_csv, phantom_errors, run_error_study, twelve_situations, ErrorCurve, Situation,
    StudyParams, StudyResult,
};
