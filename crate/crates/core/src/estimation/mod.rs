//! Moment estimators of roughness, channel intensities and correlation
//! coefficients, plus the windowed and block-grid estimators that feed
//! boundary detection.

mod epsilon;
mod grid;
mod moments;
mod window;

pub use epsilon::{epsilon_objective, minimize_epsilon, ChannelHistogram};
pub use grid::{block_grid_omega, OmegaGrid};
pub use moments::{
    estimate_offdiag, estimate_omega_channel, estimate_omega_combined, estimate_sigma_channel,
    ChannelMoments, CombineMethod, FitResult, OmegaEstimate, CORRELATION_FLAG, OMEGA_MAX,
};
pub use window::{windowed_omega_series, Channel, OmegaSeries, WindowParams};
