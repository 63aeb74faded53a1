//! Closed B-spline contours, initial regions, radial fans and the boundary
//! detector that ties them to windowed roughness estimates.

mod bspline;
mod detect;
mod fan;
pub mod geometry;
mod regions;

pub use bspline::{cardinal_bspline, BSplineContour};
pub use detect::{
    detect_boundary, detect_region, detect_transition, pixels_inside, DetectParams, EdgePlacement,
    RayResult, RegionContour, SeriesScale, Transition,
};
pub use fan::{build_fan, RadialFan};
pub use geometry::Point2;
pub use regions::{
    connected_components, find_initial_regions, initial_regions, regions_from_grid, AutoRegion,
    InitialRegion, RegionSpec,
};
