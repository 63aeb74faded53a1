use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::bspline::BSplineContour;
use super::fan::{build_fan, RadialFan};
use super::geometry::{bbox, point_in_polygon, Point2};
use super::regions::{initial_regions, InitialRegion, RegionSpec};
use crate::error::{Error, Result};
use crate::estimation::{
    estimate_omega_combined, windowed_omega_series, Channel, CombineMethod, WindowParams,
};
use crate::hermitian::HermitianCov3;
use crate::image::PolSarImage;

/// Transform applied to an ω̂ series before transition detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesScale {
    Linear,
    #[default]
    Log,
}

impl SeriesScale {
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        match self {
            SeriesScale::Linear => values.to_vec(),
            SeriesScale::Log => values.iter().map(|v| v.ln()).collect(),
        }
    }
}

/// Strongest step found in a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// Series index `j`: the step lies between entries `j−1` and `j`.
    pub index: usize,
    /// `positions[j]`.
    pub position: usize,
    /// Signed mask response at `j`.
    pub response: f64,
    /// Set when the response is identically zero.
    pub no_edge: bool,
}

/// Correlate `values` with the zero-sum step mask `[−1]·M ++ [+1]·M` (scaled
/// by `1/M`) and return the index of the largest absolute response. Ties go
/// to the smaller index.
pub fn detect_transition(
    values: &[f64],
    positions: &[usize],
    mask_half: usize,
) -> Result<Transition> {
    let m = mask_half;
    if m == 0 {
        return Err(Error::Parameter("mask_half must be >= 1".into()));
    }
    if values.len() != positions.len() {
        return Err(Error::Parameter(
            "values and positions differ in length".into(),
        ));
    }
    if values.len() < 2 * m {
        return Err(Error::Detection(format!(
            "series of length {} is shorter than the mask ({})",
            values.len(),
            2 * m
        )));
    }
    let mut best = Transition {
        index: m,
        position: positions[m.min(positions.len() - 1)],
        response: 0.0,
        no_edge: true,
    };
    let mut best_abs = -1.0;
    for j in m..=values.len() - m {
        let right: f64 = values[j..j + m].iter().sum();
        let left: f64 = values[j - m..j].iter().sum();
        let r = (right - left) / m as f64;
        if r.abs() > best_abs {
            best_abs = r.abs();
            best.index = j;
            best.response = r;
        }
    }
    best.position = positions[best.index.min(positions.len() - 1)];
    best.no_edge = !(best_abs > 0.0);
    Ok(best)
}

/// Where a detected step is placed along the path.
///
/// Windows that straddle two textures mix their intensities, and the mixture
/// reads as rougher than either side, so the ω̂ series dips around the edge.
/// The strongest step is then the one between the dip and the first window
/// lying wholly on the smoother side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgePlacement {
    /// Centre of the window after the step.
    WindowCentre,
    /// Near edge of the window on the higher-ω̂ side of the step.
    #[default]
    SmoothSide,
}

impl EdgePlacement {
    /// Path index of the border for a transition found in a series whose
    /// windows span `win_len` path samples.
    pub fn position(&self, t: &Transition, positions: &[usize], win_len: usize) -> usize {
        let j = t.index.min(positions.len() - 1);
        let h = win_len / 2;
        match self {
            EdgePlacement::WindowCentre => positions[j],
            EdgePlacement::SmoothSide if t.response >= 0.0 => positions[j].saturating_sub(h),
            EdgePlacement::SmoothSide => positions[j.saturating_sub(1)] + h,
        }
    }
}

/// Tunables of the boundary detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectParams {
    pub degree: usize,
    pub n_rays: usize,
    pub reach: f64,
    pub mask_half: usize,
    pub window: WindowParams,
    pub channel: Channel,
    pub scale: SeriesScale,
    pub placement: EdgePlacement,
}

impl Default for DetectParams {
    fn default() -> Self {
        Self {
            degree: 3,
            n_rays: 16,
            reach: 1.8,
            mask_half: 5,
            window: WindowParams::default(),
            channel: Channel::Combined,
            scale: SeriesScale::Log,
            placement: EdgePlacement::SmoothSide,
        }
    }
}

/// Outcome of one ray.
#[derive(Debug, Clone, PartialEq)]
pub struct RayResult {
    pub angle: f64,
    pub border: Option<Point2>,
}

/// Detected contour of one region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionContour {
    pub contour: BSplineContour,
    /// Border points in ray order (rays without an edge are skipped).
    pub border_points: Vec<Point2>,
    pub rays: Vec<RayResult>,
    /// Combined ω̂ of the pixels enclosed by the contour.
    pub omega: Option<f64>,
    pub seed: Point2,
}

impl RegionContour {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.contour.degree,
            "control_points": self.contour.control_points,
            "border_points": self.border_points,
            "omega": self.omega,
        })
    }
}

fn ray_border(img: &PolSarImage, path: &[(i64, i64)], params: &DetectParams) -> Option<Point2> {
    let series = windowed_omega_series(img, path, &params.window).ok()?;
    let values = params.scale.apply(series.values(params.channel));
    let t = detect_transition(&values, &series.positions, params.mask_half).ok()?;
    if t.no_edge {
        return None;
    }
    let (x, y) = path[params
        .placement
        .position(&t, &series.positions, params.window.win_len)];
    Some(Point2::new(x as f64, y as f64))
}

/// Pixels whose centres lie inside a closed curve given as a polygon.
pub fn pixels_inside(img: &PolSarImage, polygon: &[Point2]) -> Vec<HermitianCov3> {
    let Some((x0, y0, x1, y1)) = bbox(polygon) else {
        return Vec::new();
    };
    let xs = (x0.floor().max(0.0) as usize)
        ..=(x1.ceil().min(img.width() as f64 - 1.0).max(0.0) as usize);
    let ys = (y0.floor().max(0.0) as usize)
        ..=(y1.ceil().min(img.height() as f64 - 1.0).max(0.0) as usize);
    let mut out = Vec::new();
    for y in ys {
        for x in xs.clone() {
            if point_in_polygon(polygon, &Point2::new(x as f64, y as f64)) {
                out.push(*img.get(x, y));
            }
        }
    }
    out
}

/// Fan, transitions and interpolating spline for one initial region.
pub fn detect_region(
    img: &PolSarImage,
    region: &InitialRegion,
    params: &DetectParams,
) -> Result<RegionContour> {
    let fan: RadialFan = build_fan(
        &region.polygon,
        region.centroid,
        params.n_rays.max(params.degree + 1),
        params.reach,
        img.width(),
        img.height(),
    )?;
    let borders: Vec<Option<Point2>> = fan
        .paths
        .par_iter()
        .map(|p| ray_border(img, p, params))
        .collect();
    let rays: Vec<RayResult> = fan
        .angles
        .iter()
        .zip(&borders)
        .map(|(&angle, b)| RayResult { angle, border: *b })
        .collect();
    let border_points: Vec<Point2> = borders.into_iter().flatten().collect();
    if border_points.is_empty() {
        return Err(Error::Detection("no ray found an edge".into()));
    }
    if border_points.len() < params.degree + 1 {
        return Err(Error::Detection(format!(
            "only {} rays found an edge; a degree-{} contour needs {}",
            border_points.len(),
            params.degree,
            params.degree + 1
        )));
    }
    let contour = BSplineContour::interpolate(&border_points, params.degree)
        .map_err(|e| Error::Detection(format!("contour fit failed: {e}")))?;
    let inside = pixels_inside(img, &contour.sample(256));
    let omega = estimate_omega_combined(&inside, img.looks(), CombineMethod::MeanOfChannels)
        .ok()
        .map(|f| f.omega_combined);
    Ok(RegionContour {
        contour,
        border_points,
        rays,
        omega,
        seed: region.centroid,
    })
}

/// Full boundary detection: initial regions, then one contour per region.
pub fn detect_boundary(
    img: &PolSarImage,
    spec: &RegionSpec,
    params: &DetectParams,
) -> Result<Vec<RegionContour>> {
    initial_regions(img, spec)?
        .iter()
        .map(|r| detect_region(img, r, params))
        .collect()
}
