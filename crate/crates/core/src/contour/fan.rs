use std::f64::consts::PI;

use super::geometry::{bresenham, ray_exit_distance, strictly_inside, Point2};
use crate::error::{Error, Result};

/// Equally spaced rays from an interior seed, each discretized into a pixel
/// path from the seed to an end point beyond the region.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFan {
    pub centroid: Point2,
    pub angles: Vec<f64>,
    pub endpoints: Vec<Point2>,
    pub paths: Vec<Vec<(i64, i64)>>,
}

/// Length of the ray from `origin` along `dir` before it leaves the pixel
/// box `[0, width−1] × [0, height−1]`.
fn box_exit(origin: &Point2, dir: &Point2, width: usize, height: usize) -> f64 {
    let mut t = f64::INFINITY;
    let (xmax, ymax) = ((width - 1) as f64, (height - 1) as f64);
    if dir.x > 1e-15 {
        t = t.min((xmax - origin.x) / dir.x);
    } else if dir.x < -1e-15 {
        t = t.min(-origin.x / dir.x);
    }
    if dir.y > 1e-15 {
        t = t.min((ymax - origin.y) / dir.y);
    } else if dir.y < -1e-15 {
        t = t.min(-origin.y / dir.y);
    }
    t.max(0.0)
}

/// `n_rays` rays at angles `2πi/n_rays` (starting along +x) from `centroid`,
/// each reaching `reach` times the distance to the polygon boundary and
/// clipped to the image.
pub fn build_fan(
    polygon: &[Point2],
    centroid: Point2,
    n_rays: usize,
    reach: f64,
    width: usize,
    height: usize,
) -> Result<RadialFan> {
    if n_rays < 3 {
        return Err(Error::Parameter(format!(
            "need at least 3 rays, got {n_rays}"
        )));
    }
    if !(reach > 1.0) {
        return Err(Error::Parameter(format!(
            "reach must exceed 1, got {reach}"
        )));
    }
    if !strictly_inside(polygon, &centroid) {
        return Err(Error::Detection(format!(
            "seed ({:.2}, {:.2}) is not inside the region polygon",
            centroid.x, centroid.y
        )));
    }
    if centroid.x < 0.0
        || centroid.y < 0.0
        || centroid.x > (width - 1) as f64
        || centroid.y > (height - 1) as f64
    {
        return Err(Error::Detection("seed lies outside the image".into()));
    }
    let start = (centroid.x.round() as i64, centroid.y.round() as i64);
    let mut fan = RadialFan {
        centroid,
        angles: Vec::with_capacity(n_rays),
        endpoints: Vec::with_capacity(n_rays),
        paths: Vec::with_capacity(n_rays),
    };
    for i in 0..n_rays {
        let angle = 2.0 * PI * i as f64 / n_rays as f64;
        let dir = Point2::new(angle.cos(), angle.sin());
        let inner = ray_exit_distance(polygon, &centroid, &dir)
            .ok_or_else(|| Error::Detection(format!("ray {i} does not leave the region")))?;
        let len = (reach * inner).min(box_exit(&centroid, &dir, width, height));
        let end = centroid.add(&dir.scale(len));
        let path = bresenham(start, (end.x.round() as i64, end.y.round() as i64));
        fan.angles.push(angle);
        fan.endpoints.push(end);
        fan.paths.push(path);
    }
    Ok(fan)
}
