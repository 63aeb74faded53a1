use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::geometry::Point2;
use crate::error::{Error, Result};

/// Closed uniform B-spline. With `m` control points the curve parameter
/// `u ∈ [0, m)` is exposed as `t = u/m ∈ [0, 1)`; segment `j` uses control
/// points `j−d … j` taken modulo `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BSplineContour {
    pub degree: usize,
    pub control_points: Vec<Point2>,
    /// Periodic uniform knots `(k − d)/m`, `k = 0 … m + 2d`.
    pub knots: Vec<f64>,
}

/// Cardinal B-spline of degree `d`, supported on `[0, d+1)`.
pub fn cardinal_bspline(d: usize, x: f64) -> f64 {
    if d == 0 {
        return if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
    }
    let df = d as f64;
    (x * cardinal_bspline(d - 1, x) + (df + 1.0 - x) * cardinal_bspline(d - 1, x - 1.0)) / df
}

impl BSplineContour {
    pub fn new(degree: usize, control_points: Vec<Point2>) -> Result<Self> {
        if degree < 1 {
            return Err(Error::Parameter("degree must be >= 1".into()));
        }
        if control_points.len() < degree + 1 {
            return Err(Error::Parameter(format!(
                "{} control points cannot carry a degree-{degree} closed spline",
                control_points.len()
            )));
        }
        let m = control_points.len();
        let knots = (0..=m + 2 * degree)
            .map(|k| (k as f64 - degree as f64) / m as f64)
            .collect();
        Ok(Self {
            degree,
            control_points,
            knots,
        })
    }

    /// Point at `t ∈ [0, 1]` (wrapped), by de Boor's algorithm.
    pub fn evaluate(&self, t: f64) -> Point2 {
        let m = self.control_points.len();
        let d = self.degree;
        let u = t.rem_euclid(1.0) * m as f64;
        let j = (u.floor() as usize).min(m - 1);
        let mut pts: Vec<Point2> = (0..=d)
            .map(|r| self.control_points[(j + m * (d + 1) - d + r) % m])
            .collect();
        // pts[r] holds d_{j−d+r}.
        for r in 1..=d {
            for s in (r..=d).rev() {
                let i = (j + s) as f64 - d as f64;
                let alpha = (u - i) / (d + 1 - r) as f64;
                pts[s] = pts[s - 1].scale(1.0 - alpha).add(&pts[s].scale(alpha));
            }
        }
        pts[d]
    }

    /// `count` equally spaced curve samples.
    pub fn sample(&self, count: usize) -> Vec<Point2> {
        (0..count)
            .map(|i| self.evaluate(i as f64 / count as f64))
            .collect()
    }

    /// Parameter at which the `k`-th interpolated point lies.
    pub fn data_parameter(&self, k: usize) -> f64 {
        let m = self.control_points.len() as f64;
        ((k as f64 + (self.degree as f64 + 1.0) / 2.0) / m).rem_euclid(1.0)
    }

    /// Closed B-spline passing through `points` in order. Point `k` sits at
    /// `u = k + (d+1)/2`, where the basis is symmetric; the resulting
    /// circulant system is solved by LU with partial pivoting.
    pub fn interpolate(points: &[Point2], degree: usize) -> Result<Self> {
        let m = points.len();
        if degree < 1 || m < degree + 1 {
            return Err(Error::Parameter(format!(
                "{m} points cannot be interpolated by a degree-{degree} closed spline"
            )));
        }
        let mut a = DMatrix::<f64>::zeros(m, m);
        let shift = (degree as f64 + 1.0) / 2.0;
        for k in 0..m {
            let u = k as f64 + shift;
            let j = u.floor() as i64;
            for i in (j - degree as i64)..=j {
                a[(k, i.rem_euclid(m as i64) as usize)] += cardinal_bspline(degree, u - i as f64);
            }
        }
        let lu = a.lu();
        let bx = DVector::from_iterator(m, points.iter().map(|p| p.x));
        let by = DVector::from_iterator(m, points.iter().map(|p| p.y));
        let singular = || {
            Error::Singular(format!(
                "interpolation system for {m} points at degree {degree} is singular; use fewer points or a lower degree"
            ))
        };
        let x = lu.solve(&bx).ok_or_else(singular)?;
        let y = lu.solve(&by).ok_or_else(singular)?;
        let control: Vec<Point2> = (0..m).map(|i| Point2::new(x[i], y[i])).collect();
        if !control.iter().all(|p| p.x.is_finite() && p.y.is_finite()) {
            return Err(singular());
        }
        let c = Self::new(degree, control)?;
        let residual = points
            .iter()
            .enumerate()
            .map(|(k, p)| c.evaluate(c.data_parameter(k)).dist(p))
            .fold(0.0, f64::max);
        if residual > 1e-6 {
            return Err(singular());
        }
        Ok(c)
    }
}
