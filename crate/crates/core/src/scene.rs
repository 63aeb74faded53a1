//! Synthetic multi-region scenes.
//!
//! A scene is a background texture plus a list of inserts (rectangles,
//! disks, polygons), each with its own covariance and roughness. Later
//! inserts paint over earlier ones. Simulation returns the image and a
//! per-pixel label mask (0 for background, `i + 1` for insert `i`).
//!
//! ```json
//! {"width":128,"height":128,"looks":3,
//!  "background":{"sigma":"pasture","omega":20},
//!  "inserts":[{"shape":"disk","geometry":{"cx":64,"cy":64,"radius":30},
//!              "params":{"sigma":"urban","omega":1}}]}
//! ```
//!
//! `sigma` is a fixture name or the nine raster reals
//! `[d0, d1, d2, re01, im01, re02, im02, re12, im12]`.

use serde::{Deserialize, Serialize};

use crate::contour::geometry::point_in_polygon;
use crate::contour::Point2;
use crate::distributions::{GphSampler, RngState};
use crate::error::{Error, Result};
use crate::evaluation::TextureParams;
use crate::fixtures;
use crate::hermitian::HermitianCov3;
use crate::image::PolSarImage;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Named(String),
    Values([f64; 9]),
}

impl SigmaSpec {
    pub fn resolve(&self) -> Result<HermitianCov3> {
        match self {
            SigmaSpec::Named(name) => fixtures::by_name(name)
                .ok_or_else(|| Error::Parameter(format!("unknown covariance fixture {name:?}"))),
            SigmaSpec::Values(v) => {
                let m = HermitianCov3::from_array9(*v);
                m.validate()?;
                Ok(m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextureSpec {
    pub sigma: SigmaSpec,
    pub omega: f64,
}

impl TextureSpec {
    pub fn resolve(&self) -> Result<TextureParams> {
        Ok(TextureParams::new(self.sigma.resolve()?, self.omega))
    }
}

/// Insert geometry in pixel coordinates (pixel centres on integers).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", content = "geometry", rename_all = "lowercase")]
pub enum Shape {
    /// Columns `x..x+width`, rows `y..y+height`.
    Rect {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },
    /// Pixels whose centre lies within `radius` of `(cx, cy)`.
    Disk { cx: f64, cy: f64, radius: f64 },
    /// Pixels whose centre lies inside the polygon.
    Polygon { points: Vec<Point2> },
}

impl Shape {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        match self {
            Shape::Rect {
                x: x0,
                y: y0,
                width,
                height,
            } => (*x0..x0 + width).contains(&x) && (*y0..y0 + height).contains(&y),
            Shape::Disk { cx, cy, radius } => (x as f64 - cx).hypot(y as f64 - cy) <= *radius,
            Shape::Polygon { points } => point_in_polygon(points, &Point2::new(x as f64, y as f64)),
        }
    }

    fn check_bounds(&self, width: usize, height: usize) -> Result<()> {
        let (w, h) = (width as f64 - 0.5, height as f64 - 0.5);
        let inside = |x: f64, y: f64| (-0.5..=w).contains(&x) && (-0.5..=h).contains(&y);
        let ok = match self {
            Shape::Rect {
                x,
                y,
                width: rw,
                height: rh,
            } => *rw > 0 && *rh > 0 && x + rw <= width && y + rh <= height,
            Shape::Disk { cx, cy, radius } => {
                *radius > 0.0
                    && inside(cx - radius, cy - radius)
                    && inside(cx + radius, cy + radius)
            }
            Shape::Polygon { points } => {
                points.len() >= 3 && points.iter().all(|p| inside(p.x, p.y))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "insert {self:?} is degenerate or leaves the {width}×{height} image"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Insert {
    #[serde(flatten)]
    pub shape: Shape,
    pub params: TextureSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub looks: u32,
    pub background: TextureSpec,
    #[serde(default)]
    pub inserts: Vec<Insert>,
}

/// Row-major label image, serialized as run lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMask {
    pub width: usize,
    pub height: usize,
    /// `[label, count]` pairs covering the image in row-major order.
    pub runs: Vec<[u32; 2]>,
}

impl LabelMask {
    pub fn from_labels(width: usize, height: usize, labels: &[u32]) -> Self {
        let mut runs: Vec<[u32; 2]> = Vec::new();
        for &l in labels {
            match runs.last_mut() {
                Some(r) if r[0] == l => r[1] += 1,
                _ => runs.push([l, 1]),
            }
        }
        Self {
            width,
            height,
            runs,
        }
    }

    pub fn labels(&self) -> Vec<u32> {
        self.runs
            .iter()
            .flat_map(|&[l, n]| std::iter::repeat_n(l, n as usize))
            .collect()
    }
}

impl SceneSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || self.looks == 0 {
            return Err(Error::Parameter(
                "width, height and looks must be positive".into(),
            ));
        }
        self.background.resolve()?.gh(self.looks)?;
        for ins in &self.inserts {
            ins.shape.check_bounds(self.width, self.height)?;
            ins.params.resolve()?.gh(self.looks)?;
        }
        Ok(())
    }

    /// Label of every pixel, row-major.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.width * self.height];
        for (i, ins) in self.inserts.iter().enumerate() {
            for y in 0..self.height {
                for x in 0..self.width {
                    if ins.shape.contains(x, y) {
                        out[y * self.width + x] = i as u32 + 1;
                    }
                }
            }
        }
        out
    }

    /// Draw the scene. Pixels are sampled in row-major order from a single
    /// stream seeded with `seed`.
    pub fn simulate(&self, seed: u64) -> Result<(PolSarImage, LabelMask)> {
        self.validate()?;
        let samplers = std::iter::once(&self.background)
            .chain(self.inserts.iter().map(|i| &i.params))
            .map(|t| GphSampler::new(&t.resolve()?.gh(self.looks)?))
            .collect::<Result<Vec<_>>>()?;
        let labels = self.labels();
        let mut rng = RngState::new(seed);
        let pixels = labels
            .iter()
            .map(|&l| samplers[l as usize].sample(&mut rng))
            .collect();
        let img = PolSarImage::new(self.width, self.height, self.looks, pixels)?;
        Ok((
            img,
            LabelMask::from_labels(self.width, self.height, &labels),
        ))
    }
}
