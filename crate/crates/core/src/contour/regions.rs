use serde::{Deserialize, Serialize};

use super::geometry::{
    convex_hull, pole_of_inaccessibility, polygon_centroid, strictly_inside, Point2,
};
use crate::error::{Error, Result};
use crate::estimation::{block_grid_omega, OmegaGrid};
use crate::image::PolSarImage;

/// Automatic region selection: blocks whose ω̂ falls in `[t_r[0], t_r[1])`,
/// grouped into 4-connected components of at least `t_s` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutoRegion {
    pub t_r: [f64; 2],
    pub t_s: usize,
    #[serde(default = "default_block")]
    pub block: usize,
}

fn default_block() -> usize {
    11
}

/// How initial regions are obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionSpec {
    Manual(Vec<Point2>),
    Auto(AutoRegion),
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            RegionSpec::Manual(p) if p.len() < 3 => Err(Error::Parameter(
                "manual region needs at least 3 vertices".into(),
            )),
            RegionSpec::Auto(a) if !(a.t_r[0] < a.t_r[1]) || a.t_s < 1 => {
                Err(Error::Parameter(format!(
                    "auto region needs t_r low < high and t_s >= 1, got {:?}, {}",
                    a.t_r, a.t_s
                )))
            }
            _ => Ok(()),
        }
    }
}

/// A polygon with an interior seed point.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialRegion {
    pub polygon: Vec<Point2>,
    pub centroid: Point2,
    /// Grid cells `(row, col)` of the component, empty for manual regions.
    pub blocks: Vec<(usize, usize)>,
}

impl InitialRegion {
    /// A manual polygon with its area centroid, or the pole of inaccessibility
    /// when the centroid is not interior.
    pub fn manual(polygon: Vec<Point2>) -> Result<Self> {
        let centroid = interior_seed(&polygon)
            .ok_or_else(|| Error::Detection("region polygon has no interior".into()))?;
        Ok(Self {
            polygon,
            centroid,
            blocks: Vec::new(),
        })
    }
}

fn interior_seed(polygon: &[Point2]) -> Option<Point2> {
    let c = polygon_centroid(polygon);
    if strictly_inside(polygon, &c) {
        Some(c)
    } else {
        pole_of_inaccessibility(polygon)
    }
}

/// 4-connected components of marked cells, in row-major order of their first
/// cell.
pub fn connected_components(marked: &[bool], rows: usize, cols: usize) -> Vec<Vec<(usize, usize)>> {
    let mut seen = vec![false; marked.len()];
    let mut out = Vec::new();
    for start in 0..marked.len() {
        if !marked[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            let (r, c) = (i / cols, i % cols);
            comp.push((r, c));
            let mut visit = |rr: usize, cc: usize| {
                let j = rr * cols + cc;
                if marked[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if r > 0 {
                visit(r - 1, c);
            }
            if r + 1 < rows {
                visit(r + 1, c);
            }
            if c > 0 {
                visit(r, c - 1);
            }
            if c + 1 < cols {
                visit(r, c + 1);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Regions from a precomputed roughness grid.
pub fn regions_from_grid(grid: &OmegaGrid, spec: &AutoRegion) -> Vec<InitialRegion> {
    let [lo, hi] = spec.t_r;
    let marked: Vec<bool> = grid
        .cells
        .iter()
        .map(|c| {
            let w = c.or_sentinel();
            w >= lo && w < hi
        })
        .collect();
    let b = grid.block_side as f64;
    connected_components(&marked, grid.rows, grid.cols)
        .into_iter()
        .filter(|comp| comp.len() >= spec.t_s)
        .filter_map(|blocks| {
            let corners: Vec<Point2> = blocks
                .iter()
                .flat_map(|&(r, c)| {
                    let (x0, y0) = (c as f64 * b - 0.5, r as f64 * b - 0.5);
                    [
                        Point2::new(x0, y0),
                        Point2::new(x0 + b, y0),
                        Point2::new(x0 + b, y0 + b),
                        Point2::new(x0, y0 + b),
                    ]
                })
                .collect();
            let polygon = convex_hull(&corners);
            let centroid = interior_seed(&polygon)?;
            Some(InitialRegion {
                polygon,
                centroid,
                blocks,
            })
        })
        .collect()
}

/// Candidate regions of an image. An empty list means nothing matched.
pub fn find_initial_regions(img: &PolSarImage, spec: &AutoRegion) -> Result<Vec<InitialRegion>> {
    RegionSpec::Auto(*spec).validate()?;
    if img.width() < spec.block || img.height() < spec.block {
        return Err(Error::Parameter("image is smaller than one block".into()));
    }
    let grid = block_grid_omega(img, spec.block)?;
    Ok(regions_from_grid(&grid, spec))
}

/// Initial regions for either kind of spec.
pub fn initial_regions(img: &PolSarImage, spec: &RegionSpec) -> Result<Vec<InitialRegion>> {
    spec.validate()?;
    match spec {
        RegionSpec::Manual(poly) => Ok(vec![InitialRegion::manual(poly.clone())?]),
        RegionSpec::Auto(a) => find_initial_regions(img, a),
    }
}
