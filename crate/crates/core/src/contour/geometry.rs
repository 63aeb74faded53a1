use serde::{Deserialize, Serialize};

/// A point in pixel coordinates (`x` = column, `y` = row; pixel centres sit
/// on integers).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, o: &Point2) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(&self, c: f64) -> Point2 {
        Point2::new(self.x * c, self.y * c)
    }

    pub fn cross(&self, o: &Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Convex hull by Andrew's monotone chain, counter-clockwise in a y-up frame,
/// collinear points dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Point2, a: &Point2, b: &Point2| a.sub(o).cross(&b.sub(o));
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

/// Signed shoelace area (positive for counter-clockwise in a y-up frame).
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| poly[i].cross(&poly[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

pub fn polygon_area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

/// Area centroid; falls back to the vertex mean for degenerate polygons.
pub fn polygon_centroid(poly: &[Point2]) -> Point2 {
    let a = signed_area(poly);
    let n = poly.len();
    if a.abs() < 1e-12 {
        let s = poly.iter().fold(Point2::default(), |acc, p| acc.add(p));
        return s.scale(1.0 / n.max(1) as f64);
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let c = p.cross(&q);
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    Point2::new(cx / (6.0 * a), cy / (6.0 * a))
}

fn segment_distance(p: &Point2, a: &Point2, b: &Point2) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.x * ab.x + ab.y * ab.y;
    let t = if len2 > 0.0 {
        (p.sub(a).x * ab.x + p.sub(a).y * ab.y) / len2
    } else {
        0.0
    };
    p.dist(&a.add(&ab.scale(t.clamp(0.0, 1.0))))
}

/// Distance from `p` to the polygon boundary.
pub fn boundary_distance(poly: &[Point2], p: &Point2) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(p, &poly[i], &poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Even-odd point-in-polygon test.
pub fn point_in_polygon(poly: &[Point2], p: &Point2) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n.wrapping_sub(1);
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Inside and not on the boundary.
pub fn strictly_inside(poly: &[Point2], p: &Point2) -> bool {
    poly.len() >= 3 && point_in_polygon(poly, p) && boundary_distance(poly, p) > 1e-9
}

/// Interior point farthest from the boundary, approximated on a grid over the
/// bounding box and refined once around the best cell.
pub fn pole_of_inaccessibility(poly: &[Point2]) -> Option<Point2> {
    let (mut x0, mut y0, mut x1, mut y1) = bbox(poly)?;
    let mut best: Option<(Point2, f64)> = None;
    for _ in 0..3 {
        let steps = 64;
        let (dx, dy) = ((x1 - x0) / steps as f64, (y1 - y0) / steps as f64);
        for i in 0..=steps {
            for j in 0..=steps {
                let p = Point2::new(x0 + i as f64 * dx, y0 + j as f64 * dy);
                if point_in_polygon(poly, &p) {
                    let d = boundary_distance(poly, &p);
                    if best.is_none_or(|(_, bd)| d > bd) {
                        best = Some((p, d));
                    }
                }
            }
        }
        let (c, _) = best?;
        (x0, x1, y0, y1) = (
            c.x - 2.0 * dx,
            c.x + 2.0 * dx,
            c.y - 2.0 * dy,
            c.y + 2.0 * dy,
        );
    }
    best.filter(|(_, d)| *d > 0.0).map(|(p, _)| p)
}

/// `(xmin, ymin, xmax, ymax)`.
pub fn bbox(points: &[Point2]) -> Option<(f64, f64, f64, f64)> {
    if points.is_empty() {
        return None;
    }
    Some(points.iter().fold(
        (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), p| (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y)),
    ))
}

/// Largest `t > 0` with `origin + t·dir` on the polygon boundary.
pub fn ray_exit_distance(poly: &[Point2], origin: &Point2, dir: &Point2) -> Option<f64> {
    let n = poly.len();
    let mut best: Option<f64> = None;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let e = b.sub(&a);
        let denom = dir.cross(&e);
        if denom.abs() < 1e-15 {
            continue;
        }
        let w = a.sub(origin);
        let t = w.cross(&e) / denom;
        let s = w.cross(dir) / denom;
        if t > 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&s) {
            best = Some(best.map_or(t, |bt: f64| bt.max(t)));
        }
    }
    best
}

/// Integer pixels on the segment between two pixels (Bresenham), inclusive.
pub fn bresenham(from: (i64, i64), to: (i64, i64)) -> Vec<(i64, i64)> {
    let (mut x, mut y) = from;
    let dx = (to.0 - x).abs();
    let dy = -(to.1 - y).abs();
    let sx = if x < to.0 { 1 } else { -1 };
    let sy = if y < to.1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut out = Vec::with_capacity((dx.max(-dy) + 1) as usize);
    loop {
        out.push((x, y));
        if (x, y) == to {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
    out
}

/// Symmetric Hausdorff distance between two point sets.
pub fn hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    let directed = |p: &[Point2], q: &[Point2]| {
        p.iter()
            .map(|x| q.iter().map(|y| x.dist(y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}
