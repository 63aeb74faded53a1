use serde::{Deserialize, Serialize};

use super::moments::{estimate_omega_channel, ChannelMoments};
use crate::error::{Error, Result};
use crate::image::PolSarImage;

/// Geometry of the sliding estimation window along a pixel path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowParams {
    /// Pixels on each side of the path (rectangle width `2·half_width + 1`).
    pub half_width: usize,
    /// Window length along the path, in path samples.
    pub win_len: usize,
    pub stride: usize,
}

impl Default for WindowParams {
    fn default() -> Self {
        Self {
            half_width: 8,
            win_len: 7,
            stride: 1,
        }
    }
}

/// Which estimate a detector reads from a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    HH,
    HV,
    VV,
    Combined,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::HH, Channel::HV, Channel::VV, Channel::Combined];

    pub fn as_str(&self) -> &'static str {
        match self {
            Channel::HH => "HH",
            Channel::HV => "HV",
            Channel::VV => "VV",
            Channel::Combined => "combined",
        }
    }
}

/// Roughness estimates at successive window stops along a path.
///
/// Per-channel values are clamped to `OMEGA_MAX`, with invalid estimates
/// mapped to it; `combined` is their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSeries {
    /// Path index of each window centre.
    pub positions: Vec<usize>,
    pub channels: [Vec<f64>; 3],
    pub combined: Vec<f64>,
    /// Pixels used at each stop.
    pub counts: Vec<usize>,
}

impl OmegaSeries {
    pub fn values(&self, ch: Channel) -> &[f64] {
        match ch {
            Channel::HH => &self.channels[0],
            Channel::HV => &self.channels[1],
            Channel::VV => &self.channels[2],
            Channel::Combined => &self.combined,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

#[derive(Clone, Copy, Default)]
struct Bucket {
    count: usize,
    s1: [f64; 3],
    s2: [f64; 3],
}

/// Assign every pixel within `half_width` of the straight line through the
/// path's end points to the nearest path sample.
fn bucket_pixels(img: &PolSarImage, path: &[(i64, i64)], half_width: usize) -> Result<Vec<Bucket>> {
    let (x0, y0) = (path[0].0 as f64, path[0].1 as f64);
    let (x1, y1) = (path[path.len() - 1].0 as f64, path[path.len() - 1].1 as f64);
    let length = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    if !(length > 0.0) {
        return Err(Error::Parameter("path has coincident end points".into()));
    }
    let (dx, dy) = ((x1 - x0) / length, (y1 - y0) / length);
    let step = length / (path.len() - 1) as f64;
    let hw = half_width as f64;
    let pad = half_width as i64 + 1;
    let xmin = path.iter().map(|p| p.0).min().unwrap_or(0) - pad;
    let xmax = path.iter().map(|p| p.0).max().unwrap_or(0) + pad;
    let ymin = path.iter().map(|p| p.1).min().unwrap_or(0) - pad;
    let ymax = path.iter().map(|p| p.1).max().unwrap_or(0) + pad;
    let mut buckets = vec![Bucket::default(); path.len()];
    for y in ymin.max(0)..=ymax.min(img.height() as i64 - 1) {
        for x in xmin.max(0)..=xmax.min(img.width() as i64 - 1) {
            let (rx, ry) = (x as f64 - x0, y as f64 - y0);
            let u = rx * dx + ry * dy;
            let v = -rx * dy + ry * dx;
            if v.abs() > hw + 1e-9 {
                continue;
            }
            let k = (u / step).round();
            if k < 0.0 || k >= path.len() as f64 {
                continue;
            }
            let b = &mut buckets[k as usize];
            let px = img.get(x as usize, y as usize);
            b.count += 1;
            for ch in 0..3 {
                b.s1[ch] += px.d[ch];
                b.s2[ch] += px.d[ch] * px.d[ch];
            }
        }
    }
    Ok(buckets)
}

/// Slide a `(2·half_width+1) × win_len` rectangle along `path` and estimate
/// roughness from the pixels inside at each stop. Pixels outside the image
/// are skipped.
pub fn windowed_omega_series(
    img: &PolSarImage,
    path: &[(i64, i64)],
    params: &WindowParams,
) -> Result<OmegaSeries> {
    let WindowParams {
        half_width,
        win_len,
        stride,
    } = *params;
    if win_len < 1 || stride < 1 {
        return Err(Error::Parameter("win_len and stride must be >= 1".into()));
    }
    if path.len() < win_len.max(2) {
        return Err(Error::Parameter(format!(
            "path of {} samples is shorter than the window ({win_len})",
            path.len()
        )));
    }
    let buckets = bucket_pixels(img, path, half_width)?;
    let n = img.looks();
    let mut out = OmegaSeries {
        positions: Vec::new(),
        channels: [Vec::new(), Vec::new(), Vec::new()],
        combined: Vec::new(),
        counts: Vec::new(),
    };
    for s in (0..=path.len() - win_len).step_by(stride) {
        let mut acc = Bucket::default();
        for b in &buckets[s..s + win_len] {
            acc.count += b.count;
            for ch in 0..3 {
                acc.s1[ch] += b.s1[ch];
                acc.s2[ch] += b.s2[ch];
            }
        }
        if acc.count < 2 {
            return Err(Error::Estimation(format!("empty window at path index {s}")));
        }
        let mut sum = 0.0;
        for ch in 0..3 {
            let m = ChannelMoments {
                m1: acc.s1[ch] / acc.count as f64,
                m2: acc.s2[ch] / acc.count as f64,
                count: acc.count,
            };
            let w = estimate_omega_channel(&m, n)?.or_sentinel();
            out.channels[ch].push(w);
            sum += w;
        }
        out.combined.push(sum / 3.0);
        out.positions.push(s + win_len / 2);
        out.counts.push(acc.count);
    }
    Ok(out)
}
