use rayon::prelude::*;

use super::moments::{estimate_omega_combined, CombineMethod, OmegaEstimate};
use crate::error::{Error, Result};
use crate::hermitian::HermitianCov3;
use crate::image::PolSarImage;

/// Roughness estimates on a grid of square blocks, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaGrid {
    pub rows: usize,
    pub cols: usize,
    pub block_side: usize,
    pub cells: Vec<OmegaEstimate>,
}

impl OmegaGrid {
    pub fn get(&self, row: usize, col: usize) -> OmegaEstimate {
        self.cells[row * self.cols + col]
    }
}

/// Combined ω̂ (channel mean) of every complete `block_side × block_side`
/// block. Blocks where no channel yields a valid estimate are `Invalid`.
pub fn block_grid_omega(img: &PolSarImage, block_side: usize) -> Result<OmegaGrid> {
    if block_side < 5 {
        return Err(Error::Parameter(format!(
            "block side must be >= 5, got {block_side}"
        )));
    }
    let rows = img.height() / block_side;
    let cols = img.width() / block_side;
    let cells = (0..rows * cols)
        .into_par_iter()
        .map(|cell| {
            let (r, c) = (cell / cols, cell % cols);
            let pixels: Vec<HermitianCov3> = (0..block_side)
                .flat_map(|dy| {
                    (0..block_side).map(move |dx| (c * block_side + dx, r * block_side + dy))
                })
                .map(|(x, y)| *img.get(x, y))
                .collect();
            estimate_omega_combined(&pixels, img.looks(), CombineMethod::MeanOfChannels)
                .map_or(OmegaEstimate::Invalid, |f| {
                    OmegaEstimate::Valid(f.omega_combined)
                })
        })
        .collect();
    Ok(OmegaGrid {
        rows,
        cols,
        block_side,
        cells,
    })
}
