//! Automatic initialisation: block-wise roughness, selection by interval,
//! connected components, then boundary detection for each region found.

use polsar_gh::contour::{
    detect_boundary, find_initial_regions, AutoRegion, DetectParams, RegionSpec,
};
use polsar_gh::estimation::block_grid_omega;
use polsar_gh::scene::SceneSpec;

fn main() -> polsar_gh::Result<()> {
    let spec = SceneSpec::from_json(
        r#"{"width":176,"height":132,"looks":3,"background":{"sigma":"pasture","omega":20},
            "inserts":[
              {"shape":"rect","geometry":{"x":22,"y":22,"width":44,"height":44},"params":{"sigma":"urban","omega":0.5}},
              {"shape":"disk","geometry":{"cx":130,"cy":80,"radius":28},"params":{"sigma":"urban","omega":0.5}}
            ]}"#,
    )?;
    let (img, _) = spec.simulate(11)?;

    let grid = block_grid_omega(&img, 11)?;
    for r in 0..grid.rows {
        let row: String = (0..grid.cols)
            .map(|c| match grid.get(r, c).value() {
                Some(w) if w < 1.5 => '#',
                Some(w) if w < 15.0 => '+',
                _ => '.',
            })
            .collect();
        println!("{row}");
    }

    let auto = AutoRegion {
        t_r: [0.1, 1.5],
        t_s: 4,
        block: 11,
    };
    let regions = find_initial_regions(&img, &auto)?;
    println!("{} candidate region(s)", regions.len());
    for (i, r) in regions.iter().enumerate() {
        println!(
            "  region {i}: {} blocks, centroid ({:.1}, {:.1})",
            r.blocks.len(),
            r.centroid.x,
            r.centroid.y
        );
    }
    for c in detect_boundary(&img, &RegionSpec::Auto(auto), &DetectParams::default())? {
        println!(
            "contour with {} border points, ω̂ {:?}",
            c.border_points.len(),
            c.omega
        );
    }
    Ok(())
}
