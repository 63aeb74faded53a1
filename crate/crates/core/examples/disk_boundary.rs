//! Boundary detection on a bright rough disk inside a smooth background,
//! seeded with a manual polygon.

use std::f64::consts::PI;

use polsar_gh::contour::geometry::hausdorff;
use polsar_gh::contour::{detect_boundary, DetectParams, Point2, RegionSpec};
use polsar_gh::scene::SceneSpec;

fn circle(cx: f64, cy: f64, r: f64, n: usize) -> Vec<Point2> {
    (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / n as f64;
            Point2::new(cx + r * a.cos(), cy + r * a.sin())
        })
        .collect()
}

fn main() -> polsar_gh::Result<()> {
    let spec = SceneSpec::from_json(
        r#"{"width":128,"height":128,"looks":1,"background":{"sigma":"pasture","omega":20},
            "inserts":[{"shape":"disk","geometry":{"cx":64,"cy":64,"radius":30},"params":{"sigma":"urban","omega":1}}]}"#,
    )?;
    let (img, _) = spec.simulate(3)?;
    let seed = RegionSpec::Manual(circle(64.0, 64.0, 25.0, 12));
    let params = DetectParams::default();
    let region = detect_boundary(&img, &seed, &params)?.remove(0);

    for ray in &region.rays {
        match ray.border {
            Some(p) => println!(
                "ray {:6.1}°: border at ({:5.1}, {:5.1}), radius {:.1}",
                ray.angle.to_degrees(),
                p.x,
                p.y,
                p.dist(&Point2::new(64.0, 64.0))
            ),
            None => println!("ray {:6.1}°: no edge", ray.angle.to_degrees()),
        }
    }
    let hd = hausdorff(&region.contour.sample(720), &circle(64.0, 64.0, 30.0, 720));
    println!("Hausdorff distance to the true circle: {hd:.2} px");
    println!("ω̂ inside the contour: {:?}", region.omega);
    println!("{}", serde_json::to_string_pretty(&region.to_json())?);
    Ok(())
}
