//! Sizes of small cover balls and the fiber over the base triangulation.

use flipgroupoid::cover::build_cover_ball;
use flipgroupoid::surface::{annulus, polygon_fan};

fn main() -> flipgroupoid::Result<()> {
    let cases = [
        ("A1", polygon_fan(4)?, 6),
        ("A2", polygon_fan(5)?, 6),
        ("A3", polygon_fan(6)?, 4),
        ("annulus(1,1)", annulus(1, 1)?, 5),
    ];
    for (name, t, r) in cases {
        let ball = build_cover_ball(&t, r, 1_000_000)?;
        let classes = ball.classes();
        let interior = classes.iter().filter(|&&c| ball.is_interior(c)).count();
        let fiber = ball.fiber_report(0);
        println!(
            "{name} r={r}: {} nodes, {} classes, {interior} interior, {} rewrites, {} interior points over the base",
            ball.nodes().len(),
            classes.len(),
            ball.rewrites(),
            fiber.entries.len()
        );
        for e in &fiber.entries {
            if let Some(img) = &e.loop_image {
                println!("  path of length {}: {img}", e.path.len());
            }
        }
    }
    Ok(())
}
