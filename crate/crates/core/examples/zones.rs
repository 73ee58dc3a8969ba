//! Classify bricks into exclusive and shared zones and draw them.
//!
//! cargo run --example zones -- zones.svg

use brickwork::zoning::zones_svg;
use brickwork::{assign_bricks, classify_zones, generate_bricks, PlacementPlan, RobotSpec, WallSpec, ZoneClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "zones.svg".into());
    let robot = RobotSpec::default();
    let wall = WallSpec::straight(4.44, 0.3);
    let plan = PlacementPlan::build(&wall, &robot, None)?;
    let bricks = generate_bricks(&wall);
    let zones = classify_zones(&plan.bases, &bricks, &robot);
    let owners = assign_bricks(&zones, &plan.assignment, &bricks)?;

    for r in 0..plan.robots() {
        let exclusive = owners
            .bricks_of(r)
            .iter()
            .filter(|id| matches!(zones.classes[id], ZoneClass::Exclusive(_)))
            .count();
        println!("robot {r}: {} bricks, {exclusive} exclusive", owners.bricks_of(r).len());
    }
    println!("shared bricks: {}", zones.shared_count());

    std::fs::write(&out, zones_svg(&zones, &bricks, wall.brick.height))?;
    println!("wrote {out}");
    Ok(())
}
