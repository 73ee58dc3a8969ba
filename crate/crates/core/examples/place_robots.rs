//! Base and depot positions for a straight wall and one with a right-angle turn.

use std::f64::consts::FRAC_PI_2;

use brickwork::wall::Segment;
use brickwork::{PlacementPlan, RobotSpec, WallSpec};

fn show(title: &str, wall: &WallSpec, robot: &RobotSpec) -> brickwork::Result<()> {
    let plan = PlacementPlan::build(wall, robot, None)?;
    println!("{title}: n = {}", plan.robots());
    for (b, d) in plan.bases.iter().zip(&plan.depots) {
        println!(
            "  robot {}: base ({:.3}, {:.3}) clearance {:.3}  depot ({:.3}, {:.3})",
            b.robot_index,
            b.position.x,
            b.position.y,
            b.wall_clearance(),
            d.position.x,
            d.position.y
        );
    }
    Ok(())
}

fn main() -> brickwork::Result<()> {
    let robot = RobotSpec::default();
    show("straight 4.44 m", &WallSpec::straight(4.44, 0.3), &robot)?;

    let mut corner = WallSpec::straight(2.96, 0.3);
    corner.segments.push(Segment::turned(1.48, FRAC_PI_2));
    show("corner 2.96 m + 1.48 m", &corner, &robot)?;

    print!("{}", PlacementPlan::build(&corner, &robot, None)?.to_toml());
    Ok(())
}
