//! Split walls of increasing length into robot pieces.

use brickwork::{decompose_wall, l_optimal, required_robot_count, RobotSpec, WallSpec};

fn main() -> brickwork::Result<()> {
    let robot = RobotSpec::default();
    let l_opt = l_optimal(&robot)?;
    println!("L_optimal = {l_opt:.6} m");

    for length in [1.0, 1.48324, 2.5, 4.44, 6.0] {
        let wall = WallSpec::straight(length, 0.1);
        let n = required_robot_count(length, l_opt);
        let pieces = decompose_wall(&wall, n, l_opt)?;
        let spans: Vec<String> = pieces
            .pieces
            .iter()
            .map(|p| format!("[{:.3}, {:.3}]", p.start, p.end))
            .collect();
        println!("{length:.3} m -> n = {n}: {}", spans.join(" "));
    }
    Ok(())
}
