//! Schedule a wall under zone locks and compare with serial assembly.

use brickwork::{pipeline, RobotSpec, TimeModel, WallSpec};

fn main() -> brickwork::Result<()> {
    let wall = WallSpec::straight(4.44, 0.3);
    let run = pipeline::run(&wall, &RobotSpec::default(), &TimeModel::default(), None)?;
    let r = &run.result;

    for (i, t) in r.per_robot.iter().enumerate() {
        println!(
            "robot {i}: busy {:.1} s, idle {:.1} s, done at {:.1} s",
            t.busy, t.idle, t.completion
        );
    }
    println!("makespan {:.1} s", r.makespan);
    println!("serial   {:.1} s ({:.2}x)", r.serial_makespan(), r.serial_makespan() / r.makespan);

    let locks: usize = run.schedule.locks.values().map(Vec::len).sum();
    println!("{locks} shared-zone lock intervals");
    Ok(())
}
