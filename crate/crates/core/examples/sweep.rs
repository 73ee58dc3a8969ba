//! Grid search over material offset, stand-off and ready configuration.
//!
//! cargo run --release --example sweep -- [makespan|sum]

use brickwork::plot::sweep_chart;
use brickwork::{best_placement, run_sweep, Configuration, Objective, RobotSpec, ScenarioGrid, TimeModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let objective = match std::env::args().nth(1).as_deref() {
        Some("sum") => Objective::Sum,
        _ => Objective::Makespan,
    };
    let grid = ScenarioGrid::default();
    let report = run_sweep(&grid, &RobotSpec::default(), &TimeModel::default());

    for c in Configuration::ALL {
        let best = report
            .rows
            .iter()
            .filter(|r| r.scenario.configuration == c)
            .filter_map(|r| r.objective(objective))
            .fold(f64::INFINITY, f64::min);
        println!("{c}: best {best:.3} s");
    }
    let best = best_placement(&report, objective)?;
    println!(
        "overall: offset {:.1} m, stand-off {:.1} m, {}",
        best.material_offset, best.stand_off, best.configuration
    );

    let svg = sweep_chart(&report, best.configuration, objective);
    std::fs::write("sweep.svg", svg)?;
    Ok(())
}
