//! Wall to makespan in one call: decompose, place, zone, schedule, simulate.

use crate::decomposition::RobotSpec;
use crate::error::Result;
use crate::placement::PlacementPlan;
use crate::schedule::{build_schedule, simulate, Schedule, SimResult, TimeModel};
use crate::wall::{generate_bricks, support_graph, BrickPlacement, PrecedenceGraph, WallSpec};
use crate::zoning::{assign_bricks, classify_zones, BrickAssignment, ZoneMap};

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub plan: PlacementPlan,
    pub bricks: Vec<BrickPlacement>,
    pub precedence: PrecedenceGraph,
    pub zones: ZoneMap,
    pub owners: BrickAssignment,
    pub schedule: Schedule,
    pub result: SimResult,
}

/// Run the full pipeline. `robots` forces the robot count instead of the
/// minimal one; the finished schedule is audited before it is returned.
pub fn run(
    wall: &WallSpec,
    robot: &RobotSpec,
    model: &TimeModel,
    robots: Option<usize>,
) -> Result<PipelineRun> {
    let plan = PlacementPlan::build(wall, robot, robots)?;
    let bricks = generate_bricks(wall);
    let precedence = support_graph(&bricks);
    let zones = classify_zones(&plan.bases, &bricks, robot);
    let owners = assign_bricks(&zones, &plan.assignment, &bricks)?;
    let schedule = build_schedule(&owners, &zones, &precedence, &plan, &bricks, model)?;
    schedule.check(&precedence)?;
    let result = simulate(&schedule);
    Ok(PipelineRun {
        plan,
        bricks,
        precedence,
        zones,
        owners,
        schedule,
        result,
    })
}
