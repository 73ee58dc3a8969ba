//! Planning and discrete-event simulation for multi-robot brick wall assembly.
//!
//! The pipeline runs wall -> equal-length pieces -> robot bases and material
//! depots -> safe/danger zones per brick -> lock-aware schedule -> makespan.
//! [`sweep`] repeats it over a grid of stand-offs, material offsets and arm
//! configurations to find the fastest placement.
//!
//! ```
//! use brickwork::{pipeline, RobotSpec, TimeModel, WallSpec};
//!
//! let wall = WallSpec::straight(4.44, 0.30);
//! let run = pipeline::run(&wall, &RobotSpec::default(), &TimeModel::default(), None).unwrap();
//! assert_eq!(run.plan.robots(), 3);
//! assert!(run.result.makespan < run.result.t_total_sum);
//! ```

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod geom;
pub mod pipeline;
pub mod placement;
pub mod plot;
pub mod schedule;
pub mod sweep;
pub mod wall;
pub mod zoning;

pub use decomposition::{
    decompose_wall, l_optimal, required_robot_count, Configuration, RobotSpec, SegmentAssignment,
};
pub use error::{Error, Result};
pub use geom::{Point2, Point3};
pub use placement::{is_reachable, place_material, place_robots, BasePose, MaterialDepot, PlacementPlan};
pub use schedule::{build_schedule, eval_action_time, simulate, Schedule, SimResult, TimeModel};
pub use sweep::{best_placement, run_sweep, Objective, ScenarioGrid, SweepReport};
pub use wall::{generate_bricks, support_graph, wall_length, BrickPlacement, PrecedenceGraph, WallSpec};
pub use zoning::{assign_bricks, classify_zones, BrickAssignment, ZoneClass, ZoneMap};
