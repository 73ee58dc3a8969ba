//! `plan`, `simulate` and `sweep` commands. Each writes its files into the
//! output directory and returns a short human-readable summary.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::decomposition::RobotSpec;
use crate::error::{Error, Result};
use crate::pipeline;
use crate::placement::PlacementPlan;
use crate::plot::sweep_chart;
use crate::schedule::TimeModel;
use crate::sweep::{best_placement, run_sweep, Objective, ScenarioGrid};
use crate::wall::{generate_bricks, WallSpec};
use crate::zoning::{classify_zones, zones_svg};

pub const DEFAULT_WALL_TOML: &str = include_str!("../config/wall.toml");

#[derive(Debug, Parser)]
#[command(name = "brickwork", version, about = "Plan and simulate multi-robot brick wall assembly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the wall and place robots and material depots.
    Plan(RunConfig),
    /// Plan, schedule under zone locks, and simulate.
    Simulate(RunConfig),
    /// Run the placement/configuration grid search.
    Sweep(RunConfig),
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Wall document (TOML); defaults to the 4.44 m straight wall.
    #[arg(long)]
    pub wall: Option<PathBuf>,
    /// Robot parameters (TOML); defaults to the built-in arm.
    #[arg(long)]
    pub robot: Option<PathBuf>,
    /// Time model (TOML); defaults to the frozen calibration.
    #[arg(long = "time-model")]
    pub time_model: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Objective::Makespan)]
    pub objective: Objective,
    /// Force the robot count instead of the minimal one.
    #[arg(long)]
    pub n: Option<usize>,
    /// Sweep grid (TOML); defaults to the 78-scenario grid.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Also emit SVG graphics.
    #[arg(long)]
    pub svg: bool,
}

impl RunConfig {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        RunConfig {
            wall: None,
            robot: None,
            time_model: None,
            out: out.into(),
            objective: Objective::Makespan,
            n: None,
            grid: None,
            svg: false,
        }
    }

    fn load_wall(&self) -> Result<WallSpec> {
        match &self.wall {
            Some(p) => WallSpec::load(p),
            None => WallSpec::parse_named(DEFAULT_WALL_TOML, "built-in wall"),
        }
    }

    fn load_robot(&self) -> Result<RobotSpec> {
        match &self.robot {
            Some(p) => RobotSpec::load(p),
            None => Ok(RobotSpec::default()),
        }
    }

    fn load_time_model(&self) -> Result<TimeModel> {
        match &self.time_model {
            Some(p) => TimeModel::load(p),
            None => Ok(TimeModel::default()),
        }
    }

    fn load_grid(&self) -> Result<ScenarioGrid> {
        match &self.grid {
            Some(p) => ScenarioGrid::load(p),
            None => Ok(ScenarioGrid::default()),
        }
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out).map_err(|e| Error::io(&self.out, e))?;
        let path = self.out.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Plan(c) => cmd_plan(c),
        Command::Simulate(c) => cmd_simulate(c),
        Command::Sweep(c) => cmd_sweep(c),
    }
}

fn plan_summary(plan: &PlacementPlan, wall: &WallSpec) -> String {
    let mut s = format!(
        "wall length {:.6} m\nn = {}\nL_optimal = {:.6} m\n",
        wall.length(),
        plan.robots(),
        plan.l_optimal
    );
    for (b, d) in plan.bases.iter().zip(&plan.depots) {
        s.push_str(&format!(
            "robot {}: base ({:.6}, {:.6}) depot ({:.6}, {:.6})\n",
            b.robot_index, b.position.x, b.position.y, d.position.x, d.position.y
        ));
    }
    s
}

pub fn cmd_plan(config: &RunConfig) -> Result<String> {
    let wall = config.load_wall()?;
    let robot = config.load_robot()?;
    let plan = PlacementPlan::build(&wall, &robot, config.n)?;
    let bricks = generate_bricks(&wall);
    let zones = classify_zones(&plan.bases, &bricks, &robot);
    config.write("plan.toml", &plan.to_toml())?;
    config.write("zones.csv", &zones.to_csv())?;
    if config.svg {
        config.write("zones.svg", &zones_svg(&zones, &bricks, wall.brick.height))?;
    }
    Ok(plan_summary(&plan, &wall))
}

pub fn cmd_simulate(config: &RunConfig) -> Result<String> {
    let wall = config.load_wall()?;
    let robot = config.load_robot()?;
    let model = config.load_time_model()?;
    let run = pipeline::run(&wall, &robot, &model, config.n)?;
    config.write("plan.toml", &run.plan.to_toml())?;
    config.write("zones.csv", &run.zones.to_csv())?;
    config.write("schedule.csv", &run.schedule.to_csv())?;
    config.write("result.toml", &run.result.to_toml())?;
    if config.svg {
        config.write("zones.svg", &zones_svg(&run.zones, &run.bricks, wall.brick.height))?;
    }
    let mut s = plan_summary(&run.plan, &wall);
    s.push_str(&format!(
        "bricks = {}\nmakespan = {:.6} s\nt_total_sum = {:.6} s\n",
        run.bricks.len(),
        run.result.makespan,
        run.result.t_total_sum
    ));
    Ok(s)
}

pub fn cmd_sweep(config: &RunConfig) -> Result<String> {
    let grid = config.load_grid()?;
    let robot = config.load_robot()?;
    let model = config.load_time_model()?;
    let report = run_sweep(&grid, &robot, &model);
    config.write("sweep.csv", &report.to_csv())?;
    for c in &grid.configurations {
        config.write(&format!("sweep_{c}.svg"), &sweep_chart(&report, *c, config.objective))?;
    }
    let best = best_placement(&report, config.objective)?;
    let infeasible = report.rows.len() - report.feasible().count();
    Ok(format!(
        "scenarios = {} ({} infeasible)\nbest: material_offset = {:.6} m, stand_off = {:.6} m, configuration = {}\n",
        report.rows.len(),
        infeasible,
        best.material_offset,
        best.stand_off,
        best.configuration
    ))
}
