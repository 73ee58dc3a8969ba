//! Grid search over material offset, stand-off and middle-stage configuration.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{Configuration, RobotSpec};
use crate::error::{Error, Result};
use crate::pipeline;
use crate::schedule::{RobotTimes, TimeModel};
use crate::wall::WallSpec;

pub const DEFAULT_GRID_TOML: &str = include_str!("../config/grid.toml");

/// Relative slack under which two objective values count as a tie.
const TIE_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioGrid {
    pub material_offsets: Vec<f64>,
    /// Offsets evaluated only with `ReadyFront01`.
    #[serde(default)]
    pub extra_offsets_front01: Vec<f64>,
    pub stand_offs: Vec<f64>,
    pub configurations: Vec<Configuration>,
    pub wall: WallSpec,
}

impl Default for ScenarioGrid {
    fn default() -> Self {
        ScenarioGrid::parse(DEFAULT_GRID_TOML).expect("bundled grid is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub configuration: Configuration,
    pub material_offset: f64,
    pub stand_off: f64,
}

impl ScenarioGrid {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "grid document")
    }

    pub fn parse_named(text: &str, source_name: &str) -> Result<Self> {
        let grid: ScenarioGrid = toml::from_str(text).map_err(|e| Error::Parse {
            source_name: source_name.to_string(),
            message: e.to_string(),
        })?;
        grid.wall.validate()?;
        Ok(grid)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_named(&text, &path.display().to_string())
    }

    pub fn scenarios(&self) -> Vec<Scenario> {
        let mut out = Vec::new();
        for &configuration in &self.configurations {
            let extra: &[f64] = if configuration == Configuration::ReadyFront01 {
                &self.extra_offsets_front01
            } else {
                &[]
            };
            for &material_offset in self.material_offsets.iter().chain(extra) {
                for &stand_off in &self.stand_offs {
                    out.push(Scenario {
                        configuration,
                        material_offset,
                        stand_off,
                    });
                }
            }
        }
        out
    }

    pub fn scenario_count(&self) -> usize {
        let front01 = self.configurations.contains(&Configuration::ReadyFront01) as usize;
        self.configurations.len() * self.material_offsets.len() * self.stand_offs.len()
            + front01 * self.extra_offsets_front01.len() * self.stand_offs.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Feasible {
        makespan: f64,
        t_total_sum: f64,
        per_robot: Vec<RobotTimes>,
    },
    Infeasible(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub scenario: Scenario,
    pub outcome: Outcome,
}

impl SweepRow {
    pub fn objective(&self, objective: Objective) -> Option<f64> {
        match &self.outcome {
            Outcome::Feasible { makespan, .. } if objective == Objective::Makespan => Some(*makespan),
            Outcome::Feasible { t_total_sum, .. } => Some(*t_total_sum),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Feasible { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Objective {
    #[default]
    Makespan,
    Sum,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

fn scenario_order(a: &Scenario, b: &Scenario) -> Ordering {
    a.configuration
        .cmp(&b.configuration)
        .then(a.material_offset.total_cmp(&b.material_offset))
        .then(a.stand_off.total_cmp(&b.stand_off))
}

pub fn run_scenario(grid_wall: &WallSpec, robot: &RobotSpec, model: &TimeModel, s: Scenario) -> SweepRow {
    let mut robot = robot.with_stand_off(s.stand_off).with_configuration(s.configuration);
    robot.depot_offset = s.material_offset;
    let outcome = robot
        .validate()
        .and_then(|_| {
            if s.stand_off >= robot.workspace_radius {
                return Err(Error::Domain(format!(
                    "stand-off {} is outside the workspace",
                    s.stand_off
                )));
            }
            pipeline::run(grid_wall, &robot, model, None)
        })
        .map_or_else(
            |e| Outcome::Infeasible(e.to_string()),
            |run| Outcome::Feasible {
                makespan: run.result.makespan,
                t_total_sum: run.result.t_total_sum,
                per_robot: run.result.per_robot,
            },
        );
    SweepRow {
        scenario: s,
        outcome,
    }
}

/// Evaluate every scenario (in parallel) and return rows in canonical order.
pub fn run_sweep(grid: &ScenarioGrid, robot: &RobotSpec, model: &TimeModel) -> SweepReport {
    let mut rows: Vec<SweepRow> = grid
        .scenarios()
        .into_par_iter()
        .map(|s| run_scenario(&grid.wall, robot, model, s))
        .collect();
    rows.sort_by(|a, b| scenario_order(&a.scenario, &b.scenario));
    SweepReport { rows }
}

impl SweepReport {
    pub fn feasible(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.is_feasible())
    }

    pub fn find(&self, configuration: Configuration, material_offset: f64, stand_off: f64) -> Option<&SweepRow> {
        self.rows.iter().find(|r| {
            r.scenario.configuration == configuration
                && (r.scenario.material_offset - material_offset).abs() < 1e-12
                && (r.scenario.stand_off - stand_off).abs() < 1e-12
        })
    }

    pub fn max_robots(&self) -> usize {
        self.rows
            .iter()
            .map(|r| match &r.outcome {
                Outcome::Feasible { per_robot, .. } => per_robot.len(),
                Outcome::Infeasible(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let robots = self.max_robots();
        let mut out = String::from("config,material_offset_m,stand_off_m,makespan_s,t_total_sum_s");
        for i in 0..robots {
            let _ = write!(out, ",robot{i}_busy_s");
        }
        out.push_str(",feasible\n");
        for row in &self.rows {
            let s = &row.scenario;
            let _ = write!(out, "{},{:.6},{:.6}", s.configuration, s.material_offset, s.stand_off);
            match &row.outcome {
                Outcome::Feasible {
                    makespan,
                    t_total_sum,
                    per_robot,
                } => {
                    let _ = write!(out, ",{makespan:.6},{t_total_sum:.6}");
                    for i in 0..robots {
                        match per_robot.get(i) {
                            Some(t) => {
                                let _ = write!(out, ",{:.6}", t.busy);
                            }
                            None => out.push(','),
                        }
                    }
                    out.push_str(",true\n");
                }
                Outcome::Infeasible(_) => {
                    out.push_str(",,");
                    out.push_str(&",".repeat(robots));
                    out.push_str(",false\n");
                }
            }
        }
        out
    }
}

/// Argmin of the objective over feasible rows. Values within a relative
/// `1e-9` of the minimum tie; ties go to the smaller stand-off, then the
/// smaller offset, then configuration order.
pub fn best_placement(report: &SweepReport, objective: Objective) -> Result<Scenario> {
    let scored: Vec<(f64, &Scenario)> = report
        .rows
        .iter()
        .filter_map(|r| r.objective(objective).map(|v| (v, &r.scenario)))
        .collect();
    let min = scored
        .iter()
        .map(|(v, _)| *v)
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyReport)?;
    let cutoff = min + TIE_RTOL * min.abs();
    scored
        .into_iter()
        .filter(|(v, _)| *v <= cutoff)
        .map(|(_, s)| *s)
        .min_by(|a, b| {
            a.stand_off
                .total_cmp(&b.stand_off)
                .then(a.material_offset.total_cmp(&b.material_offset))
                .then(a.configuration.cmp(&b.configuration))
        })
        .ok_or(Error::EmptyReport)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_grid() -> ScenarioGrid {
        ScenarioGrid {
            material_offsets: vec![0.4],
            extra_offsets_front01: vec![],
            stand_offs: vec![0.3],
            configurations: vec![Configuration::ReadyFront01],
            wall: WallSpec::straight(0.6, 0.1),
        }
    }

    #[test]
    fn default_grid_has_78_scenarios() {
        let g = ScenarioGrid::default();
        assert_eq!(g.scenario_count(), 78);
        assert_eq!(g.scenarios().len(), 78);
    }

    #[test]
    fn one_cell_grid_gives_one_row() {
        let report = run_sweep(&tiny_grid(), &RobotSpec::default(), &TimeModel::default());
        assert_eq!(report.rows.len(), 1);
        assert!(report.rows[0].is_feasible());
        let best = best_placement(&report, Objective::Makespan).unwrap();
        assert_eq!(best, report.rows[0].scenario);
    }

    #[test]
    fn out_of_reach_offset_is_flagged_not_fatal() {
        let mut g = tiny_grid();
        g.material_offsets.push(0.9);
        let report = run_sweep(&g, &RobotSpec::default(), &TimeModel::default());
        assert_eq!(report.rows.len(), 2);
        let bad = report.find(Configuration::ReadyFront01, 0.9, 0.3).unwrap();
        match &bad.outcome {
            Outcome::Infeasible(msg) => assert!(msg.contains("annulus"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(report.to_csv().lines().last().unwrap().ends_with(",false"));
    }

    #[test]
    fn empty_report_has_no_best() {
        assert!(matches!(
            best_placement(&SweepReport::default(), Objective::Makespan),
            Err(Error::EmptyReport)
        ));
    }

    #[test]
    fn ties_prefer_smaller_stand_off_then_offset() {
        let row = |o: f64, s: f64, v: f64| SweepRow {
            scenario: Scenario { configuration: Configuration::ReadySide, material_offset: o, stand_off: s },
            outcome: Outcome::Feasible { makespan: v, t_total_sum: v, per_robot: vec![] },
        };
        let report = SweepReport {
            rows: vec![row(0.5, 0.4, 10.0), row(0.5, 0.3, 10.0 + 1e-12), row(0.4, 0.3, 10.0), row(0.3, 0.2, 11.0)],
        };
        let best = best_placement(&report, Objective::Makespan).unwrap();
        assert_eq!((best.material_offset, best.stand_off), (0.4, 0.3));
    }
}
