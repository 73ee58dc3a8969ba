//! Per-action time model, lock-aware list scheduling and makespan accounting.
//!
//! Every action is one pick-and-place: the arm plans (IK), travels from the
//! middle-stage posture to the depot, back, and out to the brick's target.
//! Planning and the pick leg form the pick phase; the place leg is the place
//! phase. An action on a shared brick holds that zone's lock for its whole
//! duration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decomposition::Configuration;
use crate::error::{Error, Result};
use crate::placement::{ready_point, PlacementPlan};
use crate::wall::{BrickPlacement, PrecedenceGraph};
use crate::zoning::{BrickAssignment, ZoneKey, ZoneMap};

/// Slack for interval comparisons in audits (seconds).
const TIME_EPS: f64 = 1e-9;

pub const DEFAULT_TIME_MODEL_TOML: &str = include_str!("../config/time_model.toml");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFactor {
    #[serde(rename = "ReadyFront01")]
    pub ready_front_01: f64,
    #[serde(rename = "ReadyFront02")]
    pub ready_front_02: f64,
    #[serde(rename = "ReadySide")]
    pub ready_side: f64,
}

impl ConfigFactor {
    pub fn get(&self, config: Configuration) -> f64 {
        match config {
            Configuration::ReadyFront01 => self.ready_front_01,
            Configuration::ReadyFront02 => self.ready_front_02,
            Configuration::ReadySide => self.ready_side,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeModel {
    pub t_plan_base: f64,
    pub plan_proximity_penalty: f64,
    pub proximity_threshold: f64,
    pub t_exec_base: f64,
    pub travel_rate: f64,
    pub config_factor: ConfigFactor,
}

impl Default for TimeModel {
    fn default() -> Self {
        TimeModel::parse(DEFAULT_TIME_MODEL_TOML).expect("bundled time model is valid")
    }
}

impl TimeModel {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "time model")
    }

    pub fn parse_named(text: &str, source_name: &str) -> Result<Self> {
        let model: TimeModel = toml::from_str(text).map_err(|e| Error::Parse {
            source_name: source_name.to_string(),
            message: e.to_string(),
        })?;
        model.validate()?;
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_named(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<()> {
        let f = &self.config_factor;
        for (name, v) in [
            ("t_plan_base", self.t_plan_base),
            ("plan_proximity_penalty", self.plan_proximity_penalty),
            ("proximity_threshold", self.proximity_threshold),
            ("t_exec_base", self.t_exec_base),
            ("travel_rate", self.travel_rate),
            ("config_factor.ReadyFront01", f.ready_front_01),
            ("config_factor.ReadyFront02", f.ready_front_02),
            ("config_factor.ReadySide", f.ready_side),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::validation(name, format!("must be >= 0, got {v}")));
            }
        }
        if f.ready_front_01 > f.ready_front_02 || f.ready_front_01 > f.ready_side {
            return Err(Error::validation(
                "config_factor",
                "ReadyFront01 must not be slower than the other configurations",
            ));
        }
        Ok(())
    }

    /// Same model with every time-valued parameter multiplied by `k`. The
    /// threshold (meters) and the dimensionless configuration factors stay put,
    /// so every action time scales by exactly `k`.
    pub fn scaled(&self, k: f64) -> Self {
        TimeModel {
            t_plan_base: self.t_plan_base * k,
            plan_proximity_penalty: self.plan_proximity_penalty * k,
            t_exec_base: self.t_exec_base * k,
            travel_rate: self.travel_rate * k,
            ..*self
        }
    }

    fn plan_time(&self, wall_clearance: f64) -> f64 {
        let shortfall = if self.proximity_threshold > 0.0 {
            ((self.proximity_threshold - wall_clearance) / self.proximity_threshold).max(0.0)
        } else {
            0.0
        };
        self.t_plan_base + self.plan_proximity_penalty * shortfall
    }
}

/// `(t_p, t_e)` for one pick-and-place.
pub fn eval_action_time(
    model: &TimeModel,
    pick_distance: f64,
    place_distance: f64,
    wall_clearance: f64,
    config: Configuration,
) -> (f64, f64) {
    let t_p = model.plan_time(wall_clearance);
    let t_e = model.config_factor.get(config)
        * (model.t_exec_base + model.travel_rate * (pick_distance + place_distance));
    (t_p, t_e)
}

/// Durations of the pick phase (planning + depot leg) and place phase.
fn phase_durations(
    model: &TimeModel,
    pick_distance: f64,
    place_distance: f64,
    wall_clearance: f64,
    config: Configuration,
) -> (f64, f64) {
    let factor = model.config_factor.get(config);
    let t_p = model.plan_time(wall_clearance);
    let half = model.t_exec_base / 2.0;
    (
        t_p + factor * (half + model.travel_rate * pick_distance),
        factor * (half + model.travel_rate * place_distance),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Action {
    pub robot: usize,
    pub brick_id: usize,
    pub pick_start: f64,
    pub pick_end: f64,
    pub place_start: f64,
    pub place_end: f64,
    pub zone: Option<ZoneKey>,
    pub t_plan: f64,
    pub t_exec: f64,
}

impl Action {
    pub fn duration(&self) -> f64 {
        self.place_end - self.pick_start
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LockInterval {
    pub holder: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub per_robot: Vec<Vec<Action>>,
    pub locks: BTreeMap<ZoneKey, Vec<LockInterval>>,
}

impl Schedule {
    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.per_robot.iter().flatten()
    }

    /// Audit every schedule invariant; the first violation is reported.
    pub fn check(&self, precedence: &PrecedenceGraph) -> Result<()> {
        for (r, actions) in self.per_robot.iter().enumerate() {
            let mut last_end = f64::NEG_INFINITY;
            for a in actions {
                if a.robot != r {
                    return Err(Error::Invariant(format!("action for brick {} filed under robot {r}", a.brick_id)));
                }
                let ordered = a.pick_start + TIME_EPS >= last_end
                    && a.pick_end >= a.pick_start
                    && a.place_start + TIME_EPS >= a.pick_end
                    && a.place_end >= a.place_start;
                if !ordered {
                    return Err(Error::Invariant(format!(
                        "robot {r} actions overlap or are out of order at brick {}",
                        a.brick_id
                    )));
                }
                last_end = a.place_end;
            }
        }
        for (key, intervals) in &self.locks {
            let mut sorted = intervals.clone();
            sorted.sort_by(|a, b| a.start.total_cmp(&b.start));
            for w in sorted.windows(2) {
                if w[1].start + TIME_EPS < w[0].end {
                    return Err(Error::Invariant(format!(
                        "zone {key}: robots {} and {} hold the lock simultaneously",
                        w[0].holder, w[1].holder
                    )));
                }
            }
        }
        let placed: BTreeMap<usize, &Action> = self.actions().map(|a| (a.brick_id, a)).collect();
        for &(parent, child) in &precedence.edges {
            let (Some(p), Some(c)) = (placed.get(&parent), placed.get(&child)) else {
                return Err(Error::Invariant(format!("edge {parent}->{child} references an unscheduled brick")));
            };
            if c.place_start + TIME_EPS < p.place_end {
                return Err(Error::Invariant(format!(
                    "brick {child} placed at {:.6} before its support {parent} finished at {:.6}",
                    c.place_start, p.place_end
                )));
            }
        }
        Ok(())
    }

    /// `robot,brick_id,action,start_s,end_s,zone_key`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("robot,brick_id,action,start_s,end_s,zone_key\n");
        for a in self.actions() {
            let zone = a.zone.as_ref().map(ZoneKey::to_string).unwrap_or_default();
            let _ = writeln!(out, "{},{},pick,{:.6},{:.6},{zone}", a.robot, a.brick_id, a.pick_start, a.pick_end);
            let _ = writeln!(out, "{},{},place,{:.6},{:.6},{zone}", a.robot, a.brick_id, a.place_start, a.place_end);
        }
        out
    }
}

/// Greedy list scheduling in virtual time.
///
/// Each robot works through its bricks by course, then arclength. At every step
/// the robot whose next action can start earliest is committed (lowest index on
/// ties). An action may start once the robot is free, every supporting brick is
/// placed and the zone lock (for shared bricks) is released. Because the lowest
/// unfinished course always has its supports placed, some robot can always move.
pub fn build_schedule(
    owners: &BrickAssignment,
    zones: &ZoneMap,
    precedence: &PrecedenceGraph,
    plan: &PlacementPlan,
    bricks: &[BrickPlacement],
    model: &TimeModel,
) -> Result<Schedule> {
    let by_id: BTreeMap<usize, &BrickPlacement> = bricks.iter().map(|b| (b.id, b)).collect();
    let parents = precedence.parents_of();
    let robots = plan.robots();
    let config = plan.configuration();

    let mut queues: Vec<Vec<&BrickPlacement>> = (0..robots)
        .map(|r| {
            let mut q: Vec<&BrickPlacement> = owners
                .bricks_of(r)
                .into_iter()
                .map(|id| by_id.get(&id).copied().ok_or(Error::Coverage(vec![id])))
                .collect::<Result<_>>()?;
            q.sort_by(|a, b| {
                a.course
                    .cmp(&b.course)
                    .then(a.arclength().total_cmp(&b.arclength()))
                    .then(a.id.cmp(&b.id))
            });
            q.reverse();
            Ok(q)
        })
        .collect::<Result<_>>()?;

    let mut robot_free = vec![0.0_f64; robots];
    let mut placed_at: BTreeMap<usize, f64> = BTreeMap::new();
    let mut lock_free: BTreeMap<ZoneKey, f64> = BTreeMap::new();
    let mut schedule = Schedule {
        per_robot: vec![Vec::new(); robots],
        locks: BTreeMap::new(),
    };

    loop {
        let remaining: usize = queues.iter().map(Vec::len).sum();
        if remaining == 0 {
            break;
        }
        let mut best: Option<(f64, usize)> = None;
        for r in 0..robots {
            let Some(brick) = queues[r].last() else { continue };
            let mut start = robot_free[r];
            let mut ready = true;
            for p in parents.get(&brick.id).map(Vec::as_slice).unwrap_or(&[]) {
                match placed_at.get(p) {
                    Some(&t) => start = start.max(t),
                    None => {
                        ready = false;
                        break;
                    }
                }
            }
            if !ready {
                continue;
            }
            if let Some(key) = zones.class_of(brick.id).and_then(|c| c.key()) {
                start = start.max(lock_free.get(key).copied().unwrap_or(0.0));
            }
            if best.is_none_or(|(t, _)| start < t) {
                best = Some((start, r));
            }
        }
        let Some((start, r)) = best else {
            return Err(Error::Deadlock { remaining });
        };

        let brick = queues[r].pop().expect("chosen robot has work");
        let base = &plan.bases[r];
        let ready = ready_point(base, &plan.robot);
        let pick_distance = ready.distance(plan.depots[r].position);
        let place_distance = ready.distance(brick.plan());
        let clearance = base.wall_clearance();
        let (t_plan, t_exec) = eval_action_time(model, pick_distance, place_distance, clearance, config);
        let (pick, place) = phase_durations(model, pick_distance, place_distance, clearance, config);

        let pick_end = start + pick;
        let place_end = pick_end + place;
        let zone = zones.class_of(brick.id).and_then(|c| c.key()).cloned();
        if let Some(key) = &zone {
            lock_free.insert(key.clone(), place_end);
            schedule.locks.entry(key.clone()).or_default().push(LockInterval {
                holder: r,
                start,
                end: place_end,
            });
        }
        robot_free[r] = place_end;
        placed_at.insert(brick.id, place_end);
        schedule.per_robot[r].push(Action {
            robot: r,
            brick_id: brick.id,
            pick_start: start,
            pick_end,
            place_start: pick_end,
            place_end,
            zone,
            t_plan,
            t_exec,
        });
    }
    Ok(schedule)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotTimes {
    pub busy: f64,
    pub idle: f64,
    pub completion: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub makespan: f64,
    pub per_robot: Vec<RobotTimes>,
    /// Sum of per-robot busy time.
    pub t_total_sum: f64,
}

impl SimResult {
    /// Makespan if one robot performed every action back to back.
    pub fn serial_makespan(&self) -> f64 {
        self.t_total_sum
    }

    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "makespan_s = {:.6}", self.makespan);
        let _ = writeln!(out, "t_total_sum_s = {:.6}", self.t_total_sum);
        for (i, r) in self.per_robot.iter().enumerate() {
            out.push_str("\n[[per_robot]]\n");
            let _ = writeln!(out, "robot = {i}");
            let _ = writeln!(out, "busy_s = {:.6}", r.busy);
            let _ = writeln!(out, "idle_s = {:.6}", r.idle);
        }
        out
    }
}

pub fn simulate(schedule: &Schedule) -> SimResult {
    let per_robot: Vec<RobotTimes> = schedule
        .per_robot
        .iter()
        .map(|actions| {
            let busy: f64 = actions.iter().map(Action::duration).sum();
            let completion = actions.last().map_or(0.0, |a| a.place_end);
            RobotTimes {
                busy,
                idle: completion - busy,
                completion,
            }
        })
        .collect();
    SimResult {
        makespan: per_robot.iter().map(|r| r.completion).fold(0.0, f64::max),
        t_total_sum: per_robot.iter().map(|r| r.busy).sum(),
        per_robot,
    }
}
