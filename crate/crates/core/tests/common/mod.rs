//! Randomized scenario corpus and brute-force oracles shared by the
//! integration suites. Nothing here calls into the code path it audits.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use brickwork::decomposition::chord_length;
use brickwork::wall::Segment;
use brickwork::{
    BrickPlacement, Configuration, Point2, RobotSpec, Schedule, TimeModel, WallSpec,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub const STAND_OFFS: [f64; 6] = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7];

#[derive(Debug, Clone)]
pub struct RandomScenario {
    pub wall: WallSpec,
    pub robot: RobotSpec,
    pub model: TimeModel,
    pub robots: Option<usize>,
}

/// Straight or right-tailed wall, random stand-off, offset, configuration,
/// brick size and (sometimes) an extra robot beyond the minimum.
pub fn random_scenario(rng: &mut TestRng) -> RandomScenario {
    let stand_off = *STAND_OFFS.choose(rng).unwrap();
    let mut robot = RobotSpec::default().with_stand_off(stand_off);
    robot.configuration = *Configuration::ALL.choose(rng).unwrap();
    robot.depot_offset = rng.gen_range(0.2..=0.8);
    let l_opt = chord_length(robot.cover_radius, stand_off).unwrap();

    let brick_length = *[0.2, 0.25, 0.3].choose(rng).unwrap();
    let mut wall = WallSpec::straight(1.0, 0.05);
    wall.brick.length = brick_length;
    wall.height = 0.05 * rng.gen_range(1..=4) as f64;
    wall.origin = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));

    let mut robots = None;
    if rng.gen_bool(0.3) {
        // three pieces, turn at the second boundary
        let piece = rng.gen_range(0.3..=l_opt);
        let theta = rng.gen_range(-80.0f64..80.0).to_radians();
        wall.segments = vec![Segment::straight(2.0 * piece), Segment::turned(piece, theta)];
        robots = Some(3);
    } else {
        let len = rng.gen_range(brick_length..6.0);
        wall.segments = vec![Segment::straight(len)];
        if rng.gen_bool(0.2) {
            let n = (len / l_opt - 1e-9).ceil().max(1.0) as usize;
            robots = Some(n + 1);
        }
    }

    let mut model = TimeModel::default();
    if rng.gen_bool(0.5) {
        model.t_plan_base = rng.gen_range(0.0..3.0);
        model.plan_proximity_penalty = rng.gen_range(0.0..6.0);
        model.t_exec_base = rng.gen_range(0.0..4.0);
        model.travel_rate = rng.gen_range(0.0..8.0);
    }
    RandomScenario {
        wall,
        robot,
        model,
        robots,
    }
}

/// Robots that can reach each brick, by direct distance computation.
pub fn brute_force_reachers(
    bases: &[Point2],
    bricks: &[BrickPlacement],
    radius: f64,
) -> BTreeMap<usize, Vec<usize>> {
    bricks
        .iter()
        .map(|b| {
            let reach = bases
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    let dx = p.x - b.target_center.x;
                    let dy = p.y - b.target_center.y;
                    (dx * dx + dy * dy).sqrt() <= radius
                })
                .map(|(i, _)| i)
                .collect();
            (b.id, reach)
        })
        .collect()
}

/// Support edges by pairwise interval overlap.
pub fn brute_force_supports(bricks: &[BrickPlacement]) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for a in bricks {
        for b in bricks {
            if b.course == a.course + 1 {
                let overlap = a.arc_end.min(b.arc_end) - a.arc_start.max(b.arc_start);
                if overlap > 1e-9 {
                    edges.insert((a.id, b.id));
                }
            }
        }
    }
    edges
}

/// First pair of different robots holding the same zone key at overlapping
/// times, found by checking every pair of actions.
pub fn mutual_exclusion_violation(schedule: &Schedule) -> Option<String> {
    let actions: Vec<_> = schedule.actions().filter(|a| a.zone.is_some()).collect();
    for (i, a) in actions.iter().enumerate() {
        for b in &actions[i + 1..] {
            if a.robot != b.robot && a.zone == b.zone {
                let overlap = a.place_end.min(b.place_end) - a.pick_start.max(b.pick_start);
                if overlap > 1e-9 {
                    return Some(format!(
                        "robots {} and {} overlap in zone {:?} for {overlap:.6} s",
                        a.robot, b.robot, a.zone
                    ));
                }
            }
        }
    }
    None
}

/// Action time recomputed from geometry and the model formula.
pub fn expected_action_time(
    model: &TimeModel,
    base: Point2,
    depot: Point2,
    ready_reach: f64,
    target: Point2,
    stand_off: f64,
    config: Configuration,
) -> f64 {
    let ready = Point2::new(base.x + ready_reach, base.y);
    let pick = ((ready.x - depot.x).powi(2) + (ready.y - depot.y).powi(2)).sqrt();
    let place = ((ready.x - target.x).powi(2) + (ready.y - target.y).powi(2)).sqrt();
    let t = model.proximity_threshold;
    let penalty = if stand_off < t {
        model.plan_proximity_penalty * (t - stand_off) / t
    } else {
        0.0
    };
    let factor = match config {
        Configuration::ReadyFront01 => model.config_factor.ready_front_01,
        Configuration::ReadyFront02 => model.config_factor.ready_front_02,
        Configuration::ReadySide => model.config_factor.ready_side,
    };
    model.t_plan_base + penalty + factor * (model.t_exec_base + model.travel_rate * (pick + place))
}
