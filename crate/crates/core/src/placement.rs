//! Robot base poses, material depots and the cylindrical reach test.
//!
//! Bases follow the closed-form pattern for up to three robots: the first two
//! sit on alternate sides of the straight lead-in, the third faces the (possibly
//! turned) tail of the wall. The pattern is evaluated with the actual piece
//! length `L_wall / n`, which equals `L_optimal` when the wall is exactly `n`
//! coverage lengths long.

use std::fmt::Write as _;

use crate::decomposition::{
    decompose_wall, l_optimal, required_robot_count, Configuration, RobotSpec, SegmentAssignment,
    LENGTH_EPS,
};
use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};
use crate::wall::WallSpec;

/// Side of the assigned piece the base stands on, relative to the piece's
/// direction of travel. For a piece running along +x, `PositiveY` is +y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    NegativeY,
    PositiveY,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePose {
    pub robot_index: usize,
    pub position: Point2,
    pub side: Side,
    /// Centerline of the assigned piece: a point on it and its heading.
    pub line_anchor: Point2,
    pub line_heading: f64,
}

impl BasePose {
    /// Perpendicular distance from the base to its piece's centerline.
    pub fn wall_clearance(&self) -> f64 {
        self.position.distance_to_line(self.line_anchor, self.line_heading)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialDepot {
    pub robot_index: usize,
    pub position: Point2,
    pub offset_from_base: f64,
}

/// Base positions from the closed-form pattern.
///
/// `piece` is the per-robot wall length, `theta` the clockwise turn between the
/// second and third piece. With more than three robots the straight-wall
/// alternation `(x0 + (k - 1/2) L, y0 + (-1)^k r)` is used for every `k`.
pub fn closed_form_bases(
    origin: Point2,
    piece: f64,
    stand_off: f64,
    theta: f64,
    robots: usize,
) -> Vec<Point2> {
    let (x0, y0) = (origin.x, origin.y);
    if robots > 3 {
        return (1..=robots)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Point2::new(x0 + (k as f64 - 0.5) * piece, y0 + sign * stand_off)
            })
            .collect();
    }
    let p1 = Point2::new(x0 + 0.5 * piece, y0 - stand_off);
    let p2 = Point2::new(x0 + 1.5 * piece, y0 + stand_off);
    let p3 = Point2::new(
        x0 + (2.0 + theta.cos() / 2.0) * piece + stand_off * theta.sin(),
        y0 - (theta.sin() / 2.0) * piece + stand_off * theta.cos(),
    );
    [p1, p2, p3].into_iter().take(robots).collect()
}

pub fn place_robots(
    spec: &WallSpec,
    assignment: &SegmentAssignment,
    robot: &RobotSpec,
) -> Result<Vec<BasePose>> {
    let robots = assignment.robots();
    let piece = assignment.piece_length();
    let turns = spec.turns();
    if turns.len() > 1 {
        return Err(Error::UnsupportedGeometry(format!(
            "wall has {} turns; at most one is supported",
            turns.len()
        )));
    }
    let theta = match turns.first() {
        None => 0.0,
        Some(&(at, theta)) => {
            if robots != 3 || (at - 2.0 * piece).abs() > LENGTH_EPS {
                return Err(Error::UnsupportedGeometry(format!(
                    "turn at arclength {at:.6} m must sit on the boundary between the second \
                     and third of three pieces (arclength {:.6} m)",
                    2.0 * piece
                )));
            }
            theta
        }
    };
    let origin = spec.origin;
    let positions = closed_form_bases(origin, piece, robot.stand_off, theta, robots);
    let tail_anchor = origin.advance(0.0, 2.0 * piece);
    Ok(positions
        .into_iter()
        .enumerate()
        .map(|(i, position)| {
            let (line_anchor, line_heading) = if robots <= 3 && i == 2 {
                (tail_anchor, -theta)
            } else {
                (origin, 0.0)
            };
            let side = if position.side_of_line(line_anchor, line_heading) >= 0.0 {
                Side::PositiveY
            } else {
                Side::NegativeY
            };
            BasePose {
                robot_index: i,
                position,
                side,
                line_anchor,
                line_heading,
            }
        })
        .collect())
}

/// Depot on the base's local x-axis (aligned with world x) at `offset`.
pub fn place_material(base: &BasePose, offset: f64, robot: &RobotSpec) -> Result<MaterialDepot> {
    let (min, max) = (robot.inner_radius(), robot.cover_radius);
    if !(offset >= min - LENGTH_EPS && offset <= max + LENGTH_EPS) {
        return Err(Error::OutOfAnnulus { offset, min, max });
    }
    Ok(MaterialDepot {
        robot_index: base.robot_index,
        position: Point2::new(base.position.x + offset, base.position.y),
        offset_from_base: offset,
    })
}

/// Cylindrical workspace: height is ignored, the boundary counts as reachable.
pub fn is_reachable(base: &BasePose, point: Point3, robot: &RobotSpec) -> bool {
    base.position.distance(point.plan()) <= robot.workspace_radius
}

/// Where the end effector waits in the middle-stage posture.
pub fn ready_point(base: &BasePose, robot: &RobotSpec) -> Point2 {
    Point2::new(base.position.x + robot.ready_reach, base.position.y)
}

/// Everything needed to build a wall with `n` robots.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementPlan {
    pub robot: RobotSpec,
    pub l_optimal: f64,
    pub assignment: SegmentAssignment,
    pub bases: Vec<BasePose>,
    pub depots: Vec<MaterialDepot>,
}

impl PlacementPlan {
    /// Decompose and place. `robots` overrides the minimal robot count.
    pub fn build(spec: &WallSpec, robot: &RobotSpec, robots: Option<usize>) -> Result<Self> {
        let l_opt = l_optimal(robot)?;
        let n = match robots {
            Some(n) => n,
            None if l_opt > 0.0 => required_robot_count(spec.length(), l_opt),
            None => {
                return Err(Error::Domain(
                    "coverage length is zero; no robot count can cover the wall".into(),
                ))
            }
        };
        let assignment = decompose_wall(spec, n, l_opt)?;
        let bases = place_robots(spec, &assignment, robot)?;
        let depots = bases
            .iter()
            .map(|b| place_material(b, robot.depot_offset, robot))
            .collect::<Result<Vec<_>>>()?;
        Ok(PlacementPlan {
            robot: robot.clone(),
            l_optimal: l_opt,
            assignment,
            bases,
            depots,
        })
    }

    pub fn robots(&self) -> usize {
        self.bases.len()
    }

    pub fn configuration(&self) -> Configuration {
        self.robot.configuration
    }

    /// Plan as TOML text with fixed 6-decimal numbers.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "robots = {}", self.robots());
        let _ = writeln!(out, "l_optimal_m = {:.6}", self.l_optimal);
        let _ = writeln!(out, "piece_length_m = {:.6}", self.assignment.piece_length());
        let _ = writeln!(out, "stand_off_m = {:.6}", self.robot.stand_off);
        for (base, depot) in self.bases.iter().zip(&self.depots) {
            let piece = &self.assignment.pieces[base.robot_index];
            out.push_str("\n[[robot]]\n");
            let _ = writeln!(out, "index = {}", base.robot_index);
            let _ = writeln!(out, "base_x = {:.6}", base.position.x);
            let _ = writeln!(out, "base_y = {:.6}", base.position.y);
            let _ = writeln!(out, "depot_x = {:.6}", depot.position.x);
            let _ = writeln!(out, "depot_y = {:.6}", depot.position.y);
            let _ = writeln!(out, "piece_start_m = {:.6}", piece.start);
            let _ = writeln!(out, "piece_end_m = {:.6}", piece.end);
            let _ = writeln!(out, "configuration = \"{}\"", self.configuration());
        }
        out
    }
}
