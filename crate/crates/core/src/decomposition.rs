//! Robot parameters, the per-robot coverage length and the equal-length split
//! of a wall into contiguous per-robot pieces.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wall::WallSpec;

/// Tolerance for length comparisons (meters). Far below anything a mason cares about.
pub const LENGTH_EPS: f64 = 1e-9;

/// Intermediate posture used as the middle stage of every pick-and-place motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Configuration {
    #[serde(alias = "Ready-Front-01")]
    ReadyFront01,
    #[serde(alias = "Ready-Front-02")]
    ReadyFront02,
    #[serde(alias = "Ready-Side")]
    ReadySide,
}

impl Configuration {
    pub const ALL: [Configuration; 3] = [
        Configuration::ReadyFront01,
        Configuration::ReadyFront02,
        Configuration::ReadySide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Configuration::ReadyFront01 => "ReadyFront01",
            Configuration::ReadyFront02 => "ReadyFront02",
            Configuration::ReadySide => "ReadySide",
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Arm parameters shared by every robot in a plan.
///
/// `radii` is the r_1..r_7 grid; `stand_off` (r_2 in the placement formulas)
/// and `cover_radius` (r_7) must be members of it. `ready_reach` is how far in
/// front of the base the end effector sits in the middle-stage posture, and
/// `depot_offset` is the default material offset used when planning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RobotSpec {
    pub workspace_radius: f64,
    pub radii: Vec<f64>,
    pub stand_off: f64,
    pub cover_radius: f64,
    pub configuration: Configuration,
    pub ready_reach: f64,
    pub depot_offset: f64,
}

pub const DEFAULT_ROBOT_TOML: &str = include_str!("../config/robot.toml");

impl Default for RobotSpec {
    fn default() -> Self {
        RobotSpec {
            workspace_radius: 0.85,
            radii: vec![0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8],
            stand_off: 0.3,
            cover_radius: 0.8,
            configuration: Configuration::ReadyFront01,
            ready_reach: 0.45,
            depot_offset: 0.4,
        }
    }
}

impl RobotSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "robot document")
    }

    pub fn parse_named(text: &str, source_name: &str) -> Result<Self> {
        let spec: RobotSpec = toml::from_str(text).map_err(|e| Error::Parse {
            source_name: source_name.to_string(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_named(&text, &path.display().to_string())
    }

    pub fn inner_radius(&self) -> f64 {
        self.radii.first().copied().unwrap_or(0.0)
    }

    pub fn with_stand_off(&self, stand_off: f64) -> Self {
        RobotSpec {
            stand_off,
            ..self.clone()
        }
    }

    pub fn with_configuration(&self, configuration: Configuration) -> Self {
        RobotSpec {
            configuration,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.workspace_radius.is_finite() && self.workspace_radius > 0.0) {
            return Err(Error::validation("workspace_radius", "must be > 0"));
        }
        if self.radii.is_empty() {
            return Err(Error::validation("radii", "radius grid is empty"));
        }
        if self.radii[0] <= 0.0 {
            return Err(Error::validation("radii", "radii must be > 0"));
        }
        if self.radii.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::validation("radii", "radii must be strictly increasing"));
        }
        let last = *self.radii.last().unwrap();
        if last >= self.workspace_radius {
            return Err(Error::validation(
                "radii",
                format!("largest radius {last} must be below workspace radius {}", self.workspace_radius),
            ));
        }
        let member = |v: f64| self.radii.iter().any(|r| (r - v).abs() <= LENGTH_EPS);
        if !member(self.stand_off) {
            return Err(Error::validation("stand_off", "must be one of the radii"));
        }
        if !member(self.cover_radius) {
            return Err(Error::validation("cover_radius", "must be one of the radii"));
        }
        if !(self.ready_reach >= 0.0 && self.ready_reach <= self.workspace_radius) {
            return Err(Error::validation("ready_reach", "must lie within the workspace"));
        }
        Ok(())
    }
}

/// Longest wall stretch one robot covers from a base at `stand_off`: the chord
/// of the `cover_radius` circle at that perpendicular distance.
pub fn l_optimal(robot: &RobotSpec) -> Result<f64> {
    chord_length(robot.cover_radius, robot.stand_off)
}

pub fn chord_length(cover_radius: f64, stand_off: f64) -> Result<f64> {
    if cover_radius < stand_off {
        return Err(Error::Domain(format!(
            "cover radius {cover_radius} is smaller than stand-off {stand_off}"
        )));
    }
    Ok(2.0 * (cover_radius * cover_radius - stand_off * stand_off).sqrt())
}

/// Minimal `n` with `wall_length <= n * l_opt`.
pub fn required_robot_count(wall_length: f64, l_opt: f64) -> usize {
    assert!(wall_length > 0.0 && l_opt > 0.0, "lengths must be positive");
    let ratio = wall_length / l_opt;
    // 4.44 / 1.48 evaluates to 3.0000000000000004
    ((ratio - LENGTH_EPS).ceil() as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub robot_index: usize,
    pub start: f64,
    pub end: f64,
}

impl Piece {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

/// Contiguous equal-length pieces along the wall, piece `i` owned by robot `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentAssignment {
    pub pieces: Vec<Piece>,
}

impl SegmentAssignment {
    pub fn robots(&self) -> usize {
        self.pieces.len()
    }

    pub fn piece_length(&self) -> f64 {
        self.pieces.first().map(Piece::length).unwrap_or(0.0)
    }

    /// Piece holding `arclength`; a point on a boundary goes to the lower piece.
    pub fn piece_index_at(&self, arclength: f64) -> Option<usize> {
        let first = self.pieces.first()?;
        if arclength < first.start - LENGTH_EPS {
            return None;
        }
        self.pieces
            .iter()
            .position(|p| arclength <= p.end + LENGTH_EPS)
    }
}

pub fn decompose_wall(spec: &WallSpec, robots: usize, l_opt: f64) -> Result<SegmentAssignment> {
    let wall_length = spec.length();
    if robots == 0 {
        return Err(Error::validation("robots", "need at least one robot"));
    }
    if wall_length > robots as f64 * l_opt + LENGTH_EPS {
        return Err(Error::Infeasible {
            wall_length,
            robots,
            l_optimal: l_opt,
        });
    }
    let step = wall_length / robots as f64;
    let pieces = (0..robots)
        .map(|i| Piece {
            robot_index: i,
            start: i as f64 * step,
            end: if i + 1 == robots {
                wall_length
            } else {
                (i + 1) as f64 * step
            },
        })
        .collect();
    Ok(SegmentAssignment { pieces })
}
