//! Wall geometry, running-bond brick layout and the support (precedence) graph.
//!
//! The wall is a polyline starting at `origin` heading along +x. Each segment
//! after the first turns by its `turn_angle` relative to the previous heading;
//! a positive angle turns clockwise (towards -y), which is the convention the
//! corner placement formula for the third robot is written in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};

/// Slack used when tiling courses so accumulated float error never yields a sliver brick.
const TILE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrickDims {
    pub length: f64,
    pub depth: f64,
    pub height: f64,
}

impl Default for BrickDims {
    fn default() -> Self {
        BrickDims {
            length: 0.20,
            depth: 0.10,
            height: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Bond {
    #[default]
    #[serde(rename = "running")]
    Running,
}

/// One straight run of the wall. The turn angle is kept in degrees, exactly as
/// written in the wall document, so documents round-trip bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub length: f64,
    pub turn_angle_deg: f64,
}

impl Segment {
    pub fn straight(length: f64) -> Self {
        Segment {
            length,
            turn_angle_deg: 0.0,
        }
    }

    /// Segment turning by `turn_radians` relative to the previous heading.
    pub fn turned(length: f64, turn_radians: f64) -> Self {
        Segment {
            length,
            turn_angle_deg: turn_radians.to_degrees(),
        }
    }

    pub fn turn_angle(&self) -> f64 {
        self.turn_angle_deg.to_radians()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallSpec {
    pub origin: Point2,
    pub segments: Vec<Segment>,
    pub height: f64,
    #[serde(default)]
    pub brick: BrickDims,
    #[serde(default)]
    pub bond: Bond,
}

/// Start point, heading and starting arclength of one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentFrame {
    pub start: Point2,
    pub heading: f64,
    pub arc_start: f64,
    pub length: f64,
}

impl SegmentFrame {
    pub fn point_at(&self, local: f64) -> Point2 {
        self.start.advance(self.heading, local)
    }

    pub fn end(&self) -> Point2 {
        self.point_at(self.length)
    }
}

impl WallSpec {
    /// Straight wall with default bricks.
    pub fn straight(length: f64, height: f64) -> Self {
        WallSpec {
            origin: Point2::ORIGIN,
            segments: vec![Segment::straight(length)],
            height,
            brick: BrickDims::default(),
            bond: Bond::Running,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "wall document")
    }

    pub fn parse_named(text: &str, source_name: &str) -> Result<Self> {
        let spec: WallSpec = toml::from_str(text).map_err(|e| Error::Parse {
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

    pub fn to_document(&self) -> String {
        toml::to_string(self).expect("wall spec is always representable as TOML")
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if self.segments.is_empty() {
            return Err(Error::validation("segments", "wall needs at least one segment"));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !positive(s.length) {
                return Err(Error::validation(
                    format!("segments[{i}].length"),
                    format!("must be > 0, got {}", s.length),
                ));
            }
            if !s.turn_angle_deg.is_finite() || s.turn_angle_deg.abs() >= 180.0 {
                return Err(Error::validation(
                    format!("segments[{i}].turn_angle_deg"),
                    format!("must lie in (-180, 180), got {}", s.turn_angle_deg),
                ));
            }
        }
        if self.segments[0].turn_angle_deg != 0.0 {
            return Err(Error::validation(
                "segments[0].turn_angle_deg",
                "first segment must have turn angle 0",
            ));
        }
        if !positive(self.height) {
            return Err(Error::validation(
                "height",
                format!("must be > 0, got {}", self.height),
            ));
        }
        for (name, v) in [
            ("brick.length", self.brick.length),
            ("brick.depth", self.brick.depth),
            ("brick.height", self.brick.height),
        ] {
            if !positive(v) {
                return Err(Error::validation(name, format!("must be > 0, got {v}")));
            }
        }
        if self.height + TILE_EPS < self.brick.height {
            return Err(Error::validation(
                "height",
                format!(
                    "wall height {} is lower than one brick course ({})",
                    self.height, self.brick.height
                ),
            ));
        }
        let shortest = self
            .segments
            .iter()
            .map(|s| s.length)
            .fold(f64::INFINITY, f64::min);
        if self.brick.length > shortest {
            return Err(Error::validation(
                "brick.length",
                format!(
                    "brick length {} exceeds shortest segment {}",
                    self.brick.length, shortest
                ),
            ));
        }
        if !self.origin.x.is_finite() || !self.origin.y.is_finite() {
            return Err(Error::validation("origin", "coordinates must be finite"));
        }
        Ok(())
    }

    /// Total wall length: the sum of segment lengths.
    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn courses(&self) -> usize {
        ((self.height / self.brick.height) + TILE_EPS).floor().max(1.0) as usize
    }

    pub fn frames(&self) -> Vec<SegmentFrame> {
        let mut frames = Vec::with_capacity(self.segments.len());
        let mut start = self.origin;
        let mut heading = 0.0_f64;
        let mut arc = 0.0;
        for s in &self.segments {
            heading -= s.turn_angle();
            let frame = SegmentFrame {
                start,
                heading,
                arc_start: arc,
                length: s.length,
            };
            start = frame.end();
            arc += s.length;
            frames.push(frame);
        }
        frames
    }

    /// Plan-view point at `arclength` along the centerline (clamped to the wall).
    pub fn point_at(&self, arclength: f64) -> Point2 {
        let frames = self.frames();
        let frame = frames
            .iter()
            .find(|f| arclength <= f.arc_start + f.length)
            .unwrap_or_else(|| frames.last().expect("validated wall has segments"));
        frame.point_at((arclength - frame.arc_start).clamp(0.0, frame.length))
    }

    /// Joints with a non-zero turn, as `(arclength, turn radians)`.
    pub fn turns(&self) -> Vec<(f64, f64)> {
        self.frames()
            .iter()
            .zip(&self.segments)
            .filter(|(_, s)| s.turn_angle_deg != 0.0)
            .map(|(f, s)| (f.arc_start, s.turn_angle()))
            .collect()
    }
}

/// Total wall length (sum of segment lengths).
pub fn wall_length(spec: &WallSpec) -> f64 {
    spec.length()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrickPlacement {
    pub id: usize,
    pub target_center: Point3,
    pub course: usize,
    pub segment_index: usize,
    /// Cut bricks are shorter than the nominal brick length.
    pub length: f64,
    /// Extent along the wall centerline, in global arclength.
    pub arc_start: f64,
    pub arc_end: f64,
}

impl BrickPlacement {
    pub fn arclength(&self) -> f64 {
        0.5 * (self.arc_start + self.arc_end)
    }

    pub fn plan(&self) -> Point2 {
        self.target_center.plan()
    }
}

/// Split `[0, len]` into brick runs for one course.
fn tile_course(len: f64, brick: f64, offset_course: bool) -> Vec<(f64, f64)> {
    if len < brick - TILE_EPS {
        return vec![(0.0, len)];
    }
    let mut runs = Vec::new();
    let mut pos = 0.0;
    let mut next = if offset_course { brick / 2.0 } else { brick };
    while pos < len - TILE_EPS {
        let end = if pos + next > len - TILE_EPS { len } else { pos + next };
        runs.push((pos, end));
        pos = end;
        next = brick;
    }
    runs
}

/// Lay out the wall in running bond, course by course. Ids are assigned in
/// (course, segment, position) order so the layout is fully deterministic.
pub fn generate_bricks(spec: &WallSpec) -> Vec<BrickPlacement> {
    let frames = spec.frames();
    let mut bricks = Vec::new();
    for course in 0..spec.courses() {
        let z = (course as f64 + 0.5) * spec.brick.height;
        for (segment_index, frame) in frames.iter().enumerate() {
            for (a, b) in tile_course(frame.length, spec.brick.length, course % 2 == 1) {
                let c = frame.point_at(0.5 * (a + b));
                bricks.push(BrickPlacement {
                    id: bricks.len(),
                    target_center: Point3::new(c.x, c.y, z),
                    course,
                    segment_index,
                    length: b - a,
                    arc_start: frame.arc_start + a,
                    arc_end: frame.arc_start + b,
                });
            }
        }
    }
    bricks
}

/// Brick list as CSV: `id,x,y,z,course,segment_index`.
pub fn bricks_csv(bricks: &[BrickPlacement]) -> String {
    let mut out = String::from("id,x,y,z,course,segment_index\n");
    for b in bricks {
        let c = b.target_center;
        let _ = writeln!(
            out,
            "{},{:.6},{:.6},{:.6},{},{}",
            b.id, c.x, c.y, c.z, b.course, b.segment_index
        );
    }
    out
}

/// Supporting-brick -> supported-brick edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrecedenceGraph {
    pub edges: BTreeSet<(usize, usize)>,
}

impl PrecedenceGraph {
    pub fn parents_of(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            map.entry(b).or_default().push(a);
        }
        map
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Edge `a -> b` iff `b` sits one course above `a` and their extents along the
/// wall overlap by a positive length.
pub fn support_graph(bricks: &[BrickPlacement]) -> PrecedenceGraph {
    let mut by_course: BTreeMap<usize, Vec<&BrickPlacement>> = BTreeMap::new();
    for b in bricks {
        by_course.entry(b.course).or_default().push(b);
    }
    let mut edges = BTreeSet::new();
    for (&course, upper) in &by_course {
        let Some(lower) = course.checked_sub(1).and_then(|c| by_course.get(&c)) else {
            continue;
        };
        for b in upper {
            for a in lower {
                let overlap = b.arc_end.min(a.arc_end) - b.arc_start.max(a.arc_start);
                if overlap > TILE_EPS {
                    edges.insert((a.id, b.id));
                }
            }
        }
    }
    PrecedenceGraph { edges }
}
