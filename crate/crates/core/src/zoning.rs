//! Safe and danger zones, per brick.
//!
//! A brick reachable by one robot is in that robot's safe zone. A brick
//! reachable by several robots is in a danger zone keyed by the set of robots
//! that can reach it; only one robot may work in a given danger zone at a time.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::decomposition::{RobotSpec, SegmentAssignment};
use crate::error::{Error, Result};
use crate::placement::{is_reachable, BasePose};
use crate::wall::BrickPlacement;

/// Sorted set of robot indices naming a shared zone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZoneKey(pub Vec<usize>);

impl fmt::Display for ZoneKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZoneClass {
    Exclusive(usize),
    Shared(ZoneKey),
    Unreachable,
}

impl ZoneClass {
    pub fn name(&self) -> &'static str {
        match self {
            ZoneClass::Exclusive(_) => "exclusive",
            ZoneClass::Shared(_) => "shared",
            ZoneClass::Unreachable => "unreachable",
        }
    }

    pub fn robots(&self) -> Vec<usize> {
        match self {
            ZoneClass::Exclusive(r) => vec![*r],
            ZoneClass::Shared(k) => k.0.clone(),
            ZoneClass::Unreachable => Vec::new(),
        }
    }

    pub fn key(&self) -> Option<&ZoneKey> {
        match self {
            ZoneClass::Shared(k) => Some(k),
            _ => None,
        }
    }

    /// Figure colour: blue safe, yellow pairwise, red everyone.
    pub fn color(&self, robots: usize) -> &'static str {
        match self {
            ZoneClass::Exclusive(_) => "#3b73d9",
            ZoneClass::Shared(k) if robots >= 3 && k.0.len() == robots => "#d93b3b",
            ZoneClass::Shared(_) => "#f2c200",
            ZoneClass::Unreachable => "#9a9a9a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZoneMap {
    pub classes: BTreeMap<usize, ZoneClass>,
    pub robots: usize,
}

impl ZoneMap {
    pub fn class_of(&self, brick_id: usize) -> Option<&ZoneClass> {
        self.classes.get(&brick_id)
    }

    pub fn unreachable(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|(_, c)| **c == ZoneClass::Unreachable)
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn shared_count(&self) -> usize {
        self.classes
            .values()
            .filter(|c| matches!(c, ZoneClass::Shared(_)))
            .count()
    }

    /// `brick_id,zone_class,robot_set`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("brick_id,zone_class,robot_set\n");
        for (id, class) in &self.classes {
            let set: Vec<String> = class.robots().iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{id},{},{}", class.name(), set.join(";"));
        }
        out
    }
}

pub fn classify_zones(bases: &[BasePose], bricks: &[BrickPlacement], robot: &RobotSpec) -> ZoneMap {
    let classes = bricks
        .iter()
        .map(|b| {
            let reachers: Vec<usize> = bases
                .iter()
                .filter(|base| is_reachable(base, b.target_center, robot))
                .map(|base| base.robot_index)
                .collect();
            let class = match reachers.as_slice() {
                [] => ZoneClass::Unreachable,
                [only] => ZoneClass::Exclusive(*only),
                _ => ZoneClass::Shared(ZoneKey(reachers)),
            };
            (b.id, class)
        })
        .collect();
    ZoneMap {
        classes,
        robots: bases.len(),
    }
}

/// Owning robot per brick id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BrickAssignment {
    pub owner: BTreeMap<usize, usize>,
}

impl BrickAssignment {
    pub fn bricks_of(&self, robot: usize) -> Vec<usize> {
        self.owner
            .iter()
            .filter(|(_, &r)| r == robot)
            .map(|(&id, _)| id)
            .collect()
    }
}

/// Each brick goes to the robot whose piece contains its centre arclength.
pub fn assign_bricks(
    zones: &ZoneMap,
    assignment: &SegmentAssignment,
    bricks: &[BrickPlacement],
) -> Result<BrickAssignment> {
    let unreachable = zones.unreachable();
    if !unreachable.is_empty() {
        return Err(Error::Coverage(unreachable));
    }
    let mut owner = BTreeMap::new();
    let mut stranded = Vec::new();
    for b in bricks {
        let Some(piece) = assignment.piece_index_at(b.arclength()) else {
            stranded.push(b.id);
            continue;
        };
        let robot = assignment.pieces[piece].robot_index;
        match zones.class_of(b.id) {
            Some(class) if class.robots().contains(&robot) => {
                owner.insert(b.id, robot);
            }
            _ => stranded.push(b.id),
        }
    }
    if !stranded.is_empty() {
        return Err(Error::Coverage(stranded));
    }
    Ok(BrickAssignment { owner })
}

/// Elevation view of the wall (arclength against height), bricks coloured by zone.
pub fn zones_svg(zones: &ZoneMap, bricks: &[BrickPlacement], brick_height: f64) -> String {
    const SCALE: f64 = 200.0;
    const MARGIN: f64 = 20.0;
    let length = bricks.iter().map(|b| b.arc_end).fold(0.0, f64::max);
    let height = bricks
        .iter()
        .map(|b| b.target_center.z + brick_height / 2.0)
        .fold(0.0, f64::max);
    let width = length * SCALE + 2.0 * MARGIN;
    let total_h = height * SCALE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{total_h:.1}" viewBox="0 0 {width:.1} {total_h:.1}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for b in bricks {
        let class = zones.class_of(b.id).unwrap_or(&ZoneClass::Unreachable);
        let x = MARGIN + b.arc_start * SCALE;
        let top = b.target_center.z + brick_height / 2.0;
        let y = MARGIN + (height - top) * SCALE;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="{}" stroke="black" stroke-width="0.5"><title>brick {} {}</title></rect>"#,
            b.length * SCALE,
            brick_height * SCALE,
            class.color(zones.robots),
            b.id,
            class.name()
        );
    }
    out.push_str("</svg>\n");
    out
}
