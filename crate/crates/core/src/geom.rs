use serde::{Deserialize, Serialize};

/// Plan-view point in world meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Point reached by walking `distance` along `heading` (radians from +x).
    pub fn advance(self, heading: f64, distance: f64) -> Point2 {
        Point2::new(
            self.x + distance * heading.cos(),
            self.y + distance * heading.sin(),
        )
    }

    /// Perpendicular distance to the infinite line through `a` with direction `heading`.
    pub fn distance_to_line(self, a: Point2, heading: f64) -> f64 {
        let (dx, dy) = (heading.cos(), heading.sin());
        ((self.x - a.x) * dy - (self.y - a.y) * dx).abs()
    }

    /// Signed side of the line: positive on the left of the travel direction.
    pub fn side_of_line(self, a: Point2, heading: f64) -> f64 {
        let (dx, dy) = (heading.cos(), heading.sin());
        dx * (self.y - a.y) - dy * (self.x - a.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn plan(self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}
