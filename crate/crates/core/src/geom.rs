//! Minimal 2D vector helpers shared by the triangle, chain and polygon code.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn dist_to_line(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    (ab.cross(p - a)).abs() / ab.norm()
}

/// Parameter t of the perpendicular foot of `p` on the segment `a`..`b`,
/// with t = 0 at `a` and t = 1 at `b`.
pub fn foot_parameter(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    (p - a).dot(ab) / ab.dot(ab)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_distance() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert!((dist_to_line(Point::new(1.0, 3.0), a, b) - 3.0).abs() < 1e-15);
        assert!((foot_parameter(Point::new(0.5, 3.0), a, b) - 0.25).abs() < 1e-15);
    }
}
