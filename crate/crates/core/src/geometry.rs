use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Rotation by +90°.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Self {
        Segment { start, end }
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn direction(&self) -> Point {
        self.end - self.start
    }

    pub fn at(&self, t: f64) -> Point {
        self.start.lerp(self.end, t)
    }

    /// Distance from `p` to the closest point of the segment, and that
    /// point's parameter in `[0, 1]`.
    pub fn closest(&self, p: Point) -> (f64, f64) {
        let d = self.direction();
        let len2 = d.dot(d);
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((p - self.start).dot(d) / len2).clamp(0.0, 1.0)
        };
        (self.at(t).distance(p), t)
    }
}

/// Mirror image of `p` across the line through `a` and `b`.
pub fn reflect_point(p: Point, a: Point, b: Point) -> Result<Point> {
    Ok(Isometry::reflection(a, b)?.apply(p))
}

/// Parameters `(s, t)` of a transverse crossing of two segments, both
/// strictly inside their segments by at least `margin`.
pub fn proper_intersection(a: &Segment, b: &Segment, margin: f64) -> Option<(f64, f64)> {
    let d1 = a.direction();
    let d2 = b.direction();
    let den = d1.cross(d2);
    let scale = d1.norm() * d2.norm();
    if den.abs() <= 1e-12 * scale {
        return None;
    }
    let w = b.start - a.start;
    let s = w.cross(d2) / den;
    let t = w.cross(d1) / den;
    if s > margin && s < 1.0 - margin && t > margin && t < 1.0 - margin {
        Some((s, t))
    } else {
        None
    }
}

/// Whether two segments are parallel and overlap along a stretch longer than `tol`.
pub fn collinear_overlap(a: &Segment, b: &Segment, tol: f64) -> bool {
    let d = a.direction();
    let len = d.norm();
    if len == 0.0 {
        return false;
    }
    let u = d * (1.0 / len);
    let off = |p: Point| u.cross(p - a.start).abs();
    if off(b.start) > tol || off(b.end) > tol {
        return false;
    }
    let (mut lo, mut hi) = ((b.start - a.start).dot(u), (b.end - a.start).dot(u));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    hi.min(len) - lo.max(0.0) > tol
}

/// An affine isometry of the plane, `p ↦ linear·p + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    /// Row-major 2×2 orthogonal matrix.
    pub linear: [[f64; 2]; 2],
    pub offset: Point,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        linear: [[1.0, 0.0], [0.0, 1.0]],
        offset: Point::ORIGIN,
    };

    pub fn reflection(a: Point, b: Point) -> Result<Self> {
        let d = b - a;
        let len = d.norm();
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::InvalidInput(
                "reflection line needs two distinct points".into(),
            ));
        }
        let u = d * (1.0 / len);
        let (c2, s2) = (u.x * u.x - u.y * u.y, 2.0 * u.x * u.y);
        let linear = [[c2, s2], [s2, -c2]];
        let la = Point::new(
            linear[0][0] * a.x + linear[0][1] * a.y,
            linear[1][0] * a.x + linear[1][1] * a.y,
        );
        Ok(Isometry {
            linear,
            offset: a - la,
        })
    }

    /// Reflection across the line through `p` with direction angle `angle`.
    pub fn reflection_at(p: Point, angle: f64) -> Self {
        Self::reflection(p, p + Point::polar(1.0, angle)).expect("unit direction")
    }

    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.offset
    }

    pub fn apply_linear(&self, v: Point) -> Point {
        Point::new(
            self.linear[0][0] * v.x + self.linear[0][1] * v.y,
            self.linear[1][0] * v.x + self.linear[1][1] * v.y,
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m = &self.linear;
        let n = &other.linear;
        let mut linear = [[0.0; 2]; 2];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[i][0] * n[0][j] + m[i][1] * n[1][j];
            }
        }
        Isometry {
            linear,
            offset: self.apply(other.offset),
        }
    }

    pub fn determinant(&self) -> f64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.determinant() < 0.0
    }
}
