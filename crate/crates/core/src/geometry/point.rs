use core::fmt;

use super::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        self.sub(o).norm()
    }

    /// Unit vector at angle `phi` from the positive x-axis.
    pub fn polar(phi: f64) -> Point {
        Point::new(libm::cos(phi), libm::sin(phi))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Foot of the perpendicular from `p` to the line through `a` and `b`.
pub fn perpendicular_foot(p: Point, a: Point, b: Point) -> Result<Point, GeometryError> {
    let u = b.sub(a);
    let uu = u.dot(u);
    if uu == 0.0 {
        return Err(GeometryError::Degenerate("line through coincident points".into()));
    }
    Ok(a.add(u.scale(p.sub(a).dot(u) / uu)))
}

/// Intersection of the lines `p + s*d` and `q + t*e`.
pub fn line_intersection(p: Point, d: Point, q: Point, e: Point) -> Result<Point, GeometryError> {
    let den = d.cross(e);
    if libm::fabs(den) <= 1e-15 * d.norm() * e.norm() {
        return Err(GeometryError::NoIntersection("parallel lines".into()));
    }
    let s = q.sub(p).cross(e) / den;
    Ok(p.add(d.scale(s)))
}

/// Unsigned angle at `vertex` between the rays towards `p` and `q`.
pub fn angle_at(p: Point, vertex: Point, q: Point) -> f64 {
    let u = p.sub(vertex);
    let v = q.sub(vertex);
    libm::fabs(libm::atan2(u.cross(v), u.dot(v)))
}

/// Point where the internal bisector of angle `p`-`apex`-`q` meets the
/// segment from `seg_a` to `seg_b`.
pub fn bisector_point(apex: Point, p: Point, q: Point, seg_a: Point, seg_b: Point) -> Result<Point, GeometryError> {
    let u = p.sub(apex);
    let v = q.sub(apex);
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(GeometryError::Degenerate("bisector of a degenerate angle".into()));
    }
    let dir = u.scale(1.0 / u.norm()).add(v.scale(1.0 / v.norm()));
    if dir.norm() == 0.0 {
        return Err(GeometryError::Degenerate("straight angle has no internal bisector".into()));
    }
    let seg = seg_b.sub(seg_a);
    let x = line_intersection(apex, dir, seg_a, seg)?;
    let s = x.sub(seg_a).dot(seg) / seg.dot(seg);
    let ahead = x.sub(apex).dot(dir) > 0.0;
    if !(-1e-12..=1.0 + 1e-12).contains(&s) || !ahead {
        return Err(GeometryError::NoIntersection("bisector misses the segment".into()));
    }
    Ok(x)
}
