//! Pure geometric kernel: circle–circle intersections, exclusion arcs on the
//! forward semicircle, arc-set union, and best-new-position selection.
//!
//! A mover standing at `old` with unit heading `forward` considers candidate
//! next positions on the semicircle of radius `move_dist` spanning ±90°
//! around the heading. Every nearby obstacle removes an arc of that
//! semicircle (its *exclusion arc*): the angles whose candidate center would
//! come strictly closer than `clearance` to the obstacle center. Arc
//! endpoints correspond to tangent contact and remain admissible. The best
//! angle is the admissible one with maximal forward progress (maximal
//! cos θ), ties broken toward the mover's right (negative θ).
//!
//! Angles are measured counterclockwise relative to the heading, so positive
//! angles are to the mover's left and negative angles to its right,
//! regardless of which way the mover is facing.

use std::f64::consts::{FRAC_PI_2, PI};

/// Absolute tolerance for distance comparisons, in meters.
pub const DIST_TOL: f64 = 1e-9;

/// Absolute tolerance for angle comparisons, in radians.
pub const ANGLE_TOL: f64 = 1e-9;

/// A point (or free vector) in the crosswalk's Cartesian frame, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Rotates the vector counterclockwise by `theta` radians.
    pub fn rotated(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// A circle with strictly positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius > 0.0, "circle radius must be positive");
        Circle { center, radius }
    }
}

/// Outcome of intersecting two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    /// Circles are separate or one strictly contains the other.
    None,
    /// Circles touch at a single point.
    Tangent(Point),
    /// Two proper intersection points, reported with the counterclockwise
    /// one (relative to the center line) first.
    Pair(Point, Point),
    /// Same center and radius: infinitely many solutions. Callers decide
    /// policy; the exclusion machinery treats this conservatively.
    Coincident,
}

/// Real solutions of the two-circle system
/// `(x − x₁)² + (y − y₁)² = r₁²`, `(x − x₂)² + (y − y₂)² = r₂²`.
pub fn circle_intersections(a: Circle, b: Circle) -> CircleIntersection {
    let d = a.center.distance(b.center);
    let sum = a.radius + b.radius;
    let diff = (a.radius - b.radius).abs();

    if d <= DIST_TOL && diff <= DIST_TOL {
        return CircleIntersection::Coincident;
    }
    if d > sum + DIST_TOL || d < diff - DIST_TOL {
        return CircleIntersection::None;
    }

    // Foot of the radical axis along the center line.
    let axis = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
    let u = (b.center - a.center) * (1.0 / d);
    let base = a.center + u * axis;

    if (d - sum).abs() <= DIST_TOL || (d - diff).abs() <= DIST_TOL {
        return CircleIntersection::Tangent(base);
    }

    let h_sq = a.radius * a.radius - axis * axis;
    if h_sq <= 0.0 {
        // Numerically grazing; report the touch point.
        return CircleIntersection::Tangent(base);
    }
    let h = h_sq.sqrt();
    let v = Point::new(-u.y, u.x);
    CircleIntersection::Pair(base + v * h, base + v * (-h))
}

/// A closed arc `[lo, hi]` of the forward semicircle, in radians relative to
/// the mover's heading. Always satisfies `−π/2 ≤ lo ≤ hi ≤ π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInterval {
    lo: f64,
    hi: f64,
}

impl AngleInterval {
    /// Clamps both endpoints into the forward semicircle.
    pub fn new(lo: f64, hi: f64) -> Self {
        let lo = lo.clamp(-FRAC_PI_2, FRAC_PI_2);
        let hi = hi.clamp(-FRAC_PI_2, FRAC_PI_2);
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        AngleInterval { lo, hi }
    }

    /// The whole forward semicircle.
    pub fn full() -> Self {
        AngleInterval {
            lo: -FRAC_PI_2,
            hi: FRAC_PI_2,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn measure(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo - ANGLE_TOL <= theta && theta <= self.hi + ANGLE_TOL
    }

    pub fn is_full(&self) -> bool {
        self.lo <= -FRAC_PI_2 + ANGLE_TOL && self.hi >= FRAC_PI_2 - ANGLE_TOL
    }
}

/// Arcs of the forward semicircle blocked by a single obstacle.
///
/// `Split` arises only when the mover already sits inside the obstacle's
/// clearance (a broken upstream invariant): the blocked region then wraps
/// behind the mover and meets the semicircle at both flanks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exclusion {
    Empty,
    Arc(AngleInterval),
    Split(AngleInterval, AngleInterval),
}

impl Exclusion {
    pub fn is_empty(&self) -> bool {
        matches!(self, Exclusion::Empty)
    }

    /// The blocked arcs as a slice-friendly pair.
    pub fn intervals(&self) -> impl Iterator<Item = AngleInterval> {
        let (a, b) = match *self {
            Exclusion::Empty => (None, None),
            Exclusion::Arc(iv) => (Some(iv), None),
            Exclusion::Split(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

/// Angles θ in the forward semicircle whose candidate position
/// `old + move_dist · rot(forward, θ)` lies strictly closer than `clearance`
/// to `obstacle_center`. Tangent contact (distance exactly `clearance`) is
/// admissible and falls on the returned arc's endpoints.
///
/// `clearance` is the sum of the mover's and the obstacle's occupied-circle
/// radii; the arc endpoints coincide with the intersections of the candidate
/// circle (radius `move_dist`) and the clearance circle around the obstacle.
pub fn exclusion_interval(
    old: Point,
    move_dist: f64,
    forward: Point,
    obstacle_center: Point,
    clearance: f64,
) -> Exclusion {
    debug_assert!(move_dist > 0.0);
    debug_assert!(clearance > 0.0);
    debug_assert!((forward.norm() - 1.0).abs() < 1e-9, "forward must be unit");

    let w = obstacle_center - old;
    let d = w.norm();

    if d <= DIST_TOL {
        // Mover center coincides with the obstacle center: every candidate
        // sits at distance move_dist (conservative full block if inside).
        return if move_dist < clearance - DIST_TOL {
            Exclusion::Arc(AngleInterval::full())
        } else {
            Exclusion::Empty
        };
    }

    // Law of cosines: |p(θ) − obstacle|² = d² + m² − 2dm·cos(θ − φ), so the
    // conflict condition reads cos(θ − φ) > k.
    let k = (d * d + move_dist * move_dist - clearance * clearance) / (2.0 * d * move_dist);
    if k >= 1.0 {
        return Exclusion::Empty;
    }
    if k <= -1.0 {
        return Exclusion::Arc(AngleInterval::full());
    }

    let half_width = k.acos();
    // CCW angle of the obstacle relative to the heading.
    let phi = forward.cross(w).atan2(forward.dot(w));

    clip_arc_to_semicircle(phi - half_width, phi + half_width)
}

/// Intersects the open circular arc `(start, end)` (absolute length < 2π)
/// with the forward semicircle `[−π/2, π/2]`, yielding zero, one, or two
/// intervals.
fn clip_arc_to_semicircle(start: f64, end: f64) -> Exclusion {
    let mut out: Vec<AngleInterval> = Vec::with_capacity(2);
    for shift in [-2.0 * PI, 0.0, 2.0 * PI] {
        let lo = (start + shift).max(-FRAC_PI_2);
        let hi = (end + shift).min(FRAC_PI_2);
        if hi > lo {
            out.push(AngleInterval::new(lo, hi));
        }
    }
    match out.len() {
        0 => Exclusion::Empty,
        1 => Exclusion::Arc(out[0]),
        2 => {
            // Keep the pair ordered by lo.
            if out[0].lo() <= out[1].lo() {
                Exclusion::Split(out[0], out[1])
            } else {
                Exclusion::Split(out[1], out[0])
            }
        }
        _ => unreachable!("an arc shorter than 2π meets the semicircle in at most two pieces"),
    }
}

/// A normalized set of blocked arcs: sorted by `lo`, pairwise disjoint,
/// touching arcs merged. Total measure never exceeds π.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExclusionSet {
    intervals: Vec<AngleInterval>,
}

impl ExclusionSet {
    pub fn new() -> Self {
        ExclusionSet::default()
    }

    /// Minimal disjoint sorted cover of the given arcs.
    pub fn union<I: IntoIterator<Item = AngleInterval>>(intervals: I) -> Self {
        let mut ivs: Vec<AngleInterval> = intervals.into_iter().collect();
        ivs.sort_by(|a, b| a.lo().total_cmp(&b.lo()));
        let mut merged: Vec<AngleInterval> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match merged.last_mut() {
                Some(last) if iv.lo() <= last.hi() + ANGLE_TOL => {
                    if iv.hi() > last.hi() {
                        *last = AngleInterval::new(last.lo(), iv.hi());
                    }
                }
                _ => merged.push(iv),
            }
        }
        ExclusionSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[AngleInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// True when the whole semicircle is blocked.
    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0].is_full()
    }

    pub fn total_measure(&self) -> f64 {
        self.intervals.iter().map(AngleInterval::measure).sum()
    }

    /// Closed containment with tolerance.
    pub fn contains(&self, theta: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(theta))
    }
}

/// The admissible angle with maximal forward progress (maximal cos θ), or
/// `None` when the whole semicircle is blocked.
///
/// Candidates are straight ahead (when free), the endpoints of blocked arcs
/// strictly inside the semicircle (tangent contact), and the semicircle
/// flanks ±π/2 (when free). Arc endpoints lying exactly on a flank are
/// treated as blocked: they usually come from clipping an arc that continues
/// past the flank, where the flank itself is in genuine conflict.
///
/// A tie between +θ and −θ resolves toward the mover's right (negative θ).
pub fn best_angle(excluded: &ExclusionSet) -> Option<f64> {
    if excluded.is_empty() {
        return Some(0.0);
    }

    let mut best: Option<f64> = None;
    let mut offer = |theta: f64| {
        let replace = match best {
            None => true,
            Some(b) => {
                let (ma, mb) = (theta.abs(), b.abs());
                if ma + ANGLE_TOL < mb {
                    true
                } else {
                    (ma - mb).abs() <= ANGLE_TOL && theta < b
                }
            }
        };
        if replace {
            best = Some(theta);
        }
    };

    if !excluded.contains(0.0) {
        offer(0.0);
    }
    for iv in excluded.intervals() {
        if iv.lo() > -FRAC_PI_2 + ANGLE_TOL {
            offer(iv.lo());
        }
        if iv.hi() < FRAC_PI_2 - ANGLE_TOL {
            offer(iv.hi());
        }
    }
    for flank in [-FRAC_PI_2, FRAC_PI_2] {
        if !excluded.contains(flank) {
            offer(flank);
        }
    }
    best
}

/// The admissible angle nearest −π/2 within the right quarter `[−π/2, 0)`,
/// used by the stuck-tilt rule. Returns `None` when the whole quarter is
/// blocked.
pub fn rightward_angle(excluded: &ExclusionSet) -> Option<f64> {
    if !excluded.contains(-FRAC_PI_2) {
        return Some(-FRAC_PI_2);
    }
    // The quarter's lowest free angle is the upper endpoint of the blocked
    // arc covering −π/2, provided it still lies strictly right of 0.
    let covering = excluded
        .intervals()
        .iter()
        .find(|iv| iv.contains(-FRAC_PI_2))?;
    if covering.hi() < -ANGLE_TOL {
        Some(covering.hi())
    } else {
        None
    }
}

/// Candidate position at angle `theta` (relative to `forward`) and distance
/// `move_dist` from `old`.
pub fn position_at(old: Point, move_dist: f64, forward: Point, theta: f64) -> Point {
    old + forward.rotated(theta) * move_dist
}
