//! Polygon kernel.
//!
//! The central type is [`GeneralizedPolygon`]: a finite union of simple
//! polygonal components with pairwise disjoint interiors, where each
//! component may carry *cracks* (polyline slits removed from the open set).
//! Cracks are null sets, so they do not change the area, but they carry two
//! boundary traces and therefore count twice in the generalized perimeter.
//!
//! All tolerances are derived from the bounding-box diameter of the figure
//! at hand; see [`predicates`].

pub mod arrangement;
pub mod construct;
pub mod hausdorff;
pub mod json;
pub mod measures;
pub mod predicates;

use predicates::{polyline_self_intersects, ring_is_simple, InOut};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    /// A polygon invariant failed. Indices locate the first offending
    /// component and vertex (crack vertices are indexed after walk vertices).
    #[error("invalid polygon: {reason} (component {component}, vertex {vertex})")]
    InvalidPolygon {
        component: usize,
        vertex: usize,
        reason: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
}

/// A point in the plane. Also used for displacement vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product of two plane vectors.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise rotation by 90 degrees.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy)]
pub struct Aabb {
    pub min: Point2,
    pub max: Point2,
}

impl Aabb {
    pub fn empty() -> Self {
        Aabb {
            min: Point2::new(f64::INFINITY, f64::INFINITY),
            max: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn include(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn merge(mut self, other: Aabb) -> Aabb {
        self.include(other.min);
        self.include(other.max);
        self
    }

    pub fn diameter(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn inflated(&self, pad: f64) -> Aabb {
        Aabb {
            min: Point2::new(self.min.x - pad, self.min.y - pad),
            max: Point2::new(self.max.x + pad, self.max.y + pad),
        }
    }
}

/// A closed, counter-clockwise, non-self-intersecting vertex loop.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    verts: Vec<Point2>,
}

impl SimplePolygon {
    /// Validates the loop: at least 3 finite vertices, no repeated vertices,
    /// no self-intersection, counter-clockwise orientation.
    pub fn new(verts: Vec<Point2>) -> Result<Self, GeometryError> {
        let fail = |vertex: usize, reason: &str| GeometryError::InvalidPolygon {
            component: 0,
            vertex,
            reason: reason.to_string(),
        };
        if verts.len() < 3 {
            return Err(fail(0, "walk needs at least 3 vertices"));
        }
        for (i, v) in verts.iter().enumerate() {
            if !v.is_finite() {
                return Err(fail(i, "non-finite coordinate"));
            }
        }
        let mut bb = Aabb::empty();
        for v in &verts {
            bb.include(*v);
        }
        let tol = predicates::tolerance_for_diameter(bb.diameter());
        if bb.diameter() <= tol {
            return Err(fail(0, "degenerate walk: zero diameter"));
        }
        if let Some((i, reason)) = ring_is_simple(&verts, tol) {
            return Err(fail(i, reason));
        }
        let area = shoelace(&verts);
        if area <= tol * bb.diameter() {
            return Err(fail(0, "walk must be counter-clockwise with positive area"));
        }
        Ok(SimplePolygon { verts })
    }

    pub fn verts(&self) -> &[Point2] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Edge i runs from vertex i to vertex (i+1) mod n.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.verts.len();
        (self.verts[i], self.verts[(i + 1) % n])
    }

    pub fn signed_area(&self) -> f64 {
        shoelace(&self.verts)
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.verts.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.dist(b)
            })
            .sum()
    }

    pub fn bbox(&self) -> Aabb {
        let mut bb = Aabb::empty();
        for v in &self.verts {
            bb.include(*v);
        }
        bb
    }

    pub fn centroid(&self) -> Point2 {
        let a = self.signed_area();
        let n = self.verts.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        for i in 0..n {
            let p = self.verts[i];
            let q = self.verts[(i + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point2::new(cx / (6.0 * a), cy / (6.0 * a))
    }

    /// Strict classification of a point against the closed loop.
    pub fn locate(&self, p: Point2, tol: f64) -> InOut {
        predicates::point_in_ring(p, &self.verts, tol)
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.locate(p, tol) == InOut::Inside
    }
}

fn shoelace(verts: &[Point2]) -> f64 {
    let n = verts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += verts[i].cross(verts[(i + 1) % n]);
    }
    0.5 * s
}

/// A polyline slit removed from the open set of its host component.
///
/// The first vertex (the root) lies on the host walk or on an earlier crack
/// of the same component; every other vertex lies strictly inside the walk.
#[derive(Debug, Clone, PartialEq)]
pub struct Crack {
    pub polyline: Vec<Point2>,
}

impl Crack {
    pub fn new(polyline: Vec<Point2>) -> Self {
        Crack { polyline }
    }

    pub fn length(&self) -> f64 {
        self.polyline.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.polyline.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn root(&self) -> Point2 {
        self.polyline[0]
    }

    pub fn tip(&self) -> Point2 {
        *self.polyline.last().unwrap()
    }
}

/// One connected piece of a generalized polygon: a simple walk plus the
/// cracks rooted in it.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub walk: SimplePolygon,
    pub cracks: Vec<Crack>,
}

impl Component {
    pub fn simple(walk: SimplePolygon) -> Self {
        Component {
            walk,
            cracks: Vec::new(),
        }
    }
}

/// A finite union of simple polygonal components with pairwise disjoint
/// interiors; components may carry cracks. `side_budget` is the class bound
/// N: the figure must not have more than N sides counted with multiplicity
/// and no more than floor((N-1)/2) components.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedPolygon {
    components: Vec<Component>,
    side_budget: usize,
}

impl GeneralizedPolygon {
    pub fn new(
        components: Vec<Component>,
        side_budget: usize,
    ) -> Result<Self, GeometryError> {
        let poly = GeneralizedPolygon {
            components,
            side_budget,
        };
        poly.validate()?;
        Ok(poly)
    }

    /// Single component without cracks.
    pub fn simple(walk: SimplePolygon, side_budget: usize) -> Result<Self, GeometryError> {
        Self::new(vec![Component::simple(walk)], side_budget)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn side_budget(&self) -> usize {
        self.side_budget
    }

    pub fn has_cracks(&self) -> bool {
        self.components.iter().any(|c| !c.cracks.is_empty())
    }

    pub fn bbox(&self) -> Aabb {
        let mut bb = Aabb::empty();
        for c in &self.components {
            for v in c.walk.verts() {
                bb.include(*v);
            }
            for crack in &c.cracks {
                for v in &crack.polyline {
                    bb.include(*v);
                }
            }
        }
        bb
    }

    pub fn tolerance(&self) -> f64 {
        predicates::tolerance_for_diameter(self.bbox().diameter())
    }

    /// True if `p` lies in the open set (inside some walk, not on a crack).
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        for c in &self.components {
            match c.walk.locate(p, tol) {
                InOut::Inside => {
                    let on_crack = c.cracks.iter().any(|crack| {
                        crack
                            .segments()
                            .any(|(a, b)| predicates::point_seg_dist(p, a, b) <= tol)
                    });
                    if !on_crack {
                        return true;
                    }
                }
                InOut::Boundary | InOut::Outside => {}
            }
        }
        false
    }

    fn validate(&self) -> Result<(), GeometryError> {
        if self.side_budget < 3 {
            return Err(GeometryError::InvalidParameter(format!(
                "side budget must be at least 3, got {}",
                self.side_budget
            )));
        }
        if self.components.is_empty() {
            return Err(GeometryError::InvalidParameter(
                "polygon needs at least one component".to_string(),
            ));
        }
        let max_components = ((self.side_budget - 1) / 2).max(1);
        if self.components.len() > max_components {
            return Err(GeometryError::InvalidParameter(format!(
                "{} components exceed the cap {} for side budget {}",
                self.components.len(),
                max_components,
                self.side_budget
            )));
        }
        let tol = self.tolerance();
        for (ci, comp) in self.components.iter().enumerate() {
            validate_cracks(ci, comp, tol)?;
        }
        self.validate_disjoint_interiors(tol)?;
        let sides = measures::side_count(self);
        if sides > self.side_budget {
            return Err(GeometryError::InvalidParameter(format!(
                "{} sides exceed the side budget {}",
                sides, self.side_budget
            )));
        }
        Ok(())
    }

    fn validate_disjoint_interiors(&self, tol: f64) -> Result<(), GeometryError> {
        let n = self.components.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let a = &self.components[i].walk;
                let b = &self.components[j].walk;
                // Proper edge crossings mean overlapping interiors.
                for ea in 0..a.len() {
                    let (p1, p2) = a.edge(ea);
                    for eb in 0..b.len() {
                        let (q1, q2) = b.edge(eb);
                        if predicates::segments_cross_properly(p1, p2, q1, q2, tol) {
                            return Err(GeometryError::InvalidPolygon {
                                component: i,
                                vertex: ea,
                                reason: format!("walk crosses walk of component {}", j),
                            });
                        }
                    }
                }
                // A vertex of one strictly inside the other, or an edge
                // midpoint pushed slightly inward landing inside the other,
                // also means overlap. Touching along edges is allowed.
                for (vi, v) in a.verts().iter().enumerate() {
                    if b.contains(*v, tol) {
                        return Err(GeometryError::InvalidPolygon {
                            component: i,
                            vertex: vi,
                            reason: format!("vertex lies inside component {}", j),
                        });
                    }
                }
                let delta = 1e-9 * self.bbox().diameter();
                for ea in 0..a.len() {
                    let (p1, p2) = a.edge(ea);
                    let mid = (p1 + p2) * 0.5;
                    let inward = (p2 - p1).perp().normalized();
                    if b.contains(mid + inward * delta, tol) {
                        return Err(GeometryError::InvalidPolygon {
                            component: i,
                            vertex: ea,
                            reason: format!("interior overlaps component {}", j),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Crack invariants. Cracks form a forest: each crack is rooted on the walk
/// or on an earlier crack, touches nothing else, and stays strictly inside
/// the walk. This keeps every component minus its cracks connected and
/// simply connected.
fn validate_cracks(ci: usize, comp: &Component, tol: f64) -> Result<(), GeometryError> {
    let walk = &comp.walk;
    let nwalk = walk.len();
    let fail = |vertex: usize, reason: String| GeometryError::InvalidPolygon {
        component: ci,
        vertex,
        reason,
    };
    for (ki, crack) in comp.cracks.iter().enumerate() {
        let pl = &crack.polyline;
        if pl.len() < 2 {
            return Err(fail(nwalk, format!("crack {} needs at least 2 vertices", ki)));
        }
        for (i, v) in pl.iter().enumerate() {
            if !v.is_finite() {
                return Err(fail(nwalk + i, format!("crack {}: non-finite coordinate", ki)));
            }
        }
        for w in pl.windows(2) {
            if w[0].dist(w[1]) <= tol {
                return Err(fail(nwalk, format!("crack {}: zero-length segment", ki)));
            }
        }
        if crack.length() <= tol {
            return Err(fail(nwalk, format!("crack {} has zero length", ki)));
        }
        if let Some(i) = polyline_self_intersects(pl, tol) {
            return Err(fail(nwalk + i, format!("crack {} self-intersects", ki)));
        }

        // Root: on the walk or on an earlier crack of the same component.
        let root = crack.root();
        let on_walk = (0..nwalk).any(|e| {
            let (a, b) = walk.edge(e);
            predicates::point_seg_dist(root, a, b) <= tol
        });
        let on_earlier = comp.cracks[..ki].iter().any(|earlier| {
            earlier
                .segments()
                .any(|(a, b)| predicates::point_seg_dist(root, a, b) <= tol)
        });
        if !on_walk && !on_earlier {
            return Err(fail(
                nwalk,
                format!("crack {}: root is neither on the walk nor on an earlier crack", ki),
            ));
        }

        // Every non-root vertex strictly inside the walk and clear of
        // everything else.
        for (i, v) in pl.iter().enumerate().skip(1) {
            if walk.locate(*v, tol) != InOut::Inside {
                return Err(fail(
                    nwalk + i,
                    format!("crack {}: vertex must lie strictly inside the walk", ki),
                ));
            }
        }

        // Segments may touch the rest of the figure only at the root.
        for (si, (a, b)) in crack.segments().enumerate() {
            for e in 0..nwalk {
                let (p, q) = walk.edge(e);
                if predicates::segments_touch_off_point(a, b, p, q, root, tol) {
                    return Err(fail(
                        nwalk + si,
                        format!("crack {}: segment meets the walk away from the root", ki),
                    ));
                }
            }
            for (kj, other) in comp.cracks.iter().enumerate() {
                if kj == ki {
                    continue;
                }
                // Only the root of the later crack may rest on the earlier one.
                let allowed = if kj < ki { root } else { other.root() };
                for (p, q) in other.segments() {
                    if predicates::segments_touch_off_point(a, b, p, q, allowed, tol) {
                        return Err(fail(
                            nwalk + si,
                            format!("crack {}: touches crack {} away from a root", ki, kj),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Constraint carried by an optimization problem.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Area,
    GeneralizedPerimeter,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConstraintSpec {
    pub kind: ConstraintKind,
    pub bound: f64,
    #[serde(default)]
    pub convex: bool,
}

impl ConstraintSpec {
    pub fn area(bound: f64) -> Self {
        ConstraintSpec {
            kind: ConstraintKind::Area,
            bound,
            convex: false,
        }
    }

    pub fn perimeter(bound: f64) -> Self {
        ConstraintSpec {
            kind: ConstraintKind::GeneralizedPerimeter,
            bound,
            convex: false,
        }
    }

    /// Value of the constrained quantity on a polygon.
    pub fn measure(&self, poly: &GeneralizedPolygon) -> f64 {
        match self.kind {
            ConstraintKind::Area => measures::area(poly),
            ConstraintKind::GeneralizedPerimeter => measures::generalized_perimeter(poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplePolygon {
        SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_clockwise_walk() {
        let r = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_self_intersection() {
        let r = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn square_area_and_perimeter() {
        let s = square();
        assert!((s.area() - 1.0).abs() < 1e-15);
        assert!((s.perimeter() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn slit_square_is_valid() {
        let comp = Component {
            walk: square(),
            cracks: vec![Crack::new(vec![
                Point2::new(0.5, 0.0),
                Point2::new(0.5, 0.3),
            ])],
        };
        let p = GeneralizedPolygon::new(vec![comp], 7).unwrap();
        assert!(p.has_cracks());
    }

    #[test]
    fn crack_crossing_walk_is_rejected() {
        let comp = Component {
            walk: square(),
            cracks: vec![Crack::new(vec![
                Point2::new(0.5, 0.0),
                Point2::new(0.5, 1.5),
            ])],
        };
        assert!(GeneralizedPolygon::new(vec![comp], 8).is_err());
    }

    #[test]
    fn fully_interior_crack_is_rejected() {
        // No vertex on the walk: the complement of the slit would not stay
        // simply connected in the limit sense, and the root rule fails.
        let comp = Component {
            walk: square(),
            cracks: vec![Crack::new(vec![
                Point2::new(0.4, 0.4),
                Point2::new(0.6, 0.6),
            ])],
        };
        assert!(GeneralizedPolygon::new(vec![comp], 8).is_err());
    }

    #[test]
    fn component_cap_enforced() {
        let a = Component::simple(square());
        let mut verts = Vec::new();
        for v in square().verts() {
            verts.push(Point2::new(v.x + 2.0, v.y));
        }
        let b = Component::simple(SimplePolygon::new(verts).unwrap());
        // Two components need side budget at least 5.
        assert!(GeneralizedPolygon::new(vec![a.clone(), b.clone()], 4).is_err());
        assert!(GeneralizedPolygon::new(vec![a, b], 8).is_ok());
    }

    #[test]
    fn overlapping_components_rejected() {
        let a = Component::simple(square());
        let shifted = SimplePolygon::new(vec![
            Point2::new(0.5, 0.5),
            Point2::new(1.5, 0.5),
            Point2::new(1.5, 1.5),
            Point2::new(0.5, 1.5),
        ])
        .unwrap();
        let b = Component::simple(shifted);
        assert!(GeneralizedPolygon::new(vec![a, b], 10).is_err());
    }

    #[test]
    fn touching_components_allowed() {
        let a = Component::simple(square());
        let below = SimplePolygon::new(vec![
            Point2::new(0.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 0.0),
        ])
        .unwrap();
        let b = Component::simple(below);
        GeneralizedPolygon::new(vec![a, b], 10).unwrap();
    }
}
