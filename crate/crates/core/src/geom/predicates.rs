//! Low-level geometric predicates.
//!
//! Orientation tests are exact-sign evaluations of the floating-point cross
//! product with an epsilon guard proportional to the figure's bounding-box
//! diameter: a point closer than the tolerance to a line is treated as lying
//! on it. Callers derive the tolerance once per figure via
//! [`tolerance_for_diameter`] and thread it through.

use super::Point2;

/// Guard factor relative to the bounding-box diameter.
pub const REL_TOL: f64 = 1e-12;

pub fn tolerance_for_diameter(diam: f64) -> f64 {
    REL_TOL * diam.max(f64::MIN_POSITIVE)
}

/// Sign of the turn a->b->c with the distance-to-line guard:
/// +1 left turn, -1 right turn, 0 within tolerance of collinear.
pub fn orient_sign(a: Point2, b: Point2, c: Point2, tol: f64) -> i8 {
    let det = (b - a).cross(c - a);
    let len = a.dist(b);
    if len <= tol {
        return if c.dist(a) <= tol { 0 } else { 0 };
    }
    // det / len is the signed distance from c to the line through a, b.
    if det.abs() <= tol * len {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

pub fn point_seg_dist(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

pub fn on_segment(p: Point2, a: Point2, b: Point2, tol: f64) -> bool {
    point_seg_dist(p, a, b) <= tol
}

/// Strict point-versus-ring classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InOut {
    Inside,
    Boundary,
    Outside,
}

/// Even-odd ray crossing with an explicit boundary band of width `tol`.
pub fn point_in_ring(p: Point2, ring: &[Point2], tol: f64) -> InOut {
    let n = ring.len();
    for i in 0..n {
        if on_segment(p, ring[i], ring[(i + 1) % n], tol) {
            return InOut::Boundary;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_int {
                inside = !inside;
            }
        }
    }
    if inside {
        InOut::Inside
    } else {
        InOut::Outside
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegMeet {
    Disjoint,
    /// Single meeting point, with parameters on each segment in [0, 1].
    Point { t: f64, u: f64 },
    /// Collinear overlap of positive length; parameters on the first segment.
    Overlap { t0: f64, t1: f64 },
}

/// Intersection of closed segments [a,b] and [c,d] under the tolerance.
pub fn seg_meet(a: Point2, b: Point2, c: Point2, d: Point2, tol: f64) -> SegMeet {
    let r = b - a;
    let s = d - c;
    let rlen = r.norm();
    let slen = s.norm();
    if rlen <= tol || slen <= tol {
        // Degenerate segments: treat as points.
        if point_seg_dist(a, c, d) <= tol {
            return SegMeet::Point { t: 0.0, u: 0.0 };
        }
        return SegMeet::Disjoint;
    }
    let denom = r.cross(s);
    let qp = c - a;
    // Parallel / collinear when the normal distance between the lines is
    // below tolerance.
    if denom.abs() <= tol * rlen.max(slen) {
        let dist_line = qp.cross(r).abs() / rlen;
        if dist_line > tol {
            return SegMeet::Disjoint;
        }
        // Collinear: project [c,d] onto [a,b].
        let t_c = (c - a).dot(r) / (rlen * rlen);
        let t_d = (d - a).dot(r) / (rlen * rlen);
        let (mut lo, mut hi) = if t_c <= t_d { (t_c, t_d) } else { (t_d, t_c) };
        let tol_t = tol / rlen;
        lo = lo.max(0.0);
        hi = hi.min(1.0);
        if hi < lo - tol_t {
            return SegMeet::Disjoint;
        }
        if hi - lo <= tol_t {
            let t = 0.5 * (lo + hi);
            let p = a + r * t;
            let u = ((p - c).dot(s) / (slen * slen)).clamp(0.0, 1.0);
            return SegMeet::Point { t, u };
        }
        return SegMeet::Overlap { t0: lo, t1: hi };
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let tol_t = tol / rlen;
    let tol_u = tol / slen;
    if t < -tol_t || t > 1.0 + tol_t || u < -tol_u || u > 1.0 + tol_u {
        return SegMeet::Disjoint;
    }
    SegMeet::Point {
        t: t.clamp(0.0, 1.0),
        u: u.clamp(0.0, 1.0),
    }
}

/// True when the open interiors of the segments cross at a single point.
pub fn segments_cross_properly(a: Point2, b: Point2, c: Point2, d: Point2, tol: f64) -> bool {
    match seg_meet(a, b, c, d, tol) {
        SegMeet::Point { t, u } => {
            let tol_t = tol / a.dist(b).max(tol);
            let tol_u = tol / c.dist(d).max(tol);
            t > tol_t && t < 1.0 - tol_t && u > tol_u && u < 1.0 - tol_u
        }
        _ => false,
    }
}

/// True when the segments meet anywhere except within `tol` of `allowed`.
pub fn segments_touch_off_point(
    a: Point2,
    b: Point2,
    c: Point2,
    d: Point2,
    allowed: Point2,
    tol: f64,
) -> bool {
    match seg_meet(a, b, c, d, tol) {
        SegMeet::Disjoint => false,
        SegMeet::Point { t, .. } => {
            let p = a + (b - a) * t;
            p.dist(allowed) > tol
        }
        SegMeet::Overlap { t0, t1 } => {
            // Positive-length overlap cannot be a single allowed point.
            let p0 = a + (b - a) * t0;
            let p1 = a + (b - a) * t1;
            p0.dist(p1) > tol
        }
    }
}

/// Simplicity check for a closed ring. Returns the index of the first
/// offending vertex/edge and a reason, or `None` if the ring is simple.
pub fn ring_is_simple(ring: &[Point2], tol: f64) -> Option<(usize, &'static str)> {
    let n = ring.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if ring[i].dist(ring[j]) <= tol {
                return Some((j, "repeated vertex"));
            }
        }
    }
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match seg_meet(a, b, c, d, tol) {
                SegMeet::Disjoint => {}
                SegMeet::Overlap { .. } => return Some((i, "overlapping edges")),
                SegMeet::Point { t, .. } => {
                    if adjacent {
                        // Adjacent edges must meet only at the shared vertex.
                        let p = a + (b - a) * t;
                        let shared = if j == i + 1 { ring[j] } else { ring[i] };
                        if p.dist(shared) > tol {
                            return Some((i, "adjacent edges meet away from their vertex"));
                        }
                    } else {
                        return Some((i, "edges intersect"));
                    }
                }
            }
        }
    }
    None
}

/// Self-intersection check for an open polyline. Adjacent segments may meet
/// only at their shared vertex. Returns the first offending segment index.
pub fn polyline_self_intersects(pl: &[Point2], tol: f64) -> Option<usize> {
    let m = pl.len().saturating_sub(1);
    for i in 0..m {
        for j in (i + 1)..m {
            let (a, b) = (pl[i], pl[i + 1]);
            let (c, d) = (pl[j], pl[j + 1]);
            match seg_meet(a, b, c, d, tol) {
                SegMeet::Disjoint => {}
                SegMeet::Overlap { .. } => return Some(i),
                SegMeet::Point { t, .. } => {
                    if j == i + 1 {
                        let p = a + (b - a) * t;
                        if p.dist(pl[j]) > tol {
                            return Some(i);
                        }
                    } else {
                        return Some(i);
                    }
                }
            }
        }
    }
    None
}
