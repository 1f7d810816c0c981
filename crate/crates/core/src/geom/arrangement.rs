//! Boundary decomposition of a generalized polygon.
//!
//! All walk edges and crack segments are split at their mutual intersection
//! and overlap points, coincident fragments are merged, and each surviving
//! elementary piece is classified by trace multiplicity: a piece is
//! *two-sided* when the open set lies on both of its sides (crack pieces and
//! walls shared by two touching components), *one-sided* when the open set
//! lies on exactly one side. Pieces with the open set on neither side (a
//! crack fragment hugging a wall contributes no trace of its own) are
//! dropped; their geometric support is already carried by the wall piece.

use super::predicates::{point_seg_dist, seg_meet, SegMeet};
use super::{GeneralizedPolygon, Point2};

#[derive(Debug, Clone)]
pub struct BoundaryPiece {
    pub a: Point2,
    pub b: Point2,
    /// Open set on both sides of the piece.
    pub two_sided: bool,
    /// Supported by a declared crack segment.
    pub on_crack: bool,
}

impl BoundaryPiece {
    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        (self.a + self.b) * 0.5
    }

    pub fn multiplicity(&self) -> usize {
        if self.two_sided {
            2
        } else {
            1
        }
    }
}

struct RawSeg {
    a: Point2,
    b: Point2,
    crack: bool,
}

/// Elementary boundary pieces of the polygon with multiplicity flags.
pub fn boundary_pieces(poly: &GeneralizedPolygon) -> Vec<BoundaryPiece> {
    let tol = poly.tolerance();
    let diam = poly.bbox().diameter();

    let mut raw: Vec<RawSeg> = Vec::new();
    for comp in poly.components() {
        for i in 0..comp.walk.len() {
            let (a, b) = comp.walk.edge(i);
            raw.push(RawSeg { a, b, crack: false });
        }
        for crack in &comp.cracks {
            for (a, b) in crack.segments() {
                raw.push(RawSeg { a, b, crack: true });
            }
        }
    }

    // Split every segment at its meetings with every other segment.
    let mut fragments: Vec<(Point2, Point2, bool)> = Vec::new();
    for (i, seg) in raw.iter().enumerate() {
        let len = seg.a.dist(seg.b);
        if len <= tol {
            continue;
        }
        let mut ts = vec![0.0, 1.0];
        for (j, other) in raw.iter().enumerate() {
            if i == j {
                continue;
            }
            match seg_meet(seg.a, seg.b, other.a, other.b, tol) {
                SegMeet::Disjoint => {}
                SegMeet::Point { t, .. } => ts.push(t),
                SegMeet::Overlap { t0, t1 } => {
                    ts.push(t0);
                    ts.push(t1);
                }
            }
        }
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let tol_t = tol / len;
        let mut prev = 0.0;
        for &t in &ts {
            if t - prev > tol_t {
                let p = seg.a + (seg.b - seg.a) * prev;
                let q = seg.a + (seg.b - seg.a) * t;
                fragments.push((p, q, seg.crack));
                prev = t;
            }
        }
    }

    // Merge coincident fragments (same endpoints up to tolerance).
    let mut merged: Vec<(Point2, Point2, bool)> = Vec::new();
    'outer: for (a, b, crack) in fragments {
        for m in merged.iter_mut() {
            let same = (m.0.dist(a) <= tol && m.1.dist(b) <= tol)
                || (m.0.dist(b) <= tol && m.1.dist(a) <= tol);
            if same {
                m.2 = m.2 && crack; // on_crack only if every source is a crack
                continue 'outer;
            }
        }
        merged.push((a, b, crack));
    }

    // Classify each unique piece by sampling both sides of its midpoint.
    let mut pieces = Vec::new();
    for (a, b, crack) in &merged {
        let mid = (*a + *b) * 0.5;
        let len = a.dist(*b);
        // Clearance to every other piece bounds a safe probe offset.
        let mut clearance = f64::INFINITY;
        for (c, d, _) in &merged {
            if c.dist(*a) <= tol && d.dist(*b) <= tol {
                continue;
            }
            if c.dist(*b) <= tol && d.dist(*a) <= tol {
                continue;
            }
            clearance = clearance.min(point_seg_dist(mid, *c, *d));
        }
        let delta = (clearance * 0.5)
            .min(len * 0.25)
            .min(1e-3 * diam)
            .max(8.0 * tol);
        let n = (*b - *a).perp().normalized();
        let left = poly.contains(mid + n * delta, tol);
        let right = poly.contains(mid + n * (-delta), tol);
        if !left && !right {
            continue;
        }
        pieces.push(BoundaryPiece {
            a: *a,
            b: *b,
            two_sided: left && right,
            on_crack: *crack,
        });
    }
    pieces
}

/// Groups pieces by supporting line; within each line, connected collinear
/// chains are split at multiplicity changes and every constant-multiplicity
/// run counts with its multiplicity. Used by the side counter.
pub fn collinear_runs(pieces: &[BoundaryPiece], tol: f64) -> Vec<Vec<(f64, f64, usize)>> {
    let m = pieces.len();
    let mut group_of: Vec<Option<usize>> = vec![None; m];
    let mut groups: Vec<Vec<usize>> = Vec::new();

    let on_line = |anchor: Point2, dir: Point2, p: Point2| -> bool {
        (p - anchor).cross(dir).abs() <= tol * dir.norm().max(tol)
    };
    for i in 0..m {
        if group_of[i].is_some() {
            continue;
        }
        let gid = groups.len();
        group_of[i] = Some(gid);
        let mut members = vec![i];
        let anchor = pieces[i].a;
        let dir = pieces[i].b - pieces[i].a;
        for j in (i + 1)..m {
            if group_of[j].is_some() {
                continue;
            }
            if on_line(anchor, dir, pieces[j].a) && on_line(anchor, dir, pieces[j].b) {
                group_of[j] = Some(gid);
                members.push(j);
            }
        }
        groups.push(members);
    }

    let mut out = Vec::new();
    for members in groups {
        // Longest member fixes a stable direction for the parameterization.
        let base = *members
            .iter()
            .max_by(|&&x, &&y| pieces[x].len().partial_cmp(&pieces[y].len()).unwrap())
            .unwrap();
        let anchor = pieces[base].a;
        let dir = (pieces[base].b - pieces[base].a).normalized();
        let mut intervals: Vec<(f64, f64, usize)> = members
            .iter()
            .map(|&k| {
                let t0 = (pieces[k].a - anchor).dot(dir);
                let t1 = (pieces[k].b - anchor).dot(dir);
                let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                (lo, hi, pieces[k].multiplicity())
            })
            .collect();
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        out.push(intervals);
    }
    out
}
