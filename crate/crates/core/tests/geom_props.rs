//! Property tests for the pure geometry operations: measure homogeneity
//! under scaling, rigid-motion invariance, and the corner-cut identities on
//! randomly generated convex polygons.

use proptest::prelude::*;
use robinpoly::geom::construct::{cut_corner, detach_cracks, fill_holes, CornerRef, CutSide};
use robinpoly::geom::measures::{area, generalized_perimeter, scale, side_count, translate};
use robinpoly::geom::{GeneralizedPolygon, Point2, SimplePolygon};

/// Monotone-chain convex hull; test-side oracle independent of the library.
fn convex_hull(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) < 1e-9);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let cross = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_polygon() -> impl Strategy<Value = GeneralizedPolygon> {
    proptest::collection::vec((0.0..4.0f64, 0.0..4.0f64), 5..12)
        .prop_filter_map("degenerate hull", |coords| {
            let pts = coords
                .into_iter()
                .map(|(x, y)| Point2::new(x, y))
                .collect::<Vec<_>>();
            let hull = convex_hull(pts);
            if hull.len() < 3 {
                return None;
            }
            let walk = SimplePolygon::new(hull).ok()?;
            if walk.area() < 0.05 {
                return None;
            }
            // Skip hulls with very short sides; cut depths need room.
            for i in 0..walk.len() {
                let (a, b) = walk.edge(i);
                if a.dist(b) < 0.05 {
                    return None;
                }
            }
            GeneralizedPolygon::simple(walk, 16).ok()
        })
}

proptest! {
    #[test]
    fn scaling_is_homogeneous(p in hull_polygon(), t in 0.3..3.0f64) {
        let q = scale(&p, t).unwrap();
        prop_assert!((area(&q) - t * t * area(&p)).abs() <= 1e-9 * area(&q).max(1.0));
        prop_assert!(
            (generalized_perimeter(&q) - t * generalized_perimeter(&p)).abs()
                <= 1e-9 * generalized_perimeter(&q).max(1.0)
        );
        prop_assert_eq!(side_count(&q), side_count(&p));
    }

    #[test]
    fn translation_preserves_measures(p in hull_polygon(), dx in -5.0..5.0f64, dy in -5.0..5.0f64) {
        let q = translate(&p, Point2::new(dx, dy)).unwrap();
        prop_assert!((area(&q) - area(&p)).abs() <= 1e-9);
        prop_assert!((generalized_perimeter(&q) - generalized_perimeter(&p)).abs() <= 1e-9);
        prop_assert_eq!(side_count(&q), side_count(&p));
    }

    #[test]
    fn corner_cut_identities(p in hull_polygon(), vfrac in 0.0..1.0f64, efrac in 0.05..0.4f64) {
        let walk = &p.components()[0].walk;
        let vi = ((vfrac * walk.len() as f64) as usize).min(walk.len() - 1);
        let n = walk.len();
        let v = walk.verts()[vi];
        let prev = walk.verts()[(vi + n - 1) % n];
        let next = walk.verts()[(vi + 1) % n];
        // Depth small enough to stay within both incident sides.
        let u_a = (prev - v).normalized();
        let u_b = (next - v).normalized();
        let cos_half = (u_a + u_b).normalized().dot(u_a);
        let eps = efrac * cos_half * v.dist(prev).min(v.dist(next));
        prop_assume!(eps > 1e-6);
        let corner = CornerRef::Walk { component: 0, vertex: vi };
        let cut = cut_corner(&p, corner, eps, CutSide::Plus);
        prop_assume!(cut.is_ok());
        let cut = cut.unwrap();
        // Removed triangle has the cut segment as base and depth eps.
        prop_assert!((cut.removed_area - 0.5 * eps * cut.cut_len).abs() <= 1e-9);
        prop_assert!((area(&cut.polygon) - (area(&p) - cut.removed_area)).abs() <= 1e-9);
        prop_assert!(cut.flank_ratio > 1.0);
        // Straight flanks are replaced by a shorter chord.
        prop_assert!(
            generalized_perimeter(&cut.polygon)
                <= generalized_perimeter(&p) - (cut.flank_len - cut.cut_len) + 1e-9
        );
        prop_assert!(side_count(&cut.polygon) <= side_count(&p) + 1);
    }

    #[test]
    fn fill_and_detach_fix_simple_polygons(p in hull_polygon()) {
        let f = fill_holes(&p).unwrap();
        prop_assert!((area(&f) - area(&p)).abs() <= 1e-9);
        prop_assert!((generalized_perimeter(&f) - generalized_perimeter(&p)).abs() <= 1e-9);
        let d = detach_cracks(&p, 0.01).unwrap();
        prop_assert!((area(&d) - area(&p)).abs() <= 1e-9);
        prop_assert!((generalized_perimeter(&d) - generalized_perimeter(&p)).abs() <= 1e-9);
    }
}
