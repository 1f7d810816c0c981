//! Measures and elementary transforms: area, generalized perimeter, side
//! count, scaling, translation, and regular n-gon construction.

use super::arrangement::{boundary_pieces, collinear_runs};
use super::{
    Component, ConstraintKind, ConstraintSpec, Crack, GeneralizedPolygon, GeometryError, Point2,
    SimplePolygon,
};

/// Total area: sum of component shoelace areas. Cracks are null sets.
pub fn area(poly: &GeneralizedPolygon) -> f64 {
    poly.components().iter().map(|c| c.walk.area()).sum()
}

/// Generalized perimeter: every boundary piece counts with its trace
/// multiplicity, so one-sided walls count once and cracks (or walls shared
/// by two components) count twice.
pub fn generalized_perimeter(poly: &GeneralizedPolygon) -> f64 {
    boundary_pieces(poly)
        .iter()
        .map(|p| p.len() * p.multiplicity() as f64)
        .sum()
}

/// Number of sides counted with multiplicity.
///
/// A side is a maximal connected collinear chain of boundary pieces; a chain
/// is split at multiplicity changes and each constant-multiplicity run
/// contributes its multiplicity (1 for one-sided, 2 for two-sided).
pub fn side_count(poly: &GeneralizedPolygon) -> usize {
    let tol = poly.tolerance();
    let pieces = boundary_pieces(poly);
    let mut count = 0usize;
    for intervals in collinear_runs(&pieces, tol) {
        let mut prev_end = f64::NEG_INFINITY;
        let mut prev_mult = 0usize;
        for (lo, hi, mult) in intervals {
            let connected = lo <= prev_end + tol;
            if !connected || mult != prev_mult {
                count += mult;
            }
            prev_end = hi.max(prev_end);
            prev_mult = mult;
        }
    }
    count
}

/// Dilation x -> t x about the origin. Requires t > 0.
pub fn scale(poly: &GeneralizedPolygon, t: f64) -> Result<GeneralizedPolygon, GeometryError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "scale factor must be positive and finite, got {}",
            t
        )));
    }
    transform(poly, |p| p * t)
}

/// Rigid translation; preserves every measure.
pub fn translate(
    poly: &GeneralizedPolygon,
    shift: Point2,
) -> Result<GeneralizedPolygon, GeometryError> {
    transform(poly, |p| p + shift)
}

fn transform(
    poly: &GeneralizedPolygon,
    f: impl Fn(Point2) -> Point2,
) -> Result<GeneralizedPolygon, GeometryError> {
    let mut comps = Vec::with_capacity(poly.components().len());
    for c in poly.components() {
        let walk = SimplePolygon::new(c.walk.verts().iter().map(|&p| f(p)).collect())?;
        let cracks = c
            .cracks
            .iter()
            .map(|k| Crack::new(k.polyline.iter().map(|&p| f(p)).collect()))
            .collect();
        comps.push(Component { walk, cracks });
    }
    GeneralizedPolygon::new(comps, poly.side_budget())
}

/// Regular n-gon centered at the origin saturating the given constraint.
/// The first vertex sits at angle pi/n, so the square comes out axis-aligned.
pub fn regular_ngon(n: usize, constraint: &ConstraintSpec) -> Result<GeneralizedPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::InvalidParameter(format!(
            "regular polygon needs at least 3 vertices, got {}",
            n
        )));
    }
    if !(constraint.bound.is_finite() && constraint.bound > 0.0) {
        return Err(GeometryError::InvalidParameter(format!(
            "constraint bound must be positive, got {}",
            constraint.bound
        )));
    }
    let nf = n as f64;
    let r = match constraint.kind {
        // area = (n/2) R^2 sin(2 pi / n)
        ConstraintKind::Area => (2.0 * constraint.bound / (nf * (2.0 * std::f64::consts::PI / nf).sin())).sqrt(),
        // perimeter = 2 n R sin(pi / n)
        ConstraintKind::GeneralizedPerimeter => {
            constraint.bound / (2.0 * nf * (std::f64::consts::PI / nf).sin())
        }
    };
    let verts = (0..n)
        .map(|k| {
            let ang = std::f64::consts::PI / nf + 2.0 * std::f64::consts::PI * k as f64 / nf;
            Point2::new(r * ang.cos(), r * ang.sin())
        })
        .collect();
    GeneralizedPolygon::simple(SimplePolygon::new(verts)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> GeneralizedPolygon {
        GeneralizedPolygon::simple(
            SimplePolygon::new(vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ])
            .unwrap(),
            4,
        )
        .unwrap()
    }

    fn slit_square() -> GeneralizedPolygon {
        let walk = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        GeneralizedPolygon::new(
            vec![Component {
                walk,
                cracks: vec![Crack::new(vec![
                    Point2::new(0.5, 0.0),
                    Point2::new(0.5, 0.3),
                ])],
            }],
            7,
        )
        .unwrap()
    }

    #[test]
    fn unit_square_measures() {
        let p = unit_square();
        assert!((area(&p) - 1.0).abs() < 1e-15);
        assert!((generalized_perimeter(&p) - 4.0).abs() < 1e-12);
        assert_eq!(side_count(&p), 4);
    }

    #[test]
    fn hexagon_area_closed_form() {
        // Circumradius-1 hexagon has area 3 sqrt(3) / 2.
        let target = 1.5 * 3.0_f64.sqrt();
        let p = regular_ngon(6, &ConstraintSpec::area(target)).unwrap();
        assert!((area(&p) - target).abs() < 1e-12);
        let r = p.components()[0].walk.verts()[0].norm();
        assert!((r - 1.0).abs() < 1e-12, "circumradius {}", r);
    }

    #[test]
    fn ngon_area_inversion() {
        // Area(1) hexagon must have circumradius sqrt(2 / (3 sqrt(3))).
        let p = regular_ngon(6, &ConstraintSpec::area(1.0)).unwrap();
        let r = p.components()[0].walk.verts()[0].norm();
        let expect = (2.0 / (3.0 * 3.0_f64.sqrt())).sqrt();
        assert!((r - expect).abs() < 1e-12);
    }

    #[test]
    fn square_ngon_has_unit_side() {
        let p = regular_ngon(4, &ConstraintSpec::area(1.0)).unwrap();
        let v = p.components()[0].walk.verts();
        assert!((v[0].dist(v[1]) - 1.0).abs() < 1e-12);
        assert!((area(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ngon_perimeter_constraint() {
        let p = regular_ngon(5, &ConstraintSpec::perimeter(3.0)).unwrap();
        assert!((generalized_perimeter(&p) - 3.0).abs() < 1e-10);
    }

    #[test]
    fn slit_square_measures() {
        let p = slit_square();
        assert!((area(&p) - 1.0).abs() < 1e-12, "cracks do not change area");
        // Interior slit counts twice: 4 + 2 * 0.3.
        assert!((generalized_perimeter(&p) - 4.6).abs() < 1e-12);
        assert_eq!(side_count(&p), 6);
    }

    #[test]
    fn scaled_slit_square() {
        let p = scale(&slit_square(), 3.0).unwrap();
        assert!((generalized_perimeter(&p) - 13.8).abs() < 1e-10);
        assert!((area(&p) - 9.0).abs() < 1e-12);
        assert_eq!(side_count(&p), 6, "side count is scale invariant");
    }

    #[test]
    fn touching_triangle_bases_merge_into_one_side() {
        // Two triangles whose bases are consecutive on the same line: the
        // bases form one connected one-sided chain, so 4 flanks + 1 base.
        let t1 = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 1.0),
        ])
        .unwrap();
        let t2 = SimplePolygon::new(vec![
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.5, 1.0),
        ])
        .unwrap();
        let p = GeneralizedPolygon::new(
            vec![Component::simple(t1), Component::simple(t2)],
            5,
        )
        .unwrap();
        assert_eq!(side_count(&p), 5);
    }

    #[test]
    fn scale_rejects_nonpositive() {
        assert!(scale(&unit_square(), 0.0).is_err());
        assert!(scale(&unit_square(), -2.0).is_err());
    }

    #[test]
    fn scaling_homogeneity() {
        for t in [0.5, 2.0, 3.0] {
            let p = scale(&slit_square(), t).unwrap();
            assert!((area(&p) - t * t * 1.0).abs() < 1e-10);
            assert!((generalized_perimeter(&p) - t * 4.6).abs() < 1e-10);
        }
    }
}
