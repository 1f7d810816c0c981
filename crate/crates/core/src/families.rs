//! Parametric polygon families that converge to degenerate limits: a wedge
//! closing into a slit, two peaks pinching into separate triangles, and a
//! slit retreating into a plain square. Each family exposes its members and
//! the limit shape, for studying how eigenvalues behave along the approach.

use crate::geom::{Component, Crack, GeneralizedPolygon, GeometryError, Point2, SimplePolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Disk-like pentagon with a wedge notch that closes into a radial slit.
    Pacman,
    /// Double peak whose central valley drops to the base line, pinching the
    /// polygon into two triangles joined at a point.
    Mountains,
    /// Unit square with a boundary slit whose length halves every step.
    ShrinkingSlit,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Pacman => "pacman",
            Family::Mountains => "mountains",
            Family::ShrinkingSlit => "shrinking_slit",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "pacman" => Some(Family::Pacman),
            "mountains" => Some(Family::Mountains),
            "shrinking_slit" => Some(Family::ShrinkingSlit),
            _ => None,
        }
    }

    pub fn all() -> [Family; 3] {
        [Family::Pacman, Family::Mountains, Family::ShrinkingSlit]
    }

    /// The step-th member; the gap parameter halves with each step.
    pub fn member(&self, step: u32) -> Result<GeneralizedPolygon, GeometryError> {
        match self {
            Family::Pacman => pacman(0.3 * 0.5_f64.powi(step as i32)),
            Family::Mountains => mountains(0.5 * 0.5_f64.powi(step as i32)),
            Family::ShrinkingSlit => shrinking_slit(0.4 * 0.5_f64.powi(step as i32)),
        }
    }

    /// The degenerate shape the members converge to in complement Hausdorff
    /// distance.
    pub fn limit(&self) -> GeneralizedPolygon {
        match self {
            Family::Pacman => pacman_limit(),
            Family::Mountains => mountains_limit(),
            Family::ShrinkingSlit => plain_square(),
        }
    }
}

const PENTAGON_STEP: f64 = 2.0 * std::f64::consts::PI / 5.0;

fn ring_vertex(k: u32) -> Point2 {
    let a = PENTAGON_STEP * k as f64;
    Point2::new(a.cos(), a.sin())
}

/// Pentagon-resolution disk with a wedge of half-angle `delta` removed
/// around the positive x axis, mouth at the origin.
fn pacman(delta: f64) -> Result<GeneralizedPolygon, GeometryError> {
    let upper = Point2::new(delta.cos(), delta.sin());
    let lower = Point2::new(delta.cos(), -delta.sin());
    let verts = vec![
        upper,
        ring_vertex(1),
        ring_vertex(2),
        ring_vertex(3),
        ring_vertex(4),
        lower,
        Point2::new(0.0, 0.0),
    ];
    GeneralizedPolygon::simple(SimplePolygon::new(verts)?, 7)
}

fn pacman_limit() -> GeneralizedPolygon {
    let verts = (0..5).map(ring_vertex).collect::<Vec<_>>();
    let walk = SimplePolygon::new(verts).unwrap();
    GeneralizedPolygon::new(
        vec![Component {
            walk,
            cracks: vec![Crack::new(vec![
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 0.0),
            ])],
        }],
        7,
    )
    .unwrap()
}

/// Two unit-height peaks over [0,2] whose central valley sits at height
/// `delta` above the base.
fn mountains(delta: f64) -> Result<GeneralizedPolygon, GeometryError> {
    let verts = vec![
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(1.5, 1.0),
        Point2::new(1.0, delta),
        Point2::new(0.5, 1.0),
    ];
    GeneralizedPolygon::simple(SimplePolygon::new(verts)?, 5)
}

fn mountains_limit() -> GeneralizedPolygon {
    let left = SimplePolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.5, 1.0),
    ])
    .unwrap();
    let right = SimplePolygon::new(vec![
        Point2::new(1.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(1.5, 1.0),
    ])
    .unwrap();
    GeneralizedPolygon::new(
        vec![Component::simple(left), Component::simple(right)],
        5,
    )
    .unwrap()
}

fn shrinking_slit(len: f64) -> Result<GeneralizedPolygon, GeometryError> {
    let walk = SimplePolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ])?;
    GeneralizedPolygon::new(
        vec![Component {
            walk,
            cracks: vec![Crack::new(vec![
                Point2::new(0.5, 0.0),
                Point2::new(0.5, len),
            ])],
        }],
        7,
    )
}

fn plain_square() -> GeneralizedPolygon {
    GeneralizedPolygon::simple(
        SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap(),
        7,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::hausdorff::hc_distance;
    use crate::geom::measures::{area, generalized_perimeter, side_count};

    #[test]
    fn members_are_valid_for_early_steps() {
        for fam in Family::all() {
            for step in 0..7 {
                let p = fam.member(step).unwrap();
                assert!(area(&p) > 0.0, "{} step {}", fam.name(), step);
            }
            let _ = fam.limit();
        }
    }

    #[test]
    fn pacman_limit_measures() {
        let lim = Family::Pacman.limit();
        // Regular pentagon of circumradius 1 plus a radial two-sided slit.
        assert!((area(&lim) - 2.5 * PENTAGON_STEP.sin()).abs() < 1e-12, "{}", area(&lim));
        let side = 2.0 * (std::f64::consts::PI / 5.0).sin();
        assert!((generalized_perimeter(&lim) - (5.0 * side + 2.0)).abs() < 1e-12);
        assert_eq!(side_count(&lim), 7);
    }

    #[test]
    fn mountains_area_tracks_valley() {
        for step in 0..5 {
            let delta = 0.5 * 0.5_f64.powi(step);
            let p = Family::Mountains.member(step as u32).unwrap();
            assert!((area(&p) - (1.0 + 0.5 * delta)).abs() < 1e-12);
        }
        assert!((area(&Family::Mountains.limit()) - 1.0).abs() < 1e-12);
        assert_eq!(side_count(&Family::Mountains.limit()), 5);
    }

    #[test]
    fn members_approach_their_limit() {
        for fam in Family::all() {
            let lim = fam.limit();
            let d0 = hc_distance(&fam.member(0).unwrap(), &lim, 0.01).unwrap();
            let d3 = hc_distance(&fam.member(3).unwrap(), &lim, 0.01).unwrap();
            assert!(
                d3 < d0 + 1e-9,
                "{}: d0 {} d3 {}",
                fam.name(),
                d0,
                d3
            );
            let d5 = hc_distance(&fam.member(5).unwrap(), &lim, 0.005).unwrap();
            assert!(d5 < 0.1, "{}: d5 {}", fam.name(), d5);
        }
    }
}
