//! P1 finite elements for the Robin problem on meshed generalized polygons.
//!
//! Three bilinear forms are assembled with exact quadrature: stiffness K,
//! mass M, and boundary mass B. Crack seams carry duplicated nodes, so B
//! integrates over both crack sides and the quadratic form is
//! `sum over boundary of (u+)^2 + (u-)^2`. Eigenvalues of the pencil
//! (K + beta*B, M) realize the generalized Rayleigh quotient; a dense
//! M-Cholesky reduction handles problems up to a few thousand unknowns
//! and shift-inverted subspace iteration takes over beyond that.

pub mod csr;
mod dense;
mod sparse;

pub use csr::Csr;

use thiserror::Error;

use crate::geom::GeneralizedPolygon;
use crate::mesh::{mesh, refine, MeshError, TriMesh};

/// Largest system handed to the dense reduction.
const DENSE_LIMIT: usize = 4000;

/// Residual bound every returned eigenpair satisfies.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum FemError {
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("solver failure: {0}")]
    SolverFailure(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Stiffness, mass, and boundary mass of one mesh, over a shared pattern.
#[derive(Debug, Clone)]
pub struct AssembledForms {
    pub stiffness: Csr,
    pub mass: Csr,
    pub boundary_mass: Csr,
    /// Longest edge of the source mesh (a measured size, not a request).
    pub mesh_h: f64,
}

impl AssembledForms {
    pub fn dim(&self) -> usize {
        self.mass.n
    }
}

/// Mesh-level value history behind an extrapolated spectrum.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LevelHistory {
    /// Nominal mesh size per level (halved on each refinement).
    pub hs: Vec<f64>,
    /// Raw eigenvalues per level, one row per level.
    pub values: Vec<Vec<f64>>,
    /// Observed convergence order per eigenvalue, when measurable.
    pub rates: Vec<Option<f64>>,
    /// Size of the extrapolation correction per eigenvalue.
    pub error_estimates: Vec<f64>,
    /// Whether successive differences kept shrinking by at least 2x.
    pub converged: Vec<bool>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SpectrumResult {
    pub beta: f64,
    /// Ascending. Extrapolated when `levels` is present, raw otherwise.
    pub eigenvalues: Vec<f64>,
    /// M-orthonormal coefficient vectors on the solve mesh (the finest one
    /// under extrapolation). Not serialized: the vectors are indexed by mesh
    /// nodes and the mesh is not persisted.
    #[serde(skip_serializing)]
    pub eigenvectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub mesh_h: f64,
    pub levels: Option<LevelHistory>,
}

impl SpectrumResult {
    /// True when every tracked eigenvalue passed the shrink test.
    pub fn fully_converged(&self) -> bool {
        self.levels
            .as_ref()
            .map(|l| l.converged.iter().all(|&c| c))
            .unwrap_or(false)
    }
}

/// Assembles the three forms with exact per-element quadrature.
pub fn assemble(m: &TriMesh) -> AssembledForms {
    let n = m.num_nodes();
    let mut kt = Vec::with_capacity(9 * m.num_tris());
    let mut mt = Vec::with_capacity(9 * m.num_tris());
    let mut bt = Vec::with_capacity(4 * m.boundary.len());

    for tri in &m.tris {
        let ids = *tri;
        let p = m.nodes[ids[0]];
        let q = m.nodes[ids[1]];
        let r = m.nodes[ids[2]];
        let a = 0.5 * (q - p).cross(r - p);
        let b = [q.y - r.y, r.y - p.y, p.y - q.y];
        let c = [r.x - q.x, p.x - r.x, q.x - p.x];
        for s in 0..3 {
            for t in 0..3 {
                kt.push((ids[s], ids[t], (b[s] * b[t] + c[s] * c[t]) / (4.0 * a)));
                let mv = if s == t { a / 6.0 } else { a / 12.0 };
                mt.push((ids[s], ids[t], mv));
            }
        }
    }
    for e in &m.boundary {
        let len = m.nodes[e.a].dist(m.nodes[e.b]);
        bt.push((e.a, e.a, len / 3.0));
        bt.push((e.b, e.b, len / 3.0));
        bt.push((e.a, e.b, len / 6.0));
        bt.push((e.b, e.a, len / 6.0));
    }

    let mut built = Csr::build_shared(n, &[&kt, &mt, &bt]);
    let boundary_mass = built.pop().unwrap();
    let mass = built.pop().unwrap();
    let stiffness = built.pop().unwrap();
    AssembledForms {
        stiffness,
        mass,
        boundary_mass,
        mesh_h: m.max_edge_len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SolverPath {
    Dense,
    Sparse,
}

/// k smallest eigenpairs of (K + beta*B, M).
pub fn robin_eigs(forms: &AssembledForms, beta: f64, k: usize) -> Result<SpectrumResult, FemError> {
    let path = if forms.dim() <= DENSE_LIMIT {
        SolverPath::Dense
    } else {
        SolverPath::Sparse
    };
    robin_eigs_with(forms, beta, k, path)
}

pub(crate) fn robin_eigs_with(
    forms: &AssembledForms,
    beta: f64,
    k: usize,
    path: SolverPath,
) -> Result<SpectrumResult, FemError> {
    let n = forms.dim();
    if k == 0 || k > n {
        return Err(FemError::InvalidParameter(format!(
            "eigenvalue count {} outside 1..={}",
            k, n
        )));
    }
    if !beta.is_finite() {
        return Err(FemError::InvalidParameter(format!("beta = {}", beta)));
    }

    let a = forms.stiffness.add_scaled(&forms.boundary_mass, beta);
    let (eigenvalues, eigenvectors) = match path {
        SolverPath::Dense => dense::dense_eigs(&a, &forms.mass, k)?,
        SolverPath::Sparse => sparse::sparse_eigs(&a, &forms.mass, &forms.boundary_mass, beta, k)?,
    };

    let mut residuals = Vec::with_capacity(k);
    for (lam, u) in eigenvalues.iter().zip(&eigenvectors) {
        let au = a.apply(u);
        let mu = forms.mass.apply(u);
        let mut rr = 0.0;
        let mut na = 0.0;
        let mut nm = 0.0;
        for t in 0..n {
            rr += (au[t] - lam * mu[t]).powi(2);
            na += au[t] * au[t];
            nm += mu[t] * mu[t];
        }
        let scale = (na.sqrt() + lam.abs() * nm.sqrt()).max(nm.sqrt());
        residuals.push(rr.sqrt() / scale.max(1e-300));
    }
    if let Some(worst) = residuals.iter().copied().reduce(f64::max) {
        if worst > RESIDUAL_TOL {
            return Err(FemError::SolverFailure(format!(
                "eigenpair residual {:.3e} above {:.0e}",
                worst, RESIDUAL_TOL
            )));
        }
    }

    Ok(SpectrumResult {
        beta,
        eigenvalues,
        eigenvectors,
        residuals,
        mesh_h: forms.mesh_h,
        levels: None,
    })
}

/// Value of the quotient (u'Ku + beta u'Bu) / (u'Mu).
pub fn rayleigh(forms: &AssembledForms, beta: f64, u: &[f64]) -> Result<f64, FemError> {
    if u.len() != forms.dim() {
        return Err(FemError::InvalidParameter(format!(
            "vector length {} does not match system size {}",
            u.len(),
            forms.dim()
        )));
    }
    let den = forms.mass.quad(u, u);
    if !(den > 0.0) {
        return Err(FemError::InvalidParameter("zero test vector".into()));
    }
    Ok((forms.stiffness.quad(u, u) + beta * forms.boundary_mass.quad(u, u)) / den)
}

/// Solves on `levels` nested refinements starting from size `h0` and
/// Richardson-extrapolates each eigenvalue. Non-convergence (successive
/// differences failing to shrink by at least 2x) is reported in the
/// returned history, never silently dropped.
pub fn converged_eigs(
    poly: &GeneralizedPolygon,
    beta: f64,
    k: usize,
    h0: f64,
    levels: usize,
) -> Result<SpectrumResult, FemError> {
    if levels < 2 {
        return Err(FemError::InvalidParameter(format!(
            "need at least 2 refinement levels, got {}",
            levels
        )));
    }

    let mut msh = mesh(poly, h0)?;
    let mut hs = Vec::with_capacity(levels);
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut finest: Option<SpectrumResult> = None;
    for lev in 0..levels {
        if lev > 0 {
            msh = refine(&msh);
        }
        let forms = assemble(&msh);
        let spec = robin_eigs(&forms, beta, k)?;
        hs.push(h0 / (1usize << lev) as f64);
        values.push(spec.eigenvalues.clone());
        finest = Some(spec);
    }
    let finest = finest.unwrap();
    let last = levels - 1;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut rates = Vec::with_capacity(k);
    let mut error_estimates = Vec::with_capacity(k);
    let mut converged = Vec::with_capacity(k);
    for i in 0..k {
        let v: Vec<f64> = values.iter().map(|row| row[i]).collect();
        let d_last = v[last] - v[last - 1];
        let scale = v[last].abs().max(1.0);
        if d_last.abs() <= 1e-11 * scale {
            // already at the noise floor
            eigenvalues.push(v[last]);
            rates.push(None);
            error_estimates.push(d_last.abs());
            converged.push(true);
            continue;
        }
        let (rate, shrink_ok) = if levels >= 3 {
            let d_prev = v[last - 1] - v[last - 2];
            let ratio = d_prev / d_last;
            if ratio.is_finite() && ratio > 1.0 {
                (Some(ratio.log2().clamp(0.25, 4.0)), ratio >= 2.0)
            } else {
                (None, false)
            }
        } else {
            // two levels cannot exhibit a trend; assume the generic order
            (None, true)
        };
        let p = rate.unwrap_or(2.0);
        let correction = d_last / (2f64.powf(p) - 1.0);
        eigenvalues.push(v[last] + correction);
        rates.push(rate);
        error_estimates.push(correction.abs());
        converged.push(shrink_ok);
    }

    // extrapolation may nudge near-degenerate values out of order
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
    let perm = |src: &[f64]| -> Vec<f64> { order.iter().map(|&i| src[i]).collect() };

    Ok(SpectrumResult {
        beta,
        eigenvalues: perm(&eigenvalues),
        eigenvectors: order.iter().map(|&i| finest.eigenvectors[i].clone()).collect(),
        residuals: perm(&finest.residuals),
        mesh_h: finest.mesh_h,
        levels: Some(LevelHistory {
            hs,
            values: values
                .iter()
                .map(|row| order.iter().map(|&i| row[i]).collect())
                .collect(),
            rates: order.iter().map(|&i| rates[i]).collect(),
            error_estimates: perm(&error_estimates),
            converged: order.iter().map(|&i| converged[i]).collect(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::measures::{area, generalized_perimeter, scale as scale_poly};
    use crate::geom::{Component, Crack, GeneralizedPolygon, Point2, SimplePolygon};
    use crate::mesh::{BoundaryEdge, BoundaryKind};
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square() -> GeneralizedPolygon {
        let walk = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        GeneralizedPolygon::simple(walk, 4).unwrap()
    }

    fn slit_square() -> GeneralizedPolygon {
        let walk = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let crack = Crack::new(vec![Point2::new(0.5, 0.0), Point2::new(0.5, 0.3)]);
        GeneralizedPolygon::new(vec![Component { walk, cracks: vec![crack] }], 7).unwrap()
    }

    /// Smallest root of sqrt(mu) tan(sqrt(mu)/2) = beta; the first
    /// one-dimensional Robin eigenvalue on a unit interval, beta > 0.
    fn interval_eig_positive(beta: f64) -> f64 {
        let f = |mu: f64| mu.sqrt() * (mu.sqrt() / 2.0).tan() - beta;
        let mut lo = 1e-14;
        let mut hi = std::f64::consts::PI.powi(2) - 1e-12;
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Root of sqrt(m) tanh(sqrt(m)/2) = eta; gives the first interval
    /// eigenvalue -m for the negative parameter -eta.
    fn interval_eig_negative(eta: f64) -> f64 {
        let f = |m: f64| m.sqrt() * (m.sqrt() / 2.0).tanh() - eta;
        let mut lo = 1e-14;
        let mut hi = 1.0;
        while f(hi) < 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn element_matrices_match_reference() {
        // unit right triangle, hand-computed P1 matrices
        let m = TriMesh {
            nodes: vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)],
            tris: vec![[0, 1, 2]],
            boundary: vec![
                BoundaryEdge { a: 0, b: 1, kind: BoundaryKind::Wall },
                BoundaryEdge { a: 1, b: 2, kind: BoundaryKind::Wall },
                BoundaryEdge { a: 2, b: 0, kind: BoundaryKind::Wall },
            ],
            seam_pairs: vec![],
        };
        let forms = assemble(&m);
        let kd = forms.stiffness.to_dense();
        let md = forms.mass.to_dense();
        let k_ref = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
        let m_ref_scale = 1.0 / 24.0;
        let m_ref = [[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(kd[(i, j)], k_ref[i][j], epsilon = 1e-14);
                assert_relative_eq!(md[(i, j)], m_ref[i][j] * m_ref_scale, epsilon = 1e-15);
            }
        }
        // boundary mass row sums: each node sees half of each incident edge
        let bd = forms.boundary_mass.to_dense();
        let total: f64 = bd.iter().sum();
        assert_relative_eq!(total, 2.0 + 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn form_invariants_hold() {
        for (poly, label) in [
            (square(), "square"),
            (slit_square(), "slit square"),
            (crate::families::Family::Pacman.limit(), "cracked pentagon"),
        ] {
            let msh = mesh(&poly, 0.2).unwrap();
            let forms = assemble(&msh);
            let n = forms.dim();
            let ones = vec![1.0; n];

            let k1 = forms.stiffness.apply(&ones);
            let kmax = k1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(kmax <= 1e-10, "{}: stiffness kernel violation {}", label, kmax);

            assert_relative_eq!(
                forms.mass.quad(&ones, &ones),
                area(&poly),
                max_relative = 1e-10
            );
            assert_relative_eq!(
                forms.boundary_mass.quad(&ones, &ones),
                generalized_perimeter(&poly),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn neumann_gives_zero_with_constant_vector() {
        let msh = mesh(&square(), 0.2).unwrap();
        let forms = assemble(&msh);
        let spec = robin_eigs(&forms, 0.0, 1).unwrap();
        assert!(spec.eigenvalues[0].abs() <= 1e-10);
        let u = &spec.eigenvectors[0];
        let lo = u.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(hi - lo <= 1e-6 * hi.abs().max(lo.abs()), "not constant: [{}, {}]", lo, hi);

        // two touching components: kernel has dimension two
        let two = crate::families::Family::Mountains.limit();
        let msh2 = mesh(&two, 0.2).unwrap();
        let spec2 = robin_eigs(&assemble(&msh2), 0.0, 3).unwrap();
        assert!(spec2.eigenvalues[0].abs() <= 1e-10);
        assert!(spec2.eigenvalues[1].abs() <= 1e-10);
        assert!(spec2.eigenvalues[2] > 1e-3);
    }

    #[test]
    fn square_matches_interval_oracle() {
        let mu = interval_eig_positive(1.0);
        let want = 2.0 * mu;
        let spec = converged_eigs(&square(), 1.0, 1, 0.25, 3).unwrap();
        assert_relative_eq!(spec.eigenvalues[0], want, max_relative = 1e-3);
        assert!(spec.fully_converged());

        let m = interval_eig_negative(1.0);
        let want_neg = -2.0 * m;
        let spec_neg = converged_eigs(&square(), -1.0, 1, 0.25, 3).unwrap();
        assert_relative_eq!(spec_neg.eigenvalues[0], want_neg, max_relative = 1e-3);
        assert!(want_neg <= -4.0 && spec_neg.eigenvalues[0] <= -4.0);
    }

    #[test]
    fn converged_neumann_is_exactly_zero() {
        let spec = converged_eigs(&square(), 0.0, 1, 0.3, 2).unwrap();
        assert!(spec.eigenvalues[0].abs() <= 1e-10);
        assert!(spec.fully_converged());
    }

    #[test]
    fn rayleigh_quotient_identities() {
        let poly = slit_square();
        let msh = mesh(&poly, 0.15).unwrap();
        let forms = assemble(&msh);
        let n = forms.dim();
        let beta = 0.8;

        let ones = vec![1.0; n];
        let want = beta * generalized_perimeter(&poly) / area(&poly);
        assert_relative_eq!(rayleigh(&forms, beta, &ones).unwrap(), want, max_relative = 1e-12);

        let spec = robin_eigs(&forms, beta, 1).unwrap();
        let lam = spec.eigenvalues[0];
        assert_relative_eq!(
            rayleigh(&forms, beta, &spec.eigenvectors[0]).unwrap(),
            lam,
            max_relative = 1e-9
        );

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            assert!(rayleigh(&forms, beta, &u).unwrap() >= lam - 1e-10);
        }
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let poly = slit_square();
        let msh = mesh(&poly, 0.15).unwrap();
        let forms = assemble(&msh);
        for beta in [1.0, -1.0] {
            let d = robin_eigs_with(&forms, beta, 4, SolverPath::Dense).unwrap();
            let s = robin_eigs_with(&forms, beta, 4, SolverPath::Sparse).unwrap();
            for i in 0..4 {
                assert_relative_eq!(d.eigenvalues[i], s.eigenvalues[i], max_relative = 1e-8);
                assert!(s.residuals[i] <= RESIDUAL_TOL);
            }
        }
    }

    #[test]
    fn matched_mesh_scaling_identity() {
        let poly = slit_square();
        let msh = mesh(&poly, 0.2).unwrap();
        let forms = assemble(&msh);

        for t in [0.5, 2.0, 3.0] {
            let mut scaled = msh.clone();
            for p in scaled.nodes.iter_mut() {
                *p = Point2::new(p.x * t, p.y * t);
            }
            let forms_t = assemble(&scaled);

            for (a, b) in forms.stiffness.vals.iter().zip(&forms_t.stiffness.vals) {
                assert_relative_eq!(a, b, epsilon = 1e-12, max_relative = 1e-12);
            }
            for (a, b) in forms.mass.vals.iter().zip(&forms_t.mass.vals) {
                assert_relative_eq!(a * t * t, *b, max_relative = 1e-12);
            }
            for (a, b) in forms.boundary_mass.vals.iter().zip(&forms_t.boundary_mass.vals) {
                assert_relative_eq!(a * t, *b, max_relative = 1e-12);
            }

            for beta in [1.0, -0.7] {
                let on_scaled = robin_eigs(&forms_t, beta, 4).unwrap();
                let reference = robin_eigs(&forms, t * beta, 4).unwrap();
                for i in 0..4 {
                    assert_relative_eq!(
                        on_scaled.eigenvalues[i],
                        reference.eigenvalues[i] / (t * t),
                        max_relative = 1e-10,
                        epsilon = 1e-12
                    );
                }
            }
        }

        // the polygon-level scale map agrees with scaling the mesh nodes
        let big = scale_poly(&poly, 2.0).unwrap();
        assert_relative_eq!(area(&big), 4.0 * area(&poly), max_relative = 1e-12);
    }

    #[test]
    fn eigenvalues_increase_with_beta() {
        let msh = mesh(&slit_square(), 0.2).unwrap();
        let forms = assemble(&msh);
        let betas: Vec<f64> = (0..10).map(|i| -2.0 + 4.0 * i as f64 / 9.0).collect();
        let mut prev: Option<Vec<f64>> = None;
        let mut prev_first = f64::NEG_INFINITY;
        for &b in &betas {
            let spec = robin_eigs(&forms, b, 4).unwrap();
            if let Some(p) = &prev {
                for i in 0..4 {
                    assert!(
                        spec.eigenvalues[i] >= p[i] - 1e-10,
                        "eigenvalue {} dropped between beta steps",
                        i
                    );
                }
            }
            assert!(spec.eigenvalues[0] > prev_first);
            prev_first = spec.eigenvalues[0];
            prev = Some(spec.eigenvalues.clone());
        }
    }

    #[test]
    fn negative_beta_constant_vector_bound() {
        let poly = slit_square();
        let msh = mesh(&poly, 0.2).unwrap();
        let forms = assemble(&msh);
        let eta = 1.0;
        let bound = -eta * generalized_perimeter(&poly) / area(&poly);
        let spec = robin_eigs(&forms, -eta, 1).unwrap();
        assert!(spec.eigenvalues[0] <= bound + 1e-10);

        let pos = robin_eigs(&forms, 1.0, 1).unwrap();
        assert!(pos.eigenvalues[0] > 0.0);
    }

    #[test]
    fn eigenvectors_are_mass_orthonormal() {
        let msh = mesh(&slit_square(), 0.2).unwrap();
        let forms = assemble(&msh);
        let spec = robin_eigs(&forms, 1.0, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = forms.mass.quad(&spec.eigenvectors[i], &spec.eigenvectors[j]);
                assert!((got - want).abs() <= 1e-10, "M-gram[{}][{}] = {}", i, j, got);
            }
        }
    }

    #[test]
    fn parameter_validation() {
        let msh = mesh(&square(), 0.4).unwrap();
        let forms = assemble(&msh);
        assert!(matches!(robin_eigs(&forms, 1.0, 0), Err(FemError::InvalidParameter(_))));
        assert!(matches!(
            robin_eigs(&forms, 1.0, forms.dim() + 1),
            Err(FemError::InvalidParameter(_))
        ));
        let zero = vec![0.0; forms.dim()];
        assert!(matches!(rayleigh(&forms, 1.0, &zero), Err(FemError::InvalidParameter(_))));
        assert!(matches!(
            converged_eigs(&square(), 1.0, 1, 0.3, 1),
            Err(FemError::InvalidParameter(_))
        ));
    }
}
