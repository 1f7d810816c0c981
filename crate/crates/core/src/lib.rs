//! Robin-Laplacian eigenvalues on polygons that may carry cracks (slits)
//! and several components, together with the geometric surgeries built on
//! top of them: corner cuts, hole filling, crack detachment, and a spectral
//! shape-optimization driver.
//!
//! The crate is organized along the pipeline
//!
//! ```text
//! geom  ->  mesh  ->  fem  ->  objective  ->  optim
//! ```
//!
//! * [`geom`]: polygon kernel (simple and generalized polygons, measures,
//!   the complement Hausdorff distance, corner cuts / hole filling / crack
//!   detachment, JSON loading).
//! * [`mesh`]: constrained Delaunay triangulation with quality refinement
//!   and duplicated nodes along crack seams, plus uniform refinement.
//! * [`fem`]: P1 assembly of stiffness, mass and boundary-mass forms, the
//!   generalized symmetric eigensolver and Richardson extrapolation.
//! * [`objective`]: spectral objective functionals and their hypothesis
//!   checks.
//! * [`optim`]: multi-start Nelder-Mead over vertex coordinates under an
//!   area or perimeter constraint, and the comparison reports (corner-cut
//!   sweeps, hole filling, lower bounds).
//! * [`families`]: named polygon families used by the convergence driver.

pub mod families;
pub mod fem;
pub mod geom;
pub mod mesh;
pub mod objective;
pub mod optim;
