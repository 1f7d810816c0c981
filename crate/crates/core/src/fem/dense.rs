//! Dense reduction of the generalized symmetric pencil (A, M).
//!
//! M = L L' by Cholesky, then C = L⁻¹ A L⁻ᵀ is an ordinary symmetric
//! eigenproblem; eigenvectors map back through u = L⁻ᵀ y, which makes them
//! M-orthonormal for free.

use nalgebra::{Cholesky, DVector, SymmetricEigen};

use super::csr::Csr;
use super::FemError;

pub fn dense_eigs(a: &Csr, m: &Csr, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>), FemError> {
    let n = a.n;
    let ad = a.to_dense();
    let md = m.to_dense();

    let chol = Cholesky::new(md)
        .ok_or_else(|| FemError::SolverFailure("mass matrix not positive definite".into()))?;
    let l = chol.l();
    let fail = || FemError::SolverFailure("triangular solve hit a zero pivot".into());

    // C = L⁻¹ A L⁻ᵀ, done as W = L⁻¹A then C = (L⁻¹ Wᵀ)ᵀ
    let w = l.solve_lower_triangular(&ad).ok_or_else(fail)?;
    let c = l.solve_lower_triangular(&w.transpose()).ok_or_else(fail)?.transpose();
    let c = 0.5 * (&c + &c.transpose());

    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let lt = l.transpose();
    let mut vals = Vec::with_capacity(k);
    let mut vecs = Vec::with_capacity(k);
    for &i in order.iter().take(k) {
        vals.push(eig.eigenvalues[i]);
        let y: DVector<f64> = eig.eigenvectors.column(i).into_owned();
        let u = lt.solve_upper_triangular(&y).ok_or_else(fail)?;
        let mut u: Vec<f64> = u.iter().copied().collect();
        fix_sign(&mut u);
        vecs.push(u);
    }
    Ok((vals, vecs))
}

/// Flips the vector so its largest-magnitude entry is positive; keeps
/// reported eigenvectors reproducible across solver paths.
pub fn fix_sign(u: &mut [f64]) {
    let mut best = 0usize;
    for (i, v) in u.iter().enumerate() {
        if v.abs() > u[best].abs() {
            best = i;
        }
    }
    if u[best] < 0.0 {
        for v in u.iter_mut() {
            *v = -*v;
        }
    }
}
