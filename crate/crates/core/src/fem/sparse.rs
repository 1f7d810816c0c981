//! Shift-inverted subspace iteration for the pencil (A, M) at large sizes.
//!
//! With a shift sigma strictly below the whole spectrum, S = A - sigma*M is
//! positive definite and conjugate gradients can apply S⁻¹. Subspace
//! iteration on S⁻¹M with Rayleigh-Ritz extraction then converges to the
//! smallest eigenvalues. For beta >= 0 the spectrum is nonnegative and
//! sigma = -1 works; for beta < 0 the spectrum is bounded below by
//! beta * max-eig(B, M), which a short power iteration estimates.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nalgebra::{DMatrix, SymmetricEigen};

use super::csr::Csr;
use super::dense::fix_sign;
use super::FemError;

const CG_TOL: f64 = 1e-12;
const RITZ_TOL: f64 = 1e-9;
const MAX_OUTER: usize = 400;

struct NotSpd;

/// Jacobi-preconditioned conjugate gradients; reports indefiniteness.
fn cg(s: &Csr, diag: &[f64], b: &[f64], x: &mut [f64]) -> Result<(), NotSpd> {
    let n = s.n;
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.fill(0.0);
        return Ok(());
    }
    let mut r = b.to_vec();
    let sx = s.apply(x);
    for i in 0..n {
        r[i] -= sx[i];
    }
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for _ in 0..20 * n.max(50) {
        if norm(&r) <= CG_TOL * bnorm {
            return Ok(());
        }
        let sp = s.apply(&p);
        let psp = dot(&p, &sp);
        if psp <= 0.0 {
            return Err(NotSpd);
        }
        let alpha = rz / psp;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * sp[i];
        }
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    // ran out of iterations without an indefiniteness signal
    if norm(&r) <= 1e-8 * bnorm {
        Ok(())
    } else {
        Err(NotSpd)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Largest eigenvalue of the pencil (B, M) by power iteration on M⁻¹B.
fn gen_max_eig(b: &Csr, m: &Csr, mdiag: &[f64]) -> Result<f64, FemError> {
    let n = b.n;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0e);
    let mut z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut rho = 0.0;
    for _ in 0..60 {
        let w = b.apply(&z);
        let mut y = vec![0.0; n];
        cg(m, mdiag, &w, &mut y)
            .map_err(|_| FemError::SolverFailure("mass solve failed in shift estimate".into()))?;
        let ynorm = norm(&y);
        if ynorm < 1e-300 {
            // landed in the kernel of B; reseed
            z = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            continue;
        }
        for v in y.iter_mut() {
            *v /= ynorm;
        }
        z = y;
        let num = b.quad(&z, &z);
        let den = m.quad(&z, &z);
        let next = num / den;
        if (next - rho).abs() <= 1e-3 * next.abs().max(1e-30) {
            return Ok(next);
        }
        rho = next;
    }
    Ok(rho)
}

/// M-orthonormalizes the columns of x in place (two MGS passes).
fn m_orthonormalize(x: &mut [Vec<f64>], m: &Csr, rng: &mut ChaCha8Rng) {
    let q = x.len();
    for j in 0..q {
        for _pass in 0..2 {
            let mx = m.apply(&x[j]);
            let mut coeffs = vec![0.0; j];
            for (i, c) in coeffs.iter_mut().enumerate() {
                *c = dot(&x[i], &mx);
            }
            for (i, c) in coeffs.into_iter().enumerate() {
                let xi = x[i].clone();
                for (t, v) in x[j].iter_mut().enumerate() {
                    *v -= c * xi[t];
                }
            }
        }
        let mut nrm = m.quad(&x[j], &x[j]).max(0.0).sqrt();
        if nrm < 1e-12 {
            // degenerate direction; replace with a fresh random one
            for v in x[j].iter_mut() {
                *v = rng.gen_range(-1.0..1.0);
            }
            let mx = m.apply(&x[j]);
            for i in 0..j {
                let c = dot(&x[i], &mx);
                let xi = x[i].clone();
                for (t, v) in x[j].iter_mut().enumerate() {
                    *v -= c * xi[t];
                }
            }
            nrm = m.quad(&x[j], &x[j]).max(0.0).sqrt();
        }
        for v in x[j].iter_mut() {
            *v /= nrm;
        }
    }
}

pub fn sparse_eigs(
    a: &Csr,
    m: &Csr,
    b: &Csr,
    beta: f64,
    k: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), FemError> {
    let n = a.n;
    let mdiag = m.diag();

    let mut sigma = if beta >= 0.0 {
        -1.0
    } else {
        1.5 * beta * gen_max_eig(b, m, &mdiag)? - 1.0
    };

    let q = (2 * k).max(k + 6).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x526f62);
    let mut x: Vec<Vec<f64>> = (0..q)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    m_orthonormalize(&mut x, m, &mut rng);

    'shift: for _attempt in 0..8 {
        let s = a.add_scaled(m, -sigma);
        let sdiag: Vec<f64> = s.diag().iter().map(|&d| if d > 0.0 { d } else { 1.0 }).collect();

        for _outer in 0..MAX_OUTER {
            // Z = S⁻¹ M X
            let mut z = Vec::with_capacity(q);
            for xj in &x {
                let rhs = m.apply(xj);
                let mut zj = xj.clone();
                if cg(&s, &sdiag, &rhs, &mut zj).is_err() {
                    sigma = 2.0 * sigma - 1.0;
                    continue 'shift;
                }
                z.push(zj);
            }
            m_orthonormalize(&mut z, m, &mut rng);

            // Rayleigh-Ritz on the subspace
            let mut g = DMatrix::zeros(q, q);
            let az: Vec<Vec<f64>> = z.iter().map(|zj| a.apply(zj)).collect();
            for i in 0..q {
                for j in i..q {
                    let v = dot(&z[i], &az[j]);
                    g[(i, j)] = v;
                    g[(j, i)] = v;
                }
            }
            let eig = SymmetricEigen::new(g);
            let mut order: Vec<usize> = (0..q).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

            let mut xn: Vec<Vec<f64>> = Vec::with_capacity(q);
            for &col in &order {
                let mut v = vec![0.0; n];
                for (i, zi) in z.iter().enumerate() {
                    let c = eig.eigenvectors[(i, col)];
                    for t in 0..n {
                        v[t] += c * zi[t];
                    }
                }
                xn.push(v);
            }
            x = xn;

            // residual check on the leading k Ritz pairs
            let mut worst = 0.0f64;
            for (rank, &col) in order.iter().take(k).enumerate() {
                let lam = eig.eigenvalues[col];
                let au = a.apply(&x[rank]);
                let mu = m.apply(&x[rank]);
                let mut r = 0.0;
                let mut scale = 0.0;
                for t in 0..n {
                    r += (au[t] - lam * mu[t]).powi(2);
                }
                scale += norm(&au) + lam.abs() * norm(&mu);
                worst = worst.max(r.sqrt() / scale.max(1e-300));
            }
            if worst <= RITZ_TOL {
                let mut vals = Vec::with_capacity(k);
                let mut vecs = Vec::with_capacity(k);
                for (rank, &col) in order.iter().take(k).enumerate() {
                    vals.push(eig.eigenvalues[col]);
                    let mut u = x[rank].clone();
                    fix_sign(&mut u);
                    vecs.push(u);
                }
                return Ok((vals, vecs));
            }
        }
        return Err(FemError::SolverFailure(
            "subspace iteration did not reach the residual tolerance".into(),
        ));
    }
    Err(FemError::SolverFailure(
        "could not find a shift making the pencil positive definite".into(),
    ))
}
