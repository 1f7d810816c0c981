//! Compressed sparse row storage for the assembled forms.
//!
//! The three forms of one mesh are built over a single shared sparsity
//! pattern (the node adjacency of the triangulation), so linear
//! combinations like `K + beta*B` reduce to elementwise value arithmetic.

use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct Csr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub vals: Vec<f64>,
}

impl Csr {
    /// Builds several matrices over the union pattern of their triplets.
    /// Duplicate entries are summed. All returned matrices share row_ptr
    /// and col_idx layout.
    pub fn build_shared(n: usize, lists: &[&[(usize, usize, f64)]]) -> Vec<Csr> {
        let mut keys: Vec<(usize, usize)> = Vec::new();
        for list in lists {
            for &(i, j, _) in *list {
                keys.push((i, j));
            }
        }
        keys.sort_unstable();
        keys.dedup();

        let mut row_ptr = vec![0usize; n + 1];
        for &(i, _) in &keys {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx: Vec<usize> = keys.iter().map(|&(_, j)| j).collect();

        // position lookup: for entry (i, j), binary search row i's slice
        let pos = |i: usize, j: usize| -> usize {
            let lo = row_ptr[i];
            let hi = row_ptr[i + 1];
            lo + col_idx[lo..hi].binary_search(&j).expect("entry in pattern")
        };

        lists
            .iter()
            .map(|list| {
                let mut vals = vec![0.0; keys.len()];
                for &(i, j, v) in *list {
                    vals[pos(i, j)] += v;
                }
                Csr {
                    n,
                    row_ptr: row_ptr.clone(),
                    col_idx: col_idx.clone(),
                    vals,
                }
            })
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        for i in 0..self.n {
            let mut s = 0.0;
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.vals[p] * x[self.col_idx[p]];
            }
            y[i] = s;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.matvec(x, &mut y);
        y
    }

    /// u' A v
    pub fn quad(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                row += self.vals[p] * v[self.col_idx[p]];
            }
            s += u[i] * row;
        }
        s
    }

    pub fn diag(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for i in 0..self.n {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.col_idx[p] == i {
                    d[i] = self.vals[p];
                }
            }
        }
        d
    }

    /// self + s * other; both must share the pattern they were built with.
    pub fn add_scaled(&self, other: &Csr, s: f64) -> Csr {
        assert_eq!(self.col_idx, other.col_idx, "patterns must match");
        let vals = self
            .vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| a + s * b)
            .collect();
        Csr {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            col_idx: self.col_idx.clone(),
            vals,
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                d[(i, self.col_idx[p])] = self.vals[p];
            }
        }
        d
    }
}
