//! Minimal dense complex matrix kernel.
//!
//! Sizes in this crate stay small (a few hundred rows at most), so a
//! hand-rolled kernel with fixed index-ascending reductions is preferred
//! over a BLAS backend: results are bit-stable across runs and thread
//! counts, which the report determinism contract depends on.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows in matrix literal"));
        }
        Ok(CMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Row-major flattening; the inverse of [`CMatrix::unvec`].
    pub fn vec(&self) -> Vec<C64> {
        self.data.clone()
    }

    pub fn unvec(data: Vec<C64>, rows: usize, cols: usize) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "cannot reshape {} entries into {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "product of {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::shape("matvec length mismatch"));
        }
        let mut y = vec![C64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C64::ZERO;
            for j in 0..self.cols {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("sum of unequal shapes"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("difference of unequal shapes"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Plain transpose, no conjugation. Only used by planted mutations.
    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        let n = self.rows.min(self.cols);
        let mut acc = C64::ZERO;
        for i in 0..n {
            acc += self.get(i, i);
        }
        acc
    }

    /// Frobenius pairing `sum_ij a_ij conj(b_ij)`, conjugate-linear in `b`.
    pub fn frob_inner(&self, other: &CMatrix) -> Result<C64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("frobenius pairing of unequal shapes"));
        }
        let mut acc = C64::ZERO;
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += a * b.conj();
        }
        Ok(acc)
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
    ///
    /// Returns `(eigenvalues, V)` with columns of `V` the eigenvectors, so
    /// `self = V diag(lambda) V^*` up to roundoff. Eigenvalues ascending.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, CMatrix)> {
        if !self.is_square() {
            return Err(Error::shape("eigendecomposition of non-square matrix"));
        }
        let n = self.rows;
        let mut h = self.clone();
        let mut v = CMatrix::identity(n);
        let scale = self.frob_norm().max(1.0);
        let tol = 1e-15 * scale;

        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += h.get(p, q).norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let b = h.get(p, q);
                    let babs = b.norm();
                    if babs <= 1e-300 {
                        continue;
                    }
                    let phase = b / babs;
                    let a = h.get(p, p).re;
                    let d = h.get(q, q).re;
                    // diag(phase, 1) conjugation turns the block into the
                    // real symmetric [[a, |b|], [|b|, d]]; then a classic
                    // Jacobi rotation with t^2 + 2*tau*t - 1 = 0 zeroes it
                    let tau = (d - a) / (2.0 * babs);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Unitary acting on the (p,q) plane:
                    //   U_pp = phase*c, U_pq = phase*s, U_qp = -s, U_qq = c
                    let upp = phase * c;
                    let upq = phase * s;
                    let uqp = C64::new(-s, 0.0);
                    let uqq = C64::new(c, 0.0);
                    // H <- U^* H U (columns then rows)
                    for i in 0..n {
                        let hip = h.get(i, p);
                        let hiq = h.get(i, q);
                        h.set(i, p, hip * upp + hiq * uqp);
                        h.set(i, q, hip * upq + hiq * uqq);
                    }
                    for j in 0..n {
                        let hpj = h.get(p, j);
                        let hqj = h.get(q, j);
                        h.set(p, j, upp.conj() * hpj + uqp.conj() * hqj);
                        h.set(q, j, upq.conj() * hpj + uqq.conj() * hqj);
                    }
                    // keep the block exactly Hermitian against drift
                    h.set(p, p, C64::new(h.get(p, p).re, 0.0));
                    h.set(q, q, C64::new(h.get(q, q).re, 0.0));
                    let hpq = h.get(p, q);
                    let hqp = h.get(q, p);
                    let sym = (hpq + hqp.conj()) * 0.5;
                    h.set(p, q, sym);
                    h.set(q, p, sym.conj());
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, vip * upp + viq * uqp);
                        v.set(i, q, vip * upq + viq * uqq);
                    }
                }
            }
        }

        let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (h.get(i, i).re, i)).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let values: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (new_col, (_, old_col)) in pairs.iter().enumerate() {
            for i in 0..n {
                vectors.set(i, new_col, v.get(i, *old_col));
            }
        }
        Ok((values, vectors))
    }

    /// Inverse square root of a Hermitian positive-definite matrix.
    /// Eigenvalues below `eps` are treated as singular.
    pub fn inv_sqrt_psd(&self, eps: f64) -> Result<CMatrix> {
        let (vals, vecs) = self.hermitian_eigen()?;
        if vals.iter().any(|&l| l <= eps) {
            return Err(Error::Numerical(format!(
                "matrix not positive definite: smallest eigenvalue {:.3e}",
                vals.first().copied().unwrap_or(0.0)
            )));
        }
        let n = self.rows;
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::ZERO;
                for k in 0..n {
                    acc += vecs.get(i, k) * vecs.get(j, k).conj() / vals[k].sqrt();
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }
}

/// Numerical rank of the vector family behind a PSD Gram matrix.
///
/// Eigenvalues of the Gram are squared singular values of the family;
/// the rank counts singular values at least `rel_tol` times the largest.
pub fn gram_numerical_rank(gram: &CMatrix, rel_tol: f64) -> Result<(usize, Vec<f64>)> {
    let (vals, _) = gram.hermitian_eigen()?;
    let singulars: Vec<f64> = vals.iter().rev().map(|l| l.max(0.0).sqrt()).collect();
    let top = singulars.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok((0, singulars));
    }
    let rank = singulars.iter().filter(|&&s| s >= rel_tol * top).count();
    Ok((rank, singulars))
}
