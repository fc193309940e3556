//! Analysis and synthesis between operators and symbols: `analyze` sends
//! an operator to the function `s -> Tr[pi_s T]`, `synthesize` rebuilds
//! operators from symbols by the weighted sum of `pi_s^*`. Under
//! tightness these are mutually inverse between the Hilbert-Schmidt
//! space and the closed symbol subspace.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::family::OperatorFamily;
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SymbolSpace {
    family: OperatorFamily,
    /// `v_s = vec(pi_s^*)`, cached per point.
    vectors: Vec<Vec<C64>>,
}

impl SymbolSpace {
    pub fn new(family: OperatorFamily) -> Self {
        let vectors = (0..family.len()).map(|s| family.analysis_vector(s)).collect();
        SymbolSpace { family, vectors }
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn family_label(&self) -> String {
        self.family.label().to_string()
    }

    pub fn points(&self) -> usize {
        self.family.len()
    }

    pub fn hilbert_dim(&self) -> usize {
        self.family.dim()
    }

    pub fn measure(&self, s: usize) -> f64 {
        self.family.points()[s].weight
    }

    /// The symbol of an operator: `f(s) = Tr[pi_s T]`.
    pub fn analyze(&self, op: &CMatrix) -> Result<Vec<C64>> {
        let d = self.hilbert_dim();
        if op.rows() != d || op.cols() != d {
            return Err(Error::shape(format!("analyze expects a {d}x{d} operator")));
        }
        let flat = op.data();
        let mut out = Vec::with_capacity(self.points());
        for v in &self.vectors {
            let mut acc = C64::ZERO;
            for (t, w) in flat.iter().zip(v) {
                acc += t * w.conj();
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// The operator of a symbol: `sum_s mu_s f(s) pi_s^*`.
    pub fn synthesize(&self, symbol: &[C64]) -> Result<CMatrix> {
        if symbol.len() != self.points() {
            return Err(Error::shape(format!(
                "symbol length {} does not match {} family points",
                symbol.len(),
                self.points()
            )));
        }
        let d = self.hilbert_dim();
        let mut flat = vec![C64::ZERO; d * d];
        for (s, f) in symbol.iter().enumerate() {
            let mu = self.measure(s);
            for (acc, v) in flat.iter_mut().zip(&self.vectors[s]) {
                *acc += v * f * mu;
            }
        }
        CMatrix::unvec(flat, d, d)
    }

    /// The weighted scalar product `sum_s mu_s f(s) conj(g(s))`.
    pub fn inner_mu(&self, f: &[C64], g: &[C64]) -> Result<C64> {
        if f.len() != self.points() || g.len() != self.points() {
            return Err(Error::shape("symbol length mismatch"));
        }
        let mut acc = C64::ZERO;
        for (s, (x, y)) in f.iter().zip(g).enumerate() {
            acc += x * y.conj() * self.measure(s);
        }
        Ok(acc)
    }

    pub fn norm_mu(&self, f: &[C64]) -> Result<f64> {
        Ok(self.inner_mu(f, f)?.re.max(0.0).sqrt())
    }

    /// Orthogonal projection onto the symbol subspace (analyze after
    /// synthesize).
    pub fn project(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.analyze(&self.synthesize(f)?)
    }

    /// Norm of the component of `f` outside the symbol subspace.
    pub fn projection_loss(&self, f: &[C64]) -> Result<f64> {
        let p = self.project(f)?;
        let diff: Vec<C64> = f.iter().zip(&p).map(|(a, b)| a - b).collect();
        self.norm_mu(&diff)
    }

    /// The transported product `f # g = analyze(synthesize(f) synthesize(g))`.
    pub fn star(&self, f: &[C64], g: &[C64]) -> Result<Vec<C64>> {
        let pf = self.synthesize(f)?;
        let pg = self.synthesize(g)?;
        self.analyze(&pf.mul(&pg)?)
    }

    /// The transported involution `f^# = analyze(synthesize(f)^*)`.
    pub fn invol(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.analyze(&self.synthesize(f)?.adjoint())
    }

    /// Eigenvalues of the projection onto the symbol subspace, with the
    /// numerical rank at the relative threshold.
    pub fn projector_rank(&self, rel_tol: f64) -> Result<(usize, Vec<f64>)> {
        let n = self.points();
        // conjugate the mu-self-adjoint projector into a Hermitian matrix
        let mut h = CMatrix::zeros(n, n);
        for s in 0..n {
            for t in 0..n {
                let mut ip = C64::ZERO;
                for (a, b) in self.vectors[s].iter().zip(&self.vectors[t]) {
                    ip += a.conj() * b;
                }
                let scale = (self.measure(s) * self.measure(t)).sqrt();
                h.set(s, t, ip * scale);
            }
        }
        let (vals, _) = h.hermitian_eigen()?;
        let mut eigs: Vec<f64> = vals.into_iter().rev().collect();
        for v in eigs.iter_mut() {
            if v.abs() < 1e-300 {
                *v = 0.0;
            }
        }
        let top = eigs.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
        let rank = eigs.iter().filter(|&&l| l >= rel_tol * top).count();
        Ok((rank, eigs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    /// `|Tr[P(f) P(g)^*] - <f, g>_mu|`, relative-normalized.
    pub residual: f64,
    /// Norm of the input components outside the symbol subspace.
    pub loss_f: f64,
    pub loss_g: f64,
}

/// Compare the Hilbert-Schmidt pairing of the synthesized operators with
/// the weighted pairing of the symbols. Inputs are projected onto the
/// symbol subspace first; how much was discarded is reported separately.
pub fn parseval_check(space: &SymbolSpace, f: &[C64], g: &[C64]) -> Result<ParsevalReport> {
    let loss_f = space.projection_loss(f)?;
    let loss_g = space.projection_loss(g)?;
    let pf = space.project(f)?;
    let pg = space.project(g)?;
    let of = space.synthesize(&pf)?;
    let og = space.synthesize(&pg)?;
    let lhs = of.mul(&og.adjoint())?.trace();
    let rhs = space.inner_mu(&pf, &pg)?;
    let scale = space.norm_mu(&pf)? * space.norm_mu(&pg)?;
    Ok(ParsevalReport { residual: (lhs - rhs).norm() / (1.0 + scale), loss_f, loss_g })
}
