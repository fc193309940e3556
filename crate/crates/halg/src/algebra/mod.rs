//! Pluggable algebra models (product, involution, scalar product), the
//! axiom verifier and the duality extensions of the product and the
//! involution to the dual space.

mod axioms;
mod certs;
mod corpus;
mod extend;

pub use axioms::{check_hilbert_axioms, reverify_witness, AxiomReport, AxiomResult};
pub use certs::{product_envelope, symbolic_product_class, symbolic_product_generator};
pub use corpus::{sample_corpus, CorpusSpec};
pub(crate) use corpus::{
    complex_gaussian as corpus_gaussian, random_gaussian_matrix, rng_from_seed as corpus_rng,
    unit_disc as corpus_unit_disc,
};
pub use extend::{
    extend_involution, extend_product_left, extend_product_right, moyal_extend_left,
    moyal_extend_right,
};

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{
    pairing, standard_probes, Gen1, GradedElement, Generator, WeightSystem,
};
use crate::opfamily::SymbolSpace;

/// Planted defects for mutation testing. The verifier must catch each of
/// these with a concrete witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    None,
    /// Involution uses the plain transpose (drops the conjugation).
    TransposeInvolution,
    /// Scalar product drops the conjugation of its second argument.
    DropConjInner,
    /// Product replaced by its symmetrization, which is not associative.
    NonAssociativeProduct,
}

impl Mutation {
    pub fn parse(spec: &str) -> Result<Mutation> {
        match spec {
            "involution=transpose" => Ok(Mutation::TransposeInvolution),
            "inner=dropconj" | "product=dropconj" => Ok(Mutation::DropConjInner),
            "product=jordan" => Ok(Mutation::NonAssociativeProduct),
            other => Err(Error::invalid(format!("unknown mutation `{other}`"))),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::TransposeInvolution => "involution=transpose",
            Mutation::DropConjInner => "inner=dropconj",
            Mutation::NonAssociativeProduct => "product=jordan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    Pointwise,
    Matrix,
    Transported,
}

/// A product/involution/scalar-product triple on graded elements.
///
/// `Pointwise` acts on sequences by entrywise multiplication and complex
/// conjugation; `Matrix` on square arrays by matrix multiplication and
/// conjugate transpose; `Transported` on symbol vectors by the algebra
/// pulled through a tight operator family.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    kind: ModelKind,
    dim: usize,
    space: Option<Arc<SymbolSpace>>,
    mutation: Mutation,
}

impl AlgebraModel {
    pub fn pointwise(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("pointwise model needs dim >= 1"));
        }
        Ok(AlgebraModel { kind: ModelKind::Pointwise, dim, space: None, mutation: Mutation::None })
    }

    pub fn matrix(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix model needs dim >= 1"));
        }
        Ok(AlgebraModel { kind: ModelKind::Matrix, dim, space: None, mutation: Mutation::None })
    }

    pub fn transported(space: Arc<SymbolSpace>) -> Self {
        let dim = space.hilbert_dim();
        AlgebraModel { kind: ModelKind::Transported, dim, space: Some(space), mutation: Mutation::None }
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    pub fn symbol_space(&self) -> Option<&SymbolSpace> {
        self.space.as_deref()
    }

    pub fn describe(&self) -> String {
        let base = match self.kind {
            ModelKind::Pointwise => format!("pointwise(d={})", self.dim),
            ModelKind::Matrix => format!("matrix(d={})", self.dim),
            ModelKind::Transported => {
                let label = self.space.as_ref().map(|s| s.family_label()).unwrap_or_default();
                format!("transported({label})")
            }
        };
        if self.mutation == Mutation::None {
            base
        } else {
            format!("{base}+mutate:{}", self.mutation.describe())
        }
    }

    /// Number of index axes of the element representation.
    pub fn axes(&self) -> usize {
        match self.kind {
            ModelKind::Pointwise | ModelKind::Transported => 1,
            ModelKind::Matrix => 2,
        }
    }

    /// Truncation shape of elements of this model.
    pub fn element_shape(&self) -> Vec<usize> {
        match self.kind {
            ModelKind::Pointwise => vec![self.dim],
            ModelKind::Matrix => vec![self.dim, self.dim],
            ModelKind::Transported => vec![self.space.as_ref().unwrap().points()],
        }
    }

    /// Linear dimension of the algebra at truncation (rank target of the
    /// totality axiom).
    pub fn algebra_dimension(&self) -> usize {
        match self.kind {
            ModelKind::Pointwise => self.dim,
            ModelKind::Matrix | ModelKind::Transported => self.dim * self.dim,
        }
    }

    fn check_element(&self, a: &GradedElement) -> Result<()> {
        match self.kind {
            ModelKind::Pointwise => {
                if a.axes() != 1 {
                    return Err(Error::shape("pointwise model expects one-axis elements"));
                }
            }
            ModelKind::Matrix => {
                if a.axes() != 2 || a.trunc()[0] != a.trunc()[1] {
                    return Err(Error::shape("matrix model expects square two-axis elements"));
                }
            }
            ModelKind::Transported => {
                let n = self.space.as_ref().unwrap().points();
                if a.axes() != 1 || a.trunc()[0] != n {
                    return Err(Error::shape(format!(
                        "transported model expects symbols of length {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The algebra product. Attaches a growth-envelope certificate to the
    /// result whenever one is derivable from the operands.
    pub fn product(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        if !a.same_shape(b) {
            return Err(Error::shape("product of unequal truncations"));
        }
        let mut out = match self.kind {
            ModelKind::Pointwise => {
                let coeffs: Vec<C64> =
                    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y).collect();
                let mut base = GradedElement::from_coeffs(a.trunc().to_vec(), coeffs)?;
                if self.mutation == Mutation::NonAssociativeProduct {
                    // rank-one bump: adds a_0 b_0 to every entry
                    let bump = a.coeffs()[0] * b.coeffs()[0];
                    let coeffs = base.coeffs().iter().map(|c| c + bump).collect();
                    base = GradedElement::from_coeffs(a.trunc().to_vec(), coeffs)?;
                }
                base
            }
            ModelKind::Matrix => {
                let d = a.trunc()[0];
                let mut coeffs = matrix_product(a.coeffs(), b.coeffs(), d);
                if self.mutation == Mutation::NonAssociativeProduct {
                    let ba = matrix_product(b.coeffs(), a.coeffs(), d);
                    for (c, other) in coeffs.iter_mut().zip(ba) {
                        *c = (*c + other) * 0.5;
                    }
                }
                GradedElement::from_coeffs(a.trunc().to_vec(), coeffs)?
            }
            ModelKind::Transported => {
                let space = self.space.as_ref().unwrap();
                let pa = space.synthesize(a.coeffs())?;
                let pb = space.synthesize(b.coeffs())?;
                let mut prod = pa.mul(&pb)?;
                if self.mutation == Mutation::NonAssociativeProduct {
                    let other = pb.mul(&pa)?;
                    prod = prod.add(&other)?.scale(C64::new(0.5, 0.0));
                }
                GradedElement::from_coeffs(a.trunc().to_vec(), space.analyze(&prod)?)?
            }
        };
        if self.mutation == Mutation::None {
            if let Some(env) = certs::product_envelope(self.kind, a, b) {
                out = out.with_envelope_unchecked(env);
            }
        }
        Ok(out)
    }

    /// The involution.
    pub fn involution(&self, a: &GradedElement) -> Result<GradedElement> {
        self.check_element(a)?;
        let mutated = self.mutation == Mutation::TransposeInvolution;
        let mut out = match self.kind {
            ModelKind::Pointwise => {
                let coeffs: Vec<C64> = if mutated {
                    a.coeffs().to_vec() // transpose of a sequence: conjugation dropped
                } else {
                    a.coeffs().iter().map(|c| c.conj()).collect()
                };
                GradedElement::from_coeffs(a.trunc().to_vec(), coeffs)?
            }
            ModelKind::Matrix => {
                let d = a.trunc()[0];
                let mut coeffs = vec![C64::ZERO; d * d];
                for m in 0..d {
                    for n in 0..d {
                        let v = a.coeffs()[n * d + m];
                        coeffs[m * d + n] = if mutated { v } else { v.conj() };
                    }
                }
                GradedElement::from_coeffs(a.trunc().to_vec(), coeffs)?
            }
            ModelKind::Transported => {
                let space = self.space.as_ref().unwrap();
                let pa = space.synthesize(a.coeffs())?;
                let op = if mutated { pa.transpose() } else { pa.adjoint() };
                GradedElement::from_coeffs(a.trunc().to_vec(), space.analyze(&op)?)?
            }
        };
        if !mutated {
            match (self.kind, a.generator()) {
                // the adjoint of a catalog rule reproduces the numeric
                // involution bit for bit, so the exact certificate survives
                (ModelKind::Pointwise | ModelKind::Matrix, Some(gen)) => {
                    out = GradedElement::from_generator(a.trunc().to_vec(), gen.adjoint())?;
                }
                _ => {
                    if let Some(env) = a.effective_envelope() {
                        let env = if self.axes() == 2 { env.transposed() } else { env };
                        out = out.with_envelope_unchecked(env);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The scalar product of the Hilbert completion; conjugate-linear in
    /// the second argument. Weighted by the family measure in the
    /// transported model.
    pub fn inner(&self, a: &GradedElement, b: &GradedElement) -> Result<C64> {
        self.check_element(a)?;
        self.check_element(b)?;
        if !a.same_shape(b) {
            return Err(Error::shape("inner product of unequal truncations"));
        }
        let drop_conj = self.mutation == Mutation::DropConjInner;
        match self.kind {
            ModelKind::Pointwise | ModelKind::Matrix => {
                if drop_conj {
                    let mut acc = C64::ZERO;
                    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                        acc += x * y;
                    }
                    Ok(acc)
                } else {
                    pairing(a, b)
                }
            }
            ModelKind::Transported => {
                let space = self.space.as_ref().unwrap();
                let mut acc = C64::ZERO;
                for (s, (x, y)) in a.coeffs().iter().zip(b.coeffs()).enumerate() {
                    let w = space.measure(s);
                    acc += if drop_conj { x * y * w } else { x * y.conj() * w };
                }
                Ok(acc)
            }
        }
    }

    pub fn norm(&self, a: &GradedElement) -> Result<f64> {
        Ok(self.inner(a, a)?.re.max(0.0).sqrt())
    }

    /// Seminorm of order `k`; pulled back through the synthesis map in
    /// the transported model, where the grading lives on the matrix side.
    pub fn seminorm(&self, a: &GradedElement, k: i32) -> Result<f64> {
        match self.kind {
            ModelKind::Pointwise | ModelKind::Matrix => a.seminorm(k),
            ModelKind::Transported => self.pullback(a)?.seminorm(k),
        }
    }

    /// Matrix-side representative of a transported symbol.
    pub fn pullback(&self, a: &GradedElement) -> Result<GradedElement> {
        match self.kind {
            ModelKind::Transported => {
                self.check_element(a)?;
                let space = self.space.as_ref().unwrap();
                let op = space.synthesize(a.coeffs())?;
                GradedElement::from_coeffs(vec![self.dim, self.dim], op.vec())
            }
            _ => Err(Error::invalid("pullback is only defined for the transported model")),
        }
    }

    /// Symbol of a matrix-side element in the transported model.
    pub fn pushforward(&self, op: &GradedElement) -> Result<GradedElement> {
        match self.kind {
            ModelKind::Transported => {
                if op.axes() != 2 || op.trunc() != [self.dim, self.dim] {
                    return Err(Error::shape("pushforward expects a d x d matrix element"));
                }
                let space = self.space.as_ref().unwrap();
                let mat = crate::cmatrix::CMatrix::unvec(op.coeffs().to_vec(), self.dim, self.dim)?;
                GradedElement::from_coeffs(vec![space.points()], space.analyze(&mat)?)
            }
            _ => Err(Error::invalid("pushforward is only defined for the transported model")),
        }
    }

    /// Basis element dual to coefficient extraction at flat index `i`.
    pub fn basis_element(&self, i: usize) -> Result<GradedElement> {
        let shape = self.element_shape();
        let total: usize = shape.iter().product();
        if i >= total {
            return Err(Error::invalid("basis index out of range"));
        }
        match self.kind {
            ModelKind::Pointwise | ModelKind::Transported => {
                GradedElement::delta(shape, &[i], C64::ONE)
            }
            ModelKind::Matrix => {
                let d = self.dim;
                let gen = Generator::Outer {
                    left: Gen1::delta(i / d, C64::ONE),
                    right: Gen1::delta(i % d, C64::ONE),
                };
                GradedElement::from_generator(shape, gen)
            }
        }
    }

    /// Weight relating functional values on basis elements to coefficients:
    /// `<F, e_i> = dual_weight(i) * F_i`.
    pub fn dual_weight(&self, i: usize) -> f64 {
        match self.kind {
            ModelKind::Pointwise | ModelKind::Matrix => 1.0,
            ModelKind::Transported => self.space.as_ref().unwrap().measure(i),
        }
    }

    /// The standard probe basket materialized for this model.
    pub fn probe_elements(&self) -> Result<Vec<GradedElement>> {
        match self.kind {
            ModelKind::Pointwise => standard_probes(1, &[self.dim]),
            ModelKind::Matrix => standard_probes(2, &[self.dim, self.dim]),
            ModelKind::Transported => {
                let matrix_probes = standard_probes(2, &[self.dim, self.dim])?;
                matrix_probes.iter().map(|p| self.pushforward(p)).collect()
            }
        }
    }

    /// Denominator order `k'` of the uniformity ratio `p_k(f#g)/p_k'(g)`.
    pub fn uniformity_probe_order(&self, k: i32) -> i32 {
        match self.kind {
            ModelKind::Pointwise => k,
            // one extra weight power absorbs the inner index sum, one the
            // outer coordinate split
            ModelKind::Matrix | ModelKind::Transported => k + 2,
        }
    }

    /// Grading weights of the element representation (matrix side for the
    /// transported model).
    pub fn grading_weights(&self) -> WeightSystem {
        match self.kind {
            ModelKind::Pointwise => WeightSystem::new(1).unwrap(),
            ModelKind::Matrix | ModelKind::Transported => WeightSystem::new(2).unwrap(),
        }
    }
}

fn matrix_product(a: &[C64], b: &[C64], d: usize) -> Vec<C64> {
    let mut out = vec![C64::ZERO; d * d];
    for m in 0..d {
        for k in 0..d {
            let x = a[m * d + k];
            if x == C64::ZERO {
                continue;
            }
            for n in 0..d {
                out[m * d + n] += x * b[k * d + n];
            }
        }
    }
    out
}
