//! The axiom verifier: checks the defining conditions of a Hilbert
//! algebra (plus the ambient *-algebra laws) on a reproducible random
//! corpus and reports residuals and counterexample witnesses.

use serde::{Deserialize, Serialize};

use super::corpus::{sample_corpus, CorpusSpec};
use super::AlgebraModel;
use crate::cmatrix::{gram_numerical_rank, CMatrix};
use crate::error::{Error, Result};
use crate::graded::{GradedElement, RANK_REL_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: bool,
    /// Worst relative residual observed (for rank checks, the relative
    /// size of the singular value that decides the rank).
    pub residual: f64,
    /// Corpus indices of the first sample exceeding the tolerance;
    /// empty on pass.
    pub witness_refs: Vec<usize>,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub model: String,
    pub corpus: CorpusSpec,
    pub tol: f64,
    pub axioms: Vec<AxiomResult>,
    pub all_pass: bool,
}

impl AxiomReport {
    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.axioms.iter().filter(|a| !a.status)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

/// Relative residual normalization `|lhs - rhs| / (1 + prod of norms)`.
fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

/// Deterministic index schedule over the corpus; decouples sample count
/// from corpus size.
fn triple_at(t: usize, n: usize) -> (usize, usize, usize) {
    (t % n, (t * 7 + 1) % n, (t * 13 + 5) % n)
}

struct Check {
    name: &'static str,
    worst: f64,
    witness: Option<(f64, Vec<usize>)>,
    samples: usize,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, worst: 0.0, witness: None, samples: 0 }
    }

    fn record(&mut self, residual: f64, refs: &[usize], tol: f64) {
        self.samples += 1;
        if residual > self.worst || !residual.is_finite() {
            self.worst = residual;
        }
        if (residual > tol || !residual.is_finite()) && self.witness.is_none() {
            self.witness = Some((residual, refs.to_vec()));
        }
    }

    fn into_result(self, tol: f64) -> AxiomResult {
        let status = self.witness.is_none() && self.worst.is_finite() && self.worst <= tol;
        AxiomResult {
            axiom: self.name.to_string(),
            status,
            residual: self.worst,
            witness_refs: self.witness.map(|(_, refs)| refs).unwrap_or_default(),
            samples: self.samples,
        }
    }
}

/// Verify the Hilbert-algebra axioms on a sampled corpus.
///
/// Checked conditions, each as a relative residual against `tol`:
/// associativity and the involution laws of the ambient *-algebra, the
/// involution isometry `<g^#, f^#> = <f, g>`, the product-adjoint
/// identity `<f#g, h> = <g, f^# # h>` and its consequence
/// `<f#g, h> = <f, h # g^#>`, the boundedness surrogate of left
/// multiplication, and totality of products via the numerical rank of
/// their Gram matrix.
pub fn check_hilbert_axioms(
    model: &AlgebraModel,
    corpus_spec: &CorpusSpec,
    tol: f64,
) -> Result<AxiomReport> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let corpus = sample_corpus(model, corpus_spec)?;
    let n = corpus.len();
    let count = corpus_spec.count;

    let mut assoc = Check::new("associativity");
    let mut invol_sq = Check::new("involution-involutive");
    let mut antihom = Check::new("involution-antihomomorphism");
    let mut ax1 = Check::new("axiom1-involution-isometry");
    let mut ax2 = Check::new("axiom2-product-adjoint");
    let mut ax2c = Check::new("axiom2-consequence");
    let mut ax3 = Check::new("axiom3-left-multiplication-bound");

    let norms: Vec<f64> =
        corpus.iter().map(|f| model.norm(f)).collect::<Result<Vec<_>>>()?;

    for t in 0..count {
        let (i, j, k) = triple_at(t, n);
        let (f, g, h) = (&corpus[i], &corpus[j], &corpus[k]);
        let (nf, ng, nh) = (norms[i], norms[j], norms[k]);

        // *-algebra laws
        let fg = model.product(f, g)?;
        let gh = model.product(g, h)?;
        let lhs = model.product(&fg, h)?;
        let rhs = model.product(f, &gh)?;
        let d = model.norm(&lhs.sub(&rhs)?)?;
        assoc.record(rel(d, nf * ng * nh), &[i, j, k], tol);

        let f_sharp = model.involution(f)?;
        let f_back = model.involution(&f_sharp)?;
        let d = model.norm(&f_back.sub(f)?)?;
        invol_sq.record(rel(d, nf), &[i], tol);

        let g_sharp = model.involution(g)?;
        let lhs = model.involution(&fg)?;
        let rhs = model.product(&g_sharp, &f_sharp)?;
        let d = model.norm(&lhs.sub(&rhs)?)?;
        antihom.record(rel(d, nf * ng), &[i, j], tol);

        // axiom 1: <g^#, f^#> = <f, g>
        let lhs = model.inner(&g_sharp, &f_sharp)?;
        let rhs = model.inner(f, g)?;
        ax1.record(rel((lhs - rhs).norm(), nf * ng), &[i, j], tol);

        // axiom 2: <f#g, h> = <g, f^# # h>
        let lhs = model.inner(&fg, h)?;
        let rhs = model.inner(g, &model.product(&f_sharp, h)?)?;
        ax2.record(rel((lhs - rhs).norm(), nf * ng * nh), &[i, j, k], tol);

        // consequence: <f#g, h> = <f, h # g^#>
        let rhs = model.inner(f, &model.product(h, &g_sharp)?)?;
        ax2c.record(rel((lhs - rhs).norm(), nf * ng * nh), &[i, j, k], tol);

        // axiom 3 surrogate: finite ratio ||f#g|| / ||g||
        if ng > 1e-300 {
            let ratio = model.norm(&fg)? / ng;
            ax3.samples += 1;
            if ratio > ax3.worst || !ratio.is_finite() {
                ax3.worst = ratio;
            }
            if !ratio.is_finite() && ax3.witness.is_none() {
                ax3.witness = Some((ratio, vec![i, j]));
            }
        }
    }

    // axiom 4: totality of A # A, via the numerical rank of the Gram
    // matrix of sampled products. Pairs come from a seeded stream so the
    // product family cannot collapse onto a short cycle.
    let dim = model.algebra_dimension();
    let needed = dim + 32;
    let mut pair_rng = super::corpus_rng(corpus_spec.seed ^ 0xa410_4a11);
    let mut products = Vec::with_capacity(needed);
    for _ in 0..needed {
        let i = (rand::Rng::random::<u64>(&mut pair_rng) % n as u64) as usize;
        let j = (rand::Rng::random::<u64>(&mut pair_rng) % n as u64) as usize;
        products.push(model.product(&corpus[i], &corpus[j])?);
    }
    let mut gram = CMatrix::zeros(needed, needed);
    for a in 0..needed {
        for b in 0..needed {
            gram.set(a, b, model.inner(&products[a], &products[b])?);
        }
    }
    let (rank, singulars) = gram_numerical_rank(&gram, RANK_REL_TOL)?;
    let deciding = if dim == 0 || singulars.is_empty() {
        0.0
    } else {
        let top = singulars[0].max(f64::MIN_POSITIVE);
        singulars.get(dim - 1).copied().unwrap_or(0.0) / top
    };
    let ax4 = AxiomResult {
        axiom: "axiom4-totality".to_string(),
        status: rank >= dim,
        residual: deciding,
        witness_refs: vec![],
        samples: needed,
    };

    let ax3_result = AxiomResult {
        axiom: ax3.name.to_string(),
        status: ax3.witness.is_none() && ax3.worst.is_finite(),
        residual: ax3.worst,
        witness_refs: ax3.witness.map(|(_, r)| r).unwrap_or_default(),
        samples: ax3.samples,
    };

    let axioms = vec![
        assoc.into_result(tol),
        invol_sq.into_result(tol),
        antihom.into_result(tol),
        ax1.into_result(tol),
        ax2.into_result(tol),
        ax2c.into_result(tol),
        ax3_result,
        ax4,
    ];
    let all_pass = axioms.iter().all(|a| a.status);
    Ok(AxiomReport {
        model: model.describe(),
        corpus: *corpus_spec,
        tol,
        axioms,
        all_pass,
    })
}

/// Re-evaluate a reported witness from the recorded corpus parameters;
/// returns the recomputed residual.
pub fn reverify_witness(
    model: &AlgebraModel,
    corpus_spec: &CorpusSpec,
    axiom: &str,
    witness_refs: &[usize],
) -> Result<f64> {
    let corpus = sample_corpus(model, corpus_spec)?;
    let get = |slot: usize| -> Result<&GradedElement> {
        witness_refs
            .get(slot)
            .and_then(|&i| corpus.get(i))
            .ok_or_else(|| Error::invalid("witness reference out of range"))
    };
    let norm_of = |e: &GradedElement| model.norm(e);
    match axiom {
        "associativity" => {
            let (f, g, h) = (get(0)?, get(1)?, get(2)?);
            let lhs = model.product(&model.product(f, g)?, h)?;
            let rhs = model.product(f, &model.product(g, h)?)?;
            let d = model.norm(&lhs.sub(&rhs)?)?;
            Ok(rel(d, norm_of(f)? * norm_of(g)? * norm_of(h)?))
        }
        "involution-involutive" => {
            let f = get(0)?;
            let back = model.involution(&model.involution(f)?)?;
            Ok(rel(model.norm(&back.sub(f)?)?, norm_of(f)?))
        }
        "involution-antihomomorphism" => {
            let (f, g) = (get(0)?, get(1)?);
            let lhs = model.involution(&model.product(f, g)?)?;
            let rhs = model.product(&model.involution(g)?, &model.involution(f)?)?;
            Ok(rel(model.norm(&lhs.sub(&rhs)?)?, norm_of(f)? * norm_of(g)?))
        }
        "axiom1-involution-isometry" => {
            let (f, g) = (get(0)?, get(1)?);
            let lhs = model.inner(&model.involution(g)?, &model.involution(f)?)?;
            let rhs = model.inner(f, g)?;
            Ok(rel((lhs - rhs).norm(), norm_of(f)? * norm_of(g)?))
        }
        "axiom2-product-adjoint" => {
            let (f, g, h) = (get(0)?, get(1)?, get(2)?);
            let lhs = model.inner(&model.product(f, g)?, h)?;
            let rhs = model.inner(g, &model.product(&model.involution(f)?, h)?)?;
            Ok(rel((lhs - rhs).norm(), norm_of(f)? * norm_of(g)? * norm_of(h)?))
        }
        "axiom2-consequence" => {
            let (f, g, h) = (get(0)?, get(1)?, get(2)?);
            let lhs = model.inner(&model.product(f, g)?, h)?;
            let rhs = model.inner(f, &model.product(h, &model.involution(g)?)?)?;
            Ok(rel((lhs - rhs).norm(), norm_of(f)? * norm_of(g)? * norm_of(h)?))
        }
        other => Err(Error::invalid(format!("axiom `{other}` has no pointwise witness"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Mutation;

    #[test]
    fn pointwise_axioms_pass() {
        let model = AlgebraModel::pointwise(32).unwrap();
        let spec = CorpusSpec::new(7, 200, 0.1);
        let report = check_hilbert_axioms(&model, &spec, 1e-10).unwrap();
        assert!(report.all_pass, "{report:?}");
    }

    #[test]
    fn matrix_axioms_pass() {
        let model = AlgebraModel::matrix(16).unwrap();
        let spec = CorpusSpec::new(7, 120, 0.15);
        let report = check_hilbert_axioms(&model, &spec, 1e-10).unwrap();
        assert!(report.all_pass, "{report:?}");
    }

    #[test]
    fn transpose_involution_caught_with_witness() {
        let model =
            AlgebraModel::matrix(8).unwrap().with_mutation(Mutation::TransposeInvolution);
        let spec = CorpusSpec::new(11, 60, 0.2);
        let report = check_hilbert_axioms(&model, &spec, 1e-10).unwrap();
        assert!(!report.all_pass);
        let ax1 = report.result("axiom1-involution-isometry").unwrap();
        assert!(!ax1.status);
        assert!(!ax1.witness_refs.is_empty());
        let residual =
            reverify_witness(&model, &spec, &ax1.axiom, &ax1.witness_refs).unwrap();
        assert!(residual > 1e-10, "witness did not re-evaluate: {residual}");
    }

    #[test]
    fn dropped_conjugation_caught() {
        let model = AlgebraModel::pointwise(16).unwrap().with_mutation(Mutation::DropConjInner);
        let spec = CorpusSpec::new(3, 60, 0.1);
        let report = check_hilbert_axioms(&model, &spec, 1e-10).unwrap();
        assert!(!report.all_pass);
        let failing: Vec<_> = report.failures().collect();
        assert!(!failing.is_empty());
        let with_witness = failing.iter().find(|f| !f.witness_refs.is_empty()).unwrap();
        let residual =
            reverify_witness(&model, &spec, &with_witness.axiom, &with_witness.witness_refs)
                .unwrap();
        assert!(residual > 1e-10);
    }

    #[test]
    fn non_associative_product_caught() {
        let model =
            AlgebraModel::matrix(6).unwrap().with_mutation(Mutation::NonAssociativeProduct);
        let spec = CorpusSpec::new(5, 40, 0.2);
        let report = check_hilbert_axioms(&model, &spec, 1e-10).unwrap();
        let assoc = report.result("associativity").unwrap();
        assert!(!assoc.status);
        assert!(!assoc.witness_refs.is_empty());
    }

    #[test]
    fn invalid_tolerance_rejected() {
        let model = AlgebraModel::pointwise(4).unwrap();
        assert!(check_hilbert_axioms(&model, &CorpusSpec::new(1, 4, 0.1), 0.0).is_err());
    }

    #[test]
    fn planted_transpose_witness_matches_hand_value() {
        // f = i E_01, g = E_01: correct axiom 1 gives <g^#, f^#> = <f, g> = i,
        // the transpose mutation gives -i, so the relative residual is
        // 2 / (1 + 1) = 1.
        let model =
            AlgebraModel::matrix(2).unwrap().with_mutation(Mutation::TransposeInvolution);
        let f = GradedElement::from_coeffs(
            vec![2, 2],
            vec![
                num_complex::Complex64::ZERO,
                num_complex::Complex64::new(0.0, 1.0),
                num_complex::Complex64::ZERO,
                num_complex::Complex64::ZERO,
            ],
        )
        .unwrap();
        let g = GradedElement::from_coeffs(
            vec![2, 2],
            vec![
                num_complex::Complex64::ZERO,
                num_complex::Complex64::ONE,
                num_complex::Complex64::ZERO,
                num_complex::Complex64::ZERO,
            ],
        )
        .unwrap();
        let lhs = model.inner(&model.involution(&g).unwrap(), &model.involution(&f).unwrap()).unwrap();
        let rhs = model.inner(&f, &g).unwrap();
        let residual = rel((lhs - rhs).norm(), 1.0);
        assert!((residual - 1.0).abs() < 1e-12, "residual {residual}");
    }
}
