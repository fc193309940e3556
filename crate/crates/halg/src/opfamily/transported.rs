//! Wiring a tight family into the algebra machinery: the transported
//! model on symbols, and the representation checks that push tempered
//! functionals through rapid-decay elements across a family ladder.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::family::{build_weyl_heisenberg, verify_tightness, OperatorFamily};
use super::symbols::SymbolSpace;
use crate::algebra::{corpus_rng, corpus_unit_disc, AlgebraModel};
use crate::error::{Error, Result};
use crate::graded::{
    certified_class, classify_envelope, Class, EnvelopeClass, Gen1, GelfandTriple, GradedElement,
    Generator, WeightSystem,
};
use crate::moyal::{default_probes, is_left_moyal, is_right_moyal, Verdict};

/// Build the algebra model transported through a tight family, together
/// with the graded scaffold whose seminorms pull back through the
/// synthesis map. Rejects families that fail the tightness criterion.
pub fn transported_model(
    fam: OperatorFamily,
    weights: WeightSystem,
    max_order: i32,
    tol: f64,
) -> Result<(AlgebraModel, GelfandTriple)> {
    if weights.axes() != 2 {
        return Err(Error::invalid("transported grading lives on the matrix side (2 axes)"));
    }
    let tightness = verify_tightness(&fam, tol, 0)?;
    if !tightness.pass {
        return Err(Error::rejected(format!(
            "family `{}` is not tight: frame residual {:.3e} (tol {:.1e})",
            fam.label(),
            tightness.frame_residual,
            tol
        )));
    }
    let space = Arc::new(SymbolSpace::new(fam));
    let model = AlgebraModel::transported(space);
    let triple = GelfandTriple::new(weights, max_order);
    Ok((model, triple))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationLevel {
    pub n: usize,
    pub samples: usize,
    /// Sandwiches `a # F # a'` certified rapid decay.
    pub rapid_ok: usize,
    /// `a # F` with a Left-multiplier Member verdict.
    pub left_member: usize,
    /// `F # a'` with a Right-multiplier Member verdict.
    pub right_member: usize,
    pub inconclusive: usize,
    /// Worst disagreement between the symbol route and the matrix route.
    pub consistency_residual: f64,
    /// Largest sup-seminorm of a sandwich, for trend reporting.
    pub p0_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub ladder: Vec<usize>,
    pub seed: u64,
    pub levels: Vec<RepresentationLevel>,
    pub pass: bool,
}

/// Across a ladder of clock/shift families, sample rapid-decay elements
/// `a, a'` and a tempered functional `F` (the cubic diagonal), and check
/// that `a # F # a'` lands back in the rapid-decay class while `a # F`
/// and `F # a'` receive one-sided multiplier Member verdicts.
pub fn representation_check(
    ns: &[usize],
    seed: u64,
    samples: usize,
    tol: f64,
) -> Result<RepresentationReport> {
    if ns.len() < 3 {
        return Err(Error::invalid("representation ladder needs at least 3 levels"));
    }
    if samples == 0 {
        return Err(Error::invalid("representation check needs at least one sample"));
    }
    let mut levels = Vec::with_capacity(ns.len());
    for &n in ns {
        let fam = build_weyl_heisenberg(n)?;
        let (transported, _) =
            transported_model(fam, WeightSystem::new(2)?, 4, tol.max(1e-12))?;
        let matrix_model = AlgebraModel::matrix(n)?;
        let probes = default_probes(&matrix_model);
        let membership_ladder = [n.max(4), 2 * n.max(4)];

        let f_gen = Generator::Diagonal(Gen1::power_law(3.0, C64::ONE));
        let f_matrix = GradedElement::from_generator(vec![n, n], f_gen)?;
        let f_class = certified_class(&f_matrix).unwrap();
        if f_class.class == Class::Wild {
            return Err(Error::rejected("tempered probe classified Wild"));
        }
        let f_symbol = transported.pushforward(&f_matrix)?;

        let decay = 0.5f64;
        let mut rng = corpus_rng(seed ^ (n as u64).wrapping_mul(0x9E37_79B9));
        let mut rapid_ok = 0usize;
        let mut left_member = 0usize;
        let mut right_member = 0usize;
        let mut inconclusive = 0usize;
        let mut consistency = 0.0f64;
        let mut p0_max = 0.0f64;

        for _ in 0..samples {
            let a = sample_rapid_matrix(&mut rng, n, decay)?;
            let a2 = sample_rapid_matrix(&mut rng, n, decay)?;

            // matrix route, carrying certificates through the products
            let af = matrix_model.product(&a, &f_matrix)?;
            let sandwich = matrix_model.product(&af, &a2)?;
            let fa2 = matrix_model.product(&f_matrix, &a2)?;

            match sandwich.effective_envelope().map(|e| classify_envelope(&e).class) {
                Some(Class::RapidDecay) => rapid_ok += 1,
                _ => inconclusive += 1,
            }
            p0_max = p0_max.max(sandwich.seminorm(0)?);

            let lv = is_left_moyal(&af, &matrix_model, &membership_ladder, &probes)?;
            if lv.verdict == Verdict::Member {
                left_member += 1;
            } else {
                inconclusive += 1;
            }
            let rv = is_right_moyal(&fa2, &matrix_model, &membership_ladder, &probes)?;
            if rv.verdict == Verdict::Member {
                right_member += 1;
            } else {
                inconclusive += 1;
            }

            // symbol route must agree with the matrix route
            let a_sym = transported.pushforward(&a)?;
            let a2_sym = transported.pushforward(&a2)?;
            let left = transported.product(&a_sym, &f_symbol)?;
            let sym_sandwich = transported.product(&left, &a2_sym)?;
            let back = transported.pullback(&sym_sandwich)?;
            let diff = back.sub(&sandwich)?;
            let scale = 1.0 + sandwich.l2_norm();
            consistency = consistency.max(diff.l2_norm() / scale);
        }

        levels.push(RepresentationLevel {
            n,
            samples,
            rapid_ok,
            left_member,
            right_member,
            inconclusive,
            consistency_residual: consistency,
            p0_max,
        });
    }
    let pass = levels.iter().all(|l| {
        l.rapid_ok == l.samples
            && l.left_member == l.samples
            && l.right_member == l.samples
            && l.consistency_residual <= tol
    });
    Ok(RepresentationReport { ladder: ns.to_vec(), seed, levels, pass })
}

fn sample_rapid_matrix(
    rng: &mut rand_chacha::ChaCha8Rng,
    d: usize,
    decay: f64,
) -> Result<GradedElement> {
    let mut coeffs = Vec::with_capacity(d * d);
    for m in 0..d {
        for n in 0..d {
            coeffs.push(corpus_unit_disc(rng) * (-decay * (m + n) as f64).exp());
        }
    }
    GradedElement::from_coeffs(vec![d, d], coeffs)?
        .with_envelope(EnvelopeClass::new(vec![0.0, 0.0], decay, 1.0)?)
}
