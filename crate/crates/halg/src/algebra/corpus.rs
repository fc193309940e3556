//! Reproducible random corpora of certified rapid-decay elements.
//!
//! A corpus is fully determined by `{seed, count, decay}` together with
//! the model shape, so any witness in a report can be re-evaluated from
//! those fields alone.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AlgebraModel, ModelKind};
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::graded::{EnvelopeClass, GradedElement};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// Exponential decay rate of the sampled coefficients.
    pub decay: f64,
}

impl CorpusSpec {
    pub fn new(seed: u64, count: usize, decay: f64) -> Self {
        CorpusSpec { seed, count, decay }
    }

    /// Default decay per model, chosen so random product families stay
    /// numerically full-rank at the model's truncation.
    pub fn default_decay(kind: ModelKind) -> f64 {
        match kind {
            ModelKind::Pointwise => 0.1,
            ModelKind::Matrix | ModelKind::Transported => 0.15,
        }
    }
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the closed complex unit disc.
pub(crate) fn unit_disc(rng: &mut ChaCha8Rng) -> C64 {
    let r = rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    C64::new(r * theta.cos(), r * theta.sin())
}

/// Standard complex Gaussian via Box-Muller.
pub(crate) fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random::<f64>();
    let mag = (-u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    C64::new(mag * angle.cos(), mag * angle.sin())
}

pub(crate) fn random_gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Sample `count` rapid-decay elements for the model: coefficients drawn
/// from the unit disc and damped by `exp(-decay * sum(index))`, so the
/// envelope `{poly: 0, exp_rate: decay, constant: 1}` certifies each one.
/// Transported-model elements are symbols of rapid-decay matrices.
pub fn sample_corpus(model: &AlgebraModel, spec: &CorpusSpec) -> Result<Vec<GradedElement>> {
    if spec.count == 0 {
        return Err(Error::invalid("corpus must be nonempty"));
    }
    if !(spec.decay > 0.0) {
        return Err(Error::invalid("corpus decay must be positive"));
    }
    let mut rng = rng_from_seed(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        out.push(sample_one(model, spec.decay, &mut rng)?);
    }
    Ok(out)
}

fn sample_one(model: &AlgebraModel, decay: f64, rng: &mut ChaCha8Rng) -> Result<GradedElement> {
    match model.kind() {
        ModelKind::Pointwise => {
            let d = model.element_shape()[0];
            let coeffs: Vec<C64> =
                (0..d).map(|m| unit_disc(rng) * (-decay * m as f64).exp()).collect();
            let elem = GradedElement::from_coeffs(vec![d], coeffs)?;
            elem.with_envelope(EnvelopeClass::new(vec![0.0], decay, 1.0)?)
        }
        ModelKind::Matrix => {
            let shape = model.element_shape();
            let (rows, cols) = (shape[0], shape[1]);
            let mut coeffs = Vec::with_capacity(rows * cols);
            for m in 0..rows {
                for n in 0..cols {
                    coeffs.push(unit_disc(rng) * (-decay * (m + n) as f64).exp());
                }
            }
            let elem = GradedElement::from_coeffs(shape, coeffs)?;
            elem.with_envelope(EnvelopeClass::new(vec![0.0, 0.0], decay, 1.0)?)
        }
        ModelKind::Transported => {
            let space = model.symbol_space().unwrap();
            let d = space.hilbert_dim();
            let mut op = CMatrix::zeros(d, d);
            for m in 0..d {
                for n in 0..d {
                    op.set(m, n, unit_disc(rng) * (-decay * (m + n) as f64).exp());
                }
            }
            GradedElement::from_coeffs(vec![space.points()], space.analyze(&op)?)
        }
    }
}
