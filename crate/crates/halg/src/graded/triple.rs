//! The Gelfand triple scaffold: seminorm ladder on top of the weighted
//! grading, with the embeddings realized as identity maps on coefficient
//! arrays, plus the equicontinuity surrogate for bounded families.

use serde::{Deserialize, Serialize};

use super::classify::SLOPE_THRESHOLD;
use super::element::GradedElement;
use super::WeightSystem;
use crate::algebra::AlgebraModel;
use crate::error::{Error, Result};

/// Relative singular-value threshold of the numerical rank convention.
pub const RANK_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GelfandTriple {
    pub weights: WeightSystem,
    /// Seminorm orders 0..=max_order generate the graded topology model.
    pub max_order: i32,
    /// Slope threshold used by the numeric classifier.
    pub slope_threshold: f64,
    /// Relative singular-value threshold for numerical rank decisions.
    pub rank_rel_tol: f64,
}

impl GelfandTriple {
    pub fn new(weights: WeightSystem, max_order: i32) -> Self {
        GelfandTriple {
            weights,
            max_order,
            slope_threshold: SLOPE_THRESHOLD,
            rank_rel_tol: RANK_REL_TOL,
        }
    }

    /// The seminorm ladder `p_0(a), ..., p_K(a)`.
    pub fn seminorms(&self, a: &GradedElement) -> Result<Vec<f64>> {
        (0..=self.max_order).map(|k| a.seminorm(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    /// `sup_{f in S, g probe} p_k(f#g) / p_k'(g)`.
    pub sup_ratio: f64,
    pub order: i32,
    /// The order `k'` the module chose for the denominator.
    pub probe_order: i32,
}

/// Equicontinuity surrogate for a family of left-multiplication maps:
/// the worst ratio `p_k(f#g) / p_k'(g)` over the family and the standard
/// probe basket. Finiteness that is stable across a truncation ladder is
/// the testable stand-in for the family being equicontinuous.
pub fn bounded_family_uniformity(
    family: &[GradedElement],
    k: i32,
    model: &AlgebraModel,
) -> Result<UniformityReport> {
    if family.is_empty() {
        return Err(Error::invalid("uniformity of an empty family"));
    }
    if k < 0 {
        return Err(Error::invalid("seminorm order must be nonnegative"));
    }
    for f in family {
        if let Some(cls) = super::classify::certified_class(f) {
            if !cls.class.is_rapid_decay() && !f.is_zero() {
                return Err(Error::rejected(format!(
                    "family member classified {:?}, expected rapid decay",
                    cls.class
                )));
            }
        }
    }
    let k_prime = model.uniformity_probe_order(k);
    let probes = model.probe_elements()?;
    let mut sup = 0.0f64;
    for f in family {
        for g in &probes {
            let denom = model.seminorm(g, k_prime)?;
            if denom == 0.0 {
                continue;
            }
            let prod = model.product(f, g)?;
            let ratio = model.seminorm(&prod, k)? / denom;
            if ratio > sup {
                sup = ratio;
            }
        }
    }
    Ok(UniformityReport { sup_ratio: sup, order: k, probe_order: k_prime })
}
