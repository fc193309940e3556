//! Weighted index sets, growth envelopes, the generator catalog and the
//! graded elements that represent members of the algebra, its Hilbert
//! completion and its dual at finite truncation.

mod classify;
mod element;
mod envelope;
mod generator;
mod probes;
mod triple;

pub use classify::{
    certified_class, classify, classify_elements_numeric, classify_envelope,
    classify_generator_exact, classify_generator_numeric, shell_maxima_of_element,
    shell_maxima_of_generator, Class, Classification, FitStats, Method, SLOPE_THRESHOLD,
};
pub use element::{pairing, pairing_tail_bound, ElementJson, GradedElement};
pub use envelope::{
    poly_exp_sup, series_poly_exp_bound, series_poly_exp_tail_bound, EnvelopeClass,
    ENVELOPE_CHECK_SLACK,
};
pub use generator::{Gen1, Generator};
pub use probes::{standard_probe_generators, standard_probes};
pub use triple::{bounded_family_uniformity, GelfandTriple, UniformityReport, RANK_REL_TOL};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The fixed weight family `w(m) = prod_i (1 + m_i)` on 1 or 2 axes.
/// Powers of `w` generate the seminorm ladder of the graded topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    axes: usize,
}

impl WeightSystem {
    pub fn new(axes: usize) -> Result<Self> {
        if axes != 1 && axes != 2 {
            return Err(Error::invalid("weight system supports 1 or 2 axes"));
        }
        Ok(WeightSystem { axes })
    }

    pub fn axes(&self) -> usize {
        self.axes
    }

    #[inline]
    pub fn weight(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.axes);
        idx.iter().map(|&m| 1.0 + m as f64).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_is_one_at_origin_and_monotone() {
        let w = WeightSystem::new(2).unwrap();
        assert_eq!(w.weight(&[0, 0]), 1.0);
        for m in 0..10 {
            for n in 0..10 {
                let here = w.weight(&[m, n]);
                assert!(here >= 1.0);
                assert!(w.weight(&[m + 1, n]) >= here);
                assert!(w.weight(&[m, n + 1]) >= here);
            }
        }
    }

    #[test]
    fn weight_axes_validated() {
        assert!(WeightSystem::new(0).is_err());
        assert!(WeightSystem::new(3).is_err());
    }
}
