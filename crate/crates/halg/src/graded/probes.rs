//! Canonical probe elements used by equicontinuity surrogates and
//! multiplier membership checks. Products against these detect row and
//! column growth separately.

use num_complex::Complex64 as C64;

use super::element::GradedElement;
use super::generator::{Gen1, Generator};
use crate::error::Result;

/// Probe basket for the given axes at a truncation. Every probe is
/// itself rapid decay, as membership testing requires.
///
/// One axis: delta at 0, `exp(-m)`, and a slow-decay `(1+m)^3 exp(-m/4)`.
/// Two axes: `E_00`, the diagonal `exp(-m)`, the rank-one `exp(-(m+n))`,
/// and the rank-one `delta_0 x exp(-n)`.
pub fn standard_probes(axes: usize, trunc: &[usize]) -> Result<Vec<GradedElement>> {
    let gens = standard_probe_generators(axes);
    gens.into_iter()
        .map(|g| GradedElement::from_generator(trunc.to_vec(), g))
        .collect()
}

pub fn standard_probe_generators(axes: usize) -> Vec<Generator> {
    let one = C64::ONE;
    if axes == 1 {
        vec![
            Generator::Sequence(Gen1::delta(0, one)),
            Generator::Sequence(Gen1::exponential(1.0, one)),
            Generator::Sequence(Gen1::PolyExp { exponent: 3.0, rate: 0.25, scale: one }),
        ]
    } else {
        vec![
            Generator::Outer { left: Gen1::delta(0, one), right: Gen1::delta(0, one) },
            Generator::Diagonal(Gen1::exponential(1.0, one)),
            Generator::Outer {
                left: Gen1::exponential(1.0, one),
                right: Gen1::exponential(1.0, one),
            },
            Generator::Outer { left: Gen1::delta(0, one), right: Gen1::exponential(1.0, one) },
        ]
    }
}
