//! Graded elements: dense coefficient arrays over a weighted index set,
//! optionally certified by a generator and/or a growth envelope.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::envelope::EnvelopeClass;
use super::generator::{check_generator_axes, Gen1, Generator};
use super::WeightSystem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GradedElement {
    weights: WeightSystem,
    trunc: Vec<usize>,
    coeffs: Vec<C64>,
    envelope: Option<EnvelopeClass>,
    generator: Option<Generator>,
}

impl GradedElement {
    pub fn from_coeffs(trunc: Vec<usize>, coeffs: Vec<C64>) -> Result<Self> {
        let weights = WeightSystem::new(trunc.len())?;
        if trunc.iter().any(|&d| d == 0) {
            return Err(Error::invalid("truncation must be at least 1 on every axis"));
        }
        let expected: usize = trunc.iter().product();
        if coeffs.len() != expected {
            return Err(Error::shape(format!(
                "expected {} coefficients for truncation {:?}, got {}",
                expected,
                trunc,
                coeffs.len()
            )));
        }
        Ok(GradedElement { weights, trunc, coeffs, envelope: None, generator: None })
    }

    /// Materialize a catalog generator at a truncation; the exact
    /// envelope derived from the closed form is attached.
    pub fn from_generator(trunc: Vec<usize>, gen: Generator) -> Result<Self> {
        check_generator_axes(&gen, trunc.len())?;
        let total: usize = trunc.iter().product();
        let mut coeffs = Vec::with_capacity(total);
        let mut idx = vec![0usize; trunc.len()];
        for flat in 0..total {
            unflatten_index(&trunc, flat, &mut idx);
            coeffs.push(gen.eval(&idx));
        }
        let mut elem = GradedElement::from_coeffs(trunc, coeffs)?;
        elem.envelope = Some(gen.envelope());
        elem.generator = Some(gen);
        Ok(elem)
    }

    pub fn zero(trunc: Vec<usize>) -> Result<Self> {
        let total = trunc.iter().product();
        GradedElement::from_coeffs(trunc, vec![C64::ZERO; total])
    }

    pub fn delta(trunc: Vec<usize>, at: &[usize], value: C64) -> Result<Self> {
        let gen = match at.len() {
            1 => Generator::Sequence(Gen1::delta(at[0], value)),
            2 => Generator::Outer {
                left: Gen1::delta(at[0], value),
                right: Gen1::delta(at[1], C64::ONE),
            },
            _ => return Err(Error::invalid("delta index must have 1 or 2 axes")),
        };
        GradedElement::from_generator(trunc, gen)
    }

    /// Attach an envelope after checking it against every stored entry.
    pub fn with_envelope(mut self, env: EnvelopeClass) -> Result<Self> {
        if env.axes() != self.axes() {
            return Err(Error::shape("envelope axes do not match element"));
        }
        let mut idx = vec![0usize; self.trunc.len()];
        for flat in 0..self.coeffs.len() {
            self.unflatten(flat, &mut idx);
            if !env.admits(&idx, self.coeffs[flat].norm()) {
                return Err(Error::invalid(format!(
                    "envelope violated at index {:?}: |a| = {:.6e} > bound {:.6e}",
                    idx,
                    self.coeffs[flat].norm(),
                    env.bound_at(&idx)
                )));
            }
        }
        self.envelope = Some(env);
        Ok(self)
    }

    /// Attach an envelope that is known sound by construction.
    pub(crate) fn with_envelope_unchecked(mut self, env: EnvelopeClass) -> Self {
        self.envelope = Some(env);
        self
    }

    pub fn weights(&self) -> WeightSystem {
        self.weights
    }

    pub fn axes(&self) -> usize {
        self.trunc.len()
    }

    pub fn trunc(&self) -> &[usize] {
        &self.trunc
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn envelope(&self) -> Option<&EnvelopeClass> {
        self.envelope.as_ref()
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    /// Best available certificate: the explicit envelope, or the one the
    /// generator derives.
    pub fn effective_envelope(&self) -> Option<EnvelopeClass> {
        self.envelope.clone().or_else(|| self.generator.as_ref().map(|g| g.envelope()))
    }

    #[inline]
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        match self.trunc.len() {
            1 => idx[0],
            2 => idx[0] * self.trunc[1] + idx[1],
            _ => unreachable!(),
        }
    }

    #[inline]
    pub(crate) fn unflatten(&self, flat: usize, idx: &mut [usize]) {
        unflatten_index(&self.trunc, flat, idx)
    }

    pub fn coeff_at(&self, idx: &[usize]) -> C64 {
        self.coeffs[self.flat_index(idx)]
    }

    pub fn same_shape(&self, other: &GradedElement) -> bool {
        self.trunc == other.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == C64::ZERO)
    }

    /// Seminorm `p_k(a) = max_m |a_m| w(m)^k` over the stored indices.
    pub fn seminorm(&self, k: i32) -> Result<f64> {
        if k < 0 {
            return Err(Error::invalid("seminorm order must be nonnegative"));
        }
        let mut idx = vec![0usize; self.trunc.len()];
        let mut best = 0.0f64;
        for flat in 0..self.coeffs.len() {
            self.unflatten(flat, &mut idx);
            let w = self.weights.weight(&idx);
            let v = self.coeffs[flat].norm() * w.powi(k);
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Unweighted l2 norm of the stored coefficients.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> GradedElement {
        GradedElement {
            weights: self.weights,
            trunc: self.trunc.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            envelope: self.envelope.as_ref().map(|e| e.scaled(s.norm().max(f64::MIN_POSITIVE))),
            generator: None,
        }
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        if !self.same_shape(other) {
            return Err(Error::shape("difference of unequal truncations"));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        GradedElement::from_coeffs(self.trunc.clone(), coeffs)
    }
}

#[inline]
fn unflatten_index(trunc: &[usize], flat: usize, idx: &mut [usize]) {
    match trunc.len() {
        1 => idx[0] = flat,
        2 => {
            idx[0] = flat / trunc[1];
            idx[1] = flat % trunc[1];
        }
        _ => unreachable!(),
    }
}

/// Sesquilinear pairing `<f,h> = sum_m f_m conj(h_m)`, conjugate-linear in
/// the second argument; equal to the scalar product of the Hilbert
/// completion when both arguments lie in it.
pub fn pairing(f: &GradedElement, h: &GradedElement) -> Result<C64> {
    if !f.same_shape(h) {
        return Err(Error::shape(format!(
            "pairing of truncations {:?} and {:?}",
            f.trunc(),
            h.trunc()
        )));
    }
    let mut acc = C64::ZERO;
    for (a, b) in f.coeffs().iter().zip(h.coeffs()) {
        acc += a * b.conj();
    }
    Ok(acc)
}

/// Bound on the pairing truncation error beyond the box `[0, trunc)^axes`,
/// from the operands' envelopes. `None` when either certificate is missing
/// or not summable.
pub fn pairing_tail_bound(f: &GradedElement, h: &GradedElement, trunc: usize) -> Option<f64> {
    let ef = f.effective_envelope()?;
    let eh = h.effective_envelope()?;
    let prod = ef.pointwise_product(&eh).ok()?;
    prod.tail_sum_bound(trunc)
}

// -- serialized form ----------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct ElementJson {
    pub axes: usize,
    pub trunc: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<(f64, f64)>>,
    pub generator: Option<Generator>,
    pub envelope: Option<EnvelopeClass>,
}

impl GradedElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            axes: self.axes(),
            trunc: self.trunc.clone(),
            coeffs: Some(self.coeffs.iter().map(|c| (c.re, c.im)).collect()),
            generator: self.generator.clone(),
            envelope: self.envelope.clone(),
        }
    }

    pub fn from_json(json: ElementJson) -> Result<Self> {
        if json.axes != 1 && json.axes != 2 {
            return Err(Error::field("axes", "must be 1 or 2"));
        }
        if json.trunc.len() != json.axes {
            return Err(Error::field("trunc", "length must equal axes"));
        }
        if json.trunc.iter().any(|&d| d == 0) {
            return Err(Error::field("trunc", "entries must be at least 1"));
        }
        let mut elem = match (&json.coeffs, &json.generator) {
            (Some(raw), gen) => {
                let expected: usize = json.trunc.iter().product();
                if raw.len() != expected {
                    return Err(Error::field(
                        "coeffs",
                        format!("expected {} entries, got {}", expected, raw.len()),
                    ));
                }
                let coeffs = raw.iter().map(|(re, im)| C64::new(*re, *im)).collect();
                let mut e = GradedElement::from_coeffs(json.trunc.clone(), coeffs)?;
                if let Some(gen) = gen {
                    check_generator_axes(gen, json.axes)
                        .map_err(|_| Error::field("generator", "axes mismatch"))?;
                    let mut idx = vec![0usize; e.trunc.len()];
                    for flat in 0..e.coeffs.len() {
                        e.unflatten(flat, &mut idx);
                        if e.coeffs[flat] != gen.eval(&idx) {
                            return Err(Error::field(
                                "coeffs",
                                format!("entry at {:?} does not match the generator", idx),
                            ));
                        }
                    }
                    e.generator = Some(gen.clone());
                }
                e
            }
            (None, Some(gen)) => GradedElement::from_generator(json.trunc.clone(), gen.clone())?,
            (None, None) => {
                return Err(Error::field("coeffs", "either coeffs or generator is required"))
            }
        };
        if let Some(env) = json.envelope {
            elem = elem
                .with_envelope(env)
                .map_err(|e| Error::field("envelope", e.to_string()))?;
        }
        Ok(elem)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ElementJson =
            serde_json::from_str(s).map_err(|e| Error::field("element", e.to_string()))?;
        GradedElement::from_json(json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn seminorm_of_delta_is_one() {
        let d = GradedElement::delta(vec![16], &[0], C64::ONE).unwrap();
        assert_eq!(d.seminorm(5).unwrap(), 1.0);
    }

    #[test]
    fn seminorm_inverse_square_order_one() {
        // max over m < 16 of (1+m)^{-2} (1+m)^1 = 1, attained at m = 0;
        // cross-checked by direct enumeration.
        let a =
            GradedElement::from_generator(vec![16], Generator::Sequence(Gen1::power_law(-2.0, C64::ONE)))
                .unwrap();
        let mut brute = 0.0f64;
        for m in 0..16 {
            brute = brute.max((1.0 + m as f64).powf(-2.0) * (1.0 + m as f64));
        }
        assert_eq!(brute, 1.0);
        assert!((a.seminorm(1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn seminorm_ones_order_two() {
        let a = GradedElement::from_generator(
            vec![8],
            Generator::Sequence(Gen1::constant(C64::ONE)),
        )
        .unwrap();
        let mut brute = 0.0f64;
        for m in 0..8 {
            brute = brute.max((1.0 + m as f64).powi(2));
        }
        assert_eq!(brute, 64.0);
        assert_eq!(a.seminorm(2).unwrap(), 64.0);
    }

    #[test]
    fn seminorm_rejects_negative_order() {
        let d = GradedElement::delta(vec![4], &[0], C64::ONE).unwrap();
        assert!(d.seminorm(-1).is_err());
    }

    #[test]
    fn pairing_orthonormal_delta() {
        let d = GradedElement::delta(vec![8], &[0], C64::ONE).unwrap();
        assert_eq!(pairing(&d, &d).unwrap(), C64::ONE);
    }

    #[test]
    fn pairing_geometric_closed_form() {
        let ones = GradedElement::from_generator(
            vec![20],
            Generator::Sequence(Gen1::constant(C64::ONE)),
        )
        .unwrap();
        let halves = GradedElement::from_coeffs(
            vec![20],
            (0..20).map(|m| c((0.5f64).powi(m), 0.0)).collect(),
        )
        .unwrap();
        let expected = 2.0 - (0.5f64).powi(19);
        let got = pairing(&ones, &halves).unwrap();
        assert!((got - c(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pairing_sesquilinear_in_second_argument() {
        let f = GradedElement::delta(vec![8], &[3], c(0.0, 1.0)).unwrap();
        let h = GradedElement::delta(vec![8], &[3], C64::ONE).unwrap();
        assert_eq!(pairing(&f, &h).unwrap(), c(0.0, 1.0));
    }

    #[test]
    fn pairing_shape_mismatch_is_error() {
        let a = GradedElement::zero(vec![8]).unwrap();
        let b = GradedElement::zero(vec![9]).unwrap();
        assert!(pairing(&a, &b).is_err());
    }

    #[test]
    fn generator_coeff_consistency_enforced_on_load() {
        let gen = Generator::Sequence(Gen1::exponential(1.0, C64::ONE));
        let elem = GradedElement::from_generator(vec![8], gen.clone()).unwrap();
        let mut json = elem.to_json();
        // corrupt one coefficient
        if let Some(coeffs) = json.coeffs.as_mut() {
            coeffs[3].0 += 0.5;
        }
        let err = GradedElement::from_json(json).unwrap_err();
        assert!(err.to_string().contains("coeffs"));
    }

    #[test]
    fn element_json_round_trip() {
        let gen = Generator::Diagonal(Gen1::power_law(2.0, c(1.0, -1.0)));
        let elem = GradedElement::from_generator(vec![6, 6], gen).unwrap();
        let s = serde_json::to_string(&elem.to_json()).unwrap();
        let back = GradedElement::from_json_str(&s).unwrap();
        assert_eq!(elem, back);
    }

    #[test]
    fn envelope_attachment_validates_bound() {
        let a = GradedElement::from_coeffs(vec![4], vec![c(3.0, 0.0); 4]).unwrap();
        let tight = EnvelopeClass::new(vec![0.0], 0.0, 3.0).unwrap();
        assert!(a.clone().with_envelope(tight).is_ok());
        let wrong = EnvelopeClass::new(vec![0.0], 0.5, 3.0).unwrap();
        assert!(a.with_envelope(wrong).is_err());
    }

    #[test]
    fn pairing_tail_bound_controls_truncation_error() {
        let gen = Generator::Sequence(Gen1::exponential(0.5, C64::ONE));
        let small = GradedElement::from_generator(vec![24], gen.clone()).unwrap();
        let large = GradedElement::from_generator(vec![96], gen).unwrap();
        let p_small = pairing(&small, &small).unwrap();
        let p_large = pairing(&large, &large).unwrap();
        let bound = pairing_tail_bound(&small, &small, 24).unwrap();
        assert!((p_large - p_small).norm() <= bound);
    }
}
