//! Growth envelopes: machine-checkable certificates of the form
//! `|a_m| <= C * prod_i (1+m_i)^{p_i} * exp(-alpha * sum_i m_i)`.
//!
//! Envelope arithmetic is what makes membership questions decidable on
//! the symbolic catalog: a positive `exp_rate` certifies rapid decay, a
//! zero rate with polynomial exponents certifies tempered growth, a
//! negative rate certifies neither.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack used when checking stored coefficients against an
/// envelope bound; absorbs last-ulp differences between the bound and
/// the coefficient evaluation.
pub const ENVELOPE_CHECK_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeClass {
    /// Polynomial exponent per index axis.
    pub poly: Vec<f64>,
    /// Exponential rate `alpha`; positive means decay `exp(-alpha sum m_i)`.
    pub exp_rate: f64,
    /// Positive multiplicative constant.
    pub constant: f64,
}

impl EnvelopeClass {
    pub fn new(poly: Vec<f64>, exp_rate: f64, constant: f64) -> Result<Self> {
        if poly.is_empty() || poly.len() > 2 {
            return Err(Error::invalid("envelope poly must cover 1 or 2 axes"));
        }
        if !(constant > 0.0) || !constant.is_finite() {
            return Err(Error::invalid("envelope constant must be positive and finite"));
        }
        if !exp_rate.is_finite() || poly.iter().any(|p| !p.is_finite()) {
            return Err(Error::invalid("envelope parameters must be finite"));
        }
        Ok(EnvelopeClass { poly, exp_rate, constant })
    }

    pub fn axes(&self) -> usize {
        self.poly.len()
    }

    /// The bound value at a multi-index.
    pub fn bound_at(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.poly.len());
        let mut v = self.constant;
        let mut sum = 0.0;
        for (m, p) in idx.iter().zip(&self.poly) {
            v *= (1.0 + *m as f64).powf(*p);
            sum += *m as f64;
        }
        v * (-self.exp_rate * sum).exp()
    }

    /// Whether `|value| <= bound` holds at `idx`, with roundoff headroom.
    pub fn admits(&self, idx: &[usize], abs_value: f64) -> bool {
        abs_value <= self.bound_at(idx) * (1.0 + ENVELOPE_CHECK_SLACK)
    }

    /// Certificate for the pointwise product: exponents add, rates add,
    /// constants multiply.
    pub fn pointwise_product(&self, other: &EnvelopeClass) -> Result<EnvelopeClass> {
        if self.poly.len() != other.poly.len() {
            return Err(Error::shape("pointwise product of envelopes with different axes"));
        }
        let poly = self.poly.iter().zip(&other.poly).map(|(a, b)| a + b).collect();
        EnvelopeClass::new(poly, self.exp_rate + other.exp_rate, self.constant * other.constant)
    }

    /// Same bound with the two axes swapped (conjugate transpose).
    pub fn transposed(&self) -> EnvelopeClass {
        let mut poly = self.poly.clone();
        poly.reverse();
        EnvelopeClass { poly, exp_rate: self.exp_rate, constant: self.constant }
    }

    pub fn scaled(&self, factor: f64) -> EnvelopeClass {
        EnvelopeClass {
            poly: self.poly.clone(),
            exp_rate: self.exp_rate,
            constant: self.constant * factor,
        }
    }

    /// True when `sum_m bound(m)^2` is finite: positive rate, or zero rate
    /// with every polynomial exponent below -1/2.
    pub fn square_summable(&self) -> bool {
        if self.exp_rate > 0.0 {
            return true;
        }
        self.exp_rate == 0.0 && self.poly.iter().all(|&p| p < -0.5)
    }

    /// Upper bound on the tail `sum_{indices with some coordinate >= start} bound(m)`
    /// for one axis; used for pairing truncation-error estimates.
    /// Only meaningful for positive rates.
    pub fn tail_sum_bound(&self, start: usize) -> Option<f64> {
        if self.exp_rate <= 0.0 {
            return None;
        }
        // sum over all indices outside the box [0,start)^axes is at most
        // axes * sum_{m_1 >= start} prod_i series_i, bounded axis by axis.
        let mut per_axis = Vec::with_capacity(self.poly.len());
        for &p in &self.poly {
            per_axis.push(series_poly_exp_bound(p, self.exp_rate)?);
        }
        let mut tail = 0.0;
        for (axis, &p) in self.poly.iter().enumerate() {
            let head: f64 = per_axis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != axis)
                .map(|(_, v)| v)
                .product();
            tail += head * series_poly_exp_tail_bound(p, self.exp_rate, start)?;
        }
        Some(self.constant * tail)
    }
}

/// Upper bound for `sum_{k>=0} (1+k)^q exp(-beta k)`, `None` when divergent.
pub fn series_poly_exp_bound(q: f64, beta: f64) -> Option<f64> {
    if beta > 0.0 {
        if q <= 0.0 {
            return Some(1.0 / (1.0 - (-beta).exp()));
        }
        // Sum explicitly until the term ratio is provably below exp(-beta/2),
        // then close with a geometric tail.
        let ratio_cap = (-beta / 2.0).exp();
        let mut acc = 0.0f64;
        let mut k = 0usize;
        loop {
            let term = (1.0 + k as f64).powf(q) * (-beta * k as f64).exp();
            acc += term;
            let growth = (1.0 + 1.0 / (k as f64 + 1.0)).powf(q) * (-beta).exp();
            if growth <= ratio_cap {
                let next = (2.0 + k as f64).powf(q) * (-beta * (k as f64 + 1.0)).exp();
                acc += next / (1.0 - ratio_cap);
                return Some(acc);
            }
            k += 1;
            if k > 20_000_000 {
                return None; // beta too small to be useful
            }
        }
    } else if beta == 0.0 && q < -1.0 {
        // 1 + integral of (1+x)^q
        Some(1.0 + 1.0 / (-q - 1.0))
    } else {
        None
    }
}

/// Upper bound for `sum_{k>=start} (1+k)^q exp(-beta k)` with `beta > 0`.
pub fn series_poly_exp_tail_bound(q: f64, beta: f64, start: usize) -> Option<f64> {
    if beta <= 0.0 {
        return None;
    }
    // (1+k)^q exp(-beta k) = exp(-beta/2 k) * (1+k)^q exp(-beta/2 k); the
    // second factor is bounded by its supremum.
    let half = beta / 2.0;
    let sup = poly_exp_sup(q, half)?;
    let geo = (-half * start as f64).exp() / (1.0 - (-half).exp());
    Some(sup * geo)
}

/// Supremum over integer m >= 0 of `(1+m)^q exp(-r m)` for `r > 0`,
/// or `q <= 0, r >= 0`.
pub fn poly_exp_sup(q: f64, r: f64) -> Option<f64> {
    if q <= 0.0 && r >= 0.0 {
        return Some(1.0);
    }
    if r <= 0.0 {
        return None;
    }
    // continuous max at 1+m = q/r; check neighbouring integers
    let m_star = (q / r - 1.0).max(0.0);
    let candidates = [m_star.floor() as usize, m_star.ceil() as usize, 0];
    let mut best: f64 = 0.0;
    for &m in &candidates {
        let v = (1.0 + m as f64).powf(q) * (-r * m as f64).exp();
        best = best.max(v);
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_adds_exponents_and_rates() {
        let a = EnvelopeClass::new(vec![2.0], 0.5, 3.0).unwrap();
        let b = EnvelopeClass::new(vec![-1.0], 0.25, 2.0).unwrap();
        let p = a.pointwise_product(&b).unwrap();
        assert_eq!(p.poly, vec![1.0]);
        assert_eq!(p.exp_rate, 0.75);
        assert_eq!(p.constant, 6.0);
    }

    #[test]
    fn geometric_series_bound_is_valid() {
        // q = 0: the bound must equal the exact geometric sum.
        let b = series_poly_exp_bound(0.0, 1.0).unwrap();
        let exact = 1.0 / (1.0 - (-1.0f64).exp());
        assert!((b - exact).abs() < 1e-12);
    }

    #[test]
    fn poly_series_bound_dominates_partial_sums() {
        let q = 3.0;
        let beta = 0.4;
        let bound = series_poly_exp_bound(q, beta).unwrap();
        let mut acc = 0.0;
        for k in 0..4000 {
            acc += (1.0 + k as f64).powf(q) * (-beta * k as f64).exp();
        }
        assert!(bound >= acc, "bound {bound} < partial sum {acc}");
        assert!(bound < acc * 2.0, "bound {bound} is too loose vs {acc}");
    }

    #[test]
    fn divergent_series_rejected() {
        assert!(series_poly_exp_bound(0.0, 0.0).is_none());
        assert!(series_poly_exp_bound(-0.5, 0.0).is_none());
        assert!(series_poly_exp_bound(2.0, -0.1).is_none());
        assert!(series_poly_exp_bound(-2.0, 0.0).is_some());
    }

    #[test]
    fn tail_bound_covers_true_tail() {
        let env = EnvelopeClass::new(vec![1.0], 0.7, 2.0).unwrap();
        let start = 12usize;
        let mut true_tail = 0.0;
        for m in start..4000 {
            true_tail += env.bound_at(&[m]);
        }
        let bound = env.tail_sum_bound(start).unwrap();
        assert!(bound >= true_tail);
    }

    #[test]
    fn square_summability_thresholds() {
        assert!(EnvelopeClass::new(vec![5.0], 0.1, 1.0).unwrap().square_summable());
        assert!(EnvelopeClass::new(vec![-0.6], 0.0, 1.0).unwrap().square_summable());
        assert!(!EnvelopeClass::new(vec![-0.5], 0.0, 1.0).unwrap().square_summable());
        assert!(!EnvelopeClass::new(vec![-0.6, -0.4], 0.0, 1.0).unwrap().square_summable());
    }
}
