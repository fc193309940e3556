//! Closed-form entry rules for elements: the fixed expression catalog.
//!
//! One-axis rules are either a Kronecker delta or the parametric family
//! `scale * (1+m)^exponent * exp(-rate m)`, which subsumes power laws
//! (`rate = 0`) and exponentials (`exponent = 0`) and is closed under
//! pointwise multiplication. Two-axis rules are diagonal liftings and
//! rank-one outer products of one-axis rules.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::envelope::{poly_exp_sup, series_poly_exp_bound, EnvelopeClass};
use crate::error::{Error, Result};

/// One-axis entry rule.
#[derive(Debug, Clone, PartialEq)]
pub enum Gen1 {
    /// `scale * (1+m)^exponent * exp(-rate * m)`.
    PolyExp { exponent: f64, rate: f64, scale: C64 },
    /// `value` at `index`, zero elsewhere.
    Delta { index: usize, value: C64 },
}

impl Gen1 {
    pub fn power_law(exponent: f64, scale: C64) -> Gen1 {
        Gen1::PolyExp { exponent, rate: 0.0, scale }
    }

    pub fn exponential(rate: f64, scale: C64) -> Gen1 {
        Gen1::PolyExp { exponent: 0.0, rate, scale }
    }

    pub fn constant(scale: C64) -> Gen1 {
        Gen1::PolyExp { exponent: 0.0, rate: 0.0, scale }
    }

    pub fn delta(index: usize, value: C64) -> Gen1 {
        Gen1::Delta { index, value }
    }

    pub fn eval(&self, m: usize) -> C64 {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                let v = (1.0 + m as f64).powf(*exponent) * (-rate * m as f64).exp();
                scale * v
            }
            Gen1::Delta { index, value } => {
                if m == *index {
                    *value
                } else {
                    C64::ZERO
                }
            }
        }
    }

    pub fn conj(&self) -> Gen1 {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                Gen1::PolyExp { exponent: *exponent, rate: *rate, scale: scale.conj() }
            }
            Gen1::Delta { index, value } => Gen1::Delta { index: *index, value: value.conj() },
        }
    }

    pub fn scaled(&self, factor: C64) -> Gen1 {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                Gen1::PolyExp { exponent: *exponent, rate: *rate, scale: scale * factor }
            }
            Gen1::Delta { index, value } => Gen1::Delta { index: *index, value: value * factor },
        }
    }

    /// Pointwise product; the catalog is closed under this.
    pub fn mul(&self, other: &Gen1) -> Gen1 {
        match (self, other) {
            (
                Gen1::PolyExp { exponent: p1, rate: r1, scale: c1 },
                Gen1::PolyExp { exponent: p2, rate: r2, scale: c2 },
            ) => Gen1::PolyExp { exponent: p1 + p2, rate: r1 + r2, scale: c1 * c2 },
            (Gen1::Delta { index, value }, g) | (g, Gen1::Delta { index, value }) => {
                Gen1::Delta { index: *index, value: value * g.eval(*index) }
            }
        }
    }

    /// `(constant, exponent, rate)` with `|g(m)| <= constant (1+m)^exponent exp(-rate m)`
    /// for every m; exact for the parametric family.
    pub fn envelope1(&self) -> (f64, f64, f64) {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => (scale.norm().max(f64::MIN_POSITIVE), *exponent, *rate),
            Gen1::Delta { index, value } => {
                // |v| <= C exp(-m) with C = |v| e^index, attained at the support
                let c = value.norm().max(f64::MIN_POSITIVE) * (*index as f64).exp();
                (c, 0.0, 1.0)
            }
        }
    }

    /// Supremum of `|g(m)|` over all m >= 0, `None` when unbounded.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                Some(scale.norm() * poly_exp_sup(*exponent, *rate)?)
            }
            Gen1::Delta { value, .. } => Some(value.norm()),
        }
    }

    /// Upper bound on `sum_m |g(m)| (1+m)^extra_exp exp(-extra_rate m)`,
    /// `None` when divergent.
    pub fn abs_series_bound(&self, extra_exp: f64, extra_rate: f64) -> Option<f64> {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                let s = series_poly_exp_bound(exponent + extra_exp, rate + extra_rate)?;
                Some(scale.norm() * s)
            }
            Gen1::Delta { index, value } => {
                let m = *index as f64;
                Some(value.norm() * (1.0 + m).powf(extra_exp) * (-extra_rate * m).exp())
            }
        }
    }

    /// Upper bound on the l2 norm, `None` when not square-summable.
    pub fn l2_bound(&self) -> Option<f64> {
        match self {
            Gen1::PolyExp { exponent, rate, scale } => {
                let s = series_poly_exp_bound(2.0 * exponent, 2.0 * rate)?;
                Some(scale.norm() * s.sqrt())
            }
            Gen1::Delta { value, .. } => Some(value.norm()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Gen1::PolyExp { scale, .. } => *scale == C64::ZERO,
            Gen1::Delta { value, .. } => *value == C64::ZERO,
        }
    }
}

/// Entry rule for a full element.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// One axis: `a_m = g(m)`.
    Sequence(Gen1),
    /// Two axes: `a_{mn} = delta_{mn} g(m)`.
    Diagonal(Gen1),
    /// Two axes: `a_{mn} = left(m) * conj(right(n))`, the rank-one `u v^*`.
    Outer { left: Gen1, right: Gen1 },
}

impl Generator {
    pub fn axes(&self) -> usize {
        match self {
            Generator::Sequence(_) => 1,
            Generator::Diagonal(_) | Generator::Outer { .. } => 2,
        }
    }

    pub fn eval(&self, idx: &[usize]) -> C64 {
        match self {
            Generator::Sequence(g) => g.eval(idx[0]),
            Generator::Diagonal(g) => {
                if idx[0] == idx[1] {
                    g.eval(idx[0])
                } else {
                    C64::ZERO
                }
            }
            Generator::Outer { left, right } => left.eval(idx[0]) * right.eval(idx[1]).conj(),
        }
    }

    /// Exact envelope certificate derived from the closed form.
    pub fn envelope(&self) -> EnvelopeClass {
        match self {
            Generator::Sequence(g) => {
                let (c, p, r) = g.envelope1();
                EnvelopeClass { poly: vec![p], exp_rate: r, constant: c }
            }
            Generator::Diagonal(g) => {
                // on the diagonal (1+m)^p = (1+m)^{p/2}(1+n)^{p/2} and
                // exp(-rm) = exp(-(r/2)(m+n))
                let (c, p, r) = g.envelope1();
                EnvelopeClass { poly: vec![p / 2.0, p / 2.0], exp_rate: r / 2.0, constant: c }
            }
            Generator::Outer { left, right } => {
                let (cl, pl, rl) = left.envelope1();
                let (cr, pr, rr) = right.envelope1();
                // exp(-rl m - rr n) <= exp(-min(rl,rr)(m+n)) for m,n >= 0
                EnvelopeClass {
                    poly: vec![pl, pr],
                    exp_rate: rl.min(rr),
                    constant: cl * cr,
                }
            }
        }
    }

    /// Conjugate transpose of the generated element.
    pub fn adjoint(&self) -> Generator {
        match self {
            Generator::Sequence(g) => Generator::Sequence(g.conj()),
            Generator::Diagonal(g) => Generator::Diagonal(g.conj()),
            Generator::Outer { left, right } => {
                Generator::Outer { left: right.clone(), right: left.clone() }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Generator::Sequence(g) | Generator::Diagonal(g) => g.is_zero(),
            Generator::Outer { left, right } => left.is_zero() || right.is_zero(),
        }
    }

    /// Whether the support is finite. A rank-one product needs a delta in
    /// both factors; one delta alone leaves an infinite row or column.
    pub fn finite_support(&self) -> bool {
        match self {
            Generator::Sequence(g) | Generator::Diagonal(g) => matches!(g, Gen1::Delta { .. }),
            Generator::Outer { left, right } => {
                matches!(left, Gen1::Delta { .. }) && matches!(right, Gen1::Delta { .. })
            }
        }
    }
}

// -- serialized form ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Gen1Json {
    PowerLaw { exponent: f64, scale: (f64, f64) },
    Exponential { rate: f64, scale: (f64, f64) },
    PolyExp { exponent: f64, rate: f64, scale: (f64, f64) },
    Delta { index: usize, value: (f64, f64) },
}

impl From<&Gen1> for Gen1Json {
    fn from(g: &Gen1) -> Self {
        match g {
            Gen1::PolyExp { exponent, rate, scale } => {
                let s = (scale.re, scale.im);
                if *rate == 0.0 {
                    Gen1Json::PowerLaw { exponent: *exponent, scale: s }
                } else if *exponent == 0.0 {
                    Gen1Json::Exponential { rate: *rate, scale: s }
                } else {
                    Gen1Json::PolyExp { exponent: *exponent, rate: *rate, scale: s }
                }
            }
            Gen1::Delta { index, value } => {
                Gen1Json::Delta { index: *index, value: (value.re, value.im) }
            }
        }
    }
}

impl From<Gen1Json> for Gen1 {
    fn from(g: Gen1Json) -> Self {
        match g {
            Gen1Json::PowerLaw { exponent, scale } => {
                Gen1::PolyExp { exponent, rate: 0.0, scale: C64::new(scale.0, scale.1) }
            }
            Gen1Json::Exponential { rate, scale } => {
                Gen1::PolyExp { exponent: 0.0, rate, scale: C64::new(scale.0, scale.1) }
            }
            Gen1Json::PolyExp { exponent, rate, scale } => {
                Gen1::PolyExp { exponent, rate, scale: C64::new(scale.0, scale.1) }
            }
            Gen1Json::Delta { index, value } => {
                Gen1::Delta { index, value: C64::new(value.0, value.1) }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum GeneratorJson {
    PowerLaw { exponent: f64, scale: (f64, f64) },
    Exponential { rate: f64, scale: (f64, f64) },
    PolyExp { exponent: f64, rate: f64, scale: (f64, f64) },
    Delta { index: usize, value: (f64, f64) },
    Diagonal { entry: Gen1Json },
    Outer { left: Gen1Json, right: Gen1Json },
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self {
            Generator::Sequence(g) => match Gen1Json::from(g) {
                Gen1Json::PowerLaw { exponent, scale } => GeneratorJson::PowerLaw { exponent, scale },
                Gen1Json::Exponential { rate, scale } => GeneratorJson::Exponential { rate, scale },
                Gen1Json::PolyExp { exponent, rate, scale } => {
                    GeneratorJson::PolyExp { exponent, rate, scale }
                }
                Gen1Json::Delta { index, value } => GeneratorJson::Delta { index, value },
            },
            Generator::Diagonal(g) => GeneratorJson::Diagonal { entry: Gen1Json::from(g) },
            Generator::Outer { left, right } => {
                GeneratorJson::Outer { left: Gen1Json::from(left), right: Gen1Json::from(right) }
            }
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GeneratorJson::deserialize(d)?;
        Ok(match j {
            GeneratorJson::PowerLaw { exponent, scale } => {
                Generator::Sequence(Gen1Json::PowerLaw { exponent, scale }.into())
            }
            GeneratorJson::Exponential { rate, scale } => {
                Generator::Sequence(Gen1Json::Exponential { rate, scale }.into())
            }
            GeneratorJson::PolyExp { exponent, rate, scale } => {
                Generator::Sequence(Gen1Json::PolyExp { exponent, rate, scale }.into())
            }
            GeneratorJson::Delta { index, value } => {
                Generator::Sequence(Gen1Json::Delta { index, value }.into())
            }
            GeneratorJson::Diagonal { entry } => Generator::Diagonal(entry.into()),
            GeneratorJson::Outer { left, right } => {
                Generator::Outer { left: left.into(), right: right.into() }
            }
        })
    }
}

/// Validate that a generator fits the requested axes.
pub fn check_generator_axes(gen: &Generator, axes: usize) -> Result<()> {
    if gen.axes() != axes {
        return Err(Error::field(
            "generator",
            format!("generator has {} axes, element has {}", gen.axes(), axes),
        ));
    }
    Ok(())
}
