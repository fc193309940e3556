//! Membership classification: decides where an element sits in the
//! triple (rapid decay ⊂ square-summable ⊂ tempered) or whether it grows
//! too fast to define a functional at all.
//!
//! The envelope path is exact and ladder-independent. The numeric path
//! fits dyadic-shell maxima against power-law and exponential models and
//! is allowed to answer `Inconclusive`.

use serde::{Deserialize, Serialize};

use super::element::GradedElement;
use super::envelope::EnvelopeClass;
use super::generator::Generator;
use crate::error::{Error, Result};

/// Slope threshold of the numeric fit: a fitted power-law exponent this
/// steep is treated as "faster than any polynomial we can resolve".
pub const SLOPE_THRESHOLD: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    RapidDecay,
    SquareSummable,
    Tempered,
    Wild,
    Inconclusive,
}

impl Class {
    /// Member of the dual space (not growing faster than polynomially).
    pub fn is_tempered(&self) -> bool {
        matches!(self, Class::RapidDecay | Class::SquareSummable | Class::Tempered)
    }

    pub fn is_rapid_decay(&self) -> bool {
        matches!(self, Class::RapidDecay)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitStats {
    pub slope: f64,
    pub power_residual: f64,
    pub exp_rate: f64,
    pub exp_residual: f64,
    pub shells: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Method {
    Envelope,
    FiniteSupport,
    NumericFit(FitStats),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: Class,
    pub square_summable: bool,
    pub method: Method,
}

/// Exact classification of an envelope certificate.
pub fn classify_envelope(env: &EnvelopeClass) -> Classification {
    let class = if env.exp_rate > 0.0 {
        Class::RapidDecay
    } else if env.exp_rate < 0.0 {
        Class::Wild
    } else if env.square_summable() {
        Class::SquareSummable
    } else {
        Class::Tempered
    };
    Classification {
        class,
        square_summable: env.square_summable(),
        method: Method::Envelope,
    }
}

/// Exact classification of a catalog generator. Diagonal liftings
/// classify like their one-axis entry rule (the grid envelope cannot see
/// diagonal support, e.g. `diag((1+m)^(-0.6))` is square-summable);
/// everything else goes through the derived envelope.
pub fn classify_generator_exact(gen: &Generator) -> Classification {
    if gen.is_zero() || gen.finite_support() {
        return Classification {
            class: Class::RapidDecay,
            square_summable: true,
            method: Method::FiniteSupport,
        };
    }
    match gen {
        Generator::Sequence(g) | Generator::Diagonal(g) => {
            let (c, p, r) = g.envelope1();
            classify_envelope(&EnvelopeClass { poly: vec![p], exp_rate: r, constant: c })
        }
        Generator::Outer { .. } => classify_envelope(&gen.envelope()),
    }
}

/// Classification derivable from the element's certificates: the
/// generator when present (exact), the envelope otherwise.
pub fn certified_class(elem: &GradedElement) -> Option<Classification> {
    if let Some(gen) = elem.generator() {
        return Some(classify_generator_exact(gen));
    }
    elem.envelope().map(classify_envelope)
}

/// Classify an element. Exact when a certificate (envelope or generator)
/// is present; otherwise an error, since an array at one truncation
/// carries no information about the infinite model.
pub fn classify(elem: &GradedElement, ladder: &[usize]) -> Result<Classification> {
    if ladder.is_empty() {
        return Err(Error::invalid("classification ladder must be nonempty"));
    }
    certified_class(elem).ok_or_else(|| {
        Error::MissingCertificate(
            "element has neither envelope nor generator; cannot classify".into(),
        )
    })
}

/// Shell maxima of `|gen|` over dyadic shells `2^j <= 1 + max_i(m_i) < 2^(j+1)`
/// up to the given extent.
pub fn shell_maxima_of_generator(gen: &Generator, extent: usize) -> Vec<f64> {
    let levels = shell_count(extent);
    let mut maxima = vec![0.0f64; levels];
    match gen.axes() {
        1 => {
            for m in 0..extent {
                let j = shell_of(m);
                let v = gen.eval(&[m]).norm();
                if v > maxima[j] {
                    maxima[j] = v;
                }
            }
        }
        _ => {
            for m in 0..extent {
                for n in 0..extent {
                    let j = shell_of(m.max(n));
                    let v = gen.eval(&[m, n]).norm();
                    if v > maxima[j] {
                        maxima[j] = v;
                    }
                }
            }
        }
    }
    maxima
}

/// Shell maxima of a stored coefficient array.
pub fn shell_maxima_of_element(elem: &GradedElement) -> Vec<f64> {
    let extent = elem.trunc().iter().copied().max().unwrap_or(1);
    let mut maxima = vec![0.0f64; shell_count(extent)];
    let mut idx = vec![0usize; elem.axes()];
    for flat in 0..elem.coeffs().len() {
        elem.unflatten(flat, &mut idx);
        let top = idx.iter().copied().max().unwrap();
        let j = shell_of(top);
        let v = elem.coeffs()[flat].norm();
        if v > maxima[j] {
            maxima[j] = v;
        }
    }
    maxima
}

fn shell_of(m: usize) -> usize {
    (usize::BITS - 1 - (m + 1).leading_zeros()) as usize
}

fn shell_count(extent: usize) -> usize {
    shell_of(extent.saturating_sub(1)) + 1
}

/// Numeric classification of a generator over a truncation ladder: fits
/// `log(shell max)` against `log(shell scale)` (power model) and against
/// `shell scale` (exponential model).
pub fn classify_generator_numeric(gen: &Generator, ladder: &[usize]) -> Result<Classification> {
    if ladder.is_empty() {
        return Err(Error::invalid("classification ladder must be nonempty"));
    }
    let extent = *ladder.iter().max().unwrap();
    let maxima = shell_maxima_of_generator(gen, extent);
    Ok(classify_shells(&maxima))
}

/// Numeric classification from materializations of the same element at
/// increasing truncations (used when products are only available as
/// arrays). Shell maxima must be stable across levels; growth at a fixed
/// shell signals a divergent sum and yields `Inconclusive`.
pub fn classify_elements_numeric(levels: &[GradedElement]) -> Result<Classification> {
    if levels.len() < 2 {
        return Err(Error::invalid("need at least two ladder levels"));
    }
    let per_level: Vec<Vec<f64>> = levels.iter().map(shell_maxima_of_element).collect();
    for pair in per_level.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        // ignore the top shell of the smaller level: it is clipped
        let comparable = lo.len().saturating_sub(1);
        for j in 0..comparable.min(hi.len()) {
            if lo[j] > 0.0 && hi[j] > lo[j] * 1.1 {
                return Ok(Classification {
                    class: Class::Inconclusive,
                    square_summable: false,
                    method: Method::NumericFit(FitStats {
                        slope: f64::NAN,
                        power_residual: f64::NAN,
                        exp_rate: f64::NAN,
                        exp_residual: f64::NAN,
                        shells: hi.len(),
                    }),
                });
            }
        }
    }
    Ok(classify_shells(per_level.last().unwrap()))
}

fn classify_shells(maxima: &[f64]) -> Classification {
    let points: Vec<(f64, f64)> = maxima
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0.0)
        .map(|(j, &m)| ((1u64 << j) as f64, m.ln()))
        .collect();

    // finite support: trailing shells empty
    let last_nonzero = maxima.iter().rposition(|&m| m > 0.0);
    match last_nonzero {
        None => {
            return Classification {
                class: Class::RapidDecay,
                square_summable: true,
                method: Method::FiniteSupport,
            }
        }
        Some(j) if j + 2 <= maxima.len() => {
            return Classification {
                class: Class::RapidDecay,
                square_summable: true,
                method: Method::FiniteSupport,
            }
        }
        _ => {}
    }

    if points.len() < 3 {
        return Classification {
            class: Class::Inconclusive,
            square_summable: false,
            method: Method::NumericFit(FitStats {
                slope: f64::NAN,
                power_residual: f64::NAN,
                exp_rate: f64::NAN,
                exp_residual: f64::NAN,
                shells: points.len(),
            }),
        };
    }

    let power: Vec<(f64, f64)> = points.iter().map(|(c, y)| (c.ln(), *y)).collect();
    let (slope, power_residual) = least_squares_line(&power);
    let (exp_slope, exp_residual) = least_squares_line(&points);
    let stats = FitStats {
        slope,
        power_residual,
        exp_rate: -exp_slope,
        exp_residual,
        shells: points.len(),
    };

    let class = if slope >= SLOPE_THRESHOLD {
        Class::Wild
    } else if slope <= -SLOPE_THRESHOLD {
        if exp_residual <= power_residual {
            Class::RapidDecay
        } else {
            // steep but better explained by a power law: the fits disagree
            Class::Inconclusive
        }
    } else {
        Class::Tempered
    };
    let square_summable = matches!(class, Class::RapidDecay);
    Classification { class, square_summable, method: Method::NumericFit(stats) }
}

/// Least-squares line `y ~ a + b x`; returns `(b, rms residual)`.
fn least_squares_line(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return (0.0, f64::INFINITY);
    }
    let b = (n * sxy - sx * sy) / denom;
    let a = (sy - b * sx) / n;
    let sse: f64 = points.iter().map(|(x, y)| (y - a - b * x).powi(2)).sum();
    (b, (sse / n).sqrt())
}
