//! Certificate calculus for products: closed-form generator algebra where
//! the catalog is closed, and sound envelope rules otherwise.
//!
//! Envelope rules only ever certify upper bounds, so they can prove rapid
//! decay but never disprove it; non-membership witnesses must come from
//! the exact generator route.

use num_complex::Complex64 as C64;

use super::ModelKind;
use crate::graded::{
    classify_generator_exact, series_poly_exp_bound, Class, Classification, EnvelopeClass,
    GradedElement, Generator, Method,
};

/// Closed-form generator of `a # b` when the catalog is closed under the
/// model product. The `inner_trunc` is the truncation of inner sums, so
/// the returned generator reproduces the truncated product exactly.
pub fn symbolic_product_generator(
    kind: ModelKind,
    a: &Generator,
    b: &Generator,
    inner_trunc: usize,
) -> Option<Generator> {
    match kind {
        ModelKind::Pointwise => match (a, b) {
            (Generator::Sequence(g1), Generator::Sequence(g2)) => {
                Some(Generator::Sequence(g1.mul(g2)))
            }
            _ => None,
        },
        ModelKind::Matrix => match (a, b) {
            (Generator::Diagonal(g1), Generator::Diagonal(g2)) => {
                Some(Generator::Diagonal(g1.mul(g2)))
            }
            (Generator::Diagonal(g), Generator::Outer { left, right }) => {
                Some(Generator::Outer { left: g.mul(left), right: right.clone() })
            }
            (Generator::Outer { left, right }, Generator::Diagonal(g)) => {
                Some(Generator::Outer { left: left.clone(), right: right.mul(&g.conj()) })
            }
            (
                Generator::Outer { left: u1, right: v1 },
                Generator::Outer { left: u2, right: v2 },
            ) => {
                // (u1 v1^*)(u2 v2^*) = <u2, v1> u1 v2^*
                let cross = v1.conj().mul(u2);
                let mut scalar = C64::ZERO;
                for k in 0..inner_trunc {
                    scalar += cross.eval(k);
                }
                Some(Generator::Outer { left: u1.scaled(scalar), right: v2.clone() })
            }
            _ => None,
        },
        ModelKind::Transported => None,
    }
}

/// Exact class of `a # b` in the infinite model, derived symbolically
/// from the operands' generators. `None` when the class is not decidable
/// on the catalog (e.g. a divergent inner series).
pub fn symbolic_product_class(
    kind: ModelKind,
    a: &GradedElement,
    b: &GradedElement,
) -> Option<Classification> {
    let ga = a.generator()?;
    let gb = b.generator()?;
    match kind {
        ModelKind::Pointwise => match (ga, gb) {
            (Generator::Sequence(g1), Generator::Sequence(g2)) => {
                Some(classify_generator_exact(&Generator::Sequence(g1.mul(g2))))
            }
            _ => None,
        },
        ModelKind::Matrix => match (ga, gb) {
            (Generator::Diagonal(g1), Generator::Diagonal(g2)) => {
                Some(classify_generator_exact(&Generator::Diagonal(g1.mul(g2))))
            }
            (Generator::Diagonal(g), Generator::Outer { left, right }) => {
                Some(classify_generator_exact(&Generator::Outer {
                    left: g.mul(left),
                    right: right.clone(),
                }))
            }
            (Generator::Outer { left, right }, Generator::Diagonal(g)) => {
                Some(classify_generator_exact(&Generator::Outer {
                    left: left.clone(),
                    right: right.mul(&g.conj()),
                }))
            }
            (
                Generator::Outer { left: u1, right: v1 },
                Generator::Outer { left: u2, right: v2 },
            ) => {
                let cross = v1.conj().mul(u2);
                // the series sum_k cross(k) must converge for the infinite
                // model to make sense at all
                cross.abs_series_bound(0.0, 0.0)?;
                if cross.is_zero() {
                    return Some(Classification {
                        class: Class::RapidDecay,
                        square_summable: true,
                        method: Method::FiniteSupport,
                    });
                }
                // all terms of the series share one phase, so the sum is
                // nonzero and the class is that of the rank-one shape
                Some(classify_generator_exact(&Generator::Outer {
                    left: u1.clone(),
                    right: v2.clone(),
                }))
            }
            _ => None,
        },
        ModelKind::Transported => None,
    }
}

struct EnvelopeParts {
    p: [f64; 2],
    rate: f64,
    c: f64,
}

fn parts(env: &EnvelopeClass) -> Option<EnvelopeParts> {
    if env.poly.len() != 2 {
        return None;
    }
    Some(EnvelopeParts { p: [env.poly[0], env.poly[1]], rate: env.exp_rate, c: env.constant })
}

/// Envelope certificate for the model product of two certified elements.
///
/// For the matrix product the generic rule bounds the inner index sum by
/// a convergent series and keeps `min` of the two rates; structure-aware
/// rules (diagonal or rank-one factor) are tried as well and the
/// strongest certificate wins.
pub fn product_envelope(
    kind: ModelKind,
    a: &GradedElement,
    b: &GradedElement,
) -> Option<EnvelopeClass> {
    match kind {
        ModelKind::Pointwise => {
            let ea = a.effective_envelope()?;
            let eb = b.effective_envelope()?;
            ea.pointwise_product(&eb).ok()
        }
        ModelKind::Matrix => {
            let mut candidates: Vec<EnvelopeClass> = Vec::new();
            let ea = a.effective_envelope();
            let eb = b.effective_envelope();
            if let (Some(ea), Some(eb)) = (&ea, &eb) {
                if let Some(env) = generic_matrix_rule(ea, eb) {
                    candidates.push(env);
                }
            }
            if let (Some(ea), Some(gb)) = (&ea, b.generator()) {
                if let Some(env) = right_factor_rule(ea, gb) {
                    candidates.push(env);
                }
            }
            if let (Some(ga), Some(eb)) = (a.generator(), &eb) {
                if let Some(env) = left_factor_rule(ga, eb) {
                    candidates.push(env);
                }
            }
            candidates.into_iter().max_by(|x, y| {
                x.exp_rate
                    .partial_cmp(&y.exp_rate)
                    .unwrap()
                    .then(y.constant.partial_cmp(&x.constant).unwrap())
            })
        }
        ModelKind::Transported => None,
    }
}

/// `|(ab)_{mn}| <= C_a C_b K (1+m)^{p_a1} (1+n)^{p_b2} e^{-min(r_a,r_b)(m+n)}`
/// with `K` bounding `sum_k (1+k)^{p_a2+p_b1} e^{-(r_a+r_b)k}`.
fn generic_matrix_rule(ea: &EnvelopeClass, eb: &EnvelopeClass) -> Option<EnvelopeClass> {
    let a = parts(ea)?;
    let b = parts(eb)?;
    let k = series_poly_exp_bound(a.p[1] + b.p[0], a.rate + b.rate)?;
    EnvelopeClass::new(vec![a.p[0], b.p[1]], a.rate.min(b.rate), a.c * b.c * k).ok()
}

/// Structure-aware rule for `a # b` with `b` diagonal or rank-one.
fn right_factor_rule(ea: &EnvelopeClass, gb: &Generator) -> Option<EnvelopeClass> {
    let a = parts(ea)?;
    match gb {
        Generator::Diagonal(g) => {
            // (a D)_{mn} = a_{mn} g(n): scales column n only
            let (cg, pg, rg) = g.envelope1();
            if rg < 0.0 {
                return None;
            }
            EnvelopeClass::new(vec![a.p[0], a.p[1] + pg], a.rate, a.c * cg).ok()
        }
        Generator::Outer { left, right } => {
            // (a uv^*)_{mn} = (a u)(m) conj(v(n))
            let (cu, pu, ru) = left.envelope1();
            let (cv, pv, rv) = right.envelope1();
            let k = series_poly_exp_bound(a.p[1] + pu, a.rate + ru)?;
            EnvelopeClass::new(vec![a.p[0], pv], a.rate.min(rv), a.c * cu * cv * k).ok()
        }
        _ => None,
    }
}

/// Mirror of [`right_factor_rule`] for `a` diagonal or rank-one.
fn left_factor_rule(ga: &Generator, eb: &EnvelopeClass) -> Option<EnvelopeClass> {
    let b = parts(eb)?;
    match ga {
        Generator::Diagonal(g) => {
            let (cg, pg, rg) = g.envelope1();
            if rg < 0.0 {
                return None;
            }
            EnvelopeClass::new(vec![b.p[0] + pg, b.p[1]], b.rate, b.c * cg).ok()
        }
        Generator::Outer { left, right } => {
            // (uv^* b)_{mn} = u(m) (v^* b)(n)
            let (cu, pu, ru) = left.envelope1();
            let (cv, pv, rv) = right.envelope1();
            let k = series_poly_exp_bound(pv + b.p[0], rv + b.rate)?;
            EnvelopeClass::new(vec![pu, b.p[1]], ru.min(b.rate), cu * cv * b.c * k).ok()
        }
        _ => None,
    }
}
