//! Duality extensions of the product and involution: a functional is
//! materialized as the coefficient array whose pairing against every
//! basis element matches the defining formula.
//!
//! These routines deliberately evaluate the dual formulas by pairing
//! against basis elements; agreement with the native product is a
//! theorem to be tested, not an implementation shortcut.

use num_complex::Complex64 as C64;

use super::AlgebraModel;
use crate::error::{Error, Result};
use crate::graded::{certified_class, Class, GradedElement};
use crate::moyal::{MembershipVerdict, Side, Verdict};

/// Reject elements whose certificate puts them outside the dual space.
fn require_dual(label: &str, f: &GradedElement) -> Result<()> {
    if let Some(cls) = certified_class(f) {
        if cls.class == Class::Wild {
            return Err(Error::rejected(format!(
                "{label} is certified Wild and defines no tempered functional"
            )));
        }
    }
    Ok(())
}

/// Reject elements certified as anything other than rapid decay.
fn require_rapid(label: &str, g: &GradedElement) -> Result<()> {
    match certified_class(g) {
        Some(cls) => {
            if cls.class.is_rapid_decay() || g.is_zero() {
                Ok(())
            } else {
                Err(Error::rejected(format!(
                    "{label} is certified {:?}, expected rapid decay",
                    cls.class
                )))
            }
        }
        // uncertified arrays are accepted on the caller's responsibility
        None => Ok(()),
    }
}

fn materialize(
    model: &AlgebraModel,
    mut dual_value: impl FnMut(&GradedElement) -> Result<C64>,
) -> Result<GradedElement> {
    let shape = model.element_shape();
    let total: usize = shape.iter().product();
    let mut coeffs = Vec::with_capacity(total);
    for i in 0..total {
        let e = model.basis_element(i)?;
        let v = dual_value(&e)?;
        coeffs.push(v / model.dual_weight(i));
    }
    GradedElement::from_coeffs(shape, coeffs)
}

fn attach_product_envelope(
    model: &AlgebraModel,
    result: GradedElement,
    a: &GradedElement,
    b: &GradedElement,
) -> GradedElement {
    match super::certs::product_envelope(model.kind(), a, b) {
        Some(env) => result.with_envelope_unchecked(env),
        None => result,
    }
}

/// Extension `A^dagger x A -> A^dagger` defined by `<f#g, h> := <f, h # g^#>`.
pub fn extend_product_right(
    f: &GradedElement,
    g: &GradedElement,
    model: &AlgebraModel,
) -> Result<GradedElement> {
    require_dual("left factor", f)?;
    require_rapid("right factor", g)?;
    let g_sharp = model.involution(g)?;
    let out = materialize(model, |h| model.inner(f, &model.product(h, &g_sharp)?))?;
    Ok(attach_product_envelope(model, out, f, g))
}

/// Extension `A x A^dagger -> A^dagger` defined by `<g#f, h> := <f, g^# # h>`.
pub fn extend_product_left(
    g: &GradedElement,
    f: &GradedElement,
    model: &AlgebraModel,
) -> Result<GradedElement> {
    require_rapid("left factor", g)?;
    require_dual("right factor", f)?;
    let g_sharp = model.involution(g)?;
    let out = materialize(model, |h| model.inner(f, &model.product(&g_sharp, h)?))?;
    Ok(attach_product_envelope(model, out, g, f))
}

/// Extension of the involution to the dual: `<f^#, h> := conj(<f, h^#>)`.
pub fn extend_involution(f: &GradedElement, model: &AlgebraModel) -> Result<GradedElement> {
    require_dual("argument", f)?;
    let out = materialize(model, |h| Ok(model.inner(f, &model.involution(h)?)?.conj()))?;
    if let Some(env) = f.effective_envelope() {
        let env = if model.axes() == 2 { env.transposed() } else { env };
        return Ok(out.with_envelope_unchecked(env));
    }
    Ok(out)
}

fn require_member(cert: &MembershipVerdict, needed: Side) -> Result<()> {
    if cert.verdict != Verdict::Member {
        return Err(Error::MissingCertificate(format!(
            "multiplier certificate verdict is {:?}, need Member",
            cert.verdict
        )));
    }
    let covered = match needed {
        Side::Left => matches!(cert.side, Side::Left | Side::Both),
        Side::Right => matches!(cert.side, Side::Right | Side::Both),
        Side::Both => matches!(cert.side, Side::Both),
    };
    if !covered {
        return Err(Error::MissingCertificate(format!(
            "certificate covers side {:?}, need {:?}",
            cert.side, needed
        )));
    }
    Ok(())
}

/// Multiplier extension `M_R x A^dagger -> A^dagger` defined by
/// `<f#g, h> := <g, f^# # h>`; `f` must carry a right-multiplier
/// certificate.
pub fn moyal_extend_right(
    f: &GradedElement,
    cert: &MembershipVerdict,
    g: &GradedElement,
    model: &AlgebraModel,
) -> Result<GradedElement> {
    require_member(cert, Side::Right)?;
    require_dual("functional factor", g)?;
    let f_sharp = model.involution(f)?;
    materialize(model, |h| model.inner(g, &model.product(&f_sharp, h)?))
}

/// Multiplier extension `A^dagger x M_L -> A^dagger` defined by
/// `<g#f, h> := <g, h # f^#>`; `f` must carry a left-multiplier
/// certificate.
pub fn moyal_extend_left(
    g: &GradedElement,
    f: &GradedElement,
    cert: &MembershipVerdict,
    model: &AlgebraModel,
) -> Result<GradedElement> {
    require_member(cert, Side::Left)?;
    require_dual("functional factor", g)?;
    let f_sharp = model.involution(f)?;
    materialize(model, |h| model.inner(g, &model.product(h, &f_sharp)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{pairing, Gen1, Generator};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pointwise_constant_times_delta_is_delta() {
        let model = AlgebraModel::pointwise(16).unwrap();
        let ones = GradedElement::from_generator(
            vec![16],
            Generator::Sequence(Gen1::constant(C64::ONE)),
        )
        .unwrap();
        let delta = GradedElement::delta(vec![16], &[0], C64::ONE).unwrap();
        let ext = extend_product_right(&ones, &delta, &model).unwrap();
        // oracle: unroll the definition by hand over the basis
        for m in 0..16 {
            let e = model.basis_element(m).unwrap();
            let direct = pairing(&ones, &model.product(&e, &model.involution(&delta).unwrap()).unwrap())
                .unwrap();
            assert!((ext.coeffs()[m] - direct).norm() < 1e-15);
        }
        assert!((ext.coeffs()[0] - C64::ONE).norm() < 1e-14);
        for m in 1..16 {
            assert!(ext.coeffs()[m].norm() < 1e-14);
        }
    }

    #[test]
    fn extension_with_zero_is_zero() {
        let model = AlgebraModel::pointwise(8).unwrap();
        let f = GradedElement::from_generator(
            vec![8],
            Generator::Sequence(Gen1::power_law(2.0, C64::ONE)),
        )
        .unwrap();
        let zero = GradedElement::zero(vec![8]).unwrap();
        let ext = extend_product_right(&f, &zero, &model).unwrap();
        assert!(ext.is_zero());
        let ext = extend_product_left(&zero, &f, &model).unwrap();
        assert!(ext.is_zero());
    }

    #[test]
    fn matrix_extension_agrees_with_direct_product() {
        let model = AlgebraModel::matrix(6).unwrap();
        let spec = crate::algebra::CorpusSpec::new(20, 2, 0.3);
        let elems = crate::algebra::sample_corpus(&model, &spec).unwrap();
        let (f, g) = (&elems[0], &elems[1]);
        let ext = extend_product_right(f, g, &model).unwrap();
        let direct = model.product(f, g).unwrap();
        let err = model.norm(&ext.sub(&direct).unwrap()).unwrap();
        assert!(err < 1e-10, "duality route differs from direct product: {err}");

        let ext_l = extend_product_left(f, g, &model).unwrap();
        let direct_l = model.product(f, g).unwrap();
        let err = model.norm(&ext_l.sub(&direct_l).unwrap()).unwrap();
        assert!(err < 1e-10);
    }

    #[test]
    fn involution_extension_examples() {
        let model = AlgebraModel::pointwise(8).unwrap();
        let const_i = GradedElement::from_generator(
            vec![8],
            Generator::Sequence(Gen1::constant(c(0.0, 1.0))),
        )
        .unwrap();
        let ext = extend_involution(&const_i, &model).unwrap();
        for v in ext.coeffs() {
            assert!((v - c(0.0, -1.0)).norm() < 1e-14);
        }

        // matrix: polynomial row scaling of E_01 goes to its conjugate transpose
        let model = AlgebraModel::matrix(6).unwrap();
        let f = GradedElement::from_generator(
            vec![6, 6],
            Generator::Outer {
                left: Gen1::delta(0, c(0.0, 2.0)),
                right: Gen1::delta(1, C64::ONE),
            },
        )
        .unwrap();
        let ext = extend_involution(&f, &model).unwrap();
        let adj = model.involution(&f).unwrap();
        let err = model.norm(&ext.sub(&adj).unwrap()).unwrap();
        assert!(err < 1e-12);

        // real diagonal is a fixed point
        let diag = GradedElement::from_generator(
            vec![6, 6],
            Generator::Diagonal(Gen1::power_law(1.0, C64::ONE)),
        )
        .unwrap();
        let ext = extend_involution(&diag, &model).unwrap();
        let err = model.norm(&ext.sub(&diag).unwrap()).unwrap();
        assert!(err < 1e-12);
    }

    #[test]
    fn involution_extension_is_involutive() {
        let model = AlgebraModel::matrix(5).unwrap();
        let f = GradedElement::from_generator(
            vec![5, 5],
            Generator::Diagonal(Gen1::power_law(2.0, c(1.0, 1.0))),
        )
        .unwrap();
        let twice = extend_involution(&extend_involution(&f, &model).unwrap(), &model).unwrap();
        let err = model.norm(&twice.sub(&f).unwrap()).unwrap();
        assert!(err < 1e-12);
    }

    #[test]
    fn wild_input_rejected() {
        let model = AlgebraModel::pointwise(8).unwrap();
        let wild = GradedElement::from_generator(
            vec![8],
            Generator::Sequence(Gen1::exponential(-std::f64::consts::LN_2, C64::ONE)),
        )
        .unwrap();
        let delta = GradedElement::delta(vec![8], &[0], C64::ONE).unwrap();
        assert!(extend_product_right(&wild, &delta, &model).is_err());
        assert!(extend_involution(&wild, &model).is_err());
    }

    #[test]
    fn moyal_extend_requires_member_certificate() {
        let model = AlgebraModel::matrix(4).unwrap();
        let f = GradedElement::from_generator(
            vec![4, 4],
            Generator::Diagonal(Gen1::constant(C64::ONE)),
        )
        .unwrap();
        let g = GradedElement::from_generator(
            vec![4, 4],
            Generator::Diagonal(Gen1::power_law(1.0, C64::ONE)),
        )
        .unwrap();
        let bad_cert = MembershipVerdict::inconclusive(Side::Right, vec![]);
        assert!(moyal_extend_right(&f, &bad_cert, &g, &model).is_err());
    }
}
