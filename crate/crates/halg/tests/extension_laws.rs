//! Laws of the duality-extended operations: mixed associativity,
//! anti-homomorphism, consistency with the native operations, and the
//! multiplier-extended associativity.

use num_complex::Complex64 as C64;

use halg::algebra::{
    extend_involution, extend_product_left, extend_product_right, moyal_extend_left,
    moyal_extend_right, sample_corpus, AlgebraModel, CorpusSpec,
};
use halg::graded::{EnvelopeClass, Gen1, GradedElement, Generator};
use halg::moyal::{default_probes, is_left_moyal, is_right_moyal};
use halg::opfamily::{build_weyl_heisenberg, transported_model};
use halg::graded::WeightSystem;

fn rel_err(model: &AlgebraModel, a: &GradedElement, b: &GradedElement, scale: f64) -> f64 {
    model.norm(&a.sub(b).unwrap()).unwrap() / (1.0 + scale)
}

/// A deterministic family of tempered elements from the catalog.
fn tempered_samples(model: &AlgebraModel, count: usize) -> Vec<GradedElement> {
    let shape = model.element_shape();
    let mut out = Vec::new();
    for t in 0..count {
        let p = (t % 4) as f64 + 1.0;
        let scale = C64::new(1.0 + 0.25 * t as f64, -(0.5 + t as f64 * 0.125));
        let gen = match model.axes() {
            1 => Generator::Sequence(Gen1::power_law(p, scale)),
            _ => {
                if t % 2 == 0 {
                    Generator::Diagonal(Gen1::power_law(p, scale))
                } else {
                    Generator::Outer {
                        left: Gen1::power_law(p / 2.0, scale),
                        right: Gen1::exponential(0.5, C64::ONE),
                    }
                }
            }
        };
        out.push(GradedElement::from_generator(shape.clone(), gen).unwrap());
    }
    out
}

#[test]
fn mixed_associativity_matrix() {
    let model = AlgebraModel::matrix(12).unwrap();
    let rapids = sample_corpus(&model, &CorpusSpec::new(101, 12, 0.2)).unwrap();
    let tempereds = tempered_samples(&model, 6);
    let mut worst = 0.0f64;
    for (t, f) in tempereds.iter().enumerate() {
        let g = &rapids[t % rapids.len()];
        let h = &rapids[(t * 5 + 3) % rapids.len()];
        let scale = f.l2_norm() * model.norm(g).unwrap() * model.norm(h).unwrap();

        // f # (g # h) = (f # g) # h
        let lhs = extend_product_right(f, &model.product(g, h).unwrap(), &model).unwrap();
        let rhs =
            extend_product_right(&extend_product_right(f, g, &model).unwrap(), h, &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));

        // h # (g # f) = (h # g) # f
        let lhs = extend_product_left(h, &extend_product_left(g, f, &model).unwrap(), &model)
            .unwrap();
        let rhs = extend_product_left(&model.product(h, g).unwrap(), f, &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));

        // (g # f) # h = g # (f # h)
        let lhs =
            extend_product_right(&extend_product_left(g, f, &model).unwrap(), h, &model).unwrap();
        let rhs =
            extend_product_left(g, &extend_product_right(f, h, &model).unwrap(), &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));
    }
    assert!(worst <= 1e-9, "mixed associativity residual {worst}");
}

#[test]
fn mixed_associativity_pointwise() {
    let model = AlgebraModel::pointwise(48).unwrap();
    let rapids = sample_corpus(&model, &CorpusSpec::new(55, 8, 0.12)).unwrap();
    let tempereds = tempered_samples(&model, 5);
    let mut worst = 0.0f64;
    for (t, f) in tempereds.iter().enumerate() {
        let g = &rapids[t % rapids.len()];
        let h = &rapids[(t * 3 + 1) % rapids.len()];
        let scale = f.l2_norm() * model.norm(g).unwrap() * model.norm(h).unwrap();
        let lhs = extend_product_right(f, &model.product(g, h).unwrap(), &model).unwrap();
        let rhs =
            extend_product_right(&extend_product_right(f, g, &model).unwrap(), h, &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));
    }
    assert!(worst <= 1e-9, "pointwise mixed associativity residual {worst}");
}

#[test]
fn anti_homomorphism_of_extensions() {
    let model = AlgebraModel::matrix(10).unwrap();
    let rapids = sample_corpus(&model, &CorpusSpec::new(77, 8, 0.25)).unwrap();
    let tempereds = tempered_samples(&model, 5);
    let mut worst = 0.0f64;
    for (t, f) in tempereds.iter().enumerate() {
        let g = &rapids[t % rapids.len()];
        let scale = f.l2_norm() * model.norm(g).unwrap();

        // (f # g)^# = g^# # f^#
        let lhs = extend_involution(&extend_product_right(f, g, &model).unwrap(), &model).unwrap();
        let g_sharp = model.involution(g).unwrap();
        let f_sharp = extend_involution(f, &model).unwrap();
        let rhs = extend_product_left(&g_sharp, &f_sharp, &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));

        // (g # f)^# = f^# # g^#
        let lhs = extend_involution(&extend_product_left(g, f, &model).unwrap(), &model).unwrap();
        let rhs = extend_product_right(&f_sharp, &g_sharp, &model).unwrap();
        worst = worst.max(rel_err(&model, &lhs, &rhs, scale));
    }
    assert!(worst <= 1e-9, "anti-homomorphism residual {worst}");
}

#[test]
fn extensions_agree_with_native_on_rapid_decay() {
    // when the functional happens to be rapid decay, every extended
    // operation collapses to the native one at truncation
    for model in [
        AlgebraModel::pointwise(24).unwrap(),
        AlgebraModel::matrix(8).unwrap(),
    ] {
        let elems = sample_corpus(&model, &CorpusSpec::new(9, 6, 0.25)).unwrap();
        for pair in elems.chunks(2) {
            let (f, g) = (&pair[0], &pair[1]);
            let scale = model.norm(f).unwrap() * model.norm(g).unwrap();
            let ext = extend_product_right(f, g, &model).unwrap();
            let native = model.product(f, g).unwrap();
            assert!(rel_err(&model, &ext, &native, scale) < 1e-12);

            let ext = extend_product_left(f, g, &model).unwrap();
            let native = model.product(f, g).unwrap();
            assert!(rel_err(&model, &ext, &native, scale) < 1e-12);

            let ext = extend_involution(f, &model).unwrap();
            let native = model.involution(f).unwrap();
            assert!(rel_err(&model, &ext, &native, model.norm(f).unwrap()) < 1e-12);
        }
    }
}

#[test]
fn transported_extensions_consistent() {
    let fam = build_weyl_heisenberg(3).unwrap();
    let (model, _) = transported_model(fam, WeightSystem::new(2).unwrap(), 4, 1e-10).unwrap();
    let elems = sample_corpus(&model, &CorpusSpec::new(33, 4, 0.4)).unwrap();
    for pair in elems.chunks(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let ext = extend_product_right(f, g, &model).unwrap();
        let native = model.product(f, g).unwrap();
        let scale = model.norm(f).unwrap() * model.norm(g).unwrap();
        assert!(rel_err(&model, &ext, &native, scale) < 1e-11);
    }
}

#[test]
fn multiplier_extension_examples() {
    let model = AlgebraModel::matrix(10).unwrap();
    let ladder = [10, 20];
    let probes = default_probes(&model);

    // the identity acts as the identity on any tempered functional
    let id = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::constant(C64::ONE)),
    )
    .unwrap();
    let id_cert = is_right_moyal(&id, &model, &ladder, &probes).unwrap();
    let g = tempered_samples(&model, 1).remove(0);
    let ext = moyal_extend_right(&id, &id_cert, &g, &model).unwrap();
    assert!(rel_err(&model, &ext, &g, g.l2_norm()) < 1e-12);

    // diagonal degree stacking: (1+m) times (1+m)^2 gives (1+m)^3
    let f1 = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::power_law(1.0, C64::ONE)),
    )
    .unwrap();
    let f2 = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::power_law(2.0, C64::ONE)),
    )
    .unwrap();
    let cert = is_right_moyal(&f1, &model, &ladder, &probes).unwrap();
    let ext = moyal_extend_right(&f1, &cert, &f2, &model).unwrap();
    let expect = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::power_law(3.0, C64::ONE)),
    )
    .unwrap();
    assert!(rel_err(&model, &ext, &expect, expect.l2_norm()) < 1e-12);

    // pointwise: (1+m)^2 times the constant functional
    let model = AlgebraModel::pointwise(20).unwrap();
    let probes = default_probes(&model);
    let f = GradedElement::from_generator(
        vec![20],
        Generator::Sequence(Gen1::power_law(2.0, C64::ONE)),
    )
    .unwrap();
    let ones = GradedElement::from_generator(
        vec![20],
        Generator::Sequence(Gen1::constant(C64::ONE)),
    )
    .unwrap();
    let cert = is_right_moyal(&f, &model, &ladder, &probes).unwrap();
    let ext = moyal_extend_right(&f, &cert, &ones, &model).unwrap();
    assert!(rel_err(&model, &ext, &f, f.l2_norm()) < 1e-12);
}

#[test]
fn multiplier_extended_associativity() {
    // (g # f) # h = g # (f # h) for f tempered, g a right multiplier,
    // h a left multiplier
    let model = AlgebraModel::matrix(10).unwrap();
    let ladder = [10, 20];
    let probes = default_probes(&model);

    let g = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::power_law(2.0, C64::new(1.0, 0.5))),
    )
    .unwrap();
    let h = GradedElement::from_generator(
        vec![10, 10],
        Generator::Diagonal(Gen1::power_law(1.0, C64::new(0.0, 1.0))),
    )
    .unwrap();
    let g_cert = is_right_moyal(&g, &model, &ladder, &probes).unwrap();
    let h_cert = is_left_moyal(&h, &model, &ladder, &probes).unwrap();
    assert!(g_cert.is_member() && h_cert.is_member());

    // tempered functional without any symbolic structure
    let mut coeffs = Vec::new();
    for m in 0..10usize {
        for n in 0..10usize {
            let v = ((m * 17 + n * 5 + 3) % 7) as f64 - 3.0;
            let w = ((m * 11 + n * 13) % 5) as f64 - 2.0;
            coeffs.push(C64::new(v, w) * (1.0 + m as f64));
        }
    }
    let f = GradedElement::from_coeffs(vec![10, 10], coeffs)
        .unwrap()
        .with_envelope(EnvelopeClass::new(vec![1.0, 0.0], 0.0, 4.0).unwrap())
        .unwrap();

    let gf = moyal_extend_right(&g, &g_cert, &f, &model).unwrap();
    let lhs = moyal_extend_left(&gf, &h, &h_cert, &model).unwrap();
    let fh = moyal_extend_left(&f, &h, &h_cert, &model).unwrap();
    let rhs = moyal_extend_right(&g, &g_cert, &fh, &model).unwrap();
    let scale = g.l2_norm() * f.l2_norm() * h.l2_norm();
    let err = rel_err(&model, &lhs, &rhs, scale);
    assert!(err <= 1e-9, "multiplier associativity residual {err}");
}
