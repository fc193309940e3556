//! End-to-end checks of the quantization pipeline against fixed oracles.

use num_complex::Complex64 as C64;

use halg::algebra::{check_hilbert_axioms, CorpusSpec};
use halg::cmatrix::CMatrix;
use halg::graded::{Gen1, GradedElement, Generator, WeightSystem};
use halg::opfamily::{
    build_random_tight, build_weyl_heisenberg, parseval_check, transported_model, verify_tightness,
    SymbolSpace,
};

#[test]
fn star_is_idempotent_on_projection_symbols() {
    // E_00^2 = E_00, so its symbol is a star-idempotent
    let space = SymbolSpace::new(build_weyl_heisenberg(2).unwrap());
    let mut e00 = CMatrix::zeros(2, 2);
    e00.set(0, 0, C64::ONE);
    let f = space.analyze(&e00).unwrap();
    let star = space.star(&f, &f).unwrap();
    for (a, b) in star.iter().zip(&f) {
        assert!((a - b).norm() < 1e-13);
    }
}

#[test]
fn parseval_fixed_examples() {
    let space = SymbolSpace::new(build_weyl_heisenberg(2).unwrap());
    let mut e00 = CMatrix::zeros(2, 2);
    e00.set(0, 0, C64::ONE);
    let f = space.analyze(&e00).unwrap();

    // both sides equal 1
    let ip = space.inner_mu(&f, &f).unwrap();
    assert!((ip - C64::ONE).norm() < 1e-13);
    let report = parseval_check(&space, &f, &f).unwrap();
    assert!(report.residual <= 1e-12, "{report:?}");

    // orthogonal pair: both sides vanish
    let mut e01 = CMatrix::zeros(2, 2);
    e01.set(0, 1, C64::ONE);
    let g = space.analyze(&e01).unwrap();
    let ip = space.inner_mu(&f, &g).unwrap();
    assert!(ip.norm() < 1e-13);
    let lhs = space
        .synthesize(&f)
        .unwrap()
        .mul(&space.synthesize(&g).unwrap().adjoint())
        .unwrap()
        .trace();
    assert!(lhs.norm() < 1e-13);
}

#[test]
fn tightness_implies_parseval_on_random_families() {
    // whenever the tightness criterion passes at tol, parseval residuals
    // on random pairs stay within an order of magnitude of it
    let tol = 1e-10;
    let fam = build_random_tight(20, 3, 5).unwrap();
    let report = verify_tightness(&fam, tol, 2).unwrap();
    assert!(report.pass);
    let space = SymbolSpace::new(fam);
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..50 {
        let f: Vec<C64> = (0..20).map(|_| C64::new(next() - 0.5, next() - 0.5)).collect();
        let g: Vec<C64> = (0..20).map(|_| C64::new(next() - 0.5, next() - 0.5)).collect();
        let p = parseval_check(&space, &f, &g).unwrap();
        assert!(p.residual <= 10.0 * tol, "parseval residual {}", p.residual);
    }
}

#[test]
fn transported_clock_shift_model_passes_axioms() {
    let fam = build_weyl_heisenberg(2).unwrap();
    let (model, triple) =
        transported_model(fam, WeightSystem::new(2).unwrap(), 4, 1e-10).unwrap();
    let report = check_hilbert_axioms(&model, &CorpusSpec::new(7, 80, 0.3), 1e-10).unwrap();
    assert!(report.all_pass, "{report:?}");

    // seminorm pullback: order 0 on symbols is the sup of the matrix entries
    let op = GradedElement::from_generator(
        vec![2, 2],
        Generator::Diagonal(Gen1::power_law(1.0, C64::ONE)),
    )
    .unwrap();
    let symbol = model.pushforward(&op).unwrap();
    let p0 = model.seminorm(&symbol, 0).unwrap();
    assert!((p0 - 2.0).abs() < 1e-12, "sup of diag(1, 2) is 2, got {p0}");
    let ladder = triple.seminorms(&op).unwrap();
    assert_eq!(ladder.len(), 5);
    assert!((ladder[0] - 2.0).abs() < 1e-12);
    for w in ladder.windows(2) {
        assert!(w[0] <= w[1] + 1e-12);
    }
}
