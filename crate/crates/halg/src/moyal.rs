//! Multiplier membership: which dual elements map the rapid-decay
//! algebra into itself from the left, the right, or both sides; bounded
//! elements of the completion; and the natural trace on pairs of them.
//!
//! Verdicts are three-valued. `Member` needs every probe product to be
//! certified rapid decay (symbolically, by envelope arithmetic, or by a
//! stable numeric fit); `NonMember` needs one probe whose product is
//! exactly classified outside the rapid-decay space, and that probe is
//! the witness; anything weaker stays `Inconclusive`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::algebra::{product_envelope, symbolic_product_class, AlgebraModel, ModelKind};
use crate::error::{Error, Result};
use crate::graded::{
    certified_class, classify_elements_numeric, classify_envelope, standard_probe_generators,
    Class, Classification, Gen1, GradedElement, Generator, Method,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub probe: String,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoyalWitness {
    pub probe: String,
    pub probe_generator: Generator,
    pub product_class: Class,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub side: Side,
    pub verdict: Verdict,
    /// Per-probe derivation backing a `Member` verdict.
    pub certificate: Vec<ProbeOutcome>,
    /// Probe whose product leaves the rapid-decay space, for `NonMember`.
    pub witness: Option<MoyalWitness>,
    pub ladder: Vec<usize>,
}

impl MembershipVerdict {
    pub fn inconclusive(side: Side, ladder: Vec<usize>) -> Self {
        MembershipVerdict { side, verdict: Verdict::Inconclusive, certificate: vec![], witness: None, ladder }
    }

    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

fn probe_label(axes: usize, i: usize) -> String {
    let names_1 = ["delta-0", "exp-decay", "poly-exp-slow"];
    let names_2 = ["delta-00", "diag-exp", "outer-exp-exp", "outer-delta-exp"];
    let names: &[&str] = if axes == 1 { &names_1 } else { &names_2 };
    names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("probe-{i}"))
}

fn reject_wild(f: &GradedElement) -> Result<()> {
    match certified_class(f) {
        Some(cls) if cls.class == Class::Wild => Err(Error::rejected(
            "element is certified Wild, outside the dual space",
        )),
        Some(_) => Ok(()),
        None => Err(Error::MissingCertificate(
            "membership needs a generator or envelope on the element".into(),
        )),
    }
}

/// `f # A subset A` (left multiplier) test against the probe basket.
pub fn is_left_moyal(
    f: &GradedElement,
    model: &AlgebraModel,
    ladder: &[usize],
    probes: &[Generator],
) -> Result<MembershipVerdict> {
    membership(f, model, ladder, probes, Side::Left)
}

/// `A # f subset A` (right multiplier) test against the probe basket.
pub fn is_right_moyal(
    f: &GradedElement,
    model: &AlgebraModel,
    ladder: &[usize],
    probes: &[Generator],
) -> Result<MembershipVerdict> {
    membership(f, model, ladder, probes, Side::Right)
}

/// Combined verdict for both sides.
pub fn is_bi_moyal(
    f: &GradedElement,
    model: &AlgebraModel,
    ladder: &[usize],
    probes: &[Generator],
) -> Result<MembershipVerdict> {
    let left = is_left_moyal(f, model, ladder, probes)?;
    let right = is_right_moyal(f, model, ladder, probes)?;
    let verdict = match (left.verdict, right.verdict) {
        (Verdict::Member, Verdict::Member) => Verdict::Member,
        (Verdict::NonMember, _) | (_, Verdict::NonMember) => Verdict::NonMember,
        _ => Verdict::Inconclusive,
    };
    let witness = left.witness.or(right.witness);
    let mut certificate = left.certificate;
    certificate.extend(right.certificate);
    Ok(MembershipVerdict { side: Side::Both, verdict, certificate, witness, ladder: ladder.to_vec() })
}

pub fn default_probes(model: &AlgebraModel) -> Vec<Generator> {
    standard_probe_generators(model.axes())
}

fn membership(
    f: &GradedElement,
    model: &AlgebraModel,
    ladder: &[usize],
    probes: &[Generator],
    side: Side,
) -> Result<MembershipVerdict> {
    if matches!(model.kind(), ModelKind::Transported) {
        return Err(Error::invalid(
            "membership for the transported model is checked on matrix-side representatives",
        ));
    }
    if probes.is_empty() {
        return Err(Error::invalid("probe basket must be nonempty"));
    }
    reject_wild(f)?;
    let mut outcomes = Vec::with_capacity(probes.len());
    let mut inconclusive = false;
    for (i, probe_gen) in probes.iter().enumerate() {
        let label = probe_label(model.axes(), i);
        let probe = GradedElement::from_generator(f.trunc().to_vec(), probe_gen.clone())?;
        let (l, r) = match side {
            Side::Left | Side::Both => (f, &probe),
            Side::Right => (&probe, f),
        };
        let cls = classify_product(model, l, r, ladder)?;
        match cls.class {
            Class::RapidDecay => outcomes.push(ProbeOutcome { probe: label, classification: cls }),
            Class::SquareSummable | Class::Tempered | Class::Wild => {
                // certified escape from the rapid-decay space
                return Ok(MembershipVerdict {
                    side,
                    verdict: Verdict::NonMember,
                    certificate: outcomes,
                    witness: Some(MoyalWitness {
                        probe: label,
                        probe_generator: probe_gen.clone(),
                        product_class: cls.class,
                    }),
                    ladder: ladder.to_vec(),
                });
            }
            Class::Inconclusive => {
                inconclusive = true;
                outcomes.push(ProbeOutcome { probe: label, classification: cls });
            }
        }
    }
    let verdict = if inconclusive { Verdict::Inconclusive } else { Verdict::Member };
    Ok(MembershipVerdict { side, verdict, certificate: outcomes, witness: None, ladder: ladder.to_vec() })
}

/// Class of `l # r` in the infinite model, by the strongest available
/// route: exact generator algebra, then envelope arithmetic (which can
/// only certify rapid decay), then a numeric fit across the ladder.
pub fn classify_product(
    model: &AlgebraModel,
    l: &GradedElement,
    r: &GradedElement,
    ladder: &[usize],
) -> Result<Classification> {
    if let Some(cls) = symbolic_product_class(model.kind(), l, r) {
        return Ok(cls);
    }
    if let Some(env) = product_envelope(model.kind(), l, r) {
        let cls = classify_envelope(&env);
        if cls.class == Class::RapidDecay {
            return Ok(cls);
        }
        // an envelope that fails to certify decay proves nothing; fall
        // through to numerics
    }
    numeric_product_class(model, l, r, ladder)
}

fn numeric_product_class(
    model: &AlgebraModel,
    l: &GradedElement,
    r: &GradedElement,
    ladder: &[usize],
) -> Result<Classification> {
    let (gl, gr) = match (l.generator(), r.generator()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            // not evaluable at other truncations; no honest multi-level fit
            return Ok(Classification {
                class: Class::Inconclusive,
                square_summable: false,
                method: Method::NumericFit(crate::graded::FitStats {
                    slope: f64::NAN,
                    power_residual: f64::NAN,
                    exp_rate: f64::NAN,
                    exp_residual: f64::NAN,
                    shells: 0,
                }),
            });
        }
    };
    let mut levels: Vec<usize> = ladder.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.len() < 2 {
        return Err(Error::invalid("numeric classification needs at least two ladder levels"));
    }
    let mut products = Vec::with_capacity(levels.len());
    for &d in &levels {
        let trunc = vec![d; model.axes()];
        let a = GradedElement::from_generator(trunc.clone(), gl.clone())?;
        let b = GradedElement::from_generator(trunc, gr.clone())?;
        products.push(level_product(model, &a, &b)?);
    }
    classify_elements_numeric(&products)
}

/// Product evaluated at an arbitrary truncation of the same model kind.
fn level_product(
    model: &AlgebraModel,
    a: &GradedElement,
    b: &GradedElement,
) -> Result<GradedElement> {
    let level_model = match model.kind() {
        ModelKind::Pointwise => AlgebraModel::pointwise(a.trunc()[0])?,
        ModelKind::Matrix => AlgebraModel::matrix(a.trunc()[0])?,
        ModelKind::Transported => return Err(Error::invalid("no truncation ladder on symbols")),
    };
    level_model.product(a, b)
}

/// Recompute the class behind a non-membership witness.
pub fn reverify_moyal_witness(
    f: &GradedElement,
    model: &AlgebraModel,
    witness: &MoyalWitness,
    side: Side,
    ladder: &[usize],
) -> Result<Classification> {
    let probe = GradedElement::from_generator(f.trunc().to_vec(), witness.probe_generator.clone())?;
    match side {
        Side::Left | Side::Both => classify_product(model, f, &probe, ladder),
        Side::Right => classify_product(model, &probe, f, ladder),
    }
}

// -- bounded elements ---------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedVerdict {
    pub verdict: Verdict,
    /// Bound on the operator norm of left multiplication, when Member.
    pub constant: Option<f64>,
    /// Norm estimates per ladder level (numeric route only).
    pub norms: Vec<f64>,
}

/// Decide whether a square-summable element acts boundedly on the
/// completion by left multiplication, and estimate the operator norm.
pub fn is_bounded_element(
    f: &GradedElement,
    model: &AlgebraModel,
    ladder: &[usize],
) -> Result<BoundedVerdict> {
    let cls = certified_class(f).ok_or_else(|| {
        Error::MissingCertificate("bounded-element check needs a certificate".into())
    })?;
    if !cls.square_summable {
        return Err(Error::rejected(format!(
            "element is not certified square-summable (class {:?})",
            cls.class
        )));
    }

    // closed forms on the catalog
    if let Some(gen) = f.generator() {
        match (model.kind(), gen) {
            (ModelKind::Pointwise, Generator::Sequence(g))
            | (ModelKind::Matrix, Generator::Diagonal(g)) => {
                if let Some(sup) = g.sup_abs() {
                    return Ok(BoundedVerdict {
                        verdict: Verdict::Member,
                        constant: Some(sup),
                        norms: vec![],
                    });
                }
            }
            (ModelKind::Matrix, Generator::Outer { left, right }) => {
                if let (Some(lu), Some(lv)) = (left.l2_bound(), right.l2_bound()) {
                    return Ok(BoundedVerdict {
                        verdict: Verdict::Member,
                        constant: Some(lu * lv),
                        norms: vec![],
                    });
                }
            }
            _ => {}
        }
    }

    // numeric route: power iteration per ladder level
    let mut levels: Vec<usize> = ladder.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() {
        return Err(Error::invalid("ladder must be nonempty"));
    }
    let mut norms = Vec::with_capacity(levels.len());
    for &d in &levels {
        let trunc = vec![d; model.axes()];
        let f_level = match f.generator() {
            Some(g) => GradedElement::from_generator(trunc, g.clone())?,
            None => {
                if f.trunc()[0] < d {
                    continue;
                }
                f.clone()
            }
        };
        let level_model = match model.kind() {
            ModelKind::Pointwise => AlgebraModel::pointwise(f_level.trunc()[0])?,
            ModelKind::Matrix => AlgebraModel::matrix(f_level.trunc()[0])?,
            ModelKind::Transported => model.clone(),
        };
        norms.push(operator_norm(&level_model, &f_level)?);
    }
    if norms.is_empty() {
        return Ok(BoundedVerdict { verdict: Verdict::Inconclusive, constant: None, norms });
    }
    let stable = norms.windows(2).all(|w| w[1] <= w[0] * 1.02 + 1e-12);
    if stable {
        let sup = norms.iter().copied().fold(0.0, f64::max);
        Ok(BoundedVerdict { verdict: Verdict::Member, constant: Some(sup), norms })
    } else {
        Ok(BoundedVerdict { verdict: Verdict::Inconclusive, constant: None, norms })
    }
}

/// Operator norm of left multiplication by power iteration on `L^* L`.
fn operator_norm(model: &AlgebraModel, f: &GradedElement) -> Result<f64> {
    let shape = f.trunc().to_vec();
    let total: usize = shape.iter().product();
    let mut rng = crate::algebra::corpus_rng(0xb0ded ^ total as u64);
    let mut x: Vec<C64> = (0..total).map(|_| crate::algebra::corpus_unit_disc(&mut rng)).collect();
    normalize(&mut x);
    let f_sharp = model.involution(f)?;
    let mut sigma = 0.0f64;
    for _ in 0..200 {
        let xe = GradedElement::from_coeffs(shape.clone(), x.clone())?;
        let y = model.product(f, &xe)?;
        let new_sigma = model.norm(&y)?;
        let back = model.product(&f_sharp, &y)?;
        let mut bx = back.coeffs().to_vec();
        if !normalize(&mut bx) {
            return Ok(new_sigma);
        }
        x = bx;
        if (new_sigma - sigma).abs() <= 1e-12 * new_sigma.max(1.0) {
            return Ok(new_sigma);
        }
        sigma = new_sigma;
    }
    Ok(sigma)
}

fn normalize(x: &mut [C64]) -> bool {
    let n: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if n <= 1e-300 {
        return false;
    }
    for v in x.iter_mut() {
        *v /= n;
    }
    true
}

// -- the trace ----------------------------------------------------------------

/// The natural trace on products of bounded left multipliers:
/// `tau_L(L_f L_g) = <f, g^#>`. Both arguments must carry Member
/// bounded-element certificates.
pub fn trace_tau_l(
    f: &GradedElement,
    g: &GradedElement,
    model: &AlgebraModel,
    f_cert: &BoundedVerdict,
    g_cert: &BoundedVerdict,
) -> Result<C64> {
    if f_cert.verdict != Verdict::Member || g_cert.verdict != Verdict::Member {
        return Err(Error::MissingCertificate(
            "trace needs Member bounded-element certificates for both arguments".into(),
        ));
    }
    let g_sharp = model.involution(g)?;
    model.inner(f, &g_sharp)
}

// -- curated verdict suite ----------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuratedCase {
    pub name: String,
    pub expected_left: Option<Verdict>,
    pub expected_right: Option<Verdict>,
    pub rejected_wild: bool,
    pub left: Option<MembershipVerdict>,
    pub right: Option<MembershipVerdict>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuratedSuiteReport {
    pub dim: usize,
    pub ladder: Vec<usize>,
    pub cases: Vec<CuratedCase>,
    pub inconclusive_count: usize,
    pub all_pass: bool,
}

/// The fixed membership suite on the matrix model: the identity and
/// polynomial diagonals are two-sided multipliers, the rank-one
/// `e_0 1^*` is one-sided with a concrete witness, its adjoint swaps
/// sides, and the doubling diagonal is rejected outright.
pub fn curated_membership_suite(d: usize, ladder: &[usize]) -> Result<CuratedSuiteReport> {
    let model = AlgebraModel::matrix(d)?;
    let probes = default_probes(&model);
    let trunc = vec![d, d];
    let mut cases = Vec::new();
    let mut inconclusive = 0usize;

    let push_case = |name: &str,
                         gen: Generator,
                         expected_left: Verdict,
                         expected_right: Verdict,
                         inconclusive: &mut usize|
     -> Result<CuratedCase> {
        let f = GradedElement::from_generator(trunc.clone(), gen)?;
        let left = is_left_moyal(&f, &model, ladder, &probes)?;
        let right = is_right_moyal(&f, &model, ladder, &probes)?;
        for v in [&left, &right] {
            if v.verdict == Verdict::Inconclusive {
                *inconclusive += 1;
            }
        }
        let mut pass = left.verdict == expected_left && right.verdict == expected_right;
        // non-membership must come with a witness that re-verifies
        for (v, side) in [(&left, Side::Left), (&right, Side::Right)] {
            if v.verdict == Verdict::NonMember {
                match &v.witness {
                    Some(w) => {
                        let re = reverify_moyal_witness(&f, &model, w, side, ladder)?;
                        if re.class == Class::RapidDecay || re.class == Class::Inconclusive {
                            pass = false;
                        }
                    }
                    None => pass = false,
                }
            }
        }
        Ok(CuratedCase {
            name: name.to_string(),
            expected_left: Some(expected_left),
            expected_right: Some(expected_right),
            rejected_wild: false,
            left: Some(left),
            right: Some(right),
            pass,
        })
    };

    cases.push(push_case(
        "identity",
        Generator::Diagonal(Gen1::constant(C64::ONE)),
        Verdict::Member,
        Verdict::Member,
        &mut inconclusive,
    )?);
    for p in [1.0, 3.0, 5.0] {
        cases.push(push_case(
            &format!("diag-power-{p}"),
            Generator::Diagonal(Gen1::power_law(p, C64::ONE)),
            Verdict::Member,
            Verdict::Member,
            &mut inconclusive,
        )?);
    }
    cases.push(push_case(
        "rank-one-e0-ones",
        Generator::Outer { left: Gen1::delta(0, C64::ONE), right: Gen1::constant(C64::ONE) },
        Verdict::Member,
        Verdict::NonMember,
        &mut inconclusive,
    )?);
    cases.push(push_case(
        "rank-one-adjoint",
        Generator::Outer { left: Gen1::constant(C64::ONE), right: Gen1::delta(0, C64::ONE) },
        Verdict::NonMember,
        Verdict::Member,
        &mut inconclusive,
    )?);

    // the doubling diagonal must be rejected as Wild, not given a verdict
    let wild = GradedElement::from_generator(
        trunc,
        Generator::Diagonal(Gen1::exponential(-std::f64::consts::LN_2, C64::ONE)),
    )?;
    let rejected = is_left_moyal(&wild, &model, ladder, &probes).is_err();
    cases.push(CuratedCase {
        name: "diag-doubling".to_string(),
        expected_left: None,
        expected_right: None,
        rejected_wild: rejected,
        left: None,
        right: None,
        pass: rejected,
    });

    let all_pass = cases.iter().all(|c| c.pass) && inconclusive == 0;
    Ok(CuratedSuiteReport {
        dim: d,
        ladder: ladder.to_vec(),
        cases,
        inconclusive_count: inconclusive,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LADDER: [usize; 3] = [8, 16, 32];

    #[test]
    fn curated_suite_is_clean() {
        let report = curated_membership_suite(12, &LADDER).unwrap();
        assert!(report.all_pass, "{report:#?}");
        assert_eq!(report.inconclusive_count, 0);
    }

    #[test]
    fn pointwise_polynomial_is_two_sided_member() {
        let model = AlgebraModel::pointwise(16).unwrap();
        let f = GradedElement::from_generator(
            vec![16],
            Generator::Sequence(Gen1::power_law(5.0, C64::ONE)),
        )
        .unwrap();
        let v = is_bi_moyal(&f, &model, &LADDER, &default_probes(&model)).unwrap();
        assert_eq!(v.verdict, Verdict::Member);
    }

    #[test]
    fn wild_pointwise_rejected() {
        let model = AlgebraModel::pointwise(16).unwrap();
        let f = GradedElement::from_generator(
            vec![16],
            Generator::Sequence(Gen1::exponential(-std::f64::consts::LN_2, C64::ONE)),
        )
        .unwrap();
        assert!(is_right_moyal(&f, &model, &LADDER, &default_probes(&model)).is_err());
    }

    #[test]
    fn bounded_element_examples() {
        // pointwise (1+m)^{-1}: multiplication operator of norm 1
        let model = AlgebraModel::pointwise(32).unwrap();
        let f = GradedElement::from_generator(
            vec![32],
            Generator::Sequence(Gen1::power_law(-1.0, C64::ONE)),
        )
        .unwrap();
        let v = is_bounded_element(&f, &model, &LADDER).unwrap();
        assert_eq!(v.verdict, Verdict::Member);
        assert!((v.constant.unwrap() - 1.0).abs() < 1e-12);

        // matrix E_00: a projection, norm 1
        let model = AlgebraModel::matrix(8).unwrap();
        let e00 = GradedElement::from_generator(
            vec![8, 8],
            Generator::Outer { left: Gen1::delta(0, C64::ONE), right: Gen1::delta(0, C64::ONE) },
        )
        .unwrap();
        let v = is_bounded_element(&e00, &model, &LADDER).unwrap();
        assert_eq!(v.verdict, Verdict::Member);
        assert!((v.constant.unwrap() - 1.0).abs() < 1e-12);

        // (1+m)^{-1/4} is not square-summable: rejected before any estimate
        let model = AlgebraModel::pointwise(32).unwrap();
        let f = GradedElement::from_generator(
            vec![32],
            Generator::Sequence(Gen1::power_law(-0.25, C64::ONE)),
        )
        .unwrap();
        assert!(is_bounded_element(&f, &model, &LADDER).is_err());
    }

    #[test]
    fn diagonal_slow_decay_is_square_summable_and_bounded() {
        // diag((1+m)^{-0.6}) is HS-summable through the diagonal structure
        let model = AlgebraModel::matrix(16).unwrap();
        let f = GradedElement::from_generator(
            vec![16, 16],
            Generator::Diagonal(Gen1::power_law(-0.6, C64::ONE)),
        )
        .unwrap();
        let cls = crate::graded::classify(&f, &[16]).unwrap();
        assert_eq!(cls.class, Class::SquareSummable);
        let v = is_bounded_element(&f, &model, &LADDER).unwrap();
        assert_eq!(v.verdict, Verdict::Member);
        assert!((v.constant.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_matches_closed_form() {
        let model = AlgebraModel::pointwise(24).unwrap();
        let f = GradedElement::from_coeffs(
            vec![24],
            (0..24).map(|m| C64::new(1.0 / (1.0 + m as f64), 0.0)).collect(),
        )
        .unwrap()
        .with_envelope(crate::graded::EnvelopeClass::new(vec![-1.0], 0.0, 1.0).unwrap())
        .unwrap();
        let norm = operator_norm(&model, &f).unwrap();
        assert!((norm - 1.0).abs() < 1e-9, "power iteration gave {norm}");
    }

    #[test]
    fn trace_examples() {
        let model = AlgebraModel::matrix(8).unwrap();
        let e00 = GradedElement::from_generator(
            vec![8, 8],
            Generator::Outer { left: Gen1::delta(0, C64::ONE), right: Gen1::delta(0, C64::ONE) },
        )
        .unwrap();
        let cert = is_bounded_element(&e00, &model, &LADDER).unwrap();
        let t = trace_tau_l(&e00, &e00, &model, &cert, &cert).unwrap();
        assert!((t - C64::ONE).norm() < 1e-12);

        // zero second factor
        let zero = GradedElement::from_generator(
            vec![8, 8],
            Generator::Diagonal(Gen1::constant(C64::ZERO)),
        )
        .unwrap();
        let zcert = is_bounded_element(&zero, &model, &LADDER).unwrap();
        let t = trace_tau_l(&e00, &zero, &model, &cert, &zcert).unwrap();
        assert_eq!(t, C64::ZERO);

        // pointwise geometric: sum e^{-2m} = 1/(1-e^{-2}) at large truncation
        let model = AlgebraModel::pointwise(40).unwrap();
        let f = GradedElement::from_generator(
            vec![40],
            Generator::Sequence(Gen1::exponential(1.0, C64::ONE)),
        )
        .unwrap();
        let cert = is_bounded_element(&f, &model, &LADDER).unwrap();
        let t = trace_tau_l(&f, &f, &model, &cert, &cert).unwrap();
        let closed = 1.0 / (1.0 - (-2.0f64).exp());
        assert!((t.re - closed).abs() < 1e-14, "{} vs {closed}", t.re);
    }

    #[test]
    fn trace_rejects_uncertified() {
        let model = AlgebraModel::matrix(4).unwrap();
        let f = GradedElement::from_generator(
            vec![4, 4],
            Generator::Diagonal(Gen1::constant(C64::ONE)),
        )
        .unwrap();
        let bad = BoundedVerdict { verdict: Verdict::Inconclusive, constant: None, norms: vec![] };
        assert!(trace_tau_l(&f, &f, &model, &bad, &bad).is_err());
    }
}
