use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reltwist_core::lie::{AlgElement, LeviDecomposition, LieAlgebra, Subdiagram};
use reltwist_core::tensor::invariants::monomials;
use reltwist_core::tensor::json::{tensor_from_json, tensor_to_json, to_canonical_string};
use reltwist_core::tensor::{
    hc_project, invariant_subspace_basis, solve_hochschild_coboundary, Enveloping, Group,
    HcVariant, PivotOrder, SlotMono, TensorElement, TensorMono,
};
use reltwist_core::Rat;

fn env(t: &str) -> Enveloping {
    Enveloping::new(Arc::new(LieAlgebra::from_str_type(t).unwrap()))
}

fn levi(u: &Enveloping, d: &str) -> LeviDecomposition {
    LeviDecomposition::new(&u.alg, &Subdiagram::parse(d, u.alg.rank).unwrap()).unwrap()
}

fn gen(k: usize, s: usize, b: usize) -> TensorElement {
    TensorElement::lie(k, s, &AlgElement::basis(b))
}

fn mono(slots: &[&[(usize, u32)]]) -> TensorMono {
    TensorMono(slots.iter().map(|s| SlotMono::from_exps(s)).collect())
}

/// Random element supported on monomials of degree ≤ `deg` satisfying `keep`.
fn random_element(
    u: &Enveloping,
    k: usize,
    deg: u32,
    terms: usize,
    rng: &mut ChaCha8Rng,
    keep: impl Fn(&[i64]) -> bool,
) -> TensorElement {
    use rand::Rng;
    let pool = monomials(&u.alg, k, deg, keep);
    let mut t = TensorElement::zero(k);
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        t.add_term(m, Rat::new(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    t
}

#[test]
fn sl2_product_examples() {
    let u = env("A1");
    let (f, h, e) = (0, 1, 2);
    // (e⊗1)(f⊗1) = (fe + h)⊗1
    let lhs = u.mul(&gen(2, 0, e), &gen(2, 0, f));
    let fe = TensorElement::from_mono(mono(&[&[(f, 1), (e, 1)], &[]]), Rat::one());
    assert_eq!(lhs, fe.add(&gen(2, 0, h)));
    // d_H(ef) = 1⊗ef - Δ(ef) + ef⊗1 = -(e⊗f + f⊗e)
    let ef = u.normal_form(1, &[(0, e), (0, f)]);
    let expected = gen(1, 0, e)
        .otimes(&gen(1, 0, f))
        .add(&gen(1, 0, f).otimes(&gen(1, 0, e)))
        .neg();
    assert_eq!(ef.hochschild_d(), expected);
}

#[test]
fn hc_examples() {
    let u = env("A1");
    let l = levi(&u, "");
    let ef = u.normal_form(1, &[(0, 2), (0, 0)]);
    assert_eq!(
        hc_project(&u.alg, &l, &ef, HcVariant::Pi).unwrap(),
        gen(1, 0, 1)
    );
    assert!(hc_project(&u.alg, &l, &gen(1, 0, 2), HcVariant::Pi).is_err());

    // π̄²(Ω) = Ω_D for A2, D = {1}
    let u = env("A2");
    let l = levi(&u, "1");
    let g = &u.alg;
    let om = u.casimir(2, 0, 1);
    let r1 = g.simple_root_index(0);
    let (e1, f1, h1) = (g.e_index(r1), g.f_index(r1), g.h_index(0));
    let mut om_d = gen(1, 0, e1).otimes(&gen(1, 0, f1));
    om_d.add_assign(&gen(1, 0, f1).otimes(&gen(1, 0, e1)));
    om_d.axpy_assign(&Rat::new(1, 2), &gen(1, 0, h1).otimes(&gen(1, 0, h1)));
    assert_eq!(hc_project(g, &l, &om, HcVariant::PiBar).unwrap(), om_d);
    // identity on U(l_D)^{⊗2}
    let h2 = g.h_index(1);
    let x = u.normal_form(2, &[(0, f1), (0, h2), (1, e1), (1, h1)]);
    assert_eq!(hc_project(g, &l, &x, HcVariant::Pi).unwrap(), x);
}

#[test]
fn invariant_basis_examples() {
    let u = env("A1");
    let l = levi(&u, "");
    let b = invariant_subspace_basis(&u, &l, 1, 2, Group::Ld);
    assert_eq!(b.len(), 4);
    let l1 = levi(&u, "1");
    let b = invariant_subspace_basis(&u, &l1, 2, 1, Group::G);
    assert_eq!(b, vec![TensorElement::one(2)]);

    let u = env("A2");
    for d in ["", "1", "2"] {
        let l = levi(&u, d);
        let ld = invariant_subspace_basis(&u, &l, 2, 2, Group::Ld);
        let cd = invariant_subspace_basis(&u, &l, 2, 2, Group::Cd);
        assert!(ld.len() <= cd.len());
        for x in &ld {
            for &b in &l.ld_basis {
                assert!(u.adjoint(&AlgElement::basis(b), x).is_zero());
            }
        }
    }
}

#[test]
fn hochschild_solve_round_trip() {
    let u = env("A1");
    let l = levi(&u, "");
    let (g0, _) =
        solve_hochschild_coboundary(&u, &l, &TensorElement::zero(2), 2, PivotOrder::GradedLex)
            .unwrap();
    assert!(g0.is_zero());
    let ef = u.normal_form(1, &[(0, 2), (0, 0)]);
    let xi = ef.hochschild_d();
    for order in [PivotOrder::GradedLex, PivotOrder::Reverse] {
        let (g, _) = solve_hochschild_coboundary(&u, &l, &xi, 2, order).unwrap();
        assert_eq!(g.hochschild_d(), xi);
    }
    // e⊗f - f⊗e is alternating, hence not a coboundary
    let r = gen(1, 0, 2)
        .otimes(&gen(1, 0, 0))
        .sub(&gen(1, 0, 0).otimes(&gen(1, 0, 2)));
    assert!(solve_hochschild_coboundary(&u, &l, &r, 4, PivotOrder::GradedLex).is_err());
}

#[test]
fn theta_examples() {
    let u = env("A1");
    let (f, e) = (0, 2);
    let ef = gen(1, 0, e).otimes(&gen(1, 0, f));
    assert_eq!(u.theta(&ef), gen(1, 0, f).otimes(&gen(1, 0, e)));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let u = env("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_element(&u, 2, 3, 12, &mut rng, |_| true);
    let v = tensor_to_json(&a, u.dim());
    let s = to_canonical_string(&v);
    let back = tensor_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(back, a);
    assert_eq!(to_canonical_string(&tensor_to_json(&back, u.dim())), s);
}

#[test]
fn face_and_hochschild_commute_with_projections() {
    let u = env("A2");
    let l = levi(&u, "1");
    let g = &*u.alg;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..30 {
        let k = 1 + trial % 3;
        let x = random_element(&u, k, 3, 6, &mut rng, |w| l.cd_weight_is_zero(w));
        for variant in [HcVariant::Pi, HcVariant::PiBar] {
            let px = hc_project(g, &l, &x, variant).unwrap();
            for i in 0..k {
                let lhs = px.coproduct_at(i).unwrap();
                let rhs = hc_project(g, &l, &x.coproduct_at(i).unwrap(), variant).unwrap();
                assert_eq!(lhs, rhs);
            }
            let lhs = px.hochschild_d();
            let rhs = hc_project(g, &l, &x.hochschild_d(), variant).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_associative(seed in any::<u64>()) {
        let u = env("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&u, 2, 2, 3, &mut rng, |_| true);
        let b = random_element(&u, 2, 2, 3, &mut rng, |_| true);
        let c = random_element(&u, 2, 2, 3, &mut rng, |_| true);
        prop_assert_eq!(u.mul(&u.mul(&a, &b), &c), u.mul(&a, &u.mul(&b, &c)));
        prop_assert_eq!(u.mul(&a, &TensorElement::one(2)), a);
    }

    #[test]
    fn coproduct_is_an_algebra_map(seed in any::<u64>()) {
        let u = env("A1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&u, 1, 3, 3, &mut rng, |_| true);
        let b = random_element(&u, 1, 3, 3, &mut rng, |_| true);
        let lhs = u.mul(&a, &b).coproduct_at(0).unwrap();
        let rhs = u.mul(&a.coproduct_at(0).unwrap(), &b.coproduct_at(0).unwrap());
        prop_assert_eq!(lhs, rhs);
        let d = a.coproduct_at(0).unwrap();
        prop_assert_eq!(d.coproduct_at(0).unwrap(), d.coproduct_at(1).unwrap());
    }

    #[test]
    fn dh_squares_to_zero_and_alt_kills_coboundaries(seed in any::<u64>()) {
        let u = env("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 1..=2 {
            let a = random_element(&u, k, 3, 4, &mut rng, |_| true);
            prop_assert!(a.hochschild_d().hochschild_d().is_zero());
        }
        let g2 = random_element(&u, 2, 3, 4, &mut rng, |_| true);
        prop_assert!(g2.hochschild_d().alt().is_zero());
    }

    #[test]
    fn adjoint_is_a_derivation(seed in any::<u64>()) {
        let u = env("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = u.alg.random_element(&mut rng, 3);
        let a = random_element(&u, 2, 2, 3, &mut rng, |_| true);
        let b = random_element(&u, 2, 2, 3, &mut rng, |_| true);
        let lhs = u.adjoint(&x, &u.mul(&a, &b));
        let rhs = u.mul(&u.adjoint(&x, &a), &b).add(&u.mul(&a, &u.adjoint(&x, &b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.adjoint(&x, &u.casimir(2, 0, 1)).is_zero());
    }

    #[test]
    fn hc_is_multiplicative_on_cd_invariants(seed in any::<u64>()) {
        let u = env("A2");
        let l = levi(&u, "1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&u, 2, 2, 3, &mut rng, |w| l.cd_weight_is_zero(w));
        let b = random_element(&u, 2, 2, 3, &mut rng, |w| l.cd_weight_is_zero(w));
        for v in [HcVariant::Pi, HcVariant::PiBar] {
            let lhs = hc_project(&u.alg, &l, &u.mul(&a, &b), v).unwrap();
            let rhs = u.mul(&hc_project(&u.alg, &l, &a, v).unwrap(), &hc_project(&u.alg, &l, &b, v).unwrap());
            prop_assert_eq!(lhs, rhs);
            let swapped = hc_project(&u.alg, &l, &a.permute(&[1, 0]), v).unwrap();
            prop_assert_eq!(swapped, hc_project(&u.alg, &l, &a, v).unwrap().permute(&[1, 0]));
        }
    }
}
