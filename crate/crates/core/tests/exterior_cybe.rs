use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reltwist_core::ext::cohomology::{
    gd_invariants, gd_self_invariants, in_wedge_ld, operator_kernel,
};
use reltwist_core::ext::element::basis_tuples;
use reltwist_core::ext::json::{ext_from_json, ext_to_json};
use reltwist_core::ext::schouten::{decomposable, omega_commutator};
use reltwist_core::ext::solve::ld_invariant_wedges;
use reltwist_core::ext::{
    ad_ext, cohomology_dims, contract, ext_mul, levi_r, predicted_dims, relative_r, schouten,
    solve_schouten_coboundary, standard_r, yb_map, ExtElement, PerturbedDifferential, StarAlgebra,
};
use reltwist_core::lie::{AlgElement, LeviDecomposition, LieAlgebra, Subdiagram};
use reltwist_core::tensor::{hc_project, Enveloping, HcVariant};
use reltwist_core::{Error, Rat};

fn alg(t: &str) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::from_str_type(t).unwrap())
}

fn levi(g: &LieAlgebra, d: &str) -> LeviDecomposition {
    LeviDecomposition::new(g, &Subdiagram::parse(d, g.rank).unwrap()).unwrap()
}

fn all_subdiagrams(rank: usize) -> Vec<String> {
    (0..1u32 << rank)
        .map(|m| {
            (0..rank)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect()
}

fn random_ext(g: &LieAlgebra, k: usize, terms: usize, rng: &mut ChaCha8Rng) -> ExtElement {
    let tuples = basis_tuples(g.dim(), k);
    let mut out = ExtElement::zero(k);
    for _ in 0..terms {
        let t = tuples[rng.gen_range(0..tuples.len())].clone();
        out.add_term(t, Rat::new(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    out
}

fn basis_el(t: &[u8]) -> ExtElement {
    ExtElement::basis(&t.iter().map(|&b| b as usize).collect::<Vec<_>>())
}

#[test]
fn mcybe_for_standard_r() {
    for t in ["A1", "A2", "B2", "G2"] {
        let u = Enveloping::new(alg(t));
        let r = standard_r(&u.alg);
        let lhs = yb_map(&u, &r, &r);
        let rhs = omega_commutator(&u).scale(&Rat::new(1, 2));
        assert_eq!(lhs, rhs, "{t}");
    }
}

#[test]
fn yb_is_three_halves_schouten_and_six_alt() {
    let u = Enveloping::new(alg("A2"));
    let g = &*u.alg;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(yb_map(&u, &ExtElement::zero(2), &standard_r(g)).is_zero());
    for _ in 0..10 {
        let xs: Vec<AlgElement> = (0..4).map(|_| g.random_element(&mut rng, 2)).collect();
        let r = decomposable(&xs[..2]);
        let s = decomposable(&xs[2..]);
        let yb = yb_map(&u, &r, &s);
        assert_eq!(yb, schouten(g, &r, &s).embed().scale(&Rat::new(3, 2)));
        let six_alt = u
            .commutator(&r.embed().at(&[1, 2], 3), &s.embed().at(&[1, 3], 3))
            .alt()
            .scale(&Rat::from_int(6));
        assert_eq!(yb, six_alt);
    }
}

#[test]
fn sl2_schouten_square() {
    let u = Enveloping::new(alg("A1"));
    let r = standard_r(&u.alg);
    let sq = schouten(&u.alg, &r, &r);
    assert_eq!(sq.embed(), omega_commutator(&u).scale(&Rat::new(1, 3)));
}

#[test]
fn relative_r_examples() {
    let g = alg("A2");
    assert!(relative_r(&g, &levi(&g, "1,2")).is_zero());
    let l = levi(&g, "1");
    let f = relative_r(&g, &l);
    for &b in &l.ld_basis {
        assert!(ad_ext(&g, &AlgElement::basis(b), &f).is_zero());
    }
    for d in all_subdiagrams(2) {
        let l = levi(&g, &d);
        let (rg, rd, f) = (standard_r(&g), levi_r(&g, &l), relative_r(&g, &l));
        assert_eq!(
            schouten(&g, &f, &f),
            schouten(&g, &rg, &rg).sub(&schouten(&g, &rd, &rd)),
            "D={d}"
        );
        let pb = hc_project(&g, &l, &rg.embed(), HcVariant::PiBar).unwrap();
        assert_eq!(pb, rd.embed());
    }
}

#[test]
fn star_bracket_examples_and_jacobi() {
    let g = alg("A2");
    let l = levi(&g, "1");
    let s = StarAlgebra::new(&g, &l);
    let x0 = l.cd_basis[0].clone();
    for &p in &l.nplus_basis {
        let yp = AlgElement::basis(p);
        assert_eq!(
            s.bracket(&x0, &yp),
            g.bracket(&x0, &yp).scale(&Rat::new(1, 2))
        );
    }
    for &a in &l.nminus_basis {
        for &b in &l.nminus_basis {
            assert_eq!(*s.bracket_basis(a, b), g.bracket_basis(a, b).neg());
        }
    }
    for d in all_subdiagrams(2) {
        let l = levi(&g, &d);
        let s = StarAlgebra::new(&g, &l);
        let dim = g.dim();
        for a in 0..dim {
            for b in 0..dim {
                assert_eq!(*s.bracket_basis(a, b), s.bracket_basis(b, a).neg());
                for c in 0..dim {
                    let x = |i: usize| AlgElement::basis(i);
                    let j = s
                        .bracket(&x(a), s.bracket_basis(b, c))
                        .add(&s.bracket(&x(b), s.bracket_basis(c, a)))
                        .add(&s.bracket(&x(c), s.bracket_basis(a, b)));
                    assert!(j.is_zero(), "Jacobi D={d}");
                }
            }
        }
    }
}

#[test]
fn ce_differential_transpose_and_square() {
    let g = alg("A1");
    let l = levi(&g, "");
    let s = StarAlgebra::new(&g, &l);
    let dim = g.dim();
    assert!(s.ce_differential(&ExtElement::one()).is_zero());
    for x in 0..dim {
        let dx = s.ce_differential(&ExtElement::basis(&[x]));
        for u in 0..dim {
            for v in 0..dim {
                // ⟨a∧b, u∧v⟩ = (a,u)(b,v) − (a,v)(b,u)
                let mut pairing = Rat::zero();
                for (idx, c) in &dx.terms {
                    let (a, b) = (idx[0] as usize, idx[1] as usize);
                    let det = g.form_basis(a, u) * g.form_basis(b, v)
                        - g.form_basis(a, v) * g.form_basis(b, u);
                    pairing += &(c * &det);
                }
                let expected = g.form(&AlgElement::basis(x), s.bracket_basis(u, v));
                assert_eq!(pairing, expected);
            }
        }
    }
    let g = alg("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in all_subdiagrams(2) {
        let l = levi(&g, &d);
        let s = StarAlgebra::new(&g, &l);
        for k in 0..=3 {
            let a = random_ext(&g, k, 4, &mut rng);
            assert!(s.ce_differential(&s.ce_differential(&a)).is_zero());
        }
    }
}

#[test]
fn cartan_formula_for_coadjoint() {
    let g = alg("A2");
    let l = levi(&g, "2");
    let s = StarAlgebra::new(&g, &l);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let x = g.random_element(&mut rng, 2);
        for k in 1..=3 {
            let a = random_ext(&g, k, 3, &mut rng);
            let lhs = s.ce_differential(&contract(&g, &x, &a)).add(&contract(
                &g,
                &x,
                &s.ce_differential(&a),
            ));
            assert_eq!(lhs, s.coadjoint(&x, &a));
        }
    }
}

#[test]
fn perturbed_differential_matches_ce_model() {
    let g = alg("A2");
    for d in all_subdiagrams(2) {
        let l = levi(&g, &d);
        let s = StarAlgebra::new(&g, &l);
        let pd = PerturbedDifferential::new(&g, &l);
        for k in 0..=2 {
            for t in basis_tuples(g.dim(), k) {
                let a = basis_el(&t);
                assert_eq!(pd.apply(&a), s.ce_model(&a), "D={d} {t:?}");
            }
        }
    }
}

#[test]
fn perturbed_differential_on_invariants() {
    let g = alg("A2");
    let l = levi(&g, "1");
    let pd = PerturbedDifferential::new(&g, &l);
    let rg = standard_r(&g);
    for k in 0..=3 {
        for a in gd_invariants(&g, &l, k) {
            let da = pd.apply(&a);
            assert!(pd.apply(&da).is_zero());
            assert_eq!(da, schouten(&g, &rg, &a));
            if in_wedge_ld(&l, &a)
                && a.terms
                    .keys()
                    .all(|i| ExtElement::weight_of(&g, i).iter().all(|&w| w == 0))
            {
                assert!(da.is_zero());
            }
        }
    }
}

#[test]
fn homotopy_identity_and_casimir_kernel() {
    let g = alg("A2");
    for d in ["", "1", "2"] {
        let l = levi(&g, d);
        let s = StarAlgebra::new(&g, &l);
        let pd = PerturbedDifferential::new(&g, &l);
        let two = Rat::from_int(2);
        for k in 0..=3 {
            for t in basis_tuples(g.dim(), k) {
                let a = basis_el(&t);
                let dh = pd.apply(&s.homotopy(&a));
                let hd = s.homotopy(&pd.apply(&a));
                assert_eq!(dh.add(&hd), s.casimir(&a).scale(&two), "D={d} {t:?}");
                let pk = s.perturbation(&a);
                assert!(s
                    .homotopy(&pk)
                    .add(&s.perturbation(&s.homotopy(&a)))
                    .is_zero());
            }
            let ker = operator_kernel(g.dim(), k, |a| s.casimir(a));
            assert!(ker.iter().all(|v| in_wedge_ld(&l, v)));
            let ld = l.ld_basis.len();
            assert_eq!(ker.len(), basis_tuples(ld, k).len());
        }
    }
    let l = levi(&g, "1,2");
    let s = StarAlgebra::new(&g, &l);
    let a = basis_el(&[0, 3]);
    assert!(s.homotopy(&a).is_zero() && s.casimir(&a).is_zero());
}

#[test]
fn cohomology_tables() {
    let g = alg("A1");
    let dims: Vec<usize> = cohomology_dims(&g, &levi(&g, ""), 3)
        .into_iter()
        .map(|x| x.1)
        .collect();
    assert_eq!(dims, vec![1, 1, 0, 0]);
    let g = alg("A2");
    let dims: Vec<usize> = cohomology_dims(&g, &levi(&g, "1"), 3)
        .into_iter()
        .map(|x| x.1)
        .collect();
    assert_eq!(&dims[1..], &[1, 0, 1]);
    let dims: Vec<usize> = cohomology_dims(&g, &levi(&g, "1,2"), 3)
        .into_iter()
        .map(|x| x.1)
        .collect();
    assert_eq!(dims, vec![1, 0, 0, 1]);
    for d in all_subdiagrams(2) {
        let l = levi(&g, &d);
        let c = l.dim_cd();
        let expected = [
            1,
            c,
            c * (c.saturating_sub(1)) / 2,
            binom3(c) + gd_self_invariants(&g, &l, 3).len(),
        ];
        let got: Vec<usize> = cohomology_dims(&g, &l, 3)
            .into_iter()
            .map(|x| x.1)
            .collect();
        assert_eq!(got, expected, "D={d}");
        let pred: Vec<usize> = predicted_dims(&g, &l, 3).into_iter().map(|x| x.1).collect();
        assert_eq!(got, pred, "D={d}");
    }
}

fn binom3(c: usize) -> usize {
    if c < 3 {
        0
    } else {
        c * (c - 1) * (c - 2) / 6
    }
}

#[test]
fn simple_lemma() {
    let g = alg("A2");
    let l = levi(&g, "1");
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let inv: Vec<ExtElement> = (0..=3).flat_map(|k| gd_invariants(&g, &l, k)).collect();
    for _ in 0..20 {
        let k = rng.gen_range(1..=3);
        let xs: Vec<AlgElement> = (0..k)
            .map(|_| {
                let mut x = AlgElement::zero();
                for &b in &l.gd_basis {
                    x = x.axpy(&Rat::from_int(rng.gen_range(-2..=2)), &AlgElement::basis(b));
                }
                x
            })
            .collect();
        let x = decomposable(&xs);
        let y = &inv[rng.gen_range(0..inv.len())];
        assert!(schouten(&g, &x, y).is_zero());
    }
}

#[test]
fn schouten_solve() {
    let g = alg("A2");
    let l = levi(&g, "1");
    let f = relative_r(&g, &l);
    assert!(
        solve_schouten_coboundary(&g, &l, &f, &ExtElement::zero(3), false)
            .unwrap()
            .is_zero()
    );
    let basis = ld_invariant_wedges(&g, &l, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let mut chi0 = ExtElement::zero(2);
        for b in &basis {
            chi0.axpy_assign(&Rat::from_int(rng.gen_range(-3..=3)), b);
        }
        let xi = schouten(&g, &f, &chi0);
        let chi = solve_schouten_coboundary(&g, &l, &f, &xi, false).unwrap();
        assert_eq!(schouten(&g, &f, &chi), xi);
    }
    let class = gd_self_invariants(&g, &l, 3);
    assert_eq!(class.len(), 1);
    assert!(matches!(
        solve_schouten_coboundary(&g, &l, &f, &class[0], false),
        Err(Error::Obstruction(_))
    ));
}

#[test]
fn ext_json_round_trip() {
    let g = alg("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_ext(&g, 3, 6, &mut rng);
    let v = ext_to_json(&a);
    assert_eq!(ext_from_json(&v).unwrap(), a);
    let bad = serde_json::json!({"deg": 2, "terms": [{"coef": "1", "idx": [3, 1]}]});
    assert!(ext_from_json(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schouten_graded_antisymmetry_and_jacobi(seed in any::<u64>()) {
        let g = alg("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q, r) = (rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(1..=2));
        let a = random_ext(&g, p, 3, &mut rng);
        let b = random_ext(&g, q, 3, &mut rng);
        let c = random_ext(&g, r, 3, &mut rng);
        // ⟦a,b⟧ = −(−1)^{(p−1)(q−1)} ⟦b,a⟧
        let lhs = schouten(&g, &a, &b);
        let s = if ((p - 1) * (q - 1)) % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(lhs, schouten(&g, &b, &a).scale(&Rat::from_int(s)));
        // (−1)^{(p−1)(r−1)}⟦a,⟦b,c⟧⟧ + cyclic = 0
        let sg = |x: usize, y: usize| Rat::from_int(if ((x - 1) * (y - 1)) % 2 == 0 { 1 } else { -1 });
        let j = schouten(&g, &a, &schouten(&g, &b, &c)).scale(&sg(p, r))
            .add(&schouten(&g, &b, &schouten(&g, &c, &a)).scale(&sg(q, p)))
            .add(&schouten(&g, &c, &schouten(&g, &a, &b)).scale(&sg(r, q)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn schouten_derivation_and_ad(seed in any::<u64>()) {
        let g = alg("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q, r) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(0..=2));
        let x = random_ext(&g, p, 3, &mut rng);
        let y = random_ext(&g, q, 3, &mut rng);
        let z = random_ext(&g, r, 2, &mut rng);
        // ⟦X, Y∧Z⟧ = ⟦X,Y⟧∧Z + (−1)^{(p−1)q} Y∧⟦X,Z⟧
        let s = Rat::from_int(if ((p - 1) * q) % 2 == 0 { 1 } else { -1 });
        let lhs = schouten(&g, &x, &y.wedge(&z));
        let rhs = schouten(&g, &x, &y).wedge(&z).add(&y.wedge(&schouten(&g, &x, &z)).scale(&s));
        prop_assert_eq!(lhs, rhs);
        let v = g.random_element(&mut rng, 2);
        prop_assert_eq!(schouten(&g, &x, &ExtElement::from_lie(&v)), ad_ext(&g, &v, &x).neg());
        // ι(v) e(v) + e(v) ι(v) = (v, v)
        let anti = contract(&g, &v, &ext_mul(&v, &x)).add(&ext_mul(&v, &contract(&g, &v, &x)));
        prop_assert_eq!(anti, x.scale(&g.form(&v, &v)));
        prop_assert_eq!(x.embed().alt(), x.embed());
    }
}
