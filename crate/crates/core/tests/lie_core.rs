use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reltwist_core::lie::{AlgElement, LeviDecomposition, LieAlgebra, Subdiagram};
use reltwist_core::{Error, Rat};

const TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "C3", "D4", "G2", "A1xB2"];

fn alg(t: &str) -> LieAlgebra {
    LieAlgebra::from_str_type(t).unwrap()
}

#[test]
fn dimensions_and_unsupported_data() {
    for (t, dim) in [("A1", 3), ("A2", 8), ("A3", 15), ("B2", 10), ("C3", 21), ("D4", 28), ("G2", 14), ("A1xB2", 13)] {
        assert_eq!(alg(t).dim(), dim, "{t}");
    }
    for bad in ["Z9", "A0", "", "D2", "G3"] {
        assert!(matches!(LieAlgebra::from_str_type(bad), Err(Error::UnsupportedCartan(_))), "{bad}");
    }
}

#[test]
fn exhaustive_structure_checks() {
    for t in TYPES {
        let g = alg(t);
        let n = g.dim();
        let b = AlgElement::basis;
        for x in 0..n {
            for y in 0..n {
                assert_eq!(g.bracket(&b(x), &b(y)), g.bracket(&b(y), &b(x)).neg());
                assert_eq!(g.form(&b(x), &b(y)), g.form(&b(y), &b(x)));
                for z in 0..n {
                    let jac = g
                        .bracket(&b(x), &g.bracket(&b(y), &b(z)))
                        .add(&g.bracket(&b(y), &g.bracket(&b(z), &b(x))))
                        .add(&g.bracket(&b(z), &g.bracket(&b(x), &b(y))));
                    assert!(jac.is_zero(), "{t}: Jacobi at {x},{y},{z}");
                    let inv = g.form(&g.bracket(&b(x), &b(y)), &b(z)) + g.form(&b(y), &g.bracket(&b(x), &b(z)));
                    assert!(inv.is_zero(), "{t}: form invariance at {x},{y},{z}");
                }
            }
        }
        for r in 0..g.n_pos() {
            let (e, f) = (b(g.e_index(r)), b(g.f_index(r)));
            assert_eq!(g.form(&e, &f), Rat::from_int(2) / g.root_norm(r));
        }
    }
}

#[test]
fn long_roots_have_norm_two() {
    let g = alg("B2");
    let norms: Vec<Rat> = (0..g.n_pos()).map(|r| g.root_norm(r)).collect();
    assert!(norms.contains(&Rat::from_int(2)) && norms.contains(&Rat::one()));
    assert!(norms.iter().all(|x| *x <= Rat::from_int(2)));
    let g2 = alg("G2");
    let max = (0..g2.n_pos()).map(|r| g2.root_norm(r)).max().unwrap();
    assert_eq!(max, Rat::from_int(2));
}

#[test]
fn levi_pieces_for_every_subdiagram() {
    for t in ["A2", "A3", "B2", "G2"] {
        let g = alg(t);
        for mask in 0..(1u32 << g.rank) {
            let d = Subdiagram((0..g.rank).filter(|i| mask & (1 << i) != 0).collect());
            let l = LeviDecomposition::new(&g, &d).unwrap();
            let gd_roots = l.gd_basis.iter().filter(|&&i| !g.is_cartan(i)).count();
            assert_eq!(gd_roots + l.nplus_basis.len() + l.nminus_basis.len(), 2 * g.n_pos());
            assert_eq!(l.nplus_basis.len(), l.nminus_basis.len());
            assert_eq!(l.dim_cd(), g.rank - d.len());
            for &x in &l.gd_basis {
                for &y in &l.nplus_basis {
                    let br = g.bracket(&AlgElement::basis(x), &AlgElement::basis(y));
                    assert!((0..g.dim()).all(|i| br.coeff(i).is_zero() || l.nplus_basis.contains(&i)));
                }
            }
        }
    }
    let g = alg("A2");
    assert_eq!(LeviDecomposition::new(&g, &Subdiagram(vec![5])).unwrap_err(), Error::NodeOutOfRange(6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn theta_is_an_involutive_automorphism(seed in any::<u64>(), ti in 0usize..TYPES.len()) {
        let g = alg(TYPES[ti]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng, 4);
        let y = g.random_element(&mut rng, 4);
        prop_assert_eq!(g.theta(&g.theta(&x)), x.clone());
        prop_assert_eq!(g.theta(&g.bracket(&x, &y)), g.bracket(&g.theta(&x), &g.theta(&y)));
        prop_assert_eq!(g.form(&g.theta(&x), &g.theta(&y)), g.form(&x, &y));
        prop_assert!(g.bracket(&x, &x).is_zero());
    }

    #[test]
    fn levi_projections_partition(seed in any::<u64>(), mask in 0u32..8) {
        let g = alg("A3");
        let d = Subdiagram((0..3).filter(|i| mask & (1 << i) != 0).collect());
        let l = LeviDecomposition::new(&g, &d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng, 4);
        let parts: Vec<AlgElement> =
            [&l.p_plus, &l.p_minus, &l.p_zero, &l.p_d].iter().map(|p| LeviDecomposition::apply(p, &x)).collect();
        let sum = parts.iter().fold(AlgElement::zero(), |a, b| a.add(b));
        prop_assert_eq!(sum, x.clone());
        for (i, p) in [&l.p_plus, &l.p_minus, &l.p_zero, &l.p_d].iter().enumerate() {
            prop_assert_eq!(LeviDecomposition::apply(p, &parts[i]), parts[i].clone());
            for (j, q) in parts.iter().enumerate() {
                if i != j {
                    prop_assert!(LeviDecomposition::apply(p, q).is_zero());
                }
            }
        }
    }
}
