//! Identity suites over a fixed `(g, D)`. Every check reports the number of
//! cases tried, the total residual term count and the first failing case.

use rand::Rng;
use serde::Serialize;

use crate::ext::cohomology::{gd_invariants, gd_self_invariants, in_wedge_ld, operator_kernel};
use crate::ext::element::basis_tuples;
use crate::ext::schouten::{decomposable, levi_r, omega_commutator, relative_r, schouten, standard_r, yb_map};
use crate::ext::{cohomology_dims, predicted_dims, ExtElement, PerturbedDifferential, StarAlgebra};
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra};
use crate::rational::Rat;
use crate::tensor::invariants::monomials;
use crate::tensor::{hc_project, invariant_subspace_basis, Enveloping, Group, HcVariant, TensorElement};
use crate::twist::lemmas::{
    alt_alt_residual, alt_schouten_residual, coproduct_split, insertion_residual, secondary_alt_residual,
    yb_schouten_residual,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub residual_terms: usize,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, residual_terms: 0, first_failure: None }
    }

    pub fn passed(&self) -> bool {
        self.residual_terms == 0 && self.first_failure.is_none()
    }

    /// Record one case whose residual has `terms` nonzero terms.
    pub fn record(&mut self, terms: usize, case: impl FnOnce() -> String) {
        self.cases += 1;
        self.residual_terms += terms;
        if terms > 0 && self.first_failure.is_none() {
            self.first_failure = Some(case());
        }
    }

    /// Record a case that fails without a residual.
    pub fn fail(&mut self, case: impl FnOnce() -> String) {
        self.cases += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(case());
        }
    }
}

fn tuple_label(g: &LieAlgebra, t: &[u8]) -> String {
    let names: Vec<String> = t.iter().map(|&b| g.label(b as usize)).collect();
    if names.is_empty() {
        "1".into()
    } else {
        names.join("∧")
    }
}

fn basis_ext(t: &[u8]) -> ExtElement {
    ExtElement::basis(&t.iter().map(|&b| b as usize).collect::<Vec<_>>())
}

/// Sum of `terms` random decomposable `k`-vectors with small coefficients.
pub fn random_ext<R: Rng>(g: &LieAlgebra, k: usize, terms: usize, rng: &mut R) -> ExtElement {
    let mut out = ExtElement::zero(k);
    for _ in 0..terms {
        let xs: Vec<AlgElement> = (0..k).map(|_| g.random_element(rng, 2)).collect();
        out.axpy_assign(&Rat::from_int(rng.gen_range(-2..=2)), &decomposable(&xs));
    }
    out
}

/// Random element of `U(g)^{⊗k}` on monomials of degree ≤ `deg` with zero
/// `c_D`-weight.
pub fn random_cd_invariant<R: Rng>(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    k: usize,
    deg: u32,
    terms: usize,
    rng: &mut R,
) -> TensorElement {
    let pool = monomials(g, k, deg, |w| levi.cd_weight_is_zero(w));
    let mut t = TensorElement::zero(k);
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        t.add_term(m, Rat::new(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    t
}

/// `YB(r_g, r_g) = ½[Ω₁₂,Ω₂₃]`.
pub fn mcybe(env: &Enveloping) -> Check {
    let mut c = Check::new("mcybe");
    let r = standard_r(&env.alg);
    let res = yb_map(env, &r, &r).sub(&omega_commutator(env).scale(&Rat::new(1, 2)));
    c.record(res.len(), || format!("{res:?}"));
    c
}

/// `⟦r_g − r_D, ·⟧` against the perturbed coadjoint model on every basis
/// element of `Λ^{≤max_degree} g`.
pub fn schouten_is_ce(g: &LieAlgebra, levi: &LeviDecomposition, max_degree: usize) -> Check {
    let mut c = Check::new("schouten_is_ce");
    let s = StarAlgebra::new(g, levi);
    let pd = PerturbedDifferential::new(g, levi);
    for k in 0..=max_degree {
        for t in basis_tuples(g.dim(), k) {
            let a = basis_ext(&t);
            let res = pd.apply(&a).sub(&s.ce_model(&a));
            c.record(res.len(), || tuple_label(g, &t));
        }
    }
    c
}

/// `dh + hd = 2C` and `h` anticommuting with the perturbation, on every
/// basis element of `Λ^{≤max_degree} g`.
pub fn homotopy_identity(g: &LieAlgebra, levi: &LeviDecomposition, max_degree: usize) -> Vec<Check> {
    let mut main = Check::new("homotopy_identity");
    let mut anti = Check::new("homotopy_anticommutes_with_perturbation");
    let s = StarAlgebra::new(g, levi);
    let pd = PerturbedDifferential::new(g, levi);
    let two = Rat::from_int(2);
    for k in 0..=max_degree {
        for t in basis_tuples(g.dim(), k) {
            let a = basis_ext(&t);
            let h = s.homotopy(&a);
            let res = pd.apply(&h).add(&s.homotopy(&pd.apply(&a))).sub(&s.casimir(&a).scale(&two));
            main.record(res.len(), || tuple_label(g, &t));
            let res = s.homotopy(&s.perturbation(&a)).add(&s.perturbation(&h));
            anti.record(res.len(), || tuple_label(g, &t));
        }
    }
    vec![main, anti]
}

/// `ker C ∩ Λ^k g = Λ^k l_D` for `k ≤ max_degree`.
pub fn casimir_kernel(g: &LieAlgebra, levi: &LeviDecomposition, max_degree: usize) -> Check {
    let mut c = Check::new("casimir_kernel");
    let s = StarAlgebra::new(g, levi);
    for k in 0..=max_degree {
        let ker = operator_kernel(g.dim(), k, |a| s.casimir(a));
        let expected = basis_tuples(levi.ld_basis.len(), k).len();
        if ker.len() != expected || !ker.iter().all(|v| in_wedge_ld(levi, v)) {
            c.fail(|| format!("degree {k}: kernel dimension {} vs dim Λ^{k} l_D = {expected}", ker.len()));
        } else {
            c.cases += 1;
        }
    }
    c
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub computed: Vec<usize>,
    /// `dim (Λ^k l_D)^{l_D}`.
    pub predicted: Vec<usize>,
    /// `1, dim c_D, dim Λ²c_D, dim Λ³c_D + dim (Λ³g_D)^{g_D}` truncated at
    /// the computed range.
    pub small_degrees: Vec<usize>,
}

impl CohomologyTable {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted && self.computed.iter().zip(&self.small_degrees).all(|(a, b)| a == b)
    }
}

pub fn cohomology_table(g: &LieAlgebra, levi: &LeviDecomposition, max_degree: usize) -> CohomologyTable {
    let computed: Vec<usize> = cohomology_dims(g, levi, max_degree).into_iter().map(|x| x.1).collect();
    let predicted: Vec<usize> = predicted_dims(g, levi, max_degree).into_iter().map(|x| x.1).collect();
    let c = levi.dim_cd();
    let mut small = vec![1, c, binomial(c, 2)];
    if max_degree >= 3 {
        small.push(binomial(c, 3) + gd_self_invariants(g, levi, 3).len());
    }
    small.truncate(computed.len());
    CohomologyTable { computed, predicted, small_degrees: small }
}

pub fn cohomology_check(g: &LieAlgebra, levi: &LeviDecomposition, max_degree: usize) -> Check {
    let mut c = Check::new("cohomology_table");
    let t = cohomology_table(g, levi, max_degree);
    if t.matches() {
        c.cases += 1;
    } else {
        c.fail(|| format!("computed {:?}, predicted {:?}, small degrees {:?}", t.computed, t.predicted, t.small_degrees));
    }
    c
}

/// Face, slot-insertion and `d_H` compatibility of `π` and `π̄` on random
/// `c_D`-invariant elements with `k ≤ max_k` slots.
pub fn hc_suite<R: Rng>(
    env: &Enveloping,
    levi: &LeviDecomposition,
    samples: usize,
    max_degree: u32,
    max_k: usize,
    rng: &mut R,
) -> Vec<Check> {
    let g = &*env.alg;
    let mut face = Check::new("hc_coproduct_face");
    let mut insert = Check::new("hc_unit_insertion");
    let mut dh = Check::new("hc_hochschild");
    for trial in 0..samples {
        let k = 1 + trial % max_k;
        let x = random_cd_invariant(g, levi, k, max_degree, 6, rng);
        for variant in [HcVariant::Pi, HcVariant::PiBar] {
            let px = match hc_project(g, levi, &x, variant) {
                Ok(p) => p,
                Err(e) => {
                    face.fail(|| e.to_string());
                    continue;
                }
            };
            for i in 0..k {
                let lhs = px.coproduct_at(i).expect("slot");
                let rhs = hc_project(g, levi, &x.coproduct_at(i).expect("slot"), variant).expect("domain");
                let res = lhs.sub(&rhs);
                face.record(res.len(), || format!("trial {trial}, {variant:?}, slot {i}"));
            }
            for i in 0..=k {
                let total = k + 1 + trial % 2;
                if i + k > total {
                    continue;
                }
                let pos: Vec<usize> = (i..i + k).collect();
                let lhs = px.place(&pos, total);
                let rhs = hc_project(g, levi, &x.place(&pos, total), variant).expect("domain");
                let res = lhs.sub(&rhs);
                insert.record(res.len(), || format!("trial {trial}, {variant:?}, offset {i}"));
            }
            let res = px.hochschild_d().sub(&hc_project(g, levi, &x.hochschild_d(), variant).expect("domain"));
            dh.record(res.len(), || format!("trial {trial}, {variant:?}"));
        }
    }
    vec![face, insert, dh]
}

/// Tensor lemmas over random instances: the Yang–Baxter/Schouten formula,
/// the secondary alternation identity, the alternated coproduct identity,
/// the wedge insertion expansion and the alternated bracket identity, each
/// for `k ≤ max_k`.
pub fn lemma_suite<R: Rng>(env: &Enveloping, samples: usize, max_k: usize, rng: &mut R) -> Vec<Check> {
    let g = &*env.alg;
    let mut yb = Check::new("yb_schouten");
    let mut sec = Check::new("alt_schouten_secondary");
    let mut altalt = Check::new("alt_coproduct");
    let mut ins = Check::new("wedge_insertion");
    let mut altsch = Check::new("alt_bracket_schouten");
    for trial in 0..samples {
        let x = |rng: &mut R| g.random_element(rng, 2);
        let (r1, r2, s1, s2) = (x(rng), x(rng), x(rng), x(rng));
        let res = yb_schouten_residual(env, [&r1, &r2], [&s1, &s2]);
        yb.record(res.len(), || format!("trial {trial}"));
        let f = random_ext(g, 2, 2, rng);
        let chi = random_ext(g, 2, 2, rng);
        let res = secondary_alt_residual(env, &f, &chi);
        sec.record(res.len(), || format!("trial {trial}"));
        let k = 1 + trial % max_k;
        let xs: Vec<AlgElement> = (0..k).map(|_| x(rng)).collect();
        let res = insertion_residual(&x(rng), &xs);
        ins.record(res.len(), || format!("trial {trial}, k = {k}"));
        let eta = random_ext(g, k, 2, rng);
        let res = alt_schouten_residual(env, &f, &eta);
        altsch.record(res.len(), || format!("trial {trial}, k = {k}"));
        let ka = if max_k >= 2 { 2 + trial % (max_k - 1) } else { 1 };
        let xi = random_ext(g, ka, 2, rng).embed();
        let res = alt_alt_residual(&xi, &coproduct_split(&xi));
        altalt.record(res.len(), || format!("trial {trial}, k = {}", xi.k));
    }
    vec![yb, sec, altalt, ins, altsch]
}

/// `⟦X, Y⟧ = 0` for `X ∈ Λg_D` and `Y ∈ (Λg)^{g_D}`.
pub fn gd_commutes_with_invariants<R: Rng>(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    samples: usize,
    rng: &mut R,
) -> Check {
    let mut c = Check::new("gd_schouten_invariants");
    let inv: Vec<ExtElement> = (0..=3).flat_map(|k| gd_invariants(g, levi, k)).collect();
    if levi.gd_basis.is_empty() || inv.is_empty() {
        c.cases += 1;
        return c;
    }
    for trial in 0..samples {
        let k = 1 + trial % 3;
        let xs: Vec<AlgElement> = (0..k)
            .map(|_| {
                levi.gd_basis.iter().fold(AlgElement::zero(), |acc, &b| {
                    acc.axpy(&Rat::from_int(rng.gen_range(-2..=2)), &AlgElement::basis(b))
                })
            })
            .collect();
        let y = &inv[rng.gen_range(0..inv.len())];
        let res = schouten(g, &decomposable(&xs), y);
        c.record(res.len(), || format!("trial {trial}"));
    }
    c
}

/// Properties of `f = r_g − r_D`: `l_D`-invariance, `⟦f,f⟧ = ⟦r_g,r_g⟧ −
/// ⟦r_D,r_D⟧`, `π̄²_D(r_g) = r_D` and `d² = 0` on `(Λ^{≤3} g)^{g_D}`.
pub fn relative_r_suite(env: &Enveloping, levi: &LeviDecomposition) -> Vec<Check> {
    let g = &*env.alg;
    let f = relative_r(g, levi);
    let (rg, rd) = (standard_r(g), levi_r(g, levi));
    let mut inv = Check::new("relative_r_invariant");
    for &b in &levi.ld_basis {
        let res = crate::ext::ad_ext(g, &AlgElement::basis(b), &f);
        inv.record(res.len(), || g.label(b));
    }
    let mut sq = Check::new("relative_r_square");
    let res = schouten(g, &f, &f).sub(&schouten(g, &rg, &rg).sub(&schouten(g, &rd, &rd)));
    sq.record(res.len(), || format!("{} residual terms", res.len()));
    let mut proj = Check::new("hc_of_standard_r");
    match hc_project(g, levi, &rg.embed(), HcVariant::PiBar) {
        Ok(p) => {
            let res = p.sub(&rd.embed());
            proj.record(res.len(), || format!("{} residual terms", res.len()));
        }
        Err(e) => proj.fail(|| e.to_string()),
    }
    let mut dsq = Check::new("perturbed_d_squared");
    let pd = PerturbedDifferential::new(g, levi);
    for k in 0..=3 {
        for (i, a) in gd_invariants(g, levi, k).iter().enumerate() {
            let res = pd.apply(&pd.apply(a));
            dsq.record(res.len(), || format!("degree {k}, invariant {i}"));
        }
    }
    vec![inv, sq, proj, dsq]
}

/// `Alt₃(d_H g) = 0` for random `g ∈ (U(g)^{⊗2})^{l_D}` of degree ≤
/// `max_degree`.
pub fn alt_kills_invariant_coboundaries<R: Rng>(
    env: &Enveloping,
    levi: &LeviDecomposition,
    samples: usize,
    max_degree: u32,
    rng: &mut R,
) -> Check {
    let mut c = Check::new("alt_of_coboundary");
    let basis = invariant_subspace_basis(env, levi, 2, max_degree, Group::Ld);
    for trial in 0..samples {
        let mut x = TensorElement::zero(2);
        for b in &basis {
            x.axpy_assign(&Rat::new(rng.gen_range(-3..=3), rng.gen_range(1..=2)), b);
        }
        let res = x.hochschild_d().alt();
        c.record(res.len(), || format!("trial {trial}"));
    }
    c
}
