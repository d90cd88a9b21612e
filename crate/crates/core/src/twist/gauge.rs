//! Gauge equivalence `F₂ = exp(λ)·(u⊗u)·F₁·Δ(u)⁻¹` of relative twists:
//! applying a witness, recovering one order by order, and sampling random
//! witnesses.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ext::element::ExtElement;
use crate::ext::schouten::{relative_r, schouten};
use crate::lie::{AlgElement, LeviDecomposition};
use crate::rational::Rat;
use crate::tensor::{
    hc_project, invariant_subspace_basis, solve_hochschild_coboundary, Enveloping, Group,
    HbarSeries, HcVariant, PivotOrder, TensorElement,
};

/// `u ∈ 1 + ħ U(g)^{l_D}` and `λ ∈ ħ Λ²c_D`, with `λ` stored order by
/// order as 2-vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeWitness {
    pub u: HbarSeries,
    pub lambda: Vec<ExtElement>,
}

impl GaugeWitness {
    pub fn identity(n: usize) -> Self {
        Self {
            u: HbarSeries::one(1, n),
            lambda: vec![ExtElement::zero(2); n + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    /// `λ` embedded in U(g)^{⊗2}.
    pub fn lambda_series(&self) -> HbarSeries {
        HbarSeries::from_coeffs(2, self.lambda.iter().map(ExtElement::embed).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.u == HbarSeries::one(1, self.order()) && self.lambda.iter().all(ExtElement::is_zero)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GaugeOptions {
    /// Force `π̄¹_D` of every positive-order coefficient of `u` to vanish.
    pub require_hc_normalized: bool,
    pub theta_mode: bool,
    pub pivot_order: PivotOrder,
}

/// `exp(λ)·(u⊗u)·F·Δ(u)⁻¹`.
pub fn gauge_transform(env: &Enveloping, f: &HbarSeries, w: &GaugeWitness) -> Result<HbarSeries> {
    if w.u.k != 1 || !w.u.has_unit_leading_term() {
        return Err(Error::Invalid(
            "u must be a one-slot series with leading term 1".into(),
        ));
    }
    if w.lambda.first().is_some_and(|l| !l.is_zero())
        || w.lambda.iter().any(|l| !l.is_zero() && l.deg != 2)
    {
        return Err(Error::Invalid(
            "λ must be a series of 2-vectors without constant term".into(),
        ));
    }
    let n = f.order().min(w.order());
    let u = w.u.truncate(n);
    let mut lam = w.lambda.clone();
    lam.resize(n + 1, ExtElement::zero(2));
    lam.truncate(n + 1);
    let lam = GaugeWitness {
        u: u.clone(),
        lambda: lam,
    }
    .lambda_series();
    let uu = u.place(&[0], 2).mul(env, &u.place(&[1], 2));
    let du_inv = u.coproduct_at(0)?.inverse(env);
    Ok(HbarSeries::product(
        env,
        &[&lam.exp(env), &uu, &f.truncate(n), &du_inv],
    ))
}

/// `μ ∈ Λ²c_D`: supported on Cartan letters and orthogonal to `h_D`.
fn in_wedge2_cd(env: &Enveloping, levi: &LeviDecomposition, mu: &ExtElement) -> bool {
    let g = &*env.alg;
    let cartan_only = mu
        .terms
        .keys()
        .all(|i| i.iter().all(|&b| g.is_cartan(b as usize)));
    cartan_only
        && levi
            .d
            .0
            .iter()
            .all(|&i| crate::ext::contract(g, &AlgElement::basis(g.h_index(i)), mu).is_zero())
}

/// Order-1 antisymmetric part of `F` minus `r_g − r_D`, as a 2-vector.
fn order_one_defect(
    env: &Enveloping,
    levi: &LeviDecomposition,
    f: &HbarSeries,
) -> Result<ExtElement> {
    if f.order() == 0 {
        return Ok(ExtElement::zero(2));
    }
    let alt = ExtElement::from_alternating(&f.coeff(1).alt())?;
    Ok(alt.sub(&relative_r(&env.alg, levi)))
}

/// Witness `(u, λ)` with `F₂ = exp(λ)·(u⊗u)·F₁·Δ(u)⁻¹ mod ħ^{N+1}`, or
/// `NotEquivalent(n)` at the first order whose discrepancy is not a
/// Hochschild coboundary plus an element of `Λ²c_D`.
pub fn gauge_witness(
    env: &Enveloping,
    levi: &LeviDecomposition,
    f1: &HbarSeries,
    f2: &HbarSeries,
    opts: &GaugeOptions,
) -> Result<GaugeWitness> {
    let g = &*env.alg;
    if f1.k != 2 || f2.k != 2 || !f1.has_unit_leading_term() || !f2.has_unit_leading_term() {
        return Err(Error::Invalid(
            "twists must be two-slot series with leading term 1⊗1".into(),
        ));
    }
    for (name, f) in [("F₁", f1), ("F₂", f2)] {
        let defect = order_one_defect(env, levi, f)?;
        let ok = defect
            .terms
            .keys()
            .all(|i| i.iter().all(|&b| levi.ld_basis.contains(&(b as usize))))
            && levi
                .gd_basis
                .iter()
                .all(|&b| crate::ext::ad_ext(g, &AlgElement::basis(b), &defect).is_zero());
        if !ok {
            return Err(Error::Invalid(format!(
                "{name}: order-1 antisymmetric part is not r_g − r_D mod (Λ²l_D)^{{l_D}}"
            )));
        }
    }
    let n = f1.order().min(f2.order());
    let f = relative_r(g, levi);
    let mut w = GaugeWitness::identity(n);
    let half = Rat::new(1, 2);
    for m in 1..=n {
        let current = gauge_transform(env, f1, &w)?;
        let eta = f2.coeff(m).sub(current.coeff(m));
        if eta.is_zero() {
            continue;
        }
        if !eta.hochschild_d().is_zero() {
            return Err(Error::NotEquivalent(m));
        }
        let mu = ExtElement::from_alternating(&eta.alt()).map_err(|_| Error::NotEquivalent(m))?;
        if !in_wedge2_cd(env, levi, &mu) || !schouten(g, &f, &mu).is_zero() {
            return Err(Error::NotEquivalent(m));
        }
        if opts.theta_mode && !mu.is_zero() {
            return Err(Error::NotEquivalent(m));
        }
        let target = eta.sub(&mu.embed());
        let (mut v, _) = match solve_hochschild_coboundary(
            env,
            levi,
            &target,
            target.max_degree(),
            opts.pivot_order,
        ) {
            Ok(x) => x,
            Err(Error::Infeasible(_)) => return Err(Error::NotEquivalent(m)),
            Err(e) => return Err(e),
        };
        if opts.require_hc_normalized {
            v = v.sub(&hc_project(g, levi, &v, HcVariant::PiBar)?);
        }
        if opts.theta_mode {
            v = v.add(&env.theta(&v)).scale(&half);
        }
        let mut step = HbarSeries::one(1, n);
        step.coeffs[m] = v;
        w.u = step.mul(env, &w.u);
        w.lambda[m] = w.lambda[m].add(&mu);
    }
    if gauge_transform(env, f1, &w)? != f2.truncate(n) {
        return Err(Error::Obstruction(
            "gauge witness does not reproduce F₂".into(),
        ));
    }
    Ok(w)
}

/// Random witness with `u` coefficients in `U(g)^{l_D}` of degree ≤
/// `max_degree` and `λ` in `Λ²c_D`.
pub fn random_witness<R: Rng>(
    env: &Enveloping,
    levi: &LeviDecomposition,
    n: usize,
    max_degree: u32,
    rng: &mut R,
) -> GaugeWitness {
    let basis = invariant_subspace_basis(env, levi, 1, max_degree, Group::Ld);
    let mut w = GaugeWitness::identity(n);
    let cd: Vec<AlgElement> = levi.cd_basis.clone();
    for m in 1..=n {
        let mut c = TensorElement::zero(1);
        for b in basis.iter().filter(|b| b.constant().is_zero()) {
            c.axpy_assign(&Rat::new(rng.gen_range(-2..=2), rng.gen_range(1..=2)), b);
        }
        w.u.coeffs[m] = c;
        let mut lam = ExtElement::zero(2);
        for i in 0..cd.len() {
            for j in i + 1..cd.len() {
                let s = Rat::from_int(rng.gen_range(-2..=2));
                lam.axpy_assign(
                    &s,
                    &ExtElement::from_lie(&cd[i]).wedge(&ExtElement::from_lie(&cd[j])),
                );
            }
        }
        w.lambda[m] = lam;
    }
    w
}
