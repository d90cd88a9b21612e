//! Associators as truncated ħ-series in U(g)^{⊗3}: the built-in low-order
//! associator, pentagon residuals, twisting, Harish-Chandra projection and
//! the non-degeneracy normalisation of the invariant form.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::schouten::omega_commutator;
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra, Subdiagram};
use crate::rational::Rat;
use crate::tensor::{
    hc_project, Enveloping, HbarSeries, HcVariant, SlotMono, TensorElement, TensorMono,
};

/// Subalgebra under which an associator is invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariance {
    G,
    Gd(Subdiagram),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Associator {
    pub series: HbarSeries,
    pub invariance: Invariance,
    /// Multiplier of the normalized form on each simple factor.
    pub form_scaling: Vec<Rat>,
}

impl Associator {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `φ`, the `ħ²` coefficient (zero when `N < 2`).
    pub fn phi2(&self) -> TensorElement {
        if self.order() >= 2 {
            self.series.coeff(2).clone()
        } else {
            TensorElement::zero(3)
        }
    }
}

/// `Φ = 1 + ħ²·(1/6)[Ω₁₂,Ω₂₃]` truncated at `n ≤ 3`.
pub fn builtin_phi(env: &Enveloping, n: usize) -> Result<Associator> {
    if n > 3 {
        return Err(Error::BuiltinOrder(n));
    }
    let mut s = HbarSeries::one(3, n);
    if n >= 2 {
        s.coeffs[2] = omega_commutator(env).scale(&Rat::new(1, 6));
    }
    Ok(Associator {
        series: s,
        invariance: Invariance::G,
        form_scaling: env.alg.form_scale.clone(),
    })
}

/// `F` in slots `(i, i+1)` of a 4-fold tensor, 0-based.
fn at_pair(f: &HbarSeries, i: usize) -> HbarSeries {
    f.place(&[i, i + 1], 4)
}

/// `(id^{i} ⊗ Δ̃ ⊗ id)(Ψ)` for `Δ̃ = Δ` or `Δ̃ = F Δ(·) F⁻¹`.
fn face(
    env: &Enveloping,
    psi: &HbarSeries,
    i: usize,
    twist: Option<(&HbarSeries, &HbarSeries)>,
) -> HbarSeries {
    let d = psi.coproduct_at(i).expect("slot in range");
    match twist {
        None => d,
        Some((f, finv)) => HbarSeries::product(env, &[&at_pair(f, i), &d, &at_pair(finv, i)]),
    }
}

/// `Ψ²³⁴·(id⊗Δ̃⊗id)(Ψ)·Ψ¹²³ − (id⊗id⊗Δ̃)(Ψ)·(Δ̃⊗id⊗id)(Ψ)`, with `Δ̃` the
/// coproduct twisted by `twist` when given.
pub fn pentagon_residual(
    env: &Enveloping,
    phi: &HbarSeries,
    twist: Option<&HbarSeries>,
) -> HbarSeries {
    let n = twist.map_or(phi.order(), |f| phi.order().min(f.order()));
    let psi = phi.truncate(n);
    let tw = twist.map(|f| {
        let f = f.truncate(n);
        let inv = f.inverse(env);
        (f, inv)
    });
    let tw_ref = tw.as_ref().map(|(a, b)| (a, b));
    let lhs = HbarSeries::product(
        env,
        &[
            &psi.at(&[2, 3, 4], 4),
            &face(env, &psi, 1, tw_ref),
            &psi.at(&[1, 2, 3], 4),
        ],
    );
    let rhs = face(env, &psi, 2, tw_ref).mul(env, &face(env, &psi, 0, tw_ref));
    lhs.sub(&rhs)
}

/// `(Φ)_F = 1⊗F · (id⊗Δ)(F) · Φ · (Δ⊗id)(F⁻¹) · F⁻¹⊗1`.
pub fn twist_conjugate(env: &Enveloping, phi: &HbarSeries, f: &HbarSeries) -> HbarSeries {
    let n = phi.order().min(f.order());
    let f = f.truncate(n);
    let finv = f.inverse(env);
    HbarSeries::product(
        env,
        &[
            &f.at(&[2, 3], 3),
            &f.coproduct_at(1).expect("slot"),
            &phi.truncate(n),
            &finv.coproduct_at(0).expect("slot"),
            &finv.at(&[1, 2], 3),
        ],
    )
}

/// Simple generators `e_i, f_i` of the subalgebra named by `inv`.
pub fn invariance_generators(g: &LieAlgebra, inv: &Invariance) -> Vec<AlgElement> {
    let nodes: Vec<usize> = match inv {
        Invariance::G => (0..g.rank).collect(),
        Invariance::Gd(d) => d.0.clone(),
    };
    nodes
        .into_iter()
        .flat_map(|i| {
            let r = g.simple_root_index(i);
            [
                AlgElement::basis(g.e_index(r)),
                AlgElement::basis(g.f_index(r)),
            ]
        })
        .collect()
}

/// First order whose coefficient is not annihilated by the generators.
pub fn first_non_invariant(env: &Enveloping, s: &HbarSeries, gens: &[AlgElement]) -> Option<usize> {
    let g = &*env.alg;
    (0..=s.order()).find(|&n| {
        let c = s.coeff(n);
        let weight_ok = c
            .terms
            .keys()
            .all(|m| m.weight(&g.weights, g.rank).iter().all(|&w| w == 0));
        !weight_ok || gens.iter().any(|x| !env.adjoint(x, c).is_zero())
    })
}

/// `Φ_D = π̄³_D(Φ)` order by order.
pub fn hc_associator(env: &Enveloping, phi: &Associator, d: &Subdiagram) -> Result<Associator> {
    let g = &*env.alg;
    let allowed = match &phi.invariance {
        Invariance::G => true,
        Invariance::Gd(outer) => d.is_subset(outer),
    };
    if !allowed {
        return Err(Error::Invalid(format!(
            "Φ is only invariant under g_{{{}}}",
            phi_level(&phi.invariance)
        )));
    }
    if let Some(n) =
        first_non_invariant(env, &phi.series, &invariance_generators(g, &phi.invariance))
    {
        return Err(Error::Invalid(format!("Φ is not invariant at order {n}")));
    }
    let levi = LeviDecomposition::new(g, d)?;
    let series = phi
        .series
        .try_map(|c| hc_project(g, &levi, c, HcVariant::PiBar))?;
    Ok(Associator {
        series,
        invariance: Invariance::Gd(d.clone()),
        form_scaling: phi.form_scaling.clone(),
    })
}

fn phi_level(inv: &Invariance) -> String {
    match inv {
        Invariance::G => "g".into(),
        Invariance::Gd(d) => format!("D={{{}}}", d.to_cli()),
    }
}

/// `(1/6)[Ω^i₁₂, Ω^i₂₃]` for the Casimir of each simple factor `i`.
fn factor_omega_commutators(env: &Enveloping) -> Vec<TensorElement> {
    let g = &*env.alg;
    (0..g.n_factors())
        .map(|fac| {
            let mut om = [TensorElement::zero(3), TensorElement::zero(3)];
            for (i, j, c) in g.casimir_terms() {
                if g.basis_factor(*i) != fac {
                    continue;
                }
                for (t, (s1, s2)) in [(0, 1), (1, 2)].into_iter().enumerate() {
                    let mut m = TensorMono::one(3);
                    m.0[s1] = SlotMono::gen(*i);
                    m.0[s2] = SlotMono::gen(*j);
                    om[t].add_term(m, c.clone());
                }
            }
            env.commutator(&om[0], &om[1]).scale(&Rat::new(1, 6))
        })
        .collect()
}

/// Coefficients `c_i` with `Alt₃φ = Σ_i c_i (1/6)[Ω^i₁₂,Ω^i₂₃]` for the
/// current form, or a non-degeneracy error.
pub fn nondegeneracy_coefficients(env: &Enveloping, phi2: &TensorElement) -> Result<Vec<Rat>> {
    let alt = phi2.alt();
    let parts = factor_omega_commutators(env);
    let mut coeffs = Vec::with_capacity(parts.len());
    let mut rest = alt.clone();
    for (i, p) in parts.iter().enumerate() {
        let (m, c0) = p
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NonDegenerate(format!("factor {i} is abelian")))?;
        let c = &alt.coeff(m) / c0;
        if c.is_zero() {
            return Err(Error::NonDegenerate(format!(
                "Alt₃φ has zero component on simple factor {}",
                i + 1
            )));
        }
        rest.axpy_assign(&-&c, p);
        coeffs.push(c);
    }
    if !rest.is_zero() {
        return Err(Error::NonDegenerate(format!(
            "Alt₃φ is not a combination of the factor classes ({} residual terms)",
            rest.len()
        )));
    }
    Ok(coeffs)
}

/// Relative form scaling (per factor, with respect to the current form)
/// under which `Alt₃φ = (1/6)[Ω₁₂,Ω₂₃]`.
pub fn detect_form_scaling(env: &Enveloping, phi2: &TensorElement) -> Result<Vec<Rat>> {
    nondegeneracy_coefficients(env, phi2)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            // Ω scales by 1/s, so the class scales by 1/s².
            let root = if c.is_negative() { None } else { c.sqrt_exact() };
            root.map(|r| r.recip()).ok_or_else(|| {
                Error::NonDegenerate(format!(
                    "factor {}: Alt₃φ coefficient {c} is not the square of a rational; supply a rescaled Φ",
                    i + 1
                ))
            })
        })
        .collect()
}

/// `env` with its form rescaled per factor so that `phi` is non-degenerate
/// for it; `phi.form_scaling` is updated to the resulting absolute scales.
pub fn adapt_form(env: &Enveloping, phi: &Associator) -> Result<(Enveloping, Associator)> {
    let rel = detect_form_scaling(env, &phi.phi2())?;
    let scales: Vec<Rat> = env
        .alg
        .form_scale
        .iter()
        .zip(&rel)
        .map(|(a, b)| a * b)
        .collect();
    let mut out = phi.clone();
    out.form_scaling = scales.clone();
    if rel.iter().all(Rat::is_one) {
        return Ok((env.fork(), out));
    }
    Ok((
        Enveloping::new(Arc::new(env.alg.with_form_scaling(&scales))),
        out,
    ))
}

/// Checks required of an associator before building: unit and vanishing
/// linear term, pentagon, invariance and `Alt₃φ = (1/6)[Ω₁₂,Ω₂₃]`.
pub fn validate_associator(env: &Enveloping, phi: &Associator) -> Result<()> {
    let s = &phi.series;
    if s.k != 3 || !s.has_unit_leading_term() {
        return Err(Error::Invalid(
            "associator must have three slots and leading term 1⊗1⊗1".into(),
        ));
    }
    if s.order() >= 1 && !s.coeff(1).is_zero() {
        return Err(Error::Invalid(
            "associator has a nonzero order-1 term".into(),
        ));
    }
    if let Some(n) = pentagon_residual(env, s, None).valuation() {
        return Err(Error::Pentagon(n));
    }
    if let Some(n) = first_non_invariant(env, s, &invariance_generators(&env.alg, &phi.invariance))
    {
        return Err(Error::Invalid(format!("Φ is not invariant at order {n}")));
    }
    if s.order() >= 2 && phi.invariance == Invariance::G {
        let c = nondegeneracy_coefficients(env, s.coeff(2))?;
        if c.iter().any(|x| !x.is_one()) {
            return Err(Error::NonDegenerate(format!(
                "Alt₃φ coefficients {c:?} differ from 1 for the declared form"
            )));
        }
    }
    Ok(())
}

/// `Φ^{321} = Φ⁻¹` and `Φ^Θ = Φ`.
pub fn satisfies_theta_constraint(env: &Enveloping, phi: &HbarSeries) -> bool {
    phi.permute(&[2, 1, 0]) == phi.inverse(env) && phi.theta(env) == *phi
}
