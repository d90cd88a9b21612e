//! Order-by-order construction of relative twists `F` with
//! `(Φ)_F = π̄³_D(Φ)` and `π̄²_D(F) = 1⊗1`, optionally Θ-symmetric and
//! optionally through a chain of nested subdiagrams.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::element::ExtElement;
use crate::ext::schouten::{relative_r_between, schouten};
use crate::ext::solve_schouten_coboundary_in;
use crate::lie::{LeviDecomposition, Subdiagram};
use crate::rational::Rat;
use crate::tensor::{
    hc_project, solve_hochschild_coboundary_in, Enveloping, HbarSeries, HcVariant, PivotOrder,
    TensorElement,
};
use crate::twist::associator::{
    hc_associator, pentagon_residual, satisfies_theta_constraint, twist_conjugate,
    validate_associator, Associator,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub series: HbarSeries,
    pub d: Subdiagram,
    /// `π̄²_D(F) = 1⊗1`.
    pub hc_normalized: bool,
    /// `F^Θ = F^{21}`.
    pub theta_symmetric: bool,
}

impl Twist {
    pub fn order(&self) -> usize {
        self.series.order()
    }
}

/// How the chain `Δ = D_1 ⊃ ⋯ ⊃ D_m = D` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ladder {
    /// Single step `Δ ⊃ D`.
    Off,
    /// Drop the highest-index nodes two at a time.
    #[default]
    Pairs,
    /// Drop the highest-index node one at a time.
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    pub theta_mode: bool,
    pub ladder: Ladder,
    /// Initial Hochschild degree cap; `None` means `max(deg ξ, 2n)`.
    pub degree_cap: Option<u32>,
    /// Escalation ceiling; `None` means `4n`.
    pub degree_ceiling: Option<u32>,
    pub pivot_order: PivotOrder,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            theta_mode: false,
            ladder: Ladder::Pairs,
            degree_cap: None,
            degree_ceiling: None,
            pivot_order: PivotOrder::GradedLex,
        }
    }
}

/// Per-order record of one ladder step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub order: usize,
    pub xi_terms: usize,
    pub secondary_correction: bool,
    pub chi_terms: usize,
    /// Θ-symmetrisation left a `U(g_D)` term that was removed by a coboundary.
    pub theta_hc_repair: bool,
    pub degree_cap: u32,
    pub escalations: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub coefficient_terms: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub outer: String,
    pub inner: String,
    pub orders: Vec<OrderReport>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub chain: Vec<String>,
    pub steps: Vec<StepReport>,
    /// Term counts of `(Φ)_F − Φ_D` per order.
    pub residual_terms: Vec<usize>,
    pub hc_normalized: bool,
    pub theta_symmetric: bool,
}

/// Nested chain from the full diagram down to `d`.
pub fn ladder_chain(rank: usize, d: &Subdiagram, ladder: Ladder) -> Vec<Subdiagram> {
    let full = Subdiagram::full(rank);
    let mut chain = vec![full.clone()];
    let mut removable: Vec<usize> = (0..rank).filter(|i| !d.contains(*i)).collect();
    if removable.is_empty() {
        return chain;
    }
    let step = match ladder {
        Ladder::Off => removable.len(),
        Ladder::Pairs => 2,
        Ladder::Single => 1,
    };
    let mut cur = full.0;
    while !removable.is_empty() {
        let take = step.min(removable.len());
        let dropped: Vec<usize> = removable.split_off(removable.len() - take);
        cur.retain(|i| !dropped.contains(i));
        chain.push(Subdiagram(cur.clone()));
    }
    chain
}

/// `ħ^{n+1}` coefficient of `1⊗F·(id⊗Δ)(F)·Φ − Φ_D·F⊗1·(Δ⊗id)(F)`, where
/// `f` holds the coefficients of `F` up to order `n`.
pub fn deviation_xi(
    env: &Enveloping,
    phi: &HbarSeries,
    phi_d: &HbarSeries,
    f: &[TensorElement],
    n: usize,
) -> Result<TensorElement> {
    let m = n + 1;
    let mut coeffs: Vec<TensorElement> = f.iter().take(n + 1).cloned().collect();
    coeffs.resize(m + 1, TensorElement::zero(2));
    let fs = HbarSeries::from_coeffs(2, coeffs);
    let pad = |s: &HbarSeries| {
        let mut c = s.coeffs.clone();
        c.resize(m + 1, TensorElement::zero(3));
        c.truncate(m + 1);
        HbarSeries::from_coeffs(3, c)
    };
    let lhs = HbarSeries::product(env, &[&fs.at(&[2, 3], 3), &fs.coproduct_at(1)?, &pad(phi)]);
    let rhs = HbarSeries::product(
        env,
        &[&pad(phi_d), &fs.at(&[1, 2], 3), &fs.coproduct_at(0)?],
    );
    let diff = lhs.sub(&rhs);
    if let Some(v) = diff.valuation() {
        if v <= n {
            return Err(Error::NotSolution(n));
        }
    }
    Ok(diff.coeffs[m].clone())
}

/// One ladder step `D_j ⊃ D_{j+1}` in the ambient algebra.
struct Step<'a> {
    env: &'a Enveloping,
    outer: LeviDecomposition,
    inner: LeviDecomposition,
    letters: Vec<usize>,
    phi: &'a HbarSeries,
    phi_d: HbarSeries,
    f: ExtElement,
}

impl Step<'_> {
    fn xi(&self, coeffs: &[TensorElement], n: usize, theta: bool) -> Result<TensorElement> {
        let xi = deviation_xi(self.env, self.phi, &self.phi_d, coeffs, n)?;
        let g = &*self.env.alg;
        let dh = xi.hochschild_d();
        if !dh.is_zero() {
            return Err(self.obstruction(n, "d_H ξ ≠ 0", &dh));
        }
        let proj = hc_project(g, &self.inner, &xi, HcVariant::PiBar)?;
        if !proj.is_zero() {
            return Err(self.obstruction(n, "π̄³ ξ ≠ 0", &proj));
        }
        if theta {
            let sym = self.env.theta(&xi).add(&xi.permute(&[2, 1, 0]));
            if !sym.is_zero() {
                return Err(self.obstruction(n, "ξ^Θ ≠ −ξ^{321}", &sym));
            }
        }
        Ok(xi)
    }

    fn obstruction(&self, n: usize, what: &str, residual: &TensorElement) -> Error {
        Error::Obstruction(format!(
            "order {n}, step D={{{}}} ⊃ D={{{}}}: {what}; residual {residual:?}",
            self.outer.d.to_cli(),
            self.inner.d.to_cli()
        ))
    }

    fn solve_primary(
        &self,
        xi: &TensorElement,
        n: usize,
        opts: &BuildOptions,
        rep: &mut OrderReport,
    ) -> Result<TensorElement> {
        let deg = xi.max_degree();
        let mut cap = opts.degree_cap.unwrap_or_else(|| deg.max(2 * n as u32));
        let ceiling = opts.degree_ceiling.unwrap_or(4 * n as u32).max(cap);
        loop {
            match solve_hochschild_coboundary_in(
                self.env,
                &self.inner,
                xi,
                cap,
                opts.pivot_order,
                &self.letters,
            ) {
                Ok((g, stats)) => {
                    rep.degree_cap = cap;
                    rep.unknowns = stats.unknowns;
                    rep.equations = stats.equations;
                    return Ok(g);
                }
                Err(Error::Infeasible(msg)) if cap + 2 > ceiling => {
                    return Err(Error::Infeasible(format!(
                        "order {n}: {msg}; ceiling {ceiling} reached"
                    )));
                }
                Err(Error::Infeasible(_)) => {
                    cap += 2;
                    rep.escalations += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn run(&self, n_max: usize, opts: &BuildOptions) -> Result<(HbarSeries, StepReport)> {
        let env = self.env;
        let g = &*env.alg;
        let theta = opts.theta_mode;
        let half = Rat::new(1, 2);
        let mut report = StepReport {
            outer: self.outer.d.to_cli(),
            inner: self.inner.d.to_cli(),
            orders: Vec::new(),
        };
        let mut coeffs = vec![TensorElement::one(2)];
        if n_max >= 1 {
            coeffs.push(self.f.embed());
        }
        for n in 1..n_max {
            let mut rep = OrderReport {
                order: n + 1,
                ..Default::default()
            };
            let mut xi = self.xi(&coeffs, n, theta)?;
            let alt = xi.alt();
            if !alt.is_zero() {
                if n == 1 {
                    return Err(Error::NonDegenerate(format!(
                        "Alt₃ξ ≠ 0 at order 2 ({} terms): Alt₃φ − Alt₃φ_D differs from ½⟦f,f⟧",
                        alt.len()
                    )));
                }
                let xt = ExtElement::from_alternating(&alt)
                    .map_err(|_| self.obstruction(n, "Alt₃ξ is not in Λ³g", &alt))?;
                let cocycle = schouten(g, &self.f, &xt);
                if !cocycle.is_zero() {
                    return Err(self.obstruction(n, "⟦f, Alt₃ξ⟧ ≠ 0", &cocycle.embed()));
                }
                let proj = hc_project(g, &self.inner, &alt, HcVariant::PiBar)?;
                if !proj.is_zero() {
                    return Err(self.obstruction(n, "π̄³ Alt₃ξ ≠ 0", &proj));
                }
                let chi = solve_schouten_coboundary_in(
                    g,
                    &self.inner,
                    &self.f,
                    &xt,
                    theta,
                    &self.letters,
                )?;
                rep.secondary_correction = true;
                rep.chi_terms = chi.len();
                coeffs[n].add_assign(&chi.embed());
                xi = self.xi(&coeffs, n, theta)?;
                if !xi.alt().is_zero() {
                    return Err(self.obstruction(
                        n,
                        "Alt₃ξ ≠ 0 after secondary correction",
                        &xi.alt(),
                    ));
                }
            }
            rep.xi_terms = xi.len();
            let sol = self.solve_primary(&xi, n, opts, &mut rep)?;
            let mut next = sol
                .sub(&hc_project(g, &self.inner, &sol, HcVariant::PiBar)?)
                .neg();
            if theta {
                next = next.add(&env.theta(&next.permute(&[1, 0]))).scale(&half);
                let p = hc_project(g, &self.inner, &next, HcVariant::PiBar)?;
                if !p.is_zero() {
                    // p ∈ (U(g_D)^{⊗2})^{g_D} is symmetric and d_H-closed: p = d_H w, Θw = w.
                    let (w, _) = solve_hochschild_coboundary_in(
                        env,
                        &self.inner,
                        &p,
                        p.max_degree(),
                        opts.pivot_order,
                        &self.inner.gd_basis,
                    )?;
                    let w = w.add(&env.theta(&w)).scale(&half);
                    next = next.sub(&w.hochschild_d());
                    let rest = hc_project(g, &self.inner, &next, HcVariant::PiBar)?;
                    if !rest.is_zero() {
                        return Err(self.obstruction(
                            n + 1,
                            "π̄² f ≠ 0 after Θ-symmetrisation",
                            &rest,
                        ));
                    }
                    rep.theta_hc_repair = true;
                }
            }
            rep.coefficient_terms = next.len();
            coeffs.push(next);
            report.orders.push(rep);
        }
        Ok((HbarSeries::from_coeffs(2, coeffs), report))
    }
}

/// `F` with `(Φ)_F = π̄³_D(Φ) mod ħ^{N+1}` and `π̄²_D(F) = 1⊗1`, where
/// `N` is the truncation order of `Φ`.
pub fn build_relative_twist(
    env: &Enveloping,
    phi: &Associator,
    d: &Subdiagram,
    opts: &BuildOptions,
) -> Result<(Twist, BuildReport)> {
    let g = &*env.alg;
    let n_max = phi.order();
    validate_associator(env, phi)?;
    if opts.theta_mode && !satisfies_theta_constraint(env, &phi.series) {
        return Err(Error::Invalid(
            "Θ-mode needs Φ^{321} = Φ⁻¹ and Φ^Θ = Φ".into(),
        ));
    }
    let corank = g.rank - d.len();
    if opts.ladder == Ladder::Off && corank > 2 && !opts.theta_mode {
        return Err(Error::Invalid(format!(
            "|Δ∖D| = {corank} > 2 without laddering or Θ-mode: the Λ³c_D obstruction may not vanish"
        )));
    }
    let chain = ladder_chain(g.rank, d, opts.ladder);
    let mut report = BuildReport {
        chain: chain.iter().map(Subdiagram::to_cli).collect(),
        ..Default::default()
    };
    let mut current = phi.clone();
    let mut total = HbarSeries::one(2, n_max);
    for w in chain.windows(2) {
        let next = hc_associator(env, &current, &w[1])?;
        if let Some(k) = pentagon_residual(env, &next.series, None).valuation() {
            return Err(Error::Pentagon(k));
        }
        let outer = LeviDecomposition::new(g, &w[0])?;
        let inner = LeviDecomposition::new(g, &w[1])?;
        let step = Step {
            env,
            f: relative_r_between(g, &outer, &inner),
            letters: outer.gd_basis.clone(),
            outer,
            inner,
            phi: &current.series,
            phi_d: next.series.clone(),
        };
        let (fj, srep) = step.run(n_max, opts)?;
        report.steps.push(srep);
        total = fj.mul(env, &total);
        current = next;
    }
    let phi_d = hc_associator(env, phi, d)?;
    let residual = twist_conjugate(env, &phi.series, &total).sub(&phi_d.series);
    report.residual_terms = residual.term_counts();
    if !residual.is_zero() {
        return Err(Error::Obstruction(format!(
            "final residual (Φ)_F − Φ_D ≠ 0: {:?}",
            residual.coeffs
        )));
    }
    let levi = LeviDecomposition::new(g, d)?;
    let hc_normalized = is_hc_normalized(env, &levi, &total)?;
    let theta_symmetric = is_theta_symmetric(env, &total);
    if !hc_normalized {
        return Err(Error::Obstruction("π̄²_D(F) ≠ 1⊗1".into()));
    }
    if opts.theta_mode && !theta_symmetric {
        return Err(Error::Obstruction(
            "Θ-mode result is not Θ-symmetric".into(),
        ));
    }
    report.hc_normalized = hc_normalized;
    report.theta_symmetric = theta_symmetric;
    Ok((
        Twist {
            series: total,
            d: d.clone(),
            hc_normalized,
            theta_symmetric,
        },
        report,
    ))
}

/// `π̄²_D(F) = 1⊗1`.
pub fn is_hc_normalized(
    env: &Enveloping,
    levi: &LeviDecomposition,
    f: &HbarSeries,
) -> Result<bool> {
    let p = f.try_map(|c| hc_project(&env.alg, levi, c, HcVariant::PiBar))?;
    Ok(p == HbarSeries::one(2, f.order()))
}

/// `F^Θ = F^{21}`.
pub fn is_theta_symmetric(env: &Enveloping, f: &HbarSeries) -> bool {
    f.theta(env) == f.permute(&[1, 0])
}

/// `(Φ)_F − Φ_D`, the quantity every built twist must annihilate.
pub fn twist_residual(
    env: &Enveloping,
    phi: &HbarSeries,
    phi_d: &HbarSeries,
    f: &HbarSeries,
) -> HbarSeries {
    twist_conjugate(env, phi, f).sub(&phi_d.truncate(phi.order().min(f.order())))
}
