//! Solving `⟦f, χ⟧ = ξ̃` for `χ ∈ (Λ²g)^{l_D}`.

use crate::error::{Error, Result};
use crate::ext::cohomology::{gd_invariants_by_weight, TupleIndex};
use crate::ext::element::ExtElement;
use crate::ext::schouten::schouten;
use crate::lie::{LeviDecomposition, LieAlgebra};
use crate::linalg::{self, SparseVec};
use crate::rational::Rat;

/// Basis of `(Λ^k g)^{l_D}`.
pub fn ld_invariant_wedges(g: &LieAlgebra, levi: &LeviDecomposition, k: usize) -> Vec<ExtElement> {
    let all: Vec<usize> = (0..g.dim()).collect();
    gd_invariants_by_weight(g, levi, k, &all)
        .remove(&vec![0; g.rank])
        .unwrap_or_default()
}

/// Find `χ ∈ (Λ²g)^{l_D}` with `⟦f, χ⟧ = ξ̃`. With `theta_mode` the
/// solution is replaced by `½(χ − χ^Θ)`.
pub fn solve_schouten_coboundary(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    f: &ExtElement,
    xi: &ExtElement,
    theta_mode: bool,
) -> Result<ExtElement> {
    let all: Vec<usize> = (0..g.dim()).collect();
    solve_schouten_coboundary_in(g, levi, f, xi, theta_mode, &all)
}

/// As [`solve_schouten_coboundary`], with `χ` restricted to `Λ²V` for `V`
/// spanned by the listed basis vectors.
pub fn solve_schouten_coboundary_in(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    f: &ExtElement,
    xi: &ExtElement,
    theta_mode: bool,
    allowed: &[usize],
) -> Result<ExtElement> {
    if xi.deg != 3 {
        return Err(Error::Invalid(format!(
            "expected a 3-vector, got degree {}",
            xi.deg
        )));
    }
    if xi.is_zero() {
        return Ok(ExtElement::zero(2));
    }
    let basis = gd_invariants_by_weight(g, levi, 2, allowed)
        .remove(&vec![0; g.rank])
        .unwrap_or_default();
    let mut ix = TupleIndex::default();
    let columns: Vec<SparseVec> = basis
        .iter()
        .map(|b| ix.sparse(&schouten(g, f, b)))
        .collect();
    let target = ix.sparse(xi);
    let mut rhs = vec![Rat::zero(); ix.len()];
    for (r, c) in target {
        rhs[r] = c;
    }
    let mat = linalg::columns_to_rows(&columns, ix.len());
    let x = linalg::solve(mat, rhs, basis.len()).ok_or_else(|| {
        Error::Obstruction(format!(
            "ξ̃ is not a Schouten coboundary of f over {} invariant 2-vectors",
            basis.len()
        ))
    })?;
    let mut chi = ExtElement::zero(2);
    for (j, c) in x {
        chi.axpy_assign(&c, &basis[j]);
    }
    if theta_mode {
        chi = chi.sub(&chi.theta(g)).scale(&Rat::new(1, 2));
    }
    Ok(chi)
}
