//! Schouten bracket on Λg, the classical Yang–Baxter map and the standard
//! r-matrices.

use crate::ext::element::{ExtElement, Idx};
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra};
use crate::rational::Rat;
use crate::tensor::{Enveloping, TensorElement};

/// `⟦x_A, x_B⟧` for basis tuples.
fn schouten_basis(g: &LieAlgebra, a: &Idx, b: &Idx, out: &mut ExtElement, coef: &Rat) {
    let mut buf: Vec<u8> = Vec::with_capacity(a.len() + b.len() - 1);
    for (i, &xa) in a.iter().enumerate() {
        for (j, &yb) in b.iter().enumerate() {
            let br = g.bracket_basis(xa as usize, yb as usize);
            if br.is_zero() {
                continue;
            }
            // 0-based i, j: (-1)^{(i+1)+(j+1)} = (-1)^{i+j}
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            for (z, c) in &br.0 {
                buf.clear();
                buf.push(*z as u8);
                buf.extend(
                    a.iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i)
                        .map(|(_, &x)| x),
                );
                buf.extend(
                    b.iter()
                        .enumerate()
                        .filter(|&(q, _)| q != j)
                        .map(|(_, &y)| y),
                );
                out.add_unsorted(&buf, &(coef * c).mul_int(s));
            }
        }
    }
}

/// The Schouten bracket, of degree `deg a + deg b − 1`.
pub fn schouten(g: &LieAlgebra, a: &ExtElement, b: &ExtElement) -> ExtElement {
    if a.deg == 0 || b.deg == 0 {
        return ExtElement::zero((a.deg + b.deg).saturating_sub(1));
    }
    let mut out = ExtElement::zero(a.deg + b.deg - 1);
    for (ia, ca) in &a.terms {
        for (ib, cb) in &b.terms {
            schouten_basis(g, ia, ib, &mut out, &(ca * cb));
        }
    }
    out
}

/// `Σ_{α ∈ roots} ((α,α)/2) e_α ∧ f_α` over the positive roots accepted by
/// `keep`.
fn r_sum(g: &LieAlgebra, keep: impl Fn(usize) -> bool) -> ExtElement {
    let mut out = ExtElement::zero(2);
    for r in 0..g.n_pos() {
        if keep(r) {
            let c = g.root_norm(r) * Rat::new(1, 2);
            out.axpy_assign(&c, &ExtElement::basis(&[g.e_index(r), g.f_index(r)]));
        }
    }
    out
}

/// `r_g`.
pub fn standard_r(g: &LieAlgebra) -> ExtElement {
    r_sum(g, |_| true)
}

/// `r_D`, supported on the roots of the subdiagram.
pub fn levi_r(g: &LieAlgebra, levi: &LeviDecomposition) -> ExtElement {
    r_sum(g, |r| levi.root_in_d[r])
}

/// `r_g − r_D`.
pub fn relative_r(g: &LieAlgebra, levi: &LeviDecomposition) -> ExtElement {
    r_sum(g, |r| !levi.root_in_d[r])
}

/// `r_{D'} − r_D` for nested subdiagrams `D ⊂ D'`.
pub fn relative_r_between(
    g: &LieAlgebra,
    outer: &LeviDecomposition,
    inner: &LeviDecomposition,
) -> ExtElement {
    r_sum(g, |r| outer.root_in_d[r] && !inner.root_in_d[r])
}

/// `YB(r,s) = [r12, s13+s23] + [r13, s23] + [s12, r13+r23] + [s13, r23]`.
pub fn yb_map(env: &Enveloping, r: &ExtElement, s: &ExtElement) -> TensorElement {
    assert!(r.deg == 2 && s.deg == 2, "YB needs degree-2 inputs");
    let re = r.embed();
    let se = s.embed();
    let (r12, r13, r23) = (re.at(&[1, 2], 3), re.at(&[1, 3], 3), re.at(&[2, 3], 3));
    let (s12, s13, s23) = (se.at(&[1, 2], 3), se.at(&[1, 3], 3), se.at(&[2, 3], 3));
    let mut out = env.commutator(&r12, &s13.add(&s23));
    out.add_assign(&env.commutator(&r13, &s23));
    out.add_assign(&env.commutator(&s12, &r13.add(&r23)));
    out.add_assign(&env.commutator(&s13, &r23));
    out
}

/// `[Ω12, Ω23]`.
pub fn omega_commutator(env: &Enveloping) -> TensorElement {
    env.commutator(&env.casimir(3, 0, 1), &env.casimir(3, 1, 2))
}

/// Lie elements `(X_1, …, X_k)` as an `ExtElement` via the wedge product.
pub fn decomposable(xs: &[AlgElement]) -> ExtElement {
    let refs: Vec<&AlgElement> = xs.iter().collect();
    ExtElement::wedge_of(&refs)
}
