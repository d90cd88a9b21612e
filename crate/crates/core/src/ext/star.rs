//! The Lie structure `[·,·]*` on `g* ≅ g` attached to a subdiagram, its
//! Chevalley–Eilenberg differential on Λg, the coadjoint operators, and
//! the perturbed differential `⟦r_g − r_D, ·⟧`.

use crate::ext::element::{contract, derivation_ext, ExtElement, Idx};
use crate::ext::schouten::{relative_r, schouten};
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra};
use crate::linalg;
use crate::rational::Rat;

/// Basis `{v_i}` of a subspace together with its dual `{v^i}` under the
/// invariant form restricted to that subspace.
pub fn dual_pairs(g: &LieAlgebra, basis: &[AlgElement]) -> Vec<(AlgElement, AlgElement)> {
    let n = basis.len();
    if n == 0 {
        return Vec::new();
    }
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| g.form(x, y)).collect())
        .collect();
    let inv = linalg::invert_dense(&gram).expect("form nondegenerate on subspace");
    (0..n)
        .map(|i| {
            let mut dual = AlgElement::zero();
            for (j, b) in basis.iter().enumerate() {
                dual = dual.axpy(&inv[j][i], b);
            }
            (basis[i].clone(), dual)
        })
        .collect()
}

pub struct StarAlgebra<'a> {
    pub g: &'a LieAlgebra,
    pub levi: &'a LeviDecomposition,
    /// `table[a·dim + b] = [x_a, x_b]*`.
    table: Vec<AlgElement>,
    /// Dual basis `x^p` of g under the form.
    dual: Vec<AlgElement>,
    /// `δ(x_a)`.
    delta1: Vec<ExtElement>,
}

impl<'a> StarAlgebra<'a> {
    pub fn new(g: &'a LieAlgebra, levi: &'a LeviDecomposition) -> Self {
        let dim = g.dim();
        let parts = |x: &AlgElement| {
            (
                LeviDecomposition::apply(&levi.p_d, x),
                LeviDecomposition::apply(&levi.p_plus, x),
                LeviDecomposition::apply(&levi.p_minus, x),
                LeviDecomposition::apply(&levi.p_zero, x),
            )
        };
        let half = Rat::new(1, 2);
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            let (xd, xp, xm, x0) = parts(&AlgElement::basis(a));
            for b in 0..dim {
                let (yd, yp, ym, y0) = parts(&AlgElement::basis(b));
                let br = |u: &AlgElement, v: &AlgElement| g.bracket(u, v);
                let mut z = br(&xd, &yd);
                z = z.add(&br(&xd, &yp.add(&ym)));
                z = z.add(&br(&xp.add(&xm), &yd));
                z = z.add(&br(&xp, &yp));
                z = z.sub(&br(&xm, &ym));
                z = z.axpy(&half, &br(&x0, &yp.sub(&ym)));
                z = z.axpy(&half, &br(&xp.sub(&xm), &y0));
                table.push(z);
            }
        }
        let gram = g.form_matrix();
        let inv = linalg::invert_dense(gram).expect("invariant form nondegenerate");
        let dual: Vec<AlgElement> = (0..dim)
            .map(|p| {
                AlgElement(
                    (0..dim)
                        .filter(|q| !inv[*q][p].is_zero())
                        .map(|q| (q, inv[q][p].clone()))
                        .collect(),
                )
            })
            .collect();
        let mut s = Self {
            g,
            levi,
            table,
            dual,
            delta1: Vec::new(),
        };
        s.delta1 = (0..dim).map(|a| s.delta_basis(a)).collect();
        s
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &AlgElement {
        &self.table[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                out = out.axpy(&(ca * cb), self.bracket_basis(*a, *b));
            }
        }
        out
    }

    pub fn dual_basis(&self) -> &[AlgElement] {
        &self.dual
    }

    /// `δ(x_a) = Σ_{p<q} (x_a, [x^p, x^q]*) x_p ∧ x_q`.
    fn delta_basis(&self, a: usize) -> ExtElement {
        let dim = self.dim();
        let xa = AlgElement::basis(a);
        let mut out = ExtElement::zero(2);
        for p in 0..dim {
            for q in p + 1..dim {
                let c = self
                    .g
                    .form(&xa, &self.bracket(&self.dual[p], &self.dual[q]));
                if !c.is_zero() {
                    out.add_term(Idx::from_slice(&[p as u8, q as u8]), c);
                }
            }
        }
        out
    }

    /// Chevalley–Eilenberg differential of `(g, [·,·]*)` on Λg.
    pub fn ce_differential(&self, a: &ExtElement) -> ExtElement {
        odd_derivation(&self.delta1, a)
    }

    /// Matrix images of the coadjoint operator `ad*(X)` on g:
    /// `(ad*(X)Y, Z) = (Y, [X, Z]*)`.
    pub fn coadjoint_images(&self, x: &AlgElement) -> Vec<AlgElement> {
        let dim = self.dim();
        let br: Vec<AlgElement> = self.dual.iter().map(|d| self.bracket(x, d)).collect();
        (0..dim)
            .map(|b| {
                let y = AlgElement::basis(b);
                AlgElement(
                    (0..dim)
                        .filter_map(|q| {
                            Some((q, self.g.form(&y, &br[q]))).filter(|e| !e.1.is_zero())
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// `ad*(X)` extended to Λg as a derivation.
    pub fn coadjoint(&self, x: &AlgElement, a: &ExtElement) -> ExtElement {
        derivation_ext(&self.coadjoint_images(x), a)
    }

    /// `Σ_i e(v_i)·[ad(v^i)(1+2P₊)]^∧` for dual bases `{v_i}, {v^i}` of g_D.
    pub fn perturbation(&self, a: &ExtElement) -> ExtElement {
        let g = self.g;
        let dim = g.dim();
        let gd: Vec<AlgElement> = self
            .levi
            .gd_basis
            .iter()
            .map(|&b| AlgElement::basis(b))
            .collect();
        let mut out = ExtElement::zero(a.deg + 1);
        for (v, vd) in dual_pairs(g, &gd) {
            let images: Vec<AlgElement> = (0..dim)
                .map(|b| {
                    let x = AlgElement::basis(b);
                    let y = x.axpy(
                        &Rat::from_int(2),
                        &LeviDecomposition::apply(&self.levi.p_plus, &x),
                    );
                    g.bracket(&vd, &y)
                })
                .collect();
            let t = derivation_ext(&images, a);
            out.axpy_assign(&Rat::one(), &ExtElement::from_lie(&v).wedge(&t));
        }
        out
    }

    /// `2δ + Σ_i e(v_i)·[ad(v^i)(1+2P₊)]^∧`.
    pub fn ce_model(&self, a: &ExtElement) -> ExtElement {
        self.ce_differential(a)
            .scale(&Rat::from_int(2))
            .add(&self.perturbation(a))
    }

    /// Dual bases `{t_i}, {t^i}` of c_D.
    pub fn cd_pairs(&self) -> Vec<(AlgElement, AlgElement)> {
        dual_pairs(self.g, &self.levi.cd_basis)
    }

    /// Homotopy `h = Σ_i ad*(t_i) ι(t^i)`.
    pub fn homotopy(&self, a: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero(a.deg.saturating_sub(1));
        if a.deg == 0 {
            return out;
        }
        for (t, td) in self.cd_pairs() {
            out.axpy_assign(&Rat::one(), &self.coadjoint(&t, &contract(self.g, &td, a)));
        }
        out
    }

    /// Casimir `C = Σ_i ad*(t_i) ad*(t^i)`.
    pub fn casimir(&self, a: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero(a.deg);
        for (t, td) in self.cd_pairs() {
            out.axpy_assign(&Rat::one(), &self.coadjoint(&t, &self.coadjoint(&td, a)));
        }
        out
    }
}

/// Extend degree-1 images `φ(x_b) ∈ Λ^m g` (m odd) to an odd derivation.
pub fn odd_derivation(images: &[ExtElement], a: &ExtElement) -> ExtElement {
    let m = images.first().map_or(0, |e| e.deg);
    let mut out = ExtElement::zero(a.deg + m - 1);
    if a.deg == 0 {
        return out;
    }
    let mut buf: Vec<u8> = Vec::new();
    for (idx, c) in &a.terms {
        for j in 0..idx.len() {
            let s = if j % 2 == 0 { 1 } else { -1 };
            for (img, ci) in &images[idx[j] as usize].terms {
                buf.clear();
                buf.extend_from_slice(&idx[..j]);
                buf.extend_from_slice(img);
                buf.extend_from_slice(&idx[j + 1..]);
                out.add_unsorted(&buf, &(c * ci).mul_int(s));
            }
        }
    }
    out
}

/// `d = ⟦r_g − r_D, ·⟧`.
pub struct PerturbedDifferential<'a> {
    pub g: &'a LieAlgebra,
    pub f: ExtElement,
}

impl<'a> PerturbedDifferential<'a> {
    pub fn new(g: &'a LieAlgebra, levi: &LeviDecomposition) -> Self {
        Self {
            g,
            f: relative_r(g, levi),
        }
    }

    pub fn apply(&self, a: &ExtElement) -> ExtElement {
        schouten(self.g, &self.f, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Subdiagram;

    #[test]
    fn star_bracket_restricts_on_gd() {
        let g = LieAlgebra::from_str_type("A2").unwrap();
        let levi = LeviDecomposition::new(&g, &Subdiagram::parse("1", 2).unwrap()).unwrap();
        let s = StarAlgebra::new(&g, &levi);
        for &a in &levi.gd_basis {
            for &b in &levi.gd_basis {
                assert_eq!(s.bracket_basis(a, b), g.bracket_basis(a, b));
            }
        }
    }
}
