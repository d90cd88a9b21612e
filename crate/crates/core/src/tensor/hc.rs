//! Generalized Harish-Chandra projections π_D^k and π̄_D^k on
//! c_D-invariant elements.
//!
//! On c_D-weight-zero PBW monomials, containing a letter of n⁺_D is
//! equivalent to containing one of n⁻_D, and the span of such monomials is
//! the kernel. Surviving monomials already lie in U(l_D)^{⊗k}; π̄ then maps
//! each Cartan letter to its h_D component, which keeps monomials ordered
//! because Cartan letters sit in a contiguous block.

use std::rc::Rc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lie::{Generator, LeviDecomposition, LieAlgebra};
use crate::rational::Rat;
use crate::tensor::element::TensorElement;
use crate::tensor::env::{expand, SlotPoly};
use crate::tensor::mono::SlotMono;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcVariant {
    Pi,
    PiBar,
}

pub fn hc_project(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    a: &TensorElement,
    variant: HcVariant,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero(a.k);
    let mut cache: FxHashMap<SlotMono, Rc<SlotPoly>> = FxHashMap::default();
    for (m, c) in &a.terms {
        let w = m.weight(&g.weights, g.rank);
        if !levi.cd_weight_is_zero(&w) {
            return Err(Error::NotInHcDomain(format!("{m:?}")));
        }
        if m.0.iter().any(|s| s.contains_any(|b| levi.in_n(b))) {
            continue;
        }
        match variant {
            HcVariant::Pi => out.add_term(m.clone(), c.clone()),
            HcVariant::PiBar => {
                let polys: SmallVec<[Rc<SlotPoly>; 4]> =
                    m.0.iter()
                        .map(|s| {
                            cache
                                .entry(s.clone())
                                .or_insert_with(|| Rc::new(bar_slot(g, levi, s)))
                                .clone()
                        })
                        .collect();
                expand(&polys, c, &mut out);
            }
        }
    }
    Ok(out)
}

/// Substitute `h_i ↦ Σ_{k∈D} p_{ik} h_k` in a monomial of U(l_D).
fn bar_slot(g: &LieAlgebra, levi: &LeviDecomposition, s: &SlotMono) -> SlotPoly {
    let n = g.rank;
    let mut pre = Vec::new();
    let mut post = Vec::new();
    let mut hpoly: FxHashMap<Vec<u32>, Rat> = FxHashMap::default();
    hpoly.insert(vec![0; n], Rat::one());
    for &(b, e) in &s.0 {
        match g.basis[b as usize] {
            Generator::F(_) => pre.push((b as usize, e as u32)),
            Generator::E(_) => post.push((b as usize, e as u32)),
            Generator::H(i) => {
                let lin: Vec<(usize, &Rat)> = levi.hd_proj[i]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                for _ in 0..e {
                    let mut next: FxHashMap<Vec<u32>, Rat> = FxHashMap::default();
                    for (mono, c) in &hpoly {
                        for (k, v) in &lin {
                            let mut m2 = mono.clone();
                            m2[*k] += 1;
                            *next.entry(m2).or_insert_with(Rat::zero) += &(c * *v);
                        }
                    }
                    hpoly = next;
                }
            }
        }
    }
    hpoly
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(hm, c)| {
            let mut exps = pre.clone();
            exps.extend(
                hm.iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(k, &a)| (g.h_index(k), a)),
            );
            exps.extend(post.iter().cloned());
            (SlotMono::from_exps(&exps), c)
        })
        .collect()
}
