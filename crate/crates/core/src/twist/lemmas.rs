//! Tensor identities relating alternation, the coproduct, the Yang–Baxter
//! map and the Schouten bracket. Each function returns `lhs − rhs`, which
//! vanishes exactly when the identity holds.

use rustc_hash::FxHashMap;

use crate::ext::element::ExtElement;
use crate::ext::schouten::{decomposable, schouten, yb_map};
use crate::lie::AlgElement;
use crate::rational::{factorial, Rat};
use crate::tensor::element::permutations;
use crate::tensor::{Enveloping, SlotMono, TensorElement, TensorMono};

/// A linear map `U → U⊗U` given on the PBW monomials it is applied to.
pub type SplitMap = FxHashMap<SlotMono, TensorElement>;

/// `ξ^{j_1,…,j_i j_{i+1},…,j_{k+1}}`: slot `i` of `ξ` is split by `delta`
/// into positions `j_i, j_{i+1}`; slot `ℓ < i` goes to `j_ℓ` and slot
/// `ℓ > i` to `j_{ℓ+1}`. Positions and `i` are 0-based.
pub fn split_place(
    xi: &TensorElement,
    i: usize,
    positions: &[usize],
    delta: &SplitMap,
) -> TensorElement {
    let k = xi.k;
    assert_eq!(positions.len(), k + 1);
    let mut out = TensorElement::zero(k + 1);
    for (m, c) in &xi.terms {
        let Some(img) = delta.get(&m.0[i]) else {
            continue;
        };
        for (dm, dc) in &img.terms {
            let mut nm = TensorMono::one(k + 1);
            for l in 0..k {
                if l != i {
                    nm.0[positions[if l < i { l } else { l + 1 }]] = m.0[l].clone();
                }
            }
            nm.0[positions[i]] = dm.0[0].clone();
            nm.0[positions[i + 1]] = dm.0[1].clone();
            out.add_term(nm, c * dc);
        }
    }
    out
}

/// `(a, b, 1, …, â, …, b̂, …, k+1)` as a 0-based position list.
fn pair_first(a: usize, b: usize, total: usize) -> Vec<usize> {
    let mut p = vec![a, b];
    p.extend((0..total).filter(|&x| x != a && x != b));
    p
}

/// `(k+1)Alt_{k+1}(Σ_i (−1)^i id^{i−1}⊗Δ̃⊗id^{k−i} ξ)` against
/// `Σ_{a<b} (−1)^{a+b}((Alt_k ξ)^{ab,…} − (Alt_k ξ)^{ba,…})`.
pub fn alt_alt_residual(xi: &TensorElement, delta: &SplitMap) -> TensorElement {
    let k = xi.k;
    let ident: Vec<usize> = (0..=k).collect();
    let mut inner = TensorElement::zero(k + 1);
    for i in 1..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        inner.axpy_assign(&Rat::from_int(sign), &split_place(xi, i - 1, &ident, delta));
    }
    let lhs = inner.alt().scale(&Rat::from_int(k as i64 + 1));
    let alt = xi.alt();
    let mut rhs = TensorElement::zero(k + 1);
    for a in 0..=k {
        for b in a + 1..=k {
            // 1-based (−1)^{a+b} equals the 0-based parity
            let s = Rat::from_int(if (a + b) % 2 == 0 { 1 } else { -1 });
            rhs.axpy_assign(&s, &split_place(&alt, 0, &pair_first(a, b, k + 1), delta));
            rhs.axpy_assign(&-&s, &split_place(&alt, 0, &pair_first(b, a, k + 1), delta));
        }
    }
    lhs.sub(&rhs)
}

/// `Y∧X_1∧⋯∧X_k` against
/// `1/(k+1)! Σ_{i,τ} (−1)^{i−1}(−1)^τ X_{τ(1)}⊗⋯⊗Y⊗⋯⊗X_{τ(k)}` with `Y` in
/// slot `i`.
pub fn insertion_residual(y: &AlgElement, xs: &[AlgElement]) -> TensorElement {
    let k = xs.len();
    let mut all = vec![y.clone()];
    all.extend(xs.iter().cloned());
    let lhs = decomposable(&all).embed();
    let mut rhs = TensorElement::zero(k + 1);
    for (tau, s) in permutations(k) {
        for i in 0..=k {
            let mut factors: Vec<&AlgElement> = tau.iter().map(|&t| &xs[t]).collect();
            factors.insert(i, y);
            let sign = if i % 2 == 0 { s } else { -s };
            rhs.axpy_assign(&Rat::from_int(sign), &TensorElement::lie_tensor(&factors));
        }
    }
    lhs.sub(&rhs.scale(&factorial(k as u32 + 1).recip()))
}

/// `Σ_{a<b} (−1)^{a+b} [f^{ab}, η^{a,…} + η^{b,…}]` against
/// `−(k+1)/2 ⟦f, η⟧` for `f ∈ Λ²g`, `η ∈ Λ^k g`. In `η^{a,…}` the first
/// factor of `η` sits in slot `a`, the others fill the slots other than
/// `a, b` in order, and slot `b` carries 1.
pub fn alt_schouten_residual(env: &Enveloping, f: &ExtElement, eta: &ExtElement) -> TensorElement {
    let k = eta.deg;
    let fe = f.embed();
    let ee = eta.embed();
    let mut lhs = TensorElement::zero(k + 1);
    for a in 0..=k {
        for b in a + 1..=k {
            let s = Rat::from_int(if (a + b) % 2 == 0 { 1 } else { -1 });
            let rest: Vec<usize> = (0..=k).filter(|&x| x != a && x != b).collect();
            let place_first = |first: usize| {
                let mut p = vec![first];
                p.extend(rest.iter().copied());
                ee.place(&p, k + 1)
            };
            let e = place_first(a).add(&place_first(b));
            lhs.axpy_assign(&s, &env.commutator(&fe.place(&[a, b], k + 1), &e));
        }
    }
    let rhs = schouten(&env.alg, f, eta)
        .embed()
        .scale(&Rat::new(-(k as i64 + 1), 2));
    lhs.sub(&rhs)
}

/// `Alt₃(f¹²(χ¹³+χ²³) + χ¹²(f¹³+f²³) − f²³(χ¹²+χ¹³) − χ²³(f¹²+f¹³))`
/// against `⟦f, χ⟧` for `f, χ ∈ Λ²g`.
pub fn secondary_alt_residual(env: &Enveloping, f: &ExtElement, chi: &ExtElement) -> TensorElement {
    let (fe, ce) = (f.embed(), chi.embed());
    let at = |t: &TensorElement, p: [usize; 2]| t.at(&p, 3);
    let mut s = env.mul(&at(&fe, [1, 2]), &at(&ce, [1, 3]).add(&at(&ce, [2, 3])));
    s.add_assign(&env.mul(&at(&ce, [1, 2]), &at(&fe, [1, 3]).add(&at(&fe, [2, 3]))));
    s.sub_assign(&env.mul(&at(&fe, [2, 3]), &at(&ce, [1, 2]).add(&at(&ce, [1, 3]))));
    s.sub_assign(&env.mul(&at(&ce, [2, 3]), &at(&fe, [1, 2]).add(&at(&fe, [1, 3]))));
    s.alt().sub(&schouten(&env.alg, f, chi).embed())
}

/// `YB(r₁∧r₂, s₁∧s₂)` against
/// `(3/2) Σ_{i,j} (−1)^{i+j} [r_i,s_j]∧r_{3−i}∧s_{3−j}`.
pub fn yb_schouten_residual(
    env: &Enveloping,
    r: [&AlgElement; 2],
    s: [&AlgElement; 2],
) -> TensorElement {
    let g = &*env.alg;
    let lhs = yb_map(
        env,
        &decomposable(&[r[0].clone(), r[1].clone()]),
        &decomposable(&[s[0].clone(), s[1].clone()]),
    );
    let mut sum = ExtElement::zero(3);
    for i in 0..2 {
        for j in 0..2 {
            let sign = Rat::from_int(if (i + j) % 2 == 0 { 1 } else { -1 });
            let term = decomposable(&[g.bracket(r[i], s[j]), r[1 - i].clone(), s[1 - j].clone()]);
            sum.axpy_assign(&sign, &term);
        }
    }
    lhs.sub(&sum.embed().scale(&Rat::new(3, 2)))
}

/// `Δ` on every slot monomial occurring in `xi`.
pub fn coproduct_split(xi: &TensorElement) -> SplitMap {
    let mut map = SplitMap::default();
    for m in xi.terms.keys() {
        for s in &m.0 {
            map.entry(s.clone()).or_insert_with(|| {
                let one = TensorElement::from_mono(TensorMono(std::iter::once(s.clone()).collect()), Rat::one());
                one.coproduct_at(0).expect("one slot")
            });
        }
    }
    map
}
