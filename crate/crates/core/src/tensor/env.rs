//! Products in U(g)^{⊗k}: PBW straightening with memoized rewrite steps,
//! plus the operations built on it (adjoint action, Θ, normal forms of
//! arbitrary words).
//!
//! The rewrite rule is `M'·x_j·x_i = (M'·x_i)·x_j + M'·[x_j, x_i]` for
//! `j > i`. Both the single-generator step and full monomial products are
//! cached per context; a context is not `Sync`, so worker threads `fork`
//! their own.

use std::cell::RefCell;
use std::rc::Rc;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::lie::{AlgElement, LieAlgebra};
use crate::rational::Rat;
use crate::tensor::element::TensorElement;
use crate::tensor::mono::{SlotMono, TensorMono};

pub type SlotPoly = Vec<(SlotMono, Rat)>;

pub struct Enveloping {
    pub alg: Arc<LieAlgebra>,
    gen_memo: RefCell<FxHashMap<(SlotMono, u8), Rc<SlotPoly>>>,
    mul_memo: RefCell<FxHashMap<(SlotMono, SlotMono), Rc<SlotPoly>>>,
    theta_memo: RefCell<FxHashMap<SlotMono, Rc<SlotPoly>>>,
}

fn collect(acc: FxHashMap<SlotMono, Rat>) -> SlotPoly {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn accumulate(acc: &mut FxHashMap<SlotMono, Rat>, poly: &SlotPoly, s: &Rat) {
    for (m, c) in poly {
        let e = acc.entry(m.clone()).or_insert_with(Rat::zero);
        *e += &(c * s);
    }
}

impl Enveloping {
    pub fn new(alg: Arc<LieAlgebra>) -> Self {
        Self {
            alg,
            gen_memo: RefCell::default(),
            mul_memo: RefCell::default(),
            theta_memo: RefCell::default(),
        }
    }

    /// Fresh context sharing the algebra but not the caches.
    pub fn fork(&self) -> Self {
        Self::new(self.alg.clone())
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Normal form of `M · x_i`.
    pub fn mul_gen(&self, m: &SlotMono, i: usize) -> Rc<SlotPoly> {
        match m.last() {
            None => return Rc::new(vec![(SlotMono::gen(i), Rat::one())]),
            Some(j) if j <= i => return Rc::new(vec![(m.push(i), Rat::one())]),
            _ => {}
        }
        let key = (m.clone(), i as u8);
        if let Some(p) = self.gen_memo.borrow().get(&key) {
            return p.clone();
        }
        let j = m.last().unwrap();
        let rest = m.pop_last();
        let mut acc: FxHashMap<SlotMono, Rat> = FxHashMap::default();
        let first = self.mul_gen(&rest, i);
        for (t, c) in first.iter() {
            accumulate(&mut acc, &self.mul_gen(t, j), c);
        }
        for (k, v) in &self.alg.bracket_basis(j, i).0 {
            accumulate(&mut acc, &self.mul_gen(&rest, *k), v);
        }
        let out = Rc::new(collect(acc));
        self.gen_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// Normal form of `M · N` for single-slot monomials.
    pub fn mul_slot(&self, a: &SlotMono, b: &SlotMono) -> Rc<SlotPoly> {
        if b.is_one() {
            return Rc::new(vec![(a.clone(), Rat::one())]);
        }
        if a.is_one() {
            return Rc::new(vec![(b.clone(), Rat::one())]);
        }
        if let (Some(la), Some(&(fb, _))) = (a.last(), b.0.first()) {
            if la <= fb as usize {
                let mut v = a.0.clone();
                for &(i, e) in &b.0 {
                    match v.last_mut() {
                        Some(l) if l.0 == i => l.1 += e,
                        _ => v.push((i, e)),
                    }
                }
                return Rc::new(vec![(SlotMono(v), Rat::one())]);
            }
        }
        let key = (a.clone(), b.clone());
        if let Some(p) = self.mul_memo.borrow().get(&key) {
            return p.clone();
        }
        let mut cur: SlotPoly = vec![(a.clone(), Rat::one())];
        for letter in b.letters() {
            let mut acc: FxHashMap<SlotMono, Rat> = FxHashMap::default();
            for (t, c) in &cur {
                accumulate(&mut acc, &self.mul_gen(t, letter), c);
            }
            cur = collect(acc);
        }
        let out = Rc::new(cur);
        self.mul_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// Slotwise product in U(g)^{⊗k}.
    pub fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        assert_eq!(a.k, b.k, "slot count mismatch in product");
        let k = a.k;
        let mut out = TensorElement::zero(k);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let polys: SmallVec<[Rc<SlotPoly>; 4]> =
                    (0..k).map(|s| self.mul_slot(&ma.0[s], &mb.0[s])).collect();
                expand(&polys, &(ca * cb), &mut out);
            }
        }
        out
    }

    /// Normal form of a word of `(slot, basis index)` letters in a
    /// `k`-fold tensor.
    pub fn normal_form(&self, k: usize, word: &[(usize, usize)]) -> TensorElement {
        let mut acc = TensorElement::one(k);
        for &(slot, b) in word {
            acc = self.mul(&acc, &TensorElement::lie(k, slot, &AlgElement::basis(b)));
        }
        acc
    }

    pub fn commutator(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// `ad(x)` acting diagonally (as a derivation over all slots).
    pub fn adjoint(&self, x: &AlgElement, a: &TensorElement) -> TensorElement {
        let k = a.k;
        let mut out = TensorElement::zero(k);
        for (m, c) in &a.terms {
            for s in 0..k {
                for (b, xb) in &x.0 {
                    let g = SlotMono::gen(*b);
                    let left = self.mul_slot(&g, &m.0[s]);
                    let right = self.mul_slot(&m.0[s], &g);
                    let cc = c * xb;
                    for (poly, sign) in [(left, Rat::one()), (right, Rat::from_int(-1))] {
                        for (t, v) in poly.iter() {
                            let mut nm = m.clone();
                            nm.0[s] = t.clone();
                            out.add_term(nm, &(&cc * v) * &sign);
                        }
                    }
                }
            }
        }
        out
    }

    fn theta_slot(&self, m: &SlotMono) -> Rc<SlotPoly> {
        if let Some(p) = self.theta_memo.borrow().get(m) {
            return p.clone();
        }
        let mut cur: SlotPoly = vec![(SlotMono::one(), Rat::one())];
        for letter in m.letters() {
            let img = self.alg.theta_basis(letter);
            let mut acc: FxHashMap<SlotMono, Rat> = FxHashMap::default();
            for (t, c) in &cur {
                for (b, v) in &img.0 {
                    accumulate(&mut acc, &self.mul_gen(t, *b), &(c * v));
                }
            }
            cur = collect(acc);
        }
        let out = Rc::new(cur);
        self.theta_memo.borrow_mut().insert(m.clone(), out.clone());
        out
    }

    /// `Θ^{⊗k}`.
    pub fn theta(&self, a: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(a.k);
        for (m, c) in &a.terms {
            let polys: SmallVec<[Rc<SlotPoly>; 4]> =
                m.0.iter().map(|s| self.theta_slot(s)).collect();
            expand(&polys, c, &mut out);
        }
        out
    }

    /// `Σ_i x_i ⊗ x^i` in slots `(s1, s2)` of a `k`-fold tensor.
    pub fn casimir(&self, k: usize, s1: usize, s2: usize) -> TensorElement {
        let mut out = TensorElement::zero(k);
        for (i, j, c) in self.alg.casimir_terms() {
            let mut m = TensorMono::one(k);
            m.0[s1] = SlotMono::gen(*i);
            m.0[s2] = SlotMono::gen(*j);
            if s1 == s2 {
                let p = self.mul_slot(&SlotMono::gen(*i), &SlotMono::gen(*j));
                for (t, v) in p.iter() {
                    let mut mm = TensorMono::one(k);
                    mm.0[s1] = t.clone();
                    out.add_term(mm, c * v);
                }
            } else {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.gen_memo.borrow().len(), self.mul_memo.borrow().len())
    }
}

/// Add `coef · ⊗_s polys[s]` into `out`.
pub(crate) fn expand(polys: &[Rc<SlotPoly>], coef: &Rat, out: &mut TensorElement) {
    let k = polys.len();
    if polys.iter().all(|p| p.len() == 1) {
        let mut m = TensorMono(SmallVec::with_capacity(k));
        let mut c = coef.clone();
        for p in polys {
            m.0.push(p[0].0.clone());
            c = &c * &p[0].1;
        }
        out.add_term(m, c);
        return;
    }
    if polys.iter().any(|p| p.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        let mut m = TensorMono(SmallVec::with_capacity(k));
        let mut c = coef.clone();
        for s in 0..k {
            let (t, v) = &polys[s][idx[s]];
            m.0.push(t.clone());
            c = &c * v;
        }
        out.add_term(m, c);
        let mut s = k;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < polys[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
}
