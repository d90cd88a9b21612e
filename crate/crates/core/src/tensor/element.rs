//! Sparse elements of U(g)^{⊗k} in PBW normal form, and the operations on
//! them that need no straightening: linear structure, slot placement and
//! permutation, coproducts, counits, the Hochschild differential and Alt.

use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lie::AlgElement;
use crate::rational::{binomial, factorial, Rat};
use crate::tensor::mono::{SlotMono, TensorMono};

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub k: usize,
    pub terms: FxHashMap<TensorMono, Rat>,
}

impl TensorElement {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::scalar(k, Rat::one())
    }

    pub fn scalar(k: usize, c: Rat) -> Self {
        let mut t = Self::zero(k);
        t.add_term(TensorMono::one(k), c);
        t
    }

    pub fn from_mono(m: TensorMono, c: Rat) -> Self {
        let mut t = Self::zero(m.k());
        t.add_term(m, c);
        t
    }

    /// The Lie element `x` placed in slot `slot` of a `k`-fold tensor.
    pub fn lie(k: usize, slot: usize, x: &AlgElement) -> Self {
        let mut t = Self::zero(k);
        for (b, c) in &x.0 {
            let mut m = TensorMono::one(k);
            m.0[slot] = SlotMono::gen(*b);
            t.add_term(m, c.clone());
        }
        t
    }

    /// `x_1 ⊗ ⋯ ⊗ x_k` for Lie elements.
    pub fn lie_tensor(xs: &[&AlgElement]) -> Self {
        let k = xs.len();
        let mut acc = Self::one(0);
        for x in xs {
            acc = acc.otimes(&Self::lie(1, 0, x));
        }
        debug_assert_eq!(acc.k, k);
        acc
    }

    pub fn add_term(&mut self, m: TensorMono, c: Rat) {
        debug_assert_eq!(m.k(), self.k);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &TensorMono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Constant term (coefficient of `1^{⊗k}`).
    pub fn constant(&self) -> Rat {
        self.coeff(&TensorMono::one(self.k))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(TensorMono::degree).max().unwrap_or(0)
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&TensorMono, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn axpy_assign(&mut self, s: &Rat, other: &TensorElement) {
        assert_eq!(self.k, other.k, "slot count mismatch");
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), s * c);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        self.axpy_assign(&Rat::one(), other);
    }

    pub fn sub_assign(&mut self, other: &TensorElement) {
        self.axpy_assign(&Rat::from_int(-1), other);
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scale(&self, s: &Rat) -> TensorElement {
        if s.is_zero() {
            return Self::zero(self.k);
        }
        TensorElement {
            k: self.k,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&Rat::from_int(-1))
    }

    pub fn check_same_k(&self, other: &TensorElement) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::SlotMismatch(self.k, other.k))
        }
    }

    /// Outer tensor product `self ⊗ other`.
    pub fn otimes(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero(self.k + other.k);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.0.extend(mb.0.iter().cloned());
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Slot `s` of `self` goes to slot `positions[s]` of a `k_total`-fold
    /// tensor; remaining slots get 1. With `k_total = k` this is the
    /// permutation action written `a^{p_1 p_2 ⋯}`.
    pub fn place(&self, positions: &[usize], k_total: usize) -> TensorElement {
        assert_eq!(positions.len(), self.k);
        let mut out = Self::zero(k_total);
        for (m, c) in &self.terms {
            let mut nm = TensorMono::one(k_total);
            for (s, &p) in positions.iter().enumerate() {
                nm.0[p] = m.0[s].clone();
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// `place` with 1-based positions, matching superscript notation.
    pub fn at(&self, positions_1based: &[usize], k_total: usize) -> TensorElement {
        let p: Vec<usize> = positions_1based.iter().map(|x| x - 1).collect();
        self.place(&p, k_total)
    }

    pub fn permute(&self, positions: &[usize]) -> TensorElement {
        self.place(positions, self.k)
    }

    /// `(1/k!) Σ_σ sign(σ) σ·a`.
    pub fn alt(&self) -> TensorElement {
        let k = self.k;
        let mut out = Self::zero(k);
        for (perm, sign) in permutations(k) {
            out.axpy_assign(&Rat::from_int(sign), &self.permute(&perm));
        }
        out.scale(&factorial(k as u32).recip())
    }

    /// `id^{⊗i} ⊗ Δ ⊗ id^{⊗(k-i-1)}` with 0-based slot `i`.
    pub fn coproduct_at(&self, i: usize) -> Result<TensorElement> {
        if i >= self.k {
            return Err(Error::SlotOutOfRange {
                slot: i + 1,
                k: self.k,
            });
        }
        let mut out = Self::zero(self.k + 1);
        for (m, c) in &self.terms {
            for (l, r, b) in slot_coproduct(&m.0[i]) {
                let mut nm: SmallVec<[SlotMono; 3]> = SmallVec::with_capacity(self.k + 1);
                nm.extend(m.0[..i].iter().cloned());
                nm.push(l);
                nm.push(r);
                nm.extend(m.0[i + 1..].iter().cloned());
                out.add_term(TensorMono(nm), c * &b);
            }
        }
        Ok(out)
    }

    /// Counit in 0-based slot `i`.
    pub fn counit_at(&self, i: usize) -> Result<TensorElement> {
        if i >= self.k || self.k < 2 {
            return Err(Error::SlotOutOfRange {
                slot: i + 1,
                k: self.k,
            });
        }
        let mut out = Self::zero(self.k - 1);
        for (m, c) in &self.terms {
            if m.0[i].is_one() {
                let mut nm = m.clone();
                nm.0.remove(i);
                out.add_term(nm, c.clone());
            }
        }
        Ok(out)
    }

    /// `d_H a = 1⊗a + Σ_{i=1}^k (-1)^i Δ_i(a) + (-1)^{k+1} a⊗1`.
    pub fn hochschild_d(&self) -> TensorElement {
        let k = self.k;
        let mut out = TensorElement::one(1).otimes(self);
        for i in 0..k {
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            out.axpy_assign(
                &Rat::from_int(sign),
                &self.coproduct_at(i).expect("slot in range"),
            );
        }
        let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
        out.axpy_assign(&Rat::from_int(sign), &self.otimes(&TensorElement::one(1)));
        out
    }

    pub fn filter(&self, keep: impl Fn(&TensorMono) -> bool) -> TensorElement {
        TensorElement {
            k: self.k,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn degree_part(&self, d: u32) -> TensorElement {
        self.filter(|m| m.degree() == d)
    }
}

/// `Δ(x^a) = Σ_{b ≤ a} C(a,b) x^b ⊗ x^{a-b}`; both sides stay ordered.
pub fn slot_coproduct(m: &SlotMono) -> Vec<(SlotMono, SlotMono, Rat)> {
    let mut acc: Vec<(Vec<(usize, u32)>, Vec<(usize, u32)>, Rat)> =
        vec![(Vec::new(), Vec::new(), Rat::one())];
    for &(i, a) in &m.0 {
        let a = a as u32;
        let mut next = Vec::with_capacity(acc.len() * (a as usize + 1));
        for (l, r, c) in &acc {
            for b in 0..=a {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                if b > 0 {
                    l2.push((i as usize, b));
                }
                if a - b > 0 {
                    r2.push((i as usize, a - b));
                }
                next.push((l2, r2, c * &binomial(a, b)));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(l, r, c)| (SlotMono::from_exps(&l), SlotMono::from_exps(&r), c))
        .collect()
}

/// All permutations of `0..k` as placement vectors with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(
        prefix: &mut Vec<usize>,
        used: &mut Vec<bool>,
        k: usize,
        out: &mut Vec<(Vec<usize>, i64)>,
    ) {
        if prefix.len() == k {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, k, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], k, &mut out);
    out
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(m, c)| format!("{c}·{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
