//! Elements of the exterior algebra Λg over the Lie basis, and the
//! elementary operators on it: wedge products, exterior multiplication,
//! contraction, derivation extensions of linear maps of g.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lie::{AlgElement, LieAlgebra};
use crate::rational::{factorial, Rat};
use crate::tensor::element::permutations;
use crate::tensor::{SlotMono, TensorElement, TensorMono};

/// Strictly increasing basis indices.
pub type Idx = SmallVec<[u8; 4]>;

/// Zero elements compare equal regardless of `deg`.
#[derive(Clone)]
pub struct ExtElement {
    pub deg: usize,
    pub terms: BTreeMap<Idx, Rat>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.deg == other.deg || self.terms.is_empty())
    }
}

impl Eq for ExtElement {}

/// Sort `v` in place, returning the permutation sign, or `None` on a
/// repeated index.
pub fn sort_sign(v: &mut [u8]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

impl ExtElement {
    pub fn zero(deg: usize) -> Self {
        Self {
            deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> Self {
        let mut s = Self::zero(0);
        s.add_term(Idx::new(), c);
        s
    }

    /// `x_{i1} ∧ ⋯ ∧ x_{ik}` for arbitrary (unsorted) indices.
    pub fn basis(idx: &[usize]) -> Self {
        let mut v: Idx = idx.iter().map(|&i| i as u8).collect();
        let mut out = Self::zero(idx.len());
        if let Some(s) = sort_sign(&mut v) {
            out.add_term(v, Rat::from_int(s));
        }
        out
    }

    pub fn from_lie(x: &AlgElement) -> Self {
        let mut out = Self::zero(1);
        for (b, c) in &x.0 {
            out.add_term(smallvec::smallvec![*b as u8], c.clone());
        }
        out
    }

    /// `X_1 ∧ ⋯ ∧ X_k`.
    pub fn wedge_of(xs: &[&AlgElement]) -> Self {
        xs.iter()
            .fold(Self::one(), |acc, x| acc.wedge(&Self::from_lie(x)))
    }

    /// Degree-1 part as a Lie element.
    pub fn to_lie(&self) -> AlgElement {
        assert_eq!(self.deg, 1);
        AlgElement(
            self.terms
                .iter()
                .map(|(i, c)| (i[0] as usize, c.clone()))
                .collect(),
        )
    }

    pub fn add_term(&mut self, idx: Idx, c: Rat) {
        debug_assert_eq!(idx.len(), self.deg);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Add `c·x_{idx}` for unsorted `idx`, applying the reordering sign.
    pub fn add_unsorted(&mut self, idx: &[u8], c: &Rat) {
        let mut v: Idx = idx.iter().copied().collect();
        if let Some(s) = sort_sign(&mut v) {
            self.add_term(v, c.mul_int(s));
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

    pub fn coeff(&self, idx: &[u8]) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn axpy_assign(&mut self, s: &Rat, other: &ExtElement) {
        if other.is_zero() || s.is_zero() {
            return;
        }
        assert_eq!(self.deg, other.deg, "degree mismatch");
        for (i, c) in &other.terms {
            self.add_term(i.clone(), s * c);
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        out.axpy_assign(&Rat::one(), other);
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        out.axpy_assign(&Rat::from_int(-1), other);
        out
    }

    pub fn scale(&self, s: &Rat) -> ExtElement {
        if s.is_zero() {
            return Self::zero(self.deg);
        }
        ExtElement {
            deg: self.deg,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> ExtElement {
        self.scale(&Rat::from_int(-1))
    }

    pub fn wedge(&self, other: &ExtElement) -> ExtElement {
        let mut out = Self::zero(self.deg + other.deg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut v: Idx = a.clone();
                v.extend(b.iter().copied());
                if let Some(s) = sort_sign(&mut v) {
                    out.add_term(v, (ca * cb).mul_int(s));
                }
            }
        }
        out
    }

    /// Apply a linear map given on basis tuples.
    pub fn map_basis(&self, out_deg: usize, f: impl Fn(&Idx) -> ExtElement) -> ExtElement {
        let mut out = Self::zero(out_deg);
        for (i, c) in &self.terms {
            out.axpy_assign(c, &f(i));
        }
        out
    }

    /// `Alt_k(X_1 ⊗ ⋯ ⊗ X_k)` extended linearly.
    pub fn embed(&self) -> TensorElement {
        let k = self.deg;
        let mut out = TensorElement::zero(k);
        let norm = factorial(k as u32).recip();
        let perms = permutations(k);
        for (idx, c) in &self.terms {
            let cc = c * &norm;
            for (p, s) in &perms {
                let m = TensorMono(p.iter().map(|&j| SlotMono::gen(idx[j] as usize)).collect());
                out.add_term(m, cc.mul_int(*s));
            }
        }
        out
    }

    /// Inverse of `embed` on alternating elements of g^{⊗k}.
    pub fn from_alternating(t: &TensorElement) -> Result<ExtElement> {
        let k = t.k;
        let kf = factorial(k as u32);
        let mut out = Self::zero(k);
        for (m, c) in &t.terms {
            if m.0.iter().any(|s| s.degree() != 1) {
                return Err(Error::Invalid(format!("{m:?} is not in g^{{⊗{k}}}")));
            }
            let idx: Idx = m.0.iter().map(|s| s.0[0].0).collect();
            if idx.windows(2).all(|w| w[0] < w[1]) {
                out.add_term(idx, c * &kf);
            }
        }
        if out.embed() != *t {
            return Err(Error::Invalid("tensor is not alternating".into()));
        }
        Ok(out)
    }

    pub fn theta(&self, g: &LieAlgebra) -> ExtElement {
        let imgs: Vec<ExtElement> = (0..g.dim())
            .map(|b| Self::from_lie(g.theta_basis(b)))
            .collect();
        self.map_basis(self.deg, |idx| {
            idx.iter()
                .fold(Self::one(), |acc, &b| acc.wedge(&imgs[b as usize]))
        })
    }

    /// Total h-weight of a basis tuple.
    pub fn weight_of(g: &LieAlgebra, idx: &[u8]) -> Vec<i64> {
        let mut w = vec![0; g.rank];
        for &b in idx {
            for (k, x) in g.weights[b as usize].iter().enumerate() {
                w[k] += x;
            }
        }
        w
    }
}

/// Increasing `k`-subsets of `0..dim`.
pub fn basis_tuples(dim: usize, k: usize) -> Vec<Idx> {
    let mut out = Vec::new();
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Idx, out: &mut Vec<Idx>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for b in start..dim {
            cur.push(b as u8);
            rec(b + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    rec(0, dim, k, &mut Idx::new(), &mut out);
    out
}

/// Exterior multiplication `e(v)`.
pub fn ext_mul(v: &AlgElement, a: &ExtElement) -> ExtElement {
    ExtElement::from_lie(v).wedge(a)
}

/// Contraction `ι(v) Y_1∧⋯∧Y_l = Σ (-1)^{i-1} (v, Y_i) ⋯Ŷ_i⋯` via the form.
pub fn contract(g: &LieAlgebra, v: &AlgElement, a: &ExtElement) -> ExtElement {
    if a.deg == 0 {
        return ExtElement::zero(0);
    }
    let mut out = ExtElement::zero(a.deg - 1);
    for (idx, c) in &a.terms {
        for (i, &y) in idx.iter().enumerate() {
            let p = g.form(v, &AlgElement::basis(y as usize));
            if p.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(i);
            let s = if i % 2 == 0 { 1 } else { -1 };
            out.add_term(rest, (c * &p).mul_int(s));
        }
    }
    out
}

/// `T^∧` for `T ∈ gl(g)` given by the images of basis vectors.
pub fn derivation_ext(images: &[AlgElement], a: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero(a.deg);
    for (idx, c) in &a.terms {
        for i in 0..idx.len() {
            for (b, v) in &images[idx[i] as usize].0 {
                let mut w = idx.clone();
                w[i] = *b as u8;
                out.add_unsorted(&w, &(c * v));
            }
        }
    }
    out
}

/// `ad(X)` extended to Λg.
pub fn ad_ext(g: &LieAlgebra, x: &AlgElement, a: &ExtElement) -> ExtElement {
    let images: Vec<AlgElement> = (0..g.dim())
        .map(|b| g.bracket(x, &AlgElement::basis(b)))
        .collect();
    derivation_ext(&images, a)
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let w: Vec<String> = i.iter().map(|b| format!("x{b}")).collect();
                format!(
                    "{c}·{}",
                    if w.is_empty() {
                        "1".into()
                    } else {
                        w.join("∧")
                    }
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
