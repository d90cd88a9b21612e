//! Truncated power series in ħ with coefficients in U(g)^{⊗k}.

use crate::error::Result;
use crate::rational::Rat;
use crate::tensor::element::TensorElement;
use crate::tensor::env::Enveloping;

/// `Σ_{n=0}^{N} ħ^n coeffs[n]`; arithmetic truncates beyond `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarSeries {
    pub k: usize,
    pub coeffs: Vec<TensorElement>,
}

impl HbarSeries {
    pub fn zero(k: usize, n: usize) -> Self {
        Self {
            k,
            coeffs: vec![TensorElement::zero(k); n + 1],
        }
    }

    pub fn one(k: usize, n: usize) -> Self {
        let mut s = Self::zero(k, n);
        s.coeffs[0] = TensorElement::one(k);
        s
    }

    pub fn from_coeffs(k: usize, coeffs: Vec<TensorElement>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.iter().all(|c| c.k == k));
        Self { k, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &TensorElement {
        &self.coeffs[n]
    }

    pub fn truncate(&self, n: usize) -> HbarSeries {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, TensorElement::zero(self.k));
        Self {
            k: self.k,
            coeffs: c,
        }
    }

    pub fn has_unit_leading_term(&self) -> bool {
        self.coeffs[0] == TensorElement::one(self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TensorElement::is_zero)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn zip(
        &self,
        other: &HbarSeries,
        f: impl Fn(&TensorElement, &TensorElement) -> TensorElement,
    ) -> HbarSeries {
        let n = self.order().min(other.order());
        Self {
            k: self.k,
            coeffs: (0..=n)
                .map(|i| f(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        }
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &HbarSeries) -> HbarSeries {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Rat) -> HbarSeries {
        self.map(|c| c.scale(s))
    }

    pub fn map(&self, f: impl Fn(&TensorElement) -> TensorElement) -> HbarSeries {
        let coeffs: Vec<TensorElement> = self.coeffs.iter().map(f).collect();
        let k = coeffs[0].k;
        Self { k, coeffs }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&TensorElement) -> Result<TensorElement>,
    ) -> Result<HbarSeries> {
        let coeffs: Vec<TensorElement> = self.coeffs.iter().map(f).collect::<Result<_>>()?;
        let k = coeffs[0].k;
        Ok(Self { k, coeffs })
    }

    pub fn mul(&self, env: &Enveloping, other: &HbarSeries) -> HbarSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![TensorElement::zero(self.k); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = env.mul(&self.coeffs[i], &other.coeffs[j]);
                coeffs[i + j].add_assign(&p);
            }
        }
        Self { k: self.k, coeffs }
    }

    /// Product of several series, left to right.
    pub fn product(env: &Enveloping, factors: &[&HbarSeries]) -> HbarSeries {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = acc.mul(env, f);
        }
        acc
    }

    /// Inverse of a series with leading term `1^{⊗k}`: `Σ_m (1 - a)^m`.
    pub fn inverse(&self, env: &Enveloping) -> HbarSeries {
        assert!(
            self.has_unit_leading_term(),
            "series inverse needs unit leading term"
        );
        let n = self.order();
        let mut x = self.neg();
        x.coeffs[0] = TensorElement::zero(self.k);
        let mut out = HbarSeries::one(self.k, n);
        let mut pow = HbarSeries::one(self.k, n);
        for _ in 1..=n {
            pow = pow.mul(env, &x);
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        out
    }

    pub fn neg(&self) -> HbarSeries {
        self.scale(&Rat::from_int(-1))
    }

    /// `exp(a)` for a series with zero constant term.
    pub fn exp(&self, env: &Enveloping) -> HbarSeries {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let n = self.order();
        let mut out = HbarSeries::one(self.k, n);
        let mut pow = HbarSeries::one(self.k, n);
        for m in 1..=n {
            pow = pow.mul(env, self).scale(&Rat::new(1, m as i64));
            out = out.add(&pow);
        }
        out
    }

    pub fn place(&self, positions: &[usize], k_total: usize) -> HbarSeries {
        self.map(|c| c.place(positions, k_total))
    }

    pub fn at(&self, positions_1based: &[usize], k_total: usize) -> HbarSeries {
        self.map(|c| c.at(positions_1based, k_total))
    }

    pub fn coproduct_at(&self, i: usize) -> Result<HbarSeries> {
        self.try_map(|c| c.coproduct_at(i))
    }

    pub fn counit_at(&self, i: usize) -> Result<HbarSeries> {
        self.try_map(|c| c.counit_at(i))
    }

    pub fn theta(&self, env: &Enveloping) -> HbarSeries {
        self.map(|c| env.theta(c))
    }

    pub fn permute(&self, positions: &[usize]) -> HbarSeries {
        self.map(|c| c.permute(positions))
    }

    /// Total number of stored terms, used as a residual size.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(TensorElement::len).sum()
    }

    /// Per-order term counts.
    pub fn term_counts(&self) -> Vec<usize> {
        self.coeffs.iter().map(TensorElement::len).collect()
    }
}
