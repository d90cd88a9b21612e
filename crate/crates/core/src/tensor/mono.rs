//! PBW monomials: one sorted exponent list per tensor slot.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Ordered PBW monomial `x_{i1}^{a1} x_{i2}^{a2} ⋯` with `i1 < i2 < ⋯`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SlotMono(pub SmallVec<[(u8, u8); 4]>);

impl SlotMono {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn gen(i: usize) -> Self {
        let mut v = SmallVec::new();
        v.push((i as u8, 1));
        Self(v)
    }

    pub fn from_exps(exps: &[(usize, u32)]) -> Self {
        let mut v: SmallVec<[(u8, u8); 4]> = exps
            .iter()
            .filter(|e| e.1 > 0)
            .map(|&(i, a)| (i as u8, a as u8))
            .collect();
        v.sort_unstable();
        Self(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.1 as u32).sum()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|e| e.0 as usize)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0
            .iter()
            .find(|e| e.0 as usize == i)
            .map_or(0, |e| e.1 as u32)
    }

    /// Drop one copy of the last letter.
    pub fn pop_last(&self) -> SlotMono {
        let mut v = self.0.clone();
        let l = v.len() - 1;
        if v[l].1 == 1 {
            v.pop();
        } else {
            v[l].1 -= 1;
        }
        SlotMono(v)
    }

    /// Append `x_i`; requires `i` not smaller than the last letter.
    pub fn push(&self, i: usize) -> SlotMono {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(last) if last.0 as usize == i => last.1 += 1,
            Some(last) => {
                debug_assert!((last.0 as usize) < i);
                v.push((i as u8, 1));
            }
            None => v.push((i as u8, 1)),
        }
        SlotMono(v)
    }

    /// Letters with multiplicity, in order.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .flat_map(|&(i, a)| std::iter::repeat(i as usize).take(a as usize))
    }

    pub fn contains_any(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.0.iter().any(|e| pred(e.0 as usize))
    }

    pub fn dense(&self, dim: usize) -> Vec<u32> {
        let mut v = vec![0; dim];
        for &(i, a) in &self.0 {
            v[i as usize] = a as u32;
        }
        v
    }

    /// Accumulate `Σ a_i w(x_i)` into `acc`.
    pub fn add_weight(&self, weights: &[Vec<i64>], acc: &mut [i64]) {
        for &(i, a) in &self.0 {
            for (k, w) in weights[i as usize].iter().enumerate() {
                acc[k] += a as i64 * w;
            }
        }
    }
}

impl Ord for SlotMono {
    /// Degree first; then the exponent vectors compared lexicographically
    /// by basis index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(x), Some(y)) => {
                        if x.0 != y.0 {
                            // the side with the earlier basis index has a
                            // positive exponent where the other has zero
                            return if x.0 < y.0 {
                                Ordering::Greater
                            } else {
                                Ordering::Less
                            };
                        }
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for SlotMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SlotMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, a)| {
                if a == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{a}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// One `SlotMono` per tensor slot.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorMono(pub SmallVec<[SlotMono; 3]>);

impl TensorMono {
    pub fn one(k: usize) -> Self {
        Self((0..k).map(|_| SlotMono::one()).collect())
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(SlotMono::degree).sum()
    }

    pub fn weight(&self, weights: &[Vec<i64>], rank: usize) -> Vec<i64> {
        let mut acc = vec![0; rank];
        for s in &self.0 {
            s.add_weight(weights, &mut acc);
        }
        acc
    }
}

impl Ord for TensorMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for TensorMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TensorMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("{s:?}")).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_graded() {
        let a = SlotMono::from_exps(&[(0, 2)]);
        let b = SlotMono::from_exps(&[(0, 1), (1, 1)]);
        let c = SlotMono::from_exps(&[(1, 1)]);
        assert!(c < a && c < b);
        assert!(b < a);
        assert_eq!(a.pop_last(), SlotMono::gen(0));
        assert_eq!(SlotMono::gen(0).push(0), a);
    }
}
