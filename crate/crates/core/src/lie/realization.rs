//! Faithful matrix realizations of the simple types, used once to derive
//! structure constants. Classical types use the defining representation;
//! G2 is realized inside so(8) as the fixed points of triality (folded D4).

use crate::lie::cartan::{CartanType, Series, SimpleType};
use crate::rational::Rat;

/// Dense square matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Rat>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            a: vec![Rat::zero(); n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.n + j]
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: &Rat) {
        let k = i * self.n + j;
        self.a[k] = &self.a[k] + v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.a[j * self.n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = o.get(k, j);
                    if !y.is_zero() {
                        out.add_entry(i, j, &(x * y));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    /// `λ` with `self = λ·other`, if such exists and `other ≠ 0`.
    pub fn ratio_to(&self, other: &Mat) -> Option<Rat> {
        let k = other.a.iter().position(|x| !x.is_zero())?;
        let lam = &self.a[k] / &other.a[k];
        (other.scale(&lam) == *self).then_some(lam)
    }

    fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(n);
        m.a[i * n + j] = Rat::one();
        m
    }

    /// Embed as a diagonal block starting at `off` in an `n`-dimensional matrix.
    fn embed(&self, n: usize, off: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[(off + i) * n + off + j] = self.get(i, j).clone();
            }
        }
        m
    }
}

/// Matrix size and raising generators `e_1..e_r` of a simple factor.
fn simple_raising(t: SimpleType) -> (usize, Vec<Mat>) {
    let r = t.rank;
    match t.series {
        Series::A => {
            let n = r + 1;
            (n, (0..r).map(|i| Mat::unit(n, i, i + 1)).collect())
        }
        Series::B => {
            // positions: 1..r -> 0..r-1, 0 -> r, -k -> 2r+1-k
            let n = 2 * r + 1;
            let pos = |k: i64| -> usize {
                if k > 0 {
                    (k - 1) as usize
                } else if k == 0 {
                    r
                } else {
                    (2 * r as i64 + 1 + k) as usize
                }
            };
            let mut es = chain_raising(r, n, &pos);
            let ri = r as i64;
            es.push(Mat::unit(n, pos(ri), pos(0)).sub(&Mat::unit(n, pos(0), pos(-ri))));
            (n, es)
        }
        Series::C | Series::D => {
            // positions: 1..r -> 0..r-1, -k -> 2r-k
            let n = 2 * r;
            let pos = |k: i64| -> usize {
                if k > 0 {
                    (k - 1) as usize
                } else {
                    (2 * r as i64 + k) as usize
                }
            };
            let mut es = chain_raising(r, n, &pos);
            let ri = r as i64;
            if t.series == Series::C {
                es.push(Mat::unit(n, pos(ri), pos(-ri)));
            } else {
                es.push(Mat::unit(n, pos(ri - 1), pos(-ri)).sub(&Mat::unit(
                    n,
                    pos(ri),
                    pos(-(ri - 1)),
                )));
            }
            (n, es)
        }
        Series::G => {
            let (n, d4) = simple_raising(SimpleType {
                series: Series::D,
                rank: 4,
            });
            let short = d4[0].add(&d4[2]).add(&d4[3]);
            (n, vec![short, d4[1].clone()])
        }
    }
}

/// `e_i = E_{i,i+1} - E_{-(i+1),-i}` for `i < r`.
fn chain_raising(r: usize, n: usize, pos: &dyn Fn(i64) -> usize) -> Vec<Mat> {
    (1..r as i64)
        .map(|i| Mat::unit(n, pos(i), pos(i + 1)).sub(&Mat::unit(n, pos(-(i + 1)), pos(-i))))
        .collect()
}

/// Chevalley generators `(e_i, f_i, h_i)` over the global node numbering,
/// realized block-diagonally. `f_i` is the transpose of `e_i` rescaled so
/// that `[h_i, e_i] = 2 e_i`.
pub struct Realization {
    pub e: Vec<Mat>,
    pub f: Vec<Mat>,
    pub h: Vec<Mat>,
}

pub fn realize(ct: &CartanType) -> Realization {
    let blocks: Vec<(usize, Vec<Mat>)> = ct.0.iter().map(|t| simple_raising(*t)).collect();
    let total: usize = blocks.iter().map(|b| b.0).sum();
    let mut e = Vec::new();
    let mut off = 0;
    for (n, es) in &blocks {
        e.extend(es.iter().map(|m| m.embed(total, off)));
        off += n;
    }
    let mut f = Vec::new();
    let mut h = Vec::new();
    for ei in &e {
        let ft = ei.transpose();
        let h0 = ei.commutator(&ft);
        let lam = h0
            .commutator(ei)
            .ratio_to(ei)
            .expect("realization: e_i not an ad h eigenvector");
        let c = Rat::from_int(2) / lam;
        f.push(ft.scale(&c));
        h.push(h0.scale(&c));
    }
    Realization { e, f, h }
}
