//! Subdiagrams and the splitting g = n⁻_D ⊕ l_D ⊕ n⁺_D with l_D = g_D ⊕ c_D.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::algebra::{AlgElement, Generator, LieAlgebra};
use crate::linalg;
use crate::rational::Rat;

/// Sorted, deduplicated set of 0-based simple-root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Subdiagram(pub Vec<usize>);

impl Subdiagram {
    pub fn new(rank: usize, mut nodes: Vec<usize>) -> Result<Self> {
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&bad) = nodes.iter().find(|&&i| i >= rank) {
            return Err(Error::NodeOutOfRange(bad + 1));
        }
        Ok(Self(nodes))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn full(rank: usize) -> Self {
        Self((0..rank).collect())
    }

    /// Parse a comma-separated list of 1-based indices; the empty string is ∅.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut nodes = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let k: usize = tok
                .parse()
                .map_err(|_| Error::Invalid(format!("bad node index {tok:?}")))?;
            if k == 0 || k > rank {
                return Err(Error::NodeOutOfRange(k));
            }
            nodes.push(k - 1);
        }
        Self::new(rank, nodes)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Subdiagram) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    /// 1-based comma-separated form, inverse of `parse`.
    pub fn to_cli(&self) -> String {
        self.0
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Subdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_cli())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    NMinus,
    GdRoot,
    Cartan,
    NPlus,
}

#[derive(Debug, Clone)]
pub struct LeviDecomposition {
    pub d: Subdiagram,
    pub root_in_d: Vec<bool>,
    /// Basis indices of `g_D`: root vectors of `R_D` and `h_i`, `i ∈ D`.
    pub gd_basis: Vec<usize>,
    /// Fundamental coweights `λ_j^∨`, `j ∉ D`, in `h_1..h_n` coordinates.
    pub cd_coweights: Vec<Vec<Rat>>,
    pub cd_basis: Vec<AlgElement>,
    pub nplus_basis: Vec<usize>,
    pub nminus_basis: Vec<usize>,
    /// Basis indices spanning `l_D`: root vectors of `R_D` and all `h_i`.
    pub ld_basis: Vec<usize>,
    /// `hd_proj[i]` = the `h_D` component of `h_i`, in `h` coordinates.
    pub hd_proj: Vec<Vec<Rat>>,
    pub p_plus: Vec<Vec<Rat>>,
    pub p_minus: Vec<Vec<Rat>>,
    pub p_zero: Vec<Vec<Rat>>,
    pub p_d: Vec<Vec<Rat>>,
    pieces: Vec<Piece>,
}

impl LeviDecomposition {
    pub fn new(g: &LieAlgebra, d: &Subdiagram) -> Result<Self> {
        let n = g.rank;
        if let Some(&bad) = d.0.iter().find(|&&i| i >= n) {
            return Err(Error::NodeOutOfRange(bad + 1));
        }
        let root_in_d: Vec<bool> = g
            .positive_roots
            .iter()
            .map(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || d.contains(i)))
            .collect();
        let dim = g.dim();
        let mut pieces = vec![Piece::Cartan; dim];
        let (mut gd, mut np, mut nm, mut ld) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for b in 0..dim {
            match g.basis[b] {
                Generator::F(r) | Generator::E(r) if root_in_d[r] => {
                    pieces[b] = Piece::GdRoot;
                    gd.push(b);
                    ld.push(b);
                }
                Generator::F(_) => {
                    pieces[b] = Piece::NMinus;
                    nm.push(b);
                }
                Generator::E(_) => {
                    pieces[b] = Piece::NPlus;
                    np.push(b);
                }
                Generator::H(i) => {
                    if d.contains(i) {
                        gd.push(b);
                    }
                    ld.push(b);
                }
            }
        }

        let a_dense: Vec<Vec<Rat>> = g
            .cartan
            .iter()
            .map(|row| row.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        let a_inv = linalg::invert_dense(&a_dense).expect("Cartan matrix invertible");
        let cd_coweights: Vec<Vec<Rat>> = (0..n)
            .filter(|j| !d.contains(*j))
            .map(|j| a_inv[j].clone())
            .collect();
        let cd_basis: Vec<AlgElement> = cd_coweights
            .iter()
            .map(|c| {
                AlgElement(
                    (0..n)
                        .filter(|k| !c[*k].is_zero())
                        .map(|k| (g.h_index(k), c[k].clone()))
                        .collect(),
                )
            })
            .collect();

        // h_D part of h_i: Σ_{k∈D} b_k h_k with α_j(.) matching for j ∈ D.
        let hd_proj: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut out = vec![Rat::zero(); n];
                if d.is_empty() {
                    return out;
                }
                let rows: Vec<linalg::SparseVec> =
                    d.0.iter()
                        .map(|&j| {
                            d.0.iter()
                                .enumerate()
                                .filter(|(_, &k)| g.cartan[k][j] != 0)
                                .map(|(col, &k)| (col, Rat::from_int(g.cartan[k][j])))
                                .collect()
                        })
                        .collect();
                let rhs: Vec<Rat> = d.0.iter().map(|&j| Rat::from_int(g.cartan[i][j])).collect();
                let x = linalg::solve(rows, rhs, d.len()).expect("g_D Cartan matrix invertible");
                for (col, v) in x {
                    out[d.0[col]] = v;
                }
                out
            })
            .collect();

        let zero = || vec![vec![Rat::zero(); dim]; dim];
        let (mut pp, mut pm, mut p0, mut pd) = (zero(), zero(), zero(), zero());
        for b in 0..dim {
            match pieces[b] {
                Piece::NPlus => pp[b][b] = Rat::one(),
                Piece::NMinus => pm[b][b] = Rat::one(),
                Piece::GdRoot => pd[b][b] = Rat::one(),
                Piece::Cartan => {
                    let Generator::H(i) = g.basis[b] else {
                        unreachable!()
                    };
                    for k in 0..n {
                        let v = &hd_proj[i][k];
                        let id = if k == i { Rat::one() } else { Rat::zero() };
                        pd[g.h_index(k)][b] = v.clone();
                        p0[g.h_index(k)][b] = &id - v;
                    }
                }
            }
        }

        Ok(Self {
            d: d.clone(),
            root_in_d,
            gd_basis: gd,
            cd_coweights,
            cd_basis,
            nplus_basis: np,
            nminus_basis: nm,
            ld_basis: ld,
            hd_proj,
            p_plus: pp,
            p_minus: pm,
            p_zero: p0,
            p_d: pd,
            pieces,
        })
    }

    pub fn piece(&self, b: usize) -> Piece {
        self.pieces[b]
    }

    pub fn in_n(&self, b: usize) -> bool {
        matches!(self.pieces[b], Piece::NPlus | Piece::NMinus)
    }

    pub fn dim_cd(&self) -> usize {
        self.cd_coweights.len()
    }

    pub fn corank(&self) -> usize {
        self.cd_coweights.len()
    }

    /// c_D-weight of an h-weight: its coordinates at nodes outside D.
    pub fn cd_weight(&self, w: &[i64]) -> Vec<i64> {
        w.iter()
            .enumerate()
            .filter(|(i, _)| !self.d.contains(*i))
            .map(|(_, &c)| c)
            .collect()
    }

    pub fn cd_weight_is_zero(&self, w: &[i64]) -> bool {
        w.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.d.contains(i))
    }

    pub fn apply(m: &[Vec<Rat>], x: &AlgElement) -> AlgElement {
        let dim = m.len();
        let mut acc = vec![Rat::zero(); dim];
        for (b, c) in &x.0 {
            for (row, acc_r) in acc.iter_mut().enumerate() {
                let v = &m[row][*b];
                if !v.is_zero() {
                    *acc_r += &(v * c);
                }
            }
        }
        AlgElement::from_dense(&acc)
    }

    /// Lie projection l_D → g_D (identity on root vectors of R_D).
    pub fn to_gd(&self, x: &AlgElement) -> AlgElement {
        Self::apply(&self.p_d, x)
    }
}
