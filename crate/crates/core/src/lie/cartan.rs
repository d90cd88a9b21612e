//! Cartan data: series/rank labels, Cartan matrices and symmetrizers.
//!
//! Convention: `A[i][j] = α_j(h_i)`, so row `i` lists the eigenvalues of
//! `ad h_i` on the simple root vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => (1..=8).contains(&rank),
            Series::B | Series::C => (2..=6).contains(&rank),
            Series::D => (3..=6).contains(&rank),
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::UnsupportedCartan(format!(
                "{}{}",
                series.letter(),
                rank
            )))
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for i in 0..r {
            a[i][i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.series {
            Series::A => (0..r - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Series::B => {
                (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
                // node r is short
                link(r - 2, r - 1, -1, -2);
            }
            Series::C => {
                (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
                // node r is long
                link(r - 2, r - 1, -2, -1);
            }
            Series::D => {
                (0..r - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(r - 3, r - 1, -1, -1);
            }
            Series::G => link(0, 1, -3, -1),
        }
        a
    }

    /// `(α_i, α_i) / 2` per node, with long roots normalized to 1.
    pub fn symmetrizer(&self) -> Vec<Rat> {
        let r = self.rank;
        match self.series {
            Series::A | Series::D => vec![Rat::one(); r],
            Series::B => {
                let mut d = vec![Rat::one(); r];
                d[r - 1] = Rat::new(1, 2);
                d
            }
            Series::C => {
                let mut d = vec![Rat::new(1, 2); r];
                d[r - 1] = Rat::one();
                d
            }
            Series::G => vec![Rat::new(1, 3), Rat::one()],
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// A semisimple Cartan type: an ordered list of simple factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType(pub Vec<SimpleType>);

impl CartanType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    /// Block-diagonal Cartan matrix over the global node numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        let mut off = 0;
        for t in &self.0 {
            let b = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    a[off + i][off + j] = b[i][j];
                }
            }
            off += t.rank;
        }
        a
    }

    pub fn symmetrizer(&self) -> Vec<Rat> {
        self.0.iter().flat_map(|t| t.symmetrizer()).collect()
    }

    /// Factor index of each global node.
    pub fn node_factor(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(f, t)| std::iter::repeat(f).take(t.rank))
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedCartan(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad());
        }
        let mut factors = Vec::new();
        for part in trimmed.split(['x', 'X', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Series::A,
                Some('B') => Series::B,
                Some('C') => Series::C,
                Some('D') => Series::D,
                Some('G') => Series::G,
                _ => return Err(bad()),
            };
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            factors.push(SimpleType::new(series, rank).map_err(|_| bad())?);
        }
        Ok(CartanType(factors))
    }
}
