//! Finite-dimensional truncations of invariant subspaces of U(g)^{⊗k} and
//! the Hochschild coboundary solver.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra};
use crate::linalg::{self, SparseVec};
use crate::rational::Rat;
use crate::tensor::element::TensorElement;
use crate::tensor::env::Enveloping;
use crate::tensor::mono::{SlotMono, TensorMono};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// The Levi subalgebra l_D (weight zero for all of h, plus g_D).
    Ld,
    /// The semisimple part g_D.
    Gd,
    /// The centre c_D (weight condition only).
    Cd,
    /// The full algebra g.
    G,
}

/// Column order for coboundary solves. Both give valid deterministic
/// solutions; they differ in which free directions are set to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    GradedLex,
    Reverse,
}

/// Single-slot monomials of degree ≤ `max_deg` in the given letters
/// (increasing basis indices), with weights.
fn slot_monomials(g: &LieAlgebra, letters: &[usize], max_deg: u32) -> Vec<(SlotMono, Vec<i64>)> {
    let mut out = Vec::new();
    fn rec(
        g: &LieAlgebra,
        start: usize,
        letters: &[usize],
        left: u32,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<(SlotMono, Vec<i64>)>,
    ) {
        let m = SlotMono::from_exps(cur);
        let mut w = vec![0; g.rank];
        m.add_weight(&g.weights, &mut w);
        out.push((m, w));
        if left == 0 {
            return;
        }
        for p in start..letters.len() {
            for a in 1..=left {
                cur.push((letters[p], a));
                rec(g, p + 1, letters, left - a, cur, out);
                cur.pop();
            }
        }
    }
    rec(g, 0, letters, max_deg, &mut Vec::new(), &mut out);
    out
}

/// `k`-slot monomials of total degree ≤ `max_deg` whose weight satisfies
/// `keep`, in canonical order.
pub fn monomials(
    g: &LieAlgebra,
    k: usize,
    max_deg: u32,
    keep: impl Fn(&[i64]) -> bool,
) -> Vec<TensorMono> {
    let all: Vec<usize> = (0..g.dim()).collect();
    monomials_in(g, &all, k, max_deg, keep)
}

/// As [`monomials`], using only the listed letters.
pub fn monomials_in(
    g: &LieAlgebra,
    letters: &[usize],
    k: usize,
    max_deg: u32,
    keep: impl Fn(&[i64]) -> bool,
) -> Vec<TensorMono> {
    let mut letters = letters.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let slots = slot_monomials(g, &letters, max_deg);
    let mut out = Vec::new();
    fn rec(
        slots: &[(SlotMono, Vec<i64>)],
        k: usize,
        left: u32,
        cur: &mut Vec<usize>,
        w: &mut Vec<i64>,
        keep: &dyn Fn(&[i64]) -> bool,
        out: &mut Vec<TensorMono>,
    ) {
        if cur.len() == k {
            if keep(w) {
                out.push(TensorMono(
                    cur.iter().map(|&i| slots[i].0.clone()).collect(),
                ));
            }
            return;
        }
        for (i, (m, mw)) in slots.iter().enumerate() {
            let d = m.degree();
            if d > left {
                continue;
            }
            cur.push(i);
            for (a, b) in w.iter_mut().zip(mw) {
                *a += b;
            }
            rec(slots, k, left - d, cur, w, keep, out);
            for (a, b) in w.iter_mut().zip(mw) {
                *a -= b;
            }
            cur.pop();
        }
    }
    let mut w = vec![0; g.rank];
    rec(&slots, k, max_deg, &mut Vec::new(), &mut w, &keep, &mut out);
    out.sort();
    out
}

/// Weight filter and Lie generators whose annihilator cuts out the
/// invariants of `group`.
fn group_data<'a>(
    g: &'a LieAlgebra,
    levi: &'a LeviDecomposition,
    group: Group,
) -> (Box<dyn Fn(&[i64]) -> bool + 'a>, Vec<AlgElement>) {
    let gens_for = |nodes: Vec<usize>| -> Vec<AlgElement> {
        nodes
            .into_iter()
            .flat_map(|i| {
                let r = g.simple_root_index(i);
                [
                    AlgElement::basis(g.e_index(r)),
                    AlgElement::basis(g.f_index(r)),
                ]
            })
            .collect()
    };
    match group {
        Group::Ld => (
            Box::new(|w: &[i64]| w.iter().all(|&c| c == 0)),
            gens_for(levi.d.0.clone()),
        ),
        Group::G => (
            Box::new(|w: &[i64]| w.iter().all(|&c| c == 0)),
            gens_for((0..g.rank).collect()),
        ),
        Group::Cd => (
            Box::new(move |w: &[i64]| levi.cd_weight_is_zero(w)),
            Vec::new(),
        ),
        Group::Gd => {
            let d = levi.d.0.clone();
            let filt = move |w: &[i64]| {
                d.iter()
                    .all(|&i| (0..g.rank).map(|j| w[j] * g.cartan[i][j]).sum::<i64>() == 0)
            };
            (Box::new(filt), gens_for(levi.d.0.clone()))
        }
    }
}

/// Row keys for assembled systems: a tag (which constraint family) plus
/// an output monomial.
struct RowIndex {
    map: FxHashMap<(usize, TensorMono), usize>,
}

impl RowIndex {
    fn new() -> Self {
        Self {
            map: FxHashMap::default(),
        }
    }

    fn get(&mut self, tag: usize, m: &TensorMono) -> usize {
        let n = self.map.len();
        *self.map.entry((tag, m.clone())).or_insert(n)
    }

    fn len(&self) -> usize {
        self.map.len()
    }
}

/// Basis of the invariants of `group` inside the span of `k`-slot
/// monomials of degree ≤ `max_degree` (restricted by weight).
pub fn invariant_subspace_basis(
    env: &Enveloping,
    levi: &LeviDecomposition,
    k: usize,
    max_degree: u32,
    group: Group,
) -> Vec<TensorElement> {
    let g = &*env.alg;
    let (keep, gens) = group_data(g, levi, group);
    let cols = monomials(g, k, max_degree, keep);
    let mut rows = RowIndex::new();
    let mut columns: Vec<SparseVec> = Vec::with_capacity(cols.len());
    for m in &cols {
        let el = TensorElement::from_mono(m.clone(), Rat::one());
        let mut col = Vec::new();
        for (t, x) in gens.iter().enumerate() {
            for (om, c) in &env.adjoint(x, &el).terms {
                col.push((rows.get(t, om), c.clone()));
            }
        }
        col.sort_by_key(|e| e.0);
        columns.push(col);
    }
    let mat = linalg::columns_to_rows(&columns, rows.len());
    linalg::kernel(mat, cols.len())
        .into_iter()
        .map(|v| {
            let mut t = TensorElement::zero(k);
            for (j, c) in v {
                t.add_term(cols[j].clone(), c);
            }
            t
        })
        .collect()
}

/// Statistics from a coboundary solve.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub unknowns: usize,
    pub equations: usize,
    pub degree_cap: u32,
}

/// Find `g ∈ (U(g)^{⊗k})^{l_D}` of degree ≤ `degree_cap` with
/// `d_H g = ξ`, where `ξ` has `k+1` slots.
pub fn solve_hochschild_coboundary(
    env: &Enveloping,
    levi: &LeviDecomposition,
    xi: &TensorElement,
    degree_cap: u32,
    order: PivotOrder,
) -> Result<(TensorElement, SolveStats)> {
    let all: Vec<usize> = (0..env.alg.dim()).collect();
    solve_hochschild_coboundary_in(env, levi, xi, degree_cap, order, &all)
}

/// As [`solve_hochschild_coboundary`], with unknowns restricted to
/// monomials in the listed letters.
pub fn solve_hochschild_coboundary_in(
    env: &Enveloping,
    levi: &LeviDecomposition,
    xi: &TensorElement,
    degree_cap: u32,
    order: PivotOrder,
    letters: &[usize],
) -> Result<(TensorElement, SolveStats)> {
    let k =
        xi.k.checked_sub(1)
            .ok_or_else(|| Error::Invalid("ξ must have at least one slot".into()))?;
    if xi.is_zero() {
        return Ok((
            TensorElement::zero(k),
            SolveStats {
                degree_cap,
                ..Default::default()
            },
        ));
    }
    let g = &*env.alg;
    let (keep, gens) = group_data(g, levi, Group::Ld);
    let mut cols = monomials_in(g, letters, k, degree_cap, keep);
    if order == PivotOrder::Reverse {
        cols.reverse();
    }
    let mut rows = RowIndex::new();
    let mut columns: Vec<SparseVec> = Vec::with_capacity(cols.len());
    let dh_tag = gens.len();
    for m in &cols {
        let el = TensorElement::from_mono(m.clone(), Rat::one());
        let mut col = Vec::new();
        for (om, c) in &el.hochschild_d().terms {
            col.push((rows.get(dh_tag, om), c.clone()));
        }
        for (t, x) in gens.iter().enumerate() {
            for (om, c) in &env.adjoint(x, &el).terms {
                col.push((rows.get(t, om), c.clone()));
            }
        }
        col.sort_by_key(|e| e.0);
        columns.push(col);
    }
    let mut rhs_entries = Vec::new();
    for (m, c) in &xi.terms {
        rhs_entries.push((rows.get(dh_tag, m), c.clone()));
    }
    let nrows = rows.len();
    let mat = linalg::columns_to_rows(&columns, nrows);
    let mut rhs = vec![Rat::zero(); nrows];
    for (r, c) in rhs_entries {
        rhs[r] = c;
    }
    let stats = SolveStats {
        unknowns: cols.len(),
        equations: nrows,
        degree_cap,
    };
    match linalg::solve(mat, rhs, cols.len()) {
        None => Err(Error::Infeasible(format!(
            "no l_D-invariant g of degree <= {degree_cap} with d_H g = ξ ({} unknowns)",
            cols.len()
        ))),
        Some(x) => {
            let mut out = TensorElement::zero(k);
            for (j, c) in x {
                out.add_term(cols[j].clone(), c);
            }
            debug_assert_eq!(out.hochschild_d(), *xi);
            Ok((out, stats))
        }
    }
}
