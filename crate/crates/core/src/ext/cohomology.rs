//! Invariant subspaces of Λg and the cohomology of the perturbed complex
//! `((Λg)^{g_D}, ⟦r_g − r_D, ·⟧)` by exact rank computation.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::ext::element::{ad_ext, basis_tuples, ExtElement, Idx};
use crate::ext::star::PerturbedDifferential;
use crate::lie::{AlgElement, LeviDecomposition, LieAlgebra};
use crate::linalg::{self, SparseVec};

/// Assigns dense column indices to basis tuples on first sight.
#[derive(Default)]
pub struct TupleIndex {
    map: FxHashMap<Idx, usize>,
    keys: Vec<Idx>,
}

impl TupleIndex {
    pub fn get(&mut self, idx: &Idx) -> usize {
        if let Some(&i) = self.map.get(idx) {
            return i;
        }
        let n = self.keys.len();
        self.map.insert(idx.clone(), n);
        self.keys.push(idx.clone());
        n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &Idx {
        &self.keys[i]
    }

    pub fn sparse(&mut self, a: &ExtElement) -> SparseVec {
        let mut v: SparseVec = a
            .terms
            .iter()
            .map(|(i, c)| (self.get(i), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }
}

/// `e_i, f_i` for `i ∈ D`.
fn gd_generators(g: &LieAlgebra, levi: &LeviDecomposition) -> Vec<AlgElement> {
    levi.d
        .0
        .iter()
        .flat_map(|&i| {
            let r = g.simple_root_index(i);
            [
                AlgElement::basis(g.e_index(r)),
                AlgElement::basis(g.f_index(r)),
            ]
        })
        .collect()
}

/// Basis of the `g_D`-invariants in `Λ^k V`, `V` spanned by `allowed`
/// basis vectors, grouped by total h-weight.
pub fn gd_invariants_by_weight(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    k: usize,
    allowed: &[usize],
) -> BTreeMap<Vec<i64>, Vec<ExtElement>> {
    let gens = gd_generators(g, levi);
    let mut by_weight: BTreeMap<Vec<i64>, Vec<Idx>> = BTreeMap::new();
    for t in basis_tuples(allowed.len(), k) {
        let idx: Idx = t.iter().map(|&p| allowed[p as usize] as u8).collect();
        let w = ExtElement::weight_of(g, &idx);
        let hd_zero = levi
            .d
            .0
            .iter()
            .all(|&i| (0..g.rank).map(|j| w[j] * g.cartan[i][j]).sum::<i64>() == 0);
        if hd_zero {
            by_weight.entry(w).or_default().push(idx);
        }
    }
    let mut out = BTreeMap::new();
    for (w, cols) in by_weight {
        let mut rows: FxHashMap<(usize, Idx), usize> = FxHashMap::default();
        let mut columns: Vec<SparseVec> = Vec::with_capacity(cols.len());
        for idx in &cols {
            let el = ExtElement::basis(&idx.iter().map(|&b| b as usize).collect::<Vec<_>>());
            let mut col = Vec::new();
            for (t, x) in gens.iter().enumerate() {
                for (oi, c) in &ad_ext(g, x, &el).terms {
                    let n = rows.len();
                    let r = *rows.entry((t, oi.clone())).or_insert(n);
                    col.push((r, c.clone()));
                }
            }
            col.sort_by_key(|e| e.0);
            columns.push(col);
        }
        let mat = linalg::columns_to_rows(&columns, rows.len());
        let basis: Vec<ExtElement> = linalg::kernel(mat, cols.len())
            .into_iter()
            .map(|v| {
                let mut e = ExtElement::zero(k);
                for (j, c) in v {
                    e.add_term(cols[j].clone(), c);
                }
                e
            })
            .collect();
        if !basis.is_empty() {
            out.insert(w, basis);
        }
    }
    out
}

/// Basis of `(Λ^k g)^{g_D}`.
pub fn gd_invariants(g: &LieAlgebra, levi: &LeviDecomposition, k: usize) -> Vec<ExtElement> {
    let all: Vec<usize> = (0..g.dim()).collect();
    gd_invariants_by_weight(g, levi, k, &all)
        .into_values()
        .flatten()
        .collect()
}

/// Basis of `(Λ^k l_D)^{l_D}`.
pub fn ld_invariants(g: &LieAlgebra, levi: &LeviDecomposition, k: usize) -> Vec<ExtElement> {
    let zero = vec![0; g.rank];
    gd_invariants_by_weight(g, levi, k, &levi.ld_basis)
        .remove(&zero)
        .unwrap_or_default()
}

/// Basis of `(Λ^k g_D)^{g_D}`.
pub fn gd_self_invariants(g: &LieAlgebra, levi: &LeviDecomposition, k: usize) -> Vec<ExtElement> {
    gd_invariants_by_weight(g, levi, k, &levi.gd_basis)
        .into_values()
        .flatten()
        .collect()
}

fn rank_of(vs: &[ExtElement]) -> usize {
    let mut ix = TupleIndex::default();
    let rows: Vec<SparseVec> = vs.iter().map(|v| ix.sparse(v)).collect();
    linalg::rank(rows, ix.len())
}

/// `dim H^k` for `k = 0..=max_degree` of the perturbed complex on
/// `(Λg)^{g_D}`.
pub fn cohomology_dims(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    max_degree: usize,
) -> Vec<(usize, usize)> {
    let d = PerturbedDifferential::new(g, levi);
    let all: Vec<usize> = (0..g.dim()).collect();
    let top = (max_degree + 1).min(g.dim());
    let inv: Vec<BTreeMap<Vec<i64>, Vec<ExtElement>>> = (0..=top)
        .map(|k| gd_invariants_by_weight(g, levi, k, &all))
        .collect();
    // rank of d: Λ^k → Λ^{k+1} on invariants, per weight (d preserves weight)
    let ranks: Vec<usize> = (0..=top)
        .map(|k| {
            inv[k]
                .values()
                .map(|b| rank_of(&b.iter().map(|x| d.apply(x)).collect::<Vec<_>>()))
                .sum()
        })
        .collect();
    (0..=max_degree.min(g.dim()))
        .map(|k| {
            let dim: usize = inv[k].values().map(Vec::len).sum();
            let boundary = if k == 0 { 0 } else { ranks[k - 1] };
            (k, dim - ranks[k] - boundary)
        })
        .collect()
}

/// `dim (Λ^k l_D)^{l_D}` for `k = 0..=max_degree`.
pub fn predicted_dims(
    g: &LieAlgebra,
    levi: &LeviDecomposition,
    max_degree: usize,
) -> Vec<(usize, usize)> {
    (0..=max_degree.min(g.dim()))
        .map(|k| (k, ld_invariants(g, levi, k).len()))
        .collect()
}

/// Dense matrix of a linear map on `Λ^k g` in the increasing-tuple basis,
/// as `(input tuples, output index, columns)`.
pub fn operator_columns(
    dim: usize,
    k: usize,
    f: impl Fn(&ExtElement) -> ExtElement,
) -> (Vec<Idx>, TupleIndex, Vec<SparseVec>) {
    let tuples = basis_tuples(dim, k);
    let mut ix = TupleIndex::default();
    let cols = tuples
        .iter()
        .map(|t| {
            ix.sparse(&f(&ExtElement::basis(
                &t.iter().map(|&b| b as usize).collect::<Vec<_>>(),
            )))
        })
        .collect();
    (tuples, ix, cols)
}

/// Kernel of a linear map on `Λ^k g`.
pub fn operator_kernel(
    dim: usize,
    k: usize,
    f: impl Fn(&ExtElement) -> ExtElement,
) -> Vec<ExtElement> {
    let (tuples, ix, cols) = operator_columns(dim, k, f);
    let mat = linalg::columns_to_rows(&cols, ix.len());
    linalg::kernel(mat, tuples.len())
        .into_iter()
        .map(|v| {
            let mut e = ExtElement::zero(k);
            for (j, c) in v {
                e.add_term(tuples[j].clone(), c);
            }
            e
        })
        .collect()
}

/// Exact `Λ^k l_D` membership.
pub fn in_wedge_ld(levi: &LeviDecomposition, a: &ExtElement) -> bool {
    a.terms
        .keys()
        .all(|idx| idx.iter().all(|&b| levi.ld_basis.contains(&(b as usize))))
}
