//! The ambient semisimple Lie algebra: roots, Chevalley basis, structure
//! constants, invariant form, Casimir tensor and Chevalley involution.

use std::cmp::Reverse;
use std::fmt;

use rand::Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::Result;
use crate::lie::cartan::CartanType;
use crate::lie::realization::{realize, Mat};
use crate::linalg;
use crate::rational::Rat;

/// Basis labels. Root indices refer to `LieAlgebra::positive_roots`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    F(usize),
    H(usize),
    E(usize),
}

/// Sparse element of g over the basis, sorted by index, no zero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgElement(pub Vec<(usize, Rat)>);

impl AlgElement {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn basis(i: usize) -> Self {
        Self(vec![(i, Rat::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_dense(v: &[Rat]) -> Self {
        Self(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0
            .binary_search_by_key(&i, |e| e.0)
            .map(|k| self.0[k].1.clone())
            .unwrap_or_default()
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: &Rat, other: &AlgElement) -> AlgElement {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, s * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(s * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        AlgElement(out)
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        self.axpy(&Rat::one(), other)
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        self.axpy(&Rat::from_int(-1), other)
    }

    pub fn scale(&self, s: &Rat) -> AlgElement {
        if s.is_zero() {
            return AlgElement::zero();
        }
        AlgElement(self.0.iter().map(|(i, c)| (*i, c * s)).collect())
    }

    pub fn neg(&self) -> AlgElement {
        self.scale(&Rat::from_int(-1))
    }
}

/// Recipe for a non-simple root vector: `e_γ = [e_i, e_β]/(p+1)` and
/// `f_γ = c·[f_β, f_i]`.
#[derive(Debug, Clone)]
struct RootStep {
    node: usize,
    from: usize,
    e_scale: Rat,
    f_scale: Rat,
}

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = α_j(h_i)`.
    pub cartan: Vec<Vec<i64>>,
    pub node_factor: Vec<usize>,
    pub positive_roots: Vec<Vec<i64>>,
    pub root_factor: Vec<usize>,
    pub basis: Vec<Generator>,
    /// h-weight of each basis element in simple-root coordinates.
    pub weights: Vec<Vec<i64>>,
    /// Multiplier applied to the normalized form on each simple factor.
    pub form_scale: Vec<Rat>,
    sym: Vec<Rat>,
    root_index: FxHashMap<Vec<i64>, usize>,
    steps: Vec<Option<RootStep>>,
    brackets: Vec<AlgElement>,
    form: Vec<Vec<Rat>>,
    casimir: Vec<(usize, usize, Rat)>,
    theta: Vec<AlgElement>,
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cartan_type)
    }
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

impl LieAlgebra {
    pub fn from_str_type(s: &str) -> Result<Self> {
        Ok(Self::new(&s.parse()?))
    }

    pub fn new(ct: &CartanType) -> Self {
        let n = ct.rank();
        let cartan = ct.cartan_matrix();
        let real = realize(ct);
        for i in 0..n {
            for j in 0..n {
                let lam = real.h[i].commutator(&real.e[j]).ratio_to(&real.e[j]);
                assert_eq!(
                    lam,
                    Some(Rat::from_int(cartan[i][j])),
                    "realization of {ct} disagrees with Cartan matrix at ({i},{j})"
                );
            }
        }

        let (positive_roots, root_index) = positive_roots(&cartan);
        let m = positive_roots.len();
        let node_factor = ct.node_factor();
        let root_factor: Vec<usize> = positive_roots
            .iter()
            .map(|r| node_factor[r.iter().position(|&c| c != 0).unwrap()])
            .collect();
        let sym = ct.symmetrizer();

        // Root vectors as matrices.
        let mut e_mat: Vec<Mat> = Vec::with_capacity(m);
        let mut f_mat: Vec<Mat> = Vec::with_capacity(m);
        let mut steps: Vec<Option<RootStep>> = Vec::with_capacity(m);
        let simple_of = |r: &[i64]| -> Option<usize> {
            (height(r) == 1).then(|| r.iter().position(|&c| c == 1).unwrap())
        };
        let coroot_mat = |r: &[i64], h: &[Mat]| -> Mat {
            let coroot = coroot_coords(r, &cartan, &sym);
            let mut out = Mat::zero(h[0].n);
            for (k, c) in coroot.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&h[k].scale(c));
                }
            }
            out
        };
        for gamma in &positive_roots {
            if let Some(i) = simple_of(gamma) {
                e_mat.push(real.e[i].clone());
                f_mat.push(real.f[i].clone());
                steps.push(None);
                continue;
            }
            let (node, beta) = (0..n)
                .find_map(|i| {
                    let mut b = gamma.clone();
                    b[i] -= 1;
                    root_index.get(&b).map(|&bi| (i, bi))
                })
                .expect("non-simple root has a predecessor");
            let p = string_down(&positive_roots[beta], node, &root_index);
            let e_scale = Rat::new(1, p as i64 + 1);
            let e = real.e[node].commutator(&e_mat[beta]).scale(&e_scale);
            let f0 = f_mat[beta].commutator(&real.f[node]);
            let hg = coroot_mat(gamma, &real.h);
            let t = e
                .commutator(&f0)
                .ratio_to(&hg)
                .expect("[e_γ, f_γ] proportional to h_γ");
            let f_scale = t.recip();
            f_mat.push(f0.scale(&f_scale));
            e_mat.push(e);
            steps.push(Some(RootStep {
                node,
                from: beta,
                e_scale,
                f_scale,
            }));
        }

        let mut basis = Vec::with_capacity(2 * m + n);
        let mut mats = Vec::with_capacity(2 * m + n);
        let mut weights = Vec::with_capacity(2 * m + n);
        for r in 0..m {
            basis.push(Generator::F(r));
            mats.push(f_mat[r].clone());
            weights.push(positive_roots[r].iter().map(|c| -c).collect());
        }
        for i in 0..n {
            basis.push(Generator::H(i));
            mats.push(real.h[i].clone());
            weights.push(vec![0; n]);
        }
        for r in 0..m {
            basis.push(Generator::E(r));
            mats.push(e_mat[r].clone());
            weights.push(positive_roots[r].clone());
        }

        let dim = basis.len();
        let mut brackets = vec![AlgElement::zero(); dim * dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let c = mats[a].commutator(&mats[b]);
                if c.is_zero() {
                    continue;
                }
                let w: Vec<i64> = weights[a]
                    .iter()
                    .zip(&weights[b])
                    .map(|(x, y)| x + y)
                    .collect();
                let el = decompose(&c, &w, &mats, m, n, &root_index);
                brackets[b * dim + a] = el.neg();
                brackets[a * dim + b] = el;
            }
        }

        let mut alg = LieAlgebra {
            cartan_type: ct.clone(),
            rank: n,
            cartan,
            node_factor,
            positive_roots,
            root_factor,
            basis,
            weights,
            form_scale: vec![Rat::one(); ct.0.len()],
            sym,
            root_index,
            steps,
            brackets,
            form: Vec::new(),
            casimir: Vec::new(),
            theta: Vec::new(),
        };
        alg.theta = alg.compute_theta();
        alg.refresh_form();
        alg
    }

    /// Same algebra with the invariant form multiplied by `scales[f]` on
    /// factor `f`.
    pub fn with_form_scaling(&self, scales: &[Rat]) -> LieAlgebra {
        assert_eq!(scales.len(), self.cartan_type.0.len());
        assert!(scales.iter().all(|s| !s.is_zero()));
        let mut out = self.clone();
        out.form_scale = scales.to_vec();
        out.refresh_form();
        out
    }

    fn refresh_form(&mut self) {
        let dim = self.dim();
        let mut form = vec![vec![Rat::zero(); dim]; dim];
        for r in 0..self.n_pos() {
            let v = Rat::from_int(2) / self.root_norm(r);
            let (e, f) = (self.e_index(r), self.f_index(r));
            form[e][f] = v.clone();
            form[f][e] = v;
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                let num = self.simple_pair(i, j).mul_int(4);
                let den = &self.simple_pair(i, i) * &self.simple_pair(j, j);
                form[self.h_index(i)][self.h_index(j)] = num / den;
            }
        }
        let inv = linalg::invert_dense(&form).expect("invariant form is nondegenerate");
        let mut casimir = Vec::new();
        for (i, row) in inv.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    casimir.push((i, j, c.clone()));
                }
            }
        }
        self.form = form;
        self.casimir = casimir;
    }

    fn compute_theta(&self) -> Vec<AlgElement> {
        let dim = self.dim();
        let mut theta = vec![AlgElement::zero(); dim];
        for i in 0..self.rank {
            theta[self.h_index(i)] = AlgElement::basis(self.h_index(i)).neg();
        }
        for r in 0..self.n_pos() {
            let (e, f) = (self.e_index(r), self.f_index(r));
            match &self.steps[r] {
                None => {
                    theta[e] = AlgElement::basis(f).neg();
                    theta[f] = AlgElement::basis(e).neg();
                }
                Some(st) => {
                    let i = self.simple_root_index(st.node);
                    let te = self.bracket(&theta[self.e_index(i)], &theta[self.e_index(st.from)]);
                    let tf = self.bracket(&theta[self.f_index(st.from)], &theta[self.f_index(i)]);
                    theta[e] = te.scale(&st.e_scale);
                    theta[f] = tf.scale(&st.f_scale);
                }
            }
        }
        theta
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_pos(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn n_factors(&self) -> usize {
        self.cartan_type.0.len()
    }

    pub fn f_index(&self, r: usize) -> usize {
        r
    }

    pub fn h_index(&self, i: usize) -> usize {
        self.n_pos() + i
    }

    pub fn e_index(&self, r: usize) -> usize {
        self.n_pos() + self.rank + r
    }

    pub fn is_cartan(&self, b: usize) -> bool {
        matches!(self.basis[b], Generator::H(_))
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut c = vec![0; self.rank];
        c[i] = 1;
        self.root_index[&c]
    }

    pub fn root_height(&self, r: usize) -> i64 {
        height(&self.positive_roots[r])
    }

    /// Simple factor containing basis element `b`.
    pub fn basis_factor(&self, b: usize) -> usize {
        match self.basis[b] {
            Generator::F(r) | Generator::E(r) => self.root_factor[r],
            Generator::H(i) => self.node_factor[i],
        }
    }

    /// `(α_i, α_j)` for the current form.
    pub fn simple_pair(&self, i: usize, j: usize) -> Rat {
        let base = self.sym[i].mul_int(self.cartan[i][j]);
        base / &self.form_scale[self.node_factor[i]]
    }

    /// `(α, α)` for positive root `r` under the current form.
    pub fn root_norm(&self, r: usize) -> Rat {
        let c = &self.positive_roots[r];
        let mut s = Rat::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if c[i] != 0 && c[j] != 0 {
                    s += &self.simple_pair(i, j).mul_int(c[i] * c[j]);
                }
            }
        }
        s
    }

    /// Coroot `h_α` in the `h_1..h_n` coordinates.
    pub fn coroot(&self, r: usize) -> Vec<Rat> {
        coroot_coords(&self.positive_roots[r], &self.cartan, &self.sym)
    }

    /// `α_j(h)` for `h` given in `h_1..h_n` coordinates.
    pub fn simple_root_on(&self, j: usize, h: &[Rat]) -> Rat {
        (0..self.rank)
            .map(|k| h[k].mul_int(self.cartan[k][j]))
            .sum()
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &AlgElement {
        &self.brackets[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let dim = self.dim();
        let mut acc = vec![Rat::zero(); dim];
        let mut touched = false;
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                let br = &self.brackets[a * dim + b];
                if br.is_zero() {
                    continue;
                }
                let s = ca * cb;
                for (k, v) in &br.0 {
                    acc[*k] += &(&s * v);
                    touched = true;
                }
            }
        }
        if !touched {
            return AlgElement::zero();
        }
        AlgElement::from_dense(&acc)
    }

    pub fn form_basis(&self, a: usize, b: usize) -> &Rat {
        &self.form[a][b]
    }

    pub fn form_matrix(&self) -> &[Vec<Rat>] {
        &self.form
    }

    pub fn form(&self, x: &AlgElement, y: &AlgElement) -> Rat {
        let mut s = Rat::zero();
        for (a, ca) in &x.0 {
            for (b, cb) in &y.0 {
                let f = &self.form[*a][*b];
                if !f.is_zero() {
                    s += &(&(ca * cb) * f);
                }
            }
        }
        s
    }

    /// `Ω = Σ c_{ij} x_i ⊗ x_j` as a list of `(i, j, c_{ij})`.
    pub fn casimir_terms(&self) -> &[(usize, usize, Rat)] {
        &self.casimir
    }

    pub fn theta_basis(&self, b: usize) -> &AlgElement {
        &self.theta[b]
    }

    pub fn theta(&self, x: &AlgElement) -> AlgElement {
        let mut acc = AlgElement::zero();
        for (b, c) in &x.0 {
            acc = acc.axpy(c, &self.theta[*b]);
        }
        acc
    }

    /// Matrix of `ad x` acting on column vectors: `m[row][col]`.
    pub fn ad_matrix(&self, x: &AlgElement) -> Vec<Vec<Rat>> {
        let dim = self.dim();
        let mut m = vec![vec![Rat::zero(); dim]; dim];
        for col in 0..dim {
            for (k, v) in self.bracket(x, &AlgElement::basis(col)).0 {
                m[k][col] = v;
            }
        }
        m
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, range: i64) -> AlgElement {
        let v: Vec<Rat> = (0..self.dim())
            .map(|_| Rat::from_int(rng.gen_range(-range..=range)))
            .collect();
        AlgElement::from_dense(&v)
    }

    /// Human-readable basis label, e.g. `e1`, `f12`, `h2` (root labels list
    /// the simple roots in the support, with multiplicity).
    pub fn label(&self, b: usize) -> String {
        let root_label = |r: usize| -> String {
            let mut s = String::new();
            for (i, &c) in self.positive_roots[r].iter().enumerate() {
                for _ in 0..c {
                    s.push_str(&(i + 1).to_string());
                }
            }
            if self.rank == 1 {
                String::new()
            } else {
                s
            }
        };
        match self.basis[b] {
            Generator::F(r) => format!("f{}", root_label(r)),
            Generator::E(r) => format!("e{}", root_label(r)),
            Generator::H(i) => {
                if self.rank == 1 {
                    "h".into()
                } else {
                    format!("h{}", i + 1)
                }
            }
        }
    }
}

fn coroot_coords(r: &[i64], cartan: &[Vec<i64>], sym: &[Rat]) -> Vec<Rat> {
    // (γ,γ)/2 = Σ c_i c_j d_i A_ij / 2 ; h_γ = Σ c_i d_i / ((γ,γ)/2) h_i
    let n = r.len();
    let mut half_norm = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            if r[i] != 0 && r[j] != 0 {
                half_norm += &sym[i].mul_int(cartan[i][j] * r[i] * r[j]);
            }
        }
    }
    let half_norm = half_norm * Rat::new(1, 2);
    (0..n).map(|i| sym[i].mul_int(r[i]) / &half_norm).collect()
}

fn string_down(beta: &[i64], i: usize, idx: &FxHashMap<Vec<i64>, usize>) -> usize {
    let mut p = 0;
    let mut b = beta.to_vec();
    loop {
        b[i] -= 1;
        if idx.contains_key(&b) {
            p += 1;
        } else {
            return p;
        }
    }
}

/// Positive roots in simple-root coordinates, sorted by height and then by
/// descending coordinates.
fn positive_roots(cartan: &[Vec<i64>]) -> (Vec<Vec<i64>>, FxHashMap<Vec<i64>, usize>) {
    let n = cartan.len();
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut known: rustc_hash::FxHashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let mut p = 0;
                let mut b = beta.clone();
                loop {
                    b[i] -= 1;
                    if known.contains(&b) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut g = beta.clone();
                    g[i] += 1;
                    if known.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by_key(|r| (height(r), Reverse(r.clone())));
    let idx = all
        .iter()
        .enumerate()
        .map(|(k, r)| (r.clone(), k))
        .collect();
    (all, idx)
}

fn decompose(
    c: &Mat,
    w: &[i64],
    mats: &[Mat],
    m: usize,
    n: usize,
    idx: &FxHashMap<Vec<i64>, usize>,
) -> AlgElement {
    if w.iter().all(|&x| x == 0) {
        let rows: Vec<linalg::SparseVec> = (0..c.n)
            .map(|d| {
                (0..n)
                    .filter_map(|k| {
                        let v = mats[m + k].get(d, d);
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = (0..c.n).map(|d| c.get(d, d).clone()).collect();
        let x = linalg::solve(rows, rhs, n).expect("bracket lands in the Cartan subalgebra");
        return AlgElement(x.into_iter().map(|(k, v)| (m + k, v)).collect());
    }
    let positive = w.iter().all(|&x| x >= 0);
    let abs: Vec<i64> = w.iter().map(|x| x.abs()).collect();
    let r = *idx.get(&abs).expect("bracket weight is a root");
    let b = if positive { m + n + r } else { r };
    let lam = c
        .ratio_to(&mats[b])
        .expect("bracket proportional to root vector");
    AlgElement(vec![(b, lam)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::from_str_type(s).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, m) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("A1xA1", 2),
        ] {
            assert_eq!(alg(s).n_pos(), m, "{s}");
        }
    }

    #[test]
    fn sl2_relations() {
        let g = alg("A1");
        let (f, h, e) = (0, 1, 2);
        assert_eq!(
            g.bracket_basis(h, e),
            &AlgElement(vec![(e, Rat::from_int(2))])
        );
        assert_eq!(g.bracket_basis(e, f), &AlgElement::basis(h));
        assert_eq!(g.form_basis(e, f), &Rat::one());
        assert_eq!(g.form_basis(h, h), &Rat::from_int(2));
        assert_eq!(g.label(e), "e");
    }

    #[test]
    fn jacobi_form_invariance_and_theta() {
        for s in ["A1", "A2", "A3", "B2", "C3", "G2", "A1xA2"] {
            let g = alg(s);
            let d = g.dim();
            let b: Vec<AlgElement> = (0..d).map(AlgElement::basis).collect();
            for x in 0..d {
                assert_eq!(g.theta(&g.theta(&b[x])), b[x], "{s} theta^2");
                for y in 0..d {
                    let xy = g.bracket(&b[x], &b[y]);
                    assert_eq!(
                        g.theta(&xy),
                        g.bracket(&g.theta(&b[x]), &g.theta(&b[y])),
                        "{s}"
                    );
                    for z in 0..d {
                        let j = g
                            .bracket(&b[x], &g.bracket(&b[y], &b[z]))
                            .add(&g.bracket(&b[y], &g.bracket(&b[z], &b[x])))
                            .add(&g.bracket(&b[z], &g.bracket(&b[x], &b[y])));
                        assert!(j.is_zero(), "{s} Jacobi");
                        let inv = g.form(&xy, &b[z]) + g.form(&b[y], &g.bracket(&b[x], &b[z]));
                        assert!(inv.is_zero(), "{s} invariance");
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_normalization() {
        for s in ["A3", "B2", "G2", "C3"] {
            let g = alg(s);
            for r in 0..g.n_pos() {
                let h = g.bracket_basis(g.e_index(r), g.f_index(r));
                let want: Vec<Rat> = g.coroot(r);
                for i in 0..g.rank {
                    assert_eq!(h.coeff(g.h_index(i)), want[i]);
                }
                assert_eq!(
                    g.theta_basis(g.e_index(r)),
                    &AlgElement::basis(g.f_index(r)).neg(),
                    "{s}"
                );
                let ef = g.form_basis(g.e_index(r), g.f_index(r)).clone();
                assert_eq!(ef, Rat::from_int(2) / g.root_norm(r));
            }
        }
    }

    #[test]
    fn b2_dual_pairing() {
        let g = alg("B2");
        let mut seen = Vec::new();
        for r in 0..g.n_pos() {
            seen.push((
                g.root_norm(r),
                g.form_basis(g.e_index(r), g.f_index(r)).clone(),
            ));
        }
        assert!(seen.contains(&(Rat::from_int(2), Rat::one())));
        assert!(seen.contains(&(Rat::one(), Rat::from_int(2))));
    }

    #[test]
    fn casimir_is_dual_basis() {
        let g = alg("B2");
        let d = g.dim();
        // Σ_j c_ij (x_j, x_k) = δ_ik
        for i in 0..d {
            for k in 0..d {
                let s: Rat = g
                    .casimir_terms()
                    .iter()
                    .filter(|t| t.0 == i)
                    .map(|t| &t.2 * g.form_basis(t.1, k))
                    .sum();
                assert_eq!(s, if i == k { Rat::one() } else { Rat::zero() });
            }
        }
    }
}
