//! Hopf-cyclic cochain complexes of the three symmetry kinds, their
//! cohomology, and the trace correspondences.
//!
//! Ambient cochains live in a flat space indexed by `[m, x_0, .., x_n]`
//! (mixed radix `[dim M, X, .., X]`, leftmost slowest). Kinds A and B use the
//! subspace of equivariant elements; kind C uses the quotient by the
//! balancing relations `S(h)m ⊗ x − m ⊗ h·x`.

mod traces;

pub use traces::{
    closed_trace_space, correspondence_gate, to_cocycle, to_trace, trace_checks, trace_radix, TraceElement,
};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    is_zero_vec, normalize_sparse, solve_sparse, sparse_from_dense, Limits, Matrix, Rational, RowReducer, SparseKernel,
    SparseVec,
};
use crate::multilin::{lc_add, Lc, Radix};
use crate::structures::{Kind, Symmetry, SymmetryBundle};

/// A linear map stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp {
    pub in_dim: usize,
    pub out_dim: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseOp {
    pub fn from_columns(out_dim: usize, cols: Vec<SparseVec>) -> Self {
        SparseOp {
            in_dim: cols.len(),
            out_dim,
            cols: cols.into_iter().map(normalize_sparse).collect(),
        }
    }

    /// Builds the map whose `i`-th output coordinate is `rows[i]·v`.
    pub fn from_rows(in_dim: usize, rows: &[SparseVec]) -> Self {
        let mut cols = vec![Vec::new(); in_dim];
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row {
                cols[*j].push((i, c.clone()));
            }
        }
        SparseOp::from_columns(rows.len(), cols)
    }

    pub fn identity(n: usize) -> Self {
        SparseOp::from_columns(n, (0..n).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.in_dim, "operator input dimension");
        let mut out = vec![Rational::zero(); self.out_dim];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &self.cols[j] {
                out[*i] += x * c;
            }
        }
        out
    }

    pub fn apply_sparse(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, x) in v {
            for (i, c) in &self.cols[*j] {
                *acc.entry(*i).or_insert_with(Rational::zero) += x * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SparseOp) -> SparseOp {
        assert_eq!(inner.out_dim, self.in_dim, "composition dimension mismatch");
        SparseOp::from_columns(self.out_dim, inner.cols.iter().map(|c| self.apply_sparse(c)).collect())
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &SparseOp, s: &Rational) -> SparseOp {
        assert_eq!((self.in_dim, self.out_dim), (other.in_dim, other.out_dim));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|(i, c)| (*i, c * s)));
                v
            })
            .collect();
        SparseOp::from_columns(self.out_dim, cols)
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.out_dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i].push((j, c.clone()));
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.out_dim, self.in_dim);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m[(*i, j)] = c.clone();
            }
        }
        m
    }
}

/// Null space of a sparse operator.
pub fn op_kernel(op: &SparseOp) -> SparseKernel {
    let mut red = RowReducer::new(op.in_dim);
    for row in op.rows() {
        red.push(&row);
    }
    red.sparse_kernel()
}

/// `1 − λ` on coordinates.
fn one_minus(l: &SparseOp) -> SparseOp {
    SparseOp::identity(l.in_dim).add_scaled(l, &-Rational::one())
}

fn sparse_unit(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

#[derive(Clone, Debug)]
enum Coords {
    /// Equivariant subspace, the kernel of `constraints`.
    Sub {
        kernel: SparseKernel,
        constraints: SparseOp,
    },
    /// Quotient by the span of `generators`; coordinates are the free columns.
    Quot {
        relations: RowReducer,
        generators: Vec<SparseVec>,
        free: Vec<usize>,
    },
}

/// Degree-`n` cochains of a bundle with a chosen coordinate basis.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub kind: Kind,
    pub degree: usize,
    pub radix: Radix,
    coords: Coords,
}

impl CochainSpace {
    pub fn build(bundle: &SymmetryBundle, n: usize, limits: &Limits) -> Result<Self> {
        let x = bundle.carrier_dim();
        let dm = bundle.coeffs.dim();
        let mut dims = vec![dm];
        dims.extend(std::iter::repeat_n(x, n + 1));
        let radix = Radix::new(dims);
        let size = radix.size();
        limits.check(&format!("degree {n} ambient cochain space"), size)?;
        limits.check(
            &format!("degree {n} equivariance system"),
            size.saturating_mul(bundle.hopf.dim()),
        )?;
        let hopf = &bundle.hopf;
        let coeffs = &bundle.coeffs;
        let coords = match &bundle.symmetry {
            Symmetry::ModuleAlgebra { action, .. } => {
                let mut constraints = Vec::new();
                for h in 0..hopf.dim() {
                    let eps = hopf.counit()[h].clone();
                    for key in radix.iter() {
                        let mut lc = Lc::new();
                        let img = diagonal_act(bundle, &key, h, |slot, g, v| {
                            if slot == 0 {
                                coeffs.action.act_basis(g, v).clone()
                            } else {
                                action.act_basis(g, v).clone()
                            }
                        });
                        for (k, c) in img {
                            lc_add(&mut lc, k, c);
                        }
                        lc_add(&mut lc, key.clone(), -eps.clone());
                        constraints.push(encode_lc(&radix, &lc));
                    }
                }
                sub_coords(size, constraints)
            }
            Symmetry::ComoduleAlgebra { coaction, .. } => {
                let mut constraints = Vec::new();
                let tuple_radix = Radix::power(x, n + 1);
                for t in tuple_radix.iter() {
                    let rho_t = tuple_coaction(hopf, &t, |b| coaction.coact_basis(b));
                    for h_out in 0..hopf.dim() {
                        for m_out in 0..dm {
                            let mut lc = Lc::new();
                            for m in 0..dm {
                                for (h, w, c) in coeffs.coact_basis(m) {
                                    if *h == h_out && *w == m_out {
                                        let mut k = vec![m];
                                        k.extend(&t);
                                        lc_add(&mut lc, k, c.clone());
                                    }
                                }
                            }
                            for (key, c) in &rho_t {
                                if key[0] == h_out {
                                    let mut k = vec![m_out];
                                    k.extend(&key[1..]);
                                    lc_add(&mut lc, k, -c.clone());
                                }
                            }
                            if !lc.is_empty() {
                                constraints.push(encode_lc(&radix, &lc));
                            }
                        }
                    }
                }
                sub_coords(size, constraints)
            }
            Symmetry::ModuleCoalgebra { action, .. } => {
                let generators = balancing_relations(bundle, &radix, |h, x| {
                    diagonal_act(bundle, x, h, |_, g, v| action.act_basis(g, v).clone())
                });
                quot_coords(size, generators)
            }
        };
        Ok(CochainSpace {
            kind: bundle.kind(),
            degree: n,
            radix,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coords::Sub { kernel, .. } => kernel.dim(),
            Coords::Quot { free, .. } => free.len(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.radix.size()
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.coords, Coords::Quot { .. })
    }

    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim(), "cochain coordinate length");
        match &self.coords {
            Coords::Sub { kernel, .. } => kernel.from_coordinates(coords),
            Coords::Quot { free, .. } => {
                let mut v = vec![Rational::zero(); self.ambient_dim()];
                for (c, &j) in coords.iter().zip(free) {
                    v[j] = c.clone();
                }
                v
            }
        }
    }

    /// Coordinates of an ambient vector; `None` if it is not equivariant.
    pub fn project(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(w.len(), self.ambient_dim(), "ambient vector length");
        match &self.coords {
            Coords::Sub { kernel, constraints } => {
                let ok = is_zero_vec(&constraints.apply(w));
                ok.then(|| kernel.coordinates_unchecked(w))
            }
            Coords::Quot { relations, free, .. } => {
                let r = relations.reduce_dense(w);
                Some(free.iter().map(|&j| r[j].clone()).collect())
            }
        }
    }

    /// Sparse ambient representative of basis cochain `i`.
    pub fn lift_basis(&self, i: usize) -> SparseVec {
        match &self.coords {
            Coords::Sub { kernel, .. } => kernel.basis()[i].clone(),
            Coords::Quot { free, .. } => sparse_unit(free[i]),
        }
    }

    /// Sparse form of [`CochainSpace::project`].
    pub fn project_sparse(&self, w: &[(usize, Rational)]) -> Option<SparseVec> {
        let (free, w) = match &self.coords {
            Coords::Sub { kernel, constraints } => {
                if !constraints.apply_sparse(w).is_empty() {
                    return None;
                }
                (kernel.free(), normalize_sparse(w.to_vec()))
            }
            Coords::Quot { relations, free, .. } => (free.as_slice(), relations.reduce_sparse(w)),
        };
        Some(
            w.into_iter()
                .filter_map(|(j, c)| free.binary_search(&j).ok().map(|i| (i, c)))
                .collect(),
        )
    }

    /// Whether an ambient vector represents zero (kind C) or is zero (A, B).
    pub fn is_trivial(&self, w: &[Rational]) -> bool {
        match &self.coords {
            Coords::Sub { .. } => is_zero_vec(w),
            Coords::Quot { relations, .. } => relations.contains(&sparse_from_dense(w)),
        }
    }

    fn is_trivial_sparse(&self, w: &[(usize, Rational)]) -> bool {
        match &self.coords {
            Coords::Sub { .. } => normalize_sparse(w.to_vec()).is_empty(),
            Coords::Quot { relations, .. } => relations.contains(w),
        }
    }

    /// Balancing relation generators (kind C only).
    pub fn relation_generators(&self) -> &[SparseVec] {
        match &self.coords {
            Coords::Quot { generators, .. } => generators,
            Coords::Sub { .. } => &[],
        }
    }

    pub fn index_of(&self, key: &[usize]) -> usize {
        self.radix.encode(key)
    }

    pub fn key_of(&self, idx: usize) -> Vec<usize> {
        self.radix.decode(idx)
    }
}

fn sub_coords(size: usize, constraints: Vec<SparseVec>) -> Coords {
    let mut red = RowReducer::new(size);
    for row in &constraints {
        red.push(row);
    }
    Coords::Sub {
        kernel: red.sparse_kernel(),
        constraints: SparseOp::from_rows(size, &constraints),
    }
}

fn quot_coords(size: usize, generators: Vec<SparseVec>) -> Coords {
    let mut relations = RowReducer::new(size);
    for g in &generators {
        relations.push(g);
    }
    let pivots: std::collections::BTreeSet<usize> = relations.pivot_columns().into_iter().collect();
    let free = (0..size).filter(|j| !pivots.contains(j)).collect();
    Coords::Quot {
        relations,
        generators,
        free,
    }
}

pub(crate) fn encode_lc(radix: &Radix, lc: &Lc) -> SparseVec {
    normalize_sparse(lc.iter().map(|(k, c)| (radix.encode(k), c.clone())).collect())
}

/// `Δ^{k−1}(h)` as `(legs, coefficient)` pairs.
fn diag_terms(hopf: &crate::structures::Hopf, h: usize, k: usize) -> Vec<(Vec<usize>, Rational)> {
    hopf.coalgebra.iterated_basis(h, k - 1).into_iter().collect()
}

/// Diagonal action of basis element `h` on the tuple `key`; `act(slot, g, v)`
/// gives the action on slot `slot`.
pub(crate) fn diagonal_act(
    bundle: &SymmetryBundle,
    key: &[usize],
    h: usize,
    act: impl Fn(usize, usize, usize) -> SparseVec,
) -> Lc {
    let mut out = Lc::new();
    for (legs, c) in diag_terms(&bundle.hopf, h, key.len()) {
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c)];
        for (slot, (&g, &v)) in legs.iter().zip(key).enumerate() {
            let img = act(slot, g, v);
            let mut next = Vec::new();
            for (k, x) in &partial {
                for (w, y) in &img {
                    let mut nk = k.clone();
                    nk.push(*w);
                    next.push((nk, x * y));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (k, x) in partial {
            lc_add(&mut out, k, x);
        }
    }
    out
}

/// Diagonal coaction `b_0^{(−1)}⋯b_n^{(−1)} ⊗ b^{(0)}`, keyed `[h, b'..]`.
pub(crate) fn tuple_coaction<'a>(
    hopf: &crate::structures::Hopf,
    tuple: &[usize],
    coact: impl Fn(usize) -> &'a [(usize, usize, Rational)],
) -> Lc {
    let mut partial: Lc = Lc::new();
    for (u, c) in hopf.algebra.unit_sparse() {
        lc_add(&mut partial, vec![u], c);
    }
    for &b in tuple {
        let mut next = Lc::new();
        for (key, x) in &partial {
            for (h, w, y) in coact(b) {
                for (p, z) in hopf.algebra.mul_basis(key[0], *h) {
                    let mut nk = key.clone();
                    nk[0] = *p;
                    nk.push(*w);
                    lc_add(&mut next, nk, x * y * z);
                }
            }
        }
        partial = next;
    }
    partial
}

/// Generators `S(h)m ⊗ x − m ⊗ h·x` of the kind-C balancing relations.
///
/// `radix` indexes `[m, x..]`; `act_rest(h, x)` is the action on the tail.
pub(crate) fn balancing_relations(
    bundle: &SymmetryBundle,
    radix: &Radix,
    act_rest: impl Fn(usize, &[usize]) -> Lc,
) -> Vec<SparseVec> {
    let hopf = &bundle.hopf;
    let mut out = Vec::new();
    for h in 0..hopf.dim() {
        let s_h = hopf.antipode_basis(h);
        for key in radix.iter() {
            let mut lc = Lc::new();
            for (s, c) in &s_h {
                for (m2, u) in bundle.coeffs.action.act_basis(*s, key[0]) {
                    let mut k = key.clone();
                    k[0] = *m2;
                    lc_add(&mut lc, k, c * u);
                }
            }
            for (k, c) in act_rest(h, &key[1..]) {
                let mut nk = vec![key[0]];
                nk.extend(k);
                lc_add(&mut lc, nk, -c);
            }
            let row = encode_lc(radix, &lc);
            if !row.is_empty() {
                out.push(row);
            }
        }
    }
    out
}

/// Ambient cofaces and cyclic operators of a bundle.
///
/// Kinds A and B act on functionals (pullbacks); kind C acts on chains
/// `M ⊗ C^{⊗(n+1)}` (pushforwards).
pub struct AmbientOps<'a> {
    bundle: &'a SymmetryBundle,
    s_inv: Vec<SparseVec>,
    inv_act: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl<'a> AmbientOps<'a> {
    pub fn new(bundle: &'a SymmetryBundle) -> Result<Self> {
        let hopf = &bundle.hopf;
        let s_inv = if bundle.kind() == Kind::A {
            (0..hopf.dim())
                .map(|h| hopf.antipode_inv_basis(h))
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        let dm = bundle.coeffs.dim();
        let mut inv_act = vec![vec![Vec::new(); dm]; hopf.dim()];
        for (h, row) in inv_act.iter_mut().enumerate() {
            for m2 in 0..dm {
                for (m, v) in bundle.coeffs.action.act_basis(h, m2) {
                    row[*m].push((m2, v.clone()));
                }
            }
        }
        Ok(AmbientOps { bundle, s_inv, inv_act })
    }

    pub fn radix(&self, n: usize) -> Radix {
        let mut dims = vec![self.bundle.coeffs.dim()];
        dims.extend(std::iter::repeat_n(self.bundle.carrier_dim(), n + 1));
        Radix::new(dims)
    }

    fn pullback(&self) -> bool {
        self.bundle.kind() != Kind::C
    }

    fn build(&self, src: &Radix, tgt: &Radix, expand: impl Fn(&[usize]) -> Lc) -> SparseOp {
        if self.pullback() {
            let rows: Vec<SparseVec> = tgt.iter().map(|k| encode_lc(src, &expand(&k))).collect();
            SparseOp::from_rows(src.size(), &rows)
        } else {
            let cols = src.iter().map(|k| encode_lc(tgt, &expand(&k))).collect();
            SparseOp::from_columns(tgt.size(), cols)
        }
    }

    /// The `i`-th coface from degree `n` to `n + 1`, `0 ≤ i ≤ n + 1`.
    pub fn face(&self, n: usize, i: usize) -> SparseOp {
        assert!(i <= n + 1, "coface index out of range");
        self.build(&self.radix(n), &self.radix(n + 1), |key| self.face_terms(n, i, key))
    }

    /// `b = Σ_i (−1)^i δ_i` from degree `n` to `n + 1`.
    pub fn b(&self, n: usize) -> SparseOp {
        let mut acc = self.face(n, 0);
        for i in 1..=n + 1 {
            acc = acc.add_scaled(&self.face(n, i), &crate::exactla::sign(i));
        }
        acc
    }

    /// The cyclic operator in degree `n`.
    pub fn lambda(&self, n: usize) -> SparseOp {
        let r = self.radix(n);
        self.build(&r, &r, |key| self.lambda_terms(n, key))
    }

    fn face_terms(&self, n: usize, i: usize, key: &[usize]) -> Lc {
        let bundle = self.bundle;
        let mut out = Lc::new();
        match &bundle.symmetry {
            Symmetry::ModuleAlgebra { algebra, .. } | Symmetry::ComoduleAlgebra { algebra, .. } if i <= n => {
                for (p, c) in algebra.mul_basis(key[i + 1], key[i + 2]) {
                    let mut k = key[..=i].to_vec();
                    k.push(*p);
                    k.extend(&key[i + 3..]);
                    lc_add(&mut out, k, c.clone());
                }
            }
            Symmetry::ModuleAlgebra { algebra, action } => {
                let (m, a0, last) = (key[0], key[1], key[n + 2]);
                for (h, m2, c) in bundle.coeffs.coact_basis(m) {
                    for (k, s) in &self.s_inv[*h] {
                        for (p, u) in action.act_basis(*k, last) {
                            for (q, w) in algebra.mul_basis(*p, a0) {
                                let mut nk = vec![*m2, *q];
                                nk.extend(&key[2..n + 2]);
                                lc_add(&mut out, nk, c * s * u * w);
                            }
                        }
                    }
                }
            }
            Symmetry::ComoduleAlgebra { algebra, coaction } => {
                let (m, b0, last) = (key[0], key[1], key[n + 2]);
                for (h, b2, c) in coaction.coact_basis(last) {
                    for (m2, v) in &self.inv_act[*h][m] {
                        for (q, w) in algebra.mul_basis(*b2, b0) {
                            let mut nk = vec![*m2, *q];
                            nk.extend(&key[2..n + 2]);
                            lc_add(&mut out, nk, c * v * w);
                        }
                    }
                }
            }
            Symmetry::ModuleCoalgebra { coalgebra, .. } if i <= n => {
                for (x, y, c) in coalgebra.comult_basis(key[i + 1]) {
                    let mut k = key[..=i].to_vec();
                    k.push(*x);
                    k.push(*y);
                    k.extend(&key[i + 2..]);
                    lc_add(&mut out, k, c.clone());
                }
            }
            Symmetry::ModuleCoalgebra { coalgebra, action } => {
                for (h, m2, c) in bundle.coeffs.coact_basis(key[0]) {
                    for (x, y, k) in coalgebra.comult_basis(key[1]) {
                        for (z, u) in action.act_basis(*h, *x) {
                            let mut nk = vec![*m2, *y];
                            nk.extend(&key[2..]);
                            nk.push(*z);
                            lc_add(&mut out, nk, c * k * u);
                        }
                    }
                }
            }
        }

        out
    }

    fn lambda_terms(&self, n: usize, key: &[usize]) -> Lc {
        let bundle = self.bundle;
        let sgn = crate::exactla::sign(n);
        let mut out = Lc::new();
        match &bundle.symmetry {
            Symmetry::ModuleAlgebra { action, .. } => {
                for (h, m2, c) in bundle.coeffs.coact_basis(key[0]) {
                    for (k, s) in &self.s_inv[*h] {
                        for (p, u) in action.act_basis(*k, key[n + 1]) {
                            let mut nk = vec![*m2, *p];
                            nk.extend(&key[1..n + 1]);
                            lc_add(&mut out, nk, &sgn * c * s * u);
                        }
                    }
                }
            }
            Symmetry::ComoduleAlgebra { coaction, .. } => {
                for (h, b2, c) in coaction.coact_basis(key[n + 1]) {
                    for (m2, v) in &self.inv_act[*h][key[0]] {
                        let mut nk = vec![*m2, *b2];
                        nk.extend(&key[1..n + 1]);
                        lc_add(&mut out, nk, &sgn * c * v);
                    }
                }
            }
            Symmetry::ModuleCoalgebra { action, .. } => {
                for (h, m2, c) in bundle.coeffs.coact_basis(key[0]) {
                    for (z, u) in action.act_basis(*h, key[1]) {
                        let mut nk = vec![*m2];
                        nk.extend(&key[2..]);
                        nk.push(*z);
                        lc_add(&mut out, nk, &sgn * c * u);
                    }
                }
            }
        }
        out
    }
}

/// Human-readable form of an ambient key.
pub fn describe_key(bundle: &SymmetryBundle, key: &[usize]) -> String {
    let m = &bundle.coeffs.space().labels[key[0]];
    let carrier = bundle.carrier_space();
    let rest: Vec<&str> = key[1..].iter().map(|&i| carrier.labels[i].as_str()).collect();
    format!("{m} | {}", rest.join(" ⊗ "))
}

/// Outcome of one structural identity in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub degree: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

impl std::fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "  {status}  {} (degree {})", self.identity, self.degree)?;
        if let Some(w) = &self.witness {
            write!(f, " witness ({w})")?;
        }
        Ok(())
    }
}

/// A cochain given by its coordinates in the degree-`degree` cochain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

struct Assembly {
    spaces: Vec<CochainSpace>,
    b: Vec<Option<SparseOp>>,
    lambda: Vec<Option<SparseOp>>,
    checks: Vec<IdentityCheck>,
}

/// Induces `amb` on coordinates, or reports the first basis cochain whose
/// image leaves the target space.
fn induce(
    bundle: &SymmetryBundle,
    amb: &SparseOp,
    src: &CochainSpace,
    tgt: &CochainSpace,
) -> std::result::Result<SparseOp, String> {
    for g in src.relation_generators() {
        let img = amb.apply_sparse(g);
        if !tgt.is_trivial_sparse(&img) {
            let lead = g[0].0;
            return Err(format!("relation at {}", describe_key(bundle, &src.key_of(lead))));
        }
    }
    let mut cols = Vec::with_capacity(src.dim());
    for i in 0..src.dim() {
        let w = src.lift_basis(i);
        match tgt.project_sparse(&amb.apply_sparse(&w)) {
            Some(c) => cols.push(c),
            None => return Err(basis_witness(bundle, src, i)),
        }
    }
    Ok(SparseOp::from_columns(tgt.dim(), cols))
}

fn sparse_witness(bundle: &SymmetryBundle, space: &CochainSpace, coords: &[(usize, Rational)]) -> String {
    let mut lead = None;
    for (i, c) in coords {
        for (j, x) in space.lift_basis(*i) {
            if !(c * x).is_zero() {
                lead = Some(lead.map_or(j, |l: usize| l.min(j)));
            }
        }
    }
    match lead {
        Some(j) => describe_key(bundle, &space.key_of(j)),
        None => "0".into(),
    }
}

fn basis_witness(bundle: &SymmetryBundle, space: &CochainSpace, i: usize) -> String {
    format!("cochain through {}", sparse_witness(bundle, space, &sparse_unit(i)))
}

fn assemble(bundle: &SymmetryBundle, top: usize, limits: &Limits) -> Result<Assembly> {
    let spaces: Vec<CochainSpace> = (0..=top)
        .map(|n| CochainSpace::build(bundle, n, limits))
        .collect::<Result<_>>()?;
    let ops = AmbientOps::new(bundle)?;
    let mut checks = Vec::new();
    let mut record = |identity: &'static str, degree: usize, res: std::result::Result<(), String>| {
        checks.push(IdentityCheck {
            identity,
            degree,
            passed: res.is_ok(),
            witness: res.err(),
        });
    };
    let mut lambda = Vec::new();
    for (n, sp) in spaces.iter().enumerate() {
        let ind = induce(bundle, &ops.lambda(n), sp, sp);
        record("lambda-well-defined", n, ind.as_ref().map(|_| ()).map_err(Clone::clone));
        lambda.push(ind.ok());
    }
    let mut b = Vec::new();
    for n in 0..top {
        let ind = induce(bundle, &ops.b(n), &spaces[n], &spaces[n + 1]);
        record("b-well-defined", n, ind.as_ref().map(|_| ()).map_err(Clone::clone));
        b.push(ind.ok());
    }
    for (n, sp) in spaces.iter().enumerate() {
        let Some(l) = &lambda[n] else { continue };
        let res = (0..sp.dim()).try_for_each(|i| {
            let e = sparse_unit(i);
            let mut v = e.clone();
            for _ in 0..=n {
                v = l.apply_sparse(&v);
            }
            if v == e {
                Ok(())
            } else {
                Err(basis_witness(bundle, sp, i))
            }
        });
        record("lambda-order", n, res);
    }
    for n in 0..top.saturating_sub(1) {
        let (Some(b0), Some(b1)) = (&b[n], &b[n + 1]) else {
            continue;
        };
        let sp = &spaces[n];
        let res = (0..sp.dim()).try_for_each(|i| {
            if b1.apply_sparse(&b0.cols[i]).is_empty() {
                Ok(())
            } else {
                Err(basis_witness(bundle, sp, i))
            }
        });
        record("b-squared", n, res);
    }
    for n in 0..top {
        let (Some(bn), Some(l0), Some(l1)) = (&b[n], &lambda[n], &lambda[n + 1]) else {
            continue;
        };
        let cyc = op_kernel(&one_minus(l0));
        let res = cyc.basis().iter().try_for_each(|v| {
            let bv = bn.apply_sparse(v);
            if l1.apply_sparse(&bv) == bv {
                Ok(())
            } else {
                Err(format!(
                    "cyclic cochain through {}",
                    sparse_witness(bundle, &spaces[n], v)
                ))
            }
        });
        record("b-preserves-cyclic", n, res);
    }
    Ok(Assembly {
        spaces,
        b,
        lambda,
        checks,
    })
}

/// Evaluates the structural identities (well-definedness, `b² = 0`,
/// `λ^{n+1} = id`, `b` preserves cyclic cochains) up to degree `top`,
/// reporting failures instead of raising them.
pub fn check_identities(bundle: &SymmetryBundle, top: usize, limits: &Limits) -> Result<Vec<IdentityCheck>> {
    Ok(assemble(bundle, top, limits)?.checks)
}

/// The cochain complex of a bundle in degrees `0..=top`, with every
/// structural identity certified.
#[derive(Clone, Debug)]
pub struct CyclicComplex {
    pub bundle: SymmetryBundle,
    pub spaces: Vec<CochainSpace>,
    /// `b[n]` maps degree `n` to `n + 1` in coordinates.
    pub b: Vec<SparseOp>,
    pub lambda: Vec<SparseOp>,
    /// `ker(1 − λ)` in each degree, in coordinates.
    pub cyclic: Vec<SparseKernel>,
    pub checks: Vec<IdentityCheck>,
}

/// Cohomology data in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub degree: usize,
    pub hc_dim: usize,
    pub hh_dim: usize,
    pub cochain_dim: usize,
    pub cyclic_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Canonical representatives of a basis of `HC^n`.
    pub representatives: Vec<Cochain>,
}

impl CyclicComplex {
    pub fn new(bundle: &SymmetryBundle, top: usize, limits: &Limits) -> Result<Self> {
        let asm = assemble(bundle, top, limits)?;
        if let Some(bad) = asm.checks.iter().find(|c| !c.passed) {
            return Err(Error::Construction(format!(
                "{}: {} fails in degree {}{}",
                bundle.name,
                bad.identity,
                bad.degree,
                bad.witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default()
            )));
        }
        let b: Vec<SparseOp> = asm.b.into_iter().map(Option::unwrap).collect();
        let lambda: Vec<SparseOp> = asm.lambda.into_iter().map(Option::unwrap).collect();
        let cyclic = lambda.iter().map(|l| op_kernel(&one_minus(l))).collect();
        Ok(CyclicComplex {
            bundle: bundle.clone(),
            spaces: asm.spaces,
            b,
            lambda,
            cyclic,
            checks: asm.checks,
        })
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn kind(&self) -> Kind {
        self.bundle.kind()
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain {
            degree: n,
            coords: vec![Rational::zero(); self.spaces[n].dim()],
        }
    }

    pub fn ambient(&self, c: &Cochain) -> Vec<Rational> {
        self.spaces[c.degree].lift(&c.coords)
    }

    /// The cochain represented by an ambient vector.
    pub fn from_ambient(&self, n: usize, w: &[Rational]) -> Result<Cochain> {
        let sp = self
            .spaces
            .get(n)
            .ok_or_else(|| Error::Precondition(format!("degree {n} beyond the complex")))?;
        if w.len() != sp.ambient_dim() {
            return Err(Error::SpecFormat(format!(
                "degree {n} cochain needs {} values, got {}",
                sp.ambient_dim(),
                w.len()
            )));
        }
        let coords = sp
            .project(w)
            .ok_or_else(|| Error::Precondition(format!("values are not an equivariant degree {n} cochain")))?;
        Ok(Cochain { degree: n, coords })
    }

    pub fn apply_b(&self, c: &Cochain) -> Cochain {
        Cochain {
            degree: c.degree + 1,
            coords: self.b[c.degree].apply(&c.coords),
        }
    }

    pub fn apply_lambda(&self, c: &Cochain) -> Cochain {
        Cochain {
            degree: c.degree,
            coords: self.lambda[c.degree].apply(&c.coords),
        }
    }

    pub fn is_cyclic_cocycle(&self, c: &Cochain) -> bool {
        c.degree < self.top()
            && c.coords.len() == self.spaces[c.degree].dim()
            && is_zero_vec(&self.apply_b(c).coords)
            && self.apply_lambda(c).coords == c.coords
    }

    /// `Z^n = ker b ∩ ker(1 − λ)` in coordinates.
    pub fn cyclic_cocycles(&self, n: usize) -> SparseKernel {
        let mut red = RowReducer::new(self.spaces[n].dim());
        for row in one_minus(&self.lambda[n]).rows() {
            red.push(&row);
        }
        for row in self.b[n].rows() {
            red.push(&row);
        }
        red.sparse_kernel()
    }

    /// `b(C_λ^{n−1})` in coordinates, as an echelon basis.
    pub fn cyclic_coboundaries(&self, n: usize) -> RowReducer {
        let mut red = RowReducer::new(self.spaces[n].dim());
        if n > 0 {
            for v in self.cyclic[n - 1].basis() {
                red.push(&self.b[n - 1].apply_sparse(v));
            }
        }
        red
    }

    pub fn cohomology(&self, n: usize) -> Result<Cohomology> {
        if n >= self.top() {
            return Err(Error::Precondition(format!(
                "degree {n} needs the complex through degree {}",
                n + 1
            )));
        }
        let dim = self.spaces[n].dim();
        let z = self.cyclic_cocycles(n);
        let bsp = self.cyclic_coboundaries(n);
        let mut classes = RowReducer::new(dim);
        for v in z.basis() {
            classes.push(&bsp.reduce_sparse(v));
        }
        let reps = classes.row_space().basis_vectors();
        let mut rank_b = RowReducer::new(dim);
        for row in self.b[n].rows() {
            rank_b.push(&row);
        }
        let mut im = RowReducer::new(dim);
        if n > 0 {
            for col in &self.b[n - 1].cols {
                im.push(col);
            }
        }
        Ok(Cohomology {
            degree: n,
            hc_dim: reps.len(),
            hh_dim: dim - rank_b.rank() - im.rank(),
            cochain_dim: dim,
            cyclic_dim: self.cyclic[n].dim(),
            cocycle_dim: z.dim(),
            coboundary_dim: bsp.rank(),
            representatives: reps.into_iter().map(|coords| Cochain { degree: n, coords }).collect(),
        })
    }
}

/// `HC^n` and `HH^n` for `n ≤ max_degree`.
pub fn compute_cohomology(bundle: &SymmetryBundle, max_degree: usize, limits: &Limits) -> Result<Vec<Cohomology>> {
    let complex = CyclicComplex::new(bundle, max_degree + 1, limits)?;
    (0..=max_degree).map(|n| complex.cohomology(n)).collect()
}

/// Solves `b η = φ` with `η` cyclic; returns the coordinates of `η` in the
/// degree `n − 1` space (empty in degree 0), or `None` if `φ` is not a
/// cyclic coboundary.
pub fn coboundary_test(complex: &CyclicComplex, phi: &Cochain) -> Option<Vec<Rational>> {
    let n = phi.degree;
    if n == 0 {
        return is_zero_vec(&phi.coords).then(Vec::new);
    }
    let cyc = &complex.cyclic[n - 1];
    let images: Vec<SparseVec> = cyc.basis().iter().map(|v| complex.b[n - 1].apply_sparse(v)).collect();
    let y = solve_sparse(&images, phi.coords.len(), &sparse_from_dense(&phi.coords))?;
    let eta = cyc.from_coordinates(&y);
    debug_assert_eq!(complex.b[n - 1].apply(&eta), phi.coords);
    Some(eta)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::exactla::{q, sign};
    use crate::fixtures::fixture;
    use crate::multilin::Space;
    use crate::structures::{Action, Algebra, Hopf, Sayd};

    fn bundle(name: &str) -> SymmetryBundle {
        fixture(name).unwrap().bundle().unwrap().clone()
    }

    /// `k[x]/(x² − 1)` over the trivial Hopf algebra.
    fn split_pair() -> SymmetryBundle {
        let h = Arc::new(Hopf::trivial());
        let space = Space::from_strs("A", &["1", "x"]);
        let alg = Algebra::from_fn(space.clone(), vec![q(1), q(0)], |i, j| vec![((i + j) % 2, q(1))]).unwrap();
        let action = Action::trivial(h.clone(), space);
        SymmetryBundle::new(
            "split",
            Symmetry::ModuleAlgebra { algebra: alg, action },
            Sayd::trivial(h),
        )
        .unwrap()
    }

    fn dims(b: &SymmetryBundle, n: usize) -> Vec<usize> {
        compute_cohomology(b, n, &Limits::default())
            .unwrap()
            .iter()
            .map(|c| c.hc_dim)
            .collect()
    }

    #[test]
    fn trivial_hopf_gives_all_functionals() {
        let b = split_pair();
        for n in 0..3 {
            assert_eq!(
                CochainSpace::build(&b, n, &Limits::default()).unwrap().dim(),
                1 << (n + 1)
            );
        }
    }

    #[test]
    fn b_matches_naive_hochschild_coboundary() {
        let b = split_pair();
        let alg = b.algebra().unwrap().clone();
        let ops = AmbientOps::new(&b).unwrap();
        for n in 0..3 {
            let bn = ops.b(n);
            let src = ops.radix(n);
            let tgt = ops.radix(n + 1);
            for j in 0..src.size() {
                let mut phi = vec![q(0); src.size()];
                phi[j] = q(1);
                let got = bn.apply(&phi);
                for key in tgt.iter() {
                    let a = &key[1..];
                    let mut want = q(0);
                    for i in 0..=n {
                        let prod = (a[i] + a[i + 1]) % 2;
                        let mut k = vec![0];
                        k.extend(&a[..i]);
                        k.push(prod);
                        k.extend(&a[i + 2..]);
                        want += sign(i) * &phi[src.encode(&k)];
                    }
                    let prod = alg.mul_basis(a[n + 1], a[0])[0].0;
                    let mut k = vec![0, prod];
                    k.extend(&a[1..=n]);
                    want += sign(n + 1) * &phi[src.encode(&k)];
                    assert_eq!(got[tgt.encode(&key)], want);
                }
            }
        }
    }

    #[test]
    fn split_algebra_has_two_copies_of_ground_cohomology() {
        assert_eq!(dims(&split_pair(), 3), vec![2, 0, 2, 0]);
    }

    #[test]
    fn ground_field_cohomology() {
        assert_eq!(dims(&bundle("groundA"), 2), vec![1, 0, 1]);
    }

    #[test]
    fn group_coalgebra_cohomology() {
        let b = bundle("C=H-kZ2");
        assert_eq!(CochainSpace::build(&b, 0, &Limits::default()).unwrap().dim(), 1);
        assert_eq!(dims(&b, 2), vec![1, 0, 1]);
    }

    #[test]
    fn sign_algebra_invariant_trace() {
        let b = bundle("signA");
        let cx = CyclicComplex::new(&b, 1, &Limits::default()).unwrap();
        let h0 = cx.cohomology(0).unwrap();
        assert_eq!(h0.hc_dim, 1);
        let tau = cx.ambient(&h0.representatives[0]);
        let scale = tau[0].clone();
        assert!(!scale.is_zero());
        assert_eq!(tau, vec![scale, q(0)]);
    }

    #[test]
    fn fixture_expected_dimensions() {
        for name in crate::fixtures::VALID {
            let fx = fixture(name).unwrap();
            if let (Ok(b), Some(expected)) = (fx.bundle(), &fx.expected.hc_dims) {
                assert_eq!(&dims(b, expected.len() - 1), expected, "{name}");
            }
        }
    }

    #[test]
    fn identities_hold_on_valid_bundles() {
        for name in crate::fixtures::VALID {
            let Ok(b) = fixture(name).unwrap().bundle().cloned() else {
                continue;
            };
            let top = if b.carrier_dim() <= 2 { 4 } else { 2 };
            let checks = check_identities(&b, top, &Limits::default()).unwrap();
            for c in &checks {
                assert!(c.passed, "{name}: {c}");
            }
            assert!(checks.iter().any(|c| c.identity == "b-squared"));
        }
    }

    #[test]
    fn unstable_coefficients_break_cyclic_order() {
        let sign = bundle("signA");
        let bad = match fixture("Mtriv-badAYD").unwrap().payload {
            crate::fixtures::Payload::Sayd(s) => s,
            _ => unreachable!(),
        };
        let b = SymmetryBundle::new("signA-badAYD", sign.symmetry.clone(), bad).unwrap();
        let checks = check_identities(&b, 3, &Limits::default()).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed
            .iter()
            .any(|c| c.identity == "lambda-order" && c.witness.is_some()));
        let err = CyclicComplex::new(&b, 3, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Construction(ref m) if m.contains("lambda-order")));
    }

    #[test]
    fn coboundary_test_detects_classes() {
        let b = bundle("groundA");
        let cx = CyclicComplex::new(&b, 3, &Limits::default()).unwrap();
        let h2 = cx.cohomology(2).unwrap();
        assert!(coboundary_test(&cx, &h2.representatives[0]).is_none());
        assert_eq!(coboundary_test(&cx, &cx.zero(0)), Some(Vec::new()));
        let h0 = cx.cohomology(0).unwrap();
        assert!(coboundary_test(&cx, &h0.representatives[0]).is_none());
    }

    #[test]
    fn trace_correspondence_gates() {
        let lim = Limits::default();
        for name in [
            "groundA",
            "signA",
            "signA-Mdelta",
            "funZ3",
            "B=H-kZ2",
            "B=H-kZ2-Mdelta",
            "M2graded",
            "C=H-kZ2",
            "C=H-kZ2-Msigma",
            "C=H-kZ3",
            "B=H-kZ3",
            "adjoint-sweedler4",
            "C=H-sweedler4",
            "C=H-kS3",
        ] {
            let b = bundle(name);
            let cx = CyclicComplex::new(&b, 3, &lim).unwrap();
            for n in 0..=2 {
                correspondence_gate(&cx, n, &lim).unwrap_or_else(|e| panic!("{name}: {e}"));
                for rep in cx.cohomology(n).unwrap().representatives {
                    let tr = to_trace(&cx, &rep, &lim).unwrap();
                    assert!(trace_checks(&b, &tr, &lim).unwrap().passed());
                    assert_eq!(to_cocycle(&cx, &tr, &lim).unwrap(), rep, "{name} degree {n}");
                }
            }
        }
    }

    #[test]
    fn non_trace_is_rejected() {
        let lim = Limits::default();
        let b = bundle("signA");
        let cx = CyclicComplex::new(&b, 2, &lim).unwrap();
        let mut values = vec![q(0); trace_radix(&b, 1).size()];
        values[0] = q(1);
        let tr = TraceElement {
            kind: Kind::A,
            degree: 1,
            values,
        };
        let report = trace_checks(&b, &tr, &lim).unwrap();
        assert!(!report.passed());
        assert!(matches!(to_cocycle(&cx, &tr, &lim), Err(Error::Precondition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn coboundaries_of_cyclic_cochains_are_detected(
            seed in proptest::collection::vec(-3i64..4, 8),
            n in 1usize..3,
            which in 0usize..3,
        ) {
            let name = ["signA", "B=H-kZ2", "C=H-kZ2"][which];
            let cx = CyclicComplex::new(&bundle(name), 3, &Limits::default()).unwrap();
            let cyc = &cx.cyclic[n - 1];
            let coords: Vec<Rational> = (0..cyc.dim()).map(|i| q(seed[i % seed.len()])).collect();
            let eta = cyc.from_coordinates(&coords);
            let phi = cx.apply_b(&Cochain { degree: n - 1, coords: eta });
            prop_assert!(cx.is_cyclic_cocycle(&phi));
            let w = coboundary_test(&cx, &phi).unwrap();
            prop_assert_eq!(cx.b[n - 1].apply(&w), phi.coords);
        }

        #[test]
        fn lambda_has_finite_order(coords in proptest::collection::vec(-5i64..6, 16), which in 0usize..3) {
            let name = ["signA-Mdelta", "B=H-kZ2-Mdelta", "C=H-kZ2-Msigma"][which];
            let cx = CyclicComplex::new(&bundle(name), 3, &Limits::default()).unwrap();
            for n in 0..=3 {
                let v: Vec<Rational> = (0..cx.spaces[n].dim()).map(|i| q(coords[i % 16])).collect();
                let mut w = v.clone();
                for _ in 0..=n {
                    w = cx.lambda[n].apply(&w);
                }
                prop_assert_eq!(w, v);
            }
        }
    }
}
