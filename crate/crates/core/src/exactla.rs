//! Exact rational arithmetic and dense linear algebra.
//!
//! Everything downstream (cochain spaces, cohomology, trace checks) reduces
//! to kernels, images and quotients of rational matrices, so this module is
//! the only place where elimination happens. Subspaces are always stored in
//! reduced row-echelon form, which makes subspace equality plain matrix
//! equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` with an optional leading minus sign.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    fn int(part: &str) -> std::result::Result<BigInt, String> {
        let digits = part.strip_prefix('-').unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational {:?}", part));
        }
        part.parse::<BigInt>()
            .map_err(|e| format!("malformed rational {:?}: {}", part, e))
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            if d.starts_with('-') {
                return Err(format!("negative denominator in {:?}", s));
            }
            let num = int(n)?;
            let den = int(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in {:?}", s));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Resource limits shared by every construction that materializes dense data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of entries in any dense matrix (or equivalent work unit).
    pub max_entries: usize,
    /// Truncation degree for differential graded constructions.
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_entries: 1_000_000,
            max_degree: 4,
        }
    }
}

impl Limits {
    pub fn check(&self, what: &str, entries: usize) -> Result<()> {
        if entries > self.max_entries {
            Err(Error::Budget {
                what: what.to_string(),
                needed: entries,
                limit: self.max_entries,
            })
        } else {
            Ok(())
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from integer rows; convenient in tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, entries }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product, leftmost factor slowest.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        (0..k).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Two-sided inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let (red, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|&r| self.row(r).to_vec()).collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// Reduced row-echelon form together with the strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.entries.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a[(row, col)].recip();
        for c in col..a.cols {
            let v = &a[(row, c)] * &inv;
            a[(row, c)] = v;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                if a[(row, c)].is_zero() {
                    continue;
                }
                let v = &factor * &a[(row, c)];
                a[(r, c)] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// A subspace of `Q^ambient_dim`, canonically represented by an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Lattice operations offered by [`subspace_calc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersection,
    QuotientDim,
    Contains,
}

/// Result of [`subspace_calc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceValue {
    Space(Subspace),
    Dim(usize),
    Bool(bool),
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors (need not be independent).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let (red, pivots) = rref(&Matrix::from_rows(vectors.to_vec()));
        Subspace {
            ambient_dim,
            basis: red.select_rows(&(0..pivots.len()).collect::<Vec<_>>()),
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    /// Clears the pivot coordinates of `v` against the basis; the residue is
    /// zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (c, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[c] -= &f * b;
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of a member vector in the RREF basis (read off at pivots).
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[i] += c * b;
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // Solve x·A = y·B via the kernel of [A; -B]^T.
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let mut stacked = Matrix::zeros(self.ambient_dim, da + db);
        for r in 0..da {
            for c in 0..self.ambient_dim {
                stacked[(c, r)] = self.basis[(r, c)].clone();
            }
        }
        for r in 0..db {
            for c in 0..self.ambient_dim {
                stacked[(c, da + r)] = -other.basis[(r, c)].clone();
            }
        }
        let ker = kernel_basis(&stacked);
        let vectors: Vec<Vec<Rational>> = ker
            .basis_vectors()
            .iter()
            .map(|k| self.from_coordinates(&k[..da]))
            .collect();
        Subspace::span(self.ambient_dim, &vectors)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains_vector(v))
    }

    /// `dim self - dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !self.contains(sub) {
            return Err(Error::Containment(format!(
                "subspace of dim {} is not contained in subspace of dim {}",
                sub.dim(),
                self.dim()
            )));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Canonical representatives of `self / sub`: the members of `self`
    /// reduced modulo `sub`, brought to RREF.
    pub fn quotient_representatives(&self, sub: &Subspace) -> Result<Vec<Vec<Rational>>> {
        self.quotient_dim(sub)?;
        let reduced: Vec<Vec<Rational>> = self.basis_vectors().iter().map(|v| sub.reduce(v)).collect();
        Ok(Subspace::span(self.ambient_dim, &reduced).basis_vectors())
    }
}

/// Subspace lattice operations behind one entry point.
pub fn subspace_calc(a: &Subspace, b: &Subspace, op: SubspaceOp) -> Result<SubspaceValue> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::SpecFormat(format!(
            "ambient dimensions differ: {} vs {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(match op {
        SubspaceOp::Sum => SubspaceValue::Space(a.sum(b)),
        SubspaceOp::Intersection => SubspaceValue::Space(a.intersection(b)),
        SubspaceOp::QuotientDim => SubspaceValue::Dim(a.quotient_dim(b)?),
        SubspaceOp::Contains => SubspaceValue::Bool(a.contains(b)),
    })
}

/// Basis of `{v : m·v = 0}` in canonical form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (red, pivots) = rref(m);
    kernel_from_rref(m.cols(), &pivots, |r, c| red[(r, c)].clone())
}

fn kernel_from_rref(cols: usize, pivots: &[usize], entry: impl Fn(usize, usize) -> Rational) -> Subspace {
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in pivots {
            v[p] = true;
        }
        v
    };
    let vectors: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -entry(r, f);
            }
            v
        })
        .collect();
    Subspace::span(cols, &vectors)
}

/// One particular solution of `m·x = rhs` (free variables zero), if consistent.
pub fn solve_linear(m: &Matrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rhs.len(), m.rows(), "rhs length must equal row count");
    let mut aug = Matrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols())] = rhs[r].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[(r, m.cols())].clone();
    }
    Some(x)
}

/// Sparse vector: (index, value) pairs, unordered, possibly repeated.
pub type SparseVec = Vec<(usize, Rational)>;

/// Sums duplicate indices and drops zeros, returning a sorted sparse vector.
pub fn normalize_sparse(v: SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, c) in v {
        if c.is_zero() {
            continue;
        }
        *acc.entry(i).or_insert_with(Rational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn dense_from_sparse(dim: usize, v: &[(usize, Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, c) in v {
        out[*i] += c;
    }
    out
}

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Incremental sparse Gaussian elimination.
///
/// Rows are streamed in one at a time and reduced against the pivots found
/// so far, so memory stays bounded by the rank rather than the number of
/// constraint rows. Used to solve the large, very sparse equivariance
/// systems that define cochain spaces.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_row(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut cursor = 0;
        while let Some((&col, val)) = row.range(cursor..).next() {
            if let Some(prow) = self.pivots.get(&col) {
                let f = val.clone();
                for (c, pv) in prow {
                    let e = row.entry(*c).or_insert_with(Rational::zero);
                    *e -= &f * pv;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
            cursor = col + 1;
        }
        row
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            debug_assert!(*c < self.cols);
            if v.is_zero() {
                continue;
            }
            let e = map.entry(*c).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                map.remove(c);
            }
        }
        let reduced = self.reduce_row(map);
        let Some((&lead, lv)) = reduced.iter().next() else {
            return false;
        };
        let inv = lv.recip();
        let normalized = reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    /// Whether the sparse vector lies in the row space.
    pub fn contains(&self, row: &[(usize, Rational)]) -> bool {
        let map: BTreeMap<usize, Rational> = normalize_sparse(row.to_vec()).into_iter().collect();
        self.reduce_row(map).is_empty()
    }

    /// Fully reduced rows keyed by pivot column (back substitution).
    fn reduced_rows(&self) -> Vec<(usize, BTreeMap<usize, Rational>)> {
        let mut done: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            let cols: Vec<usize> = row.keys().copied().filter(|&c| c != p).collect();
            for c in cols {
                if let Some(prow) = done.get(&c) {
                    let Some(f) = row.get(&c).cloned() else { continue };
                    for (cc, pv) in prow {
                        let e = row.entry(*cc).or_insert_with(Rational::zero);
                        *e -= &f * pv;
                        if e.is_zero() {
                            row.remove(cc);
                        }
                    }
                }
            }
            done.insert(p, row);
        }
        done.into_iter().collect()
    }

    /// The row space in canonical form.
    pub fn row_space(&self) -> Subspace {
        let rows = self.reduced_rows();
        let vectors: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(_, r)| {
                let mut v = vec![Rational::zero(); self.cols];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        Subspace {
            ambient_dim: self.cols,
            pivots: rows.iter().map(|(p, _)| *p).collect(),
            basis: if vectors.is_empty() {
                Matrix::zeros(0, self.cols)
            } else {
                Matrix::from_rows(vectors)
            },
        }
    }

    /// Null space of the accumulated rows, in canonical form.
    pub fn kernel(&self) -> Subspace {
        let rows = self.reduced_rows();
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        kernel_from_rref(self.cols, &pivots, |r, c| {
            rows[r].1.get(&c).cloned().unwrap_or_else(Rational::zero)
        })
    }

    /// Reduces a dense vector modulo the row space, clearing pivot columns.
    pub fn reduce_dense(&self, v: &[Rational]) -> Vec<Rational> {
        let map: BTreeMap<usize, Rational> = sparse_from_dense(v).into_iter().collect();
        dense_from_sparse(self.cols, &self.reduce_row(map).into_iter().collect::<Vec<_>>())
    }

    /// Reduces a sparse vector modulo the row space, clearing pivot columns.
    pub fn reduce_sparse(&self, v: &[(usize, Rational)]) -> SparseVec {
        let map: BTreeMap<usize, Rational> = normalize_sparse(v.to_vec()).into_iter().collect();
        self.reduce_row(map).into_iter().collect()
    }

    /// Null space with a sparse basis indexed by the free columns.
    pub fn sparse_kernel(&self) -> SparseKernel {
        let mut is_pivot = vec![false; self.cols];
        for &p in self.pivots.keys() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut slot = vec![usize::MAX; self.cols];
        for (i, &f) in free.iter().enumerate() {
            slot[f] = i;
        }
        let mut basis: Vec<SparseVec> = free.iter().map(|&f| vec![(f, Rational::one())]).collect();
        for (p, row) in self.reduced_rows() {
            for (c, v) in row {
                if c != p {
                    basis[slot[c]].push((p, -v));
                }
            }
        }
        SparseKernel {
            ambient_dim: self.cols,
            free,
            basis: basis.into_iter().map(normalize_sparse).collect(),
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let (r, p) = rref(&Matrix::identity(3));
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_proportional_rows() {
        let (r, p) = rref(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_fractions() {
        let m = Matrix::from_rows(vec![vec![qf(1, 2), qf(1, 3)], vec![qf(1, 4), qf(1, 6)]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_rows(vec![vec![q(1), qf(2, 3)], vec![q(0), q(0)]]));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_basis(&Matrix::identity(2)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).dim(), 3);
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(3, &[qv(&[1, -1, 0])]));
    }

    #[test]
    fn solving() {
        assert_eq!(solve_linear(&Matrix::identity(2), &qv(&[3, 5])), Some(qv(&[3, 5])));
        assert_eq!(
            solve_linear(&Matrix::from_i64(&[&[1, 1]]), &qv(&[2])),
            Some(qv(&[2, 0]))
        );
        assert_eq!(solve_linear(&Matrix::from_i64(&[&[1], &[1]]), &qv(&[0, 1])), None);
    }

    #[test]
    fn subspace_lattice() {
        let e = |i: usize| {
            let mut v = vec![q(0); 3];
            v[i] = q(1);
            v
        };
        let full = Subspace::full(3);
        let line = Subspace::span(3, &[e(0)]);
        assert_eq!(
            subspace_calc(&full, &line, SubspaceOp::QuotientDim).unwrap(),
            SubspaceValue::Dim(2)
        );
        let a = Subspace::span(3, &[e(0), e(1)]);
        let b = Subspace::span(3, &[e(1), e(2)]);
        assert_eq!(
            subspace_calc(&a, &b, SubspaceOp::Intersection).unwrap(),
            SubspaceValue::Space(Subspace::span(3, &[e(1)]))
        );
        assert_eq!(
            subspace_calc(&line, &line, SubspaceOp::Sum).unwrap(),
            SubspaceValue::Space(line.clone())
        );
        assert!(matches!(
            subspace_calc(&line, &full, SubspaceOp::QuotientDim),
            Err(Error::Containment(_))
        ));
        assert_eq!(
            subspace_calc(&full, &line, SubspaceOp::Contains).unwrap(),
            SubspaceValue::Bool(true)
        );
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("+1").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(format_rational(&qf(-2, 4)), "-1/2");
        assert_eq!(format_rational(&q(7)), "7");
    }

    #[test]
    fn reducer_agrees_with_dense() {
        let m = Matrix::from_i64(&[&[0, 2, 4, 0], &[1, 0, 1, 1], &[1, 2, 5, 1], &[0, 0, 0, 3]]);
        let mut red = RowReducer::new(4);
        for r in 0..4 {
            red.push(&sparse_from_dense(m.row(r)));
        }
        assert_eq!(red.kernel(), kernel_basis(&m));
        assert_eq!(red.row_space(), Subspace::span(4, &m.row_vectors()));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..4), r * c)
                .prop_map(move |v| Matrix::from_entries(r, c, v.into_iter().map(|(n, d)| qf(n, d)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let (r1, p1) = rref(&m);
            let (r2, p2) = rref(&r1);
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for v in k.basis_vectors() {
                prop_assert!(is_zero_vec(&m.mul_vec(&v)));
            }
        }

        #[test]
        fn solutions_are_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 4)) {
            let x: Vec<Rational> = (0..m.cols()).map(|i| q(seed[i % seed.len()])).collect();
            let rhs = m.mul_vec(&x);
            let sol = solve_linear(&m, &rhs).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), rhs);
        }

        #[test]
        fn sparse_reducer_matches_rref(m in small_matrix()) {
            let mut red = RowReducer::new(m.cols());
            for r in 0..m.rows() {
                red.push(&sparse_from_dense(m.row(r)));
            }
            prop_assert_eq!(red.kernel(), kernel_basis(&m));
        }
    }
}

/// A null space whose basis vector `i` is `1` at free column `free[i]` and
/// `0` at every other free column, so coordinates are read off the free
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseKernel {
    ambient_dim: usize,
    free: Vec<usize>,
    basis: Vec<SparseVec>,
}

impl SparseKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|b| dense_from_sparse(self.ambient_dim, b))
            .collect()
    }

    pub fn from_coordinates(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim(), "kernel coordinate length");
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in b {
                v[*i] += c * x;
            }
        }
        v
    }

    /// Coordinates of a vector assumed to lie in the kernel.
    pub fn coordinates_unchecked(&self, v: &[Rational]) -> Vec<Rational> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

/// Coefficients `y` with `Σ y_j v_j = target`, if any, by sparse elimination
/// on the vectors tagged with their index.
pub fn solve_sparse(vectors: &[SparseVec], dim: usize, target: &[(usize, Rational)]) -> Option<Vec<Rational>> {
    let r = vectors.len();
    let mut red = RowReducer::new(dim + r);
    for (j, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.push((dim + j, Rational::one()));
        red.push(&row);
    }
    let residue = red.reduce_sparse(target);
    if residue.iter().any(|(c, _)| *c < dim) {
        return None;
    }
    let mut y = vec![Rational::zero(); r];
    for (c, v) in residue {
        y[c - dim] = -v;
    }
    Some(y)
}
