//! Finite-dimensional spaces with labeled bases, tensor products and
//! multilinear bookkeeping.
//!
//! Multi-index convention used everywhere in the crate: a basis tensor
//! `e_{i_0} ⊗ … ⊗ e_{i_k}` has flat index computed in mixed radix with the
//! leftmost factor varying slowest (row-major).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactla::{sign, Matrix, Rational};

/// Mixed-radix encoder/decoder for tensor basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radix {
    dims: Vec<usize>,
}

impl Radix {
    pub fn new(dims: Vec<usize>) -> Self {
        Radix { dims }
    }

    /// `k` copies of a `d`-dimensional factor.
    pub fn power(d: usize, k: usize) -> Self {
        Radix { dims: vec![d; k] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    /// Iterates all multi-indices in flat order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(move |i| self.decode(i))
    }
}

/// A space with a named basis; optionally graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub name: String,
    pub labels: Vec<String>,
    pub grade: Option<i64>,
}

impl Space {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Self {
        let s = Space {
            name: name.into(),
            labels,
            grade: None,
        };
        debug_assert!(s.labels_unique(), "duplicate basis labels in {}", s.name);
        s
    }

    pub fn from_strs(name: &str, labels: &[&str]) -> Self {
        Space::new(name, labels.iter().map(|s| s.to_string()).collect())
    }

    /// Basis `e0, e1, …`.
    pub fn numbered(name: &str, dim: usize) -> Self {
        Space::new(name, (0..dim).map(|i| format!("e{}", i)).collect())
    }

    pub fn graded(mut self, grade: i64) -> Self {
        self.grade = Some(grade);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels_unique(&self) -> bool {
        let mut sorted: Vec<&String> = self.labels.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Tensor product of spaces: dims multiply, labels join with `⊗`, grades add.
pub fn tensor_spaces(spaces: &[&Space]) -> Space {
    let radix = Radix::new(spaces.iter().map(|s| s.dim()).collect());
    let labels = radix
        .iter()
        .map(|idx| {
            idx.iter()
                .zip(spaces)
                .map(|(&i, s)| s.labels[i].as_str())
                .collect::<Vec<_>>()
                .join("⊗")
        })
        .collect();
    let name = spaces.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join("⊗");
    let grade = spaces
        .iter()
        .map(|s| s.grade)
        .try_fold(0i64, |acc, g| g.map(|g| acc + g));
    Space { name, labels, grade }
}

/// Linear map between spaces, stored as a `target_dim × source_dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub source: Space,
    pub target: Space,
    pub matrix: Matrix,
}

impl LinMap {
    pub fn new(source: Space, target: Space, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), target.dim(), "target dimension mismatch");
        assert_eq!(matrix.cols(), source.dim(), "source dimension mismatch");
        LinMap { source, target, matrix }
    }

    pub fn identity(space: &Space) -> Self {
        LinMap::new(space.clone(), space.clone(), Matrix::identity(space.dim()))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        LinMap::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &LinMap) -> LinMap {
        LinMap::new(
            tensor_spaces(&[&self.source, &other.source]),
            tensor_spaces(&[&self.target, &other.target]),
            self.matrix.kron(&other.matrix),
        )
    }
}

/// Tensor product of several maps.
pub fn tensor_maps(maps: &[&LinMap]) -> LinMap {
    let (first, rest) = maps.split_first().expect("at least one map");
    rest.iter().fold((*first).clone(), |acc, m| acc.tensor(m))
}

/// An element of `V_0 ⊗ … ⊗ V_k` in flat coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub factors: Vec<Space>,
    pub coords: Vec<Rational>,
}

impl TensorElement {
    pub fn zero(factors: Vec<Space>) -> Self {
        let n = factors.iter().map(Space::dim).product();
        TensorElement {
            factors,
            coords: vec![Rational::zero(); n],
        }
    }

    pub fn basis(factors: Vec<Space>, idx: &[usize]) -> Self {
        let mut t = TensorElement::zero(factors);
        let flat = t.radix().encode(idx);
        t.coords[flat] = Rational::from_integer(1.into());
        t
    }

    pub fn radix(&self) -> Radix {
        Radix::new(self.factors.iter().map(Space::dim).collect())
    }

    /// Reorders legs so that new leg `k` is old leg `perm[k]`. With `graded`
    /// set, each transposition of legs of grades `p`, `q` contributes
    /// `(-1)^{pq}`.
    pub fn permute_legs(&self, perm: &[usize], graded: bool) -> TensorElement {
        assert_eq!(perm.len(), self.factors.len(), "permutation length mismatch");
        let grades: Vec<i64> = if graded {
            self.factors
                .iter()
                .map(|s| s.grade.expect("graded permutation needs graded factors"))
                .collect()
        } else {
            vec![0; self.factors.len()]
        };
        // Koszul sign: one factor for each inverted pair.
        let mut odd = 0usize;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    odd += (grades[perm[a]] * grades[perm[b]]).rem_euclid(2) as usize;
                }
            }
        }
        let s = sign(odd);
        let factors: Vec<Space> = perm.iter().map(|&p| self.factors[p].clone()).collect();
        let mut out = TensorElement::zero(factors);
        let old = self.radix();
        let new = out.radix();
        for (flat, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = old.decode(flat);
            let nidx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.coords[new.encode(&nidx)] = c * &s;
        }
        out
    }
}

/// Inverse of a permutation given as a sequence.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Turns a functional on `V ⊗ W` (coordinates indexed by `v*dim W + w`)
/// into the map `V → W*` whose matrix has `(curry f)(e_v)(e_w)` at `(w, v)`.
pub fn curry(v: &Space, w: &Space, f: &[Rational]) -> LinMap {
    assert_eq!(f.len(), v.dim() * w.dim());
    let dual = Space::new(
        format!("{}*", w.name),
        w.labels.iter().map(|l| format!("{}*", l)).collect(),
    );
    let mut m = Matrix::zeros(w.dim(), v.dim());
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            m[(j, i)] = f[i * w.dim() + j].clone();
        }
    }
    LinMap::new(v.clone(), dual, m)
}

/// Inverse of [`curry`].
pub fn uncurry(map: &LinMap) -> Vec<Rational> {
    let (dv, dw) = (map.source.dim(), map.target.dim());
    let mut f = vec![Rational::zero(); dv * dw];
    for i in 0..dv {
        for j in 0..dw {
            f[i * dw + j] = map.matrix[(j, i)].clone();
        }
    }
    f
}

/// Sparse linear combination of basis multi-indices.
pub type Lc = BTreeMap<Vec<usize>, Rational>;

/// Adds `coeff · key` to `lc`, dropping entries that cancel.
pub fn lc_add(lc: &mut Lc, key: Vec<usize>, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match lc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Flattens a multi-index combination into dense coordinates.
pub fn lc_to_dense(lc: &Lc, radix: &Radix) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); radix.size()];
    for (k, c) in lc {
        out[radix.encode(k)] += c;
    }
    out
}
