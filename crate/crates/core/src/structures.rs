//! Structure-constant descriptions of algebras, coalgebras, Hopf algebras,
//! (co)actions and stable anti-Yetter-Drinfeld modules, with an exhaustive
//! axiom verifier.
//!
//! Every axiom is a multilinear identity, so it is checked on basis tuples
//! only. Reports list every axiom family in a fixed order; a failing family
//! carries the first basis tuple (by flat order) that violates it.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{dense_from_sparse, normalize_sparse, solve_linear, Matrix, Rational, SparseVec};
use crate::multilin::{lc_add, tensor_spaces, Lc, LinMap, Radix, Space, TensorElement};

/// Outcome of one axiom family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    /// Which component the axiom belongs to (`hopf`, `carrier`, …); empty for
    /// stand-alone structures.
    pub scope: String,
    pub name: String,
    pub passed: bool,
    /// Basis labels of the first violating tuple.
    pub witness: Option<Vec<String>>,
}

/// Exhaustive list of axiom checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && !c.passed)
    }

    /// The check with this name, preferring a failing one when the name
    /// occurs in several scopes.
    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        let mut matching = self.checks.iter().filter(|c| c.name == name);
        let first = matching.clone().next();
        matching.find(|c| !c.passed).or(first)
    }

    pub fn scoped(mut self, scope: &str) -> Self {
        for c in &mut self.checks {
            if c.scope.is_empty() {
                c.scope = scope.to_string();
            }
        }
        self
    }

    pub(crate) fn push(&mut self, name: &str, witness: Option<Vec<String>>) {
        self.checks.push(AxiomCheck {
            scope: String::new(),
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub(crate) fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let name = if c.scope.is_empty() {
                c.name.clone()
            } else {
                format!("{}: {}", c.scope, c.name)
            };
            match &c.witness {
                None => writeln!(f, "  pass  {}", name)?,
                Some(w) => writeln!(f, "  FAIL  {}  witness ({})", name, w.join(", "))?,
            }
        }
        Ok(())
    }
}

/// Anything that can be run through the axiom verifier.
pub trait Validate {
    fn validate(&self) -> ValidationReport;
}

fn first_failure<I, F>(tuples: I, mut ok: F) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> bool,
{
    tuples.into_iter().find(|t| !ok(t))
}

fn labels_of(spaces: &[&Space], idx: &[usize]) -> Vec<String> {
    idx.iter().zip(spaces).map(|(&i, s)| s.labels[i].clone()).collect()
}

fn lc_scaled<'a>(v: &'a [(usize, Rational)], s: &Rational) -> impl Iterator<Item = (usize, Rational)> + 'a {
    let s = s.clone();
    v.iter().map(move |(i, c)| (*i, c * &s))
}

fn check_shape(what: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::SpecFormat(format!(
            "{} has shape {}x{}, expected {}x{}",
            what,
            m.rows(),
            m.cols(),
            rows,
            cols
        )));
    }
    Ok(())
}

fn sparse_columns(m: &Matrix) -> Vec<SparseVec> {
    (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .filter(|&r| !m[(r, c)].is_zero())
                .map(|r| (r, m[(r, c)].clone()))
                .collect()
        })
        .collect()
}

/// Associative unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub space: Space,
    /// `A ⊗ A → A`.
    pub mult: LinMap,
    pub unit: Vec<Rational>,
    table: Vec<SparseVec>,
}

impl Algebra {
    pub fn new(space: Space, mult: Matrix, unit: Vec<Rational>) -> Result<Self> {
        let d = space.dim();
        check_shape("multiplication", &mult, d, d * d)?;
        if unit.len() != d {
            return Err(Error::SpecFormat(format!(
                "unit has length {}, expected {}",
                unit.len(),
                d
            )));
        }
        let table = sparse_columns(&mult);
        let mult = LinMap::new(tensor_spaces(&[&space, &space]), space.clone(), mult);
        Ok(Algebra {
            space,
            mult,
            unit,
            table,
        })
    }

    /// Builds from a product closure on basis pairs.
    pub fn from_fn(space: Space, unit: Vec<Rational>, f: impl Fn(usize, usize) -> SparseVec) -> Result<Self> {
        let d = space.dim();
        let mut m = Matrix::zeros(d, d * d);
        for i in 0..d {
            for j in 0..d {
                for (k, c) in f(i, j) {
                    m[(k, i * d + j)] += c;
                }
            }
        }
        Algebra::new(space, m, unit)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul_sparse(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                out.extend(lc_scaled(self.mul_basis(*i, *j), &ab));
            }
        }
        normalize_sparse(out)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let xs = crate::exactla::sparse_from_dense(x);
        let ys = crate::exactla::sparse_from_dense(y);
        dense_from_sparse(self.dim(), &self.mul_sparse(&xs, &ys))
    }

    pub fn unit_sparse(&self) -> SparseVec {
        crate::exactla::sparse_from_dense(&self.unit)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Relabels the basis: new basis element `k` is old element `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Algebra {
        let inv = crate::multilin::invert_permutation(perm);
        let space = Space::new(
            self.space.name.clone(),
            perm.iter().map(|&p| self.space.labels[p].clone()).collect(),
        );
        let unit = perm.iter().map(|&p| self.unit[p].clone()).collect();
        Algebra::from_fn(space, unit, |i, j| {
            self.mul_basis(perm[i], perm[j])
                .iter()
                .map(|(k, c)| (inv[*k], c.clone()))
                .collect()
        })
        .expect("permutation preserves shape")
    }

    /// The dual coalgebra `A*` (Δ is the transpose of the product).
    pub fn dual_coalgebra(&self) -> Coalgebra {
        let space = Space::new(
            format!("{}*", self.space.name),
            self.space.labels.iter().map(|l| format!("{}*", l)).collect(),
        );
        Coalgebra::new(space, self.mult.matrix.transpose(), self.unit.clone()).expect("square shapes")
    }
}

impl Validate for Algebra {
    fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let s = &self.space;
        let mut report = ValidationReport::default();
        let assoc = first_failure(Radix::power(d, 3).iter(), |t| {
            let ab = self.mul_basis(t[0], t[1]);
            let bc = self.mul_basis(t[1], t[2]);
            let lhs = self.mul_sparse(ab, &[(t[2], Rational::one())]);
            let rhs = self.mul_sparse(&[(t[0], Rational::one())], bc);
            lhs == rhs
        });
        report.push("associativity", assoc.map(|t| labels_of(&[s, s, s], &t)));
        let unit = self.unit_sparse();
        let unit_fail = first_failure(Radix::power(d, 1).iter(), |t| {
            let e = vec![(t[0], Rational::one())];
            self.mul_sparse(&unit, &e) == e && self.mul_sparse(&e, &unit) == e
        });
        report.push("unit", unit_fail.map(|t| labels_of(&[s], &t)));
        report
    }
}

/// Coassociative counital coalgebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub space: Space,
    /// `C → C ⊗ C`.
    pub comult: LinMap,
    pub counit: Vec<Rational>,
    table: Vec<Vec<(usize, usize, Rational)>>,
}

impl Coalgebra {
    pub fn new(space: Space, comult: Matrix, counit: Vec<Rational>) -> Result<Self> {
        let d = space.dim();
        check_shape("comultiplication", &comult, d * d, d)?;
        if counit.len() != d {
            return Err(Error::SpecFormat(format!(
                "counit has length {}, expected {}",
                counit.len(),
                d
            )));
        }
        let table = sparse_columns(&comult)
            .into_iter()
            .map(|col| col.into_iter().map(|(k, c)| (k / d, k % d, c)).collect())
            .collect();
        let comult = LinMap::new(space.clone(), tensor_spaces(&[&space, &space]), comult);
        Ok(Coalgebra {
            space,
            comult,
            counit,
            table,
        })
    }

    pub fn from_fn(
        space: Space,
        counit: Vec<Rational>,
        f: impl Fn(usize) -> Vec<(usize, usize, Rational)>,
    ) -> Result<Self> {
        let d = space.dim();
        let mut m = Matrix::zeros(d * d, d);
        for i in 0..d {
            for (a, b, c) in f(i) {
                m[(a * d + b, i)] += c;
            }
        }
        Coalgebra::new(space, m, counit)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, Rational)] {
        &self.table[i]
    }

    /// `Δ^n(e_i)` as a sparse combination of `(n+1)`-tuples; legs are split
    /// off the rightmost factor, which by coassociativity fixes no choice.
    pub fn iterated_basis(&self, i: usize, n: usize) -> Lc {
        let mut cur: Lc = Lc::new();
        cur.insert(vec![i], Rational::one());
        for _ in 0..n {
            let mut next = Lc::new();
            for (key, c) in &cur {
                let last = *key.last().unwrap();
                for (a, b, k) in self.comult_basis(last) {
                    let mut nk = key[..key.len() - 1].to_vec();
                    nk.push(*a);
                    nk.push(*b);
                    lc_add(&mut next, nk, c * k);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn counit_of(&self, v: &[(usize, Rational)]) -> Rational {
        v.iter()
            .fold(Rational::zero(), |acc, (i, c)| acc + c * &self.counit[*i])
    }

    pub fn permuted(&self, perm: &[usize]) -> Coalgebra {
        let inv = crate::multilin::invert_permutation(perm);
        let space = Space::new(
            self.space.name.clone(),
            perm.iter().map(|&p| self.space.labels[p].clone()).collect(),
        );
        let counit = perm.iter().map(|&p| self.counit[p].clone()).collect();
        Coalgebra::from_fn(space, counit, |i| {
            self.comult_basis(perm[i])
                .iter()
                .map(|(a, b, c)| (inv[*a], inv[*b], c.clone()))
                .collect()
        })
        .expect("permutation preserves shape")
    }

    /// The dual algebra `C*`: `(f g)(c) = f(c⁽¹⁾) g(c⁽²⁾)`, unit `ε`.
    pub fn dual_algebra(&self) -> Algebra {
        let space = Space::new(
            format!("{}*", self.space.name),
            self.space.labels.iter().map(|l| format!("{}*", l)).collect(),
        );
        Algebra::new(space, self.comult.matrix.transpose(), self.counit.clone()).expect("square shapes")
    }

    /// Convolution `(f ∗ g)(c) = f(c⁽¹⁾) g(c⁽²⁾)` of functionals.
    pub fn convolve(&self, f: &[Rational], g: &[Rational]) -> Vec<Rational> {
        (0..self.dim())
            .map(|c| {
                self.comult_basis(c)
                    .iter()
                    .fold(Rational::zero(), |acc, (a, b, k)| acc + k * &f[*a] * &g[*b])
            })
            .collect()
    }
}

impl Validate for Coalgebra {
    fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let s = &self.space;
        let mut report = ValidationReport::default();
        let coassoc = first_failure(Radix::power(d, 1).iter(), |t| {
            let mut lhs = Lc::new();
            let mut rhs = Lc::new();
            for (a, b, c) in self.comult_basis(t[0]) {
                for (a1, a2, k) in self.comult_basis(*a) {
                    lc_add(&mut lhs, vec![*a1, *a2, *b], c * k);
                }
                for (b1, b2, k) in self.comult_basis(*b) {
                    lc_add(&mut rhs, vec![*a, *b1, *b2], c * k);
                }
            }
            lhs == rhs
        });
        report.push("coassociativity", coassoc.map(|t| labels_of(&[s], &t)));
        let counit = first_failure(Radix::power(d, 1).iter(), |t| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (a, b, c) in self.comult_basis(t[0]) {
                left.push((*b, c * &self.counit[*a]));
                right.push((*a, c * &self.counit[*b]));
            }
            let e = vec![(t[0], Rational::one())];
            normalize_sparse(left) == e && normalize_sparse(right) == e
        });
        report.push("counit", counit.map(|t| labels_of(&[s], &t)));
        report
    }
}

/// Finite-dimensional Hopf algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hopf {
    pub algebra: Algebra,
    pub coalgebra: Coalgebra,
    pub antipode: LinMap,
    antipode_inv: Option<LinMap>,
}

impl Hopf {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra, antipode: Matrix) -> Result<Self> {
        if algebra.space != coalgebra.space {
            return Err(Error::SpecFormat(
                "algebra and coalgebra live on different spaces".into(),
            ));
        }
        let d = algebra.dim();
        check_shape("antipode", &antipode, d, d)?;
        let antipode_inv = antipode
            .inverse()
            .map(|m| LinMap::new(algebra.space.clone(), algebra.space.clone(), m));
        let antipode = LinMap::new(algebra.space.clone(), algebra.space.clone(), antipode);
        Ok(Hopf {
            algebra,
            coalgebra,
            antipode,
            antipode_inv,
        })
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial() -> Hopf {
        let space = Space::from_strs("k", &["1"]);
        let one = Rational::one();
        let algebra = Algebra::from_fn(space.clone(), vec![one.clone()], |_, _| vec![(0, Rational::one())]).unwrap();
        let coalgebra = Coalgebra::from_fn(space, vec![one], |_| vec![(0, 0, Rational::one())]).unwrap();
        Hopf::new(algebra, coalgebra, Matrix::identity(1)).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn space(&self) -> &Space {
        &self.algebra.space
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1
    }

    /// Index of the basis element equal to the unit, if the unit is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.dim()).filter(|&i| !self.algebra.unit[i].is_zero()).collect();
        (nz.len() == 1 && self.algebra.unit[nz[0]].is_one()).then(|| nz[0])
    }

    pub fn counit(&self) -> &[Rational] {
        &self.coalgebra.counit
    }

    /// Linear inverse of the antipode.
    pub fn antipode_inverse(&self) -> Result<&LinMap> {
        self.antipode_inv.as_ref().ok_or(Error::NonInvertibleAntipode)
    }

    pub fn antipode_basis(&self, i: usize) -> SparseVec {
        crate::exactla::sparse_from_dense(&self.antipode.matrix.column(i))
    }

    pub fn antipode_inv_basis(&self, i: usize) -> Result<SparseVec> {
        Ok(crate::exactla::sparse_from_dense(
            &self.antipode_inverse()?.matrix.column(i),
        ))
    }

    /// `Δ^n(h)` for an arbitrary element, as a tensor in `H^{⊗(n+1)}`.
    pub fn iterated_coproduct(&self, h: &[Rational], n: usize) -> TensorElement {
        let factors = vec![self.space().clone(); n + 1];
        let mut out = TensorElement::zero(factors);
        let radix = out.radix();
        for (i, c) in h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (key, k) in self.coalgebra.iterated_basis(i, n) {
                out.coords[radix.encode(&key)] += c * &k;
            }
        }
        out
    }

    pub fn permuted(&self, perm: &[usize]) -> Hopf {
        let inv = crate::multilin::invert_permutation(perm);
        let d = self.dim();
        let mut s = Matrix::zeros(d, d);
        for i in 0..d {
            for (k, c) in self.antipode_basis(perm[i]) {
                s[(inv[k], i)] = c;
            }
        }
        Hopf::new(self.algebra.permuted(perm), self.coalgebra.permuted(perm), s).unwrap()
    }
}

impl Validate for Hopf {
    fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let s = self.space();
        let mut report = self.algebra.validate();
        report.extend(self.coalgebra.validate());
        let alg = &self.algebra;
        let co = &self.coalgebra;

        let comult_mult = first_failure(Radix::power(d, 2).iter(), |t| {
            let mut lhs = Lc::new();
            for (k, c) in alg.mul_basis(t[0], t[1]) {
                for (a, b, x) in co.comult_basis(*k) {
                    lc_add(&mut lhs, vec![*a, *b], c * x);
                }
            }
            let mut rhs = Lc::new();
            for (a1, b1, x) in co.comult_basis(t[0]) {
                for (a2, b2, y) in co.comult_basis(t[1]) {
                    let xy = x * y;
                    for (p, u) in alg.mul_basis(*a1, *a2) {
                        for (r, v) in alg.mul_basis(*b1, *b2) {
                            lc_add(&mut rhs, vec![*p, *r], &xy * u * v);
                        }
                    }
                }
            }
            lhs == rhs
        });
        report.push("comult-multiplicative", comult_mult.map(|t| labels_of(&[s, s], &t)));

        let unit = alg.unit_sparse();
        let mut du = Lc::new();
        for (i, c) in &unit {
            for (a, b, x) in co.comult_basis(*i) {
                lc_add(&mut du, vec![*a, *b], c * x);
            }
        }
        let mut uu = Lc::new();
        for (i, c) in &unit {
            for (j, e) in &unit {
                lc_add(&mut uu, vec![*i, *j], c * e);
            }
        }
        report.push("comult-unit", (du != uu).then(|| vec!["1".to_string()]));

        let counit_mult = first_failure(Radix::power(d, 2).iter(), |t| {
            co.counit_of(alg.mul_basis(t[0], t[1])) == &co.counit[t[0]] * &co.counit[t[1]]
        });
        report.push("counit-multiplicative", counit_mult.map(|t| labels_of(&[s, s], &t)));
        report.push(
            "counit-unit",
            (!co.counit_of(&unit).is_one()).then(|| vec!["1".to_string()]),
        );

        let antipode_side = |left: bool| {
            first_failure(Radix::power(d, 1).iter(), |t| {
                let mut acc = Vec::new();
                for (a, b, x) in co.comult_basis(t[0]) {
                    let (sa, rest) = if left {
                        (self.antipode_basis(*a), vec![(*b, Rational::one())])
                    } else {
                        (vec![(*a, Rational::one())], self.antipode_basis(*b))
                    };
                    acc.extend(lc_scaled(&alg.mul_sparse(&sa, &rest), x).collect::<Vec<_>>());
                }
                let expected: SparseVec = lc_scaled(&unit, &co.counit[t[0]]).collect();
                normalize_sparse(acc) == normalize_sparse(expected)
            })
        };
        report.push("antipode-left", antipode_side(true).map(|t| labels_of(&[s], &t)));
        report.push("antipode-right", antipode_side(false).map(|t| labels_of(&[s], &t)));
        report.push(
            "antipode-invertible",
            self.antipode_inv.is_none().then(|| vec!["S".to_string()]),
        );
        report
    }
}

/// Left module structure `H ⊗ V → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub hopf: Arc<Hopf>,
    pub carrier: Space,
    pub act: LinMap,
    table: Vec<SparseVec>,
}

impl Action {
    pub fn new(hopf: Arc<Hopf>, carrier: Space, act: Matrix) -> Result<Self> {
        let (dh, dv) = (hopf.dim(), carrier.dim());
        check_shape("action", &act, dv, dh * dv)?;
        let table = sparse_columns(&act);
        let act = LinMap::new(tensor_spaces(&[hopf.space(), &carrier]), carrier.clone(), act);
        Ok(Action {
            hopf,
            carrier,
            act,
            table,
        })
    }

    pub fn from_fn(hopf: Arc<Hopf>, carrier: Space, f: impl Fn(usize, usize) -> SparseVec) -> Result<Self> {
        let (dh, dv) = (hopf.dim(), carrier.dim());
        let mut m = Matrix::zeros(dv, dh * dv);
        for h in 0..dh {
            for v in 0..dv {
                for (w, c) in f(h, v) {
                    m[(w, h * dv + v)] += c;
                }
            }
        }
        Action::new(hopf, carrier, m)
    }

    /// Action through a character: `h·v = δ(h) v`.
    pub fn by_character(hopf: Arc<Hopf>, carrier: Space, delta: &[Rational]) -> Result<Self> {
        if delta.len() != hopf.dim() {
            return Err(Error::SpecFormat("character length mismatch".into()));
        }
        let delta = delta.to_vec();
        Action::from_fn(hopf, carrier, move |h, v| vec![(v, delta[h].clone())])
    }

    pub fn trivial(hopf: Arc<Hopf>, carrier: Space) -> Self {
        let eps = hopf.counit().to_vec();
        Action::by_character(hopf, carrier, &eps).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn act_basis(&self, h: usize, v: usize) -> &SparseVec {
        &self.table[h * self.dim() + v]
    }

    pub fn act_sparse(&self, h: &[(usize, Rational)], v: &[(usize, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in h {
            for (j, b) in v {
                let ab = a * b;
                out.extend(lc_scaled(self.act_basis(*i, *j), &ab));
            }
        }
        normalize_sparse(out)
    }

    /// Matrix of `v ↦ h·v` for a basis element `h`.
    pub fn matrix_of(&self, h: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for v in 0..d {
            for (w, c) in self.act_basis(h, v) {
                m[(*w, v)] = c.clone();
            }
        }
        m
    }
}

impl Validate for Action {
    fn validate(&self) -> ValidationReport {
        let hs = self.hopf.space();
        let vs = &self.carrier;
        let alg = &self.hopf.algebra;
        let mut report = ValidationReport::default();
        let assoc = first_failure(Radix::new(vec![hs.dim(), hs.dim(), vs.dim()]).iter(), |t| {
            let lhs = self.act_sparse(alg.mul_basis(t[0], t[1]), &[(t[2], Rational::one())]);
            let rhs = self.act_sparse(&[(t[0], Rational::one())], self.act_basis(t[1], t[2]));
            lhs == rhs
        });
        report.push("module-associativity", assoc.map(|t| labels_of(&[hs, hs, vs], &t)));
        let unit = alg.unit_sparse();
        let unit_fail = first_failure(Radix::power(vs.dim(), 1).iter(), |t| {
            self.act_sparse(&unit, &[(t[0], Rational::one())]) == vec![(t[0], Rational::one())]
        });
        report.push("module-unit", unit_fail.map(|t| labels_of(&[vs], &t)));
        report
    }
}

/// Left comodule structure `V → H ⊗ V`, `v ↦ v⁽⁻¹⁾ ⊗ v⁽⁰⁾`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    pub hopf: Arc<Hopf>,
    pub carrier: Space,
    pub coact: LinMap,
    table: Vec<Vec<(usize, usize, Rational)>>,
}

impl Coaction {
    pub fn new(hopf: Arc<Hopf>, carrier: Space, coact: Matrix) -> Result<Self> {
        let (dh, dv) = (hopf.dim(), carrier.dim());
        check_shape("coaction", &coact, dh * dv, dv)?;
        let table = sparse_columns(&coact)
            .into_iter()
            .map(|col| col.into_iter().map(|(k, c)| (k / dv, k % dv, c)).collect())
            .collect();
        let coact = LinMap::new(carrier.clone(), tensor_spaces(&[hopf.space(), &carrier]), coact);
        Ok(Coaction {
            hopf,
            carrier,
            coact,
            table,
        })
    }

    pub fn from_fn(
        hopf: Arc<Hopf>,
        carrier: Space,
        f: impl Fn(usize) -> Vec<(usize, usize, Rational)>,
    ) -> Result<Self> {
        let (dh, dv) = (hopf.dim(), carrier.dim());
        let mut m = Matrix::zeros(dh * dv, dv);
        for v in 0..dv {
            for (h, w, c) in f(v) {
                m[(h * dv + w, v)] += c;
            }
        }
        Coaction::new(hopf, carrier, m)
    }

    /// Coaction through a group-like element: `v ↦ σ ⊗ v`.
    pub fn by_grouplike(hopf: Arc<Hopf>, carrier: Space, sigma: &[Rational]) -> Result<Self> {
        if sigma.len() != hopf.dim() {
            return Err(Error::SpecFormat("group-like length mismatch".into()));
        }
        let sigma = crate::exactla::sparse_from_dense(sigma);
        Coaction::from_fn(hopf, carrier, move |v| {
            sigma.iter().map(|(h, c)| (*h, v, c.clone())).collect()
        })
    }

    pub fn trivial(hopf: Arc<Hopf>, carrier: Space) -> Self {
        let unit = hopf.algebra.unit.clone();
        Coaction::by_grouplike(hopf, carrier, &unit).unwrap()
    }

    /// The regular coaction `Δ` of `H` on itself.
    pub fn regular(hopf: Arc<Hopf>) -> Self {
        let space = hopf.space().clone();
        let h2 = hopf.clone();
        Coaction::from_fn(hopf, space, move |v| h2.coalgebra.comult_basis(v).to_vec()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn coact_basis(&self, v: usize) -> &[(usize, usize, Rational)] {
        &self.table[v]
    }
}

impl Validate for Coaction {
    fn validate(&self) -> ValidationReport {
        let vs = &self.carrier;
        let co = &self.hopf.coalgebra;
        let mut report = ValidationReport::default();
        let coassoc = first_failure(Radix::power(vs.dim(), 1).iter(), |t| {
            let mut lhs = Lc::new();
            let mut rhs = Lc::new();
            for (h, w, c) in self.coact_basis(t[0]) {
                for (a, b, x) in co.comult_basis(*h) {
                    lc_add(&mut lhs, vec![*a, *b, *w], c * x);
                }
                for (h2, w2, y) in self.coact_basis(*w) {
                    lc_add(&mut rhs, vec![*h, *h2, *w2], c * y);
                }
            }
            lhs == rhs
        });
        report.push("comodule-coassociativity", coassoc.map(|t| labels_of(&[vs], &t)));
        let counit = first_failure(Radix::power(vs.dim(), 1).iter(), |t| {
            let v: SparseVec = self
                .coact_basis(t[0])
                .iter()
                .map(|(h, w, c)| (*w, c * &co.counit[*h]))
                .collect();
            normalize_sparse(v) == vec![(t[0], Rational::one())]
        });
        report.push("comodule-counit", counit.map(|t| labels_of(&[vs], &t)));
        report
    }
}

/// Left-left stable anti-Yetter-Drinfeld module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sayd {
    pub action: Action,
    pub coaction: Coaction,
}

impl Sayd {
    pub fn new(action: Action, coaction: Coaction) -> Result<Self> {
        if action.carrier != coaction.carrier {
            return Err(Error::SpecFormat(
                "SAYD action and coaction act on different spaces".into(),
            ));
        }
        if action.hopf != coaction.hopf {
            return Err(Error::SpecFormat(
                "SAYD action and coaction use different Hopf algebras".into(),
            ));
        }
        Ok(Sayd { action, coaction })
    }

    /// The trivial coefficients `k` (counit action, unit coaction).
    pub fn trivial(hopf: Arc<Hopf>) -> Self {
        let space = Space::from_strs("M", &["m"]);
        Sayd {
            action: Action::trivial(hopf.clone(), space.clone()),
            coaction: Coaction::trivial(hopf, space),
        }
    }

    pub fn hopf(&self) -> &Arc<Hopf> {
        &self.action.hopf
    }

    pub fn space(&self) -> &Space {
        &self.action.carrier
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// Sparse `(h, m', c)` terms of `ρ(m)`.
    pub fn coact_basis(&self, m: usize) -> &[(usize, usize, Rational)] {
        self.coaction.coact_basis(m)
    }
}

impl Validate for Sayd {
    fn validate(&self) -> ValidationReport {
        let mut report = self.action.validate();
        report.extend(self.coaction.validate());
        let hopf = self.hopf();
        let hs = hopf.space();
        let ms = self.space();
        let alg = &hopf.algebra;
        let Ok(sinv) = hopf.antipode_inverse() else {
            report.push("ayd", Some(vec!["S not invertible".to_string()]));
            report.push("stability", None);
            return report;
        };
        let sinv_cols: Vec<SparseVec> = (0..hopf.dim())
            .map(|i| crate::exactla::sparse_from_dense(&sinv.matrix.column(i)))
            .collect();
        let ayd = first_failure(Radix::new(vec![hs.dim(), ms.dim()]).iter(), |t| {
            let (h, m) = (t[0], t[1]);
            // ρ(h·m)
            let mut lhs = Lc::new();
            for (w, c) in self.action.act_basis(h, m) {
                for (k, w2, x) in self.coact_basis(*w) {
                    lc_add(&mut lhs, vec![*k, *w2], c * x);
                }
            }
            // h⁽¹⁾ m⁽⁻¹⁾ S⁻¹(h⁽³⁾) ⊗ h⁽²⁾ m⁽⁰⁾
            let mut rhs = Lc::new();
            for (key, c) in hopf.coalgebra.iterated_basis(h, 2) {
                for (mh, m0, x) in self.coact_basis(m) {
                    let left = alg.mul_sparse(
                        &alg.mul_sparse(&[(key[0], Rational::one())], &[(*mh, Rational::one())]),
                        &sinv_cols[key[2]],
                    );
                    let right = self.action.act_basis(key[1], *m0);
                    for (a, u) in &left {
                        for (b, v) in right {
                            lc_add(&mut rhs, vec![*a, *b], &c * x * u * v);
                        }
                    }
                }
            }
            lhs == rhs
        });
        report.push("ayd", ayd.map(|t| labels_of(&[hs, ms], &t)));
        let stability = first_failure(Radix::power(ms.dim(), 1).iter(), |t| {
            let mut acc = Vec::new();
            for (h, w, c) in self.coact_basis(t[0]) {
                acc.extend(lc_scaled(self.action.act_basis(*h, *w), c).collect::<Vec<_>>());
            }
            normalize_sparse(acc) == vec![(t[0], Rational::one())]
        });
        report.push("stability", stability.map(|t| labels_of(&[ms], &t)));
        report
    }
}

/// A character `δ` together with a group-like `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPair {
    pub hopf: Arc<Hopf>,
    pub delta: Vec<Rational>,
    pub sigma: Vec<Rational>,
}

impl ModularPair {
    /// The one-dimensional module `^σk_δ`.
    pub fn to_sayd(&self) -> Result<Sayd> {
        let space = Space::from_strs("M", &["m"]);
        Sayd::new(
            Action::by_character(self.hopf.clone(), space.clone(), &self.delta)?,
            Coaction::by_grouplike(self.hopf.clone(), space, &self.sigma)?,
        )
    }
}

impl Validate for ModularPair {
    fn validate(&self) -> ValidationReport {
        match self.to_sayd() {
            Ok(m) => m.validate(),
            Err(e) => {
                let mut r = ValidationReport::default();
                r.push("spec-format", Some(vec![e.to_string()]));
                r
            }
        }
    }
}

/// The three symmetry types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Module algebra.
    A,
    /// Comodule algebra.
    B,
    /// Module coalgebra.
    C,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symmetry {
    ModuleAlgebra { algebra: Algebra, action: Action },
    ComoduleAlgebra { algebra: Algebra, coaction: Coaction },
    ModuleCoalgebra { coalgebra: Coalgebra, action: Action },
}

/// A carrier with its Hopf symmetry and SAYD coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryBundle {
    pub name: String,
    pub hopf: Arc<Hopf>,
    pub symmetry: Symmetry,
    pub coeffs: Sayd,
}

impl SymmetryBundle {
    pub fn new(name: impl Into<String>, symmetry: Symmetry, coeffs: Sayd) -> Result<Self> {
        let hopf = coeffs.hopf().clone();
        let structure_hopf = match &symmetry {
            Symmetry::ModuleAlgebra { action, .. } | Symmetry::ModuleCoalgebra { action, .. } => &action.hopf,
            Symmetry::ComoduleAlgebra { coaction, .. } => &coaction.hopf,
        };
        if *structure_hopf != hopf {
            return Err(Error::SpecFormat(
                "bundle symmetry and coefficients use different Hopf algebras".into(),
            ));
        }
        match &symmetry {
            Symmetry::ModuleAlgebra { algebra, action } if algebra.space != action.carrier => {
                return Err(Error::SpecFormat("action carrier differs from the algebra".into()))
            }
            Symmetry::ComoduleAlgebra { algebra, coaction } if algebra.space != coaction.carrier => {
                return Err(Error::SpecFormat("coaction carrier differs from the algebra".into()))
            }
            Symmetry::ModuleCoalgebra { coalgebra, action } if coalgebra.space != action.carrier => {
                return Err(Error::SpecFormat("action carrier differs from the coalgebra".into()))
            }
            _ => {}
        }
        Ok(SymmetryBundle {
            name: name.into(),
            hopf,
            symmetry,
            coeffs,
        })
    }

    /// An algebra with no symmetry: kind A over the trivial Hopf algebra
    /// with trivial coefficients, whose complex is the ordinary one.
    pub fn ordinary(name: impl Into<String>, algebra: Algebra) -> Self {
        let hopf = Arc::new(Hopf::trivial());
        let action = Action::trivial(hopf.clone(), algebra.space.clone());
        SymmetryBundle::new(name, Symmetry::ModuleAlgebra { algebra, action }, Sayd::trivial(hopf)).unwrap()
    }

    /// An algebra as a trivial comodule algebra over the trivial Hopf algebra.
    pub fn ordinary_comodule(name: impl Into<String>, algebra: Algebra) -> Self {
        let hopf = Arc::new(Hopf::trivial());
        let coaction = Coaction::trivial(hopf.clone(), algebra.space.clone());
        SymmetryBundle::new(
            name,
            Symmetry::ComoduleAlgebra { algebra, coaction },
            Sayd::trivial(hopf),
        )
        .unwrap()
    }

    pub fn kind(&self) -> Kind {
        match self.symmetry {
            Symmetry::ModuleAlgebra { .. } => Kind::A,
            Symmetry::ComoduleAlgebra { .. } => Kind::B,
            Symmetry::ModuleCoalgebra { .. } => Kind::C,
        }
    }

    /// Dimension of the algebra or coalgebra.
    pub fn carrier_dim(&self) -> usize {
        self.carrier_space().dim()
    }

    pub fn carrier_space(&self) -> &Space {
        match &self.symmetry {
            Symmetry::ModuleAlgebra { algebra, .. } | Symmetry::ComoduleAlgebra { algebra, .. } => &algebra.space,
            Symmetry::ModuleCoalgebra { coalgebra, .. } => &coalgebra.space,
        }
    }

    pub fn algebra(&self) -> Option<&Algebra> {
        match &self.symmetry {
            Symmetry::ModuleAlgebra { algebra, .. } | Symmetry::ComoduleAlgebra { algebra, .. } => Some(algebra),
            Symmetry::ModuleCoalgebra { .. } => None,
        }
    }

    pub fn coalgebra(&self) -> Option<&Coalgebra> {
        match &self.symmetry {
            Symmetry::ModuleCoalgebra { coalgebra, .. } => Some(coalgebra),
            _ => None,
        }
    }

    pub fn action(&self) -> Option<&Action> {
        match &self.symmetry {
            Symmetry::ModuleAlgebra { action, .. } | Symmetry::ModuleCoalgebra { action, .. } => Some(action),
            Symmetry::ComoduleAlgebra { .. } => None,
        }
    }

    pub fn coaction(&self) -> Option<&Coaction> {
        match &self.symmetry {
            Symmetry::ComoduleAlgebra { coaction, .. } => Some(coaction),
            _ => None,
        }
    }

    /// Same bundle with the carrier basis relabelled (`new k = old perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> SymmetryBundle {
        let inv = crate::multilin::invert_permutation(perm);
        let hopf = self.hopf.clone();
        let space = {
            let s = self.carrier_space();
            Space::new(s.name.clone(), perm.iter().map(|&p| s.labels[p].clone()).collect())
        };
        let symmetry = match &self.symmetry {
            Symmetry::ModuleAlgebra { algebra, action } => Symmetry::ModuleAlgebra {
                algebra: algebra.permuted(perm),
                action: Action::from_fn(hopf, space, |h, v| {
                    action
                        .act_basis(h, perm[v])
                        .iter()
                        .map(|(w, c)| (inv[*w], c.clone()))
                        .collect()
                })
                .unwrap(),
            },
            Symmetry::ComoduleAlgebra { algebra, coaction } => Symmetry::ComoduleAlgebra {
                algebra: algebra.permuted(perm),
                coaction: Coaction::from_fn(hopf, space, |v| {
                    coaction
                        .coact_basis(perm[v])
                        .iter()
                        .map(|(h, w, c)| (*h, inv[*w], c.clone()))
                        .collect()
                })
                .unwrap(),
            },
            Symmetry::ModuleCoalgebra { coalgebra, action } => Symmetry::ModuleCoalgebra {
                coalgebra: coalgebra.permuted(perm),
                action: Action::from_fn(hopf, space, |h, v| {
                    action
                        .act_basis(h, perm[v])
                        .iter()
                        .map(|(w, c)| (inv[*w], c.clone()))
                        .collect()
                })
                .unwrap(),
            },
        };
        SymmetryBundle::new(self.name.clone(), symmetry, self.coeffs.clone()).unwrap()
    }
}

fn module_algebra_checks(algebra: &Algebra, action: &Action, report: &mut ValidationReport) {
    let hopf = &action.hopf;
    let (hs, s) = (hopf.space(), &algebra.space);
    let mult = first_failure(Radix::new(vec![hs.dim(), s.dim(), s.dim()]).iter(), |t| {
        let lhs = action.act_sparse(&[(t[0], Rational::one())], algebra.mul_basis(t[1], t[2]));
        let mut rhs = Vec::new();
        for (h1, h2, c) in hopf.coalgebra.comult_basis(t[0]) {
            let p = algebra.mul_sparse(action.act_basis(*h1, t[1]), action.act_basis(*h2, t[2]));
            rhs.extend(lc_scaled(&p, c).collect::<Vec<_>>());
        }
        lhs == normalize_sparse(rhs)
    });
    report.push(
        "module-algebra-multiplicativity",
        mult.map(|t| labels_of(&[hs, s, s], &t)),
    );
    let unit = algebra.unit_sparse();
    let unit_fail = first_failure(Radix::power(hs.dim(), 1).iter(), |t| {
        action.act_sparse(&[(t[0], Rational::one())], &unit)
            == normalize_sparse(lc_scaled(&unit, &hopf.counit()[t[0]]).collect())
    });
    report.push("module-algebra-unit", unit_fail.map(|t| labels_of(&[hs], &t)));
}

fn comodule_algebra_checks(algebra: &Algebra, coaction: &Coaction, report: &mut ValidationReport) {
    let hopf = &coaction.hopf;
    let halg = &hopf.algebra;
    let s = &algebra.space;
    let mult = first_failure(Radix::power(s.dim(), 2).iter(), |t| {
        let mut lhs = Lc::new();
        for (k, c) in algebra.mul_basis(t[0], t[1]) {
            for (h, w, x) in coaction.coact_basis(*k) {
                lc_add(&mut lhs, vec![*h, *w], c * x);
            }
        }
        let mut rhs = Lc::new();
        for (h1, w1, x) in coaction.coact_basis(t[0]) {
            for (h2, w2, y) in coaction.coact_basis(t[1]) {
                for (h, u) in halg.mul_basis(*h1, *h2) {
                    for (w, v) in algebra.mul_basis(*w1, *w2) {
                        lc_add(&mut rhs, vec![*h, *w], x * y * u * v);
                    }
                }
            }
        }
        lhs == rhs
    });
    report.push(
        "comodule-algebra-multiplicativity",
        mult.map(|t| labels_of(&[s, s], &t)),
    );
    let mut lhs = Lc::new();
    for (i, c) in algebra.unit_sparse() {
        for (h, w, x) in coaction.coact_basis(i) {
            lc_add(&mut lhs, vec![*h, *w], &c * x);
        }
    }
    let mut rhs = Lc::new();
    for (h, c) in halg.unit_sparse() {
        for (w, d) in algebra.unit_sparse() {
            lc_add(&mut rhs, vec![h, w], &c * &d);
        }
    }
    report.push("comodule-algebra-unit", (lhs != rhs).then(|| vec!["1".to_string()]));
}

fn module_coalgebra_checks(coalgebra: &Coalgebra, action: &Action, report: &mut ValidationReport) {
    let hopf = &action.hopf;
    let (hs, s) = (hopf.space(), &coalgebra.space);
    let comult = first_failure(Radix::new(vec![hs.dim(), s.dim()]).iter(), |t| {
        let mut lhs = Lc::new();
        for (w, c) in action.act_basis(t[0], t[1]) {
            for (a, b, x) in coalgebra.comult_basis(*w) {
                lc_add(&mut lhs, vec![*a, *b], c * x);
            }
        }
        let mut rhs = Lc::new();
        for (h1, h2, c) in hopf.coalgebra.comult_basis(t[0]) {
            for (a, b, x) in coalgebra.comult_basis(t[1]) {
                for (p, u) in action.act_basis(*h1, *a) {
                    for (r, v) in action.act_basis(*h2, *b) {
                        lc_add(&mut rhs, vec![*p, *r], c * x * u * v);
                    }
                }
            }
        }
        lhs == rhs
    });
    report.push("module-coalgebra-comult", comult.map(|t| labels_of(&[hs, s], &t)));
    let counit = first_failure(Radix::new(vec![hs.dim(), s.dim()]).iter(), |t| {
        coalgebra.counit_of(action.act_basis(t[0], t[1])) == &hopf.counit()[t[0]] * &coalgebra.counit[t[1]]
    });
    report.push("module-coalgebra-counit", counit.map(|t| labels_of(&[hs, s], &t)));
}

impl Validate for SymmetryBundle {
    fn validate(&self) -> ValidationReport {
        let mut report = self.hopf.validate().scoped("hopf");
        let mut carrier = ValidationReport::default();
        match &self.symmetry {
            Symmetry::ModuleAlgebra { algebra, action } => {
                carrier.extend(algebra.validate());
                carrier.extend(action.validate());
                module_algebra_checks(algebra, action, &mut carrier);
            }
            Symmetry::ComoduleAlgebra { algebra, coaction } => {
                carrier.extend(algebra.validate());
                carrier.extend(coaction.validate());
                comodule_algebra_checks(algebra, coaction, &mut carrier);
            }
            Symmetry::ModuleCoalgebra { coalgebra, action } => {
                carrier.extend(coalgebra.validate());
                carrier.extend(action.validate());
                module_coalgebra_checks(coalgebra, action, &mut carrier);
            }
        }
        report.extend(carrier.scoped("carrier"));
        report.extend(self.coeffs.validate().scoped("coefficients"));
        report
    }
}

/// Two-sided convolution inverse of a functional on a coalgebra.
pub fn convolution_inverse(coalgebra: &Coalgebra, f: &[Rational]) -> Result<Vec<Rational>> {
    let d = coalgebra.dim();
    // (f ∗ g)(c) = Σ f(c1) g(c2) is linear in g.
    let mut m = Matrix::zeros(d, d);
    for c in 0..d {
        for (a, b, k) in coalgebra.comult_basis(c) {
            m[(c, *b)] += k * &f[*a];
        }
    }
    let g = solve_linear(&m, &coalgebra.counit)
        .ok_or_else(|| Error::ConvolutionNonInvertible("f ∗ g = ε has no solution".into()))?;
    if coalgebra.convolve(&g, f) != coalgebra.counit {
        return Err(Error::ConvolutionNonInvertible(
            "right inverse is not a left inverse".into(),
        ));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn kz2() -> Hopf {
        let space = Space::from_strs("kZ2", &["1", "g"]);
        let alg = Algebra::from_fn(space.clone(), vec![q(1), q(0)], |i, j| vec![((i + j) % 2, q(1))]).unwrap();
        let co = Coalgebra::from_fn(space, vec![q(1), q(1)], |i| vec![(i, i, q(1))]).unwrap();
        Hopf::new(alg, co, Matrix::identity(2)).unwrap()
    }

    #[test]
    fn group_algebra_is_hopf() {
        let r = kz2().validate();
        assert!(r.passed(), "{}", r);
        assert_eq!(r.checks.len(), 11);
    }

    #[test]
    fn broken_coassociativity_is_reported_with_witness() {
        let h = kz2();
        let mut m = h.coalgebra.comult.matrix.clone();
        // Δ(g) = g⊗g + 1⊗g
        m[(1, 1)] = q(1);
        let co = Coalgebra::new(h.space().clone(), m, vec![q(1), q(1)]).unwrap();
        let r = co.validate();
        assert!(r.failed("coassociativity"));
        assert_eq!(r.get("coassociativity").unwrap().witness, Some(vec!["g".to_string()]));
    }

    #[test]
    fn shape_errors_are_spec_format() {
        let space = Space::from_strs("V", &["a", "b"]);
        let e = Algebra::new(space, Matrix::zeros(2, 3), vec![q(1), q(0)]).unwrap_err();
        assert!(matches!(e, Error::SpecFormat(_)));
    }

    #[test]
    fn singular_antipode_is_flagged() {
        let h = kz2();
        let hb = Hopf::new(h.algebra.clone(), h.coalgebra.clone(), Matrix::zeros(2, 2)).unwrap();
        assert_eq!(hb.antipode_inverse().unwrap_err(), Error::NonInvertibleAntipode);
        assert!(hb.validate().failed("antipode-invertible"));
    }

    #[test]
    fn iterated_coproduct_of_grouplike() {
        let h = kz2();
        let t = h.iterated_coproduct(&[q(0), q(1)], 2);
        let mut expect = vec![q(0); 8];
        expect[7] = q(1);
        assert_eq!(t.coords, expect);
    }

    #[test]
    fn modular_pair_sayd() {
        let h = Arc::new(kz2());
        let mp = ModularPair {
            hopf: h,
            delta: vec![q(1), q(1)],
            sigma: vec![q(0), q(1)],
        };
        assert!(mp.validate().passed());
    }

    #[test]
    fn sign_action_with_grouplike_coaction_is_unstable() {
        let h = Arc::new(kz2());
        let mp = ModularPair {
            hopf: h,
            delta: vec![q(1), q(-1)],
            sigma: vec![q(0), q(1)],
        };
        let r = mp.validate();
        assert!(r.failed("stability"));
        assert!(!r.failed("ayd"));
    }

    #[test]
    fn convolution_inverse_of_character() {
        let h = kz2();
        let f = vec![q(1), q(-1)];
        assert_eq!(convolution_inverse(&h.coalgebra, &f).unwrap(), f);
        let zero = vec![q(0), q(0)];
        assert!(matches!(
            convolution_inverse(&h.coalgebra, &zero),
            Err(Error::ConvolutionNonInvertible(_))
        ));
    }
}
