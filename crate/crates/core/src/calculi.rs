//! Degree-truncated universal differential calculi and the two derived DG
//! algebras (twisted smash product and convolution algebra).
//!
//! Basis elements of `Ω^n A = Ã ⊗ A^{⊗n}` are tuples `(a_0, a_1, …, a_n)`
//! read as `a_0 da_1 ⋯ da_n`; slot 0 may hold the adjoined unit `1̃`, stored as
//! index `dim A`. Elements are sparse combinations of tuples ([`Lc`]), so the
//! tuple length carries the degree.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{normalize_sparse, sign, Limits, Rational, SparseVec};
use crate::multilin::{lc_add, Lc, Radix};
use crate::structures::{Action, Algebra, Coaction, Coalgebra, ValidationReport};

fn lc_scale_into(out: &mut Lc, src: &Lc, s: &Rational) {
    for (k, c) in src {
        lc_add(out, k.clone(), c * s);
    }
}

/// A finite truncation of a differential graded algebra, exposed on flat
/// basis indices per degree.
pub trait DgAlgebra {
    fn max_degree(&self) -> usize;
    fn dim(&self, deg: usize) -> usize;
    fn label(&self, deg: usize, i: usize) -> String;
    /// Product of basis `i` in degree `p` and basis `j` in degree `q`.
    fn mul_basis(&self, p: usize, i: usize, q: usize, j: usize) -> SparseVec;
    /// Differential of basis `i` in degree `p`, landing in degree `p + 1`.
    fn d_basis(&self, p: usize, i: usize) -> SparseVec;
    /// The unit, in degree 0.
    fn unit(&self) -> SparseVec;
}

fn mul_sparse<D: DgAlgebra + ?Sized>(alg: &D, p: usize, x: &SparseVec, q: usize, y: &SparseVec) -> SparseVec {
    let mut out = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let ab = a * b;
            out.extend(alg.mul_basis(p, *i, q, *j).into_iter().map(|(k, c)| (k, c * &ab)));
        }
    }
    normalize_sparse(out)
}

fn d_sparse<D: DgAlgebra + ?Sized>(alg: &D, p: usize, x: &SparseVec) -> SparseVec {
    let mut out = Vec::new();
    for (i, a) in x {
        out.extend(alg.d_basis(p, *i).into_iter().map(|(k, c)| (k, c * a)));
    }
    normalize_sparse(out)
}

/// Checks `d² = 0`, the graded Leibniz rule, associativity and the unit on
/// all basis tuples whose total degree is at most `max_total`.
pub fn check_dg<D: DgAlgebra + ?Sized>(alg: &D, max_total: usize) -> ValidationReport {
    let top = max_total.min(alg.max_degree());
    let mut checks = Vec::new();
    let mut witness = None;
    'outer: for p in 0..=top.saturating_sub(2) {
        if p + 2 > top {
            break;
        }
        for i in 0..alg.dim(p) {
            let dd = d_sparse(alg, p + 1, &alg.d_basis(p, i));
            if !dd.is_empty() {
                witness = Some(vec![alg.label(p, i)]);
                break 'outer;
            }
        }
    }
    checks.push(("d-squared", witness));

    let mut witness = None;
    'leib: for p in 0..=top {
        for q in 0..=top - p {
            if p + q + 1 > top {
                continue;
            }
            for i in 0..alg.dim(p) {
                let di = alg.d_basis(p, i);
                for j in 0..alg.dim(q) {
                    let lhs = d_sparse(alg, p + q, &alg.mul_basis(p, i, q, j));
                    let mut rhs = mul_sparse(alg, p + 1, &di, q, &vec![(j, Rational::one())]);
                    let s = sign(p);
                    rhs.extend(
                        mul_sparse(alg, p, &vec![(i, Rational::one())], q + 1, &alg.d_basis(q, j))
                            .into_iter()
                            .map(|(k, c)| (k, c * &s)),
                    );
                    if lhs != normalize_sparse(rhs) {
                        witness = Some(vec![alg.label(p, i), alg.label(q, j)]);
                        break 'leib;
                    }
                }
            }
        }
    }
    checks.push(("leibniz", witness));

    let mut witness = None;
    'assoc: for p in 0..=top {
        for q in 0..=top - p {
            for r in 0..=top - p - q {
                for i in 0..alg.dim(p) {
                    for j in 0..alg.dim(q) {
                        let ij = alg.mul_basis(p, i, q, j);
                        for k in 0..alg.dim(r) {
                            let ek = vec![(k, Rational::one())];
                            let lhs = mul_sparse(alg, p + q, &ij, r, &ek);
                            let jk = alg.mul_basis(q, j, r, k);
                            let rhs = mul_sparse(alg, p, &vec![(i, Rational::one())], q + r, &jk);
                            if lhs != rhs {
                                witness = Some(vec![alg.label(p, i), alg.label(q, j), alg.label(r, k)]);
                                break 'assoc;
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(("associativity", witness));

    let unit = alg.unit();
    let mut witness = None;
    'unit: for p in 0..=top {
        for i in 0..alg.dim(p) {
            let e = vec![(i, Rational::one())];
            if mul_sparse(alg, 0, &unit, p, &e) != e || mul_sparse(alg, p, &e, 0, &unit) != e {
                witness = Some(vec![alg.label(p, i)]);
                break 'unit;
            }
        }
    }
    checks.push(("unit", witness));
    report_from(checks)
}

fn report_from(checks: Vec<(&str, Option<Vec<String>>)>) -> ValidationReport {
    ValidationReport {
        checks: checks
            .into_iter()
            .map(|(name, w)| crate::structures::AxiomCheck {
                scope: String::new(),
                name: name.to_string(),
                passed: w.is_none(),
                witness: w,
            })
            .collect(),
    }
}

/// Universal calculus `Ω A` with adjoined unit, truncated at `max_degree`.
#[derive(Clone, Debug)]
pub struct UniversalCalculus {
    pub algebra: Algebra,
    pub max_degree: usize,
}

impl UniversalCalculus {
    pub fn new(algebra: Algebra, max_degree: usize, limits: &Limits) -> Result<Self> {
        if max_degree > limits.max_degree {
            return Err(Error::Budget {
                what: "calculus degree".into(),
                needed: max_degree,
                limit: limits.max_degree,
            });
        }
        let calc = UniversalCalculus { algebra, max_degree };
        limits.check("universal calculus", calc.dim(max_degree))?;
        Ok(calc)
    }

    /// Index of the adjoined unit `1̃` in slot 0.
    pub fn tilde(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.radix(n).size()
    }

    pub fn radix(&self, n: usize) -> Radix {
        let x = self.algebra.dim();
        let mut dims = vec![x + 1];
        dims.extend(std::iter::repeat_n(x, n));
        Radix::new(dims)
    }

    pub fn label(&self, t: &[usize]) -> String {
        let name = |i: usize| {
            if i == self.tilde() {
                "1~".to_string()
            } else {
                self.algebra.space.labels[i].clone()
            }
        };
        let mut s = name(t[0]);
        for &a in &t[1..] {
            s.push_str(&format!(" d{}", name(a)));
        }
        s
    }

    pub fn unit_tuple(&self) -> Vec<usize> {
        vec![self.tilde()]
    }

    /// `d(a_0 da_1⋯) = 1̃ da_0 da_1⋯`, and `d(1̃ ⋯) = 0`.
    pub fn d(&self, t: &[usize]) -> Lc {
        let mut out = Lc::new();
        if t[0] != self.tilde() {
            let mut k = vec![self.tilde()];
            k.extend_from_slice(t);
            out.insert(k, Rational::one());
        }
        out
    }

    pub fn d_lc(&self, x: &Lc) -> Lc {
        let mut out = Lc::new();
        for (t, c) in x {
            lc_scale_into(&mut out, &self.d(t), c);
        }
        out
    }

    /// `(t) · a` for a basis element `a` of `A`, rewritten with
    /// `(ω db) a = ω d(ba) − (ω b) da`.
    fn rmul(&self, t: &[usize], a: usize) -> Lc {
        let mut out = Lc::new();
        if t.len() == 1 {
            if t[0] == self.tilde() {
                out.insert(vec![a], Rational::one());
            } else {
                for (k, c) in self.algebra.mul_basis(t[0], a) {
                    out.insert(vec![*k], c.clone());
                }
            }
            return out;
        }
        let (prefix, last) = (&t[..t.len() - 1], t[t.len() - 1]);
        for (k, c) in self.algebra.mul_basis(last, a) {
            let mut key = prefix.to_vec();
            key.push(*k);
            lc_add(&mut out, key, c.clone());
        }
        for (mut key, c) in self.rmul(prefix, last) {
            key.push(a);
            lc_add(&mut out, key, -c);
        }
        out
    }

    /// Product of two basis tuples.
    pub fn mul(&self, t1: &[usize], t2: &[usize]) -> Lc {
        let tail = &t2[1..];
        let head: Lc = if t2[0] == self.tilde() {
            let mut l = Lc::new();
            l.insert(t1.to_vec(), Rational::one());
            l
        } else {
            self.rmul(t1, t2[0])
        };
        head.into_iter()
            .map(|(mut k, c)| {
                k.extend_from_slice(tail);
                (k, c)
            })
            .collect()
    }

    pub fn mul_lc(&self, x: &Lc, y: &Lc) -> Lc {
        let mut out = Lc::new();
        for (t1, a) in x {
            for (t2, b) in y {
                lc_scale_into(&mut out, &self.mul(t1, t2), &(a * b));
            }
        }
        out
    }

    /// Diagonal action `h·(a_0 da_1⋯) = h⁽¹⁾a_0 d h⁽²⁾a_1 ⋯` with `h·1̃ = ε(h)1̃`.
    pub fn act(&self, action: &Action, h: usize, t: &[usize]) -> Lc {
        let hopf = &action.hopf;
        let mut out = Lc::new();
        for (hs, c) in hopf.coalgebra.iterated_basis(h, t.len() - 1) {
            let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c)];
            for (slot, (&hk, &tk)) in hs.iter().zip(t).enumerate() {
                let images: SparseVec = if slot == 0 && tk == self.tilde() {
                    let e = hopf.counit()[hk].clone();
                    if e.is_zero() {
                        Vec::new()
                    } else {
                        vec![(tk, e)]
                    }
                } else {
                    action.act_basis(hk, tk).clone()
                };
                let mut next = Vec::new();
                for (k, v) in &partial {
                    for (w, x) in &images {
                        let mut nk = k.clone();
                        nk.push(*w);
                        next.push((nk, v * x));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (k, v) in partial {
                lc_add(&mut out, k, v);
            }
        }
        out
    }

    pub fn act_lc(&self, action: &Action, h: usize, x: &Lc) -> Lc {
        let mut out = Lc::new();
        for (t, c) in x {
            lc_scale_into(&mut out, &self.act(action, h, t), c);
        }
        out
    }

    /// Coaction `b_0 db_1⋯ ↦ b_0⁽⁻¹⁾⋯b_n⁽⁻¹⁾ ⊗ b_0⁽⁰⁾ db_1⁽⁰⁾⋯`, `1̃ ↦ 1 ⊗ 1̃`.
    /// Keys of the result are `[h, t_0, …, t_n]`.
    pub fn coact(&self, coaction: &Coaction, t: &[usize]) -> Lc {
        let halg = &coaction.hopf.algebra;
        let mut partial: Vec<(SparseVec, Vec<usize>, Rational)> =
            vec![(halg.unit_sparse(), Vec::new(), Rational::one())];
        for (slot, &tk) in t.iter().enumerate() {
            let mut next = Vec::new();
            if slot == 0 && tk == self.tilde() {
                for (h, k, v) in partial {
                    let mut nk = k;
                    nk.push(tk);
                    next.push((h, nk, v));
                }
            } else {
                for (h, k, v) in &partial {
                    for (hb, w, x) in coaction.coact_basis(tk) {
                        let nh = halg.mul_sparse(h, &[(*hb, Rational::one())]);
                        let mut nk = k.clone();
                        nk.push(*w);
                        next.push((nh, nk, v * x));
                    }
                }
            }
            partial = next;
        }
        let mut out = Lc::new();
        for (h, k, v) in partial {
            for (hi, c) in h {
                let mut key = vec![hi];
                key.extend_from_slice(&k);
                lc_add(&mut out, key, &v * c);
            }
        }
        out
    }

    fn flat(&self, x: &Lc, n: usize) -> SparseVec {
        let radix = self.radix(n);
        normalize_sparse(x.iter().map(|(k, c)| (radix.encode(k), c.clone())).collect())
    }

    /// `d` on all of `Ω^{n-1}`, `d∘d = 0`, module-algebra multiplicativity of
    /// the action and H-linearity of `d`, on tuples of total degree ≤ `max_total`.
    pub fn check_action(&self, action: &Action, max_total: usize) -> ValidationReport {
        let top = max_total.min(self.max_degree);
        let hdim = action.hopf.dim();
        let mut mult = None;
        let mut dlin = None;
        'm: for p in 0..=top {
            for q in 0..=top - p {
                for t1 in self.radix(p).iter() {
                    for t2 in self.radix(q).iter() {
                        for h in 0..hdim {
                            let lhs = self.act_lc(action, h, &self.mul(&t1, &t2));
                            let mut rhs = Lc::new();
                            for (h1, h2, c) in action.hopf.coalgebra.comult_basis(h) {
                                let prod = self.mul_lc(&self.act(action, *h1, &t1), &self.act(action, *h2, &t2));
                                lc_scale_into(&mut rhs, &prod, c);
                            }
                            if lhs != rhs {
                                mult = Some(vec![self.label(&t1), self.label(&t2)]);
                                break 'm;
                            }
                        }
                    }
                }
            }
        }
        'd: for p in 0..top {
            for t in self.radix(p).iter() {
                for h in 0..hdim {
                    if self.act_lc(action, h, &self.d(&t)) != self.d_lc(&self.act(action, h, &t)) {
                        dlin = Some(vec![self.label(&t)]);
                        break 'd;
                    }
                }
            }
        }
        report_from(vec![("module-algebra-multiplicativity", mult), ("d-h-linear", dlin)])
    }

    /// H-colinearity of multiplication and of `d` on tuples of total degree ≤ `max_total`.
    pub fn check_coaction(&self, coaction: &Coaction, max_total: usize) -> ValidationReport {
        let top = max_total.min(self.max_degree);
        let halg = &coaction.hopf.algebra;
        let mut mult = None;
        let mut dcol = None;
        'm: for p in 0..=top {
            for q in 0..=top - p {
                for t1 in self.radix(p).iter() {
                    for t2 in self.radix(q).iter() {
                        let mut lhs = Lc::new();
                        for (t, c) in self.mul(&t1, &t2) {
                            lc_scale_into(&mut lhs, &self.coact(coaction, &t), &c);
                        }
                        let mut rhs = Lc::new();
                        for (k1, c1) in self.coact(coaction, &t1) {
                            for (k2, c2) in self.coact(coaction, &t2) {
                                let prod = self.mul(&k1[1..], &k2[1..]);
                                for (h, ch) in halg.mul_basis(k1[0], k2[0]) {
                                    for (t, ct) in &prod {
                                        let mut key = vec![*h];
                                        key.extend_from_slice(t);
                                        lc_add(&mut rhs, key, &c1 * &c2 * ch * ct);
                                    }
                                }
                            }
                        }
                        if lhs != rhs {
                            mult = Some(vec![self.label(&t1), self.label(&t2)]);
                            break 'm;
                        }
                    }
                }
            }
        }
        'd: for p in 0..top {
            for t in self.radix(p).iter() {
                let mut lhs = Lc::new();
                for (k, c) in self.d(&t) {
                    lc_scale_into(&mut lhs, &self.coact(coaction, &k), &c);
                }
                let mut rhs = Lc::new();
                for (k, c) in self.coact(coaction, &t) {
                    for (dk, dc) in self.d(&k[1..]) {
                        let mut key = vec![k[0]];
                        key.extend(dk);
                        lc_add(&mut rhs, key, &c * dc);
                    }
                }
                if lhs != rhs {
                    dcol = Some(vec![self.label(&t)]);
                    break 'd;
                }
            }
        }
        report_from(vec![
            ("comodule-algebra-multiplicativity", mult),
            ("d-h-colinear", dcol),
        ])
    }
}

impl DgAlgebra for UniversalCalculus {
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, deg: usize) -> usize {
        UniversalCalculus::dim(self, deg)
    }

    fn label(&self, deg: usize, i: usize) -> String {
        UniversalCalculus::label(self, &self.radix(deg).decode(i))
    }

    fn mul_basis(&self, p: usize, i: usize, q: usize, j: usize) -> SparseVec {
        let prod = self.mul(&self.radix(p).decode(i), &self.radix(q).decode(j));
        self.flat(&prod, p + q)
    }

    fn d_basis(&self, p: usize, i: usize) -> SparseVec {
        self.flat(&self.d(&self.radix(p).decode(i)), p + 1)
    }

    fn unit(&self) -> SparseVec {
        vec![(self.tilde(), Rational::one())]
    }
}

/// Universal DG coalgebra `Θ` of a coalgebra `C`, realized as the graded dual
/// of `Ω(C*)`: `Θ_n = C̃ ⊗ C^{⊗n}` with `1̃*` in slot 0, comultiplication the
/// transpose of the product of `Ω(C*)`, and `d(1̃* ⊗ c_1⋯c_n) = c_1 ⊗ ⋯ ⊗ c_n`.
/// One term `θ⁽¹⁾ ⊗ θ⁽²⁾` with its coefficient.
pub type Split = (Vec<usize>, Vec<usize>, Rational);

#[derive(Debug)]
pub struct DualCalculus {
    pub coalgebra: Coalgebra,
    /// `Ω(C*)`, whose basis tuples index `Θ`.
    pub predual: UniversalCalculus,
    comult: Vec<OnceLock<Vec<Vec<Split>>>>,
}

impl Clone for DualCalculus {
    fn clone(&self) -> Self {
        DualCalculus {
            coalgebra: self.coalgebra.clone(),
            predual: self.predual.clone(),
            comult: (0..=self.predual.max_degree).map(|_| OnceLock::new()).collect(),
        }
    }
}

impl DualCalculus {
    pub fn new(coalgebra: Coalgebra, max_degree: usize, limits: &Limits) -> Result<Self> {
        let predual = UniversalCalculus::new(coalgebra.dual_algebra(), max_degree, limits)?;
        Ok(DualCalculus {
            coalgebra,
            predual,
            comult: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.predual.max_degree
    }

    pub fn tilde(&self) -> usize {
        self.predual.tilde()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.predual.dim(n)
    }

    pub fn radix(&self, n: usize) -> Radix {
        self.predual.radix(n)
    }

    pub fn label(&self, t: &[usize]) -> String {
        t.iter()
            .enumerate()
            .map(|(k, &i)| {
                if k == 0 && i == self.tilde() {
                    "1~*".to_string()
                } else {
                    self.coalgebra.space.labels[i].clone()
                }
            })
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Degree-(−1) differential.
    pub fn d(&self, t: &[usize]) -> Lc {
        let mut out = Lc::new();
        if t[0] == self.tilde() && t.len() > 1 {
            out.insert(t[1..].to_vec(), Rational::one());
        }
        out
    }

    /// All terms `θ⁽¹⁾ ⊗ θ⁽²⁾` of the comultiplication of `θ`, over every splitting degree.
    pub fn comult(&self, t: &[usize]) -> &[Split] {
        let n = t.len() - 1;
        let table = self.comult[n].get_or_init(|| {
            let radix = self.radix(n);
            let mut table: Vec<Vec<Split>> = vec![Vec::new(); radix.size()];
            for i in 0..=n {
                for t1 in self.radix(i).iter() {
                    for t2 in self.radix(n - i).iter() {
                        for (t, c) in self.predual.mul(&t1, &t2) {
                            table[radix.encode(&t)].push((t1.clone(), t2.clone(), c));
                        }
                    }
                }
            }
            table
        });
        &table[self.radix(n).encode(t)]
    }

    pub fn counit(&self, t: &[usize]) -> Rational {
        if t.len() == 1 && t[0] == self.tilde() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// Diagonal action with `h·1̃* = ε(h)1̃*`.
    pub fn act(&self, action: &Action, h: usize, t: &[usize]) -> Lc {
        self.predual.act(action, h, t)
    }

    /// Coassociativity, counit, coderivation law, `d² = 0`, and H-linearity
    /// of `Δ` and `d`, on degrees ≤ `max_total`.
    pub fn check(&self, action: &Action, max_total: usize) -> ValidationReport {
        let top = max_total.min(self.max_degree());
        let mut checks: Vec<(&str, Option<Vec<String>>)> = Vec::new();
        let delta_lc = |x: &Lc| -> BTreeMap<(Vec<usize>, Vec<usize>), Rational> {
            let mut out = BTreeMap::new();
            for (t, c) in x {
                for (a, b, k) in self.comult(t) {
                    let e = out.entry((a.clone(), b.clone())).or_insert_with(Rational::zero);
                    *e += c * k;
                }
            }
            out.retain(|_, v: &mut Rational| !v.is_zero());
            out
        };
        let mut coassoc = None;
        let mut counit = None;
        let mut coder = None;
        let mut dsq = None;
        let mut lin = None;
        for n in 0..=top {
            for t in self.radix(n).iter() {
                let delta = self.comult(&t);
                if coassoc.is_none() {
                    let mut lhs: BTreeMap<Vec<Vec<usize>>, Rational> = BTreeMap::new();
                    let mut rhs: BTreeMap<Vec<Vec<usize>>, Rational> = BTreeMap::new();
                    for (a, b, c) in delta {
                        for (a1, a2, k) in self.comult(a) {
                            *lhs.entry(vec![a1.clone(), a2.clone(), b.clone()])
                                .or_insert_with(Rational::zero) += c * k;
                        }
                        for (b1, b2, k) in self.comult(b) {
                            *rhs.entry(vec![a.clone(), b1.clone(), b2.clone()])
                                .or_insert_with(Rational::zero) += c * k;
                        }
                    }
                    lhs.retain(|_, v| !v.is_zero());
                    rhs.retain(|_, v| !v.is_zero());
                    if lhs != rhs {
                        coassoc = Some(vec![self.label(&t)]);
                    }
                }
                if counit.is_none() {
                    let mut left = Lc::new();
                    let mut right = Lc::new();
                    for (a, b, c) in delta {
                        lc_add(&mut left, b.clone(), c * self.counit(a));
                        lc_add(&mut right, a.clone(), c * self.counit(b));
                    }
                    let mut e = Lc::new();
                    e.insert(t.clone(), Rational::one());
                    if left != e || right != e {
                        counit = Some(vec![self.label(&t)]);
                    }
                }
                if dsq.is_none() && n >= 2 {
                    let mut dd = Lc::new();
                    for (k, c) in self.d(&t) {
                        lc_scale_into(&mut dd, &self.d(&k), &c);
                    }
                    if !dd.is_empty() {
                        dsq = Some(vec![self.label(&t)]);
                    }
                }
                if coder.is_none() && n >= 1 {
                    // Δd = (d ⊗ 1 + (−1)^{|θ⁽¹⁾|} 1 ⊗ d)Δ
                    let lhs = delta_lc(&self.d(&t));
                    let mut rhs: BTreeMap<(Vec<usize>, Vec<usize>), Rational> = BTreeMap::new();
                    for (a, b, c) in delta {
                        for (da, k) in self.d(a) {
                            *rhs.entry((da, b.clone())).or_insert_with(Rational::zero) += c * k;
                        }
                        let s = sign(a.len() - 1);
                        for (db, k) in self.d(b) {
                            *rhs.entry((a.clone(), db)).or_insert_with(Rational::zero) += c * k * &s;
                        }
                    }
                    rhs.retain(|_, v| !v.is_zero());
                    if lhs != rhs {
                        coder = Some(vec![self.label(&t)]);
                    }
                }
                if lin.is_none() {
                    for h in 0..action.hopf.dim() {
                        let ht = self.act(action, h, &t);
                        let lhs = delta_lc(&ht);
                        let mut rhs: BTreeMap<(Vec<usize>, Vec<usize>), Rational> = BTreeMap::new();
                        for (a, b, c) in delta {
                            for (h1, h2, k) in action.hopf.coalgebra.comult_basis(h) {
                                for (x, u) in self.act(action, *h1, a) {
                                    for (y, v) in self.act(action, *h2, b) {
                                        *rhs.entry((x.clone(), y)).or_insert_with(Rational::zero) += c * k * &u * v;
                                    }
                                }
                            }
                        }
                        rhs.retain(|_, v| !v.is_zero());
                        let mut dl = Lc::new();
                        for (k, c) in self.d(&t) {
                            lc_scale_into(&mut dl, &self.act(action, h, &k), &c);
                        }
                        let mut dr = Lc::new();
                        for (k, c) in &ht {
                            lc_scale_into(&mut dr, &self.d(k), c);
                        }
                        if lhs != rhs || dl != dr {
                            lin = Some(vec![action.hopf.space().labels[h].clone(), self.label(&t)]);
                            break;
                        }
                    }
                }
            }
        }
        checks.push(("coassociativity", coassoc));
        checks.push(("counit", counit));
        checks.push(("coderivation", coder));
        checks.push(("d-squared", dsq));
        checks.push(("h-linear", lin));
        report_from(checks)
    }
}

/// Flat indexing of bigraded pairs `⊕_{i+j=n} L_i ⊗ R_j`.
#[derive(Clone, Debug)]
struct PairIndex {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl PairIndex {
    fn offset(&self, n: usize, i: usize) -> usize {
        (0..i).map(|k| self.left[k] * self.right[n - k]).sum()
    }

    fn dim(&self, n: usize) -> usize {
        self.offset(n, n + 1)
    }

    fn encode(&self, n: usize, i: usize, l: usize, r: usize) -> usize {
        self.offset(n, i) + l * self.right[n - i] + r
    }

    fn decode(&self, n: usize, mut flat: usize) -> (usize, usize, usize) {
        for i in 0..=n {
            let size = self.left[i] * self.right[n - i];
            if flat < size {
                return (i, flat / self.right[n - i], flat % self.right[n - i]);
            }
            flat -= size;
        }
        panic!("flat index out of range")
    }
}

/// Sparse element of a tensor product of two calculi, keyed by tuple pairs.
pub type PairLc = BTreeMap<(Vec<usize>, Vec<usize>), Rational>;

fn pair_add(out: &mut PairLc, key: (Vec<usize>, Vec<usize>), c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

/// The twisted product `Ω ⋊_H Γ` of the calculus of a module algebra and the
/// calculus of a comodule algebra.
#[derive(Clone, Debug)]
pub struct SmashDg {
    pub omega: UniversalCalculus,
    pub action: Action,
    pub gamma: UniversalCalculus,
    pub coaction: Coaction,
    pub max_degree: usize,
    index: PairIndex,
}

impl SmashDg {
    pub fn new(omega: UniversalCalculus, action: Action, gamma: UniversalCalculus, coaction: Coaction) -> Result<Self> {
        if action.hopf != coaction.hopf {
            return Err(Error::Precondition("smash product needs one Hopf algebra".into()));
        }
        let max_degree = omega.max_degree.min(gamma.max_degree);
        let index = PairIndex {
            left: (0..=max_degree).map(|i| omega.dim(i)).collect(),
            right: (0..=max_degree).map(|i| gamma.dim(i)).collect(),
        };
        Ok(SmashDg {
            omega,
            action,
            gamma,
            coaction,
            max_degree,
            index,
        })
    }

    /// `(ω_1⊗γ_1)(ω_2⊗γ_2) = (−1)^{|ω_2||γ_1|} ω_1 (γ_1⁽⁻¹⁾·ω_2) ⊗ γ_1⁽⁰⁾γ_2`.
    pub fn mul(&self, x1: &(Vec<usize>, Vec<usize>), x2: &(Vec<usize>, Vec<usize>)) -> PairLc {
        let (w1, g1) = x1;
        let (w2, g2) = x2;
        let s = sign((w2.len() - 1) * (g1.len() - 1));
        let mut out = PairLc::new();
        for (key, c) in self.gamma.coact(&self.coaction, g1) {
            let hw2 = self.omega.act(&self.action, key[0], w2);
            if hw2.is_empty() {
                continue;
            }
            let mut w1lc = Lc::new();
            w1lc.insert(w1.clone(), Rational::one());
            let left = self.omega.mul_lc(&w1lc, &hw2);
            let right = self.gamma.mul(&key[1..], g2);
            for (a, ca) in &left {
                for (b, cb) in &right {
                    pair_add(&mut out, (a.clone(), b.clone()), &s * &c * ca * cb);
                }
            }
        }
        out
    }

    pub fn mul_lc(&self, x: &PairLc, y: &PairLc) -> PairLc {
        let mut out = PairLc::new();
        for (k1, a) in x {
            for (k2, b) in y {
                for (k, c) in self.mul(k1, k2) {
                    pair_add(&mut out, k, c * a * b);
                }
            }
        }
        out
    }

    /// `d(ω⊗γ) = dω⊗γ + (−1)^{|ω|} ω⊗dγ`.
    pub fn d(&self, x: &(Vec<usize>, Vec<usize>)) -> PairLc {
        let (w, g) = x;
        let mut out = PairLc::new();
        for (dw, c) in self.omega.d(w) {
            pair_add(&mut out, (dw, g.clone()), c);
        }
        let s = sign(w.len() - 1);
        for (dg, c) in self.gamma.d(g) {
            pair_add(&mut out, (w.clone(), dg), c * &s);
        }
        out
    }

    pub fn d_lc(&self, x: &PairLc) -> PairLc {
        let mut out = PairLc::new();
        for (k, a) in x {
            for (kk, c) in self.d(k) {
                pair_add(&mut out, kk, c * a);
            }
        }
        out
    }

    fn key_of(&self, n: usize, flat: usize) -> (Vec<usize>, Vec<usize>) {
        let (i, l, r) = self.index.decode(n, flat);
        (self.omega.radix(i).decode(l), self.gamma.radix(n - i).decode(r))
    }

    fn flat(&self, x: &PairLc) -> SparseVec {
        normalize_sparse(
            x.iter()
                .map(|((w, g), c)| {
                    let (i, j) = (w.len() - 1, g.len() - 1);
                    let flat =
                        self.index
                            .encode(i + j, i, self.omega.radix(i).encode(w), self.gamma.radix(j).encode(g));
                    (flat, c.clone())
                })
                .collect(),
        )
    }
}

impl DgAlgebra for SmashDg {
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, deg: usize) -> usize {
        self.index.dim(deg)
    }

    fn label(&self, deg: usize, i: usize) -> String {
        let (w, g) = self.key_of(deg, i);
        format!("({})⊗({})", self.omega.label(&w), self.gamma.label(&g))
    }

    fn mul_basis(&self, p: usize, i: usize, q: usize, j: usize) -> SparseVec {
        self.flat(&self.mul(&self.key_of(p, i), &self.key_of(q, j)))
    }

    fn d_basis(&self, p: usize, i: usize) -> SparseVec {
        self.flat(&self.d(&self.key_of(p, i)))
    }

    fn unit(&self) -> SparseVec {
        let mut u = PairLc::new();
        u.insert((self.omega.unit_tuple(), self.gamma.unit_tuple()), Rational::one());
        self.flat(&u)
    }
}

/// The convolution DG algebra `Hom(Θ, Ω)`. A matrix unit sending the
/// `Θ`-basis element `s` to the `Ω`-basis element `r` is keyed `(s, r)`, and
/// has degree `|s| + |r|`.
#[derive(Clone, Debug)]
pub struct ConvolutionDg {
    pub theta: DualCalculus,
    pub omega: UniversalCalculus,
    pub max_degree: usize,
    index: PairIndex,
}

impl ConvolutionDg {
    pub fn new(theta: DualCalculus, omega: UniversalCalculus) -> Self {
        let max_degree = theta.max_degree().min(omega.max_degree);
        let index = PairIndex {
            left: (0..=max_degree).map(|i| theta.dim(i)).collect(),
            right: (0..=max_degree).map(|i| omega.dim(i)).collect(),
        };
        ConvolutionDg {
            theta,
            omega,
            max_degree,
            index,
        }
    }

    /// `(f∗g)(θ) = (−1)^{|g||θ⁽¹⁾|} f(θ⁽¹⁾)g(θ⁽²⁾)` on matrix units.
    pub fn mul(&self, x1: &(Vec<usize>, Vec<usize>), x2: &(Vec<usize>, Vec<usize>)) -> PairLc {
        let (s1, r1) = x1;
        let (s2, r2) = x2;
        let i1 = s1.len() - 1;
        let deg_g = (s2.len() - 1) + (r2.len() - 1);
        let sg = sign(deg_g * i1);
        let thetas = self.theta.predual.mul(s1, s2);
        let omegas = self.omega.mul(r1, r2);
        let mut out = PairLc::new();
        for (t, a) in &thetas {
            for (r, b) in &omegas {
                pair_add(&mut out, (t.clone(), r.clone()), &sg * a * b);
            }
        }
        out
    }

    pub fn mul_lc(&self, x: &PairLc, y: &PairLc) -> PairLc {
        let mut out = PairLc::new();
        for (k1, a) in x {
            for (k2, b) in y {
                for (k, c) in self.mul(k1, k2) {
                    pair_add(&mut out, k, c * a * b);
                }
            }
        }
        out
    }

    /// `df = d∘f − (−1)^{|f|} f∘∂` with `∂ = −dᵀ` the differential of `Θ`
    /// as the graded dual of `Ω(C*)`.
    pub fn d(&self, x: &(Vec<usize>, Vec<usize>)) -> PairLc {
        let (s, r) = x;
        let mut out = PairLc::new();
        for (dr, c) in self.omega.d(r) {
            pair_add(&mut out, (s.clone(), dr), c);
        }
        let sg = sign((s.len() - 1) + (r.len() - 1));
        for (ds, c) in self.theta.predual.d(s) {
            pair_add(&mut out, (ds, r.clone()), c * &sg);
        }
        out
    }

    pub fn d_lc(&self, x: &PairLc) -> PairLc {
        let mut out = PairLc::new();
        for (k, a) in x {
            for (kk, c) in self.d(k) {
                pair_add(&mut out, kk, c * a);
            }
        }
        out
    }

    /// Evaluates a map at a `Θ` basis element.
    pub fn evaluate(&self, f: &PairLc, theta: &[usize]) -> Lc {
        let mut out = Lc::new();
        for ((s, r), c) in f {
            if s == theta {
                lc_add(&mut out, r.clone(), c.clone());
            }
        }
        out
    }

    /// Whether `f(h·θ) = h·f(θ)` for every basis `h` and every `θ` in the
    /// degrees that `f` touches.
    pub fn is_h_linear(&self, f: &PairLc, theta_action: &Action, omega_action: &Action) -> bool {
        let degrees: std::collections::BTreeSet<usize> = f.keys().map(|(s, _)| s.len() - 1).collect();
        for i in degrees {
            for t in self.theta.radix(i).iter() {
                let ft = self.evaluate(f, &t);
                for h in 0..theta_action.hopf.dim() {
                    let mut lhs = Lc::new();
                    for (ht, c) in self.theta.act(theta_action, h, &t) {
                        lc_scale_into(&mut lhs, &self.evaluate(f, &ht), &c);
                    }
                    let rhs = self.omega.act_lc(omega_action, h, &ft);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn key_of(&self, n: usize, flat: usize) -> (Vec<usize>, Vec<usize>) {
        let (i, l, r) = self.index.decode(n, flat);
        (self.theta.radix(i).decode(l), self.omega.radix(n - i).decode(r))
    }

    fn flat(&self, x: &PairLc) -> SparseVec {
        normalize_sparse(
            x.iter()
                .map(|((s, r), c)| {
                    let (i, j) = (s.len() - 1, r.len() - 1);
                    let flat =
                        self.index
                            .encode(i + j, i, self.theta.radix(i).encode(s), self.omega.radix(j).encode(r));
                    (flat, c.clone())
                })
                .collect(),
        )
    }
}

impl DgAlgebra for ConvolutionDg {
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, deg: usize) -> usize {
        self.index.dim(deg)
    }

    fn label(&self, deg: usize, i: usize) -> String {
        let (s, r) = self.key_of(deg, i);
        format!("[{} ↦ {}]", self.theta.label(&s), self.omega.label(&r))
    }

    fn mul_basis(&self, p: usize, i: usize, q: usize, j: usize) -> SparseVec {
        self.flat(&self.mul(&self.key_of(p, i), &self.key_of(q, j)))
    }

    fn d_basis(&self, p: usize, i: usize) -> SparseVec {
        self.flat(&self.d(&self.key_of(p, i)))
    }

    fn unit(&self) -> SparseVec {
        let mut u = PairLc::new();
        u.insert((vec![self.theta.tilde()], self.omega.unit_tuple()), Rational::one());
        self.flat(&u)
    }
}
