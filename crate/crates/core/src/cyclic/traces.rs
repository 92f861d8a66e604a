//! Closed graded traces (kinds A and B) and closed graded cotraces (kind C)
//! matched with cyclic cocycles.
//!
//! A trace lives in the flat space indexed by `[m, t_0, t_1, .., t_n]` where
//! `t` is a basis tuple of the calculus in degree `n` (slot 0 may be the
//! adjoined unit). Kind A stores a functional on `M ⊗ Ω^n A`, kind B the
//! components of a map `Ω^n B → M`, kind C a representative of a class in
//! `M ⊗_H Θ_n`.

use num_traits::{One, Zero};

use super::{balancing_relations, encode_lc, Cochain, CyclicComplex, SparseOp};
use crate::calculi::{DualCalculus, UniversalCalculus};
use crate::error::{Error, Result};
use crate::exactla::{sign, sparse_from_dense, Limits, Rational, RowReducer, SparseVec, Subspace};
use crate::multilin::{lc_add, Lc, Radix};
use crate::structures::{Kind, Symmetry, SymmetryBundle, ValidationReport};

/// A closed graded (co)trace of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceElement {
    pub kind: Kind,
    pub degree: usize,
    pub values: Vec<Rational>,
}

/// Index space `[m, t_0, .., t_n]` of degree-`n` traces.
pub fn trace_radix(bundle: &SymmetryBundle, n: usize) -> Radix {
    let x = bundle.carrier_dim();
    let mut dims = vec![bundle.coeffs.dim(), x + 1];
    dims.extend(std::iter::repeat_n(x, n));
    Radix::new(dims)
}

/// Linear conditions cutting out closed traces; each is a map that must
/// vanish on the trace.
struct Conditions {
    list: Vec<(&'static str, SparseOp)>,
    /// Balancing relations of `M ⊗ Θ_n` (kind C), empty otherwise.
    relations: Vec<SparseVec>,
}

fn prepend(m: usize, t: &[usize]) -> Vec<usize> {
    let mut k = vec![m];
    k.extend_from_slice(t);
    k
}

fn rows_op(in_dim: usize, rows: Vec<SparseVec>) -> SparseOp {
    SparseOp::from_rows(in_dim, &rows)
}

fn conditions(bundle: &SymmetryBundle, n: usize, limits: &Limits) -> Result<Conditions> {
    let radix = trace_radix(bundle, n);
    let size = radix.size();
    limits.check(&format!("degree {n} trace space"), size)?;
    let hopf = &bundle.hopf;
    let coeffs = &bundle.coeffs;
    let dm = coeffs.dim();
    let mut list = Vec::new();
    let mut relations = Vec::new();
    match &bundle.symmetry {
        Symmetry::ModuleAlgebra { algebra, action } => {
            let calc = UniversalCalculus::new(algebra.clone(), n, limits)?;
            let s_inv: Vec<SparseVec> = (0..hopf.dim())
                .map(|h| hopf.antipode_inv_basis(h))
                .collect::<Result<_>>()?;
            let mut inv = Vec::new();
            for h in 0..hopf.dim() {
                for key in radix.iter() {
                    let mut lc = Lc::new();
                    for (h1, h2, c) in hopf.coalgebra.comult_basis(h) {
                        for (m2, u) in coeffs.action.act_basis(*h1, key[0]) {
                            for (t, v) in calc.act(action, *h2, &key[1..]) {
                                lc_add(&mut lc, prepend(*m2, &t), c * u * v);
                            }
                        }
                    }
                    lc_add(&mut lc, key.clone(), -hopf.counit()[h].clone());
                    inv.push(encode_lc(&radix, &lc));
                }
            }
            list.push(("h-invariance", rows_op(size, inv)));
            list.push((
                "closedness",
                rows_op(size, closedness_rows(&radix, dm, n, |t| calc.d(t), |n| calc.radix(n))),
            ));
            let mut gt = Vec::new();
            for m in 0..dm {
                for i in 0..=n {
                    let s = sign(i * (n - i));
                    for t1 in calc.radix(i).iter() {
                        for t2 in calc.radix(n - i).iter() {
                            let mut lc = Lc::new();
                            for (p, c) in calc.mul(&t1, &t2) {
                                lc_add(&mut lc, prepend(m, &p), c);
                            }
                            for (h, m2, c) in coeffs.coact_basis(m) {
                                for (k, x) in &s_inv[*h] {
                                    for (t2b, u) in calc.act(action, *k, &t2) {
                                        for (p, w) in calc.mul(&t2b, &t1) {
                                            lc_add(&mut lc, prepend(*m2, &p), -(&s * c * x * &u * w));
                                        }
                                    }
                                }
                            }
                            gt.push(encode_lc(&radix, &lc));
                        }
                    }
                }
            }
            list.push(("graded-trace", rows_op(size, gt)));
        }
        Symmetry::ComoduleAlgebra { algebra, coaction } => {
            let calc = UniversalCalculus::new(algebra.clone(), n, limits)?;
            let mut inv_act = vec![vec![Vec::new(); dm]; hopf.dim()];
            for (h, row) in inv_act.iter_mut().enumerate() {
                for m2 in 0..dm {
                    for (m, v) in coeffs.action.act_basis(h, m2) {
                        row[*m].push((m2, v.clone()));
                    }
                }
            }
            let mut col = Vec::new();
            for t in calc.radix(n).iter() {
                let rho_t = calc.coact(coaction, &t);
                for h_out in 0..hopf.dim() {
                    for m_out in 0..dm {
                        let mut lc = Lc::new();
                        for m in 0..dm {
                            for (h, w, c) in coeffs.coact_basis(m) {
                                if *h == h_out && *w == m_out {
                                    lc_add(&mut lc, prepend(m, &t), c.clone());
                                }
                            }
                        }
                        for (key, c) in &rho_t {
                            if key[0] == h_out {
                                lc_add(&mut lc, prepend(m_out, &key[1..]), -c.clone());
                            }
                        }
                        col.push(encode_lc(&radix, &lc));
                    }
                }
            }
            list.push(("h-colinearity", rows_op(size, col)));
            list.push((
                "closedness",
                rows_op(size, closedness_rows(&radix, dm, n, |t| calc.d(t), |n| calc.radix(n))),
            ));
            let mut gt = Vec::new();
            for m_out in 0..dm {
                for i in 0..=n {
                    let s = sign(i * (n - i));
                    for t1 in calc.radix(i).iter() {
                        for t2 in calc.radix(n - i).iter() {
                            let mut lc = Lc::new();
                            for (p, c) in calc.mul(&t1, &t2) {
                                lc_add(&mut lc, prepend(m_out, &p), c);
                            }
                            for (key, c) in calc.coact(coaction, &t2) {
                                for (m2, v) in &inv_act[key[0]][m_out] {
                                    for (p, w) in calc.mul(&key[1..], &t1) {
                                        lc_add(&mut lc, prepend(*m2, &p), -(&s * &c * v * w));
                                    }
                                }
                            }
                            gt.push(encode_lc(&radix, &lc));
                        }
                    }
                }
            }
            list.push(("graded-trace", rows_op(size, gt)));
        }
        Symmetry::ModuleCoalgebra { coalgebra, action } => {
            let theta = DualCalculus::new(coalgebra.clone(), n, limits)?;
            let act_theta = |h: usize, t: &[usize]| theta.act(action, h, t);
            relations = balancing_relations(bundle, &radix, act_theta);
            if n == 0 {
                let red = reducer(size, &relations);
                let tilde = theta.tilde();
                let cols = radix
                    .iter()
                    .map(|key| {
                        if key[1] == tilde {
                            red.reduce_sparse(&[(radix.encode(&key), Rational::one())])
                        } else {
                            Vec::new()
                        }
                    })
                    .collect();
                list.push(("closedness", SparseOp::from_columns(size, cols)));
            } else {
                let lower = trace_radix(bundle, n - 1);
                let red = reducer(lower.size(), &balancing_relations(bundle, &lower, act_theta));
                let cols = radix
                    .iter()
                    .map(|key| {
                        let mut lc = Lc::new();
                        for (t, c) in theta.d(&key[1..]) {
                            lc_add(&mut lc, prepend(key[0], &t), c);
                        }
                        red.reduce_sparse(&encode_lc(&lower, &lc))
                    })
                    .collect();
                list.push(("closedness", SparseOp::from_columns(lower.size(), cols)));
            }
            for a in 0..=n {
                let b = n - a;
                let (ra, rb) = (theta.radix(a), theta.radix(b));
                let target = Radix::new(vec![dm, ra.size(), rb.size()]);
                limits.check("cotrace symmetry target", target.size().saturating_mul(hopf.dim()))?;
                let gens = balancing_relations(bundle, &target, |h, x| {
                    let (u, v) = (ra.decode(x[0]), rb.decode(x[1]));
                    let mut out = Lc::new();
                    for (h1, h2, c) in hopf.coalgebra.comult_basis(h) {
                        for (u2, p) in theta.act(action, *h1, &u) {
                            for (v2, q) in theta.act(action, *h2, &v) {
                                lc_add(&mut out, vec![ra.encode(&u2), rb.encode(&v2)], c * &p * q);
                            }
                        }
                    }
                    out
                });
                let red = reducer(target.size(), &gens);
                let s = sign(a * b);
                let cols = radix
                    .iter()
                    .map(|key| {
                        let (m, th) = (key[0], &key[1..]);
                        let mut lc = Lc::new();
                        for (t1, t2, c) in theta.comult(th) {
                            if t1.len() == b + 1 {
                                for (h, m2, x) in coeffs.coact_basis(m) {
                                    for (z, u) in theta.act(action, *h, t1) {
                                        lc_add(&mut lc, vec![*m2, ra.encode(t2), rb.encode(&z)], c * x * u);
                                    }
                                }
                            }
                            if t1.len() == a + 1 {
                                lc_add(&mut lc, vec![m, ra.encode(t1), rb.encode(t2)], -(&s * c));
                            }
                        }
                        red.reduce_sparse(&encode_lc(&target, &lc))
                    })
                    .collect();
                list.push(("cotrace-symmetry", SparseOp::from_columns(target.size(), cols)));
            }
        }
    }
    Ok(Conditions { list, relations })
}

fn closedness_rows(
    radix: &Radix,
    dm: usize,
    n: usize,
    d: impl Fn(&[usize]) -> Lc,
    lower: impl Fn(usize) -> Radix,
) -> Vec<SparseVec> {
    let mut rows = Vec::new();
    if n == 0 {
        // Degree-zero forms are the algebra itself, so the adjoined unit
        // carries no trace.
        let tilde = radix.dims()[1] - 1;
        for m in 0..dm {
            rows.push(vec![(radix.encode(&[m, tilde]), Rational::one())]);
        }
        return rows;
    }
    for m in 0..dm {
        for t in lower(n - 1).iter() {
            let mut lc = Lc::new();
            for (k, c) in d(&t) {
                lc_add(&mut lc, prepend(m, &k), c);
            }
            rows.push(encode_lc(radix, &lc));
        }
    }
    rows
}

fn reducer(cols: usize, rows: &[SparseVec]) -> RowReducer {
    let mut red = RowReducer::new(cols);
    for r in rows {
        red.push(r);
    }
    red
}

/// Evaluates every defining condition of a closed graded (co)trace.
pub fn trace_checks(bundle: &SymmetryBundle, trace: &TraceElement, limits: &Limits) -> Result<ValidationReport> {
    let conds = conditions(bundle, trace.degree, limits)?;
    if trace.values.len() != trace_radix(bundle, trace.degree).size() {
        return Err(Error::SpecFormat("trace has the wrong number of values".into()));
    }
    let mut report = ValidationReport::default();
    for (name, op) in &conds.list {
        let out = op.apply(&trace.values);
        let witness = out
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| vec![format!("{name} component {i}")]);
        report.push(name, witness);
    }
    Ok(report)
}

/// All closed graded (co)traces of degree `n` as a subspace of the trace
/// index space (for kind C, this contains the balancing relations).
pub fn closed_trace_space(bundle: &SymmetryBundle, n: usize, limits: &Limits) -> Result<Subspace> {
    let conds = conditions(bundle, n, limits)?;
    let mut red = RowReducer::new(trace_radix(bundle, n).size());
    for (_, op) in &conds.list {
        for row in op.rows() {
            red.push(&row);
        }
    }
    Ok(red.kernel())
}

fn cochain_radix(complex: &CyclicComplex, n: usize) -> &Radix {
    &complex.spaces[n].radix
}

/// Drops components with the adjoined unit in slot 0.
fn restrict(complex: &CyclicComplex, n: usize, values: &[Rational]) -> Vec<Rational> {
    let tr = trace_radix(&complex.bundle, n);
    let cr = cochain_radix(complex, n);
    let x = complex.bundle.carrier_dim();
    let mut out = vec![Rational::zero(); cr.size()];
    for (j, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let key = tr.decode(j);
        if key[1] < x {
            out[cr.encode(&key)] = v.clone();
        }
    }
    out
}

/// Extends a cochain by zero on the adjoined-unit components.
fn extend(complex: &CyclicComplex, n: usize, ambient: &[Rational]) -> Vec<Rational> {
    let tr = trace_radix(&complex.bundle, n);
    let cr = cochain_radix(complex, n);
    let mut out = vec![Rational::zero(); tr.size()];
    for (j, v) in ambient.iter().enumerate() {
        if !v.is_zero() {
            out[tr.encode(&cr.decode(j))] = v.clone();
        }
    }
    out
}

/// The closed graded (co)trace of a cyclic cocycle.
pub fn to_trace(complex: &CyclicComplex, phi: &Cochain, limits: &Limits) -> Result<TraceElement> {
    if !complex.is_cyclic_cocycle(phi) {
        return Err(Error::Precondition("cochain is not a cyclic cocycle".into()));
    }
    let n = phi.degree;
    let trace = TraceElement {
        kind: complex.kind(),
        degree: n,
        values: extend(complex, n, &complex.ambient(phi)),
    };
    let report = trace_checks(&complex.bundle, &trace, limits)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::Construction(format!("trace of a cocycle fails {}", bad.name)));
    }
    Ok(trace)
}

/// The cyclic cocycle of a closed graded (co)trace.
pub fn to_cocycle(complex: &CyclicComplex, trace: &TraceElement, limits: &Limits) -> Result<Cochain> {
    if trace.kind != complex.kind() {
        return Err(Error::Precondition("trace and complex have different kinds".into()));
    }
    let report = trace_checks(&complex.bundle, trace, limits)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::Precondition(format!(
            "not a closed graded trace: {} fails",
            bad.name
        )));
    }
    let n = trace.degree;
    let phi = complex.from_ambient(n, &restrict(complex, n, &trace.values))?;
    if !complex.is_cyclic_cocycle(&phi) {
        return Err(Error::Construction(
            "restriction of a closed trace is not a cyclic cocycle".into(),
        ));
    }
    Ok(phi)
}

/// Independent check of the correspondence in degree `n`: the closed traces
/// (modulo balancing relations for kind C) restrict bijectively onto the
/// cyclic cocycles computed from the complex.
pub fn correspondence_gate(complex: &CyclicComplex, n: usize, limits: &Limits) -> Result<()> {
    let bundle = &complex.bundle;
    let conds = conditions(bundle, n, limits)?;
    let size = trace_radix(bundle, n).size();
    let fail = |msg: String| Err(Error::Construction(format!("{} degree {n}: {msg}", bundle.name)));
    for g in &conds.relations {
        for (name, op) in &conds.list {
            if !op.apply_sparse(g).is_empty() {
                return fail(format!("balancing relation violates {name}"));
            }
        }
    }
    let rel_rank = reducer(size, &conds.relations).rank();
    let traces = closed_trace_space(bundle, n, limits)?;
    let z = complex.cyclic_cocycles(n);
    if traces.dim() - rel_rank != z.dim() {
        return fail(format!(
            "{} closed traces modulo {} relations vs {} cyclic cocycles",
            traces.dim(),
            rel_rank,
            z.dim()
        ));
    }
    let mut images = RowReducer::new(complex.spaces[n].dim());
    for v in traces.basis_vectors() {
        let Some(c) = complex.spaces[n].project(&restrict(complex, n, &v)) else {
            return fail("restricted trace is not equivariant".into());
        };
        if !complex.is_cyclic_cocycle(&Cochain {
            degree: n,
            coords: c.clone(),
        }) {
            return fail("restricted trace is not a cyclic cocycle".into());
        }
        images.push(&sparse_from_dense(&c));
    }
    if images.rank() != z.dim() {
        return fail("restriction is not onto the cyclic cocycles".into());
    }
    Ok(())
}
