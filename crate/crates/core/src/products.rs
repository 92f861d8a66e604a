//! The two cup products: into the cyclic cohomology of the twisted tensor
//! product `A ⋊_H B`, and through the convolution algebra `Hom_H(C, A)`.

use std::sync::Arc;

use itertools::iproduct;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculi::{ConvolutionDg, DualCalculus, PairLc, SmashDg, UniversalCalculus};
use crate::cyclic::{coboundary_test, trace_radix, Cochain, CyclicComplex};
use crate::error::{Error, Result};
use crate::exactla::{
    normalize_sparse, sparse_from_dense, vec_add, vec_sub, Limits, Matrix, Rational, RowReducer, SparseVec, Subspace,
};
use crate::multilin::{tensor_spaces, LinMap, Radix, Space};
use crate::structures::{Action, Algebra, Coalgebra, Hopf, Sayd, Symmetry, SymmetryBundle, Validate, ValidationReport};

/// A coalgebra `C` acting on an algebra `A` through a pairing `C ⊗ A → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraAction {
    pub coalgebra: Coalgebra,
    /// `H` acting on `C`.
    pub coalgebra_action: Action,
    pub algebra: Algebra,
    /// `H` acting on `A`.
    pub algebra_action: Action,
    pub pairing: LinMap,
    table: Vec<SparseVec>,
}

impl CoalgebraAction {
    pub fn new(
        coalgebra: Coalgebra,
        coalgebra_action: Action,
        algebra: Algebra,
        algebra_action: Action,
        pairing: Matrix,
    ) -> Result<Self> {
        let (dc, da) = (coalgebra.dim(), algebra.dim());
        if pairing.rows() != da || pairing.cols() != dc * da {
            return Err(Error::SpecFormat(format!(
                "pairing has shape {}x{}, expected {}x{}",
                pairing.rows(),
                pairing.cols(),
                da,
                dc * da
            )));
        }
        if coalgebra_action.hopf != algebra_action.hopf {
            return Err(Error::SpecFormat("coalgebra action uses two Hopf algebras".into()));
        }
        if coalgebra_action.carrier != coalgebra.space || algebra_action.carrier != algebra.space {
            return Err(Error::SpecFormat("action carriers do not match C and A".into()));
        }
        let table = (0..dc * da)
            .map(|col| crate::exactla::sparse_from_dense(&pairing.column(col)))
            .collect();
        let pairing = LinMap::new(
            tensor_spaces(&[&coalgebra.space, &algebra.space]),
            algebra.space.clone(),
            pairing,
        );
        Ok(CoalgebraAction {
            coalgebra,
            coalgebra_action,
            algebra,
            algebra_action,
            pairing,
            table,
        })
    }

    pub fn hopf(&self) -> &Arc<Hopf> {
        &self.coalgebra_action.hopf
    }

    /// `c(a)` on basis elements.
    pub fn apply(&self, c: usize, a: usize) -> &SparseVec {
        &self.table[c * self.algebra.dim() + a]
    }

    pub fn apply_sparse(&self, c: usize, a: &[(usize, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, x) in a {
            out.extend(self.apply(c, *i).iter().map(|(k, v)| (*k, v * x)));
        }
        normalize_sparse(out)
    }
}

impl Validate for CoalgebraAction {
    fn validate(&self) -> ValidationReport {
        let mut report = self.coalgebra.validate().scoped("coalgebra");
        report.extend(self.coalgebra_action.validate().scoped("coalgebra"));
        report.extend(self.algebra.validate().scoped("algebra"));
        report.extend(self.algebra_action.validate().scoped("algebra"));
        let (cs, as_) = (&self.coalgebra.space, &self.algebra.space);
        let hs = self.hopf().space().clone();
        let label = |spaces: &[&crate::multilin::Space], t: &[usize]| -> Vec<String> {
            t.iter().zip(spaces).map(|(&i, s)| s.labels[i].clone()).collect()
        };
        let alg = &self.algebra;
        let mult = Radix::new(vec![cs.dim(), as_.dim(), as_.dim()]).iter().find(|t| {
            let lhs = self.apply_sparse(t[0], alg.mul_basis(t[1], t[2]));
            let mut rhs = Vec::new();
            for (c1, c2, k) in self.coalgebra.comult_basis(t[0]) {
                let p = alg.mul_sparse(self.apply(*c1, t[1]), self.apply(*c2, t[2]));
                rhs.extend(p.into_iter().map(|(i, v)| (i, v * k)));
            }
            lhs != normalize_sparse(rhs)
        });
        let unit = alg.unit_sparse();
        let unit_fail = (0..cs.dim()).find(|&c| {
            let expect: SparseVec = unit.iter().map(|(i, v)| (*i, v * &self.coalgebra.counit[c])).collect();
            self.apply_sparse(c, &unit) != normalize_sparse(expect)
        });
        let equiv = Radix::new(vec![hs.dim(), cs.dim(), as_.dim()]).iter().find(|t| {
            let mut lhs = Vec::new();
            for (c, v) in self.coalgebra_action.act_basis(t[0], t[1]) {
                lhs.extend(self.apply(*c, t[2]).iter().map(|(i, x)| (*i, x * v)));
            }
            let rhs = self
                .algebra_action
                .act_sparse(&[(t[0], Rational::one())], self.apply(t[1], t[2]));
            normalize_sparse(lhs) != rhs
        });
        let push = |report: &mut ValidationReport, name: &str, w: Option<Vec<String>>| {
            report.checks.push(crate::structures::AxiomCheck {
                scope: String::new(),
                name: name.to_string(),
                passed: w.is_none(),
                witness: w,
            })
        };
        push(
            &mut report,
            "coalgebra-action-multiplicativity",
            mult.map(|t| label(&[cs, as_, as_], &t)),
        );
        push(
            &mut report,
            "coalgebra-action-unit",
            unit_fail.map(|c| vec![cs.labels[c].clone()]),
        );
        push(
            &mut report,
            "coalgebra-action-equivariance",
            equiv.map(|t| label(&[&hs, cs, as_], &t)),
        );
        report
    }
}

/// The twisted tensor product `A ⋊_H B` of a module algebra and a comodule
/// algebra: `(a⊗b)(a'⊗b') = a (b⁽⁻¹⁾·a') ⊗ b⁽⁰⁾b'`, basis `a#b` at `a·dim B + b`.
pub fn smash_algebra(a: &SymmetryBundle, b: &SymmetryBundle) -> Result<Algebra> {
    let (
        Symmetry::ModuleAlgebra { algebra: alg_a, action },
        Symmetry::ComoduleAlgebra {
            algebra: alg_b,
            coaction,
        },
    ) = (&a.symmetry, &b.symmetry)
    else {
        return Err(Error::Precondition(
            "smash product needs a module algebra and a comodule algebra".into(),
        ));
    };
    if a.hopf != b.hopf {
        return Err(Error::Precondition("smash product needs one Hopf algebra".into()));
    }
    let db = alg_b.dim();
    let labels = iproduct!(&alg_a.space.labels, &alg_b.space.labels)
        .map(|(x, y)| format!("{x}#{y}"))
        .collect();
    let space = Space::new(format!("{}#{}", alg_a.space.name, alg_b.space.name), labels);
    let mut unit = vec![Rational::zero(); alg_a.dim() * db];
    for (i, x) in alg_a.unit_sparse() {
        for (j, y) in alg_b.unit_sparse() {
            unit[i * db + j] = &x * y;
        }
    }
    let alg = Algebra::from_fn(space, unit, |i, j| {
        let (a1, b1, a2, b2) = (i / db, i % db, j / db, j % db);
        let mut out = Vec::new();
        for (h, bb, c) in coaction.coact_basis(b1) {
            let ha = action.act_basis(*h, a2);
            let left = alg_a.mul_sparse(&[(a1, Rational::one())], ha);
            for (x, u) in &left {
                for (y, v) in alg_b.mul_basis(*bb, b2) {
                    out.push((x * db + y, c * u * v));
                }
            }
        }
        normalize_sparse(out)
    })?;
    let report = alg.validate();
    if let Some(bad) = report.failures().next() {
        return Err(Error::Construction(format!("smash product fails {}", bad.name)));
    }
    Ok(alg)
}

/// Random cyclic cochain `η` in degree `n − 1`, returned as `b η`.
fn random_coboundary(cx: &CyclicComplex, n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    if n == 0 {
        return vec![Rational::zero(); cx.spaces[0].dim()];
    }
    let cyc = &cx.cyclic[n - 1];
    let y: Vec<Rational> = (0..cyc.dim())
        .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        .collect();
    cx.b[n - 1].apply(&cyc.from_coordinates(&y))
}

fn pair_value(values: &[Rational], radix: &Radix, m: usize, t: &[usize]) -> Rational {
    let mut key = vec![m];
    key.extend_from_slice(t);
    values[radix.encode(&key)].clone()
}

/// Extends an ambient cochain by zero on adjoined-unit components.
fn extend_by_zero(bundle: &SymmetryBundle, n: usize, ambient: &[Rational]) -> Vec<Rational> {
    let tr = trace_radix(bundle, n);
    let mut dims = vec![bundle.coeffs.dim()];
    dims.extend(std::iter::repeat_n(bundle.carrier_dim(), n + 1));
    let cr = Radix::new(dims);
    let mut out = vec![Rational::zero(); tr.size()];
    for (j, v) in ambient.iter().enumerate() {
        if !v.is_zero() {
            out[tr.encode(&cr.decode(j))] = v.clone();
        }
    }
    out
}

/// The first cup product `HC^q_H(A, M) ⊗ HC^p_H(B, M) → HC^{p+q}(A ⋊_H B)`,
/// `(ψ ⊔ φ)(ξ_0, .., ξ_n) = ∫''(ξ_0 dξ_1 ⋯ dξ_n)` where
/// `∫''(ω ⊗ γ) = ∫_ψ(∫_φ γ ⊗ ω)` on the `(q, p)` component.
pub struct FirstCup {
    pub a: CyclicComplex,
    pub b: CyclicComplex,
    pub smash: SmashDg,
    /// Ordinary complex of `A ⋊_H B`.
    pub target: CyclicComplex,
}

impl FirstCup {
    pub fn new(a: &SymmetryBundle, b: &SymmetryBundle, max_total: usize, limits: &Limits) -> Result<Self> {
        if a.coeffs != b.coeffs {
            return Err(Error::Precondition("both factors need the same coefficients".into()));
        }
        let alg = smash_algebra(a, b)?;
        let name = format!("{}#{}", a.name, b.name);
        let target = CyclicComplex::new(&SymmetryBundle::ordinary(name, alg), max_total + 1, limits)?;
        let (Some(action), Some(coaction)) = (a.action(), b.coaction()) else {
            return Err(Error::Precondition(
                "smash product needs a module algebra and a comodule algebra".into(),
            ));
        };
        let omega = UniversalCalculus::new(a.algebra().unwrap().clone(), max_total, limits)?;
        let gamma = UniversalCalculus::new(b.algebra().unwrap().clone(), max_total, limits)?;
        let smash = SmashDg::new(omega, action.clone(), gamma, coaction.clone())?;
        Ok(FirstCup {
            a: CyclicComplex::new(a, max_total + 1, limits)?,
            b: CyclicComplex::new(b, max_total + 1, limits)?,
            smash,
            target,
        })
    }

    /// Cochain-level formula on ambient representatives of `ψ` (degree `q`)
    /// and `φ` (degree `p`); returns the ambient values on `(A ⋊ B)^{⊗(p+q+1)}`.
    pub fn cup_raw(&self, psi: &[Rational], q: usize, phi: &[Rational], p: usize) -> Vec<Rational> {
        let n = p + q;
        let (ab, bb) = (&self.a.bundle, &self.b.bundle);
        let psi_tr = extend_by_zero(ab, q, psi);
        let phi_tr = extend_by_zero(bb, p, phi);
        let (ra, rb) = (trace_radix(ab, q), trace_radix(bb, p));
        let db = bb.carrier_dim();
        let dm = ab.coeffs.dim();
        let out_radix = &self.target.spaces[n].radix;
        let mut out = vec![Rational::zero(); out_radix.size()];
        for key in out_radix.iter() {
            let xi = |i: usize| (vec![key[i + 1] / db], vec![key[i + 1] % db]);
            let mut cur = PairLc::new();
            cur.insert(xi(0), Rational::one());
            for i in 1..=n {
                cur = self.smash.mul_lc(&cur, &self.smash.d(&xi(i)));
            }
            let mut val = Rational::zero();
            for ((w, g), c) in &cur {
                if w.len() != q + 1 || g.len() != p + 1 {
                    continue;
                }
                for m in 0..dm {
                    let f = pair_value(&phi_tr, &rb, m, g);
                    if !f.is_zero() {
                        val += c * f * pair_value(&psi_tr, &ra, m, w);
                    }
                }
            }
            out[out_radix.encode(&key)] = val;
        }
        out
    }

    /// `ψ ⊔ φ` for cyclic cocycles `ψ` of `A` and `φ` of `B`.
    pub fn cup(&self, psi: &Cochain, phi: &Cochain) -> Result<Cochain> {
        for (cx, c, side) in [(&self.a, psi, "A"), (&self.b, phi, "B")] {
            if !cx.is_cyclic_cocycle(c) {
                return Err(Error::Precondition(format!("{side} input is not a cyclic cocycle")));
            }
        }
        let n = psi.degree + phi.degree;
        if n >= self.target.top() {
            return Err(Error::Precondition(format!(
                "total degree {n} beyond the prepared range"
            )));
        }
        let raw = self.cup_raw(&self.a.ambient(psi), psi.degree, &self.b.ambient(phi), phi.degree);
        let out = self.target.from_ambient(n, &raw)?;
        if !self.target.is_cyclic_cocycle(&out) {
            return Err(Error::Construction("first cup product is not a cyclic cocycle".into()));
        }
        Ok(out)
    }

    /// Perturbs both inputs by random cyclic coboundaries `trials` times and
    /// checks that the product changes by a cyclic coboundary.
    pub fn class_invariance_check(&self, psi: &Cochain, phi: &Cochain, seed: u64, trials: usize) -> Result<bool> {
        let base = self.cup(psi, phi)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let dpsi = random_coboundary(&self.a, psi.degree, &mut rng);
            let dphi = random_coboundary(&self.b, phi.degree, &mut rng);
            let psi2 = Cochain {
                degree: psi.degree,
                coords: vec_add(&psi.coords, &dpsi),
            };
            let phi2 = Cochain {
                degree: phi.degree,
                coords: vec_add(&phi.coords, &dphi),
            };
            let diff = Cochain {
                degree: base.degree,
                coords: vec_sub(&self.cup(&psi2, &phi2)?.coords, &base.coords),
            };
            if coboundary_test(&self.target, &diff).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Hom_H(C, A)`: H-linear maps as a subspace of `Hom(C, A)`, where the map
/// `f` has coordinate `c·dim A + a` for the `a`-component of `f(c)`.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    pub subspace: Subspace,
    dc: usize,
    da: usize,
}

impl HomAlgebra {
    pub fn new(action: &CoalgebraAction) -> Self {
        let (dc, da) = (action.coalgebra.dim(), action.algebra.dim());
        let mut red = RowReducer::new(dc * da);
        for h in 0..action.hopf().dim() {
            for c in 0..dc {
                for a in 0..da {
                    // (f(h·c))_a − (h·f(c))_a
                    let mut row = Vec::new();
                    for (c2, u) in action.coalgebra_action.act_basis(h, c) {
                        row.push((c2 * da + a, u.clone()));
                    }
                    for a2 in 0..da {
                        for (a3, v) in action.algebra_action.act_basis(h, a2) {
                            if *a3 == a {
                                row.push((c * da + a2, -v.clone()));
                            }
                        }
                    }
                    red.push(&normalize_sparse(row));
                }
            }
        }
        HomAlgebra {
            subspace: red.kernel(),
            dc,
            da,
        }
    }

    pub fn contains(&self, f: &[Rational]) -> bool {
        self.subspace.contains_vector(f)
    }

    /// `(f ∗ g)(c) = f(c⁽¹⁾) g(c⁽²⁾)`.
    pub fn convolve(&self, action: &CoalgebraAction, f: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let da = self.da;
        let mut out = vec![Rational::zero(); self.dc * da];
        for c in 0..self.dc {
            for (c1, c2, k) in action.coalgebra.comult_basis(c) {
                let fc = sparse_from_dense(&f[c1 * da..(c1 + 1) * da]);
                let gc = sparse_from_dense(&g[c2 * da..(c2 + 1) * da]);
                for (a, v) in action.algebra.mul_sparse(&fc, &gc) {
                    out[c * da + a] += k * v;
                }
            }
        }
        out
    }

    /// The convolution unit `c ↦ ε(c) 1`.
    pub fn unit(&self, action: &CoalgebraAction) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dc * self.da];
        for c in 0..self.dc {
            for (a, v) in action.algebra.unit_sparse() {
                out[c * self.da + a] = &action.coalgebra.counit[c] * v;
            }
        }
        out
    }

    /// `e(a) = (c ↦ c(a))`.
    pub fn embed(&self, action: &CoalgebraAction, a: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dc * self.da];
        for c in 0..self.dc {
            for (x, v) in action.apply_sparse(c, a) {
                out[c * self.da + x] = v;
            }
        }
        out
    }

    /// Certifies that `e` lands in `Hom_H(C, A)` and is a unital algebra map.
    pub fn certify_embedding(&self, action: &CoalgebraAction) -> Result<()> {
        let alg = &action.algebra;
        let e = |i: usize| self.embed(action, &[(i, Rational::one())]);
        for i in 0..alg.dim() {
            if !self.contains(&e(i)) {
                return Err(Error::Construction(format!(
                    "e({}) is not H-linear",
                    alg.space.labels[i]
                )));
            }
            for j in 0..alg.dim() {
                if self.embed(action, alg.mul_basis(i, j)) != self.convolve(action, &e(i), &e(j)) {
                    return Err(Error::Construction(format!(
                        "e is not multiplicative at ({}, {})",
                        alg.space.labels[i], alg.space.labels[j]
                    )));
                }
            }
        }
        if self.embed(action, &alg.unit_sparse()) != self.unit(action) {
            return Err(Error::Construction("e is not unital".into()));
        }
        Ok(())
    }
}

/// The second cup product `HC^p_H(C, M) ⊗ HC^q_H(A, M) → HC^{p+q}(A)` of a
/// coalgebra action, `(x # ψ)(a_0, .., a_n) = ∫'(e(a_0) ∗ de(a_1) ∗ ⋯)` on the
/// `(Θ_p, Ω^q)` component, where `∫' f = Σ x[m,θ] f[θ,r] ∫_ψ[m,r]`.
pub struct SecondCup {
    pub action: CoalgebraAction,
    pub c: CyclicComplex,
    pub a: CyclicComplex,
    pub hom: HomAlgebra,
    pub conv: ConvolutionDg,
    /// Ordinary complex of `A`.
    pub target: CyclicComplex,
}

impl SecondCup {
    pub fn new(action: &CoalgebraAction, coeffs: &Sayd, max_total: usize, limits: &Limits) -> Result<Self> {
        if coeffs.hopf() != action.hopf() {
            return Err(Error::Precondition("coefficients use a different Hopf algebra".into()));
        }
        let c_bundle = SymmetryBundle::new(
            "C",
            Symmetry::ModuleCoalgebra {
                coalgebra: action.coalgebra.clone(),
                action: action.coalgebra_action.clone(),
            },
            coeffs.clone(),
        )?;
        let a_bundle = SymmetryBundle::new(
            "A",
            Symmetry::ModuleAlgebra {
                algebra: action.algebra.clone(),
                action: action.algebra_action.clone(),
            },
            coeffs.clone(),
        )?;
        let hom = HomAlgebra::new(action);
        hom.certify_embedding(action)?;
        let theta = DualCalculus::new(action.coalgebra.clone(), max_total, limits)?;
        let omega = UniversalCalculus::new(action.algebra.clone(), max_total, limits)?;
        Ok(SecondCup {
            action: action.clone(),
            c: CyclicComplex::new(&c_bundle, max_total + 1, limits)?,
            a: CyclicComplex::new(&a_bundle, max_total + 1, limits)?,
            hom,
            conv: ConvolutionDg::new(theta, omega),
            target: CyclicComplex::new(
                &SymmetryBundle::ordinary("A", action.algebra.clone()),
                max_total + 1,
                limits,
            )?,
        })
    }

    /// `e(a)` for a basis element, as matrix units `(c) ↦ (r)`.
    pub fn e(&self, a: usize) -> PairLc {
        let mut out = PairLc::new();
        for c in 0..self.action.coalgebra.dim() {
            for (r, v) in self.action.apply(c, a) {
                out.insert((vec![c], vec![*r]), v.clone());
            }
        }
        out
    }

    /// Cochain-level formula on ambient representatives of `x` (degree `p`)
    /// and `ψ` (degree `q`); returns the ambient values on `A^{⊗(p+q+1)}`.
    pub fn cup_raw(&self, x: &[Rational], p: usize, psi: &[Rational], q: usize) -> Vec<Rational> {
        let n = p + q;
        let x_tr = extend_by_zero(&self.c.bundle, p, x);
        let psi_tr = extend_by_zero(&self.a.bundle, q, psi);
        let (rx, rp) = (trace_radix(&self.c.bundle, p), trace_radix(&self.a.bundle, q));
        let dm = self.c.bundle.coeffs.dim();
        let es: Vec<PairLc> = (0..self.action.algebra.dim()).map(|a| self.e(a)).collect();
        let des: Vec<PairLc> = es.iter().map(|e| self.conv.d_lc(e)).collect();
        let out_radix = &self.target.spaces[n].radix;
        let mut out = vec![Rational::zero(); out_radix.size()];
        for key in out_radix.iter() {
            let mut cur = es[key[1]].clone();
            for i in 1..=n {
                cur = self.conv.mul_lc(&cur, &des[key[i + 1]]);
            }
            let mut val = Rational::zero();
            for ((s, r), c) in &cur {
                if s.len() != p + 1 || r.len() != q + 1 {
                    continue;
                }
                for m in 0..dm {
                    let xv = pair_value(&x_tr, &rx, m, s);
                    if !xv.is_zero() {
                        val += c * xv * pair_value(&psi_tr, &rp, m, r);
                    }
                }
            }
            out[out_radix.encode(&key)] = val;
        }
        out
    }

    /// Closed form of `cup_raw` for `p = q = 1`, evaluated directly:
    /// `Σ x[m,c_0,c_1] (ψ(m ⊗ c_0⁽¹⁾(a_0) ⊗ c_0⁽²⁾(a_1)c_1(a_2)) − ψ(m ⊗ c_0(a_0)c_1⁽¹⁾(a_1) ⊗ c_1⁽²⁾(a_2)))`.
    pub fn closed_form_one_one(&self, x: &[Rational], psi: &[Rational]) -> Vec<Rational> {
        let act = &self.action;
        let (alg, co) = (&act.algebra, &act.coalgebra);
        let (dc, da, dm) = (co.dim(), alg.dim(), self.c.bundle.coeffs.dim());
        let xr = Radix::new(vec![dm, dc, dc]);
        let pr = Radix::new(vec![dm, da, da]);
        let eval = |m: usize, u: &[(usize, Rational)], v: &[(usize, Rational)]| -> Rational {
            let mut s = Rational::zero();
            for (i, a) in u {
                for (j, b) in v {
                    s += a * b * &psi[pr.encode(&[m, *i, *j])];
                }
            }
            s
        };
        let out_radix = Radix::new(vec![1, da, da, da]);
        let mut out = vec![Rational::zero(); out_radix.size()];
        for key in out_radix.iter() {
            let (a0, a1, a2) = (key[1], key[2], key[3]);
            let mut val = Rational::zero();
            for (m, c0, c1) in iproduct!(0..dm, 0..dc, 0..dc) {
                let xv = &x[xr.encode(&[m, c0, c1])];
                if xv.is_zero() {
                    continue;
                }
                for (s1, s2, k) in co.comult_basis(c0) {
                    let right = alg.mul_sparse(act.apply(*s2, a1), act.apply(c1, a2));
                    val += xv * k * eval(m, act.apply(*s1, a0), &right);
                }
                for (t1, t2, k) in co.comult_basis(c1) {
                    let left = alg.mul_sparse(act.apply(c0, a0), act.apply(*t1, a1));
                    val -= xv * k * eval(m, &left, act.apply(*t2, a2));
                }
            }
            out[out_radix.encode(&key)] = val;
        }
        out
    }

    /// `x # ψ` for cyclic cocycles `x` of `C` and `ψ` of `A`.
    pub fn cup(&self, x: &Cochain, psi: &Cochain) -> Result<Cochain> {
        for (cx, c, side) in [(&self.c, x, "C"), (&self.a, psi, "A")] {
            if !cx.is_cyclic_cocycle(c) {
                return Err(Error::Precondition(format!("{side} input is not a cyclic cocycle")));
            }
        }
        let n = x.degree + psi.degree;
        if n >= self.target.top() {
            return Err(Error::Precondition(format!(
                "total degree {n} beyond the prepared range"
            )));
        }
        let raw = self.cup_raw(&self.c.ambient(x), x.degree, &self.a.ambient(psi), psi.degree);
        let out = self.target.from_ambient(n, &raw)?;
        if !self.target.is_cyclic_cocycle(&out) {
            return Err(Error::Construction("second cup product is not a cyclic cocycle".into()));
        }
        Ok(out)
    }

    /// Perturbs both inputs by random cyclic coboundaries and checks that
    /// the product changes by a cyclic coboundary.
    pub fn class_invariance_check(&self, x: &Cochain, psi: &Cochain, seed: u64, trials: usize) -> Result<bool> {
        let base = self.cup(x, psi)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let dx = random_coboundary(&self.c, x.degree, &mut rng);
            let dpsi = random_coboundary(&self.a, psi.degree, &mut rng);
            let x2 = Cochain {
                degree: x.degree,
                coords: vec_add(&x.coords, &dx),
            };
            let psi2 = Cochain {
                degree: psi.degree,
                coords: vec_add(&psi.coords, &dpsi),
            };
            let diff = Cochain {
                degree: base.degree,
                coords: vec_sub(&self.cup(&x2, &psi2)?.coords, &base.coords),
            };
            if coboundary_test(&self.target, &diff).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
