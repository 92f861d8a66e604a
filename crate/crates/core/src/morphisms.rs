//! Cochain maps attached to inner and co-inner automorphisms, the homotopy
//! `κ` between `Ad_u^*` and the identity, and the matrix maps `i^*`, `Tr`.

use num_traits::{One, Zero};

use crate::cyclic::{coboundary_test, encode_lc, AmbientOps, Cochain, CyclicComplex, SparseOp};
use crate::error::{Error, Result};
use crate::exactla::{is_zero_vec, sign, sparse_from_dense, vec_sub, Rational, SparseVec};
use crate::multilin::{lc_add, Lc, Radix, Space};
use crate::structures::{convolution_inverse, Algebra, Coaction, Kind, Symmetry, SymmetryBundle};

/// Tensor product of per-slot combinations, prefixed by the coefficient
/// index `m`.
fn expand_slots(m: usize, slots: &[SparseVec]) -> Lc {
    let mut partial: Vec<(Vec<usize>, Rational)> = vec![(vec![m], Rational::one())];
    for slot in slots {
        let mut next = Vec::with_capacity(partial.len() * slot.len());
        for (k, x) in &partial {
            for (i, y) in slot {
                let mut nk = k.clone();
                nk.push(*i);
                next.push((nk, x * y));
            }
        }
        partial = next;
    }
    let mut out = Lc::new();
    for (k, c) in partial {
        lc_add(&mut out, k, c);
    }
    out
}

fn unit_sparse(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

fn kind_b_algebra(bundle: &SymmetryBundle) -> Result<(&Algebra, &Coaction)> {
    match &bundle.symmetry {
        Symmetry::ComoduleAlgebra { algebra, coaction } => Ok((algebra, coaction)),
        _ => Err(Error::Precondition(format!(
            "{} is not a comodule algebra",
            bundle.name
        ))),
    }
}

/// An invertible `H`-coinvariant element `u` of a comodule algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantUnit {
    pub u: SparseVec,
    pub u_inv: SparseVec,
}

impl CoinvariantUnit {
    pub fn new(bundle: &SymmetryBundle, u: &[Rational]) -> Result<Self> {
        let (alg, coaction) = kind_b_algebra(bundle)?;
        if u.len() != alg.dim() {
            return Err(Error::SpecFormat(format!(
                "unit needs {} coordinates, got {}",
                alg.dim(),
                u.len()
            )));
        }
        let u = sparse_from_dense(u);
        let mut rho = Lc::new();
        for (b, c) in &u {
            for (h, w, k) in coaction.coact_basis(*b) {
                lc_add(&mut rho, vec![*h, *w], c * k);
            }
        }
        let mut expect = Lc::new();
        for (h, x) in bundle.hopf.algebra.unit_sparse() {
            for (b, c) in &u {
                lc_add(&mut expect, vec![h, *b], &x * c);
            }
        }
        if rho != expect {
            return Err(Error::Precondition("u is not coinvariant".into()));
        }
        let cols: Vec<Vec<Rational>> = (0..alg.dim())
            .map(|j| crate::exactla::dense_from_sparse(alg.dim(), &alg.mul_sparse(&u, &unit_sparse(j))))
            .collect();
        let left = crate::exactla::Matrix::from_columns(alg.dim(), &cols);
        let one = crate::exactla::dense_from_sparse(alg.dim(), &alg.unit_sparse());
        let inv = crate::exactla::solve_linear(&left, &one)
            .ok_or_else(|| Error::Precondition("u is not invertible".into()))?;
        let u_inv = sparse_from_dense(&inv);
        if alg.mul_sparse(&u_inv, &u) != alg.unit_sparse() {
            return Err(Error::Precondition("u has no two-sided inverse".into()));
        }
        Ok(CoinvariantUnit { u, u_inv })
    }
}

/// `Ad_u^*` and `κ` as ambient operators on the cochains of a comodule
/// algebra.
pub struct InnerMaps<'a> {
    complex: &'a CyclicComplex,
    unit: CoinvariantUnit,
    conj: Vec<SparseVec>,
    left_inv: Vec<SparseVec>,
}

impl<'a> InnerMaps<'a> {
    pub fn new(complex: &'a CyclicComplex, unit: &CoinvariantUnit) -> Result<Self> {
        let (alg, _) = kind_b_algebra(&complex.bundle)?;
        let conj = (0..alg.dim())
            .map(|b| alg.mul_sparse(&alg.mul_sparse(&unit.u, &unit_sparse(b)), &unit.u_inv))
            .collect();
        let left_inv = (0..alg.dim())
            .map(|b| alg.mul_sparse(&unit_sparse(b), &unit.u_inv))
            .collect();
        Ok(InnerMaps {
            complex,
            unit: unit.clone(),
            conj,
            left_inv,
        })
    }

    fn radix(&self, n: usize) -> Radix {
        self.complex.spaces[n].radix.clone()
    }

    fn pullback(&self, src: usize, tgt: usize, expand: impl Fn(&[usize]) -> Lc) -> SparseOp {
        let (rs, rt) = (self.radix(src), self.radix(tgt));
        let rows: Vec<SparseVec> = rt.iter().map(|k| encode_lc(&rs, &expand(&k))).collect();
        SparseOp::from_rows(rs.size(), &rows)
    }

    /// `(Ad_u^*φ)(b_0, …, b_n) = φ(ub_0u⁻¹, …, ub_nu⁻¹)` on ambient cochains.
    pub fn ad_op(&self, n: usize) -> SparseOp {
        self.pullback(n, n, |key| {
            let slots: Vec<SparseVec> = key[1..].iter().map(|&b| self.conj[b].clone()).collect();
            expand_slots(key[0], &slots)
        })
    }

    /// `κf(b_0, …, b_{n−1}) = Σ_{i=0}^{n−1} (−1)^{i+1} f(b_0u⁻¹, ub_1u⁻¹, …, ub_iu⁻¹, u, b_{i+1}, …, b_{n−1})`
    /// from degree `n` to `n − 1`; the sign makes `bκ + κb = Ad_u^* − id`.
    pub fn kappa_op(&self, n: usize) -> SparseOp {
        assert!(n >= 1, "κ starts in degree 1");
        self.pullback(n, n - 1, |key| {
            let b = &key[1..];
            let mut out = Lc::new();
            for i in 0..n {
                let mut slots = vec![self.left_inv[b[0]].clone()];
                slots.extend(b[1..=i].iter().map(|&x| self.conj[x].clone()));
                slots.push(self.unit.u.clone());
                slots.extend(b[i + 1..].iter().map(|&x| unit_sparse(x)));
                let s = sign(i + 1);
                for (k, c) in expand_slots(key[0], &slots) {
                    lc_add(&mut out, k, c * &s);
                }
            }
            out
        })
    }

    fn transport(&self, op: &SparseOp, f: &Cochain, degree: usize) -> Result<Cochain> {
        let w = op.apply(&self.complex.ambient(f));
        self.complex.from_ambient(degree, &w)
    }

    pub fn ad_u_pullback(&self, phi: &Cochain) -> Result<Cochain> {
        self.transport(&self.ad_op(phi.degree), phi, phi.degree)
    }

    pub fn kappa_homotopy(&self, f: &Cochain) -> Result<Cochain> {
        if f.degree == 0 {
            return Err(Error::Precondition("κ needs a cochain of degree at least 1".into()));
        }
        self.transport(&self.kappa_op(f.degree), f, f.degree - 1)
    }

    /// Checks `bκ + κb = Ad_u^* − id` on every basis cochain of degree `n`
    /// (ambient operators, restricted to colinear cochains). Returns the
    /// first failing basis index.
    pub fn homotopy_identity(&self, n: usize) -> std::result::Result<(), usize> {
        let ops = AmbientOps::new(&self.complex.bundle).expect("bundle already certified");
        let sp = &self.complex.spaces[n];
        let ad = self.ad_op(n);
        let kb = self.kappa_op(n + 1).compose(&ops.b(n));
        let bk = (n > 0).then(|| ops.b(n - 1).compose(&self.kappa_op(n)));
        for i in 0..sp.dim() {
            let w = sp.lift_basis(i);
            let mut lhs = kb.apply_sparse(&w);
            if let Some(bk) = &bk {
                lhs.extend(bk.apply_sparse(&w));
            }
            let mut rhs = ad.apply_sparse(&w);
            rhs.extend(w.iter().map(|(j, c)| (*j, -c.clone())));
            if crate::exactla::normalize_sparse(lhs) != crate::exactla::normalize_sparse(rhs) {
                return Err(i);
            }
        }
        Ok(())
    }

    /// Whether `Ad_u^*φ − φ` is a cyclic coboundary for each `HC^n`
    /// representative.
    pub fn fixes_classes(&self, n: usize) -> Result<bool> {
        for rep in self.complex.cohomology(n)?.representatives {
            let diff = Cochain {
                degree: n,
                coords: vec_sub(&self.ad_u_pullback(&rep)?.coords, &rep.coords),
            };
            if coboundary_test(self.complex, &diff).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `M_k(B)` with the entrywise coaction; basis `b⊗E_rs` at `b·k² + r·k + s`.
pub fn matrix_bundle(bundle: &SymmetryBundle, k: usize) -> Result<SymmetryBundle> {
    let (alg, coaction) = kind_b_algebra(bundle)?;
    if k == 0 {
        return Err(Error::Precondition("matrix size must be at least 1".into()));
    }
    let kk = k * k;
    let labels = alg
        .space
        .labels
        .iter()
        .flat_map(|b| (0..kk).map(move |e| format!("{b}⊗E{}{}", e / k + 1, e % k + 1)))
        .collect();
    let space = Space::new(format!("M{k}({})", alg.space.name), labels);
    let mut unit = vec![Rational::zero(); alg.dim() * kk];
    for (b, c) in alg.unit_sparse() {
        for r in 0..k {
            unit[b * kk + r * k + r] = c.clone();
        }
    }
    let big = Algebra::from_fn(space.clone(), unit, |i, j| {
        let (b1, e1, b2, e2) = (i / kk, i % kk, j / kk, j % kk);
        if e1 % k != e2 / k {
            return Vec::new();
        }
        let e = (e1 / k) * k + e2 % k;
        alg.mul_basis(b1, b2)
            .iter()
            .map(|(b, c)| (b * kk + e, c.clone()))
            .collect()
    })?;
    let co = Coaction::from_fn(coaction.hopf.clone(), space, |v| {
        coaction
            .coact_basis(v / kk)
            .iter()
            .map(|(h, w, c)| (*h, w * kk + v % kk, c.clone()))
            .collect()
    })?;
    SymmetryBundle::new(
        format!("M{k}({})", bundle.name),
        Symmetry::ComoduleAlgebra {
            algebra: big,
            coaction: co,
        },
        bundle.coeffs.clone(),
    )
}

/// The corner embedding `i(b) = b⊗E_11` and the trace map between the
/// cochains of `B` and of `M_k(B)`.
pub struct MatrixMaps {
    pub base: SymmetryBundle,
    pub matrices: SymmetryBundle,
    pub k: usize,
}

impl MatrixMaps {
    pub fn new(base: &SymmetryBundle, k: usize) -> Result<Self> {
        Ok(MatrixMaps {
            base: base.clone(),
            matrices: matrix_bundle(base, k)?,
            k,
        })
    }

    fn radix(bundle: &SymmetryBundle, n: usize) -> Radix {
        let mut dims = vec![bundle.coeffs.dim()];
        dims.extend(std::iter::repeat_n(bundle.carrier_dim(), n + 1));
        Radix::new(dims)
    }

    /// `(i^*φ)(b_0, …, b_n) = φ(b_0⊗E_11, …, b_n⊗E_11)` on ambient cochains.
    pub fn i_star(&self, n: usize, phi: &[Rational]) -> Vec<Rational> {
        let (small, big) = (Self::radix(&self.base, n), Self::radix(&self.matrices, n));
        let kk = self.k * self.k;
        small
            .iter()
            .map(|key| {
                let mut bk = vec![key[0]];
                bk.extend(key[1..].iter().map(|b| b * kk));
                phi[big.encode(&bk)].clone()
            })
            .collect()
    }

    /// `(Tr φ)(b_0⊗m_0, …, b_n⊗m_n) = tr(m_0⋯m_n) φ(b_0, …, b_n)` on ambient
    /// cochains.
    pub fn tr_map(&self, n: usize, phi: &[Rational]) -> Vec<Rational> {
        let (small, big) = (Self::radix(&self.base, n), Self::radix(&self.matrices, n));
        let (k, kk) = (self.k, self.k * self.k);
        let mut out = vec![Rational::zero(); big.size()];
        let loops = Radix::power(k, n + 1);
        for (j, v) in phi.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let key = small.decode(j);
            // tr(E_{r_0 r_1} E_{r_1 r_2} ⋯ E_{r_n r_0}) = 1
            for r in loops.iter() {
                let mut bk = vec![key[0]];
                for (i, b) in key[1..].iter().enumerate() {
                    bk.push(b * kk + r[i] * k + r[(i + 1) % (n + 1)]);
                }
                out[big.encode(&bk)] = v.clone();
            }
        }
        out
    }

    /// Checks `i^*∘Tr = id` on every basis cochain of `small` in degree
    /// `n` and that `Tr` lands in the cochains of `big`.
    pub fn check_identity(&self, small: &CyclicComplex, big: &CyclicComplex, n: usize) -> Result<bool> {
        for i in 0..small.spaces[n].dim() {
            let mut e = vec![Rational::zero(); small.spaces[n].dim()];
            e[i] = Rational::one();
            let phi = Cochain { degree: n, coords: e };
            let tr = big.from_ambient(n, &self.tr_map(n, &small.ambient(&phi)))?;
            let back = small.from_ambient(n, &self.i_star(n, &big.ambient(&tr)))?;
            if back != phi {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An `H`-linear convolution-invertible functional `χ` on a module
/// coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionUnit {
    pub chi: Vec<Rational>,
    pub chi_inv: Vec<Rational>,
}

impl ConvolutionUnit {
    pub fn new(bundle: &SymmetryBundle, chi: &[Rational]) -> Result<Self> {
        let Symmetry::ModuleCoalgebra { coalgebra, action } = &bundle.symmetry else {
            return Err(Error::Precondition(format!(
                "{} is not a module coalgebra",
                bundle.name
            )));
        };
        if chi.len() != coalgebra.dim() {
            return Err(Error::SpecFormat(format!(
                "χ needs {} values, got {}",
                coalgebra.dim(),
                chi.len()
            )));
        }
        for h in 0..bundle.hopf.dim() {
            for c in 0..coalgebra.dim() {
                let lhs = action
                    .act_basis(h, c)
                    .iter()
                    .fold(Rational::zero(), |acc, (d, x)| acc + x * &chi[*d]);
                if lhs != &bundle.hopf.counit()[h] * &chi[c] {
                    return Err(Error::Precondition(format!(
                        "χ is not H-linear at ({}, {})",
                        bundle.hopf.space().labels[h],
                        coalgebra.space.labels[c]
                    )));
                }
            }
        }
        let chi_inv = convolution_inverse(coalgebra, chi)?;
        Ok(ConvolutionUnit {
            chi: chi.to_vec(),
            chi_inv,
        })
    }

    /// `Ad_χ(c) = χ(c⁽¹⁾) c⁽²⁾ χ⁻¹(c⁽³⁾)` on each basis element.
    pub fn ad(&self, bundle: &SymmetryBundle) -> Vec<SparseVec> {
        let co = bundle.coalgebra().expect("module coalgebra");
        (0..co.dim())
            .map(|c| {
                let mut out = Vec::new();
                for (legs, k) in co.iterated_basis(c, 2) {
                    out.push((legs[1], k * &self.chi[legs[0]] * &self.chi_inv[legs[2]]));
                }
                crate::exactla::normalize_sparse(out)
            })
            .collect()
    }
}

/// `Ad_χ` applied in every tensor slot of `M ⊗ C^{⊗(n+1)}`, on the quotient
/// cochains of a module coalgebra. Fails if the map does not respect the
/// balancing relations.
pub fn ad_chi_pullback(complex: &CyclicComplex, chi: &ConvolutionUnit, y: &Cochain) -> Result<Cochain> {
    if complex.kind() != Kind::C {
        return Err(Error::Precondition("Ad_χ acts on module coalgebra cochains".into()));
    }
    let ad = chi.ad(&complex.bundle);
    let sp = &complex.spaces[y.degree];
    let radix = &sp.radix;
    let cols: Vec<SparseVec> = radix
        .iter()
        .map(|key| {
            let slots: Vec<SparseVec> = key[1..].iter().map(|&c| ad[c].clone()).collect();
            encode_lc(radix, &expand_slots(key[0], &slots))
        })
        .collect();
    let op = SparseOp::from_columns(radix.size(), cols);
    for g in sp.relation_generators() {
        let img = crate::exactla::dense_from_sparse(radix.size(), &op.apply_sparse(g));
        if !sp.is_trivial(&img) {
            return Err(Error::Construction(
                "Ad_χ does not respect the balancing relations".into(),
            ));
        }
    }
    complex.from_ambient(y.degree, &op.apply(&complex.ambient(y)))
}

/// Whether `Ad_χ^* y − y` is a cyclic coboundary for each `HC^n`
/// representative `y`.
pub fn ad_chi_fixes_classes(complex: &CyclicComplex, chi: &ConvolutionUnit, n: usize) -> Result<bool> {
    for rep in complex.cohomology(n)?.representatives {
        let moved = ad_chi_pullback(complex, chi, &rep)?;
        let diff = Cochain {
            degree: n,
            coords: vec_sub(&moved.coords, &rep.coords),
        };
        if !is_zero_vec(&diff.coords) && coboundary_test(complex, &diff).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{q, Limits};
    use crate::fixtures::fixture;

    fn bundle(name: &str) -> SymmetryBundle {
        fixture(name).unwrap().bundle().unwrap().clone()
    }

    fn matrices() -> SymmetryBundle {
        let space = Space::from_strs("M2", &["E11", "E12", "E21", "E22"]);
        let alg = Algebra::from_fn(space, vec![q(1), q(0), q(0), q(1)], |i, j| {
            if i % 2 == j / 2 {
                vec![(2 * (i / 2) + j % 2, q(1))]
            } else {
                Vec::new()
            }
        })
        .unwrap();
        SymmetryBundle::ordinary_comodule("M2", alg)
    }

    #[test]
    fn coinvariants_of_the_regular_coaction_are_scalars() {
        let b = bundle("B=H-kZ2");
        assert!(CoinvariantUnit::new(&b, &[q(2), q(0)]).is_ok());
        assert!(matches!(
            CoinvariantUnit::new(&b, &[q(0), q(1)]),
            Err(Error::Precondition(_))
        ));
        let m = bundle("M2graded");
        assert!(CoinvariantUnit::new(&m, &[q(1), q(0), q(0), q(-1)]).is_ok());
        assert!(matches!(
            CoinvariantUnit::new(&m, &[q(1), q(1), q(0), q(1)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            CoinvariantUnit::new(&m, &[q(1), q(0), q(0), q(0)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trivial_unit_gives_identity_and_null_homotopy() {
        let b = bundle("M2graded");
        let cx = CyclicComplex::new(&b, 3, &Limits::default()).unwrap();
        let u = CoinvariantUnit::new(&b, &[q(1), q(0), q(0), q(1)]).unwrap();
        let maps = InnerMaps::new(&cx, &u).unwrap();
        for n in 0..=2 {
            assert_eq!(maps.ad_op(n), SparseOp::identity(cx.spaces[n].ambient_dim()));
            assert_eq!(maps.homotopy_identity(n), Ok(()));
        }
    }

    #[test]
    fn kappa_in_degree_one_by_hand() {
        let b = matrices();
        let cx = CyclicComplex::new(&b, 2, &Limits::default()).unwrap();
        let u = CoinvariantUnit::new(&b, &[q(1), q(0), q(0), q(-1)]).unwrap();
        let maps = InnerMaps::new(&cx, &u).unwrap();
        let f: Vec<Rational> = (0..16).map(|i| q(i * i - 3 * i + 1)).collect();
        let got = maps.kappa_op(1).apply(&f);
        // κf(b_0) = −f(b_0u⁻¹, u); u = u⁻¹ = E11 − E22 and E_rs u = ±E_rs.
        let sgn = |e: usize| if e.is_multiple_of(2) { q(-1) } else { q(1) };
        for b0 in 0..4 {
            let want = sgn(b0) * (&f[b0 * 4] - &f[b0 * 4 + 3]);
            assert_eq!(got[b0], want, "b_0 = {b0}");
        }
    }

    #[test]
    fn trace_map_of_size_one_is_identity() {
        let b = bundle("B=H-kZ2");
        let mm = MatrixMaps::new(&b, 1).unwrap();
        let phi: Vec<Rational> = (0..8).map(|i| q(i - 2)).collect();
        assert_eq!(mm.tr_map(2, &phi), phi);
        assert_eq!(mm.i_star(2, &phi), phi);
        assert!(mm.tr_map(1, &vec![q(0); 4]).iter().all(Zero::is_zero));
    }

    #[test]
    fn counit_is_the_trivial_convolution_unit() {
        let c = bundle("C=H-sweedler4");
        let eps = c.hopf.counit().to_vec();
        let chi = ConvolutionUnit::new(&c, &eps).unwrap();
        assert_eq!(chi.chi_inv, eps);
        let ad = chi.ad(&c);
        for (i, v) in ad.iter().enumerate() {
            assert_eq!(v, &unit_sparse(i));
        }
        assert!(matches!(
            ConvolutionUnit::new(&c, &[q(1), q(2), q(0), q(0)]),
            Err(Error::Precondition(_))
        ));
    }
}
