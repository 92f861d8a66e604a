//! Curated example structures: small group algebras, Sweedler's algebra,
//! module/comodule algebras and module coalgebras over them, SAYD
//! coefficients, and single-entry mutants that must fail validation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{q, Matrix, Rational};
use crate::multilin::Space;
use crate::products::CoalgebraAction;
use crate::structures::{
    Action, Algebra, Coaction, Coalgebra, Hopf, Sayd, Symmetry, SymmetryBundle, Validate, ValidationReport,
};

/// Any structure the catalog can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Hopf(Arc<Hopf>),
    Sayd(Sayd),
    Bundle(SymmetryBundle),
    CoalgebraAction(CoalgebraAction),
}

impl Payload {
    pub fn validate(&self) -> ValidationReport {
        match self {
            Payload::Hopf(h) => h.validate(),
            Payload::Sayd(m) => m.validate(),
            Payload::Bundle(b) => b.validate(),
            Payload::CoalgebraAction(a) => a.validate(),
        }
    }

    pub fn hopf(&self) -> &Arc<Hopf> {
        match self {
            Payload::Hopf(h) => h,
            Payload::Sayd(m) => m.hopf(),
            Payload::Bundle(b) => &b.hopf,
            Payload::CoalgebraAction(a) => a.hopf(),
        }
    }

    pub fn as_bundle(&self) -> Option<&SymmetryBundle> {
        match self {
            Payload::Bundle(b) => Some(b),
            _ => None,
        }
    }
}

/// Recorded expectations for a catalog entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    /// `None` for valid fixtures; the axiom a mutant is built to break.
    pub failing_axiom: Option<&'static str>,
    /// Hand-derived HC dimensions in degrees 0, 1, … where known.
    pub hc_dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureBundle {
    pub name: String,
    pub payload: Payload,
    pub expected: Expected,
}

impl FixtureBundle {
    pub fn bundle(&self) -> Result<&SymmetryBundle> {
        self.payload
            .as_bundle()
            .ok_or_else(|| Error::Precondition(format!("fixture {} is not a symmetry bundle", self.name)))
    }

    pub fn is_mutant(&self) -> bool {
        self.expected.failing_axiom.is_some()
    }
}

fn group_algebra(
    name: &str,
    labels: &[&str],
    mul: impl Fn(usize, usize) -> usize,
    inv: impl Fn(usize) -> usize,
) -> Hopf {
    let n = labels.len();
    let space = Space::from_strs(name, labels);
    let mut unit = vec![q(0); n];
    unit[0] = q(1);
    let algebra = Algebra::from_fn(space.clone(), unit, |i, j| vec![(mul(i, j), q(1))]).unwrap();
    let coalgebra = Coalgebra::from_fn(space, vec![q(1); n], |i| vec![(i, i, q(1))]).unwrap();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        s[(inv(i), i)] = q(1);
    }
    Hopf::new(algebra, coalgebra, s).unwrap()
}

/// Group algebra of `Z/n` with basis `1, g, g2, …`.
pub fn cyclic_group(n: usize) -> Hopf {
    let labels: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{}", k),
        })
        .collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    group_algebra(&format!("kZ{}", n), &refs, |i, j| (i + j) % n, |i| (n - i) % n)
}

/// Permutations of three points, in the order e, a=(01), b=(12), c=(02), r=(012), r2=(021).
const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn s3_index(p: [usize; 3]) -> usize {
    S3.iter().position(|q| *q == p).unwrap()
}

/// Group algebra of the symmetric group on three letters.
pub fn symmetric_group3() -> Hopf {
    group_algebra(
        "kS3",
        &["e", "a", "b", "c", "r", "r2"],
        |i, j| {
            let (p, q) = (S3[i], S3[j]);
            s3_index([p[q[0]], p[q[1]], p[q[2]]])
        },
        |i| {
            let p = S3[i];
            let mut inv = [0; 3];
            for k in 0..3 {
                inv[p[k]] = k;
            }
            s3_index(inv)
        },
    )
}

/// Sweedler's four-dimensional Hopf algebra, basis `1, g, x, gx`.
pub fn sweedler4() -> Hopf {
    let space = Space::from_strs("sweedler4", &["1", "g", "x", "gx"]);
    // basis index = 2b + a for g^a x^b
    let algebra = Algebra::from_fn(space.clone(), vec![q(1), q(0), q(0), q(0)], |i, j| {
        let (a, b) = (i % 2, i / 2);
        let (c, d) = (j % 2, j / 2);
        if b + d > 1 {
            return Vec::new();
        }
        let s = if b * c == 1 { q(-1) } else { q(1) };
        vec![(2 * (b + d) + (a + c) % 2, s)]
    })
    .unwrap();
    let coalgebra = Coalgebra::from_fn(space, vec![q(1), q(1), q(0), q(0)], |i| match i {
        0 => vec![(0, 0, q(1))],
        1 => vec![(1, 1, q(1))],
        2 => vec![(2, 0, q(1)), (1, 2, q(1))],
        _ => vec![(3, 1, q(1)), (0, 3, q(1))],
    })
    .unwrap();
    let s = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    Hopf::new(algebra, coalgebra, s).unwrap()
}

fn one_dim(hopf: &Arc<Hopf>, delta: &[Rational], sigma: &[Rational]) -> Sayd {
    let space = Space::from_strs("M", &["m"]);
    Sayd::new(
        Action::by_character(hopf.clone(), space.clone(), delta).unwrap(),
        Coaction::by_grouplike(hopf.clone(), space, sigma).unwrap(),
    )
    .unwrap()
}

fn basis_vec(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![q(0); dim];
    v[i] = q(1);
    v
}

/// `k[x]/(x² − 1)` with `g·x = −x`.
fn sign_algebra(hopf: &Arc<Hopf>) -> (Algebra, Action) {
    let space = Space::from_strs("signA", &["1", "x"]);
    let algebra = Algebra::from_fn(space.clone(), vec![q(1), q(0)], |i, j| vec![((i + j) % 2, q(1))]).unwrap();
    let action = Action::from_fn(hopf.clone(), space, |h, v| {
        let s = if h == 1 && v == 1 { q(-1) } else { q(1) };
        vec![(v, s)]
    })
    .unwrap();
    (algebra, action)
}

/// The ground field as an algebra.
fn ground_algebra() -> Algebra {
    Algebra::from_fn(Space::from_strs("k", &["1"]), vec![q(1)], |_, _| vec![(0, q(1))]).unwrap()
}

/// Functions on `Z/3` (idempotent basis) with the translation action of `kZ3`.
fn functions_z3(hopf: &Arc<Hopf>) -> (Algebra, Action) {
    let space = Space::from_strs("funZ3", &["p0", "p1", "p2"]);
    let algebra = Algebra::from_fn(space.clone(), vec![q(1), q(1), q(1)], |i, j| {
        if i == j {
            vec![(i, q(1))]
        } else {
            Vec::new()
        }
    })
    .unwrap();
    let action = Action::from_fn(hopf.clone(), space, |h, v| vec![((v + h) % 3, q(1))]).unwrap();
    (algebra, action)
}

/// `H` acting on itself by the adjoint action `h·a = h⁽¹⁾ a S(h⁽²⁾)`.
fn adjoint_module_algebra(hopf: &Arc<Hopf>) -> (Algebra, Action) {
    let h2 = hopf.clone();
    let action = Action::from_fn(hopf.clone(), hopf.space().clone(), move |h, a| {
        let alg = &h2.algebra;
        let mut out = Vec::new();
        for (x, y, c) in h2.coalgebra.comult_basis(h) {
            let xa = alg.mul_basis(*x, a);
            let p = alg.mul_sparse(xa, &h2.antipode_basis(*y));
            out.extend(p.into_iter().map(|(k, v)| (k, v * c)));
        }
        crate::exactla::normalize_sparse(out)
    })
    .unwrap();
    (hopf.algebra.clone(), action)
}

/// `H` acting on itself by left multiplication.
fn regular_module(hopf: &Arc<Hopf>) -> Action {
    let h2 = hopf.clone();
    Action::from_fn(hopf.clone(), hopf.space().clone(), move |h, c| {
        h2.algebra.mul_basis(h, c).clone()
    })
    .unwrap()
}

/// 2×2 matrices over `k`, graded by `kZ2` via `E_ij ↦ g^{i+j} ⊗ E_ij`.
fn graded_matrices(hopf: &Arc<Hopf>) -> (Algebra, Coaction) {
    let space = Space::from_strs("M2", &["E11", "E12", "E21", "E22"]);
    let algebra = Algebra::from_fn(space.clone(), vec![q(1), q(0), q(0), q(1)], |i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        if b == c {
            vec![(2 * a + d, q(1))]
        } else {
            Vec::new()
        }
    })
    .unwrap();
    let coaction = Coaction::from_fn(hopf.clone(), space, |v| vec![(((v / 2) + (v % 2)) % 2, v, q(1))]).unwrap();
    (algebra, coaction)
}

fn bundle(name: &str, symmetry: Symmetry, coeffs: Sayd) -> SymmetryBundle {
    SymmetryBundle::new(name, symmetry, coeffs).unwrap()
}

fn kind_a(name: &str, pair: (Algebra, Action), coeffs: Sayd) -> SymmetryBundle {
    bundle(
        name,
        Symmetry::ModuleAlgebra {
            algebra: pair.0,
            action: pair.1,
        },
        coeffs,
    )
}

fn kind_b(name: &str, pair: (Algebra, Coaction), coeffs: Sayd) -> SymmetryBundle {
    bundle(
        name,
        Symmetry::ComoduleAlgebra {
            algebra: pair.0,
            coaction: pair.1,
        },
        coeffs,
    )
}

fn kind_c(name: &str, hopf: &Arc<Hopf>, coeffs: Sayd) -> SymmetryBundle {
    bundle(
        name,
        Symmetry::ModuleCoalgebra {
            coalgebra: hopf.coalgebra.clone(),
            action: regular_module(hopf),
        },
        coeffs,
    )
}

/// `C = kZ2` acting on `signA` through the module structure, `c(a) = c·a`.
pub fn sign_coalgebra_action() -> CoalgebraAction {
    let h = Arc::new(cyclic_group(2));
    let (algebra, action) = sign_algebra(&h);
    let module_coalgebra = regular_module(&h);
    let pairing = action.act.matrix.clone();
    CoalgebraAction::new(h.coalgebra.clone(), module_coalgebra, algebra, action, pairing).unwrap()
}

/// Names of the valid (non-mutant) catalog entries.
pub const VALID: &[&str] = &[
    "k",
    "kZ2",
    "kZ3",
    "kS3",
    "sweedler4",
    "Mtriv",
    "Msigma",
    "Mdelta",
    "Msigma-sweedler4",
    "groundA",
    "signA",
    "signA-Msigma",
    "signA-Mdelta",
    "funZ3",
    "adjoint-sweedler4",
    "B=H-kZ2",
    "B=H-kZ2-Mdelta",
    "B=H-kZ3",
    "M2graded",
    "C=H-kZ2",
    "C=H-kZ2-Msigma",
    "C=H-kZ3",
    "C=H-kS3",
    "C=H-sweedler4",
    "signA-action",
];

/// Names of the mutants shipped in the catalog.
pub const MUTANTS: &[&str] = &["kZ2-badcoassoc", "Mtriv-badAYD"];

/// Every catalog name, valid fixtures first.
pub fn catalog() -> Vec<&'static str> {
    VALID.iter().chain(MUTANTS).copied().collect()
}

/// Looks up a catalog entry.
pub fn fixture(name: &str) -> Result<FixtureBundle> {
    let k = || Arc::new(Hopf::trivial());
    let z2 = || Arc::new(cyclic_group(2));
    let z3 = || Arc::new(cyclic_group(3));
    let valid = |payload| {
        Ok(FixtureBundle {
            name: name.to_string(),
            payload,
            expected: Expected::default(),
        })
    };
    let with_dims = |payload, dims: &[usize]| {
        Ok(FixtureBundle {
            name: name.to_string(),
            payload,
            expected: Expected {
                failing_axiom: None,
                hc_dims: Some(dims.to_vec()),
            },
        })
    };
    let sigma2 = |h: &Arc<Hopf>| basis_vec(h.dim(), 1);
    match name {
        "k" => valid(Payload::Hopf(k())),
        "kZ2" => valid(Payload::Hopf(z2())),
        "kZ3" => valid(Payload::Hopf(z3())),
        "kS3" => valid(Payload::Hopf(Arc::new(symmetric_group3()))),
        "sweedler4" => valid(Payload::Hopf(Arc::new(sweedler4()))),
        "Mtriv" => valid(Payload::Sayd(Sayd::trivial(z2()))),
        "Msigma" => {
            let h = z2();
            valid(Payload::Sayd(one_dim(&h, &[q(1), q(1)], &sigma2(&h))))
        }
        "Mdelta" => {
            let h = z2();
            valid(Payload::Sayd(one_dim(&h, &[q(1), q(-1)], &basis_vec(2, 0))))
        }
        "Msigma-sweedler4" => {
            let h = Arc::new(sweedler4());
            valid(Payload::Sayd(one_dim(&h, h.counit(), &sigma2(&h))))
        }
        "groundA" => {
            let h = k();
            let action = Action::trivial(h.clone(), Space::from_strs("k", &["1"]));
            with_dims(
                Payload::Bundle(kind_a(name, (ground_algebra(), action), Sayd::trivial(h))),
                &[1, 0, 1],
            )
        }
        "signA" => {
            let h = z2();
            with_dims(
                Payload::Bundle(kind_a(name, sign_algebra(&h), Sayd::trivial(h.clone()))),
                &[1],
            )
        }
        "signA-Msigma" => {
            let h = z2();
            let m = one_dim(&h, &[q(1), q(1)], &sigma2(&h));
            valid(Payload::Bundle(kind_a(name, sign_algebra(&h), m)))
        }
        "signA-Mdelta" => {
            let h = z2();
            let m = one_dim(&h, &[q(1), q(-1)], &basis_vec(2, 0));
            valid(Payload::Bundle(kind_a(name, sign_algebra(&h), m)))
        }
        "funZ3" => {
            let h = z3();
            valid(Payload::Bundle(kind_a(
                name,
                functions_z3(&h),
                Sayd::trivial(h.clone()),
            )))
        }
        "adjoint-sweedler4" => {
            let h = Arc::new(sweedler4());
            let m = one_dim(&h, h.counit(), &sigma2(&h));
            valid(Payload::Bundle(kind_a(name, adjoint_module_algebra(&h), m)))
        }
        "B=H-kZ2" | "B=H-kZ3" | "B=H-kZ2-Mdelta" => {
            let h = if name == "B=H-kZ3" { z3() } else { z2() };
            let m = if name == "B=H-kZ2-Mdelta" {
                one_dim(&h, &[q(1), q(-1)], &basis_vec(2, 0))
            } else {
                Sayd::trivial(h.clone())
            };
            let pair = (h.algebra.clone(), Coaction::regular(h.clone()));
            valid(Payload::Bundle(kind_b(name, pair, m)))
        }
        "M2graded" => {
            let h = z2();
            valid(Payload::Bundle(kind_b(
                name,
                graded_matrices(&h),
                Sayd::trivial(h.clone()),
            )))
        }
        "C=H-kZ2" => {
            let h = z2();
            with_dims(Payload::Bundle(kind_c(name, &h, Sayd::trivial(h.clone()))), &[1, 0, 1])
        }
        "C=H-kZ2-Msigma" => {
            let h = z2();
            let m = one_dim(&h, &[q(1), q(1)], &sigma2(&h));
            valid(Payload::Bundle(kind_c(name, &h, m)))
        }
        "C=H-kZ3" => {
            let h = z3();
            valid(Payload::Bundle(kind_c(name, &h, Sayd::trivial(h.clone()))))
        }
        "C=H-kS3" => {
            let h = Arc::new(symmetric_group3());
            valid(Payload::Bundle(kind_c(name, &h, Sayd::trivial(h.clone()))))
        }
        "C=H-sweedler4" => {
            let h = Arc::new(sweedler4());
            let m = one_dim(&h, h.counit(), &sigma2(&h));
            valid(Payload::Bundle(kind_c(name, &h, m)))
        }
        "signA-action" => valid(Payload::CoalgebraAction(sign_coalgebra_action())),
        "kZ2-badcoassoc" => {
            let m = mutant_by_name("kZ2-badcoassoc").unwrap();
            m.build()
        }
        "Mtriv-badAYD" => {
            let h = z2();
            Ok(FixtureBundle {
                name: name.to_string(),
                payload: Payload::Sayd(one_dim(&h, &[q(1), q(-1)], &sigma2(&h))),
                expected: Expected {
                    failing_axiom: Some("stability"),
                    hc_dims: None,
                },
            })
        }
        _ => Err(Error::Catalog {
            name: name.to_string(),
            available: catalog().join(", "),
        }),
    }
}

/// Which structure-constant table a mutation edits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// Product of the Hopf algebra or of the carrier algebra.
    Mult,
    Unit,
    Comult,
    Counit,
    Antipode,
    /// The carrier's (co)action, or the SAYD action for SAYD payloads.
    Action,
    Coaction,
}

/// A single structure-constant edit: `table[(row, col)] := value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutant {
    pub name: &'static str,
    pub base: &'static str,
    pub table: Table,
    pub row: usize,
    pub col: usize,
    pub value: i64,
    pub breaks: &'static str,
}

impl Mutant {
    /// Applies the edit to the base fixture.
    pub fn build(&self) -> Result<FixtureBundle> {
        let base = fixture(self.base)?;
        let v = q(self.value);
        let (r, c) = (self.row, self.col);
        let edit = |m: &Matrix| {
            let mut m = m.clone();
            m[(r, c)] = v.clone();
            m
        };
        let edit_vec = |x: &[Rational]| {
            let mut x = x.to_vec();
            x[r] = v.clone();
            x
        };
        let payload = match (&base.payload, self.table) {
            (Payload::Hopf(h), t) => {
                let (mut alg, mut co, mut s) = (h.algebra.clone(), h.coalgebra.clone(), h.antipode.matrix.clone());
                match t {
                    Table::Mult => alg = Algebra::new(alg.space.clone(), edit(&alg.mult.matrix), alg.unit.clone())?,
                    Table::Unit => alg = Algebra::new(alg.space.clone(), alg.mult.matrix.clone(), edit_vec(&alg.unit))?,
                    Table::Comult => co = Coalgebra::new(co.space.clone(), edit(&co.comult.matrix), co.counit.clone())?,
                    Table::Counit => {
                        co = Coalgebra::new(co.space.clone(), co.comult.matrix.clone(), edit_vec(&co.counit))?
                    }
                    Table::Antipode => s = edit(&s),
                    _ => return Err(Error::Precondition("Hopf payloads have no (co)action".into())),
                }
                Payload::Hopf(Arc::new(Hopf::new(alg, co, s)?))
            }
            (Payload::Sayd(m), Table::Action) => {
                let a = &m.action;
                Payload::Sayd(Sayd::new(
                    Action::new(a.hopf.clone(), a.carrier.clone(), edit(&a.act.matrix))?,
                    m.coaction.clone(),
                )?)
            }
            (Payload::Sayd(m), Table::Coaction) => {
                let co = &m.coaction;
                Payload::Sayd(Sayd::new(
                    m.action.clone(),
                    Coaction::new(co.hopf.clone(), co.carrier.clone(), edit(&co.coact.matrix))?,
                )?)
            }
            (Payload::Bundle(b), t) => {
                let symmetry = match (&b.symmetry, t) {
                    (Symmetry::ModuleAlgebra { algebra, action }, Table::Mult) => Symmetry::ModuleAlgebra {
                        algebra: Algebra::new(algebra.space.clone(), edit(&algebra.mult.matrix), algebra.unit.clone())?,
                        action: action.clone(),
                    },
                    (Symmetry::ModuleAlgebra { algebra, action }, Table::Unit) => Symmetry::ModuleAlgebra {
                        algebra: Algebra::new(
                            algebra.space.clone(),
                            algebra.mult.matrix.clone(),
                            edit_vec(&algebra.unit),
                        )?,
                        action: action.clone(),
                    },
                    (Symmetry::ModuleAlgebra { algebra, action }, Table::Action) => Symmetry::ModuleAlgebra {
                        algebra: algebra.clone(),
                        action: Action::new(action.hopf.clone(), action.carrier.clone(), edit(&action.act.matrix))?,
                    },
                    (Symmetry::ComoduleAlgebra { algebra, coaction }, Table::Mult) => Symmetry::ComoduleAlgebra {
                        algebra: Algebra::new(algebra.space.clone(), edit(&algebra.mult.matrix), algebra.unit.clone())?,
                        coaction: coaction.clone(),
                    },
                    (Symmetry::ComoduleAlgebra { algebra, coaction }, Table::Coaction) => Symmetry::ComoduleAlgebra {
                        algebra: algebra.clone(),
                        coaction: Coaction::new(
                            coaction.hopf.clone(),
                            coaction.carrier.clone(),
                            edit(&coaction.coact.matrix),
                        )?,
                    },
                    (Symmetry::ModuleCoalgebra { coalgebra, action }, Table::Comult) => Symmetry::ModuleCoalgebra {
                        coalgebra: Coalgebra::new(
                            coalgebra.space.clone(),
                            edit(&coalgebra.comult.matrix),
                            coalgebra.counit.clone(),
                        )?,
                        action: action.clone(),
                    },
                    (Symmetry::ModuleCoalgebra { coalgebra, action }, Table::Counit) => Symmetry::ModuleCoalgebra {
                        coalgebra: Coalgebra::new(
                            coalgebra.space.clone(),
                            coalgebra.comult.matrix.clone(),
                            edit_vec(&coalgebra.counit),
                        )?,
                        action: action.clone(),
                    },
                    (Symmetry::ModuleCoalgebra { coalgebra, action }, Table::Action) => Symmetry::ModuleCoalgebra {
                        coalgebra: coalgebra.clone(),
                        action: Action::new(action.hopf.clone(), action.carrier.clone(), edit(&action.act.matrix))?,
                    },
                    _ => {
                        return Err(Error::Precondition(format!(
                            "table {:?} does not apply to {}",
                            t, self.base
                        )))
                    }
                };
                Payload::Bundle(SymmetryBundle::new(b.name.clone(), symmetry, b.coeffs.clone())?)
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "table {:?} does not apply to {}",
                    self.table, self.base
                )))
            }
        };
        Ok(FixtureBundle {
            name: self.name.to_string(),
            payload,
            expected: Expected {
                failing_axiom: Some(self.breaks),
                hc_dims: None,
            },
        })
    }
}

macro_rules! mutant {
    ($name:expr, $base:expr, $table:ident, $r:expr, $c:expr, $v:expr, $breaks:expr) => {
        Mutant {
            name: $name,
            base: $base,
            table: Table::$table,
            row: $r,
            col: $c,
            value: $v,
            breaks: $breaks,
        }
    };
}

/// The curated negative suite. Matrix conventions: products have column
/// `i*d + j` for the pair `(e_i, e_j)`; comultiplications have row `a*d + b`
/// for `e_a ⊗ e_b`; actions have column `h*dim V + v`; coactions have row
/// `h*dim V + w`.
pub fn mutants() -> Vec<Mutant> {
    vec![
        mutant!("kZ2-badcoassoc", "kZ2", Comult, 1, 1, 1, "coassociativity"),
        mutant!("kZ2-gg-doubled", "kZ2", Mult, 0, 3, 2, "comult-multiplicative"),
        mutant!("kZ2-badcounit", "kZ2", Counit, 1, 0, 2, "counit"),
        mutant!("kZ2-antipode-scaled", "kZ2", Antipode, 1, 1, 2, "antipode-left"),
        mutant!("kZ2-antipode-singular", "kZ2", Antipode, 1, 1, 0, "antipode-invertible"),
        mutant!("kZ2-unit-shifted", "kZ2", Unit, 1, 0, 1, "unit"),
        mutant!("kZ3-g-g2", "kZ3", Mult, 1, 5, 1, "associativity"),
        mutant!("kZ3-counit-g2", "kZ3", Counit, 2, 0, 0, "counit-multiplicative"),
        mutant!("sweedler4-xx", "sweedler4", Mult, 0, 10, 1, "comult-multiplicative"),
        mutant!("sweedler4-antipode-x", "sweedler4", Antipode, 3, 2, 1, "antipode-left"),
        mutant!("sweedler4-counit-x", "sweedler4", Counit, 2, 0, 1, "counit"),
        mutant!("sweedler4-delta-x", "sweedler4", Comult, 9, 2, 1, "coassociativity"),
        mutant!("signA-g1-doubled", "signA", Action, 0, 2, 2, "module-associativity"),
        mutant!("signA-unit-acts-zero", "signA", Action, 1, 1, 0, "module-unit"),
        mutant!(
            "signA-gx-plus-one",
            "signA",
            Action,
            0,
            3,
            1,
            "module-algebra-multiplicativity"
        ),
        mutant!(
            "signA-xx-plus-x",
            "signA",
            Mult,
            1,
            3,
            1,
            "module-algebra-multiplicativity"
        ),
        mutant!("signA-unit-x", "signA", Unit, 1, 0, 1, "unit"),
        mutant!("B=H-kZ2-g-extra", "B=H-kZ2", Coaction, 2, 1, 1, "comodule-counit"),
        mutant!(
            "B=H-kZ2-one-doubled",
            "B=H-kZ2",
            Coaction,
            0,
            0,
            2,
            "comodule-coassociativity"
        ),
        mutant!(
            "B=H-kZ2-gg-plus-g",
            "B=H-kZ2",
            Mult,
            1,
            3,
            1,
            "comodule-algebra-multiplicativity"
        ),
        mutant!(
            "C=H-kZ2-g1-plus-1",
            "C=H-kZ2",
            Action,
            0,
            2,
            1,
            "module-coalgebra-counit"
        ),
        mutant!(
            "C=H-kZ2-counit-g",
            "C=H-kZ2",
            Counit,
            1,
            0,
            2,
            "module-coalgebra-counit"
        ),
        mutant!("C=H-kZ2-comult-mixed", "C=H-kZ2", Comult, 1, 0, 1, "counit"),
        mutant!(
            "Mtriv-coaction-doubled",
            "Mtriv",
            Coaction,
            0,
            0,
            2,
            "comodule-coassociativity"
        ),
        mutant!("Mdelta-unit-doubled", "Mdelta", Action, 0, 0, 2, "module-unit"),
        mutant!("Msigma-sign", "Msigma", Action, 0, 1, -1, "stability"),
    ]
}

pub fn mutant_by_name(name: &str) -> Option<Mutant> {
    mutants().into_iter().find(|m| m.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_fixtures_pass() {
        for name in VALID {
            let f = fixture(name).unwrap();
            let r = f.payload.validate();
            assert!(r.passed(), "{} failed:\n{}", name, r);
        }
    }

    #[test]
    fn mutants_fail_recorded_axiom_with_witness() {
        let all = mutants();
        assert!(all.len() >= 20);
        for m in all {
            let f = m.build().unwrap();
            let r = f.payload.validate();
            let check = r
                .get(m.breaks)
                .unwrap_or_else(|| panic!("{}: no check named {}", m.name, m.breaks));
            assert!(!check.passed, "{} should break {}:\n{}", m.name, m.breaks, r);
            assert!(check.witness.is_some());
        }
    }

    #[test]
    fn catalog_mutants() {
        let bad = fixture("Mtriv-badAYD").unwrap();
        let r = bad.payload.validate();
        assert!(r.failed("stability"));
        assert!(fixture("kZ2-badcoassoc")
            .unwrap()
            .payload
            .validate()
            .failed("coassociativity"));
    }

    #[test]
    fn unknown_name_lists_catalog() {
        match fixture("nosuch") {
            Err(Error::Catalog { name, available }) => {
                assert_eq!(name, "nosuch");
                assert!(available.split(", ").any(|n| n == "kZ2"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn sweedler_antipode_inverse() {
        let h = sweedler4();
        let sinv = h.antipode_inverse().unwrap();
        // S⁻¹(x) = gx
        assert_eq!(sinv.matrix.column(2), vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(sinv.matrix.mul(&h.antipode.matrix), Matrix::identity(4));
    }

    #[test]
    fn sweedler_iterated_coproduct_of_x() {
        let h = sweedler4();
        let t = h.iterated_coproduct(&[q(0), q(0), q(1), q(0)], 2);
        let radix = t.radix();
        let mut expect = vec![q(0); 64];
        for key in [[2, 0, 0], [1, 2, 0], [1, 1, 2]] {
            expect[radix.encode(&key)] = q(1);
        }
        assert_eq!(t.coords, expect);
    }
}
