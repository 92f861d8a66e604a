//! Writes engine structures as documents: the shipped fixture files are
//! produced here from the catalog.

use hopf_cyclic::cyclic::CyclicComplex;
use hopf_cyclic::fixtures::{fixture, mutant_by_name, Payload};
use hopf_cyclic::multilin::{Radix, Space};
use hopf_cyclic::products::{CoalgebraAction, SecondCup};
use hopf_cyclic::{
    q, Action, Algebra, Coaction, Coalgebra, Hopf, Limits, Matrix, Rational, Sayd, Symmetry, SymmetryBundle,
};
use num_traits::Zero;

use crate::error::CliError;
use crate::format::{BundleDef, CochainDef, ElementDef, Entry, JobDef, SpecDocument, StructureDef, ValueAt, Q};
use crate::resolve::{bundle_kind, values_of};

/// Nonzero matrix entries as labelled entries.
fn entries(m: &Matrix, inputs: &[&Space], outputs: &[&Space]) -> Vec<Entry> {
    let rin = Radix::new(inputs.iter().map(|s| s.dim()).collect());
    let rout = Radix::new(outputs.iter().map(|s| s.dim()).collect());
    let mut out = Vec::new();
    for i in 0..rin.size() {
        for o in 0..rout.size() {
            let v = &m[(o, i)];
            if v.is_zero() {
                continue;
            }
            let labels = |radix: &Radix, flat: usize, spaces: &[&Space]| -> Vec<String> {
                radix
                    .decode(flat)
                    .iter()
                    .zip(spaces)
                    .map(|(&k, s)| s.labels[k].clone())
                    .collect()
            };
            out.push(Entry {
                inputs: labels(&rin, i, inputs),
                output: labels(&rout, o, outputs),
                value: Q(v.clone()),
            });
        }
    }
    out
}

fn column_matrix(v: &[Rational]) -> Matrix {
    let mut m = Matrix::zeros(v.len(), 1);
    for (i, x) in v.iter().enumerate() {
        m[(i, 0)] = x.clone();
    }
    m
}

fn row_matrix(v: &[Rational]) -> Matrix {
    let mut m = Matrix::zeros(1, v.len());
    for (i, x) in v.iter().enumerate() {
        m[(0, i)] = x.clone();
    }
    m
}

/// Accumulates structures into a document, reusing names for equal
/// structures.
#[derive(Default)]
pub struct Exporter {
    pub doc: SpecDocument,
    hopfs: Vec<(Hopf, String)>,
    sayds: Vec<(Sayd, String)>,
}

impl Exporter {
    pub fn new() -> Self {
        Exporter {
            doc: SpecDocument {
                field: "Q".into(),
                ..Default::default()
            },
            ..Default::default()
        }
    }

    fn space(&mut self, s: &Space) -> Result<String, CliError> {
        match self.doc.spaces.get(&s.name) {
            Some(labels) if *labels != s.labels => Err(CliError::Resolution(format!(
                "two spaces named {:?} with different bases",
                s.name
            ))),
            _ => {
                self.doc.spaces.insert(s.name.clone(), s.labels.clone());
                Ok(s.name.clone())
            }
        }
    }

    fn fresh(&self, preferred: &str) -> String {
        let mut name = preferred.to_string();
        let mut i = 2;
        while self.doc.structures.contains_key(&name) {
            name = format!("{preferred}.{i}");
            i += 1;
        }
        name
    }

    pub fn hopf(&mut self, h: &Hopf, preferred: &str) -> Result<String, CliError> {
        if let Some((_, n)) = self.hopfs.iter().find(|(x, _)| x == h) {
            return Ok(n.clone());
        }
        let s = h.space();
        let space = self.space(s)?;
        let name = self.fresh(preferred);
        let def = StructureDef::Hopf {
            space,
            mult: entries(&h.algebra.mult.matrix, &[s, s], &[s]),
            unit: entries(&column_matrix(&h.algebra.unit), &[], &[s]),
            comult: entries(&h.coalgebra.comult.matrix, &[s], &[s, s]),
            counit: entries(&row_matrix(&h.coalgebra.counit), &[s], &[]),
            antipode: entries(&h.antipode.matrix, &[s], &[s]),
        };
        self.doc.structures.insert(name.clone(), def);
        self.hopfs.push((h.clone(), name.clone()));
        Ok(name)
    }

    fn algebra(&mut self, a: &Algebra, preferred: &str) -> Result<String, CliError> {
        if let Some((_, n)) = self.hopfs.iter().find(|(h, _)| h.algebra == *a) {
            return Ok(n.clone());
        }
        let s = &a.space;
        let space = self.space(s)?;
        let name = self.fresh(preferred);
        let def = StructureDef::Algebra {
            space,
            mult: entries(&a.mult.matrix, &[s, s], &[s]),
            unit: entries(&column_matrix(&a.unit), &[], &[s]),
        };
        self.doc.structures.insert(name.clone(), def);
        Ok(name)
    }

    fn coalgebra(&mut self, c: &Coalgebra, preferred: &str) -> Result<String, CliError> {
        if let Some((_, n)) = self.hopfs.iter().find(|(h, _)| h.coalgebra == *c) {
            return Ok(n.clone());
        }
        let s = &c.space;
        let space = self.space(s)?;
        let name = self.fresh(preferred);
        let def = StructureDef::Coalgebra {
            space,
            comult: entries(&c.comult.matrix, &[s], &[s, s]),
            counit: entries(&row_matrix(&c.counit), &[s], &[]),
        };
        self.doc.structures.insert(name.clone(), def);
        Ok(name)
    }

    fn action(&mut self, a: &Action, preferred: &str) -> Result<String, CliError> {
        let hopf = self.hopf(&a.hopf, &a.hopf.space().name)?;
        let space = self.space(&a.carrier)?;
        let name = self.fresh(preferred);
        let table = entries(&a.act.matrix, &[a.hopf.space(), &a.carrier], &[&a.carrier]);
        self.doc
            .structures
            .insert(name.clone(), StructureDef::Action { hopf, space, table });
        Ok(name)
    }

    fn coaction(&mut self, c: &Coaction, preferred: &str) -> Result<String, CliError> {
        let hopf = self.hopf(&c.hopf, &c.hopf.space().name)?;
        let space = self.space(&c.carrier)?;
        let name = self.fresh(preferred);
        let table = entries(&c.coact.matrix, &[&c.carrier], &[c.hopf.space(), &c.carrier]);
        self.doc
            .structures
            .insert(name.clone(), StructureDef::Coaction { hopf, space, table });
        Ok(name)
    }

    pub fn sayd(&mut self, m: &Sayd, preferred: &str) -> Result<String, CliError> {
        if let Some((_, n)) = self.sayds.iter().find(|(x, _)| x == m) {
            return Ok(n.clone());
        }
        let h = m.hopf();
        let hopf = self.hopf(h, &h.space().name)?;
        let s = m.space();
        let space = self.space(s)?;
        let name = self.fresh(preferred);
        let def = StructureDef::Sayd {
            hopf,
            space,
            action: entries(&m.action.act.matrix, &[h.space(), s], &[s]),
            coaction: entries(&m.coaction.coact.matrix, &[s], &[h.space(), s]),
        };
        self.doc.structures.insert(name.clone(), def);
        self.sayds.push((m.clone(), name.clone()));
        Ok(name)
    }

    pub fn bundle(&mut self, b: &SymmetryBundle) -> Result<String, CliError> {
        let name = b.name.clone();
        self.hopf(&b.hopf, &b.hopf.space().name)?;
        let (carrier, symmetry) = match &b.symmetry {
            Symmetry::ModuleAlgebra { algebra, action } => (
                self.algebra(algebra, &algebra.space.name)?,
                self.action(action, &format!("{name}.action"))?,
            ),
            Symmetry::ComoduleAlgebra { algebra, coaction } => (
                self.algebra(algebra, &algebra.space.name)?,
                self.coaction(coaction, &format!("{name}.coaction"))?,
            ),
            Symmetry::ModuleCoalgebra { coalgebra, action } => (
                self.coalgebra(coalgebra, &coalgebra.space.name)?,
                self.action(action, &format!("{name}.action"))?,
            ),
        };
        let coefficients = self.sayd(&b.coeffs, &format!("{name}.coefficients"))?;
        self.doc.bundles.insert(
            name.clone(),
            BundleDef {
                kind: bundle_kind(b.kind()),
                carrier,
                symmetry,
                coefficients,
            },
        );
        Ok(name)
    }

    pub fn coalgebra_action(&mut self, a: &CoalgebraAction, name: &str) -> Result<String, CliError> {
        self.hopf(a.hopf(), &a.hopf().space().name)?;
        let coalgebra = self.coalgebra(&a.coalgebra, &a.coalgebra.space.name)?;
        let algebra = self.algebra(&a.algebra, &a.algebra.space.name)?;
        let coalgebra_action = self.action(&a.coalgebra_action, &format!("{name}.coalgebra-action"))?;
        let algebra_action = self.action(&a.algebra_action, &format!("{name}.algebra-action"))?;
        let pairing = entries(
            &a.pairing.matrix,
            &[&a.coalgebra.space, &a.algebra.space],
            &[&a.algebra.space],
        );
        self.doc.structures.insert(
            name.to_string(),
            StructureDef::CoalgebraAction {
                coalgebra,
                coalgebra_action,
                algebra,
                algebra_action,
                pairing,
            },
        );
        Ok(name.to_string())
    }

    pub fn payload(&mut self, name: &str, p: &Payload) -> Result<(), CliError> {
        match p {
            Payload::Hopf(h) => {
                self.hopf(h, name)?;
            }
            Payload::Sayd(m) => {
                self.sayd(m, name)?;
            }
            Payload::Bundle(b) => {
                let mut b = b.clone();
                b.name = name.to_string();
                self.bundle(&b)?;
            }
            Payload::CoalgebraAction(a) => {
                self.coalgebra_action(a, name)?;
            }
        }
        Ok(())
    }

    pub fn cochain(&mut self, name: &str, bundle: &SymmetryBundle, n: usize, ambient: &[Rational]) {
        self.doc.cochains.insert(
            name.to_string(),
            CochainDef {
                bundle: bundle.name.clone(),
                degree: n,
                values: values_of(bundle, n, ambient),
            },
        );
    }
}

/// Names accepted by `hcyc fixture`: the catalog, every mutant and the
/// product demonstrations.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = hopf_cyclic::fixtures::catalog().iter().map(|s| s.to_string()).collect();
    for m in hopf_cyclic::fixtures::mutants() {
        if !names.iter().any(|n| n == m.name) {
            names.push(m.name.to_string());
        }
    }
    names.extend(DEMOS.iter().map(|s| s.to_string()));
    names
}

/// Documents exercising the products and the inner-automorphism homotopy.
pub const DEMOS: &[&str] = &[
    "cup1-signA-kZ2",
    "cup2-signA-action",
    "homotopy-M2graded",
    "signA-badAYD",
];

/// The document shipped for a fixture name.
pub fn fixture_document(name: &str) -> Result<SpecDocument, CliError> {
    match name {
        "cup1-signA-kZ2" => return cup1_demo(),
        "cup2-signA-action" => return cup2_demo(),
        "homotopy-M2graded" => return homotopy_demo(),
        "signA-badAYD" => return bad_ayd_demo(),
        _ => {}
    }
    let f = match fixture(name) {
        Ok(f) => f,
        Err(e) => match mutant_by_name(name) {
            Some(m) => m.build()?,
            None => return Err(e.into()),
        },
    };
    let mut ex = Exporter::new();
    ex.payload(name, &f.payload)?;
    ex.doc.jobs.push(JobDef::Verify);
    if let (Payload::Bundle(_), false) = (&f.payload, f.is_mutant()) {
        let max_degree = f.expected.hc_dims.as_ref().map(|d| d.len() - 1).or(Some(1));
        ex.doc.jobs.push(JobDef::Hc {
            bundle: name.to_string(),
            max_degree,
        });
    }
    Ok(ex.doc)
}

fn catalog_bundle(name: &str) -> Result<SymmetryBundle, CliError> {
    Ok(fixture(name)?.bundle()?.clone())
}

/// First basis vector of the cyclic cocycles in degree `n`, as an ambient
/// vector.
fn some_cocycle(cx: &CyclicComplex, n: usize) -> Result<Vec<Rational>, CliError> {
    let z = cx.cyclic_cocycles(n).basis_vectors();
    let first = z
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Resolution(format!("{} has no cyclic cocycles in degree {n}", cx.bundle.name)))?;
    Ok(cx.ambient(&hopf_cyclic::cyclic::Cochain {
        degree: n,
        coords: first,
    }))
}

/// `1, 2, …, n` with alternating signs.
fn generic(n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| q(if i % 2 == 0 { i as i64 + 1 } else { -(i as i64) - 1 }))
        .collect()
}

fn bad_ayd_demo() -> Result<SpecDocument, CliError> {
    let sign = catalog_bundle("signA")?;
    let Payload::Sayd(bad) = fixture("Mtriv-badAYD")?.payload else {
        unreachable!("Mtriv-badAYD is a SAYD fixture")
    };
    let b = SymmetryBundle::new("signA-badAYD", sign.symmetry.clone(), bad)?;
    let mut ex = Exporter::new();
    ex.bundle(&b)?;
    ex.doc.jobs.push(JobDef::Hc {
        bundle: b.name.clone(),
        max_degree: Some(2),
    });
    Ok(ex.doc)
}

fn cup1_demo() -> Result<SpecDocument, CliError> {
    let a = catalog_bundle("signA")?;
    let b = catalog_bundle("B=H-kZ2")?;
    let limits = Limits::default();
    let mut ex = Exporter::new();
    ex.bundle(&a)?;
    ex.bundle(&b)?;
    let ca = CyclicComplex::new(&a, 2, &limits)?;
    let cb = CyclicComplex::new(&b, 3, &limits)?;
    ex.cochain("psi", &a, 0, &some_cocycle(&ca, 0)?);
    ex.cochain("phi", &b, 2, &some_cocycle(&cb, 2)?);
    ex.doc.jobs.push(JobDef::Cup1 {
        phi: "phi".into(),
        psi: "psi".into(),
    });
    Ok(ex.doc)
}

fn cup2_demo() -> Result<SpecDocument, CliError> {
    let act = hopf_cyclic::fixtures::sign_coalgebra_action();
    let coeffs = Sayd::trivial(act.hopf().clone());
    let cup = SecondCup::new(&act, &coeffs, 2, &Limits::default())?;
    let mut ex = Exporter::new();
    ex.coalgebra_action(&act, "signA-action")?;
    let mut c = cup.c.bundle.clone();
    c.name = "C".into();
    let mut a = cup.a.bundle.clone();
    a.name = "A".into();
    ex.bundle(&c)?;
    ex.bundle(&a)?;
    // No degree-one cyclic cocycles exist here; generic cochains exercise
    // the cochain-level formula.
    let (sc, sa) = (&cup.c.spaces[1], &cup.a.spaces[1]);
    ex.cochain("x", &c, 1, &sc.lift(&generic(sc.dim())));
    ex.cochain("psi", &a, 1, &sa.lift(&generic(sa.dim())));
    ex.doc.jobs.push(JobDef::Cup2 {
        x: "x".into(),
        psi: "psi".into(),
        action: Some("signA-action".into()),
    });
    Ok(ex.doc)
}

fn homotopy_demo() -> Result<SpecDocument, CliError> {
    let b = catalog_bundle("M2graded")?;
    let mut ex = Exporter::new();
    ex.bundle(&b)?;
    let labels = &b.carrier_space().labels;
    ex.doc.elements.insert(
        "u".into(),
        ElementDef {
            bundle: b.name.clone(),
            values: vec![
                ValueAt {
                    at: vec![labels[0].clone()],
                    value: Q(q(1)),
                },
                ValueAt {
                    at: vec![labels[3].clone()],
                    value: Q(q(-1)),
                },
            ],
        },
    );
    ex.doc.jobs.push(JobDef::Homotopy {
        u: "u".into(),
        max_degree: Some(2),
    });
    Ok(ex.doc)
}
