//! Turns a parsed document into engine structures, checking that every
//! label and name resolves.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use hopf_cyclic::fixtures::Payload;
use hopf_cyclic::multilin::{Radix, Space};
use hopf_cyclic::products::CoalgebraAction;
use hopf_cyclic::structures::ValidationReport;
use hopf_cyclic::{
    Action, Algebra, Coaction, Coalgebra, Hopf, Kind, Matrix, Rational, Sayd, Symmetry, SymmetryBundle, Validate,
};

use crate::error::CliError;
use crate::format::{BundleKind, Entry, SpecDocument, StructureDef, ValueAt};

fn err<T>(msg: String) -> Result<T, CliError> {
    Err(CliError::Resolution(msg))
}

/// Every structure of a document, by name.
#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub spaces: BTreeMap<String, Space>,
    pub hopfs: BTreeMap<String, Arc<Hopf>>,
    pub algebras: BTreeMap<String, Algebra>,
    pub coalgebras: BTreeMap<String, Coalgebra>,
    pub actions: BTreeMap<String, Action>,
    pub coactions: BTreeMap<String, Coaction>,
    pub sayds: BTreeMap<String, Sayd>,
    pub coalgebra_actions: BTreeMap<String, CoalgebraAction>,
    pub bundles: BTreeMap<String, SymmetryBundle>,
}

/// Fills a `Π out × Π in` matrix from entries whose inputs and outputs are
/// basis tuples of the given factor spaces, leftmost factor slowest.
fn table(what: &str, entries: &[Entry], inputs: &[&Space], outputs: &[&Space]) -> Result<Matrix, CliError> {
    let rin = Radix::new(inputs.iter().map(|s| s.dim()).collect());
    let rout = Radix::new(outputs.iter().map(|s| s.dim()).collect());
    let mut m = Matrix::zeros(rout.size(), rin.size());
    let mut seen = BTreeSet::new();
    for e in entries {
        let idx = |labels: &[String], spaces: &[&Space], side: &str| -> Result<Vec<usize>, CliError> {
            if labels.len() != spaces.len() {
                return err(format!(
                    "{what}: {side} {labels:?} has {} labels, expected {}",
                    labels.len(),
                    spaces.len()
                ));
            }
            labels
                .iter()
                .zip(spaces)
                .map(|(l, s)| {
                    s.index_of(l)
                        .ok_or_else(|| CliError::Resolution(format!("{what}: label {l:?} is not in space {}", s.name)))
                })
                .collect()
        };
        let i = rin.encode(&idx(&e.inputs, inputs, "inputs")?);
        let o = rout.encode(&idx(&e.output, outputs, "output")?);
        if !seen.insert((i, o)) {
            return err(format!("{what}: repeated entry {:?} -> {:?}", e.inputs, e.output));
        }
        m[(o, i)] = e.value.0.clone();
    }
    Ok(m)
}

fn column(m: &Matrix) -> Vec<Rational> {
    m.column(0)
}

fn row(m: &Matrix) -> Vec<Rational> {
    m.row(0).to_vec()
}

impl Resolved {
    pub fn new(doc: &SpecDocument) -> Result<Self, CliError> {
        let mut r = Resolved::default();
        for (name, labels) in &doc.spaces {
            let distinct: BTreeSet<&String> = labels.iter().collect();
            if labels.is_empty() || distinct.len() != labels.len() {
                return err(format!("space {name} needs a non-empty list of distinct labels"));
            }
            r.spaces.insert(name.clone(), Space::new(name.clone(), labels.clone()));
        }
        // Hopf algebras and carriers first, then (co)actions, then the rest.
        for (name, def) in &doc.structures {
            match def {
                StructureDef::Hopf {
                    space,
                    mult,
                    unit,
                    comult,
                    counit,
                    antipode,
                } => {
                    let s = r.space(space, name)?;
                    let what = |t: &str| format!("structure {name} {t}");
                    let algebra = Algebra::new(
                        s.clone(),
                        table(&what("mult"), mult, &[&s, &s], &[&s])?,
                        column(&table(&what("unit"), unit, &[], &[&s])?),
                    )?;
                    let coalgebra = Coalgebra::new(
                        s.clone(),
                        table(&what("comult"), comult, &[&s], &[&s, &s])?,
                        row(&table(&what("counit"), counit, &[&s], &[])?),
                    )?;
                    let antipode = table(&what("antipode"), antipode, &[&s], &[&s])?;
                    r.hopfs
                        .insert(name.clone(), Arc::new(Hopf::new(algebra, coalgebra, antipode)?));
                }
                StructureDef::Algebra { space, mult, unit } => {
                    let s = r.space(space, name)?;
                    let what = |t: &str| format!("structure {name} {t}");
                    let a = Algebra::new(
                        s.clone(),
                        table(&what("mult"), mult, &[&s, &s], &[&s])?,
                        column(&table(&what("unit"), unit, &[], &[&s])?),
                    )?;
                    r.algebras.insert(name.clone(), a);
                }
                StructureDef::Coalgebra { space, comult, counit } => {
                    let s = r.space(space, name)?;
                    let what = |t: &str| format!("structure {name} {t}");
                    let c = Coalgebra::new(
                        s.clone(),
                        table(&what("comult"), comult, &[&s], &[&s, &s])?,
                        row(&table(&what("counit"), counit, &[&s], &[])?),
                    )?;
                    r.coalgebras.insert(name.clone(), c);
                }
                _ => {}
            }
        }
        for (name, def) in &doc.structures {
            match def {
                StructureDef::Action { hopf, space, table: t } => {
                    let h = r.hopf(hopf, &format!("structure {name}"))?;
                    let s = r.space(space, name)?;
                    let m = table(&format!("structure {name} table"), t, &[h.space(), &s], &[&s])?;
                    r.actions.insert(name.clone(), Action::new(h, s, m)?);
                }
                StructureDef::Coaction { hopf, space, table: t } => {
                    let h = r.hopf(hopf, &format!("structure {name}"))?;
                    let s = r.space(space, name)?;
                    let m = table(&format!("structure {name} table"), t, &[&s], &[h.space(), &s])?;
                    r.coactions.insert(name.clone(), Coaction::new(h, s, m)?);
                }
                StructureDef::Sayd {
                    hopf,
                    space,
                    action,
                    coaction,
                } => {
                    let h = r.hopf(hopf, &format!("structure {name}"))?;
                    let s = r.space(space, name)?;
                    let a = table(&format!("structure {name} action"), action, &[h.space(), &s], &[&s])?;
                    let c = table(&format!("structure {name} coaction"), coaction, &[&s], &[h.space(), &s])?;
                    let m = Sayd::new(Action::new(h.clone(), s.clone(), a)?, Coaction::new(h, s, c)?)?;
                    r.sayds.insert(name.clone(), m);
                }
                _ => {}
            }
        }
        for (name, def) in &doc.structures {
            if let StructureDef::CoalgebraAction {
                coalgebra,
                coalgebra_action,
                algebra,
                algebra_action,
                pairing,
            } = def
            {
                let c = r.coalgebra(coalgebra, &format!("structure {name}"))?;
                let a = r.algebra(algebra, &format!("structure {name}"))?;
                let ca = r.action(coalgebra_action, &format!("structure {name}"))?;
                let aa = r.action(algebra_action, &format!("structure {name}"))?;
                let m = table(
                    &format!("structure {name} pairing"),
                    pairing,
                    &[&c.space, &a.space],
                    &[&a.space],
                )?;
                r.coalgebra_actions
                    .insert(name.clone(), CoalgebraAction::new(c, ca, a, aa, m)?);
            }
        }
        for (name, def) in &doc.bundles {
            let who = format!("bundle {name}");
            let coeffs = r.sayds.get(&def.coefficients).cloned().ok_or_else(|| {
                CliError::Resolution(format!("{who}: no SAYD structure named {:?}", def.coefficients))
            })?;
            let symmetry =
                match def.kind {
                    BundleKind::ModuleAlgebra => Symmetry::ModuleAlgebra {
                        algebra: r.algebra(&def.carrier, &who)?,
                        action: r.action(&def.symmetry, &who)?,
                    },
                    BundleKind::ComoduleAlgebra => Symmetry::ComoduleAlgebra {
                        algebra: r.algebra(&def.carrier, &who)?,
                        coaction: r.coactions.get(&def.symmetry).cloned().ok_or_else(|| {
                            CliError::Resolution(format!("{who}: no coaction named {:?}", def.symmetry))
                        })?,
                    },
                    BundleKind::ModuleCoalgebra => Symmetry::ModuleCoalgebra {
                        coalgebra: r.coalgebra(&def.carrier, &who)?,
                        action: r.action(&def.symmetry, &who)?,
                    },
                };
            r.bundles
                .insert(name.clone(), SymmetryBundle::new(name.clone(), symmetry, coeffs)?);
        }
        Ok(r)
    }

    fn space(&self, name: &str, who: &str) -> Result<Space, CliError> {
        self.spaces
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Resolution(format!("structure {who}: undefined space {name:?}")))
    }

    fn hopf(&self, name: &str, who: &str) -> Result<Arc<Hopf>, CliError> {
        self.hopfs
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Resolution(format!("{who}: no Hopf structure named {name:?}")))
    }

    fn algebra(&self, name: &str, who: &str) -> Result<Algebra, CliError> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        match self.hopfs.get(name) {
            Some(h) => Ok(h.algebra.clone()),
            None => err(format!("{who}: no algebra named {name:?}")),
        }
    }

    fn coalgebra(&self, name: &str, who: &str) -> Result<Coalgebra, CliError> {
        if let Some(c) = self.coalgebras.get(name) {
            return Ok(c.clone());
        }
        match self.hopfs.get(name) {
            Some(h) => Ok(h.coalgebra.clone()),
            None => err(format!("{who}: no coalgebra named {name:?}")),
        }
    }

    fn action(&self, name: &str, who: &str) -> Result<Action, CliError> {
        self.actions
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Resolution(format!("{who}: no action named {name:?}")))
    }

    /// The structure a catalog entry of this name denotes.
    pub fn payload(&self, name: &str) -> Option<Payload> {
        if let Some(b) = self.bundles.get(name) {
            return Some(Payload::Bundle(b.clone()));
        }
        if let Some(a) = self.coalgebra_actions.get(name) {
            return Some(Payload::CoalgebraAction(a.clone()));
        }
        if let Some(m) = self.sayds.get(name) {
            return Some(Payload::Sayd(m.clone()));
        }
        self.hopfs.get(name).map(|h| Payload::Hopf(h.clone()))
    }

    /// Axiom reports for every named structure, in document order.
    pub fn validate_all(&self) -> Vec<(String, ValidationReport)> {
        let mut out = Vec::new();
        let mut push = |kind: &str, name: &String, r: ValidationReport| out.push((format!("{kind} {name}"), r));
        for (n, h) in &self.hopfs {
            push("hopf", n, h.validate());
        }
        for (n, a) in &self.algebras {
            push("algebra", n, a.validate());
        }
        for (n, c) in &self.coalgebras {
            push("coalgebra", n, c.validate());
        }
        for (n, a) in &self.actions {
            push("action", n, a.validate());
        }
        for (n, c) in &self.coactions {
            push("coaction", n, c.validate());
        }
        for (n, m) in &self.sayds {
            push("sayd", n, m.validate());
        }
        for (n, a) in &self.coalgebra_actions {
            push("coalgebra-action", n, a.validate());
        }
        for (n, b) in &self.bundles {
            push("bundle", n, b.validate());
        }
        out
    }

    pub fn bundle(&self, name: &str) -> Result<&SymmetryBundle, CliError> {
        self.bundles.get(name).ok_or_else(|| {
            CliError::Resolution(format!(
                "no bundle named {name:?}; available: {}",
                self.bundles.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }
}

/// Ambient vector of a degree-`n` cochain on a bundle, from values at
/// `[m, x_0, …, x_n]`.
pub fn ambient_values(
    bundle: &SymmetryBundle,
    n: usize,
    values: &[ValueAt],
    who: &str,
) -> Result<Vec<Rational>, CliError> {
    let m = bundle.coeffs.space();
    let x = bundle.carrier_space();
    let spaces: Vec<&Space> = std::iter::once(m).chain(std::iter::repeat_n(x, n + 1)).collect();
    let entries: Vec<Entry> = values
        .iter()
        .map(|v| Entry {
            inputs: v.at.clone(),
            output: Vec::new(),
            value: v.value.clone(),
        })
        .collect();
    Ok(row(&table(who, &entries, &spaces, &[])?))
}

/// Values of an ambient vector at its nonzero basis tuples.
pub fn values_of(bundle: &SymmetryBundle, n: usize, ambient: &[Rational]) -> Vec<ValueAt> {
    let m = bundle.coeffs.space();
    let x = bundle.carrier_space();
    let mut dims = vec![m.dim()];
    dims.extend(std::iter::repeat_n(x.dim(), n + 1));
    let radix = Radix::new(dims);
    ambient
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != Rational::from_integer(0.into()))
        .map(|(i, v)| {
            let key = radix.decode(i);
            let mut at = vec![m.labels[key[0]].clone()];
            at.extend(key[1..].iter().map(|&j| x.labels[j].clone()));
            ValueAt {
                at,
                value: crate::format::Q(v.clone()),
            }
        })
        .collect()
}

/// A carrier element from values at single labels.
pub fn element_values(bundle: &SymmetryBundle, values: &[ValueAt], who: &str) -> Result<Vec<Rational>, CliError> {
    let entries: Vec<Entry> = values
        .iter()
        .map(|v| Entry {
            inputs: v.at.clone(),
            output: Vec::new(),
            value: v.value.clone(),
        })
        .collect();
    Ok(row(&table(who, &entries, &[bundle.carrier_space()], &[])?))
}

/// The kind of a bundle as a document tag.
pub fn bundle_kind(kind: Kind) -> BundleKind {
    match kind {
        Kind::A => BundleKind::ModuleAlgebra,
        Kind::B => BundleKind::ComoduleAlgebra,
        Kind::C => BundleKind::ModuleCoalgebra,
    }
}
