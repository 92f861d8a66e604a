//! The `.hcs` structure file: a strict JSON document with every rational
//! written as a string, and its canonical serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use hopf_cyclic::exactla::{format_rational, parse_rational};
use hopf_cyclic::Rational;
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;

/// An exact rational stored as `"p/q"` or `"p"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational written as a string \"p/q\" or \"p\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Q, E> {
                parse_rational(s).map(Q).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

/// A JSON object deserialized in key order that rejects repeated keys.
fn strict_map<'de, D, V>(d: D) -> Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct M<V>(PhantomData<V>);
    impl<'de, V: Deserialize<'de>> Visitor<'de> for M<V> {
        type Value = BTreeMap<String, V>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object with unique keys")
        }
        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = access.next_entry::<String, V>()? {
                if out.contains_key(&k) {
                    return Err(de::Error::custom(format!("duplicate key {k:?}")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }
    d.deserialize_map(M(PhantomData))
}

/// One structure constant: the coefficient of `output` in the image of the
/// basis tuple `inputs`. Units have no inputs and counits no output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub inputs: Vec<String>,
    pub output: Vec<String>,
    pub value: Q,
}

/// One value of a cochain or element at a basis tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueAt {
    pub at: Vec<String>,
    pub value: Q,
}

/// A named structure, tagged by its type: `{"hopf": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum StructureDef {
    Hopf {
        space: String,
        mult: Vec<Entry>,
        unit: Vec<Entry>,
        comult: Vec<Entry>,
        counit: Vec<Entry>,
        antipode: Vec<Entry>,
    },
    Algebra {
        space: String,
        mult: Vec<Entry>,
        unit: Vec<Entry>,
    },
    Coalgebra {
        space: String,
        comult: Vec<Entry>,
        counit: Vec<Entry>,
    },
    /// `H ⊗ V → V`, entries `[h, v] → [w]`.
    Action {
        hopf: String,
        space: String,
        table: Vec<Entry>,
    },
    /// `V → H ⊗ V`, entries `[v] → [h, w]`.
    Coaction {
        hopf: String,
        space: String,
        table: Vec<Entry>,
    },
    Sayd {
        hopf: String,
        space: String,
        action: Vec<Entry>,
        coaction: Vec<Entry>,
    },
    /// `C ⊗ A → A`, entries `[c, a] → [a']`.
    CoalgebraAction {
        coalgebra: String,
        coalgebra_action: String,
        algebra: String,
        algebra_action: String,
        pairing: Vec<Entry>,
    },
}

impl StructureDef {
    pub fn tables_mut(&mut self) -> Vec<&mut Vec<Entry>> {
        match self {
            StructureDef::Hopf {
                mult,
                unit,
                comult,
                counit,
                antipode,
                ..
            } => vec![mult, unit, comult, counit, antipode],
            StructureDef::Algebra { mult, unit, .. } => vec![mult, unit],
            StructureDef::Coalgebra { comult, counit, .. } => vec![comult, counit],
            StructureDef::Action { table, .. } | StructureDef::Coaction { table, .. } => vec![table],
            StructureDef::Sayd { action, coaction, .. } => vec![action, coaction],
            StructureDef::CoalgebraAction { pairing, .. } => vec![pairing],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BundleKind {
    ModuleAlgebra,
    ComoduleAlgebra,
    ModuleCoalgebra,
}

/// A carrier, its symmetry and its coefficients, by structure name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDef {
    pub kind: BundleKind,
    /// An algebra or coalgebra structure, or a Hopf structure standing for
    /// its underlying algebra or coalgebra.
    pub carrier: String,
    pub symmetry: String,
    pub coefficients: String,
}

/// A cochain given by its ambient values at `[m, x_0, …, x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDef {
    pub bundle: String,
    pub degree: usize,
    pub values: Vec<ValueAt>,
}

/// An element of a bundle's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDef {
    pub bundle: String,
    pub values: Vec<ValueAt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JobDef {
    Verify,
    Hc {
        bundle: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Cup1 {
        phi: String,
        psi: String,
    },
    Cup2 {
        x: String,
        psi: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<String>,
    },
    Homotopy {
        u: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
}

/// A parsed `.hcs` file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub field: String,
    #[serde(deserialize_with = "strict_map")]
    pub spaces: BTreeMap<String, Vec<String>>,
    #[serde(deserialize_with = "strict_map")]
    pub structures: BTreeMap<String, StructureDef>,
    #[serde(default, deserialize_with = "strict_map", skip_serializing_if = "BTreeMap::is_empty")]
    pub bundles: BTreeMap<String, BundleDef>,
    #[serde(default, deserialize_with = "strict_map", skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainDef>,
    #[serde(default, deserialize_with = "strict_map", skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub jobs: Vec<JobDef>,
}

impl SpecDocument {
    /// Sorts every entry list and drops zero coefficients, so that equal
    /// documents have equal serializations.
    pub fn normalize(&mut self) {
        for s in self.structures.values_mut() {
            for t in s.tables_mut() {
                t.retain(|e| e.value.0 != Rational::from_integer(0.into()));
                t.sort_by(|a, b| (&a.inputs, &a.output).cmp(&(&b.inputs, &b.output)));
            }
        }
        let values = self
            .cochains
            .values_mut()
            .map(|c| &mut c.values)
            .chain(self.elements.values_mut().map(|e| &mut e.values));
        for v in values {
            v.retain(|e| e.value.0 != Rational::from_integer(0.into()));
            v.sort_by(|a, b| a.at.cmp(&b.at));
        }
    }
}

/// Parses a document. Errors carry the line and column of the offending
/// token.
pub fn parse_spec(text: &str) -> Result<SpecDocument, CliError> {
    let mut doc: SpecDocument = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    if doc.field != "Q" {
        return Err(CliError::Resolution(format!(
            "field must be \"Q\", got {:?}",
            doc.field
        )));
    }
    doc.normalize();
    Ok(doc)
}

/// Canonical text: objects expanded one key per line in sorted order,
/// leaf records (entries, values, jobs, bases) kept on a single line.
pub fn serialize_spec(doc: &SpecDocument) -> String {
    let mut doc = doc.clone();
    doc.normalize();
    let value = serde_json::to_value(&doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(map) => map.values().all(|i| match i {
            Value::Array(items) => items.iter().all(|j| !j.is_array() && !j.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    if is_leaf(v) {
        out.push_str(&compact(v));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter()
                .map(|(k, i)| format!("{}: {}", serde_json::to_string(k).unwrap(), compact(i)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => serde_json::to_string(other).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "field": "Q",
  "spaces": {"H": ["1"]},
  "structures": {
    "k": {"algebra": {"space": "H",
          "mult": [{"inputs": ["1", "1"], "output": ["1"], "value": "2/2"}],
          "unit": [{"inputs": [], "output": ["1"], "value": "1"}]}}
  }
}"#;

    #[test]
    fn parse_then_serialize_is_canonical() {
        let doc = parse_spec(SMALL).unwrap();
        let text = serialize_spec(&doc);
        assert!(text.contains(r#"{"inputs": ["1", "1"], "output": ["1"], "value": "1"}"#));
        assert_eq!(parse_spec(&text).unwrap(), doc);
        assert_eq!(serialize_spec(&parse_spec(&text).unwrap()), text);
    }

    #[test]
    fn zero_denominator_is_a_positioned_error() {
        let bad = SMALL.replace("\"2/2\"", "\"1/0\"");
        match parse_spec(&bad) {
            Err(CliError::Parse { line, message, .. }) => {
                assert_eq!(line, 6);
                assert!(message.contains("zero denominator"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_and_floats_are_rejected() {
        let extra = SMALL.replace("\"field\": \"Q\",", "\"field\": \"Q\", \"colour\": 1,");
        assert!(matches!(parse_spec(&extra), Err(CliError::Parse { line: 2, .. })));
        let inner = SMALL.replace("\"space\": \"H\",", "\"space\": \"H\", \"extra\": [],");
        assert!(matches!(parse_spec(&inner), Err(CliError::Parse { line: 5, .. })));
        let float = SMALL.replace("\"2/2\"", "1.0");
        assert!(matches!(parse_spec(&float), Err(CliError::Parse { .. })));
        let dup = SMALL.replace(
            "\"spaces\": {\"H\": [\"1\"]}",
            "\"spaces\": {\"H\": [\"1\"], \"H\": [\"1\"]}",
        );
        assert!(matches!(parse_spec(&dup), Err(CliError::Parse { .. })));
    }

    #[test]
    fn field_must_be_rational() {
        let f = SMALL.replace("\"field\": \"Q\"", "\"field\": \"F2\"");
        assert!(matches!(parse_spec(&f), Err(CliError::Resolution(_))));
    }
}
