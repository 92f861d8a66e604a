//! Job reports, rendered as text or JSON from the same data.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::format::ValueAt;

/// Conventions fixed where the construction leaves a choice open.
pub const CONVENTIONS: &[&str] = &[
    "kind A and B cochains are functionals on M ⊗ X^{⊗(n+1)}; kind C cochains are chains in M ⊗ C^{⊗(n+1)} modulo the balancing relations",
    "universal forms use the unitization: Ω^n = Ã ⊗ A^{⊗n}",
    "Θ is the graded dual of the universal forms on C*, with ∂ = −dᵀ",
    "κf(b_0..b_{n−1}) = Σ_i (−1)^{i+1} f(b_0u⁻¹, ub_1u⁻¹, …, ub_iu⁻¹, u, b_{i+1}, …, b_{n−1})",
    "kind B traces are taken on the universal forms of the comodule algebra",
    "the cotrace sign (−1)^{deg θ′ · deg θ″} is applied per homogeneous summand of the comultiplication",
    "first cup degrees: ψ on the module algebra has degree q, φ on the comodule algebra has degree p; both orderings are echoed",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub degree: usize,
    pub hc: usize,
    pub hh: usize,
    pub cochains: usize,
    pub cyclic: usize,
    pub cyclic_cocycles: usize,
    pub cyclic_coboundaries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainOut {
    pub name: String,
    pub degree: usize,
    pub values: Vec<ValueAt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub engine: String,
    pub job: BTreeMap<String, String>,
    pub conventions: Vec<String>,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<Dims>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cochains: Vec<CochainOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub exit_code: u8,
}

impl Report {
    pub fn new(job: BTreeMap<String, String>, seed: u64) -> Self {
        Report {
            engine: format!("hcyc {}", env!("CARGO_PKG_VERSION")),
            job,
            conventions: CONVENTIONS.iter().map(|s| s.to_string()).collect(),
            seed,
            verdicts: Vec::new(),
            notes: Vec::new(),
            dims: Vec::new(),
            cochains: Vec::new(),
            error: None,
            timing_ms: None,
            exit_code: 0,
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, passed: bool, detail: Option<String>) {
        self.verdicts.push(Verdict {
            check: check.into(),
            passed,
            detail,
        });
    }

    /// Sets the exit code from the verdicts unless an error already did.
    pub fn finish(&mut self) {
        if self.error.is_none() {
            self.exit_code = if self.verdicts.iter().all(|v| v.passed) { 0 } else { 1 };
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.engine).unwrap();
        let job: Vec<String> = self.job.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(s, "job: {}", job.join(" ")).unwrap();
        writeln!(s, "seed: {}", self.seed).unwrap();
        for c in &self.conventions {
            writeln!(s, "convention: {c}").unwrap();
        }
        for v in &self.verdicts {
            let status = if v.passed { "pass" } else { "FAIL" };
            match &v.detail {
                Some(d) => writeln!(s, "{status}  {}: {d}", v.check).unwrap(),
                None => writeln!(s, "{status}  {}", v.check).unwrap(),
            }
        }
        for n in &self.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        for d in &self.dims {
            writeln!(
                s,
                "HC^{} = {}  HH^{} = {}  (cochains {}, cyclic {}, cyclic cocycles {}, cyclic coboundaries {})",
                d.degree, d.hc, d.degree, d.hh, d.cochains, d.cyclic, d.cyclic_cocycles, d.cyclic_coboundaries
            )
            .unwrap();
        }
        for c in &self.cochains {
            writeln!(s, "cochain {} (degree {}):", c.name, c.degree).unwrap();
            for v in &c.values {
                let (m, rest) = v.at.split_first().expect("values carry a coefficient label");
                writeln!(
                    s,
                    "  [{m} | {}] = {}",
                    rest.join(" ⊗ "),
                    hopf_cyclic::exactla::format_rational(&v.value.0)
                )
                .unwrap();
            }
        }
        if let Some(e) = &self.error {
            writeln!(s, "error: {e}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(s, "time: {t} ms").unwrap();
        }
        writeln!(s, "exit: {}", self.exit_code).unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
