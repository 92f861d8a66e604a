//! Job execution and the command-line dispatcher.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hopf_cyclic::cyclic::{check_identities, coboundary_test, describe_key, Cochain, CyclicComplex};
use hopf_cyclic::morphisms::{CoinvariantUnit, InnerMaps};
use hopf_cyclic::products::{FirstCup, SecondCup};
use hopf_cyclic::{Limits, Symmetry, SymmetryBundle};

use crate::error::CliError;
use crate::export::{fixture_document, fixture_names};
use crate::format::{parse_spec, serialize_spec, JobDef, SpecDocument};
use crate::report::{CochainOut, Dims, Report};
use crate::resolve::{ambient_values, element_values, values_of, Resolved};

/// Global settings shared by every job.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_degree: usize,
    pub budget: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: 4,
            budget: 1_000_000,
            seed: 0,
            timing: false,
        }
    }
}

impl Options {
    fn limits(&self, max_degree: usize) -> Limits {
        Limits {
            max_entries: self.budget,
            max_degree,
        }
    }
}

/// Number of seeded perturbations in class-invariance checks.
const PERTURBATIONS: u64 = 5;

/// Reads, parses and resolves a structure file.
pub fn load(path: &str) -> Result<(SpecDocument, Resolved), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    let doc = parse_spec(&text)?;
    let res = Resolved::new(&doc)?;
    Ok((doc, res))
}

fn echo(job: &JobDef, file: &str, opts: &Options) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let serde_json::Value::Object(map) = serde_json::to_value(job).expect("jobs serialize") {
        for (k, v) in map {
            let v = match v {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            out.insert(k, v);
        }
    }
    out.insert("file".into(), file.to_string());
    out.insert("budget".into(), opts.budget.to_string());
    out.entry("max_degree".into())
        .or_insert_with(|| opts.max_degree.to_string());
    out
}

/// Runs one job; engine and resolution failures are recorded in the report.
pub fn run_job(doc: &SpecDocument, res: &Resolved, job: &JobDef, file: &str, opts: &Options) -> Report {
    let start = Instant::now();
    let mut report = Report::new(echo(job, file, opts), opts.seed);
    let outcome = match job {
        JobDef::Verify => {
            verify(res, &mut report);
            Ok(())
        }
        JobDef::Hc { bundle, max_degree } => hc(res, bundle, max_degree.unwrap_or(opts.max_degree), opts, &mut report),
        JobDef::Cup1 { phi, psi } => cup1(doc, res, phi, psi, opts, &mut report),
        JobDef::Cup2 { x, psi, action } => cup2(doc, res, x, psi, action.as_deref(), opts, &mut report),
        JobDef::Homotopy { u, max_degree } => {
            homotopy(doc, res, u, max_degree.unwrap_or(opts.max_degree), opts, &mut report)
        }
    };
    if let Err(e) = outcome {
        report.exit_code = e.exit_code();
        report.error = Some(e.to_string());
    }
    report.finish();
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn verify(res: &Resolved, report: &mut Report) {
    for (who, r) in res.validate_all() {
        for c in &r.checks {
            let name = if c.scope.is_empty() {
                c.name.clone()
            } else {
                format!("{}/{}", c.scope, c.name)
            };
            let detail = c.witness.as_ref().map(|w| format!("witness ({})", w.join(", ")));
            report.verdict(format!("{who}: {name}"), c.passed, detail);
        }
    }
}

fn hc(res: &Resolved, name: &str, n: usize, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let b = res.bundle(name)?;
    let limits = opts.limits(n + 1);
    let checks = check_identities(b, n + 1, &limits)?;
    let mut ok = true;
    for c in &checks {
        ok &= c.passed;
        let detail = c.witness.as_ref().map(|w| format!("witness ({w})"));
        report.verdict(format!("{} (degree {})", c.identity, c.degree), c.passed, detail);
    }
    if !ok {
        return Ok(());
    }
    let cx = CyclicComplex::new(b, n + 1, &limits)?;
    for d in 0..=n {
        let h = cx.cohomology(d)?;
        report.dims.push(Dims {
            degree: d,
            hc: h.hc_dim,
            hh: h.hh_dim,
            cochains: h.cochain_dim,
            cyclic: h.cyclic_dim,
            cyclic_cocycles: h.cocycle_dim,
            cyclic_coboundaries: h.coboundary_dim,
        });
        for (i, rep) in h.representatives.iter().enumerate() {
            report.cochains.push(CochainOut {
                name: format!("HC^{d}[{i}]"),
                degree: d,
                values: values_of(b, d, &cx.ambient(rep)),
            });
        }
    }
    Ok(())
}

/// A named cochain with its bundle.
fn cochain<'a>(
    doc: &SpecDocument,
    res: &'a Resolved,
    name: &str,
) -> Result<(&'a SymmetryBundle, usize, Vec<hopf_cyclic::Rational>), CliError> {
    let def = doc
        .cochains
        .get(name)
        .ok_or_else(|| CliError::Resolution(format!("no cochain named {name:?}")))?;
    let b = res.bundle(&def.bundle)?;
    let amb = ambient_values(b, def.degree, &def.values, &format!("cochain {name}"))?;
    Ok((b, def.degree, amb))
}

fn is_cocycle_note(report: &mut Report, inputs: &[(&str, &CyclicComplex, &Cochain)]) -> bool {
    let mut all = true;
    for (name, cx, c) in inputs {
        let yes = cx.is_cyclic_cocycle(c);
        all &= yes;
        report.notes.push(format!(
            "{name} is a cyclic cocycle: {}",
            if yes { "yes" } else { "no" }
        ));
    }
    all
}

/// Class-level checks on a product of cyclic cocycles.
fn product_checks(
    report: &mut Report,
    target: &CyclicComplex,
    out: &Cochain,
    invariance: impl Fn(u64) -> hopf_cyclic::Result<bool>,
    seed: u64,
) -> Result<(), CliError> {
    report.verdict("product is a cyclic cocycle", target.is_cyclic_cocycle(out), None);
    let mut stable = true;
    for s in seed..seed + PERTURBATIONS {
        stable &= invariance(s)?;
    }
    report.verdict(
        "class invariance",
        stable,
        Some(format!("{PERTURBATIONS} seeded perturbations from seed {seed}")),
    );
    let zero = coboundary_test(target, out).is_some();
    report
        .notes
        .push(format!("product class: {}", if zero { "zero" } else { "nonzero" }));
    Ok(())
}

fn product_values(report: &mut Report, target: &CyclicComplex, n: usize, ambient: &[hopf_cyclic::Rational]) {
    report.cochains.push(CochainOut {
        name: "product".into(),
        degree: n,
        values: values_of(&target.bundle, n, ambient),
    });
}

const SKIPPED: &str = "class-level checks skipped: the inputs are not both cyclic cocycles";

fn cup1(
    doc: &SpecDocument,
    res: &Resolved,
    phi: &str,
    psi: &str,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (bb, p, phi_amb) = cochain(doc, res, phi)?;
    let (ab, q, psi_amb) = cochain(doc, res, psi)?;
    let limits = opts.limits(p + q + 1);
    let cup = FirstCup::new(ab, bb, p + q, &limits)?;
    report.notes.push(format!(
        "(q, p) = ({q}, {p}); (p, q) = ({p}, {q}); product degree {}",
        p + q
    ));
    let psi_c = cup.a.from_ambient(q, &psi_amb)?;
    let phi_c = cup.b.from_ambient(p, &phi_amb)?;
    let raw = cup.cup_raw(&cup.a.ambient(&psi_c), q, &cup.b.ambient(&phi_c), p);
    product_values(report, &cup.target, p + q, &raw);
    if !is_cocycle_note(report, &[("psi", &cup.a, &psi_c), ("phi", &cup.b, &phi_c)]) {
        report.notes.push(SKIPPED.into());
        return Ok(());
    }
    let out = cup.cup(&psi_c, &phi_c)?;
    product_checks(
        report,
        &cup.target,
        &out,
        |s| cup.class_invariance_check(&psi_c, &phi_c, s, 1),
        opts.seed,
    )
}

#[allow(clippy::too_many_arguments)]
fn cup2(
    doc: &SpecDocument,
    res: &Resolved,
    x: &str,
    psi: &str,
    action: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let act = match action {
        Some(name) => res.coalgebra_actions.get(name),
        None if res.coalgebra_actions.len() == 1 => res.coalgebra_actions.values().next(),
        None => None,
    }
    .ok_or_else(|| {
        CliError::Resolution(format!(
            "choose a coalgebra action with --action; available: {}",
            res.coalgebra_actions.keys().cloned().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let (cb, p, x_amb) = cochain(doc, res, x)?;
    let (ab, q, psi_amb) = cochain(doc, res, psi)?;
    let c_sym = Symmetry::ModuleCoalgebra {
        coalgebra: act.coalgebra.clone(),
        action: act.coalgebra_action.clone(),
    };
    let a_sym = Symmetry::ModuleAlgebra {
        algebra: act.algebra.clone(),
        action: act.algebra_action.clone(),
    };
    if cb.symmetry != c_sym || ab.symmetry != a_sym || cb.coeffs != ab.coeffs {
        return Err(CliError::Resolution(format!(
            "cochains {x} and {psi} must live on the coalgebra and algebra of the action, with equal coefficients"
        )));
    }
    let limits = opts.limits(p + q + 1);
    let cup = SecondCup::new(act, &cb.coeffs, p + q, &limits)?;
    let x_c = cup.c.from_ambient(p, &x_amb)?;
    let psi_c = cup.a.from_ambient(q, &psi_amb)?;
    let (xa, pa) = (cup.c.ambient(&x_c), cup.a.ambient(&psi_c));
    let raw = cup.cup_raw(&xa, p, &pa, q);
    if (p, q) == (1, 1) {
        let closed = cup.closed_form_one_one(&xa, &pa);
        let detail = match raw.iter().zip(&closed).position(|(a, b)| a != b) {
            None => "exact match".to_string(),
            Some(i) => {
                let key = cup.target.spaces[2].radix.decode(i);
                format!("mismatch at ({})", describe_key(&cup.target.bundle, &key))
            }
        };
        report.verdict("closed-form check", raw == closed, Some(detail));
    }
    product_values(report, &cup.target, p + q, &raw);
    if !is_cocycle_note(report, &[("x", &cup.c, &x_c), ("psi", &cup.a, &psi_c)]) {
        report.notes.push(SKIPPED.into());
        return Ok(());
    }
    let out = cup.cup(&x_c, &psi_c)?;
    product_checks(
        report,
        &cup.target,
        &out,
        |s| cup.class_invariance_check(&x_c, &psi_c, s, 1),
        opts.seed,
    )
}

fn homotopy(
    doc: &SpecDocument,
    res: &Resolved,
    u: &str,
    n: usize,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let def = doc
        .elements
        .get(u)
        .ok_or_else(|| CliError::Resolution(format!("no element named {u:?}")))?;
    let b = res.bundle(&def.bundle)?;
    let uv = element_values(b, &def.values, &format!("element {u}"))?;
    let unit = CoinvariantUnit::new(b, &uv)?;
    let cx = CyclicComplex::new(b, n + 1, &opts.limits(n + 1))?;
    let maps = InnerMaps::new(&cx, &unit)?;
    for d in 0..=n {
        let detail = match maps.homotopy_identity(d) {
            Ok(()) => None,
            Err(i) => Some(format!(
                "first failing basis cochain ({})",
                describe_key(b, &cx.spaces[d].key_of(cx.spaces[d].lift_basis(i)[0].0))
            )),
        };
        report.verdict(format!("bκ + κb = Ad_u* − id (degree {d})"), detail.is_none(), detail);
    }
    for d in 0..=n {
        report.verdict(format!("Ad_u* fixes HC^{d} classes"), maps.fixes_classes(d)?, None);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hcyc", version, about = "Exact Hopf-cyclic cohomology and cup products")]
pub struct Cli {
    /// Highest cohomological degree computed.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    /// Largest number of matrix entries any construction may allocate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: usize,
    /// Seed for the randomized perturbation checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Include wall-clock time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every axiom of every structure in the file.
    Verify { file: String },
    /// Hochschild and cyclic cohomology of a bundle.
    Hc {
        file: String,
        #[arg(long)]
        bundle: String,
    },
    /// First cup product of a module-algebra and a comodule-algebra cocycle.
    Cup1 {
        file: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Second cup product through a coalgebra action.
    Cup2 {
        file: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        action: Option<String>,
    },
    /// Homotopy between an inner automorphism and the identity.
    Homotopy {
        file: String,
        #[arg(long)]
        u: String,
    },
    /// Run the jobs listed in the file.
    Jobs { file: String },
    /// Print the canonical form of a file.
    Fmt { file: String },
    /// Print the document of a catalog fixture.
    Fixture {
        /// Omit to list the available names.
        name: Option<String>,
    },
}

/// What an invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn render(reports: &[Report], out: OutFormat) -> String {
    match out {
        OutFormat::Text => reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
        OutFormat::Json if reports.len() == 1 => reports[0].to_json(),
        OutFormat::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
    }
}

fn failure(e: &CliError, file: Option<&str>, out: OutFormat) -> Outcome {
    let msg = match (e, file) {
        (CliError::Parse { line, column, message }, Some(f)) => format!("{f}:{line}:{column}: {message}"),
        _ => e.to_string(),
    };
    let stdout = match out {
        OutFormat::Text => String::new(),
        OutFormat::Json => {
            serde_json::to_string_pretty(&serde_json::json!({"error": msg, "exit_code": e.exit_code()})).unwrap() + "\n"
        }
    };
    Outcome {
        stdout,
        stderr: format!("error: {msg}\n"),
        code: e.exit_code(),
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let opts = Options {
        max_degree: cli.max_degree,
        budget: cli.budget,
        seed: cli.seed,
        timing: cli.timing,
    };
    let single = |file: &str, job: JobDef| -> Outcome {
        match load(file) {
            Ok((doc, res)) => {
                let r = run_job(&doc, &res, &job, file, &opts);
                Outcome {
                    stdout: render(std::slice::from_ref(&r), cli.out),
                    stderr: String::new(),
                    code: r.exit_code,
                }
            }
            Err(e) => failure(&e, Some(file), cli.out),
        }
    };
    match &cli.command {
        Command::Verify { file } => single(file, JobDef::Verify),
        Command::Hc { file, bundle } => single(
            file,
            JobDef::Hc {
                bundle: bundle.clone(),
                max_degree: None,
            },
        ),
        Command::Cup1 { file, phi, psi } => single(
            file,
            JobDef::Cup1 {
                phi: phi.clone(),
                psi: psi.clone(),
            },
        ),
        Command::Cup2 { file, x, psi, action } => single(
            file,
            JobDef::Cup2 {
                x: x.clone(),
                psi: psi.clone(),
                action: action.clone(),
            },
        ),
        Command::Homotopy { file, u } => single(
            file,
            JobDef::Homotopy {
                u: u.clone(),
                max_degree: None,
            },
        ),
        Command::Jobs { file } => match load(file) {
            Ok((doc, res)) => {
                if doc.jobs.is_empty() {
                    return failure(
                        &CliError::Resolution("the file lists no jobs".into()),
                        Some(file),
                        cli.out,
                    );
                }
                let reports: Vec<Report> = doc.jobs.iter().map(|j| run_job(&doc, &res, j, file, &opts)).collect();
                Outcome {
                    stdout: render(&reports, cli.out),
                    stderr: String::new(),
                    code: reports.iter().map(|r| r.exit_code).max().unwrap_or(0),
                }
            }
            Err(e) => failure(&e, Some(file), cli.out),
        },
        Command::Fmt { file } => match load(file) {
            Ok((doc, _)) => Outcome {
                stdout: serialize_spec(&doc),
                stderr: String::new(),
                code: 0,
            },
            Err(e) => failure(&e, Some(file), cli.out),
        },
        Command::Fixture { name: None } => Outcome {
            stdout: fixture_names().join("\n") + "\n",
            stderr: String::new(),
            code: 0,
        },
        Command::Fixture { name: Some(name) } => match fixture_document(name) {
            Ok(doc) => Outcome {
                stdout: serialize_spec(&doc),
                stderr: String::new(),
                code: 0,
            },
            Err(e) => failure(&e, None, cli.out),
        },
    }
}

/// Parses arguments and runs; argument errors exit with code 2.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Outcome { stdout, stderr, code }
        }
    }
}
