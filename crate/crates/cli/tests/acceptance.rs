//! Acceptance criteria 1–10, one line of output per criterion.

use std::path::Path;
use std::time::{Duration, Instant};

use hcyc::run_cli;
use hopf_cyclic::cyclic::{
    check_identities, coboundary_test, to_cocycle, to_trace, trace_checks, Cochain, CyclicComplex,
};
use hopf_cyclic::fixtures::{fixture, mutants, sign_coalgebra_action, Payload, VALID};
use hopf_cyclic::morphisms::{
    ad_chi_fixes_classes, ad_chi_pullback, CoinvariantUnit, ConvolutionUnit, InnerMaps, MatrixMaps,
};
use hopf_cyclic::multilin::{Radix, Space};
use hopf_cyclic::products::{FirstCup, SecondCup};
use hopf_cyclic::{q, Algebra, Kind, Limits, Rational, Sayd, SymmetryBundle};
use num_traits::Zero;

type Outcome = Result<(), String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bundle(name: &str) -> SymmetryBundle {
    fixture(name).unwrap().bundle().unwrap().clone()
}

fn trivial_coeffs() -> Sayd {
    match fixture("Mtriv").unwrap().payload {
        Payload::Sayd(s) => s,
        _ => unreachable!(),
    }
}

fn matrices() -> Algebra {
    let space = Space::from_strs("M2", &["E11", "E12", "E21", "E22"]);
    Algebra::from_fn(space, vec![q(1), q(0), q(0), q(1)], |i, j| {
        if i % 2 == j / 2 {
            vec![(2 * (i / 2) + j % 2, q(1))]
        } else {
            Vec::new()
        }
    })
    .unwrap()
}

/// Deterministic cochain values with no special structure.
fn generic(n: usize, salt: usize) -> Vec<Rational> {
    (0..n).map(|i| q(((i * 7 + salt * 3) % 9) as i64 - 4)).collect()
}

fn cocycles(cx: &CyclicComplex, n: usize) -> Vec<Cochain> {
    cx.cyclic_cocycles(n)
        .basis_vectors()
        .into_iter()
        .map(|coords| Cochain { degree: n, coords })
        .collect()
}

fn minus(a: &Cochain, b: &Cochain) -> Cochain {
    Cochain {
        degree: a.degree,
        coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
    }
}

fn fixture_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.hcs"))
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> hcyc::Outcome {
    run_cli(std::iter::once("hcyc").chain(args.iter().copied()))
}

fn axiom_suite() -> Outcome {
    for name in VALID {
        let report = ok(fixture(name))?.payload.validate();
        ensure!(report.passed(), "{name} fails {:?}", report.failures().next());
    }
    let all = mutants();
    ensure!(all.len() >= 20, "only {} mutants", all.len());
    for m in &all {
        let report = ok(m.build())?.payload.validate();
        let hit = report.failures().find(|c| c.name == m.breaks);
        ensure!(
            hit.is_some_and(|c| c.witness.is_some()),
            "{} does not fail {} with a witness",
            m.name,
            m.breaks
        );
    }
    Ok(())
}

fn complex_identities() -> Outcome {
    let mut kinds = Vec::new();
    for name in [
        "groundA",
        "signA",
        "signA-Mdelta",
        "B=H-kZ2",
        "B=H-kZ3",
        "M2graded",
        "C=H-kZ2",
        "C=H-kS3",
        "C=H-sweedler4",
    ] {
        let b = bundle(name);
        kinds.push(b.kind());
        for c in ok(check_identities(&b, 3, &Limits::default()))? {
            ensure!(c.passed, "{name}: {} fails in degree {}", c.identity, c.degree);
        }
    }
    for k in [Kind::A, Kind::B, Kind::C] {
        ensure!(kinds.contains(&k), "kind {k:?} not covered");
    }
    let sign = bundle("signA");
    let Payload::Sayd(bad) = ok(fixture("Mtriv-badAYD"))?.payload else {
        return Err("Mtriv-badAYD is not a SAYD".into());
    };
    let b = ok(SymmetryBundle::new("signA-badAYD", sign.symmetry.clone(), bad))?;
    let checks = ok(check_identities(&b, 3, &Limits::default()))?;
    ensure!(
        checks.iter().any(|c| !c.passed && c.witness.is_some()),
        "negative control passes every identity"
    );
    let out = cli(&["jobs", &fixture_file("signA-badAYD")]);
    ensure!(
        out.code == 1 && out.stdout.contains("FAIL  lambda-order"),
        "CLI does not report the failure"
    );
    Ok(())
}

fn trace_round_trips() -> Outcome {
    let lim = Limits::default();
    for name in [
        "groundA",
        "signA",
        "signA-Mdelta",
        "B=H-kZ2",
        "M2graded",
        "C=H-kZ2",
        "C=H-kZ3",
        "C=H-sweedler4",
    ] {
        let b = bundle(name);
        let cx = ok(CyclicComplex::new(&b, 3, &lim))?;
        for n in 0..=2 {
            for rep in ok(cx.cohomology(n))?.representatives {
                let tr = ok(to_trace(&cx, &rep, &lim))?;
                ensure!(
                    ok(trace_checks(&b, &tr, &lim))?.passed(),
                    "{name} degree {n}: trace checks fail"
                );
                ensure!(
                    ok(to_cocycle(&cx, &tr, &lim))? == rep,
                    "{name} degree {n}: round trip moves the cocycle"
                );
            }
        }
    }
    Ok(())
}

fn inner_homotopy() -> Outcome {
    let cases = [
        (
            SymmetryBundle::ordinary_comodule("M2", matrices()),
            vec![q(2), q(1), q(0), q(1)],
        ),
        (bundle("M2graded"), vec![q(1), q(0), q(0), q(-1)]),
        (bundle("B=H-kZ2"), vec![q(5), q(0)]),
    ];
    for (b, u) in cases {
        let cx = ok(CyclicComplex::new(&b, 3, &Limits::default()))?;
        let maps = ok(InnerMaps::new(&cx, &ok(CoinvariantUnit::new(&b, &u))?))?;
        for n in 0..=2 {
            ensure!(
                maps.homotopy_identity(n).is_ok(),
                "{} degree {n}: bκ+κb ≠ Ad−id",
                b.name
            );
            ensure!(ok(maps.fixes_classes(n))?, "{} degree {n}: Ad_u moves a class", b.name);
        }
    }
    Ok(())
}

fn matrix_trace() -> Outcome {
    let b = bundle("B=H-kZ2");
    let mm = ok(MatrixMaps::new(&b, 2))?;
    let small = ok(CyclicComplex::new(&b, 2, &Limits::default()))?;
    let big = ok(CyclicComplex::new(&mm.matrices, 2, &Limits::default()))?;
    for p in 0..=2 {
        ensure!(ok(mm.check_identity(&small, &big, p))?, "degree {p}");
    }
    Ok(())
}

fn co_inner() -> Outcome {
    let c = bundle("C=H-kZ2");
    let cx = ok(CyclicComplex::new(&c, 3, &Limits::default()))?;
    for t in [1, 2, -3] {
        let chi = ok(ConvolutionUnit::new(&c, &[q(t), q(t)]))?;
        for n in 0..=2 {
            ensure!(ok(ad_chi_fixes_classes(&cx, &chi, n))?, "χ = {t}ε degree {n}");
            for rep in ok(cx.cohomology(n))?.representatives {
                let moved = ok(ad_chi_pullback(&cx, &chi, &rep))?;
                ensure!(
                    coboundary_test(&cx, &minus(&moved, &rep)).is_some(),
                    "χ = {t}ε degree {n}: class moved"
                );
            }
        }
    }
    Ok(())
}

fn first_cup() -> Outcome {
    let lim = Limits::default();
    let cup = ok(FirstCup::new(&bundle("signA"), &bundle("B=H-kZ2"), 2, &lim))?;
    let mut perturbed = 0;
    for qd in 0..=2 {
        for pd in 0..=(2 - qd) {
            let zs_a = cocycles(&cup.a, qd);
            let zs_b = cocycles(&cup.b, pd);
            for psi in &zs_a {
                for phi in &zs_b {
                    let out = ok(cup.cup(psi, phi))?;
                    ensure!(
                        cup.target.is_cyclic_cocycle(&out),
                        "({qd},{pd}): product leaves ker b ∩ ker(1−λ)"
                    );
                    let tripled = Cochain {
                        degree: qd,
                        coords: psi.coords.iter().map(|x| x * q(3)).collect(),
                    };
                    let scaled: Vec<Rational> = out.coords.iter().map(|x| x * q(3)).collect();
                    ensure!(ok(cup.cup(&tripled, phi))?.coords == scaled, "({qd},{pd}): not linear");
                    for seed in 0..5 {
                        ensure!(
                            ok(cup.class_invariance_check(psi, phi, seed, 1))?,
                            "({qd},{pd}) seed {seed}"
                        );
                        perturbed += 1;
                    }
                }
            }
            // Additivity on arbitrary cochains.
            let (na, nb) = (cup.a.spaces[qd].ambient_dim(), cup.b.spaces[pd].ambient_dim());
            let (x, y, z) = (generic(na, 1), generic(na, 2), generic(nb, 3));
            let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lhs = cup.cup_raw(&sum, qd, &z, pd);
            let rhs: Vec<Rational> = cup
                .cup_raw(&x, qd, &z, pd)
                .iter()
                .zip(cup.cup_raw(&y, qd, &z, pd))
                .map(|(a, b)| a + b)
                .collect();
            ensure!(lhs == rhs, "({qd},{pd}): not additive");
        }
    }
    ensure!(perturbed >= 5, "only {perturbed} perturbations");
    plain_tensor_case()
}

/// Over `H = k` the first cup product is the plain tensor-product formula.
fn plain_tensor_case() -> Outcome {
    let a = SymmetryBundle::ordinary("M2", matrices());
    let b = SymmetryBundle::ordinary_comodule("M2", matrices());
    let cup = ok(FirstCup::new(&a, &b, 2, &Limits::default()))?;
    let alg = matrices();
    let d = 4;
    let radix = |n: usize| Radix::new(std::iter::once(1).chain(std::iter::repeat_n(d, n)).collect());
    let eval = |f: &[Rational], args: &[Vec<(usize, Rational)>]| -> Rational {
        let r = radix(args.len());
        let mut terms: Vec<(Vec<usize>, Rational)> = vec![(vec![0], q(1))];
        for arg in args {
            terms = terms
                .into_iter()
                .flat_map(|(k, c)| {
                    arg.iter().map(move |(i, v)| {
                        let mut k2 = k.clone();
                        k2.push(*i);
                        (k2, &c * v)
                    })
                })
                .collect();
        }
        terms
            .into_iter()
            .fold(Rational::zero(), |s, (k, c)| s + c * &f[r.encode(&k)])
    };
    let one = |i: usize| vec![(i, q(1))];
    let mul = |x: usize, y: usize| alg.mul_basis(x, y).clone();
    for (qd, pd) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let psi = generic(d.pow(qd as u32 + 1), qd + 5);
        let phi = generic(d.pow(pd as u32 + 1), pd + 7);
        let got = cup.cup_raw(&psi, qd, &phi, pd);
        let out = &cup.target.spaces[qd + pd].radix;
        for key in out.iter() {
            let (a, b): (Vec<usize>, Vec<usize>) = key[1..].iter().map(|&x| (x / d, x % d)).unzip();
            let want = match (qd, pd) {
                (0, 0) => eval(&psi, &[one(a[0])]) * eval(&phi, &[one(b[0])]),
                (1, 0) => eval(&psi, &[one(a[0]), one(a[1])]) * eval(&phi, &[mul(b[0], b[1])]),
                (0, 1) => eval(&psi, &[mul(a[0], a[1])]) * eval(&phi, &[one(b[0]), one(b[1])]),
                _ => {
                    let p1 = eval(&psi, &[one(a[0]), mul(a[1], a[2])]) - eval(&psi, &[mul(a[0], a[1]), one(a[2])]);
                    let f1 = eval(&phi, &[mul(b[0], b[1]), one(b[2])]);
                    let p2 = eval(&psi, &[mul(a[0], a[1]), one(a[2])]);
                    let f2 = eval(&phi, &[one(b[0]), mul(b[1], b[2])]) - eval(&phi, &[mul(b[0], b[1]), one(b[2])]);
                    p1 * f1 - p2 * f2
                }
            };
            ensure!(got[out.encode(&key)] == want, "H = k, (q,p)=({qd},{pd}) at {key:?}");
        }
    }
    Ok(())
}

fn second_cup_golden() -> Outcome {
    let act = sign_coalgebra_action();
    let cup = ok(SecondCup::new(&act, &trivial_coeffs(), 2, &Limits::default()))?;
    let (alg, co) = (&act.algebra, &act.coalgebra);
    let (dc, da) = (co.dim(), alg.dim());
    let apply = |c: usize, a: usize| act.apply(c, a).clone();
    let eval = |phi: &[Rational], u: &[(usize, Rational)], v: &[(usize, Rational)]| -> Rational {
        let mut s = Rational::zero();
        for (i, x) in u {
            for (j, y) in v {
                s += x * y * &phi[i * da + j];
            }
        }
        s
    };
    let psi = generic(da * da, 4);
    let radix = Radix::new(vec![1, da, da, da]);
    let mut triples = 0;
    for xb in 0..dc * dc {
        let mut x = vec![q(0); dc * dc];
        x[xb] = q(1);
        let got = cup.cup_raw(&x, 1, &psi, 1);
        ensure!(
            got == cup.closed_form_one_one(&x, &psi),
            "closed form differs for x basis {xb}"
        );
        let (c0, c1) = (xb / dc, xb % dc);
        for key in radix.iter() {
            let (a0, a1, a2) = (key[1], key[2], key[3]);
            let mut want = Rational::zero();
            for (x1, x2, k) in co.comult_basis(c0) {
                want += k * eval(&psi, &apply(*x1, a0), &alg.mul_sparse(&apply(*x2, a1), &apply(c1, a2)));
            }
            for (y1, y2, k) in co.comult_basis(c1) {
                want -= k * eval(&psi, &alg.mul_sparse(&apply(c0, a0), &apply(*y1, a1)), &apply(*y2, a2));
            }
            ensure!(got[radix.encode(&key)] == want, "x basis {xb}, triple {key:?}");
            triples += 1;
        }
    }
    ensure!(radix.size() == 8, "{} basis triples", radix.size());
    ensure!(triples >= 8, "{triples} triples checked");
    let out = cli(&["jobs", &fixture_file("cup2-signA-action")]);
    ensure!(
        out.stdout.contains("pass  closed-form check: exact match"),
        "CLI closed-form check"
    );
    Ok(())
}

fn desk_numbers(start: Instant) -> Outcome {
    let dims = |name: &str| -> Result<Vec<usize>, String> {
        let cx = ok(CyclicComplex::new(&bundle(name), 3, &Limits::default()))?;
        (0..=2).map(|n| ok(cx.cohomology(n)).map(|h| h.hc_dim)).collect()
    };
    ensure!(dims("groundA")? == vec![1, 0, 1], "ground field {:?}", dims("groundA")?);
    ensure!(dims("C=H-kZ2")? == vec![1, 0, 1], "C=H-kZ2 {:?}", dims("C=H-kZ2")?);
    let cx = ok(CyclicComplex::new(&bundle("signA"), 1, &Limits::default()))?;
    let h0 = ok(cx.cohomology(0))?;
    ensure!(h0.hc_dim == 1, "signA HC^0 has dimension {}", h0.hc_dim);
    let tau = cx.ambient(&h0.representatives[0]);
    let normalized: Vec<Rational> = tau.iter().map(|v| v / &tau[0]).collect();
    ensure!(normalized == vec![q(1), q(0)], "τ = {tau:?}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "suite took {elapsed:?}");
    Ok(())
}

fn cli_contract() -> Outcome {
    let names = hcyc::export::fixture_names();
    for name in &names {
        let path = fixture_file(name);
        let bytes = ok(std::fs::read_to_string(&path))?;
        ensure!(cli(&["fmt", &path]).stdout == bytes, "{name} is not byte-canonical");
        let a = cli(&["--out", "json", "jobs", &path]);
        ensure!(
            a == cli(&["--out", "json", "jobs", &path]),
            "{name}: nondeterministic report"
        );
        let negative = hopf_cyclic::fixtures::mutant_by_name(name).is_some() || name.ends_with("badAYD");
        ensure!(a.code == if negative { 1 } else { 0 }, "{name}: exit {}", a.code);
    }
    let dir = ok(tempfile::tempdir())?;
    let bad = dir.path().join("bad.hcs");
    let text = ok(std::fs::read_to_string(fixture_file("kZ2")))?.replacen("\"value\": \"1\"", "\"value\": \"1/0\"", 1);
    ok(std::fs::write(&bad, text))?;
    let bad = bad.to_string_lossy().into_owned();
    let out = cli(&["verify", &bad]);
    ensure!(out.code == 2, "parse error exits {}", out.code);
    let pos: Vec<&str> = out
        .stderr
        .trim_start_matches(&format!("error: {bad}:"))
        .splitn(3, ':')
        .collect();
    ensure!(
        pos.len() == 3 && pos[0].parse::<usize>().is_ok() && pos[1].parse::<usize>().is_ok(),
        "parse error lacks a position: {}",
        out.stderr
    );
    let budget = cli(&["--budget", "10", "hc", &fixture_file("C=H-kZ3"), "--bundle", "C=H-kZ3"]);
    ensure!(budget.code == 3, "budget exit {}", budget.code);
    Ok(())
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(axiom_suite)),
        (
            "b² = 0, λ^(n+1) = id, b preserves cyclic cochains",
            Box::new(complex_identities),
        ),
        ("trace round trips", Box::new(trace_round_trips)),
        ("κ homotopy and inner invariance", Box::new(inner_homotopy)),
        ("i*∘Tr = id on 2×2 matrices", Box::new(matrix_trace)),
        ("co-inner automorphisms fix classes", Box::new(co_inner)),
        ("first cup product", Box::new(first_cup)),
        ("second cup golden formula", Box::new(second_cup_golden)),
        ("desk-scale numbers", Box::new(move || desk_numbers(start))),
        ("command-line contract", Box::new(cli_contract)),
    ];
    // Criterion 9 includes the running time of all others, so it runs last.
    let order = (0..criteria.len()).filter(|&i| i != 8).chain([8]);
    let mut results: Vec<Option<Outcome>> = vec![None; criteria.len()];
    for i in order {
        results[i] = Some((criteria[i].1)());
    }
    let mut failed = Vec::new();
    for (i, ((name, _), r)) in criteria.iter().zip(results).enumerate() {
        match r.expect("every criterion ran") {
            Ok(()) => println!("criterion {}: pass  {name}", i + 1),
            Err(e) => {
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
