use std::collections::BTreeMap;

use hopf_cyclic::calculi::{check_dg, ConvolutionDg, DualCalculus, PairLc, SmashDg, UniversalCalculus};
use hopf_cyclic::fixtures::{fixture, sign_coalgebra_action};
use hopf_cyclic::products::HomAlgebra;
use hopf_cyclic::{q, Action, Algebra, Coaction, Limits, Rational, Symmetry, SymmetryBundle};

fn bundle(name: &str) -> SymmetryBundle {
    fixture(name).unwrap().bundle().unwrap().clone()
}

fn module_algebra(name: &str) -> (Algebra, Action) {
    match bundle(name).symmetry {
        Symmetry::ModuleAlgebra { algebra, action } => (algebra, action),
        _ => unreachable!(),
    }
}

fn comodule_algebra(name: &str) -> (Algebra, Coaction) {
    match bundle(name).symmetry {
        Symmetry::ComoduleAlgebra { algebra, coaction } => (algebra, coaction),
        _ => unreachable!(),
    }
}

fn lc(terms: &[(&[usize], i64)]) -> BTreeMap<Vec<usize>, Rational> {
    terms.iter().map(|(k, c)| (k.to_vec(), q(*c))).collect()
}

fn pair(terms: &[(&[usize], &[usize], i64)]) -> PairLc {
    terms
        .iter()
        .map(|(a, b, c)| ((a.to_vec(), b.to_vec()), q(*c)))
        .collect()
}

const X: usize = 1;

#[test]
fn generator_acts_trivially_on_x_dx() {
    let (alg, action) = module_algebra("signA");
    let om = UniversalCalculus::new(alg, 2, &Limits::default()).unwrap();
    // g·(x dx) = (−x) d(−x)
    assert_eq!(om.act(&action, 1, &[X, X]), lc(&[(&[X, X], 1)]));
    assert_eq!(om.act(&action, 1, &[om.tilde(), X]), lc(&[(&[om.tilde(), X], -1)]));
}

#[test]
fn leibniz_rewriting_of_dx_x() {
    let (alg, _) = module_algebra("signA");
    let om = UniversalCalculus::new(alg, 2, &Limits::default()).unwrap();
    let t = om.tilde();
    let mut sum = om.mul(&[t, X], &[X]);
    for (k, c) in om.mul(&[X], &[t, X]) {
        *sum.entry(k).or_insert_with(|| q(0)) += c;
    }
    sum.retain(|_, c| *c != q(0));
    // (dx)x + x dx = d(x²) = d(1) = 1̃ d1
    assert_eq!(sum, lc(&[(&[t, 0], 1)]));
    assert_eq!(om.d(&[X]), lc(&[(&[t, X], 1)]));
    assert!(om.d(&[t, X]).is_empty());
}

#[test]
fn regular_coaction_on_g_dg() {
    let (alg, coaction) = comodule_algebra("B=H-kZ2");
    let om = UniversalCalculus::new(alg, 2, &Limits::default()).unwrap();
    // coaction(g dg) = g·g ⊗ g dg = 1 ⊗ g dg
    assert_eq!(om.coact(&coaction, &[1, 1]), lc(&[(&[0, 1, 1], 1)]));
    // coaction(1̃ dg) = g ⊗ 1̃ dg
    let t = om.tilde();
    assert_eq!(om.coact(&coaction, &[t, 1]), lc(&[(&[1, t, 1], 1)]));
}

#[test]
fn universal_calculi_are_dg_algebras() {
    for name in ["signA", "funZ3", "adjoint-sweedler4"] {
        let (alg, action) = module_algebra(name);
        let om = UniversalCalculus::new(alg, 3, &Limits::default()).unwrap();
        let r = check_dg(&om, 3);
        assert!(r.passed(), "{name}:\n{r}");
        let r = om.check_action(&action, 3);
        assert!(r.passed(), "{name} action:\n{r}");
    }
    for name in ["B=H-kZ2", "B=H-kZ3", "M2graded"] {
        let (alg, coaction) = comodule_algebra(name);
        let om = UniversalCalculus::new(alg, 3, &Limits::default()).unwrap();
        assert!(check_dg(&om, 3).passed(), "{name}");
        let r = om.check_coaction(&coaction, 3);
        assert!(r.passed(), "{name} coaction:\n{r}");
    }
}

#[test]
fn dual_calculi_are_dg_coalgebras() {
    for name in ["C=H-kZ2", "C=H-kZ3", "C=H-kS3", "C=H-sweedler4"] {
        let Symmetry::ModuleCoalgebra { coalgebra, action } = bundle(name).symmetry else {
            unreachable!()
        };
        let theta = DualCalculus::new(coalgebra, 3, &Limits::default()).unwrap();
        let r = theta.check(&action, 3);
        assert!(r.passed(), "{name}:\n{r}");
    }
}

fn sign_smash() -> SmashDg {
    let (a, action) = module_algebra("signA");
    let (b, coaction) = comodule_algebra("B=H-kZ2");
    let limits = Limits::default();
    SmashDg::new(
        UniversalCalculus::new(a, 2, &limits).unwrap(),
        action,
        UniversalCalculus::new(b, 2, &limits).unwrap(),
        coaction,
    )
    .unwrap()
}

#[test]
fn smash_degree_zero_product() {
    let sm = sign_smash();
    // (x⊗g)(x⊗1) = x(g·x) ⊗ g = −1 ⊗ g
    assert_eq!(
        sm.mul(&(vec![X], vec![1]), &(vec![X], vec![0])),
        pair(&[(&[0], &[1], -1)])
    );
    assert_eq!(
        sm.mul(&(vec![X], vec![0]), &(vec![X], vec![1])),
        pair(&[(&[0], &[1], 1)])
    );
}

#[test]
fn smash_sign_rule() {
    let sm = sign_smash();
    let t = sm.omega.tilde();
    let tg = sm.gamma.tilde();
    // γ = 1̃ dg of degree 1 moves past ω' = 1: no sign, the action of g is visible.
    let got = sm.mul(&(vec![t, X], vec![tg, 1]), &(vec![X], vec![0]));
    let want = sm.omega.mul(&[t, X], &[X]);
    let mut expect = PairLc::new();
    for (k, c) in want {
        // g·x = −x
        for (g, d) in sm.gamma.mul(&[tg, 1], &[0]) {
            expect.insert((k.clone(), g), -c.clone() * d);
        }
    }
    assert_eq!(got, expect);
    // ω' = 1̃ dx of degree 1 picks up −1 and the action of g.
    let got = sm.mul(&(vec![0], vec![tg, 1]), &(vec![t, X], vec![0]));
    let mut expect = PairLc::new();
    for (k, c) in sm.omega.mul(&[0], &[t, X]) {
        for (g, d) in sm.gamma.mul(&[tg, 1], &[0]) {
            expect.insert((k.clone(), g), c.clone() * d);
        }
    }
    assert_eq!(got, expect);
}

#[test]
fn smash_is_a_dg_algebra() {
    let r = check_dg(&sign_smash(), 2);
    assert!(r.passed(), "{r}");
}

#[test]
fn convolution_is_a_dg_algebra() {
    let act = sign_coalgebra_action();
    let limits = Limits::default();
    let conv = ConvolutionDg::new(
        DualCalculus::new(act.coalgebra.clone(), 2, &limits).unwrap(),
        UniversalCalculus::new(act.algebra.clone(), 2, &limits).unwrap(),
    );
    let r = check_dg(&conv, 2);
    assert!(r.passed(), "{r}");
}

#[test]
fn evaluation_map_is_multiplicative() {
    let act = sign_coalgebra_action();
    let hom = HomAlgebra::new(&act);
    hom.certify_embedding(&act).unwrap();
    let ex = hom.embed(&act, &[(X, q(1))]);
    let exx = hom.convolve(&act, &ex, &ex);
    // (e(x)∗e(x))(g) = (−x)(−x) = 1
    let da = act.algebra.dim();
    assert_eq!(exx[da..2 * da].to_vec(), vec![q(1), q(0)]);
    assert_eq!(exx, hom.unit(&act));
}
