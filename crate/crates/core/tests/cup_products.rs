use hopf_cyclic::cyclic::{Cochain, CyclicComplex};
use hopf_cyclic::exactla::{q, Rational};
use hopf_cyclic::fixtures::{fixture, sign_coalgebra_action, Payload};
use hopf_cyclic::multilin::{Radix, Space};
use hopf_cyclic::products::{smash_algebra, FirstCup, SecondCup};
use hopf_cyclic::{Algebra, Limits, SymmetryBundle, Validate};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bundle(name: &str) -> SymmetryBundle {
    fixture(name).unwrap().bundle().unwrap().clone()
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

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-4..=4))).collect()
}

/// Basis of the cyclic cocycles in degree `n`, as cochains.
fn cocycles(cx: &CyclicComplex, n: usize) -> Vec<Cochain> {
    cx.cyclic_cocycles(n)
        .basis_vectors()
        .into_iter()
        .map(|coords| Cochain { degree: n, coords })
        .collect()
}

#[test]
fn smash_of_sign_algebra_and_group() {
    let alg = smash_algebra(&bundle("signA"), &bundle("B=H-kZ2")).unwrap();
    assert!(alg.validate().passed());
    let idx = |s: &str| alg.space.index_of(s).unwrap();
    // (x#g)(x#1) = x(g·x) # g = −1#g
    assert_eq!(alg.mul_basis(idx("x#g"), idx("x#1")), &vec![(idx("1#g"), q(-1))]);
    assert_eq!(alg.mul_basis(idx("x#1"), idx("1#g")), &vec![(idx("x#g"), q(1))]);
}

/// The first cup product over the trivial Hopf algebra against the plain
/// tensor-product formulas, on arbitrary cochains.
#[test]
fn first_cup_without_symmetry_matches_tensor_formulas() {
    let a = SymmetryBundle::ordinary("M2", matrices());
    let b = SymmetryBundle::ordinary_comodule("M2", matrices());
    let cup = FirstCup::new(&a, &b, 2, &Limits::default()).unwrap();
    let alg = matrices();
    let d = 4;
    let mul = |x: usize, y: usize| -> Vec<(usize, Rational)> { alg.mul_basis(x, y).clone() };
    let eval = |f: &[Rational], args: &[Vec<(usize, Rational)>]| -> Rational {
        let radix = Radix::new(
            std::iter::once(1)
                .chain(std::iter::repeat_n(d, args.len()))
                .collect(),
        );
        let mut total = Rational::zero();
        let mut stack: Vec<(Vec<usize>, Rational)> = vec![(vec![0], q(1))];
        for arg in args {
            stack = stack
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
        for (k, c) in stack {
            total += c * &f[radix.encode(&k)];
        }
        total
    };
    let one = |i: usize| vec![(i, q(1))];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (qd, pd) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
        let psi = random_vec(&mut rng, d.pow(qd as u32 + 1));
        let phi = random_vec(&mut rng, d.pow(pd as u32 + 1));
        let got = cup.cup_raw(&psi, qd, &phi, pd);
        let out_radix = &cup.target.spaces[qd + pd].radix;
        for key in out_radix.iter() {
            let ab: Vec<(usize, usize)> = key[1..].iter().map(|&x| (x / d, x % d)).collect();
            let (a, b): (Vec<usize>, Vec<usize>) = ab.into_iter().unzip();
            let want = match (qd, pd) {
                (0, 0) => eval(&psi, &[one(a[0])]) * eval(&phi, &[one(b[0])]),
                (1, 0) => eval(&psi, &[one(a[0]), one(a[1])]) * eval(&phi, &[mul(b[0], b[1])]),
                (0, 1) => eval(&psi, &[mul(a[0], a[1])]) * eval(&phi, &[one(b[0]), one(b[1])]),
                (2, 0) => {
                    eval(&psi, &[one(a[0]), one(a[1]), one(a[2])])
                        * eval(&phi, &[alg.mul_sparse(&mul(b[0], b[1]), &one(b[2]))])
                }
                (0, 2) => {
                    eval(&psi, &[alg.mul_sparse(&mul(a[0], a[1]), &one(a[2]))])
                        * eval(&phi, &[one(b[0]), one(b[1]), one(b[2])])
                }
                (1, 1) => {
                    let p1 = eval(&psi, &[one(a[0]), mul(a[1], a[2])]) - eval(&psi, &[mul(a[0], a[1]), one(a[2])]);
                    let f1 = eval(&phi, &[mul(b[0], b[1]), one(b[2])]);
                    let p2 = eval(&psi, &[mul(a[0], a[1]), one(a[2])]);
                    let f2 = eval(&phi, &[one(b[0]), mul(b[1], b[2])]) - eval(&phi, &[mul(b[0], b[1]), one(b[2])]);
                    p1 * f1 - p2 * f2
                }
                _ => unreachable!(),
            };
            assert_eq!(got[out_radix.encode(&key)], want, "(q,p)=({qd},{pd}) at {key:?}");
        }
    }
}

#[test]
fn first_cup_gives_cyclic_cocycles_bilinearly_and_on_classes() {
    let lim = Limits::default();
    for (an, bn) in [("signA", "B=H-kZ2"), ("signA-Mdelta", "B=H-kZ2-Mdelta")] {
        let cup = FirstCup::new(&bundle(an), &bundle(bn), 2, &lim).unwrap();
        let mut checked = 0;
        for qd in 0..=2 {
            for pd in 0..=(2 - qd) {
                let zs_a = cocycles(&cup.a, qd);
                let zs_b = cocycles(&cup.b, pd);
                for psi in &zs_a {
                    for phi in &zs_b {
                        let out = cup.cup(psi, phi).unwrap();
                        assert!(cup.target.is_cyclic_cocycle(&out));
                        for seed in 0..5 {
                            assert!(cup.class_invariance_check(psi, phi, seed, 1).unwrap());
                        }
                        checked += 1;
                    }
                }
                if zs_a.len() >= 2 && !zs_b.is_empty() {
                    let (s, t) = (q(3), q(-2));
                    let comb = Cochain {
                        degree: qd,
                        coords: zs_a[0]
                            .coords
                            .iter()
                            .zip(&zs_a[1].coords)
                            .map(|(x, y)| &s * x + &t * y)
                            .collect(),
                    };
                    let lhs = cup.cup(&comb, &zs_b[0]).unwrap().coords;
                    let r0 = cup.cup(&zs_a[0], &zs_b[0]).unwrap().coords;
                    let r1 = cup.cup(&zs_a[1], &zs_b[0]).unwrap().coords;
                    let rhs: Vec<Rational> = r0.iter().zip(&r1).map(|(x, y)| &s * x + &t * y).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(checked > 0, "{an} x {bn}");
    }
}

fn trivial_coeffs() -> hopf_cyclic::Sayd {
    match fixture("Mtriv").unwrap().payload {
        Payload::Sayd(s) => s,
        _ => unreachable!(),
    }
}

/// Golden formula for `p = q = 1`:
/// `φ(m⊗c_0⁽¹⁾(a_0)⊗c_0⁽²⁾(a_1)c_1(a_2)) − φ(m⊗c_0(a_0)c_1⁽¹⁾(a_1)⊗c_1⁽²⁾(a_2))`.
#[test]
fn second_cup_golden_degree_one_one() {
    let act = sign_coalgebra_action();
    let cup = SecondCup::new(&act, &trivial_coeffs(), 2, &Limits::default()).unwrap();
    let alg = &act.algebra;
    let co = &act.coalgebra;
    let (dc, da) = (co.dim(), alg.dim());
    let apply = |c: usize, a: usize| act.apply(c, a).clone();
    let eval_phi = |phi: &[Rational], u: &[(usize, Rational)], v: &[(usize, Rational)]| -> Rational {
        let mut s = Rational::zero();
        for (i, x) in u {
            for (j, y) in v {
                s += x * y * &phi[i * da + j];
            }
        }
        s
    };
    for xb in 0..dc * dc {
        for pb in 0..da * da {
            let mut x = vec![q(0); dc * dc];
            x[xb] = q(1);
            let mut phi = vec![q(0); da * da];
            phi[pb] = q(1);
            let got = cup.cup_raw(&x, 1, &phi, 1);
            let (c0, c1) = (xb / dc, xb % dc);
            let radix = Radix::new(vec![1, da, da, da]);
            for key in radix.iter() {
                let (a0, a1, a2) = (key[1], key[2], key[3]);
                let mut want = Rational::zero();
                for (x1, x2, k) in co.comult_basis(c0) {
                    let right = alg.mul_sparse(&apply(*x2, a1), &apply(c1, a2));
                    want += k * eval_phi(&phi, &apply(*x1, a0), &right);
                }
                for (y1, y2, k) in co.comult_basis(c1) {
                    let left = alg.mul_sparse(&apply(c0, a0), &apply(*y1, a1));
                    want -= k * eval_phi(&phi, &left, &apply(*y2, a2));
                }
                assert_eq!(
                    got[radix.encode(&key)],
                    want,
                    "x basis {xb}, phi basis {pb}, triple {key:?}"
                );
            }
        }
    }
}

/// With `p = 0`, `x = m ⊗ c` gives `ψ(m ⊗ c⁽¹⁾(a_0) ⊗ ⋯ ⊗ c⁽ⁿ⁺¹⁾(a_n))`.
#[test]
fn closed_form_agrees_with_the_convolution_formula() {
    let act = sign_coalgebra_action();
    let cup = SecondCup::new(&act, &trivial_coeffs(), 2, &Limits::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let x = random_vec(&mut rng, 4);
        let psi = random_vec(&mut rng, 4);
        assert_eq!(cup.cup_raw(&x, 1, &psi, 1), cup.closed_form_one_one(&x, &psi));
    }
}

#[test]
fn second_cup_degree_zero_coalgebra_side() {
    let act = sign_coalgebra_action();
    let cup = SecondCup::new(&act, &trivial_coeffs(), 2, &Limits::default()).unwrap();
    let da = act.algebra.dim();
    let dc = act.coalgebra.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for qd in 0..=2usize {
        let x = random_vec(&mut rng, dc);
        let psi = random_vec(&mut rng, da.pow(qd as u32 + 1));
        let got = cup.cup_raw(&x, 0, &psi, qd);
        let radix = Radix::new(std::iter::once(1).chain(std::iter::repeat_n(da, qd + 1)).collect());
        for key in radix.iter() {
            let mut want = Rational::zero();
            for (c, xc) in x.iter().enumerate() {
                for (legs, k) in act.coalgebra.iterated_basis(c, qd) {
                    let mut terms: Vec<(Vec<usize>, Rational)> = vec![(vec![0], xc * k)];
                    for (leg, &a) in legs.iter().zip(&key[1..]) {
                        terms = terms
                            .into_iter()
                            .flat_map(|(t, v)| {
                                act.apply(*leg, a).iter().map(move |(r, w)| {
                                    let mut t2 = t.clone();
                                    t2.push(*r);
                                    (t2, &v * w)
                                })
                            })
                            .collect();
                    }
                    for (t, v) in terms {
                        want += v * &psi[radix.encode(&t)];
                    }
                }
            }
            assert_eq!(got[radix.encode(&key)], want, "degree {qd} at {key:?}");
        }
    }
}

#[test]
fn second_cup_gives_cyclic_cocycles_on_classes() {
    let act = sign_coalgebra_action();
    let cup = SecondCup::new(&act, &trivial_coeffs(), 2, &Limits::default()).unwrap();
    let mut checked = 0;
    for pd in 0..=2 {
        for qd in 0..=(2 - pd) {
            for x in cocycles(&cup.c, pd) {
                for psi in cocycles(&cup.a, qd) {
                    let out = cup.cup(&x, &psi).unwrap();
                    assert!(cup.target.is_cyclic_cocycle(&out));
                    assert!(cup.class_invariance_check(&x, &psi, 11, 3).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn hom_algebra_contains_the_embedding() {
    let act = sign_coalgebra_action();
    let hom = hopf_cyclic::products::HomAlgebra::new(&act);
    hom.certify_embedding(&act).unwrap();
    assert!(hom.subspace.dim() >= 1);
}
