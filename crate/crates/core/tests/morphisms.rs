use hopf_cyclic::cyclic::{coboundary_test, Cochain, CyclicComplex};
use hopf_cyclic::fixtures::fixture;
use hopf_cyclic::morphisms::{
    ad_chi_fixes_classes, ad_chi_pullback, CoinvariantUnit, ConvolutionUnit, InnerMaps, MatrixMaps,
};
use hopf_cyclic::multilin::Space;
use hopf_cyclic::{q, Algebra, Limits, Rational, SymmetryBundle};

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
fn kappa_is_a_homotopy_from_ad_u_to_identity() {
    let cases: Vec<(SymmetryBundle, Vec<Rational>)> = vec![
        (matrices(), vec![q(1), q(0), q(0), q(-1)]),
        (matrices(), vec![q(2), q(1), q(0), q(1)]),
        (bundle("M2graded"), vec![q(1), q(0), q(0), q(-1)]),
        (bundle("M2graded"), vec![q(3), q(0), q(0), q(2)]),
        (bundle("B=H-kZ2"), vec![q(5), q(0)]),
    ];
    for (b, u) in cases {
        let cx = CyclicComplex::new(&b, 3, &Limits::default()).unwrap();
        let unit = CoinvariantUnit::new(&b, &u).unwrap();
        let maps = InnerMaps::new(&cx, &unit).unwrap();
        for n in 0..=2 {
            assert_eq!(maps.homotopy_identity(n), Ok(()), "{} u={u:?} degree {n}", b.name);
        }
    }
}

#[test]
fn ad_u_acts_trivially_on_cyclic_classes() {
    for (b, u) in [
        (matrices(), vec![q(1), q(0), q(0), q(-1)]),
        (bundle("M2graded"), vec![q(1), q(0), q(0), q(-1)]),
    ] {
        let cx = CyclicComplex::new(&b, 3, &Limits::default()).unwrap();
        let maps = InnerMaps::new(&cx, &CoinvariantUnit::new(&b, &u).unwrap()).unwrap();
        for n in 0..=2 {
            assert!(maps.fixes_classes(n).unwrap(), "{} degree {n}", b.name);
            for rep in cx.cohomology(n).unwrap().representatives {
                let moved = maps.ad_u_pullback(&rep).unwrap();
                assert!(cx.is_cyclic_cocycle(&moved));
            }
        }
        // κ of a cocycle: b κ φ = Ad φ − φ on Hochschild cocycles.
        let rep = &cx.cohomology(2).unwrap().representatives;
        for phi in rep {
            let k = maps.kappa_homotopy(phi).unwrap();
            let bk = cx.apply_b(&k);
            let diff: Vec<Rational> = maps
                .ad_u_pullback(phi)
                .unwrap()
                .coords
                .iter()
                .zip(&phi.coords)
                .map(|(a, b)| a - b)
                .collect();
            assert_eq!(bk.coords, diff);
        }
    }
}

#[test]
fn corner_embedding_inverts_trace() {
    for name in ["B=H-kZ2", "B=H-kZ2-Mdelta", "M2graded"] {
        let b = bundle(name);
        let mm = MatrixMaps::new(&b, 2).unwrap();
        let small = CyclicComplex::new(&b, 2, &Limits::default()).unwrap();
        let big = CyclicComplex::new(&mm.matrices, 2, &Limits::default()).unwrap();
        for p in 0..=2 {
            assert!(mm.check_identity(&small, &big, p).unwrap(), "{name} degree {p}");
        }
    }
}

#[test]
fn trace_of_a_cyclic_cocycle_is_a_cyclic_cocycle() {
    let b = bundle("B=H-kZ2");
    let mm = MatrixMaps::new(&b, 2).unwrap();
    let small = CyclicComplex::new(&b, 3, &Limits::default()).unwrap();
    let big = CyclicComplex::new(&mm.matrices, 3, &Limits::default()).unwrap();
    for n in 0..=2 {
        for rep in small.cohomology(n).unwrap().representatives {
            let tr = big.from_ambient(n, &mm.tr_map(n, &small.ambient(&rep))).unwrap();
            assert!(big.is_cyclic_cocycle(&tr), "degree {n}");
            assert!(coboundary_test(&big, &tr).is_none(), "degree {n} class vanished");
        }
    }
}

#[test]
fn co_inner_automorphisms_fix_classes() {
    let c = bundle("C=H-kZ2");
    let cx = CyclicComplex::new(&c, 3, &Limits::default()).unwrap();
    for t in [1, 2, -3, 7] {
        let chi = ConvolutionUnit::new(&c, &[q(t), q(t)]).unwrap();
        for n in 0..=2 {
            assert!(ad_chi_fixes_classes(&cx, &chi, n).unwrap(), "χ = {t}ε degree {n}");
        }
        // Group-likes are fixed: Ad_χ(c) = χ(c)χ⁻¹(c)c = c.
        for (i, v) in chi.ad(&c).iter().enumerate() {
            assert_eq!(v, &vec![(i, q(1))]);
        }
    }
    let bad = ConvolutionUnit::new(&c, &[q(1), q(2)]);
    assert!(bad.is_err());
    let zero = ConvolutionUnit::new(&c, &[q(0), q(0)]);
    assert!(zero.is_err());
}

#[test]
fn co_inner_automorphisms_on_sweedler() {
    let c = bundle("C=H-sweedler4");
    let cx = CyclicComplex::new(&c, 3, &Limits::default()).unwrap();
    let eps = c.hopf.counit().to_vec();
    for t in [1, 2, -5] {
        let chi: Vec<Rational> = eps.iter().map(|e| e * q(t)).collect();
        let chi = ConvolutionUnit::new(&c, &chi).unwrap();
        for n in 0..=2 {
            assert!(ad_chi_fixes_classes(&cx, &chi, n).unwrap());
            for rep in cx.cohomology(n).unwrap().representatives {
                let y: Cochain = ad_chi_pullback(&cx, &chi, &rep).unwrap();
                assert_eq!(y, rep);
            }
        }
    }
}
