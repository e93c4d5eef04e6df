use std::collections::HashMap;

use mirrorcat::arith::{rat, CycNumber};
use mirrorcat::fusion::cyclic_ring;
use mirrorcat::ribbon::{
    apply_gauge, dimensions, enumerate_abelian_cocycles_z2, fixtures, lemma_ej_scalar,
    lemma_ej_scalar_long, lemma_ej_scalar_reduced, quantum_dimension, reverse_braiding,
    twist_from_braiding, verify_balancing, verify_category, verify_hexagon, verify_pentagon,
    verify_rigidity, RibbonViolation, SkeletalRibbon,
};

fn z2(f: CycNumber, r: CycNumber) -> SkeletalRibbon {
    SkeletalRibbon::new(cyclic_ring(2), &[([1, 1, 1, 1, 0, 0], f)], &[([1, 1, 0], r)], None).unwrap()
}

fn i() -> CycNumber {
    CycNumber::zeta(4, 1)
}

fn int(n: i64) -> CycNumber {
    CycNumber::from_int(n)
}

/// Pentagon written out index by index, independent of the tree evaluator.
fn pentagon_by_formula(cat: &SkeletalRibbon) -> bool {
    let ring = cat.ring();
    let n = ring.len();
    let r = 0..n;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    for e in r.clone() {
                        for f in r.clone() {
                            for g in r.clone() {
                                for h in r.clone() {
                                    for k in r.clone() {
                                        if ring.n(a, b, e) * ring.n(e, c, f) * ring.n(f, d, g) == 0
                                            || ring.n(c, d, h) * ring.n(b, h, k) * ring.n(a, k, g) == 0
                                        {
                                            continue;
                                        }
                                        let lhs = &cat.f_symbol(e, c, d, g, f, h) * &cat.f_symbol(a, b, h, g, e, k);
                                        let mut rhs = CycNumber::zero();
                                        for l in r.clone() {
                                            let t = &(&cat.f_symbol(a, b, c, f, e, l) * &cat.f_symbol(a, l, d, g, f, k))
                                                * &cat.f_symbol(b, c, d, k, l, h);
                                            rhs = &rhs + &t;
                                        }
                                        if lhs != rhs {
                                            return false;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

#[test]
fn pentagon_examples() {
    assert!(verify_pentagon(&z2(int(1), int(1))).is_valid());
    assert!(verify_pentagon(&z2(int(-1), i())).is_valid());
    let bad = z2(int(2), int(1));
    let report = verify_pentagon(&bad);
    assert!(!report.is_valid());
    assert!(matches!(report.violations[0], RibbonViolation::Pentagon { .. }));
}

#[test]
fn pentagon_evaluator_agrees_with_formula() {
    let mut cases: Vec<SkeletalRibbon> = fixtures::all().into_iter().map(|(_, c)| c).collect();
    cases.push(z2(int(2), int(1)));
    cases.push(z2(CycNumber::zeta(3, 1), int(1)));
    for cat in cases {
        assert_eq!(verify_pentagon(&cat).is_valid(), pentagon_by_formula(&cat));
    }
}

#[test]
fn hexagon_examples() {
    assert!(verify_hexagon(&z2(int(1), int(1))).is_valid());
    assert!(verify_hexagon(&z2(int(1), int(-1))).is_valid());
    assert!(verify_hexagon(&z2(int(-1), i())).is_valid());
    assert!(verify_hexagon(&z2(int(-1), -i())).is_valid());
    assert!(!verify_hexagon(&z2(int(1), i())).is_valid());
    assert!(!verify_hexagon(&z2(int(-1), int(1))).is_valid());
}

#[test]
fn rigidity_examples() {
    for (name, cat) in fixtures::all() {
        assert!(verify_rigidity(&cat).is_valid(), "{name}");
    }
    let semion = fixtures::z2_semion();
    assert_eq!(semion.pivotal(1), &int(-1));
    let corrupted = semion.with_pivotal(vec![int(1), int(1)]).unwrap();
    let report = verify_rigidity(&corrupted);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, RibbonViolation::Snake { label, .. } if label == "1")));
    // the unit's snakes are untouched by the corruption
    assert!(!report
        .violations
        .iter()
        .any(|v| matches!(v, RibbonViolation::Snake { label, .. } if label == "0")));
}

#[test]
fn dimensions_of_pointed_fixtures() {
    for cat in [fixtures::z2_trivial(), fixtures::z2_sign()] {
        assert_eq!(quantum_dimension(&cat, 0).unwrap(), int(1));
        assert_eq!(quantum_dimension(&cat, 1).unwrap(), int(1));
    }
    for cat in [fixtures::z2_semion(), fixtures::z2_antisemion()] {
        assert_eq!(quantum_dimension(&cat, 0).unwrap(), int(1));
        assert_eq!(quantum_dimension(&cat, 1).unwrap(), int(-1));
    }
    for a in 0..3 {
        assert_eq!(quantum_dimension(&fixtures::z3(), a).unwrap(), int(1));
    }
}

#[test]
fn fibonacci_data() {
    let fib = fixtures::fibonacci();
    let report = verify_category(&fib);
    assert!(report.is_valid(), "{:?}", report.failures());
    let phi = &int(1) + &(&CycNumber::zeta(5, 1) + &CycNumber::zeta(5, 4));
    assert_eq!(quantum_dimension(&fib, 1).unwrap(), phi);
    let theta = twist_from_braiding(&fib).unwrap();
    assert_eq!(theta[1], CycNumber::zeta(5, 2));
    assert_eq!(theta[1].root_exponent(), Some(rat(2, 5)));
}

#[test]
fn twists_of_pointed_fixtures() {
    let semion = fixtures::z2_semion();
    let theta = twist_from_braiding(&semion).unwrap();
    assert!(theta[0].is_one());
    assert_eq!(theta[1].multiplicative_order(8), Some(4));
    // balancing on 1 ⊗ 1 → 0: 1 = θ_1² (R[1,1,0])²
    let r = semion.r_symbol(1, 1, 0);
    assert!((&(&theta[1] * &theta[1]) * &(&r * &r)).is_one());
    assert!(verify_balancing(&semion).unwrap().is_valid());

    let z3 = fixtures::z3();
    let theta = twist_from_braiding(&z3).unwrap();
    for a in 0..3i64 {
        assert_eq!(theta[a as usize], CycNumber::zeta(3, a * a));
    }
    assert_eq!(z3.duals(), &[0, 2, 1]);
}

#[test]
fn reversal() {
    let symmetric = fixtures::z2_sign();
    let rev = reverse_braiding(&symmetric);
    assert_eq!(rev.r_symbol(1, 1, 0), symmetric.r_symbol(1, 1, 0));

    let semion = fixtures::z2_semion();
    let rev = reverse_braiding(&semion);
    assert_eq!(rev.r_symbol(1, 1, 0), -i());
    let back = reverse_braiding(&rev);
    assert_eq!(back.r_symbol(1, 1, 0), i());

    for (name, cat) in fixtures::all() {
        let rev = reverse_braiding(&cat);
        assert!(verify_hexagon(&rev).is_valid(), "{name}");
        let t = twist_from_braiding(&cat).unwrap();
        let tr = twist_from_braiding(&rev).unwrap();
        for (x, y) in t.iter().zip(&tr) {
            assert!((x * y).is_one(), "{name}");
        }
        assert_eq!(dimensions(&cat), dimensions(&rev), "{name}");
        let twice = reverse_braiding(&rev);
        for (k, v) in cat.r_entries() {
            assert_eq!(&twice.r_symbol(k[0], k[1], k[2]), v);
        }
    }
}

#[test]
fn cocycle_classes() {
    let classes = enumerate_abelian_cocycles_z2(8).unwrap();
    let rs: Vec<CycNumber> = classes.iter().map(|c| c.r_symbol(1, 1, 0)).collect();
    assert_eq!(rs, vec![int(1), i(), int(-1), -i()]);
    for c in &classes {
        assert!(verify_pentagon(c).is_valid());
        assert!(verify_hexagon(c).is_valid());
        assert!(verify_rigidity(c).is_valid());
    }
    // the trivial class is symmetric
    assert!((&classes[0].r_symbol(1, 1, 0) * &classes[0].r_symbol(1, 1, 0)).is_one());
    assert!(enumerate_abelian_cocycles_z2(4).is_err());
}

#[test]
fn lemma_composite_equals_dimension() {
    for (name, cat) in fixtures::all() {
        for j in 0..cat.ring().len() {
            let d = quantum_dimension(&cat, j).unwrap();
            assert_eq!(lemma_ej_scalar(&cat, j).unwrap(), d, "{name} label {j}");
            assert_eq!(lemma_ej_scalar_long(&cat, j).unwrap(), d, "{name} label {j}");
            assert_eq!(lemma_ej_scalar_reduced(&cat, j).unwrap(), d, "{name} label {j}");
        }
    }
    assert_eq!(lemma_ej_scalar(&fixtures::z2_trivial(), 0).unwrap(), int(1));
    assert_eq!(lemma_ej_scalar(&fixtures::z2_trivial(), 1).unwrap(), int(1));
    assert_eq!(lemma_ej_scalar(&fixtures::z2_semion(), 1).unwrap(), int(-1));
}

fn gauge(entries: &[([usize; 3], CycNumber)]) -> HashMap<[usize; 3], CycNumber> {
    entries.iter().cloned().collect()
}

#[test]
fn gauge_invariance() {
    let w = &int(2) + &CycNumber::zeta(5, 2);
    let cases = vec![
        (fixtures::fibonacci(), gauge(&[([1, 1, 1], w.clone()), ([1, 1, 0], int(3))])),
        (
            fixtures::z3(),
            gauge(&[
                ([1, 1, 2], CycNumber::zeta(7, 1)),
                ([2, 2, 1], int(-5)),
                ([1, 2, 0], w.clone()),
                ([2, 1, 0], w.clone()),
            ]),
        ),
        (fixtures::z2_semion(), gauge(&[([1, 1, 0], CycNumber::from_rational(rat(2, 3)))])),
    ];
    for (cat, u) in cases {
        let moved = apply_gauge(&cat, &u).unwrap();
        assert!(verify_category(&moved).is_valid());
        assert_eq!(dimensions(&moved), dimensions(&cat));
        assert_eq!(twist_from_braiding(&moved).unwrap(), twist_from_braiding(&cat).unwrap());
        for j in 0..cat.ring().len() {
            assert_eq!(lemma_ej_scalar(&moved, j).unwrap(), lemma_ej_scalar(&cat, j).unwrap());
            assert_eq!(quantum_dimension(&moved, j).unwrap(), quantum_dimension(&cat, j).unwrap());
        }
    }
    // some F-symbol actually moved in the Fibonacci case
    let fib = fixtures::fibonacci();
    let moved = apply_gauge(&fib, &gauge(&[([1, 1, 1], w)])).unwrap();
    assert_ne!(moved.f_symbol(1, 1, 1, 1, 0, 1), fib.f_symbol(1, 1, 1, 1, 0, 1));
}

#[test]
fn gauge_restrictions() {
    let z3 = fixtures::z3();
    assert!(apply_gauge(&z3, &gauge(&[([1, 2, 0], int(2))])).is_err());
    assert!(apply_gauge(&z3, &gauge(&[([0, 1, 1], int(2))])).is_err());
    assert!(apply_gauge(&z3, &gauge(&[([1, 1, 2], int(0))])).is_err());
}

#[test]
fn shipped_fixtures_match_builders() {
    for (name, cat) in fixtures::all() {
        let loaded = fixtures::shipped(name).expect("fixture shipped").unwrap();
        assert_eq!(loaded.ring(), cat.ring(), "{name}");
        let a: Vec<_> = loaded.f_entries().collect();
        let b: Vec<_> = cat.f_entries().collect();
        assert_eq!(a, b, "{name}");
        let a: Vec<_> = loaded.r_entries().collect();
        let b: Vec<_> = cat.r_entries().collect();
        assert_eq!(a, b, "{name}");
        for x in 0..cat.ring().len() {
            assert_eq!(loaded.pivotal(x), cat.pivotal(x));
        }
    }
    assert_eq!(fixtures::SHIPPED.len(), fixtures::all().len());
}

#[test]
fn malformed_categories_are_rejected() {
    assert!(fixtures::parse_category("{").is_err());
    assert!(fixtures::parse_category(r#"{"ring":{"labels":["0"],"unit":0,"N":[[0,0,0,1]],"window":null},"F":[[0,0,0,0,0,0,{"order":1,"coeffs":["2/1"]}]],"R":[]}"#).is_err());
    // singular F block
    assert!(SkeletalRibbon::new(cyclic_ring(2), &[], &[([1, 1, 0], int(1))], None).is_err());
}
