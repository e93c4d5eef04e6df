use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;

use mirrorcat::arith::{int, rat, CycNumber, QSeries, Rational};
use mirrorcat::coset::{
    build_extension_table, build_summary, extract_commutant_characters, identity_map, induce_k,
    verify_induction_monoidal, verify_mirror, verify_super_mirror, BigradedSeries, CosetError,
    MirrorFailure, RibbonSummary, Statistics, TableJson, TableKind,
};
use mirrorcat::fusion::{sl2_fusion, sl2_window, FusionRing, KClass};
use mirrorcat::virasoro::{simple_character_neg_side, Sign};

fn weights(s: &RibbonSummary) -> Vec<Rational> {
    s.weights().to_vec()
}

#[test]
fn summaries() {
    let minus = build_summary(2, Sign::Minus, 3).unwrap();
    assert_eq!(weights(&minus), vec![int(0), int(-2), int(-5)]);
    let plus = build_summary(2, Sign::Plus, 3).unwrap();
    assert_eq!(weights(&plus), vec![int(0), int(1), int(3)]);
    for s in [&minus, &plus] {
        assert_eq!(s.exponent(0), &int(0));
        assert_eq!(s.degree(0), 0);
        assert_eq!(s.degree(1), 1);
        assert!(s.dims().is_none());
    }
    let p3 = build_summary(3, Sign::Plus, 2).unwrap();
    assert_eq!(p3.exponent(1), &rat(3, 4));
    let m3 = build_summary(3, Sign::Minus, 2).unwrap();
    assert_eq!(m3.weight(1), &rat(-11, 4));
    assert_eq!(m3.exponent(1), &rat(1, 4));
    assert!(build_summary(1, Sign::Plus, 3).is_err());
}

#[test]
fn summary_invariants_are_enforced() {
    let ring = sl2_window(3);
    let w = vec![int(0), int(1), int(3)];
    assert!(matches!(
        RibbonSummary::new(ring.clone(), w.clone(), None, vec![0, 0, 1], None),
        Err(CosetError::DegreeNotAdditive(..))
    ));
    assert!(matches!(
        RibbonSummary::new(ring.clone(), w.clone(), Some(vec![rat(1, 2), int(0), int(0)]), vec![0, 1, 0], None),
        Err(CosetError::UnitData)
    ));
    assert!(RibbonSummary::new(ring, w, None, vec![0, 1], None).is_err());
}

#[test]
fn mirror_pairs_pass() {
    let start = Instant::now();
    for p in 2..=5 {
        for rmax in [1, 7, 30] {
            let su = build_summary(p, Sign::Plus, rmax).unwrap();
            let sv = build_summary(p, Sign::Minus, rmax).unwrap();
            let report = verify_mirror(&su, &sv, &identity_map(rmax as usize));
            assert!(report.is_pass(), "p={p}: {:?}", report.failures);
            assert_eq!(report.skipped.len(), 1);
        }
    }
    assert!(start.elapsed().as_secs() < 5);
}

#[test]
fn integrality_example() {
    let su = build_summary(3, Sign::Plus, 2).unwrap();
    let sv = build_summary(3, Sign::Minus, 2).unwrap();
    assert_eq!(su.weight(1), &rat(7, 4));
    assert_eq!(sv.weight(1), &rat(-11, 4));
    assert_eq!(su.weight(1) + sv.weight(1), int(-1));
}

#[test]
fn negated_twists_fail() {
    let su = build_summary(3, Sign::Plus, 6).unwrap();
    let sv = build_summary(3, Sign::Minus, 6).unwrap();
    // the V side given the U exponents instead of their negatives
    let wrong: Vec<Rational> = (0..6).map(|i| su.exponent(i).clone()).collect();
    let sv_bad = sv.with_exponents(wrong).unwrap();
    let report = verify_mirror(&su, &sv_bad, &identity_map(6));
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, MirrorFailure::TwistReversal { label, .. } if label == "2")));
    // exponent 0 is its own negative
    assert!(!report
        .failures
        .iter()
        .any(|f| matches!(f, MirrorFailure::TwistReversal { label, .. } if label == "1")));
}

#[test]
fn dimensions_are_compared_only_when_given() {
    let su = build_summary(2, Sign::Plus, 4).unwrap();
    let sv = build_summary(2, Sign::Minus, 4).unwrap();
    let dims: Vec<CycNumber> = (1..=4).map(CycNumber::from_int).collect();
    let su_d = su.clone().with_dims(dims.clone()).unwrap();
    let sv_d = sv.clone().with_dims(dims.clone()).unwrap();
    let report = verify_mirror(&su_d, &sv_d, &identity_map(4));
    assert!(report.is_pass());
    assert!(report.skipped.is_empty());
    let mut off = dims;
    off[2] = CycNumber::from_int(-3);
    let sv_bad = sv.with_dims(off).unwrap();
    let report = verify_mirror(&su_d, &sv_bad, &identity_map(4));
    assert_eq!(report.failures.len(), 1);
    assert!(matches!(report.failures[0], MirrorFailure::Dimension { .. }));
}

#[test]
fn bad_label_maps() {
    let su = build_summary(2, Sign::Plus, 4).unwrap();
    let sv = build_summary(2, Sign::Minus, 4).unwrap();
    for tau in [vec![0, 1, 1, 3], vec![1, 0, 2, 3], vec![0, 1, 2]] {
        let report = verify_mirror(&su, &sv, &tau);
        assert!(matches!(report.failures[0], MirrorFailure::NotBijection(_)));
    }
    // swapping 2 and 3 breaks fusion transport
    let report = verify_mirror(&su, &sv, &[0, 2, 1, 3]);
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, MirrorFailure::FusionTransport { .. })));
}

#[test]
fn super_mirror_rules() {
    for p in 2..=4 {
        let su = build_summary(p, Sign::Plus, 12).unwrap();
        let sv = build_summary(p, Sign::Minus, 12).unwrap();
        let exps: Vec<Rational> = (0..12).map(|i| int(1) - sv.exponent(i)).collect();
        let sv_bad = sv.clone().with_exponents(exps).unwrap();
        for v in [&sv, &sv_bad] {
            let plain = verify_mirror(&su, v, &identity_map(12));
            let wrong = verify_super_mirror(&su, v, &identity_map(12), Statistics::Wrong);
            assert_eq!(plain, wrong);
        }
    }
    // one odd label with U exponent 1/2 needs V exponent 0 under correct statistics
    let ring = sl2_window(2);
    let su = RibbonSummary::new(ring.clone(), vec![int(0), rat(1, 2)], None, vec![0, 1], None).unwrap();
    let sv = RibbonSummary::new(ring.clone(), vec![int(0), int(0)], None, vec![0, 1], None).unwrap();
    let tau = identity_map(2);
    assert!(verify_super_mirror(&su, &sv, &tau, Statistics::Correct).is_pass());
    assert!(!verify_super_mirror(&su, &sv, &tau, Statistics::Wrong).is_pass());
    let sv_half = RibbonSummary::new(ring.clone(), vec![int(0), rat(-1, 2)], None, vec![0, 1], None).unwrap();
    assert!(verify_super_mirror(&su, &sv_half, &tau, Statistics::Wrong).is_pass());
    assert!(!verify_super_mirror(&su, &sv_half, &tau, Statistics::Correct).is_pass());
    // even labels do not see the statistics
    let even = RibbonSummary::new(sl2_window(1), vec![int(0)], None, vec![0], None).unwrap();
    let tau1 = identity_map(1);
    assert_eq!(
        verify_super_mirror(&even, &even, &tau1, Statistics::Correct),
        verify_super_mirror(&even, &even, &tau1, Statistics::Wrong)
    );
}

#[test]
fn induction() {
    let su = build_summary(2, Sign::Plus, 10).unwrap();
    let all: BTreeSet<usize> = (0..10).collect();
    let tau = identity_map(10);
    let unit = KClass::single(0);
    assert_eq!(induce_k(&su, &all, &tau, &unit).unwrap(), unit);
    for r in 0..10 {
        assert_eq!(induce_k(&su, &all, &tau, &KClass::single(r)).unwrap(), KClass::single(r));
    }
    let odd: BTreeSet<usize> = (0..10).step_by(2).collect();
    assert!(induce_k(&su, &odd, &tau, &KClass::single(1)).unwrap().is_zero());
    let no_unit: BTreeSet<usize> = [1].into();
    assert!(induce_k(&su, &no_unit, &tau, &unit).is_err());
}

#[test]
fn induction_is_monoidal() {
    let su = build_summary(2, Sign::Plus, 10).unwrap();
    let sv = build_summary(2, Sign::Minus, 10).unwrap();
    let tau = identity_map(10);
    let all: BTreeSet<usize> = (0..10).collect();
    let report = verify_induction_monoidal(&su, &sv, &tau, &all, 10).unwrap();
    assert!(report.is_pass(), "{:?}", report.failures);
    let unit_only: BTreeSet<usize> = [0].into();
    assert!(verify_induction_monoidal(&su, &sv, &tau, &unit_only, 10).unwrap().is_pass());
    let odd: BTreeSet<usize> = (0..10).step_by(2).collect();
    assert!(verify_induction_monoidal(&su, &sv, &tau, &odd, 10).unwrap().is_pass());
}

#[test]
fn corrupted_fusion_breaks_induction() {
    // sl₂ window on 1..=4 with 2 ⊗ 2 = 1 ⊕ 2·3
    let mut entries = Vec::new();
    for r in 1..=4u32 {
        for rp in 1..=4u32 {
            for (&k, &m) in sl2_fusion(r, rp).unwrap().iter() {
                if k <= 4 {
                    let m = if (r, rp, k) == (2, 2, 3) { 2 } else { m };
                    entries.push(((r - 1) as usize, (rp - 1) as usize, (k - 1) as usize, m));
                }
            }
        }
    }
    let labels = (1..=4).map(|r: u32| r.to_string()).collect();
    let ring = FusionRing::new(labels, 0, &entries, Some(4)).unwrap();
    let good = build_summary(2, Sign::Plus, 4).unwrap();
    let su = RibbonSummary::new(ring, good.weights().to_vec(), None, vec![0, 1, 0, 1], None).unwrap();
    let sv = build_summary(2, Sign::Minus, 4).unwrap();
    let all: BTreeSet<usize> = (0..4).collect();
    let report = verify_induction_monoidal(&su, &sv, &identity_map(4), &all, 4).unwrap();
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, MirrorFailure::Induction { i, j, .. } if i == "2" && j == "2")));
}

#[test]
fn ik_table() {
    let t = build_extension_table(TableKind::Ik, 2, 5, 6).unwrap();
    let row = &t.rows[2];
    assert_eq!((row.label, &row.h_u, &row.h_v), (3, &int(3), &int(-5)));
    assert_eq!(&row.h_u + &row.h_v, int(-2));
    for row in &t.rows {
        assert_eq!(&row.h_u + &row.h_v, int(1 - row.label as i64));
        assert_eq!(row.mult, 1);
    }
    let units = t.rows.iter().filter(|r| r.h_u == int(0) && r.h_v == int(0)).count();
    assert_eq!(units, 1);
    assert!(t.bigraded.is_some());
    for p in [3, 4] {
        let t = build_extension_table(TableKind::Ik, p, 6, 4).unwrap();
        t.validate().unwrap();
    }
}

#[test]
fn w_and_m_tables() {
    for p in 2..=4 {
        let w = build_extension_table(TableKind::Wminus, p, 9, 5).unwrap();
        let m = build_extension_table(TableKind::Mminus, p, 9, 5).unwrap();
        assert_eq!(w.rows.len(), 5);
        for (n, (rw, rm)) in w.rows.iter().zip(&m.rows).enumerate() {
            assert_eq!(rw.label, 2 * n as u32 + 1);
            assert_eq!(rw.mult, 2 * n as u64 + 1);
            assert_eq!(rm.mult, 1);
            assert_eq!((rw.label, &rw.h_v, &rw.v_char), (rm.label, &rm.h_v, &rm.v_char));
        }
        assert!(w.bigraded.is_none());
    }
    let w = build_extension_table(TableKind::Wminus, 2, 3, 4).unwrap();
    assert_eq!((w.rows[1].mult, &w.rows[1].h_v), (3, &int(-5)));
}

#[test]
fn broken_tables_are_rejected() {
    let mut t = build_extension_table(TableKind::Ik, 2, 4, 4).unwrap();
    t.rows[1].h_v = t.rows[1].h_v.clone() + rat(1, 2);
    assert!(t.validate().is_err());
    let mut t = build_extension_table(TableKind::Wminus, 2, 5, 4).unwrap();
    t.rows[1].mult = 1;
    assert!(t.validate().is_err());
    let mut t = build_extension_table(TableKind::Mminus, 2, 5, 4).unwrap();
    let dup = t.rows[0].clone();
    t.rows.push(dup);
    assert!(matches!(t.validate(), Err(CosetError::UnitRows(2))));
}

#[test]
fn table_json_round_trip() {
    let t = build_extension_table(TableKind::Ik, 3, 4, 5).unwrap();
    let text = serde_json::to_string(&TableJson::from_table(&t)).unwrap();
    let back: TableJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_table().unwrap(), t);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["kind"], "Ik");
    assert_eq!(v["rows"][1]["hU"], "7/4");
    assert_eq!(v["rows"][1]["hV"], "-11/4");
}

#[test]
fn extraction_round_trip() {
    let start = Instant::now();
    for p in [2, 3] {
        let t = build_extension_table(TableKind::Ik, p, 8, 10).unwrap();
        let u: Vec<QSeries> = t.rows.iter().map(|r| r.u_char.clone().unwrap()).collect();
        let v = extract_commutant_characters(t.bigraded.as_ref().unwrap(), &u).unwrap();
        assert_eq!(v.len(), 8);
        for (r, got) in (1..=8).zip(&v) {
            let expected = simple_character_neg_side(r, p, 10).unwrap();
            assert_eq!(got.offset(), expected.offset());
            assert_eq!(got.coeffs(), expected.coeffs());
        }
    }
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn extraction_single_summand() {
    let one = QSeries::monomial(int(0), 5);
    let v = simple_character_neg_side(3, 2, 5).unwrap();
    let b = BigradedSeries::from_products(&[(&one, &v, 1)]).unwrap();
    let got = extract_commutant_characters(&b, &[one]).unwrap();
    assert_eq!(got[0].offset(), v.offset());
    assert_eq!(got[0].coeffs(), v.coeffs());
}

#[test]
fn extraction_failures() {
    let t = build_extension_table(TableKind::Ik, 2, 4, 6).unwrap();
    let u: Vec<QSeries> = t.rows.iter().map(|r| r.u_char.clone().unwrap()).collect();
    let b = t.bigraded.clone().unwrap();

    // flip the sign of one coefficient on the vacuum line
    let mut flipped = b.clone();
    let c = flipped.coeff(&int(0), &int(2));
    assert_eq!(c, BigInt::from(1));
    flipped.perturb(&int(0), &int(2), &(-BigInt::from(2) * &c)).unwrap();
    assert!(matches!(
        extract_commutant_characters(&flipped, &u),
        Err(CosetError::NegativeCoefficient { index: 0, .. })
    ));

    // a missing U label leaves a residual
    assert!(matches!(
        extract_commutant_characters(&b, &u[..3]),
        Err(CosetError::Residual { .. })
    ));

    let mut reversed = u.clone();
    reversed.swap(0, 1);
    assert!(matches!(
        extract_commutant_characters(&b, &reversed),
        Err(CosetError::UnsortedCharacters)
    ));
}
