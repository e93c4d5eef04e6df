//! The acceptance suite: ten end-to-end checks with pinned time budgets.
//!
//! Criteria run one after another so each timing is its own; the work
//! inside a criterion may be parallel.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{format_rational, int, rat, CycNumber, QSeries, Rational};
use crate::coset::{
    build_extension_table, build_summary, extract_commutant_characters, identity_map, verify_induction_monoidal,
    verify_mirror, TableKind,
};
use crate::fusion::sl2_fusion;
use crate::oracle::{is_kac_weight, sl2_tensor_by_weights};
use crate::ribbon::fixtures::{parse_category, SHIPPED};
use crate::ribbon::{
    enumerate_abelian_cocycles_z2, gauge_equivalent, lemma_ej_scalar, quantum_dimension, reverse_braiding,
    verify_hexagon, verify_pentagon, verify_rigidity, RibbonError, SkeletalRibbon,
};
use crate::virasoro::{
    kac_determinant_zeros, kac_weight, neg_side_closed_form, simple_character_neg_side, simple_graded_dims,
    KacParams, Sign,
};

/// Seed for the random non-Kac candidates of criterion 5.
pub const KAC_SEED: u64 = 0x6b6163;

/// Fixtures used by criterion 7.
pub const LEMMA_FIXTURES: [&str; 5] = ["z2_trivial", "z2_sign", "z2_semion", "z2_antisemion", "z3"];

/// `(id, name, budget in milliseconds)`.
pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "sl2 fusion rules", 1_000),
    (2, "weight integrality", 1_000),
    (3, "twist reversal", 1_000),
    (4, "closed form vs Gram ranks", 60_000),
    (5, "Kac determinant zero locus", 60_000),
    (6, "Z2 cocycle classes", 5_000),
    (7, "loop scalar equals dimension", 5_000),
    (8, "mirror and induction", 5_000),
    (9, "extension tables", 30_000),
    (10, "commutant extraction round trip", 30_000),
];

#[derive(Debug, Error)]
pub enum AcceptanceError {
    #[error("fixture {name}: {source}")]
    Fixture { name: String, source: RibbonError },
    #[error("no shipped fixture is called `{0}`")]
    UnknownFixture(String),
    #[error("no criterion {0}")]
    UnknownCriterion(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The check itself broke (a panic or an unexpected error).
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass && self.within_budget()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (&self.outcome, self.within_budget()) {
            (Outcome::Pass, true) => "PASS",
            (Outcome::Pass, false) => "SLOW",
            (Outcome::Fail(_), _) => "FAIL",
            (Outcome::Internal(_), _) => "ERROR",
        };
        write!(
            f,
            "[{tag}] {:>2} {:<32} {:>8.3}s / {}s  {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )?;
        match &self.outcome {
            Outcome::Fail(why) | Outcome::Internal(why) => write!(f, ": {why}"),
            Outcome::Pass => Ok(()),
        }
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The suite together with the fixtures it reads.
pub struct Suite {
    fixtures: BTreeMap<String, SkeletalRibbon>,
    inject_fault: bool,
}

impl Suite {
    /// Loads the shipped fixtures.
    pub fn new() -> Result<Self, AcceptanceError> {
        let mut fixtures = BTreeMap::new();
        for (name, text) in SHIPPED {
            let cat = parse_category(text).map_err(|source| AcceptanceError::Fixture {
                name: name.to_string(),
                source,
            })?;
            fixtures.insert(name.to_string(), cat);
        }
        Ok(Self {
            fixtures,
            inject_fault: false,
        })
    }

    /// Replaces the shipped fixture `name` with the category in `text`.
    pub fn with_fixture(mut self, name: &str, text: &str) -> Result<Self, AcceptanceError> {
        if !self.fixtures.contains_key(name) {
            return Err(AcceptanceError::UnknownFixture(name.to_string()));
        }
        let cat = parse_category(text).map_err(|source| AcceptanceError::Fixture {
            name: name.to_string(),
            source,
        })?;
        self.fixtures.insert(name.to_string(), cat);
        Ok(self)
    }

    /// Corrupts the oracle of criterion 1, for testing the harness.
    pub fn with_injected_fault(mut self, on: bool) -> Self {
        self.inject_fault = on;
        self
    }

    pub fn run(&self) -> Vec<CriterionResult> {
        CRITERIA.iter().map(|&(id, _, _)| self.run_one(id).expect("listed criterion")).collect()
    }

    pub fn run_one(&self, id: u8) -> Result<CriterionResult, AcceptanceError> {
        let &(_, name, budget) = CRITERIA
            .iter()
            .find(|c| c.0 == id)
            .ok_or(AcceptanceError::UnknownCriterion(id))?;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| self.check(id)));
        let elapsed = start.elapsed();
        let (outcome, detail) = match result {
            Ok(Ok(detail)) => (Outcome::Pass, detail),
            Ok(Err(why)) => (Outcome::Fail(why), String::new()),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                (Outcome::Internal(msg), String::new())
            }
        };
        Ok(CriterionResult {
            id,
            name,
            outcome,
            detail,
            elapsed,
            budget: Duration::from_millis(budget),
        })
    }

    fn check(&self, id: u8) -> Check {
        match id {
            1 => self.fusion_rules(),
            2 => weight_integrality(),
            3 => twist_reversal(),
            4 => closed_form_vs_ranks(),
            5 => kac_zero_locus(),
            6 => cocycle_classes(),
            7 => self.loop_scalar(),
            8 => mirror_and_induction(),
            9 => extension_tables(),
            10 => extraction_round_trip(),
            _ => unreachable!("ids come from CRITERIA"),
        }
    }

    fn fusion_rules(&self) -> Check {
        let mut pairs = 0;
        for r in 1..=20u32 {
            for rp in 1..=20u32 {
                let got: BTreeMap<u32, u64> = sl2_fusion(r, rp)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|(&k, &m)| (k, m))
                    .collect();
                let mut expected = sl2_tensor_by_weights(r, rp);
                if self.inject_fault && (r, rp) == (2, 3) {
                    *expected.entry(3).or_default() += 1;
                }
                ensure(got == expected, || format!("{r}⊗{rp}: {got:?} vs oracle {expected:?}"))?;
                for &k in got.keys() {
                    ensure((k + r + rp) % 2 == 1, || format!("{r}⊗{rp} contains {k} of wrong parity"))?;
                }
                pairs += 1;
            }
        }
        Ok(format!("{pairs} products"))
    }

    fn loop_scalar(&self) -> Check {
        let mut labels = 0;
        for name in LEMMA_FIXTURES {
            let cat = self.fixtures.get(name).ok_or_else(|| format!("fixture {name} missing"))?;
            for j in 0..cat.ring().len() {
                let d = quantum_dimension(cat, j).map_err(|e| e.to_string())?;
                let e = lemma_ej_scalar(cat, j).map_err(|e| e.to_string())?;
                ensure(d == e, || format!("{name} label {j}: loop {e} vs dimension {d}"))?;
                labels += 1;
            }
        }
        Ok(format!("{labels} labels over {} fixtures", LEMMA_FIXTURES.len()))
    }
}

fn weight_integrality() -> Check {
    for p in 2..=6i64 {
        for r in 1..=50u32 {
            let hp = kac_weight(r, 1, &int(p)).map_err(|e| e.to_string())?;
            let hm = kac_weight(r, 1, &int(-p)).map_err(|e| e.to_string())?;
            let total = &hp + &hm;
            ensure(total == int(1 - r as i64), || {
                format!("p={p} r={r}: total weight {}", format_rational(&total))
            })?;
        }
    }
    Ok("p 2..6, r ≤ 50".into())
}

fn twist_reversal() -> Check {
    for p in 2..=6i64 {
        for r in 1..=50u32 {
            let hp = kac_weight(r, 1, &int(p)).map_err(|e| e.to_string())?;
            let hm = kac_weight(r, 1, &int(-p)).map_err(|e| e.to_string())?;
            let prod = &CycNumber::root_of_unity(&hp) * &CycNumber::root_of_unity(&hm);
            ensure(prod.is_one(), || format!("p={p} r={r}: twist product {prod}"))?;
        }
    }
    Ok("p 2..6, r ≤ 50".into())
}

const CLOSED_FORM_LEVEL: u32 = 12;

fn closed_form_vs_ranks() -> Check {
    let cases: Vec<(u32, u32)> = [2u32, 3].iter().flat_map(|&p| (1..=5).map(move |r| (p, r))).collect();
    cases.par_iter().try_for_each(|&(p, r)| -> Result<(), String> {
        let params = KacParams::new(Sign::Minus.t(p)).map_err(|e| e.to_string())?;
        let h = params.weight(r, 1).map_err(|e| e.to_string())?;
        let ranks = simple_graded_dims(params.c(), &h, CLOSED_FORM_LEVEL);
        let closed = neg_side_closed_form(r, p, CLOSED_FORM_LEVEL).map_err(|e| e.to_string())?;
        let closed: Vec<BigInt> = closed.coeffs().to_vec();
        let ranks: Vec<BigInt> = ranks.into_iter().map(BigInt::from).collect();
        ensure(closed == ranks, || format!("p={p} r={r}: closed form {closed:?} vs ranks {ranks:?}"))
    })?;
    Ok(format!("{} modules through level {CLOSED_FORM_LEVEL}", cases.len()))
}

fn random_non_kac(rng: &mut ChaCha8Rng, t: &Rational, n: u32, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let h = rat(rng.gen_range(-200..200), rng.gen_range(1..30));
        if !is_kac_weight(&h, t, n) && !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

fn kac_zero_locus() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(KAC_SEED);
    let mut tested = 0;
    for p in [2u32, 3] {
        let params = KacParams::new(Sign::Minus.t(p)).map_err(|e| e.to_string())?;
        for n in 1..=6u32 {
            let kac: BTreeSet<Rational> = params.weights_up_to(n).into_iter().collect();
            let mut candidates: Vec<Rational> = kac.iter().cloned().collect();
            candidates.extend(random_non_kac(&mut rng, params.t(), n, 20));
            for (h, vanishes) in kac_determinant_zeros(params.c(), n, &candidates) {
                ensure(vanishes == kac.contains(&h), || {
                    format!("p={p} n={n} h={}: determinant zero is {vanishes}", format_rational(&h))
                })?;
                tested += 1;
            }
        }
    }
    Ok(format!("{tested} candidates"))
}

fn cocycle_classes() -> Check {
    let classes = enumerate_abelian_cocycles_z2(8).map_err(|e| e.to_string())?;
    ensure(classes.len() == 4, || format!("{} classes", classes.len()))?;
    let i = CycNumber::zeta(4, 1);
    let one = CycNumber::one();
    let expected = [one.clone(), i.clone(), -&one, -&i];
    let rs: Vec<CycNumber> = classes.iter().map(|c| c.r_symbol(1, 1, 0)).collect();
    for x in &expected {
        ensure(rs.contains(x), || format!("no class with R = {x}"))?;
    }
    for (c, r) in classes.iter().zip(&rs) {
        ensure(
            verify_pentagon(c).is_valid() && verify_hexagon(c).is_valid() && verify_rigidity(c).is_valid(),
            || format!("class R = {r} fails the axioms"),
        )?;
    }
    // reversal fixes 1 and −1 and swaps i with −i
    let partner = |x: &CycNumber| -> CycNumber {
        if *x == i {
            -&i
        } else if *x == -&i {
            i.clone()
        } else {
            x.clone()
        }
    };
    for (c, r) in classes.iter().zip(&rs) {
        let rev = reverse_braiding(c);
        let mut hits = Vec::new();
        for (d, s) in classes.iter().zip(&rs) {
            if gauge_equivalent(&rev, d).map_err(|e| e.to_string())? {
                hits.push(s.clone());
            }
        }
        ensure(hits == [partner(r)], || format!("reversal sends R = {r} to {hits:?}"))?;
        let back = reverse_braiding(&rev);
        ensure(gauge_equivalent(&back, c).map_err(|e| e.to_string())?, || {
            format!("double reversal moves R = {r}")
        })?;
    }
    Ok("R ∈ {1, i, −1, −i}".into())
}

fn mirror_and_induction() -> Check {
    (2..=5u32).into_par_iter().try_for_each(|p| -> Result<(), String> {
        let su = build_summary(p, Sign::Plus, 30).map_err(|e| e.to_string())?;
        let sv = build_summary(p, Sign::Minus, 30).map_err(|e| e.to_string())?;
        let report = verify_mirror(&su, &sv, &identity_map(30));
        ensure(report.is_pass(), || format!("p={p}: {}", report.failures[0]))
    })?;
    let su = build_summary(2, Sign::Plus, 10).map_err(|e| e.to_string())?;
    let sv = build_summary(2, Sign::Minus, 10).map_err(|e| e.to_string())?;
    let all: BTreeSet<usize> = (0..10).collect();
    let report = verify_induction_monoidal(&su, &sv, &identity_map(10), &all, 10).map_err(|e| e.to_string())?;
    ensure(report.is_pass(), || format!("induction: {}", report.failures[0]))?;
    Ok("mirror p 2..5 rmax 30, induction rmax 10".into())
}

fn extension_tables() -> Check {
    for p in [2u32, 3] {
        let t = build_extension_table(TableKind::Ik, p, 8, 6).map_err(|e| e.to_string())?;
        let zero = int(0);
        let units = t.rows.iter().filter(|r| r.h_u == zero && r.h_v == zero).count();
        ensure(units == 1, || format!("Ik p={p}: {units} unit rows"))?;
        for row in &t.rows {
            let total = &row.h_u + &row.h_v;
            ensure(total == int(1 - row.label as i64), || {
                format!("Ik p={p} r={}: total weight {}", row.label, format_rational(&total))
            })?;
        }
    }
    for p in [2u32, 3, 4] {
        let w = build_extension_table(TableKind::Wminus, p, 9, 6).map_err(|e| e.to_string())?;
        let m = build_extension_table(TableKind::Mminus, p, 9, 6).map_err(|e| e.to_string())?;
        ensure(w.rows.len() == 5 && m.rows.len() == 5, || format!("p={p}: wrong row count"))?;
        for (n, (rw, rm)) in w.rows.iter().zip(&m.rows).enumerate() {
            let n = n as u64;
            ensure(rw.label as u64 == 2 * n + 1 && rw.mult == 2 * n + 1, || {
                format!("W p={p} n={n}: label {} multiplicity {}", rw.label, rw.mult)
            })?;
            ensure(rm.mult == 1 && rm.label == rw.label && rm.v_char == rw.v_char, || {
                format!("M p={p} n={n} is not the multiplicity-one restriction")
            })?;
        }
    }
    Ok("Ik p 2..3, W and M p 2..4".into())
}

fn extraction_round_trip() -> Check {
    for p in [2u32, 3] {
        let t = build_extension_table(TableKind::Ik, p, 8, 10).map_err(|e| e.to_string())?;
        let u: Vec<QSeries> = t.rows.iter().filter_map(|r| r.u_char.clone()).collect();
        let bigraded = t.bigraded.as_ref().ok_or("Ik table without bigraded character")?;
        let v = extract_commutant_characters(bigraded, &u).map_err(|e| e.to_string())?;
        ensure(v.len() == 8, || format!("p={p}: {} characters", v.len()))?;
        for (r, got) in (1..=8).zip(&v) {
            let want = simple_character_neg_side(r, p, 10).map_err(|e| e.to_string())?;
            ensure(got.offset() == want.offset() && got.coeffs() == want.coeffs(), || {
                format!("p={p} r={r}: extracted {got} vs {want}")
            })?;
        }
    }
    Ok("p 2..3, r ≤ 8, 10 levels".into())
}
