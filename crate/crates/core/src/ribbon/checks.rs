//! Coherence checks and derived scalars: pentagon, hexagons, snakes,
//! dimensions, twists, and the dimension composite for a simple object.

use std::fmt;

use rayon::prelude::*;

use super::diagram::{basis_state, path, Evaluator, Instr, LTree, RibbonScalars, State};
use super::{channels, RibbonError, SkeletalRibbon};
use crate::arith::CycNumber;
use crate::fusion::{verify_fusion_axioms, FusionReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RibbonViolation {
    /// The two bracketing routes `((ab)c)d → a(b(cd))` disagree on this input tree.
    Pentagon { tree: String },
    /// Hexagon 1 (braiding past a product on the right) or 2 (on the left).
    Hexagon { which: u8, tree: String },
    /// Snake `which` for `label` evaluates to `value` instead of 1.
    Snake { label: String, which: u8, value: String },
    /// `θ_c ≠ R[b,a,c] R[a,b,c] θ_a θ_b`.
    Balancing { a: String, b: String, c: String },
    Evaluation { detail: String },
}

impl fmt::Display for RibbonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pentagon { tree } => write!(f, "pentagon fails on {tree}"),
            Self::Hexagon { which, tree } => write!(f, "hexagon {which} fails on {tree}"),
            Self::Snake { label, which, value } => {
                write!(f, "snake {which} of {label} evaluates to {value}")
            }
            Self::Balancing { a, b, c } => write!(f, "balancing fails for {a} ⊗ {b} → {c}"),
            Self::Evaluation { detail } => write!(f, "evaluation error: {detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RibbonReport {
    pub violations: Vec<RibbonViolation>,
}

impl RibbonReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn states_equal(x: &State, y: &State) -> bool {
    x.len() == y.len() && x.iter().all(|(t, c)| y.get(t).is_some_and(|d| d == c))
}

fn leaf(a: usize) -> LTree {
    LTree::leaf(a)
}

/// Compares the two routes from `((ab)_e c)_g d → x` to `a(b(cd))` on every basis tree.
pub fn verify_pentagon(cat: &SkeletalRibbon) -> RibbonReport {
    let ring = cat.ring();
    let n = ring.len();
    let mut inputs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                if ring.n(a, b, e) != 1 {
                    continue;
                }
                for c in 0..n {
                    for g in 0..n {
                        if ring.n(e, c, g) != 1 {
                            continue;
                        }
                        for d in 0..n {
                            for x in 0..n {
                                if ring.n(g, d, x) == 1 {
                                    inputs.push(LTree::node(
                                        LTree::node(LTree::node(leaf(a), leaf(b), e), leaf(c), g),
                                        leaf(d),
                                        x,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let two = [Instr::AssocInv(path("")), Instr::AssocInv(path(""))];
    let three = [
        Instr::AssocInv(path("L")),
        Instr::AssocInv(path("")),
        Instr::AssocInv(path("R")),
    ];
    let mut violations: Vec<(LTree, RibbonViolation)> = inputs
        .par_iter()
        .filter_map(|t| {
            let ev = Evaluator::new(cat);
            let lhs = ev.run(basis_state(t.clone()), &two);
            let rhs = ev.run(basis_state(t.clone()), &three);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if states_equal(&l, &r) => None,
                (Ok(_), Ok(_)) => Some((t.clone(), RibbonViolation::Pentagon { tree: t.to_string() })),
                (Err(e), _) | (_, Err(e)) => Some((
                    t.clone(),
                    RibbonViolation::Evaluation {
                        detail: e.to_string(),
                    },
                )),
            }
        })
        .collect();
    violations.sort_by(|x, y| x.0.cmp(&y.0));
    RibbonReport {
        violations: violations.into_iter().map(|(_, v)| v).collect(),
    }
}

/// Both hexagons, expressed as equalities of evaluated composites.
pub fn verify_hexagon(cat: &SkeletalRibbon) -> RibbonReport {
    let ring = cat.ring();
    let n = ring.len();
    let ev = Evaluator::new(cat);
    let mut report = RibbonReport::default();
    let root = path("");
    let hex1 = [
        Instr::Assoc(root.clone()),
        Instr::Braid(path("L")),
        Instr::AssocInv(root.clone()),
        Instr::Braid(path("R")),
        Instr::Assoc(root.clone()),
    ];
    let hex2 = [
        Instr::AssocInv(root.clone()),
        Instr::Braid(path("R")),
        Instr::Assoc(root.clone()),
        Instr::Braid(path("L")),
        Instr::AssocInv(root.clone()),
    ];
    let braid = [Instr::Braid(root.clone())];
    let mut check = |which: u8, t: LTree, program: &[Instr]| {
        let lhs = ev.run(basis_state(t.clone()), &braid);
        let rhs = ev.run(basis_state(t.clone()), program);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if states_equal(&l, &r) => {}
            (Ok(_), Ok(_)) => report.violations.push(RibbonViolation::Hexagon {
                which,
                tree: t.to_string(),
            }),
            (Err(e), _) | (_, Err(e)) => report.violations.push(RibbonViolation::Evaluation {
                detail: e.to_string(),
            }),
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (es, fs) = channels(ring, a, b, c, d);
                    for f in fs {
                        check(1, LTree::node(leaf(a), LTree::node(leaf(b), leaf(c), f), d), &hex1);
                    }
                    for e in es {
                        check(2, LTree::node(LTree::node(leaf(a), leaf(b), e), leaf(c), d), &hex2);
                    }
                }
            }
        }
    }
    report
}

/// The two snake composites for every label, each of which must be the identity.
pub fn verify_rigidity(cat: &SkeletalRibbon) -> RibbonReport {
    let ev = Evaluator::new(cat);
    let root = path("");
    let mut report = RibbonReport::default();
    for a in 0..cat.ring().len() {
        let ad = cat.dual(a);
        let snake1 = [
            Instr::LeftUnitInv(root.clone()),
            Instr::Coev(path("L"), a),
            Instr::AssocInv(root.clone()),
            Instr::Ev(path("R"), a),
            Instr::RightUnit(root.clone()),
        ];
        let snake2 = [
            Instr::RightUnitInv(root.clone()),
            Instr::Coev(path("R"), a),
            Instr::Assoc(root.clone()),
            Instr::Ev(path("L"), a),
            Instr::LeftUnit(root.clone()),
        ];
        for (which, start, program) in [(1u8, a, &snake1), (2u8, ad, &snake2)] {
            match ev.run(basis_state(leaf(start)), program) {
                Ok(s) => {
                    let value = s.get(&leaf(start)).cloned().unwrap_or_else(CycNumber::zero);
                    if s.len() > 1 || !value.is_one() {
                        report.violations.push(RibbonViolation::Snake {
                            label: cat.label_name(a).to_string(),
                            which,
                            value: value.to_string(),
                        });
                    }
                }
                Err(e) => report.violations.push(RibbonViolation::Evaluation {
                    detail: e.to_string(),
                }),
            }
        }
    }
    report
}

/// Dimensions normalized by the chosen evaluation/coevaluation pairs:
/// `d_a = e_{a*} ∘ i_a = κ_{a*}`.
pub fn dimensions(cat: &SkeletalRibbon) -> Vec<CycNumber> {
    (0..cat.ring().len())
        .map(|a| cat.pivotal(cat.dual(a)).clone())
        .collect()
}

/// `θ_a = Σ_c (d_c / d_a) R[a,a,c]`, checked to satisfy `θ_1 = 1` and `θ_{a*} = θ_a`.
pub fn twist_from_braiding(cat: &SkeletalRibbon) -> Result<Vec<CycNumber>, RibbonError> {
    let ring = cat.ring();
    let dims = dimensions(cat);
    let mut out = Vec::with_capacity(ring.len());
    for a in 0..ring.len() {
        let inv = dims[a]
            .inverse()
            .ok_or_else(|| RibbonError::ZeroDimension(cat.label_name(a).to_string()))?;
        let mut acc = CycNumber::zero();
        for c in 0..ring.len() {
            if ring.n(a, a, c) == 1 {
                acc = &acc + &(&dims[c] * &cat.r_symbol(a, a, c));
            }
        }
        out.push(&acc * &inv);
    }
    if !out[ring.unit()].is_one() {
        return Err(RibbonError::TwistInconsistent(format!(
            "unit twist is {}",
            out[ring.unit()]
        )));
    }
    for a in 0..ring.len() {
        if out[a] != out[cat.dual(a)] {
            return Err(RibbonError::TwistInconsistent(format!(
                "θ of {} is {} but θ of its dual is {}",
                cat.label_name(a),
                out[a],
                out[cat.dual(a)]
            )));
        }
    }
    Ok(out)
}

/// Twists together with the pivotal scalars `δ_a = θ_a R[a,a*,1] κ_a / κ_{a*}`
/// defined by `e_{a*} ∘ (δ_a ⊗ 1) = e_a ∘ c_{a,a*} ∘ (θ_a ⊗ 1)`.
pub fn pivotal_twists(cat: &SkeletalRibbon) -> Result<RibbonScalars, RibbonError> {
    let twist = twist_from_braiding(cat)?;
    let unit = cat.ring().unit();
    let pivot = (0..cat.ring().len())
        .map(|a| {
            let ad = cat.dual(a);
            let num = &(&twist[a] * &cat.r_symbol(a, ad, unit)) * cat.pivotal(a);
            let den = cat
                .pivotal(ad)
                .inverse()
                .ok_or_else(|| RibbonError::BadPivotal(cat.label_name(ad).to_string()))?;
            Ok(&num * &den)
        })
        .collect::<Result<Vec<_>, RibbonError>>()?;
    Ok(RibbonScalars { twist, pivot })
}

/// The loop `e_a ∘ c_{a,a*} ∘ (θ_a ⊗ 1) ∘ i_a`, checked against `d_a` and
/// against zero.
pub fn quantum_dimension(cat: &SkeletalRibbon, a: usize) -> Result<CycNumber, RibbonError> {
    let scalars = pivotal_twists(cat)?;
    let ev = Evaluator::with_scalars(cat, scalars);
    let root = path("");
    let program = [
        Instr::Coev(root.clone(), a),
        Instr::Twist(path("L")),
        Instr::Braid(root.clone()),
        Instr::Ev(root, a),
    ];
    let value = ev.scalar(leaf(cat.ring().unit()), &program)?;
    let d = &dimensions(cat)[a];
    if d.is_zero() || value.is_zero() {
        return Err(RibbonError::ZeroDimension(cat.label_name(a).to_string()));
    }
    if &value != d {
        return Err(RibbonError::DimensionMismatch {
            label: cat.label_name(a).to_string(),
            loop_value: value.to_string(),
            dim: d.to_string(),
        });
    }
    Ok(value)
}

/// `θ_c = R[b,a,c] R[a,b,c] θ_a θ_b` on every admissible channel.
pub fn verify_balancing(cat: &SkeletalRibbon) -> Result<RibbonReport, RibbonError> {
    let theta = twist_from_braiding(cat)?;
    let ring = cat.ring();
    let n = ring.len();
    let mut report = RibbonReport::default();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if ring.n(a, b, c) != 1 {
                    continue;
                }
                let rhs = &(&cat.r_symbol(b, a, c) * &cat.r_symbol(a, b, c)) * &(&theta[a] * &theta[b]);
                if rhs != theta[c] {
                    report.violations.push(RibbonViolation::Balancing {
                        a: cat.label_name(a).to_string(),
                        b: cat.label_name(b).to_string(),
                        c: cat.label_name(c).to_string(),
                    });
                }
            }
        }
    }
    Ok(report)
}

fn run_lemma(cat: &SkeletalRibbon, program: &[Instr]) -> Result<CycNumber, RibbonError> {
    let scalars = pivotal_twists(cat)?;
    let ev = Evaluator::with_scalars(cat, scalars);
    let u = cat.ring().unit();
    ev.scalar(LTree::node(leaf(u), leaf(u), u), program)
}

/// Scalar `s` with composite `= s · l_1` for the chain
/// `1⊗1 → (j j')(j j') → ((j j')j)j' → ((j' j)j)j' → (j'(j j))j' → (j'(j j))j'
///  → ((j' j)j)j' → (j' j)(j j') → 1 ⊗ (j j') → j j' → j'' j' → 1`
/// built from coevaluations, inverse braidings, associators, evaluations
/// and the pivotal isomorphism.
pub fn lemma_ej_scalar(cat: &SkeletalRibbon, j: usize) -> Result<CycNumber, RibbonError> {
    let jd = cat.dual(j);
    let root = path("");
    let program = [
        Instr::Coev(path("L"), j),
        Instr::Coev(path("R"), j),
        Instr::Assoc(root.clone()),
        Instr::InverseBraid(path("LL")),
        Instr::AssocInv(path("L")),
        Instr::InverseBraid(path("LR")),
        Instr::Assoc(path("L")),
        Instr::AssocInv(root.clone()),
        Instr::Ev(path("L"), j),
        Instr::LeftUnit(root.clone()),
        Instr::Pivot(path("L")),
        Instr::Ev(root, jd),
    ];
    run_lemma(cat, &program)
}

/// The same endomorphism before braiding naturality is used: one coevaluation,
/// an inverse braiding, the second coevaluation, a conjugated self-braiding,
/// and the two evaluations applied side by side.
pub fn lemma_ej_scalar_long(cat: &SkeletalRibbon, j: usize) -> Result<CycNumber, RibbonError> {
    let jd = cat.dual(j);
    let root = path("");
    let program = [
        Instr::Coev(path("L"), j),
        Instr::InverseBraid(path("L")),
        Instr::Coev(path("R"), j),
        Instr::Assoc(root.clone()),
        Instr::AssocInv(path("L")),
        Instr::InverseBraid(path("LR")),
        Instr::Assoc(path("L")),
        Instr::AssocInv(root.clone()),
        Instr::Ev(path("L"), j),
        Instr::Pivot(path("RL")),
        Instr::Ev(path("R"), jd),
        Instr::LeftUnit(root),
    ];
    run_lemma(cat, &program)
}

/// The fully simplified form `e_{j'} ∘ (δ_j ⊗ 1) ∘ i_j ∘ l_1`.
pub fn lemma_ej_scalar_reduced(cat: &SkeletalRibbon, j: usize) -> Result<CycNumber, RibbonError> {
    let root = path("");
    let program = [
        Instr::LeftUnit(root.clone()),
        Instr::Coev(root.clone(), j),
        Instr::Pivot(path("L")),
        Instr::Ev(root, cat.dual(j)),
    ];
    run_lemma(cat, &program)
}

/// Everything known about a category, for reporting.
#[derive(Clone, Debug, Default)]
pub struct CategoryReport {
    pub fusion: FusionReport,
    pub pentagon: RibbonReport,
    pub hexagon: RibbonReport,
    pub rigidity: RibbonReport,
    pub balancing: RibbonReport,
    pub dimensions: Vec<CycNumber>,
    pub twists: Vec<CycNumber>,
    /// Labels whose composite disagrees with the dimension, with both values.
    pub lemma_mismatches: Vec<(String, String, String)>,
    pub errors: Vec<String>,
}

impl CategoryReport {
    pub fn is_valid(&self) -> bool {
        self.fusion.is_valid()
            && self.pentagon.is_valid()
            && self.hexagon.is_valid()
            && self.rigidity.is_valid()
            && self.balancing.is_valid()
            && self.lemma_mismatches.is_empty()
            && self.errors.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.fusion.violations.iter().map(|v| v.to_string()).collect();
        for r in [&self.pentagon, &self.hexagon, &self.rigidity, &self.balancing] {
            out.extend(r.violations.iter().map(|v| v.to_string()));
        }
        out.extend(
            self.lemma_mismatches
                .iter()
                .map(|(l, s, d)| format!("dimension composite of {l} is {s}, dimension is {d}")),
        );
        out.extend(self.errors.iter().cloned());
        out
    }
}

/// Runs every check in dependency order; later stages are skipped once an
/// earlier one fails.
pub fn verify_category(cat: &SkeletalRibbon) -> CategoryReport {
    let mut rep = CategoryReport {
        fusion: verify_fusion_axioms(cat.ring()),
        ..Default::default()
    };
    if !rep.fusion.is_valid() {
        return rep;
    }
    rep.pentagon = verify_pentagon(cat);
    if !rep.pentagon.is_valid() {
        return rep;
    }
    rep.hexagon = verify_hexagon(cat);
    rep.rigidity = verify_rigidity(cat);
    if !rep.hexagon.is_valid() || !rep.rigidity.is_valid() {
        return rep;
    }
    match verify_balancing(cat) {
        Ok(b) => rep.balancing = b,
        Err(e) => {
            rep.errors.push(e.to_string());
            return rep;
        }
    }
    rep.dimensions = dimensions(cat);
    match twist_from_braiding(cat) {
        Ok(t) => rep.twists = t,
        Err(e) => rep.errors.push(e.to_string()),
    }
    for j in 0..cat.ring().len() {
        let name = cat.label_name(j).to_string();
        match (quantum_dimension(cat, j), lemma_ej_scalar(cat, j)) {
            (Ok(d), Ok(s)) if d == s => {}
            (Ok(d), Ok(s)) => rep.lemma_mismatches.push((name, s.to_string(), d.to_string())),
            (Err(e), _) | (_, Err(e)) => rep.errors.push(e.to_string()),
        }
    }
    rep
}
