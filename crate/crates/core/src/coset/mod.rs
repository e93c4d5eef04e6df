//! Numerical shadows of a mirror pair `A ≅ ⊕ U_i ⊗ V_i`: ribbon summaries
//! of the two categories, the checks a braid-reversed equivalence forces on
//! them, induction on Grothendieck classes, and extension tables.
//!
//! A label bijection `τ` pairs the U-label `i` with the V-label `τ(i)` that
//! sits next to it in the decomposition. The equivalence itself sends `U_i`
//! to the dual of `V_{τ(i)}`.

mod extract;
mod table;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{congruent_mod1, format_rational, frac_mod1, int, is_integer, CycNumber, Rational};
use crate::fusion::{dual_involution, sl2_window, FusionError, FusionRing, KClass};
use crate::virasoro::{kac_weight, Sign, VirasoroError};

pub use extract::{extract_commutant_characters, BigradedJson, BigradedSeries};
pub use table::{build_extension_table, ExtensionRow, ExtensionTable, RowJson, TableJson, TableKind};

#[derive(Debug, Error)]
pub enum CosetError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Virasoro(#[from] VirasoroError),
    #[error("{what} has {found} entries for {labels} labels")]
    Length {
        what: &'static str,
        found: usize,
        labels: usize,
    },
    #[error("the unit must have twist exponent 0 and degree 0")]
    UnitData,
    #[error("super degree of `{0}` must be 0 or 1")]
    BadDegree(String),
    #[error("super degree is not additive on {0} ⊗ {1} → {2}")]
    DegreeNotAdditive(String, String, String),
    #[error("label map is not a bijection: {0}")]
    NotBijection(String),
    #[error("the induction subset must contain the unit")]
    SubsetWithoutUnit,
    #[error("{0} must be at least {1}")]
    OutOfRange(&'static str, u32),
    #[error("table has {0} unit rows")]
    UnitRows(usize),
    #[error("row {label}: {reason}")]
    BadRow { label: u32, reason: String },
    #[error("U-side characters must have distinct increasing leading exponents")]
    UnsortedCharacters,
    #[error("U-side character {0} is zero")]
    ZeroCharacter(usize),
    #[error("bigraded series does not reach the leading exponent {0} of a U-side character")]
    OutsideWindow(String),
    #[error("no component for U-side character {0}")]
    MissingComponent(usize),
    #[error("component {index} is not divisible by the leading coefficient at q_V^{at}")]
    NotDivisible { index: usize, at: String },
    #[error("negative coefficient in component {index} at q_V^{at}")]
    NegativeCoefficient { index: usize, at: String },
    #[error("residual {value} at q_U^{u} q_V^{v} after elimination")]
    Residual { u: String, v: String, value: String },
    #[error("malformed bigraded series: {0}")]
    Bigraded(String),
}

/// Twist, dimension and grading data of a ribbon category, one entry per
/// label of its fusion ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RibbonSummary {
    ring: FusionRing,
    duals: Vec<usize>,
    weights: Vec<Rational>,
    exponents: Vec<Rational>,
    degrees: Vec<u8>,
    dims: Option<Vec<CycNumber>>,
}

impl RibbonSummary {
    /// Twist exponents default to the weights mod 1.
    pub fn new(
        ring: FusionRing,
        weights: Vec<Rational>,
        exponents: Option<Vec<Rational>>,
        degrees: Vec<u8>,
        dims: Option<Vec<CycNumber>>,
    ) -> Result<Self, CosetError> {
        let n = ring.len();
        let exponents = exponents.unwrap_or_else(|| weights.iter().map(frac_mod1).collect());
        for (what, found) in [
            ("weights", weights.len()),
            ("exponents", exponents.len()),
            ("degrees", degrees.len()),
            ("dims", dims.as_ref().map_or(n, Vec::len)),
        ] {
            if found != n {
                return Err(CosetError::Length { what, found, labels: n });
            }
        }
        let u = ring.unit();
        if !is_integer(&exponents[u]) || degrees[u] != 0 {
            return Err(CosetError::UnitData);
        }
        for (i, &d) in degrees.iter().enumerate() {
            if d > 1 {
                return Err(CosetError::BadDegree(ring.label(i).to_string()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in ring.product(i, j).unwrap_or_default() {
                    if degrees[k] != (degrees[i] + degrees[j]) % 2 {
                        return Err(CosetError::DegreeNotAdditive(
                            ring.label(i).into(),
                            ring.label(j).into(),
                            ring.label(k).into(),
                        ));
                    }
                }
            }
        }
        let duals = dual_involution(&ring)?;
        Ok(Self {
            ring,
            duals,
            weights,
            exponents: exponents.iter().map(frac_mod1).collect(),
            degrees,
            dims,
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.duals[i]
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Twist exponent in `[0, 1)`: `θ_i = e^{2πi·exponent}`.
    pub fn exponent(&self, i: usize) -> &Rational {
        &self.exponents[i]
    }

    pub fn twist(&self, i: usize) -> CycNumber {
        CycNumber::root_of_unity(&self.exponents[i])
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.degrees[i]
    }

    pub fn dims(&self) -> Option<&[CycNumber]> {
        self.dims.as_deref()
    }

    pub fn with_dims(mut self, dims: Vec<CycNumber>) -> Result<Self, CosetError> {
        if dims.len() != self.len() {
            return Err(CosetError::Length {
                what: "dims",
                found: dims.len(),
                labels: self.len(),
            });
        }
        self.dims = Some(dims);
        Ok(self)
    }

    /// Replaces the twist exponents, keeping everything else.
    pub fn with_exponents(self, exponents: Vec<Rational>) -> Result<Self, CosetError> {
        Self::new(self.ring, self.weights, Some(exponents), self.degrees, self.dims)
    }
}

/// Summary of the `h_{r,1}(±p)` modules for `r = 1..=rmax`, with sl₂-type
/// fusion, degree `(r−1) mod 2` and no dimensions.
pub fn build_summary(p: u32, sign: Sign, rmax: u32) -> Result<RibbonSummary, CosetError> {
    if p < 2 {
        return Err(CosetError::OutOfRange("p", 2));
    }
    if rmax < 1 {
        return Err(CosetError::OutOfRange("rmax", 1));
    }
    let t = sign.t(p);
    let weights = (1..=rmax)
        .map(|r| kac_weight(r, 1, &t))
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = (1..=rmax).map(|r| ((r - 1) % 2) as u8).collect();
    RibbonSummary::new(sl2_window(rmax), weights, None, degrees, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistics {
    Correct,
    Wrong,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MirrorFailure {
    NotBijection(String),
    FusionTransport {
        i: String,
        j: String,
        k: String,
        u: u64,
        v: u64,
    },
    TwistReversal {
        label: String,
        u: Rational,
        v: Rational,
    },
    Grading {
        label: String,
        sum: Rational,
    },
    Dimension {
        label: String,
        u: CycNumber,
        v: CycNumber,
    },
    Degree {
        label: String,
    },
    Induction {
        i: String,
        j: String,
        lhs: String,
        rhs: String,
    },
}

impl fmt::Display for MirrorFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotBijection(why) => write!(f, "label map is not a bijection: {why}"),
            Self::FusionTransport { i, j, k, u, v } => {
                write!(f, "fusion transport: N^{k}_({i},{j}) is {u} on the U side, {v} after transport")
            }
            Self::TwistReversal { label, u, v } => write!(
                f,
                "twist reversal at {label}: U exponent {}, V exponent {}",
                format_rational(u),
                format_rational(v)
            ),
            Self::Grading { label, sum } => {
                write!(f, "grading at {label}: h^U + h^V = {}", format_rational(sum))
            }
            Self::Dimension { label, u, v } => write!(f, "dimension at {label}: {u} vs {v}"),
            Self::Degree { label } => write!(f, "super degree not preserved at {label}"),
            Self::Induction { i, j, lhs, rhs } => {
                write!(f, "induction at ({i}, {j}): Φ(i)·Φ(j) = {lhs}, Φ(i⊗j) = {rhs}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MirrorReport {
    pub failures: Vec<MirrorFailure>,
    /// Checks that could not be run, with the reason.
    pub skipped: Vec<String>,
}

impl MirrorReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_bijection(su: &RibbonSummary, sv: &RibbonSummary, tau: &[usize]) -> Option<String> {
    if tau.len() != su.len() || su.len() != sv.len() {
        return Some(format!(
            "{} images for {} U-labels and {} V-labels",
            tau.len(),
            su.len(),
            sv.len()
        ));
    }
    let image: BTreeSet<usize> = tau.iter().copied().collect();
    if image.len() != tau.len() || image.iter().any(|&v| v >= sv.len()) {
        return Some("images repeat or fall outside the V labels".into());
    }
    if tau[su.ring.unit()] != sv.ring.unit() {
        return Some("the unit is not sent to the unit".into());
    }
    None
}

fn transport_failures(su: &RibbonSummary, sv: &RibbonSummary, tau: &[usize]) -> Vec<MirrorFailure> {
    let phi: Vec<usize> = tau.iter().map(|&t| sv.dual(t)).collect();
    let n = su.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let phi = &phi;
            (0..n).flat_map(move |j| {
                let complete = su.ring.product_complete(i, j) && sv.ring.product_complete(phi[i], phi[j]);
                (0..n).filter_map(move |k| {
                    if !complete {
                        return None;
                    }
                    let u = su.ring.n(i, j, k);
                    let v = sv.ring.n(phi[i], phi[j], phi[k]);
                    (u != v).then(|| MirrorFailure::FusionTransport {
                        i: su.ring.label(i).into(),
                        j: su.ring.label(j).into(),
                        k: su.ring.label(k).into(),
                        u,
                        v,
                    })
                })
            })
        })
        .collect()
}

fn dimension_check(su: &RibbonSummary, sv: &RibbonSummary, tau: &[usize], report: &mut MirrorReport) {
    match (su.dims(), sv.dims()) {
        (Some(du), Some(dv)) => {
            for i in 0..su.len() {
                let v = &dv[sv.dual(tau[i])];
                if &du[i] != v {
                    report.failures.push(MirrorFailure::Dimension {
                        label: su.ring.label(i).into(),
                        u: du[i].clone(),
                        v: v.clone(),
                    });
                }
            }
        }
        _ => report
            .skipped
            .push("dimensions: not supplied on both sides".into()),
    }
}

/// The half-integer shift `deg/2` required by a super pairing.
fn statistics_shift(stats: Statistics, degree: u8) -> Rational {
    match stats {
        Statistics::Correct => Rational::new(degree.into(), 2.into()),
        Statistics::Wrong => int(0),
    }
}

fn mirror_checks(
    su: &RibbonSummary,
    sv: &RibbonSummary,
    tau: &[usize],
    stats: Statistics,
) -> MirrorReport {
    let mut report = MirrorReport::default();
    if let Some(why) = check_bijection(su, sv, tau) {
        report.failures.push(MirrorFailure::NotBijection(why));
        return report;
    }
    report.failures.extend(transport_failures(su, sv, tau));
    for i in 0..su.len() {
        let (v, label) = (tau[i], su.ring.label(i));
        let shift = statistics_shift(stats, su.degree(i));
        let required = shift.clone() - su.exponent(i);
        if !congruent_mod1(sv.exponent(v), &required) {
            report.failures.push(MirrorFailure::TwistReversal {
                label: label.into(),
                u: su.exponent(i).clone(),
                v: sv.exponent(v).clone(),
            });
        }
        let sum = su.weight(i) + sv.weight(v);
        if !congruent_mod1(&sum, &shift) {
            report.failures.push(MirrorFailure::Grading {
                label: label.into(),
                sum,
            });
        }
    }
    dimension_check(su, sv, tau, &mut report);
    report
}

/// Checks the consequences of a braid-reversed equivalence pairing `i` with
/// `τ(i)`: fusion transport, reversed twists, integral total weights and,
/// when both sides carry them, equal dimensions.
pub fn verify_mirror(su: &RibbonSummary, sv: &RibbonSummary, tau: &[usize]) -> MirrorReport {
    mirror_checks(su, sv, tau, Statistics::Wrong)
}

/// Super variant: with correct statistics an odd label picks up a sign in
/// the twist relation and a half-integer shift in the total weight.
pub fn verify_super_mirror(
    su: &RibbonSummary,
    sv: &RibbonSummary,
    tau: &[usize],
    stats: Statistics,
) -> MirrorReport {
    let mut report = mirror_checks(su, sv, tau, stats);
    if check_bijection(su, sv, tau).is_none() {
        for i in 0..su.len() {
            if sv.degree(tau[i]) != su.degree(i) {
                report.failures.push(MirrorFailure::Degree {
                    label: su.ring.label(i).into(),
                });
            }
        }
    }
    report
}

pub fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Induction on Grothendieck classes: `U_j ↦ τ(j′)` for `j ∈ I`, else 0.
pub fn induce_k(
    su: &RibbonSummary,
    subset: &BTreeSet<usize>,
    tau: &[usize],
    x: &KClass<usize>,
) -> Result<KClass<usize>, CosetError> {
    if !subset.contains(&su.ring.unit()) {
        return Err(CosetError::SubsetWithoutUnit);
    }
    if tau.len() != su.len() {
        return Err(CosetError::NotBijection(format!("{} images for {} labels", tau.len(), su.len())));
    }
    x.map_labels(|&j| subset.contains(&j).then(|| tau[su.dual(j)]))
        .ok_or_else(|| CosetError::NotBijection("multiplicity overflow".into()))
}

/// K-level monoidality of induction: `Φ(i)·Φ(j) = Φ(i ⊗ j)` for all `i, j`
/// in the subset whose grades satisfy `g_i + g_j − 1 ≤ rmax` and whose
/// products are known on both sides.
pub fn verify_induction_monoidal(
    su: &RibbonSummary,
    sv: &RibbonSummary,
    tau: &[usize],
    subset: &BTreeSet<usize>,
    rmax: usize,
) -> Result<MirrorReport, CosetError> {
    let mut report = MirrorReport::default();
    if let Some(why) = check_bijection(su, sv, tau) {
        return Err(CosetError::NotBijection(why));
    }
    let pairs: Vec<(usize, usize)> = subset
        .iter()
        .flat_map(|&i| subset.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| su.ring.grade(i) + su.ring.grade(j) - 1 <= rmax)
        .collect();
    let results: Vec<Result<Option<MirrorFailure>, CosetError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let Some(prod) = su.ring.product(i, j) else {
                return Ok(None);
            };
            let fi = induce_k(su, subset, tau, &KClass::single(i))?;
            let fj = induce_k(su, subset, tau, &KClass::single(j))?;
            let rhs = induce_k(su, subset, tau, &prod.into_iter().collect())?;
            let Some(lhs) = sv.ring.multiply(&fi, &fj) else {
                return Ok(None);
            };
            Ok((lhs != rhs).then(|| MirrorFailure::Induction {
                i: su.ring.label(i).into(),
                j: su.ring.label(j).into(),
                lhs: lhs.map_labels(|&k| Some(sv.ring.label(k).to_string())).unwrap().to_string(),
                rhs: rhs.map_labels(|&k| Some(sv.ring.label(k).to_string())).unwrap().to_string(),
            }))
        })
        .collect();
    for r in results {
        if let Some(f) = r? {
            report.failures.push(f);
        }
    }
    Ok(report)
}
