//! Fusion rings: structure constants, axiom checks, duals and
//! Frobenius–Perron dimensions.
//!
//! A ring may be a finite window of an infinite filtered ring. In that case
//! labels are listed in filtration order (unit first, position `k` has grade
//! `k + 1`), a product of grades `a` and `b` only involves grades up to
//! `a + b - 1`, and the window is the number of listed labels. Constants
//! `N^k_{ij}` are stored for every listed `k`; a product is *complete* when
//! none of its summands can fall outside the window.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("a ring needs at least one label")]
    NoLabels,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("structure constant ({0},{1},{2}) given twice")]
    DuplicateEntry(usize, usize, usize),
    #[error("window {window} must equal the number of labels {labels}")]
    BadWindow { window: usize, labels: usize },
    #[error("a windowed ring lists its unit first, not at {0}")]
    WindowUnit(usize),
    #[error("sl2 labels start at 1, got {0}")]
    NonPositive(i64),
    #[error("label `{0}` has no dual")]
    NoDual(String),
    #[error("label `{0}` has more than one dual candidate")]
    MultipleDuals(String),
    #[error("duality is not an involution at `{0}`")]
    NotInvolutive(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    /// Dense `N[(i * n + j) * n + k]`.
    consts: Vec<u64>,
    window: Option<usize>,
}

impl FusionRing {
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        entries: &[(usize, usize, usize, u64)],
        window: Option<usize>,
    ) -> Result<Self, FusionError> {
        let n = labels.len();
        if n == 0 {
            return Err(FusionError::NoLabels);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(FusionError::DuplicateLabel(l.clone()));
            }
        }
        if unit >= n {
            return Err(FusionError::IndexOutOfRange(unit));
        }
        if let Some(w) = window {
            if unit != 0 {
                return Err(FusionError::WindowUnit(unit));
            }
            if w != n {
                return Err(FusionError::BadWindow {
                    window: w,
                    labels: n,
                });
            }
        }
        let mut consts = vec![0u64; n * n * n];
        let mut seen = vec![false; n * n * n];
        for &(i, j, k, m) in entries {
            for x in [i, j, k] {
                if x >= n {
                    return Err(FusionError::IndexOutOfRange(x));
                }
            }
            let at = (i * n + j) * n + k;
            if seen[at] {
                return Err(FusionError::DuplicateEntry(i, j, k));
            }
            seen[at] = true;
            consts[at] = m;
        }
        Ok(Self {
            labels,
            unit,
            consts,
            window,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, FusionError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn window(&self) -> Option<usize> {
        self.window
    }

    /// `N^k_{ij}`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.len();
        self.consts[(i * n + j) * n + k]
    }

    /// Filtration grade (position + 1) of a label.
    pub fn grade(&self, i: usize) -> usize {
        i + 1
    }

    /// Whether every summand of `i ⊗ j` is a listed label.
    pub fn product_complete(&self, i: usize, j: usize) -> bool {
        match self.window {
            None => true,
            Some(w) => i == self.unit || j == self.unit || self.grade(i) + self.grade(j) - 1 <= w,
        }
    }

    /// Whether both bracketings of `i ⊗ j ⊗ k` stay inside the window.
    pub fn triple_complete(&self, i: usize, j: usize, k: usize) -> bool {
        match self.window {
            None => true,
            Some(w) => {
                let g: usize = [i, j, k]
                    .iter()
                    .filter(|&&x| x != self.unit)
                    .map(|&x| self.grade(x) - 1)
                    .sum();
                g < w
            }
        }
    }

    /// Summands of `i ⊗ j` with multiplicity; `None` if the product is incomplete.
    pub fn product(&self, i: usize, j: usize) -> Option<Vec<(usize, u64)>> {
        self.product_complete(i, j).then(|| {
            (0..self.len())
                .filter_map(|k| {
                    let m = self.n(i, j, k);
                    (m != 0).then_some((k, m))
                })
                .collect()
        })
    }

    /// Product of two classes; `None` if some summand product is incomplete
    /// or the multiplicities overflow.
    pub fn multiply(&self, x: &KClass<usize>, y: &KClass<usize>) -> Option<KClass<usize>> {
        let mut out = KClass::new();
        for (&i, &a) in x.iter() {
            for (&j, &b) in y.iter() {
                for (k, m) in self.product(i, j)? {
                    out.add(k, a.checked_mul(b)?.checked_mul(m)?)?;
                }
            }
        }
        Some(out)
    }

    /// The nonzero constants as `(i, j, k, N)` in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u64)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let m = self.n(i, j, k);
                    if m != 0 {
                        out.push((i, j, k, m));
                    }
                }
            }
        }
        out
    }

    /// Whether every constant is 0 or 1.
    pub fn is_multiplicity_free(&self) -> bool {
        self.consts.iter().all(|&m| m <= 1)
    }
}

/// The sl₂-type ring on labels `1..=rmax`, with constants from [`sl2_fusion`].
pub fn sl2_window(rmax: u32) -> FusionRing {
    assert!(rmax >= 1, "window needs at least the unit");
    let labels = (1..=rmax).map(|r| r.to_string()).collect();
    let mut entries = Vec::new();
    for r in 1..=rmax {
        for rp in 1..=rmax {
            let prod = sl2_fusion(r, rp).expect("positive labels");
            for (&k, &m) in prod.iter() {
                if k <= rmax {
                    entries.push(((r - 1) as usize, (rp - 1) as usize, (k - 1) as usize, m));
                }
            }
        }
    }
    FusionRing::new(labels, 0, &entries, Some(rmax as usize)).expect("well-formed sl2 window")
}

/// The group ring of ℤ/n, labels `0..n`.
pub fn cyclic_ring(n: usize) -> FusionRing {
    assert!(n >= 1);
    let labels = (0..n).map(|a| a.to_string()).collect();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            entries.push((a, b, (a + b) % n, 1));
        }
    }
    FusionRing::new(labels, 0, &entries, None).expect("well-formed group ring")
}

/// A finitely supported class in the Grothendieck group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass<L: Ord>(BTreeMap<L, u64>);

impl<L: Ord + Clone> KClass<L> {
    pub fn new() -> Self {
        Self(BTreeMap::new())
    }

    pub fn single(l: L) -> Self {
        let mut m = BTreeMap::new();
        m.insert(l, 1);
        Self(m)
    }

    /// Adds `m` copies of `l`; `None` on overflow.
    pub fn add(&mut self, l: L, m: u64) -> Option<()> {
        if m == 0 {
            return Some(());
        }
        let e = self.0.entry(l).or_insert(0);
        *e = e.checked_add(m)?;
        Some(())
    }

    pub fn get(&self, l: &L) -> u64 {
        self.0.get(l).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &u64)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Relabels every summand; summands mapped to `None` are dropped.
    pub fn map_labels<M: Ord + Clone>(&self, f: impl Fn(&L) -> Option<M>) -> Option<KClass<M>> {
        let mut out = KClass::new();
        for (l, &m) in self.iter() {
            if let Some(t) = f(l) {
                out.add(t, m)?;
            }
        }
        Some(out)
    }
}

impl<L: Ord + Clone> FromIterator<(L, u64)> for KClass<L> {
    fn from_iter<T: IntoIterator<Item = (L, u64)>>(iter: T) -> Self {
        let mut out = KClass::new();
        for (l, m) in iter {
            out.add(l, m).expect("multiplicity overflow");
        }
        out
    }
}

/// Direct-sum notation, `2 ⊕ 2·4`.
impl<L: Ord + fmt::Display> fmt::Display for KClass<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (l, &m)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ⊕ ")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}·{l}")?;
            }
        }
        Ok(())
    }
}

/// `r ⊗ r'` in the sl₂-type ring: each `k` from `|r-r'|+1` to `r+r'-1` with
/// `k + r + r'` odd, once.
pub fn sl2_fusion(r: u32, rp: u32) -> Result<KClass<u32>, FusionError> {
    for x in [r, rp] {
        if x == 0 {
            return Err(FusionError::NonPositive(0));
        }
    }
    let lo = r.abs_diff(rp) + 1;
    let hi = r + rp - 1;
    Ok((lo..=hi)
        .filter(|k| (k + r + rp) % 2 == 1)
        .map(|k| (k, 1))
        .collect())
}

/// Same as [`sl2_fusion`] for signed input, rejecting non-positive labels.
pub fn sl2_fusion_checked(r: i64, rp: i64) -> Result<KClass<u32>, FusionError> {
    let conv = |x: i64| {
        u32::try_from(x)
            .ok()
            .filter(|&v| v >= 1)
            .ok_or(FusionError::NonPositive(x))
    };
    sl2_fusion(conv(r)?, conv(rp)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionViolation {
    /// `N^k_{0j}` or `N^k_{j0}` differs from `δ_{jk}`.
    UnitLaw { j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
    NoDual { i: usize },
    MultipleDuals { i: usize },
    /// `N^0_{i i'} ≠ 1`.
    DualMultiplicity { i: usize, dual: usize, n: u64 },
    NotInvolutive { i: usize },
    Overflow { i: usize, j: usize, k: usize },
}

impl fmt::Display for FusionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnitLaw { j, k } => write!(f, "unit law fails at ({j}, {k})"),
            Self::Associativity { i, j, k, l } => {
                write!(f, "associativity fails for ({i} {j} {k}) in channel {l}")
            }
            Self::NoDual { i } => write!(f, "label {i} has no dual"),
            Self::MultipleDuals { i } => write!(f, "label {i} has several duals"),
            Self::DualMultiplicity { i, dual, n } => {
                write!(f, "unit occurs {n} times in {i} ⊗ {dual}")
            }
            Self::NotInvolutive { i } => write!(f, "dual of dual of {i} is not {i}"),
            Self::Overflow { i, j, k } => write!(f, "multiplicity overflow at ({i} {j} {k})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FusionReport {
    pub violations: Vec<FusionViolation>,
    /// Triples whose associativity could not be decided inside the window.
    pub skipped: Vec<(usize, usize, usize)>,
}

impl FusionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn assoc_side(ring: &FusionRing, i: usize, j: usize, k: usize, l: usize, left: bool) -> Option<u64> {
    let mut acc = 0u64;
    for m in 0..ring.len() {
        let t = if left {
            ring.n(i, j, m).checked_mul(ring.n(m, k, l))?
        } else {
            ring.n(j, k, m).checked_mul(ring.n(i, m, l))?
        };
        acc = acc.checked_add(t)?;
    }
    Some(acc)
}

/// Checks unit law, associativity on complete triples, and duality.
pub fn verify_fusion_axioms(ring: &FusionRing) -> FusionReport {
    let n = ring.len();
    let u = ring.unit;
    let mut report = FusionReport::default();
    for j in 0..n {
        for k in 0..n {
            let want = u64::from(j == k);
            if ring.n(u, j, k) != want || ring.n(j, u, k) != want {
                report.violations.push(FusionViolation::UnitLaw { j, k });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !ring.triple_complete(i, j, k) {
                    report.skipped.push((i, j, k));
                    continue;
                }
                for l in 0..n {
                    match (
                        assoc_side(ring, i, j, k, l, true),
                        assoc_side(ring, i, j, k, l, false),
                    ) {
                        (Some(a), Some(b)) if a == b => {}
                        (Some(_), Some(_)) => report
                            .violations
                            .push(FusionViolation::Associativity { i, j, k, l }),
                        _ => report.violations.push(FusionViolation::Overflow { i, j, k }),
                    }
                }
            }
        }
    }
    let mut duals = vec![None; n];
    for (i, slot) in duals.iter_mut().enumerate() {
        let cands: Vec<usize> = (0..n).filter(|&j| ring.n(i, j, u) != 0).collect();
        match cands[..] {
            [] => report.violations.push(FusionViolation::NoDual { i }),
            [d] => {
                let m = ring.n(i, d, u);
                if m != 1 {
                    report
                        .violations
                        .push(FusionViolation::DualMultiplicity { i, dual: d, n: m });
                }
                *slot = Some(d);
            }
            _ => report.violations.push(FusionViolation::MultipleDuals { i }),
        }
    }
    for i in 0..n {
        if let Some(d) = duals[i] {
            if duals[d] != Some(i) {
                report.violations.push(FusionViolation::NotInvolutive { i });
            }
        }
    }
    report
}

/// The involution `i ↦ i'` with `N^0_{ij} = δ_{j,i'}`, as a vector of indices.
pub fn dual_involution(ring: &FusionRing) -> Result<Vec<usize>, FusionError> {
    let n = ring.len();
    let u = ring.unit;
    let mut duals = Vec::with_capacity(n);
    for i in 0..n {
        let cands: Vec<usize> = (0..n).filter(|&j| ring.n(i, j, u) != 0).collect();
        match cands[..] {
            [] => return Err(FusionError::NoDual(ring.labels[i].clone())),
            [d] if ring.n(i, d, u) == 1 => duals.push(d),
            _ => return Err(FusionError::MultipleDuals(ring.labels[i].clone())),
        }
    }
    for i in 0..n {
        if duals[duals[i]] != i {
            return Err(FusionError::NotInvolutive(ring.labels[i].clone()));
        }
    }
    Ok(duals)
}

/// Whether `dims` (indexed by label) are positive and multiplicative on every
/// complete product.
pub fn fp_check(ring: &FusionRing, dims: &[Rational]) -> bool {
    if dims.len() != ring.len() || dims.iter().any(|d| !d.is_positive()) {
        return false;
    }
    for i in 0..ring.len() {
        for j in 0..ring.len() {
            let Some(prod) = ring.product(i, j) else {
                continue;
            };
            let rhs: Rational = prod
                .iter()
                .map(|&(k, m)| &dims[k] * Rational::from_integer(m.into()))
                .fold(Rational::zero(), |a, b| a + b);
            if &dims[i] * &dims[j] != rhs {
                return false;
            }
        }
    }
    true
}

/// Wire form `{"labels": [...], "unit": i, "N": [[i,j,k,n],...], "window": w|null}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    pub labels: Vec<String>,
    pub unit: usize,
    #[serde(rename = "N")]
    pub n: Vec<[u64; 4]>,
    #[serde(default)]
    pub window: Option<usize>,
}

impl From<&FusionRing> for RingJson {
    fn from(r: &FusionRing) -> Self {
        Self {
            labels: r.labels.clone(),
            unit: r.unit,
            n: r
                .entries()
                .into_iter()
                .map(|(i, j, k, m)| [i as u64, j as u64, k as u64, m])
                .collect(),
            window: r.window,
        }
    }
}

impl TryFrom<&RingJson> for FusionRing {
    type Error = FusionError;
    fn try_from(j: &RingJson) -> Result<Self, FusionError> {
        let idx = |x: u64| usize::try_from(x).map_err(|_| FusionError::IndexOutOfRange(usize::MAX));
        let entries = j
            .n
            .iter()
            .map(|&[a, b, c, m]| Ok((idx(a)?, idx(b)?, idx(c)?, m)))
            .collect::<Result<Vec<_>, FusionError>>()?;
        FusionRing::new(j.labels.clone(), j.unit, &entries, j.window)
    }
}
