//! Multiplicity-free skeletal braided categories.
//!
//! Conventions. Hom spaces `Hom(c, a ⊗ b)` are one-dimensional when
//! `N^c_{ab} = 1` and carry a fixed basis vector (a splitting vertex). A
//! bracketed tensor product is described in the basis of splitting trees.
//!
//! * `F[a,b,c,d,e,f]` is the coefficient of the tree `a ⊗ (b ⊗ c)_f → d` in
//!   the image of `(a ⊗ b)_e ⊗ c → d` under the inverse associator
//!   `(XY)Z → X(YZ)`. The associator `X(YZ) → (XY)Z` uses the inverse
//!   matrix of each block.
//! * The braiding `X ⊗ Y → Y ⊗ X` sends the `(a b)_c` vertex to
//!   `R[a,b,c]` times the `(b a)_c` vertex.
//! * Coevaluation `1 → a ⊗ a*` is the basis vertex; evaluation
//!   `a* ⊗ a → 1` sends the basis vertex of `(a* a)_1` to the pivotal
//!   coefficient `κ_a`.
//! * Unit isomorphisms are identities, and every F-symbol whose first three
//!   indices contain the unit equals 1.

mod checks;
mod cocycle;
pub mod diagram;
pub mod fixtures;

pub use checks::{
    dimensions, lemma_ej_scalar, lemma_ej_scalar_long, lemma_ej_scalar_reduced, pivotal_twists,
    quantum_dimension, twist_from_braiding, verify_balancing, verify_category, verify_hexagon,
    verify_pentagon, verify_rigidity, CategoryReport, RibbonReport, RibbonViolation,
};
pub use cocycle::{enumerate_abelian_cocycles_z2, gauge_equivalent, quadratic_form};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, CycJson, CycNumber};
use crate::fusion::{dual_involution, FusionError, FusionRing, RingJson};
use crate::linalg::invert;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("skeletal data needs a multiplicity-free ring")]
    NotMultiplicityFree,
    #[error("label index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("entry {0} is not an admissible channel")]
    Inadmissible(String),
    #[error("entry {0} given twice")]
    Duplicate(String),
    #[error("F{0} involves the unit and must equal 1")]
    NotUnitNormalized(String),
    #[error("R{0} must be nonzero")]
    ZeroBraiding(String),
    #[error("F block for (a,b,c,d) = {0} is not invertible")]
    SingularBlock(String),
    #[error("cannot solve the pivotal coefficient of label {0}: F[a,a*,a,a,1,1] vanishes")]
    UnsolvablePivotal(String),
    #[error("pivotal coefficient of label {0} is zero or missing")]
    BadPivotal(String),
    #[error("label {0} has zero dimension")]
    ZeroDimension(String),
    #[error("label {label}: loop value {loop_value} differs from dimension {dim}")]
    DimensionMismatch {
        label: String,
        loop_value: String,
        dim: String,
    },
    #[error("twist inconsistency: {0}")]
    TwistInconsistent(String),
    #[error("diagram evaluation failed: {0}")]
    Diagram(String),
    #[error("gauge {0}")]
    BadGauge(String),
    #[error("comparison needs pointed categories")]
    NotPointed,
    #[error("search needs max_order >= 8, got {0}")]
    OrderTooSmall(u32),
}

type Key6 = [usize; 6];
type Key3 = [usize; 3];

/// F-, R- and pivotal data over a multiplicity-free fusion ring.
#[derive(Clone, Debug)]
pub struct SkeletalRibbon {
    ring: FusionRing,
    duals: Vec<usize>,
    f: BTreeMap<Key6, CycNumber>,
    /// Key `[a,b,c,d,f,e]`: coefficient of `(ab)_e c` in the associator image of `a(bc)_f`.
    f_inv: HashMap<Key6, CycNumber>,
    r: BTreeMap<Key3, CycNumber>,
    pivotal: Vec<CycNumber>,
    pivotal_supplied: bool,
}

fn fmt_key(k: &[usize]) -> String {
    format!("{k:?}")
}

impl SkeletalRibbon {
    /// Builds a category. Unlisted admissible F-symbols default to 1 when
    /// the unit is among the first three indices and to 0 otherwise;
    /// unlisted admissible R-symbols with a unit index default to 1. When
    /// `pivotal` is `None` the coefficients are solved from the first snake.
    pub fn new(
        ring: FusionRing,
        f_entries: &[(Key6, CycNumber)],
        r_entries: &[(Key3, CycNumber)],
        pivotal: Option<Vec<CycNumber>>,
    ) -> Result<Self, RibbonError> {
        if !ring.is_multiplicity_free() {
            return Err(RibbonError::NotMultiplicityFree);
        }
        let duals = dual_involution(&ring)?;
        let n = ring.len();
        let u = ring.unit();
        let mut f = BTreeMap::new();
        for (key, val) in f_entries {
            if key.iter().any(|&x| x >= n) {
                return Err(RibbonError::IndexOutOfRange(*key.iter().max().unwrap()));
            }
            if !f_admissible(&ring, key) {
                return Err(RibbonError::Inadmissible(fmt_key(key)));
            }
            if key[..3].contains(&u) && !val.is_one() {
                return Err(RibbonError::NotUnitNormalized(fmt_key(key)));
            }
            if f.insert(*key, val.clone()).is_some() {
                return Err(RibbonError::Duplicate(fmt_key(key)));
            }
        }
        for key in admissible_f(&ring) {
            f.entry(key).or_insert_with(|| {
                if key[..3].contains(&u) {
                    CycNumber::one()
                } else {
                    CycNumber::zero()
                }
            });
        }
        let mut r = BTreeMap::new();
        for (key, val) in r_entries {
            if key.iter().any(|&x| x >= n) {
                return Err(RibbonError::IndexOutOfRange(*key.iter().max().unwrap()));
            }
            if ring.n(key[0], key[1], key[2]) != 1 {
                return Err(RibbonError::Inadmissible(fmt_key(key)));
            }
            if val.is_zero() {
                return Err(RibbonError::ZeroBraiding(fmt_key(key)));
            }
            if r.insert(*key, val.clone()).is_some() {
                return Err(RibbonError::Duplicate(fmt_key(key)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if ring.n(a, b, c) == 1 && !r.contains_key(&[a, b, c]) {
                        if a == u || b == u {
                            r.insert([a, b, c], CycNumber::one());
                        } else {
                            return Err(RibbonError::ZeroBraiding(fmt_key(&[a, b, c])));
                        }
                    }
                }
            }
        }
        let f_inv = invert_blocks(&ring, &f)?;
        let mut cat = Self {
            ring,
            duals,
            f,
            f_inv,
            r,
            pivotal: Vec::new(),
            pivotal_supplied: pivotal.is_some(),
        };
        cat.pivotal = match pivotal {
            Some(p) => {
                if p.len() != n {
                    return Err(RibbonError::BadPivotal(format!("count {}", p.len())));
                }
                if let Some(a) = p.iter().position(CycNumber::is_zero) {
                    return Err(RibbonError::BadPivotal(cat.ring.label(a).to_string()));
                }
                p
            }
            None => cat.solve_pivotal()?,
        };
        Ok(cat)
    }

    /// `κ_a = 1 / F[a, a*, a, a, 1, 1]`, the value making the first snake the identity.
    fn solve_pivotal(&self) -> Result<Vec<CycNumber>, RibbonError> {
        let u = self.ring.unit();
        (0..self.ring.len())
            .map(|a| {
                let d = self.duals[a];
                self.f_symbol(a, d, a, a, u, u)
                    .inverse()
                    .ok_or_else(|| RibbonError::UnsolvablePivotal(self.ring.label(a).to_string()))
            })
            .collect()
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn dual(&self, a: usize) -> usize {
        self.duals[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.duals
    }

    pub fn label_name(&self, a: usize) -> &str {
        self.ring.label(a)
    }

    /// `F[a,b,c,d,e,f]`, zero for inadmissible tuples.
    pub fn f_symbol(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> CycNumber {
        self.f
            .get(&[a, b, c, d, e, f])
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    /// Coefficient of `(ab)_e c` in the associator image of `a(bc)_f`.
    pub fn f_inverse(&self, a: usize, b: usize, c: usize, d: usize, f: usize, e: usize) -> CycNumber {
        self.f_inv
            .get(&[a, b, c, d, f, e])
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    /// `R[a,b,c]`, zero for inadmissible channels.
    pub fn r_symbol(&self, a: usize, b: usize, c: usize) -> CycNumber {
        self.r
            .get(&[a, b, c])
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    pub fn pivotal(&self, a: usize) -> &CycNumber {
        &self.pivotal[a]
    }

    pub fn pivotal_supplied(&self) -> bool {
        self.pivotal_supplied
    }

    pub fn f_entries(&self) -> impl Iterator<Item = (&Key6, &CycNumber)> {
        self.f.iter()
    }

    pub fn r_entries(&self) -> impl Iterator<Item = (&Key3, &CycNumber)> {
        self.r.iter()
    }

    /// Replaces the pivotal coefficients, keeping everything else.
    pub fn with_pivotal(&self, pivotal: Vec<CycNumber>) -> Result<Self, RibbonError> {
        Self::new(
            self.ring.clone(),
            &self.listed_f(),
            &self.listed_r(),
            Some(pivotal),
        )
    }

    fn listed_f(&self) -> Vec<(Key6, CycNumber)> {
        self.f.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    fn listed_r(&self) -> Vec<(Key3, CycNumber)> {
        self.r.iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// `(a,b,c,d,e,f)` is admissible when both trees `(ab)_e c → d` and
/// `a(bc)_f → d` exist.
pub fn f_admissible(ring: &FusionRing, k: &Key6) -> bool {
    let [a, b, c, d, e, f] = *k;
    ring.n(a, b, e) == 1 && ring.n(e, c, d) == 1 && ring.n(b, c, f) == 1 && ring.n(a, f, d) == 1
}

/// Every admissible 6-tuple, lexicographically.
pub fn admissible_f(ring: &FusionRing) -> Vec<Key6> {
    let n = ring.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for f in 0..n {
                            let k = [a, b, c, d, e, f];
                            if f_admissible(ring, &k) {
                                out.push(k);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Intermediate channels `e` of `(ab)_e c → d` and `f` of `a(bc)_f → d`.
pub(crate) fn channels(ring: &FusionRing, a: usize, b: usize, c: usize, d: usize) -> (Vec<usize>, Vec<usize>) {
    let n = ring.len();
    let es = (0..n)
        .filter(|&e| ring.n(a, b, e) == 1 && ring.n(e, c, d) == 1)
        .collect();
    let fs = (0..n)
        .filter(|&f| ring.n(b, c, f) == 1 && ring.n(a, f, d) == 1)
        .collect();
    (es, fs)
}

fn invert_blocks(
    ring: &FusionRing,
    f: &BTreeMap<Key6, CycNumber>,
) -> Result<HashMap<Key6, CycNumber>, RibbonError> {
    let n = ring.len();
    let mut out = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (es, fs) = channels(ring, a, b, c, d);
                    if es.is_empty() && fs.is_empty() {
                        continue;
                    }
                    let block_name = || fmt_key(&[a, b, c, d]);
                    if es.len() != fs.len() {
                        return Err(RibbonError::SingularBlock(block_name()));
                    }
                    let m: Vec<Vec<CycNumber>> = es
                        .iter()
                        .map(|&e| {
                            fs.iter()
                                .map(|&ff| f[&[a, b, c, d, e, ff]].clone())
                                .collect()
                        })
                        .collect();
                    let inv = invert(&m).ok_or_else(|| RibbonError::SingularBlock(block_name()))?;
                    for (fi, &ff) in fs.iter().enumerate() {
                        for (ei, &e) in es.iter().enumerate() {
                            out.insert([a, b, c, d, ff, e], inv[fi][ei].clone());
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Reversed braiding `R'[a,b,c] = 1 / R[b,a,c]`; F and pivotal data unchanged.
pub fn reverse_braiding(cat: &SkeletalRibbon) -> SkeletalRibbon {
    let mut out = cat.clone();
    out.r = cat
        .r
        .keys()
        .map(|&[a, b, c]| {
            let inv = cat
                .r_symbol(b, a, c)
                .inverse()
                .expect("stored R-symbols are nonzero");
            ([a, b, c], inv)
        })
        .collect();
    out
}

/// Rescales each basis vertex `(a b)_c` by `u[a,b,c]` (missing entries are 1).
///
/// Unit vertices must stay fixed so F stays unit-normalized, and
/// `u[a,a*,1] = u[a*,a,1]` so the pivotal coefficients are unchanged.
pub fn apply_gauge(
    cat: &SkeletalRibbon,
    u: &HashMap<Key3, CycNumber>,
) -> Result<SkeletalRibbon, RibbonError> {
    let unit = cat.ring.unit();
    let get = |k: Key3| u.get(&k).cloned().unwrap_or_else(CycNumber::one);
    for (k, v) in u {
        if v.is_zero() {
            return Err(RibbonError::BadGauge(format!("factor {} is zero", fmt_key(k))));
        }
        if (k[0] == unit || k[1] == unit) && !v.is_one() {
            return Err(RibbonError::BadGauge(format!("unit vertex {} must stay fixed", fmt_key(k))));
        }
    }
    for a in 0..cat.ring.len() {
        let d = cat.duals[a];
        if get([a, d, unit]) != get([d, a, unit]) {
            return Err(RibbonError::BadGauge(format!(
                "factors of the two duality vertices of {} differ",
                cat.ring.label(a)
            )));
        }
    }
    let f: Vec<(Key6, CycNumber)> = cat
        .f
        .iter()
        .map(|(&k, v)| {
            let [a, b, c, d, e, ff] = k;
            let num = &get([a, b, e]) * &get([e, c, d]);
            let den = &get([b, c, ff]) * &get([a, ff, d]);
            (k, &(v * &num) / &den)
        })
        .collect();
    let r: Vec<(Key3, CycNumber)> = cat
        .r
        .iter()
        .map(|(&k, v)| {
            let [a, b, c] = k;
            (k, &(v * &get([a, b, c])) / &get([b, a, c]))
        })
        .collect();
    SkeletalRibbon::new(
        cat.ring.clone(),
        &f,
        &r,
        cat.pivotal_supplied.then(|| cat.pivotal.clone()),
    )
}

/// Wire form of a category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingJson,
    #[serde(rename = "F")]
    pub f: Vec<(usize, usize, usize, usize, usize, usize, CycJson)>,
    #[serde(rename = "R")]
    pub r: Vec<(usize, usize, usize, CycJson)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivotal: Option<Vec<(usize, CycJson)>>,
}

impl CategoryJson {
    /// Lists only the entries a reader cannot infer: F-symbols with no unit
    /// among the first three indices, R-symbols with no unit factor.
    pub fn from_category(cat: &SkeletalRibbon, name: Option<String>) -> Self {
        let u = cat.ring.unit();
        Self {
            name,
            ring: RingJson::from(&cat.ring),
            f: cat
                .f
                .iter()
                .filter(|(k, _)| !k[..3].contains(&u))
                .map(|(k, v)| (k[0], k[1], k[2], k[3], k[4], k[5], CycJson::from(v)))
                .collect(),
            r: cat
                .r
                .iter()
                .filter(|(k, _)| k[0] != u && k[1] != u)
                .map(|(k, v)| (k[0], k[1], k[2], CycJson::from(v)))
                .collect(),
            pivotal: cat.pivotal_supplied.then(|| {
                cat.pivotal
                    .iter()
                    .enumerate()
                    .map(|(a, v)| (a, CycJson::from(v)))
                    .collect()
            }),
        }
    }

    pub fn to_category(&self) -> Result<SkeletalRibbon, RibbonError> {
        let ring = FusionRing::try_from(&self.ring)?;
        let f = self
            .f
            .iter()
            .map(|(a, b, c, d, e, f, v)| Ok(([*a, *b, *c, *d, *e, *f], CycNumber::try_from(v)?)))
            .collect::<Result<Vec<_>, RibbonError>>()?;
        let r = self
            .r
            .iter()
            .map(|(a, b, c, v)| Ok(([*a, *b, *c], CycNumber::try_from(v)?)))
            .collect::<Result<Vec<_>, RibbonError>>()?;
        let pivotal = match &self.pivotal {
            None => None,
            Some(list) => {
                let mut slots: Vec<Option<CycNumber>> = vec![None; ring.len()];
                for (a, v) in list {
                    let slot = slots.get_mut(*a).ok_or(RibbonError::IndexOutOfRange(*a))?;
                    if slot.replace(CycNumber::try_from(v)?).is_some() {
                        return Err(RibbonError::Duplicate(format!("pivotal {a}")));
                    }
                }
                Some(
                    slots
                        .into_iter()
                        .enumerate()
                        .map(|(a, s)| s.ok_or_else(|| RibbonError::BadPivotal(ring.label(a).to_string())))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        SkeletalRibbon::new(ring, &f, &r, pivotal)
    }
}
