use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::extract::{BigradedJson, BigradedSeries};
use super::CosetError;
use crate::arith::{format_rational, int, is_integer, QSeries, Rational};
use crate::virasoro::{kac_weight, simple_character_neg_side, simple_character_pos_side, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableKind {
    /// `⊕_r L^p_{r,1} ⊗ L^{−p}_{r,1}`.
    Ik,
    /// `⊕_n V(2n) ⊗ L^{−p}_{2n+1,1}` with `V(2n)` of dimension `2n+1`.
    Wminus,
    /// `⊕_n L^{−p}_{2n+1,1}`.
    Mminus,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ik => "Ik",
            Self::Wminus => "Wminus",
            Self::Mminus => "Mminus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Ik" | "ik" => Some(Self::Ik),
            "Wminus" | "wminus" => Some(Self::Wminus),
            "Mminus" | "mminus" => Some(Self::Mminus),
            _ => None,
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One summand `U ⊗ V` with multiplicity. The label is the `r` of the
/// Virasoro module on the V side.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionRow {
    pub label: u32,
    pub h_u: Rational,
    pub h_v: Rational,
    pub mult: u64,
    pub u_char: Option<QSeries>,
    pub v_char: QSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionTable {
    pub kind: TableKind,
    pub p: u32,
    pub trunc: u32,
    pub rows: Vec<ExtensionRow>,
    pub bigraded: Option<BigradedSeries>,
}

impl ExtensionTable {
    /// Structural checks: a single unit row of multiplicity one, integral
    /// total weights, and for `Ik` total weight `1 − r`.
    pub fn validate(&self) -> Result<(), CosetError> {
        let zero = int(0);
        let units: Vec<&ExtensionRow> = self
            .rows
            .iter()
            .filter(|r| r.h_u == zero && r.h_v == zero)
            .collect();
        if units.len() != 1 {
            return Err(CosetError::UnitRows(units.len()));
        }
        if units[0].mult != 1 {
            return Err(CosetError::BadRow {
                label: units[0].label,
                reason: format!("unit row has multiplicity {}", units[0].mult),
            });
        }
        for row in &self.rows {
            let bad = |reason: String| CosetError::BadRow {
                label: row.label,
                reason,
            };
            let total = &row.h_u + &row.h_v;
            if !is_integer(&total) {
                return Err(bad(format!("total weight {} is not an integer", format_rational(&total))));
            }
            if self.kind == TableKind::Ik && total != int(1 - row.label as i64) {
                return Err(bad(format!("total weight {} is not 1 − r", format_rational(&total))));
            }
            if row.v_char.offset() != &row.h_v {
                return Err(bad("V character does not start at the V weight".into()));
            }
            if let Some(u) = &row.u_char {
                if u.offset() != &row.h_u {
                    return Err(bad("U character does not start at the U weight".into()));
                }
            }
            let expected = match self.kind {
                TableKind::Wminus => row.label as u64,
                _ => 1,
            };
            if row.mult != expected {
                return Err(bad(format!("multiplicity {} where {expected} is required", row.mult)));
            }
            if self.kind != TableKind::Ik && row.label % 2 == 0 {
                return Err(bad("only odd labels occur".into()));
            }
        }
        Ok(())
    }
}

/// Builds the rows with `r ≤ bound` (all `r` for `Ik`, odd `r = 2n+1`
/// otherwise) and characters through `trunc` levels.
pub fn build_extension_table(kind: TableKind, p: u32, bound: u32, trunc: u32) -> Result<ExtensionTable, CosetError> {
    if p < 2 {
        return Err(CosetError::OutOfRange("p", 2));
    }
    if bound < 1 {
        return Err(CosetError::OutOfRange("bound", 1));
    }
    if trunc < 1 {
        return Err(CosetError::OutOfRange("trunc", 1));
    }
    let labels: Vec<u32> = match kind {
        TableKind::Ik => (1..=bound).collect(),
        TableKind::Wminus | TableKind::Mminus => (1..=bound).step_by(2).collect(),
    };
    let minus = Sign::Minus.t(p);
    let rows = labels
        .par_iter()
        .map(|&r| -> Result<ExtensionRow, CosetError> {
            let h_v = kac_weight(r, 1, &minus)?;
            let v_char = simple_character_neg_side(r, p, trunc)?;
            let (h_u, u_char, mult) = match kind {
                TableKind::Ik => {
                    let u = simple_character_pos_side(r, p, trunc)?;
                    (u.offset().clone(), Some(u), 1)
                }
                TableKind::Wminus => (int(0), None, r as u64),
                TableKind::Mminus => (int(0), None, 1),
            };
            Ok(ExtensionRow {
                label: r,
                h_u,
                h_v,
                mult,
                u_char,
                v_char,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bigraded = match kind {
        TableKind::Ik => {
            let terms: Vec<(&QSeries, &QSeries, u64)> = rows
                .iter()
                .map(|r| (r.u_char.as_ref().expect("Ik rows carry U characters"), &r.v_char, r.mult))
                .collect();
            Some(BigradedSeries::from_products(&terms)?)
        }
        _ => None,
    };
    let table = ExtensionTable {
        kind,
        p,
        trunc,
        rows,
        bigraded,
    };
    table.validate()?;
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowJson {
    pub label: u32,
    #[serde(rename = "hU", with = "crate::arith::rational::serde_rational")]
    pub h_u: Rational,
    #[serde(rename = "hV", with = "crate::arith::rational::serde_rational")]
    pub h_v: Rational,
    pub mult: u64,
    pub char: QSeries,
    #[serde(rename = "uChar", default, skip_serializing_if = "Option::is_none")]
    pub u_char: Option<QSeries>,
}

/// Wire form `{"kind", "p", "trunc", "rows": [...], "bigraded": optional}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub kind: TableKind,
    pub p: u32,
    pub trunc: u32,
    pub rows: Vec<RowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bigraded: Option<BigradedJson>,
}

impl TableJson {
    pub fn from_table(t: &ExtensionTable) -> Self {
        Self {
            kind: t.kind,
            p: t.p,
            trunc: t.trunc,
            rows: t
                .rows
                .iter()
                .map(|r| RowJson {
                    label: r.label,
                    h_u: r.h_u.clone(),
                    h_v: r.h_v.clone(),
                    mult: r.mult,
                    char: r.v_char.clone(),
                    u_char: r.u_char.clone(),
                })
                .collect(),
            bigraded: t.bigraded.as_ref().map(BigradedJson::from),
        }
    }

    pub fn to_table(&self) -> Result<ExtensionTable, CosetError> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Ok(ExtensionRow {
                    label: r.label,
                    h_u: r.h_u.clone(),
                    h_v: r.h_v.clone(),
                    mult: r.mult,
                    u_char: r.u_char.clone(),
                    v_char: r.char.clone(),
                })
            })
            .collect::<Result<Vec<_>, CosetError>>()?;
        let table = ExtensionTable {
            kind: self.kind,
            p: self.p,
            trunc: self.trunc,
            rows,
            bigraded: self.bigraded.as_ref().map(BigradedJson::to_series).transpose()?,
        };
        table.validate()?;
        Ok(table)
    }
}
