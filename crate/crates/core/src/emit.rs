//! Exact tables in CSV, TeX and JSON, with parsers for the first two so an
//! emitted table can be read back.

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, Rational};
use crate::coset::ExtensionTable;
use crate::fusion::{sl2_fusion, FusionRing};
use crate::virasoro::CharacterTable;

#[derive(Debug, Error)]
pub enum EmitError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("table text: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Int,
    Rational,
    /// Integer list, e.g. the coefficients of a series.
    List,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Rational(Rational),
    List(Vec<BigInt>),
    Text(String),
}

impl Cell {
    pub fn kind(&self) -> CellKind {
        match self {
            Cell::Int(_) => CellKind::Int,
            Cell::Rational(_) => CellKind::Rational,
            Cell::List(_) => CellKind::List,
            Cell::Text(_) => CellKind::Text,
        }
    }

    fn plain(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Rational(q) => format_rational(q),
            Cell::List(xs) => xs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" "),
            Cell::Text(s) => s.clone(),
        }
    }

    fn tex(&self) -> String {
        match self {
            Cell::Int(n) => format!("${n}$"),
            Cell::Rational(q) if q.is_integer() => format!("${}$", q.numer()),
            Cell::Rational(q) => {
                let sign = if q.is_negative() { "-" } else { "" };
                format!("${sign}\\frac{{{}}}{{{}}}$", q.numer().abs(), q.denom())
            }
            Cell::List(xs) => xs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", "),
            Cell::Text(s) => escape_tex(s),
        }
    }

    fn parse_plain(kind: CellKind, s: &str) -> Result<Self, EmitError> {
        let bad = |what: &str| EmitError::Parse(format!("`{s}` is not {what}"));
        Ok(match kind {
            CellKind::Int => Cell::Int(s.trim().parse().map_err(|_| bad("an integer"))?),
            CellKind::Rational => Cell::Rational(parse_rational(s.trim()).map_err(|_| bad("a rational"))?),
            CellKind::List => Cell::List(
                s.split_whitespace()
                    .map(|x| x.parse().map_err(|_| bad("an integer list")))
                    .collect::<Result<_, _>>()?,
            ),
            CellKind::Text => Cell::Text(s.to_string()),
        })
    }

    fn parse_tex(kind: CellKind, s: &str) -> Result<Self, EmitError> {
        let s = s.trim();
        match kind {
            CellKind::Int | CellKind::Rational => {
                let inner = s
                    .strip_prefix('$')
                    .and_then(|x| x.strip_suffix('$'))
                    .ok_or_else(|| EmitError::Parse(format!("`{s}` is not in math mode")))?;
                let (sign, body) = match inner.strip_prefix('-') {
                    Some(rest) => ("-", rest),
                    None => ("", inner),
                };
                let plain = match body.strip_prefix("\\frac{") {
                    Some(rest) => {
                        let (num, den) = rest
                            .strip_suffix('}')
                            .and_then(|x| x.split_once("}{"))
                            .ok_or_else(|| EmitError::Parse(format!("malformed fraction `{s}`")))?;
                        format!("{sign}{num}/{den}")
                    }
                    None => format!("{sign}{body}"),
                };
                Self::parse_plain(kind, &plain)
            }
            CellKind::List => Self::parse_plain(kind, &s.replace(',', " ")),
            CellKind::Text => Ok(Cell::Text(unescape_tex(s))),
        }
    }
}

const TEX_SPECIAL: [(&str, &str); 5] = [("\\", "\\textbackslash{}"), ("&", "\\&"), ("%", "\\%"), ("_", "\\_"), ("#", "\\#")];

fn escape_tex(s: &str) -> String {
    TEX_SPECIAL.iter().fold(s.to_string(), |acc, (raw, esc)| acc.replace(raw, esc))
}

fn unescape_tex(s: &str) -> String {
    TEX_SPECIAL.iter().rev().fold(s.to_string(), |acc, (raw, esc)| acc.replace(esc, raw))
}

/// A rectangular table of exact cells with typed columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<(String, CellKind)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[(&str, CellKind)]) -> Self {
        Self {
            columns: columns.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        debug_assert!(row.iter().zip(&self.columns).all(|(c, (_, k))| c.kind() == *k));
        self.rows.push(row);
    }

    pub fn kinds(&self) -> Vec<CellKind> {
        self.columns.iter().map(|(_, k)| *k).collect()
    }

    pub fn to_csv(&self) -> Result<String, EmitError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|(n, _)| n.as_str()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::plain))?;
        }
        let bytes = w.into_inner().map_err(|e| EmitError::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| EmitError::Parse(e.to_string()))
    }

    pub fn from_csv(text: &str, kinds: &[CellKind]) -> Result<Self, EmitError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.len() != kinds.len() {
            return Err(EmitError::Parse(format!("{} columns, expected {}", header.len(), kinds.len())));
        }
        let mut table = Table {
            columns: header.iter().map(String::from).zip(kinds.iter().copied()).collect(),
            rows: Vec::new(),
        };
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .zip(kinds)
                .map(|(s, &k)| Cell::parse_plain(k, s))
                .collect::<Result<_, _>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }

    pub fn to_tex(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "l".repeat(self.columns.len())));
        let header: Vec<String> = self.columns.iter().map(|(n, _)| escape_tex(n)).collect();
        out.push_str(&format!("{} \\\\\n\\hline\n", header.join(" & ")));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::tex).collect();
            out.push_str(&format!("{} \\\\\n", cells.join(" & ")));
        }
        out.push_str("\\hline\n\\end{tabular}\n");
        out
    }

    pub fn from_tex(text: &str, kinds: &[CellKind]) -> Result<Self, EmitError> {
        let mut lines = text
            .lines()
            .filter_map(|l| l.trim().strip_suffix("\\\\"))
            .map(|l| l.split(" & ").map(str::trim).collect::<Vec<_>>());
        let header = lines.next().ok_or_else(|| EmitError::Parse("no header row".into()))?;
        if header.len() != kinds.len() {
            return Err(EmitError::Parse(format!("{} columns, expected {}", header.len(), kinds.len())));
        }
        let mut table = Table {
            columns: header.iter().map(|h| unescape_tex(h)).zip(kinds.iter().copied()).collect(),
            rows: Vec::new(),
        };
        for cells in lines {
            if cells.len() != kinds.len() {
                return Err(EmitError::Parse(format!("row with {} cells", cells.len())));
            }
            let row = cells
                .iter()
                .zip(kinds)
                .map(|(s, &k)| Cell::parse_tex(k, s))
                .collect::<Result<_, _>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|((name, _), cell)| {
                        let v = match cell {
                            Cell::Int(n) => json!(n.to_string()),
                            Cell::Rational(q) => json!(format_rational(q)),
                            Cell::List(xs) => json!(xs.iter().map(BigInt::to_string).collect::<Vec<_>>()),
                            Cell::Text(s) => json!(s),
                        };
                        (name.clone(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "columns": self.columns.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(), "rows": rows })
    }
}

fn int_cell(n: impl Into<BigInt>) -> Cell {
    Cell::Int(n.into())
}

/// `r ⊗ r'` for every pair in `pairs`, summands listed by label.
pub fn fusion_table(pairs: &[(u32, u32)]) -> Table {
    let mut t = Table::new(&[("r", CellKind::Int), ("rp", CellKind::Int), ("summands", CellKind::List)]);
    for &(r, rp) in pairs {
        let prod = sl2_fusion(r, rp).expect("positive labels");
        let summands = prod
            .iter()
            .flat_map(|(&k, &m)| std::iter::repeat_n(BigInt::from(k), m as usize))
            .collect();
        t.push(vec![int_cell(r), int_cell(rp), Cell::List(summands)]);
    }
    t
}

/// Nonzero structure constants of a ring, by label name.
pub fn ring_table(ring: &FusionRing) -> Table {
    let mut t = Table::new(&[
        ("i", CellKind::Text),
        ("j", CellKind::Text),
        ("k", CellKind::Text),
        ("N", CellKind::Int),
    ]);
    for (i, j, k, m) in ring.entries() {
        t.push(vec![
            Cell::Text(ring.label(i).into()),
            Cell::Text(ring.label(j).into()),
            Cell::Text(ring.label(k).into()),
            int_cell(m),
        ]);
    }
    t
}

pub fn character_table(c: &CharacterTable) -> Table {
    let mut t = Table::new(&[
        ("r", CellKind::Int),
        ("h", CellKind::Rational),
        ("coeffs", CellKind::List),
    ]);
    for e in &c.entries {
        t.push(vec![
            int_cell(e.r),
            Cell::Rational(e.h.clone()),
            Cell::List(e.character.coeffs().to_vec()),
        ]);
    }
    t
}

pub fn extension_table(x: &ExtensionTable) -> Table {
    let mut t = Table::new(&[
        ("label", CellKind::Int),
        ("hU", CellKind::Rational),
        ("hV", CellKind::Rational),
        ("mult", CellKind::Int),
        ("charV", CellKind::List),
    ]);
    for row in &x.rows {
        t.push(vec![
            int_cell(row.label),
            Cell::Rational(row.h_u.clone()),
            Cell::Rational(row.h_v.clone()),
            int_cell(row.mult),
            Cell::List(row.v_char.coeffs().to_vec()),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sample() -> Table {
        let mut t = Table::new(&[
            ("n", CellKind::Int),
            ("h", CellKind::Rational),
            ("xs", CellKind::List),
            ("note", CellKind::Text),
        ]);
        t.push(vec![int_cell(-3), Cell::Rational(rat(-11, 4)), Cell::List(vec![1.into(), 0.into()]), Cell::Text("a_b & c".into())]);
        t.push(vec![int_cell(7), Cell::Rational(rat(5, 1)), Cell::List(vec![]), Cell::Text("100%".into())]);
        t
    }

    #[test]
    fn csv_and_tex_round_trip() {
        let t = sample();
        let kinds = t.kinds();
        assert_eq!(Table::from_csv(&t.to_csv().unwrap(), &kinds).unwrap(), t);
        assert_eq!(Table::from_tex(&t.to_tex(), &kinds).unwrap(), t);
        assert!(t.to_tex().contains("$-\\frac{11}{4}$"));
    }

    #[test]
    fn fusion_rows() {
        let t = fusion_table(&[(2, 3)]);
        assert_eq!(t.rows[0][2], Cell::List(vec![2.into(), 4.into()]));
    }
}
