//! Two-variable characters and the extraction of commutant characters.
//!
//! A [`BigradedSeries`] is a finite sum `Σ_i m_i · u_i(q_U) · v_i(q_V)` of
//! products of truncated characters, each factor zero beyond its own
//! window. It is stored on a rectangular grid with spacing `1/den` in each
//! variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::CosetError;
use crate::arith::{format_rational, parse_rational, QSeries, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries {
    offset_u: Rational,
    offset_v: Rational,
    den_u: u64,
    den_v: u64,
    /// Levels known in each factor of every product.
    trunc: usize,
    /// `coeffs[a][b]` is the coefficient of `q_U^{offset_u + a/den_u} q_V^{offset_v + b/den_v}`.
    coeffs: Vec<Vec<BigInt>>,
}

fn grid_index(x: &Rational, origin: &Rational, den: u64) -> Option<usize> {
    let scaled = (x - origin) * Rational::from_integer(den.into());
    if !scaled.is_integer() || scaled.is_negative() {
        return None;
    }
    scaled.to_integer().to_usize()
}

impl BigradedSeries {
    pub fn from_products(terms: &[(&QSeries, &QSeries, u64)]) -> Result<Self, CosetError> {
        if terms.is_empty() {
            return Err(CosetError::Bigraded("no summands".into()));
        }
        let den = |xs: Vec<&Rational>| xs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let den_u = den(terms.iter().map(|t| t.0.offset()).collect());
        let den_v = den(terms.iter().map(|t| t.1.offset()).collect());
        let (den_u, den_v) = match (den_u.to_u64(), den_v.to_u64()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(CosetError::Bigraded("grid spacing too fine".into())),
        };
        let offset_u = terms.iter().map(|t| t.0.offset().clone()).min().expect("nonempty");
        let offset_v = terms.iter().map(|t| t.1.offset().clone()).min().expect("nonempty");
        let top_u = terms.iter().map(|t| t.0.upper()).max().expect("nonempty");
        let top_v = terms.iter().map(|t| t.1.upper()).max().expect("nonempty");
        let rows = grid_index(&top_u, &offset_u, den_u).expect("on grid") + 1;
        let cols = grid_index(&top_v, &offset_v, den_v).expect("on grid") + 1;
        let trunc = terms.iter().map(|t| t.0.trunc().min(t.1.trunc())).min().expect("nonempty");
        let mut coeffs = vec![vec![BigInt::zero(); cols]; rows];
        for (u, v, m) in terms {
            let a0 = grid_index(u.offset(), &offset_u, den_u).expect("on grid");
            let b0 = grid_index(v.offset(), &offset_v, den_v).expect("on grid");
            for (i, x) in u.coeffs().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let row = &mut coeffs[a0 + i * den_u as usize];
                for (j, y) in v.coeffs().iter().enumerate() {
                    row[b0 + j * den_v as usize] += x * y * BigInt::from(*m);
                }
            }
        }
        Ok(Self {
            offset_u,
            offset_v,
            den_u,
            den_v,
            trunc,
            coeffs,
        })
    }

    pub fn offsets(&self) -> (&Rational, &Rational) {
        (&self.offset_u, &self.offset_v)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `q_U^u q_V^v`; zero off the grid.
    pub fn coeff(&self, u: &Rational, v: &Rational) -> BigInt {
        match (
            grid_index(u, &self.offset_u, self.den_u),
            grid_index(v, &self.offset_v, self.den_v),
        ) {
            (Some(a), Some(b)) => self
                .coeffs
                .get(a)
                .and_then(|row| row.get(b))
                .cloned()
                .unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }

    /// Adds `delta` to one coefficient; the position must be on the grid.
    pub fn perturb(&mut self, u: &Rational, v: &Rational, delta: &BigInt) -> Result<(), CosetError> {
        let a = grid_index(u, &self.offset_u, self.den_u);
        let b = grid_index(v, &self.offset_v, self.den_v);
        match (a, b) {
            (Some(a), Some(b)) if a < self.coeffs.len() && b < self.coeffs[a].len() => {
                self.coeffs[a][b] += delta;
                Ok(())
            }
            _ => Err(CosetError::Bigraded("position outside the grid".into())),
        }
    }

    /// Nonzero terms as `(u, v, coefficient)`.
    pub fn terms(&self) -> Vec<(Rational, Rational, BigInt)> {
        let mut out = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((self.exponent_u(a), self.exponent_v(b), c.clone()));
                }
            }
        }
        out
    }

    fn exponent_u(&self, a: usize) -> Rational {
        &self.offset_u + Rational::new(BigInt::from(a), BigInt::from(self.den_u))
    }

    fn exponent_v(&self, b: usize) -> Rational {
        &self.offset_v + Rational::new(BigInt::from(b), BigInt::from(self.den_v))
    }
}

/// Recovers `v_i` from `Σ u_i(q_U) v_i(q_V)` given the `u_i`.
///
/// The `u_i` must have increasing leading exponents. Each `v_i` is read off
/// the line `q_U^{lead(u_i)}` of what remains after subtracting the earlier
/// products, so the result is forced; negative coefficients and a nonzero
/// remainder are errors.
pub fn extract_commutant_characters(
    bigraded: &BigradedSeries,
    u_chars: &[QSeries],
) -> Result<Vec<QSeries>, CosetError> {
    let mut residual = bigraded.coeffs.clone();
    let (du, dv) = (bigraded.den_u as usize, bigraded.den_v as usize);
    let n = bigraded.trunc;
    let mut previous: Option<Rational> = None;
    let mut out = Vec::with_capacity(u_chars.len());
    for (index, uc) in u_chars.iter().enumerate() {
        let lead = uc.leading_exponent().ok_or(CosetError::ZeroCharacter(index))?;
        if previous.as_ref().is_some_and(|p| *p >= lead) {
            return Err(CosetError::UnsortedCharacters);
        }
        previous = Some(lead.clone());
        let lc = uc.leading_coefficient().expect("nonzero series").clone();
        let row = grid_index(&lead, &bigraded.offset_u, bigraded.den_u)
            .filter(|&a| a < residual.len())
            .ok_or_else(|| CosetError::OutsideWindow(format_rational(&lead)))?;
        let line = &residual[row];
        let start = line
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(CosetError::MissingComponent(index))?;
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let x = line.get(start + k * dv).cloned().unwrap_or_default();
            let at = || format_rational(&bigraded.exponent_v(start + k * dv));
            let (q, r) = x.div_rem(&lc);
            if !r.is_zero() {
                return Err(CosetError::NotDivisible { index, at: at() });
            }
            if q.is_negative() {
                return Err(CosetError::NegativeCoefficient { index, at: at() });
            }
            coeffs.push(q);
        }
        let v = QSeries::new(bigraded.exponent_v(start), coeffs).expect("nonempty");
        let a0 = grid_index(uc.offset(), &bigraded.offset_u, bigraded.den_u)
            .ok_or_else(|| CosetError::OutsideWindow(format_rational(uc.offset())))?;
        for (i, x) in uc.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let a = a0 + i * du;
            for (k, y) in v.coeffs().iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let b = start + k * dv;
                match residual.get_mut(a).and_then(|r| r.get_mut(b)) {
                    Some(cell) => *cell -= x * y,
                    None => {
                        return Err(CosetError::Residual {
                            u: format_rational(&bigraded.exponent_u(a)),
                            v: format_rational(&bigraded.exponent_v(b)),
                            value: (-(x * y)).to_string(),
                        })
                    }
                }
            }
        }
        out.push(v);
    }
    for (a, row) in residual.iter().enumerate() {
        if let Some(b) = row.iter().position(|c| !c.is_zero()) {
            return Err(CosetError::Residual {
                u: format_rational(&bigraded.exponent_u(a)),
                v: format_rational(&bigraded.exponent_v(b)),
                value: row[b].to_string(),
            });
        }
    }
    Ok(out)
}

/// Wire form of a [`BigradedSeries`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedJson {
    #[serde(rename = "offsetU")]
    pub offset_u: String,
    #[serde(rename = "offsetV")]
    pub offset_v: String,
    #[serde(rename = "denU")]
    pub den_u: u64,
    #[serde(rename = "denV")]
    pub den_v: u64,
    pub trunc: usize,
    pub coeffs: Vec<Vec<i64>>,
}

impl From<&BigradedSeries> for BigradedJson {
    fn from(s: &BigradedSeries) -> Self {
        Self {
            offset_u: format_rational(&s.offset_u),
            offset_v: format_rational(&s.offset_v),
            den_u: s.den_u,
            den_v: s.den_v,
            trunc: s.trunc,
            coeffs: s
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.to_i64().expect("table coefficients fit in i64")).collect())
                .collect(),
        }
    }
}

impl BigradedJson {
    pub fn to_series(&self) -> Result<BigradedSeries, CosetError> {
        let bad = |e: String| CosetError::Bigraded(e);
        if self.den_u == 0 || self.den_v == 0 {
            return Err(bad("grid spacing must be positive".into()));
        }
        let width = self.coeffs.first().map_or(0, Vec::len);
        if width == 0 || self.coeffs.iter().any(|r| r.len() != width) {
            return Err(bad("coefficient matrix must be rectangular and nonempty".into()));
        }
        Ok(BigradedSeries {
            offset_u: parse_rational(&self.offset_u).map_err(|e| bad(e.to_string()))?,
            offset_v: parse_rational(&self.offset_v).map_err(|e| bad(e.to_string()))?,
            den_u: self.den_u,
            den_v: self.den_v,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        })
    }
}
