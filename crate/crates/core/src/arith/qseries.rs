//! Truncated q-series `q^{h₀} Σ_{n=0}^{N} a_n q^n` with integer coefficients.
//!
//! A series knows every coefficient at exponents `≤ h₀ + N` on its coset
//! `h₀ + ℤ`; coefficients below `h₀` are zero. Binary operations keep only
//! the window both operands know.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, is_integer, parse_rational, Rational};
use super::ArithError;

#[derive(Clone, Debug)]
pub struct QSeries {
    offset: Rational,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(offset: Rational, coeffs: Vec<BigInt>) -> Result<Self, ArithError> {
        if coeffs.is_empty() {
            return Err(ArithError::EmptySeries);
        }
        Ok(Self { offset, coeffs })
    }

    pub fn from_i64(offset: Rational, coeffs: &[i64]) -> Result<Self, ArithError> {
        Self::new(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^h` known through `q^{h+trunc}`.
    pub fn monomial(h: Rational, trunc: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); trunc + 1];
        coeffs[0] = BigInt::from(1);
        Self { offset: h, coeffs }
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest known level above the offset.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest exponent whose coefficient is known.
    pub fn upper(&self) -> Rational {
        &self.offset + Rational::from_integer(BigInt::from(self.trunc()))
    }

    /// Exponent of the first nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| &self.offset + Rational::from_integer(BigInt::from(k)))
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Coefficient of `q^e`; `None` when `e` is off the coset or past the window.
    pub fn coeff_at(&self, e: &Rational) -> Option<BigInt> {
        let d = e - &self.offset;
        if !is_integer(&d) {
            return None;
        }
        let k = d.to_integer();
        if k.is_negative() {
            return Some(BigInt::zero());
        }
        let k = k.to_usize()?;
        self.coeffs.get(k).cloned()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Keep levels `0..=n` (no-op if already shorter).
    pub fn truncate(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n + 1);
        Self {
            offset: self.offset.clone(),
            coeffs,
        }
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: &Rational) -> Self {
        Self {
            offset: &self.offset + s,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Coefficients at `start, start+1, …` for `len` steps.
    fn window(&self, start: &Rational, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|k| {
                let e = start + Rational::from_integer(BigInt::from(k));
                self.coeff_at(&e).unwrap_or_default()
            })
            .collect()
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Self, ArithError> {
        if !is_integer(&(&self.offset - &other.offset)) {
            return Err(ArithError::IncommensurateOffsets(
                format_rational(&self.offset),
                format_rational(&other.offset),
            ));
        }
        let start = self.offset.clone().min(other.offset.clone());
        let end = self.upper().min(other.upper());
        if end < start {
            return Err(ArithError::EmptyWindow);
        }
        let len = (&end - &start).to_integer().to_usize().expect("window length") + 1;
        let a = self.window(&start, len);
        let b = other.window(&start, len);
        Self::new(start, a.iter().zip(&b).map(|(x, y)| op(x, y)).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.combine(other, |x, y| x + y)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.combine(other, |x, y| x - y)
    }

    /// Window-aware comparison: offsets on the same coset and coefficients
    /// equal at every exponent both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.checked_sub(other).is_ok_and(|d| d.is_zero())
    }
}

/// Equality in the truncated sense, see [`QSeries::agrees_with`].
impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

/// Cauchy product; the result knows `min(N_a, N_b)` levels above `h_a + h_b`.
pub fn qseries_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let n = a.trunc().min(b.trunc());
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (i, x) in a.coeffs.iter().take(n + 1).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().take(n + 1 - i).enumerate() {
            coeffs[i + j] += x * y;
        }
    }
    QSeries {
        offset: &a.offset + &b.offset,
        coeffs,
    }
}

/// `Σ p(n) q^n` through `q^{trunc}`, via Euler's pentagonal recurrence.
pub fn euler_inverse(trunc: usize) -> QSeries {
    let mut p: Vec<BigInt> = Vec::with_capacity(trunc + 1);
    p.push(BigInt::from(1));
    for n in 1..=trunc {
        let mut acc = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    QSeries {
        offset: Rational::zero(),
        coeffs: p,
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) · [", self.offset)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(q^({}))", self.upper() + Rational::from_integer(BigInt::from(1)))
    }
}

/// Wire form `{"offset": "p/q", "coeffs": [ints]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub offset: String,
    pub coeffs: Vec<i64>,
}

impl TryFrom<&QSeries> for QSeriesJson {
    type Error = ArithError;
    fn try_from(s: &QSeries) -> Result<Self, ArithError> {
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| ArithError::CoefficientOverflow(c.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            offset: format_rational(&s.offset),
            coeffs,
        })
    }
}

impl TryFrom<&QSeriesJson> for QSeries {
    type Error = ArithError;
    fn try_from(j: &QSeriesJson) -> Result<Self, ArithError> {
        QSeries::from_i64(parse_rational(&j.offset)?, &j.coeffs)
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSeriesJson::try_from(self)
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QSeriesJson::deserialize(d)?;
        QSeries::try_from(&j).map_err(serde::de::Error::custom)
    }
}
