//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element is stored as its coordinate vector in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` modulo the N-th cyclotomic polynomial, which makes
//! equality a plain coefficient comparison once both sides live in the same
//! field. Operands of different orders are promoted to ℚ(ζ_lcm) through the
//! embedding `ζ_N ↦ ζ_M^{M/N}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, frac_mod1, int, parse_rational, Rational};
use super::ArithError;

/// Power-basis data for ℚ(ζ_M).
#[derive(Debug)]
struct CycField {
    degree: usize,
    /// `powers[j]` is ζ^j reduced to the power basis, for `0 <= j < order`.
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<CycField>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of Φ_n, computed as `(x^n - 1) / ∏_{d|n, d<n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(num);
    poly_cache()
        .write()
        .unwrap()
        .insert(n, Arc::clone(&poly));
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn field(order: u32) -> Arc<CycField> {
    if let Some(f) = field_cache().read().unwrap().get(&order) {
        return Arc::clone(f);
    }
    let poly = cyclotomic_polynomial(order).to_vec();
    let degree = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; degree.max(1)];
    cur[0] = 1;
    if degree == 0 {
        unreachable!("Φ_n has positive degree");
    }
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by ζ and fold the overflow term back with the monic relation
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..degree {
                cur[i] -= top * poly[i];
            }
        }
    }
    let f = Arc::new(CycField {
        degree,
        powers,
    });
    field_cache()
        .write()
        .unwrap()
        .insert(order, Arc::clone(&f));
    f
}

/// Euler's totient, i.e. the degree of ℚ(ζ_n).
pub fn totient(n: u32) -> usize {
    field(n).degree
}

/// An element of ℚ(ζ_N).
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self, ArithError> {
        if order == 0 {
            return Err(ArithError::ZeroOrder);
        }
        let f = field(order);
        if coeffs.len() != f.degree {
            return Err(ArithError::CoefficientCount {
                order,
                expected: f.degree,
                found: coeffs.len(),
            });
        }
        Ok(Self { order, coeffs })
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `e^{2πi h}` as an element of ℚ(ζ_N), N the denominator of `h mod 1`.
    pub fn root_of_unity(h: &Rational) -> Self {
        let red = frac_mod1(h);
        let n = red
            .denom()
            .to_u32()
            .expect("root of unity order exceeds u32");
        let k = red.numer().to_usize().expect("reduced exponent is non-negative");
        let f = field(n);
        Self {
            order: n,
            coeffs: f.powers[k].iter().map(|&c| int(c)).collect(),
        }
    }

    /// ζ_n^k.
    pub fn zeta(n: u32, k: i64) -> Self {
        Self::root_of_unity(&Rational::new(k.into(), i64::from(n).into()))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Coordinates in ℚ(ζ_m); `m` must be a multiple of the current order.
    fn promote(&self, m: u32) -> Vec<Rational> {
        assert!(m % self.order == 0, "ℚ(ζ_{}) does not embed in ℚ(ζ_{m})", self.order);
        if m == self.order {
            return self.coeffs.clone();
        }
        let f = field(m);
        let step = (m / self.order) as usize;
        let mut out = vec![Rational::zero(); f.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(k * step) % m as usize];
            for (o, &p) in out.iter_mut().zip(row) {
                if p != 0 {
                    *o += c * int(p);
                }
            }
        }
        out
    }

    pub fn promote_to(&self, m: u32) -> Self {
        Self {
            order: m,
            coeffs: self.promote(m),
        }
    }

    fn common(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let m = self.order.lcm(&other.order);
        (m, self.promote(m), other.promote(m))
    }

    fn scale(&self, q: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn reduce(m: u32, wide: Vec<Rational>) -> Vec<Rational> {
        let f = field(m);
        let mut out = vec![Rational::zero(); f.degree];
        for (j, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < f.degree {
                out[j] += c;
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[j % m as usize]) {
                if p != 0 {
                    *o += &c * int(p);
                }
            }
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let Some(q) = self.as_rational() {
            return other.scale(&q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(&q);
        }
        let (m, a, b) = self.common(other);
        let mut wide = vec![Rational::zero(); 2 * a.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        Self {
            order: m,
            coeffs: Self::reduce(m, wide),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect();
        if let [k] = nonzero[..] {
            // c ζ^k has inverse c^{-1} ζ^{N-k}
            let c = self.coeffs[k].recip();
            return Some(Self::zeta(self.order, -(k as i64)).scale(&c));
        }
        // Solve (multiplication by self) · x = 1 in the power basis.
        let d = self.coeffs.len();
        let f = field(self.order);
        let mut columns = Vec::with_capacity(d);
        for i in 0..d {
            let basis = Self {
                order: self.order,
                coeffs: f.powers[i].iter().map(|&c| int(c)).collect(),
            };
            columns.push(self.mul_ref(&basis).coeffs);
        }
        let matrix: Vec<Vec<Rational>> = (0..d)
            .map(|r| (0..d).map(|c| columns[c][r].clone()).collect())
            .collect();
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = crate::linalg::solve_rational(matrix, rhs)?;
        Some(Self {
            order: self.order,
            coeffs: x,
        })
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        acc
    }

    /// Recognises `e^{2πi h}` and returns `h` in `[0, 1)`.
    pub fn root_exponent(&self) -> Option<Rational> {
        // every root of unity in ℚ(ζ_N) has order dividing lcm(N, 2)
        let m = self.order.lcm(&2);
        let target = self.promote(m);
        let f = field(m);
        (0..m as usize).find_map(|k| {
            f.powers[k]
                .iter()
                .zip(&target)
                .all(|(&p, t)| int(p) == *t)
                .then(|| Rational::new((k as i64).into(), i64::from(m).into()))
        })
    }

    /// Smallest n in `1..=limit` with `self^n = 1`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for n in 1..=limit {
            if acc.is_one() {
                return Some(n);
            }
            acc = acc.mul_ref(self);
        }
        None
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for CycNumber {}

impl From<Rational> for CycNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, other: &CycNumber) -> CycNumber {
        let (m, a, b) = self.common(other);
        CycNumber {
            order: m,
            coeffs: a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, other: &CycNumber) -> CycNumber {
        let (m, a, b) = self.common(other);
        CycNumber {
            order: m,
            coeffs: a.into_iter().zip(b).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, other: &CycNumber) -> CycNumber {
        self.mul_ref(other)
    }
}

/// Panics on division by zero, like the integer operators.
impl Div for &CycNumber {
    type Output = CycNumber;
    fn div(self, other: &CycNumber) -> CycNumber {
        self.mul_ref(&other.inverse().expect("division by zero in ℚ(ζ_N)"))
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $f(self, other: CycNumber) -> CycNumber { (&self).$f(&other) }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, other: &CycNumber) -> CycNumber { (&self).$f(other) }
        }
        impl $tr<CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $f(self, other: CycNumber) -> CycNumber { self.$f(&other) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for CycNumber {
    /// Human form: rationals as `p/q`, roots of unity as `e^{2πi·p/q}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        if let Some(h) = self.root_exponent() {
            return write!(f, "e^{{2πi·{h}}}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "ζ{}^{k}", self.order)?,
                _ => write!(f, "{a}·ζ{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

/// Wire form `{"order": N, "coeffs": ["p/q", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub order: u32,
    pub coeffs: Vec<String>,
}

impl From<&CycNumber> for CycJson {
    fn from(x: &CycNumber) -> Self {
        Self {
            order: x.order,
            coeffs: x.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<&CycJson> for CycNumber {
    type Error = ArithError;
    fn try_from(j: &CycJson) -> Result<Self, ArithError> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        CycNumber::from_coeffs(j.order, coeffs)
    }
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        CycNumber::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn cyclotomic_polynomials_match_known_tables() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
        assert_eq!(totient(840), 192);
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(CycNumber::root_of_unity(&rat(1, 2)), CycNumber::from_int(-1));
        assert_eq!(CycNumber::root_of_unity(&rat(0, 1)), CycNumber::one());
        let minus_i = -CycNumber::zeta(4, 1);
        assert_eq!(CycNumber::root_of_unity(&rat(7, 4)), minus_i);
        assert_eq!(CycNumber::root_of_unity(&rat(7, 4)).order(), 4);
    }

    #[test]
    fn root_orders_are_exact() {
        for n in 1..=24u32 {
            for k in 0..n {
                if k.gcd(&n) != 1 {
                    continue;
                }
                let z = CycNumber::zeta(n, k as i64);
                assert_eq!(z.multiplicative_order(100), Some(n as u64), "ζ_{n}^{k}");
            }
        }
    }

    #[test]
    fn mixed_orders_promote_consistently() {
        // ζ_3 · ζ_4 = ζ_12^{4+3}
        let prod = &CycNumber::zeta(3, 1) * &CycNumber::zeta(4, 1);
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, CycNumber::zeta(12, 7));
        // ζ_6 = -ζ_3^2 seen from different fields
        assert_eq!(CycNumber::zeta(6, 1), -CycNumber::zeta(3, 2));
        // promotion does not change value
        let x = &CycNumber::zeta(5, 2) + &CycNumber::from_int(3);
        assert_eq!(x.promote_to(20), x);
    }

    #[test]
    fn inverses() {
        let golden = &CycNumber::one() + &(&CycNumber::zeta(5, 1) + &CycNumber::zeta(5, 4));
        let inv = golden.inverse().unwrap();
        assert!((&golden * &inv).is_one());
        // φ^{-1} = φ - 1
        assert_eq!(inv, &golden - &CycNumber::one());
        assert!(CycNumber::zero().inverse().is_none());
        assert_eq!(CycNumber::zeta(8, 3).pow(-1), CycNumber::zeta(8, 5));
    }

    #[test]
    fn recognises_roots() {
        assert_eq!(CycNumber::from_int(-1).root_exponent(), Some(rat(1, 2)));
        assert_eq!(CycNumber::zeta(3, 1).root_exponent(), Some(rat(1, 3)));
        // -ζ_3 = ζ_6^5 lives in the order-3 field
        assert_eq!((-CycNumber::zeta(3, 1)).root_exponent(), Some(rat(5, 6)));
        assert_eq!(CycNumber::from_int(2).root_exponent(), None);
        assert_eq!(format!("{}", CycNumber::zeta(4, 3)), "e^{2πi·3/4}");
    }

    #[test]
    fn json_round_trip() {
        let x = &CycNumber::zeta(5, 2) * &CycNumber::from_rational(rat(-3, 7));
        let s = serde_json::to_string(&x).unwrap();
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycNumber>(r#"{"order":5,"coeffs":["1/1"]}"#).is_err());
    }
}
