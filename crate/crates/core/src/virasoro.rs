//! Virasoro numerology and exact Verma module computations.
//!
//! Conventions: `c(t) = 13 − 6t − 6/t` and
//! `h_{r,s}(t) = (r²−1)t/4 − (rs−1)/2 + (s²−1)/(4t)`. The two sides of the
//! mirror pair are `t = p` and `t = −p`.
//!
//! The Shapovalov form is computed from the commutation relations alone. A
//! PBW vector `L_{−λ₁}⋯L_{−λ_k} v` is stored as its partition `λ` with parts
//! weakly decreasing, and partitions of a level are listed in reverse
//! lexicographic order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{euler_inverse, format_rational, int, qseries_mul, ArithError, QSeries, Rational};
use crate::linalg::{det_rational, rank_rational};

#[derive(Debug, Error)]
pub enum VirasoroError {
    #[error("the parameter t must be nonzero")]
    ZeroT,
    #[error("{0} must be at least {1}, got {2}")]
    OutOfRange(&'static str, i64, i64),
    #[error(
        "closed-form character of r={r}, p={p} disagrees with the Shapovalov rank at level {level}: closed form {closed}, rank {rank}"
    )]
    OracleMismatch {
        r: u32,
        p: u32,
        level: usize,
        closed: BigInt,
        rank: usize,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Which side of the mirror pair: `t = p` or `t = −p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn t(self, p: u32) -> Rational {
        match self {
            Sign::Plus => int(p as i64),
            Sign::Minus => int(-(p as i64)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

pub fn central_charge(t: &Rational) -> Result<Rational, VirasoroError> {
    if t.is_zero() {
        return Err(VirasoroError::ZeroT);
    }
    Ok(int(13) - int(6) * t - int(6) / t)
}

pub fn kac_weight(r: u32, s: u32, t: &Rational) -> Result<Rational, VirasoroError> {
    if r == 0 {
        return Err(VirasoroError::OutOfRange("r", 1, 0));
    }
    if s == 0 {
        return Err(VirasoroError::OutOfRange("s", 1, 0));
    }
    if t.is_zero() {
        return Err(VirasoroError::ZeroT);
    }
    let (r, s) = (r as i64, s as i64);
    Ok(int(r * r - 1) * t / int(4) - int(r * s - 1) / int(2) + int(s * s - 1) / (int(4) * t))
}

/// A parameter `t` together with its central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacParams {
    t: Rational,
    c: Rational,
}

impl KacParams {
    pub fn new(t: Rational) -> Result<Self, VirasoroError> {
        let c = central_charge(&t)?;
        Ok(Self { t, c })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn weight(&self, r: u32, s: u32) -> Result<Rational, VirasoroError> {
        kac_weight(r, s, &self.t)
    }

    /// All `h_{r,s}` with `rs ≤ n`.
    pub fn weights_up_to(&self, n: u32) -> Vec<Rational> {
        let mut out: Vec<Rational> = (1..=n)
            .flat_map(|r| (1..=n / r).map(move |s| (r, s)))
            .map(|(r, s)| kac_weight(r, s, &self.t).expect("positive indices"))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Partitions of `n`, parts weakly decreasing, reverse lexicographic.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

type Vector = BTreeMap<Vec<u32>, Rational>;

fn add_scaled(acc: &mut Vector, v: &Vector, k: &Rational) {
    if k.is_zero() {
        return;
    }
    for (key, x) in v {
        let entry = acc.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += x * k;
        if entry.is_zero() {
            acc.remove(key);
        }
    }
}

fn single(key: Vec<u32>, k: Rational) -> Vector {
    let mut v = Vector::new();
    if !k.is_zero() {
        v.insert(key, k);
    }
    v
}

/// One level of a Verma module with its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaLevel {
    pub level: u32,
    pub basis: Vec<Vec<u32>>,
    pub gram: Vec<Vec<Rational>>,
}

/// The Shapovalov form of `M(c, h)`, with memoized mode actions.
pub struct Shapovalov {
    c: Rational,
    h: Rational,
    raise_memo: HashMap<(u32, Vec<u32>), Vector>,
    lower_memo: HashMap<(u32, Vec<u32>), Vector>,
}

impl Shapovalov {
    pub fn new(c: Rational, h: Rational) -> Self {
        Self {
            c,
            h,
            raise_memo: HashMap::new(),
            lower_memo: HashMap::new(),
        }
    }

    /// `L_{−b} L_{−μ} v` in the PBW basis.
    fn raise(&mut self, b: u32, mu: &[u32]) -> Vector {
        if mu.first().is_none_or(|&a| b >= a) {
            let mut key = Vec::with_capacity(mu.len() + 1);
            key.push(b);
            key.extend_from_slice(mu);
            return single(key, Rational::one());
        }
        let memo_key = (b, mu.to_vec());
        if let Some(v) = self.raise_memo.get(&memo_key) {
            return v.clone();
        }
        let (a, rest) = (mu[0], &mu[1..]);
        // L_{−b} L_{−a} Y = L_{−a} (L_{−b} Y) + (a − b) L_{−(a+b)} Y
        let mut out = Vector::new();
        for (nu, k) in self.raise(b, rest) {
            let v = self.raise(a, &nu);
            add_scaled(&mut out, &v, &k);
        }
        let v = self.raise(a + b, rest);
        add_scaled(&mut out, &v, &int(a as i64 - b as i64));
        self.raise_memo.insert(memo_key, out.clone());
        out
    }

    /// `L_m L_{−μ} v` for `m > 0` in the PBW basis.
    fn lower(&mut self, m: u32, mu: &[u32]) -> Vector {
        let level: u32 = mu.iter().sum();
        if m > level {
            return Vector::new();
        }
        let memo_key = (m, mu.to_vec());
        if let Some(v) = self.lower_memo.get(&memo_key) {
            return v.clone();
        }
        let (a, rest) = (mu[0], &mu[1..]);
        // L_m L_{−a} X = L_{−a} (L_m X) + [L_m, L_{−a}] X
        let mut out = Vector::new();
        for (nu, k) in self.lower(m, rest) {
            let v = self.raise(a, &nu);
            add_scaled(&mut out, &v, &k);
        }
        let coeff = int(m as i64 + a as i64);
        if m > a {
            let v = self.lower(m - a, rest);
            add_scaled(&mut out, &v, &coeff);
        } else if m == a {
            let rest_level: u32 = rest.iter().sum();
            let m3 = int(m as i64).pow(3) - int(m as i64);
            let k = coeff * (&self.h + int(rest_level as i64)) + &self.c * m3 / int(12);
            add_scaled(&mut out, &single(rest.to_vec(), k), &Rational::one());
        } else {
            let v = self.raise(a - m, rest);
            add_scaled(&mut out, &v, &coeff);
        }
        self.lower_memo.insert(memo_key, out.clone());
        out
    }

    /// `⟨L_{−λ} v, L_{−μ} v⟩`.
    pub fn pairing(&mut self, lambda: &[u32], mu: &[u32]) -> Rational {
        let mut state = single(mu.to_vec(), Rational::one());
        // the adjoint of L_{−λ₁}⋯L_{−λ_k} applies L_{λ₁} first
        for &part in lambda {
            let mut next = Vector::new();
            for (nu, k) in &state {
                let v = self.lower(part, nu);
                add_scaled(&mut next, &v, k);
            }
            state = next;
        }
        state.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn level(&mut self, n: u32) -> VermaLevel {
        let basis = partitions(n);
        let gram = basis
            .iter()
            .map(|l| basis.iter().map(|m| self.pairing(l, m)).collect())
            .collect();
        VermaLevel { level: n, basis, gram }
    }
}

pub fn verma_gram(c: &Rational, h: &Rational, n: u32) -> VermaLevel {
    Shapovalov::new(c.clone(), h.clone()).level(n)
}

/// Gram matrices for levels `0..=n`, sharing one memo table.
pub fn verma_grams(c: &Rational, h: &Rational, n: u32) -> Vec<VermaLevel> {
    let mut form = Shapovalov::new(c.clone(), h.clone());
    (0..=n).map(|k| form.level(k)).collect()
}

/// For each candidate, whether the level-`n` Gram determinant vanishes.
pub fn kac_determinant_zeros(c: &Rational, n: u32, candidates: &[Rational]) -> BTreeMap<Rational, bool> {
    candidates
        .par_iter()
        .map(|h| {
            let g = verma_gram(c, h, n);
            (h.clone(), det_rational(&g.gram).is_zero())
        })
        .collect()
}

/// Graded dimensions of `L(c, h)` through level `n`, as Gram ranks.
pub fn simple_graded_dims(c: &Rational, h: &Rational, n: u32) -> Vec<usize> {
    verma_grams(c, h, n)
        .par_iter()
        .map(|g| rank_rational(&g.gram))
        .collect()
}

/// Character of `L(c, h)` from the Gram ranks.
pub fn simple_character(c: &Rational, h: &Rational, n: u32) -> QSeries {
    let dims = simple_graded_dims(c, h, n);
    QSeries::new(h.clone(), dims.into_iter().map(BigInt::from).collect()).expect("level 0 is present")
}

pub fn verma_character(h: &Rational, n: u32) -> QSeries {
    euler_inverse(n as usize).shift(h)
}

/// `q^h (1 − q^r) / φ(q)` with `h = h_{r,1}(−p)`, without any check.
pub fn neg_side_closed_form(r: u32, p: u32, n: u32) -> Result<QSeries, VirasoroError> {
    let h = kac_weight(r, 1, &Sign::Minus.t(p))?;
    let n = n as usize;
    let mut factor = vec![BigInt::zero(); n + 1];
    factor[0] = BigInt::one();
    if (r as usize) <= n {
        factor[r as usize] = BigInt::from(-1);
    }
    let factor = QSeries::new(Rational::zero(), factor)?;
    Ok(qseries_mul(&factor, &euler_inverse(n)).shift(&h))
}

fn check_p(p: u32) -> Result<(), VirasoroError> {
    if p < 2 {
        return Err(VirasoroError::OutOfRange("p", 2, p as i64));
    }
    Ok(())
}

/// Character of the `−p` side simple module with `h = h_{r,1}(−p)`.
///
/// Returns the closed form after checking it level by level against the
/// Gram ranks; any disagreement is an error.
pub fn simple_character_neg_side(r: u32, p: u32, n: u32) -> Result<QSeries, VirasoroError> {
    check_p(p)?;
    let closed = neg_side_closed_form(r, p, n)?;
    let params = KacParams::new(Sign::Minus.t(p))?;
    let h = params.weight(r, 1)?;
    let ranks = simple_graded_dims(params.c(), &h, n);
    for (level, (x, &rank)) in closed.coeffs().iter().zip(&ranks).enumerate() {
        if *x != BigInt::from(rank) {
            return Err(VirasoroError::OracleMismatch {
                r,
                p,
                level,
                closed: x.clone(),
                rank,
            });
        }
    }
    Ok(closed)
}

/// Character of the `+p` side simple module with `h = h_{r,1}(p)`, from
/// Gram ranks only.
pub fn simple_character_pos_side(r: u32, p: u32, n: u32) -> Result<QSeries, VirasoroError> {
    check_p(p)?;
    let params = KacParams::new(Sign::Plus.t(p))?;
    let h = params.weight(r, 1)?;
    Ok(simple_character(params.c(), &h, n))
}

pub fn simple_character_side(sign: Sign, r: u32, p: u32, n: u32) -> Result<QSeries, VirasoroError> {
    match sign {
        Sign::Plus => simple_character_pos_side(r, p, n),
        Sign::Minus => simple_character_neg_side(r, p, n),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterEntry {
    pub r: u32,
    pub h: Rational,
    pub character: QSeries,
}

/// Characters of the `h_{r,1}(±p)` simple modules for `r = 1..=rmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub p: u32,
    pub sign: Sign,
    pub trunc: u32,
    pub entries: Vec<CharacterEntry>,
}

impl CharacterTable {
    pub fn build(p: u32, sign: Sign, rmax: u32, trunc: u32) -> Result<Self, VirasoroError> {
        check_p(p)?;
        let t = sign.t(p);
        let entries = (1..=rmax)
            .into_par_iter()
            .map(|r| {
                Ok(CharacterEntry {
                    r,
                    h: kac_weight(r, 1, &t)?,
                    character: simple_character_side(sign, r, p, trunc)?,
                })
            })
            .collect::<Result<Vec<_>, VirasoroError>>()?;
        Ok(Self { p, sign, trunc, entries })
    }
}

impl std::fmt::Display for CharacterEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r={} h={} {}", self.r, format_rational(&self.h), self.character)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn partitions_are_reverse_lex() {
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn low_levels() {
        let (c, h) = (rat(7, 3), rat(-5, 2));
        assert_eq!(verma_gram(&c, &h, 0).gram, vec![vec![int(1)]]);
        assert_eq!(verma_gram(&c, &h, 1).gram, vec![vec![int(2) * &h]]);
        let g = verma_gram(&c, &h, 2).gram;
        let off = int(6) * &h;
        let expected = vec![
            vec![int(4) * &h + &c / int(2), off.clone()],
            vec![off, int(8) * &h * &h + int(4) * &h],
        ];
        assert_eq!(g, expected);
    }

    #[test]
    fn kac_values() {
        assert_eq!(central_charge(&int(2)).unwrap(), int(-2));
        assert_eq!(central_charge(&int(1)).unwrap(), int(1));
        assert_eq!(central_charge(&int(-2)).unwrap(), int(28));
        assert!(central_charge(&int(0)).is_err());
        assert_eq!(kac_weight(2, 1, &int(-3)).unwrap(), rat(-11, 4));
        assert_eq!(kac_weight(3, 1, &int(2)).unwrap(), int(3));
        assert!(kac_weight(0, 1, &int(2)).is_err());
    }
}
