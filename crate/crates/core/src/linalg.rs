//! Exact dense linear algebra over ℚ and cyclotomic fields.
//!
//! Ranks and determinants of rational matrices go through fraction-free
//! (Bareiss) elimination on integer matrices; small solves and inverses over
//! arbitrary exact fields use plain Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{CycNumber, Rational};

/// The operations Gaussian elimination needs from an exact field.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for CycNumber {
    fn zero() -> Self {
        CycNumber::zero()
    }
    fn one() -> Self {
        CycNumber::one()
    }
    fn is_zero(&self) -> bool {
        CycNumber::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

/// Solves `a · x = b` for square nonsingular `a`; `None` if singular.
pub fn solve<T: Field>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        for j in col..n {
            a[col][j] = a[col][j].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..n {
                let t = factor.mul(&a[col][j]);
                a[r][j] = a[r][j].sub(&t);
            }
            let t = factor.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    Some(b)
}

pub fn solve_rational(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    solve(a, b)
}

/// Inverse of a square matrix; `None` if singular.
pub fn invert<T: Field>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![T::zero(); n];
        e[k] = T::one();
        cols.push(solve(a.to_vec(), e)?);
    }
    Some((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Scales each row by the lcm of its denominators. Returns the integer
/// matrix and the product of the scale factors.
fn clear_denominators(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &l;
            row.iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect()
        })
        .collect();
    (rows, scale)
}

/// Fraction-free row echelon form in place. Returns the rank and the sign of
/// the row permutation used.
fn bareiss(m: &mut [Vec<BigInt>]) -> (usize, i32) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let p = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                let v = &p * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division not exact");
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = p;
        rank += 1;
    }
    (rank, sign)
}

pub fn rank_integer(m: &[Vec<BigInt>]) -> usize {
    let mut work = m.to_vec();
    bareiss(&mut work).0
}

pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    let (mut work, _) = clear_denominators(m);
    bareiss(&mut work).0
}

/// Determinant of a square integer matrix.
pub fn det_integer(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut work = m.to_vec();
    let (rank, sign) = bareiss(&mut work);
    if rank < n {
        return BigInt::zero();
    }
    // after full elimination the last pivot is the determinant up to sign
    let d = work[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of a square rational matrix.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let (work, scale) = clear_denominators(m);
    Rational::new(det_integer(&work), scale)
}

/// Whether `m` equals its transpose.
pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.len() == m.len() && (0..i).all(|j| row[j] == m[j][i]))
}

/// Textbook cofactor determinant; exponential, for cross-checks on tiny inputs.
pub fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return <Rational as One>::one();
    }
    let mut acc = <Rational as Zero>::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if Zero::is_zero(entry) {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
