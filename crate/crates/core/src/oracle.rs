//! Independent reference implementations used to cross-check the main code
//! paths. Each one takes a different route to the same answer and is kept
//! deliberately simple.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::virasoro::partitions;

/// Decomposition of `V(r−1) ⊗ V(r′−1)` for `sl₂` by peeling highest weights
/// off the product of weight multisets. Returns dimensions of the summands
/// with multiplicity.
pub fn sl2_tensor_by_weights(r: u32, rp: u32) -> BTreeMap<u32, u64> {
    let weights = |d: u32| (0..d).map(move |k| d as i64 - 1 - 2 * k as i64);
    let mut mult: BTreeMap<i64, i64> = BTreeMap::new();
    for a in weights(r) {
        for b in weights(rp) {
            *mult.entry(a + b).or_default() += 1;
        }
    }
    let mut out = BTreeMap::new();
    while let Some((&top, &m)) = mult.iter().next_back() {
        if m == 0 {
            mult.remove(&top);
            continue;
        }
        assert!(m > 0, "negative weight multiplicity");
        let dim = (top + 1) as u32;
        *out.entry(dim).or_default() += m as u64;
        for w in weights(dim) {
            *mult.entry(w).or_default() -= m;
        }
    }
    out
}

/// Vacuum expectation values `⟨v, L_{w₁}⋯L_{w_k} v⟩` for a highest-weight
/// vector `v`, by normal ordering words of modes.
pub struct WordVev {
    c: Rational,
    h: Rational,
    memo: HashMap<Vec<i32>, Rational>,
}

impl WordVev {
    pub fn new(c: Rational, h: Rational) -> Self {
        Self {
            c,
            h,
            memo: HashMap::new(),
        }
    }

    pub fn vev(&mut self, word: &[i32]) -> Rational {
        if word.is_empty() {
            return Rational::one();
        }
        if word.iter().sum::<i32>() != 0 || word[0] < 0 || word[word.len() - 1] > 0 {
            return Rational::zero();
        }
        // a suffix that lowers below the highest weight kills v
        let mut acc = 0;
        for &m in word.iter().rev() {
            acc += m;
            if acc > 0 {
                return Rational::zero();
            }
        }
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let value = if let Some(i) = word.iter().position(|&m| m == 0) {
            let level: i32 = -word[i + 1..].iter().sum::<i32>();
            let mut rest = word.to_vec();
            rest.remove(i);
            (&self.h + int(level as i64)) * self.vev(&rest)
        } else {
            let i = (0..word.len() - 1)
                .find(|&i| word[i] > 0 && word[i + 1] < 0)
                .expect("a word with no ordered pair has already been reduced");
            let (m, n) = (word[i], word[i + 1]);
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            let mut value = self.vev(&swapped);
            let mut merged = word[..i].to_vec();
            merged.push(m + n);
            merged.extend_from_slice(&word[i + 2..]);
            value += int((m - n) as i64) * self.vev(&merged);
            if m + n == 0 {
                let mut dropped = word[..i].to_vec();
                dropped.extend_from_slice(&word[i + 2..]);
                let m = m as i64;
                value += &self.c * int(m * m * m - m) / int(12) * self.vev(&dropped);
            }
            value
        };
        self.memo.insert(word.to_vec(), value.clone());
        value
    }

    /// Gram matrix at level `n` in the reverse lexicographic partition basis.
    pub fn gram(&mut self, n: u32) -> Vec<Vec<Rational>> {
        let basis = partitions(n);
        basis
            .iter()
            .map(|l| {
                basis
                    .iter()
                    .map(|m| {
                        let word: Vec<i32> = l
                            .iter()
                            .rev()
                            .map(|&x| x as i32)
                            .chain(m.iter().map(|&x| -(x as i32)))
                            .collect();
                        self.vev(&word)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Whether `h = h_{r,s}(t)` for some `r, s ≥ 1` with `rs ≤ n`, through the
/// square form `(rt − s)² = 4th + (t − 1)²`.
pub fn is_kac_weight(h: &Rational, t: &Rational, n: u32) -> bool {
    let target = int(4) * t * h + (t - int(1)) * (t - int(1));
    (1..=n).any(|r| {
        (1..=n / r).any(|s| {
            let x = int(r as i64) * t - int(s as i64);
            x.clone() * x == target
        })
    })
}

/// Number of partitions of `n` with all parts at most `max`, by recursion on
/// the largest part.
pub fn partition_count(n: u32, max: u32) -> u64 {
    fn go(n: u32, max: u32, memo: &mut HashMap<(u32, u32), u64>) -> u64 {
        if n == 0 {
            return 1;
        }
        if max == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, max)) {
            return v;
        }
        let v = (1..=max.min(n)).map(|k| go(n - k, k, memo)).sum();
        memo.insert((n, max), v);
        v
    }
    go(n, max, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn clebsch_gordan() {
        let d = sl2_tensor_by_weights(2, 2);
        assert_eq!(d, BTreeMap::from([(1, 1), (3, 1)]));
        let d = sl2_tensor_by_weights(4, 3);
        assert_eq!(d, BTreeMap::from([(2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn word_vev_low_levels() {
        let (c, h) = (rat(1, 2), rat(3, 7));
        let mut w = WordVev::new(c.clone(), h.clone());
        assert_eq!(w.vev(&[1, -1]), int(2) * &h);
        assert_eq!(w.vev(&[2, -2]), int(4) * &h + &c / int(2));
        assert_eq!(w.vev(&[-1, 1]), int(0));
    }

    #[test]
    fn kac_square_form() {
        assert!(is_kac_weight(&int(0), &int(5), 1));
        assert!(is_kac_weight(&int(-2), &int(-2), 2));
        assert!(!is_kac_weight(&int(-2), &int(-2), 1));
        assert!(!is_kac_weight(&rat(1, 3), &int(-2), 4));
    }

    #[test]
    fn partition_counts() {
        let p: Vec<u64> = (0..=10).map(|n| partition_count(n, n)).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
