//! Finite 0-1 words.
//!
//! Positions are 1-based in every public method that takes or returns a
//! position (`support`, `boundary`, `bit`), matching the usual combinatorial
//! conventions for subsets of `[n]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryWord(bits)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        BinaryWord(vec![0; n])
    }

    /// Word of length `n` whose `i`-th letter (1-based) is bit `i-1` of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        BinaryWord((0..n).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | ((b as u64) << i))
    }

    /// All words of length `n`, in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0..1u64 << n).map(move |m| BinaryWord::from_mask(m, n))
    }

    /// All sparse words of length `n` (elements of the monoid generated by
    /// `0` and `01`), sorted.
    pub fn sparse_words(n: usize) -> Vec<BinaryWord> {
        fn go(n: usize, cur: &mut Vec<u8>, out: &mut Vec<BinaryWord>) {
            if cur.len() == n {
                out.push(BinaryWord(cur.clone()));
                return;
            }
            cur.push(0);
            go(n, cur, out);
            cur.pop();
            if cur.len() + 2 <= n {
                cur.extend_from_slice(&[0, 1]);
                go(n, cur, out);
                cur.truncate(cur.len() - 2);
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    pub fn push(&mut self, b: u8) {
        debug_assert!(b <= 1);
        self.0.push(b);
    }

    /// `E_{i,j} = 0^{i-1} 1 0^{j-i}` for `1 <= i <= j`, and `E_{0,j} = 0^j`.
    pub fn e_ij(i: usize, j: usize) -> BinaryWord {
        let mut w = BinaryWord::zeros(j);
        if i > 0 {
            w.0[i - 1] = 1;
        }
        w
    }

    /// No leading 1 and no two consecutive 1s.
    pub fn is_sparse(&self) -> bool {
        if self.0.first() == Some(&1) {
            return false;
        }
        !self.0.windows(2).any(|w| w[0] == 1 && w[1] == 1)
    }

    pub fn complement(&self) -> BinaryWord {
        BinaryWord(self.0.iter().map(|&b| 1 - b).collect())
    }

    pub fn opposite(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    /// Flip the last letter; the empty word is fixed.
    pub fn check(&self) -> BinaryWord {
        let mut v = self.0.clone();
        if let Some(last) = v.last_mut() {
            *last = 1 - *last;
        }
        BinaryWord(v)
    }

    /// `S(E)`: 1-based positions of the 1s.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&b| b == letter).count()
    }

    /// Componentwise order: `S(self) ⊆ S(other)`.
    pub fn leq(&self, other: &BinaryWord) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// For `E` of length `n-1`: positions `i` in `[n-2]` where the letter
    /// changes, together with `n-1`.
    pub fn boundary(&self) -> Vec<usize> {
        let m = self.len();
        let mut out: Vec<usize> = (1..m).filter(|&i| self.0[i - 1] != self.0[i]).collect();
        out.push(m);
        out
    }

    /// Lengths of the maximal constant runs, left to right.
    pub fn exponent_composition(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &b in &self.0 {
            if prev == Some(b) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
            }
            prev = Some(b);
        }
        out
    }

    /// `oc(E) = (n - s_t, s_t - s_{t-1}, ..., s_2 - s_1, s_1)` for `E` of length `n-1`.
    pub fn oc(&self) -> Vec<usize> {
        let n = self.len() + 1;
        let mut marks = vec![0];
        marks.extend(self.support());
        marks.push(n);
        marks.windows(2).rev().map(|w| w[1] - w[0]).collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    /// Accepts a string of `0`/`1`; the empty string, `e` and `ε` denote the
    /// empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid letter {other:?} in binary word"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

/// Fibonacci numbers with `f_0 = 0`, `f_1 = 1`.
pub fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn sparse_membership() {
        assert!(w("").is_sparse());
        assert!(w("0").is_sparse());
        assert!(w("00101").is_sparse());
        assert!(!w("1").is_sparse());
        assert!(!w("0110").is_sparse());
    }

    #[test]
    fn sparse_words_are_counted_by_fibonacci() {
        for n in 0..14 {
            let all = BinaryWord::sparse_words(n);
            assert_eq!(all.len() as u64, fibonacci(n + 1));
            let brute = BinaryWord::all(n).filter(|e| e.is_sparse()).count();
            assert_eq!(all.len(), brute);
        }
    }

    #[test]
    fn boundary_and_exponent_composition_agree() {
        let e = w("00110");
        assert_eq!(e.exponent_composition(), vec![2, 2, 1]);
        assert_eq!(e.boundary(), vec![2, 4, 5]);
        for n in 0..9 {
            for e in BinaryWord::all(n) {
                let b = e.boundary();
                let mut prev = 0;
                let comp: Vec<usize> = b
                    .iter()
                    .map(|&x| {
                        let d = x - prev;
                        prev = x;
                        d
                    })
                    .collect();
                if !e.is_empty() {
                    assert_eq!(comp, e.exponent_composition(), "{e}");
                }
            }
        }
    }

    #[test]
    fn oc_example() {
        assert_eq!(w("001010").oc(), vec![2, 2, 3]);
        assert_eq!(w("").oc(), vec![1]);
    }

    #[test]
    fn involutions() {
        for e in BinaryWord::all(6) {
            assert_eq!(e.complement().complement(), e);
            assert_eq!(e.opposite().opposite(), e);
            assert_eq!(e.check().check(), e);
            assert_eq!(BinaryWord::from_mask(e.mask(), 6), e);
        }
        assert_eq!(w("").check(), w(""));
    }

    #[test]
    fn e_ij_shape() {
        assert_eq!(BinaryWord::e_ij(2, 4), w("0100"));
        assert_eq!(BinaryWord::e_ij(0, 3), w("000"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("012".parse::<BinaryWord>().is_err());
        assert_eq!(w("ε"), BinaryWord::empty());
    }

    #[test]
    fn fibonacci_values() {
        let v: Vec<u64> = (0..10).map(fibonacci).collect();
        assert_eq!(v, vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }
}
