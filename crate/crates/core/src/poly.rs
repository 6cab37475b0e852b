//! Integer polynomials in `q` and Laurent polynomials in `q^{1/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A polynomial in `q` with `i64` coefficients, stored low degree first with
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPoly(Vec<i64>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![1])
    }

    pub fn constant(c: i64) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        QPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn scale(&self, c: i64) -> Self {
        QPoly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        QPoly(v)
    }

    /// Keep the terms of degree at most `max`.
    pub fn truncate(&self, max: usize) -> Self {
        QPoly::from_coeffs(self.0.iter().take(max + 1).copied().collect())
    }

    /// `q^n P(1/q)`. Panics if `deg P > n`.
    pub fn reflect(&self, n: usize) -> Self {
        assert!(self.0.len() <= n + 1, "degree exceeds {n}");
        let mut v = vec![0; n + 1];
        for (k, &c) in self.0.iter().enumerate() {
            v[n - k] = c;
        }
        QPoly::from_coeffs(v)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.0.len().max(rhs.0.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.0.len().max(rhs.0.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(-1)
    }
}

macro_rules! by_value {
    ($t:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    )*};
}
by_value!(QPoly, Add add, Sub sub, Mul mul);

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, i64)> + 'a,
) -> fmt::Result {
    let mut first = true;
    for (power, c) in terms {
        let body = if power.is_empty() {
            format!("{}", c.abs())
        } else {
            format!("{}*{power}", c.abs())
        };
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
            first = false;
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        f.write_str(&body)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Terms in increasing degree, e.g. `1 - 2*q + 1*q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| {
                let p = match k {
                    0 => String::new(),
                    1 => "q".to_string(),
                    _ => format!("q^{k}"),
                };
                (p, c)
            }),
        )
    }
}

/// An element of `Z[q^{1/2}, q^{-1/2}]`, keyed by twice the exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, i64>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    /// `c q^{half/2}`.
    pub fn monomial(c: i64, half: i64) -> Self {
        let mut h = HalfLaurent::zero();
        h.add_term(half, c);
        h
    }

    /// `q^{half/2} P(q)`.
    pub fn from_qpoly_shifted(p: &QPoly, half: i64) -> Self {
        let mut h = HalfLaurent::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            h.add_term(half + 2 * k as i64, c);
        }
        h
    }

    /// `q^{half/2} P(1/q)`.
    pub fn from_qpoly_inverted(p: &QPoly, half: i64) -> Self {
        let mut h = HalfLaurent::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            h.add_term(half - 2 * k as i64, c);
        }
        h
    }

    pub fn add_term(&mut self, half: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(half).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&half);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, i64> {
        &self.terms
    }

    pub fn coeff(&self, half: i64) -> i64 {
        self.terms.get(&half).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut h = HalfLaurent::zero();
        for (&k, &v) in &self.terms {
            h.add_term(k, v * c);
        }
        h
    }

    /// The polynomial `q^{-half/2} self`, when that is a polynomial.
    pub fn to_qpoly_after_shift(&self, half: i64) -> Option<QPoly> {
        let mut v = Vec::new();
        for (&k, &c) in &self.terms {
            let e = k - half;
            if e < 0 || e % 2 != 0 {
                return None;
            }
            let e = (e / 2) as usize;
            if v.len() <= e {
                v.resize(e + 1, 0);
            }
            v[e] = c;
        }
        Some(QPoly::from_coeffs(v))
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut h = self.clone();
        for (&k, &c) in &rhs.terms {
            h.add_term(k, c);
        }
        h
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self + &rhs.scale(-1)
    }
}

by_value!(HalfLaurent, Add add, Sub sub);

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&k, &c)| {
                let p = match k {
                    0 => String::new(),
                    2 => "q".to_string(),
                    k if k % 2 == 0 => format!("q^{}", k / 2),
                    k => format!("q^({k}/2)"),
                };
                (p, c)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(QPoly::from_coeffs(vec![0, -1, 2]).to_string(), "-1*q + 2*q^2");
        assert_eq!(QPoly::from_coeffs(vec![1, -2]).to_string(), "1 - 2*q");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::from_coeffs(vec![0, 0, 0, 0]), QPoly::zero());
        let h = &HalfLaurent::monomial(1, -1) - &HalfLaurent::monomial(1, 1);
        assert_eq!(h.to_string(), "1*q^(-1/2) - 1*q^(1/2)");
        assert_eq!(HalfLaurent::monomial(3, 4).to_string(), "3*q^2");
    }

    #[test]
    fn reflect_and_shift() {
        let p = QPoly::from_coeffs(vec![1, 2]);
        assert_eq!(p.reflect(3), QPoly::from_coeffs(vec![0, 0, 2, 1]));
        assert_eq!(p.shift(2), QPoly::from_coeffs(vec![0, 0, 1, 2]));
        assert_eq!(p.truncate(0), QPoly::one());
        let h = HalfLaurent::from_qpoly_shifted(&p, -3);
        assert_eq!(h.to_qpoly_after_shift(-3), Some(p.clone()));
        assert_eq!(h.to_qpoly_after_shift(-2), None);
        assert_eq!(HalfLaurent::from_qpoly_inverted(&p, 3).to_qpoly_after_shift(1), Some(p.reflect(1)));
    }

    fn small() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-5i64..6, 0..6).prop_map(QPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!((&a * &b).eval(2), a.eval(2) * b.eval(2));
        }
    }
}
