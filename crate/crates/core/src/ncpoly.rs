//! Integer polynomials in noncommuting `a, b` and their `c, d` forms.
//!
//! An `a,b`-monomial is stored as a [`BinaryWord`] with `0 = a`, `1 = b`, so
//! the word `E` stands for `μ_E`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::bruhat::{Counts, Interval};
use crate::error::{Error, Result};
use crate::order::RefOrder;
use crate::qsym::dual_relation_violation;
use crate::word::BinaryWord;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<BinaryWord, i64>,
}

/// `Σ c · (left ⊗ right)`.
pub type Tensor = BTreeMap<(BinaryWord, BinaryWord), i64>;

fn add_term<K: Ord>(map: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    match map.entry(k) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BinaryWord::empty(), 1)
    }

    pub fn monomial(w: BinaryWord, c: i64) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, w, c);
        p
    }

    pub fn a() -> Self {
        Self::monomial(BinaryWord::new(vec![0]), 1)
    }

    pub fn b() -> Self {
        Self::monomial(BinaryWord::new(vec![1]), 1)
    }

    /// `a + b`.
    pub fn c() -> Self {
        Self::a() + Self::b()
    }

    /// `ab + ba`.
    pub fn d() -> Self {
        Self::monomial(BinaryWord::new(vec![0, 1]), 1) + Self::monomial(BinaryWord::new(vec![1, 0]), 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (BinaryWord, i64)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            add_term(&mut p.terms, w, c);
        }
        p
    }

    /// Parse a word over `a, b` into `μ_E`.
    pub fn word(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                'a' => Ok(0),
                'b' => Ok(1),
                o => Err(Error::Parse(format!("bad letter {o:?} in a,b-word"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self::monomial(BinaryWord::new(bits), 1))
    }

    pub fn terms(&self) -> &BTreeMap<BinaryWord, i64> {
        &self.terms
    }

    pub fn coeff(&self, w: &BinaryWord) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, &c)| (w.clone(), c * k)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous(&self, deg: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == deg)
                .map(|(w, &c)| (w.clone(), c)),
        )
    }

    /// `δ(v_1⋯v_n) = Σ_i v_1⋯v_{i-1} ⊗ v_{i+1}⋯v_n`.
    pub fn coproduct(&self) -> Tensor {
        let mut out = Tensor::new();
        for (w, &c) in &self.terms {
            let bits = w.bits();
            for i in 0..bits.len() {
                let l = BinaryWord::new(bits[..i].to_vec());
                let r = BinaryWord::new(bits[i + 1..].to_vec());
                add_term(&mut out, (l, r), c);
            }
        }
        out
    }

    /// `D_y(x) = Σ x_(1) · y · x_(2)`.
    pub fn derive(&self, y: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((l, r), c) in self.coproduct() {
            let t = NCPoly::monomial(l, c) * y.clone() * NCPoly::monomial(r, 1);
            out = out + t;
        }
        out
    }

    /// Derivation with `a ↦ ab`, `b ↦ ba`.
    pub fn gprime(&self) -> NCPoly {
        let mut out = BTreeMap::new();
        for (w, &c) in &self.terms {
            let bits = w.bits();
            for i in 0..bits.len() {
                let mut nw = bits[..=i].to_vec();
                nw.push(1 - bits[i]);
                nw.extend_from_slice(&bits[i + 1..]);
                add_term(&mut out, BinaryWord::new(nw), c);
            }
        }
        NCPoly { terms: out }
    }

    /// `Σ_E b_E μ_{E^op}`: path counts keyed by descent string, turned into
    /// the polynomial whose monomials read the step factors left to right.
    pub fn from_descent_counts(counts: &Counts) -> NCPoly {
        NCPoly::from_terms(counts.iter().map(|(e, &c)| (e.opposite(), c as i64)))
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        for (w, c) in rhs.terms {
            add_term(&mut self.terms, w, c);
        }
        self
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        self + rhs.scale(-1)
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(-1)
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        let mut out = BTreeMap::new();
        for (u, &a) in &self.terms {
            for (v, &b) in &rhs.terms {
                add_term(&mut out, u.concat(v), a * b);
            }
        }
        NCPoly { terms: out }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&BinaryWord, &i64)> = self.terms.iter().collect();
        items.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then_with(|| x.0.cmp(y.0)));
        let parts: Vec<String> = items
            .into_iter()
            .map(|(w, &c)| {
                let m: String = w.bits().iter().map(|&b| if b == 0 { 'a' } else { 'b' }).collect();
                format_term(&compress(&m), c)
            })
            .collect();
        write_sum(f, &parts)
    }
}

/// Letters `c` (degree 1) and `d` (degree 2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdPoly {
    terms: BTreeMap<String, i64>,
}

impl CdPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial("", 1)
    }

    pub fn c() -> Self {
        Self::monomial("c", 1)
    }

    pub fn d() -> Self {
        Self::monomial("d", 1)
    }

    /// Monomial from a string over `c, d`.
    ///
    /// Panics on other letters; use [`CdPoly::parse_monomial`] for input.
    pub fn monomial(w: &str, c: i64) -> Self {
        assert!(w.chars().all(|ch| ch == 'c' || ch == 'd'), "cd-monomial {w:?}");
        let mut p = Self::zero();
        add_term(&mut p.terms, w.to_string(), c);
        p
    }

    pub fn parse_monomial(w: &str) -> Result<Self> {
        if w.chars().all(|ch| ch == 'c' || ch == 'd') {
            Ok(Self::monomial(w, 1))
        } else {
            Err(Error::Parse(format!("bad cd-monomial {w:?}")))
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            assert!(w.chars().all(|ch| ch == 'c' || ch == 'd'));
            add_term(&mut p.terms, w, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<String, i64> {
        &self.terms
    }

    pub fn coeff(&self, w: &str) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, &c)| (w.clone(), c * k)))
    }

    pub fn degree_of(w: &str) -> usize {
        w.chars().map(|ch| if ch == 'c' { 1 } else { 2 }).sum()
    }

    pub fn homogeneous(&self, deg: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| Self::degree_of(w) == deg)
                .map(|(w, &c)| (w.clone(), c)),
        )
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| Self::degree_of(w)).max()
    }

    /// Substitute `c = a + b`, `d = ab + ba`.
    pub fn expand(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, &k) in &self.terms {
            let mut m = NCPoly::one();
            for ch in w.chars() {
                m = m * if ch == 'c' { NCPoly::c() } else { NCPoly::d() };
            }
            out = out + m.scale(k);
        }
        out
    }

    /// Derivation with `c ↦ d`, `d ↦ dc`.
    pub fn gprime(&self) -> CdPoly {
        self.derivation("d", &[("dc", 1)])
    }

    /// `D_d` restricted to cd-polynomials: `c ↦ 2d`, `d ↦ dc + cd`.
    pub fn d_d(&self) -> CdPoly {
        let mut out = BTreeMap::new();
        for (w, &k) in &self.terms {
            for (i, ch) in w.char_indices() {
                let (pre, post) = (&w[..i], &w[i + 1..]);
                if ch == 'c' {
                    add_term(&mut out, format!("{pre}d{post}"), 2 * k);
                } else {
                    add_term(&mut out, format!("{pre}dc{post}"), k);
                    add_term(&mut out, format!("{pre}cd{post}"), k);
                }
            }
        }
        CdPoly { terms: out }
    }

    fn derivation(&self, c_img: &str, d_img: &[(&str, i64)]) -> CdPoly {
        let mut out = BTreeMap::new();
        for (w, &k) in &self.terms {
            for (i, ch) in w.char_indices() {
                let (pre, post) = (&w[..i], &w[i + 1..]);
                if ch == 'c' {
                    add_term(&mut out, format!("{pre}{c_img}{post}"), k);
                } else {
                    for (img, m) in d_img {
                        add_term(&mut out, format!("{pre}{img}{post}"), k * m);
                    }
                }
            }
        }
        CdPoly { terms: out }
    }

    /// Terms as `(monomial, coefficient)` pairs, for JSON export.
    pub fn to_pairs(&self) -> Vec<(String, i64)> {
        self.terms.iter().map(|(w, &c)| (w.clone(), c)).collect()
    }
}

impl Add for CdPoly {
    type Output = CdPoly;
    fn add(mut self, rhs: CdPoly) -> CdPoly {
        for (w, c) in rhs.terms {
            add_term(&mut self.terms, w, c);
        }
        self
    }
}

impl Sub for CdPoly {
    type Output = CdPoly;
    fn sub(self, rhs: CdPoly) -> CdPoly {
        self + rhs.scale(-1)
    }
}

impl Mul for CdPoly {
    type Output = CdPoly;
    fn mul(self, rhs: CdPoly) -> CdPoly {
        let mut out = BTreeMap::new();
        for (u, &a) in &self.terms {
            for (v, &b) in &rhs.terms {
                add_term(&mut out, format!("{u}{v}"), a * b);
            }
        }
        CdPoly { terms: out }
    }
}

/// `ccd` → `c^2d`.
fn compress(m: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = m.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

fn format_term(mono: &str, c: i64) -> String {
    match (mono.is_empty(), c) {
        (true, _) => c.to_string(),
        (false, 1) => mono.to_string(),
        (false, _) => format!("({c}){mono}"),
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, parts: &[String]) -> fmt::Result {
    if parts.is_empty() {
        return f.write_str("0");
    }
    f.write_str(&parts.join(" + "))
}

impl fmt::Display for CdPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(&String, &i64)> = self.terms.iter().collect();
        items.sort_by(|x, y| {
            CdPoly::degree_of(y.0)
                .cmp(&CdPoly::degree_of(x.0))
                .then_with(|| x.0.cmp(y.0))
        });
        let parts: Vec<String> = items.into_iter().map(|(w, &c)| format_term(&compress(w), c)).collect();
        write_sum(f, &parts)
    }
}

/// Rewrite `P` in `c = a + b`, `d = ab + ba`.
///
/// Each homogeneous component is first checked against the dual
/// Bayer-Billera relations; the first failing `(E, F)` is reported. The
/// rewriting peels the leading letter: writing `P = aX + bY = cX' + dY'`
/// gives `X - Y = (b - a)Y'` and `X' = X - bY'`.
pub fn to_cd(p: &NCPoly) -> Result<CdPoly> {
    let mut out = CdPoly::zero();
    for deg in p.degrees() {
        let h = p.homogeneous(deg);
        if let Some((e, f)) = dual_relation_violation(deg, |w| h.coeff(w).into()) {
            return Err(Error::NotExpressible { e, f });
        }
        out = out + peel(&h, deg);
    }
    if out.expand() != *p {
        return Err(Error::Internal("cd rewriting failed to re-expand".into()));
    }
    Ok(out)
}

fn peel(p: &NCPoly, deg: usize) -> CdPoly {
    if p.is_zero() {
        return CdPoly::zero();
    }
    if deg == 0 {
        return CdPoly::monomial("", p.coeff(&BinaryWord::empty()));
    }
    let (mut x, mut y) = (BTreeMap::new(), BTreeMap::new());
    for (w, &c) in p.terms() {
        let rest = BinaryWord::new(w.bits()[1..].to_vec());
        if w.bits()[0] == 0 {
            add_term(&mut x, rest, c);
        } else {
            add_term(&mut y, rest, c);
        }
    }
    let (x, y) = (NCPoly { terms: x }, NCPoly { terms: y });
    let diff = x.clone() - y;
    let y_prime = NCPoly::from_terms(
        diff.terms()
            .iter()
            .filter(|(w, _)| w.bits().first() == Some(&1))
            .map(|(w, &c)| (BinaryWord::new(w.bits()[1..].to_vec()), c)),
    );
    let x_prime = x - NCPoly::b() * y_prime.clone();
    let mut out = CdPoly::c() * peel(&x_prime, deg - 1);
    if deg >= 2 {
        out = out + CdPoly::d() * peel(&y_prime, deg - 2);
    }
    out
}

/// `Ψ̃_{x,y}` as an `a,b`-polynomial from path counts in `iv`.
pub fn complete_cd_index_ab(iv: &Interval, order: &RefOrder, from: usize, to: usize) -> NCPoly {
    NCPoly::from_descent_counts(&iv.b_counts_between(order, from, to))
}

/// `Ψ̃_{x,y}` rewritten in `c, d`.
pub fn complete_cd_index_in(iv: &Interval, order: &RefOrder, from: usize, to: usize) -> Result<CdPoly> {
    if from == to || !iv.leq(from, to) {
        return Err(Error::NotComparable);
    }
    to_cd(&complete_cd_index_ab(iv, order, from, to))
}

/// `Ψ̃_{u,v}` for `u < v`.
pub fn complete_cd_index(
    sys: &crate::coxeter::CoxSystem,
    order: &RefOrder,
    u: &crate::coxeter::CoxElem,
    v: &crate::coxeter::CoxElem,
) -> Result<CdPoly> {
    if u == v {
        return Err(Error::NotComparable);
    }
    let iv = Interval::new(sys, u, v)?;
    complete_cd_index_in(&iv, order, iv.bottom(), iv.top())
}

/// All cd-monomials of degree `n`, sorted.
pub fn cd_monomials(n: usize) -> Vec<String> {
    fn go(n: usize, cur: &mut String, out: &mut Vec<String>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        cur.push('c');
        go(n - 1, cur, out);
        cur.pop();
        if n >= 2 {
            cur.push('d');
            go(n - 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut String::new(), &mut out);
    out.sort();
    out
}
