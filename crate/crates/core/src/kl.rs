//! Kazhdan-Lusztig polynomials: the classical R-polynomial recursion and the
//! slalom formula over Bruhat-graph path counts.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::bruhat::{interval, Counts, Interval};
use crate::coxeter::{CoxElem, CoxSystem, Side};
use crate::error::{Error, Result};
use crate::lattice::{omega, omega_tilde, upsilon};
use crate::order::RefOrder;
use crate::poly::{HalfLaurent, QPoly};
use crate::qsym::{Basis, GradedQSym, QSymSlice};
use crate::word::BinaryWord;

/// Memoised R- and KL-polynomials computed by the descent recursion.
pub struct KlOracle<'a> {
    sys: &'a CoxSystem,
    side: Side,
    r: HashMap<(CoxElem, CoxElem), QPoly>,
    p: HashMap<(CoxElem, CoxElem), QPoly>,
}

impl<'a> KlOracle<'a> {
    pub fn new(sys: &'a CoxSystem, side: Side) -> Self {
        KlOracle {
            sys,
            side,
            r: HashMap::new(),
            p: HashMap::new(),
        }
    }

    fn times(&self, w: &CoxElem, s: usize) -> CoxElem {
        match self.side {
            Side::Right => self.sys.mul_gen_right(w, s),
            Side::Left => self.sys.mul_gen_left(s, w),
        }
    }

    /// `R_{u,v}`; zero unless `u ≤ v`.
    pub fn r(&mut self, u: &CoxElem, v: &CoxElem) -> QPoly {
        if u == v {
            return QPoly::one();
        }
        if u.length() >= v.length() || !self.sys.bruhat_leq(u, v) {
            return QPoly::zero();
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.r.get(&key) {
            return p.clone();
        }
        let s = self.sys.descents(v, self.side)[0];
        let vs = self.times(v, s);
        let us = self.times(u, s);
        let out = if us.length() < u.length() {
            self.r(&us, &vs)
        } else {
            let a = self.r(u, &vs);
            let b = self.r(&us, &vs);
            &(&QPoly::from_coeffs(vec![-1, 1]) * &a) + &b.shift(1)
        };
        self.r.insert(key, out.clone());
        out
    }

    /// `P_{u,v}`, from `q^ℓ P(1/q) - P = Σ_{u<z≤v} R_{u,z} P_{z,v}` and
    /// `deg P ≤ (ℓ-1)/2`.
    pub fn p(&mut self, u: &CoxElem, v: &CoxElem) -> Result<QPoly> {
        if u == v {
            return Ok(QPoly::one());
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.p.get(&key) {
            return Ok(p.clone());
        }
        let elems = interval(self.sys, u, v)?;
        let ell = v.length() - u.length();
        let mut rhs = QPoly::zero();
        for z in elems.iter().filter(|z| *z != u) {
            let pz = self.p(z, v)?;
            rhs = &rhs + &(&self.r(u, z) * &pz);
        }
        let p = -&rhs.truncate((ell - 1) / 2);
        if &p.reflect(ell) - &p != rhs {
            return Err(Error::Internal(format!("no KL solution for [{u}, {v}]")));
        }
        self.p.insert(key, p.clone());
        Ok(p)
    }
}

/// `P_{u,v}` by the right-descent recursion.
pub fn kl_classical(sys: &CoxSystem, u: &CoxElem, v: &CoxElem) -> Result<QPoly> {
    KlOracle::new(sys, Side::Right).p(u, v)
}

/// Cache of `Ω_T` and `Ω̃_T`.
#[derive(Default)]
pub struct OmegaTable {
    omega: HashMap<BinaryWord, QPoly>,
    omega_tilde: HashMap<BinaryWord, QPoly>,
}

impl OmegaTable {
    pub fn new() -> Self {
        OmegaTable::default()
    }

    pub fn omega(&mut self, t: &BinaryWord) -> &QPoly {
        self.omega.entry(t.clone()).or_insert_with(|| omega(t))
    }

    pub fn omega_tilde(&mut self, t: &BinaryWord) -> &QPoly {
        self.omega_tilde.entry(t.clone()).or_insert_with(|| omega_tilde(t))
    }
}

/// Sparse words with nonzero count, checked against the parity of `ℓ - ℓ(T) - 1`.
fn sparse_terms(counts: &Counts, ell: usize) -> Result<Vec<(&BinaryWord, u64, usize)>> {
    let mut out = Vec::new();
    for (t, &c) in counts {
        if c == 0 || !t.is_sparse() {
            continue;
        }
        let gap = ell
            .checked_sub(t.len() + 1)
            .ok_or_else(|| Error::Internal(format!("path word {t} longer than the interval")))?;
        if gap % 2 != 0 {
            return Err(Error::Internal(format!("b_{t} = {c} at half-integer exponent")));
        }
        out.push((t, c, gap / 2));
    }
    Ok(out)
}

/// `Σ_T b_T q^{(ℓ-ℓ(T)-1)/2} Ω_T` over sparse `T`; `1` when `ℓ = 0`.
pub fn kl_from_counts(counts: &Counts, ell: usize, table: &mut OmegaTable) -> Result<QPoly> {
    if ell == 0 {
        return Ok(QPoly::one());
    }
    let mut p = QPoly::zero();
    for (t, c, shift) in sparse_terms(counts, ell)? {
        p = &p + &table.omega(t).scale(c as i64).shift(shift);
    }
    Ok(p)
}

/// `Σ_T b_T q^{(ℓ-ℓ(T)-1)/2} Ω̃_T`, which equals `P - q^ℓ P(1/q)`.
pub fn kl_skew_from_counts(counts: &Counts, ell: usize, table: &mut OmegaTable) -> Result<QPoly> {
    let mut p = QPoly::zero();
    for (t, c, shift) in sparse_terms(counts, ell)? {
        p = &p + &table.omega_tilde(t).scale(c as i64).shift(shift);
    }
    Ok(p)
}

/// Slalom formula on two vertices of a built interval.
pub fn kl_slalom_in(
    iv: &Interval,
    pos: &[usize],
    from: usize,
    to: usize,
    table: &mut OmegaTable,
) -> Result<QPoly> {
    if !iv.leq(from, to) {
        return Err(Error::NotComparable);
    }
    let ell = iv.elem(to).length() - iv.elem(from).length();
    kl_from_counts(&iv.b_counts_with_positions(pos, from, to), ell, table)
}

pub fn kl_slalom(sys: &CoxSystem, order: &RefOrder, u: &CoxElem, v: &CoxElem) -> Result<QPoly> {
    let iv = Interval::new(sys, u, v)?;
    let pos = iv.root_positions(order);
    kl_slalom_in(&iv, &pos, iv.bottom(), iv.top(), &mut OmegaTable::new())
}

/// `𝒦(L_E) = q^{-(ℓ(E)+1)/2} Υ_E`, extended linearly. Coefficients must be
/// integers.
pub fn kmap(f: &QSymSlice) -> Result<HalfLaurent> {
    let l = f.convert(Basis::L);
    let mut out = HalfLaurent::zero();
    for (e, c) in l.coeffs() {
        if !c.is_integer() {
            return Err(Error::Internal(format!("non-integral coefficient {c} at L_{e}")));
        }
        let c = c.to_integer().to_i64().unwrap_or_default();
        out = &out + &HalfLaurent::from_qpoly_shifted(&upsilon(e).scale(c), -(e.len() as i64 + 1));
    }
    Ok(out)
}

/// `𝒦` on a sum of homogeneous pieces of positive degree.
pub fn kmap_graded(f: &GradedQSym) -> Result<HalfLaurent> {
    if f.constant != 0.into() {
        return Err(Error::Internal("K is not defined on constants".into()));
    }
    let mut out = HalfLaurent::zero();
    for s in f.slices.values() {
        out = &out + &kmap(s)?;
    }
    Ok(out)
}

/// `q^{-ℓ/2} P(q) - q^{ℓ/2} P(1/q)`.
pub fn kl_bridge(p: &QPoly, ell: usize) -> HalfLaurent {
    let ell = ell as i64;
    &HalfLaurent::from_qpoly_shifted(p, -ell) - &HalfLaurent::from_qpoly_inverted(p, ell)
}
