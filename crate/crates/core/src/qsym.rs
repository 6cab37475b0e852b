//! Homogeneous quasisymmetric functions as coefficient maps in the monomial
//! (`M`) and fundamental (`L`) bases, peak membership, and the `D_T` family.
//!
//! A degree-`n` slice is indexed by words of length `n - 1`; `M_E` and `L_E`
//! correspond to the composition `oc(E)`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bruhat::{Counts, Interval};
use crate::error::{Error, Result};
use crate::order::RefOrder;
use crate::word::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    M,
    L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymSlice {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<BinaryWord, Rational64>,
}

/// A violated relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeakWitness {
    /// `β_{EF} + β_{ĚF} ≠ β_{EF̄} + β_{ĚF̄}` in `L`-coordinates.
    Dual { e: BinaryWord, f: BinaryWord },
    /// Bayer-Billera relation for `(E, j, F)` in `M`-coordinates.
    BayerBillera { e: BinaryWord, j: usize, f: BinaryWord },
}

impl fmt::Display for PeakWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeakWitness::Dual { e, f: g } => write!(f, "dual relation fails at E={e}, F={g}"),
            PeakWitness::BayerBillera { e, j, f: g } => {
                write!(f, "Bayer-Billera relation fails at E={e}, j={j}, F={g}")
            }
        }
    }
}

impl QSymSlice {
    /// Zero slice of degree `n >= 1`.
    pub fn zero(degree: usize, basis: Basis) -> Self {
        assert!(degree >= 1, "slices have positive degree");
        QSymSlice {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(
        degree: usize,
        basis: Basis,
        it: impl IntoIterator<Item = (BinaryWord, Rational64)>,
    ) -> Self {
        let mut s = Self::zero(degree, basis);
        for (w, c) in it {
            s.add(w, c);
        }
        s
    }

    pub fn add(&mut self, w: BinaryWord, c: Rational64) {
        assert_eq!(w.len() + 1, self.degree, "word {w} in degree {}", self.degree);
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w.clone()).or_insert_with(Rational64::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<BinaryWord, Rational64> {
        &self.coeffs
    }

    pub fn coeff(&self, w: &BinaryWord) -> Rational64 {
        self.coeffs.get(w).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: Rational64) -> Self {
        Self::from_coeffs(self.degree, self.basis, self.coeffs.iter().map(|(w, c)| (w.clone(), c * k)))
    }

    pub fn plus(&self, other: &QSymSlice) -> Self {
        let other = other.convert(self.basis);
        assert_eq!(self.degree, other.degree);
        let mut s = self.clone();
        for (w, c) in other.coeffs {
            s.add(w, c);
        }
        s
    }

    /// `L_F = Σ_{E ≥ F} M_E`, so `[M_E] = Σ_{F ≤ E} [L_F]`.
    pub fn convert(&self, target: Basis) -> QSymSlice {
        if target == self.basis {
            return self.clone();
        }
        let n = self.degree - 1;
        let mut vals: Vec<Rational64> = (0..1u64 << n)
            .map(|m| self.coeff(&BinaryWord::from_mask(m, n)))
            .collect();
        let to_m = target == Basis::M;
        for bit in 0..n {
            for m in 0..vals.len() {
                if m >> bit & 1 == 1 {
                    let lower = vals[m ^ (1 << bit)];
                    if to_m {
                        vals[m] += lower;
                    } else {
                        vals[m] -= lower;
                    }
                }
            }
        }
        QSymSlice::from_coeffs(
            self.degree,
            target,
            vals.into_iter()
                .enumerate()
                .map(|(m, c)| (BinaryWord::from_mask(m as u64, n), c)),
        )
    }

    /// Checks the relations in this slice's own basis, then in the other
    /// basis, and insists both agree.
    pub fn peak_witness(&self) -> Result<Option<PeakWitness>> {
        let n = self.degree - 1;
        let l = self.convert(Basis::L);
        let m = self.convert(Basis::M);
        let dual = dual_relation_violation(n, |w| l.coeff(w))
            .map(|(e, f)| PeakWitness::Dual { e, f });
        let bb = bayer_billera_violation(n, |w| m.coeff(w))
            .map(|(e, j, f)| PeakWitness::BayerBillera { e, j, f });
        if dual.is_some() != bb.is_some() {
            return Err(Error::Internal(format!(
                "peak tests disagree in degree {}: dual {dual:?}, Bayer-Billera {bb:?}",
                self.degree
            )));
        }
        Ok(match self.basis {
            Basis::L => dual,
            Basis::M => bb,
        })
    }

    pub fn is_peak(&self) -> Result<bool> {
        Ok(self.peak_witness()?.is_none())
    }
}

impl fmt::Display for QSymSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let letter = match self.basis {
            Basis::M => 'M',
            Basis::L => 'L',
        };
        let mut first = true;
        for (w, c) in &self.coeffs {
            let (neg, abs) = if *c < Rational64::zero() { (true, -c) } else { (false, *c) };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{letter}_{w}")?;
        }
        Ok(())
    }
}

/// First `(E, F)` with `|EF| = n` violating
/// `β_{EF} + β_{ĚF} = β_{EF̄} + β_{ĚF̄}`, scanning `|E| = 0, 1, …`.
pub fn dual_relation_violation(
    n: usize,
    beta: impl Fn(&BinaryWord) -> Rational64,
) -> Option<(BinaryWord, BinaryWord)> {
    for k in 0..=n {
        for e in BinaryWord::all(k) {
            let ec = e.check();
            for f in BinaryWord::all(n - k) {
                let fb = f.complement();
                let lhs = beta(&e.concat(&f)) + beta(&ec.concat(&f));
                let rhs = beta(&e.concat(&fb)) + beta(&ec.concat(&fb));
                if lhs != rhs {
                    return Some((e, f));
                }
            }
        }
    }
    None
}

/// First `(E, j, F)` violating a Bayer-Billera relation
/// `Σ_{i=1}^j (-1)^{i-1} α_{E E_{i,j} F} = 2χ_odd(j) α_{E 0^j F}` with `E`
/// empty or ending in 1 and `F` empty or starting with 1.
pub fn bayer_billera_violation(
    n: usize,
    alpha: impl Fn(&BinaryWord) -> Rational64,
) -> Option<(BinaryWord, usize, BinaryWord)> {
    for j in 1..=n {
        for k in 0..=n - j {
            for e in BinaryWord::all(k) {
                if !e.is_empty() && e.bit(k) != 1 {
                    continue;
                }
                for f in BinaryWord::all(n - k - j) {
                    if !f.is_empty() && f.bit(1) != 1 {
                        continue;
                    }
                    let mut lhs = Rational64::zero();
                    for i in 1..=j {
                        let v = alpha(&e.concat(&BinaryWord::e_ij(i, j)).concat(&f));
                        if i % 2 == 1 {
                            lhs += v;
                        } else {
                            lhs -= v;
                        }
                    }
                    let rhs = if j % 2 == 1 {
                        alpha(&e.concat(&BinaryWord::zeros(j)).concat(&f)) * 2
                    } else {
                        Rational64::zero()
                    };
                    if lhs != rhs {
                        return Some((e, j, f));
                    }
                }
            }
        }
    }
    None
}

/// `𝒢(T)` with signs, sorted by word. Empty when `T` is not sparse.
pub fn g_set(t: &BinaryWord) -> Result<Vec<(BinaryWord, i8)>> {
    let n = t.len() + 1;
    let mut s = vec![0];
    s.extend(t.support());
    s.push(n);
    let tt = s.len() - 2;
    let mut out = Vec::new();
    for e in BinaryWord::all(n - 1) {
        let bd = e.boundary();
        let mut ok = true;
        let mut exponent = 0usize;
        for j in 0..=tt {
            let inside: Vec<usize> = bd.iter().copied().filter(|&x| s[j] < x && x < s[j + 1]).collect();
            if j < tt && inside.is_empty() {
                ok = false;
                break;
            }
            if inside.iter().any(|&x| (x - inside[0]) % 2 == 1) {
                ok = false;
                break;
            }
            if j < tt {
                let parities: Vec<usize> = inside.iter().map(|&y| (s[j + 1] - y - 1) % 2).collect();
                if parities.iter().any(|&p| p != parities[0]) {
                    return Err(Error::Internal(format!(
                        "sign of {e} in G({t}) depends on the representative"
                    )));
                }
                exponent += parities[0];
            }
        }
        if ok {
            out.push((e, if exponent % 2 == 0 { 1 } else { -1 }));
        }
    }
    out.sort();
    Ok(out)
}

/// `D_T = Σ_{E ∈ 𝒢(T)} sgn(E, T) L_E`, of degree `ℓ(T) + 1`.
pub fn d_basis(t: &BinaryWord) -> Result<QSymSlice> {
    Ok(QSymSlice::from_coeffs(
        t.len() + 1,
        Basis::L,
        g_set(t)?.into_iter().map(|(e, s)| (e, Rational64::from_integer(s.into()))),
    ))
}

/// Coefficients of a peak slice in the `D_T` basis: the `L`-coefficients at
/// sparse words. The reconstruction is verified.
pub fn expand_in_d(f: &QSymSlice) -> Result<BTreeMap<BinaryWord, Rational64>> {
    if !f.is_peak()? {
        return Err(Error::NotPeak);
    }
    let l = f.convert(Basis::L);
    let h: BTreeMap<BinaryWord, Rational64> = l
        .coeffs()
        .iter()
        .filter(|(w, _)| w.is_sparse())
        .map(|(w, c)| (w.clone(), *c))
        .collect();
    let mut back = QSymSlice::zero(f.degree(), Basis::L);
    for (t, c) in &h {
        back = back.plus(&d_basis(t)?.scale(*c));
    }
    if back != l {
        return Err(Error::Internal("D-basis reconstruction mismatch".into()));
    }
    Ok(h)
}

/// A quasisymmetric function as a constant plus homogeneous slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQSym {
    pub constant: Rational64,
    pub slices: BTreeMap<usize, QSymSlice>,
}

impl GradedQSym {
    /// `Σ_E b_E L_E` from path counts (key length `k - 1` lands in degree `k`).
    pub fn from_counts(counts: &Counts) -> Self {
        let mut slices: BTreeMap<usize, QSymSlice> = BTreeMap::new();
        for (e, &c) in counts {
            slices
                .entry(e.len() + 1)
                .or_insert_with(|| QSymSlice::zero(e.len() + 1, Basis::L))
                .add(e.clone(), Rational64::from_integer(c as i64));
        }
        GradedQSym {
            constant: Rational64::zero(),
            slices,
        }
    }

    pub fn one() -> Self {
        GradedQSym {
            constant: Rational64::one(),
            slices: BTreeMap::new(),
        }
    }
}

/// `F̃(x, y) = Σ b(x,y)_E L_E`, and `F̃(x, x) = 1`.
pub fn f_tilde_in(iv: &Interval, order: &RefOrder, from: usize, to: usize) -> Result<GradedQSym> {
    if from == to {
        return Ok(GradedQSym::one());
    }
    if !iv.leq(from, to) {
        return Err(Error::NotComparable);
    }
    Ok(GradedQSym::from_counts(&iv.b_counts_between(order, from, to)))
}

pub fn f_tilde(
    sys: &crate::coxeter::CoxSystem,
    order: &RefOrder,
    u: &crate::coxeter::CoxElem,
    v: &crate::coxeter::CoxElem,
) -> Result<GradedQSym> {
    let iv = Interval::new(sys, u, v)?;
    f_tilde_in(&iv, order, iv.bottom(), iv.top())
}
