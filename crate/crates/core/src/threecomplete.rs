//! 3-complete Coxeter groups, the `W_n` and `P_{n,j}` families, and exact
//! checks of the pyramid, `svs` and independence statements.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bruhat::Interval;
use crate::coxeter::{Bond, CoxElem, CoxSystem, Root, Side};
use crate::error::{Error, Result};
use crate::linalg::rank_i64;
use crate::ncpoly::{cd_monomials, complete_cd_index_ab, complete_cd_index_in, to_cd, CdPoly, NCPoly};
use crate::order::RefOrder;
use crate::word::{fibonacci, BinaryWord};

pub fn is_three_complete(sys: &CoxSystem) -> bool {
    let l = sys.rank();
    (0..l).all(|i| (0..l).all(|j| i == j || sys.coxeter_entry(i, j) == Bond::Finite(3)))
}

/// `w(α_1) = Σ c_i α_i` and `d_i = 2c_i - Σ_{k≠i} c_k` (index 0 is `α_1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DVector {
    pub c: Vec<i64>,
    pub d: Vec<i64>,
}

/// For `w` in the parabolic subgroup avoiding the first generator.
pub fn d_vector(sys: &CoxSystem, w: &CoxElem) -> Result<DVector> {
    if !is_three_complete(sys) {
        return Err(Error::InvalidCoxeterMatrix(format!("{} is not 3-complete", sys.name())));
    }
    if w.word().contains(&0) {
        return Err(Error::OutsideParabolic(1));
    }
    let c = w.act(&Root::simple(sys.rank(), 0)).0;
    let total: i64 = c.iter().sum();
    let d = c.iter().map(|&ci| 3 * ci - total).collect();
    Ok(DVector { c, d })
}

/// `{i ≥ 2 : d_i(w) > 0}`, 0-based. Errors if some `d_i` vanishes.
pub fn descents_via_d(sys: &CoxSystem, w: &CoxElem) -> Result<Vec<usize>> {
    let dv = d_vector(sys, w)?;
    let mut out = Vec::new();
    for (i, &d) in dv.d.iter().enumerate().skip(1) {
        if d == 0 {
            return Err(Error::Internal(format!("d_{} vanishes at {w}", i + 1)));
        }
        if d > 0 {
            out.push(i);
        }
    }
    Ok(out)
}

/// Words (0-based) of `W_n` in the rank `n + 1` group.
pub fn wn_words(n: usize) -> Vec<Vec<usize>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]], vec![vec![0, 1]]];
    for m in 2..=n {
        let mut next: Vec<Vec<usize>> = levels[m - 1]
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.push(m);
                w
            })
            .collect();
        next.extend(levels[m - 2].iter().map(|w| {
            let mut x = vec![m];
            x.extend(w);
            x.push(m);
            x
        }));
        levels.push(next);
    }
    levels.swap_remove(n)
}

/// `W_n` with its ambient group `K_{n+1}`.
pub fn wn_family(n: usize) -> Result<(CoxSystem, Vec<CoxElem>)> {
    let sys = CoxSystem::three_complete(n + 1)?;
    let elems = wn_words(n).iter().map(|w| sys.from_word(w)).collect::<Result<_>>()?;
    Ok((sys, elems))
}

/// `P_{n,1}, ..., P_{n,f_{n+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdFamily {
    pub n: usize,
    pub members: Vec<CdPoly>,
}

/// `P_{n,j}` for every level up to `n`.
pub fn pn_families(n: usize) -> Vec<CdFamily> {
    let mut fams = vec![CdFamily {
        n: 0,
        members: vec![CdPoly::one()],
    }];
    if n >= 1 {
        fams.push(CdFamily {
            n: 1,
            members: vec![CdPoly::c()],
        });
    }
    for m in 2..=n {
        let mut members: Vec<CdPoly> = fams[m - 1]
            .members
            .iter()
            .map(|p| CdPoly::c() * p.clone() + p.gprime())
            .collect();
        let d_minus_1 = CdPoly::d() - CdPoly::one();
        members.extend(fams[m - 2].members.iter().map(|p| d_minus_1.clone() * p.clone()));
        fams.push(CdFamily { n: m, members });
    }
    fams
}

pub fn pn_family(n: usize) -> CdFamily {
    pn_families(n).swap_remove(n)
}

/// The smallest degree-`n` monomial of `p` with `c ≺ d`, left to right.
pub fn initial_term(p: &CdPoly, n: usize) -> Option<String> {
    p.homogeneous(n).terms().keys().next().cloned()
}

/// Degree `n - 2i` coefficients have sign `(-1)^i` or vanish.
pub fn sign_pattern_holds(p: &CdPoly, n: usize) -> bool {
    p.terms().iter().all(|(m, &a)| {
        let deg = CdPoly::degree_of(m);
        deg <= n && (n - deg) % 2 == 0 && (if (n - deg) / 2 % 2 == 0 { a >= 0 } else { a <= 0 })
    })
}

/// Every nonzero monomial below the top degree arises by deleting a `d` from
/// a nonzero monomial two degrees higher.
pub fn deletion_witness_holds(p: &CdPoly, n: usize) -> bool {
    let support: BTreeSet<&String> = p.terms().keys().collect();
    support.iter().all(|m| {
        let deg = CdPoly::degree_of(m);
        if deg == n {
            return true;
        }
        (0..=m.len()).any(|i| {
            let cand = format!("{}d{}", &m[..i], &m[i..]);
            support.contains(&cand)
        })
    })
}

/// Every monomial of `M'` is `⪰ cI` whenever `I ⪯ M` have equal degree.
pub fn derivation_lemma_holds(deg: usize) -> bool {
    let monos = cd_monomials(deg);
    monos.iter().all(|m| {
        let dm = CdPoly::monomial(m, 1).gprime();
        monos.iter().filter(|i| *i <= m).all(|i| {
            let ci = format!("c{i}");
            dm.terms().keys().all(|w| *w >= ci)
        })
    })
}

/// Coefficient matrix of `polys` over `monomials`.
fn coefficient_rows(polys: &[CdPoly], monomials: &[String]) -> Vec<Vec<i64>> {
    polys.iter().map(|p| monomials.iter().map(|m| p.coeff(m)).collect()).collect()
}

/// Rank of the degree-`n` parts of `(d-1)^k P_{n,j}`.
pub fn mainhomo_rank(n: usize, k: usize) -> usize {
    let fam = pn_family(n);
    let mut factor = CdPoly::one();
    for _ in 0..k {
        factor = (CdPoly::d() - CdPoly::one()) * factor;
    }
    let tops: Vec<CdPoly> = fam.members.iter().map(|p| (factor.clone() * p.clone()).homogeneous(n)).collect();
    rank_i64(&coefficient_rows(&tops, &cd_monomials(n)))
}

/// One checked instance of an identity.
#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub label: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub instances: Vec<Instance>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            instances: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, pass: bool) {
        self.instances.push(Instance {
            label: label.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.pass).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instances {
            writeln!(f, "{} {}", if i.pass { "PASS" } else { "FAIL" }, i.label)?;
        }
        write!(
            f,
            "{}: {}/{} passed",
            self.suite,
            self.instances.len() - self.failures(),
            self.instances.len()
        )
    }
}

fn half(p: CdPoly) -> Result<CdPoly> {
    let mut out = CdPoly::zero();
    for (m, &c) in p.terms() {
        if c % 2 != 0 {
            return Err(Error::Internal(format!("odd coefficient {c} at {m}")));
        }
        out = out + CdPoly::monomial(m, c / 2);
    }
    Ok(out)
}

/// Pyramid identities for the complete cd-index on `[u, v] ⊂ A_3` with the
/// fresh generator `s_4` of `A_4`, for `ℓ(u, v) ≤ max_gap`.
pub fn pyramid_suite(max_gap: usize) -> Result<Report> {
    let sys = CoxSystem::type_a(4)?;
    let s = 3;
    let height = RefOrder::height(&sys);
    let good = RefOrder::good_order(&sys, s)?;
    let good_s = good.lower_conjugate(s)?;
    let small: Vec<CoxElem> = sys
        .elements_up_to_length(6)
        .into_iter()
        .filter(|w| !w.word().contains(&s))
        .collect();
    let mut report = Report::new("pyramid");
    let (a, b) = (NCPoly::a(), NCPoly::b());
    for v in &small {
        let iv = Interval::new(&sys, &sys.identity(), v)?;
        for ui in 0..iv.len() {
            let u = iv.elem(ui).clone();
            let top = iv.top();
            let gap = v.length() - u.length();
            if gap == 0 || gap > max_gap || !iv.leq(ui, top) {
                continue;
            }
            let label = format!("[{}, {}]", u.word_string(), v.word_string());
            let psi = complete_cd_index_in(&iv, &height, ui, top)?;
            let psi_ab = complete_cd_index_ab(&iv, &height, ui, top);
            let mid: Vec<usize> = iv.open(ui, top);
            let mut sum_d = CdPoly::zero();
            let mut sum_ab = NCPoly::zero();
            let mut sum_ba = NCPoly::zero();
            for &x in &mid {
                let left = complete_cd_index_ab(&iv, &height, ui, x);
                let right = complete_cd_index_ab(&iv, &height, x, top);
                sum_d = sum_d + to_cd(&left)? * CdPoly::d() * to_cd(&right)?;
                sum_ab = sum_ab + left.clone() * a.clone() * b.clone() * right.clone();
                sum_ba = sum_ba + left * b.clone() * a.clone() * right;
            }

            let vs = sys.mul_gen_right(v, s);
            let pyr = Interval::new(&sys, &u, &vs)?;
            let direct = complete_cd_index_in(&pyr, &height, pyr.bottom(), pyr.top())?;
            let averaged = half(psi.clone() * CdPoly::c() + CdPoly::c() * psi.clone() + sum_d)?;
            report.push(format!("prop averaged {label}"), direct == averaged);

            let by_good = complete_cd_index_ab(&pyr, &good, pyr.bottom(), pyr.top());
            let expansion = b.clone() * psi_ab.clone() + psi_ab.clone() * a.clone() + sum_ab;
            report.push(format!("prop single order {label}"), by_good == expansion);
            let by_conj = complete_cd_index_ab(&pyr, &good_s, pyr.bottom(), pyr.top());
            let mirror = a.clone() * psi_ab.clone() + psi_ab.clone() * b.clone() + sum_ba;
            report.push(format!("prop lower conjugate {label}"), by_conj == mirror);

            let dd = half(psi.clone() * CdPoly::c() + CdPoly::c() * psi.clone() + psi.d_d())?;
            report.push(format!("derivation form {label}"), direct == dd);
            let gp = CdPoly::c() * psi.clone() + psi.gprime();
            report.push(format!("right pyramid {label}"), direct == gp);

            let sv = sys.mul_gen_left(s, v);
            let lpyr = Interval::new(&sys, &u, &sv)?;
            let ldirect = complete_cd_index_in(&lpyr, &height, lpyr.bottom(), lpyr.top())?;
            report.push(format!("left pyramid {label}"), ldirect == gp);
        }
    }
    Ok(report)
}

fn cd_index(sys: &CoxSystem, u: &CoxElem, v: &CoxElem) -> Result<CdPoly> {
    let iv = Interval::new(sys, u, v)?;
    complete_cd_index_in(&iv, &RefOrder::height(sys), iv.bottom(), iv.top())
}

/// `Ψ̃_{e,svs} + dΨ̃_{e,v} = Ψ̃_{e,rvs} + Ψ̃_{e,v}` in `K_4`, for all `r ≠ s` and
/// `e ≠ v` in the parabolic subgroup avoiding both.
pub fn finalsvs_suite() -> Result<Report> {
    let sys = CoxSystem::three_complete(4)?;
    let mut report = Report::new("finalsvs");
    for r in 0..4 {
        for s in 0..4 {
            if r == s {
                continue;
            }
            let gens: Vec<usize> = (0..4).filter(|&g| g != r && g != s).collect();
            let (x, y) = (gens[0], gens[1]);
            for word in [vec![x], vec![y], vec![x, y], vec![y, x], vec![x, y, x]] {
                let v = sys.from_word(&word)?;
                let svs = sys.mul_gen_right(&sys.mul_gen_left(s, &v), s);
                let rvs = sys.mul_gen_right(&sys.mul_gen_left(r, &v), s);
                let e = sys.identity();
                let pv = cd_index(&sys, &e, &v)?;
                let lhs = cd_index(&sys, &e, &svs)? + CdPoly::d() * pv.clone();
                let rhs = cd_index(&sys, &e, &rvs)? + pv;
                report.push(
                    format!("r={} s={} v={}", r + 1, s + 1, v.word_string()),
                    lhs == rhs,
                );
            }
        }
    }
    Ok(report)
}

/// `Ψ̃_{s,svs} = Ψ̃_{e,v} c + Σ_{x ∈ (e,v)} Ψ̃_{e,x} d Ψ̃_{x,v}` for
/// `v ∈ W_{n-1}` and `s = s_{n+1}`, `1 ≤ n ≤ max_n`.
pub fn svs_family_suite(max_n: usize) -> Result<Report> {
    let mut report = Report::new("svs-family");
    for n in 1..=max_n {
        let sys = CoxSystem::three_complete(n + 1)?;
        let order = RefOrder::height(&sys);
        let s = n;
        for word in wn_words(n - 1) {
            let v = sys.from_word(&word)?;
            let iv = Interval::new(&sys, &sys.identity(), &v)?;
            let top = iv.top();
            let mut rhs = complete_cd_index_in(&iv, &order, 0, top)? * CdPoly::c();
            for x in iv.open(0, top) {
                rhs = rhs
                    + complete_cd_index_in(&iv, &order, 0, x)?
                        * CdPoly::d()
                        * complete_cd_index_in(&iv, &order, x, top)?;
            }
            let lhs = svs_index(&sys, &v, s)?;
            report.push(format!("n={n} v={}", v.word_string()), lhs == rhs);
        }
    }
    Ok(report)
}

/// `Ψ̃_{s,svs}` computed from the interval itself.
fn svs_index(sys: &CoxSystem, v: &CoxElem, s: usize) -> Result<CdPoly> {
    let sg = sys.generator(s)?;
    let svs = sys.mul_gen_right(&sys.mul_gen_left(s, v), s);
    cd_index(sys, &sg, &svs)
}

/// Rank `n + 1` intervals used for the span conjecture.
#[derive(Clone, Debug, Serialize)]
pub struct PoolEntry {
    pub label: String,
    pub index: CdPoly,
}

/// `[s_{n+1}, s_{n+1} v s_{n+1}]` for `v ∈ W_{n-1}`, `[e, v]` for
/// `v ∈ W_n`, and pyramids over the pool one rank down.
pub fn conjecture_pool(n: usize) -> Result<Vec<PoolEntry>> {
    let mut pool: Vec<PoolEntry> = Vec::new();
    for m in 1..=n {
        let mut next: Vec<PoolEntry> = pool
            .iter()
            .map(|p| PoolEntry {
                label: format!("pyr{}", p.label),
                index: CdPoly::c() * p.index.clone() + p.index.gprime(),
            })
            .collect();
        let sys = CoxSystem::three_complete(m + 1)?;
        for word in wn_words(m - 1) {
            let v = sys.from_word(&word)?;
            next.push(PoolEntry {
                label: format!("[s{}, s{} {} s{}]", m + 1, m + 1, v.word_string(), m + 1),
                index: svs_index(&sys, &v, m)?,
            });
        }
        for word in wn_words(m) {
            let v = sys.from_word(&word)?;
            next.push(PoolEntry {
                label: format!("[e, {}] in K{}", v.word_string(), m + 1),
                index: cd_index(&sys, &sys.identity(), &v)?,
            });
        }
        pool = next;
    }
    Ok(pool)
}

/// Rank of the pool against the conjectured dimension.
#[derive(Clone, Debug, Serialize)]
pub struct SpanCertificate {
    pub n: usize,
    pub expected_dim: usize,
    pub rank: usize,
    pub pool: Vec<String>,
    pub monomials: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

impl SpanCertificate {
    pub fn holds(&self) -> bool {
        self.rank == self.expected_dim
    }
}

pub fn conjecture_span(n: usize) -> Result<SpanCertificate> {
    if n == 0 {
        return Err(Error::Internal("the span conjecture needs n > 0".into()));
    }
    let pool = conjecture_pool(n)?;
    let monomials: Vec<String> = (0..=n).filter(|i| (n - i) % 2 == 0).flat_map(cd_monomials).collect();
    let expected_dim = monomials.len();
    let polys: Vec<CdPoly> = pool.iter().map(|p| p.index.clone()).collect();
    for p in &polys {
        if p.terms().keys().any(|m| !monomials.contains(m)) {
            return Err(Error::Internal("pool member outside the expected degrees".into()));
        }
    }
    let matrix = coefficient_rows(&polys, &monomials);
    Ok(SpanCertificate {
        n,
        expected_dim,
        rank: rank_i64(&matrix),
        pool: pool.into_iter().map(|p| p.label).collect(),
        monomials,
        matrix,
    })
}

/// `Σ_{i ≡ n (2), i ≤ n} f_{i+1}`.
pub fn conjectured_dimension(n: usize) -> usize {
    (0..=n).filter(|i| (n - i) % 2 == 0).map(|i| fibonacci(i + 1) as usize).sum()
}

/// Rows `v ∈ W_{n+2k}`, columns sparse `T` of length `n`, entries
/// `b(e, v)_T`. The statement asks for a zero kernel.
pub fn norel_matrix(n: usize, k: usize) -> Result<Vec<Vec<i64>>> {
    let (sys, elems) = wn_family(n + 2 * k)?;
    let order = RefOrder::height(&sys);
    let cols = BinaryWord::sparse_words(n);
    elems
        .iter()
        .map(|v| {
            let iv = Interval::new(&sys, &sys.identity(), v)?;
            let counts = iv.b_counts_between(&order, 0, iv.top());
            Ok(cols.iter().map(|t| *counts.get(t).unwrap_or(&0) as i64).collect())
        })
        .collect()
}

pub fn norel_suite(max_n: usize, max_k: usize) -> Result<Report> {
    let mut report = Report::new("norel");
    for n in 0..=max_n {
        for k in 0..=max_k {
            let m = norel_matrix(n, k)?;
            let cols = fibonacci(n + 1) as usize;
            report.push(format!("n={n} k={k} rank={} columns={cols}", rank_i64(&m)), rank_i64(&m) == cols);
        }
    }
    Ok(report)
}

pub fn mainhomo_suite(max_n: usize, max_k: usize) -> Report {
    let mut report = Report::new("mainhomo");
    let fams = pn_families(max_n);
    for fam in &fams {
        let n = fam.n;
        let fib = fibonacci(n + 1) as usize;
        report.push(format!("n={n} |A_n|={}", fam.members.len()), fam.members.len() == fib);
        let signs = fam.members.iter().all(|p| sign_pattern_holds(p, n));
        report.push(format!("n={n} sign pattern"), signs);
        let inits: Vec<Option<String>> = fam.members.iter().map(|p| initial_term(p, n)).collect();
        let increasing = inits.iter().all(Option::is_some) && inits.windows(2).all(|w| w[0] < w[1]);
        report.push(format!("n={n} initial terms increase"), increasing);
        let witness = fam.members.iter().all(|p| deletion_witness_holds(p, n));
        report.push(format!("n={n} deletion witness"), witness);
        report.push(format!("n={n} derivation lemma"), derivation_lemma_holds(n));
        for k in 0..=max_k {
            let r = mainhomo_rank(n, k);
            report.push(format!("n={n} k={k} rank={r}"), r == fib);
        }
    }
    report
}

pub fn conjecture_suite(max_n: usize) -> Result<Report> {
    let mut report = Report::new("conjecture1");
    for n in 1..=max_n {
        let cert = conjecture_span(n)?;
        report.push(
            format!(
                "n={n} rank={} expected={} pool={}",
                cert.rank,
                cert.expected_dim,
                cert.pool.len()
            ),
            cert.holds(),
        );
    }
    Ok(report)
}

/// Descent criterion, `d_i` recursion and height bound on the parabolic
/// subgroup avoiding `s_1` in `K_l`, for `ℓ(w) ≤ max_len`.
pub fn dvector_suite(rank: usize, max_len: usize) -> Result<Report> {
    let sys = CoxSystem::three_complete(rank)?;
    let mut report = Report::new("dvector");
    let elems: Vec<CoxElem> = sys
        .elements_up_to_length(max_len)
        .into_iter()
        .filter(|w| !w.word().contains(&0))
        .collect();
    for w in &elems {
        let dv = d_vector(&sys, w)?;
        let mut direct: Vec<usize> = sys.descents(w, Side::Left);
        direct.retain(|&i| i != 0);
        let via_d = descents_via_d(&sys, w);
        let label = w.word_string();
        report.push(format!("descents {label}"), via_d.as_ref() == Ok(&direct));
        let ht: i64 = dv.c.iter().sum();
        report.push(format!("height {label}"), ht > w.length() as i64);
        let mut rec = true;
        for i in 1..rank {
            let siw = sys.mul_gen_left(i, w);
            let ds = d_vector(&sys, &siw)?;
            rec &= ds.d[i] == -dv.d[i];
            for j in (1..rank).filter(|&j| j != i) {
                rec &= ds.d[j] == dv.d[i] + dv.d[j];
            }
        }
        report.push(format!("recursion {label}"), rec);
    }
    Ok(report)
}
