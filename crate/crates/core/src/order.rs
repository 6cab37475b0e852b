//! Reflection orderings built from a weight function and an indexing of the
//! simple roots, plus lower conjugates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_rational::Rational64;
use num_traits::Zero;

use crate::coxeter::{CoxElem, CoxSystem, Matrix, Root};
use crate::error::{Error, Result};

pub struct RefOrder {
    sys: CoxSystem,
    weight: Vec<Rational64>,
    indexing: Vec<usize>,
    inner: Option<Box<RefOrder>>,
    conj: Vec<usize>,
    label: String,
    roots: RwLock<HashMap<Matrix, Root>>,
}

impl Clone for RefOrder {
    fn clone(&self) -> Self {
        RefOrder {
            sys: self.sys.clone(),
            weight: self.weight.clone(),
            indexing: self.indexing.clone(),
            inner: self.inner.clone(),
            conj: self.conj.clone(),
            label: self.label.clone(),
            roots: RwLock::new(self.roots.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for RefOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RefOrder")
            .field("label", &self.label)
            .field("weight", &self.weight)
            .field("indexing", &self.indexing)
            .field("conj", &self.conj)
            .finish()
    }
}

impl RefOrder {
    /// Order from weight `p` on simple roots and indexing `I` (a permutation
    /// of generator indices, most significant first). Roots of weight zero go
    /// last and are ordered by `inner`, which is only needed when at least two
    /// simple roots have weight zero.
    pub fn weight_order(
        sys: &CoxSystem,
        weight: Vec<Rational64>,
        indexing: Vec<usize>,
        inner: Option<RefOrder>,
    ) -> Result<RefOrder> {
        let n = sys.rank();
        if weight.len() != n {
            return Err(Error::InvalidOrder(format!(
                "weight has {} entries, rank is {n}",
                weight.len()
            )));
        }
        if weight.iter().any(|w| *w < Rational64::zero()) {
            return Err(Error::InvalidOrder("weights must be nonnegative".into()));
        }
        let mut sorted = indexing.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidOrder("indexing is not a permutation of the generators".into()));
        }
        let zeros = weight.iter().filter(|w| w.is_zero()).count();
        if zeros >= 2 && inner.is_none() {
            return Err(Error::MissingInnerOrder);
        }
        Ok(RefOrder {
            sys: sys.clone(),
            weight,
            indexing,
            inner: inner.map(Box::new),
            conj: Vec::new(),
            label: "weight".into(),
            roots: RwLock::new(HashMap::new()),
        })
    }

    /// Same as [`weight_order`](Self::weight_order) with integer weights.
    pub fn weight_order_int(
        sys: &CoxSystem,
        weight: &[i64],
        indexing: Vec<usize>,
        inner: Option<RefOrder>,
    ) -> Result<RefOrder> {
        let w = weight.iter().map(|&x| Rational64::from_integer(x)).collect();
        Self::weight_order(sys, w, indexing, inner)
    }

    /// Height weight, indexing `α_1, …, α_l`; `α_1` is the maximum.
    pub fn height(sys: &CoxSystem) -> RefOrder {
        let mut o = Self::weight_order_int(sys, &vec![1; sys.rank()], (0..sys.rank()).collect(), None)
            .expect("height order is always valid");
        o.label = "height".into();
        o
    }

    /// Height weight with `α_s` indexed first, so `s` is the maximum.
    pub fn height_with_first(sys: &CoxSystem, s: usize) -> Result<RefOrder> {
        check_gen(sys, s)?;
        let mut idx = vec![s];
        idx.extend((0..sys.rank()).filter(|&i| i != s));
        let mut o = Self::weight_order_int(sys, &vec![1; sys.rank()], idx, None)?;
        o.label = format!("height-first:{}", s + 1);
        Ok(o)
    }

    /// `p(α_s) = 0`, all other simple weights 1, `α_s` indexed last. `s` is
    /// the maximum and `t ↦ sts` is order-preserving on the parabolic
    /// reflections avoiding `s`, with `t ≪ sts`.
    pub fn good_order(sys: &CoxSystem, s: usize) -> Result<RefOrder> {
        check_gen(sys, s)?;
        let mut w = vec![1i64; sys.rank()];
        w[s] = 0;
        let mut idx: Vec<usize> = (0..sys.rank()).filter(|&i| i != s).collect();
        idx.push(s);
        let mut o = Self::weight_order_int(sys, &w, idx, None)?;
        o.label = format!("good:{}", s + 1);
        Ok(o)
    }

    /// `p(α_r) = 2`, other simple weights 1, indexing `α_s, α_r, …`.
    pub fn biparabolic_order(sys: &CoxSystem, r: usize, s: usize) -> Result<RefOrder> {
        check_gen(sys, r)?;
        check_gen(sys, s)?;
        if r == s {
            return Err(Error::InvalidOrder("biparabolic order needs r != s".into()));
        }
        let mut w = vec![1i64; sys.rank()];
        w[r] = 2;
        let mut idx = vec![s, r];
        idx.extend((0..sys.rank()).filter(|&i| i != r && i != s));
        let mut o = Self::weight_order_int(sys, &w, idx, None)?;
        o.label = format!("biparabolic:{},{}", r + 1, s + 1);
        Ok(o)
    }

    /// Lower `s`-conjugate: `r ≪_s r'` iff `r = s`, or `srs ≪ sr's`.
    /// This is a reflection ordering when `s` is the maximum of `self`.
    pub fn lower_conjugate(&self, s: usize) -> Result<RefOrder> {
        check_gen(&self.sys, s)?;
        let mut o = self.clone();
        o.conj.push(s);
        o.label = format!("{}^{}", self.label, s + 1);
        o.roots = RwLock::new(HashMap::new());
        Ok(o)
    }

    /// Parse `height`, `good:<s>`, `biparabolic:<r>,<s>` (1-based), then
    /// apply lower conjugates in `conj` (1-based) left to right.
    pub fn from_spec(sys: &CoxSystem, spec: &str, conj: &[usize]) -> Result<RefOrder> {
        let gen = |tok: &str| -> Result<usize> {
            let g: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidOrder(format!("bad generator {tok:?}")))?;
            if g == 0 || g > sys.rank() {
                return Err(Error::GeneratorOutOfRange {
                    index: g,
                    rank: sys.rank(),
                });
            }
            Ok(g - 1)
        };
        let spec = spec.trim();
        let mut order = if spec == "height" {
            Self::height(sys)
        } else if let Some(rest) = spec.strip_prefix("good:") {
            Self::good_order(sys, gen(rest)?)?
        } else if let Some(rest) = spec.strip_prefix("biparabolic:") {
            let (r, s) = rest
                .split_once(',')
                .ok_or_else(|| Error::InvalidOrder(format!("expected biparabolic:<r>,<s>, got {spec:?}")))?;
            Self::biparabolic_order(sys, gen(r)?, gen(s)?)?
        } else {
            return Err(Error::InvalidOrder(format!(
                "unknown order {spec:?}; expected height, good:<s> or biparabolic:<r>,<s>"
            )));
        };
        for &c in conj {
            order = order.lower_conjugate(gen(&c.to_string())?)?;
        }
        Ok(order)
    }

    pub fn system(&self) -> &CoxSystem {
        &self.sys
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn weight_of(&self, beta: &Root) -> Rational64 {
        beta.0
            .iter()
            .zip(&self.weight)
            .map(|(&c, w)| w * c)
            .fold(Rational64::zero(), |a, b| a + b)
    }

    fn base_cmp(&self, a: &Root, b: &Root) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (pa, pb) = (self.weight_of(a), self.weight_of(b));
        match (pa.is_zero(), pb.is_zero()) {
            (true, true) => match &self.inner {
                Some(inner) => inner.compare(a, b),
                // a single zero-weight simple root: its parabolic has one root
                None => a.cmp(b),
            },
            (false, true) => Ordering::Less,
            (true, false) => Ordering::Greater,
            (false, false) => {
                for &i in &self.indexing {
                    let lhs = pb * a.0[i];
                    let rhs = pa * b.0[i];
                    match lhs.cmp(&rhs) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn cmp_with_stack(&self, a: &Root, b: &Root, depth: usize) -> Ordering {
        if depth == 0 {
            return self.base_cmp(a, b);
        }
        let s = self.conj[depth - 1];
        let sa = a.simple_index() == Some(s);
        let sb = b.simple_index() == Some(s);
        match (sa, sb) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => {
                self.cmp_with_stack(&self.sys.reflect(s, a), &self.sys.reflect(s, b), depth - 1)
            }
        }
    }

    /// Compare two positive roots.
    pub fn compare(&self, a: &Root, b: &Root) -> Ordering {
        self.cmp_with_stack(a, b, self.conj.len())
    }

    pub fn less(&self, a: &Root, b: &Root) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    /// Positive root of a reflection, cached per order.
    pub fn root_of(&self, t: &CoxElem) -> Result<Root> {
        if let Some(r) = self.roots.read().unwrap().get(t.matrix()) {
            return Ok(r.clone());
        }
        let r = self
            .sys
            .as_reflection(t)
            .ok_or_else(|| Error::Internal(format!("{t} is not a reflection")))?;
        self.roots
            .write()
            .unwrap()
            .entry(t.matrix().clone())
            .or_insert_with(|| r.clone());
        Ok(r)
    }

    /// Compare two reflections through their positive roots.
    pub fn compare_reflections(&self, t: &CoxElem, t2: &CoxElem) -> Result<Ordering> {
        Ok(self.compare(&self.root_of(t)?, &self.root_of(t2)?))
    }

    /// Sort roots increasingly and return them.
    pub fn sorted(&self, roots: &[Root]) -> Vec<Root> {
        let mut v = roots.to_vec();
        v.sort_by(|a, b| self.compare(a, b));
        v
    }
}

fn check_gen(sys: &CoxSystem, s: usize) -> Result<()> {
    if s < sys.rank() {
        Ok(())
    } else {
        Err(Error::GeneratorOutOfRange {
            index: s,
            rank: sys.rank(),
        })
    }
}

/// All triples `(β₁, β, β₂)` of distinct positive roots with
/// `β = c₁β₁ + c₂β₂`, `c₁, c₂ > 0`, among `roots` (rank-2 test via
/// proportional minors).
pub fn root_triples(roots: &[Root]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let n = roots.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if positive_combination(&roots[k], &roots[i], &roots[j]) {
                    out.push((i, k, j));
                }
            }
        }
    }
    out
}

/// Is `b = c1 x + c2 y` with `c1, c2 > 0` rational?
fn positive_combination(b: &Root, x: &Root, y: &Root) -> bool {
    let dim = b.0.len();
    // find two coordinates where x, y are independent
    for p in 0..dim {
        for q in p + 1..dim {
            let det = x.0[p] * y.0[q] - x.0[q] * y.0[p];
            if det == 0 {
                continue;
            }
            let n1 = b.0[p] * y.0[q] - b.0[q] * y.0[p];
            let n2 = x.0[p] * b.0[q] - x.0[q] * b.0[p];
            if n1 * det <= 0 || n2 * det <= 0 {
                return false;
            }
            // verify every coordinate: det*b = n1*x + n2*y
            return (0..dim).all(|i| det * b.0[i] == n1 * x.0[i] + n2 * y.0[i]);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Root {
        Root(v.to_vec())
    }

    fn check_total_and_betweenness(order: &RefOrder, roots: &[Root]) {
        for a in roots {
            assert_eq!(order.compare(a, a), Ordering::Equal);
            for b in roots {
                if a != b {
                    assert_ne!(order.compare(a, b), Ordering::Equal, "tie {a} {b}");
                    assert_eq!(order.compare(a, b), order.compare(b, a).reverse());
                }
            }
        }
        let sorted = order.sorted(roots);
        for w in sorted.windows(3) {
            assert!(order.less(&w[0], &w[1]) && order.less(&w[1], &w[2]));
            assert!(order.less(&w[0], &w[2]));
        }
        for (i, k, j) in root_triples(roots) {
            let (b1, b, b2) = (&roots[i], &roots[k], &roots[j]);
            let (lo, hi) = if order.less(b1, b2) { (b1, b2) } else { (b2, b1) };
            assert!(order.less(lo, b) && order.less(b, hi), "{} between {lo} {hi}: {b}", order.label());
        }
    }

    #[test]
    fn height_order_a2() {
        let sys = CoxSystem::type_a(2).unwrap();
        let o = RefOrder::height(&sys);
        assert_eq!(o.sorted(&sys.positive_roots(10)), vec![r(&[0, 1]), r(&[1, 1]), r(&[1, 0])]);
        check_total_and_betweenness(&o, &sys.positive_roots(10));
    }

    #[test]
    fn good_order_a2() {
        let sys = CoxSystem::type_a(2).unwrap();
        let o = RefOrder::good_order(&sys, 0).unwrap();
        assert_eq!(o.sorted(&sys.positive_roots(10)), vec![r(&[0, 1]), r(&[1, 1]), r(&[1, 0])]);
    }

    #[test]
    fn lower_conjugate_a2() {
        let sys = CoxSystem::type_a(2).unwrap();
        let o = RefOrder::height(&sys).lower_conjugate(0).unwrap();
        assert_eq!(o.sorted(&sys.positive_roots(10)), vec![r(&[1, 0]), r(&[1, 1]), r(&[0, 1])]);
    }

    fn all_constructed(sys: &CoxSystem) -> Vec<RefOrder> {
        let n = sys.rank();
        let mut v = vec![RefOrder::height(sys)];
        for s in 0..n {
            let g = RefOrder::good_order(sys, s).unwrap();
            v.push(g.lower_conjugate(s).unwrap());
            v.push(g);
            let h = RefOrder::height_with_first(sys, s).unwrap();
            v.push(h.lower_conjugate(s).unwrap());
            v.push(h);
            for r in 0..n {
                if r != s {
                    v.push(RefOrder::biparabolic_order(sys, r, s).unwrap());
                }
            }
        }
        v.push(RefOrder::weight_order_int(sys, &(1..=n as i64).collect::<Vec<_>>(), (0..n).rev().collect(), None).unwrap());
        v
    }

    #[test]
    fn betweenness_exhaustive_a3_b2_b3() {
        for sys in [
            CoxSystem::type_a(3).unwrap(),
            CoxSystem::type_b(2).unwrap(),
            CoxSystem::type_b(3).unwrap(),
        ] {
            let roots = sys.positive_roots(100);
            for o in all_constructed(&sys) {
                check_total_and_betweenness(&o, &roots);
            }
        }
    }

    #[test]
    fn good_order_properties_a3() {
        let sys = CoxSystem::type_a(3).unwrap();
        let roots = sys.positive_roots(100);
        for s in 0..3 {
            let o = RefOrder::good_order(&sys, s).unwrap();
            let alpha_s = Root::simple(3, s);
            let para: Vec<&Root> = roots.iter().filter(|b| b.0[s] == 0).collect();
            for b in &roots {
                if *b != alpha_s {
                    assert!(o.less(b, &alpha_s));
                }
            }
            for t in &para {
                let st = sys.reflect(s, t);
                // sts = t when s and t commute
                assert!(!o.less(&st, t));
                for t2 in &para {
                    let st2 = sys.reflect(s, t2);
                    assert_eq!(o.less(t, t2), o.less(&st, &st2));
                }
            }
        }
    }

    #[test]
    fn missing_inner_order() {
        let sys = CoxSystem::type_a(3).unwrap();
        assert_eq!(
            RefOrder::weight_order_int(&sys, &[1, 0, 0], vec![0, 1, 2], None).unwrap_err(),
            Error::MissingInnerOrder
        );
        let sub = RefOrder::height(&sys);
        let o = RefOrder::weight_order_int(&sys, &[1, 0, 0], vec![0, 1, 2], Some(sub)).unwrap();
        check_total_and_betweenness(&o, &sys.positive_roots(100));
        assert!(RefOrder::weight_order_int(&sys, &[1, 1], vec![0, 1, 2], None).is_err());
        assert!(RefOrder::weight_order_int(&sys, &[1, 1, 1], vec![0, 0, 2], None).is_err());
    }

    #[test]
    fn three_complete_rank3_no_ties() {
        let sys = CoxSystem::three_complete(3).unwrap();
        let refl: Vec<CoxElem> = sys
            .elements_up_to_length(7)
            .into_iter()
            .filter(|w| sys.as_reflection(w).is_some())
            .collect();
        assert!(refl.len() > 10);
        for o in all_constructed(&sys) {
            for a in &refl {
                for b in &refl {
                    let c = o.compare_reflections(a, b).unwrap();
                    assert_eq!(c == Ordering::Equal, a == b);
                }
            }
        }
    }

    #[test]
    fn biparabolic_rank4_chain() {
        let sys = CoxSystem::three_complete(4).unwrap();
        let (r_gen, s) = (1usize, 0usize);
        let o = RefOrder::biparabolic_order(&sys, r_gen, s).unwrap();
        let alpha_r = Root::simple(4, r_gen);
        let alpha_s = Root::simple(4, s);
        assert!(o.less(&alpha_r, &alpha_s));
        let elems = sys.elements_up_to_length(3);
        let para_w: Vec<&CoxElem> = elems
            .iter()
            .filter(|w| !w.word().contains(&r_gen) && !w.word().contains(&s))
            .collect();
        // reflections of the parabolic avoiding r and s, as roots
        let para_t: Vec<Root> = sys
            .elements_up_to_length(7)
            .iter()
            .filter(|w| !w.word().contains(&r_gen) && !w.word().contains(&s))
            .filter_map(|w| sys.as_reflection(w))
            .collect();
        for t in &para_t {
            let sts = sys.reflect(s, t);
            assert!(o.less(&sts, &alpha_s));
            for w in &para_w {
                let wrw = w.act(&alpha_r);
                let swrws = sys.reflect(s, &wrw);
                assert!(o.less(t, &swrws), "t={t} swrws={swrws}");
                assert!(o.less(&swrws, &sts));
                assert!(o.less(t, &w.act(&alpha_s)));
                assert!(o.less(t, &w.act(&alpha_r)));
                if w.length() >= 2 {
                    let szs = sys.reflect(s, &w.act(&alpha_s));
                    assert!(o.less(t, &szs) && o.less(&szs, &sts));
                }
            }
        }
    }

    #[test]
    fn height_first_lemma_rank4() {
        let sys = CoxSystem::three_complete(4).unwrap();
        for s in 0..4 {
            let o = RefOrder::height_with_first(&sys, s).unwrap();
            let alpha_s = Root::simple(4, s);
            let para: Vec<CoxElem> = sys
                .elements_up_to_length(5)
                .into_iter()
                .filter(|w| !w.word().contains(&s))
                .collect();
            for t in para.iter().filter_map(|w| sys.as_reflection(w)) {
                let sts = sys.reflect(s, &t);
                assert!(o.less(&sts, &alpha_s));
                for z in para.iter().filter(|z| z.length() >= 2) {
                    let szs = sys.reflect(s, &z.act(&alpha_s));
                    assert!(o.less(&t, &szs) && o.less(&szs, &sts));
                }
            }
        }
    }

    #[test]
    fn from_spec_parsing() {
        let sys = CoxSystem::type_a(3).unwrap();
        assert_eq!(RefOrder::from_spec(&sys, "height", &[]).unwrap().label(), "height");
        assert_eq!(RefOrder::from_spec(&sys, "good:2", &[2]).unwrap().label(), "good:2^2");
        assert!(RefOrder::from_spec(&sys, "biparabolic:1,3", &[]).is_ok());
        assert!(RefOrder::from_spec(&sys, "biparabolic:1,1", &[]).is_err());
        assert!(RefOrder::from_spec(&sys, "good:4", &[]).is_err());
        assert!(RefOrder::from_spec(&sys, "weird", &[]).is_err());
    }
}
