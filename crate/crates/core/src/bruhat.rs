//! Bruhat intervals, the Bruhat graph restricted to an interval, path
//! statistics by descent string, and flag vectors.
//!
//! Edges are labelled on the right: `x → y` with `y = x t`, `ℓ(x) < ℓ(y)`.

use std::collections::{BTreeMap, HashMap};

use crate::coxeter::{CoxElem, CoxSystem, Root};
use crate::error::{Error, Result};
use crate::order::RefOrder;
use crate::word::BinaryWord;

/// Words indexed map of path counts.
pub type Counts = BTreeMap<BinaryWord, u64>;

#[derive(Clone, Debug)]
pub struct Interval {
    sys: CoxSystem,
    elems: Vec<CoxElem>,
    index: HashMap<CoxElem, usize>,
    roots: Vec<Root>,
    /// `down[y]` lists `(x, root id)` for edges `x → y` inside the interval.
    down: Vec<Vec<(usize, usize)>>,
    up: Vec<Vec<(usize, usize)>>,
    /// `below[y]` bitset of `x` with `x ≤ y`.
    below: Vec<Vec<u64>>,
}

/// A directed path in the Bruhat graph with its reflection labels (as roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatPath {
    pub vertices: Vec<CoxElem>,
    pub labels: Vec<Root>,
}

impl BruhatPath {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn reflections(&self, sys: &CoxSystem) -> Result<Vec<CoxElem>> {
        self.labels.iter().map(|r| sys.reflection_from_root(r)).collect()
    }
}

/// Downward Bruhat-graph neighbours of `y`: delete one letter of the
/// reduced word. Returns `(y t, β_t)`.
pub fn lower_covers_and_edges(sys: &CoxSystem, y: &CoxElem) -> Vec<(CoxElem, Root)> {
    let w = y.word();
    let mut out = Vec::with_capacity(w.len());
    for j in 0..w.len() {
        let mut sub = w.to_vec();
        sub.remove(j);
        let x = sys.from_word(&sub).expect("letters come from a valid word");
        let mut beta = Root::simple(sys.rank(), w[j]);
        for &s in &w[j + 1..] {
            beta = sys.reflect(s, &beta);
        }
        out.push((x, beta));
    }
    out
}

impl Interval {
    pub fn new(sys: &CoxSystem, u: &CoxElem, v: &CoxElem) -> Result<Interval> {
        if !sys.bruhat_leq(u, v) {
            return Err(Error::NotComparable);
        }
        let mut elems = vec![v.clone()];
        let mut index: HashMap<CoxElem, usize> = HashMap::from([(v.clone(), 0)]);
        let mut root_ids: HashMap<Root, usize> = HashMap::new();
        let mut roots = Vec::new();
        let mut raw_down: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut i = 0;
        while i < elems.len() {
            let y = elems[i].clone();
            for (x, beta) in lower_covers_and_edges(sys, &y) {
                let xi = match index.get(&x) {
                    Some(&k) => k,
                    None => {
                        if !sys.bruhat_leq(u, &x) {
                            continue;
                        }
                        elems.push(x.clone());
                        raw_down.push(Vec::new());
                        index.insert(x, elems.len() - 1);
                        elems.len() - 1
                    }
                };
                let rid = *root_ids.entry(beta.clone()).or_insert_with(|| {
                    roots.push(beta);
                    roots.len() - 1
                });
                raw_down[i].push((xi, rid));
            }
            i += 1;
        }
        // renumber by (length, word) so u comes first and v last
        let mut perm: Vec<usize> = (0..elems.len()).collect();
        perm.sort_by(|&a, &b| {
            elems[a]
                .length()
                .cmp(&elems[b].length())
                .then_with(|| elems[a].word().cmp(elems[b].word()))
        });
        let mut new_of = vec![0; elems.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let sorted: Vec<CoxElem> = perm.iter().map(|&o| elems[o].clone()).collect();
        let mut down = vec![Vec::new(); sorted.len()];
        let mut up = vec![Vec::new(); sorted.len()];
        for (old, edges) in raw_down.into_iter().enumerate() {
            let y = new_of[old];
            for (x_old, rid) in edges {
                let x = new_of[x_old];
                down[y].push((x, rid));
                up[x].push((y, rid));
            }
        }
        for l in down.iter_mut().chain(up.iter_mut()) {
            l.sort_unstable();
        }
        let index = sorted.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        let words = sorted.len().div_ceil(64);
        let mut below = vec![vec![0u64; words]; sorted.len()];
        for y in 0..sorted.len() {
            let mut bits = vec![0u64; words];
            bits[y / 64] |= 1 << (y % 64);
            for &(x, _) in &down[y] {
                for (b, o) in bits.iter_mut().zip(&below[x]) {
                    *b |= o;
                }
            }
            below[y] = bits;
        }
        Ok(Interval {
            sys: sys.clone(),
            elems: sorted,
            index,
            roots,
            down,
            up,
            below,
        })
    }

    pub fn system(&self) -> &CoxSystem {
        &self.sys
    }

    pub fn elements(&self) -> &[CoxElem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn elem(&self, i: usize) -> &CoxElem {
        &self.elems[i]
    }

    pub fn index_of(&self, w: &CoxElem) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `ℓ(v) - ℓ(u)`.
    pub fn rank(&self) -> usize {
        self.elems[self.top()].length() - self.elems[0].length()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Edges `x → y` as `(y, root id)` for a given `x`.
    pub fn up_edges(&self, x: usize) -> &[(usize, usize)] {
        &self.up[x]
    }

    pub fn down_edges(&self, y: usize) -> &[(usize, usize)] {
        &self.down[y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y][x / 64] >> (x % 64) & 1 == 1
    }

    /// Indices strictly between `x` and `y`.
    pub fn open(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
            .collect()
    }

    /// Position of every root id under `order`.
    pub fn root_positions(&self, order: &RefOrder) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.roots.len()).collect();
        ids.sort_by(|&a, &b| order.compare(&self.roots[a], &self.roots[b]));
        let mut pos = vec![0; ids.len()];
        for (p, &id) in ids.iter().enumerate() {
            pos[id] = p;
        }
        pos
    }

    /// `b(x, y)_E` for all path lengths at once; key length is path length - 1.
    pub fn b_counts_between(&self, order: &RefOrder, from: usize, to: usize) -> Counts {
        let pos = self.root_positions(order);
        self.b_counts_with_positions(&pos, from, to)
    }

    /// Same as [`b_counts_between`](Self::b_counts_between) with precomputed
    /// root positions.
    pub fn b_counts_with_positions(&self, pos: &[usize], from: usize, to: usize) -> Counts {
        let mut out = Counts::new();
        if from == to || !self.leq(from, to) {
            return out;
        }
        // state per vertex: (last root position, steps taken, step-bit mask) -> count
        type State = HashMap<(usize, u8, u64), u64>;
        let mut states: Vec<Option<State>> = vec![None; self.len()];
        let add = |states: &mut Vec<Option<State>>, y: usize, key, c: u64| {
            let e = states[y].get_or_insert_with(HashMap::new).entry(key).or_insert(0);
            *e = e.checked_add(c).expect("path count overflow");
        };
        for &(y, rid) in &self.up[from] {
            if self.leq(y, to) {
                add(&mut states, y, (pos[rid], 1, 0), 1);
            }
        }
        for x in from + 1..=to {
            let Some(st) = states[x].take() else { continue };
            if x == to {
                for ((_, len, mask), c) in st {
                    let len = len as usize;
                    // E_{len - i} = step bit i
                    let e = BinaryWord::new((1..len).map(|j| (mask >> (len - j - 1) & 1) as u8).collect());
                    *out.entry(e).or_insert(0) += c;
                }
                continue;
            }
            for ((p, len, mask), c) in st {
                for &(y, rid) in &self.up[x] {
                    if !self.leq(y, to) {
                        continue;
                    }
                    let q = pos[rid];
                    let bit = u64::from(p > q);
                    add(&mut states, y, (q, len + 1, mask | bit << (len - 1)), c);
                }
            }
        }
        out
    }

    /// All paths of length `k` from `from` to `to`.
    pub fn paths(&self, from: usize, to: usize, k: usize) -> Vec<BruhatPath> {
        let mut out = Vec::new();
        let mut verts = vec![from];
        let mut labels = Vec::new();
        self.dfs(to, k, &mut verts, &mut labels, &mut out);
        out
    }

    fn dfs(
        &self,
        to: usize,
        k: usize,
        verts: &mut Vec<usize>,
        labels: &mut Vec<usize>,
        out: &mut Vec<BruhatPath>,
    ) {
        let x = *verts.last().unwrap();
        if labels.len() == k {
            if x == to {
                out.push(BruhatPath {
                    vertices: verts.iter().map(|&i| self.elems[i].clone()).collect(),
                    labels: labels.iter().map(|&r| self.roots[r].clone()).collect(),
                });
            }
            return;
        }
        let remaining = k - labels.len();
        for &(y, rid) in &self.up[x] {
            if !self.leq(y, to) {
                continue;
            }
            // each step raises length by at least one
            if self.elems[to].length() - self.elems[y].length() < remaining - 1 {
                continue;
            }
            verts.push(y);
            labels.push(rid);
            self.dfs(to, k, verts, labels, out);
            verts.pop();
            labels.pop();
        }
    }

    /// Flag f- and h-vectors of the subinterval `[x, y]`, indexed by words of
    /// length `ρ(y) - ρ(x) - 1`.
    pub fn flag_vectors(&self, x: usize, y: usize) -> (FlagVector, FlagVector) {
        let base = self.elems[x].length();
        let rank = self.elems[y].length() - base;
        let n = rank.saturating_sub(1);
        let inner = self.open(x, y);
        let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); rank + 1];
        for &z in &inner {
            by_rank[self.elems[z].length() - base].push(z);
        }
        let mut f = BTreeMap::new();
        for e in BinaryWord::all(n) {
            let ranks = e.support();
            let mut ways: Vec<(usize, u64)> = vec![(x, 1)];
            for &r in &ranks {
                ways = by_rank[r]
                    .iter()
                    .map(|&z| {
                        let c = ways.iter().filter(|&&(w, _)| self.leq(w, z)).map(|&(_, c)| c).sum();
                        (z, c)
                    })
                    .collect();
            }
            let total: u64 = ways.iter().map(|&(_, c)| c).sum();
            f.insert(e, total as i64);
        }
        let f = FlagVector { n, values: f };
        let h = f.h_from_f();
        (f, h)
    }
}

/// Function on `2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub n: usize,
    pub values: BTreeMap<BinaryWord, i64>,
}

impl FlagVector {
    pub fn get(&self, e: &BinaryWord) -> i64 {
        self.values.get(e).copied().unwrap_or(0)
    }

    /// `h_F = Σ_{E ≤ F} (-1)^{|F - E|} f_E`.
    pub fn h_from_f(&self) -> FlagVector {
        self.mobius(true)
    }

    /// `f_F = Σ_{E ≤ F} h_E`.
    pub fn f_from_h(&self) -> FlagVector {
        self.mobius(false)
    }

    fn mobius(&self, signed: bool) -> FlagVector {
        let n = self.n;
        let mut vals: Vec<i64> = (0..1u64 << n)
            .map(|m| self.get(&BinaryWord::from_mask(m, n)))
            .collect();
        for bit in 0..n {
            for m in 0..1usize << n {
                if m >> bit & 1 == 1 {
                    let lower = vals[m ^ (1 << bit)];
                    if signed {
                        vals[m] -= lower;
                    } else {
                        vals[m] += lower;
                    }
                }
            }
        }
        FlagVector {
            n,
            values: vals
                .into_iter()
                .enumerate()
                .map(|(m, v)| (BinaryWord::from_mask(m as u64, n), v))
                .collect(),
        }
    }
}

/// `[u, v]` as a list of elements, sorted by length.
pub fn interval(sys: &CoxSystem, u: &CoxElem, v: &CoxElem) -> Result<Vec<CoxElem>> {
    Ok(Interval::new(sys, u, v)?.elems)
}

/// Paths of length `k` from `u` to `v`.
pub fn paths(sys: &CoxSystem, u: &CoxElem, v: &CoxElem, k: usize) -> Result<Vec<BruhatPath>> {
    let iv = Interval::new(sys, u, v)?;
    Ok(iv.paths(iv.bottom(), iv.top(), k))
}

/// `E_≺(Δ)`: letter `r - i` is 1 iff `t_i ≻ t_{i+1}`.
pub fn descent_string(order: &RefOrder, path: &BruhatPath) -> BinaryWord {
    let r = path.labels.len();
    if r == 0 {
        return BinaryWord::empty();
    }
    let mut bits = vec![0u8; r - 1];
    for i in 1..r {
        if order.less(&path.labels[i], &path.labels[i - 1]) {
            bits[r - i - 1] = 1;
        }
    }
    BinaryWord::new(bits)
}

/// `b(u,v)_E` for `E ∈ 2^{k-1}` (words with zero count omitted).
pub fn b_counts(sys: &CoxSystem, order: &RefOrder, u: &CoxElem, v: &CoxElem, k: usize) -> Result<Counts> {
    let iv = Interval::new(sys, u, v)?;
    Ok(iv
        .b_counts_between(order, iv.bottom(), iv.top())
        .into_iter()
        .filter(|(e, _)| e.len() + 1 == k)
        .collect())
}

/// `c_E = Σ_{F ≤ E} b_F` over words of length `n`.
pub fn c_from_b(b: &Counts, n: usize) -> Counts {
    let f = FlagVector {
        n,
        values: b
            .iter()
            .filter(|(e, _)| e.len() == n)
            .map(|(e, &c)| (e.clone(), c as i64))
            .collect(),
    };
    f.f_from_h()
        .values
        .into_iter()
        .map(|(e, c)| (e, c as u64))
        .collect()
}
