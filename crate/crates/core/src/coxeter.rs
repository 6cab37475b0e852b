//! Crystallographic Coxeter systems realized on the root lattice.
//!
//! Every element is stored as the integer matrix of its action on simple-root
//! coordinates (column `j` is `w(α_j)`), together with its inverse and a
//! canonical reduced word. Equality and hashing only look at the matrix.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;

use crate::error::{Error, Result};

/// An off-diagonal Coxeter matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..n {
                if r != rank && m[r][col] != 0 {
                    let (a, b) = (m[rank][col], m[r][col]);
                    for c in 0..n {
                        m[r][c] = m[r][c] * a - m[rank][c] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    /// Index of the simple root this is, if any.
    pub fn simple_index(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if idx.is_none() => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A group element: matrix, inverse matrix and canonical reduced word
/// (0-based generator indices).
#[derive(Clone, Debug)]
pub struct CoxElem {
    mat: Matrix,
    inv: Matrix,
    word: Vec<usize>,
}

impl PartialEq for CoxElem {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for CoxElem {}

impl Hash for CoxElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl CoxElem {
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    /// Canonical reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Reduced word as 1-based generator labels, space separated.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word
            .iter()
            .map(|s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `w(β)`.
    pub fn act(&self, root: &Root) -> Root {
        Root(self.mat.apply(&root.0))
    }

    /// Generators occurring in the reduced word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.word.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for CoxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

#[derive(Clone, Debug)]
pub struct CoxSystem {
    name: String,
    coxeter: Vec<Vec<Bond>>,
    cartan: Vec<Vec<i64>>,
}

impl CoxSystem {
    /// Build from a Coxeter matrix. Diagonal entries must be `Finite(1)`;
    /// off-diagonal entries must be 2, 3, 4, 6 or infinite.
    pub fn new(coxeter: Vec<Vec<Bond>>) -> Result<Self> {
        Self::with_name("custom", coxeter)
    }

    fn with_name(name: &str, coxeter: Vec<Vec<Bond>>) -> Result<Self> {
        let rank = coxeter.len();
        if rank == 0 {
            return Err(Error::InvalidCoxeterMatrix("rank must be positive".into()));
        }
        if coxeter.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidCoxeterMatrix("matrix is not square".into()));
        }
        if rank > 255 {
            return Err(Error::InvalidCoxeterMatrix("rank too large".into()));
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            if coxeter[i][i] != Bond::Finite(1) {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "diagonal entry ({}, {}) must be 1",
                    i + 1,
                    i + 1
                )));
            }
            cartan[i][i] = 2;
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if coxeter[i][j] != coxeter[j][i] {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "entries ({}, {}) and ({}, {}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if i > j {
                    continue;
                }
                let (a_ij, a_ji) = match coxeter[i][j] {
                    Bond::Finite(2) => (0, 0),
                    Bond::Finite(3) => (-1, -1),
                    Bond::Finite(4) => (-1, -2),
                    Bond::Finite(6) => (-1, -3),
                    Bond::Infinite => (-2, -2),
                    Bond::Finite(m) => {
                        return Err(Error::InvalidCoxeterMatrix(format!(
                            "unsupported entry m = {m} at ({}, {}); allowed: 2, 3, 4, 6, inf",
                            i + 1,
                            j + 1
                        )))
                    }
                };
                cartan[i][j] = a_ij;
                cartan[j][i] = a_ji;
            }
        }
        Ok(CoxSystem {
            name: name.to_string(),
            coxeter,
            cartan,
        })
    }

    /// Type `A_n` (the symmetric group on `n+1` letters).
    pub fn type_a(n: usize) -> Result<Self> {
        Self::with_name(&format!("A{n}"), Self::path_matrix(n, |_| Bond::Finite(3)))
    }

    /// Type `B_n`, with the 4-bond between the last two generators.
    pub fn type_b(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCoxeterMatrix("B_n needs n >= 2".into()));
        }
        Self::with_name(
            &format!("B{n}"),
            Self::path_matrix(n, |i| if i + 2 == n { Bond::Finite(4) } else { Bond::Finite(3) }),
        )
    }

    /// The rank-`n` group with `m(s, s') = 3` for all distinct generators.
    pub fn three_complete(n: usize) -> Result<Self> {
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Bond::Finite(1) } else { Bond::Finite(3) })
                    .collect()
            })
            .collect();
        Self::with_name(&format!("K{n}"), m)
    }

    fn path_matrix(n: usize, bond: impl Fn(usize) -> Bond) -> Vec<Vec<Bond>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Bond::Finite(1)
                        } else if j == i + 1 {
                            bond(i)
                        } else if i == j + 1 {
                            bond(j)
                        } else {
                            Bond::Finite(2)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Named presets `A<n>`, `B<n>`, `K<n>`.
    pub fn preset(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(|| Error::Parse("empty group name".into()))?;
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("unknown group preset {name:?}")))?;
        if n == 0 {
            return Err(Error::Parse(format!("group preset {name:?} needs positive rank")));
        }
        match kind {
            'A' => Self::type_a(n),
            'B' => Self::type_b(n),
            'K' => Self::three_complete(n),
            _ => Err(Error::Parse(format!("unknown group preset {name:?}"))),
        }
    }

    /// Parse the plain-text matrix format: first line the rank `l`, then `l`
    /// lines of `l` whitespace-separated entries (`inf` for infinity).
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let rank: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing rank line".into()))?
            .parse()
            .map_err(|_| Error::Parse("rank line is not an integer".into()))?;
        let mut rows = Vec::with_capacity(rank);
        for r in 0..rank {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {}", r + 1)))?;
            let row = line
                .split_whitespace()
                .map(|tok| match tok {
                    "inf" | "∞" => Ok(Bond::Infinite),
                    t => t
                        .parse::<u32>()
                        .map(Bond::Finite)
                        .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != rank {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {rank}",
                    r + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix".into()));
        }
        Self::new(rows)
    }

    /// A preset name, or else a path to a matrix file.
    pub fn load(spec: &str) -> Result<Self> {
        if let Ok(sys) = Self::preset(spec) {
            return Ok(sys);
        }
        let path = Path::new(spec);
        if !path.exists() {
            return Err(Error::Parse(format!(
                "{spec:?} is neither a preset (A<n>, B<n>, K<n>) nor a readable file"
            )));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {spec:?}: {e}")))?;
        let mut sys = Self::parse_matrix(&text)?;
        sys.name = spec.to_string();
        Ok(sys)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.coxeter.len()
    }

    pub fn coxeter_entry(&self, i: usize, j: usize) -> Bond {
        self.coxeter[i][j]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `⟨α_i^∨, β⟩`.
    pub fn pairing(&self, i: usize, root: &Root) -> i64 {
        self.cartan[i].iter().zip(&root.0).map(|(a, b)| a * b).sum()
    }

    /// `s_i(β) = β - ⟨α_i^∨, β⟩ α_i`.
    pub fn reflect(&self, i: usize, root: &Root) -> Root {
        let mut v = root.0.clone();
        v[i] -= self.pairing(i, root);
        Root(v)
    }

    pub fn generator_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::identity(self.rank());
        self.left_gen_inplace(i, &mut m);
        m
    }

    /// `M <- S_i M`: only row `i` changes.
    fn left_gen_inplace(&self, i: usize, m: &mut Matrix) {
        let n = self.rank();
        for col in 0..n {
            let mut acc = m.get(i, col);
            for k in 0..n {
                acc -= self.cartan[i][k] * m.get(k, col);
            }
            m.set(i, col, acc);
        }
    }

    /// `M <- M S_i`: column `j` gains `-a_ij` times column `i`.
    fn right_gen_inplace(&self, i: usize, m: &mut Matrix) {
        let n = self.rank();
        for row in 0..n {
            let ci = m.get(row, i);
            if ci == 0 {
                continue;
            }
            for j in 0..n {
                if j != i {
                    let v = m.get(row, j) - self.cartan[i][j] * ci;
                    m.set(row, j, v);
                }
            }
            m.set(row, i, -ci);
        }
    }

    fn check_index(&self, s: usize) -> Result<()> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: s,
                rank: self.rank(),
            })
        }
    }

    fn column_is_negative(m: &Matrix, j: usize) -> bool {
        for i in 0..m.dim() {
            let c = m.get(i, j);
            if c != 0 {
                return c < 0;
            }
        }
        false
    }

    /// Greedy normal form: repeatedly strip the smallest left descent.
    fn normal_form(&self, inv: &Matrix) -> Vec<usize> {
        let mut inv = inv.clone();
        let mut word = Vec::new();
        loop {
            let Some(s) = (0..self.rank()).find(|&s| Self::column_is_negative(&inv, s)) else {
                break;
            };
            word.push(s);
            self.right_gen_inplace(s, &mut inv);
        }
        word
    }

    fn from_matrices(&self, mat: Matrix, inv: Matrix) -> CoxElem {
        let word = self.normal_form(&inv);
        CoxElem { mat, inv, word }
    }

    pub fn identity(&self) -> CoxElem {
        let id = Matrix::identity(self.rank());
        CoxElem {
            mat: id.clone(),
            inv: id,
            word: Vec::new(),
        }
    }

    pub fn generator(&self, s: usize) -> Result<CoxElem> {
        self.from_word(&[s])
    }

    /// Product of generators along `word` (0-based indices).
    pub fn from_word(&self, word: &[usize]) -> Result<CoxElem> {
        let n = self.rank();
        let mut mat = Matrix::identity(n);
        let mut inv = Matrix::identity(n);
        for &s in word {
            self.check_index(s)?;
            self.right_gen_inplace(s, &mut mat);
            self.left_gen_inplace(s, &mut inv);
        }
        Ok(self.from_matrices(mat, inv))
    }

    /// Product along a 1-based word, as entered by users.
    pub fn from_word_1based(&self, word: &[usize]) -> Result<CoxElem> {
        let zero: Vec<usize> = word
            .iter()
            .map(|&s| {
                if s == 0 {
                    Err(Error::GeneratorOutOfRange {
                        index: 0,
                        rank: self.rank(),
                    })
                } else {
                    Ok(s - 1)
                }
            })
            .collect::<Result<_>>()?;
        self.from_word(&zero)
    }

    /// Parse a whitespace- or comma-separated 1-based word; empty or `e` is
    /// the identity.
    pub fn parse_word(&self, text: &str) -> Result<CoxElem> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(self.identity());
        }
        let word = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator {tok:?} in word")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&bad) = word.iter().find(|&&s| s == 0 || s > self.rank()) {
            return Err(Error::GeneratorOutOfRange {
                index: bad,
                rank: self.rank(),
            });
        }
        self.from_word_1based(&word)
    }

    pub fn mul(&self, a: &CoxElem, b: &CoxElem) -> CoxElem {
        self.from_matrices(a.mat.mul(&b.mat), b.inv.mul(&a.inv))
    }

    /// `w s`.
    pub fn mul_gen_right(&self, w: &CoxElem, s: usize) -> CoxElem {
        let mut mat = w.mat.clone();
        let mut inv = w.inv.clone();
        self.right_gen_inplace(s, &mut mat);
        self.left_gen_inplace(s, &mut inv);
        self.from_matrices(mat, inv)
    }

    /// `s w`.
    pub fn mul_gen_left(&self, s: usize, w: &CoxElem) -> CoxElem {
        let mut mat = w.mat.clone();
        let mut inv = w.inv.clone();
        self.left_gen_inplace(s, &mut mat);
        self.right_gen_inplace(s, &mut inv);
        self.from_matrices(mat, inv)
    }

    pub fn inverse(&self, w: &CoxElem) -> CoxElem {
        self.from_matrices(w.inv.clone(), w.mat.clone())
    }

    /// Element whose matrix is `mat` (trusted to lie in the group).
    pub fn elem_from_matrix_pair(&self, mat: Matrix, inv: Matrix) -> CoxElem {
        self.from_matrices(mat, inv)
    }

    pub fn length(&self, w: &CoxElem) -> usize {
        w.length()
    }

    pub fn is_descent(&self, w: &CoxElem, s: usize, side: Side) -> bool {
        match side {
            Side::Left => Self::column_is_negative(&w.inv, s),
            Side::Right => Self::column_is_negative(&w.mat, s),
        }
    }

    /// `s ∈ Des_L(w)` iff `w^{-1}(α_s)` is negative; right descents use `w(α_s)`.
    pub fn descents(&self, w: &CoxElem, side: Side) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_descent(w, s, side)).collect()
    }

    /// Bruhat order via the lifting property, peeling left descents of `v`
    /// along its normal form.
    pub fn bruhat_leq(&self, u: &CoxElem, v: &CoxElem) -> bool {
        let mut uinv = u.inv.clone();
        let mut lu = u.length();
        let lv = v.length();
        if lu > lv {
            return false;
        }
        for (k, &s) in v.word.iter().enumerate() {
            if lu > lv - k {
                return false;
            }
            if lu > 0 && Self::column_is_negative(&uinv, s) {
                self.right_gen_inplace(s, &mut uinv);
                lu -= 1;
            }
        }
        lu == 0
    }

    /// The positive root of `w` if `w` is a reflection.
    ///
    /// Detection: `w² = e`, `w ≠ e`, `rank(w - 1) = 1`; the root is then found
    /// by conjugating down to a simple reflection and checked to span the
    /// image of `w - 1`.
    pub fn as_reflection(&self, w: &CoxElem) -> Option<Root> {
        if w.is_identity() || w.length() % 2 == 0 {
            return None;
        }
        if !w.mat.mul(&w.mat).is_identity() {
            return None;
        }
        let n = self.rank();
        let mut diff = w.mat.clone();
        for i in 0..n {
            diff.set(i, i, diff.get(i, i) - 1);
        }
        if diff.rank() != 1 {
            return None;
        }
        let mut cur = w.clone();
        let mut conj = Vec::new();
        while cur.length() > 1 {
            let next = self
                .descents(&cur, Side::Left)
                .into_iter()
                .map(|s| (s, self.mul_gen_right(&self.mul_gen_left(s, &cur), s)))
                .find(|(_, c)| c.length() < cur.length())?;
            conj.push(next.0);
            cur = next.1;
        }
        let mut beta = Root::simple(n, cur.word[0]);
        for &s in conj.iter().rev() {
            beta = self.reflect(s, &beta);
        }
        // every column of w - 1 must be a multiple of beta
        for j in 0..n {
            let col = diff.column(j);
            for a in 0..n {
                for b in 0..n {
                    if col[a] * beta.0[b] != col[b] * beta.0[a] {
                        return None;
                    }
                }
            }
        }
        beta.is_positive().then_some(beta)
    }

    /// Rebuild the reflection `s_β` from a positive root by descending in
    /// height through simple reflections with positive pairing.
    pub fn reflection_from_root(&self, root: &Root) -> Result<CoxElem> {
        if !root.is_positive() {
            return Err(Error::Internal(format!("{root} is not a positive root")));
        }
        let mut path = Vec::new();
        let mut cur = root.clone();
        let simple = loop {
            if let Some(i) = cur.simple_index() {
                break i;
            }
            let i = (0..self.rank())
                .find(|&i| self.pairing(i, &cur) > 0)
                .ok_or_else(|| Error::Internal(format!("{root} is not a real root")))?;
            cur = self.reflect(i, &cur);
            if !cur.is_positive() {
                return Err(Error::Internal(format!("{root} is not a real root")));
            }
            path.push(i);
        };
        let mut word: Vec<usize> = path.clone();
        word.push(simple);
        word.extend(path.iter().rev());
        self.from_word(&word)
    }

    /// Positive roots of depth at most `max_depth` (all of them for finite
    /// groups once `max_depth` is large enough), sorted by height then
    /// coordinates.
    pub fn positive_roots(&self, max_depth: usize) -> Vec<Root> {
        let n = self.rank();
        let mut seen: HashSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        let mut frontier: Vec<Root> = seen.iter().cloned().collect();
        for _ in 1..max_depth {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 0..n {
                    if self.pairing(i, r) < 0 {
                        let nr = self.reflect(i, r);
                        if seen.insert(nr.clone()) {
                            next.push(nr);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mut out: Vec<Root> = seen.into_iter().collect();
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        out
    }

    /// All elements of length at most `max_len`, sorted by length then word.
    pub fn elements_up_to_length(&self, max_len: usize) -> Vec<CoxElem> {
        let mut seen: HashMap<Matrix, CoxElem> = HashMap::new();
        let e = self.identity();
        seen.insert(e.mat.clone(), e.clone());
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            if w.length() == max_len {
                continue;
            }
            for s in 0..self.rank() {
                if self.is_descent(&w, s, Side::Right) {
                    continue;
                }
                let ws = self.mul_gen_right(&w, s);
                if !seen.contains_key(&ws.mat) {
                    seen.insert(ws.mat.clone(), ws.clone());
                    queue.push_back(ws);
                }
            }
        }
        let mut out: Vec<CoxElem> = seen.into_values().collect();
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word.cmp(&b.word)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> CoxSystem {
        CoxSystem::type_a(3).unwrap()
    }

    /// One-line notation of an element of S_{n+1} from a 0-based word,
    /// acting by adjacent transpositions on positions.
    fn perm_of_word(n: usize, word: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..=n).collect();
        for &s in word {
            p.swap(s, s + 1);
        }
        p
    }

    fn inversions(p: &[usize]) -> usize {
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    #[test]
    fn identity_and_involution() {
        let sys = a3();
        assert_eq!(sys.from_word(&[]).unwrap().length(), 0);
        assert!(sys.from_word(&[0, 0]).unwrap().is_identity());
    }

    #[test]
    fn braid_relation() {
        let sys = a3();
        assert_eq!(sys.from_word(&[0, 1, 0]).unwrap(), sys.from_word(&[1, 0, 1]).unwrap());
        assert_ne!(sys.from_word(&[0, 2]).unwrap(), sys.from_word(&[0, 1]).unwrap());
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(
            a3().from_word(&[3]),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 3 })
        ));
        assert!(a3().parse_word("1 4").is_err());
        assert!(a3().parse_word("0").is_err());
    }

    #[test]
    fn lengths_match_inversions_in_s4() {
        let sys = a3();
        let all = sys.elements_up_to_length(100);
        assert_eq!(all.len(), 24);
        let mut counts = [0usize; 7];
        for w in &all {
            let p = perm_of_word(3, w.word());
            assert_eq!(inversions(&p), w.length());
            counts[w.length()] += 1;
        }
        assert_eq!(counts, [1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(sys.from_word(&[0, 1, 0]).unwrap().length(), 3);
    }

    #[test]
    fn length_changes_by_one() {
        for sys in [a3(), CoxSystem::type_b(3).unwrap(), CoxSystem::three_complete(3).unwrap()] {
            for w in sys.elements_up_to_length(5) {
                for s in 0..sys.rank() {
                    let sw = sys.mul_gen_left(s, &w);
                    assert_eq!(sw.length().abs_diff(w.length()), 1);
                    assert_eq!(sys.is_descent(&w, s, Side::Left), sw.length() < w.length());
                    let ws = sys.mul_gen_right(&w, s);
                    assert_eq!(sys.is_descent(&w, s, Side::Right), ws.length() < w.length());
                }
            }
        }
    }

    #[test]
    fn descents_in_s4() {
        let sys = a3();
        assert!(sys.descents(&sys.identity(), Side::Left).is_empty());
        assert_eq!(sys.descents(&sys.from_word(&[0]).unwrap(), Side::Left), vec![0]);
        assert_eq!(sys.descents(&sys.from_word(&[0, 1]).unwrap(), Side::Left), vec![0]);
        assert_eq!(sys.descents(&sys.from_word(&[0, 1]).unwrap(), Side::Right), vec![1]);
    }

    #[test]
    fn reflections_of_s4() {
        let sys = a3();
        let refl: Vec<_> = sys
            .elements_up_to_length(6)
            .into_iter()
            .filter(|w| sys.as_reflection(w).is_some())
            .collect();
        assert_eq!(refl.len(), 6);
        assert_eq!(sys.as_reflection(&sys.from_word(&[0]).unwrap()), Some(Root(vec![1, 0, 0])));
        assert_eq!(
            sys.as_reflection(&sys.from_word(&[0, 1, 0]).unwrap()),
            Some(Root(vec![1, 1, 0]))
        );
        assert_eq!(sys.as_reflection(&sys.from_word(&[0, 1]).unwrap()), None);
        for t in refl {
            let beta = sys.as_reflection(&t).unwrap();
            assert_eq!(sys.reflection_from_root(&beta).unwrap(), t);
        }
    }

    #[test]
    fn positive_roots_and_reflections_biject() {
        for (sys, count) in [
            (CoxSystem::type_a(3).unwrap(), 6),
            (CoxSystem::type_b(2).unwrap(), 4),
            (CoxSystem::type_b(3).unwrap(), 9),
            (CoxSystem::type_a(4).unwrap(), 10),
        ] {
            let roots = sys.positive_roots(100);
            assert_eq!(roots.len(), count);
            for r in &roots {
                assert!(r.is_positive());
                let t = sys.reflection_from_root(r).unwrap();
                assert_eq!(sys.as_reflection(&t).as_ref(), Some(r));
            }
        }
    }

    #[test]
    fn generators_are_involutions() {
        for sys in [
            a3(),
            CoxSystem::type_b(4).unwrap(),
            CoxSystem::preset("K4").unwrap(),
            CoxSystem::parse_matrix("2\n1 6\n6 1").unwrap(),
            CoxSystem::parse_matrix("2\n1 inf\ninf 1").unwrap(),
        ] {
            for s in 0..sys.rank() {
                let g = sys.generator_matrix(s);
                assert!(g.mul(&g).is_identity());
            }
        }
    }

    #[test]
    fn roots_are_sign_coherent() {
        let sys = CoxSystem::parse_matrix("3\n1 inf 3\ninf 1 4\n3 4 1").unwrap();
        for w in sys.elements_up_to_length(6) {
            for j in 0..sys.rank() {
                let r = Root(w.matrix().column(j));
                assert!(r.is_positive() || r.is_negative());
            }
        }
    }

    #[test]
    fn dihedral_orders() {
        for (m, order) in [(2usize, 4usize), (3, 6), (4, 8), (6, 12)] {
            let sys = CoxSystem::parse_matrix(&format!("2\n1 {m}\n{m} 1")).unwrap();
            assert_eq!(sys.elements_up_to_length(20).len(), order);
        }
        let inf = CoxSystem::parse_matrix("2\n1 inf\ninf 1").unwrap();
        assert_eq!(inf.elements_up_to_length(5).len(), 11);
    }

    #[test]
    fn subword_criterion_agrees_with_lifting() {
        // Subword property: u <= v iff some reduced word of v contains a
        // subword (not necessarily reduced) whose product is u.
        for sys in [
            CoxSystem::type_a(2).unwrap(),
            a3(),
            CoxSystem::type_b(2).unwrap(),
        ] {
            let all = sys.elements_up_to_length(100);
            for v in &all {
                let w = v.word();
                let mut below = HashSet::new();
                for mask in 0u32..(1 << w.len()) {
                    let sub: Vec<usize> =
                        (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
                    below.insert(sys.from_word(&sub).unwrap());
                }
                for u in &all {
                    assert_eq!(sys.bruhat_leq(u, v), below.contains(u), "{u} <= {v}");
                }
            }
        }
        let sys = a3();
        assert!(!sys.bruhat_leq(&sys.from_word(&[0]).unwrap(), &sys.from_word(&[1]).unwrap()));
    }

    #[test]
    fn matrix_file_errors() {
        assert!(CoxSystem::parse_matrix("2\n1 5\n5 1").is_err());
        assert!(CoxSystem::parse_matrix("2\n1 3\n4 1").is_err());
        assert!(CoxSystem::parse_matrix("2\n2 3\n3 1").is_err());
        assert!(CoxSystem::parse_matrix("2\n1 3").is_err());
        assert!(CoxSystem::parse_matrix("x").is_err());
        assert!(CoxSystem::preset("Q3").is_err());
        assert!(CoxSystem::load("A0").is_err());
    }
}
