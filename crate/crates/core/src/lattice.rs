//! Lattice paths and the polynomials `Υ_E`, `Ω̃_T` and `Ω_T` built from them.

use std::fmt;

use crate::poly::QPoly;
use crate::word::BinaryWord;

/// `Γ: [0, n] → Z` with `Γ(0) = 0` and unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    heights: Vec<i64>,
}

impl LatticePath {
    /// From steps of `+1` / `-1`.
    pub fn from_steps(steps: &[i8]) -> Self {
        let mut heights = vec![0];
        for &s in steps {
            assert!(s == 1 || s == -1, "steps must be ±1");
            heights.push(heights.last().unwrap() + s as i64);
        }
        LatticePath { heights }
    }

    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn at(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn end(&self) -> i64 {
        *self.heights.last().unwrap()
    }

    pub fn steps(&self) -> Vec<i8> {
        self.heights.windows(2).map(|w| (w[1] - w[0]) as i8).collect()
    }

    /// `N(Γ)_i = 1` iff `Γ(i) < 0`, for `i ∈ [n-1]`.
    pub fn n_word(&self) -> BinaryWord {
        let n = self.len();
        BinaryWord::new((1..n).map(|i| u8::from(self.heights[i] < 0)).collect())
    }

    pub fn d_plus(&self) -> usize {
        ((self.end() + self.len() as i64) / 2) as usize
    }

    pub fn d_minus(&self) -> usize {
        self.len() - self.d_plus()
    }
}

/// Steps as a string of `+` and `-`.
impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// All lattice paths of length `n`.
pub fn all_paths(n: usize) -> Vec<LatticePath> {
    (0..1u64 << n)
        .map(|m| {
            let steps: Vec<i8> = (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect();
            LatticePath::from_steps(&steps)
        })
        .collect()
}

/// `𝓛(E)`: paths of length `ℓ(E) + 1` with `N(Γ) = E`, by depth-first search.
pub fn paths_with_word(e: &BinaryWord) -> Vec<LatticePath> {
    fn go(e: &[u8], steps: &mut Vec<i8>, h: i64, out: &mut Vec<LatticePath>) {
        let i = steps.len() + 1;
        if i == e.len() + 2 {
            out.push(LatticePath::from_steps(steps));
            return;
        }
        for s in [1i8, -1] {
            let nh = h + s as i64;
            if i <= e.len() && (nh < 0) != (e[i - 1] == 1) {
                continue;
            }
            steps.push(s);
            go(e, steps, nh, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    go(e.bits(), &mut Vec::new(), 0, &mut out);
    out
}

fn minus_one_pow(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Υ_E = (-1)^{m_0(E)} Σ_{Γ ∈ 𝓛(E)} (-q)^{d_+(Γ)}`.
pub fn upsilon(e: &BinaryWord) -> QPoly {
    let sign = minus_one_pow(e.count(0));
    paths_with_word(e).iter().fold(QPoly::zero(), |acc, g| {
        let d = g.d_plus();
        acc + QPoly::monomial(sign * minus_one_pow(d), d)
    })
}

/// The sequence `0 = s_0 < s_1 < ... < s_t < s_{t+1} = n` attached to `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marks {
    pub n: usize,
    pub s: Vec<usize>,
}

impl Marks {
    pub fn new(t: &BinaryWord) -> Self {
        let n = t.len() + 1;
        let mut s = vec![0];
        s.extend(t.support());
        s.push(n);
        Marks { n, s }
    }

    /// Number of ones in `T`.
    pub fn t(&self) -> usize {
        self.s.len() - 2
    }

    /// `r_i = s_i + 1`.
    pub fn r(&self, i: usize) -> usize {
        self.s[i] + 1
    }

    /// Elements of `∂(E)` strictly between `s_j` and `s_{j+1}`.
    fn inside(&self, bd: &[usize], j: usize) -> Vec<usize> {
        bd.iter().copied().filter(|&x| self.s[j] < x && x < self.s[j + 1]).collect()
    }

    /// `x_1, ..., x_t` when `E ∈ 𝒥(T)`.
    fn xs(&self, e: &BinaryWord) -> Option<Vec<usize>> {
        let bd = e.boundary();
        let t = self.t();
        let mut xs = Vec::with_capacity(t);
        for j in 0..t {
            match self.inside(&bd, j)[..] {
                [x] => xs.push(x),
                _ => return None,
            }
        }
        let last = self.inside(&bd, t);
        let ok = match last[..] {
            [] | [_] => true,
            [x, y] => y != self.n - 1 || (self.n - 1 - x) % 2 == 0,
            _ => false,
        };
        ok.then_some(xs)
    }

    fn sign_exponent(&self, xs: &[usize]) -> usize {
        xs.iter().enumerate().map(|(i, &x)| self.s[i + 1] - x - 1).sum()
    }
}

/// `𝒥(T)` with `sgn(E, T)`, sorted by word. `𝒥(ε) = {ε}`.
pub fn j_set(t: &BinaryWord) -> Vec<(BinaryWord, i8)> {
    if t.is_empty() {
        return vec![(BinaryWord::empty(), 1)];
    }
    let m = Marks::new(t);
    let mut out: Vec<(BinaryWord, i8)> = BinaryWord::all(t.len())
        .filter_map(|e| {
            let xs = m.xs(&e)?;
            let sign = minus_one_pow(m.sign_exponent(&xs)) as i8;
            Some((e, sign))
        })
        .collect();
    out.sort();
    out
}

/// `Ω̃_T = Σ_{E ∈ 𝒥(T)} sgn(E, T) Υ_E`.
pub fn omega_tilde(t: &BinaryWord) -> QPoly {
    j_set(t)
        .iter()
        .fold(QPoly::zero(), |acc, (e, s)| acc + upsilon(e).scale(*s as i64))
}

/// `𝓛(T)`: paths `Γ` of length `ℓ(T) + 1` with `N(Γ) ∈ 𝒥(T)`.
pub fn l_paths(t: &BinaryWord) -> Vec<LatticePath> {
    j_set(t).iter().flat_map(|(e, _)| paths_with_word(e)).collect()
}

/// `x_h(Γ)` for `h ∈ [t]`.
pub fn x_values(t: &BinaryWord, g: &LatticePath) -> Option<Vec<usize>> {
    Marks::new(t).xs(&g.n_word())
}

/// `ε_T(Γ) = Σ_h (s_h - x_h(Γ) - 1)`.
pub fn epsilon(t: &BinaryWord, g: &LatticePath) -> Option<usize> {
    let m = Marks::new(t);
    m.xs(&g.n_word()).map(|xs| m.sign_exponent(&xs))
}

/// `η(Γ) = m_0(N(Γ))`.
pub fn eta(g: &LatticePath) -> usize {
    g.n_word().count(0)
}

/// `(-1)^{ε+η+d_+} q^{d_+}`.
pub fn signed_weight(t: &BinaryWord, g: &LatticePath) -> QPoly {
    let e = epsilon(t, g).expect("path outside L(T)");
    let d = g.d_plus();
    QPoly::monomial(minus_one_pow(e + eta(g) + d), d)
}

/// `Γ ∈ 𝓛_0(T)`: `Γ(r_i) = 0` for some `i ∈ [t]`.
pub fn in_l0(t: &BinaryWord, g: &LatticePath) -> bool {
    let m = Marks::new(t);
    (1..=m.t()).any(|i| g.at(m.r(i)) == 0)
}

/// `Γ ∈ 𝓛_0'(T)`: `Γ(x) = 0` for some `x ∈ [r_t, n]`.
pub fn in_l0_prime(t: &BinaryWord, g: &LatticePath) -> bool {
    let m = Marks::new(t);
    (m.r(m.t())..=m.n).any(|x| g.at(x) == 0)
}

/// `𝓛̃(T)`: `𝓛(T)` minus `𝓛_0(T)`, and minus `𝓛_0'(T)` too when `n` is even.
pub fn l_tilde(t: &BinaryWord) -> Vec<LatticePath> {
    let even = (t.len() + 1) % 2 == 0;
    l_paths(t)
        .into_iter()
        .filter(|g| !in_l0(t, g) && !(even && in_l0_prime(t, g)))
        .collect()
}

/// `T`-slaloms: the paths of `𝓛̃(T)` ending above zero.
pub fn slaloms(t: &BinaryWord) -> Vec<LatticePath> {
    let mut out: Vec<LatticePath> = l_tilde(t).into_iter().filter(|g| g.end() > 0).collect();
    out.sort();
    out
}

/// Slalom test read off the picture: avoid the stars at `s_i + 1`, cross the
/// line `y = -1/2` exactly once over each `[s_{i-1} + 1, s_i]`, and stay at or
/// above `χ_even(n)` from `s_t + 1` on. Starting the floor one step later
/// admits paths ending below zero (already for `T = ε`).
pub fn is_slalom_geometric(t: &BinaryWord, g: &LatticePath) -> bool {
    let m = Marks::new(t);
    let n = m.n;
    if g.len() != n {
        return false;
    }
    let tt = m.t();
    if (1..=tt).any(|i| g.at(m.r(i)) == 0) {
        return false;
    }
    for i in 1..=tt {
        // a step ending at x crosses at abscissa x - 1/2
        let crossings = (m.s[i - 1] + 2..=m.s[i])
            .filter(|&x| g.at(x - 1).min(g.at(x)) == -1 && g.at(x - 1).max(g.at(x)) == 0)
            .count();
        if crossings != 1 {
            return false;
        }
    }
    let floor = i64::from(n % 2 == 0);
    (m.s[tt] + 1..=n).all(|x| g.at(x) >= floor)
}

/// Slaloms by the geometric test over all `2^n` paths.
pub fn slaloms_geometric(t: &BinaryWord) -> Vec<LatticePath> {
    let mut out: Vec<LatticePath> = all_paths(t.len() + 1)
        .into_iter()
        .filter(|g| is_slalom_geometric(t, g))
        .collect();
    out.sort();
    out
}

/// `Ω_T = (-1)^{s_1 + ... + s_t + t} Σ_{Γ ∈ 𝒮𝓛(T)} (-q)^{d_-(Γ)}`.
pub fn omega(t: &BinaryWord) -> QPoly {
    let m = Marks::new(t);
    let sign = minus_one_pow(m.s[1..=m.t()].iter().sum::<usize>() + m.t());
    slaloms(t).iter().fold(QPoly::zero(), |acc, g| {
        let d = g.d_minus();
        acc + QPoly::monomial(sign * minus_one_pow(d), d)
    })
}
