//! The extended affine symmetric group `𝔖_{Δ,r}`.
//!
//! Elements are bijections `w : Z -> Z` with `w(i + r) = w(i) + r`, stored by
//! their window `(w(1), ..., w(r))`. The group splits as `⟨ρ⟩ ⋉ W_r` where
//! `ρ(j) = j + 1` and `W_r` is the affine Weyl group generated by
//! `s_1, ..., s_r`. This module also carries compositions and their Young
//! subgroups, coset and double-coset reductions, and the bijection between
//! triples `(λ, d, μ)` and periodic matrices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use parking_lot::RwLock;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::matrix::{residue, AffMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffError {
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("r = {0} is below the supported minimum of 2")]
    RankTooSmall(usize),
    #[error("invalid window {0:?}: values must be pairwise distinct modulo r")]
    InvalidWindow(Vec<i64>),
    #[error("{0} is not a minimal double coset representative")]
    NotDistinguished(AffPerm),
    #[error("composition sizes disagree: {0}")]
    CompositionMismatch(String),
    #[error("matrix {0} is not in Θ_Δ(n)")]
    NotInTheta(AffMatrix),
}

/// An element of `𝔖_{Δ,r}` in window notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffPerm {
    w: SmallVec<[i64; 8]>,
}

impl AffPerm {
    /// Validates a window: `r >= 2` and values pairwise distinct modulo `r`.
    pub fn new(window: Vec<i64>) -> Result<Self, AffError> {
        let r = window.len();
        if r < 2 {
            return Err(AffError::RankTooSmall(r));
        }
        let mut seen = vec![false; r];
        for &x in &window {
            let k = x.rem_euclid(r as i64) as usize;
            if seen[k] {
                return Err(AffError::InvalidWindow(window));
            }
            seen[k] = true;
        }
        Ok(AffPerm {
            w: SmallVec::from_vec(window),
        })
    }

    fn from_raw(w: SmallVec<[i64; 8]>) -> Self {
        AffPerm { w }
    }

    pub fn identity(r: usize) -> Self {
        Self::from_raw((1..=r as i64).collect())
    }

    /// The simple reflection `s_i`, `1 <= i <= r`; `s_r` swaps `r` and `r + 1`.
    pub fn s(r: usize, i: usize) -> Self {
        assert!((1..=r).contains(&i), "s_{i} needs 1 <= i <= r = {r}");
        Self::identity(r).mul_s_right(i)
    }

    /// `ρ : j -> j + 1`.
    pub fn rho(r: usize) -> Self {
        Self::rho_pow(r, 1)
    }

    pub fn rho_pow(r: usize, a: i64) -> Self {
        Self::from_raw((1..=r as i64).map(|i| i + a).collect())
    }

    /// Product of simple reflections `s_{i_1} ... s_{i_k}` (left to right).
    pub fn from_word(r: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(r), |acc, &i| acc.mul_s_right(i))
    }

    pub fn r(&self) -> usize {
        self.w.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.w
    }

    /// `w(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let r = self.r() as i64;
        let p = residue(i, r);
        self.w[(p - 1) as usize] + (i - p)
    }

    /// `(x ∘ y)(i) = x(y(i))`.
    pub fn compose(&self, y: &AffPerm) -> Result<AffPerm, AffError> {
        if self.r() != y.r() {
            return Err(AffError::PeriodMismatch(self.r(), y.r()));
        }
        Ok(self.mul(y))
    }

    /// Composition without the period check; callers guarantee equal periods.
    pub fn mul(&self, y: &AffPerm) -> AffPerm {
        debug_assert_eq!(self.r(), y.r());
        Self::from_raw(y.w.iter().map(|&v| self.apply(v)).collect())
    }

    pub fn inverse(&self) -> AffPerm {
        let r = self.r() as i64;
        let mut out: SmallVec<[i64; 8]> = SmallVec::from_elem(0, self.r());
        for (k, &v) in self.w.iter().enumerate() {
            let i = k as i64 + 1;
            let p = residue(v, r);
            // w(i) = v  =>  w^{-1}(p) = i - (v - p)
            out[(p - 1) as usize] = i - (v - p);
        }
        Self::from_raw(out)
    }

    /// The exponent `a` with `w ∈ ρ^a W_r`.
    pub fn rho_part(&self) -> i64 {
        let r = self.r() as i64;
        let s: i64 = self
            .w
            .iter()
            .enumerate()
            .map(|(k, &v)| v - (k as i64 + 1))
            .sum();
        s / r
    }

    /// Splits `w = ρ^a x` with `x ∈ W_r`.
    pub fn split_rho(&self) -> (i64, AffPerm) {
        let a = self.rho_part();
        (a, self.mul_rho_left(-a))
    }

    /// `ρ^a ∘ w`.
    pub fn mul_rho_left(&self, a: i64) -> AffPerm {
        Self::from_raw(self.w.iter().map(|&v| v + a).collect())
    }

    /// `w ∘ ρ^a`.
    pub fn mul_rho_right(&self, a: i64) -> AffPerm {
        let r = self.r() as i64;
        Self::from_raw((1..=r).map(|i| self.apply(i + a)).collect())
    }

    /// `ℓ(w) = |{(i, j) : 1 <= i <= r, i < j, w(i) > w(j)}|`.
    pub fn length(&self) -> usize {
        let r = self.r() as i64;
        let mut total = 0i64;
        for i in 1..=r {
            let wi = self.w[(i - 1) as usize];
            for p in 1..=r {
                let wp = self.w[(p - 1) as usize];
                // j = p + t r with j > i and w(p) + t r < w(i)
                let t_min = (i - p).div_euclid(r) + 1;
                let t_max = -((wp - wi).div_euclid(r)) - 1;
                if t_max >= t_min {
                    total += t_max - t_min + 1;
                }
            }
        }
        total as usize
    }

    /// `w s_i < w`, i.e. `w(i) > w(i + 1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.apply(i) > self.apply(i + 1)
    }

    /// `s_i w < w`, i.e. `w^{-1}(i) > w^{-1}(i + 1)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    pub fn first_right_descent(&self) -> Option<usize> {
        (1..=self.r()).find(|&i| self.has_right_descent(i))
    }

    /// `w ∘ s_i`.
    pub fn mul_s_right(&self, i: usize) -> AffPerm {
        let r = self.r();
        let mut w = self.w.clone();
        if i < r {
            w.swap(i - 1, i);
        } else {
            let first = w[0];
            let last = w[r - 1];
            w[r - 1] = first + r as i64;
            w[0] = last - r as i64;
        }
        Self::from_raw(w)
    }

    /// `s_i ∘ w`.
    pub fn mul_s_left(&self, i: usize) -> AffPerm {
        let r = self.r() as i64;
        let i = i as i64;
        let i1 = if i == r { 1 } else { i + 1 };
        Self::from_raw(
            self.w
                .iter()
                .map(|&v| {
                    let p = residue(v, r);
                    if p == i {
                        v + 1
                    } else if p == i1 {
                        v - 1
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// `w = ρ^a s_{i_1} ... s_{i_k}` with `k = ℓ(w)`.
    pub fn reduced_word(&self) -> (i64, Vec<usize>) {
        let (a, mut x) = self.split_rho();
        let mut word = Vec::with_capacity(x.length());
        while let Some(i) = x.first_right_descent() {
            word.push(i);
            x = x.mul_s_right(i);
        }
        word.reverse();
        (a, word)
    }
}

impl fmt::Debug for AffPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.w.iter().join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    r: usize,
    window: Vec<i64>,
}

impl Serialize for AffPerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PermRepr {
            r: self.r(),
            window: self.w.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffPerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PermRepr::deserialize(d)?;
        if raw.r != raw.window.len() {
            return Err(D::Error::custom(format!(
                "window has {} entries but r = {}",
                raw.window.len(),
                raw.r
            )));
        }
        AffPerm::new(raw.window).map_err(D::Error::custom)
    }
}

type BruhatMemo = RwLock<HashMap<(AffPerm, AffPerm), bool>>;

fn bruhat_memo() -> &'static BruhatMemo {
    static MEMO: OnceLock<BruhatMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Bruhat order on `𝔖_{Δ,r}`: `ρ^a y <= ρ^b w` iff `a = b` and `y <= w` in `W_r`.
pub fn bruhat_leq(y: &AffPerm, w: &AffPerm) -> bool {
    if y.r() != w.r() {
        return false;
    }
    let (a, y0) = y.split_rho();
    let (b, w0) = w.split_rho();
    a == b && bruhat_leq_wr(&y0, &w0)
}

fn bruhat_leq_wr(y: &AffPerm, w: &AffPerm) -> bool {
    let (ly, lw) = (y.length(), w.length());
    if ly > lw {
        return false;
    }
    if ly == lw {
        return y == w;
    }
    if ly == 0 {
        return true;
    }
    let key = (y.clone(), w.clone());
    if let Some(&hit) = bruhat_memo().read().get(&key) {
        return hit;
    }
    let s = w
        .first_right_descent()
        .expect("positive length has a descent");
    let ws = w.mul_s_right(s);
    // y <= w  iff  min(y, ys) <= ws
    let result = if y.has_right_descent(s) {
        bruhat_leq_wr(&y.mul_s_right(s), &ws)
    } else {
        bruhat_leq_wr(y, &ws)
    };
    bruhat_memo().write().insert(key, result);
    result
}

/// All `y <= w`, sorted. Built from the subwords of one reduced word.
pub fn lower_interval(w: &AffPerm) -> Vec<AffPerm> {
    let (a, word) = w.reduced_word();
    let mut set: BTreeSet<AffPerm> = BTreeSet::new();
    set.insert(AffPerm::identity(w.r()));
    for &s in &word {
        let extra: Vec<AffPerm> = set.iter().map(|y| y.mul_s_right(s)).collect();
        set.extend(extra);
    }
    set.into_iter().map(|y| y.mul_rho_left(a)).collect()
}

/// A composition `λ = (λ_1, ..., λ_n)`, extended `n`-periodically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
    prefix: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(!parts.is_empty(), "a composition needs n >= 1 parts");
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        prefix.push(0i64);
        for &p in &parts {
            prefix.push(prefix.last().unwrap() + p as i64);
        }
        Composition { parts, prefix }
    }

    /// From a row- or column-sum vector; `None` if an entry is negative.
    pub fn from_i64s(v: &[i64]) -> Option<Self> {
        v.iter()
            .map(|&x| usize::try_from(x).ok())
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// `σ(λ)`.
    pub fn r(&self) -> usize {
        *self.prefix.last().unwrap() as usize
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn to_i64s(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }

    /// The block `R^λ_k` as an inclusive range (empty when `start > end`).
    pub fn block(&self, k: i64) -> (i64, i64) {
        let n = self.n() as i64;
        let r = self.r() as i64;
        let i = residue(k, n);
        let shift = (k - i) / n * r;
        (
            shift + self.prefix[(i - 1) as usize] + 1,
            shift + self.prefix[i as usize],
        )
    }

    /// The block index `k` with `x ∈ R^λ_k`.
    pub fn block_of(&self, x: i64) -> i64 {
        let n = self.n() as i64;
        let r = self.r() as i64;
        let p = residue(x, r);
        let period = (x - p) / r;
        // first i with prefix[i] >= p
        let i = self.prefix.partition_point(|&s| s < p) as i64;
        i + period * n
    }

    /// Generators `s_j` (`1 <= j < r`) of the Young subgroup `𝔖_λ`.
    pub fn young_generators(&self) -> Vec<usize> {
        (1..self.r())
            .filter(|&j| self.block_of(j as i64) == self.block_of(j as i64 + 1))
            .collect()
    }

    /// The longest element `w_{0,λ}` of `𝔖_λ`.
    pub fn longest(&self) -> AffPerm {
        let mut w: SmallVec<[i64; 8]> = SmallVec::new();
        for k in 1..=self.n() as i64 {
            let (a, b) = self.block(k);
            for p in a..=b {
                w.push(a + b - p);
            }
        }
        AffPerm::from_raw(w)
    }

    /// `ℓ(w_{0,λ}) = Σ λ_i (λ_i - 1) / 2`.
    pub fn longest_length(&self) -> usize {
        self.parts
            .iter()
            .map(|&p| p * p.saturating_sub(1) / 2)
            .sum()
    }

    /// Every element of `𝔖_λ`, sorted.
    pub fn young_elements(&self) -> Vec<AffPerm> {
        let blocks: Vec<Vec<Vec<i64>>> = (1..=self.n() as i64)
            .map(|k| {
                let (a, b) = self.block(k);
                let vals: Vec<i64> = (a..=b).collect();
                let len = vals.len();
                vals.into_iter().permutations(len).collect()
            })
            .collect();
        let mut out: Vec<AffPerm> = blocks
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| AffPerm::from_raw(choice.into_iter().flatten().collect()))
            .collect();
        out.sort();
        out
    }

    /// All compositions of `r` into `n` parts, in lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<Composition> {
        fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(Composition::new(cur.clone()));
                cur.pop();
                return;
            }
            for p in 0..=left {
                cur.push(p);
                rec(n, left - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, r, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct CompRepr {
    n: usize,
    parts: Vec<usize>,
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CompRepr {
            n: self.n(),
            parts: self.parts.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CompRepr::deserialize(d)?;
        if raw.n != raw.parts.len() || raw.n == 0 {
            return Err(D::Error::custom(format!(
                "composition with n = {} has {} parts",
                raw.n,
                raw.parts.len()
            )));
        }
        Ok(Composition::new(raw.parts))
    }
}

/// Which side the Young subgroup acts on in [`coset_decompose`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The minimal element of `𝔖_λ w`: values inside each `λ`-block appear in
/// increasing order of position.
pub fn min_left(w: &AffPerm, lambda: &Composition) -> AffPerm {
    let winv = w.inverse();
    let mut dinv = winv.w.clone();
    for k in 1..=lambda.n() as i64 {
        let (a, b) = lambda.block(k);
        if a > b {
            continue;
        }
        let mut pos: SmallVec<[i64; 8]> = (a..=b).map(|x| winv.apply(x)).collect();
        pos.sort_unstable();
        for (t, x) in (a..=b).enumerate() {
            dinv[(x - 1) as usize] = pos[t];
        }
    }
    AffPerm::from_raw(dinv).inverse()
}

/// The minimal element of `w 𝔖_μ`: `w` sorted increasingly on each `μ`-block.
pub fn min_right(w: &AffPerm, mu: &Composition) -> AffPerm {
    let mut d = w.w.clone();
    for k in 1..=mu.n() as i64 {
        let (a, b) = mu.block(k);
        if a > b {
            continue;
        }
        d[(a - 1) as usize..b as usize].sort_unstable();
    }
    AffPerm::from_raw(d)
}

/// `d ∈ 𝒟^Δ_λ`: minimal in its coset `𝔖_λ d`.
pub fn is_min_left(d: &AffPerm, lambda: &Composition) -> bool {
    let dinv = d.inverse();
    (1..=lambda.n() as i64).all(|k| {
        let (a, b) = lambda.block(k);
        (a..b).all(|x| dinv.apply(x) < dinv.apply(x + 1))
    })
}

/// `d ∈ (𝒟^Δ_μ)^{-1}`: minimal in its coset `d 𝔖_μ`.
pub fn is_min_right(d: &AffPerm, mu: &Composition) -> bool {
    (1..=mu.n() as i64).all(|k| {
        let (a, b) = mu.block(k);
        (a..b).all(|x| d.apply(x) < d.apply(x + 1))
    })
}

/// `d ∈ 𝒟^Δ_{λ,μ}`.
pub fn is_distinguished(lambda: &Composition, d: &AffPerm, mu: &Composition) -> bool {
    is_min_left(d, lambda) && is_min_right(d, mu)
}

/// Splits `w` along a Young subgroup. For [`Side::Left`] the result `(u, d)`
/// satisfies `w = u d` with `u ∈ 𝔖_λ` and `d` minimal in `𝔖_λ w`; for
/// [`Side::Right`] it satisfies `w = d u` with `d` minimal in `w 𝔖_λ`. In
/// both cases `ℓ(w) = ℓ(u) + ℓ(d)`.
pub fn coset_decompose(w: &AffPerm, lambda: &Composition, side: Side) -> (AffPerm, AffPerm) {
    match side {
        Side::Left => {
            let d = min_left(w, lambda);
            (w.mul(&d.inverse()), d)
        }
        Side::Right => {
            let d = min_right(w, lambda);
            (d.inverse().mul(w), d)
        }
    }
}

/// A double coset `𝔖_λ w 𝔖_μ` with its extreme elements.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub min: AffPerm,
    pub plus: AffPerm,
    pub elements: Vec<AffPerm>,
}

/// The minimal element of `𝔖_λ w 𝔖_μ`.
pub fn double_coset_min(lambda: &Composition, w: &AffPerm, mu: &Composition) -> AffPerm {
    let mut d = w.clone();
    loop {
        d = min_right(&min_left(&d, lambda), mu);
        if is_min_left(&d, lambda) {
            return d;
        }
    }
}

/// The longest element of `𝔖_λ w 𝔖_μ`, by greedy ascent.
pub fn double_coset_max(lambda: &Composition, w: &AffPerm, mu: &Composition) -> AffPerm {
    let gl = lambda.young_generators();
    let gr = mu.young_generators();
    let mut d = w.clone();
    loop {
        if let Some(&s) = gl.iter().find(|&&s| !d.has_left_descent(s)) {
            d = d.mul_s_left(s);
        } else if let Some(&s) = gr.iter().find(|&&s| !d.has_right_descent(s)) {
            d = d.mul_s_right(s);
        } else {
            return d;
        }
    }
}

/// `𝔖_λ w 𝔖_μ` with its minimal and longest elements.
pub fn double_coset(
    lambda: &Composition,
    w: &AffPerm,
    mu: &Composition,
) -> Result<DoubleCoset, AffError> {
    if lambda.r() != w.r() || mu.r() != w.r() {
        return Err(AffError::CompositionMismatch(format!(
            "σ(λ) = {}, σ(μ) = {}, r = {}",
            lambda.r(),
            mu.r(),
            w.r()
        )));
    }
    let min = double_coset_min(lambda, w, mu);
    let plus = double_coset_max(lambda, &min, mu);
    let gl = lambda.young_generators();
    let gr = mu.young_generators();
    let mut seen: BTreeSet<AffPerm> = BTreeSet::new();
    let mut queue = VecDeque::from([min.clone()]);
    seen.insert(min.clone());
    while let Some(x) = queue.pop_front() {
        let nbrs = gl
            .iter()
            .map(|&s| x.mul_s_left(s))
            .chain(gr.iter().map(|&s| x.mul_s_right(s)));
        for y in nbrs {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(DoubleCoset {
        min,
        plus,
        elements: seen.into_iter().collect(),
    })
}

fn check_triple(lambda: &Composition, d: &AffPerm, mu: &Composition) -> Result<(), AffError> {
    if lambda.n() != mu.n() || lambda.r() != d.r() || mu.r() != d.r() {
        return Err(AffError::CompositionMismatch(format!(
            "λ = {lambda:?}, μ = {mu:?}, r = {}",
            d.r()
        )));
    }
    if !is_distinguished(lambda, d, mu) {
        return Err(AffError::NotDistinguished(d.clone()));
    }
    Ok(())
}

/// `𝒥_Δ(λ, d, μ) = (|R^λ_k ∩ d R^μ_l|)_{k,l}`.
pub fn jdelta(lambda: &Composition, d: &AffPerm, mu: &Composition) -> Result<AffMatrix, AffError> {
    check_triple(lambda, d, mu)?;
    let dinv = d.inverse();
    let triples = (1..=d.r() as i64).map(|x| (lambda.block_of(x), mu.block_of(dinv.apply(x)), 1));
    Ok(AffMatrix::new(lambda.n(), triples).expect("n >= 1"))
}

/// Inverse of [`jdelta`]: `(ro(A), y_A, co(A))`.
pub fn jdelta_inv(a: &AffMatrix) -> Result<(Composition, AffPerm, Composition), AffError> {
    if !a.is_nonneg() {
        return Err(AffError::NotInTheta(a.clone()));
    }
    let r = a.sigma();
    if r < 2 {
        return Err(AffError::RankTooSmall(r.max(0) as usize));
    }
    let n = a.n() as i64;
    let lambda = Composition::from_i64s(&a.ro()).expect("nonnegative");
    let mu = Composition::from_i64s(&a.co()).expect("nonnegative");
    // Row block R^λ_i is cut into consecutive chunks, one per entry of row i
    // in increasing column order.
    let mut chunk_start: HashMap<(i64, i64), i64> = HashMap::new();
    let mut cursor: Vec<i64> = (1..=n).map(|i| lambda.block(i).0).collect();
    for &(i, j, val) in a.entries() {
        let c = &mut cursor[(i - 1) as usize];
        chunk_start.insert((i, j), *c);
        *c += val;
    }
    let mut window = vec![0i64; r as usize];
    for l in 1..=n {
        // Entries of column l, taken over all rows k in increasing order.
        let mut col: Vec<(i64, i64, i64, i64)> = a
            .entries()
            .iter()
            .filter(|e| residue(e.1, n) == l)
            .map(|&(i, j, val)| {
                let t = (l - j) / n;
                (i + t * n, i, j, val)
            })
            .collect();
        col.sort_unstable();
        let mut pos = mu.block(l).0;
        for (k, i, j, val) in col {
            let t = (k - i) / n;
            let start = chunk_start[&(i, j)] + t * r;
            for s in 0..val {
                window[(pos - 1) as usize] = start + s;
                pos += 1;
            }
        }
    }
    let d = AffPerm::new(window).expect("filling rule yields a bijection");
    Ok((lambda, d, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[i64]) -> AffPerm {
        AffPerm::new(w.to_vec()).unwrap()
    }

    /// Inversion count straight from the definition over a wide window.
    fn length_brute(w: &AffPerm) -> usize {
        let r = w.r() as i64;
        let mut total = 0;
        for i in 1..=r {
            for j in (i + 1)..(i + 60 * r) {
                if w.apply(i) > w.apply(j) {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn group_examples() {
        let s1 = AffPerm::s(3, 1);
        assert_eq!(s1.mul(&s1), AffPerm::identity(3));
        let rho = AffPerm::rho(3);
        assert_eq!(rho.mul(&rho.inverse()), AffPerm::identity(3));
        let s2 = AffPerm::s(3, 2);
        assert_eq!(s1.mul(&s2).apply(1), 2);
        assert_eq!(s1.compose(&s2).unwrap().apply(3), 1);
        assert!(s1.compose(&AffPerm::s(2, 1)).is_err());
    }

    #[test]
    fn composite_applied_to_one() {
        // (s1 ∘ s2)(1) = s1(s2(1)) = s1(1) = 2; applied to 3 it gives 1.
        let x = AffPerm::s(3, 1).mul(&AffPerm::s(3, 2));
        assert_eq!(x.window(), &[2, 3, 1]);
    }

    #[test]
    fn length_examples() {
        assert_eq!(AffPerm::identity(3).length(), 0);
        assert_eq!(AffPerm::rho(3).length(), 0);
        assert_eq!(AffPerm::s(2, 1).length(), 1);
        assert_eq!(AffPerm::s(2, 2).length(), 1);
        assert_eq!(AffPerm::s(3, 3).window(), &[0, 2, 4]);
    }

    #[test]
    fn length_matches_brute_force() {
        for w in lower_interval(&AffPerm::from_word(3, &[1, 2, 3, 1, 2, 3, 1])) {
            assert_eq!(w.length(), length_brute(&w), "{w}");
        }
        let w = p(&[5, -3, 4]);
        assert_eq!(w.length(), length_brute(&w));
        let (a, word) = w.reduced_word();
        assert_eq!(word.len(), w.length());
        assert_eq!(AffPerm::from_word(3, &word).mul_rho_left(a), w);
    }

    #[test]
    fn bruhat_examples() {
        let e = AffPerm::identity(3);
        let w = AffPerm::from_word(3, &[1, 2, 1]);
        assert!(bruhat_leq(&e, &w));
        assert!(bruhat_leq(&AffPerm::s(3, 1), &w));
        assert!(!bruhat_leq(&AffPerm::rho(2), &AffPerm::s(2, 1)));
        assert!(!bruhat_leq(&AffPerm::s(3, 3), &w));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(
            lower_interval(&AffPerm::identity(2)),
            vec![AffPerm::identity(2)]
        );
        assert_eq!(lower_interval(&AffPerm::s(2, 1)).len(), 2);
        let w = AffPerm::from_word(3, &[1, 2]);
        let mut expect = vec![
            AffPerm::identity(3),
            AffPerm::s(3, 1),
            AffPerm::s(3, 2),
            w.clone(),
        ];
        expect.sort();
        assert_eq!(lower_interval(&w), expect);
    }

    #[test]
    fn interval_agrees_with_bruhat_test() {
        let w = AffPerm::from_word(3, &[1, 2, 3, 2, 1]);
        let interval = lower_interval(&w);
        let big = lower_interval(&AffPerm::from_word(3, &[1, 2, 3, 1, 2, 3, 1]));
        for y in &big {
            assert_eq!(interval.contains(y), bruhat_leq(y, &w), "{y}");
        }
        let w2 = w.mul_rho_left(2);
        assert!(lower_interval(&w2).iter().all(|y| bruhat_leq(y, &w2)));
    }

    #[test]
    fn compositions_and_blocks() {
        let lam = Composition::new(vec![2, 0, 1]);
        assert_eq!(lam.block(1), (1, 2));
        assert_eq!(lam.block(2), (3, 2));
        assert_eq!(lam.block(3), (3, 3));
        assert_eq!(lam.block(4), (4, 5));
        assert_eq!(lam.block(0), (0, 0));
        assert_eq!(lam.block_of(3), 3);
        assert_eq!(lam.block_of(5), 4);
        assert_eq!(lam.block_of(0), 0);
        assert_eq!(lam.young_generators(), vec![1]);
        assert_eq!(lam.young_elements().len(), 2);
        assert_eq!(Composition::all(2, 2).len(), 3);
        assert_eq!(Composition::all(3, 3).len(), 10);
    }

    #[test]
    fn coset_examples() {
        let e = AffPerm::identity(2);
        let s1 = AffPerm::s(2, 1);
        let l20 = Composition::new(vec![2, 0]);
        let l11 = Composition::new(vec![1, 1]);
        assert_eq!(
            coset_decompose(&e, &l20, Side::Left),
            (e.clone(), e.clone())
        );
        assert_eq!(
            coset_decompose(&s1, &l20, Side::Left),
            (s1.clone(), e.clone())
        );
        assert_eq!(
            coset_decompose(&s1, &l11, Side::Left),
            (e.clone(), s1.clone())
        );
    }

    #[test]
    fn coset_lengths_add() {
        let lam = Composition::new(vec![2, 1]);
        for w in lower_interval(&AffPerm::from_word(3, &[1, 2, 3, 1, 2, 1])) {
            for side in [Side::Left, Side::Right] {
                let (u, d) = coset_decompose(&w, &lam, side);
                let prod = if side == Side::Left {
                    u.mul(&d)
                } else {
                    d.mul(&u)
                };
                assert_eq!(prod, w);
                assert_eq!(u.length() + d.length(), w.length());
                assert!(lam.young_elements().contains(&u));
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        let l11 = Composition::new(vec![1, 1]);
        let s1 = AffPerm::s(2, 1);
        let dc = double_coset(&l11, &s1, &l11).unwrap();
        assert_eq!((dc.min.clone(), dc.plus.clone()), (s1.clone(), s1.clone()));
        assert_eq!(dc.elements, vec![s1.clone()]);
        let l20 = Composition::new(vec![2, 0]);
        let e = AffPerm::identity(2);
        let dc = double_coset(&l20, &e, &l20).unwrap();
        assert_eq!(dc.min, e);
        assert_eq!(dc.plus, s1);
        assert_eq!(dc.elements.len(), 2);
        let full = Composition::new(vec![3]);
        let dc = double_coset(&full, &AffPerm::identity(3), &full).unwrap();
        assert_eq!(dc.plus, full.longest());
        assert_eq!(dc.elements.len(), 6);
    }

    #[test]
    fn jdelta_examples() {
        let l11 = Composition::new(vec![1, 1]);
        let e = AffPerm::identity(2);
        assert_eq!(jdelta(&l11, &e, &l11).unwrap(), AffMatrix::diag(&[1, 1]));
        let a = jdelta(&l11, &AffPerm::s(2, 1), &l11).unwrap();
        assert_eq!(a, AffMatrix::new(2, [(1, 2, 1), (2, 1, 1)]).unwrap());
        let b = jdelta(&l11, &AffPerm::rho(2), &l11).unwrap();
        assert_eq!(b, AffMatrix::new(2, [(1, 0, 1), (2, 1, 1)]).unwrap());
        let (lam, d, mu) = jdelta_inv(&a).unwrap();
        assert_eq!((lam, d, mu), (l11.clone(), AffPerm::s(2, 1), l11.clone()));
        let l20 = Composition::new(vec![2, 0]);
        assert!(matches!(
            jdelta(&l20, &AffPerm::s(2, 1), &l20),
            Err(AffError::NotDistinguished(_))
        ));
    }

    #[test]
    fn jdelta_round_trip_on_window() {
        for n in 2..=3 {
            for a in AffMatrix::enumerate_theta(n, 3, 2) {
                let (lam, d, mu) = jdelta_inv(&a).unwrap();
                assert!(is_distinguished(&lam, &d, &mu), "{a}");
                assert_eq!(jdelta(&lam, &d, &mu).unwrap(), a);
            }
        }
    }

    #[test]
    fn serde_layout() {
        let w = p(&[2, 1, 3]);
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"r":3,"window":[2,1,3]}"#
        );
        let c = Composition::new(vec![1, 1]);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":2,"parts":[1,1]}"#
        );
        assert!(serde_json::from_str::<AffPerm>(r#"{"r":2,"window":[1,3]}"#).is_err());
    }
}
