//! Nilpotent representations of the cyclic quiver `Δ(n)` and their Hall
//! polynomials.
//!
//! The quiver has vertices `1..=n` and arrows `i -> i + 1` (indices mod `n`).
//! `M^{i,j}` is the indecomposable of length `j - i` with top `S_i`; its basis
//! is a chain `b_0 -> b_1 -> ... -> b_{j-i-1}` with `b_k` at vertex `i + k`.
//! Hall polynomials are obtained by counting submodules over several finite
//! fields and interpolating.

pub mod field;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::{Mutex, RwLock};
use thiserror::Error;

use crate::laurent::{IntPoly, LaurentError, LaurentPoly};
use crate::matrix::{residue, AffMatrix};
use crate::schur::{a_block, SchurAlgebra, SchurElt, SchurError};

use field::{prime_powers, Field, FieldError};

/// Row-reduced basis of a subspace, one row per basis vector.
type Basis = Vec<Vec<u8>>;

/// Default cap on the total dimension of a module handled by exhaustive
/// counting.
pub const DEFAULT_CAP_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error("dimension vectors do not add up: d(C) = {c:?}, d(A) + d(B) = {sum:?}")]
    DimensionMismatch { c: Vec<i64>, sum: Vec<i64> },
    #[error("module of total dimension {dim} exceeds the counting cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("matrix {0} is not in Θ⁺_Δ(n)")]
    NotPositive(AffMatrix),
    #[error("invalid segment ({vertex}, {len}) for n = {n}")]
    BadSegment { vertex: i64, len: usize, n: usize },
    #[error("representations over different quivers: n = {0} vs n = {1}")]
    PeriodMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("Hall polynomial reconstruction failed: {0}")]
    Interpolation(#[from] LaurentError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// `M(A) = ⊕ a_{i,j} M^{i,j}` as a sorted multiset of segments `(i, j - i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentRep {
    n: usize,
    segments: Vec<(i64, usize)>,
}

impl SegmentRep {
    pub fn new(n: usize, mut segments: Vec<(i64, usize)>) -> Result<Self, HallError> {
        if let Some(&(vertex, len)) = segments
            .iter()
            .find(|&&(i, len)| len == 0 || !(1..=n as i64).contains(&i))
        {
            return Err(HallError::BadSegment { vertex, len, n });
        }
        segments.sort_unstable();
        Ok(SegmentRep { n, segments })
    }

    pub fn zero(n: usize) -> Self {
        SegmentRep {
            n,
            segments: Vec::new(),
        }
    }

    /// The simple module `S_i`.
    pub fn simple(n: usize, i: i64) -> Self {
        SegmentRep {
            n,
            segments: vec![(residue(i, n as i64), 1)],
        }
    }

    pub fn from_matrix(a: &AffMatrix) -> Result<Self, HallError> {
        if !a.is_nonneg() || a.entries().iter().any(|&(i, j, _)| j <= i) {
            return Err(HallError::NotPositive(a.clone()));
        }
        let mut segments = Vec::new();
        for &(i, j, m) in a.entries() {
            for _ in 0..m {
                segments.push((i, (j - i) as usize));
            }
        }
        Self::new(a.n(), segments)
    }

    pub fn to_matrix(&self) -> AffMatrix {
        AffMatrix::new(
            self.n,
            self.segments.iter().map(|&(i, len)| (i, i + len as i64, 1)),
        )
        .expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[(i64, usize)] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.to_matrix().dim_vector()
    }

    pub fn total_dim(&self) -> usize {
        self.segments.iter().map(|s| s.1).sum()
    }

    fn max_len(&self) -> usize {
        self.segments.iter().map(|s| s.1).max().unwrap_or(0)
    }

    /// Every representation with dimension vector `d`, sorted.
    pub fn all_with_dim(n: usize, d: &[i64]) -> Vec<SegmentRep> {
        fn rec(
            n: usize,
            left: &mut Vec<i64>,
            start: (i64, usize),
            cur: &mut Vec<(i64, usize)>,
            out: &mut Vec<SegmentRep>,
        ) {
            if left.iter().all(|&x| x == 0) {
                out.push(SegmentRep {
                    n,
                    segments: cur.clone(),
                });
                return;
            }
            let total: i64 = left.iter().sum();
            for i in start.0..=n as i64 {
                let min_len = if i == start.0 { start.1 } else { 1 };
                for len in min_len..=total as usize {
                    let fits = (0..len as i64).all(|k| {
                        let t = (residue(i + k, n as i64) - 1) as usize;
                        // count how often this vertex is hit within the segment
                        let hits = (0..len as i64)
                            .filter(|&kk| residue(i + kk, n as i64) == residue(i + k, n as i64))
                            .count() as i64;
                        left[t] >= hits
                    });
                    if !fits {
                        continue;
                    }
                    for k in 0..len as i64 {
                        left[(residue(i + k, n as i64) - 1) as usize] -= 1;
                    }
                    cur.push((i, len));
                    rec(n, left, (i, len), cur, out);
                    cur.pop();
                    for k in 0..len as i64 {
                        left[(residue(i + k, n as i64) - 1) as usize] += 1;
                    }
                }
            }
        }
        let mut out = Vec::new();
        if d.iter().all(|&x| x >= 0) {
            rec(n, &mut d.to_vec(), (1, 1), &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }

    /// `r(t, k)`: how many basis chain positions at vertex `t` survive `k`
    /// applications of the arrows. This determines the module up to
    /// isomorphism.
    fn fingerprint(&self, kmax: usize) -> Vec<usize> {
        let n = self.n as i64;
        let mut out = vec![0usize; self.n * kmax];
        for &(i, len) in &self.segments {
            for p in 0..len {
                let t = (residue(i + p as i64, n) - 1) as usize;
                for k in 1..=kmax.min(len - 1 - p) {
                    out[t * kmax + (k - 1)] += 1;
                }
            }
        }
        out
    }
}

impl fmt::Debug for SegmentRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.to_matrix())
    }
}

/// The Euler form `⟨λ, μ⟩ = Σ λ_i μ_i - Σ λ_i μ_{i+1}`.
pub fn euler(lambda: &[i64], mu: &[i64]) -> i64 {
    let n = lambda.len();
    assert_eq!(n, mu.len(), "Euler form needs vectors of equal length");
    (0..n)
        .map(|i| lambda[i] * mu[i] - lambda[i] * mu[(i + 1) % n])
        .sum()
}

/// An explicit basis of `M(C)`: vertex dimensions and the arrow action on
/// basis vectors (`next[t][b]` is the image of basis vector `b` at vertex `t`).
struct Realization {
    n: usize,
    dims: Vec<usize>,
    next: Vec<Vec<Option<usize>>>,
}

impl Realization {
    fn new(c: &SegmentRep) -> Self {
        let n = c.n;
        let mut dims = vec![0usize; n];
        let mut next: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
        for &(i, len) in &c.segments {
            let mut prev: Option<(usize, usize)> = None;
            for k in 0..len {
                let t = (residue(i + k as i64, n as i64) - 1) as usize;
                let idx = dims[t];
                dims[t] += 1;
                next[t].push(None);
                if let Some((pt, pidx)) = prev {
                    next[pt][pidx] = Some(idx);
                }
                prev = Some((t, idx));
            }
        }
        Realization { n, dims, next }
    }

    /// Applies the arrow at vertex `t` to a vector there.
    fn arrow(&self, t: usize, v: &[u8]) -> Vec<u8> {
        let t1 = (t + 1) % self.n;
        let mut out = vec![0u8; self.dims[t1]];
        for (b, &x) in v.iter().enumerate() {
            if x != 0 {
                if let Some(u) = self.next[t][b] {
                    out[u] = x;
                }
            }
        }
        out
    }

    fn arrow_pow(&self, t: usize, v: &[u8], k: usize) -> Vec<u8> {
        let mut cur = v.to_vec();
        for s in 0..k {
            cur = self.arrow((t + s) % self.n, &cur);
        }
        cur
    }

    fn basis(&self, t: usize) -> Vec<Vec<u8>> {
        (0..self.dims[t])
            .map(|b| {
                let mut e = vec![0u8; self.dims[t]];
                e[b] = 1;
                e
            })
            .collect()
    }
}

fn stacked_rank(f: &Field, a: &[Vec<u8>], b: &[Vec<u8>]) -> usize {
    let rows: Vec<Vec<u8>> = a.iter().chain(b).cloned().collect();
    if rows.is_empty() || rows[0].is_empty() {
        0
    } else {
        f.rank(&rows)
    }
}

/// Hall polynomial computations with shared caches.
pub struct HallCounter {
    cap_dim: usize,
    fields: Mutex<HashMap<u32, Arc<Field>>>,
    polys: RwLock<HashMap<(SegmentRep, SegmentRep, SegmentRep), IntPoly>>,
}

impl Default for HallCounter {
    fn default() -> Self {
        Self::new(DEFAULT_CAP_DIM)
    }
}

impl HallCounter {
    pub fn new(cap_dim: usize) -> Self {
        HallCounter {
            cap_dim,
            fields: Mutex::new(HashMap::new()),
            polys: RwLock::new(HashMap::new()),
        }
    }

    pub fn cap_dim(&self) -> usize {
        self.cap_dim
    }

    fn field(&self, q: u32) -> Result<Arc<Field>, HallError> {
        let mut fields = self.fields.lock();
        if let Some(f) = fields.get(&q) {
            return Ok(f.clone());
        }
        let f = Arc::new(Field::new(q)?);
        fields.insert(q, f.clone());
        Ok(f)
    }

    fn check_dims(c: &SegmentRep, a: &SegmentRep, b: &SegmentRep) -> Result<(), HallError> {
        if a.n != c.n || b.n != c.n {
            return Err(HallError::PeriodMismatch(a.n.max(b.n), c.n));
        }
        let sum: Vec<i64> = a
            .dim_vector()
            .iter()
            .zip(b.dim_vector())
            .map(|(x, y)| x + y)
            .collect();
        let dc = c.dim_vector();
        if dc != sum {
            return Err(HallError::DimensionMismatch { c: dc, sum });
        }
        Ok(())
    }

    /// The number of submodules `N ⊆ M(C)` over `𝔽_q` with `N ≅ M(B)` and
    /// `M(C)/N ≅ M(A)`.
    pub fn count(
        &self,
        c: &SegmentRep,
        a: &SegmentRep,
        b: &SegmentRep,
        q: u32,
    ) -> Result<u64, HallError> {
        Self::check_dims(c, a, b)?;
        if c.total_dim() > self.cap_dim {
            return Err(HallError::TooLarge {
                dim: c.total_dim(),
                cap: self.cap_dim,
            });
        }
        let f = self.field(q)?;
        let real = Realization::new(c);
        let n = c.n;
        let kmax = c.max_len();
        let want_sub = b.fingerprint(kmax);
        let want_quot = a.fingerprint(kmax);
        let db = b.dim_vector();
        let subs: Vec<Vec<Vec<Vec<u8>>>> = (0..n)
            .map(|t| f.subspaces(real.dims[t], db[t] as usize))
            .collect();
        let images: Vec<Vec<Vec<Vec<u8>>>> = (0..n)
            .map(|t| {
                (0..=kmax)
                    .map(|k| {
                        real.basis(t)
                            .iter()
                            .map(|v| real.arrow_pow(t, v, k))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut chosen: Vec<&Vec<Vec<u8>>> = Vec::with_capacity(n);
        let mut total = 0u64;
        self.search(&f, &real, &subs, &mut chosen, &mut |chosen| {
            // close the cycle: f(N_n) ⊆ N_1
            let last = chosen[n - 1];
            let img: Vec<Vec<u8>> = last.iter().map(|v| real.arrow(n - 1, v)).collect();
            if stacked_rank(&f, chosen[0], &img) != chosen[0].len() {
                return;
            }
            let mut sub = vec![0usize; n * kmax];
            let mut quot = vec![0usize; n * kmax];
            for t in 0..n {
                for k in 1..=kmax {
                    let t2 = (t + k) % n;
                    let img: Vec<Vec<u8>> =
                        chosen[t].iter().map(|v| real.arrow_pow(t, v, k)).collect();
                    sub[t * kmax + k - 1] = stacked_rank(&f, &img, &[]);
                    quot[t * kmax + k - 1] =
                        stacked_rank(&f, &images[t][k], chosen[t2]) - chosen[t2].len();
                }
            }
            if sub == want_sub && quot == want_quot {
                total += 1;
            }
        });
        Ok(total)
    }

    /// Chooses `N_t` vertex by vertex, keeping `f(N_{t-1}) ⊆ N_t`.
    fn search<'a>(
        &self,
        f: &Field,
        real: &Realization,
        subs: &'a [Vec<Basis>],
        chosen: &mut Vec<&'a Basis>,
        leaf: &mut dyn FnMut(&[&'a Basis]),
    ) {
        let t = chosen.len();
        if t == real.n {
            leaf(chosen);
            return;
        }
        for cand in &subs[t] {
            if t > 0 {
                let img: Vec<Vec<u8>> =
                    chosen[t - 1].iter().map(|v| real.arrow(t - 1, v)).collect();
                if stacked_rank(f, cand, &img) != cand.len() {
                    continue;
                }
            }
            chosen.push(cand);
            self.search(f, real, subs, chosen, leaf);
            chosen.pop();
        }
    }

    /// `φ^C_{A,B}` in `Z[q]`, interpolated from counts at the first
    /// `Σ_i d(B)_i d(A)_i + 2` prime powers. The extra sample checks that the
    /// counts really follow a polynomial of the expected degree.
    pub fn poly(
        &self,
        a: &SegmentRep,
        b: &SegmentRep,
        c: &SegmentRep,
    ) -> Result<IntPoly, HallError> {
        let key = (a.clone(), b.clone(), c.clone());
        if let Some(p) = self.polys.read().get(&key) {
            return Ok(p.clone());
        }
        Self::check_dims(c, a, b)?;
        let bound: i64 = a
            .dim_vector()
            .iter()
            .zip(b.dim_vector())
            .map(|(x, y)| x * y)
            .sum();
        let mut samples = Vec::new();
        for q in prime_powers().take(bound as usize + 2) {
            samples.push((q as i64, BigInt::from(self.count(c, a, b, q)?)));
        }
        let p = IntPoly::interpolate(&samples, bound as usize)?;
        self.polys.write().insert(key, p.clone());
        Ok(p)
    }

    /// `ũ_A ũ_B = Σ_C v^{⟨d(A),d(B)⟩ + ε_A + ε_B - ε_C} φ^C_{A,B}(v^2) ũ_C`
    /// with `ε_X` the [`utilde_exponent`].
    pub fn mult_utilde(
        &self,
        a: &SegmentRep,
        b: &SegmentRep,
    ) -> Result<BTreeMap<SegmentRep, LaurentPoly>, HallError> {
        if a.n != b.n {
            return Err(HallError::PeriodMismatch(a.n, b.n));
        }
        let (da, db) = (a.dim_vector(), b.dim_vector());
        let sum: Vec<i64> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        let base = euler(&da, &db) + utilde_exponent(a) + utilde_exponent(b);
        let mut out = BTreeMap::new();
        for c in SegmentRep::all_with_dim(a.n, &sum) {
            let phi = self.poly(a, b, &c)?;
            if !phi.is_zero() {
                let e = base - utilde_exponent(&c);
                out.insert(c, phi.to_laurent().shift(e));
            }
        }
        Ok(out)
    }

    /// Compares `A(0,r) B(0,r)` in `𝒮_Δ(n, r)` with `Σ_C coeff · C(0,r)` built
    /// from [`Self::mult_utilde`].
    pub fn zeta_check(
        &self,
        alg: &SchurAlgebra,
        a: &SegmentRep,
        b: &SegmentRep,
    ) -> Result<bool, HallError> {
        let (lhs, rhs) = self.zeta_sides(alg, a, b)?;
        Ok(lhs == rhs)
    }

    /// Both sides of [`Self::zeta_check`].
    pub fn zeta_sides(
        &self,
        alg: &SchurAlgebra,
        a: &SegmentRep,
        b: &SegmentRep,
    ) -> Result<(SchurElt, SchurElt), HallError> {
        let r = alg.r();
        let zero = vec![0i64; alg.n()];
        let lhs = alg.mult(
            &a_block(&a.to_matrix(), &zero, r),
            &a_block(&b.to_matrix(), &zero, r),
        )?;
        let mut rhs = SchurElt::zero(alg.n(), r);
        for (c, coef) in self.mult_utilde(a, b)? {
            rhs.add_scaled(&coef, &a_block(&c.to_matrix(), &zero, r));
        }
        Ok((lhs, rhs))
    }
}

/// `dim End(M(A)) - dim M(A)`, with the endomorphism ring computed as the
/// kernel of the commutation equations over `Q`.
pub fn utilde_exponent(a: &SegmentRep) -> i64 {
    let real = Realization::new(a);
    let n = real.n;
    let dims = &real.dims;
    // unknown X_t is a dims[t] x dims[t] matrix; offset of entry (i, j)
    let mut offset = vec![0usize; n + 1];
    for t in 0..n {
        offset[t + 1] = offset[t] + dims[t] * dims[t];
    }
    let nvars = offset[n];
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for t in 0..n {
        let t1 = (t + 1) % n;
        // (F_t X_t)_{a,b} = (X_{t+1} F_t)_{a,b} for a in V_{t+1}, b in V_t,
        // where F_t e_c = e_{next[t][c]}.
        for a in 0..dims[t1] {
            for b in 0..dims[t] {
                let mut row = vec![BigRational::zero(); nvars];
                for c in 0..dims[t] {
                    if real.next[t][c] == Some(a) {
                        row[offset[t] + c * dims[t] + b] += BigRational::one();
                    }
                }
                if let Some(c) = real.next[t][b] {
                    row[offset[t1] + a * dims[t1] + c] -= BigRational::one();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let rank = rational_rank(&mut rows, nvars);
    (nvars - rank) as i64 - a.total_dim() as i64
}

fn rational_rank(m: &mut [Vec<BigRational>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let prow: Vec<BigRational> = m[rank].iter().map(|x| x / &pivot).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(n: usize, s: &[(i64, usize)]) -> SegmentRep {
        SegmentRep::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler(&[1, 0], &[1, 0]), 1);
        assert_eq!(euler(&[1, 0], &[0, 1]), -1);
        assert_eq!(euler(&[1, 1], &[1, 1]), 0);
    }

    #[test]
    fn count_examples() {
        let h = HallCounter::default();
        let s1 = SegmentRep::simple(2, 1);
        let s2 = SegmentRep::simple(2, 2);
        assert_eq!(h.count(&seg(2, &[(1, 2)]), &s1, &s2, 2).unwrap(), 1);
        assert_eq!(h.count(&seg(2, &[(1, 2)]), &s2, &s1, 2).unwrap(), 0);
        assert_eq!(h.count(&seg(2, &[(1, 1), (2, 1)]), &s2, &s1, 3).unwrap(), 1);
        assert_eq!(h.count(&seg(2, &[(1, 1), (1, 1)]), &s1, &s1, 2).unwrap(), 3);
        assert_eq!(h.count(&seg(2, &[(1, 1), (1, 1)]), &s1, &s1, 4).unwrap(), 5);
    }

    #[test]
    fn poly_examples() {
        let h = HallCounter::default();
        let s1 = SegmentRep::simple(2, 1);
        let s2 = SegmentRep::simple(2, 2);
        let p = h.poly(&s1, &s1, &seg(2, &[(1, 1), (1, 1)])).unwrap();
        assert_eq!(p, IntPoly::from_i64s(&[1, 1]));
        assert_eq!(
            h.poly(&s1, &s2, &seg(2, &[(1, 2)])).unwrap(),
            IntPoly::one()
        );
        assert!(matches!(
            h.poly(&s2, &s2, &seg(2, &[(1, 2)])),
            Err(HallError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn utilde_examples() {
        assert_eq!(utilde_exponent(&SegmentRep::simple(2, 1)), 0);
        assert_eq!(utilde_exponent(&seg(2, &[(1, 1), (1, 1)])), 2);
        assert_eq!(utilde_exponent(&seg(2, &[(1, 2)])), -1);
        // M^{1,4} at n = 2 has top and socle S_1, so End has dimension 2.
        assert_eq!(utilde_exponent(&seg(2, &[(1, 3)])), 2 - 3);
    }

    #[test]
    fn utilde_products() {
        let h = HallCounter::default();
        let s1 = SegmentRep::simple(2, 1);
        let s2 = SegmentRep::simple(2, 2);
        let prod = h.mult_utilde(&s1, &s1).unwrap();
        let expect: BTreeMap<_, _> = [(
            seg(2, &[(1, 1), (1, 1)]),
            LaurentPoly::from_terms([(1, 1), (-1, 1)]),
        )]
        .into();
        assert_eq!(prod, expect);
        let zero = SegmentRep::zero(2);
        let prod = h.mult_utilde(&s1, &zero).unwrap();
        assert_eq!(prod, [(s1.clone(), LaurentPoly::one())].into());
        let prod = h.mult_utilde(&s1, &s2).unwrap();
        assert!(prod.contains_key(&seg(2, &[(1, 2)])));
    }

    #[test]
    fn enumeration_by_dimension() {
        // d = (1, 1): S1+S2, M^{1,3}, M^{2,4}
        assert_eq!(SegmentRep::all_with_dim(2, &[1, 1]).len(), 3);
        assert_eq!(SegmentRep::all_with_dim(2, &[2, 0]).len(), 1);
        for m in SegmentRep::all_with_dim(3, &[2, 1, 1]) {
            assert_eq!(m.dim_vector(), vec![2, 1, 1]);
        }
    }

    #[test]
    fn zeta_examples() {
        let h = HallCounter::default();
        let s1 = SegmentRep::simple(2, 1);
        let s2 = SegmentRep::simple(2, 2);
        let kl = std::sync::Arc::new(crate::hecke::KlCache::new());
        let alg2 = SchurAlgebra::new(2, 2, kl.clone()).unwrap();
        assert!(h.zeta_check(&alg2, &s1, &s1).unwrap());
        assert!(h
            .zeta_check(&alg2, &seg(2, &[(1, 2)]), &SegmentRep::zero(2))
            .unwrap());
        let alg3 = SchurAlgebra::new(2, 3, kl).unwrap();
        assert!(h.zeta_check(&alg3, &s1, &s2).unwrap());
    }

    #[test]
    fn matrix_round_trip() {
        let a = AffMatrix::new(2, [(1, 2, 2), (2, 4, 1)]).unwrap();
        let s = SegmentRep::from_matrix(&a).unwrap();
        assert_eq!(s.segments(), &[(1, 1), (1, 1), (2, 2)]);
        assert_eq!(s.to_matrix(), a);
        assert!(SegmentRep::from_matrix(&AffMatrix::diag(&[1, 0])).is_err());
    }
}
