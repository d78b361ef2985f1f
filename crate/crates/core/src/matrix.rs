//! Periodic `Z x Z` matrices.
//!
//! An [`AffMatrix`] is a matrix `(a_{i,j})` with `a_{i+n,j+n} = a_{i,j}` and
//! finitely many nonzero entries in every row and column. Only rows `1..=n`
//! are stored, as a sorted list of `(row, column, value)` triples with
//! nonzero values; the ordering of matrices is lexicographic on `n` and that
//! list, which is also the serialized order.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("the period n must be at least 1")]
    ZeroPeriod,
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("negative off-diagonal entry {value} at ({row}, {col})")]
    NegativeEntry { row: i64, col: i64, value: i64 },
    #[error("cannot embed period {from} into period {to}")]
    BadEmbedding { from: usize, to: usize },
}

/// `floor(a / b)` for `b > 0`.
pub(crate) fn fdiv(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `ceil(a / b)` for `b > 0`.
pub(crate) fn cdiv(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Representative of `i` modulo `n` in `1..=n`.
pub(crate) fn residue(i: i64, n: i64) -> i64 {
    (i - 1).rem_euclid(n) + 1
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffMatrix {
    n: usize,
    entries: Vec<(i64, i64, i64)>,
}

impl AffMatrix {
    /// Builds a matrix from arbitrary `(row, column, value)` triples. Rows
    /// outside `1..=n` are moved into range by the periodicity, repeated
    /// positions add up and zero values are dropped.
    pub fn new<I>(n: usize, triples: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        if n == 0 {
            return Err(MatrixError::ZeroPeriod);
        }
        let nn = n as i64;
        let mut entries: Vec<(i64, i64, i64)> = triples
            .into_iter()
            .map(|(i, j, a)| {
                let i0 = residue(i, nn);
                (i0, j - (i - i0), a)
            })
            .collect();
        entries.sort_unstable();
        let mut merged: Vec<(i64, i64, i64)> = Vec::with_capacity(entries.len());
        for (i, j, a) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += a,
                _ => merged.push((i, j, a)),
            }
        }
        merged.retain(|e| e.2 != 0);
        Ok(AffMatrix { n, entries: merged })
    }

    /// Like [`AffMatrix::new`] but additionally requires off-diagonal entries
    /// to be nonnegative.
    pub fn new_checked<I>(n: usize, triples: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        let m = Self::new(n, triples)?;
        if let Some(&(row, col, value)) = m.entries.iter().find(|e| e.0 != e.1 && e.2 < 0) {
            return Err(MatrixError::NegativeEntry { row, col, value });
        }
        Ok(m)
    }

    pub(crate) fn from_sorted(n: usize, entries: Vec<(i64, i64, i64)>) -> Self {
        AffMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        AffMatrix {
            n,
            entries: Vec::new(),
        }
    }

    /// `diag(λ)` for `λ` given on one period.
    pub fn diag(lambda: &[i64]) -> Self {
        let entries = lambda
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| (k as i64 + 1, k as i64 + 1, a))
            .collect();
        AffMatrix {
            n: lambda.len(),
            entries,
        }
    }

    /// The periodic unit matrix `E^Δ_{i,j}`.
    pub fn unit(n: usize, i: i64, j: i64) -> Self {
        Self::new(n, [(i, j, 1)]).expect("period is positive")
    }

    /// `E = (δ_{i,j})`, the periodic identity.
    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero entries of rows `1..=n` in sorted order.
    pub fn entries(&self) -> &[(i64, i64, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry `a_{i,j}` for arbitrary `i, j`.
    pub fn get(&self, i: i64, j: i64) -> i64 {
        let nn = self.n as i64;
        let i0 = residue(i, nn);
        let j0 = j - (i - i0);
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(i0, j0)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0)
    }

    /// `σ(A)`, the sum of the entries in rows `1..=n`.
    pub fn sigma(&self) -> i64 {
        self.entries.iter().map(|e| e.2).sum()
    }

    /// Row sums over one period.
    pub fn ro(&self) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for &(i, _, a) in &self.entries {
            out[(i - 1) as usize] += a;
        }
        out
    }

    /// Column sums over one period.
    pub fn co(&self) -> Vec<i64> {
        let nn = self.n as i64;
        let mut out = vec![0; self.n];
        for &(_, j, a) in &self.entries {
            out[(residue(j, nn) - 1) as usize] += a;
        }
        out
    }

    /// Diagonal entries `a_{1,1}, ..., a_{n,n}`.
    pub fn diagonal(&self) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for &(i, j, a) in &self.entries {
            if i == j {
                out[(i - 1) as usize] = a;
            }
        }
        out
    }

    /// The matrix with its diagonal removed.
    pub fn off_diagonal(&self) -> Self {
        AffMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|e| e.0 != e.1)
                .collect(),
        }
    }

    /// Membership in `Θ_Δ(n)`: every entry nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|e| e.2 >= 0)
    }

    /// Membership in `Θ⁺_Δ(n)`: nonnegative and strictly upper triangular.
    pub fn is_upper(&self) -> bool {
        self.entries.iter().all(|e| e.2 >= 0 && e.1 > e.0)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.entries.iter().all(|e| e.0 != e.1)
    }

    pub fn add(&self, other: &AffMatrix) -> AffMatrix {
        debug_assert_eq!(self.n, other.n);
        Self::new(self.n, self.entries.iter().chain(&other.entries).copied())
            .expect("period is positive")
    }

    pub fn sub(&self, other: &AffMatrix) -> AffMatrix {
        debug_assert_eq!(self.n, other.n);
        let neg = other.entries.iter().map(|&(i, j, a)| (i, j, -a));
        Self::new(self.n, self.entries.iter().copied().chain(neg)).expect("period is positive")
    }

    /// `A + diag(λ)`.
    pub fn add_diag(&self, lambda: &[i64]) -> AffMatrix {
        self.add(&Self::diag(lambda))
    }

    /// `A + m E`.
    pub fn add_identity(&self, m: i64) -> AffMatrix {
        self.add_diag(&vec![m; self.n])
    }

    /// The transpose `ᵗA`.
    pub fn transpose(&self) -> AffMatrix {
        Self::new(self.n, self.entries.iter().map(|&(i, j, a)| (j, i, a)))
            .expect("period is positive")
    }

    /// `η_m(A) = (a_{i, mn + j})`: every entry moves `mn` columns to the left.
    pub fn eta(&self, m: i64) -> AffMatrix {
        let shift = m * self.n as i64;
        AffMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&(i, j, a)| (i, j - shift, a))
                .collect(),
        }
    }

    /// The embedding `Θ_Δ(n) -> Θ_Δ(N)`: `ã_{k, l + mN} = a_{k, l + mn}` for
    /// `1 <= k, l <= n`, zero in the new rows and columns.
    pub fn tilde(&self, big_n: usize) -> Result<AffMatrix, MatrixError> {
        if big_n < self.n {
            return Err(MatrixError::BadEmbedding {
                from: self.n,
                to: big_n,
            });
        }
        let nn = self.n as i64;
        let bn = big_n as i64;
        let entries = self.entries.iter().map(|&(k, j, a)| {
            let l = residue(j, nn);
            let m = (j - l) / nn;
            (k, l + m * bn, a)
        });
        AffMatrix::new(big_n, entries)
    }

    /// Inverse of [`AffMatrix::tilde`]: `Some` exactly when the matrix lies
    /// in the image of `Θ_Δ(n)`.
    pub fn untilde(&self, n: usize) -> Option<AffMatrix> {
        if n == 0 || n > self.n {
            return None;
        }
        let nn = n as i64;
        let bn = self.n as i64;
        let mut out = Vec::with_capacity(self.entries.len());
        for &(k, j, a) in &self.entries {
            let l = residue(j, bn);
            if k > nn || l > nn {
                return None;
            }
            let m = (j - l) / bn;
            out.push((k, l + m * nn, a));
        }
        AffMatrix::new(n, out).ok()
    }

    /// Aperiodicity: for every `l != 0` some `a_{i,i+l}` with `1 <= i <= n`
    /// vanishes.
    pub fn is_aperiodic(&self) -> bool {
        let mut offsets: Vec<i64> = self
            .entries
            .iter()
            .map(|e| e.1 - e.0)
            .filter(|&l| l != 0)
            .collect();
        offsets.sort_unstable();
        offsets.dedup();
        offsets
            .into_iter()
            .all(|l| (1..=self.n as i64).any(|i| self.get(i, i + l) == 0))
    }

    /// Writes `A = C + mE` with `C - E` outside `Θ_Δ(n)`, i.e. `m` is the
    /// smallest diagonal entry.
    pub fn strip_e(&self) -> (AffMatrix, i64) {
        let m = self.diagonal().into_iter().min().unwrap_or(0).max(0);
        (self.add_identity(-m), m)
    }

    /// `σ_{i,j}(A)` for `i != j`.
    pub fn sigma_ij(&self, i: i64, j: i64) -> i64 {
        assert_ne!(i, j, "sigma_ij is defined for i != j");
        let nn = self.n as i64;
        let mut total = 0;
        for &(i0, j0, a) in &self.entries {
            let count = if i < j {
                // copies (i0 + kn, j0 + kn) with i0 + kn <= i and j0 + kn >= j
                fdiv(i - i0, nn) - cdiv(j - j0, nn) + 1
            } else {
                // copies with i0 + kn >= i and j0 + kn <= j
                fdiv(j - j0, nn) - cdiv(i - i0, nn) + 1
            };
            if count > 0 {
                total += count * a;
            }
        }
        total
    }

    fn offset_range(&self) -> (i64, i64) {
        let lo = self.entries.iter().map(|e| e.1 - e.0).min().unwrap_or(0);
        let hi = self.entries.iter().map(|e| e.1 - e.0).max().unwrap_or(0);
        (lo.min(0), hi.max(0))
    }

    /// `B ⪯ A`: `σ_{i,j}(B) <= σ_{i,j}(A)` for all `i != j`.
    pub fn preceq(b: &AffMatrix, a: &AffMatrix) -> bool {
        let (lo_a, hi_a) = a.offset_range();
        let (lo_b, hi_b) = b.offset_range();
        let lo = lo_a.min(lo_b);
        let hi = hi_a.max(hi_b);
        (1..=a.n as i64).all(|i| {
            (i + lo..=i + hi)
                .filter(|&j| j != i)
                .all(|j| b.sigma_ij(i, j) <= a.sigma_ij(i, j))
        })
    }

    /// `B ⊑ A`: `B ⪯ A` with equal row and column sums.
    pub fn sqsubseteq(b: &AffMatrix, a: &AffMatrix) -> bool {
        b.ro() == a.ro() && b.co() == a.co() && Self::preceq(b, a)
    }

    /// `d_A = Σ a_{i,j} a_{k,l}` over `1 <= i <= n`, `i >= k`, `j < l`.
    pub fn d_exponent(&self) -> i64 {
        let nn = self.n as i64;
        let mut total = 0;
        for &(i, j, a) in &self.entries {
            for &(k0, l0, b) in &self.entries {
                // copies (k0 + tn, l0 + tn) with k0 + tn <= i and l0 + tn > j
                let count = fdiv(i - k0, nn) - fdiv(j - l0, nn);
                if count > 0 {
                    total += count * a * b;
                }
            }
        }
        total
    }

    /// Dimension vector `d(A)` of `M(A)` for `A` in `Θ⁺_Δ(n)`: the module
    /// `M^{i,j}` contributes one dimension at each vertex `i, ..., j - 1`.
    pub fn dim_vector(&self) -> Vec<i64> {
        let nn = self.n as i64;
        let mut out = vec![0; self.n];
        for &(i, j, a) in &self.entries {
            for t in i..j {
                out[(residue(t, nn) - 1) as usize] += a;
            }
        }
        out
    }

    /// All matrices in `Θ_Δ(n, r)` whose nonzero entries satisfy
    /// `|j - i| <= span`, in sorted order.
    pub fn enumerate_theta(n: usize, r: i64, span: i64) -> Vec<AffMatrix> {
        let positions: Vec<(i64, i64)> = (1..=n as i64)
            .flat_map(|i| (i - span..=i + span).map(move |j| (i, j)))
            .collect();
        Self::distribute(n, &positions, r)
    }

    /// All matrices in `Θ⁺_Δ(n)` with `σ(A) = total` and nonzero entries
    /// only at `1 <= j - i <= span`, in sorted order.
    pub fn enumerate_theta_plus(n: usize, total: i64, span: i64) -> Vec<AffMatrix> {
        let positions: Vec<(i64, i64)> = (1..=n as i64)
            .flat_map(|i| (i + 1..=i + span).map(move |j| (i, j)))
            .collect();
        Self::distribute(n, &positions, total)
    }

    fn distribute(n: usize, positions: &[(i64, i64)], total: i64) -> Vec<AffMatrix> {
        fn rec(
            n: usize,
            positions: &[(i64, i64)],
            left: i64,
            cur: &mut Vec<(i64, i64, i64)>,
            out: &mut Vec<AffMatrix>,
        ) {
            match positions.split_first() {
                None => {
                    if left == 0 {
                        let mut e = cur.clone();
                        e.sort_unstable();
                        out.push(AffMatrix::from_sorted(n, e));
                    }
                }
                Some((&(i, j), rest)) => {
                    for a in 0..=left {
                        if a > 0 {
                            cur.push((i, j, a));
                        }
                        rec(n, rest, left - a, cur, out);
                        if a > 0 {
                            cur.pop();
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        if total >= 0 {
            rec(n, positions, total, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Debug for AffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0[n={}]", self.n);
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&(i, j, a)| {
                if a == 1 {
                    format!("E{i},{j}")
                } else {
                    format!("{a}E{i},{j}")
                }
            })
            .collect();
        write!(f, "{}[n={}]", parts.join("+"), self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<(i64, i64, i64)>,
}

impl Serialize for AffMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixRepr::deserialize(d)?;
        if let Some(&(i, _, _)) = raw.entries.iter().find(|e| e.0 < 1 || e.0 > raw.n as i64) {
            return Err(D::Error::custom(format!(
                "row index {i} outside 1..={}",
                raw.n
            )));
        }
        AffMatrix::new_checked(raw.n, raw.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, e: &[(i64, i64, i64)]) -> AffMatrix {
        AffMatrix::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn normalization_folds_rows() {
        let a = m(2, &[(3, 4, 1), (1, 2, 2)]);
        assert_eq!(a.entries(), &[(1, 2, 3)]);
        assert_eq!(a.get(5, 6), 3);
        assert_eq!(a.get(2, 3), 0);
    }

    #[test]
    fn d_exponent_examples() {
        assert_eq!(AffMatrix::diag(&[2, 1]).d_exponent(), 0);
        assert_eq!(m(2, &[(1, 2, 1), (2, 1, 1)]).d_exponent(), 1);
        assert_eq!(m(2, &[(1, 2, 1), (2, 2, 1)]).d_exponent(), 0);
    }

    /// Direct evaluation of the defining double sum over a window of shifts.
    fn d_exponent_brute(a: &AffMatrix) -> i64 {
        let n = a.n() as i64;
        let mut total = 0;
        for i in 1..=n {
            for j in -20..=20 {
                let aij = a.get(i, j);
                if aij == 0 {
                    continue;
                }
                for k in -30..=i {
                    for l in (j + 1)..=40 {
                        total += aij * a.get(k, l);
                    }
                }
            }
        }
        total
    }

    #[test]
    fn d_exponent_matches_brute_force() {
        for a in AffMatrix::enumerate_theta(2, 3, 2) {
            assert_eq!(a.d_exponent(), d_exponent_brute(&a), "{a}");
        }
    }

    fn sigma_brute(a: &AffMatrix, i: i64, j: i64) -> i64 {
        let mut total = 0;
        for s in -40..=40 {
            for t in -40..=40 {
                let inside = if i < j {
                    s <= i && t >= j
                } else {
                    s >= i && t <= j
                };
                if inside {
                    total += a.get(s, t);
                }
            }
        }
        total
    }

    #[test]
    fn sigma_ij_matches_brute_force() {
        for a in AffMatrix::enumerate_theta(2, 2, 2) {
            for i in 1..=2 {
                for j in -4..=6 {
                    if i != j {
                        assert_eq!(a.sigma_ij(i, j), sigma_brute(&a, i, j), "{a} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(AffMatrix::enumerate_theta(2, 2, 2).len(), 55);
        assert_eq!(AffMatrix::enumerate_theta(2, 3, 2).len(), 220);
        assert_eq!(AffMatrix::enumerate_theta(3, 3, 2).len(), 680);
        for a in AffMatrix::enumerate_theta_plus(2, 2, 2) {
            assert!(a.is_upper());
        }
    }

    #[test]
    fn eta_and_tilde() {
        let d = AffMatrix::diag(&[1, 1]);
        let e1 = d.eta(1);
        assert_eq!(e1.get(1, -1), 1);
        assert_eq!(e1.get(2, 0), 1);
        assert_eq!(e1.eta(-1), d);
        assert_eq!(d.eta(2), d.eta(1).eta(1));
        assert_eq!(e1.ro(), d.ro());
        let a = AffMatrix::unit(2, 1, 2);
        assert_eq!(a.tilde(3).unwrap(), AffMatrix::unit(3, 1, 2));
        assert_eq!(d.tilde(3).unwrap(), AffMatrix::diag(&[1, 1, 0]));
        assert_eq!(a.tilde(2).unwrap(), a);
        let b = m(2, &[(1, 4, 1), (2, -1, 2)]);
        let bt = b.tilde(3).unwrap();
        assert_eq!(bt.get(1, 5), 1);
        assert_eq!(bt.get(2, -2), 2);
        assert_eq!(bt.untilde(2).unwrap(), b);
        assert!(bt.is_aperiodic());
        assert!(AffMatrix::unit(3, 3, 4).untilde(2).is_none());
    }

    #[test]
    fn aperiodicity_and_strip() {
        assert!(AffMatrix::diag(&[1, 1]).is_aperiodic());
        assert!(!m(2, &[(1, 2, 1), (2, 3, 1)]).is_aperiodic());
        assert!(m(2, &[(1, 2, 1)]).is_aperiodic());
        assert_eq!(AffMatrix::diag(&[1, 1]).strip_e(), (AffMatrix::zero(2), 1));
        let a = m(2, &[(1, 2, 1), (2, 1, 1)]);
        assert_eq!(a.strip_e(), (a.clone(), 0));
        assert_eq!(a.add_identity(3).strip_e(), (a, 3));
    }

    #[test]
    fn orders_are_reflexive() {
        for a in AffMatrix::enumerate_theta(2, 2, 2) {
            assert!(AffMatrix::preceq(&a, &a));
            assert!(AffMatrix::sqsubseteq(&a, &a));
        }
    }

    #[test]
    fn dimension_vectors() {
        assert_eq!(AffMatrix::unit(2, 1, 3).dim_vector(), vec![1, 1]);
        assert_eq!(m(2, &[(1, 2, 2)]).dim_vector(), vec![2, 0]);
        assert_eq!(AffMatrix::unit(3, 2, 6).dim_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn json_layout() {
        let a = m(2, &[(1, 2, 1), (2, 1, 1)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[[1,2,1],[2,1,1]]}"#);
        let back: AffMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<AffMatrix>(r#"{"n":2,"entries":[[3,1,1]]}"#).is_err());
        assert!(serde_json::from_str::<AffMatrix>(r#"{"n":2,"entries":[[1,2,-1]]}"#).is_err());
    }
}
