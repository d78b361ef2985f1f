//! Small finite fields `𝔽_q` and the linear algebra used for counting.
//!
//! Elements are encoded as integers `0..q`. For `q = p^k` an element is the
//! base-`p` digit vector of a polynomial modulo a fixed irreducible of degree
//! `k`; addition and multiplication go through precomputed tables.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {0} exceeds the supported maximum of 256")]
    TooLarge(u32),
}

/// `q = p^k` if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Prime powers in increasing order, starting at 2.
pub fn prime_powers() -> impl Iterator<Item = u32> {
    (2u32..).filter(|&q| prime_power(q).is_some())
}

#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = x;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Product of polynomials over `𝔽_p` reduced modulo the monic `modulus`.
fn polymulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (t, &m) in modulus.iter().enumerate() {
                let idx = deg - k + t;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// A monic irreducible polynomial of degree `k` over `𝔽_p`, found by checking
/// that no monic polynomial of degree `1..=k/2` divides it.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    'candidates: for tail in 0..p.pow(k as u32) {
        let mut f = digits(tail, p, k);
        f.push(1);
        for d in 1..=k / 2 {
            for g_tail in 0..p.pow(d as u32) {
                let mut g = digits(g_tail, p, d);
                g.push(1);
                if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                    continue 'candidates;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (t, &m) in g.iter().enumerate() {
            r[shift + t] = (r[shift + t] + p * p - c * m % p) % p;
        }
        r.pop();
    }
    r
}

impl Field {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > 256 {
            return Err(FieldError::TooLarge(q));
        }
        let (q, p, k) = (q as usize, p as usize, k as usize);
        let modulus = irreducible(p, k);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as u8;
                mul[a * q + b] = undigits(&polymulmod(&da, &db, &modulus, p), p) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
                }
            })
            .collect();
        Ok(Field {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Rank of a list of row vectors.
    pub fn rank(&self, rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        self.row_reduce(&mut m)
    }

    /// In-place Gaussian elimination; returns the rank. Pivot rows end up
    /// first, normalized to leading coefficient 1.
    pub fn row_reduce(&self, m: &mut [Vec<u8>]) -> usize {
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let scale = self.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, scale);
            }
            let prow = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let f = self.neg(row[c]);
                    for (x, &y) in row.iter_mut().zip(&prow) {
                        *x = self.add(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Every `k`-dimensional subspace of `𝔽_q^m`, as its reduced row echelon
    /// basis. There are `[m choose k]_q` of them.
    pub fn subspaces(&self, m: usize, k: usize) -> Vec<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        if k > m {
            return out;
        }
        for pivots in itertools::Itertools::combinations(0..m, k) {
            // free slots: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|row| {
                    let pivots = &pivots;
                    (pivots[row] + 1..m)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let total = self.q.pow(free.len() as u32);
            for idx in 0..total {
                let mut basis = vec![vec![0u8; m]; k];
                for (row, &p) in pivots.iter().enumerate() {
                    basis[row][p] = 1;
                }
                let mut x = idx;
                for &(row, c) in &free {
                    basis[row][c] = (x % self.q) as u8;
                    x /= self.q;
                }
                out.push(basis);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(
            prime_powers().take(8).collect::<Vec<_>>(),
            vec![2, 3, 4, 5, 7, 8, 9, 11]
        );
        assert!(Field::new(12).is_err());
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 8, 9] {
            let f = Field::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_binomials() {
        let f = Field::new(3).unwrap();
        // [4 choose 2]_3 = (3^4 - 1)(3^3 - 1) / ((3^2 - 1)(3 - 1)) = 130
        assert_eq!(f.subspaces(4, 2).len(), 130);
        assert_eq!(f.subspaces(3, 0).len(), 1);
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.subspaces(2, 1).len(), 5);
        // 2 is a root of x^2 + x + 1, so 2 * (1, 2) = (2, 3)
        assert_eq!(f4.rank(&[vec![1, 2], vec![2, 3]]), 1);
        for s in f.subspaces(4, 2) {
            assert_eq!(f.rank(&s), 2);
        }
    }
}
