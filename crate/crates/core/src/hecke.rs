//! The extended affine Hecke algebra `ℋ_Δ(r)` over `Z[v, v^-1]`.
//!
//! Multiplication uses the normalization `T_s^2 = (v^2 - 1) T_s + v^2` and
//! `T_ρ` acts by translation of the basis. Kazhdan–Lusztig polynomials are
//! computed column by column and kept in a [`KlCache`] that can be saved to
//! and restored from a plain text file.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use parking_lot::RwLock;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::affweyl::{
    double_coset, is_distinguished, is_min_right, lower_interval, min_right, AffError, AffPerm,
    Composition,
};
use crate::laurent::{IntPoly, LaurentPoly};

/// A finite `Z[v, v^-1]`-combination of the basis `{T_w}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    r: usize,
    terms: BTreeMap<AffPerm, LaurentPoly>,
}

fn v2_minus_one() -> &'static LaurentPoly {
    static P: OnceLock<LaurentPoly> = OnceLock::new();
    P.get_or_init(|| LaurentPoly::from_terms([(2, 1), (0, -1)]))
}

impl HeckeElt {
    pub fn zero(r: usize) -> Self {
        HeckeElt {
            r,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `T_w`.
    pub fn t(w: &AffPerm) -> Self {
        Self::monomial(w.clone(), LaurentPoly::one())
    }

    /// `T̃_w = v^{-ℓ(w)} T_w`.
    pub fn t_tilde(w: &AffPerm) -> Self {
        Self::monomial(w.clone(), LaurentPoly::v_pow(-(w.length() as i64)))
    }

    pub fn monomial(w: AffPerm, c: LaurentPoly) -> Self {
        let mut h = Self::zero(w.r());
        h.add_term(w, &c);
        h
    }

    /// Builds an element from `(w, c)` pairs, merging repeated keys.
    pub fn from_terms<I>(r: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (AffPerm, LaurentPoly)>,
    {
        let mut h = Self::zero(r);
        for (w, c) in terms {
            assert_eq!(w.r(), r, "period mismatch in Hecke term");
            h.add_term(w, &c);
        }
        h
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffPerm, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AffPerm) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Adds `c T_w` in place.
    pub fn add_term(&mut self, w: AffPerm, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &HeckeElt) {
        assert_eq!(self.r, other.r, "period mismatch in Hecke sum");
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = Self::zero(self.r);
        out.add_scaled(c, self);
        out
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(&LaurentPoly::one(), other);
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(&-LaurentPoly::one(), other);
        out
    }

    /// `h · T_{s_i}`.
    pub fn mul_s_right(&self, i: usize) -> HeckeElt {
        let mut out = Self::zero(self.r);
        for (y, c) in &self.terms {
            let ys = y.mul_s_right(i);
            if y.has_right_descent(i) {
                out.add_term(y.clone(), &(c * v2_minus_one()));
                out.add_term(ys, &c.shift(2));
            } else {
                out.add_term(ys, c);
            }
        }
        out
    }

    /// `T_{s_i} · h`.
    pub fn mul_s_left(&self, i: usize) -> HeckeElt {
        let mut out = Self::zero(self.r);
        for (y, c) in &self.terms {
            let sy = y.mul_s_left(i);
            if y.has_left_descent(i) {
                out.add_term(y.clone(), &(c * v2_minus_one()));
                out.add_term(sy, &c.shift(2));
            } else {
                out.add_term(sy, c);
            }
        }
        out
    }

    /// `T_{ρ^a} · h`.
    pub fn mul_rho_left(&self, a: i64) -> HeckeElt {
        HeckeElt {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(y, c)| (y.mul_rho_left(a), c.clone()))
                .collect(),
        }
    }

    /// `h · T_{ρ^a}`.
    pub fn mul_rho_right(&self, a: i64) -> HeckeElt {
        HeckeElt {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(y, c)| (y.mul_rho_right(a), c.clone()))
                .collect(),
        }
    }

    /// `h · T_w`, peeling a reduced word of `w`.
    pub fn mul_t_right(&self, w: &AffPerm) -> HeckeElt {
        let (a, word) = w.reduced_word();
        let mut out = self.mul_rho_right(a);
        for &s in &word {
            out = out.mul_s_right(s);
        }
        out
    }

    /// The product in `ℋ_Δ(r)`.
    pub fn t_mul(&self, other: &HeckeElt) -> HeckeElt {
        assert_eq!(self.r, other.r, "period mismatch in Hecke product");
        let mut out = Self::zero(self.r);
        for (w, c) in &other.terms {
            out.add_scaled(c, &self.mul_t_right(w));
        }
        out
    }

    /// The bar involution: `v -> v^-1` on coefficients and
    /// `T_w -> (T_{w^-1})^{-1}` on the basis.
    pub fn t_bar(&self) -> HeckeElt {
        let mut out = Self::zero(self.r);
        for (w, c) in &self.terms {
            out.add_scaled(&c.bar(), &bar_of_basis(w));
        }
        out
    }
}

type BarMemo = RwLock<HashMap<AffPerm, Arc<HeckeElt>>>;

fn bar_memo() -> &'static BarMemo {
    static MEMO: OnceLock<BarMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `bar(T_w) = T_ρ^a · Π bar(T_{s_i})` along a reduced word, memoized.
fn bar_of_basis(w: &AffPerm) -> Arc<HeckeElt> {
    if let Some(hit) = bar_memo().read().get(w) {
        return hit.clone();
    }
    let result = match w.first_right_descent() {
        None => HeckeElt::t(w),
        Some(s) => {
            let prev = bar_of_basis(&w.mul_s_right(s));
            let mut out = prev.mul_s_right(s).scale(&LaurentPoly::v_pow(-2));
            out.add_scaled(&LaurentPoly::from_terms([(-2, 1), (0, -1)]), &prev);
            out
        }
    };
    let result = Arc::new(result);
    bar_memo().write().insert(w.clone(), result.clone());
    result
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})T{w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeRepr {
    r: usize,
    terms: Vec<(AffPerm, LaurentPoly)>,
}

impl Serialize for HeckeElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HeckeRepr {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = HeckeRepr::deserialize(d)?;
        if let Some((w, _)) = raw.terms.iter().find(|(w, _)| w.r() != raw.r) {
            return Err(D::Error::custom(format!("term {w} has the wrong period")));
        }
        Ok(HeckeElt::from_terms(raw.r, raw.terms))
    }
}

/// `x_λ = Σ_{w ∈ 𝔖_λ} T_w`.
pub fn x_lambda(lambda: &Composition) -> HeckeElt {
    HeckeElt::from_terms(
        lambda.r(),
        lambda
            .young_elements()
            .into_iter()
            .map(|w| (w, LaurentPoly::one())),
    )
}

/// `T_{𝔖_λ d 𝔖_μ} = Σ_{w ∈ 𝔖_λ d 𝔖_μ} T_w`.
pub fn double_coset_sum(
    lambda: &Composition,
    d: &AffPerm,
    mu: &Composition,
) -> Result<HeckeElt, AffError> {
    let dc = double_coset(lambda, d, mu)?;
    if !is_distinguished(lambda, d, mu) {
        return Err(AffError::NotDistinguished(d.clone()));
    }
    Ok(HeckeElt::from_terms(
        d.r(),
        dc.elements.into_iter().map(|w| (w, LaurentPoly::one())),
    ))
}

/// The canonical basis element `C'_w = v^{-ℓ(w)} Σ_{y <= w} P_{y,w}(v^2) T_y`.
pub fn cprime(w: &AffPerm, cache: &KlCache) -> HeckeElt {
    let (a, x) = w.split_rho();
    let col = cache.column(&x);
    let shift = -(col.length as i64);
    HeckeElt::from_terms(
        w.r(),
        col.entries
            .iter()
            .map(|(y, e)| (y.mul_rho_left(a), e.poly.to_laurent().shift(shift))),
    )
}

#[derive(Debug, Error)]
pub enum KlCacheError {
    #[error("cannot access KL cache file: {0}")]
    Io(#[from] std::io::Error),
    #[error("KL cache line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("KL cache column for {w} is invalid: {msg}")]
    Invalid { w: AffPerm, msg: String },
}

/// One cached entry of a column: `ℓ(y)` and `P_{y,w}`.
#[derive(Clone, Debug)]
pub struct KlEntry {
    pub length: usize,
    pub poly: IntPoly,
}

/// All `P_{y,w}` for a fixed `w ∈ W_r`, keyed by `y <= w`.
#[derive(Clone, Debug)]
pub struct KlColumn {
    pub w: AffPerm,
    pub length: usize,
    pub entries: HashMap<AffPerm, KlEntry>,
}

impl KlColumn {
    pub fn get(&self, y: &AffPerm) -> Option<&IntPoly> {
        self.entries.get(y).map(|e| &e.poly)
    }

    /// `μ(y, w)`: the coefficient of `q^{(ℓ(w) - ℓ(y) - 1) / 2}` in `P_{y,w}`.
    pub fn mu(&self, y: &AffPerm) -> BigInt {
        match self.entries.get(y) {
            Some(e) if e.length < self.length && (self.length - e.length) % 2 == 1 => {
                e.poly.coeff((self.length - e.length - 1) / 2)
            }
            _ => BigInt::from(0),
        }
    }
}

/// Kazhdan–Lusztig polynomials, cached by column.
///
/// Entries are only stored for `w ∈ W_r`; the rotation part is stripped on
/// lookup since `P_{ρ^a y, ρ^b w} = δ_{a,b} P_{y,w}`.
#[derive(Default)]
pub struct KlCache {
    columns: RwLock<HashMap<AffPerm, Arc<KlColumn>>>,
    parabolic: RwLock<HashMap<(Composition, AffPerm), Arc<KlColumn>>>,
}

impl KlCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of cached columns.
    pub fn len(&self) -> usize {
        self.columns.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.read().is_empty()
    }

    /// `P_{y,w}` as a polynomial in `q = v^2`.
    pub fn kl_poly(&self, y: &AffPerm, w: &AffPerm) -> IntPoly {
        if y.r() != w.r() {
            return IntPoly::zero();
        }
        let (a, y0) = y.split_rho();
        let (b, w0) = w.split_rho();
        if a != b {
            return IntPoly::zero();
        }
        self.column(&w0)
            .get(&y0)
            .cloned()
            .unwrap_or_else(IntPoly::zero)
    }

    /// The column of `w`. The rotation part of `w` is stripped first.
    pub fn column(&self, w: &AffPerm) -> Arc<KlColumn> {
        let w = if w.rho_part() == 0 {
            w.clone()
        } else {
            w.split_rho().1
        };
        if let Some(c) = self.columns.read().get(&w) {
            return c.clone();
        }
        // No lock is held while recursing into shorter columns.
        let col = Arc::new(self.compute_column(&w));
        self.columns.write().entry(w).or_insert(col).clone()
    }

    fn compute_column(&self, w: &AffPerm) -> KlColumn {
        let lw = w.length();
        let Some(s) = w.first_right_descent() else {
            let mut entries = HashMap::new();
            entries.insert(
                w.clone(),
                KlEntry {
                    length: 0,
                    poly: IntPoly::one(),
                },
            );
            return KlColumn {
                w: w.clone(),
                length: 0,
                entries,
            };
        };
        let v = w.mul_s_right(s);
        let cv = self.column(&v);
        let lv = cv.length;
        // Correction terms μ(z, v) q^{(ℓ(w) - ℓ(z)) / 2} P_{x,z} for z < v with zs < z.
        let mut corrections: Vec<(BigInt, usize, Arc<KlColumn>)> = Vec::new();
        let mut zs: Vec<&AffPerm> = cv
            .entries
            .iter()
            .filter(|(z, e)| e.length < lv && (lv - e.length) % 2 == 1 && z.has_right_descent(s))
            .map(|(z, _)| z)
            .collect();
        zs.sort();
        for z in zs {
            let m = cv.mu(z);
            if m != BigInt::from(0) {
                let cz = self.column(z);
                corrections.push((m, (lw - cz.length) / 2, cz));
            }
        }
        let q = IntPoly::monomial(1, 1);
        let zero = IntPoly::zero();
        let mut entries: HashMap<AffPerm, KlEntry> = HashMap::with_capacity(2 * cv.entries.len());
        let candidates = cv
            .entries
            .keys()
            .flat_map(|x| [x.clone(), x.mul_s_right(s)]);
        for x in candidates {
            if entries.contains_key(&x) {
                continue;
            }
            let xs = x.mul_s_right(s);
            let p_xs = cv.get(&xs).unwrap_or(&zero);
            let p_x = cv.get(&x).unwrap_or(&zero);
            let mut p = if x.has_right_descent(s) {
                p_xs + &(&q * p_x)
            } else {
                &(&q * p_xs) + p_x
            };
            for (m, shift, cz) in &corrections {
                if let Some(pz) = cz.get(&x) {
                    let term = &IntPoly::monomial(m.clone(), *shift) * pz;
                    p = &p - &term;
                }
            }
            debug_assert!(!p.is_zero(), "P_{{{x},{w}}} vanished on the interval");
            let length = x.length();
            entries.insert(x, KlEntry { length, poly: p });
        }
        KlColumn {
            w: w.clone(),
            length: lw,
            entries,
        }
    }

    /// Kazhdan–Lusztig polynomials `P_{y,w}` for `w` maximal in its coset
    /// `w 𝔖_μ`, as a column over the cosets `y 𝔖_μ` below it.
    ///
    /// Both `P_{y,w}` and the set of `y <= w` are unions of such cosets, so
    /// the column is keyed by minimal coset representatives. The argument
    /// may be any element of the coset; its rotation part is stripped.
    /// Entry lengths are those of the minimal representatives.
    pub fn parabolic_column(&self, mu: &Composition, w: &AffPerm) -> Arc<KlColumn> {
        let x = min_right(&w.split_rho().1, mu);
        let key = (mu.clone(), x);
        if let Some(c) = self.parabolic.read().get(&key) {
            return c.clone();
        }
        let col = Arc::new(self.compute_parabolic(mu, &key.1));
        self.parabolic.write().entry(key).or_insert(col).clone()
    }

    /// `P_{y,w}` for `w` maximal in `w 𝔖_μ`, through [`KlCache::parabolic_column`].
    pub fn parabolic_poly(&self, mu: &Composition, y: &AffPerm, w: &AffPerm) -> IntPoly {
        let (a, _) = y.split_rho();
        if a != w.split_rho().0 {
            return IntPoly::zero();
        }
        let col = self.parabolic_column(mu, w);
        let y = min_right(&y.mul_rho_left(-a), mu);
        col.get(&y).cloned().unwrap_or_else(IntPoly::zero)
    }

    /// The left-descent recursion restricted to coset maxima. For `x`
    /// minimal in `x 𝔖_μ` with `sx < x` and `v = sx`, every term of
    /// `C'_s C'_{v w_0}` lies in `ℋ x_μ`, so only coset maxima occur.
    fn compute_parabolic(&self, mu: &Composition, x: &AffPerm) -> KlColumn {
        let lx = x.length();
        let Some(s) = (1..=x.r()).find(|&i| x.has_left_descent(i)) else {
            let mut entries = HashMap::new();
            entries.insert(
                x.clone(),
                KlEntry {
                    length: 0,
                    poly: IntPoly::one(),
                },
            );
            return KlColumn {
                w: x.clone(),
                length: 0,
                entries,
            };
        };
        // For y minimal, decide whether s lowers the maximum Y of y 𝔖_μ and
        // return the minimal representative of s Y.
        let step = |y: &AffPerm| -> (bool, AffPerm) {
            let sy = y.mul_s_left(s);
            if y.has_left_descent(s) {
                (true, sy)
            } else if is_min_right(&sy, mu) {
                (false, sy)
            } else {
                (true, y.clone())
            }
        };
        let v = x.mul_s_left(s);
        let cv = self.parabolic_column(mu, &v);
        let lv = cv.length;
        let mut corrections: Vec<(BigInt, usize, Arc<KlColumn>)> = Vec::new();
        let mut zs: Vec<&AffPerm> = cv
            .entries
            .iter()
            .filter(|(z, e)| e.length < lv && (lv - e.length) % 2 == 1 && step(z).0)
            .map(|(z, _)| z)
            .collect();
        zs.sort();
        for z in zs {
            let m = cv.mu(z);
            if m != BigInt::from(0) {
                let cz = self.parabolic_column(mu, z);
                corrections.push((m, (lx - cz.length) / 2, cz));
            }
        }
        let q = IntPoly::monomial(1, 1);
        let zero = IntPoly::zero();
        let mut entries: HashMap<AffPerm, KlEntry> = HashMap::with_capacity(2 * cv.entries.len());
        let candidates = cv.entries.keys().flat_map(|y| [y.clone(), step(y).1]);
        for y in candidates {
            if entries.contains_key(&y) {
                continue;
            }
            let (down, sy) = step(&y);
            let p_sy = cv.get(&sy).unwrap_or(&zero);
            let p_y = cv.get(&y).unwrap_or(&zero);
            let mut p = if down {
                p_sy + &(&q * p_y)
            } else {
                &(&q * p_sy) + p_y
            };
            for (m, shift, cz) in &corrections {
                if let Some(pz) = cz.get(&y) {
                    let term = &IntPoly::monomial(m.clone(), *shift) * pz;
                    p = &p - &term;
                }
            }
            debug_assert!(
                !p.is_zero(),
                "parabolic P_{{{y},{x}}} vanished on the interval"
            );
            let length = y.length();
            entries.insert(y, KlEntry { length, poly: p });
        }
        KlColumn {
            w: x.clone(),
            length: lx,
            entries,
        }
    }

    /// Writes every cached column, one `r|y|w|coeffs` record per entry.
    /// Entries of parabolic columns carry the composition as a fifth field,
    /// `r|y|w|coeffs|μ`.
    pub fn save(&self, path: &Path) -> Result<(), KlCacheError> {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        let cols = self.columns.read();
        let mut keys: Vec<&AffPerm> = cols.keys().collect();
        keys.sort();
        for w in keys {
            write_column(&mut out, &cols[w], None)?;
        }
        drop(cols);
        let par = self.parabolic.read();
        let mut keys: Vec<&(Composition, AffPerm)> = par.keys().collect();
        keys.sort();
        for key in keys {
            write_column(&mut out, &par[key], Some(&key.0))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a cache file, validating every column before accepting it.
    pub fn load(path: &Path) -> Result<Self, KlCacheError> {
        let file = fs::File::open(path)?;
        let mut raw: HashMap<AffPerm, HashMap<AffPerm, IntPoly>> = HashMap::new();
        let mut raw_par: HashMap<(Composition, AffPerm), HashMap<AffPerm, IntPoly>> =
            HashMap::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let perr = |msg: String| KlCacheError::Parse { line: lineno, msg };
            let fields: Vec<&str> = line.split('|').collect();
            if fields.len() != 4 && fields.len() != 5 {
                return Err(perr(format!(
                    "expected 4 or 5 fields, found {}",
                    fields.len()
                )));
            }
            let r: usize = fields[0]
                .parse()
                .map_err(|e| perr(format!("bad period: {e}")))?;
            let y = parse_perm(fields[1]).map_err(&perr)?;
            let w = parse_perm(fields[2]).map_err(&perr)?;
            if y.r() != r || w.r() != r {
                return Err(perr("window length differs from r".into()));
            }
            let coeffs = fields[3]
                .split(',')
                .map(|c| c.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| perr(format!("bad coefficient: {e}")))?;
            let poly = IntPoly::from_coeffs(coeffs);
            if let Some(mu) = fields.get(4) {
                let parts = mu
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| perr(format!("bad composition {mu:?}: {e}")))?;
                if parts.len() < 2 || parts.iter().sum::<usize>() != r {
                    return Err(perr(format!("composition {mu:?} does not sum to r")));
                }
                raw_par
                    .entry((Composition::new(parts), w))
                    .or_default()
                    .insert(y, poly);
            } else {
                raw.entry(w).or_default().insert(y, poly);
            }
        }
        let cache = KlCache::new();
        let mut cols = cache.columns.write();
        for (w, polys) in raw {
            let col = validate_column(&w, polys)?;
            cols.insert(w, Arc::new(col));
        }
        drop(cols);
        let mut par = cache.parabolic.write();
        for ((mu, w), polys) in raw_par {
            let col = validate_parabolic(&mu, &w, polys)?;
            par.insert((mu, w), Arc::new(col));
        }
        drop(par);
        Ok(cache)
    }
}

fn write_column(
    out: &mut impl Write,
    col: &KlColumn,
    mu: Option<&Composition>,
) -> std::io::Result<()> {
    let w = &col.w;
    let mut ys: Vec<&AffPerm> = col.entries.keys().collect();
    ys.sort();
    let suffix = mu.map(|m| {
        let parts: Vec<i64> = m.parts().iter().map(|&p| p as i64).collect();
        format!("|{}", join(&parts))
    });
    for y in ys {
        let coeffs: Vec<String> = col.entries[y]
            .poly
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect();
        writeln!(
            out,
            "{}|{}|{}|{}{}",
            w.r(),
            join(y.window()),
            join(w.window()),
            coeffs.join(","),
            suffix.as_deref().unwrap_or("")
        )?;
    }
    Ok(())
}

fn join(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_perm(s: &str) -> Result<AffPerm, String> {
    let window = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("bad window {s:?}: {e}"))?;
    AffPerm::new(window).map_err(|e| e.to_string())
}

fn validate_column(
    w: &AffPerm,
    polys: HashMap<AffPerm, IntPoly>,
) -> Result<KlColumn, KlCacheError> {
    let invalid = |msg: String| KlCacheError::Invalid { w: w.clone(), msg };
    if w.rho_part() != 0 {
        return Err(invalid("column key is not in W_r".into()));
    }
    let lw = w.length();
    if polys.get(w) != Some(&IntPoly::one()) {
        return Err(invalid("diagonal entry is not 1".into()));
    }
    let interval = lower_interval(w);
    if interval.len() != polys.len() || interval.iter().any(|y| !polys.contains_key(y)) {
        return Err(invalid("keys differ from the lower Bruhat interval".into()));
    }
    let mut entries = HashMap::with_capacity(polys.len());
    for (y, p) in polys {
        let ly = y.length();
        if y != *w {
            let bound = (lw - ly - 1) / 2;
            if p.degree().is_some_and(|d| d > bound) {
                return Err(invalid(format!("deg P_{{{y},{w}}} exceeds {bound}")));
            }
        }
        entries.insert(
            y,
            KlEntry {
                length: ly,
                poly: p,
            },
        );
    }
    Ok(KlColumn {
        w: w.clone(),
        length: lw,
        entries,
    })
}

/// Checks a parabolic column keyed by minimal coset representatives. The
/// interval itself is not recomputed, since avoiding it is the point of the
/// parabolic columns.
fn validate_parabolic(
    mu: &Composition,
    w: &AffPerm,
    polys: HashMap<AffPerm, IntPoly>,
) -> Result<KlColumn, KlCacheError> {
    let invalid = |msg: String| KlCacheError::Invalid { w: w.clone(), msg };
    if w.rho_part() != 0 || !is_min_right(w, mu) {
        return Err(invalid(format!(
            "column key is not a minimal {mu:?} coset representative in W_r"
        )));
    }
    if polys.get(w) != Some(&IntPoly::one()) {
        return Err(invalid("diagonal entry is not 1".into()));
    }
    let lw = w.length();
    let mut entries = HashMap::with_capacity(polys.len());
    for (y, p) in polys {
        let ly = y.length();
        if y.rho_part() != 0 || !is_min_right(&y, mu) || (y != *w && ly >= lw) {
            return Err(invalid(format!(
                "entry {y} is not below {w} in the coset order"
            )));
        }
        if y != *w
            && (p.coeff(0) != BigInt::from(1) || p.degree().is_some_and(|d| 2 * d >= lw - ly))
        {
            return Err(invalid(format!(
                "P_{{{y},{w}}} = {p} breaks P(0) = 1 or the degree bound"
            )));
        }
        entries.insert(
            y,
            KlEntry {
                length: ly,
                poly: p,
            },
        );
    }
    Ok(KlColumn {
        w: w.clone(),
        length: lw,
        entries,
    })
}
