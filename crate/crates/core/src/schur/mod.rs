//! The affine quantum Schur algebra `𝒮_Δ(n, r)`.
//!
//! Elements are stored in the normalized basis `[A] = v^{-d_A} e_A` indexed
//! by `A ∈ Θ_Δ(n, r)`. The standard basis element `e_A` with
//! `(λ, d, μ) = 𝒥_Δ^{-1}(A)` is the map `x_μ h -> T_{𝔖_λ d 𝔖_μ} h` on
//! `⊕_λ x_λ ℋ_Δ(r)`, and all products and bar images are computed in that
//! Hecke module.

mod canonical;

pub use canonical::{g_constants, theta_by_elimination};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::affweyl::{
    bruhat_leq, double_coset, double_coset_max, double_coset_min, is_min_left, jdelta, jdelta_inv,
    min_right, AffError, AffPerm, Composition,
};
use crate::hecke::{HeckeElt, KlCache};
use crate::laurent::LaurentPoly;
use crate::matrix::AffMatrix;

/// Offsets `|j - i|` kept when enumerating the infinite sets `Θ_Δ(n, r)`.
pub const WINDOW_SPAN: i64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchurError {
    #[error("matrix {matrix} has period {found}, expected {expected}")]
    WrongPeriod {
        matrix: AffMatrix,
        expected: usize,
        found: usize,
    },
    #[error("matrix {matrix} has σ = {found}, expected r = {expected}")]
    WrongLevel {
        matrix: AffMatrix,
        expected: usize,
        found: i64,
    },
    #[error("matrix {0} has a negative entry")]
    NotInTheta(AffMatrix),
    #[error("Schur algebras need n >= 2 and r >= 2, got n = {n}, r = {r}")]
    TooSmall { n: usize, r: usize },
    #[error("operands live in different Schur algebras: (n, r) = ({0}, {1}) vs ({2}, {3})")]
    AlgebraMismatch(usize, usize, usize, usize),
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error(transparent)]
    Aff(#[from] AffError),
}

/// A `Z[v, v^-1]`-combination of the basis `{[A]}` of `𝒮_Δ(n, r)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SchurElt {
    n: usize,
    r: usize,
    terms: BTreeMap<AffMatrix, LaurentPoly>,
}

impl SchurElt {
    pub fn zero(n: usize, r: usize) -> Self {
        SchurElt {
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// `[A]`, with `r = σ(A)`.
    pub fn basis(a: &AffMatrix) -> Self {
        Self::monomial(a.clone(), LaurentPoly::one())
    }

    pub fn monomial(a: AffMatrix, c: LaurentPoly) -> Self {
        let mut x = Self::zero(a.n(), a.sigma().max(0) as usize);
        x.add_term(a, &c);
        x
    }

    pub fn from_terms<I>(n: usize, r: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (AffMatrix, LaurentPoly)>,
    {
        let mut x = Self::zero(n, r);
        for (a, c) in terms {
            x.add_term(a, &c);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&AffMatrix, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &AffMatrix) -> LaurentPoly {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: AffMatrix, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &SchurElt) {
        for (a, d) in &other.terms {
            self.add_term(a.clone(), &(c * d));
        }
    }

    pub fn add(&self, other: &SchurElt) -> SchurElt {
        let mut out = self.clone();
        out.add_scaled(&LaurentPoly::one(), other);
        out
    }

    pub fn sub(&self, other: &SchurElt) -> SchurElt {
        let mut out = self.clone();
        out.add_scaled(&-LaurentPoly::one(), other);
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> SchurElt {
        let mut out = Self::zero(self.n, self.r);
        out.add_scaled(c, self);
        out
    }

    /// `τ_r`: `[A] -> [ᵗA]`.
    pub fn tau(&self) -> SchurElt {
        Self::from_terms(
            self.n,
            self.r,
            self.terms.iter().map(|(a, c)| (a.transpose(), c.clone())),
        )
    }

    /// Coefficients with respect to the standard basis `e_A`.
    pub fn e_coefficients(&self) -> BTreeMap<AffMatrix, LaurentPoly> {
        self.terms
            .iter()
            .map(|(a, c)| (a.clone(), c.shift(-a.d_exponent())))
            .collect()
    }

    /// `Σ c_A e_A` rewritten in the `[A]` basis.
    pub fn from_e_basis<I>(n: usize, r: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (AffMatrix, LaurentPoly)>,
    {
        Self::from_terms(
            n,
            r,
            terms.into_iter().map(|(a, c)| {
                let d = a.d_exponent();
                (a, c.shift(d))
            }),
        )
    }
}

impl fmt::Debug for SchurElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SchurElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{a}]")?;
            } else {
                write!(f, "({c})[{a}]")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SchurRepr {
    #[serde(default)]
    n: Option<usize>,
    r: usize,
    terms: Vec<(AffMatrix, LaurentPoly)>,
}

impl Serialize for SchurElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SchurRepr {
            n: Some(self.n),
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SchurRepr::deserialize(d)?;
        let n = match (raw.n, raw.terms.first()) {
            (Some(n), _) => n,
            (None, Some((a, _))) => a.n(),
            (None, None) => return Err(D::Error::custom("empty element needs an explicit n")),
        };
        for (a, _) in &raw.terms {
            if a.n() != n || a.sigma() != raw.r as i64 || !a.is_nonneg() {
                return Err(D::Error::custom(format!(
                    "{a} is not in Θ_Δ({n}, {})",
                    raw.r
                )));
            }
        }
        Ok(SchurElt::from_terms(n, raw.r, raw.terms))
    }
}

/// Double coset data attached to a basis matrix.
#[derive(Clone, Debug)]
pub struct CosetData {
    pub lambda: Composition,
    pub d: AffPerm,
    pub mu: Composition,
    /// The longest element `d⁺` of `𝔖_λ d 𝔖_μ`.
    pub plus: AffPerm,
    pub elements: Vec<AffPerm>,
    pub d_exp: i64,
    /// `T_{𝔖_λ d 𝔖_μ}`.
    pub t_sum: HeckeElt,
    /// `Σ T_w` over `w ∈ 𝔖_λ d 𝔖_μ` minimal in `𝔖_λ w`, so that
    /// `T_{𝔖_λ d 𝔖_μ} = x_λ · left_sum`.
    pub left_sum: HeckeElt,
}

type Table = Arc<Vec<(AffMatrix, LaurentPoly)>>;

/// `𝒮_Δ(n, r)` together with the caches its operations share.
pub struct SchurAlgebra {
    n: usize,
    r: usize,
    kl: Arc<KlCache>,
    max_length: Option<usize>,
    cosets: RwLock<HashMap<AffMatrix, Arc<CosetData>>>,
    products: RwLock<HashMap<(AffMatrix, AffMatrix), Table>>,
    bars: RwLock<HashMap<AffMatrix, Arc<SchurElt>>>,
    thetas: RwLock<HashMap<AffMatrix, Arc<SchurElt>>>,
}

impl SchurAlgebra {
    pub fn new(n: usize, r: usize, kl: Arc<KlCache>) -> Result<Self, SchurError> {
        if n < 2 || r < 2 {
            return Err(SchurError::TooSmall { n, r });
        }
        Ok(SchurAlgebra {
            n,
            r,
            kl,
            max_length: None,
            cosets: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
            bars: RwLock::new(HashMap::new()),
            thetas: RwLock::new(HashMap::new()),
        })
    }

    /// Rejects basis matrices whose longest double coset element is longer
    /// than `cap`.
    pub fn with_max_length(mut self, cap: usize) -> Self {
        self.max_length = Some(cap);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn kl(&self) -> &Arc<KlCache> {
        &self.kl
    }

    /// The elements of `Θ_Δ(n, r)` with `|j - i| <= WINDOW_SPAN`.
    pub fn window_basis(&self) -> Vec<AffMatrix> {
        AffMatrix::enumerate_theta(self.n, self.r as i64, WINDOW_SPAN)
    }

    /// `Λ_Δ(n, r)`.
    pub fn weights(&self) -> Vec<Composition> {
        Composition::all(self.n, self.r)
    }

    /// The unit `Σ_λ [diag(λ)]`.
    pub fn one(&self) -> SchurElt {
        SchurElt::from_terms(
            self.n,
            self.r,
            self.weights()
                .into_iter()
                .map(|l| (AffMatrix::diag(&l.to_i64s()), LaurentPoly::one())),
        )
    }

    pub fn check(&self, a: &AffMatrix) -> Result<(), SchurError> {
        if a.n() != self.n {
            return Err(SchurError::WrongPeriod {
                matrix: a.clone(),
                expected: self.n,
                found: a.n(),
            });
        }
        if !a.is_nonneg() {
            return Err(SchurError::NotInTheta(a.clone()));
        }
        if a.sigma() != self.r as i64 {
            return Err(SchurError::WrongLevel {
                matrix: a.clone(),
                expected: self.r,
                found: a.sigma(),
            });
        }
        Ok(())
    }

    fn check_elt(&self, x: &SchurElt) -> Result<(), SchurError> {
        if x.n != self.n || x.r != self.r {
            return Err(SchurError::AlgebraMismatch(x.n, x.r, self.n, self.r));
        }
        x.terms.keys().try_for_each(|a| self.check(a))
    }

    pub fn coset_data(&self, a: &AffMatrix) -> Result<Arc<CosetData>, SchurError> {
        if let Some(c) = self.cosets.read().get(a) {
            return Ok(c.clone());
        }
        self.check(a)?;
        let (lambda, d, mu) = jdelta_inv(a)?;
        let dc = double_coset(&lambda, &d, &mu)?;
        if let Some(cap) = self.max_length {
            let len = dc.plus.length();
            if len > cap {
                return Err(SchurError::CapExceeded {
                    what: "length of the longest double coset element",
                    value: len,
                    cap,
                });
            }
        }
        let one = LaurentPoly::one();
        let t_sum =
            HeckeElt::from_terms(self.r, dc.elements.iter().map(|w| (w.clone(), one.clone())));
        let left_sum = HeckeElt::from_terms(
            self.r,
            dc.elements
                .iter()
                .filter(|w| is_min_left(w, &lambda))
                .map(|w| (w.clone(), one.clone())),
        );
        let data = Arc::new(CosetData {
            plus: dc.plus,
            elements: dc.elements,
            d_exp: a.d_exponent(),
            lambda,
            d,
            mu,
            t_sum,
            left_sum,
        });
        self.cosets.write().insert(a.clone(), data.clone());
        Ok(data)
    }

    /// Rewrites a left-`𝔖_λ`, right-`𝔖_ν` invariant element as a combination of
    /// double coset sums, returned as `e`-basis coefficients.
    ///
    /// # Panics
    /// If the coefficients are not constant on some double coset.
    fn decompose(
        &self,
        mut h: HeckeElt,
        lambda: &Composition,
        nu: &Composition,
    ) -> Result<Vec<(AffMatrix, LaurentPoly)>, SchurError> {
        let mut out = Vec::new();
        loop {
            let Some(x) = h.terms().next().map(|(x, _)| x.clone()) else {
                break;
            };
            let d = double_coset_min(lambda, &x, nu);
            let dc = double_coset(lambda, &d, nu)?;
            let c = h.coeff(&d);
            for w in &dc.elements {
                assert_eq!(
                    h.coeff(w),
                    c,
                    "coefficient of T_{w} differs from T_{d} inside one double coset"
                );
            }
            let neg = -&c;
            for w in dc.elements {
                h.add_term(w, &neg);
            }
            out.push((jdelta(lambda, &d, nu)?, c));
        }
        out.sort();
        Ok(out)
    }

    /// `e_A · e_B = Σ_C ν_{A,B,C} e_C`, sorted by `C`.
    pub fn e_product(&self, a: &AffMatrix, b: &AffMatrix) -> Result<Table, SchurError> {
        let key = (a.clone(), b.clone());
        if let Some(t) = self.products.read().get(&key) {
            return Ok(t.clone());
        }
        let ca = self.coset_data(a)?;
        let cb = self.coset_data(b)?;
        let table = if ca.mu != cb.lambda {
            Vec::new()
        } else {
            let h = ca.t_sum.t_mul(&cb.left_sum);
            self.decompose(h, &ca.lambda, &cb.mu)?
        };
        let table = Arc::new(table);
        self.products.write().insert(key, table.clone());
        Ok(table)
    }

    /// `[A] · [B]` in the `[C]` basis.
    pub fn basis_product(&self, a: &AffMatrix, b: &AffMatrix) -> Result<SchurElt, SchurError> {
        let shift = -a.d_exponent() - b.d_exponent();
        let table = self.e_product(a, b)?;
        Ok(SchurElt::from_terms(
            self.n,
            self.r,
            table
                .iter()
                .map(|(c, nu)| (c.clone(), nu.shift(shift + c.d_exponent()))),
        ))
    }

    pub fn mult(&self, x: &SchurElt, y: &SchurElt) -> Result<SchurElt, SchurError> {
        self.check_elt(x)?;
        self.check_elt(y)?;
        let mut out = SchurElt::zero(self.n, self.r);
        for (a, p) in &x.terms {
            for (b, q) in &y.terms {
                if a.co() != b.ro() {
                    continue;
                }
                let prod = self.basis_product(a, b)?;
                out.add_scaled(&(p * q), &prod);
            }
        }
        Ok(out)
    }

    /// `bar([A])`, from `bar(f)(x_μ) = v^{2ℓ(w_{0,μ})} bar(f(x_μ))`.
    pub fn bar_basis(&self, a: &AffMatrix) -> Result<Arc<SchurElt>, SchurError> {
        if let Some(b) = self.bars.read().get(a) {
            return Ok(b.clone());
        }
        let ca = self.coset_data(a)?;
        let shift = 2 * ca.mu.longest_length() as i64;
        let image = ca.t_sum.t_bar().scale(&LaurentPoly::v_pow(shift));
        let table = self.decompose(image, &ca.lambda, &ca.mu)?;
        let out = Arc::new(SchurElt::from_terms(
            self.n,
            self.r,
            table.into_iter().map(|(c, coef)| {
                let s = ca.d_exp + c.d_exponent();
                (c, coef.shift(s))
            }),
        ));
        self.bars.write().insert(a.clone(), out.clone());
        Ok(out)
    }

    /// The bar involution, semilinear in `v -> v^-1`.
    pub fn bar(&self, x: &SchurElt) -> Result<SchurElt, SchurError> {
        self.check_elt(x)?;
        let mut out = SchurElt::zero(self.n, self.r);
        for (a, p) in &x.terms {
            let image = self.bar_basis(a)?;
            out.add_scaled(&p.bar(), &image);
        }
        Ok(out)
    }

    /// `B ≤^{Bo} A`: equal row and column sums and `y_B <= y_A`.
    pub fn leq_bo(&self, b: &AffMatrix, a: &AffMatrix) -> Result<bool, SchurError> {
        let ca = self.coset_data(a)?;
        let cb = self.coset_data(b)?;
        Ok(ca.lambda == cb.lambda && ca.mu == cb.mu && bruhat_leq(&cb.d, &ca.d))
    }

    /// The canonical basis element
    /// `θ_{A,r} = Σ_{B ≤^{Bo} A} v^{ℓ(y_B⁺) - ℓ(y_A⁺)} P_{y_B⁺, y_A⁺}(v^2) [B]`.
    pub fn theta(&self, a: &AffMatrix) -> Result<Arc<SchurElt>, SchurError> {
        if let Some(t) = self.thetas.read().get(a) {
            return Ok(t.clone());
        }
        let ca = self.coset_data(a)?;
        let top = ca.plus.length() as i64;
        // P_{y,y_A⁺} is constant on right μ-cosets, so the parabolic column of
        // y_A⁺ covers every double coset below it.
        let column = self.kl.parabolic_column(&ca.mu, &ca.plus);
        let (rho, _) = ca.plus.split_rho();
        let mut out = SchurElt::zero(self.n, self.r);
        let mut seen = std::collections::HashSet::new();
        for z in column.entries.keys() {
            let y = double_coset_min(&ca.lambda, &z.mul_rho_left(rho), &ca.mu);
            if !seen.insert(y.clone()) {
                continue;
            }
            let b = jdelta(&ca.lambda, &y, &ca.mu)?;
            let plus = double_coset_max(&ca.lambda, &y, &ca.mu);
            let p = column
                .get(&min_right(&plus.mul_rho_left(-rho), &ca.mu))
                .expect("y⁺ lies below y_A⁺")
                .to_laurent();
            out.add_term(b, &p.shift(plus.length() as i64 - top));
        }
        let out = Arc::new(out);
        self.thetas.write().insert(a.clone(), out.clone());
        Ok(out)
    }
}

/// `A(j, r) = Σ_{λ ∈ Λ_Δ(n, r - σ(A))} v^{λ·j} [A + diag(λ)]` for `A` with zero
/// diagonal; zero when `σ(A) > r`.
pub fn a_block(a: &AffMatrix, j: &[i64], r: usize) -> SchurElt {
    assert!(
        a.has_zero_diagonal(),
        "A(j, r) needs a matrix with zero diagonal"
    );
    assert_eq!(j.len(), a.n(), "j must have n entries");
    let n = a.n();
    let mut out = SchurElt::zero(n, r);
    let rest = r as i64 - a.sigma();
    if rest < 0 {
        return out;
    }
    for lam in Composition::all(n, rest as usize) {
        let l = lam.to_i64s();
        let dot: i64 = l.iter().zip(j).map(|(x, y)| x * y).sum();
        out.add_term(a.add_diag(&l), &LaurentPoly::v_pow(dot));
    }
    out
}
