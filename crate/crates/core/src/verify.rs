//! Property checks over finite families of inputs, each returning a
//! machine-readable [`Report`].
//!
//! A check never stops at the first failure: every case is evaluated and each
//! failing case (including one that raised an error) becomes a [`Violation`]
//! carrying enough data to reproduce it. [`run`] dispatches by name for the
//! command line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::affweyl::{double_coset_max, is_distinguished, lower_interval, AffPerm};
use crate::hall::{HallError, SegmentRep};
use crate::hecke::{cprime, double_coset_sum, HeckeElt};
use crate::laurent::LaurentPoly;
use crate::matrix::AffMatrix;
use crate::schur::{theta_by_elimination, SchurAlgebra, SchurElt, SchurError, WINDOW_SPAN};
use crate::transfer::{
    complete_lambda, embedding_compare, f_constants, g_table, h_constants, shift_embed_compare,
    shift_embed_k0, TransferError,
};
use crate::workspace::Workspace;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}; known checks: {known}", known = CHECKS.join(", "))]
    UnknownCheck(String),
    #[error("check {check} does not take parameter {param}")]
    BadParam { check: String, param: &'static str },
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Hall(#[from] HallError),
}

/// One failing case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub case: String,
    pub detail: String,
}

/// Outcome of one check over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub cases: usize,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    fn new(check: &str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m.into_iter().collect(),
            Value::Null => BTreeMap::new(),
            other => [("value".to_string(), other)].into(),
        };
        Report {
            check: check.to_string(),
            params,
            cases: 0,
            passed: true,
            violations: Vec::new(),
        }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, case: impl Display, detail: impl Display) {
        self.passed = false;
        self.violations.push(Violation {
            case: case.to_string(),
            detail: detail.to_string(),
        });
    }

    /// Records `cond` as one case.
    fn expect(&mut self, cond: bool, case: impl Display, detail: impl FnOnce() -> String) {
        self.case();
        if !cond {
            self.fail(case, detail());
        }
    }

    /// Unwraps a per-case result, recording an error as a violation.
    fn attempt<T, E: Display>(&mut self, case: impl Display, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.case();
                self.fail(case, format!("error: {e}"));
                None
            }
        }
    }
}

/// Names accepted by [`run`].
pub const CHECKS: &[&str] = &[
    "cprime-bar",
    "kl-basics",
    "lemma-3.1",
    "e-assoc",
    "nu-eval",
    "canonical",
    "lemma-3.6",
    "lemma-3.7",
    "prop-3.8",
    "cor-4.9",
    "thm-4.8",
    "thm-4.10",
    "cor-4.11",
    "lemma-4.6",
    "thm-5.4",
    "thm-5.5",
    "thm-6.3",
    "zeta",
    "hall-assoc",
    "hall-interpolation",
    "hall-examples",
    "involutions",
];

/// Parameters of [`run`]; unset values take per-check defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub big_n: Option<usize>,
    pub k: Option<i64>,
    pub m: Option<i64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

pub const DEFAULT_SEED: u64 = 20_240_101;

/// Runs the named check.
pub fn run(ws: &Workspace, name: &str, p: &Params) -> Result<Report, VerifyError> {
    let n = p.n.unwrap_or(2);
    let r = p.r.unwrap_or(2);
    let big_n = p.big_n.unwrap_or(n + 1);
    let seed = p.seed.unwrap_or(DEFAULT_SEED);
    for (param, set, owner) in [
        ("--k", p.k.is_some(), "thm-4.8"),
        ("--m", p.m.is_some(), "lemma-4.6"),
    ] {
        if set && name != owner {
            return Err(VerifyError::BadParam {
                check: name.to_string(),
                param,
            });
        }
    }
    let report = match name {
        "cprime-bar" => cprime_bar(ws, r, 6),
        "kl-basics" => kl_basics(ws, r, 6),
        "lemma-3.1" => cprime_expansion(ws, n, r)?,
        "e-assoc" => match p.samples {
            Some(count) => e_assoc_random(ws, &[(n, r)], count, seed)?,
            None => e_assoc_all(ws, n, r)?,
        },
        "nu-eval" => nu_eval(ws, n, r)?,
        "canonical" => canonical(ws, n, r)?,
        "lemma-3.6" => bo_order_refines(ws, n, r)?,
        "lemma-3.7" => longest_element_length(ws, n, r)?,
        "prop-3.8" => theta_closed_form(ws, n, r)?,
        "cor-4.9" => g_positivity(ws, n, r)?,
        "thm-4.8" => {
            let ks = match p.k {
                Some(k) => vec![k],
                None => vec![-1, 1],
            };
            shift_embed_transfer(ws, n, &[r], &ks, big_n, p.samples.unwrap_or(50), seed)?
        }
        "thm-4.10" => f_transfer(ws, n, 2, big_n)?.0,
        "cor-4.11" => f_transfer(ws, n, 2, big_n)?.1,
        "lemma-4.6" => {
            let ms = match p.m {
                Some(k) => vec![k],
                None => vec![-1, 1, 2],
            };
            diagonal_shift(ws, n, r, &ms)?
        }
        "thm-5.4" => h_tables(ws, n, 2, p.samples.unwrap_or(20), seed)?.0,
        "thm-5.5" => h_tables(ws, n, 2, p.samples.unwrap_or(20), seed)?.1,
        "thm-6.3" => canonical_product(ws, n, r)?,
        "zeta" => zeta(ws, &[n], p.r.unwrap_or(4), 3)?,
        "hall-assoc" => hall_assoc(ws, n, 4)?,
        "hall-interpolation" => hall_interpolation(ws, n, 4)?,
        "hall-examples" => hall_examples(ws)?,
        "involutions" => involutions(ws, n, p.r.unwrap_or(3), p.samples.unwrap_or(100), seed)?,
        other => return Err(VerifyError::UnknownCheck(other.to_string())),
    };
    Ok(report)
}

/// Elements of the affine Weyl group `W_r` of length at most `max_len`, in
/// order of length.
pub fn weyl_ball(r: usize, max_len: usize) -> Vec<AffPerm> {
    let mut layer = vec![AffPerm::identity(r)];
    let mut out = layer.clone();
    for len in 1..=max_len {
        let next: BTreeSet<AffPerm> = layer
            .iter()
            .flat_map(|w| (1..=r).map(move |i| w.mul_s_right(i)))
            .filter(|w| w.length() == len)
            .collect();
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `bar(C'_w) = C'_w` for `w ∈ W_r` with `ℓ(w) <= max_len`.
pub fn cprime_bar(ws: &Workspace, r: usize, max_len: usize) -> Report {
    let mut rep = Report::new("cprime-bar", json!({ "r": r, "max_length": max_len }));
    for w in weyl_ball(r, max_len) {
        let c = cprime(&w, ws.kl());
        let b = c.t_bar();
        rep.expect(b == c, &w, || format!("bar(C') - C' = {}", b.sub(&c)));
    }
    rep
}

/// `P_{w,w} = 1`, `P_{y,w}(0) = 1` and `deg P_{y,w} <= (ℓ(w) - ℓ(y) - 1) / 2`
/// for `y < w`, over `w ∈ W_r` with `ℓ(w) <= max_len`.
pub fn kl_basics(ws: &Workspace, r: usize, max_len: usize) -> Report {
    let mut rep = Report::new("kl-basics", json!({ "r": r, "max_length": max_len }));
    for w in weyl_ball(r, max_len) {
        let col = ws.kl().column(&w);
        let mut ys: Vec<_> = col.entries.iter().collect();
        ys.sort_by(|a, b| a.0.cmp(b.0));
        for (y, e) in ys {
            let case = format!("P({y}, {w})");
            if *y == w {
                rep.expect(e.poly == crate::laurent::IntPoly::one(), &case, || {
                    format!("P = {}", e.poly)
                });
                continue;
            }
            let bound_ok = e.length < col.length
                && e.poly
                    .degree()
                    .is_some_and(|d| 2 * d < col.length - e.length);
            rep.expect(bound_ok && e.poly.coeff(0) == 1.into(), &case, || {
                format!("P = {}, lengths {} and {}", e.poly, e.length, col.length)
            });
        }
    }
    rep
}

/// The window basis of `𝒮_Δ(n, r)`.
fn basis(alg: &SchurAlgebra) -> Vec<AffMatrix> {
    alg.window_basis()
}

/// `C'_{d⁺} = Σ_{y <= d} v^{ℓ(y⁺) - ℓ(d⁺)} P_{y⁺,d⁺} T̃_{𝔖_λ y 𝔖_μ}` in the
/// `T` basis, over distinguished `y`, for every basis matrix of `𝒮_Δ(n, r)`.
pub fn cprime_expansion(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("lemma-3.1", json!({ "n": n, "r": r }));
    for a in basis(&alg) {
        let Some(ca) = rep.attempt(&a, alg.coset_data(&a)) else {
            continue;
        };
        let lhs = cprime(&ca.plus, ws.kl());
        let top = ca.plus.length() as i64;
        let mut rhs = HeckeElt::zero(r);
        for y in lower_interval(&ca.d) {
            if !is_distinguished(&ca.lambda, &y, &ca.mu) {
                continue;
            }
            let plus = double_coset_max(&ca.lambda, &y, &ca.mu);
            let p = ws.kl().kl_poly(&plus, &ca.plus).to_laurent();
            let Some(sum) = rep.attempt(&a, double_coset_sum(&ca.lambda, &y, &ca.mu)) else {
                continue;
            };
            rhs.add_scaled(&p.shift(-top), &sum);
        }
        rep.expect(lhs == rhs, &a, || format!("difference {}", lhs.sub(&rhs)));
    }
    Ok(rep)
}

/// Basis matrices grouped by row sums.
fn by_row_sums(mats: &[AffMatrix]) -> BTreeMap<Vec<i64>, Vec<AffMatrix>> {
    let mut out: BTreeMap<Vec<i64>, Vec<AffMatrix>> = BTreeMap::new();
    for a in mats {
        out.entry(a.ro()).or_default().push(a.clone());
    }
    out
}

fn assoc_case(rep: &mut Report, alg: &SchurAlgebra, a: &AffMatrix, b: &AffMatrix, c: &AffMatrix) {
    let case = format!("({a}, {b}, {c}) at r = {}", alg.r());
    let (ea, eb, ec) = (SchurElt::basis(a), SchurElt::basis(b), SchurElt::basis(c));
    let left = alg.mult(&ea, &eb).and_then(|ab| alg.mult(&ab, &ec));
    let right = alg.mult(&eb, &ec).and_then(|bc| alg.mult(&ea, &bc));
    let (Some(left), Some(right)) = (rep.attempt(&case, left), rep.attempt(&case, right)) else {
        return;
    };
    rep.expect(left == right, &case, || {
        format!("(AB)C - A(BC) = {}", left.sub(&right))
    });
}

/// Associativity on every composable triple of basis matrices of `𝒮_Δ(n, r)`.
pub fn e_assoc_all(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("e-assoc", json!({ "n": n, "r": r, "triples": "all" }));
    let mats = basis(&alg);
    let rows = by_row_sums(&mats);
    let empty = Vec::new();
    for a in &mats {
        for b in rows.get(&a.co()).unwrap_or(&empty) {
            for c in rows.get(&b.co()).unwrap_or(&empty) {
                assoc_case(&mut rep, &alg, a, b, c);
            }
        }
    }
    Ok(rep)
}

/// Associativity on `count` random composable triples, spread evenly over
/// the given `(n, r)`.
pub fn e_assoc_random(
    ws: &Workspace,
    sizes: &[(usize, usize)],
    count: usize,
    seed: u64,
) -> Result<Report, VerifyError> {
    let mut rep = Report::new(
        "e-assoc",
        json!({ "sizes": sizes, "triples": count, "seed": seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (idx, &(n, r)) in sizes.iter().enumerate() {
        let alg = ws.algebra(n, r)?;
        let mats = basis(&alg);
        let rows = by_row_sums(&mats);
        let share = count / sizes.len() + usize::from(idx < count % sizes.len());
        for _ in 0..share {
            let a = mats.choose(&mut rng).expect("basis is nonempty");
            let b = rows[&a.co()]
                .choose(&mut rng)
                .expect("diag(co(A)) is a basis matrix");
            let c = rows[&b.co()]
                .choose(&mut rng)
                .expect("diag(co(B)) is a basis matrix");
            assoc_case(&mut rep, &alg, a, b, c);
        }
    }
    Ok(rep)
}

/// Every `ν_{A,B,C}` of `𝒮_Δ(n, r)` evaluates to a nonnegative integer at
/// `v^2 = q` for `q = 2, ..., 5`.
pub fn nu_eval(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("nu-eval", json!({ "n": n, "r": r, "q": [2, 3, 4, 5] }));
    let mats = basis(&alg);
    let rows = by_row_sums(&mats);
    for a in &mats {
        for b in rows.get(&a.co()).into_iter().flatten() {
            let case = format!("e_{a} e_{b}");
            let Some(table) = rep.attempt(&case, alg.e_product(a, b)) else {
                continue;
            };
            for (c, nu) in table.iter() {
                let ok = (2..=5).all(|q| nu.eval_at_q(q).is_some_and(|x| x >= 0.into()));
                rep.expect(ok, format!("{case} at {c}"), || format!("ν = {nu}"));
            }
        }
    }
    Ok(rep)
}

/// Bar invariance, the triangularity condition and agreement with
/// elimination for every `θ_{A,r}` of the window basis.
pub fn canonical(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("canonical", json!({ "n": n, "r": r }));
    for a in basis(&alg) {
        let Some(theta) = rep.attempt(&a, alg.theta(&a)) else {
            continue;
        };
        if let Some(b) = rep.attempt(&a, alg.bar(&theta)) {
            rep.expect(b == *theta, format!("bar θ_{a}"), || {
                format!("bar(θ) - θ = {}", b.sub(&theta))
            });
        }
        let bad: Vec<String> = theta
            .terms()
            .filter(|(b, c)| {
                if *b == &a {
                    !c.is_one()
                } else {
                    !(AffMatrix::sqsubseteq(b, &a) && c.in_negative_part())
                }
            })
            .map(|(b, c)| format!("{c}·[{b}]"))
            .collect();
        rep.expect(
            bad.is_empty() && theta.coeff(&a).is_one(),
            format!("triangularity of θ_{a}"),
            || format!("offending terms {}", bad.join(", ")),
        );
        if let Some(e) = rep.attempt(&a, theta_by_elimination(&alg, &a)) {
            rep.expect(e == *theta, format!("elimination θ_{a}"), || {
                format!("closed form {theta}, elimination {e}")
            });
        }
    }
    Ok(rep)
}

/// `θ_{A,2} = [A] + v^-1 [diag(1,1)]` for `A = E_{1,2} + E_{2,1}`, `n = 2`.
pub fn canonical_example(ws: &Workspace) -> Result<Report, VerifyError> {
    let alg = ws.algebra(2, 2)?;
    let mut rep = Report::new("canonical-example", json!({ "n": 2, "r": 2 }));
    let a = AffMatrix::new(2, [(1, 2, 1), (2, 1, 1)]).expect("valid matrix");
    let want = SchurElt::basis(&a).add(&SchurElt::monomial(
        AffMatrix::diag(&[1, 1]),
        LaurentPoly::v_pow(-1),
    ));
    let got = alg.theta(&a)?;
    rep.expect(*got == want, &a, || format!("θ = {got}"));
    Ok(rep)
}

/// Basis matrices grouped by `(ro, co)`.
fn by_weights(mats: &[AffMatrix]) -> BTreeMap<(Vec<i64>, Vec<i64>), Vec<AffMatrix>> {
    let mut out: BTreeMap<_, Vec<AffMatrix>> = BTreeMap::new();
    for a in mats {
        out.entry((a.ro(), a.co())).or_default().push(a.clone());
    }
    out
}

/// `B <=^{Bo} A` implies `B ⊑ A`, strictly when `B != A`.
pub fn bo_order_refines(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("lemma-3.6", json!({ "n": n, "r": r }));
    for group in by_weights(&basis(&alg)).values() {
        for a in group {
            for b in group {
                let case = format!("B = {b}, A = {a}");
                let Some(le) = rep.attempt(&case, alg.leq_bo(b, a)) else {
                    continue;
                };
                let ok = !le
                    || (AffMatrix::sqsubseteq(b, a) && (a == b || !AffMatrix::sqsubseteq(a, b)));
                rep.expect(ok, &case, || "B <=^Bo A but not B ⊑ A".to_string());
            }
        }
    }
    Ok(rep)
}

/// `ℓ(y_A⁺) = d_A + ℓ(w_{0,co(A)})`.
pub fn longest_element_length(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("lemma-3.7", json!({ "n": n, "r": r }));
    for a in basis(&alg) {
        let Some(ca) = rep.attempt(&a, alg.coset_data(&a)) else {
            continue;
        };
        let lhs = ca.plus.length() as i64;
        let rhs = a.d_exponent() + ca.mu.longest_length() as i64;
        rep.expect(lhs == rhs, &a, || {
            format!("ℓ(y⁺) = {lhs}, d_A + ℓ(w_0) = {rhs}")
        });
    }
    Ok(rep)
}

/// The closed form of `θ_{A,r}` agrees with elimination, and its image of
/// `x_μ` in the Hecke algebra is `v^{ℓ(w_{0,μ})} C'_{y_A⁺}`.
pub fn theta_closed_form(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("prop-3.8", json!({ "n": n, "r": r }));
    for a in basis(&alg) {
        let (Some(theta), Some(ca)) = (
            rep.attempt(&a, alg.theta(&a)),
            rep.attempt(&a, alg.coset_data(&a)),
        ) else {
            continue;
        };
        if let Some(e) = rep.attempt(&a, theta_by_elimination(&alg, &a)) {
            rep.expect(e == *theta, format!("elimination θ_{a}"), || {
                format!("closed form {theta}, elimination {e}")
            });
        }
        // [B] sends x_μ to v^{-d_B} T_{𝔖_λ y_B 𝔖_μ}
        let mut image = HeckeElt::zero(r);
        for (b, c) in theta.terms() {
            let Some(cb) = rep.attempt(b, alg.coset_data(b)) else {
                continue;
            };
            image.add_scaled(&c.shift(-b.d_exponent()), &cb.t_sum);
        }
        let want =
            cprime(&ca.plus, ws.kl()).scale(&LaurentPoly::v_pow(ca.mu.longest_length() as i64));
        rep.expect(image == want, format!("θ_{a}(x_μ)"), || {
            format!("difference {}", image.sub(&want))
        });
    }
    Ok(rep)
}

fn nonneg_table_case(
    rep: &mut Report,
    case: impl Display,
    entries: &BTreeMap<AffMatrix, LaurentPoly>,
    shape: Vec<String>,
) {
    let neg: Vec<String> = entries
        .iter()
        .filter(|(_, c)| !c.is_nonneg())
        .map(|(k, c)| format!("{k}: {c}"))
        .collect();
    rep.expect(neg.is_empty() && shape.is_empty(), case, || {
        format!(
            "negative entries [{}]; shape [{}]",
            neg.join("; "),
            shape.join("; ")
        )
    });
}

/// `𝔤_{A,B,C,r} ∈ N[v, v^-1]` for all composable basis pairs.
pub fn g_positivity(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("cor-4.9", json!({ "n": n, "r": r }));
    let mats = basis(&alg);
    let rows = by_row_sums(&mats);
    for a in &mats {
        for b in rows.get(&a.co()).into_iter().flatten() {
            let case = format!("θ_{a} θ_{b}");
            if let Some(t) = rep.attempt(&case, g_table(ws, a, b, r)) {
                let shape = t.invariant_violations();
                nonneg_table_case(&mut rep, &case, &t.entries, shape);
            }
        }
    }
    Ok(rep)
}

/// Composable pairs of the window bases at the given levels, sampled.
fn sample_pairs(
    ws: &Workspace,
    n: usize,
    rs: &[usize],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(AffMatrix, AffMatrix, usize)>, VerifyError> {
    let mut all = Vec::new();
    for &r in rs {
        let mats = basis(&*ws.algebra(n, r)?);
        let rows = by_row_sums(&mats);
        for a in &mats {
            for b in rows.get(&a.co()).into_iter().flatten() {
                all.push((a.clone(), b.clone(), r));
            }
        }
    }
    if all.len() <= count {
        return Ok(all);
    }
    let mut picked: Vec<_> = all.choose_multiple(rng, count).cloned().collect();
    picked.sort();
    Ok(picked)
}

/// Both parts of the shift-and-embed comparison on sampled composable pairs:
/// the reindexed `g` tables agree for each `k`, and at the scanned `k0` the
/// `g` constants equal `f` constants of the shifted triple.
pub fn shift_embed_transfer(
    ws: &Workspace,
    n: usize,
    rs: &[usize],
    ks: &[i64],
    big_n: usize,
    samples: usize,
    seed: u64,
) -> Result<Report, VerifyError> {
    let mut rep = Report::new(
        "thm-4.8",
        json!({ "n": n, "r": rs, "k": ks, "N": big_n, "samples": samples, "seed": seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (a, b, r) in sample_pairs(ws, n, rs, samples, &mut rng)? {
        for &k in ks {
            let case = format!("(1) A = {a}, B = {b}, r = {r}, k = {k}");
            if let Some(d) = rep.attempt(&case, shift_embed_compare(ws, &a, &b, r, k, big_n)) {
                rep.expect(d.is_empty(), &case, || {
                    serde_json::to_string(&d).expect("discrepancies serialize")
                });
            }
        }
        let case = format!("(2) A = {a}, B = {b}, r = {r}");
        match rep.attempt(&case, shift_embed_k0(ws, &a, &b, r, big_n)) {
            Some(Some(s)) => rep.expect(s.discrepancies.is_empty(), &case, || {
                serde_json::to_string(&s).expect("shift report serializes")
            }),
            Some(None) => rep.fail(&case, "pair is not composable"),
            None => {}
        }
    }
    Ok(rep)
}

/// `f` tables of `(A, B)` and `(Ã, B̃)` over all `A, B ∈ Θ⁺_Δ(n)` with
/// `σ <= max_sigma` (entries within the window span).
///
/// Returns the equality report and the positivity report; positivity is
/// checked on the tables of both sides.
pub fn f_transfer(
    ws: &Workspace,
    n: usize,
    max_sigma: i64,
    big_n: usize,
) -> Result<(Report, Report), VerifyError> {
    let params = json!({ "n": n, "max_sigma": max_sigma, "N": big_n });
    let mut eq = Report::new("thm-4.10", params.clone());
    let mut pos = Report::new("cor-4.11", params);
    let mut mats = Vec::new();
    for s in 0..=max_sigma {
        mats.extend(AffMatrix::enumerate_theta_plus(n, s, WINDOW_SPAN));
    }
    for a in &mats {
        for b in &mats {
            let case = format!("A = {a}, B = {b}");
            let lambda = complete_lambda(a, b);
            let Some((small, big, diffs)) =
                eq.attempt(&case, embedding_compare(ws, a, b, &lambda, big_n))
            else {
                continue;
            };
            eq.expect(diffs.is_empty(), &case, || {
                serde_json::to_string(&diffs).expect("discrepancies serialize")
            });
            for (label, t) in [(&case, &small), (&format!("Ã, B̃ for {case}"), &big)] {
                let shape = t.invariant_violations();
                nonneg_table_case(&mut pos, label, &t.entries, shape);
            }
        }
    }
    Ok((eq, pos))
}

/// `θ_{A,r} · θ_{η_m(diag μ),r} = θ_{η_m(A),r} = θ_{η_m(diag λ),r} · θ_{A,r}`.
pub fn diagonal_shift(
    ws: &Workspace,
    n: usize,
    r: usize,
    ms: &[i64],
) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("lemma-4.6", json!({ "n": n, "r": r, "m": ms }));
    for a in basis(&alg) {
        for &m in ms {
            let case = format!("A = {a}, m = {m}");
            let right = AffMatrix::diag(&a.co()).eta(m);
            let left = AffMatrix::diag(&a.ro()).eta(m);
            let sides = (|| -> Result<_, SchurError> {
                let ta = alg.theta(&a)?;
                Ok((
                    alg.mult(&ta, &*alg.theta(&right)?)?,
                    (*alg.theta(&a.eta(m))?).clone(),
                    alg.mult(&*alg.theta(&left)?, &ta)?,
                ))
            })();
            if let Some((x, y, z)) = rep.attempt(&case, sides) {
                rep.expect(x == y && y == z, &case, || {
                    format!("right product {x}, shifted θ {y}, left product {z}")
                });
            }
        }
    }
    Ok(rep)
}

/// Stripped aperiodic matrices in `Θ_Δ(n)` with `σ <= max_sigma`.
pub fn stripped_aperiodic(n: usize, max_sigma: i64) -> Vec<AffMatrix> {
    (0..=max_sigma)
        .flat_map(|s| AffMatrix::enumerate_theta(n, s, WINDOW_SPAN))
        .filter(|a| a.is_aperiodic() && a.strip_e().1 == 0)
        .collect()
}

/// `h` tables on sampled pairs of stripped aperiodic matrices whose `σ`
/// agree mod `n`. Stabilization between `r_0` and `r_0 + n` and the key shape
/// form the first report, positivity the second.
pub fn h_tables(
    ws: &Workspace,
    n: usize,
    max_sigma: i64,
    samples: usize,
    seed: u64,
) -> Result<(Report, Report), VerifyError> {
    let params = json!({ "n": n, "max_sigma": max_sigma, "samples": samples, "seed": seed });
    let mut stab = Report::new("thm-5.4", params.clone());
    let mut pos = Report::new("thm-5.5", params);
    let mats = stripped_aperiodic(n, max_sigma);
    let mut pairs = Vec::new();
    for a in &mats {
        for b in &mats {
            if (a.sigma() - b.sigma()).rem_euclid(n as i64) == 0 {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<_> = if pairs.len() <= samples {
        pairs
    } else {
        pairs.choose_multiple(&mut rng, samples).cloned().collect()
    };
    picked.sort();
    for (a, b) in picked {
        let case = format!("A = {a}, B = {b}");
        let Some(t) = stab.attempt(&case, h_constants(ws, &a, &b)) else {
            continue;
        };
        let shape = t.invariant_violations();
        stab.expect(shape.is_empty() && t.r.is_some(), &case, || {
            shape.join("; ")
        });
        nonneg_table_case(&mut pos, &case, &t.entries, Vec::new());
    }
    Ok((stab, pos))
}

/// For `σ(A) = σ(B) = r`: `θ_{A,r} θ_{B,r}` equals `Σ_C 𝔤_{A,B,C,r} θ_{C,r}`
/// with nonnegative coefficients.
pub fn canonical_product(ws: &Workspace, n: usize, r: usize) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new("thm-6.3", json!({ "n": n, "r": r }));
    let mats = basis(&alg);
    for a in &mats {
        for b in &mats {
            let case = format!("θ_{a} θ_{b}");
            let computed = (|| -> Result<_, TransferError> {
                let t = g_table(ws, a, b, r)?;
                let prod = alg.mult(&*alg.theta(a)?, &*alg.theta(b)?)?;
                let mut sum = SchurElt::zero(n, r);
                for (c, g) in &t.entries {
                    sum.add_scaled(g, &*alg.theta(c)?);
                }
                Ok((t, prod, sum))
            })();
            let Some((t, prod, sum)) = rep.attempt(&case, computed) else {
                continue;
            };
            rep.expect(prod == sum, format!("{case} expansion"), || {
                format!("product minus expansion {}", prod.sub(&sum))
            });
            nonneg_table_case(&mut rep, &case, &t.entries, Vec::new());
        }
    }
    Ok(rep)
}

/// Nonzero modules of `Δ(n)` with total dimension at most `max_dim`.
pub fn modules_up_to(n: usize, max_dim: usize) -> Vec<SegmentRep> {
    fn dims(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            dims(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut vecs = Vec::new();
    dims(n, max_dim as i64, &mut Vec::new(), &mut vecs);
    let mut out: Vec<SegmentRep> = vecs
        .iter()
        .filter(|d| d.iter().any(|&x| x > 0))
        .flat_map(|d| SegmentRep::all_with_dim(n, d))
        .collect();
    out.sort();
    out
}

/// `ζ_r(ũ_A) ζ_r(ũ_B) = ζ_r(ũ_A ũ_B)` for all pairs with
/// `σ(A) + σ(B) <= max_sigma_sum` and levels `2..=max_r`.
pub fn zeta(
    ws: &Workspace,
    ns: &[usize],
    max_r: usize,
    max_sigma_sum: usize,
) -> Result<Report, VerifyError> {
    let mut rep = Report::new(
        "zeta",
        json!({ "n": ns, "max_r": max_r, "max_sigma_sum": max_sigma_sum }),
    );
    for &n in ns {
        let mut mods = vec![SegmentRep::zero(n)];
        mods.extend(
            modules_up_to(n, max_sigma_sum)
                .into_iter()
                .filter(|m| m.segments().iter().map(|s| s.1).sum::<usize>() <= max_sigma_sum),
        );
        // σ(A) counts segments with multiplicity
        let sigma = |m: &SegmentRep| m.segments().len();
        for r in 2..=max_r {
            let alg = ws.algebra(n, r)?;
            for a in &mods {
                for b in &mods {
                    if sigma(a) + sigma(b) > max_sigma_sum {
                        continue;
                    }
                    let case = format!("A = {a:?}, B = {b:?}, n = {n}, r = {r}");
                    if let Some((l, rt)) = rep.attempt(&case, ws.hall().zeta_sides(&alg, a, b)) {
                        rep.expect(l == rt, &case, || format!("lhs {l}, rhs {rt}"));
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn utilde_mult(
    ws: &Workspace,
    x: &BTreeMap<SegmentRep, LaurentPoly>,
    y: &BTreeMap<SegmentRep, LaurentPoly>,
) -> Result<BTreeMap<SegmentRep, LaurentPoly>, HallError> {
    let mut out: BTreeMap<SegmentRep, LaurentPoly> = BTreeMap::new();
    for (a, p) in x {
        for (b, q) in y {
            for (c, coef) in ws.hall().mult_utilde(a, b)? {
                let e = out.entry(c).or_default();
                e.add_mul(&(p * q), &coef);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `(ũ_A ũ_B) ũ_C = ũ_A (ũ_B ũ_C)` over nonzero modules with total
/// dimension at most `max_dim`.
pub fn hall_assoc(ws: &Workspace, n: usize, max_dim: usize) -> Result<Report, VerifyError> {
    let mut rep = Report::new("hall-assoc", json!({ "n": n, "max_total_dim": max_dim }));
    let mods = modules_up_to(n, max_dim);
    let single = |m: &SegmentRep| BTreeMap::from([(m.clone(), LaurentPoly::one())]);
    for a in &mods {
        for b in &mods {
            for c in &mods {
                if a.total_dim() + b.total_dim() + c.total_dim() > max_dim {
                    continue;
                }
                let case = format!("({a:?}, {b:?}, {c:?})");
                let sides = (|| -> Result<_, HallError> {
                    let ab = utilde_mult(ws, &single(a), &single(b))?;
                    let bc = utilde_mult(ws, &single(b), &single(c))?;
                    Ok((
                        utilde_mult(ws, &ab, &single(c))?,
                        utilde_mult(ws, &single(a), &bc)?,
                    ))
                })();
                if let Some((l, r)) = rep.attempt(&case, sides) {
                    rep.expect(l == r, &case, || format!("{l:?} vs {r:?}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Every interpolated Hall polynomial reproduces the submodule counts at all
/// prime powers it was sampled at and at the next one.
pub fn hall_interpolation(ws: &Workspace, n: usize, max_dim: usize) -> Result<Report, VerifyError> {
    let mut rep = Report::new(
        "hall-interpolation",
        json!({ "n": n, "max_total_dim": max_dim }),
    );
    let mods = modules_up_to(n, max_dim);
    for c in &mods {
        for a in &mods {
            for b in &mods {
                if a.total_dim() + b.total_dim() != c.total_dim() {
                    continue;
                }
                let sum: Vec<i64> = a
                    .dim_vector()
                    .iter()
                    .zip(b.dim_vector())
                    .map(|(x, y)| x + y)
                    .collect();
                if c.dim_vector() != sum {
                    continue;
                }
                let case = format!("φ^{c:?}_({a:?}, {b:?})");
                let Some(phi) = rep.attempt(&case, ws.hall().poly(a, b, c)) else {
                    continue;
                };
                let bound: i64 = a
                    .dim_vector()
                    .iter()
                    .zip(b.dim_vector())
                    .map(|(x, y)| x * y)
                    .sum();
                for q in crate::hall::field::prime_powers().take(bound as usize + 3) {
                    let qc = format!("{case} at q = {q}");
                    if let Some(count) = rep.attempt(&qc, ws.hall().count(c, a, b, q)) {
                        let want = phi.eval_i64(q as i64);
                        rep.expect(want == count.into(), &qc, || {
                            format!("count {count}, polynomial {phi} gives {want}")
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `φ^{S_1 ⊕ S_1}_{S_1, S_1} = q + 1` and
/// `f_{E_{1,2}, E_{1,2}, 2E_{1,2}} = v + v^-1` at `n = 2`.
pub fn hall_examples(ws: &Workspace) -> Result<Report, VerifyError> {
    let mut rep = Report::new("hall-examples", json!({ "n": 2 }));
    let s1 = SegmentRep::simple(2, 1);
    let s11 = SegmentRep::new(2, vec![(1, 1), (1, 1)])?;
    let phi = ws.hall().poly(&s1, &s1, &s11)?;
    rep.expect(
        phi == crate::laurent::IntPoly::from_i64s(&[1, 1]),
        "φ^{S1+S1}_(S1, S1)",
        || format!("φ = {phi}"),
    );
    let e12 = AffMatrix::unit(2, 1, 2);
    let f = f_constants(ws, &e12, &e12)?;
    let want = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    rep.expect(
        f.len() == 1 && f.get(&e12.add(&e12)) == want,
        "f(E12, E12)",
        || serde_json::to_string(&f).expect("tables serialize"),
    );
    Ok(rep)
}

fn random_elt(rng: &mut ChaCha8Rng, n: usize, r: usize, from: &[AffMatrix]) -> SchurElt {
    let mut x = SchurElt::zero(n, r);
    for _ in 0..rng.gen_range(1..=2) {
        let a = from.choose(rng).expect("nonempty").clone();
        let c = LaurentPoly::monomial(rng.gen_range(-2i64..=2), rng.gen_range(-2..=2));
        x.add_term(a, &c);
    }
    x
}

/// `τ_r(xy) = τ_r(y) τ_r(x)` and `bar(xy) = bar(x) bar(y)` on random pairs.
pub fn involutions(
    ws: &Workspace,
    n: usize,
    r: usize,
    count: usize,
    seed: u64,
) -> Result<Report, VerifyError> {
    let alg = ws.algebra(n, r)?;
    let mut rep = Report::new(
        "involutions",
        json!({ "n": n, "r": r, "products": count, "seed": seed }),
    );
    let mats = basis(&alg);
    let rows = by_row_sums(&mats);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let a = mats.choose(&mut rng).expect("nonempty").clone();
        let x = random_elt(&mut rng, n, r, std::slice::from_ref(&a));
        let y = random_elt(&mut rng, n, r, &rows[&a.co()]);
        let case = format!("#{i}: x = {x}, y = {y}");
        let sides = (|| -> Result<_, SchurError> {
            let xy = alg.mult(&x, &y)?;
            Ok((
                xy.tau(),
                alg.mult(&y.tau(), &x.tau())?,
                alg.bar(&xy)?,
                alg.mult(&alg.bar(&x)?, &alg.bar(&y)?)?,
                alg.bar(&alg.bar(&x)?)?,
            ))
        })();
        let Some((t1, t2, b1, b2, bb)) = rep.attempt(&case, sides) else {
            continue;
        };
        rep.expect(t1 == t2 && x.tau().tau() == x, format!("τ {case}"), || {
            format!("τ(xy) = {t1}, τ(y)τ(x) = {t2}")
        });
        rep.expect(b1 == b2 && bb == x, format!("bar {case}"), || {
            format!("bar(xy) = {b1}, bar(x)bar(y) = {b2}, bar(bar(x)) = {bb}")
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_ball_sizes() {
        // affine A_1: two elements of each positive length
        assert_eq!(weyl_ball(2, 4).len(), 9);
        // affine A_2: 1, 3, 6, 9 elements of length 0..=3
        assert_eq!(weyl_ball(3, 3).len(), 19);
    }

    #[test]
    fn small_checks_pass() {
        let ws = Workspace::default();
        for rep in [
            cprime_bar(&ws, 2, 4),
            kl_basics(&ws, 3, 3),
            cprime_expansion(&ws, 2, 2).unwrap(),
            canonical(&ws, 2, 2).unwrap(),
            canonical_example(&ws).unwrap(),
            bo_order_refines(&ws, 2, 2).unwrap(),
            longest_element_length(&ws, 2, 2).unwrap(),
            theta_closed_form(&ws, 2, 2).unwrap(),
            g_positivity(&ws, 2, 2).unwrap(),
            diagonal_shift(&ws, 2, 2, &[-1, 1]).unwrap(),
            canonical_product(&ws, 2, 2).unwrap(),
            hall_examples(&ws).unwrap(),
        ] {
            assert!(
                rep.passed,
                "{}",
                serde_json::to_string_pretty(&rep).unwrap()
            );
            assert!(rep.cases > 0, "{} ran no cases", rep.check);
        }
    }

    #[test]
    fn violations_are_recorded() {
        let mut rep = Report::new("demo", json!({ "n": 2 }));
        rep.expect(true, "ok", || unreachable!());
        rep.expect(false, "bad", || "detail".to_string());
        let _: Option<()> = rep.attempt("err", Err::<(), _>("boom"));
        assert!(!rep.passed);
        assert_eq!(rep.cases, 3);
        assert_eq!(rep.violations[1].detail, "error: boom");
    }

    #[test]
    fn run_dispatches_and_rejects() {
        let ws = Workspace::default();
        let rep = run(&ws, "lemma-3.7", &Params::default()).unwrap();
        assert!(rep.passed);
        assert!(matches!(
            run(&ws, "thm-9.9", &Params::default()),
            Err(VerifyError::UnknownCheck(_))
        ));
        let p = Params {
            k: Some(1),
            ..Params::default()
        };
        assert!(matches!(
            run(&ws, "zeta", &p),
            Err(VerifyError::BadParam { .. })
        ));
        assert!(matches!(
            run(&ws, "lemma-4.6", &p),
            Err(VerifyError::BadParam { .. })
        ));
        let m = Params {
            m: Some(-1),
            ..Params::default()
        };
        assert!(run(&ws, "lemma-4.6", &m).unwrap().passed);
    }
}
