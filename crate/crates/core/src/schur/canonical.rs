//! Canonical basis by elimination, and structure constants in that basis.

use std::collections::BTreeMap;

use crate::affweyl::jdelta_inv;
use crate::laurent::LaurentPoly;
use crate::matrix::AffMatrix;

use super::{SchurAlgebra, SchurElt, SchurError};

/// Builds `θ_{A,r}` from `[A]` by bar-triangular elimination, without
/// Kazhdan–Lusztig polynomials.
///
/// Starting from `θ = [A]`, the discrepancy `δ = bar(θ) - θ` is repeatedly
/// cleared at a `⊑`-maximal matrix `B` of its support: there `δ_B` is
/// antisymmetric under `v -> v^-1` and adding its `v^{-1}Z[v^{-1}]` part to
/// the coefficient of `[B]` removes it.
pub fn theta_by_elimination(alg: &SchurAlgebra, a: &AffMatrix) -> Result<SchurElt, SchurError> {
    let mut theta = SchurElt::basis(a);
    alg.check(a)?;
    loop {
        let delta = alg.bar(&theta)?.sub(&theta);
        if delta.is_zero() {
            return Ok(theta);
        }
        let keys: Vec<&AffMatrix> = delta.terms().map(|(b, _)| b).collect();
        let b = keys
            .iter()
            .copied()
            .find(|b| {
                keys.iter()
                    .all(|c| *c == *b || !AffMatrix::sqsubseteq(b, c))
            })
            .expect("a finite support has a maximal element")
            .clone();
        let db = delta.coeff(&b);
        assert!(
            AffMatrix::sqsubseteq(&b, a) && b != *a,
            "bar([A]) - [A] has a term outside the strict order ideal of A"
        );
        assert_eq!(db.bar(), -&db, "leading discrepancy is not antisymmetric");
        theta.add_term(b, &db.negative_part());
    }
}

/// `θ_{A,r} θ_{B,r} = Σ_C 𝔤_{A,B,C,r} θ_{C,r}`; empty when `co(A) != ro(B)`.
pub fn g_constants(
    alg: &SchurAlgebra,
    a: &AffMatrix,
    b: &AffMatrix,
) -> Result<BTreeMap<AffMatrix, LaurentPoly>, SchurError> {
    let mut out = BTreeMap::new();
    if a.co() != b.ro() {
        alg.check(a)?;
        alg.check(b)?;
        return Ok(out);
    }
    let (ta, tb) = (alg.theta(a)?, alg.theta(b)?);
    let mut rest = alg.mult(&ta, &tb)?;
    // Every other term of θ_C sits strictly below C in the Bruhat order, so
    // peeling off the matrix with the longest y_C never reintroduces it.
    while !rest.is_zero() {
        let mut best: Option<(usize, AffMatrix)> = None;
        for (c, _) in rest.terms() {
            let len = jdelta_inv(c).map_err(SchurError::from)?.1.length();
            if best.as_ref().is_none_or(|(l, _)| len > *l) {
                best = Some((len, c.clone()));
            }
        }
        let (_, c) = best.expect("nonzero element has a term");
        let coef = rest.coeff(&c);
        let tc = alg.theta(&c)?;
        rest.add_scaled(&-&coef, &tc);
        debug_assert!(rest.coeff(&c).is_zero());
        out.insert(c, coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hecke::KlCache;

    #[test]
    fn elimination_matches_closed_form() {
        let alg = SchurAlgebra::new(2, 2, Arc::new(KlCache::new())).unwrap();
        for a in alg.window_basis() {
            assert_eq!(
                theta_by_elimination(&alg, &a).unwrap(),
                *alg.theta(&a).unwrap(),
                "{a}"
            );
        }
    }

    #[test]
    fn g_constant_examples() {
        let alg = SchurAlgebra::new(2, 2, Arc::new(KlCache::new())).unwrap();
        let a = AffMatrix::new(2, [(1, 2, 1), (2, 1, 1)]).unwrap();
        let g = g_constants(&alg, &a, &a).unwrap();
        let expect: BTreeMap<_, _> =
            [(a.clone(), LaurentPoly::from_terms([(1, 1), (-1, 1)]))].into();
        assert_eq!(g, expect);
        let d = AffMatrix::diag(&[1, 1]);
        let g = g_constants(&alg, &d, &a).unwrap();
        assert_eq!(g, [(a.clone(), LaurentPoly::one())].into());
        assert!(g_constants(&alg, &AffMatrix::diag(&[2, 0]), &a)
            .unwrap()
            .is_empty());
    }
}
