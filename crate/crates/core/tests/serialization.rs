//! JSON round trips, input validation and the on-disk KL cache.

use std::sync::Arc;

use affschur::hecke::{cprime, KlCache};
use affschur::schur::SchurElt;
use affschur::transfer::{g_table, StructTable};
use affschur::verify::{self, Report};
use affschur::workspace::{Caps, Workspace};
use affschur::{AffMatrix, AffPerm, Composition, IntPoly, LaurentPoly};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

fn round_trip<T>(x: &T) -> T
where
    T: Serialize + DeserializeOwned,
{
    let text = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(
        serde_json::to_string(&back).unwrap(),
        text,
        "unstable encoding"
    );
    back
}

fn mat(n: usize, e: &[(i64, i64, i64)]) -> AffMatrix {
    AffMatrix::new(n, e.iter().copied()).unwrap()
}

#[test]
fn polynomials() {
    let p = LaurentPoly::from_terms([(-3, 2), (0, -1), (5, 7)]);
    assert_eq!(round_trip(&p), p);
    assert_eq!(
        serde_json::to_value(&p).unwrap(),
        json!([[-3, "2"], [0, "-1"], [5, "7"]])
    );
    let big: LaurentPoly =
        serde_json::from_value(json!([[1, "123456789012345678901234567890"]])).unwrap();
    assert_eq!(round_trip(&big), big);
    let q = IntPoly::from_i64s(&[1, 0, 3]);
    assert_eq!(round_trip(&q), q);
    assert_eq!(serde_json::to_value(&q).unwrap(), json!(["1", "0", "3"]));
    assert!(serde_json::from_value::<LaurentPoly>(json!([[0, "x"]])).is_err());
    assert!(serde_json::from_value::<IntPoly>(json!(["1.5"])).is_err());
}

#[test]
fn permutations_and_compositions() {
    let w = AffPerm::from_word(3, &[1, 3, 2]).mul(&AffPerm::rho_pow(3, 2));
    assert_eq!(round_trip(&w), w);
    let c = Composition::new(vec![2, 0, 1]);
    assert_eq!(round_trip(&c), c);
    assert!(serde_json::from_value::<AffPerm>(json!({"r": 3, "window": [1, 1, 4]})).is_err());
    assert!(serde_json::from_value::<AffPerm>(json!({"r": 2, "window": [2, 1, 3]})).is_err());
    assert!(serde_json::from_value::<Composition>(json!({"n": 3, "parts": [1, 2]})).is_err());
}

#[test]
fn matrices() {
    let a = mat(3, &[(1, 2, 1), (2, 7, 3), (3, 1, 2)]);
    assert_eq!(round_trip(&a), a);
    let parsed: AffMatrix =
        serde_json::from_value(json!({"n": 2, "entries": [[2, 1, 1], [1, 2, 1]]})).unwrap();
    assert_eq!(parsed, mat(2, &[(1, 2, 1), (2, 1, 1)]));
    assert!(serde_json::from_value::<AffMatrix>(json!({"n": 2, "entries": [[3, 1, 1]]})).is_err());
    assert!(serde_json::from_value::<AffMatrix>(json!({"n": 2, "entries": [[1, 2, -1]]})).is_err());
}

#[test]
fn hecke_and_schur_elements() {
    let kl = KlCache::new();
    let c = cprime(&AffPerm::from_word(3, &[1, 2, 1, 3]), &kl);
    assert_eq!(round_trip(&c), c);

    let ws = Workspace::default();
    let a = mat(2, &[(1, 2, 1), (2, 1, 1)]);
    let theta = ws.algebra(2, 2).unwrap().theta(&a).unwrap();
    assert_eq!(&round_trip(&*theta), &*theta);

    let empty = SchurElt::zero(3, 4);
    assert_eq!(round_trip(&empty), empty);
    let bad_sigma =
        json!({"n": 2, "r": 3, "terms": [[{"n": 2, "entries": [[1, 2, 1]]}, [[0, "1"]]]]});
    assert!(serde_json::from_value::<SchurElt>(bad_sigma).is_err());
    assert!(serde_json::from_value::<SchurElt>(json!({"r": 3, "terms": []})).is_err());
}

#[test]
fn tables_and_reports() {
    let ws = Workspace::default();
    let a = mat(2, &[(1, 2, 1), (2, 1, 1)]);
    let t = g_table(&ws, &a, &a, 2).unwrap();
    assert!(!t.is_empty());
    assert_eq!(round_trip(&t), t);
    let again: StructTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(again, t);

    let report = verify::kl_basics(&ws, 2, 3);
    assert_eq!(round_trip(&report), report);
    let parsed: Report = serde_json::from_value(serde_json::to_value(&report).unwrap()).unwrap();
    assert!(parsed.passed);
}

#[test]
fn kl_cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.cache");

    let ws = Workspace::default();
    let a = mat(2, &[(1, 1, 1), (1, 2, 1), (2, 3, 1)]);
    let theta = ws.algebra(2, 3).unwrap().theta(&a).unwrap();
    ws.kl().save(&path).unwrap();

    let loaded = Arc::new(KlCache::load(&path).unwrap());
    assert_eq!(loaded.len(), ws.kl().len());
    let w = AffPerm::from_word(3, &[1, 2, 3, 1]);
    for y in affschur::affweyl::lower_interval(&w) {
        assert_eq!(loaded.kl_poly(&y, &w), ws.kl().kl_poly(&y, &w));
    }
    let reused = Workspace::with_cache(Caps::default(), loaded);
    assert_eq!(*reused.algebra(2, 3).unwrap().theta(&a).unwrap(), *theta);

    std::fs::write(&path, "3|[1,2,3]|[2,1,3]|1,1\n").unwrap();
    assert!(KlCache::load(&path).is_err());
}
