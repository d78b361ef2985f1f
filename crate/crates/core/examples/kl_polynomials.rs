//! Kazhdan–Lusztig polynomials of the extended affine symmetric group.
//!
//! Prints `P_{y,w}` for every `y ≤ w` below one element of length 5 in the
//! affine group of rank 3, and the expansion of `C'_w` in the `T` basis.

use affschur::affweyl::lower_interval;
use affschur::hecke::{cprime, KlCache};
use affschur::AffPerm;

fn main() {
    let kl = KlCache::new();
    let w = AffPerm::from_word(3, &[1, 2, 3, 1, 2]);
    println!("w = {w}, length {}", w.length());
    for y in lower_interval(&w) {
        let p = kl.kl_poly(&y, &w);
        if p != affschur::IntPoly::one() {
            println!("  P[{y}, w] = {p}");
        }
    }
    println!("C'_w = {}", cprime(&w, &kl));
}
