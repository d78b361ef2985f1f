//! The canonical basis of an affine quantum Schur algebra.
//!
//! Expands `θ_A` in the `[B]` basis and checks that it is bar invariant.

use affschur::workspace::Workspace;
use affschur::AffMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let alg = ws.algebra(3, 3)?;
    let a = AffMatrix::new(3, [(1, 2, 1), (2, 4, 1), (3, 3, 1)])?;
    let theta = alg.theta(&a)?;
    println!("theta[{a}] = {theta}");
    assert_eq!(alg.bar(&theta)?, *theta);
    println!("bar invariant: yes");
    Ok(())
}
