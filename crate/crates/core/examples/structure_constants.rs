//! Multiplication in the `[A]` basis and the canonical-basis structure
//! constants `g_{A,B,C}`.

use affschur::schur::SchurElt;
use affschur::transfer::g_table;
use affschur::workspace::Workspace;
use affschur::AffMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let alg = ws.algebra(2, 3)?;
    let a = AffMatrix::new(2, [(1, 1, 1), (1, 2, 1), (2, 3, 1)])?;
    let b = AffMatrix::new(2, [(1, 1, 1), (1, 2, 1), (2, 1, 1)])?;

    let prod = alg.mult(&SchurElt::basis(&a), &SchurElt::basis(&b))?;
    println!("[A][B] = {prod}");

    let g = g_table(&ws, &a, &b, 3)?;
    println!("theta_A theta_B:");
    for (c, coeff) in &g.entries {
        println!("  {coeff}  theta[{c}]");
    }
    assert!(g.negative_entries().is_empty());
    Ok(())
}
