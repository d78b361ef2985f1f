//! Structure constants `f_{A,B,C}` of the canonical basis of the positive
//! part, for strictly upper triangular `A` and `B`.

use affschur::transfer::f_constants;
use affschur::workspace::Workspace;
use affschur::AffMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let pairs = [
        ([(1, 2, 1)], [(2, 3, 1)]),
        ([(1, 2, 1)], [(1, 2, 1)]),
        ([(2, 3, 1)], [(1, 2, 1)]),
    ];
    for (a, b) in pairs {
        let (a, b) = (AffMatrix::new(2, a)?, AffMatrix::new(2, b)?);
        let f = f_constants(&ws, &a, &b)?;
        println!("{a} * {b}:");
        for (c, coeff) in &f.entries {
            println!("  {coeff}  {c}");
        }
    }
    Ok(())
}
