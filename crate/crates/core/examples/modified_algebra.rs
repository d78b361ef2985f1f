//! Structure constants `h_{A,B,C}` of the canonical basis of the modified
//! algebra, read off at a level where they have stabilized.

use affschur::transfer::h_constants;
use affschur::workspace::Workspace;
use affschur::AffMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let pairs = [
        ([(1, 2, 1), (2, 1, 1)], [(1, 2, 1), (2, 1, 1)]),
        ([(1, 2, 1), (2, 1, 1)], [(1, 4, 1), (2, 3, 1)]),
    ];
    for (a, b) in pairs {
        let (a, b) = (AffMatrix::new(2, a)?, AffMatrix::new(2, b)?);
        let h = h_constants(&ws, &a, &b)?;
        println!("{a} * {b}, stable from r = {:?}:", h.r);
        for (c, coeff) in &h.entries {
            println!("  {coeff}  {c}");
        }
    }
    Ok(())
}
