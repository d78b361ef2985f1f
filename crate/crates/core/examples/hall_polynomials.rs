//! Hall polynomials of the cyclic quiver, obtained by counting submodules
//! over small finite fields and interpolating.

use affschur::hall::SegmentRep;
use affschur::workspace::Workspace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = Workspace::default();
    let s1 = SegmentRep::simple(2, 1);
    let s2 = SegmentRep::simple(2, 2);
    let targets = [
        SegmentRep::new(2, vec![(1, 2)])?,
        SegmentRep::new(2, vec![(2, 2)])?,
        SegmentRep::new(2, vec![(1, 1), (2, 1)])?,
    ];
    for c in &targets {
        let phi = ws.hall().poly(&s1, &s2, c)?;
        println!("phi^{}_{{S1,S2}} = {phi}", c.to_matrix());
        for q in [2, 3, 4] {
            println!("  q = {q}: {} submodules", ws.hall().count(c, &s1, &s2, q)?);
        }
    }
    Ok(())
}
