//! Scans constant deformations φ = (a, b) of the Borel subalgebra
//! span(h, e) ⊂ sl(2) towards f. The Maurer–Cartan locus is a² = 4b.

use lie_deform::algebroid::presets;
use lie_deform::applications::{subalgebra_deformation, LieAlgebraData};
use lie_deform::graded::qi;

fn main() -> lie_deform::Result<()> {
    let g = LieAlgebraData::new(presets::sl2())?;
    println!("   b: -2 -1  0  1  2");
    for a in -2..=2 {
        let row: Vec<&str> = (-2..=2)
            .map(|b| {
                let r = subalgebra_deformation(&g, &[0, 1], &[vec![qi(a)], vec![qi(b)]], 64)?;
                Ok(if r.is_zero() { " ●" } else { " ·" })
            })
            .collect::<lie_deform::Result<_>>()?;
        println!("a={a:>2}: {}", row.join(" "));
    }
    Ok(())
}
