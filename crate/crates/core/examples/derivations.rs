//! Multiderivations of a vector bundle and degree-p fields on A[1]: the
//! bracket of derivations computed on sections equals the field commutator.

use lie_deform::algebroid::{presets, Derivation};
use lie_deform::random::{random_derivation, rng};

fn main() -> lie_deform::Result<()> {
    let g = presets::tangent_rn(2);
    let chart = g.chart();
    let dq = Derivation::of_algebroid(&g);
    println!("D_Q ↦ {}", dq.to_field().display(chart));
    println!("X_Q  = {}", g.build_xq().display(chart));

    let mut r = rng(3);
    for (p, q) in [(0, 0), (0, 1), (1, 1), (1, 2)] {
        let d = random_derivation(&mut r, g.shape(), p, 1);
        let e = random_derivation(&mut r, g.shape(), q, 1);
        let on_sections = d.composition_bracket(&e)?;
        let on_fields = d.to_field().bracket(&e.to_field())?;
        println!(
            "degrees ({p},{q}): bracket degree {}, matches field commutator: {}",
            on_sections.degree(),
            on_sections.to_field() == on_fields
        );
    }
    Ok(())
}
