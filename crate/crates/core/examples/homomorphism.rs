//! Deformations of an algebroid homomorphism through its graph: the scaled
//! identity (1+t)·id of sl(2) is a homomorphism only for t = 0 and t = -1.

use lie_deform::algebroid::presets;
use lie_deform::applications::{homomorphism_deformation, HomomorphismData};
use lie_deform::graded::qi;
use lie_deform::superfield::SuperFunction;

fn main() -> lie_deform::Result<()> {
    let h = HomomorphismData::identity(&presets::sl2())?;
    let s = h.source.shape();
    for t in -2..=2i64 {
        let bundle: Vec<Vec<SuperFunction>> = (0..3)
            .map(|b| {
                (0..3)
                    .map(|i| if b == i { SuperFunction::constant(s, qi(1 + t)) } else { SuperFunction::zero(s) })
                    .collect()
            })
            .collect();
        let cand = h.deformation_to(&bundle, &h.base_map)?;
        let r = homomorphism_deformation(&h, &cand, 64)?;
        println!("t = {t:>2}: homomorphism {}  oracle {}", r.is_zero(), r.oracle.accepted());
    }
    Ok(())
}
