//! Twisting by an MC element: φ̃ is MC for the P_φ-twisted structure iff
//! φ + φ̃ is MC for the original one. Base point φ = (2, 1) on the Borel
//! family.

use lie_deform::algebroid::presets;
use lie_deform::applications::split_chart;
use lie_deform::derived::{mc_residual, TwistedVAlgebra};
use lie_deform::graded::qi;
use lie_deform::subalgebroid::{subalgebroid_mc_residual, DeformationPair, SplitSetup};

fn main() -> lie_deform::Result<()> {
    let g = presets::sl2();
    let setup = SplitSetup::new(g.with_chart(split_chart(g.chart(), &[0, 1])?)?)?;
    let delta = setup.delta()?;
    let pair = |a: i64, b: i64| DeformationPair::constant(setup.shape(), &[], &[vec![qi(a)], vec![qi(b)]]);
    let base = pair(2, 1);
    let twisted = TwistedVAlgebra::new(setup.valg(), setup.candidate(&base)?, 64)?;

    for (a, b) in [(0, 0), (-4, 0), (2, 3), (1, 1), (-2, -1)] {
        let tilde = pair(a, b);
        let t = mc_residual(&twisted, &delta, &setup.candidate(&tilde)?, 64)?;
        let direct = subalgebroid_mc_residual(&setup, &base.add(&tilde), 64)?;
        println!(
            "φ̃ = ({a:>2}, {b:>2}): twisted MC {}  φ+φ̃ MC {}",
            t.is_zero(),
            direct.is_zero()
        );
    }
    Ok(())
}
