//! Simultaneous deformation of an algebroid structure and a subalgebroid:
//! rescaling sl(2) keeps the Borel subalgebra, while a perturbation that
//! breaks Jacobi shows up in the structure part of the residual.

use lie_deform::algebroid::presets;
use lie_deform::applications::split_chart;
use lie_deform::graded::qi;
use lie_deform::subalgebroid::{simultaneous_residual, DeformationPair, SplitSetup};
use lie_deform::superfield::{Coord, SuperFunction, VectorField};

fn main() -> lie_deform::Result<()> {
    let g = presets::sl2();
    let setup = SplitSetup::new(g.with_chart(split_chart(g.chart(), &[0, 1])?)?)?;
    let s = setup.shape();
    let chart = setup.data().chart().clone();
    let zero = setup.zero_pair();
    let phi = DeformationPair::constant(s, &[], &[vec![qi(2)], vec![qi(1)]]);

    let scale = setup.xq();
    let mut broken = VectorField::zero(s);
    broken.add_component(Coord::Odd(1), &SuperFunction::monomial(s, qi(1), &[], &[1, 2]));

    for (name, xt) in [("X̃ = X_Q", scale), ("X̃ = ξeξf ∂ξe", broken)] {
        let r = simultaneous_residual(&setup, &zero, &xt, &phi, 64)?;
        println!("{name}: MC {}  homological {}", r.is_zero(), r.homological);
        println!("  structure part: {}", r.structure_part().display(&chart));
        println!("  subalgebroid part: {}", r.subalgebroid_part().display(&chart));
    }
    Ok(())
}
