//! Cohomology of the deformation complex of Lie algebras and of m_1 for
//! split setups.

use lie_deform::algebroid::presets;
use lie_deform::applications::split_chart;
use lie_deform::cohomology::{deformation_cohomology, m1_cohomology};
use lie_deform::subalgebroid::SplitSetup;

fn main() -> lie_deform::Result<()> {
    for (name, g) in [("sl2", presets::sl2()), ("heisenberg", presets::heisenberg3()), ("abelian-2", presets::abelian(2))] {
        let dims: Vec<usize> = (0..=g.rank() + 1)
            .map(|n| deformation_cohomology(&g, n, None).map(|h| h.dim))
            .collect::<lie_deform::Result<_>>()?;
        println!("H*({name}; {name}) = {dims:?}");
    }
    let g = presets::sl2();
    let borel = SplitSetup::new(g.with_chart(split_chart(g.chart(), &[0, 1])?)?)?;
    for n in 0..=2 {
        let h = m1_cohomology(&borel, n, None)?;
        println!("Borel: H^{n} = {} ({} cochains, {} cocycles)", h.dim, h.cochains, h.cocycles);
    }
    let t = presets::tangent_rn(1);
    let h = deformation_cohomology(&t, 1, Some(2))?;
    println!("Tℝ¹, polynomial degree ≤ 2: H¹ = {} of {} cochains", h.dim, h.cochains);
    Ok(())
}
