//! Infinitesimal deformations of the foliation of ℝ³ by planes z = const,
//! ψ: D → ℝ³/D written as ψ(∂x), ψ(∂y) in the ∂z direction.

use lie_deform::applications::{foliation_infinitesimal, foliation_r3};
use lie_deform::subalgebroid::BundleForm;
use lie_deform::superfield::{Coord, SuperFunction};

fn main() -> lie_deform::Result<()> {
    let setup = foliation_r3();
    let s = setup.shape();
    let x = SuperFunction::coordinate(s, Coord::Even(0));
    let y = SuperFunction::coordinate(s, Coord::Even(1));
    let zero = SuperFunction::zero(s);
    for (name, a, b) in [("(y, x)", &y, &x), ("(y, 0)", &y, &zero), ("(x, y)", &x, &y)] {
        let mut psi = BundleForm::zero(s, 1, 1);
        psi.set(&[0], vec![a.clone()])?;
        psi.set(&[1], vec![b.clone()])?;
        let check = foliation_infinitesimal(&setup, &psi)?;
        let r = &check.residual.eval(&[0, 1])[0];
        println!("ψ = {name}: closed {}  m1(ψ)(∂x,∂y) = {}", check.closed, r.display(setup.data().chart()));
    }
    Ok(())
}
