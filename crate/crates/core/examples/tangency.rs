//! Tangency of a field to a graph y = γ(x), by the bracket series and by
//! direct substitution.

use lie_deform::graded::qi;
use lie_deform::subalgebroid::tangency_oracle;
use lie_deform::superfield::{Chart, Coord, EvenRole, SuperFunction, VectorField};

fn main() -> lie_deform::Result<()> {
    let chart = Chart::build(&[("x", EvenRole::Base), ("y", EvenRole::Normal)], &[])?;
    let s = chart.shape();
    let x = SuperFunction::coordinate(s, Coord::Even(0));
    let y = SuperFunction::coordinate(s, Coord::Even(1));
    // Z = ∂x + 2y ∂y: its flow preserves y = c·x² only for c = 0
    let mut z = VectorField::partial(s, Coord::Even(0));
    z.add_component(Coord::Even(1), &y.scale(&qi(2)));
    for c in [0, 1] {
        let gamma = vec![x.mul(&x).scale(&qi(c))];
        let t = tangency_oracle(&chart, &z, &gamma, 64)?;
        println!(
            "y = {c}x²: tangent {}  series = {}  direct = {}",
            t.is_tangent(),
            t.series.display(&chart),
            t.direct.display(&chart)
        );
    }
    Ok(())
}
