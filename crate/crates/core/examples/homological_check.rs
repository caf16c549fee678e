//! Builds X_Q for a few algebroids and checks [X_Q, X_Q] = 0 against the
//! classical Jacobi/anchor/Leibniz conditions.

use lie_deform::algebroid::presets;

fn main() -> lie_deform::Result<()> {
    for (name, g) in [
        ("sl2", presets::sl2()),
        ("heisenberg", presets::heisenberg3()),
        ("Tℝ²", presets::tangent_rn(2)),
        ("non-Jacobi", presets::non_jacobi3()),
    ] {
        let xq = g.build_xq();
        let report = g.validate()?;
        let classical = g.classical_check()?;
        println!("{name}: X_Q = {}", xq.display(g.chart()));
        println!("  homological: {}  classical: {}", report.passed(), classical.passed());
        for (triple, value) in &classical.jacobi {
            let parts: Vec<String> = value
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(|(k, f)| format!("{}: {}", g.chart().odd[k].name, f.display(g.chart())))
                .collect();
            println!("  Jacobiator on {triple:?}: {}", parts.join(", "));
        }
    }
    Ok(())
}
