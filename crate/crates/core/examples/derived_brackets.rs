//! Higher derived brackets m_k = P[...[Δ, a_1], ..., a_k] for the Borel
//! subalgebra of sl(2), compared with the explicit m_1, m_2, m_3.

use lie_deform::algebroid::presets;
use lie_deform::applications::split_chart;
use lie_deform::derived::derived_bracket;
use lie_deform::subalgebroid::{decode_form, encode_form, explicit_structure_map, form_basis, SplitSetup};

fn main() -> lie_deform::Result<()> {
    let g = presets::sl2();
    let setup = SplitSetup::new(g.with_chart(split_chart(g.chart(), &[0, 1])?)?)?;
    let delta = setup.delta()?;
    let chart = setup.data().chart();
    let forms: Vec<_> = (0..=2).flat_map(|k| form_basis(&setup, k)).collect();

    for a in &forms {
        for b in &forms {
            let args = [a.clone(), b.clone()];
            let enc: Vec<_> = args.iter().map(|w| encode_form(&setup, w)).collect();
            let derived = derived_bracket(setup.valg(), &delta, &enc)?;
            if derived.is_zero() {
                continue;
            }
            let explicit = explicit_structure_map(&setup, &args)?;
            let same = decode_form(&setup, &derived)?.values() == explicit.values();
            println!(
                "m2({}, {}) = {}   explicit agrees: {same}",
                enc[0].display(chart),
                enc[1].display(chart),
                derived.display(chart)
            );
        }
    }
    Ok(())
}
