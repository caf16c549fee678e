//! Named instances, available to the CLI as `preset:NAME`.

use crate::algebroid::{presets, AlgebroidData};
use crate::applications::{foliation_r3, split_chart};
use crate::error::{Error, Result};
use crate::graded::qi;
use crate::superfield::{Coord, SuperFunction};

use super::instance::{
    chart_specs, poly_spec, structure_spec, FoliationSpec, HomSpec, InstanceFile, Kind, MapSpec, PairSpec, TargetSpec,
};

pub const PRESET_NAMES: &[&str] = &[
    "sl2",
    "sl2-borel",
    "sl2-sum",
    "abelian-n",
    "heisenberg-3",
    "non-jacobi",
    "tangent-rn",
    "foliation-r3",
    "hom-sl2-id",
];

fn lie(name: &str, g: &AlgebroidData) -> InstanceFile {
    InstanceFile::from_data(Kind::LieAlgebra, name, g)
}

fn dimension(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&n| (1..=8).contains(&n))
}

fn zero_poly() -> Vec<super::instance::Term> {
    Vec::new()
}

/// `sl(2)` with `E = span(h, e)`, `F = span(f)` and the zero deformation.
pub fn sl2_borel() -> InstanceFile {
    let g = presets::sl2();
    let chart = split_chart(g.chart(), &[0, 1]).expect("borel split");
    let mut f = InstanceFile::from_data(Kind::Subalgebra, "sl2-borel", &g.with_chart(chart).expect("same shape"));
    f.deformation = Some(PairSpec {
        sigma: vec![],
        phi: vec![vec![zero_poly()], vec![zero_poly()]],
    });
    f
}

/// The flat foliation of `ℝ³` by planes `z = c` with `ψ = (y∂z, x∂z)`.
pub fn foliation() -> InstanceFile {
    let setup = foliation_r3();
    let s = setup.shape();
    let mut f = InstanceFile::from_data(Kind::Foliation, "foliation-r3", setup.data());
    let x = SuperFunction::coordinate(s, Coord::Even(0));
    let y = SuperFunction::coordinate(s, Coord::Even(1));
    f.foliation = Some(FoliationSpec {
        psi: vec![vec![poly_spec(&y)], vec![poly_spec(&x)]],
    });
    f
}

/// `id: sl(2) → sl(2)` with the deformed map `2·id`.
pub fn hom_sl2_id() -> InstanceFile {
    let g = presets::sl2();
    let s = g.shape();
    let mut f = InstanceFile::from_data(Kind::Homomorphism, "hom-sl2-id", &g);
    let (even, odd) = chart_specs(g.chart());
    let st = structure_spec(&g);
    let diag = |c: i64| -> Vec<Vec<_>> {
        (0..3)
            .map(|b| {
                (0..3)
                    .map(|i| if b == i { poly_spec(&SuperFunction::constant(s, qi(c))) } else { zero_poly() })
                    .collect()
            })
            .collect()
    };
    f.homomorphism = Some(HomSpec {
        target: TargetSpec {
            even,
            odd,
            structure: st.structure,
            anchor: st.anchor,
        },
        map: MapSpec {
            bundle_map: diag(1),
            base_map: vec![],
        },
        deformed_map: Some(MapSpec {
            bundle_map: diag(2),
            base_map: vec![],
        }),
        target_deformation: None,
    });
    f
}

/// Looks up a preset; `abelian-N` and `tangent-rN` take `1 ≤ N ≤ 8`.
pub fn preset(name: &str) -> Result<InstanceFile> {
    let f = match name {
        "sl2" => lie("sl2", &presets::sl2()),
        "sl2-borel" => sl2_borel(),
        "sl2-sum" => lie("sl2-sum", &presets::sl2_sum()),
        "heisenberg-3" => lie("heisenberg-3", &presets::heisenberg3()),
        "non-jacobi" => lie("non-jacobi", &presets::non_jacobi3()),
        "foliation-r3" => foliation(),
        "hom-sl2-id" => hom_sl2_id(),
        _ => {
            if let Some(n) = dimension(name, "abelian-") {
                lie(name, &presets::abelian(n))
            } else if let Some(n) = dimension(name, "tangent-r") {
                InstanceFile::from_data(Kind::Algebroid, name, &presets::tangent_rn(n))
            } else {
                return Err(Error::Unsupported(format!(
                    "unknown preset `{name}` (known: {})",
                    PRESET_NAMES.join(", ")
                )));
            }
        }
    };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve_and_round_trip() {
        for name in ["sl2", "sl2-borel", "sl2-sum", "abelian-4", "heisenberg-3", "non-jacobi", "tangent-r2", "foliation-r3", "hom-sl2-id"] {
            let f = preset(name).unwrap();
            f.resolve().unwrap();
            assert_eq!(InstanceFile::from_json(&f.to_json()).unwrap(), f, "{name}");
        }
        assert!(preset("abelian-0").is_err());
        assert!(preset("nope").is_err());
    }
}
