use super::oracle::{graph_closure_oracle, GraphClosureReport};
use super::setup::{DeformationPair, SplitSetup};
use super::tangency::{normal_coords, tangency_oracle, TangencyResult};
use crate::derived::{mc_residual, MCResidual};
use crate::error::{Error, Result};
use crate::superfield::{Coord, SuperFunction};

/// The MC residual of a deformation pair with its independent checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebroidResidual {
    /// Derived-bracket series and `P_c(X_Q)` for `c = -I(X_{σ,φ})`.
    pub mc: MCResidual,
    /// Tangency of `X_Q` to the graph, by series and by substitution.
    pub tangency: TangencyResult,
    pub oracle: GraphClosureReport,
}

impl SubalgebroidResidual {
    pub fn is_zero(&self) -> bool {
        self.mc.is_zero()
    }

    pub fn oracle_agrees(&self) -> bool {
        self.mc.is_zero() == self.oracle.accepted() && self.mc.series == self.tangency.series
    }
}

/// `γ` of the graph in normal coordinates: `y = σ(x)`, `ξ_F^j = Σ_i φ^j_i ξ_E^i`.
pub fn graph_gamma(setup: &SplitSetup, d: &DeformationPair) -> Vec<SuperFunction> {
    let s = setup.shape();
    let chart = setup.data().chart();
    normal_coords(chart)
        .into_iter()
        .map(|c| match c {
            Coord::Even(y) => {
                let k = setup.normal().iter().position(|&t| t == y).expect("normal");
                d.sigma[k].clone()
            }
            Coord::Odd(j) => {
                let fj = setup.complement().iter().position(|&t| t == j).expect("complement");
                let mut g = SuperFunction::zero(s);
                for (ei, &i) in setup.sub().iter().enumerate() {
                    g = &g + &d.phi[ei][fj].mul(&SuperFunction::coordinate(s, Coord::Odd(i)));
                }
                g
            }
        })
        .collect()
}

/// Residual of `(σ, φ)` in `𝔞^P_{X_Q}`, cross-checked against the tangency
/// substitution and the graph-closure oracle. Any disagreement is an error.
pub fn subalgebroid_mc_residual(setup: &SplitSetup, d: &DeformationPair, cap: usize) -> Result<SubalgebroidResidual> {
    let delta = setup.delta()?;
    let cand = setup.candidate(d)?;
    let mc = mc_residual(setup.valg(), &delta, &cand, cap)?;
    let tangency = tangency_oracle(setup.data().chart(), &setup.xq(), &graph_gamma(setup, d), cap)?;
    let oracle = graph_closure_oracle(setup, d)?;
    let out = SubalgebroidResidual { mc, tangency, oracle };
    if !out.oracle_agrees() {
        return Err(Error::Inconsistency(
            "MC residual disagrees with the graph-closure or tangency check".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::{qi, Rational};
    use crate::superfield::{Chart, OddRole, VectorField};

    fn borel() -> SplitSetup {
        let chart = Chart::build(
            &[],
            &[("h", OddRole::Sub), ("e", OddRole::Sub), ("f", OddRole::Complement)],
        )
        .unwrap();
        SplitSetup::new(presets::sl2().with_chart(chart).unwrap()).unwrap()
    }

    fn pair(s: &SplitSetup, a: i64, b: i64) -> DeformationPair {
        DeformationPair::constant(s.shape(), &[], &[vec![qi(a)], vec![qi(b)]])
    }

    #[test]
    fn borel_locus() {
        let s = borel();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let r = subalgebroid_mc_residual(&s, &pair(&s, a, b), 64).unwrap();
                let expect = VectorField::term(
                    SuperFunction::monomial(s.shape(), Rational::from_integer((a * a - 4 * b).into()), &[], &[0, 1]),
                    Coord::Odd(2),
                );
                assert_eq!(r.mc.series, expect, "({a},{b})");
            }
        }
    }
}
