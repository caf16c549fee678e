use num_traits::One;

use super::setup::{DeformationPair, SplitSetup};
use crate::algebroid::{AlgebroidData, Section};
use crate::error::Result;
use crate::graded::Rational;
use crate::superfield::{Coord, SuperFunction};

/// Defects of the classical subalgebroid test for `gr(φ)` over `S_σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClosureReport {
    /// `(i, k, ρ^{y_k}(ε̃_i) - Σ_s ρ^{x_s}(ε̃_i) ∂_s σ^k)` at `y = σ`, nonzero only.
    pub anchor: Vec<(usize, usize, SuperFunction)>,
    /// `((i, j), f, β^f - Σ_l φ^f_l α^l)` where `[ε̃_i, ε̃_j]|_{S_σ} = α^l ε_l + β^f ε_f`.
    pub bracket: Vec<((usize, usize), usize, SuperFunction)>,
}

impl GraphClosureReport {
    pub fn accepted(&self) -> bool {
        self.anchor.is_empty() && self.bracket.is_empty()
    }
}

/// Restricts an even function to `y = σ(x)`.
pub(crate) fn restrict_to_graph(setup: &SplitSetup, sigma: &[SuperFunction], f: &SuperFunction) -> Result<SuperFunction> {
    let s = setup.shape();
    let mut subs: Vec<SuperFunction> = (0..s.n_even)
        .map(|i| SuperFunction::coordinate(s, Coord::Even(i)))
        .chain((0..s.n_odd).map(|k| SuperFunction::coordinate(s, Coord::Odd(k))))
        .collect();
    for (k, &y) in setup.normal().iter().enumerate() {
        subs[y] = sigma[k].clone();
    }
    f.substitute(&subs)
}

/// Frame `ε̃_i = ε_i + Σ_j φ^j_i ε_j` of the graph, extended constantly
/// along the normal directions.
pub fn graph_frame(setup: &SplitSetup, d: &DeformationPair) -> Vec<Section> {
    let data = setup.data();
    setup
        .sub()
        .iter()
        .enumerate()
        .map(|(ei, &i)| {
            let mut s = data.frame(i);
            for (fj, &j) in setup.complement().iter().enumerate() {
                s[j] = d.phi[ei][fj].clone();
            }
            s
        })
        .collect()
}

/// The classical test: brackets of graph frame sections stay in the graph
/// along `S_σ`, and anchors are tangent to `S_σ`.
pub fn graph_closure_oracle(setup: &SplitSetup, d: &DeformationPair) -> Result<GraphClosureReport> {
    setup.check_pair(d)?;
    let data: &AlgebroidData = setup.data();
    let frame = graph_frame(setup, d);
    let restrict = |f: &SuperFunction| restrict_to_graph(setup, &d.sigma, f);

    let mut anchor = Vec::new();
    for (ei, s) in frame.iter().enumerate() {
        let v = data.anchor_of(s)?;
        for (k, &y) in setup.normal().iter().enumerate() {
            let mut defect = v.component(Coord::Even(y));
            for &x in setup.base() {
                let dsigma = d.sigma[k].d_even(x);
                defect.add_scaled(&v.component(Coord::Even(x)).mul(&dsigma), &-Rational::one());
            }
            let defect = restrict(&defect)?;
            if !defect.is_zero() {
                anchor.push((ei, k, defect));
            }
        }
    }

    let mut bracket = Vec::new();
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            let b = data.section_bracket(&frame[i], &frame[j])?;
            let alpha: Vec<SuperFunction> = setup
                .sub()
                .iter()
                .map(|&l| restrict(&b[l]))
                .collect::<Result<_>>()?;
            for (fj, &f) in setup.complement().iter().enumerate() {
                let mut defect = restrict(&b[f])?;
                for (el, a) in alpha.iter().enumerate() {
                    let phi = restrict(&d.phi[el][fj])?;
                    defect.add_scaled(&phi.mul(a), &-Rational::one());
                }
                if !defect.is_zero() {
                    bracket.push(((i, j), fj, defect));
                }
            }
        }
    }
    Ok(GraphClosureReport { anchor, bracket })
}
