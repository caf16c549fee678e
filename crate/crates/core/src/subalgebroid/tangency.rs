use crate::derived::{exp_ad, SplitVAlgebra, VAlgebra};
use crate::error::{Error, Result};
use crate::superfield::{Chart, Coord, EvenRole, OddRole, SuperFunction, VectorField};

/// Both evaluations of the tangency residual of a field along the graph
/// `w = γ(z)`, where `w` are the normal coordinates (`Normal` even and
/// `Complement` odd) and `z` the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangencyResult {
    /// `Σ (1/n!) Pr[...[Z, -Y_γ], ..., -Y_γ]`.
    pub series: VectorField,
    /// `Σ_j (Z^{w_j} - Z(γ^j))|_{w = γ} ∂/∂w_j`.
    pub direct: VectorField,
}

impl TangencyResult {
    pub fn agree(&self) -> bool {
        self.series == self.direct
    }

    pub fn is_tangent(&self) -> bool {
        self.series.is_zero()
    }
}

/// The normal coordinates of a chart, even first.
pub fn normal_coords(chart: &Chart) -> Vec<Coord> {
    chart
        .even_with_role(EvenRole::Normal)
        .into_iter()
        .map(Coord::Even)
        .chain(chart.odd_with_role(OddRole::Complement).into_iter().map(Coord::Odd))
        .collect()
}

/// `Y_γ = Σ_j γ^j ∂/∂w_j` for `gamma` indexed like [`normal_coords`].
pub fn graph_field(chart: &Chart, gamma: &[SuperFunction]) -> Result<VectorField> {
    let w = normal_coords(chart);
    if gamma.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: w.len(),
            found: gamma.len(),
        });
    }
    let valg = SplitVAlgebra::new(chart.clone());
    let y = VectorField::from_components(chart.shape(), w.iter().copied().zip(gamma.iter().cloned()));
    if !valg.contains(&y) {
        return Err(Error::Precondition("γ must depend on tangential coordinates only".into()));
    }
    for (c, g) in w.iter().zip(gamma) {
        let ok = g.homogeneous_parts().keys().all(|&d| d.rem_euclid(2) == c.degree());
        if !ok {
            return Err(Error::Precondition("γ must have the parity of its coordinate".into()));
        }
    }
    Ok(y)
}

/// Evaluates whether `z` is tangent to the graph of `γ` by the bracket
/// series and by direct substitution; the two must agree.
pub fn tangency_oracle(chart: &Chart, z: &VectorField, gamma: &[SuperFunction], cap: usize) -> Result<TangencyResult> {
    chart.shape().check(z.shape())?;
    let valg = SplitVAlgebra::new(chart.clone());
    if !valg.project(z)?.is_zero() {
        return Err(Error::Precondition("field is not tangent to the zero section".into()));
    }
    let y = graph_field(chart, gamma)?;
    let series = valg.project(&exp_ad(z, &(-&y), cap)?)?;

    let s = chart.shape();
    let w = normal_coords(chart);
    let mut subs: Vec<SuperFunction> = (0..s.n_even)
        .map(|i| SuperFunction::coordinate(s, Coord::Even(i)))
        .chain((0..s.n_odd).map(|k| SuperFunction::coordinate(s, Coord::Odd(k))))
        .collect();
    for (c, g) in w.iter().zip(gamma) {
        let idx = match c {
            Coord::Even(i) => *i,
            Coord::Odd(k) => s.n_even + k,
        };
        subs[idx] = g.clone();
    }
    let mut direct = VectorField::zero(s);
    for (c, g) in w.iter().zip(gamma) {
        let comp = &z.component(*c) - &z.apply(g)?;
        direct.set_component(*c, comp.substitute(&subs)?);
    }
    let out = TangencyResult { series, direct };
    if !out.agree() {
        return Err(Error::Inconsistency("tangency series and substitution differ".into()));
    }
    Ok(out)
}
