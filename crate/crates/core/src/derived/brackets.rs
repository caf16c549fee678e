use crate::error::{Error, Result};
use crate::graded::inv_factorial;
use crate::superfield::VectorField;

use super::valgebra::{ad_powers, exp_ad, VAlgebra};

/// A degree-1 element `Δ ∈ ker P` with `[Δ, Δ] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCDelta {
    delta: VectorField,
}

impl MCDelta {
    pub fn new<V: VAlgebra + ?Sized>(valg: &V, delta: VectorField) -> Result<Self> {
        valg.shape().check(delta.shape())?;
        if !delta.is_homogeneous_of(1) {
            return Err(Error::Degree {
                what: "Δ".into(),
                expected: "1".into(),
                found: format!("{:?}", delta.degree()),
            });
        }
        if !valg.project(&delta)?.is_zero() {
            return Err(Error::Precondition("P(Δ) ≠ 0".into()));
        }
        if !delta.bracket(&delta)?.is_zero() {
            return Err(Error::Precondition("[Δ, Δ] ≠ 0".into()));
        }
        Ok(MCDelta { delta })
    }

    pub fn field(&self) -> &VectorField {
        &self.delta
    }
}

/// `m_k(a_1, ..., a_k) = P[...[[Δ, a_1], a_2], ..., a_k]`.
pub fn derived_bracket<V: VAlgebra + ?Sized>(
    valg: &V,
    delta: &MCDelta,
    args: &[VectorField],
) -> Result<VectorField> {
    if args.is_empty() {
        return Err(Error::Precondition("derived bracket needs k ≥ 1".into()));
    }
    let mut cur = delta.delta.clone();
    for a in args {
        let a = valg.inject(a)?;
        if cur.is_zero() {
            break;
        }
        cur = cur.bracket(&a)?;
    }
    valg.project(&cur)
}

/// `P_φ(v) = Σ_n (1/n!) P[...[v, φ], ..., φ]`.
pub fn twisted_projection<V: VAlgebra + ?Sized>(
    valg: &V,
    phi: &VectorField,
    v: &VectorField,
    cap: usize,
) -> Result<VectorField> {
    let phi = valg.inject(phi)?;
    if !phi.is_homogeneous_of(0) {
        return Err(Error::Degree {
            what: "φ".into(),
            expected: "0".into(),
            found: format!("{:?}", phi.degree()),
        });
    }
    valg.project(&exp_ad(v, &phi, cap)?)
}

/// The two evaluations of the Maurer–Cartan expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCResidual {
    /// `Σ_{k≥1} (1/k!) m_k(v, ..., v)`.
    pub series: VectorField,
    /// `P_v(Δ)`.
    pub projected: VectorField,
    /// Number of nonzero brackets in the series.
    pub terms: usize,
}

impl MCResidual {
    pub fn agree(&self) -> bool {
        self.series == self.projected
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn value(&self) -> &VectorField {
        &self.series
    }
}

/// Evaluates the MC expression of a degree-0 `candidate` both as the
/// derived-bracket series and as `P_candidate(Δ)`. Disagreement is an
/// internal error.
pub fn mc_residual<V: VAlgebra + ?Sized>(
    valg: &V,
    delta: &MCDelta,
    candidate: &VectorField,
    cap: usize,
) -> Result<MCResidual> {
    let c = valg.inject(candidate)?;
    if !c.is_homogeneous_of(0) {
        return Err(Error::Degree {
            what: "MC candidate".into(),
            expected: "0".into(),
            found: format!("{:?}", c.degree()),
        });
    }
    // ad_powers(Δ, c)[k] = [...[Δ,c],...,c] = the unprojected m_k(c,...,c).
    let powers = ad_powers(&delta.delta, &c, cap)?;
    let mut series = VectorField::zero(valg.shape());
    for (k, t) in powers.iter().enumerate().skip(1) {
        let args = vec![c.clone(); k];
        let mk = derived_bracket(valg, delta, &args)?;
        debug_assert_eq!(mk, valg.project(t)?);
        series.add_scaled(&mk, &inv_factorial(k));
    }
    let projected = twisted_projection(valg, &c, &delta.delta, cap)?;
    let out = MCResidual {
        series,
        projected,
        terms: powers.len().saturating_sub(1),
    };
    if !out.agree() {
        return Err(Error::Inconsistency(
            "derived-bracket series and P_φ(Δ) differ".into(),
        ));
    }
    Ok(out)
}
