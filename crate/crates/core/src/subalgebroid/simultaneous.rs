use super::oracle::{graph_closure_oracle, GraphClosureReport};
use super::residual::subalgebroid_mc_residual;
use super::setup::{DeformationPair, SplitSetup};
use crate::algebroid::AlgebroidData;
use crate::derived::{extended_mc_residual, ExtElement, ExtResidual, MCDelta, TwistedVAlgebra};
use crate::error::{Error, Result};
use crate::superfield::VectorField;

/// Residual of a simultaneous deformation `(X̃_Q, (σ̃, φ̃))` around an MC
/// base pair, with the checks run on the summed structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimultaneousResidual {
    /// `V[1]` part: `-[X_Q, X̃] - ½[X̃, X̃]`. `𝔞` part: the subalgebroid
    /// residual of base + candidate for `X_Q + X̃`.
    pub ext: ExtResidual,
    /// Whether `X_Q + X̃` is homological.
    pub homological: bool,
    /// Graph closure of base + candidate for the summed structure, when the
    /// sum is an algebroid.
    pub oracle: Option<GraphClosureReport>,
}

impl SimultaneousResidual {
    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    pub fn structure_part(&self) -> &VectorField {
        &self.ext.series.v
    }

    pub fn subalgebroid_part(&self) -> &VectorField {
        &self.ext.series.a
    }

    pub fn oracle_agrees(&self) -> bool {
        if self.structure_part().is_zero() != self.homological {
            return false;
        }
        match &self.oracle {
            Some(o) => self.subalgebroid_part().is_zero() == o.accepted(),
            None => !self.homological,
        }
    }
}

/// Evaluates the extended MC equation with projection `P_{-I(X_base)}`.
/// `base` must be MC for `X_Q`; `cand_xq` is a degree-1 field of algebroid
/// shape on the same chart.
pub fn simultaneous_residual(
    setup: &SplitSetup,
    base: &DeformationPair,
    cand_xq: &VectorField,
    cand: &DeformationPair,
    cap: usize,
) -> Result<SimultaneousResidual> {
    setup.shape().check(cand_xq.shape())?;
    setup.check_pair(cand)?;
    if !cand_xq.is_zero() && !cand_xq.is_homogeneous_of(1) {
        return Err(Error::Degree {
            what: "structure deformation".into(),
            expected: "1".into(),
            found: format!("{:?}", cand_xq.degree()),
        });
    }
    if !subalgebroid_mc_residual(setup, base, cap)?.is_zero() {
        return Err(Error::Precondition("base pair is not a Maurer–Cartan element".into()));
    }
    let twisted = TwistedVAlgebra::new(setup.valg(), setup.candidate(base)?, cap)?;
    let delta = MCDelta::new(&twisted, setup.xq())?;
    let elem = ExtElement::new(cand_xq.clone(), setup.candidate(cand)?)?;
    let ext = extended_mc_residual(&twisted, &delta, &elem, cap)?;

    let sum = &setup.xq() + cand_xq;
    let homological = sum.is_homological();
    let oracle = if homological {
        let data = AlgebroidData::from_xq(setup.data().chart().clone(), &sum)?;
        let moved = setup.with_data(data)?;
        let total = base.add(cand);
        if moved.base_defect()?.is_zero() {
            // E is still a subalgebroid: the plain residual applies too.
            let r = subalgebroid_mc_residual(&moved, &total, cap)?;
            if r.is_zero() != ext.is_zero() {
                return Err(Error::Inconsistency("simultaneous and plain residuals disagree".into()));
            }
        }
        Some(graph_closure_oracle(&moved, &total)?)
    } else {
        None
    };
    let out = SimultaneousResidual {
        ext,
        homological,
        oracle,
    };
    if !out.oracle_agrees() {
        return Err(Error::Inconsistency(
            "simultaneous residual disagrees with validation of the summed structure".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::{qi, Rational};
    use crate::superfield::{Chart, OddRole};

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
    fn zero_candidate() {
        let s = borel();
        let zero = VectorField::zero(s.shape());
        let r = simultaneous_residual(&s, &pair(&s, 2, 1), &zero, &s.zero_pair(), 64).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn rescaled_bracket_keeps_borel() {
        let s = borel();
        let eps = s.xq().scale(&Rational::new(3.into(), 7.into()));
        let r = simultaneous_residual(&s, &s.zero_pair(), &eps, &s.zero_pair(), 64).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn twisted_locus_is_shifted() {
        let s = borel();
        let zero = VectorField::zero(s.shape());
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let r = simultaneous_residual(&s, &pair(&s, 2, 1), &zero, &pair(&s, a, b), 64).unwrap();
                assert_eq!(r.is_zero(), (2 + a) * (2 + a) == 4 * (1 + b), "({a},{b})");
            }
        }
    }

    #[test]
    fn abelian_line_survives_affine_bracket() {
        let chart = Chart::build(&[], &[("e1", OddRole::Sub), ("e2", OddRole::Complement)]).unwrap();
        let s = SplitSetup::new(presets::abelian(2).with_chart(chart.clone()).unwrap()).unwrap();
        let aff = presets::affine2().with_chart(chart).unwrap().build_xq();
        let r = simultaneous_residual(&s, &s.zero_pair(), &aff, &s.zero_pair(), 64).unwrap();
        assert!(r.is_zero());
        // span(e1, e2) is not closed under [e1, e2] = e3
        let chart3 = Chart::build(
            &[],
            &[("e1", OddRole::Sub), ("e2", OddRole::Sub), ("e3", OddRole::Complement)],
        )
        .unwrap();
        let s3 = SplitSetup::new(presets::abelian(3).with_chart(chart3.clone()).unwrap()).unwrap();
        let heis = presets::heisenberg3().with_chart(chart3).unwrap().build_xq();
        let r = simultaneous_residual(&s3, &s3.zero_pair(), &heis, &s3.zero_pair(), 64).unwrap();
        assert!(r.structure_part().is_zero());
        assert!(!r.subalgebroid_part().is_zero());
    }

    #[test]
    fn non_jacobi_perturbation_hits_structure_part() {
        let chart = Chart::build(
            &[],
            &[("e1", OddRole::Sub), ("e2", OddRole::Complement), ("e3", OddRole::Complement)],
        )
        .unwrap();
        let s = SplitSetup::new(presets::abelian(3).with_chart(chart.clone()).unwrap()).unwrap();
        let bad = presets::non_jacobi3().with_chart(chart).unwrap().build_xq();
        let r = simultaneous_residual(&s, &s.zero_pair(), &bad, &s.zero_pair(), 64).unwrap();
        assert!(!r.structure_part().is_zero());
        assert!(r.oracle.is_none());
    }
}
