use crate::error::{Error, Result};
use crate::graded::{inv_factorial, koszul_sign, parity_sign, DegreeVector, Permutation, Rational};
use crate::superfield::{Shape, VectorField};

use super::brackets::{derived_bracket, MCDelta};
use super::valgebra::{exp_ad, VAlgebra};

/// An element `v[1] + a` of `V[1] ⊕ 𝔞`. `v` is stored unshifted, so a
/// homogeneous `v` has degree `|v| - 1` here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub v: VectorField,
    pub a: VectorField,
}

impl ExtElement {
    pub fn zero(shape: Shape) -> Self {
        ExtElement {
            v: VectorField::zero(shape),
            a: VectorField::zero(shape),
        }
    }

    pub fn shifted(v: VectorField) -> Self {
        let a = VectorField::zero(v.shape());
        ExtElement { v, a }
    }

    pub fn abelian(a: VectorField) -> Self {
        let v = VectorField::zero(a.shape());
        ExtElement { v, a }
    }

    pub fn new(v: VectorField, a: VectorField) -> Result<Self> {
        v.shape().check(a.shape())?;
        Ok(ExtElement { v, a })
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.a.is_zero()
    }

    pub fn add_scaled(&mut self, other: &ExtElement, s: &Rational) {
        self.v.add_scaled(&other.v, s);
        self.a.add_scaled(&other.a, s);
    }

    /// Homogeneous atoms `(is_shifted, field, degree in V[1] ⊕ 𝔞)`.
    pub(crate) fn atoms(&self) -> Vec<(bool, VectorField, i64)> {
        let mut out = Vec::new();
        for (d, f) in self.v.homogeneous_parts() {
            out.push((true, f, d - 1));
        }
        for (d, f) in self.a.homogeneous_parts() {
            out.push((false, f, d));
        }
        out
    }
}

/// The flat structure on `V[1] ⊕ 𝔞`:
///
/// * `m_1(v[1], a) = (-[Δ,v][1], P(v + [Δ,a]))`
/// * `m_k(v[1], a_2, ..., a_k) = P[...[v, a_2], ..., a_k]` for `k ≥ 2`
/// * `m_2(v[1], w[1]) = (-1)^{|v|} [v,w][1]`
/// * `m_k(a_1, ..., a_k)` the derived brackets,
///
/// extended by graded symmetry; all other patterns vanish.
pub fn extended_bracket<V: VAlgebra + ?Sized>(
    valg: &V,
    delta: &MCDelta,
    args: &[ExtElement],
) -> Result<ExtElement> {
    let k = args.len();
    if k == 0 {
        // flat
        return Ok(ExtElement::zero(valg.shape()));
    }
    for x in args {
        valg.shape().check(x.v.shape())?;
        valg.inject(&x.a)?;
    }
    let atoms: Vec<_> = args.iter().map(|x| x.atoms()).collect();
    let mut out = ExtElement::zero(valg.shape());
    if atoms.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    let mut choice = vec![0usize; k];
    loop {
        let picked: Vec<&(bool, VectorField, i64)> =
            choice.iter().enumerate().map(|(i, &c)| &atoms[i][c]).collect();
        let term = pattern_value(valg, delta, &picked)?;
        out.add_scaled(&term, &Rational::from_integer(1.into()));
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < atoms[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn pattern_value<V: VAlgebra + ?Sized>(
    valg: &V,
    delta: &MCDelta,
    picked: &[&(bool, VectorField, i64)],
) -> Result<ExtElement> {
    let shape = valg.shape();
    let k = picked.len();
    let vpos: Vec<usize> = (0..k).filter(|&i| picked[i].0).collect();
    let mut out = ExtElement::zero(shape);
    match vpos.len() {
        0 => {
            let args: Vec<VectorField> = picked.iter().map(|p| p.1.clone()).collect();
            out.a = derived_bracket(valg, delta, &args)?;
        }
        1 if k == 1 => {
            let v = &picked[0].1;
            out.v = -&delta.field().bracket(v)?;
            out.a = valg.project(v)?;
        }
        1 => {
            let p = vpos[0];
            let mut order = vec![p];
            order.extend((0..k).filter(|&i| i != p));
            let perm = Permutation::from_zero_based(order.clone())?;
            let degs = DegreeVector::new(picked.iter().map(|x| x.2).collect::<Vec<_>>());
            let sign = koszul_sign(&perm, &degs)?;
            let mut cur = picked[p].1.clone();
            for &i in &order[1..] {
                if cur.is_zero() {
                    break;
                }
                cur = cur.bracket(&picked[i].1)?;
            }
            out.a = valg.project(&cur)?.scale(&Rational::from_integer(sign.into()));
        }
        2 if k == 2 => {
            let (v, w) = (&picked[0].1, &picked[1].1);
            let dv = picked[0].2 + 1;
            out.v = v.bracket(w)?.scale(&Rational::from_integer(parity_sign(dv).into()));
        }
        _ => {}
    }
    Ok(out)
}

/// MC expression of `(Δ̃[1], φ̃)` in the extended structure, evaluated by
/// the bracket series and in closed form
/// `(-[Δ,Δ̃] - ½[Δ̃,Δ̃], P_φ̃(Δ + Δ̃))`. The two must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtResidual {
    pub series: ExtElement,
    pub closed_form: ExtElement,
}

impl ExtResidual {
    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }
}

pub fn extended_mc_residual<V: VAlgebra + ?Sized>(
    valg: &V,
    delta: &MCDelta,
    cand: &ExtElement,
    cap: usize,
) -> Result<ExtResidual> {
    let dt = &cand.v;
    let phi = valg.inject(&cand.a)?;
    if !dt.is_homogeneous_of(1) || !phi.is_homogeneous_of(0) {
        return Err(Error::Degree {
            what: "extended MC candidate".into(),
            expected: "(1, 0)".into(),
            found: format!("({:?}, {:?})", dt.degree(), phi.degree()),
        });
    }
    let shape = valg.shape();
    let mut closed = ExtElement::zero(shape);
    closed.v = &(-&delta.field().bracket(dt)?) - &dt.bracket(dt)?.scale(&inv_factorial(2));
    let total = delta.field() + dt;
    closed.a = valg.project(&exp_ad(&total, &phi, cap)?)?;

    // The series has nonzero terms only while the ad-powers of Δ and Δ̃ by φ̃
    // survive, plus the quadratic V-term.
    let len_delta = super::valgebra::ad_powers(delta.field(), &phi, cap)?.len();
    let len_dt = super::valgebra::ad_powers(dt, &phi, cap)?.len();
    let k_max = len_delta.max(len_dt + 1).max(2);
    let mut series = ExtElement::zero(shape);
    for k in 1..=k_max {
        let args = vec![cand.clone(); k];
        let mk = extended_bracket(valg, delta, &args)?;
        series.add_scaled(&mk, &inv_factorial(k));
    }
    let out = ExtResidual {
        series,
        closed_form: closed,
    };
    if out.series != out.closed_form {
        return Err(Error::Inconsistency(
            "extended MC series and closed form differ".into(),
        ));
    }
    Ok(out)
}
