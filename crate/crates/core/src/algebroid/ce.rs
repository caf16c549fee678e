use std::collections::BTreeMap;

use num_traits::One;

use super::data::AlgebroidData;
use crate::error::{Error, Result};
use crate::graded::{parity_sign, Rational};
use crate::superfield::{Monomial, Shape, SuperFunction};

/// An `n`-form in `Γ(Λⁿ A*)`: values `ω(ε_{i_1}, ..., ε_{i_n})` on increasing
/// index tuples, each an even polynomial on the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CEForm {
    shape: Shape,
    degree: usize,
    values: BTreeMap<Vec<usize>, SuperFunction>,
}

impl CEForm {
    pub fn zero(shape: Shape, degree: usize) -> Self {
        CEForm {
            shape,
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, SuperFunction> {
        &self.values
    }

    /// Sets `ω(ε_I)` for an increasing `I`; other orderings follow by
    /// antisymmetry.
    pub fn set(&mut self, idx: &[usize], f: SuperFunction) -> Result<()> {
        if idx.len() != self.degree || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!(
                "form index {idx:?} must be increasing of length {}",
                self.degree
            )));
        }
        if idx.iter().any(|&i| i >= self.shape.n_odd) {
            return Err(Error::IndexOutOfRange(format!("{idx:?}")));
        }
        self.shape.check(f.shape())?;
        if f.is_zero() {
            self.values.remove(idx);
        } else {
            self.values.insert(idx.to_vec(), f);
        }
        Ok(())
    }

    /// `ω(ε_{j_1}, ..., ε_{j_n})` for arbitrary indices.
    pub fn eval(&self, idx: &[usize]) -> SuperFunction {
        match sort_with_sign(idx) {
            Some((sign, sorted)) => match self.values.get(&sorted) {
                Some(f) => f.scale(&Rational::from_integer(sign.into())),
                None => SuperFunction::zero(self.shape),
            },
            None => SuperFunction::zero(self.shape),
        }
    }

    /// The identification with functions on `A[1]`:
    /// `ω ↦ (-1)^n Σ_I ω(ε_I) ξ^I`.
    pub fn to_function(&self) -> SuperFunction {
        let sign = Rational::from_integer(parity_sign(self.degree as i64).into());
        let mut out = SuperFunction::zero(self.shape);
        for (idx, f) in &self.values {
            let xi = SuperFunction::monomial(self.shape, sign.clone(), &vec![0; self.shape.n_even], idx);
            out.add_scaled(&f.mul(&xi), &Rational::one());
        }
        out
    }

    /// Inverse of [`to_function`](Self::to_function) on functions of pure
    /// odd degree `n`.
    pub fn from_function(f: &SuperFunction, degree: usize) -> Result<CEForm> {
        let shape = f.shape();
        let sign = Rational::from_integer(parity_sign(degree as i64).into());
        let mut out = CEForm::zero(shape, degree);
        for (m, c) in f.terms() {
            if m.odd_degree() as usize != degree {
                return Err(Error::Degree {
                    what: "CE form".into(),
                    expected: degree.to_string(),
                    found: m.odd_degree().to_string(),
                });
            }
            let idx: Vec<usize> = (0..shape.n_odd).filter(|k| m.odd >> k & 1 == 1).collect();
            let coeff = SuperFunction::from_terms(
                shape,
                [(
                    Monomial {
                        even: m.even.clone(),
                        odd: 0,
                    },
                    c * &sign,
                )],
            );
            let mut cur = out.eval(&idx);
            cur.add_scaled(&coeff, &Rational::one());
            out.set(&idx, cur)?;
        }
        Ok(out)
    }
}

/// Sorts distinct indices, returning the permutation sign; `None` on repeats.
pub(crate) fn sort_with_sign(idx: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// The Chevalley–Eilenberg differential
/// `dω(v_0..v_n) = Σ_i (-1)^i ρ(v_i) ω(..v̂_i..) + Σ_{i<j} (-1)^{i+j} ω([v_i,v_j], ..v̂_i..v̂_j..)`
/// evaluated on frame tuples.
pub fn ce_differential(data: &AlgebroidData, form: &CEForm) -> Result<CEForm> {
    data.shape().check(form.shape())?;
    let n = data.rank();
    let p = form.degree();
    let mut out = CEForm::zero(form.shape(), p + 1);
    if p + 1 > n {
        return Ok(out);
    }
    for idx in increasing_tuples(n, p + 1) {
        let mut total = SuperFunction::zero(data.shape());
        for i in 0..=p {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, &v)| v).collect();
            let rho = data.anchor_of(&data.frame(idx[i]))?;
            let term = rho.apply(&form.eval(&rest))?;
            total.add_scaled(&term, &Rational::from_integer(parity_sign(i as i64).into()));
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(a, _)| *a != i && *a != j)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = Rational::from_integer(parity_sign((i + j) as i64).into());
                for k in 0..n {
                    let c = data.bracket_coeff(idx[i], idx[j], k);
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend(&rest);
                    total.add_scaled(&c.mul(&form.eval(&args)), &sign);
                }
            }
        }
        out.set(&idx, total)?;
    }
    Ok(out)
}

pub(crate) fn increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, len, cur, out);
            cur.pop();
        }
    }
    rec(0, n, len, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::qi;
    use crate::superfield::Coord;

    #[test]
    fn sl2_dh_on_e_f() {
        let g = presets::sl2();
        let s = g.shape();
        let mut h_star = CEForm::zero(s, 1);
        h_star.set(&[0], SuperFunction::one(s)).unwrap();
        let d = ce_differential(&g, &h_star).unwrap();
        assert_eq!(d.eval(&[1, 2]), SuperFunction::constant(s, qi(-1)));
    }

    #[test]
    fn ce_matches_xq_action_on_sl2() {
        let g = presets::sl2();
        let xq = g.build_xq();
        let s = g.shape();
        for deg in 0..=3usize {
            for idx in increasing_tuples(3, deg) {
                let mut w = CEForm::zero(s, deg);
                w.set(&idx, SuperFunction::one(s)).unwrap();
                let lhs = ce_differential(&g, &w).unwrap().to_function();
                let rhs = xq.apply(&w.to_function()).unwrap();
                assert_eq!(lhs, rhs, "{idx:?}");
            }
        }
    }

    #[test]
    fn tangent_line_of_x_squared() {
        let t = presets::tangent_rn(1);
        let s = t.shape();
        let x = SuperFunction::coordinate(s, Coord::Even(0));
        let mut f = CEForm::zero(s, 0);
        f.set(&[], x.mul(&x)).unwrap();
        let d = ce_differential(&t, &f).unwrap();
        assert_eq!(d.eval(&[0]), x.scale(&qi(2)));
    }
}
