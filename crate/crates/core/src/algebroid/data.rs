use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{q, Rational};
use crate::superfield::{Chart, Coord, Monomial, Shape, SuperFunction, VectorField};

/// A section of `A` in the local frame: one even polynomial per frame index.
pub type Section = Vec<SuperFunction>;

/// A Lie algebroid structure on the trivial bundle `R^m × R^n`, given by
/// polynomial structure functions `[ε_i, ε_j] = C^k_ij ε_k` and anchor
/// `ρ(ε_i) = b^t_i ∂_t`.
///
/// The chart's even coordinates are the base coordinates, its odd
/// coordinates the dual frame `ξ^i`. Coefficients are stored as even-only
/// functions on the chart's shape; only `i < j` is stored for `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidData {
    chart: Chart,
    structure: BTreeMap<(usize, usize, usize), SuperFunction>,
    anchor: BTreeMap<(usize, usize), SuperFunction>,
}

impl AlgebroidData {
    /// The abelian algebroid with zero anchor.
    pub fn new(chart: Chart) -> Self {
        AlgebroidData {
            chart,
            structure: BTreeMap::new(),
            anchor: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn shape(&self) -> Shape {
        self.chart.shape()
    }

    pub fn base_dim(&self) -> usize {
        self.chart.n_even()
    }

    pub fn rank(&self) -> usize {
        self.chart.n_odd()
    }

    fn check_poly(&self, f: &SuperFunction, what: &str) -> Result<()> {
        self.shape().check(f.shape())?;
        if !f.is_even_only() {
            return Err(Error::Precondition(format!("{what} must not involve odd coordinates")));
        }
        Ok(())
    }

    /// Adds `f` to `C^k_ij` (and `-f` to `C^k_ji`).
    pub fn add_bracket(&mut self, i: usize, j: usize, k: usize, f: SuperFunction) -> Result<()> {
        let n = self.rank();
        if i >= n || j >= n || k >= n {
            return Err(Error::IndexOutOfRange(format!("C^{k}_{i}{j} with rank {n}")));
        }
        self.check_poly(&f, "structure function")?;
        if i == j {
            if f.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!("C^{k}_{i}{i} must vanish")));
        }
        let (a, b, f) = if i < j { (i, j, f) } else { (j, i, -&f) };
        let mut cur = self.bracket_coeff(a, b, k);
        cur.add_scaled(&f, &Rational::one());
        if cur.is_zero() {
            self.structure.remove(&(a, b, k));
        } else {
            self.structure.insert((a, b, k), cur);
        }
        Ok(())
    }

    /// Adds the constant `c` to `C^k_ij`.
    pub fn add_bracket_const(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        let f = SuperFunction::constant(self.shape(), c);
        self.add_bracket(i, j, k, f)
    }

    /// Adds `f` to `b^t_i`.
    pub fn add_anchor(&mut self, i: usize, t: usize, f: SuperFunction) -> Result<()> {
        let (n, m) = (self.rank(), self.base_dim());
        if i >= n || t >= m {
            return Err(Error::IndexOutOfRange(format!("b^{t}_{i} with rank {n}, base {m}")));
        }
        self.check_poly(&f, "anchor coefficient")?;
        let mut cur = self.anchor_coeff(i, t);
        cur.add_scaled(&f, &Rational::one());
        if cur.is_zero() {
            self.anchor.remove(&(i, t));
        } else {
            self.anchor.insert((i, t), cur);
        }
        Ok(())
    }

    /// `C^k_ij` for any `i, j`.
    pub fn bracket_coeff(&self, i: usize, j: usize, k: usize) -> SuperFunction {
        let zero = || SuperFunction::zero(self.shape());
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.structure.get(&(i, j, k)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self
                .structure
                .get(&(j, i, k))
                .map(|f| -f)
                .unwrap_or_else(zero),
            std::cmp::Ordering::Equal => zero(),
        }
    }

    pub fn anchor_coeff(&self, i: usize, t: usize) -> SuperFunction {
        self.anchor
            .get(&(i, t))
            .cloned()
            .unwrap_or_else(|| SuperFunction::zero(self.shape()))
    }

    /// Stored `(i, j, k) ↦ C^k_ij` with `i < j`.
    pub fn structure_terms(&self) -> &BTreeMap<(usize, usize, usize), SuperFunction> {
        &self.structure
    }

    /// Stored `(i, t) ↦ b^t_i`.
    pub fn anchor_terms(&self) -> &BTreeMap<(usize, usize), SuperFunction> {
        &self.anchor
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty() && self.anchor.is_empty()
    }

    /// `X_Q = ½ C^k_ij ξ^i ξ^j ∂/∂ξ^k - b^t_i ξ^i ∂/∂x^t`.
    pub fn build_xq(&self) -> VectorField {
        let s = self.shape();
        let mut x = VectorField::zero(s);
        for (&(i, j, k), c) in &self.structure {
            let xi = SuperFunction::monomial(s, Rational::one(), &vec![0; s.n_even], &[i, j]);
            x.add_component(Coord::Odd(k), &c.mul(&xi));
        }
        for (&(i, t), b) in &self.anchor {
            let xi = SuperFunction::coordinate(s, Coord::Odd(i));
            x.add_component(Coord::Even(t), &(-&b.mul(&xi)));
        }
        x
    }

    /// Reads structure data back from a degree-1 field of the `X_Q` shape.
    pub fn from_xq(chart: Chart, x: &VectorField) -> Result<AlgebroidData> {
        chart.shape().check(x.shape())?;
        let mut data = AlgebroidData::new(chart);
        let s = data.shape();
        for (c, m, coeff) in x.terms() {
            let even_part = SuperFunction::from_terms(
                s,
                [(
                    Monomial {
                        even: m.even.clone(),
                        odd: 0,
                    },
                    coeff.clone(),
                )],
            );
            let idx: Vec<usize> = (0..s.n_odd).filter(|k| m.odd >> k & 1 == 1).collect();
            match (c, idx.as_slice()) {
                (Coord::Odd(k), [i, j]) => data.add_bracket(*i, *j, k, even_part)?,
                (Coord::Even(t), [i]) => data.add_anchor(*i, t, -&even_part)?,
                _ => {
                    return Err(Error::Precondition(
                        "field is not of the form ½C ξξ∂_ξ - b ξ∂_x".into(),
                    ))
                }
            }
        }
        Ok(data)
    }

    /// The anchor of a section as a vector field on the base.
    pub fn anchor_of(&self, s: &[SuperFunction]) -> Result<VectorField> {
        self.check_section(s)?;
        let mut out = VectorField::zero(self.shape());
        for (&(i, t), b) in &self.anchor {
            out.add_component(Coord::Even(t), &s[i].mul(b));
        }
        Ok(out)
    }

    /// `[s, t] = s^i t^j C^k_ij ε_k + ρ(s)(t^k) ε_k - ρ(t)(s^k) ε_k`.
    pub fn section_bracket(&self, s: &[SuperFunction], t: &[SuperFunction]) -> Result<Section> {
        self.check_section(s)?;
        self.check_section(t)?;
        let shape = self.shape();
        let n = self.rank();
        let mut out = vec![SuperFunction::zero(shape); n];
        for (&(i, j, k), c) in &self.structure {
            let a = s[i].mul(&t[j]);
            let b = s[j].mul(&t[i]);
            out[k].add_scaled(&(&a - &b).mul(c), &Rational::one());
        }
        let rs = self.anchor_of(s)?;
        let rt = self.anchor_of(t)?;
        for k in 0..n {
            out[k].add_scaled(&rs.apply(&t[k])?, &Rational::one());
            out[k].add_scaled(&rt.apply(&s[k])?, &-Rational::one());
        }
        Ok(out)
    }

    /// Frame section `ε_i`.
    pub fn frame(&self, i: usize) -> Section {
        let s = self.shape();
        (0..self.rank())
            .map(|k| {
                if k == i {
                    SuperFunction::one(s)
                } else {
                    SuperFunction::zero(s)
                }
            })
            .collect()
    }

    fn check_section(&self, s: &[SuperFunction]) -> Result<()> {
        if s.len() != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                found: s.len(),
            });
        }
        for f in s {
            self.check_poly(f, "section coefficient")?;
        }
        Ok(())
    }

    /// Classical check: Jacobi identity on frame triples and
    /// `ρ[ε_i, ε_j] = [ρ ε_i, ρ ε_j]` on frame pairs.
    pub fn classical_check(&self) -> Result<ClassicalReport> {
        let n = self.rank();
        let mut jacobi = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a| self.frame(a);
                    let mut total = vec![SuperFunction::zero(self.shape()); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.section_bracket(&e(a), &e(b))?;
                        let outer = self.section_bracket(&inner, &e(c))?;
                        for (acc, v) in total.iter_mut().zip(&outer) {
                            acc.add_scaled(v, &Rational::one());
                        }
                    }
                    if total.iter().any(|f| !f.is_zero()) {
                        jacobi.push(((i, j, k), total));
                    }
                }
            }
        }
        let mut anchor = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let br = self.section_bracket(&self.frame(i), &self.frame(j))?;
                let lhs = self.anchor_of(&br)?;
                let rhs = self.anchor_of(&self.frame(i))?.bracket(&self.anchor_of(&self.frame(j))?)?;
                let d = &lhs - &rhs;
                if !d.is_zero() {
                    anchor.push(((i, j), d));
                }
            }
        }
        Ok(ClassicalReport { jacobi, anchor })
    }

    /// Homological check with the nonzero coefficients of `½[[X_Q, X_Q]]`,
    /// alongside the classical check.
    pub fn validate(&self) -> Result<AlgebroidReport> {
        let xq = self.build_xq();
        let obstruction = xq.bracket(&xq)?.scale(&q(1, 2));
        let classical = self.classical_check()?;
        let report = AlgebroidReport {
            xq,
            obstruction,
            classical,
        };
        if report.obstruction.is_zero() != report.classical.passed() {
            return Err(Error::Inconsistency(
                "homological check and classical axioms disagree".into(),
            ));
        }
        Ok(report)
    }

    /// Direct sum `A ⊕ B` over `M × N` (block structure, product anchor).
    pub fn direct_sum(&self, other: &AlgebroidData) -> Result<AlgebroidData> {
        let chart = self.chart.product(&other.chart)?;
        let shape = chart.shape();
        let (m1, n1) = (self.base_dim(), self.rank());
        let left = |f: &SuperFunction| {
            let em: Vec<usize> = (0..m1).collect();
            let om: Vec<usize> = (0..n1).collect();
            f.embed(shape, &em, &om)
        };
        let right = |f: &SuperFunction| {
            let em: Vec<usize> = (0..other.base_dim()).map(|i| i + m1).collect();
            let om: Vec<usize> = (0..other.rank()).map(|k| k + n1).collect();
            f.embed(shape, &em, &om)
        };
        let mut out = AlgebroidData::new(chart);
        for (&(i, j, k), c) in &self.structure {
            out.add_bracket(i, j, k, left(c))?;
        }
        for (&(i, t), b) in &self.anchor {
            out.add_anchor(i, t, left(b))?;
        }
        for (&(i, j, k), c) in &other.structure {
            out.add_bracket(i + n1, j + n1, k + n1, right(c))?;
        }
        for (&(i, t), b) in &other.anchor {
            out.add_anchor(i + n1, t + m1, right(b))?;
        }
        Ok(out)
    }

    /// Same data on a chart with the same shape but different names or roles.
    pub fn with_chart(&self, chart: Chart) -> Result<AlgebroidData> {
        self.shape().check(chart.shape())?;
        Ok(AlgebroidData {
            chart,
            structure: self.structure.clone(),
            anchor: self.anchor.clone(),
        })
    }
}

/// Nonzero Jacobiators `(i,j,k) ↦ Σ_cyc [[ε_i,ε_j],ε_k]` and anchor defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalReport {
    pub jacobi: Vec<((usize, usize, usize), Section)>,
    pub anchor: Vec<((usize, usize), VectorField)>,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.jacobi.is_empty() && self.anchor.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidReport {
    pub xq: VectorField,
    /// `½[[X_Q, X_Q]]`.
    pub obstruction: VectorField,
    pub classical: ClassicalReport,
}

impl AlgebroidReport {
    pub fn passed(&self) -> bool {
        self.obstruction.is_zero()
    }
}

/// `[[X_Q, X̃]] + ½[[X̃, X̃]]`.
pub fn deformation_residual(xq: &VectorField, xt: &VectorField) -> Result<VectorField> {
    for (what, f) in [("X_Q", xq), ("X̃", xt)] {
        if !f.is_homogeneous_of(1) {
            return Err(Error::Degree {
                what: what.into(),
                expected: "1".into(),
                found: format!("{:?}", f.degree()),
            });
        }
    }
    let mut out = xq.bracket(xt)?;
    out.add_scaled(&xt.bracket(xt)?, &q(1, 2));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::qi;

    #[test]
    fn sl2_xq_terms() {
        let g = presets::sl2();
        let s = g.shape();
        let x = g.build_xq();
        let mono = |c: i64, odd: &[usize]| SuperFunction::monomial(s, qi(c), &[], odd);
        assert_eq!(x.component(Coord::Odd(0)), mono(1, &[1, 2]));
        assert_eq!(x.component(Coord::Odd(1)), mono(2, &[0, 1]));
        assert_eq!(x.component(Coord::Odd(2)), mono(-2, &[0, 2]));
        assert!(g.validate().unwrap().passed());
        assert_eq!(AlgebroidData::from_xq(g.chart().clone(), &x).unwrap(), g);
    }

    #[test]
    fn non_jacobi_obstruction() {
        let g = presets::non_jacobi3();
        let r = g.validate().unwrap();
        assert!(!r.passed());
        let s = g.shape();
        assert_eq!(
            r.obstruction,
            VectorField::term(SuperFunction::monomial(s, qi(-1), &[], &[0, 1, 2]), Coord::Odd(2))
        );
        let (idx, jac) = &r.classical.jacobi[0];
        assert_eq!(*idx, (0, 1, 2));
        assert_eq!(jac[2], SuperFunction::constant(s, qi(-1)));
    }

    #[test]
    fn tangent_line() {
        let t = presets::tangent_rn(1);
        let s = t.shape();
        assert_eq!(
            t.build_xq(),
            VectorField::term(-&SuperFunction::coordinate(s, Coord::Odd(0)), Coord::Even(0))
        );
    }

    #[test]
    fn residual_examples() {
        let ab2 = presets::abelian(2).build_xq();
        assert!(deformation_residual(&ab2, &presets::affine2().build_xq()).unwrap().is_zero());
        let ab3 = presets::abelian(3).build_xq();
        assert!(!deformation_residual(&ab3, &presets::non_jacobi3().build_xq()).unwrap().is_zero());
        assert!(deformation_residual(&ab3, &ab3).unwrap().is_zero());
    }
}
