use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::chart::{Chart, Coord, Shape};
use super::function::{monomial_string, Monomial, SuperFunction};
use crate::error::{Error, Result};
use crate::graded::{parity_sign, Rational};

/// A polynomial super vector field `Σ_c X^c ∂/∂c`.
///
/// Components are stored sparsely by target coordinate; `X(z^c) = X^c`.
/// A term `f ∂/∂c` has degree `|f| - |c|`. Fields need not be homogeneous;
/// the bracket splits them into homogeneous parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    shape: Shape,
    comps: BTreeMap<Coord, SuperFunction>,
}

impl VectorField {
    pub fn zero(shape: Shape) -> Self {
        VectorField {
            shape,
            comps: BTreeMap::new(),
        }
    }

    /// `f ∂/∂c`.
    pub fn term(f: SuperFunction, c: Coord) -> Self {
        let mut v = Self::zero(f.shape());
        v.set_component(c, f);
        v
    }

    /// The coordinate derivation `∂/∂c`.
    pub fn partial(shape: Shape, c: Coord) -> Self {
        Self::term(SuperFunction::one(shape), c)
    }

    pub fn from_components(shape: Shape, comps: impl IntoIterator<Item = (Coord, SuperFunction)>) -> Self {
        let mut v = Self::zero(shape);
        for (c, f) in comps {
            v.add_component(c, &f);
        }
        v
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn components(&self) -> &BTreeMap<Coord, SuperFunction> {
        &self.comps
    }

    pub fn component(&self, c: Coord) -> SuperFunction {
        self.comps
            .get(&c)
            .cloned()
            .unwrap_or_else(|| SuperFunction::zero(self.shape))
    }

    pub fn set_component(&mut self, c: Coord, f: SuperFunction) {
        debug_assert_eq!(f.shape(), self.shape);
        if f.is_zero() {
            self.comps.remove(&c);
        } else {
            self.comps.insert(c, f);
        }
    }

    pub fn add_component(&mut self, c: Coord, f: &SuperFunction) {
        let mut g = self.component(c);
        g.add_scaled(f, &Rational::one());
        self.set_component(c, g);
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Number of stored monomial terms.
    pub fn n_terms(&self) -> usize {
        self.comps.values().map(|f| f.len()).sum()
    }

    /// Iterate over `(target, monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Coord, &Monomial, &Rational)> {
        self.comps
            .iter()
            .flat_map(|(c, f)| f.terms().iter().map(move |(m, q)| (*c, m, q)))
    }

    pub fn scale(&self, s: &Rational) -> VectorField {
        if s.is_zero() {
            return Self::zero(self.shape);
        }
        VectorField {
            shape: self.shape,
            comps: self.comps.iter().map(|(c, f)| (*c, f.scale(s))).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &VectorField, s: &Rational) {
        debug_assert_eq!(self.shape, other.shape);
        for (c, f) in &other.comps {
            let mut g = self.component(*c);
            g.add_scaled(f, s);
            self.set_component(*c, g);
        }
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        self.shape.check(other.shape)?;
        Ok(self + other)
    }

    /// Split by ℤ-degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, VectorField> {
        let mut parts: BTreeMap<i64, VectorField> = BTreeMap::new();
        for (c, m, q) in self.terms() {
            let d = m.odd_degree() as i64 - c.degree();
            let part = parts.entry(d).or_insert_with(|| Self::zero(self.shape));
            let mut f = part.component(c);
            f.add_term(m.clone(), q.clone());
            part.set_component(c, f);
        }
        parts
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed.
    pub fn degree(&self) -> Option<i64> {
        let parts = self.homogeneous_parts();
        if parts.len() == 1 {
            parts.keys().next().copied()
        } else {
            None
        }
    }

    /// Homogeneous of degree `d` (zero counts as homogeneous of any degree).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.is_zero() || self.degree() == Some(d)
    }

    /// Graded derivation action `X(f) = Σ_c X^c ∂f/∂c`.
    pub fn apply(&self, f: &SuperFunction) -> Result<SuperFunction> {
        self.shape.check(f.shape())?;
        Ok(self.apply_unchecked(f))
    }

    fn apply_unchecked(&self, f: &SuperFunction) -> SuperFunction {
        let mut out = SuperFunction::zero(self.shape);
        for (c, xc) in &self.comps {
            let df = f.derivative(*c);
            if df.is_zero() {
                continue;
            }
            out.add_scaled(&xc.mul(&df), &Rational::one());
        }
        out
    }

    /// Super commutator `[[X,Y]] = X∘Y - (-1)^{|X||Y|} Y∘X`, extended
    /// bilinearly over homogeneous parts.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.shape.check(other.shape)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &VectorField) -> VectorField {
        let mut out = Self::zero(self.shape);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let xs = self.homogeneous_parts();
        let ys = other.homogeneous_parts();
        for (dx, x) in &xs {
            for (dy, y) in &ys {
                let sign = parity_sign(dx * dy);
                let targets: std::collections::BTreeSet<Coord> =
                    x.comps.keys().chain(y.comps.keys()).copied().collect();
                for c in targets {
                    let mut comp = x.apply_unchecked(&y.component(c));
                    let back = y.apply_unchecked(&x.component(c));
                    comp.add_scaled(&back, &Rational::from_integer((-sign).into()));
                    out.add_component(c, &comp);
                }
            }
        }
        out
    }

    /// Odd degree and `[[X,X]] = 0`.
    pub fn is_homological(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        match self.degree() {
            Some(d) if d.rem_euclid(2) == 1 => self.bracket_unchecked(self).is_zero(),
            _ => false,
        }
    }

    /// Apply an algebra map to every coefficient and re-express the field in
    /// new coordinates. `new_in_old[c']` gives new coordinate `c'` as a
    /// function of the old ones; `old_in_new[c]` the inverse. Both are indexed
    /// even-first. Returns the field `Σ_{c'} (X(w^{c'}))∘φ^{-1} ∂/∂w^{c'}`.
    pub fn change_coordinates(
        &self,
        new_in_old: &[SuperFunction],
        old_in_new: &[SuperFunction],
        new_shape: Shape,
    ) -> Result<VectorField> {
        let n_new = new_shape.n_even + new_shape.n_odd;
        if new_in_old.len() != n_new {
            return Err(Error::LengthMismatch {
                expected: n_new,
                found: new_in_old.len(),
            });
        }
        let mut out = Self::zero(new_shape);
        for (idx, w) in new_in_old.iter().enumerate() {
            let comp = self.apply(w)?.substitute(old_in_new)?;
            let c = if idx < new_shape.n_even {
                Coord::Even(idx)
            } else {
                Coord::Odd(idx - new_shape.n_even)
            };
            out.set_component(c, comp);
        }
        Ok(out)
    }

    /// `f·X`, coefficient-wise left multiplication.
    pub fn mul_left(&self, f: &SuperFunction) -> VectorField {
        let mut out = Self::zero(self.shape);
        for (c, g) in &self.comps {
            out.add_component(*c, &f.mul(g));
        }
        out
    }

    /// Re-embed into a larger chart (see [`SuperFunction::embed`]).
    pub fn embed(&self, shape: Shape, even_map: &[usize], odd_map: &[usize]) -> VectorField {
        let mut out = Self::zero(shape);
        for (c, f) in &self.comps {
            let c2 = match c {
                Coord::Even(i) => Coord::Even(even_map[*i]),
                Coord::Odd(k) => Coord::Odd(odd_map[*k]),
            };
            out.add_component(c2, &f.embed(shape, even_map, odd_map));
        }
        out
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> DisplayField<'a> {
        DisplayField { v: self, chart }
    }
}

pub struct DisplayField<'a> {
    v: &'a VectorField,
    chart: &'a Chart,
}

impl fmt::Display for DisplayField<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        for (n, (c, m, q)) in self.v.terms().enumerate() {
            let sep = if n == 0 { "" } else { " + " };
            let mono = monomial_string(m, self.chart);
            let d = match c {
                Coord::Even(i) => format!("∂{}", self.chart.even[i].name),
                Coord::Odd(k) => format!("∂ξ{}", self.chart.odd[k].name),
            };
            let coeff = if q.is_one() {
                String::new()
            } else {
                format!("({q})·")
            };
            if mono.is_empty() {
                write!(f, "{sep}{coeff}{d}")?;
            } else {
                write!(f, "{sep}{coeff}{mono}·{d}")?;
            }
        }
        Ok(())
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{q, qi};

    // chart: even x (0), y (1); odd ξ1 (0), ξ2 (1)
    fn s() -> Shape {
        Shape::new(2, 2)
    }
    fn x() -> SuperFunction {
        SuperFunction::coordinate(s(), Coord::Even(0))
    }
    fn y() -> SuperFunction {
        SuperFunction::coordinate(s(), Coord::Even(1))
    }
    fn xi(k: usize) -> SuperFunction {
        SuperFunction::coordinate(s(), Coord::Odd(k))
    }
    const DX: Coord = Coord::Even(0);
    const DY: Coord = Coord::Even(1);

    #[test]
    fn apply_examples() {
        let d1 = VectorField::partial(s(), Coord::Odd(0));
        assert_eq!(d1.apply(&xi(0).mul(&xi(1))).unwrap(), xi(1));
        let v = VectorField::term(y(), DX);
        assert_eq!(v.apply(&x().mul(&x())).unwrap(), x().mul(&y()).scale(&qi(2)));
        let v = VectorField::term(xi(0), DX);
        assert_eq!(v.apply(&x().mul(&xi(1))).unwrap(), xi(0).mul(&xi(1)));
    }

    #[test]
    fn bracket_examples() {
        let a = VectorField::partial(s(), DY);
        let b = VectorField::term(y(), DX);
        assert_eq!(a.bracket(&b).unwrap(), VectorField::partial(s(), DX));

        let v = VectorField::term(xi(0), DX);
        assert!(v.bracket(&v).unwrap().is_zero());

        let p = VectorField::term(xi(0), Coord::Odd(1));
        let r = VectorField::term(xi(1), Coord::Odd(0));
        let expected = &VectorField::term(xi(0), Coord::Odd(0)) - &VectorField::term(xi(1), Coord::Odd(1));
        assert_eq!(p.bracket(&r).unwrap(), expected);
    }

    #[test]
    fn degrees() {
        assert_eq!(VectorField::partial(s(), Coord::Odd(0)).degree(), Some(-1));
        assert_eq!(VectorField::term(xi(0).mul(&xi(1)), Coord::Odd(0)).degree(), Some(1));
        let mixed = &VectorField::partial(s(), DX) + &VectorField::partial(s(), Coord::Odd(1));
        assert_eq!(mixed.degree(), None);
    }

    #[test]
    fn chart_mismatch() {
        let a = VectorField::partial(Shape::new(1, 0), Coord::Even(0));
        let b = VectorField::partial(Shape::new(2, 0), Coord::Even(0));
        assert!(matches!(a.bracket(&b), Err(Error::ChartMismatch(..))));
        assert!(a.apply(&SuperFunction::one(Shape::new(2, 0))).is_err());
    }

    #[test]
    fn homological_checks() {
        assert!(VectorField::zero(s()).is_homological());
        // degree 0 field is never homological unless zero
        assert!(!VectorField::partial(s(), DX).is_homological());
        // ξ1 ∂x: odd, squares to zero
        assert!(VectorField::term(xi(0), DX).is_homological());
        // ξ1 ∂x + x ξ2 ∂y... [[ , ]] = 2 ξ1 ξ2 ... nonzero
        let v = &VectorField::term(xi(0), DX) + &VectorField::term(x().mul(&xi(1)), DY);
        assert!(!v.is_homological());
        let _ = q(1, 2);
    }
}
