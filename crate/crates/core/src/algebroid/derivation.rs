use std::collections::BTreeMap;

use num_traits::One;

use super::ce::{increasing_tuples, sort_with_sign};
use super::data::{AlgebroidData, Section};
use crate::error::{Error, Result};
use crate::graded::{enumerate_shuffles, parity_sign, Rational, ShuffleSpec};
use crate::superfield::{Coord, Monomial, Shape, SuperFunction, VectorField};

/// A degree-`p` derivation of a vector bundle: an antisymmetric
/// `(p+1)`-bracket `D` on the frame and its symbol `σ_D`, a `p`-linear map
/// to base vector fields.
///
/// `body[(I, a)] = D^a_I` for increasing `I` of length `p+1`;
/// `symbol[(J, t)] = b^t_J` for increasing `J` of length `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    shape: Shape,
    degree: usize,
    body: BTreeMap<(Vec<usize>, usize), SuperFunction>,
    symbol: BTreeMap<(Vec<usize>, usize), SuperFunction>,
}

impl Derivation {
    pub fn zero(shape: Shape, degree: usize) -> Self {
        Derivation {
            shape,
            degree,
            body: BTreeMap::new(),
            symbol: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn body(&self) -> &BTreeMap<(Vec<usize>, usize), SuperFunction> {
        &self.body
    }

    pub fn symbol(&self) -> &BTreeMap<(Vec<usize>, usize), SuperFunction> {
        &self.symbol
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_empty() && self.symbol.is_empty()
    }

    fn check_index(&self, idx: &[usize], len: usize) -> Result<()> {
        if idx.len() != len || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= self.shape.n_odd) {
            return Err(Error::IndexOutOfRange(format!(
                "{idx:?} (need increasing, length {len}, below {})",
                self.shape.n_odd
            )));
        }
        Ok(())
    }

    fn check_coeff(&self, f: &SuperFunction) -> Result<()> {
        self.shape.check(f.shape())?;
        if !f.is_even_only() {
            return Err(Error::Precondition("derivation coefficients are even".into()));
        }
        Ok(())
    }

    /// Adds `f` to `D^a_I`.
    pub fn add_body(&mut self, idx: &[usize], a: usize, f: SuperFunction) -> Result<()> {
        self.check_index(idx, self.degree + 1)?;
        self.check_coeff(&f)?;
        if a >= self.shape.n_odd {
            return Err(Error::IndexOutOfRange(format!("target {a}")));
        }
        add_into(&mut self.body, (idx.to_vec(), a), f);
        Ok(())
    }

    /// Adds `f` to `b^t_J`.
    pub fn add_symbol(&mut self, idx: &[usize], t: usize, f: SuperFunction) -> Result<()> {
        self.check_index(idx, self.degree)?;
        self.check_coeff(&f)?;
        if t >= self.shape.n_even {
            return Err(Error::IndexOutOfRange(format!("base direction {t}")));
        }
        add_into(&mut self.symbol, (idx.to_vec(), t), f);
        Ok(())
    }

    /// `D(v) = v` with zero symbol.
    pub fn identity(shape: Shape) -> Self {
        let mut d = Derivation::zero(shape, 0);
        for a in 0..shape.n_odd {
            d.body.insert((vec![a], a), SuperFunction::one(shape));
        }
        d
    }

    /// The bracket derivation `D_Q` with symbol `ρ`.
    pub fn of_algebroid(data: &AlgebroidData) -> Self {
        let shape = data.shape();
        let mut d = Derivation::zero(shape, 1);
        for (&(i, j, k), c) in data.structure_terms() {
            d.body.insert((vec![i, j], k), c.clone());
        }
        for (&(i, t), b) in data.anchor_terms() {
            d.symbol.insert((vec![i], t), b.clone());
        }
        d
    }

    /// `D(ε_{j_0}, ..., ε_{j_p})` as a section.
    pub fn eval(&self, idx: &[usize]) -> Section {
        let mut out = vec![SuperFunction::zero(self.shape); self.shape.n_odd];
        if let Some((sign, sorted)) = sort_with_sign(idx) {
            let s = Rational::from_integer(sign.into());
            for ((i, a), f) in &self.body {
                if *i == sorted {
                    out[*a].add_scaled(f, &s);
                }
            }
        }
        out
    }

    /// `σ_D(ε_{j_1}, ..., ε_{j_p})` as a base vector field.
    pub fn eval_symbol(&self, idx: &[usize]) -> VectorField {
        let mut out = VectorField::zero(self.shape);
        if let Some((sign, sorted)) = sort_with_sign(idx) {
            let s = Rational::from_integer(sign.into());
            for ((j, t), f) in &self.symbol {
                if *j == sorted {
                    out.add_component(Coord::Even(*t), &f.scale(&s));
                }
            }
        }
        out
    }

    /// `Σ D^a_I ξ^I ∂/∂ξ^a - Σ b^t_J ξ^J ∂/∂x^t`, a field of degree `p`.
    pub fn to_field(&self) -> VectorField {
        let s = self.shape;
        let mut v = VectorField::zero(s);
        let ones = vec![0; s.n_even];
        for ((idx, a), f) in &self.body {
            let xi = SuperFunction::monomial(s, Rational::one(), &ones, idx);
            v.add_component(Coord::Odd(*a), &f.mul(&xi));
        }
        for ((idx, t), f) in &self.symbol {
            let xi = SuperFunction::monomial(s, -Rational::one(), &ones, idx);
            v.add_component(Coord::Even(*t), &f.mul(&xi));
        }
        v
    }

    /// Inverse of [`to_field`](Self::to_field); every homogeneous field of
    /// degree `p ≥ 0` is of this form.
    pub fn from_field(v: &VectorField, degree: usize) -> Result<Derivation> {
        let s = v.shape();
        let mut d = Derivation::zero(s, degree);
        for (c, m, q) in v.terms() {
            let idx: Vec<usize> = (0..s.n_odd).filter(|k| m.odd >> k & 1 == 1).collect();
            let coeff = SuperFunction::from_terms(
                s,
                [(
                    Monomial {
                        even: m.even.clone(),
                        odd: 0,
                    },
                    q.clone(),
                )],
            );
            match c {
                Coord::Odd(a) if idx.len() == degree + 1 => d.add_body(&idx, a, coeff)?,
                Coord::Even(t) if idx.len() == degree => d.add_symbol(&idx, t, -&coeff)?,
                _ => {
                    return Err(Error::Inconsistency(format!(
                        "field term is not of derivation shape for degree {degree}"
                    )))
                }
            }
        }
        Ok(d)
    }

    /// The bracket, defined by transport through [`to_field`](Self::to_field).
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        let v = self.to_field().bracket(&other.to_field())?;
        Derivation::from_field(&v, self.degree + other.degree)
    }

    /// `D(s_0, ..., s_p)` on arbitrary sections, expanded in the frame by
    /// `D(f_0 ε_0, ..., f_p ε_p) = Π f · D(ε) + Σ_i (-1)^{p-i} Π_{j≠i} f_j · σ_D(ε_{≠i})(f_i) ε_i`,
    /// the sign coming from moving the `i`-th slot last.
    pub fn eval_sections(&self, args: &[Section]) -> Result<Section> {
        let s = self.shape;
        if args.len() != self.degree + 1 {
            return Err(Error::LengthMismatch {
                expected: self.degree + 1,
                found: args.len(),
            });
        }
        let mut out = vec![SuperFunction::zero(s); s.n_odd];
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&c| !a[c].is_zero()).collect())
            .collect();
        let mut choice = vec![0usize; args.len()];
        if supports.iter().any(|v| v.is_empty()) {
            return Ok(out);
        }
        loop {
            let idx: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| supports[i][c]).collect();
            let coeffs: Vec<&SuperFunction> = idx.iter().enumerate().map(|(i, &c)| &args[i][c]).collect();
            let prod = coeffs.iter().fold(SuperFunction::one(s), |acc, f| acc.mul(f));
            for (o, v) in out.iter_mut().zip(self.eval(&idx)) {
                o.add_scaled(&prod.mul(&v), &Rational::one());
            }
            for i in 0..idx.len() {
                let rest: Vec<usize> = idx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| c).collect();
                let df = self.eval_symbol(&rest).apply(coeffs[i])?;
                if df.is_zero() {
                    continue;
                }
                let others = coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(SuperFunction::one(s), |acc, (_, f)| acc.mul(f));
                let sign = Rational::from_integer(parity_sign((self.degree - i) as i64).into());
                out[idx[i]].add_scaled(&others.mul(&df), &sign);
            }
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Ok(out);
                }
                choice[pos] += 1;
                if choice[pos] < supports[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `(D∘E)(a_0, ..., a_{p+q}) = Σ_{τ ∈ Sh(q+1, p)} sgn(τ) D(E(a_τ(0..=q)), a_τ(q+1..))`.
    fn compose(&self, other: &Derivation, args: &[Section]) -> Result<Section> {
        let (p, q) = (self.degree, other.degree);
        let mut out = vec![SuperFunction::zero(self.shape); self.shape.n_odd];
        for tau in enumerate_shuffles(&ShuffleSpec::new([q + 1, p])) {
            let word = tau.permute(args);
            let inner = other.eval_sections(&word[..=q])?;
            let mut outer_args = vec![inner];
            outer_args.extend_from_slice(&word[q + 1..]);
            let v = self.eval_sections(&outer_args)?;
            let sign = Rational::from_integer(tau.parity().into());
            for (o, x) in out.iter_mut().zip(v) {
                o.add_scaled(&x, &sign);
            }
        }
        Ok(out)
    }

    fn commutator_on(&self, other: &Derivation, args: &[Section]) -> Result<Section> {
        let pq = (self.degree * other.degree) as i64;
        let ed = other.compose(self, args)?;
        let de = self.compose(other, args)?;
        let s = Rational::from_integer(parity_sign(pq).into());
        Ok(ed.iter().zip(&de).map(|(a, b)| a - &b.scale(&s)).collect())
    }

    /// The bracket `E∘D - (-1)^{pq} D∘E` computed on sections, without
    /// passing through fields. The symbol is read off from the Leibniz
    /// defect on `x^t ε_0`, which carries `(-1)^p`. Agrees with
    /// [`bracket`](Self::bracket).
    pub fn composition_bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.shape.check(other.shape)?;
        let s = self.shape;
        let deg = self.degree + other.degree;
        let mut out = Derivation::zero(s, deg);
        let frame = |i: usize| -> Section {
            let mut v = vec![SuperFunction::zero(s); s.n_odd];
            v[i] = SuperFunction::one(s);
            v
        };
        for idx in increasing_tuples(s.n_odd, deg + 1) {
            let args: Vec<Section> = idx.iter().map(|&i| frame(i)).collect();
            for (a, f) in self.commutator_on(other, &args)?.into_iter().enumerate() {
                if !f.is_zero() {
                    out.add_body(&idx, a, f)?;
                }
            }
        }
        if s.n_odd == 0 {
            return Ok(out);
        }
        let sign = Rational::from_integer(parity_sign(deg as i64).into());
        for idx in increasing_tuples(s.n_odd, deg) {
            let mut args: Vec<Section> = vec![frame(0)];
            args.extend(idx.iter().map(|&i| frame(i)));
            let plain = self.commutator_on(other, &args)?;
            for t in 0..s.n_even {
                let x = SuperFunction::coordinate(s, Coord::Even(t));
                args[0] = frame(0).iter().map(|f| f.mul(&x)).collect();
                let moved = self.commutator_on(other, &args)?;
                let defect = &moved[0] - &x.mul(&plain[0]);
                if !defect.is_zero() {
                    out.add_symbol(&idx, t, defect.scale(&sign))?;
                }
            }
        }
        Ok(out)
    }

    /// Frame tuples the derivation is defined on.
    pub fn arguments(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.shape.n_odd, self.degree + 1)
    }
}

fn add_into(map: &mut BTreeMap<(Vec<usize>, usize), SuperFunction>, key: (Vec<usize>, usize), f: SuperFunction) {
    let mut cur = map
        .get(&key)
        .cloned()
        .unwrap_or_else(|| SuperFunction::zero(f.shape()));
    cur.add_scaled(&f, &Rational::one());
    if cur.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;

    #[test]
    fn identity_is_euler_field() {
        let s = Shape::new(1, 3);
        let v = Derivation::identity(s).to_field();
        for a in 0..3 {
            assert_eq!(v.component(Coord::Odd(a)), SuperFunction::coordinate(s, Coord::Odd(a)));
        }
        assert_eq!(v.components().len(), 3);
    }

    #[test]
    fn dq_maps_to_xq() {
        for g in [presets::sl2(), presets::tangent_rn(1), presets::heisenberg3()] {
            assert_eq!(Derivation::of_algebroid(&g).to_field(), g.build_xq());
        }
    }

    #[test]
    fn dq_squares_to_zero() {
        let d = Derivation::of_algebroid(&presets::sl2());
        assert!(d.bracket(&d).unwrap().is_zero());
        let id = Derivation::identity(Shape::new(0, 3));
        assert!(id.bracket(&id).unwrap().is_zero());
    }
}

#[cfg(test)]
mod composition {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::qi;

    fn bundle_map(shape: Shape, m: &[[i64; 3]; 3]) -> Derivation {
        let mut d = Derivation::zero(shape, 0);
        for (i, row) in m.iter().enumerate() {
            for (a, &c) in row.iter().enumerate() {
                if c != 0 {
                    d.add_body(&[i], a, SuperFunction::constant(shape, qi(c))).unwrap();
                }
            }
        }
        d
    }

    fn apply(d: &Derivation, v: &Section) -> Section {
        let s = d.shape();
        let mut out = vec![SuperFunction::zero(s); s.n_odd];
        for (i, c) in v.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(d.eval(&[i])) {
                o.add_scaled(&c.mul(&x), &Rational::one());
            }
        }
        out
    }

    fn bilinear(e: &Derivation, a: &Section, b: &Section) -> Section {
        let s = e.shape();
        let mut out = vec![SuperFunction::zero(s); s.n_odd];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                for (o, z) in out.iter_mut().zip(e.eval(&[i, j])) {
                    o.add_scaled(&x.mul(y).mul(&z), &Rational::one());
                }
            }
        }
        out
    }

    fn unit(shape: Shape, i: usize) -> Section {
        let mut v = vec![SuperFunction::zero(shape); shape.n_odd];
        v[i] = SuperFunction::one(shape);
        v
    }

    const P: [[i64; 3]; 3] = [[1, 2, 0], [0, -1, 3], [4, 0, 1]];
    const R: [[i64; 3]; 3] = [[0, 1, -2], [1, 1, 0], [0, 5, -1]];

    #[test]
    fn degree_zero_pairs_give_the_commutator() {
        let s = Shape::new(0, 3);
        let (phi, psi) = (bundle_map(s, &P), bundle_map(s, &R));
        let b = phi.bracket(&psi).unwrap();
        for i in 0..3 {
            let e = unit(s, i);
            let expect: Vec<SuperFunction> = apply(&psi, &apply(&phi, &e))
                .iter()
                .zip(apply(&phi, &apply(&psi, &e)))
                .map(|(x, y)| x - &y)
                .collect();
            assert_eq!(apply(&b, &e), expect);
        }
    }

    #[test]
    fn degree_zero_one_pairs_give_the_insertion_commutator() {
        let g = presets::sl2();
        let s = g.shape();
        let d = bundle_map(s, &P);
        let e = Derivation::of_algebroid(&g);
        let b = d.bracket(&e).unwrap();
        // -((-1)^{pq} D∘E - E∘D) at p = 0: E(Da, b) + E(a, Db) - D(E(a, b))
        for i in 0..3 {
            for j in 0..3 {
                let (a, c) = (unit(s, i), unit(s, j));
                let lhs = b.eval(&[i, j]);
                let ins = bilinear(&e, &apply(&d, &a), &c);
                let ins2 = bilinear(&e, &a, &apply(&d, &c));
                let comp = apply(&d, &bilinear(&e, &a, &c));
                let expect: Vec<SuperFunction> = (0..3).map(|k| &(&ins[k] + &ins2[k]) - &comp[k]).collect();
                assert_eq!(lhs, expect, "({i},{j})");
            }
        }
    }
}
