use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::chart::{Chart, Coord, Shape};
use crate::error::{Error, Result};
use crate::graded::{qi, Rational};

/// An even monomial times a sorted product of odd coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub even: Vec<u32>,
    /// Bit `k` set iff `ξ^k` occurs; the factors are ordered by index.
    pub odd: u64,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial {
            even: vec![0; n_even],
            odd: 0,
        }
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn even_degree(&self) -> u32 {
        self.even.iter().sum()
    }

    /// Product with the Koszul sign of sorting the odd factors, or `None`
    /// when an odd coordinate repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(i32, Monomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let sign = merge_sign(self.odd, other.odd);
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(a, b)| a + b)
            .collect();
        Some((
            sign,
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
        ))
    }
}

/// Sign of reordering `A · B` (each sorted) into a single sorted product.
pub(crate) fn merge_sign(a: u64, b: u64) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let k = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if k >= 63 { 0 } else { a >> (k + 1) };
        swaps += above.count_ones();
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A polynomial superfunction: finite sum of rational multiples of
/// [`Monomial`]s. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperFunction {
    shape: Shape,
    terms: BTreeMap<Monomial, Rational>,
}

impl SuperFunction {
    pub fn zero(shape: Shape) -> Self {
        SuperFunction {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(shape: Shape, c: Rational) -> Self {
        let mut f = Self::zero(shape);
        f.add_term(Monomial::one(shape.n_even), c);
        f
    }

    pub fn one(shape: Shape) -> Self {
        Self::constant(shape, Rational::one())
    }

    /// The coordinate function of `c`.
    pub fn coordinate(shape: Shape, c: Coord) -> Self {
        let mut m = Monomial::one(shape.n_even);
        match c {
            Coord::Even(i) => m.even[i] = 1,
            Coord::Odd(k) => m.odd = 1 << k,
        }
        let mut f = Self::zero(shape);
        f.add_term(m, Rational::one());
        f
    }

    /// `coeff · Π x_i^{e_i} · ξ^{k_1} ... ξ^{k_r}` with the odd factors in
    /// the given order (the sign of sorting them is absorbed).
    pub fn monomial(shape: Shape, coeff: Rational, even: &[u32], odd: &[usize]) -> Self {
        let mut e = vec![0; shape.n_even];
        e[..even.len()].copy_from_slice(even);
        let mut f = Self::constant(shape, coeff);
        f = f.mul(&SuperFunction {
            shape,
            terms: BTreeMap::from([(
                Monomial {
                    even: e,
                    odd: 0,
                },
                Rational::one(),
            )]),
        });
        for &k in odd {
            f = f.mul(&Self::coordinate(shape, Coord::Odd(k)));
        }
        f
    }

    pub fn from_terms(shape: Shape, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut f = Self::zero(shape);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.even.len(), self.shape.n_even);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SuperFunction, s: &Rational) {
        debug_assert_eq!(self.shape, other.shape);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> SuperFunction {
        if s.is_zero() {
            return Self::zero(self.shape);
        }
        SuperFunction {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &SuperFunction) -> SuperFunction {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = Self::zero(self.shape);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.shape.check(other.shape)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, n: u32) -> SuperFunction {
        let mut acc = Self::one(self.shape);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x^i`.
    pub fn d_even(&self, i: usize) -> SuperFunction {
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            let e = m.even[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.even[i] -= 1;
            out.add_term(m2, c * qi(e as i64));
        }
        out
    }

    /// Left derivative `∂/∂ξ^k`: moves `ξ^k` to the front, then removes it.
    pub fn d_odd(&self, k: usize) -> SuperFunction {
        let bit = 1u64 << k;
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            if m.odd & bit == 0 {
                continue;
            }
            let before = (m.odd & (bit - 1)).count_ones();
            let mut m2 = m.clone();
            m2.odd &= !bit;
            out.add_term(m2, if before.is_multiple_of(2) { c.clone() } else { -c.clone() });
        }
        out
    }

    pub fn derivative(&self, c: Coord) -> SuperFunction {
        match c {
            Coord::Even(i) => self.d_even(i),
            Coord::Odd(k) => self.d_odd(k),
        }
    }

    /// Parts of fixed odd degree (= ℤ-degree of a superfunction).
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, SuperFunction> {
        let mut parts: BTreeMap<i64, SuperFunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.odd_degree() as i64)
                .or_insert_with(|| Self::zero(self.shape))
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    /// `Some(d)` if every term has odd degree `d`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.odd_degree() as i64);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_even_only(&self) -> bool {
        self.terms.keys().all(|m| m.odd == 0)
    }

    /// Maximal total degree in the even variables listed.
    pub fn max_degree_in(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&i| m.even[i]).sum())
            .max()
            .unwrap_or(0)
    }

    /// Drop every term containing one of the given even variables or odd
    /// coordinates (restriction to the locus where they vanish).
    pub fn restrict_zero(&self, even_vars: &[usize], odd_mask: u64) -> SuperFunction {
        SuperFunction {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd & odd_mask == 0 && even_vars.iter().all(|&i| m.even[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if no term involves the listed even variables or odd coordinates.
    pub fn is_free_of(&self, even_vars: &[usize], odd_mask: u64) -> bool {
        self.terms
            .keys()
            .all(|m| m.odd & odd_mask == 0 && even_vars.iter().all(|&i| m.even[i] == 0))
    }

    /// Algebra homomorphism sending coordinate `c` to `subs[c]`, indexed
    /// even coordinates first, then odd. Odd coordinates must go to odd
    /// (degree 1) functions for the result to be a superalgebra map.
    pub fn substitute(&self, subs: &[SuperFunction]) -> Result<SuperFunction> {
        let n = self.shape.n_even + self.shape.n_odd;
        if subs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: subs.len(),
            });
        }
        let target = match subs.first() {
            Some(s) => s.shape,
            None => self.shape,
        };
        for s in subs {
            target.check(s.shape)?;
        }
        let mut powers: BTreeMap<(usize, u32), SuperFunction> = BTreeMap::new();
        let mut out = SuperFunction::zero(target);
        for (m, c) in &self.terms {
            let mut acc = SuperFunction::constant(target, c.clone());
            for (i, &e) in m.even.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| subs[i].pow(e))
                    .clone();
                acc = acc.mul(&p);
                if acc.is_zero() {
                    break;
                }
            }
            let mut odd = m.odd;
            while odd != 0 && !acc.is_zero() {
                let k = odd.trailing_zeros() as usize;
                odd &= odd - 1;
                acc = acc.mul(&subs[self.shape.n_even + k]);
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Re-embed into a chart with more coordinates: even index `i` goes to
    /// `even_map[i]`, odd index `k` to `odd_map[k]`. Index maps must be
    /// increasing on odd coordinates so that no sign is introduced.
    pub fn embed(&self, shape: Shape, even_map: &[usize], odd_map: &[usize]) -> SuperFunction {
        debug_assert!(odd_map.windows(2).all(|w| w[0] < w[1]));
        let mut out = SuperFunction::zero(shape);
        for (m, c) in &self.terms {
            let mut e = vec![0; shape.n_even];
            for (i, &p) in m.even.iter().enumerate() {
                e[even_map[i]] = p;
            }
            let mut o = 0u64;
            for (k, &t) in odd_map.iter().enumerate() {
                if m.odd & (1 << k) != 0 {
                    o |= 1 << t;
                }
            }
            out.add_term(Monomial { even: e, odd: o }, c.clone());
        }
        out
    }

    /// Human-readable form using the chart's names.
    pub fn display<'a>(&'a self, chart: &'a Chart) -> DisplayFunction<'a> {
        DisplayFunction { f: self, chart }
    }
}

pub struct DisplayFunction<'a> {
    f: &'a SuperFunction,
    chart: &'a Chart,
}

pub(crate) fn monomial_string(m: &Monomial, chart: &Chart) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.even.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.even[i].name.clone()),
            _ => parts.push(format!("{}^{}", chart.even[i].name, e)),
        }
    }
    for k in 0..chart.n_odd() {
        if m.odd & (1 << k) != 0 {
            parts.push(format!("ξ{}", chart.odd[k].name));
        }
    }
    parts.join("·")
}

impl fmt::Display for DisplayFunction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.f.terms.iter().enumerate() {
            let mono = monomial_string(m, self.chart);
            let sep = if n == 0 { "" } else { " + " };
            if mono.is_empty() {
                write!(f, "{sep}{c}")?;
            } else if c.is_one() {
                write!(f, "{sep}{mono}")?;
            } else {
                write!(f, "{sep}({c})·{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        SuperFunction::mul(self, rhs)
    }
}
