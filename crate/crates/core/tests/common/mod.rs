#![allow(dead_code)]

use lie_deform::graded::qi;
use lie_deform::superfield::{Coord, Shape, SuperFunction, VectorField};
use rand::seq::index::sample;
use rand::Rng;

/// A function whose terms all have exactly `odd` odd factors and even
/// degree at most `max_even`.
pub fn function(rng: &mut impl Rng, shape: Shape, odd: usize, max_even: u32, terms: usize) -> SuperFunction {
    let mut f = SuperFunction::zero(shape);
    if odd > shape.n_odd {
        return f;
    }
    for _ in 0..terms {
        let mut even = vec![0u32; shape.n_even];
        let mut budget = rng.gen_range(0..=max_even);
        while budget > 0 && shape.n_even > 0 {
            even[rng.gen_range(0..shape.n_even)] += 1;
            budget -= 1;
        }
        let odds: Vec<usize> = sample(rng, shape.n_odd, odd).into_vec();
        let c = qi(rng.gen_range(-3..=3));
        f.add_scaled(&SuperFunction::monomial(shape, c, &even, &odds), &qi(1));
    }
    f
}

/// A homogeneous field of the given degree (possibly zero).
pub fn field(rng: &mut impl Rng, shape: Shape, degree: i64, max_even: u32) -> VectorField {
    let mut v = VectorField::zero(shape);
    let targets = (0..shape.n_even).map(Coord::Even).chain((0..shape.n_odd).map(Coord::Odd));
    for c in targets {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let odd = degree + c.degree();
        if odd < 0 {
            continue;
        }
        let f = function(rng, shape, odd as usize, max_even, 2);
        v.add_component(c, &f);
    }
    v
}

pub fn odd_degree(v: &VectorField) -> u32 {
    v.terms().map(|(_, m, _)| m.odd_degree()).max().unwrap_or(0)
}

pub fn sign(e: i64) -> lie_deform::graded::Rational {
    qi(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}
