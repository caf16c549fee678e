//! Seeded random instances for cross-checking the residuals against the
//! classical oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{increasing_tuples, AlgebroidData, Derivation};
use crate::applications::tangent_frame_algebroid;
use crate::graded::qi;
use crate::subalgebroid::{DeformationPair, SplitSetup};
use crate::superfield::{Chart, Coord, EvenRole, OddRole, Shape, SuperFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial in the even coordinates `vars` of total degree
/// `≤ max_degree`, integer coefficients in `-range..=range`, about half of
/// the monomials present.
pub fn random_poly(rng: &mut impl Rng, shape: Shape, vars: &[usize], max_degree: u32, range: i64) -> SuperFunction {
    let mut out = SuperFunction::zero(shape);
    let mut exps = vec![vec![0u32; shape.n_even]];
    for &v in vars {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for p in 0..=max_degree.saturating_sub(used) {
                let mut e2 = e.clone();
                e2[v] = p;
                next.push(e2);
            }
        }
        exps = next;
    }
    for e in exps {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-range..=range);
            out.add_scaled(&SuperFunction::monomial(shape, qi(c), &e, &[]), &qi(1));
        }
    }
    out
}

/// A split setup with a candidate pair and whether it was built to be a
/// subalgebroid.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub family: &'static str,
    pub setup: SplitSetup,
    pub pair: DeformationPair,
    pub built_positive: bool,
}

fn nonzero_poly(rng: &mut impl Rng, shape: Shape, vars: &[usize], max_degree: u32) -> SuperFunction {
    loop {
        let p = random_poly(rng, shape, vars, max_degree, 3);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `Tℝ²` in the frame `∂x + y g(x,y) ∂y, ∂y` around `S = {y = 0}`,
/// `E = span(first)`.
fn tangent_frame(rng: &mut impl Rng, positive: bool) -> RandomInstance {
    let chart = Chart::build(
        &[("x", EvenRole::Base), ("y", EvenRole::Normal)],
        &[("a", OddRole::Sub), ("b", OddRole::Complement)],
    )
    .expect("chart");
    let s = chart.shape();
    let y = SuperFunction::coordinate(s, Coord::Even(1));
    let g = random_poly(rng, s, &[0, 1], 1, 2);
    let f = y.mul(&g);
    let upper = vec![vec![SuperFunction::zero(s), f.clone()], vec![SuperFunction::zero(s); 2]];
    let data = tangent_frame_algebroid(chart, &upper).expect("frame");
    let setup = SplitSetup::new(data).expect("setup");
    // tangent to y = σ(x) iff φ = σ' - f(x, σ)
    let sigma = random_poly(rng, s, &[0], 1, 2);
    let mut subs: Vec<SuperFunction> = vec![SuperFunction::coordinate(s, Coord::Even(0)), sigma.clone()];
    subs.extend((0..s.n_odd).map(|k| SuperFunction::coordinate(s, Coord::Odd(k))));
    let mut phi = &sigma.d_even(0) - &f.substitute(&subs).expect("substitution");
    if !positive {
        phi = &phi + &nonzero_poly(rng, s, &[0], 2);
    }
    RandomInstance {
        family: "tangent frame",
        setup,
        pair: DeformationPair {
            sigma: vec![sigma],
            phi: vec![vec![phi]],
        },
        built_positive: positive,
    }
}

/// `sl(2)` with brackets scaled by `s(x, y)`, zero anchor, Borel `E`.
fn scaled_sl2(rng: &mut impl Rng, positive: bool) -> RandomInstance {
    let chart = Chart::build(
        &[("x", EvenRole::Base), ("y", EvenRole::Normal)],
        &[("h", OddRole::Sub), ("e", OddRole::Sub), ("f", OddRole::Complement)],
    )
    .expect("chart");
    let sh = chart.shape();
    let scale = nonzero_poly(rng, sh, &[0, 1], 2);
    let mut data = AlgebroidData::new(chart);
    for (i, j, k, c) in [(1, 2, 0, 1), (0, 1, 1, 2), (0, 2, 2, -2)] {
        data.add_bracket(i, j, k, scale.scale(&qi(c))).expect("bracket");
    }
    let setup = SplitSetup::new(data).expect("setup");
    let sigma = random_poly(rng, sh, &[0], 2, 2);
    // a² = 4b on the nose
    let a = random_poly(rng, sh, &[0], 1, 2).scale(&qi(2));
    let mut b = a.mul(&a).scale(&crate::graded::q(1, 4));
    if !positive {
        b = &b + &nonzero_poly(rng, sh, &[0], 2);
    }
    RandomInstance {
        family: "scaled sl2",
        setup,
        pair: DeformationPair {
            sigma: vec![sigma],
            phi: vec![vec![a], vec![b]],
        },
        built_positive: positive,
    }
}

/// `sl(2)` acting on the `y`-line by `∂y, -2y∂y, -y²∂y`, over `x`, with
/// `E = span(h, f)` at `y = 0`. Stabilizers: `φ = (2σ, σ²)`.
fn sl2_on_line(rng: &mut impl Rng, positive: bool) -> RandomInstance {
    let chart = Chart::build(
        &[("x", EvenRole::Base), ("y", EvenRole::Normal)],
        &[("h", OddRole::Sub), ("e", OddRole::Complement), ("f", OddRole::Sub)],
    )
    .expect("chart");
    let s = chart.shape();
    let y = SuperFunction::coordinate(s, Coord::Even(1));
    let mut data = AlgebroidData::new(chart);
    for (i, j, k, c) in [(1, 2, 0, 1), (0, 1, 1, 2), (0, 2, 2, -2)] {
        data.add_bracket_const(i, j, k, qi(c)).expect("bracket");
    }
    data.add_anchor(1, 1, SuperFunction::one(s)).expect("anchor");
    data.add_anchor(0, 1, y.scale(&qi(-2))).expect("anchor");
    data.add_anchor(2, 1, y.mul(&y).scale(&qi(-1))).expect("anchor");
    let setup = SplitSetup::new(data).expect("setup");
    let sigma = random_poly(rng, s, &[0], 1, 2);
    let mut ph = sigma.scale(&qi(2));
    let mut pf = sigma.mul(&sigma);
    if !positive {
        if rng.gen_bool(0.5) {
            ph = &ph + &nonzero_poly(rng, s, &[0], 1);
        } else {
            pf = &pf + &nonzero_poly(rng, s, &[0], 2);
        }
    }
    RandomInstance {
        family: "sl2 on a line",
        setup,
        pair: DeformationPair {
            sigma: vec![sigma],
            phi: vec![vec![ph], vec![pf]],
        },
        built_positive: positive,
    }
}

/// `count` instances cycling through the families, alternating positives
/// and perturbed negatives. Base dimension ≤ 2, rank ≤ 3, coefficient
/// degree ≤ 3.
pub fn random_subalgebroid_instances(seed: u64, count: usize) -> Vec<RandomInstance> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let positive = i % 2 == 0;
            match (i / 2) % 3 {
                0 => tangent_frame(&mut r, positive),
                1 => scaled_sl2(&mut r, positive),
                _ => sl2_on_line(&mut r, positive),
            }
        })
        .collect()
}

/// A degree-`p` derivation with random polynomial body and symbol
/// coefficients of degree `≤ max_degree` in all even coordinates.
pub fn random_derivation(rng: &mut impl Rng, shape: Shape, degree: usize, max_degree: u32) -> Derivation {
    let vars: Vec<usize> = (0..shape.n_even).collect();
    let mut d = Derivation::zero(shape, degree);
    for idx in increasing_tuples(shape.n_odd, degree + 1) {
        for a in 0..shape.n_odd {
            let f = random_poly(rng, shape, &vars, max_degree, 2);
            if !f.is_zero() {
                d.add_body(&idx, a, f).expect("valid index");
            }
        }
    }
    for idx in increasing_tuples(shape.n_odd, degree) {
        for t in 0..shape.n_even {
            let f = random_poly(rng, shape, &vars, max_degree, 2);
            if !f.is_zero() {
                d.add_symbol(&idx, t, f).expect("valid index");
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subalgebroid::subalgebroid_mc_residual;

    #[test]
    fn families_are_algebroids_with_subalgebroids() {
        for inst in random_subalgebroid_instances(7, 12) {
            assert!(inst.setup.data().validate().unwrap().passed(), "{}", inst.family);
            assert!(inst.setup.base_defect().unwrap().is_zero(), "{}", inst.family);
        }
    }

    #[test]
    fn positives_are_accepted() {
        for inst in random_subalgebroid_instances(11, 18) {
            let r = subalgebroid_mc_residual(&inst.setup, &inst.pair, 64).unwrap();
            if inst.built_positive {
                assert!(r.is_zero(), "{}", inst.family);
            }
        }
    }
}
