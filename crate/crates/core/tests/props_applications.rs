use lie_deform::algebroid::{deformation_residual, presets, AlgebroidData};
use lie_deform::applications::{
    foliation_infinitesimal, lie_algebra_deformation, split_sum_deformation, subalgebra_deformation,
    tangent_frame_algebroid, LieAlgebraData,
};
use lie_deform::graded::{q, qi, Rational};
use lie_deform::random::{random_poly, rng};
use lie_deform::subalgebroid::{BundleForm, SplitSetup};
use lie_deform::superfield::{Chart, Coord, EvenRole, Monomial, OddRole, SuperFunction, VectorField};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn constant_of(f: &SuperFunction) -> Rational {
    let m = Monomial { even: vec![], odd: 0 };
    f.coefficient(&m)
}

/// Structure constants `c[i][j][k]` of a point-base algebroid.
fn constants(g: &AlgebroidData) -> Vec<Vec<Vec<Rational>>> {
    let n = g.rank();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| constant_of(&g.bracket_coeff(i, j, k))).collect()).collect())
        .collect()
}

fn jacobi_by_hand(c: &[Vec<Vec<Rational>>]) -> bool {
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                for m in 0..n {
                    let mut sum = Rational::zero();
                    for (a, b, d) in [(i, j, l), (j, l, i), (l, i, j)] {
                        for k in 0..n {
                            sum += &c[a][b][k] * &c[k][d][m];
                        }
                    }
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn random_constants(r: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize, usize, Rational)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if r.gen_bool(density) {
                    out.push((i, j, k, qi(r.gen_range(-1..=1))));
                }
            }
        }
    }
    out
}

fn random_point_xq(r: &mut ChaCha8Rng, g: &AlgebroidData) -> VectorField {
    let mu = LieAlgebraData::from_constants(&["a", "b", "c"], &random_constants(r, 3, 0.2)).unwrap();
    let x = mu.data().build_xq();
    match r.gen_range(0..3) {
        0 => g.build_xq().scale(&qi(r.gen_range(-1..=1))),
        1 => x,
        _ => VectorField::zero(g.shape()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lie_deformation_matches_jacobi(seed: u64, which in 0usize..3) {
        let mut r = rng(seed);
        let g = [presets::sl2(), presets::abelian(3), presets::heisenberg3()][which].clone();
        let gl = LieAlgebraData::new(g.clone()).unwrap();
        let mu_c = random_constants(&mut r, 3, 0.25);
        let mu = LieAlgebraData::from_constants(&["a", "b", "c"], &mu_c).unwrap();
        let res = lie_algebra_deformation(&gl, &mu).unwrap();
        let mut c = constants(&g);
        for (i, j, k, v) in &mu_c {
            c[*i][*j][*k] += v;
            c[*j][*i][*k] -= v;
        }
        prop_assert_eq!(res.residual.is_zero(), jacobi_by_hand(&c));
        prop_assert_eq!(res.jacobi_holds, res.residual.is_zero());
    }

    #[test]
    fn borel_deformations_lie_on_the_parabola(n in -6i64..=6, d in 1i64..=3, m in -6i64..=6, on: bool) {
        let a = q(n, d);
        let b = if on { &a * &a / qi(4) } else { q(m, d) };
        let g = LieAlgebraData::new(presets::sl2()).unwrap();
        let res = subalgebra_deformation(&g, &[0, 1], &[vec![a.clone()], vec![b.clone()]], 64).unwrap();
        prop_assert_eq!(res.is_zero(), &a * &a == qi(4) * &b);
    }

    #[test]
    fn line_fields_accept_every_deformation(seed: u64) {
        let mut r = rng(seed);
        let chart = Chart::build(
            &[("x", EvenRole::Base), ("y", EvenRole::Base)],
            &[("a", OddRole::Sub), ("b", OddRole::Complement)],
        ).unwrap();
        let s = chart.shape();
        let f = random_poly(&mut r, s, &[0, 1], 2, 3);
        let data = tangent_frame_algebroid(chart, &[vec![SuperFunction::zero(s), f], vec![SuperFunction::zero(s); 2]]).unwrap();
        let st = SplitSetup::new(data).unwrap();
        let mut psi = BundleForm::zero(s, 1, 1);
        psi.set(&[0], vec![random_poly(&mut r, s, &[0, 1], 3, 3)]).unwrap();
        prop_assert!(foliation_infinitesimal(&st, &psi).unwrap().closed);
    }

    #[test]
    fn sum_deformations_split_into_blocks(seed: u64, cross: bool) {
        let mut r = rng(seed);
        let (a, b) = (presets::sl2(), presets::heisenberg3());
        let sum = a.direct_sum(&b).unwrap();
        let s = sum.shape();
        let xa = random_point_xq(&mut r, &a);
        let xb = random_point_xq(&mut r, &b);
        let mut x = &xa.embed(s, &[], &[0, 1, 2]) + &xb.embed(s, &[], &[3, 4, 5]);
        if cross {
            let mixed = SuperFunction::monomial(s, qi(1), &[], &[0, 3]);
            x.add_component(Coord::Odd(r.gen_range(0..6)), &mixed);
            prop_assert!(split_sum_deformation(&a, &b, &x).is_err());
        } else {
            let (ya, yb) = split_sum_deformation(&a, &b, &x).unwrap();
            prop_assert_eq!(&ya, &xa);
            prop_assert_eq!(&yb, &xb);
            let whole = deformation_residual(&sum.build_xq(), &x).unwrap().is_zero();
            let parts = deformation_residual(&a.build_xq(), &xa).unwrap().is_zero()
                && deformation_residual(&b.build_xq(), &xb).unwrap().is_zero();
            prop_assert_eq!(whole, parts);
        }
    }
}
