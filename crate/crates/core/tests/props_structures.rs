mod common;

use common::{field, function};
use lie_deform::algebroid::{ce_differential, deformation_residual, presets, AlgebroidData, CEForm, Derivation};
use lie_deform::applications::{foliation_r3, split_chart, tangent_frame_algebroid};
use lie_deform::cohomology::m1_cohomology;
use lie_deform::derived::{
    check_linfty_axioms, derived_bracket, jacobiator, mc_residual, DerivedLInfty, LInftyAlgebra, MCDelta,
    TwistedVAlgebra, VAlgebra,
};
use lie_deform::graded::{koszul_sign, q, qi, DegreeVector, Permutation, Rational};
use lie_deform::random::{random_derivation, random_poly, random_subalgebroid_instances, rng};
use lie_deform::subalgebroid::{
    explicit_m1, graph_closure_oracle, simultaneous_residual, subalgebroid_mc_residual, tangency_oracle, BundleForm, DeformationPair,
    SplitSetup,
};
use lie_deform::superfield::{Chart, Coord, EvenRole, OddRole, SuperFunction, VectorField};
use lie_deform::Result;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn increasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|i| {
            increasing(n, k - 1)
                .into_iter()
                .filter(move |t| t.first().is_none_or(|&f| f > i))
                .map(move |mut t| {
                    t.insert(0, i);
                    t
                })
        })
        .collect()
}

fn random_data(r: &mut ChaCha8Rng, chart: Chart, density: f64, max_deg: u32) -> AlgebroidData {
    let s = chart.shape();
    let vars: Vec<usize> = (0..s.n_even).collect();
    let mut d = AlgebroidData::new(chart);
    for i in 0..s.n_odd {
        for j in i + 1..s.n_odd {
            for k in 0..s.n_odd {
                if r.gen_bool(density) {
                    d.add_bracket(i, j, k, random_poly(r, s, &vars, max_deg, 2)).unwrap();
                }
            }
        }
        for t in 0..s.n_even {
            if r.gen_bool(density) {
                d.add_anchor(i, t, random_poly(r, s, &vars, max_deg, 2)).unwrap();
            }
        }
    }
    d
}

fn plane_frame(r: &mut ChaCha8Rng) -> AlgebroidData {
    let chart = Chart::plain(&["x", "y"], &["a", "b"]).unwrap();
    let s = chart.shape();
    let f = random_poly(r, s, &[0, 1], 2, 2);
    tangent_frame_algebroid(chart, &[vec![SuperFunction::zero(s), f], vec![SuperFunction::zero(s); 2]]).unwrap()
}

fn valid_data(r: &mut ChaCha8Rng) -> AlgebroidData {
    match r.gen_range(0..5) {
        0 => presets::sl2(),
        1 => presets::heisenberg3(),
        2 => presets::affine2(),
        3 => presets::tangent_rn(2),
        _ => plane_frame(r),
    }
}

fn split(g: &AlgebroidData, sub: &[usize]) -> SplitSetup {
    SplitSetup::new(g.with_chart(split_chart(g.chart(), sub).unwrap()).unwrap()).unwrap()
}

fn borel() -> SplitSetup {
    split(&presets::sl2(), &[0, 1])
}

fn point_setups() -> Vec<SplitSetup> {
    vec![
        borel(),
        split(&presets::abelian(3), &[0, 1]),
        split(&presets::sl2(), &[1]),
        split(&presets::heisenberg3(), &[0, 2]),
        split(&presets::affine2(), &[0]),
    ]
}

fn setup_pool(r: &mut ChaCha8Rng) -> SplitSetup {
    let mut pool = point_setups();
    pool.push(foliation_r3());
    pool.extend(random_subalgebroid_instances(r.gen(), 3).into_iter().map(|i| i.setup));
    pool.swap_remove(r.gen_range(0..pool.len()))
}

fn poly_bound(st: &SplitSetup) -> u32 {
    if st.shape().n_even == 0 {
        0
    } else {
        1
    }
}

fn combination(r: &mut ChaCha8Rng, basis: &[VectorField], degree: i64) -> VectorField {
    let mut v = VectorField::zero(basis[0].shape());
    for b in basis.iter().filter(|b| b.is_homogeneous_of(degree)) {
        if r.gen_bool(0.5) {
            v.add_scaled(b, &qi(r.gen_range(-2..=2)));
        }
    }
    v
}

fn random_form(r: &mut ChaCha8Rng, st: &SplitSetup, degree: usize) -> BundleForm {
    let s = st.shape();
    let n_f = st.complement().len();
    let mut w = BundleForm::zero(s, degree, n_f);
    for idx in increasing(st.sub().len(), degree) {
        let vals = (0..n_f).map(|_| random_poly(r, s, st.base(), 1, 2)).collect();
        w.set(&idx, vals).unwrap();
    }
    w
}

/// Keeps only the brackets of the listed arities.
struct Only<'a, L> {
    inner: &'a L,
    arities: &'a [usize],
}

impl<L: LInftyAlgebra<Elem = VectorField>> LInftyAlgebra for Only<'_, L> {
    type Elem = VectorField;
    fn zero(&self) -> VectorField {
        self.inner.zero()
    }
    fn is_zero(&self, x: &VectorField) -> bool {
        x.is_zero()
    }
    fn add_scaled(&self, acc: &mut VectorField, x: &VectorField, s: &Rational) {
        acc.add_scaled(x, s);
    }
    fn homogeneous_parts(&self, x: &VectorField) -> Vec<(i64, VectorField)> {
        self.inner.homogeneous_parts(x)
    }
    fn bracket(&self, args: &[VectorField]) -> Result<VectorField> {
        if self.arities.contains(&args.len()) {
            self.inner.bracket(args)
        } else {
            Ok(self.inner.zero())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn xq_has_degree_one_and_is_quadratic(seed: u64) {
        let mut r = rng(seed);
        let chart = if r.gen_bool(0.5) { Chart::plain(&[], &["a", "b", "c"]) } else { Chart::plain(&["x"], &["a", "b"]) };
        let x = random_data(&mut r, chart.unwrap(), 0.5, 2).build_xq();
        prop_assert!(x.is_zero() || x.is_homogeneous_of(1));
        prop_assert!(x.terms().all(|(_, m, _)| m.odd_degree() <= 2));
    }

    #[test]
    fn validate_matches_classical_definition(seed: u64) {
        let mut r = rng(seed);
        let g = match r.gen_range(0..3) {
            0 => random_data(&mut r, Chart::plain(&[], &["a", "b", "c"]).unwrap(), 0.3, 0),
            1 => random_data(&mut r, Chart::plain(&["x"], &["a", "b"]).unwrap(), 0.4, 1),
            _ => valid_data(&mut r),
        };
        prop_assert_eq!(g.validate().unwrap().passed(), g.classical_check().unwrap().passed());
    }

    #[test]
    fn ce_differential_squares_to_zero_and_is_xq(seed: u64) {
        let mut r = rng(seed);
        let g = valid_data(&mut r);
        let s = g.shape();
        let xq = g.build_xq();
        let vars: Vec<usize> = (0..s.n_even).collect();
        for k in 0..=g.rank() {
            let mut w = CEForm::zero(s, k);
            for idx in increasing(g.rank(), k) {
                w.set(&idx, random_poly(&mut r, s, &vars, 2, 2)).unwrap();
            }
            let dw = ce_differential(&g, &w).unwrap();
            prop_assert!(ce_differential(&g, &dw).unwrap().is_zero());
            prop_assert_eq!(dw.to_function(), xq.apply(&w.to_function()).unwrap());
        }
    }

    #[test]
    fn derivations_transport_to_fields(seed: u64, p in 0usize..=2, q_ in 0usize..=2) {
        let mut r = rng(seed);
        let (g, deg) = if r.gen_bool(0.5) { (presets::sl2(), 0) } else { (presets::tangent_rn(2), 2) };
        let d = random_derivation(&mut r, g.shape(), p, deg);
        let e = random_derivation(&mut r, g.shape(), q_, deg);
        prop_assert_eq!(Derivation::from_field(&d.to_field(), p).unwrap(), d.clone());
        let b = d.bracket(&e).unwrap();
        prop_assert_eq!(b.to_field(), d.to_field().bracket(&e.to_field()).unwrap());
        prop_assert_eq!(d.composition_bracket(&e).unwrap(), b);
    }

    #[test]
    fn deformation_residual_detects_homological_sums(seed: u64) {
        let mut r = rng(seed);
        let g = valid_data(&mut r);
        let xq = g.build_xq();
        let xt = match r.gen_range(0..3) {
            0 => xq.scale(&qi(r.gen_range(-2..=1))),
            1 => random_data(&mut r, g.chart().clone(), 0.15, 1).build_xq(),
            _ => {
                let mut h = random_data(&mut r, g.chart().clone(), 0.1, 0);
                for (&(i, j, k), c) in g.structure_terms() {
                    h.add_bracket(i, j, k, c.clone()).unwrap();
                }
                h.build_xq()
            }
        };
        let zero = deformation_residual(&xq, &xt).unwrap().is_zero();
        let sum = &xq + &xt;
        prop_assert_eq!(zero, sum.is_homological());
        let classical = AlgebroidData::from_xq(g.chart().clone(), &sum).unwrap().classical_check().unwrap().passed();
        prop_assert_eq!(zero, classical);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derived_brackets_are_graded_symmetric(seed: u64, k in 1usize..=3) {
        let mut r = rng(seed);
        let st = setup_pool(&mut r);
        let delta = st.delta().unwrap();
        let basis = st.valg().abelian_basis(poly_bound(&st));
        let args: Vec<VectorField> = (0..k).map(|_| basis.choose(&mut r).unwrap().scale(&qi(r.gen_range(1..=3)))).collect();
        let degs: Vec<i64> = args.iter().map(|a| a.degree().unwrap()).collect();
        let mut images: Vec<usize> = (0..k).collect();
        images.shuffle(&mut r);
        let tau = Permutation::from_zero_based(images).unwrap();
        let e = koszul_sign(&tau, &DegreeVector::new(degs)).unwrap();
        let lhs = derived_bracket(st.valg(), &delta, &tau.permute(&args)).unwrap();
        let rhs = derived_bracket(st.valg(), &delta, &args).unwrap().scale(&qi(e.into()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derived_brackets_satisfy_the_axioms(seed: u64) {
        let mut r = rng(seed);
        let st = setup_pool(&mut r);
        let delta = st.delta().unwrap();
        let alg = DerivedLInfty { valg: st.valg(), delta: &delta };
        let basis = st.valg().abelian_basis(poly_bound(&st));
        let probes: Vec<Vec<VectorField>> = (1..=4)
            .flat_map(|n| (0..3).map(move |_| n))
            .map(|n| {
                (0..n)
                    .map(|_| {
                        let d = r.gen_range(-1..=1);
                        combination(&mut r, &basis, d)
                    })
                    .collect()
            })
            .collect();
        let report = check_linfty_axioms(&alg, 4, &probes).unwrap();
        prop_assert!(report.passed(), "{:?}", report.first_failure);
    }

    #[test]
    fn mc_series_equals_twisted_projection(seed: u64) {
        let mut r = rng(seed);
        let st = setup_pool(&mut r);
        let delta = st.delta().unwrap();
        let basis = st.valg().abelian_basis(poly_bound(&st));
        let c = combination(&mut r, &basis, 0);
        if !c.is_zero() {
            prop_assert!(mc_residual(st.valg(), &delta, &c, 64).unwrap().agree());
        }
    }

    #[test]
    fn twisting_round_trip(a0 in -2i64..=2, at in -2i64..=2, bt in -2i64..=2, on_locus: bool) {
        let st = borel();
        let delta = st.delta().unwrap();
        let b0 = q(a0 * a0, 4);
        let bt = if on_locus { q((a0 + at) * (a0 + at), 4) - &b0 } else { qi(bt) };
        let base = DeformationPair::constant(st.shape(), &[], &[vec![qi(a0)], vec![b0]]);
        let tilde = DeformationPair::constant(st.shape(), &[], &[vec![qi(at)], vec![bt]]);
        let twisted = TwistedVAlgebra::new(st.valg(), st.candidate(&base).unwrap(), 64).unwrap();
        let t = mc_residual(&twisted, &delta, &st.candidate(&tilde).unwrap(), 64).unwrap();
        let direct = subalgebroid_mc_residual(&st, &base.add(&tilde), 64).unwrap();
        prop_assert_eq!(t.is_zero(), direct.is_zero());
        if on_locus {
            prop_assert!(t.is_zero());
        }
    }

    #[test]
    fn simultaneous_deformation_splits(seed: u64) {
        let mut r = rng(seed);
        let st = borel();
        let chart = st.data().chart().clone();
        let xq = st.xq();
        let xt = match r.gen_range(0..3) {
            0 => xq.scale(&qi(r.gen_range(-1..=1))),
            _ => random_data(&mut r, chart.clone(), 0.12, 0).build_xq(),
        };
        let (a, b) = (r.gen_range(-2i64..=2), r.gen_range(-2i64..=2));
        let b = if r.gen_bool(0.5) { q(a * a, 4) } else { qi(b) };
        let cand = DeformationPair::constant(st.shape(), &[], &[vec![qi(a)], vec![b]]);
        let res = simultaneous_residual(&st, &st.zero_pair(), &xt, &cand, 64).unwrap();
        prop_assert!(res.oracle_agrees());
        let sum = &xq + &xt;
        let expected = sum.is_homological() && {
            let moved = st.with_data(AlgebroidData::from_xq(chart, &sum).unwrap()).unwrap();
            graph_closure_oracle(&moved, &cand).unwrap().accepted()
        };
        prop_assert_eq!(res.is_zero(), expected);
    }

    #[test]
    fn mc_residual_matches_graph_closure(seed: u64) {
        for inst in random_subalgebroid_instances(seed, 3) {
            let res = subalgebroid_mc_residual(&inst.setup, &inst.pair, 64).unwrap();
            prop_assert_eq!(res.is_zero(), res.oracle.accepted(), "{}", inst.family);
            prop_assert!(res.tangency.agree());
            prop_assert!(!inst.built_positive || res.is_zero());
        }
    }

    #[test]
    fn tangency_computations_agree(seed: u64, degree in 0i64..=1) {
        let mut r = rng(seed);
        let chart = Chart::build(
            &[("x", EvenRole::Base), ("y", EvenRole::Normal)],
            &[("a", OddRole::Sub), ("b", OddRole::Complement)],
        ).unwrap();
        let s = chart.shape();
        let valg = lie_deform::derived::SplitVAlgebra::new(chart.clone());
        let mut z = field(&mut r, s, degree, 2);
        z = &z - &valg.project(&z).unwrap();
        let a = SuperFunction::coordinate(s, Coord::Odd(0));
        let gamma = vec![random_poly(&mut r, s, &[0], 2, 2), random_poly(&mut r, s, &[0], 2, 2).mul(&a)];
        prop_assert!(tangency_oracle(&chart, &z, &gamma, 64).unwrap().agree());
    }

    #[test]
    fn m1_squares_to_zero(seed: u64) {
        let mut r = rng(seed);
        let mut pool = point_setups();
        pool.push(foliation_r3());
        let st = pool.swap_remove(r.gen_range(0..pool.len()));
        for k in 0..st.sub().len() {
            let w = random_form(&mut r, &st, k);
            let once = explicit_m1(&st, &w).unwrap();
            prop_assert!(explicit_m1(&st, &once).unwrap().values().values().all(|v| v.iter().all(|f| f.is_zero())));
        }
    }

    #[test]
    fn fixed_base_residual_has_no_normal_part(seed: u64) {
        let mut r = rng(seed);
        let st = if r.gen_bool(0.5) { foliation_r3() } else { borel() };
        let s = st.shape();
        let phi = (0..st.sub().len())
            .map(|_| (0..st.complement().len()).map(|_| random_poly(&mut r, s, st.base(), 1, 2)).collect())
            .collect();
        let pair = DeformationPair { sigma: vec![], phi };
        let res = subalgebroid_mc_residual(&st, &pair, 64).unwrap();
        prop_assert!(res.mc.series.terms().all(|(c, _, _)| matches!(c, Coord::Odd(_))));
    }
}

fn cohomology_reps(st: &SplitSetup) -> Vec<VectorField> {
    (0..=st.sub().len() + 1).flat_map(|n| m1_cohomology(st, n, None).unwrap().basis).collect()
}

#[test]
fn induced_bracket_on_cohomology() {
    let mut r = rng(7);
    for st in [split(&presets::sl2(), &[1]), split(&presets::heisenberg3(), &[0, 2]), split(&presets::affine2(), &[0])] {
        let delta: MCDelta = st.delta().unwrap();
        let alg = DerivedLInfty { valg: st.valg(), delta: &delta };
        let reps = cohomology_reps(&st);
        assert!(!reps.is_empty());
        let m1 = |v: &VectorField| derived_bracket(st.valg(), &delta, std::slice::from_ref(v)).unwrap();
        for a in &reps {
            assert!(m1(a).is_zero());
            for b in &reps {
                let ab = derived_bracket(st.valg(), &delta, &[a.clone(), b.clone()]).unwrap();
                assert!(m1(&ab).is_zero(), "m2 of cocycles is not closed");
            }
        }
        for _ in 0..40 {
            let args: Vec<(i64, VectorField)> = (0..3)
                .map(|_| {
                    let v = reps.choose(&mut r).unwrap().clone();
                    (v.degree().unwrap(), v)
                })
                .collect();
            let quadratic = jacobiator(&Only { inner: &alg, arities: &[2] }, &args).unwrap();
            let exact = jacobiator(&Only { inner: &alg, arities: &[1, 3] }, &args).unwrap();
            assert_eq!(quadratic, -&exact, "m2 Jacobi fails beyond an m1-boundary");
        }
    }
}

#[test]
fn random_forms_and_functions_are_nontrivial() {
    let mut r = rng(1);
    let st = foliation_r3();
    assert!(!random_form(&mut r, &st, 1).is_zero() || !random_form(&mut r, &st, 1).is_zero());
    assert!(!function(&mut r, st.shape(), 1, 1, 3).is_zero());
}
