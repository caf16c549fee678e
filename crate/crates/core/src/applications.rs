//! Special cases: Lie algebras and subalgebras over a point, infinitesimal
//! deformations of foliations, and homomorphisms through their graphs.

use num_traits::One;

use crate::algebroid::{deformation_residual, AlgebroidData};
use crate::error::{Error, Result};
use crate::graded::Rational;
use crate::subalgebroid::{
    explicit_m1, simultaneous_residual, subalgebroid_mc_residual, BundleForm, DeformationPair, SimultaneousResidual,
    SplitSetup, SubalgebroidResidual,
};
use crate::superfield::{Chart, Coord, EvenCoord, EvenRole, OddCoord, OddRole, Shape, SuperFunction, VectorField};

/// A Lie algebra: an algebroid over a point with constant structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    data: AlgebroidData,
}

impl LieAlgebraData {
    pub fn new(data: AlgebroidData) -> Result<Self> {
        if data.base_dim() != 0 {
            return Err(Error::Precondition("a Lie algebra lives over a point".into()));
        }
        Ok(LieAlgebraData { data })
    }

    /// Structure constants `[e_i, e_j] = Σ c e_k` for `i < j`.
    pub fn from_constants(names: &[&str], brackets: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut data = AlgebroidData::new(Chart::plain(&[], names)?);
        for (i, j, k, c) in brackets {
            data.add_bracket_const(*i, *j, *k, c.clone())?;
        }
        LieAlgebraData::new(data)
    }

    pub fn data(&self) -> &AlgebroidData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.rank()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieDeformation {
    /// `[X_Q, X_μ] + ½[X_μ, X_μ]`.
    pub residual: VectorField,
    /// Classical Jacobi identity for `c + μ`.
    pub jacobi_holds: bool,
}

/// Deformation of the bracket `c` by `μ`; zero residual iff `c + μ` is Lie.
pub fn lie_algebra_deformation(g: &LieAlgebraData, mu: &LieAlgebraData) -> Result<LieDeformation> {
    g.data.shape().check(mu.data.shape())?;
    let xq = g.data.build_xq();
    let xm = mu.data.build_xq();
    let residual = deformation_residual(&xq, &xm)?;
    let sum = AlgebroidData::from_xq(g.data.chart().clone(), &(&xq + &xm))?;
    let jacobi_holds = sum.classical_check()?.passed();
    if jacobi_holds != residual.is_zero() {
        return Err(Error::Inconsistency("residual and Jacobi identity disagree".into()));
    }
    Ok(LieDeformation { residual, jacobi_holds })
}

/// The chart of `g` with the frame split into `E = sub` and its complement.
pub fn split_chart(chart: &Chart, sub: &[usize]) -> Result<Chart> {
    if let Some(&i) = sub.iter().find(|&&i| i >= chart.n_odd()) {
        return Err(Error::IndexOutOfRange(format!("frame index {i}")));
    }
    let odd = chart
        .odd
        .iter()
        .enumerate()
        .map(|(k, c)| OddCoord {
            name: c.name.clone(),
            role: if sub.contains(&k) { OddRole::Sub } else { OddRole::Complement },
        })
        .collect();
    Chart::new(chart.even.clone(), odd)
}

/// Deformation of the subalgebra spanned by the frame elements `sub` in the
/// direction `φ: E → F`, `phi[i][j]` the coefficient of the `j`-th
/// complement element in `φ(e_{sub[i]})`.
pub fn subalgebra_deformation(
    g: &LieAlgebraData,
    sub: &[usize],
    phi: &[Vec<Rational>],
    cap: usize,
) -> Result<SubalgebroidResidual> {
    let chart = split_chart(g.data.chart(), sub)?;
    let setup = SplitSetup::new(g.data.with_chart(chart)?)?;
    if !setup.base_defect()?.is_zero() {
        return Err(Error::Precondition("E is not a subalgebra".into()));
    }
    let d = DeformationPair::constant(setup.shape(), &[], phi);
    subalgebroid_mc_residual(&setup, &d, cap)
}

/// The algebroid structure of `TM` in a frame `X_i = ∂_i + Σ_{t>i} f_{it} ∂_t`
/// on `ℝⁿ` (unit upper triangular). `upper[i][t]` is `f_{it}` for `t > i`
/// and ignored otherwise. The dual odd coordinates carry the given chart's
/// names and roles.
pub fn tangent_frame_algebroid(chart: Chart, upper: &[Vec<SuperFunction>]) -> Result<AlgebroidData> {
    let n = chart.n_even();
    if chart.n_odd() != n || upper.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: upper.len(),
        });
    }
    let shape = chart.shape();
    let frame: Vec<VectorField> = (0..n)
        .map(|i| {
            let mut v = VectorField::partial(shape, Coord::Even(i));
            for t in i + 1..n {
                v.add_component(Coord::Even(t), &upper[i][t]);
            }
            v
        })
        .collect();
    let mut data = AlgebroidData::new(chart);
    for (i, x) in frame.iter().enumerate() {
        for t in 0..n {
            let c = x.component(Coord::Even(t));
            if !c.is_zero() {
                data.add_anchor(i, t, c)?;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut rest = frame[i].bracket(&frame[j])?;
            for k in 0..n {
                let c = rest.component(Coord::Even(k));
                if c.is_zero() {
                    continue;
                }
                rest.add_scaled(&frame[k].mul_left(&c), &-Rational::one());
                data.add_bracket(i, j, k, c)?;
            }
            debug_assert!(rest.is_zero());
        }
    }
    Ok(data)
}

/// `D = span(∂x, ∂y) ⊂ Tℝ³` with complement `span(∂z)`.
pub fn foliation_r3() -> SplitSetup {
    let chart = Chart::build(
        &[("x", EvenRole::Base), ("y", EvenRole::Base), ("z", EvenRole::Base)],
        &[("dx", OddRole::Sub), ("dy", OddRole::Sub), ("dz", OddRole::Complement)],
    )
    .expect("foliation chart");
    let s = chart.shape();
    let zero = vec![vec![SuperFunction::zero(s); 3]; 3];
    SplitSetup::new(tangent_frame_algebroid(chart, &zero).expect("flat frame")).expect("split chart")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationCheck {
    pub closed: bool,
    /// `m_1(ψ)`, zero iff `π_F([ψv, w] + [v, ψw]) = ψ([v, w])` on `D`.
    pub residual: BundleForm,
}

/// Whether `ψ ∈ Γ(D* ⊗ F)` is an infinitesimal deformation of the foliation
/// tangent to `D`.
pub fn foliation_infinitesimal(setup: &SplitSetup, psi: &BundleForm) -> Result<FoliationCheck> {
    if !setup.is_fixed_base() {
        return Err(Error::Precondition("the distribution must live on the whole base".into()));
    }
    if !setup.base_defect()?.is_zero() {
        return Err(Error::Precondition("D is not integrable".into()));
    }
    if psi.degree() != 1 {
        return Err(Error::Degree {
            what: "ψ".into(),
            expected: "1".into(),
            found: psi.degree().to_string(),
        });
    }
    let residual = explicit_m1(setup, psi)?;
    Ok(FoliationCheck {
        closed: residual.is_zero(),
        residual,
    })
}

/// A bundle map `Ψ: A → B` covering `ψ: M → N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismData {
    pub source: AlgebroidData,
    pub target: AlgebroidData,
    /// `bundle_map[b][i]`: coefficient of the `b`-th frame element of `B`
    /// in `Ψ(ε_i)`, a function on `M`.
    pub bundle_map: Vec<Vec<SuperFunction>>,
    /// Components of `ψ`, functions on `M`.
    pub base_map: Vec<SuperFunction>,
}

impl HomomorphismData {
    pub fn new(
        source: AlgebroidData,
        target: AlgebroidData,
        bundle_map: Vec<Vec<SuperFunction>>,
        base_map: Vec<SuperFunction>,
    ) -> Result<Self> {
        let h = HomomorphismData {
            source,
            target,
            bundle_map,
            base_map,
        };
        h.check_maps(&h.bundle_map, &h.base_map)?;
        Ok(h)
    }

    /// `id: A → A`.
    pub fn identity(a: &AlgebroidData) -> Result<Self> {
        let s = a.shape();
        let n = a.rank();
        let bundle = (0..n)
            .map(|b| {
                (0..n)
                    .map(|i| if b == i { SuperFunction::one(s) } else { SuperFunction::zero(s) })
                    .collect()
            })
            .collect();
        let base = (0..a.base_dim()).map(|t| SuperFunction::coordinate(s, Coord::Even(t))).collect();
        HomomorphismData::new(a.clone(), a.clone(), bundle, base)
    }

    fn check_maps(&self, bundle: &[Vec<SuperFunction>], base: &[SuperFunction]) -> Result<()> {
        let s = self.source.shape();
        if bundle.len() != self.target.rank() {
            return Err(Error::LengthMismatch {
                expected: self.target.rank(),
                found: bundle.len(),
            });
        }
        if base.len() != self.target.base_dim() {
            return Err(Error::LengthMismatch {
                expected: self.target.base_dim(),
                found: base.len(),
            });
        }
        for row in bundle {
            if row.len() != self.source.rank() {
                return Err(Error::LengthMismatch {
                    expected: self.source.rank(),
                    found: row.len(),
                });
            }
        }
        for f in bundle.iter().flatten().chain(base) {
            s.check(f.shape())?;
            if !f.is_even_only() {
                return Err(Error::Precondition("map coefficients must be functions on the base".into()));
            }
        }
        Ok(())
    }

    fn sum_shape(&self) -> Shape {
        Shape::new(
            self.source.base_dim() + self.target.base_dim(),
            self.source.rank() + self.target.rank(),
        )
    }

    /// Embeds a function on `M` into `M × N`.
    fn lift(&self, f: &SuperFunction) -> SuperFunction {
        let em: Vec<usize> = (0..self.source.base_dim()).collect();
        let om: Vec<usize> = (0..self.source.rank()).collect();
        f.embed(self.sum_shape(), &em, &om)
    }

    /// The coordinate change to `(x, y = v - ψ(x), ξ_A, ζ = ξ_B - Ψ ξ_A)`,
    /// as `(new_in_old, old_in_new)`.
    fn adapted_maps(&self) -> (Vec<SuperFunction>, Vec<SuperFunction>) {
        let s = self.sum_shape();
        let (m, n) = (self.source.base_dim(), self.target.base_dim());
        let (ra, rb) = (self.source.rank(), self.target.rank());
        let id: Vec<SuperFunction> = (0..m + n)
            .map(|i| SuperFunction::coordinate(s, Coord::Even(i)))
            .chain((0..ra + rb).map(|k| SuperFunction::coordinate(s, Coord::Odd(k))))
            .collect();
        let mut fwd = id.clone();
        let mut back = id;
        for t in 0..n {
            let psi = self.lift(&self.base_map[t]);
            fwd[m + t] = &fwd[m + t] - &psi;
            back[m + t] = &back[m + t] + &psi;
        }
        for b in 0..rb {
            let mut shift = SuperFunction::zero(s);
            for i in 0..ra {
                let xi = SuperFunction::coordinate(s, Coord::Odd(i));
                shift = &shift + &self.lift(&self.bundle_map[b][i]).mul(&xi);
            }
            let idx = m + n + ra + b;
            fwd[idx] = &fwd[idx] - &shift;
            back[idx] = &back[idx] + &shift;
        }
        (fwd, back)
    }

    fn adapted_chart(&self) -> Result<Chart> {
        let mut even: Vec<EvenCoord> = self
            .source
            .chart()
            .even
            .iter()
            .map(|c| EvenCoord {
                name: c.name.clone(),
                role: EvenRole::Base,
            })
            .collect();
        let mut odd: Vec<OddCoord> = self
            .source
            .chart()
            .odd
            .iter()
            .map(|c| OddCoord {
                name: c.name.clone(),
                role: OddRole::Sub,
            })
            .collect();
        let taken: Vec<String> = even.iter().map(|c| c.name.clone()).chain(odd.iter().map(|c| c.name.clone())).collect();
        let rename = |n: &str| if taken.iter().any(|t| t == n) { format!("{n}'") } else { n.to_string() };
        even.extend(self.target.chart().even.iter().map(|c| EvenCoord {
            name: rename(&c.name),
            role: EvenRole::Normal,
        }));
        odd.extend(self.target.chart().odd.iter().map(|c| OddCoord {
            name: rename(&c.name),
            role: OddRole::Complement,
        }));
        Chart::new(even, odd)
    }

    /// Embeds a field on `A` and a field on `B` into `A ⊕ B` in the original
    /// product coordinates.
    fn sum_field(&self, xa: &VectorField, xb: &VectorField) -> Result<VectorField> {
        self.source.shape().check(xa.shape())?;
        self.target.shape().check(xb.shape())?;
        let s = self.sum_shape();
        let (m, ra) = (self.source.base_dim(), self.source.rank());
        let a = xa.embed(s, &(0..m).collect::<Vec<_>>(), &(0..ra).collect::<Vec<_>>());
        let b = xb.embed(
            s,
            &(0..self.target.base_dim()).map(|t| t + m).collect::<Vec<_>>(),
            &(0..self.target.rank()).map(|k| k + ra).collect::<Vec<_>>(),
        );
        Ok(&a + &b)
    }

    fn to_adapted(&self, v: &VectorField) -> Result<VectorField> {
        let (fwd, back) = self.adapted_maps();
        v.change_coordinates(&fwd, &back, self.sum_shape())
    }

    /// `A ⊕ B` in coordinates adapted to the graph of `Ψ` over the graph of
    /// `ψ`: `E = gr(Ψ)`, `F = B`, normal directions along `N`.
    pub fn graph_setup(&self) -> Result<SplitSetup> {
        let xq = self.sum_field(&self.source.build_xq(), &self.target.build_xq())?;
        let adapted = self.to_adapted(&xq)?;
        SplitSetup::new(AlgebroidData::from_xq(self.adapted_chart()?, &adapted)?)
    }

    /// The pair `(ψ̃ - ψ, Ψ̃ - Ψ)` describing the graph of `(Ψ̃, ψ̃)`.
    pub fn deformation_to(&self, bundle: &[Vec<SuperFunction>], base: &[SuperFunction]) -> Result<DeformationPair> {
        self.check_maps(bundle, base)?;
        let sigma = base.iter().zip(&self.base_map).map(|(a, b)| self.lift(&(a - b))).collect();
        let phi = (0..self.source.rank())
            .map(|i| {
                (0..self.target.rank())
                    .map(|b| self.lift(&(&bundle[b][i] - &self.bundle_map[b][i])))
                    .collect()
            })
            .collect();
        Ok(DeformationPair { sigma, phi })
    }

    /// Whether `Ψ` itself is a homomorphism (its graph is a subalgebroid).
    pub fn is_homomorphism(&self) -> Result<bool> {
        Ok(self.graph_setup()?.base_defect()?.is_zero())
    }
}

/// Residual of deforming `Ψ` along `cand`; zero iff the deformed map is
/// again a homomorphism.
pub fn homomorphism_deformation(h: &HomomorphismData, cand: &DeformationPair, cap: usize) -> Result<SubalgebroidResidual> {
    let setup = h.graph_setup()?;
    if !setup.base_defect()?.is_zero() {
        return Err(Error::Precondition("the bundle map is not a homomorphism".into()));
    }
    subalgebroid_mc_residual(&setup, cand, cap)
}

/// Splits a deformation of `A ⊕ B` (product coordinates) into its blocks,
/// rejecting terms that mix them.
pub fn split_sum_deformation(a: &AlgebroidData, b: &AlgebroidData, x: &VectorField) -> Result<(VectorField, VectorField)> {
    let (m, ra) = (a.base_dim(), a.rank());
    let s = Shape::new(m + b.base_dim(), ra + b.rank());
    s.check(x.shape())?;
    let odd_a: u64 = (1u64 << ra) - 1;
    let mut xa = VectorField::zero(a.shape());
    let mut xb = VectorField::zero(b.shape());
    for (c, mono, q) in x.terms() {
        let in_a_coeff = mono.odd & !odd_a == 0 && mono.even[m..].iter().all(|&e| e == 0);
        let in_b_coeff = mono.odd & odd_a == 0 && mono.even[..m].iter().all(|&e| e == 0);
        let target_a = match c {
            Coord::Even(i) => i < m,
            Coord::Odd(k) => k < ra,
        };
        let f = SuperFunction::from_terms(s, [(mono.clone(), q.clone())]);
        if target_a && in_a_coeff {
            let em: Vec<usize> = (0..m).collect();
            let om: Vec<usize> = (0..ra).collect();
            xa.add_component(c, &restrict(&f, a.shape(), &em, &om));
        } else if !target_a && in_b_coeff {
            let em: Vec<usize> = (m..m + b.base_dim()).collect();
            let om: Vec<usize> = (ra..ra + b.rank()).collect();
            let c2 = match c {
                Coord::Even(i) => Coord::Even(i - m),
                Coord::Odd(k) => Coord::Odd(k - ra),
            };
            xb.add_component(c2, &restrict(&f, b.shape(), &em, &om));
        } else {
            return Err(Error::Precondition(
                "deformation of a direct sum mixes the two summands".into(),
            ));
        }
    }
    Ok((xa, xb))
}

// Inverse of `embed` on functions that only involve the listed coordinates.
fn restrict(f: &SuperFunction, shape: Shape, even: &[usize], odd: &[usize]) -> SuperFunction {
    SuperFunction::from_terms(
        shape,
        f.terms().iter().map(|(m, q)| {
            let e = even.iter().map(|&i| m.even[i]).collect();
            let mut o = 0u64;
            for (k, &t) in odd.iter().enumerate() {
                if m.odd >> t & 1 == 1 {
                    o |= 1 << k;
                }
            }
            (crate::superfield::Monomial { even: e, odd: o }, q.clone())
        }),
    )
}

/// Simultaneous deformation of both structures (`xa` on `A`, `xb` on `B`)
/// and of the map.
pub fn simultaneous_homomorphism(
    h: &HomomorphismData,
    xa: &VectorField,
    xb: &VectorField,
    cand: &DeformationPair,
    cap: usize,
) -> Result<SimultaneousResidual> {
    let setup = h.graph_setup()?;
    let x = h.to_adapted(&h.sum_field(xa, xb)?)?;
    simultaneous_residual(&setup, &setup.zero_pair(), &x, cand, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::graded::qi;

    fn sl2() -> LieAlgebraData {
        LieAlgebraData::new(presets::sl2()).unwrap()
    }

    #[test]
    fn lie_algebra_cases() {
        let zero = LieAlgebraData::new(presets::abelian(3)).unwrap();
        assert!(lie_algebra_deformation(&sl2(), &zero).unwrap().residual.is_zero());
        let ab2 = LieAlgebraData::new(presets::abelian(2)).unwrap();
        let aff = LieAlgebraData::new(presets::affine2()).unwrap();
        assert!(lie_algebra_deformation(&ab2, &aff).unwrap().jacobi_holds);
        let bad = LieAlgebraData::new(presets::non_jacobi3()).unwrap();
        let r = lie_algebra_deformation(&zero, &bad).unwrap();
        assert!(!r.jacobi_holds && !r.residual.is_zero());
    }

    #[test]
    fn borel_and_lines() {
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let r = subalgebra_deformation(&sl2(), &[0, 1], &[vec![qi(a)], vec![qi(b)]], 64).unwrap();
                assert_eq!(r.is_zero(), a * a == 4 * b);
            }
        }
        for c in [-3, 0, 5] {
            let r = subalgebra_deformation(&sl2(), &[2], &[vec![qi(c), qi(1 - c)]], 64).unwrap();
            assert!(r.is_zero());
        }
        assert!(matches!(
            subalgebra_deformation(&sl2(), &[1, 2], &[vec![qi(0)], vec![qi(0)]], 64),
            Err(Error::Precondition(_))
        ));
    }

    fn psi(setup: &SplitSetup, gx: SuperFunction, gy: SuperFunction) -> BundleForm {
        let mut w = BundleForm::zero(setup.shape(), 1, 1);
        w.set(&[0], vec![gx]).unwrap();
        w.set(&[1], vec![gy]).unwrap();
        w
    }

    #[test]
    fn foliation_examples() {
        let st = foliation_r3();
        let s = st.shape();
        let x = SuperFunction::coordinate(s, Coord::Even(0));
        let y = SuperFunction::coordinate(s, Coord::Even(1));
        assert!(foliation_infinitesimal(&st, &psi(&st, y.clone(), x)).unwrap().closed);
        let r = foliation_infinitesimal(&st, &psi(&st, y, SuperFunction::zero(s))).unwrap();
        assert!(!r.closed);
        assert_eq!(r.residual.eval(&[0, 1]), vec![SuperFunction::constant(s, qi(-1))]);
    }

    #[test]
    fn tangent_frame_is_an_algebroid() {
        let chart = Chart::build(
            &[("x", EvenRole::Base), ("y", EvenRole::Base)],
            &[("a", OddRole::Sub), ("b", OddRole::Complement)],
        )
        .unwrap();
        let s = chart.shape();
        let x = SuperFunction::coordinate(s, Coord::Even(0));
        let y = SuperFunction::coordinate(s, Coord::Even(1));
        let f = &x.mul(&y).mul(&y) + &x;
        let upper = vec![vec![SuperFunction::zero(s), f], vec![SuperFunction::zero(s); 2]];
        let data = tangent_frame_algebroid(chart, &upper).unwrap();
        assert!(data.validate().unwrap().passed());
        // line fields are integrable
        let st = SplitSetup::new(data).unwrap();
        assert!(st.base_defect().unwrap().is_zero());
    }

    fn scaled_identity(h: &HomomorphismData, t: i64) -> DeformationPair {
        let s = h.source.shape();
        let n = h.source.rank();
        let bundle: Vec<Vec<SuperFunction>> = (0..n)
            .map(|b| {
                (0..n)
                    .map(|i| if b == i { SuperFunction::constant(s, qi(1 + t)) } else { SuperFunction::zero(s) })
                    .collect()
            })
            .collect();
        h.deformation_to(&bundle, &h.base_map).unwrap()
    }

    #[test]
    fn scaling_sl2() {
        let h = HomomorphismData::identity(&presets::sl2()).unwrap();
        assert!(h.is_homomorphism().unwrap());
        for (t, ok) in [(1, false), (0, true), (-1, true), (2, false)] {
            let r = homomorphism_deformation(&h, &scaled_identity(&h, t), 64).unwrap();
            assert_eq!(r.is_zero(), ok, "t = {t}");
        }
    }

    #[test]
    fn abelian_maps_are_homomorphisms() {
        let h = HomomorphismData::identity(&presets::abelian(1)).unwrap();
        for t in [-4, 3] {
            assert!(homomorphism_deformation(&h, &scaled_identity(&h, t), 64).unwrap().is_zero());
        }
    }

    #[test]
    fn tangent_maps_of_the_line() {
        // ψ(x) = x², Ψ = dψ
        let a = presets::tangent_rn(1);
        let b = AlgebroidData::from_xq(Chart::plain(&["v"], &["dv"]).unwrap(), &a.build_xq()).unwrap();
        let s = a.shape();
        let x = SuperFunction::coordinate(s, Coord::Even(0));
        let h = HomomorphismData::new(a, b, vec![vec![x.scale(&qi(2))]], vec![x.mul(&x)]).unwrap();
        assert!(h.is_homomorphism().unwrap());
        let shifted = h
            .deformation_to(&[vec![x.scale(&qi(2))]], &[&x.mul(&x) + &SuperFunction::constant(s, qi(3))])
            .unwrap();
        assert!(homomorphism_deformation(&h, &shifted, 64).unwrap().is_zero());
        let wrong = h
            .deformation_to(&[vec![&x.scale(&qi(2)) + &SuperFunction::one(s)]], &[x.mul(&x)])
            .unwrap();
        assert!(!homomorphism_deformation(&h, &wrong, 64).unwrap().is_zero());
    }

    #[test]
    fn simultaneous_abelian_pairs() {
        let ab = presets::abelian(2);
        let h = HomomorphismData::identity(&ab).unwrap();
        let aff = presets::affine2().build_xq();
        let zero = VectorField::zero(ab.shape());
        let none = h.graph_setup().unwrap().zero_pair();
        assert!(simultaneous_homomorphism(&h, &zero, &zero, &none, 64).unwrap().is_zero());
        assert!(simultaneous_homomorphism(&h, &aff, &aff, &none, 64).unwrap().is_zero());
        let r = simultaneous_homomorphism(&h, &aff, &zero, &none, 64).unwrap();
        assert!(r.structure_part().is_zero());
        assert!(!r.subalgebroid_part().is_zero());
    }

    #[test]
    fn sum_deformations_split_by_block() {
        let a = presets::sl2();
        let b = presets::affine2();
        let sum = a.direct_sum(&AlgebroidData::from_xq(Chart::plain(&[], &["p", "q"]).unwrap(), &b.build_xq()).unwrap()).unwrap();
        let (xa, xb) = split_sum_deformation(&a, &b, &sum.build_xq()).unwrap();
        assert_eq!(xa, a.build_xq());
        assert_eq!(xb, b.build_xq());
        let s = sum.shape();
        let mixed = VectorField::term(SuperFunction::monomial(s, qi(1), &[], &[0, 3]), Coord::Odd(4));
        assert!(matches!(split_sum_deformation(&a, &b, &mixed), Err(Error::Precondition(_))));
    }
}
