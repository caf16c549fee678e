use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{inv_factorial, Rational};
use crate::superfield::{Chart, Coord, EvenRole, Monomial, OddRole, Shape, SuperFunction, VectorField};

/// A graded Lie algebra of super vector fields with an abelian summand 𝔞 and
/// a retraction `P: V → 𝔞` whose kernel is a subalgebra.
///
/// Elements of 𝔞 are stored as fields already inside `V`, so `I` is the
/// identity on members and an error otherwise.
pub trait VAlgebra: Sync {
    fn shape(&self) -> Shape;

    fn project(&self, v: &VectorField) -> Result<VectorField>;

    fn contains(&self, a: &VectorField) -> bool;

    fn inject(&self, a: &VectorField) -> Result<VectorField> {
        if self.contains(a) {
            Ok(a.clone())
        } else {
            Err(Error::NotInAbelian(format!("{} terms outside 𝔞", a.n_terms())))
        }
    }

    /// A spanning set of the part of 𝔞 with base polynomial degree `≤ bound`.
    fn abelian_basis(&self, bound: u32) -> Vec<VectorField>;

    /// A spanning set of the part of `V` with even polynomial degree `≤ bound`.
    fn ambient_basis(&self, bound: u32) -> Vec<VectorField>;
}

/// The V-algebra of a split chart: 𝔞 is spanned by `f(x, ξ_E) ∂/∂ξ_F` and
/// `g(x, ξ_E) ∂/∂y`, and `P` sets `y = 0`, `ξ_F = 0` and keeps those
/// components. Charts without roles (all `Base`/`Plain`) give `𝔞 = 0`.
#[derive(Debug, Clone)]
pub struct SplitVAlgebra {
    chart: Chart,
    normal: Vec<usize>,
    complement_mask: u64,
}

impl SplitVAlgebra {
    pub fn new(chart: Chart) -> Self {
        let normal = chart.even_with_role(EvenRole::Normal);
        let complement_mask = chart.odd_mask(OddRole::Complement);
        SplitVAlgebra {
            chart,
            normal,
            complement_mask,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    fn is_target(&self, c: Coord) -> bool {
        match c {
            Coord::Even(i) => self.normal.contains(&i),
            Coord::Odd(k) => self.complement_mask >> k & 1 == 1,
        }
    }

    /// Targets of 𝔞: normal even coordinates, then complement odd ones.
    pub fn targets(&self) -> Vec<Coord> {
        self.normal
            .iter()
            .map(|&i| Coord::Even(i))
            .chain(
                self.chart
                    .odd_with_role(OddRole::Complement)
                    .into_iter()
                    .map(Coord::Odd),
            )
            .collect()
    }
}

impl VAlgebra for SplitVAlgebra {
    fn shape(&self) -> Shape {
        self.chart.shape()
    }

    fn project(&self, v: &VectorField) -> Result<VectorField> {
        self.shape().check(v.shape())?;
        let mut out = VectorField::zero(self.shape());
        for (c, f) in v.components() {
            if self.is_target(*c) {
                out.set_component(*c, f.restrict_zero(&self.normal, self.complement_mask));
            }
        }
        Ok(out)
    }

    fn contains(&self, a: &VectorField) -> bool {
        a.shape() == self.shape()
            && a.components()
                .iter()
                .all(|(c, f)| self.is_target(*c) && f.is_free_of(&self.normal, self.complement_mask))
    }

    fn abelian_basis(&self, bound: u32) -> Vec<VectorField> {
        let shape = self.shape();
        let base = self.chart.even_with_role(EvenRole::Base);
        let sub = self.chart.odd_with_role(OddRole::Sub);
        let mut out = Vec::new();
        for even in exponent_vectors(shape.n_even, &base, bound) {
            for odd in subsets(&sub) {
                let mono = monomial_from(shape, &even, &odd);
                for c in self.targets() {
                    out.push(VectorField::term(mono.clone(), c));
                }
            }
        }
        out
    }

    fn ambient_basis(&self, bound: u32) -> Vec<VectorField> {
        let shape = self.shape();
        let all_even: Vec<usize> = (0..shape.n_even).collect();
        let all_odd: Vec<usize> = (0..shape.n_odd).collect();
        let mut out = Vec::new();
        for even in exponent_vectors(shape.n_even, &all_even, bound) {
            for odd in subsets(&all_odd) {
                let mono = monomial_from(shape, &even, &odd);
                for c in self.chart.coords() {
                    out.push(VectorField::term(mono.clone(), c));
                }
            }
        }
        out
    }
}

/// Constant-coefficient fields form an abelian Lie algebra; with `P = id`
/// this is the degenerate V-algebra `V = 𝔞`, `ker P = 0`.
#[derive(Debug, Clone, Copy)]
pub struct AbelianVAlgebra {
    shape: Shape,
}

impl AbelianVAlgebra {
    pub fn new(shape: Shape) -> Self {
        AbelianVAlgebra { shape }
    }
}

impl VAlgebra for AbelianVAlgebra {
    fn shape(&self) -> Shape {
        self.shape
    }

    fn project(&self, v: &VectorField) -> Result<VectorField> {
        self.inject(v)
    }

    fn contains(&self, a: &VectorField) -> bool {
        a.shape() == self.shape
            && a.terms()
                .all(|(_, m, _)| *m == Monomial::one(self.shape.n_even))
    }

    fn abelian_basis(&self, _bound: u32) -> Vec<VectorField> {
        let chart_coords = (0..self.shape.n_even)
            .map(Coord::Even)
            .chain((0..self.shape.n_odd).map(Coord::Odd));
        chart_coords
            .map(|c| VectorField::partial(self.shape, c))
            .collect()
    }

    fn ambient_basis(&self, bound: u32) -> Vec<VectorField> {
        self.abelian_basis(bound)
    }
}

/// `P_φ = P ∘ exp([·, φ])` for a degree-0 `φ ∈ 𝔞`. Again a V-algebra with the
/// same 𝔞, since `exp(ad φ)` is an automorphism fixing 𝔞 pointwise.
pub struct TwistedVAlgebra<'a, V: VAlgebra + ?Sized> {
    inner: &'a V,
    phi: VectorField,
    cap: usize,
}

impl<'a, V: VAlgebra + ?Sized> TwistedVAlgebra<'a, V> {
    pub fn new(inner: &'a V, phi: VectorField, cap: usize) -> Result<Self> {
        let phi = inner.inject(&phi)?;
        if !phi.is_homogeneous_of(0) {
            return Err(Error::Degree {
                what: "twisting element".into(),
                expected: "0".into(),
                found: format!("{:?}", phi.degree()),
            });
        }
        Ok(TwistedVAlgebra { inner, phi, cap })
    }

    pub fn phi(&self) -> &VectorField {
        &self.phi
    }
}

impl<V: VAlgebra + ?Sized> VAlgebra for TwistedVAlgebra<'_, V> {
    fn shape(&self) -> Shape {
        self.inner.shape()
    }

    fn project(&self, v: &VectorField) -> Result<VectorField> {
        let e = exp_ad(v, &self.phi, self.cap)?;
        self.inner.project(&e)
    }

    fn contains(&self, a: &VectorField) -> bool {
        self.inner.contains(a)
    }

    fn abelian_basis(&self, bound: u32) -> Vec<VectorField> {
        self.inner.abelian_basis(bound)
    }

    fn ambient_basis(&self, bound: u32) -> Vec<VectorField> {
        self.inner.ambient_basis(bound)
    }
}

/// Iterates `v, [v,φ], [[v,φ],φ], ...` and returns the nonzero terms.
/// Stops at the first zero; errors if more than `cap` brackets are needed.
pub fn ad_powers(v: &VectorField, phi: &VectorField, cap: usize) -> Result<Vec<VectorField>> {
    v.shape().check(phi.shape())?;
    let mut out = Vec::new();
    let mut cur = v.clone();
    while !cur.is_zero() {
        if out.len() > cap {
            return Err(Error::SeriesCap { cap });
        }
        let next = cur.bracket_unchecked(phi);
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

/// `exp([·, φ])(v) = Σ (1/n!) [...[v,φ],...,φ]`.
pub fn exp_ad(v: &VectorField, phi: &VectorField, cap: usize) -> Result<VectorField> {
    let mut out = VectorField::zero(v.shape());
    for (n, t) in ad_powers(v, phi, cap)?.iter().enumerate() {
        out.add_scaled(t, &inv_factorial(n));
    }
    Ok(out)
}

/// Outcome of [`check_v_algebra`]: one entry per axiom, each with the number
/// of probes and the first counterexample found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VAlgebraReport {
    pub retraction: AxiomOutcome,
    pub abelian: AxiomOutcome,
    pub kernel_closed: AxiomOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomOutcome {
    pub probes: usize,
    pub failures: usize,
    /// Indices into the probed basis, and the offending value.
    pub first_failure: Option<(Vec<usize>, VectorField)>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, idx: Vec<usize>, value: VectorField) {
        self.probes += 1;
        if !value.is_zero() {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some((idx, value));
            }
        }
    }
}

impl VAlgebraReport {
    pub fn passed(&self) -> bool {
        self.retraction.passed() && self.abelian.passed() && self.kernel_closed.passed()
    }
}

/// Checks `P∘I = id`, `[I a, I b] = 0` and `P[k, k'] = 0` for `k, k' ∈ ker P`
/// on the bases returned up to `bound`. Kernel elements are `b - I P b`.
pub fn check_v_algebra<V: VAlgebra + ?Sized>(valg: &V, bound: u32) -> Result<VAlgebraReport> {
    let a_basis = valg.abelian_basis(bound);
    let mut retraction = AxiomOutcome::default();
    let mut abelian = AxiomOutcome::default();
    for (i, a) in a_basis.iter().enumerate() {
        let back = valg.project(a)?;
        retraction.record(vec![i], &back - a);
        for (j, b) in a_basis.iter().enumerate().skip(i) {
            abelian.record(vec![i, j], a.bracket(b)?);
        }
    }
    let mut kernel = Vec::new();
    for b in valg.ambient_basis(bound) {
        let k = &b - &valg.project(&b)?;
        if !k.is_zero() {
            kernel.push(k);
        }
    }
    let mut kernel_closed = AxiomOutcome::default();
    for (i, k) in kernel.iter().enumerate() {
        for (j, l) in kernel.iter().enumerate().skip(i) {
            kernel_closed.record(vec![i, j], valg.project(&k.bracket(l)?)?);
        }
    }
    Ok(VAlgebraReport {
        retraction,
        abelian,
        kernel_closed,
    })
}

/// All exponent vectors supported on `vars` with total degree `≤ bound`.
pub(crate) fn exponent_vectors(n_even: usize, vars: &[usize], bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n_even]];
    for &v in vars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for p in 0..=(bound - used.min(bound)) {
                let mut e2 = e.clone();
                e2[v] = p;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..(1u64 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect()
        })
        .collect()
}

pub(crate) fn monomial_from(shape: Shape, even: &[u32], odd: &[usize]) -> SuperFunction {
    SuperFunction::monomial(shape, Rational::one(), even, odd)
}

/// Group the terms of a field by target for compact comparison in reports.
pub fn coefficient_table(v: &VectorField) -> BTreeMap<(Coord, Monomial), Rational> {
    v.terms().map(|(c, m, q)| ((c, m.clone()), q.clone())).collect()
}
