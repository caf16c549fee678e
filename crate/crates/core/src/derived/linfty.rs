use std::fmt::Debug;

use num_traits::One;

use crate::error::Result;
use crate::graded::{enumerate_shuffles, koszul_sign, parity_sign, DegreeVector, Rational, ShuffleSpec};
use crate::superfield::{Shape, VectorField};

use super::brackets::{derived_bracket, MCDelta};
use super::extended::{extended_bracket, ExtElement};
use super::valgebra::VAlgebra;

/// A family of graded-symmetric degree-1 brackets `m_k`, `k ≥ 1`.
pub trait LInftyAlgebra: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, s: &Rational);
    /// Split into homogeneous pieces tagged with their degree.
    fn homogeneous_parts(&self, x: &Self::Elem) -> Vec<(i64, Self::Elem)>;
    /// `m_k(args)` with `k = args.len()`.
    fn bracket(&self, args: &[Self::Elem]) -> Result<Self::Elem>;
}

/// Derived brackets `m_k = P[...[Δ, ·], ..., ·]` on 𝔞.
pub struct DerivedLInfty<'a, V: VAlgebra + ?Sized> {
    pub valg: &'a V,
    pub delta: &'a MCDelta,
}

impl<V: VAlgebra + ?Sized> LInftyAlgebra for DerivedLInfty<'_, V> {
    type Elem = VectorField;

    fn zero(&self) -> VectorField {
        VectorField::zero(self.valg.shape())
    }
    fn is_zero(&self, x: &VectorField) -> bool {
        x.is_zero()
    }
    fn add_scaled(&self, acc: &mut VectorField, x: &VectorField, s: &Rational) {
        acc.add_scaled(x, s);
    }
    fn homogeneous_parts(&self, x: &VectorField) -> Vec<(i64, VectorField)> {
        x.homogeneous_parts().into_iter().collect()
    }
    fn bracket(&self, args: &[VectorField]) -> Result<VectorField> {
        derived_bracket(self.valg, self.delta, args)
    }
}

/// The extended structure on `V[1] ⊕ 𝔞`.
pub struct ExtendedLInfty<'a, V: VAlgebra + ?Sized> {
    pub valg: &'a V,
    pub delta: &'a MCDelta,
}

impl<V: VAlgebra + ?Sized> LInftyAlgebra for ExtendedLInfty<'_, V> {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        ExtElement::zero(self.valg.shape())
    }
    fn is_zero(&self, x: &ExtElement) -> bool {
        x.is_zero()
    }
    fn add_scaled(&self, acc: &mut ExtElement, x: &ExtElement, s: &Rational) {
        acc.add_scaled(x, s);
    }
    fn homogeneous_parts(&self, x: &ExtElement) -> Vec<(i64, ExtElement)> {
        let mut out: Vec<(i64, ExtElement)> = Vec::new();
        for (shifted, f, d) in x.atoms() {
            let piece = if shifted {
                ExtElement::shifted(f)
            } else {
                ExtElement::abelian(f)
            };
            match out.iter_mut().find(|(e, _)| *e == d) {
                Some((_, acc)) => acc.add_scaled(&piece, &Rational::one()),
                None => out.push((d, piece)),
            }
        }
        out
    }
    fn bracket(&self, args: &[ExtElement]) -> Result<ExtElement> {
        extended_bracket(self.valg, self.delta, args)
    }
}

/// A DGLA `(L, [Q,·], [·,·])` of fields read as an L∞[1]-algebra on `L[1]`:
/// `m_1(v) = -[Q,v]`, `m_2(v,w) = (-1)^{|v|}[v,w]`, higher brackets zero.
/// Elements are stored unshifted.
pub struct DglaLInfty {
    pub q: VectorField,
}

impl DglaLInfty {
    pub fn shape(&self) -> Shape {
        self.q.shape()
    }
}

impl LInftyAlgebra for DglaLInfty {
    type Elem = VectorField;

    fn zero(&self) -> VectorField {
        VectorField::zero(self.q.shape())
    }
    fn is_zero(&self, x: &VectorField) -> bool {
        x.is_zero()
    }
    fn add_scaled(&self, acc: &mut VectorField, x: &VectorField, s: &Rational) {
        acc.add_scaled(x, s);
    }
    fn homogeneous_parts(&self, x: &VectorField) -> Vec<(i64, VectorField)> {
        x.homogeneous_parts()
            .into_iter()
            .map(|(d, f)| (d - 1, f))
            .collect()
    }
    fn bracket(&self, args: &[VectorField]) -> Result<VectorField> {
        match args {
            [v] => Ok(-&self.q.bracket(v)?),
            [v, w] => {
                let mut out = VectorField::zero(self.q.shape());
                for (d, vp) in v.homogeneous_parts() {
                    let s = Rational::from_integer(parity_sign(d).into());
                    out.add_scaled(&vp.bracket(w)?, &s);
                }
                Ok(out)
            }
            _ => Ok(VectorField::zero(self.q.shape())),
        }
    }
}

/// The `n`-ary generalized Jacobi expression
/// `Σ_{i+j=n+1} Σ_{τ ∈ Sh(j, n-j)} e(τ) m_i(m_j(a_τ(1..j)), a_τ(j+1..n))`
/// for homogeneous arguments with the given degrees.
pub fn jacobiator<L: LInftyAlgebra + ?Sized>(
    alg: &L,
    args: &[(i64, L::Elem)],
) -> Result<L::Elem> {
    let n = args.len();
    let degs = DegreeVector::new(args.iter().map(|a| a.0).collect::<Vec<_>>());
    let mut total = alg.zero();
    for j in 1..=n {
        for tau in enumerate_shuffles(&ShuffleSpec::new([j, n - j])) {
            let e = koszul_sign(&tau, &degs)?;
            let word = tau.permute(args);
            let inner_args: Vec<L::Elem> = word[..j].iter().map(|a| a.1.clone()).collect();
            let inner = alg.bracket(&inner_args)?;
            if alg.is_zero(&inner) {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(word[j..].iter().map(|a| a.1.clone()));
            let outer = alg.bracket(&outer_args)?;
            alg.add_scaled(&mut total, &outer, &Rational::from_integer(e.into()));
        }
    }
    Ok(total)
}

/// Per-arity tally of the generalized Jacobi identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport<E> {
    /// `(n, probes evaluated, failures)`.
    pub per_arity: Vec<(usize, usize, usize)>,
    /// Probe index and the nonzero value.
    pub first_failure: Option<(usize, E)>,
}

impl<E> AxiomReport<E> {
    pub fn passed(&self) -> bool {
        self.per_arity.iter().all(|r| r.2 == 0)
    }

    pub fn total_probes(&self) -> usize {
        self.per_arity.iter().map(|r| r.1).sum()
    }
}

/// Default upper bound on the arity checked.
pub const DEFAULT_MAX_ARITY: usize = 4;

/// Evaluates the generalized Jacobi identity of arity `probe.len()` on each
/// probe with `1 ≤ len ≤ max_arity`; arguments are split into homogeneous
/// parts and the identity is checked on every combination.
pub fn check_linfty_axioms<L: LInftyAlgebra + ?Sized>(
    alg: &L,
    max_arity: usize,
    probes: &[Vec<L::Elem>],
) -> Result<AxiomReport<L::Elem>> {
    let mut per_arity: Vec<(usize, usize, usize)> = (1..=max_arity).map(|n| (n, 0, 0)).collect();
    let mut first_failure = None;
    for (idx, probe) in probes.iter().enumerate() {
        let n = probe.len();
        if n == 0 || n > max_arity {
            continue;
        }
        let parts: Vec<Vec<(i64, L::Elem)>> = probe.iter().map(|x| alg.homogeneous_parts(x)).collect();
        let mut ok = true;
        let mut value = alg.zero();
        if parts.iter().all(|p| !p.is_empty()) {
            let mut choice = vec![0usize; n];
            'outer: loop {
                let args: Vec<(i64, L::Elem)> =
                    choice.iter().enumerate().map(|(i, &c)| parts[i][c].clone()).collect();
                let j = jacobiator(alg, &args)?;
                if !alg.is_zero(&j) {
                    ok = false;
                    value = j;
                    break;
                }
                let mut pos = 0;
                loop {
                    if pos == n {
                        break 'outer;
                    }
                    choice[pos] += 1;
                    if choice[pos] < parts[pos].len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
            }
        }
        let slot = &mut per_arity[n - 1];
        slot.1 += 1;
        if !ok {
            slot.2 += 1;
            if first_failure.is_none() {
                first_failure = Some((idx, value));
            }
        }
    }
    Ok(AxiomReport {
        per_arity,
        first_failure,
    })
}
