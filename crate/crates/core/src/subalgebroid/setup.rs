use crate::algebroid::AlgebroidData;
use crate::derived::{MCDelta, SplitVAlgebra, VAlgebra};
use crate::error::{Error, Result};
use crate::graded::Rational;
use crate::superfield::{Coord, EvenRole, OddRole, Shape, SuperFunction, VectorField};

use num_traits::One;

/// An algebroid in adapted coordinates around a candidate subalgebroid
/// `E → S`: even coordinates are `Base` (along `S`) or `Normal` (the fibre of
/// `NS`), odd coordinates are dual to a frame of `E` (`Sub`) or of a
/// complement `F` (`Complement`).
#[derive(Debug, Clone)]
pub struct SplitSetup {
    data: AlgebroidData,
    valg: SplitVAlgebra,
    base: Vec<usize>,
    normal: Vec<usize>,
    sub: Vec<usize>,
    comp: Vec<usize>,
}

impl SplitSetup {
    pub fn new(data: AlgebroidData) -> Result<Self> {
        let chart = data.chart().clone();
        if !chart.odd_with_role(OddRole::Plain).is_empty() {
            return Err(Error::Precondition(
                "every odd coordinate needs a sub or complement role".into(),
            ));
        }
        let base = chart.even_with_role(EvenRole::Base);
        let normal = chart.even_with_role(EvenRole::Normal);
        let sub = chart.odd_with_role(OddRole::Sub);
        let comp = chart.odd_with_role(OddRole::Complement);
        Ok(SplitSetup {
            valg: SplitVAlgebra::new(chart),
            data,
            base,
            normal,
            sub,
            comp,
        })
    }

    pub fn data(&self) -> &AlgebroidData {
        &self.data
    }

    pub fn valg(&self) -> &SplitVAlgebra {
        &self.valg
    }

    pub fn shape(&self) -> Shape {
        self.data.shape()
    }

    pub fn xq(&self) -> VectorField {
        self.data.build_xq()
    }

    /// Even indices along `S`.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Even indices spanning `NS`.
    pub fn normal(&self) -> &[usize] {
        &self.normal
    }

    /// Odd indices dual to the `E` frame.
    pub fn sub(&self) -> &[usize] {
        &self.sub
    }

    /// Odd indices dual to the `F` frame.
    pub fn complement(&self) -> &[usize] {
        &self.comp
    }

    pub fn is_fixed_base(&self) -> bool {
        self.normal.is_empty()
    }

    /// `X_Q` as the Maurer–Cartan element of the V-algebra. Requires `X_Q`
    /// homological and `P(X_Q) = 0` (i.e. `E → S` is a subalgebroid).
    pub fn delta(&self) -> Result<MCDelta> {
        MCDelta::new(&self.valg, self.xq())
    }

    /// `P(X_Q)`; zero iff `E → S` is itself a subalgebroid.
    pub fn base_defect(&self) -> Result<VectorField> {
        self.valg.project(&self.xq())
    }

    /// The zero deformation pair.
    pub fn zero_pair(&self) -> DeformationPair {
        let s = self.shape();
        DeformationPair {
            sigma: vec![SuperFunction::zero(s); self.normal.len()],
            phi: vec![vec![SuperFunction::zero(s); self.comp.len()]; self.sub.len()],
        }
    }

    /// `I(X_{σ,φ}) = Σ φ^j_i ξ^i ∂/∂ξ^j + Σ σ^k ∂/∂y^k`.
    pub fn encode(&self, d: &DeformationPair) -> Result<VectorField> {
        self.check_pair(d)?;
        let s = self.shape();
        let mut out = VectorField::zero(s);
        for (k, &y) in self.normal.iter().enumerate() {
            out.add_component(Coord::Even(y), &d.sigma[k]);
        }
        for (ei, &i) in self.sub.iter().enumerate() {
            let xi = SuperFunction::coordinate(s, Coord::Odd(i));
            for (fj, &j) in self.comp.iter().enumerate() {
                out.add_component(Coord::Odd(j), &d.phi[ei][fj].mul(&xi));
            }
        }
        Ok(out)
    }

    /// The Maurer–Cartan candidate of a pair: `-I(X_{σ,φ})`.
    pub fn candidate(&self, d: &DeformationPair) -> Result<VectorField> {
        Ok(-&self.encode(d)?)
    }

    /// Inverse of [`encode`](Self::encode) on degree-0 elements of 𝔞.
    pub fn decode(&self, a: &VectorField) -> Result<DeformationPair> {
        if !self.valg.contains(a) || !a.is_homogeneous_of(0) {
            return Err(Error::NotInAbelian("not a degree-0 element of 𝔞".into()));
        }
        let s = self.shape();
        let mut d = self.zero_pair();
        for (c, m, q) in a.terms() {
            let mono = SuperFunction::from_terms(
                s,
                [(
                    crate::superfield::Monomial {
                        even: m.even.clone(),
                        odd: 0,
                    },
                    q.clone(),
                )],
            );
            match c {
                Coord::Even(y) => {
                    let k = self.normal.iter().position(|&t| t == y).expect("normal target");
                    d.sigma[k].add_scaled(&mono, &Rational::one());
                }
                Coord::Odd(j) => {
                    let fj = self.comp.iter().position(|&t| t == j).expect("complement target");
                    let i = m.odd.trailing_zeros() as usize;
                    let ei = self.sub.iter().position(|&t| t == i).expect("sub source");
                    d.phi[ei][fj].add_scaled(&mono, &Rational::one());
                }
            }
        }
        Ok(d)
    }

    pub fn check_pair(&self, d: &DeformationPair) -> Result<()> {
        if d.sigma.len() != self.normal.len() {
            return Err(Error::LengthMismatch {
                expected: self.normal.len(),
                found: d.sigma.len(),
            });
        }
        if d.phi.len() != self.sub.len() {
            return Err(Error::LengthMismatch {
                expected: self.sub.len(),
                found: d.phi.len(),
            });
        }
        for row in &d.phi {
            if row.len() != self.comp.len() {
                return Err(Error::LengthMismatch {
                    expected: self.comp.len(),
                    found: row.len(),
                });
            }
        }
        for f in d.sigma.iter().chain(d.phi.iter().flatten()) {
            self.shape().check(f.shape())?;
            if !f.is_even_only() || !f.is_free_of(&self.normal, 0) {
                return Err(Error::Precondition(
                    "deformation coefficients must depend on base coordinates only".into(),
                ));
            }
        }
        Ok(())
    }

    /// Same setup with a different algebroid structure on the same chart.
    pub fn with_data(&self, data: AlgebroidData) -> Result<SplitSetup> {
        if data.chart() != self.data.chart() {
            return Err(Error::ChartMismatch(
                self.shape().to_string(),
                data.shape().to_string(),
            ));
        }
        SplitSetup::new(data)
    }
}

/// `(σ, φ)`: a section of `NS` and a bundle map `E → F`, with coefficients
/// polynomial in the base coordinates. `phi[i][j]` is the `F_j` component
/// of `φ(E_i)`, positions referring to the setup's `sub()` and
/// `complement()` lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationPair {
    pub sigma: Vec<SuperFunction>,
    pub phi: Vec<Vec<SuperFunction>>,
}

impl DeformationPair {
    pub fn is_zero(&self) -> bool {
        self.sigma.iter().chain(self.phi.iter().flatten()).all(|f| f.is_zero())
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &DeformationPair) -> DeformationPair {
        DeformationPair {
            sigma: self.sigma.iter().zip(&other.sigma).map(|(a, b)| a + b).collect(),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// Constant-coefficient pair over a shape.
    pub fn constant(shape: Shape, sigma: &[Rational], phi: &[Vec<Rational>]) -> DeformationPair {
        let c = |q: &Rational| SuperFunction::constant(shape, q.clone());
        DeformationPair {
            sigma: sigma.iter().map(c).collect(),
            phi: phi.iter().map(|r| r.iter().map(c).collect()).collect(),
        }
    }
}
