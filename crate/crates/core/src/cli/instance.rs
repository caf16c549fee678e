//! JSON instance files (`format_version` 1).
//!
//! Polynomials are lists of terms `{exp, num, den}` where `exp` is the
//! exponent vector over the even coordinates (shorter vectors are padded with
//! zeros, an empty one is a constant) and `num/den` an exact rational.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebroid::AlgebroidData;
use crate::applications::HomomorphismData;
use crate::error::{Error, Result};
use crate::graded::Rational;
use crate::subalgebroid::{BundleForm, DeformationPair, SplitSetup};
use crate::superfield::{Chart, EvenCoord, EvenRole, Monomial, OddCoord, OddRole, Shape, SuperFunction, VectorField};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Algebroid,
    Subalgebroid,
    LieAlgebra,
    Subalgebra,
    Foliation,
    Homomorphism,
}

impl Kind {
    /// Kinds whose frame carries an `E`/`F` split.
    pub fn is_split(self) -> bool {
        !matches!(self, Kind::Algebroid | Kind::LieAlgebra)
    }
}

/// One polynomial term; the rational is normalized on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTerm")]
pub struct Term {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exp: Vec<u32>,
    pub num: i64,
    pub den: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default)]
    exp: Vec<u32>,
    num: i64,
    #[serde(default = "one")]
    den: i64,
}

fn one() -> i64 {
    1
}

impl TryFrom<RawTerm> for Term {
    type Error = String;

    fn try_from(r: RawTerm) -> std::result::Result<Self, String> {
        if r.den == 0 {
            return Err(format!("rational {}/0 has a zero denominator (field `den`)", r.num));
        }
        let q = Rational::new(r.num.into(), r.den.into());
        let (num, den) = small(&q).ok_or_else(|| "rational does not fit in 64 bits".to_string())?;
        Ok(Term { exp: r.exp, num, den })
    }
}

fn small(q: &Rational) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

pub type Poly = Vec<Term>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvenSpec {
    pub name: String,
    #[serde(default = "base_role")]
    pub role: EvenRole,
}

fn base_role() -> EvenRole {
    EvenRole::Base
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OddSpec {
    pub name: String,
    #[serde(default = "plain_role")]
    pub role: OddRole,
}

fn plain_role() -> OddRole {
    OddRole::Plain
}

/// `[ε_i, ε_j] ∋ poly · ε_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub poly: Poly,
}

/// `ρ(ε_i) ∋ poly · ∂_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorSpec {
    pub i: usize,
    pub t: usize,
    pub poly: Poly,
}

/// Structure data on a chart given elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    #[serde(default)]
    pub structure: Vec<BracketSpec>,
    #[serde(default)]
    pub anchor: Vec<AnchorSpec>,
}

/// `σ` over the normal coordinates; `phi[i][j]` the coefficient of the
/// `j`-th complement element in `φ` of the `i`-th sub element.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    #[serde(default)]
    pub sigma: Vec<Poly>,
    #[serde(default)]
    pub phi: Vec<Vec<Poly>>,
}

/// A bundle map `Ψ` (`bundle_map[b][i]`) covering `ψ` (`base_map[t]`).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub bundle_map: Vec<Vec<Poly>>,
    #[serde(default)]
    pub base_map: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    #[serde(default)]
    pub even: Vec<EvenSpec>,
    #[serde(default)]
    pub odd: Vec<OddSpec>,
    #[serde(default)]
    pub structure: Vec<BracketSpec>,
    #[serde(default)]
    pub anchor: Vec<AnchorSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub target: TargetSpec,
    #[serde(flatten)]
    pub map: MapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformed_map: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_deformation: Option<StructureSpec>,
}

/// `psi[i][j]`: coefficient of the `j`-th complement element in `ψ(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSpec {
    pub psi: Vec<Vec<Poly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub even: Vec<EvenSpec>,
    #[serde(default)]
    pub odd: Vec<OddSpec>,
    #[serde(default)]
    pub structure: Vec<BracketSpec>,
    #[serde(default)]
    pub anchor: Vec<AnchorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<PairSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_pair: Option<PairSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_deformation: Option<StructureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<HomSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

impl InstanceFile {
    /// Parses and schema-checks; errors carry the field path.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::parse(path, e.into_inner().to_string())
        })?;
        if file.format_version != FORMAT_VERSION {
            return Err(Error::parse(
                "format_version",
                format!("unsupported version {} (expected {FORMAT_VERSION})", file.format_version),
            ));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    /// Writes the structure of `data` with the given kind; optional blocks
    /// are left empty.
    pub fn from_data(kind: Kind, name: &str, data: &AlgebroidData) -> Self {
        let (even, odd) = chart_specs(data.chart());
        let s = structure_spec(data);
        InstanceFile {
            format_version: FORMAT_VERSION,
            kind,
            name: Some(name.to_string()),
            even,
            odd,
            structure: s.structure,
            anchor: s.anchor,
            deformation: None,
            base_pair: None,
            structure_deformation: None,
            homomorphism: None,
            foliation: None,
            options: Options::default(),
        }
    }

    pub fn chart(&self) -> Result<Chart> {
        chart_from(&self.even, &self.odd).map_err(|e| Error::parse("odd", e.to_string()))
    }

    /// Resolves every block against the chart.
    pub fn resolve(&self) -> Result<Instance> {
        let chart = self.chart()?;
        if matches!(self.kind, Kind::LieAlgebra | Kind::Subalgebra) && chart.n_even() != 0 {
            return Err(Error::parse("even", "a Lie algebra has no base coordinates"));
        }
        let data = build_data(&chart, &self.structure, &self.anchor, "")?;
        let structure_deformation = match &self.structure_deformation {
            Some(sd) => Some(build_data(&chart, &sd.structure, &sd.anchor, "structure_deformation.")?.build_xq()),
            None => None,
        };
        let mut inst = Instance {
            file: self.clone(),
            data,
            setup: None,
            pair: None,
            base_pair: None,
            structure_deformation,
            homomorphism: None,
            psi: None,
        };
        match self.kind {
            Kind::Algebroid | Kind::LieAlgebra => {
                for (what, present) in [
                    ("deformation", self.deformation.is_some()),
                    ("base_pair", self.base_pair.is_some()),
                    ("homomorphism", self.homomorphism.is_some()),
                    ("foliation", self.foliation.is_some()),
                ] {
                    if present {
                        return Err(Error::parse(what, "not used by this kind"));
                    }
                }
            }
            Kind::Subalgebroid | Kind::Subalgebra | Kind::Foliation => {
                let setup = SplitSetup::new(inst.data.clone()).map_err(|e| Error::parse("odd", e.to_string()))?;
                inst.pair = self.deformation.as_ref().map(|p| pair_from(&setup, p, "deformation")).transpose()?;
                inst.base_pair = self.base_pair.as_ref().map(|p| pair_from(&setup, p, "base_pair")).transpose()?;
                if let Some(f) = &self.foliation {
                    inst.psi = Some(form_from(&setup, &f.psi)?);
                }
                inst.setup = Some(setup);
            }
            Kind::Homomorphism => {
                let spec = self
                    .homomorphism
                    .as_ref()
                    .ok_or_else(|| Error::parse("homomorphism", "required for this kind"))?;
                let tchart = chart_from(&spec.target.even, &spec.target.odd)
                    .map_err(|e| Error::parse("homomorphism.target", e.to_string()))?;
                let target = build_data(&tchart, &spec.target.structure, &spec.target.anchor, "homomorphism.target.")?;
                let s = chart.shape();
                let (bundle, base) = map_from(s, &spec.map, "homomorphism")?;
                let h = HomomorphismData::new(inst.data.clone(), target, bundle, base)
                    .map_err(|e| Error::parse("homomorphism", e.to_string()))?;
                let setup = h.graph_setup()?;
                if let Some(d) = &spec.deformed_map {
                    let (b2, m2) = map_from(s, d, "homomorphism.deformed_map")?;
                    let pair = h
                        .deformation_to(&b2, &m2)
                        .map_err(|e| Error::parse("homomorphism.deformed_map", e.to_string()))?;
                    inst.pair = Some(pair);
                }
                let target_deformation = match &spec.target_deformation {
                    Some(sd) => Some(
                        build_data(&tchart, &sd.structure, &sd.anchor, "homomorphism.target_deformation.")?.build_xq(),
                    ),
                    None => None,
                };
                inst.homomorphism = Some(ResolvedHom { data: h, target_deformation });
                inst.setup = Some(setup);
            }
        }
        Ok(inst)
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedHom {
    pub data: HomomorphismData,
    pub target_deformation: Option<VectorField>,
}

/// An instance with all polynomial data built.
#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub data: AlgebroidData,
    /// The split setup; for homomorphisms the graph setup on `A ⊕ B`.
    pub setup: Option<SplitSetup>,
    pub pair: Option<DeformationPair>,
    pub base_pair: Option<DeformationPair>,
    pub structure_deformation: Option<VectorField>,
    pub homomorphism: Option<ResolvedHom>,
    pub psi: Option<BundleForm>,
}

impl Instance {
    pub fn name(&self) -> Option<&str> {
        self.file.name.as_deref()
    }

    pub fn setup(&self) -> Result<&SplitSetup> {
        self.setup
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{:?} instances carry no split", self.file.kind)))
    }
}

fn chart_from(even: &[EvenSpec], odd: &[OddSpec]) -> Result<Chart> {
    Chart::new(
        even.iter().map(|c| EvenCoord { name: c.name.clone(), role: c.role }).collect(),
        odd.iter().map(|c| OddCoord { name: c.name.clone(), role: c.role }).collect(),
    )
}

pub fn chart_specs(chart: &Chart) -> (Vec<EvenSpec>, Vec<OddSpec>) {
    let even = chart.even.iter().map(|c| EvenSpec { name: c.name.clone(), role: c.role }).collect();
    let odd = chart.odd.iter().map(|c| OddSpec { name: c.name.clone(), role: c.role }).collect();
    (even, odd)
}

/// Structure and anchor lists of `data`.
pub fn structure_spec(data: &AlgebroidData) -> StructureSpec {
    StructureSpec {
        structure: data
            .structure_terms()
            .iter()
            .map(|(&(i, j, k), f)| BracketSpec { i, j, k, poly: poly_spec(f) })
            .collect(),
        anchor: data
            .anchor_terms()
            .iter()
            .map(|(&(i, t), f)| AnchorSpec { i, t, poly: poly_spec(f) })
            .collect(),
    }
}

/// Term list of an even polynomial. Panics on odd terms or coefficients
/// outside 64 bits.
pub fn poly_spec(f: &SuperFunction) -> Poly {
    f.terms()
        .iter()
        .map(|(m, q)| {
            assert_eq!(m.odd, 0, "even polynomial expected");
            let (num, den) = small(q).expect("64-bit coefficient");
            let mut exp = m.even.clone();
            while exp.last() == Some(&0) {
                exp.pop();
            }
            Term { exp, num, den }
        })
        .collect()
}

fn poly_from(shape: Shape, p: &[Term], path: &str) -> Result<SuperFunction> {
    let mut f = SuperFunction::zero(shape);
    for (n, t) in p.iter().enumerate() {
        if t.exp.len() > shape.n_even {
            return Err(Error::parse(
                format!("{path}[{n}].exp"),
                format!("{} exponents for {} even coordinates", t.exp.len(), shape.n_even),
            ));
        }
        let mut even = t.exp.clone();
        even.resize(shape.n_even, 0);
        f.add_term(Monomial { even, odd: 0 }, Rational::new(t.num.into(), t.den.into()));
    }
    Ok(f)
}

fn build_data(chart: &Chart, structure: &[BracketSpec], anchor: &[AnchorSpec], prefix: &str) -> Result<AlgebroidData> {
    let s = chart.shape();
    let mut data = AlgebroidData::new(chart.clone());
    for (n, b) in structure.iter().enumerate() {
        let path = format!("{prefix}structure[{n}]");
        let f = poly_from(s, &b.poly, &format!("{path}.poly"))?;
        data.add_bracket(b.i, b.j, b.k, f).map_err(|e| Error::parse(&path, e.to_string()))?;
    }
    for (n, a) in anchor.iter().enumerate() {
        let path = format!("{prefix}anchor[{n}]");
        let f = poly_from(s, &a.poly, &format!("{path}.poly"))?;
        data.add_anchor(a.i, a.t, f).map_err(|e| Error::parse(&path, e.to_string()))?;
    }
    Ok(data)
}

fn pair_from(setup: &SplitSetup, p: &PairSpec, path: &str) -> Result<DeformationPair> {
    let s = setup.shape();
    let sigma = p
        .sigma
        .iter()
        .enumerate()
        .map(|(n, q)| poly_from(s, q, &format!("{path}.sigma[{n}]")))
        .collect::<Result<Vec<_>>>()?;
    let phi = rows_from(s, &p.phi, &format!("{path}.phi"))?;
    let d = DeformationPair { sigma, phi };
    setup.check_pair(&d).map_err(|e| Error::parse(path, e.to_string()))?;
    Ok(d)
}

fn rows_from(s: Shape, rows: &[Vec<Poly>], path: &str) -> Result<Vec<Vec<SuperFunction>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, q)| poly_from(s, q, &format!("{path}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn form_from(setup: &SplitSetup, psi: &[Vec<Poly>]) -> Result<BundleForm> {
    let s = setup.shape();
    let rows = rows_from(s, psi, "foliation.psi")?;
    let n_f = setup.complement().len();
    if rows.len() != setup.sub().len() || rows.iter().any(|r| r.len() != n_f) {
        return Err(Error::parse(
            "foliation.psi",
            format!("expected {} rows of length {n_f}", setup.sub().len()),
        ));
    }
    let mut w = BundleForm::zero(s, 1, n_f);
    for (i, row) in rows.into_iter().enumerate() {
        w.set(&[i], row).map_err(|e| Error::parse("foliation.psi", e.to_string()))?;
    }
    Ok(w)
}

fn map_from(s: Shape, m: &MapSpec, path: &str) -> Result<(Vec<Vec<SuperFunction>>, Vec<SuperFunction>)> {
    let bundle = rows_from(s, &m.bundle_map, &format!("{path}.bundle_map"))?;
    let base = m
        .base_map
        .iter()
        .enumerate()
        .map(|(n, q)| poly_from(s, q, &format!("{path}.base_map[{n}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((bundle, base))
}

/// A constant-coefficient pair from flat lists: `sigma` over the normal
/// coordinates, `phi` row-major over (sub, complement).
pub fn constant_pair(setup: &SplitSetup, sigma: &[Rational], phi: &[Rational]) -> Result<DeformationPair> {
    let (ns, nf) = (setup.sub().len(), setup.complement().len());
    if sigma.len() != setup.normal().len() {
        return Err(Error::parse(
            "--sigma",
            format!("expected {} values, found {}", setup.normal().len(), sigma.len()),
        ));
    }
    if phi.len() != ns * nf {
        return Err(Error::parse("--phi", format!("expected {} values, found {}", ns * nf, phi.len())));
    }
    let rows: Vec<Vec<Rational>> = if nf == 0 { vec![vec![]; ns] } else { phi.chunks(nf).map(|c| c.to_vec()).collect() };
    Ok(DeformationPair::constant(setup.shape(), sigma, &rows))
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::parse(s.to_string(), "expected an integer or p/q");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse(s.to_string(), "zero denominator"));
    }
    let q = Rational::new(n, d);
    debug_assert!(!q.denom().is_negative());
    Ok(q)
}
