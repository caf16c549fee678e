//! Command dispatch over resolved instances.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::algebroid::{deformation_residual, AlgebroidData, Derivation, Section};
use crate::applications::{foliation_infinitesimal, simultaneous_homomorphism};
use crate::cohomology::{deformation_cohomology, m1_cohomology, CohomologyReport};
use crate::derived::{
    check_linfty_axioms, derived_bracket, AxiomReport, DerivedLInfty, DglaLInfty, LInftyAlgebra, SplitVAlgebra,
    VAlgebra, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::graded::{inv_factorial, qi, Rational};
use crate::random::rng;
use crate::subalgebroid::{
    decode_form, encode_form, explicit_structure_map, form_basis, graph_closure_oracle, simultaneous_residual,
    subalgebroid_mc_residual, BundleForm, DeformationPair, SplitSetup,
};
use crate::superfield::{Chart, VectorField};

use super::instance::{constant_pair, Instance, InstanceFile, Kind};
use super::presets::preset;
use super::report::{Report, Verdict};

const MC_CONVENTION: &str = "MC candidate c = -I(X_{σ,φ}); residual P(e^{ad c} X_Q) = Σ_k m_k(c,…,c)/k!";
const OBSTRUCTION_CONVENTION: &str = "obstruction ½[X_Q, X_Q], X_Q = ρ^t_i ξ^i ∂_t - ½ C^k_ij ξ^i ξ^j ∂ξ^k";
const COHOMOLOGY_CONVENTION: &str = "Cⁿ = fields of degree n-1; truncated complexes use ker d / (im d ∩ C≤D)";
const JACOBI_CONVENTION: &str = "Σ_{i+j=n+1} Σ_{τ∈Sh(j,n-j)} e(τ) m_i(m_j(a_τ(1..j)), a_τ(j+1..n)) = 0";

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Validate,
    McCheck,
    /// Optional constant overrides for `σ` and `φ` (row-major).
    SubalgCheck {
        sigma: Option<Vec<Rational>>,
        phi: Option<Vec<Rational>>,
    },
    Simultaneous,
    Cohomology {
        degree: Option<usize>,
    },
    Brackets,
    OracleCompare,
    Axioms,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::McCheck => "mc-check",
            Command::SubalgCheck { .. } => "subalg-check",
            Command::Simultaneous => "simultaneous",
            Command::Cohomology { .. } => "cohomology",
            Command::Brackets => "brackets",
            Command::OracleCompare => "oracle-compare",
            Command::Axioms => "axioms",
        }
    }
}

/// Effective options: command-line flags over instance options over defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub cap: usize,
    pub truncate: Option<u32>,
    pub probes: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            cap: DEFAULT_CAP,
            truncate: None,
            probes: 100,
            seed: 0,
        }
    }
}

impl RunOptions {
    pub fn for_instance(file: &InstanceFile) -> Self {
        let d = RunOptions::default();
        let o = &file.options;
        RunOptions {
            cap: o.cap.unwrap_or(d.cap),
            truncate: o.truncate,
            probes: o.probes.unwrap_or(d.probes),
            seed: o.seed.unwrap_or(d.seed),
        }
    }
}

/// `preset:NAME` or a path to a JSON instance.
pub fn load_instance(arg: &str) -> Result<InstanceFile> {
    match arg.strip_prefix("preset:") {
        Some(name) => preset(name),
        None => InstanceFile::load(std::path::Path::new(arg)),
    }
}

pub fn run_command(cmd: &Command, inst: &Instance, opts: &RunOptions) -> Result<Report> {
    match cmd {
        Command::Validate => validate(inst),
        Command::McCheck => mc_check(inst, opts),
        Command::SubalgCheck { sigma, phi } => {
            let setup = inst.setup()?;
            let pair = match (sigma, phi) {
                (None, None) => inst.pair.clone().unwrap_or_else(|| setup.zero_pair()),
                (s, p) => {
                    let zs = vec![qi(0); setup.normal().len()];
                    let zp = vec![qi(0); setup.sub().len() * setup.complement().len()];
                    constant_pair(setup, s.as_deref().unwrap_or(&zs), p.as_deref().unwrap_or(&zp))?
                }
            };
            pair_check("subalg-check", inst, setup, &pair, opts)
        }
        Command::Simultaneous => simultaneous(inst, opts),
        Command::Cohomology { degree } => cohomology(inst, *degree, opts),
        Command::Brackets => brackets(inst, opts),
        Command::OracleCompare => oracle_compare(inst, opts),
        Command::Axioms => axioms(inst, opts),
    }
}

fn section_strings(s: &Section, chart: &Chart) -> Vec<String> {
    s.iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(k, f)| format!("{}: {}", chart.odd[k].name, f.display(chart)))
        .collect()
}

fn validate(inst: &Instance) -> Result<Report> {
    let chart = inst.data.chart();
    let r = inst.data.validate()?;
    let mut ok = r.passed();
    let jacobi: Vec<Value> = r
        .classical
        .jacobi
        .iter()
        .map(|((i, j, k), v)| json!({"frame": [i, j, k], "jacobiator": section_strings(v, chart)}))
        .collect();
    let mut rep = Report::new("validate", inst.name(), Verdict::Pass)
        .residual(&r.obstruction, chart)
        .oracle(true)
        .detail("homological", r.obstruction.is_zero())
        .detail("jacobi_failures", Value::Array(jacobi))
        .detail("anchor_failures", r.classical.anchor.len())
        .convention(OBSTRUCTION_CONVENTION);
    if let Some(h) = &inst.homomorphism {
        let t = h.data.target.validate()?;
        rep = rep.detail("target_homological", t.passed());
        ok &= t.passed();
    }
    if let Some(setup) = &inst.setup {
        let sub = setup.base_defect()?.is_zero();
        let oracle = graph_closure_oracle(setup, &setup.zero_pair())?.accepted();
        if ok && sub != oracle {
            return Err(Error::Inconsistency("subalgebroid test and graph-closure oracle disagree".into()));
        }
        let key = if inst.file.kind == Kind::Homomorphism { "homomorphism" } else { "subalgebroid" };
        rep = rep.detail(key, sub);
        ok &= sub;
    }
    rep.verdict = Verdict::from_check(ok);
    Ok(rep)
}

fn mc_check(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    match inst.file.kind {
        Kind::Algebroid | Kind::LieAlgebra => {
            let xt = inst
                .structure_deformation
                .as_ref()
                .ok_or_else(|| Error::Precondition("mc-check needs a structure_deformation block".into()))?;
            let xq = inst.data.build_xq();
            let res = deformation_residual(&xq, xt)?;
            let sum = AlgebroidData::from_xq(inst.data.chart().clone(), &(&xq + xt))?;
            let classical = sum.classical_check()?.passed();
            if classical != res.is_zero() {
                return Err(Error::Inconsistency("deformation residual and classical axioms disagree".into()));
            }
            Ok(Report::new("mc-check", inst.name(), Verdict::from_mc(res.is_zero()))
                .residual(&res, inst.data.chart())
                .oracle(true)
                .detail("classical", classical)
                .convention("residual [X_Q, X̃] + ½[X̃, X̃]"))
        }
        Kind::Foliation if inst.psi.is_some() => {
            let setup = inst.setup()?;
            let psi = inst.psi.as_ref().expect("checked");
            let f = foliation_infinitesimal(setup, psi)?;
            let derived = via_derived(setup, std::slice::from_ref(psi))?;
            let agrees = derived.values() == f.residual.values();
            if !agrees {
                return Err(Error::Inconsistency("explicit m_1 and the derived bracket differ".into()));
            }
            Ok(Report::new("mc-check", inst.name(), Verdict::from_mc(f.closed))
                .residual(&encode_form(setup, &f.residual), setup.data().chart())
                .oracle(agrees)
                .detail("closed", f.closed)
                .convention("infinitesimal deformation: m_1(ψ) = 0, forms encoded as (-1)^k ω ξ^I ∂ξ^j"))
        }
        _ => {
            let setup = inst.setup()?;
            let pair = inst
                .pair
                .as_ref()
                .ok_or_else(|| Error::Precondition("mc-check needs a deformation".into()))?;
            pair_check("mc-check", inst, setup, pair, opts)
        }
    }
}

fn pair_check(cmd: &str, inst: &Instance, setup: &SplitSetup, pair: &DeformationPair, opts: &RunOptions) -> Result<Report> {
    let r = subalgebroid_mc_residual(setup, pair, opts.cap)?;
    Ok(Report::new(cmd, inst.name(), Verdict::from_mc(r.is_zero()))
        .residual(r.mc.value(), setup.data().chart())
        .oracle(r.oracle_agrees())
        .detail("graph_closure_accepts", r.oracle.accepted())
        .detail("tangency_agrees", r.tangency.agree())
        .detail("series_terms", r.mc.terms)
        .convention(MC_CONVENTION))
}

fn simultaneous(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let setup = inst.setup()?;
    let cand = inst.pair.clone().unwrap_or_else(|| setup.zero_pair());
    let r = match &inst.homomorphism {
        Some(h) => {
            let xa = inst
                .structure_deformation
                .clone()
                .unwrap_or_else(|| VectorField::zero(h.data.source.shape()));
            let xb = h
                .target_deformation
                .clone()
                .unwrap_or_else(|| VectorField::zero(h.data.target.shape()));
            simultaneous_homomorphism(&h.data, &xa, &xb, &cand, opts.cap)?
        }
        None => {
            let base = inst.base_pair.clone().unwrap_or_else(|| setup.zero_pair());
            let xt = inst
                .structure_deformation
                .clone()
                .unwrap_or_else(|| VectorField::zero(setup.shape()));
            simultaneous_residual(setup, &base, &xt, &cand, opts.cap)?
        }
    };
    let total = r.structure_part() + r.subalgebroid_part();
    Ok(Report::new("simultaneous", inst.name(), Verdict::from_mc(r.is_zero()))
        .residual(&total, setup.data().chart())
        .oracle(r.oracle_agrees())
        .detail("structure_part_zero", r.structure_part().is_zero())
        .detail("subalgebroid_part_zero", r.subalgebroid_part().is_zero())
        .detail("sum_is_homological", r.homological)
        .detail("graph_closure_accepts", r.oracle.as_ref().map(|o| o.accepted()))
        .convention("extended MC element (X̃[1], c) with projection twisted by the base pair")
        .convention(MC_CONVENTION))
}

fn cohomology_row(c: &CohomologyReport) -> Value {
    json!({
        "degree": c.degree,
        "cochains": c.cochains,
        "cocycles": c.cocycles,
        "coboundaries": c.coboundaries,
        "dim": c.dim,
    })
}

fn cohomology(inst: &Instance, degree: Option<usize>, opts: &RunOptions) -> Result<Report> {
    let (top, run): (usize, Box<dyn Fn(usize) -> Result<CohomologyReport>>) = match &inst.setup {
        Some(setup) => (setup.shape().n_odd + 1, Box::new(move |n| m1_cohomology(setup, n, opts.truncate))),
        None => (inst.data.rank() + 1, Box::new(|n| deformation_cohomology(&inst.data, n, opts.truncate))),
    };
    let degrees: Vec<usize> = match degree {
        Some(n) => vec![n],
        None => (0..=top).collect(),
    };
    let rows = degrees.iter().map(|&n| run(n).map(|c| cohomology_row(&c))).collect::<Result<Vec<_>>>()?;
    let complex = if inst.setup.is_some() { "(𝔞, m_1)" } else { "(𝔛, [X_Q, ·])" };
    Ok(Report::new("cohomology", inst.name(), Verdict::Pass)
        .detail("complex", complex)
        .detail("truncation", opts.truncate)
        .detail("degrees", Value::Array(rows))
        .convention(COHOMOLOGY_CONVENTION))
}

fn via_derived(setup: &SplitSetup, args: &[BundleForm]) -> Result<BundleForm> {
    let delta = setup.delta()?;
    let enc: Vec<VectorField> = args.iter().map(|a| encode_form(setup, a)).collect();
    decode_form(setup, &derived_bracket(setup.valg(), &delta, &enc)?)
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(n, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Explicit `m_1, m_2, m_3` against derived brackets on forms of degree
/// ≤ 1, plus vanishing of arity 4. Returns `(tuples, mismatches)`.
pub fn explicit_agreement(setup: &SplitSetup) -> Result<(usize, usize)> {
    let mut basis = form_basis(setup, 0);
    basis.extend(form_basis(setup, 1));
    let (mut tuples, mut bad) = (0, 0);
    for k in 1..=4 {
        let idx = if k == 4 { multisets(basis.len().min(4), k) } else { multisets(basis.len(), k) };
        for t in idx {
            let args: Vec<BundleForm> = t.iter().map(|&i| basis[i].clone()).collect();
            tuples += 1;
            if explicit_structure_map(setup, &args)?.values() != via_derived(setup, &args)?.values() {
                bad += 1;
            }
        }
    }
    Ok((tuples, bad))
}

fn brackets(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let Some(setup) = &inst.setup else {
        let d = Derivation::of_algebroid(&inst.data);
        let agrees = d.to_field() == inst.data.build_xq();
        if !agrees {
            return Err(Error::Inconsistency("D_Q does not map to X_Q".into()));
        }
        let sq = d.bracket(&d)?;
        return Ok(Report::new("brackets", inst.name(), Verdict::Pass)
            .oracle(agrees)
            .detail("xq", inst.data.build_xq().display(inst.data.chart()).to_string())
            .detail("dq_squared_zero", sq.is_zero())
            .convention("derivations act on fields by D ↦ D^a_I ξ^I ∂ξ^a - b^t_J ξ^J ∂_t"));
    };
    let chart = setup.data().chart();
    let mut rep = Report::new("brackets", inst.name(), Verdict::Pass).convention(MC_CONVENTION);
    if setup.is_fixed_base() {
        let (tuples, bad) = explicit_agreement(setup)?;
        if bad > 0 {
            return Err(Error::Inconsistency(format!("{bad} of {tuples} explicit brackets differ")));
        }
        rep = rep.oracle(true).detail("explicit_tuples_checked", tuples);
    }
    if let Some(pair) = &inst.pair {
        let delta = setup.delta()?;
        let c = setup.candidate(pair)?;
        let mut series = Vec::new();
        for k in 1..=opts.cap {
            let mk = derived_bracket(setup.valg(), &delta, &vec![c.clone(); k])?.scale(&inv_factorial(k));
            if mk.is_zero() && k > 1 {
                break;
            }
            series.push(json!({"k": k, "term": mk.display(chart).to_string()}));
        }
        rep = rep
            .detail("candidate", c.display(chart).to_string())
            .detail("series", Value::Array(series));
    }
    Ok(rep)
}

fn oracle_compare(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let Some(setup) = &inst.setup else {
        let v = validate(inst)?;
        let mut rep = Report::new("oracle-compare", inst.name(), Verdict::Pass)
            .oracle(true)
            .detail("homological_and_classical_agree", true)
            .detail("valid", v.verdict == Verdict::Pass);
        if inst.structure_deformation.is_some() {
            let m = mc_check(inst, opts)?;
            rep = rep.detail("deformation_mc_zero", m.verdict == Verdict::McZero);
        }
        return Ok(rep);
    };
    let pair = inst.pair.clone().unwrap_or_else(|| setup.zero_pair());
    let r = subalgebroid_mc_residual(setup, &pair, opts.cap)?;
    let agrees = r.oracle_agrees() && r.tangency.agree() && r.mc.agree();
    let mut rep = Report::new("oracle-compare", inst.name(), Verdict::from_check(agrees))
        .oracle(agrees)
        .detail("mc_zero", r.is_zero())
        .detail("graph_closure_accepts", r.oracle.accepted())
        .detail("tangency_series_equals_substitution", r.tangency.agree())
        .detail("series_equals_projection", r.mc.agree())
        .convention(MC_CONVENTION);
    if let Some(psi) = &inst.psi {
        let f = foliation_infinitesimal(setup, psi)?;
        let same = via_derived(setup, std::slice::from_ref(psi))?.values() == f.residual.values();
        rep = rep.detail("explicit_m1_equals_derived", same);
        rep.oracle_agrees = Some(agrees && same);
        rep.verdict = Verdict::from_check(agrees && same);
    }
    if !rep.verdict.is_success() {
        return Err(Error::Inconsistency("oracle comparison failed".into()));
    }
    Ok(rep)
}

fn random_tuple(r: &mut impl Rng, basis: &[VectorField], n: usize) -> Vec<VectorField> {
    (0..n)
        .map(|_| {
            let mut v = basis.choose(r).expect("nonempty basis").clone();
            if r.gen_bool(0.5) {
                let w = basis.choose(r).expect("nonempty basis");
                v.add_scaled(w, &qi(r.gen_range(-2..=2)));
            }
            v
        })
        .collect()
}

/// All arity-1 and arity-2 tuples of `basis` (as multisets), then `probes`
/// seeded random tuples of each arity 3 and 4.
pub fn axiom_probes(basis: &[VectorField], probes: usize, seed: u64) -> Vec<Vec<VectorField>> {
    let mut out: Vec<Vec<VectorField>> = Vec::new();
    for k in 1..=2 {
        for t in multisets(basis.len(), k) {
            out.push(t.iter().map(|&i| basis[i].clone()).collect());
        }
    }
    if !basis.is_empty() {
        let mut r = rng(seed);
        for n in 3..=4 {
            for _ in 0..probes {
                out.push(random_tuple(&mut r, basis, n));
            }
        }
    }
    out
}

fn axiom_report<L: LInftyAlgebra<Elem = VectorField>>(alg: &L, basis: &[VectorField], opts: &RunOptions) -> Result<AxiomReport<VectorField>> {
    check_linfty_axioms(alg, 4, &axiom_probes(basis, opts.probes, opts.seed))
}

fn axioms(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let chart = match &inst.setup {
        Some(s) => s.data().chart().clone(),
        None => inst.data.chart().clone(),
    };
    let bound = if chart.n_even() > 0 { opts.truncate.unwrap_or(1) } else { 0 };
    let (report, basis_len, structure) = match &inst.setup {
        Some(setup) => {
            let delta = setup.delta()?;
            let alg = DerivedLInfty { valg: setup.valg(), delta: &delta };
            let basis = setup.valg().abelian_basis(bound);
            (axiom_report(&alg, &basis, opts)?, basis.len(), "derived brackets on 𝔞")
        }
        None => {
            let alg = DglaLInfty { q: inst.data.build_xq() };
            let basis = SplitVAlgebra::new(chart.clone()).ambient_basis(bound);
            (axiom_report(&alg, &basis, opts)?, basis.len(), "DGLA (𝔛, [X_Q, ·], [·, ·]) shifted")
        }
    };
    let rows: Vec<Value> = report
        .per_arity
        .iter()
        .map(|(n, p, f)| json!({"arity": n, "probes": p, "failures": f}))
        .collect();
    let mut rep = Report::new("axioms", inst.name(), Verdict::from_check(report.passed()))
        .detail("structure", structure)
        .detail("basis_size", basis_len)
        .detail("polynomial_bound", bound)
        .detail("seed", opts.seed)
        .detail("per_arity", Value::Array(rows))
        .convention(JACOBI_CONVENTION);
    if let Some((idx, v)) = &report.first_failure {
        rep = rep.detail("first_failure_probe", *idx).residual(v, &chart);
    }
    Ok(rep)
}
