use std::collections::BTreeMap;

use num_traits::One;

use super::setup::SplitSetup;
use crate::algebroid::{increasing_tuples, sort_with_sign, Section};
use crate::derived::VAlgebra;
use crate::error::{Error, Result};
use crate::graded::{enumerate_shuffles, parity_sign, Rational, ShuffleSpec};
use crate::superfield::{Coord, Monomial, Shape, SuperFunction, VectorField};

/// An element of `Γ(Λᵏ E* ⊗ F)`: values on increasing tuples of `E`-frame
/// positions, each a vector of `F`-frame coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleForm {
    shape: Shape,
    degree: usize,
    n_f: usize,
    values: BTreeMap<Vec<usize>, Vec<SuperFunction>>,
}

impl BundleForm {
    pub fn zero(shape: Shape, degree: usize, n_f: usize) -> Self {
        BundleForm {
            shape,
            degree,
            n_f,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Vec<SuperFunction>> {
        &self.values
    }

    /// Sets the value on an increasing tuple.
    pub fn set(&mut self, idx: &[usize], v: Vec<SuperFunction>) -> Result<()> {
        if idx.len() != self.degree || idx.windows(2).any(|w| w[0] >= w[1]) || v.len() != self.n_f {
            return Err(Error::Precondition(format!("bad form entry {idx:?}")));
        }
        if v.iter().all(|f| f.is_zero()) {
            self.values.remove(idx);
        } else {
            self.values.insert(idx.to_vec(), v);
        }
        Ok(())
    }

    /// Value on arbitrary `E` positions (antisymmetric).
    pub fn eval(&self, idx: &[usize]) -> Vec<SuperFunction> {
        let zero = || vec![SuperFunction::zero(self.shape); self.n_f];
        match sort_with_sign(idx) {
            Some((sign, sorted)) => match self.values.get(&sorted) {
                Some(v) => v.iter().map(|f| f.scale(&Rational::from_integer(sign.into()))).collect(),
                None => zero(),
            },
            None => zero(),
        }
    }

    /// Value with a general `E`-section (coefficients per `E` position) as
    /// the first argument.
    fn eval_section_first(&self, s: &[SuperFunction], rest: &[usize]) -> Vec<SuperFunction> {
        let mut out = vec![SuperFunction::zero(self.shape); self.n_f];
        for (l, c) in s.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut idx = vec![l];
            idx.extend_from_slice(rest);
            for (o, v) in out.iter_mut().zip(self.eval(&idx)) {
                o.add_scaled(&c.mul(&v), &Rational::one());
            }
        }
        out
    }
}

/// `ω ↦ (-1)^k Σ_I Σ_j ω^j(ε_I) ξ^I ∂/∂ξ^j`, a degree `k-1` element of 𝔞.
pub fn encode_form(setup: &SplitSetup, w: &BundleForm) -> VectorField {
    let s = setup.shape();
    let sign = Rational::from_integer(parity_sign(w.degree as i64).into());
    let mut out = VectorField::zero(s);
    for (idx, v) in &w.values {
        let odd: Vec<usize> = idx.iter().map(|&p| setup.sub()[p]).collect();
        let xi = SuperFunction::monomial(s, sign.clone(), &vec![0; s.n_even], &odd);
        for (fj, f) in v.iter().enumerate() {
            out.add_component(Coord::Odd(setup.complement()[fj]), &f.mul(&xi));
        }
    }
    out
}

/// Inverse of [`encode_form`].
pub fn decode_form(setup: &SplitSetup, a: &VectorField) -> Result<BundleForm> {
    if !setup.valg().contains(a) {
        return Err(Error::NotInAbelian("not an element of 𝔞".into()));
    }
    if a.components().keys().any(|c| matches!(c, Coord::Even(_))) {
        return Err(Error::Precondition("normal components present".into()));
    }
    let degree = match a.degree() {
        Some(d) if d >= -1 => (d + 1) as usize,
        None if a.is_zero() => 0,
        other => {
            return Err(Error::Degree {
                what: "bundle form".into(),
                expected: "homogeneous".into(),
                found: format!("{other:?}"),
            })
        }
    };
    let s = setup.shape();
    let n_f = setup.complement().len();
    let sign = Rational::from_integer(parity_sign(degree as i64).into());
    let mut out = BundleForm::zero(s, degree, n_f);
    for (c, m, q) in a.terms() {
        let Coord::Odd(j) = c else { unreachable!() };
        let fj = setup.complement().iter().position(|&t| t == j).expect("complement");
        let idx: Vec<usize> = (0..s.n_odd)
            .filter(|k| m.odd >> k & 1 == 1)
            .map(|k| setup.sub().iter().position(|&t| t == k).expect("sub"))
            .collect();
        let coeff = SuperFunction::from_terms(
            s,
            [(
                Monomial {
                    even: m.even.clone(),
                    odd: 0,
                },
                q * &sign,
            )],
        );
        let mut v = out.eval(&idx);
        v[fj].add_scaled(&coeff, &Rational::one());
        out.set(&idx, v)?;
    }
    Ok(out)
}

/// Sign multipliers on the three terms of `m_2` and `m_3`, as functions of
/// the argument degrees.
#[derive(Clone, Copy)]
pub(crate) struct TermSigns {
    pub m1: fn(usize) -> [i32; 2],
    pub m2: fn(usize, usize) -> [i32; 3],
    pub m3: fn(usize, usize, usize) -> [i32; 3],
}

fn m1_signs(k: usize) -> [i32; 2] {
    let s = -parity_sign(k as i64);
    [s, s]
}

fn m2_signs(k: usize, l: usize) -> [i32; 3] {
    let s = parity_sign((k * l) as i64);
    [-s, s, s]
}

// Term `(u, v, w)` carries the Koszul sign of the cyclic move in shifted
// degrees times `(-1)^{|u|}`.
fn m3_signs(k: usize, l: usize, m: usize) -> [i32; 3] {
    let (k, l, m) = (k as i64, l as i64, m as i64);
    [
        parity_sign(k),
        parity_sign(k * (l + m) + m),
        parity_sign(k + l + m + m * (k + l)),
    ]
}

/// Signs under which the explicit maps agree with the derived brackets
/// transported along [`encode_form`].
pub(crate) const SIGNS: TermSigns = TermSigns {
    m1: m1_signs,
    m2: m2_signs,
    m3: m3_signs,
};

struct Ctx<'a> {
    setup: &'a SplitSetup,
    n_e: usize,
}

impl Ctx<'_> {
    fn f_section(&self, v: &[SuperFunction]) -> Section {
        let s = self.setup.shape();
        let mut out = vec![SuperFunction::zero(s); s.n_odd];
        for (fj, f) in v.iter().enumerate() {
            out[self.setup.complement()[fj]] = f.clone();
        }
        out
    }

    fn e_frame(&self, p: usize) -> Section {
        self.setup.data().frame(self.setup.sub()[p])
    }

    fn bracket(&self, a: &Section, b: &Section) -> Result<Section> {
        self.setup.data().section_bracket(a, b)
    }

    fn pi_e(&self, s: &Section) -> Vec<SuperFunction> {
        self.setup.sub().iter().map(|&i| s[i].clone()).collect()
    }

    fn pi_f(&self, s: &Section) -> Vec<SuperFunction> {
        self.setup.complement().iter().map(|&j| s[j].clone()).collect()
    }
}

fn add_vec(acc: &mut [SuperFunction], v: &[SuperFunction], s: i32) {
    let s = Rational::from_integer(s.into());
    for (a, b) in acc.iter_mut().zip(v) {
        a.add_scaled(b, &s);
    }
}

/// Runs `term(τ-permuted args)` over the shuffles of `blocks` with sign `(-1)^τ`.
fn shuffle_sum(
    args: &[usize],
    blocks: &[usize],
    n_f: usize,
    shape: Shape,
    mut term: impl FnMut(&[usize]) -> Result<Vec<SuperFunction>>,
) -> Result<Vec<SuperFunction>> {
    let mut acc = vec![SuperFunction::zero(shape); n_f];
    if blocks.iter().sum::<usize>() != args.len() {
        return Ok(acc);
    }
    for tau in enumerate_shuffles(&ShuffleSpec::new(blocks.to_vec())) {
        let word = tau.permute(args);
        let v = term(&word)?;
        add_vec(&mut acc, &v, tau.parity());
    }
    Ok(acc)
}

fn assemble(
    ctx: &Ctx,
    degree: usize,
    mut value: impl FnMut(&[usize]) -> Result<Vec<SuperFunction>>,
) -> Result<BundleForm> {
    let s = ctx.setup.shape();
    let n_f = ctx.setup.complement().len();
    let mut out = BundleForm::zero(s, degree, n_f);
    if degree > ctx.n_e {
        return Ok(out);
    }
    for idx in increasing_tuples(ctx.n_e, degree) {
        out.set(&idx, value(&idx)?)?;
    }
    Ok(out)
}

fn check(setup: &SplitSetup, forms: &[&BundleForm]) -> Result<()> {
    if !setup.is_fixed_base() {
        return Err(Error::Precondition("explicit maps need S = M (no normal coordinates)".into()));
    }
    for w in forms {
        setup.shape().check(w.shape)?;
        if w.n_f != setup.complement().len() {
            return Err(Error::LengthMismatch {
                expected: setup.complement().len(),
                found: w.n_f,
            });
        }
    }
    Ok(())
}

/// `m_1(ξ)(a_1..a_{k+1}) = (-1)^{k+1} Σ_{S_{k,1}} (-1)^τ π_F[ξ(a..), a]
///  - Σ_{S_{2,k-1}} (-1)^τ ξ(π_E[a, a], a..)`.
pub fn explicit_m1(setup: &SplitSetup, xi: &BundleForm) -> Result<BundleForm> {
    explicit_m1_with(setup, xi, (SIGNS.m1)(xi.degree))
}

pub(crate) fn explicit_m1_with(setup: &SplitSetup, xi: &BundleForm, signs: [i32; 2]) -> Result<BundleForm> {
    check(setup, &[xi])?;
    let ctx = Ctx {
        setup,
        n_e: setup.sub().len(),
    };
    let (s, n_f, k) = (setup.shape(), setup.complement().len(), xi.degree);
    assemble(&ctx, k + 1, |a| {
        let mut out = shuffle_sum(a, &[k, 1], n_f, s, |w| {
            let b = ctx.bracket(&ctx.f_section(&xi.eval(&w[..k])), &ctx.e_frame(w[k]))?;
            Ok(ctx.pi_f(&b))
        })?;
        for v in out.iter_mut() {
            *v = v.scale(&Rational::from_integer(signs[0].into()));
        }
        if k >= 1 {
            let second = shuffle_sum(a, &[2, k - 1], n_f, s, |w| {
                let b = ctx.bracket(&ctx.e_frame(w[0]), &ctx.e_frame(w[1]))?;
                Ok(xi.eval_section_first(&ctx.pi_e(&b), &w[2..]))
            })?;
            add_vec(&mut out, &second, -parity_sign(k as i64 - 1) * signs[1]);
        }
        Ok(out)
    })
}

pub(crate) fn explicit_m2_with(
    setup: &SplitSetup,
    xi: &BundleForm,
    psi: &BundleForm,
    signs: [i32; 3],
) -> Result<BundleForm> {
    check(setup, &[xi, psi])?;
    let ctx = Ctx {
        setup,
        n_e: setup.sub().len(),
    };
    let (s, n_f) = (setup.shape(), setup.complement().len());
    let (k, l) = (xi.degree, psi.degree);
    let sk = parity_sign(k as i64);
    assemble(&ctx, k + l, |a| {
        let mut out = shuffle_sum(a, &[l, k], n_f, s, |w| {
            let x = ctx.f_section(&xi.eval(&w[l..]));
            let p = ctx.f_section(&psi.eval(&w[..l]));
            Ok(ctx.pi_f(&ctx.bracket(&x, &p)?))
        })?;
        for v in out.iter_mut() {
            *v = v.scale(&Rational::from_integer((sk * signs[0]).into()));
        }
        if k >= 1 {
            let t = shuffle_sum(a, &[l, 1, k - 1], n_f, s, |w| {
                let p = ctx.f_section(&psi.eval(&w[..l]));
                let b = ctx.bracket(&p, &ctx.e_frame(w[l]))?;
                Ok(xi.eval_section_first(&ctx.pi_e(&b), &w[l + 1..]))
            })?;
            add_vec(&mut out, &t, -sk * signs[1]);
        }
        if l >= 1 {
            let t = shuffle_sum(a, &[k, 1, l - 1], n_f, s, |w| {
                let x = ctx.f_section(&xi.eval(&w[..k]));
                let b = ctx.bracket(&x, &ctx.e_frame(w[k]))?;
                Ok(psi.eval_section_first(&ctx.pi_e(&b), &w[k + 1..]))
            })?;
            add_vec(&mut out, &t, parity_sign(((l as i64) - 1) * k as i64) * signs[2]);
        }
        Ok(out)
    })
}

pub(crate) fn explicit_m3_with(
    setup: &SplitSetup,
    xi: &BundleForm,
    psi: &BundleForm,
    phi: &BundleForm,
    signs: [i32; 3],
) -> Result<BundleForm> {
    check(setup, &[xi, psi, phi])?;
    let ctx = Ctx {
        setup,
        n_e: setup.sub().len(),
    };
    let (s, n_f) = (setup.shape(), setup.complement().len());
    let (k, l, m) = (xi.degree, psi.degree, phi.degree);
    let total = k + l + m;
    if total == 0 {
        return Ok(BundleForm::zero(s, 0, n_f));
    }
    // cyclic terms: (first, second, outer)
    let cyc: [(&BundleForm, &BundleForm, &BundleForm); 3] = [(xi, psi, phi), (psi, phi, xi), (phi, xi, psi)];
    assemble(&ctx, total - 1, |a| {
        let mut out = vec![SuperFunction::zero(s); n_f];
        for (t, (u, v, w)) in cyc.iter().enumerate() {
            let (du, dv, dw) = (u.degree, v.degree, w.degree);
            if dw == 0 {
                continue;
            }
            let val = shuffle_sum(a, &[du, dv, dw - 1], n_f, s, |word| {
                let x = ctx.f_section(&u.eval(&word[..du]));
                let y = ctx.f_section(&v.eval(&word[du..du + dv]));
                let b = ctx.bracket(&x, &y)?;
                Ok(w.eval_section_first(&ctx.pi_e(&b), &word[du + dv..]))
            })?;
            add_vec(&mut out, &val, signs[t]);
        }
        Ok(out)
    })
}

/// `m_2(ξ, ψ)` of the fixed-base structure.
pub fn explicit_m2(setup: &SplitSetup, xi: &BundleForm, psi: &BundleForm) -> Result<BundleForm> {
    explicit_m2_with(setup, xi, psi, (SIGNS.m2)(xi.degree, psi.degree))
}

/// `m_3(ξ, ψ, φ)` of the fixed-base structure.
pub fn explicit_m3(setup: &SplitSetup, xi: &BundleForm, psi: &BundleForm, phi: &BundleForm) -> Result<BundleForm> {
    explicit_m3_with(setup, xi, psi, phi, (SIGNS.m3)(xi.degree, psi.degree, phi.degree))
}

/// Dispatch on arity; `m_k = 0` for `k ≥ 4`.
pub fn explicit_structure_map(setup: &SplitSetup, args: &[BundleForm]) -> Result<BundleForm> {
    match args {
        [x] => explicit_m1(setup, x),
        [x, y] => explicit_m2(setup, x, y),
        [x, y, z] => explicit_m3(setup, x, y, z),
        [] => Err(Error::Precondition("arity must be at least 1".into())),
        _ => {
            let d = (args.iter().map(|a| a.degree).sum::<usize>() + 2).saturating_sub(args.len());
            Ok(BundleForm::zero(setup.shape(), d, setup.complement().len()))
        }
    }
}

/// Basis of `Γ(Λᵏ E* ⊗ F)` over a point: one unit value per tuple and `F` slot.
pub fn form_basis(setup: &SplitSetup, degree: usize) -> Vec<BundleForm> {
    let s = setup.shape();
    let n_f = setup.complement().len();
    let mut out = Vec::new();
    for idx in increasing_tuples(setup.sub().len(), degree) {
        for fj in 0..n_f {
            let mut w = BundleForm::zero(s, degree, n_f);
            let mut v = vec![SuperFunction::zero(s); n_f];
            v[fj] = SuperFunction::one(s);
            w.set(&idx, v).expect("valid tuple");
            out.push(w);
        }
    }
    out
}
