//! Standard algebroids used by examples, fixtures and tests.

use crate::graded::qi;
use crate::superfield::{Chart, SuperFunction};

use super::data::AlgebroidData;

fn lie(names: &[&str], brackets: &[(usize, usize, usize, i64)]) -> AlgebroidData {
    let chart = Chart::plain(&[], names).expect("preset chart");
    let mut g = AlgebroidData::new(chart);
    for &(i, j, k, c) in brackets {
        g.add_bracket_const(i, j, k, qi(c)).expect("preset bracket");
    }
    g
}

/// `sl(2)` in the frame `(h, e, f)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2() -> AlgebroidData {
    lie(&["h", "e", "f"], &[(1, 2, 0, 1), (0, 1, 1, 2), (0, 2, 2, -2)])
}

/// The `n`-dimensional abelian Lie algebra.
pub fn abelian(n: usize) -> AlgebroidData {
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    lie(&refs, &[])
}

/// `[e1, e2] = e3`.
pub fn heisenberg3() -> AlgebroidData {
    lie(&["e1", "e2", "e3"], &[(0, 1, 2, 1)])
}

/// `[e1,e2] = e3`, `[e1,e3] = e1`, `[e2,e3] = 0`; Jacobiator `-e3`.
pub fn non_jacobi3() -> AlgebroidData {
    lie(&["e1", "e2", "e3"], &[(0, 1, 2, 1), (0, 2, 0, 1)])
}

/// `[e1, e2] = e1`.
pub fn affine2() -> AlgebroidData {
    lie(&["e1", "e2"], &[(0, 1, 0, 1)])
}

/// The tangent algebroid of `R^n`: frame `∂_{x_i}`, identity anchor.
pub fn tangent_rn(n: usize) -> AlgebroidData {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ds: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
    let dr: Vec<&str> = ds.iter().map(String::as_str).collect();
    let chart = Chart::plain(&xr, &dr).expect("preset chart");
    let mut t = AlgebroidData::new(chart);
    let s = t.shape();
    for i in 0..n {
        t.add_anchor(i, i, SuperFunction::one(s)).expect("preset anchor");
    }
    t
}

/// `sl(2) ⊕ sl(2)`.
pub fn sl2_sum() -> AlgebroidData {
    let a = sl2();
    let chart = Chart::plain(&[], &["h2", "e2", "f2"]).expect("preset chart");
    let b = sl2().with_chart(chart).expect("same shape");
    a.direct_sum(&b).expect("disjoint names")
}
