//! Cohomology of the linear part: `(𝔞, m_1)` for a split setup and the full
//! deformation complex `(𝔛(A[1]), [X_Q, ·])`.
//!
//! Degrees count arguments: `Cⁿ` holds elements of field degree `n - 1`, so
//! infinitesimal deformations sit in `C¹` and obstructions in `C²`. With base
//! coordinates the cochain spaces are infinite-dimensional and a polynomial
//! degree bound must be given; the result is then the cohomology of the
//! truncated complex `ker(d|C≤D) / (d(C≤D) ∩ C≤D)`.

use num_traits::Zero;

use crate::algebroid::AlgebroidData;
use crate::derived::{derived_bracket, VAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{combine, coords_of, kernel, rank, Coords};
use crate::subalgebroid::SplitSetup;
use crate::superfield::{Coord, Shape, SuperFunction, VectorField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    /// Coboundaries inside the (truncated) cochain space.
    pub coboundaries: usize,
    pub dim: usize,
    /// Cocycles whose classes form a basis of the cohomology.
    pub basis: Vec<VectorField>,
    pub truncation: Option<u32>,
}

fn poly_degree(key: &(Coord, crate::superfield::Monomial)) -> u32 {
    key.1.even.iter().sum()
}

fn bound(shape: Shape, truncate: Option<u32>) -> Result<u32> {
    match (shape.n_even, truncate) {
        (0, _) => Ok(0),
        (_, Some(d)) => Ok(d),
        (_, None) => Err(Error::Precondition(
            "cochains depend on base coordinates: a truncation degree is required".into(),
        )),
    }
}

fn homogeneous(basis: Vec<VectorField>, degree: i64) -> Vec<VectorField> {
    basis.into_iter().filter(|v| v.is_homogeneous_of(degree)).collect()
}

fn compute(
    degree: usize,
    cur: &[VectorField],
    prev: &[VectorField],
    d: impl Fn(&VectorField) -> Result<VectorField>,
    truncation: Option<u32>,
) -> Result<CohomologyReport> {
    let dcur: Vec<Coords> = cur.iter().map(|v| d(v).map(|w| coords_of(&w))).collect::<Result<_>>()?;
    let cur_coords: Vec<Coords> = cur.iter().map(coords_of).collect();
    let cocycles: Vec<Coords> = kernel(&dcur).iter().map(|c| combine(c, &cur_coords)).collect();

    let images: Vec<Coords> = prev.iter().map(|v| d(v).map(|w| coords_of(&w))).collect::<Result<_>>()?;
    let cut = truncation.unwrap_or(u32::MAX);
    let high: Vec<Coords> = images
        .iter()
        .map(|r| r.iter().filter(|(k, _)| poly_degree(k) > cut).map(|(k, v)| (k.clone(), v.clone())).collect())
        .collect();
    // d(C≤D) ∩ C≤D is the image of the combinations with no high part.
    let low_images: Vec<Coords> = kernel(&high).iter().map(|c| combine(c, &images)).collect();
    let coboundaries = rank(&low_images);

    let mut span = low_images.clone();
    let mut basis = Vec::new();
    let shape = cur.first().map(|v| v.shape());
    for z in &cocycles {
        span.push(z.clone());
        if rank(&span) > coboundaries + basis.len() {
            basis.push(z.clone());
        } else {
            span.pop();
        }
    }
    let basis = match shape {
        Some(s) => basis.into_iter().map(|c| field_of(s, &c)).collect(),
        None => Vec::new(),
    };
    Ok(CohomologyReport {
        degree,
        cochains: cur.len(),
        cocycles: cocycles.len(),
        coboundaries,
        dim: cocycles.len() - coboundaries,
        basis,
        truncation,
    })
}

fn field_of(shape: Shape, c: &Coords) -> VectorField {
    let mut v = VectorField::zero(shape);
    for ((coord, m), q) in c {
        if q.is_zero() {
            continue;
        }
        let f = SuperFunction::from_terms(shape, [(m.clone(), q.clone())]);
        v.add_component(*coord, &f);
    }
    v
}

/// `Hⁿ(𝔞, m_1)` where `m_1 = P[X_Q, ·]`.
pub fn m1_cohomology(setup: &SplitSetup, degree: usize, truncate: Option<u32>) -> Result<CohomologyReport> {
    let b = bound(setup.shape(), truncate)?;
    let delta = setup.delta()?;
    let valg = setup.valg();
    let all = valg.abelian_basis(b);
    let n = degree as i64;
    let cur = homogeneous(all.clone(), n - 1);
    let prev = if degree == 0 { Vec::new() } else { homogeneous(all, n - 2) };
    let d = |v: &VectorField| derived_bracket(valg, &delta, std::slice::from_ref(v));
    compute(degree, &cur, &prev, d, truncate.filter(|_| setup.shape().n_even > 0))
}

/// `Hⁿ` of the deformation complex `(𝔛(A[1]), [X_Q, ·])`. Over a point this
/// is `Hⁿ(𝔤; 𝔤)`.
pub fn deformation_cohomology(data: &AlgebroidData, degree: usize, truncate: Option<u32>) -> Result<CohomologyReport> {
    let shape = data.shape();
    let b = bound(shape, truncate)?;
    let xq = data.build_xq();
    if !xq.is_homological() {
        return Err(Error::Precondition("structure is not homological".into()));
    }
    let valg = crate::derived::SplitVAlgebra::new(data.chart().clone());
    let all = valg.ambient_basis(b);
    let n = degree as i64;
    let cur = homogeneous(all.clone(), n - 1);
    let prev = if degree == 0 { Vec::new() } else { homogeneous(all, n - 2) };
    let d = |v: &VectorField| xq.bracket(v);
    compute(degree, &cur, &prev, d, truncate.filter(|_| shape.n_even > 0))
}

/// Dimension of `Λⁿ E* ⊗ F` (plus `Λⁿ⁻¹ E* ⊗ NS`) over a point.
pub fn cochain_dimension(setup: &SplitSetup, degree: usize) -> usize {
    let (l, f, q) = (setup.sub().len(), setup.complement().len(), setup.normal().len());
    let choose = |n: usize, k: usize| -> usize {
        if k > n {
            0
        } else {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
    };
    let normal = if degree == 0 { 0 } else { choose(l, degree - 1) * q };
    choose(l, degree) * f + normal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::presets;
    use crate::superfield::{Chart, OddRole};

    fn borel() -> SplitSetup {
        let chart = Chart::build(
            &[],
            &[("h", OddRole::Sub), ("e", OddRole::Sub), ("f", OddRole::Complement)],
        )
        .unwrap();
        SplitSetup::new(presets::sl2().with_chart(chart).unwrap()).unwrap()
    }

    #[test]
    fn borel_complex_is_acyclic() {
        let s = borel();
        let dims: Vec<usize> = (0..3).map(|n| m1_cohomology(&s, n, None).unwrap().cochains).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        for n in 0..3 {
            let r = m1_cohomology(&s, n, None).unwrap();
            assert_eq!(r.dim, 0, "H^{n}");
            assert_eq!(r.cochains, cochain_dimension(&s, n));
        }
        let h1 = m1_cohomology(&s, 1, None).unwrap();
        assert_eq!((h1.cocycles, h1.coboundaries), (1, 1));
    }

    #[test]
    fn sl2_is_rigid() {
        let g = presets::sl2();
        let dims: Vec<usize> = (0..4).map(|n| deformation_cohomology(&g, n, None).unwrap().cochains).collect();
        assert_eq!(dims, vec![3, 9, 9, 3]);
        for n in 0..4 {
            assert_eq!(deformation_cohomology(&g, n, None).unwrap().dim, 0, "H^{n}(sl2; sl2)");
        }
    }

    #[test]
    fn abelian_is_full() {
        let chart = Chart::build(
            &[],
            &[("a", OddRole::Sub), ("b", OddRole::Sub), ("c", OddRole::Complement)],
        )
        .unwrap();
        let s = SplitSetup::new(presets::abelian(3).with_chart(chart).unwrap()).unwrap();
        for n in 0..3 {
            let r = m1_cohomology(&s, n, None).unwrap();
            assert_eq!(r.dim, r.cochains);
            assert_eq!(r.basis.len(), r.dim);
        }
        let g = presets::abelian(2);
        for n in 0..3 {
            let r = deformation_cohomology(&g, n, None).unwrap();
            assert_eq!(r.dim, r.cochains);
        }
    }

    #[test]
    fn heisenberg_h2() {
        let dims: Vec<usize> = (0..4)
            .map(|n| deformation_cohomology(&presets::heisenberg3(), n, None).unwrap().dim)
            .collect();
        assert_eq!(dims, vec![1, 4, 5, 2]);
    }

    #[test]
    fn base_needs_truncation() {
        let t = presets::tangent_rn(1);
        assert!(matches!(deformation_cohomology(&t, 1, None), Err(Error::Precondition(_))));
        // the tangent algebroid is acyclic
        for n in 0..3 {
            let r = deformation_cohomology(&t, n, Some(3)).unwrap();
            assert_eq!(r.truncation, Some(3));
            assert_eq!(r.dim, 0, "H^{n}(Tℝ)");
        }
    }
}
