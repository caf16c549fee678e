//! Exact linear algebra over ℚ on sparse coordinate vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::graded::Rational;
use crate::superfield::{Coord, Monomial, VectorField};

/// Coordinates of a field in the monomial basis.
pub type Coords = BTreeMap<(Coord, Monomial), Rational>;

pub fn coords_of(v: &VectorField) -> Coords {
    v.terms().map(|(c, m, q)| ((c, m.clone()), q.clone())).collect()
}

/// Reduced row echelon form of the given rows. Returns the nonzero rows with
/// their pivot keys.
fn echelon<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> Vec<(K, BTreeMap<K, Rational>)> {
    let mut basis: Vec<(K, BTreeMap<K, Rational>)> = Vec::new();
    for r in rows {
        let mut r = r.clone();
        for (p, b) in &basis {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, b, &-c);
            }
        }
        let Some((p, lead)) = r.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            continue;
        };
        let inv = Rational::one() / lead;
        for v in r.values_mut() {
            *v = &*v * &inv;
        }
        for (_, b) in basis.iter_mut() {
            if let Some(c) = b.get(&p).cloned() {
                axpy(b, &r, &-c);
            }
        }
        basis.push((p, r));
    }
    basis
}

fn axpy<K: Ord + Clone>(acc: &mut BTreeMap<K, Rational>, x: &BTreeMap<K, Rational>, s: &Rational) {
    for (k, v) in x {
        let e = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *e = &*e + v * s;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn rank<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> usize {
    echelon(rows).len()
}

/// Kernel of `e_i ↦ images[i]`, as coefficient vectors over the source basis.
pub fn kernel<K: Ord + Clone>(images: &[BTreeMap<K, Rational>]) -> Vec<Vec<Rational>> {
    // Augment each image with a tag for its source index; tags sort after
    // every target key, so echelon rows whose pivot is a tag encode relations.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Key<K> {
        Target(K),
        Source(usize),
    }
    let rows: Vec<BTreeMap<Key<K>, Rational>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut r: BTreeMap<Key<K>, Rational> = img.iter().map(|(k, v)| (Key::Target(k.clone()), v.clone())).collect();
            r.insert(Key::Source(i), Rational::one());
            r
        })
        .collect();
    echelon(&rows)
        .into_iter()
        .filter(|(p, _)| matches!(p, Key::Source(_)))
        .map(|(_, r)| {
            let mut v = vec![Rational::zero(); images.len()];
            for (k, c) in r {
                if let Key::Source(i) = k {
                    v[i] = c;
                }
            }
            v
        })
        .collect()
}

/// `Σ c_i x_i`.
pub fn combine<K: Ord + Clone>(coeffs: &[Rational], xs: &[BTreeMap<K, Rational>]) -> BTreeMap<K, Rational> {
    let mut out = BTreeMap::new();
    for (c, x) in coeffs.iter().zip(xs) {
        if !c.is_zero() {
            axpy(&mut out, x, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::qi;

    fn vecs(rows: &[&[i64]]) -> Vec<BTreeMap<usize, Rational>> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, qi(v))).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = vecs(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(combine(v, &m).is_empty());
        }
    }

    #[test]
    fn injective_map_has_trivial_kernel() {
        let m = vecs(&[&[1, 0], &[0, 1]]);
        assert!(kernel(&m).is_empty());
    }
}
