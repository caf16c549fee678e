//! Exact coefficients and the sign bookkeeping of graded multilinear algebra.
//!
//! A word of homogeneous elements is described only by its [`DegreeVector`];
//! permutations act on positions. The Koszul sign of a permutation is computed
//! by walking it as a sequence of adjacent transpositions, each swap of
//! neighbours of degrees `p` and `q` contributing `(-1)^{pq}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Coefficient field for every formula in the crate.
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1 / n!` exactly.
pub fn inv_factorial(n: usize) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    Rational::new(BigInt::one(), f)
}

/// Sign `(-1)^e` as `+1` or `-1`.
pub fn parity_sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Multiply a rational by a `±1` sign.
pub fn signed(sign: i32, value: Rational) -> Rational {
    if sign < 0 {
        -value
    } else {
        value
    }
}

/// Integer degrees of a word `a_1 ... a_n` of homogeneous elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn new(degrees: impl Into<Vec<i64>>) -> Self {
        DegreeVector(degrees.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for DegreeVector {
    fn from(v: Vec<i64>) -> Self {
        DegreeVector(v)
    }
}

/// A permutation `τ` of `{1..n}`, stored zero-based: `images[p] = τ(p+1) - 1`.
///
/// Acting on a word, `τ` produces `a_{τ(1)} ⊗ ... ⊗ a_{τ(n)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from one-based images `τ(1), ..., τ(n)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{images:?}: image 0")))
            })
            .collect::<Result<_>>()?;
        Self::from_zero_based(zero)
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Zero-based image of zero-based position `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `(self ∘ other)(p) = self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (p, &i) in self.images.iter().enumerate() {
            inv[i] = p;
        }
        Permutation { images: inv }
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn parity(&self) -> i32 {
        let mut visited = vec![false; self.len()];
        let mut transpositions = 0i64;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !visited[p] {
                visited[p] = true;
                p = self.images[p];
                len += 1;
            }
            transpositions += len - 1;
        }
        parity_sign(transpositions)
    }

    /// Apply to a word: output position `p` holds `word[τ(p)]`.
    pub fn permute<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| word[i].clone()).collect()
    }
}

fn check_len(perm: &Permutation, degs: &DegreeVector) -> Result<()> {
    if perm.len() != degs.len() {
        return Err(Error::LengthMismatch {
            expected: perm.len(),
            found: degs.len(),
        });
    }
    Ok(())
}

/// The Koszul sign `e(τ; a_1, ..., a_n)`.
///
/// The target arrangement is reached from the identity by bubble-sorting
/// adjacent pairs; every swap of neighbours with degrees `p`, `q` multiplies
/// the sign by `(-1)^{pq}`.
pub fn koszul_sign(perm: &Permutation, degs: &DegreeVector) -> Result<i32> {
    check_len(perm, degs)?;
    // Current word as labels; target: label at position p is τ(p).
    let target_rank: Vec<usize> = perm.inverse().images;
    let mut word: Vec<usize> = (0..perm.len()).collect();
    let mut exponent = 0i64;
    let n = word.len();
    for pass in 0..n {
        let mut swapped = false;
        for j in 0..n.saturating_sub(1 + pass) {
            if target_rank[word[j]] > target_rank[word[j + 1]] {
                exponent += degs.0[word[j]] * degs.0[word[j + 1]];
                word.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(parity_sign(exponent))
}

/// `(-1)^τ e(τ)`, the sign of the antisymmetric action.
pub fn antisym_sign(perm: &Permutation, degs: &DegreeVector) -> Result<i32> {
    Ok(perm.parity() * koszul_sign(perm, degs)?)
}

/// Consecutive block sizes of a multi-block shuffle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShuffleSpec {
    pub block_sizes: Vec<usize>,
}

impl ShuffleSpec {
    /// Block sizes may be zero; an empty block simply contributes nothing.
    pub fn new(block_sizes: impl Into<Vec<usize>>) -> Self {
        ShuffleSpec {
            block_sizes: block_sizes.into(),
        }
    }

    pub fn total(&self) -> usize {
        self.block_sizes.iter().sum()
    }
}

/// All permutations whose images increase inside each consecutive block of
/// positions. The count is the multinomial coefficient of the block sizes.
pub fn enumerate_shuffles(spec: &ShuffleSpec) -> Vec<Permutation> {
    let n = spec.total();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill_block(&spec.block_sizes, 0, 0, &mut images, &mut used, &mut out);
    out
}

fn fill_block(
    blocks: &[usize],
    block: usize,
    filled: usize,
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    if block == blocks.len() {
        out.push(Permutation {
            images: images.clone(),
        });
        return;
    }
    if filled == blocks[block] {
        fill_block(blocks, block + 1, 0, images, used, out);
        return;
    }
    let lower = if filled == 0 {
        0
    } else {
        images[images.len() - 1] + 1
    };
    for v in lower..used.len() {
        if used[v] {
            continue;
        }
        used[v] = true;
        images.push(v);
        fill_block(blocks, block, filled + 1, images, used, out);
        images.pop();
        used[v] = false;
    }
}

/// Multinomial coefficient `(Σ k_i)! / Π k_i!`.
pub fn multinomial(blocks: &[usize]) -> BigInt {
    let mut result = BigInt::one();
    let mut total = 0usize;
    for &k in blocks {
        for i in 1..=k {
            total += 1;
            result = result * BigInt::from(total) / BigInt::from(i);
        }
    }
    result
}

/// Sign of the shift isomorphism `(⊗^n V)[n] → ⊗^n (V[1])`:
/// `(-1)^{(n-1)|a_1| + (n-2)|a_2| + ... + |a_{n-1}|}`.
pub fn shift_sign(degs: &DegreeVector) -> i32 {
    let n = degs.len() as i64;
    let exponent: i64 = degs
        .0
        .iter()
        .enumerate()
        .map(|(i, &d)| (n - 1 - i as i64) * d)
        .sum();
    parity_sign(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_one_based(images).unwrap()
    }

    /// Independent route: product over inversions.
    fn koszul_by_inversions(p: &Permutation, degs: &[i64]) -> i32 {
        let mut e = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p.image(a) > p.image(b) {
                    e += degs[p.image(a)] * degs[p.image(b)];
                }
            }
        }
        parity_sign(e)
    }

    #[test]
    fn koszul_examples() {
        let d = DegreeVector::new(vec![3, 5, 7]);
        assert_eq!(koszul_sign(&Permutation::identity(3), &d).unwrap(), 1);
        assert_eq!(
            koszul_sign(&perm(&[2, 1]), &DegreeVector::new(vec![1, 1])).unwrap(),
            -1
        );
        let d = DegreeVector::new(vec![1, 1, 2]);
        assert_eq!(koszul_sign(&perm(&[2, 3, 1]), &d).unwrap(), -1);
        assert_eq!(koszul_by_inversions(&perm(&[2, 3, 1]), &d.0), -1);
    }

    #[test]
    fn antisym_examples() {
        assert_eq!(
            antisym_sign(&Permutation::identity(2), &DegreeVector::new(vec![1, 2])).unwrap(),
            1
        );
        assert_eq!(
            antisym_sign(&perm(&[2, 1]), &DegreeVector::new(vec![1, 2])).unwrap(),
            -1
        );
        assert_eq!(
            antisym_sign(&perm(&[2, 3, 1]), &DegreeVector::new(vec![1, 1, 2])).unwrap(),
            -1
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let err = koszul_sign(&perm(&[2, 1]), &DegreeVector::new(vec![1])).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
        assert!(antisym_sign(&perm(&[1]), &DegreeVector::new(vec![])).is_err());
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(enumerate_shuffles(&ShuffleSpec::new(vec![1, 1])).len(), 2);
        assert_eq!(enumerate_shuffles(&ShuffleSpec::new(vec![2, 1])).len(), 3);
        let all = enumerate_shuffles(&ShuffleSpec::new(vec![1, 1, 1]));
        assert_eq!(all.len(), 6);
        let mut distinct = all.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
        assert_eq!(enumerate_shuffles(&ShuffleSpec::new(vec![0, 2])).len(), 1);
        assert_eq!(enumerate_shuffles(&ShuffleSpec::new(vec![])).len(), 1);
    }

    #[test]
    fn shift_sign_examples() {
        assert_eq!(shift_sign(&DegreeVector::new(vec![7])), 1);
        assert_eq!(shift_sign(&DegreeVector::new(vec![1, 0])), -1);
        assert_eq!(shift_sign(&DegreeVector::new(vec![1, 1, 1])), -1);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[2, 2, 1]), BigInt::from(30));
        assert_eq!(inv_factorial(4), q(1, 24));
    }
}
