use std::fmt;

use serde::Serialize;

use super::Parity;
use crate::error::{Error, Result};

/// Parities `p_1..p_k` annotating the factors of a product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParityVector(pub Vec<Parity>);

impl ParityVector {
    pub fn even(k: usize) -> ParityVector {
        ParityVector(vec![Parity::Even; k])
    }

    /// From a list of bits (0 = even).
    pub fn from_bits(bits: &[u32]) -> ParityVector {
        ParityVector(bits.iter().map(|&b| Parity::from_bit(b)).collect())
    }

    /// All vectors in `(Z/2)^k`, in binary counting order.
    pub fn all(k: usize) -> impl Iterator<Item = ParityVector> {
        (0u32..(1 << k)).map(move |mask| ParityVector((0..k).map(|i| Parity::from_bit(mask >> i & 1)).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Parity {
        self.0[i]
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| !p.is_odd())
    }
}

/// A bijection of `{1..k}`, stored zero-based: `images[i] = s(i+1) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Permutation {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// From the one-based image list `s(1), .., s(k)`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::NotAPermutation(images.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Zero-based image of zero-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `(s1∘s2)(i) = s1(s2(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `s(P) = (p_{s(1)}, .., p_{s(k)})`.
    pub fn act(&self, p: &ParityVector) -> Result<ParityVector> {
        self.check_len(p)?;
        Ok(ParityVector(self.images.iter().map(|&i| p.0[i]).collect()))
    }

    /// Classical signature.
    pub fn signature(&self) -> i32 {
        if self.inversions().count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Pairs of positions `i < j` with `s(i) > s(j)` (zero-based).
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.len();
        (0..k).flat_map(move |i| ((i + 1)..k).filter(move |&j| self.images[i] > self.images[j]).map(move |j| (i, j)))
    }

    /// All permutations of `{1..k}` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == k {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(k, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(k, &mut cur, &mut used, &mut out);
        out
    }

    fn check_len(&self, p: &ParityVector) -> Result<()> {
        if self.len() != p.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: p.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_based().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Sign of the reordering rule for Grassmann-envelope elements: if
/// `x_1..x_k` have parities `p_i + 1`, then
/// `x_{s(1)}⋯x_{s(k)} = super_sign(s, P) · x_1⋯x_k`.
///
/// Equals the product over inverted pairs of `(-1)^{(p_a+1)(p_b+1)}`,
/// where `a, b` are the swapped factors.
pub fn super_sign(s: &Permutation, p: &ParityVector) -> Result<i32> {
    s.check_len(p)?;
    let mut sign = 1;
    for (i, j) in s.inversions() {
        let (a, b) = (p.0[s.images[i]], p.0[s.images[j]]);
        if (a.flip() * b.flip()).is_odd() {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Sign used by the super antisymmetrizer: the signature of `s` times the
/// Koszul sign of moving the factors `X_{s(i)}` (parities `p`) back into
/// order. Swapping adjacent arguments `i, i+1` of the resulting sum
/// multiplies it by `-(-1)^{p_i p_{i+1}}`.
pub fn antisym_sign(s: &Permutation, p: &ParityVector) -> Result<i32> {
    s.check_len(p)?;
    let mut sign = 1;
    for (i, j) in s.inversions() {
        let (a, b) = (p.0[s.images[i]], p.0[s.images[j]]);
        if !(a * b).is_odd() {
            sign = -sign;
        }
    }
    Ok(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn pinned_values() {
        let pv = ParityVector::from_bits;
        assert_eq!(super_sign(&Permutation::identity(3), &pv(&[1, 0, 1])).unwrap(), 1);
        assert_eq!(super_sign(&perm(&[2, 1]), &pv(&[0, 0])).unwrap(), -1);
        assert_eq!(super_sign(&perm(&[2, 1]), &pv(&[1, 1])).unwrap(), 1);
        assert_eq!(super_sign(&perm(&[2, 1]), &pv(&[0, 1])).unwrap(), 1);
    }

    #[test]
    fn length_mismatch() {
        let r = super_sign(&perm(&[2, 1]), &ParityVector::even(3));
        assert!(matches!(r, Err(Error::LengthMismatch { .. })));
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
    }

    #[test]
    fn compose_follows_image_rule() {
        let s1 = perm(&[2, 3, 1]);
        let s2 = perm(&[2, 1, 3]);
        assert_eq!(s1.compose(&s2).unwrap().one_based(), vec![3, 2, 1]);
        assert_eq!(s1.compose(&s1.inverse()).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
        let sum: i32 = Permutation::all(4).iter().map(|s| s.signature()).sum();
        assert_eq!(sum, 0);
    }
}
