use std::cmp::Ordering;
use std::fmt::Write as _;

use smallvec::SmallVec;

use super::table::{GenId, GeneratorTable};
use super::Parity;

/// A monomial of the free supercommutative algebra: even generators with
/// positive exponents, and a set of odd generators taken in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    /// Sorted by generator id, exponents > 0.
    even: SmallVec<[(GenId, u16); 4]>,
    /// Bit `i` set iff odd generator `i` is present.
    odd: u128,
}

/// Parity of the number of inversions produced by writing the odd set `a`
/// in front of the odd set `b`.
#[inline]
pub(crate) fn concat_swaps(a: u128, b: u128) -> u32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += if j == 127 { 0 } else { (a >> (j + 1)).count_ones() };
    }
    swaps & 1
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd == 0
    }

    /// The monomial consisting of a single generator.
    pub fn generator(id: GenId, parity: Parity) -> Monomial {
        match parity {
            Parity::Even => Monomial {
                even: smallvec::smallvec![(id, 1)],
                odd: 0,
            },
            Parity::Odd => Monomial {
                even: SmallVec::new(),
                odd: 1u128 << id,
            },
        }
    }

    /// Builds a monomial from even exponents and an odd mask. Zero
    /// exponents are dropped.
    pub fn from_parts(even: impl IntoIterator<Item = (GenId, u16)>, odd: u128) -> Monomial {
        let mut e: SmallVec<[(GenId, u16); 4]> = even.into_iter().filter(|&(_, k)| k > 0).collect();
        e.sort_unstable_by_key(|&(id, _)| id);
        let mut merged: SmallVec<[(GenId, u16); 4]> = SmallVec::new();
        for (id, k) in e {
            match merged.last_mut() {
                Some((last, kk)) if *last == id => *kk += k,
                _ => merged.push((id, k)),
            }
        }
        Monomial { even: merged, odd }
    }

    pub fn even_part(&self) -> &[(GenId, u16)] {
        &self.even
    }

    pub fn odd_mask(&self) -> u128 {
        self.odd
    }

    /// Odd generator ids in strictly increasing order.
    pub fn odd_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        let mut rest = self.odd;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros();
                rest &= rest - 1;
                Some(j as GenId)
            }
        })
    }

    pub fn exponent(&self, id: GenId) -> u16 {
        if self.odd >> id & 1 == 1 {
            return 1;
        }
        self.even
            .iter()
            .find(|&&(g, _)| g == id)
            .map(|&(_, k)| k)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().map(|&(_, k)| k as u32).sum::<u32>() + self.odd.count_ones()
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    /// Sum of generator parities with multiplicity.
    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones())
    }

    /// Product `self · other` in canonical form together with the sign
    /// (`true` = negate). `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let negate = concat_swaps(self.odd, other.odd) == 1;
        let even = if other.even.is_empty() {
            self.even.clone()
        } else if self.even.is_empty() {
            other.even.clone()
        } else {
            let mut out: SmallVec<[(GenId, u16); 4]> = SmallVec::with_capacity(self.even.len() + other.even.len());
            let (mut i, mut j) = (0, 0);
            while i < self.even.len() && j < other.even.len() {
                let (a, b) = (self.even[i], other.even[j]);
                match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        out.push(a);
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b);
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a.0, a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                }
            }
            out.extend_from_slice(&self.even[i..]);
            out.extend_from_slice(&other.even[j..]);
            out
        };
        Some((
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
            negate,
        ))
    }

    /// `∂/∂g` of this monomial for an even generator `g`: returns the
    /// multiplicity and the lowered monomial.
    pub fn d_even(&self, id: GenId) -> Option<(u16, Monomial)> {
        let pos = self.even.iter().position(|&(g, _)| g == id)?;
        let k = self.even[pos].1;
        let mut even = self.even.clone();
        if k == 1 {
            even.remove(pos);
        } else {
            even[pos].1 -= 1;
        }
        Some((k, Monomial { even, odd: self.odd }))
    }

    /// `∂^k/∂g^k` for an even generator: the falling factorial coefficient
    /// and the lowered monomial.
    pub fn d_even_pow(&self, id: GenId, k: u16) -> Option<(u64, Monomial)> {
        if k == 0 {
            return Some((1, self.clone()));
        }
        let pos = self.even.iter().position(|&(g, _)| g == id)?;
        let e = self.even[pos].1;
        if e < k {
            return None;
        }
        let coef: u64 = ((e - k + 1)..=e).map(|v| v as u64).product();
        let mut even = self.even.clone();
        if e == k {
            even.remove(pos);
        } else {
            even[pos].1 -= k;
        }
        Some((coef, Monomial { even, odd: self.odd }))
    }

    /// Left derivative with respect to an odd generator: the sign picked up
    /// by moving the generator to the front (`true` = negate).
    pub fn d_odd(&self, id: GenId) -> Option<(bool, Monomial)> {
        if self.odd >> id & 1 == 0 {
            return None;
        }
        let below = self.odd & ((1u128 << id) - 1);
        Some((
            below.count_ones() % 2 == 1,
            Monomial {
                even: self.even.clone(),
                odd: self.odd & !(1u128 << id),
            },
        ))
    }

    /// Merged `(id, exponent)` list over all generators.
    fn exponent_list(&self) -> SmallVec<[(GenId, u16); 8]> {
        let mut out: SmallVec<[(GenId, u16); 8]> = SmallVec::new();
        let mut odd = self.odd_ids().peekable();
        let mut even = self.even.iter().peekable();
        loop {
            match (odd.peek(), even.peek()) {
                (Some(&o), Some(&&(e, k))) => {
                    if o < e {
                        out.push((o, 1));
                        odd.next();
                    } else {
                        out.push((e, k));
                        even.next();
                    }
                }
                (Some(&o), None) => {
                    out.push((o, 1));
                    odd.next();
                }
                (None, Some(&&(e, k))) => {
                    out.push((e, k));
                    even.next();
                }
                (None, None) => break,
            }
        }
        out
    }

    pub fn format(&self, table: &GeneratorTable) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (i, (id, k)) in self.exponent_list().into_iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = write!(s, "{}", table.get(id));
            if k > 1 {
                let _ = write!(s, "^{k}");
            }
        }
        s
    }
}

impl Ord for Monomial {
    /// Graded lexicographic by generator id: total degree first, then the
    /// larger exponent at the smallest differing generator wins.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let a = self.exponent_list();
        let b = other.exponent_list();
        for (x, y) in a.iter().zip(b.iter()) {
            if x.0 != y.0 {
                return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(id: GenId) -> Monomial {
        Monomial::generator(id, Parity::Odd)
    }

    #[test]
    fn odd_generators_anticommute_and_square_to_zero() {
        let (ab, s1) = odd(0).mul(&odd(1)).unwrap();
        let (ba, s2) = odd(1).mul(&odd(0)).unwrap();
        assert_eq!(ab, ba);
        assert_ne!(s1, s2);
        assert!(odd(0).mul(&odd(0)).is_none());
    }

    #[test]
    fn parity_counts_odd_generators() {
        let x2xi = Monomial::from_parts([(3, 2)], 1);
        assert_eq!(x2xi.parity(), Parity::Odd);
        assert_eq!(Monomial::from_parts([], 0b11).parity(), Parity::Even);
        assert_eq!(Monomial::one().parity(), Parity::Even);
    }

    #[test]
    fn concat_swaps_counts_inversions() {
        // (xi1 xi3)(xi0 xi2): xi0 passes 2 gens, xi2 passes xi3 -> 3 swaps
        assert_eq!(concat_swaps(0b1010, 0b0101), 1);
        assert_eq!(concat_swaps(0b0011, 0b1100), 0);
    }

    #[test]
    fn derivatives() {
        let m = Monomial::from_parts([(0, 3)], 0b110);
        let (k, low) = m.d_even(0).unwrap();
        assert_eq!(k, 3);
        assert_eq!(low.exponent(0), 2);
        let (c, low2) = m.d_even_pow(0, 2).unwrap();
        assert_eq!(c, 6);
        assert_eq!(low2.exponent(0), 1);
        assert!(m.d_even_pow(0, 4).is_none());
        let (neg, rest) = m.d_odd(2).unwrap();
        assert!(neg);
        assert_eq!(rest.odd_mask(), 0b010);
        assert!(!m.d_odd(1).unwrap().0);
    }

    #[test]
    fn grlex_order() {
        let one = Monomial::one();
        let a = odd(0);
        let b = odd(1);
        assert!(one < a);
        assert!(b < a);
        let a2 = Monomial::from_parts([(5, 2)], 0);
        assert!(a < a2);
    }
}
