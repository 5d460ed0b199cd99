//! Antisymmetrizers of operator tuples: the permutation sum, the
//! generic-element shortcut, star products and span scans.

mod generic;
mod span;

pub use generic::{
    antisymmetrize_generic, basis_tuples, bench, extract_antisymmetrizer, oracle_equivalence_check, BenchMethod,
    BenchResult,
};
pub use span::{closure, span_scan, theta_coefficients, Closure, SpanItem, SpanReport};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::supermat::SuperMatrix;
use crate::superscalar::{Parity, ParityVector};
use crate::vectorfields::DiffOp;

/// Largest tuple length for which the permutation sum is enumerated.
pub const NAIVE_CAP: usize = 8;

/// Operators that can be composed and linearly combined.
pub trait Operator: Clone + Send + Sync + Sized {
    fn compose(&self, rhs: &Self) -> Result<Self>;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn scale(&self, c: &Rational) -> Self;
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Operator for SuperMatrix {
    fn compose(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        self.try_add(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        SuperMatrix::scale(self, c)
    }
    fn zero_like(&self) -> Self {
        let (m, n) = self.format();
        SuperMatrix::zero(self.table(), m, n)
    }
    fn is_zero(&self) -> bool {
        SuperMatrix::is_zero(self)
    }
}

/// An operator of either supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyOp {
    Matrix(SuperMatrix),
    Diff(DiffOp),
}

impl AnyOp {
    pub fn parity(&self) -> Result<Parity> {
        match self {
            AnyOp::Matrix(m) => m.parity(),
            AnyOp::Diff(d) => d.parity(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnyOp::Matrix(m) => m.is_zero(),
            AnyOp::Diff(d) => d.is_zero(),
        }
    }

    pub fn as_matrix(&self) -> Option<&SuperMatrix> {
        match self {
            AnyOp::Matrix(m) => Some(m),
            AnyOp::Diff(_) => None,
        }
    }

    pub fn as_diff(&self) -> Option<&DiffOp> {
        match self {
            AnyOp::Diff(d) => Some(d),
            AnyOp::Matrix(_) => None,
        }
    }
}

impl From<SuperMatrix> for AnyOp {
    fn from(m: SuperMatrix) -> Self {
        AnyOp::Matrix(m)
    }
}

impl From<DiffOp> for AnyOp {
    fn from(d: DiffOp) -> Self {
        AnyOp::Diff(d)
    }
}

/// Arguments `X_1..X_r` with their parities.
#[derive(Debug, Clone)]
pub struct OperatorTuple {
    pub ops: Vec<AnyOp>,
    pub parities: ParityVector,
}

impl OperatorTuple {
    /// Parities are read off the operators.
    pub fn new(ops: Vec<AnyOp>) -> Result<OperatorTuple> {
        let parities = ParityVector(ops.iter().map(|o| o.parity()).collect::<Result<_>>()?);
        Ok(OperatorTuple { ops, parities })
    }

    pub fn with_parities(ops: Vec<AnyOp>, parities: ParityVector) -> Result<OperatorTuple> {
        if ops.len() != parities.len() {
            return Err(Error::LengthMismatch {
                expected: ops.len(),
                got: parities.len(),
            });
        }
        for (o, &p) in ops.iter().zip(parities.0.iter()) {
            if !o.is_zero() && o.parity()? != p {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(OperatorTuple { ops, parities })
    }

    pub fn matrices(ms: Vec<SuperMatrix>) -> Result<OperatorTuple> {
        OperatorTuple::new(ms.into_iter().map(AnyOp::Matrix).collect())
    }

    pub fn diffops(ds: Vec<DiffOp>) -> Result<OperatorTuple> {
        OperatorTuple::new(ds.into_iter().map(AnyOp::Diff).collect())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn split_kinds(&self) -> Result<Kinds> {
        if let Some(ms) = self.ops.iter().map(|o| o.as_matrix().cloned()).collect::<Option<Vec<_>>>() {
            return Ok(Kinds::Matrix(ms));
        }
        if let Some(ds) = self.ops.iter().map(|o| o.as_diff().cloned()).collect::<Option<Vec<_>>>() {
            return Ok(Kinds::Diff(ds));
        }
        Err(Error::MixedOperatorKinds)
    }
}

enum Kinds {
    Matrix(Vec<SuperMatrix>),
    Diff(Vec<DiffOp>),
}

/// `Σ_s sign(s, P) X_{s(1)}⋯X_{s(r)}` by enumerating all `r!` orderings.
///
/// The sign is the signature of `s` times the Koszul sign of reordering
/// the factors, so swapping adjacent arguments multiplies the sum by
/// `-(-1)^{p_i p_{i+1}}`.
pub fn permutation_sum<T: Operator>(ops: &[T], parities: &ParityVector) -> Result<T> {
    let r = ops.len();
    if r != parities.len() {
        return Err(Error::LengthMismatch {
            expected: r,
            got: parities.len(),
        });
    }
    if r > NAIVE_CAP {
        return Err(Error::EnumerationCap { cap: NAIVE_CAP, got: r });
    }
    let Some(first) = ops.first() else {
        return Err(Error::Precondition("antisymmetrizer of an empty tuple".into()));
    };
    let p: Vec<bool> = parities.0.iter().map(|x| x.is_odd()).collect();
    // the first factor is chosen in parallel; each branch is a DFS over
    // the remaining factors with shared prefix products
    let branches: Vec<Result<T>> = (0..r)
        .into_par_iter()
        .map(|j| {
            let mut used = vec![false; r];
            used[j] = true;
            let mut acc = first.zero_like();
            dfs(ops, &p, &mut used, ops[j].clone(), 1, 1, &mut acc)?;
            Ok(acc)
        })
        .collect();
    let mut total = first.zero_like();
    for b in branches {
        total = total.add(&b?)?;
    }
    Ok(total)
}

fn dfs<T: Operator>(
    ops: &[T],
    odd: &[bool],
    used: &mut [bool],
    prefix: T,
    depth: usize,
    sign: i32,
    acc: &mut T,
) -> Result<()> {
    let r = ops.len();
    if depth == r {
        *acc = if sign > 0 {
            acc.add(&prefix)?
        } else {
            acc.add(&prefix.scale(&Rational::from_integer(-1)))?
        };
        return Ok(());
    }
    if prefix.is_zero() {
        return Ok(());
    }
    for j in 0..r {
        if used[j] {
            continue;
        }
        // every chosen factor with a larger index forms an inversion with j
        let mut s = sign;
        for a in (j + 1)..r {
            if used[a] && !(odd[a] && odd[j]) {
                s = -s;
            }
        }
        used[j] = true;
        let next = prefix.compose(&ops[j])?;
        dfs(ops, odd, used, next, depth + 1, s, acc)?;
        used[j] = false;
    }
    Ok(())
}

/// Naive antisymmetrizer of a uniformly typed tuple.
pub fn antisymmetrize_naive(t: &OperatorTuple) -> Result<AnyOp> {
    match t.split_kinds()? {
        Kinds::Matrix(ms) => Ok(AnyOp::Matrix(permutation_sum(&ms, &t.parities)?)),
        Kinds::Diff(ds) => Ok(AnyOp::Diff(permutation_sum(&ds, &t.parities)?)),
    }
}

/// `(a_k ∗ a_l)(X_1..X_{k+l-1})`: the signed sum over shuffles `σ` with
/// `σ(1)<..<σ(l)` and `σ(l+1)<..<σ(k+l-1)` of
/// `a_k(a_l(X_{σ(1)}..X_{σ(l)}), X_{σ(l+1)}..X_{σ(k+l-1)})`. Even operators
/// only.
pub fn star_product_eval(k: usize, l: usize, t: &OperatorTuple) -> Result<AnyOp> {
    if k == 0 || l == 0 {
        return Err(Error::Precondition("star product needs k, l >= 1".into()));
    }
    let len = k + l - 1;
    if t.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: t.len(),
        });
    }
    if !t.parities.all_even() {
        return Err(Error::OddOperator);
    }
    match t.split_kinds()? {
        Kinds::Matrix(ms) => Ok(AnyOp::Matrix(star_sum(k, l, &ms)?)),
        Kinds::Diff(ds) => Ok(AnyOp::Diff(star_sum(k, l, &ds)?)),
    }
}

fn star_sum<T: Operator>(k: usize, l: usize, ops: &[T]) -> Result<T> {
    let len = ops.len();
    let mut total = ops[0].zero_like();
    for inner in choose(len, l) {
        let outer: Vec<usize> = (0..len).filter(|i| !inner.contains(i)).collect();
        // sign of the shuffle (inner, outer)
        let inversions: usize = inner.iter().map(|&i| outer.iter().filter(|&&o| o < i).count()).sum();
        let inner_ops: Vec<T> = inner.iter().map(|&i| ops[i].clone()).collect();
        let a_l = permutation_sum(&inner_ops, &ParityVector::even(l))?;
        let mut args = vec![a_l];
        args.extend(outer.iter().map(|&i| ops[i].clone()));
        let term = permutation_sum(&args, &ParityVector::even(k))?;
        total = if inversions % 2 == 0 {
            total.add(&term)?
        } else {
            total.add(&term.scale(&Rational::from_integer(-1)))?
        };
    }
    Ok(total)
}

/// Increasing `k`-subsets of `0..n`.
fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superscalar::{antisym_sign, Permutation};

    fn m(vals: &[i64]) -> SuperMatrix {
        SuperMatrix::from_integers(2, 0, vals).unwrap()
    }

    #[test]
    fn two_even_arguments_give_the_commutator() {
        let x = m(&[1, 2, 3, 4]);
        let y = m(&[0, 1, -1, 2]);
        let t = OperatorTuple::matrices(vec![x.clone(), y.clone()]).unwrap();
        let a2 = antisymmetrize_naive(&t).unwrap();
        let expected = x.try_mul(&y).unwrap().try_sub(&y.try_mul(&x).unwrap()).unwrap();
        assert_eq!(a2.as_matrix().unwrap(), &expected);
    }

    #[test]
    fn dfs_matches_explicit_sign_enumeration() {
        let ops = vec![m(&[1, 2, 0, 1]), m(&[0, 1, 1, 0]), m(&[3, 0, 1, -1])];
        let p = ParityVector::even(3);
        let mut expected = SuperMatrix::zero(ops[0].table(), 2, 0);
        for s in Permutation::all(3) {
            let mut prod = SuperMatrix::identity(ops[0].table(), 2, 0);
            for i in 0..3 {
                prod = prod.try_mul(&ops[s.image(i)]).unwrap();
            }
            let sg = antisym_sign(&s, &p).unwrap();
            expected = expected.try_add(&prod.scale(&Rational::from_integer(sg as i64))).unwrap();
        }
        assert_eq!(permutation_sum(&ops, &p).unwrap(), expected);
    }

    #[test]
    fn enumeration_is_capped() {
        let ops = vec![m(&[1, 0, 0, 1]); 9];
        assert!(matches!(
            permutation_sum(&ops, &ParityVector::even(9)),
            Err(Error::EnumerationCap { cap: 8, got: 9 })
        ));
    }

    #[test]
    fn star_product_rejects_odd_operators() {
        let x = SuperMatrix::unit(1, 1, 0, 1);
        let t = OperatorTuple::matrices(vec![x.clone(), x.clone(), x]).unwrap();
        assert_eq!(star_product_eval(2, 2, &t), Err(Error::OddOperator));
    }

    #[test]
    fn shuffles() {
        assert_eq!(choose(4, 2).len(), 6);
        assert_eq!(choose(3, 0), vec![Vec::<usize>::new()]);
    }
}
