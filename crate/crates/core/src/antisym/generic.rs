use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::permutation_sum;
use crate::error::Result;
use crate::rational::Rational;
use crate::supermat::{GenericElement, MatrixAlgebraSpec, SuperMatrix};
use crate::superscalar::{Monomial, Parity, ParityVector, SuperScalar};

/// `X^r` for the generic element of `spec`. Its `θ`-coefficients are the
/// values of `a_r` on basis tuples, so `X^r = 0` iff `a_r` vanishes on the
/// whole algebra.
pub fn antisymmetrize_generic(spec: &MatrixAlgebraSpec, r: u32) -> Result<SuperMatrix> {
    let g = GenericElement::new(*spec)?;
    g.matrix.pow(r)
}

/// Sorted basis-index tuples of length `r` in which only odd basis
/// elements may repeat (their `θ` generators are even).
pub fn basis_tuples(basis_parities: &[Parity], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, par: &[Parity], r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..par.len() {
            cur.push(i);
            let next = if par[i].is_odd() { i } else { i + 1 };
            rec(next, par, r, cur, out);
            cur.pop();
        }
    }
    rec(0, basis_parities, r, &mut cur, &mut out);
    out
}

fn theta_monomial(g: &GenericElement, tuple: &[usize]) -> Monomial {
    let mut odd = 0u128;
    let mut even = Vec::new();
    for &b in tuple {
        let id = b as u16;
        if g.table.parity(id).is_odd() {
            odd |= 1u128 << id;
        } else {
            even.push((id, 1u16));
        }
    }
    Monomial::from_parts(even, odd)
}

/// Recovers `a_r(b_{t_1}, .., b_{t_r})` for a sorted basis tuple `t` from
/// `X^r`.
///
/// The coefficient of `θ_{t_1}⋯θ_{t_r}` equals `a_r` up to the sign
/// `∏_{i<j} (-1)^{p_i (p_j + 1)}`, a factor `Δ` for every even argument
/// and the multiplicities of repeated odd arguments; all three are undone
/// here.
pub fn extract_antisymmetrizer(g: &GenericElement, xr: &SuperMatrix, tuple: &[usize]) -> Result<SuperMatrix> {
    let mono = theta_monomial(g, tuple);
    let par: Vec<bool> = tuple.iter().map(|&b| g.basis[b].parity().map(|p| p.is_odd())).collect::<Result<_>>()?;
    let mut sign_odd = false;
    for i in 0..par.len() {
        for j in (i + 1)..par.len() {
            if par[i] && !par[j] {
                sign_odd = !sign_odd;
            }
        }
    }
    let even_args = par.iter().filter(|p| !**p).count();
    let mut factor = Rational::from_integer(if sign_odd { -1 } else { 1 });
    let mut i = 0;
    while i < tuple.len() {
        let mut j = i;
        while j < tuple.len() && tuple[j] == tuple[i] {
            j += 1;
        }
        for k in 2..=(j - i) {
            factor = &factor * &Rational::from_integer(k as i64);
        }
        i = j;
    }
    let (m, n) = xr.format();
    let empty = crate::superscalar::GeneratorTable::empty();
    let coef = SuperMatrix::from_fn(&empty, m, n, |a, b| {
        SuperScalar::constant(&empty, &xr.entry(a, b).coefficient(&mono) * &factor)
    });
    let coef = if even_args % 2 == 1 { coef.delta_twist() } else { coef };
    let parity = Parity::from_bit(par.iter().filter(|p| **p).count() as u32);
    if coef.is_zero() {
        Ok(coef)
    } else {
        coef.with_parity(parity)
    }
}

/// Compares the generic-element extraction with the permutation sum on
/// basis tuples: all of them when `samples` is zero or at least the number
/// of tuples, otherwise `samples` tuples drawn with ChaCha8 from `seed`.
pub fn oracle_equivalence_check(spec: &MatrixAlgebraSpec, r: usize, samples: usize, seed: u64) -> Result<bool> {
    let g = GenericElement::new(*spec)?;
    let xr = g.matrix.pow(r as u32)?;
    let parities: Vec<Parity> = g.basis.iter().map(|b| b.parity()).collect::<Result<_>>()?;
    let all = basis_tuples(&parities, r);
    let chosen: Vec<Vec<usize>> = if samples == 0 || samples >= all.len() {
        all
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
    };
    for t in &chosen {
        let args: Vec<SuperMatrix> = t.iter().map(|&b| g.basis[b].clone()).collect();
        let p = ParityVector(t.iter().map(|&b| parities[b]).collect());
        let naive = permutation_sum(&args, &p)?;
        let generic = extract_antisymmetrizer(&g, &xr, t)?;
        if naive.to_rationals() != generic.to_rationals() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMethod {
    Naive,
    Generic,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchResult {
    pub algebra: String,
    pub r: usize,
    pub method: BenchMethod,
    /// Basis tuples covered (both methods cover the same set).
    pub tuples: usize,
    /// Matrix multiplications performed.
    pub multiplications: u64,
    /// Nonzero scalar terms in the result.
    pub terms: usize,
    pub zero: bool,
    pub millis: f64,
}

/// Evaluates `a_r` on every sorted basis tuple, either through the
/// permutation sum or through one power of the generic element.
pub fn bench(spec: &MatrixAlgebraSpec, r: usize, method: BenchMethod) -> Result<BenchResult> {
    let g = GenericElement::new(*spec)?;
    let parities: Vec<Parity> = g.basis.iter().map(|b| b.parity()).collect::<Result<_>>()?;
    let tuples = basis_tuples(&parities, r);
    let start = Instant::now();
    let (multiplications, terms, zero) = match method {
        BenchMethod::Naive => {
            let mut terms = 0;
            for t in &tuples {
                let args: Vec<SuperMatrix> = t.iter().map(|&b| g.basis[b].clone()).collect();
                let p = ParityVector(t.iter().map(|&b| parities[b]).collect());
                let v = permutation_sum(&args, &p)?;
                terms += v.entries().iter().map(|e| e.len()).sum::<usize>();
            }
            let fact: u64 = (1..=r as u64).product();
            (tuples.len() as u64 * fact * (r as u64).saturating_sub(1), terms, terms == 0)
        }
        BenchMethod::Generic => {
            let xr = g.matrix.pow(r as u32)?;
            let terms = xr.entries().iter().map(|e| e.len()).sum::<usize>();
            (r as u64, terms, xr.is_zero())
        }
    };
    Ok(BenchResult {
        algebra: spec.to_string(),
        r,
        method,
        tuples: tuples.len(),
        multiplications,
        terms,
        zero,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}
