use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::monomial::Monomial;
use super::table::{join_tables, GenId, GeneratorTable};
use super::Parity;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type TermMap = FxHashMap<Monomial, Rational>;

/// Element of the free supercommutative algebra over a [`GeneratorTable`],
/// with exact rational coefficients.
///
/// Terms are kept sorted by the graded lexicographic monomial order and never
/// carry a zero coefficient, so the empty term list is the only zero.
#[derive(Clone)]
pub struct SuperScalar {
    table: Arc<GeneratorTable>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for SuperScalar {
    /// Value equality; the tables only need to be compatible.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.table, &other.table) || join_tables(&self.table, &other.table).is_ok())
    }
}

impl Eq for SuperScalar {}

/// `acc += factor · a · b`, term by term.
pub(crate) fn accumulate_product(
    acc: &mut TermMap,
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    factor: &Rational,
) {
    for (ma, ca) in a {
        let cf = if factor.is_one() { ca.clone() } else { ca * factor };
        for (mb, cb) in b {
            if let Some((m, neg)) = ma.mul(mb) {
                let mut c = &cf * cb;
                if neg {
                    c = -c;
                }
                add_term(acc, m, c);
            }
        }
    }
}

#[inline]
pub(crate) fn add_term(acc: &mut TermMap, m: Monomial, c: Rational) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

pub(crate) fn canonical_terms(acc: TermMap) -> Vec<(Monomial, Rational)> {
    let mut v: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    v
}

impl SuperScalar {
    pub fn zero(table: &Arc<GeneratorTable>) -> SuperScalar {
        SuperScalar {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> SuperScalar {
        SuperScalar::constant(table, Rational::ONE)
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: impl Into<Rational>) -> SuperScalar {
        let c = c.into();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(), c)]
        };
        SuperScalar {
            table: table.clone(),
            terms,
        }
    }

    pub fn generator(table: &Arc<GeneratorTable>, id: GenId) -> SuperScalar {
        SuperScalar {
            table: table.clone(),
            terms: vec![(Monomial::generator(id, table.parity(id)), Rational::ONE)],
        }
    }

    /// Looks a generator up by name and index; panics if it is not declared.
    pub fn named(table: &Arc<GeneratorTable>, name: &str, index: &[i64]) -> SuperScalar {
        let id = table
            .find(name, index)
            .unwrap_or_else(|| panic!("generator {name}{index:?} not in table"));
        SuperScalar::generator(table, id)
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> SuperScalar {
        let mut acc = TermMap::default();
        for (m, c) in terms {
            add_term(&mut acc, m, c);
        }
        SuperScalar {
            table: table.clone(),
            terms: canonical_terms(acc),
        }
    }

    pub(crate) fn from_map(table: &Arc<GeneratorTable>, acc: TermMap) -> SuperScalar {
        SuperScalar {
            table: table.clone(),
            terms: canonical_terms(acc),
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::ZERO,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The rational value, if this scalar is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Rational::ZERO)
    }

    /// `Some(p)` when every term has parity `p`; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.iter().map(|(m, _)| m.parity());
        let first = match it.next() {
            Some(p) => p,
            None => return Some(Parity::Even),
        };
        it.all(|p| p == first).then_some(first)
    }

    /// True if every term has parity `p` (vacuously true for zero).
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.iter().all(|(m, _)| m.parity() == p)
    }

    pub fn with_table(&self, table: &Arc<GeneratorTable>) -> Result<SuperScalar> {
        let t = join_tables(&self.table, table)?;
        if !Arc::ptr_eq(&t, table) && !t.is_prefix_of(table) {
            return Err(Error::TableMismatch);
        }
        Ok(SuperScalar {
            table: table.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn try_add(&self, other: &SuperScalar) -> Result<SuperScalar> {
        let table = join_tables(&self.table, &other.table)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(SuperScalar { table, terms: out })
    }

    pub fn try_sub(&self, other: &SuperScalar) -> Result<SuperScalar> {
        self.try_add(&-other)
    }

    /// Exact product in canonical form.
    pub fn try_mul(&self, other: &SuperScalar) -> Result<SuperScalar> {
        let table = join_tables(&self.table, &other.table)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SuperScalar::zero(&table));
        }
        if let Some(c) = self.as_rational() {
            return Ok(other.scale(&c).with_table_unchecked(&table));
        }
        if let Some(c) = other.as_rational() {
            return Ok(self.scale(&c).with_table_unchecked(&table));
        }
        let mut acc = TermMap::default();
        accumulate_product(&mut acc, &self.terms, &other.terms, &Rational::ONE);
        Ok(SuperScalar::from_map(&table, acc))
    }

    fn with_table_unchecked(mut self, table: &Arc<GeneratorTable>) -> SuperScalar {
        self.table = table.clone();
        self
    }

    pub fn scale(&self, c: &Rational) -> SuperScalar {
        if c.is_zero() {
            return SuperScalar::zero(&self.table);
        }
        SuperScalar {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SuperScalar {
        let mut out = SuperScalar::one(&self.table);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to an even generator.
    pub fn d_even(&self, id: GenId) -> SuperScalar {
        let mut acc = TermMap::default();
        for (m, c) in &self.terms {
            if let Some((k, low)) = m.d_even(id) {
                add_term(&mut acc, low, c * &Rational::from_integer(k as i64));
            }
        }
        SuperScalar::from_map(&self.table, acc)
    }

    /// Left partial derivative with respect to an odd generator.
    pub fn d_odd(&self, id: GenId) -> SuperScalar {
        let mut acc = TermMap::default();
        for (m, c) in &self.terms {
            if let Some((neg, low)) = m.d_odd(id) {
                add_term(&mut acc, low, if neg { -c } else { c.clone() });
            }
        }
        SuperScalar::from_map(&self.table, acc)
    }

    /// Derivative with respect to generator `id` (left derivative when odd).
    pub fn derivative(&self, id: GenId) -> SuperScalar {
        match self.table.parity(id) {
            Parity::Even => self.d_even(id),
            Parity::Odd => self.d_odd(id),
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> SuperScalar {
        SuperScalar {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    /// Inverse of `c + nil` where `c` is a nonzero rational and every term
    /// of `nil` contains an odd generator. The geometric series terminates
    /// because `nil` is nilpotent.
    pub fn invert_unipotent(&self) -> Result<SuperScalar> {
        let c = self.constant_term();
        let Some(c_inv) = c.recip() else {
            return Err(Error::NotInvertible(self.to_string()));
        };
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| !m.is_one() && m.odd_degree() == 0) {
            return Err(Error::Precondition(format!(
                "non-constant even term {} has no odd generator",
                m.format(&self.table)
            )));
        }
        // a = c (1 - u), u = -nil / c, a^{-1} = c^{-1} (1 + u + u^2 + ...)
        let nil = self.filter_terms(|m| !m.is_one());
        let u = nil.scale(&-&c_inv);
        let mut sum = SuperScalar::one(&self.table);
        let mut power = SuperScalar::one(&self.table);
        loop {
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&c_inv))
    }

    /// Serialized form: sorted list of `[coefficient "p/q", monomial]`.
    pub fn to_report_terms(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.to_fraction_string(), m.format(&self.table)))
            .collect()
    }
}

impl Serialize for SuperScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_report_terms().serialize(s)
    }
}

impl fmt::Display for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.format(&self.table))?;
            } else {
                write!(f, "{abs}*{}", m.format(&self.table))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperScalar({self})")
    }
}

// Operator impls panic on incompatible tables; use the `try_*` methods to
// get an error instead.
impl Add for &SuperScalar {
    type Output = SuperScalar;
    fn add(self, rhs: &SuperScalar) -> SuperScalar {
        self.try_add(rhs).expect("incompatible generator tables")
    }
}

impl Sub for &SuperScalar {
    type Output = SuperScalar;
    fn sub(self, rhs: &SuperScalar) -> SuperScalar {
        self.try_sub(rhs).expect("incompatible generator tables")
    }
}

impl Mul for &SuperScalar {
    type Output = SuperScalar;
    fn mul(self, rhs: &SuperScalar) -> SuperScalar {
        self.try_mul(rhs).expect("incompatible generator tables")
    }
}

impl Neg for &SuperScalar {
    type Output = SuperScalar;
    fn neg(self) -> SuperScalar {
        SuperScalar {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperScalar {
    type Output = SuperScalar;
    fn neg(self) -> SuperScalar {
        -&self
    }
}

/// `a · b` for two scalars (fails on mismatched tables).
pub fn scalar_mul(a: &SuperScalar, b: &SuperScalar) -> Result<SuperScalar> {
    a.try_mul(b)
}

/// Parity of a canonical monomial.
pub fn parity_of(m: &Monomial) -> Parity {
    m.parity()
}
