use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::domain::SuperDomain;
use crate::antisym::Operator;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::superscalar::{accumulate_product, add_term, Parity, SuperScalar, TermMap};

/// Derivative multi-index `∂^β ∂_{γ_1}⋯∂_{γ_k}` with `γ` increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Deriv {
    even: SmallVec<[u16; 4]>,
    odd: u64,
}

impl Deriv {
    pub fn none(n_even: usize) -> Deriv {
        Deriv {
            even: smallvec::smallvec![0; n_even],
            odd: 0,
        }
    }

    pub fn from_parts(even: &[u16], odd: u64) -> Deriv {
        Deriv {
            even: even.iter().copied().collect(),
            odd,
        }
    }

    pub fn even_part(&self) -> &[u16] {
        &self.even
    }

    /// Bit `i` set iff `∂` along odd coordinate `i` occurs.
    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn order(&self) -> usize {
        self.even.iter().map(|&k| k as usize).sum::<usize>() + self.odd.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones())
    }

    fn odd_list(&self) -> SmallVec<[u32; 4]> {
        let mut out = SmallVec::new();
        let mut rest = self.odd;
        while rest != 0 {
            out.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        out
    }

    fn add_even(&self, i: usize, k: u16) -> Deriv {
        let mut d = self.clone();
        d.even[i] += k;
        d
    }
}

impl Ord for Deriv {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| self.odd_list().cmp(&other.odd_list()))
    }
}

impl PartialOrd for Deriv {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Superdifferential operator `Σ c_{β,γ} ∂^β ∂_γ` with all derivatives to
/// the right of their coefficients.
#[derive(Clone)]
pub struct DiffOp {
    domain: Arc<SuperDomain>,
    terms: BTreeMap<Deriv, SuperScalar>,
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        SuperDomain::same(&self.domain, &other.domain) && self.terms == other.terms
    }
}

impl Eq for DiffOp {}

fn binomial(n: u16, k: u16) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

impl DiffOp {
    pub fn zero(domain: &Arc<SuperDomain>) -> DiffOp {
        DiffOp {
            domain: domain.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by `f`.
    pub fn multiplication(domain: &Arc<SuperDomain>, f: SuperScalar) -> DiffOp {
        DiffOp::from_terms(domain, [(Deriv::none(domain.n_even()), f)])
    }

    pub fn identity(domain: &Arc<SuperDomain>) -> DiffOp {
        DiffOp::multiplication(domain, SuperScalar::one(domain.table()))
    }

    /// `∂` along coordinate `i` (even coordinates first).
    pub fn partial(domain: &Arc<SuperDomain>, i: usize) -> DiffOp {
        DiffOp::from_terms(domain, [(DiffOp::unit_deriv(domain, i), SuperScalar::one(domain.table()))])
    }

    pub fn unit_deriv(domain: &SuperDomain, i: usize) -> Deriv {
        let mut d = Deriv::none(domain.n_even());
        if i < domain.n_even() {
            d.even[i] = 1;
        } else {
            d.odd = 1u64 << (i - domain.n_even());
        }
        d
    }

    /// `Σ u_i ∂_i`.
    pub fn vector_field(domain: &Arc<SuperDomain>, coefficients: &[SuperScalar]) -> DiffOp {
        DiffOp::from_terms(
            domain,
            coefficients
                .iter()
                .enumerate()
                .map(|(i, u)| (DiffOp::unit_deriv(domain, i), u.clone())),
        )
    }

    pub fn from_terms(domain: &Arc<SuperDomain>, terms: impl IntoIterator<Item = (Deriv, SuperScalar)>) -> DiffOp {
        let mut map: BTreeMap<Deriv, SuperScalar> = BTreeMap::new();
        for (d, c) in terms {
            if c.is_zero() {
                continue;
            }
            let c = c.with_table(domain.table()).expect("coefficient over the domain table");
            match map.get_mut(&d) {
                Some(e) => {
                    *e = &*e + &c;
                    if e.is_zero() {
                        map.remove(&d);
                    }
                }
                None => {
                    map.insert(d, c);
                }
            }
        }
        DiffOp {
            domain: domain.clone(),
            terms: map,
        }
    }

    fn from_maps(domain: &Arc<SuperDomain>, acc: FxHashMap<Deriv, TermMap>) -> DiffOp {
        let terms = acc
            .into_iter()
            .map(|(d, m)| (d, SuperScalar::from_map(domain.table(), m)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        DiffOp {
            domain: domain.clone(),
            terms,
        }
    }

    pub fn domain(&self) -> &Arc<SuperDomain> {
        &self.domain
    }

    pub fn terms(&self) -> &BTreeMap<Deriv, SuperScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &Deriv) -> SuperScalar {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| SuperScalar::zero(self.domain.table()))
    }

    /// Coefficient of `∂_i`.
    pub fn field_coefficient(&self, i: usize) -> SuperScalar {
        self.coefficient(&DiffOp::unit_deriv(&self.domain, i))
    }

    /// Highest derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.order()).max()
    }

    /// Lowest derivative order present.
    pub fn min_order(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.order()).min()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }

    /// Terms of exactly order `k`.
    pub fn order_part(&self, k: usize) -> DiffOp {
        DiffOp {
            domain: self.domain.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.order() == k)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    /// Every term has order exactly one.
    pub fn is_vector_field(&self) -> bool {
        self.terms.keys().all(|d| d.order() == 1)
    }

    pub fn parity(&self) -> Result<Parity> {
        let mut found: Option<Parity> = None;
        for (d, c) in &self.terms {
            for (m, _) in c.terms() {
                let p = m.parity() + d.parity();
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return Err(Error::Inhomogeneous),
                    _ => {}
                }
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    fn check_domain(&self, other: &DiffOp) -> Result<()> {
        if SuperDomain::same(&self.domain, &other.domain) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_domain(other)?;
        let mut terms = self.terms.clone();
        for (d, c) in &other.terms {
            match terms.get_mut(d) {
                Some(e) => {
                    *e = &*e + c;
                    if e.is_zero() {
                        terms.remove(d);
                    }
                }
                None => {
                    terms.insert(d.clone(), c.clone());
                }
            }
        }
        Ok(DiffOp {
            domain: self.domain.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.try_add(&other.scale(&Rational::from_integer(-1)))
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(&self.domain);
        }
        DiffOp {
            domain: self.domain.clone(),
            terms: self.terms.iter().map(|(d, k)| (d.clone(), k.scale(c))).collect(),
        }
    }

    /// `f · self`.
    pub fn left_mul(&self, f: &SuperScalar) -> DiffOp {
        DiffOp::from_terms(&self.domain, self.terms.iter().map(|(d, c)| (d.clone(), f * c)))
    }

    /// Maps every coefficient.
    pub fn map_coefficients(&self, mut f: impl FnMut(&SuperScalar) -> SuperScalar) -> DiffOp {
        DiffOp::from_terms(&self.domain, self.terms.iter().map(|(d, c)| (d.clone(), f(c))))
    }

    /// Pushes `∂^alpha` through the multiplication operator `b` followed by
    /// `∂^mu`, returning the normal-ordered terms.
    fn push_through(&self, alpha: &Deriv, b: &SuperScalar, mu: &Deriv) -> Vec<(Deriv, SuperScalar)> {
        let dom = &self.domain;
        let n_even = dom.n_even();
        let mut cur: Vec<(Deriv, SuperScalar)> = vec![(mu.clone(), b.clone())];
        // odd derivatives, innermost (largest index) first
        for o in alpha.odd_list().into_iter().rev() {
            let id = dom.coord_id(n_even + o as usize);
            let mut next: Vec<(Deriv, SuperScalar)> = Vec::with_capacity(cur.len() * 2);
            for (nu, c) in &cur {
                let dc = c.d_odd(id);
                if !dc.is_zero() {
                    next.push((nu.clone(), dc));
                }
                if nu.odd >> o & 1 == 0 {
                    let below = (nu.odd & ((1u64 << o) - 1)).count_ones();
                    let insert_neg = below % 2 == 1;
                    let signed = SuperScalar::from_terms(
                        dom.table(),
                        c.terms().iter().map(|(m, k)| {
                            let neg = insert_neg ^ m.parity().is_odd();
                            (m.clone(), if neg { -k } else { k.clone() })
                        }),
                    );
                    let mut d = nu.clone();
                    d.odd |= 1u64 << o;
                    next.push((d, signed));
                }
            }
            cur = merge(dom, next);
        }
        // even derivatives: ∂_i^k ∘ c = Σ C(k,δ) ∂_i^δ(c) ∂_i^{k-δ}
        for (i, &k) in alpha.even.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let id = dom.coord_id(i);
            let mut next = Vec::with_capacity(cur.len() * (k as usize + 1));
            for (nu, c) in &cur {
                let mut dc = c.clone();
                for delta in 0..=k {
                    if delta > 0 {
                        dc = dc.d_even(id);
                    }
                    if dc.is_zero() {
                        break;
                    }
                    let coef = Rational::from_integer(binomial(k, delta));
                    next.push((nu.add_even(i, k - delta), dc.scale(&coef)));
                }
            }
            cur = merge(dom, next);
        }
        cur
    }

    /// Exact composition `self ∘ rhs` in normal form.
    pub fn compose(&self, rhs: &DiffOp) -> Result<DiffOp> {
        self.check_domain(rhs)?;
        let mut acc: FxHashMap<Deriv, TermMap> = FxHashMap::default();
        for (alpha, a) in &self.terms {
            for (mu, b) in &rhs.terms {
                for (nu, c) in self.push_through(alpha, b, mu) {
                    let slot = acc.entry(nu).or_default();
                    accumulate_product(slot, a.terms(), c.terms(), &Rational::ONE);
                }
            }
        }
        Ok(DiffOp::from_maps(&self.domain, acc))
    }

    /// `[X, Y] = X∘Y - (-1)^{p(X)p(Y)} Y∘X`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        let (p, q) = (self.parity()?, other.parity()?);
        let xy = self.compose(other)?;
        let yx = other.compose(self)?;
        if (p * q).is_odd() {
            xy.try_add(&yx)
        } else {
            xy.try_sub(&yx)
        }
    }

    /// `D^k` computed as `D∘D^{k-1}`.
    pub fn power(&self, k: u32) -> Result<DiffOp> {
        let mut out = DiffOp::identity(&self.domain);
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// `∂^β ∂_γ (f)` for a single derivative multi-index.
    pub fn apply_deriv(domain: &SuperDomain, d: &Deriv, f: &SuperScalar) -> SuperScalar {
        let mut g = f.clone();
        for o in d.odd_list().into_iter().rev() {
            g = g.d_odd(domain.coord_id(domain.n_even() + o as usize));
        }
        for (i, &k) in d.even.iter().enumerate() {
            for _ in 0..k {
                g = g.d_even(domain.coord_id(i));
            }
        }
        g
    }

    /// The operator applied to a function.
    pub fn apply(&self, f: &SuperScalar) -> SuperScalar {
        let mut acc = TermMap::default();
        for (d, c) in &self.terms {
            let g = DiffOp::apply_deriv(&self.domain, d, f);
            accumulate_product(&mut acc, c.terms(), g.terms(), &Rational::ONE);
        }
        SuperScalar::from_map(self.domain.table(), acc)
    }

    fn format_deriv(&self, d: &Deriv) -> String {
        let mut parts = Vec::new();
        for (i, &k) in d.even.iter().enumerate() {
            if k == 1 {
                parts.push(format!("d/d{}", self.domain.coord_name(i)));
            } else if k > 1 {
                parts.push(format!("d^{k}/d{}^{k}", self.domain.coord_name(i)));
            }
        }
        for o in d.odd_list() {
            parts.push(format!("d/d{}", self.domain.coord_name(self.domain.n_even() + o as usize)));
        }
        parts.join("*")
    }
}

fn merge(dom: &SuperDomain, items: Vec<(Deriv, SuperScalar)>) -> Vec<(Deriv, SuperScalar)> {
    if items.len() < 2 {
        return items;
    }
    let mut acc: FxHashMap<Deriv, TermMap> = FxHashMap::default();
    for (d, c) in items {
        let slot = acc.entry(d).or_default();
        for (m, k) in c.into_terms() {
            add_term(slot, m, k);
        }
    }
    let mut out: Vec<(Deriv, SuperScalar)> = acc
        .into_iter()
        .map(|(d, m)| (d, SuperScalar::from_map(dom.table(), m)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

impl Operator for DiffOp {
    fn compose(&self, rhs: &Self) -> Result<Self> {
        DiffOp::compose(self, rhs)
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        self.try_add(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        DiffOp::scale(self, c)
    }
    fn zero_like(&self) -> Self {
        DiffOp::zero(&self.domain)
    }
    fn is_zero(&self) -> bool {
        DiffOp::is_zero(self)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if d.order() == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", self.format_deriv(d))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}
