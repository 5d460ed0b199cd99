use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use super::diffop::DiffOp;
use super::density::divergence;
use super::domain::SuperDomain;
use super::hamiltonian::hamiltonian_field;
use super::spec::{VectorialFamily, VectorialSpec};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::Rational;
use crate::report::Classification;
use crate::superscalar::{Generator, Monomial, Parity, SuperScalar};

/// Exponent vectors in `n` variables of total degree `lo..=hi`, by degree
/// and then lexicographically decreasing.
pub fn exponent_vectors(n: usize, lo: usize, hi: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for deg in lo..=hi {
        let mut cur = vec![0u16; n];
        fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k as u16;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            continue;
        }
        rec(0, deg, &mut cur, &mut out);
    }
    out
}

/// `x^α` over the domain's even coordinates.
pub fn coordinate_monomial(domain: &SuperDomain, exps: &[u16]) -> SuperScalar {
    let m = Monomial::from_parts(exps.iter().enumerate().map(|(i, &k)| (domain.coord_id(i), k)), 0);
    SuperScalar::from_terms(domain.table(), [(m, Rational::ONE)])
}

/// Vector field with rational polynomial coefficients, as sparse
/// `(coordinate, exponents, coefficient)` triples.
#[derive(Debug, Clone, PartialEq)]
struct PolyField(Vec<(usize, Vec<u16>, Rational)>);

impl PolyField {
    fn to_diffop(&self, domain: &Arc<SuperDomain>) -> DiffOp {
        let mut comps = vec![SuperScalar::zero(domain.table()); domain.n_coords()];
        for (j, exps, c) in &self.0 {
            comps[*j] = &comps[*j] + &coordinate_monomial(domain, exps).scale(c);
        }
        DiffOp::vector_field(domain, &comps)
    }
}

fn vect_basis(n: usize, d: usize) -> Vec<PolyField> {
    let monos = exponent_vectors(n, 0, d);
    (0..n)
        .flat_map(|j| monos.iter().map(move |a| PolyField(vec![(j, a.clone(), Rational::ONE)])))
        .collect()
}

/// Divergence-free fields of degree at most `d`, from the kernel of the
/// divergence map on `vect(n)`.
fn svect_basis(n: usize, d: usize) -> Vec<PolyField> {
    let full = vect_basis(n, d);
    let targets = exponent_vectors(n, 0, d.saturating_sub(1));
    let index_of = |e: &[u16]| targets.iter().position(|t| t.as_slice() == e);
    let mut rows = vec![vec![Rational::ZERO; full.len()]; targets.len()];
    for (col, f) in full.iter().enumerate() {
        let (j, a, _) = &f.0[0];
        if a[*j] > 0 {
            let mut low = a.clone();
            low[*j] -= 1;
            let r = index_of(&low).expect("lower degree monomial");
            rows[r][col] = Rational::from_integer(a[*j] as i64);
        }
    }
    nullspace(&rows, full.len())
        .into_iter()
        .map(|v| {
            PolyField(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (full[k].0[0].0, full[k].0[0].1.clone(), c.clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Coordinates of the domain used for a vectorial spec.
pub fn coordinate_names(spec: &VectorialSpec) -> Vec<(String, Vec<i64>)> {
    match spec.family {
        VectorialFamily::H => {
            let half = spec.n / 2;
            if half == 1 {
                vec![("p".into(), vec![]), ("q".into(), vec![])]
            } else {
                let ps = (1..=half as i64).map(|i| ("p".to_string(), vec![i]));
                let qs = (1..=half as i64).map(|i| ("q".to_string(), vec![i]));
                ps.chain(qs).collect()
            }
        }
        _ => (1..=spec.n as i64).map(|i| ("x".to_string(), vec![i])).collect(),
    }
}

/// The universal odd element `D = Σ η_b b` over a basis of the truncated
/// algebra, with one odd generator `η_b` per basis field. Its powers
/// satisfy `D^N = Σ_S η_S a_N(b_S)` over increasing index sets `S`.
#[derive(Debug, Clone)]
pub struct GenericDerivation {
    pub spec: VectorialSpec,
    pub domain: Arc<SuperDomain>,
    pub basis: Vec<DiffOp>,
    /// Generating functions of the basis fields (Hamiltonian family).
    pub generating: Option<Vec<SuperScalar>>,
    pub op: DiffOp,
}

/// Domain of the spec's coordinates with extra auxiliary generators.
pub fn spec_domain(spec: &VectorialSpec, aux: impl IntoIterator<Item = Generator>) -> Result<Arc<SuperDomain>> {
    let names = coordinate_names(spec);
    let even: Vec<(&str, Vec<i64>)> = names.iter().map(|(s, i)| (s.as_str(), i.clone())).collect();
    SuperDomain::new(&even, &[], aux)
}

/// Basis of the truncated algebra over `domain`, with the generating
/// functions for the Hamiltonian family.
pub fn algebra_basis(spec: &VectorialSpec, domain: &Arc<SuperDomain>) -> Result<(Vec<DiffOp>, Option<Vec<SuperScalar>>)> {
    let (n, d) = (spec.n, spec.degree);
    Ok(match spec.family {
        VectorialFamily::Vect => (vect_basis(n, d).iter().map(|f| f.to_diffop(domain)).collect(), None),
        VectorialFamily::Svect => (svect_basis(n, d).iter().map(|f| f.to_diffop(domain)).collect(), None),
        VectorialFamily::H => {
            let gens: Vec<SuperScalar> = exponent_vectors(n, 1, d + 1)
                .iter()
                .map(|e| coordinate_monomial(domain, e))
                .collect();
            let fields: Vec<DiffOp> = gens.iter().map(|f| hamiltonian_field(domain, f)).collect::<Result<_>>()?;
            (fields, Some(gens))
        }
    })
}

/// `count` fields of the truncated algebra with coordinates drawn
/// uniformly from `-3..=3` in its basis.
pub fn sample_fields(basis: &[DiffOp], count: usize, rng: &mut impl Rng) -> Result<Vec<DiffOp>> {
    let first = basis.first().ok_or_else(|| Error::Precondition("empty basis".into()))?;
    (0..count)
        .map(|_| {
            basis.iter().try_fold(DiffOp::zero(first.domain()), |acc, b| {
                let c: i64 = rng.gen_range(-3..=3);
                acc.try_add(&b.scale(&Rational::from_integer(c)))
            })
        })
        .collect()
}

impl GenericDerivation {
    pub fn new(spec: VectorialSpec) -> Result<GenericDerivation> {
        let n = spec.n;
        let count = algebra_basis(&spec, &spec_domain(&spec, [])?)?.0.len();
        let aux = (1..=count as i64).map(|k| Generator {
            name: "eta".into(),
            index: vec![k],
            parity: Parity::Odd,
        });
        let domain = spec_domain(&spec, aux)?;
        let (basis, generating) = algebra_basis(&spec, &domain)?;
        let op = GenericDerivation::combine(&domain, &basis, n);
        Ok(GenericDerivation {
            spec,
            domain,
            basis,
            generating,
            op,
        })
    }

    fn combine(domain: &Arc<SuperDomain>, basis: &[DiffOp], n: usize) -> DiffOp {
        let mut comps = vec![SuperScalar::zero(domain.table()); n];
        for (k, b) in basis.iter().enumerate() {
            let eta = SuperScalar::generator(domain.table(), (n + k) as u16);
            for (j, c) in comps.iter_mut().enumerate() {
                let u = b.field_coefficient(j);
                if !u.is_zero() {
                    *c = &*c + &(&eta * &u);
                }
            }
        }
        DiffOp::vector_field(domain, &comps)
    }

    /// Generator id of `η_k` (zero-based basis index).
    pub fn eta_id(&self, k: usize) -> u16 {
        (self.domain.n_coords() + k) as u16
    }

    /// Coefficient of `η_S` (`S` increasing) in an operator built from `D`.
    pub fn eta_coefficient(&self, op: &DiffOp, set: &[usize]) -> DiffOp {
        let mask = set.iter().fold(0u128, |m, &k| m | 1u128 << self.eta_id(k));
        let coord_ids = self.domain.n_coords() as u16;
        let table = self.domain.table();
        op.map_coefficients(|c| {
            SuperScalar::from_terms(
                table,
                c.terms()
                    .iter()
                    .filter(|(m, _)| m.odd_mask() == mask)
                    .map(|(m, k)| {
                        let even = m.even_part().iter().copied().filter(|&(id, _)| id < coord_ids);
                        (Monomial::from_parts(even, 0), k.clone())
                    }),
            )
        })
    }

    /// `D^1 .. D^max`, each as `D ∘ D^{k-1}`.
    pub fn powers(&self, max: u32) -> Result<Vec<DiffOp>> {
        let mut out: Vec<DiffOp> = Vec::with_capacity(max as usize);
        for _ in 0..max {
            let next = match out.last() {
                None => self.op.clone(),
                Some(prev) => self.op.compose(prev)?,
            };
            out.push(next);
            if out.last().is_some_and(|p| p.is_zero()) {
                break;
            }
        }
        Ok(out)
    }
}

pub fn generic_odd_derivation(spec: &VectorialSpec) -> Result<GenericDerivation> {
    GenericDerivation::new(*spec)
}

pub fn classify(op: &DiffOp) -> Classification {
    match op.order() {
        None => Classification::Zero,
        Some(k) if k <= 1 => Classification::Commutator,
        Some(_) => Classification::HigherOrder,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalItem {
    pub n: usize,
    pub classification: Classification,
    pub order: Option<usize>,
    /// For order-one outputs on divergence-free families.
    pub divergence_free: Option<bool>,
    pub terms: usize,
    pub millis: f64,
}

/// Classification of `D^N` for each `N` in range, at the spec's degree cap.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalScan {
    pub spec: String,
    pub degree: usize,
    pub items: Vec<CriticalItem>,
}

impl CriticalScan {
    pub fn item(&self, n: usize) -> Option<&CriticalItem> {
        self.items.iter().find(|i| i.n == n)
    }
}

/// Classifies `D^N` as zero, order at most one, or higher order, for
/// `N = n_min..=n_max`.
pub fn critical_scan(spec: &VectorialSpec, n_min: usize, n_max: usize, long: bool) -> Result<CriticalScan> {
    if spec.is_long_running() && !long {
        return Err(Error::LongRunningGated(spec.to_string()));
    }
    if n_min == 0 || n_min > n_max {
        return Err(Error::Precondition("need 1 <= nmin <= nmax".into()));
    }
    let g = GenericDerivation::new(*spec)?;
    let mut items = Vec::new();
    let mut power: Option<DiffOp> = None;
    for k in 1..=n_max {
        let start = Instant::now();
        let next = match &power {
            Some(p) if p.is_zero() => p.clone(),
            Some(p) => g.op.compose(p)?,
            None => g.op.clone(),
        };
        let millis = start.elapsed().as_secs_f64() * 1e3;
        if k >= n_min {
            let classification = classify(&next);
            let divergence_free = match (classification, spec.family) {
                (Classification::Commutator, VectorialFamily::Svect | VectorialFamily::H) => {
                    Some(divergence(&next)?.is_zero())
                }
                _ => None,
            };
            items.push(CriticalItem {
                n: k,
                classification,
                order: next.order(),
                divergence_free,
                terms: next.num_terms(),
                millis,
            });
        }
        power = Some(next);
    }
    Ok(CriticalScan {
        spec: spec.to_string(),
        degree: spec.degree,
        items,
    })
}
