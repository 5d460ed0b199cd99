use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::diffop::{Deriv, DiffOp};
use super::domain::SuperDomain;
use super::generic::GenericDerivation;
use super::spec::{VectorialFamily, VectorialSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::supermat::leibniz_det;
use crate::superscalar::{Generator, Monomial, Parity, SuperScalar};

/// `∏_r ∂^{β_r} U_{a_r}` in row order, for rows `(a_r, β_r)`.
///
/// With odd `U_a = Σ_b η_b u_{b,a}` this is the generating function
/// `Σ_S η_S det(∂^{β_r} u_{S_j, a_r})` of the row determinant.
pub fn row_product(domain: &Arc<SuperDomain>, rows: &[(usize, Deriv)], comps: &[SuperScalar]) -> SuperScalar {
    let mut acc = SuperScalar::one(domain.table());
    for (a, beta) in rows {
        acc = &acc * &DiffOp::apply_deriv(domain, beta, &comps[*a]);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Vector fields `X_i = Σ_j u_{i,j} ∂_j` packed as odd components
/// `U_j = Σ_i η_i u_{i,j}`.
///
/// Built either from the generic derivation of `vect(n)` (one `η` per basis
/// field, shared by all arguments) or from concrete fields (one `η` per
/// field). In both cases multilinear alternating expressions in the fields
/// become polynomials in the `η`.
#[derive(Debug, Clone)]
pub struct GenericFieldFamily {
    pub domain: Arc<SuperDomain>,
    pub n: usize,
    pub components: Vec<SuperScalar>,
    /// Domain of the concrete fields, when built from them.
    source: Option<Arc<SuperDomain>>,
    count: usize,
}

impl GenericFieldFamily {
    /// Generic fields of `vect(n)` with coefficients of degree at most `d`.
    pub fn generic(n: usize, d: usize) -> Result<GenericFieldFamily> {
        let g = GenericDerivation::new(VectorialSpec::new(VectorialFamily::Vect, n, d)?)?;
        Ok(GenericFieldFamily::from_derivation(&g))
    }

    pub fn from_derivation(g: &GenericDerivation) -> GenericFieldFamily {
        let n = g.domain.n_even();
        GenericFieldFamily {
            domain: g.domain.clone(),
            n,
            components: (0..n).map(|j| g.op.field_coefficient(j)).collect(),
            source: None,
            count: g.basis.len(),
        }
    }

    /// One fresh odd `η_i` per field.
    pub fn from_fields(fields: &[DiffOp]) -> Result<GenericFieldFamily> {
        let first = fields.first().ok_or_else(|| Error::Precondition("no fields".into()))?;
        let src = first.domain().clone();
        if src.n_odd() != 0 {
            return Err(Error::Precondition("fields must live on an even domain".into()));
        }
        for f in fields {
            if !SuperDomain::same(&src, f.domain()) {
                return Err(Error::DomainMismatch);
            }
            if !f.is_vector_field() {
                return Err(Error::Precondition("expected vector fields".into()));
            }
        }
        let aux = (1..=fields.len() as i64).map(|i| Generator {
            name: "eta".into(),
            index: vec![i],
            parity: Parity::Odd,
        });
        let domain = src.with_aux(aux)?;
        let base = src.table().len() as u16;
        let n = src.n_even();
        let mut components = vec![SuperScalar::zero(domain.table()); n];
        for (i, f) in fields.iter().enumerate() {
            let eta = SuperScalar::generator(domain.table(), base + i as u16);
            for (j, c) in components.iter_mut().enumerate() {
                let u = f.field_coefficient(j).with_table(domain.table())?;
                *c = &*c + &(&eta * &u);
            }
        }
        Ok(GenericFieldFamily {
            domain,
            n,
            components,
            source: Some(src),
            count: fields.len(),
        })
    }

    /// Number of `η` generators.
    pub fn count(&self) -> usize {
        self.count
    }

    /// The odd field `Σ_j U_j ∂_j`.
    pub fn field(&self) -> DiffOp {
        DiffOp::vector_field(&self.domain, &self.components)
    }

    /// For a family built from `k` concrete fields: the coefficient of
    /// `η_1⋯η_k`, back on the fields' own domain.
    pub fn top_coefficient(&self, op: &DiffOp) -> Result<DiffOp> {
        let src = self
            .source
            .as_ref()
            .ok_or_else(|| Error::Precondition("family was not built from concrete fields".into()))?;
        let base = src.table().len() as u32;
        let mask: u128 = ((1u128 << self.count) - 1) << base;
        Ok(DiffOp::from_terms(
            src,
            op.terms().iter().map(|(d, c)| {
                let terms = c
                    .terms()
                    .iter()
                    .filter(|(m, _)| m.odd_mask() == mask)
                    .map(|(m, k)| (Monomial::from_parts(m.even_part().iter().copied(), 0), k.clone()));
                (d.clone(), SuperScalar::from_terms(src.table(), terms))
            }),
        ))
    }
}

fn unit_exponents(n: usize, i: usize) -> Vec<u16> {
    let mut e = vec![0u16; n];
    e[i] += 1;
    e
}

/// First-order part of `a_k` as the sum over `a ∈ [n]^k` and
/// `s_i ∈ {i+1..k}` of the determinants whose row `r` is
/// `∂^{b_r} u_{·,a_r}` with `b_r = Σ_{s_i = r} e_{a_i}`, times `∂_{a_k}`.
///
/// Choices with the same pending derivatives on the remaining rows are
/// merged, which keeps the `n^k (k-1)!` summands tractable.
pub fn kcomm_first_order(family: &GenericFieldFamily, k: usize) -> Result<DiffOp> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let n = family.n;
    let dom = &family.domain;
    let table = dom.table();
    let mut states: FxHashMap<Vec<u16>, SuperScalar> = FxHashMap::default();
    states.insert(vec![0u16; k * n], SuperScalar::one(table));
    let mut out = vec![SuperScalar::zero(table); n];
    let mut cache: FxHashMap<(usize, Vec<u16>), SuperScalar> = FxHashMap::default();
    for row in 0..k {
        let mut next: FxHashMap<Vec<u16>, SuperScalar> = FxHashMap::default();
        let mut keys: Vec<&Vec<u16>> = states.keys().collect();
        keys.sort();
        for pending in keys {
            let prefix = &states[pending];
            let beta = pending[row * n..(row + 1) * n].to_vec();
            for a in 0..n {
                let factor = cache
                    .entry((a, beta.clone()))
                    .or_insert_with(|| DiffOp::apply_deriv(dom, &Deriv::from_parts(&beta, 0), &family.components[a]))
                    .clone();
                if factor.is_zero() {
                    continue;
                }
                let prod = prefix * &factor;
                if prod.is_zero() {
                    continue;
                }
                if row + 1 == k {
                    out[a] = &out[a] + &prod;
                    continue;
                }
                for s in row + 1..k {
                    let mut p = pending.clone();
                    for (slot, e) in p[s * n..(s + 1) * n].iter_mut().zip(unit_exponents(n, a)) {
                        *slot += e;
                    }
                    match next.get_mut(&p) {
                        Some(v) => *v = &*v + &prod,
                        None => {
                            next.insert(p, prod.clone());
                        }
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    Ok(DiffOp::vector_field(dom, &out))
}

/// One determinant of a two-variable formula: a coefficient and six rows
/// `(component, derivative exponents)` with zero-based components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetTerm {
    pub coefficient: i64,
    pub rows: Vec<(usize, [u16; 2])>,
}

impl DetTerm {
    /// Swaps derivative subscripts `1 ↔ 2` and the component index of
    /// every row; the row order is kept.
    pub fn mirrored(&self) -> DetTerm {
        DetTerm {
            coefficient: self.coefficient,
            rows: self.rows.iter().map(|&(a, [e1, e2])| (1 - a, [e2, e1])).collect(),
        }
    }

    fn generating(&self, family: &GenericFieldFamily) -> SuperScalar {
        let rows: Vec<(usize, Deriv)> = self.rows.iter().map(|(a, e)| (*a, Deriv::from_parts(e, 0))).collect();
        row_product(&family.domain, &rows, &family.components)
            .scale(&Rational::from_integer(self.coefficient))
    }
}

/// The seven determinants giving the `∂_1` coefficient of the
/// 6-commutator on `vect(2)`.
pub fn vect6_terms() -> Vec<DetTerm> {
    // (component, [∂_1 exponent, ∂_2 exponent]), components zero-based
    const U1: (usize, [u16; 2]) = (0, [0, 0]);
    const U2: (usize, [u16; 2]) = (1, [0, 0]);
    let d = |a: usize, e1: u16, e2: u16| (a - 1, [e1, e2]);
    let rows = |tail: [(usize, [u16; 2]); 4]| {
        let mut r = vec![U1, U2];
        r.extend(tail);
        r
    };
    vec![
        DetTerm { coefficient: 1, rows: rows([d(1, 0, 1), d(2, 1, 0), d(2, 0, 1), d(2, 0, 2)]) },
        DetTerm { coefficient: 1, rows: rows([d(1, 1, 0), d(1, 0, 1), d(2, 0, 1), d(1, 2, 0)]) },
        DetTerm { coefficient: 1, rows: rows([d(1, 1, 0), d(1, 0, 1), d(2, 1, 0), d(2, 0, 2)]) },
        DetTerm { coefficient: -2, rows: rows([d(1, 0, 1), d(2, 1, 0), d(2, 0, 1), d(1, 1, 1)]) },
        DetTerm { coefficient: -2, rows: rows([d(1, 1, 0), d(1, 0, 1), d(2, 1, 0), d(1, 1, 1)]) },
        DetTerm { coefficient: 3, rows: rows([d(1, 1, 0), d(2, 1, 0), d(2, 0, 1), d(1, 0, 2)]) },
        DetTerm { coefficient: -2, rows: rows([d(1, 1, 0), d(1, 0, 1), d(2, 0, 1), d(2, 1, 1)]) },
    ]
}

/// `c ∂_1 + c' ∂_2` where `c` is the sum of the seven determinants and
/// `c'` is `c` with subscripts mirrored, on the family's generating
/// functions.
pub fn vect6_formula(family: &GenericFieldFamily) -> Result<DiffOp> {
    if family.n != 2 {
        return Err(Error::Precondition("the 6-commutator formula is for two variables".into()));
    }
    let table = family.domain.table();
    let mut c1 = SuperScalar::zero(table);
    let mut c2 = SuperScalar::zero(table);
    for t in vect6_terms() {
        c1 = &c1 + &t.generating(family);
        c2 = &c2 + &t.mirrored().generating(family);
    }
    Ok(DiffOp::vector_field(&family.domain, &[c1, c2]))
}

/// `det (f_j^{(i)})_{0 ≤ i < k}` in one variable.
pub fn wronskian(domain: &Arc<SuperDomain>, fs: &[SuperScalar]) -> Result<SuperScalar> {
    if domain.n_coords() != 1 {
        return Err(Error::Precondition("Wronskian needs one even variable".into()));
    }
    let k = fs.len();
    let id = domain.coord_id(0);
    let mut grid: Vec<Vec<SuperScalar>> = vec![fs.to_vec()];
    for i in 1..k {
        let prev = &grid[i - 1];
        grid.push(prev.iter().map(|f| f.d_even(id)).collect());
    }
    Ok(leibniz_det(domain.table(), k, |i, j| &grid[i][j]))
}

/// `Σ_s sgn(s) ad_{X_{s(1)}} ⋯ ad_{X_{s(k)}} (Y)` for even fields.
pub fn adjoint_antisymmetrizer(fields: &[DiffOp], y: &DiffOp) -> Result<DiffOp> {
    fn rec(fields: &[DiffOp], used: &mut Vec<bool>, cur: &DiffOp, sign: bool) -> Result<DiffOp> {
        // fills slots right to left; `sign` tracks inversions so far
        let k = fields.len();
        let left = used.iter().filter(|u| !**u).count();
        if left == 0 {
            return Ok(if sign { cur.scale(&Rational::from_integer(-1)) } else { cur.clone() });
        }
        let mut acc = DiffOp::zero(cur.domain());
        for j in 0..k {
            if used[j] {
                continue;
            }
            // slots to the right already hold the used indices; inversions
            // with them are the used indices smaller than j
            let inv = (0..j).filter(|&a| used[a]).count() % 2 == 1;
            used[j] = true;
            let next = fields[j].commutator(cur)?;
            if !next.is_zero() {
                acc = acc.try_add(&rec(fields, used, &next, sign ^ inv)?)?;
            }
            used[j] = false;
        }
        Ok(acc)
    }
    let mut used = vec![false; fields.len()];
    rec(fields, &mut used, y, false)
}

/// Outcome of the subcritical 3-antisymmetrizer on `vect(1)`.
#[derive(Debug, Clone)]
pub struct Subcritical {
    /// `A_3(ad_{X_1}, ad_{X_2}, ad_{X_3})(Y)`.
    pub image: DiffOp,
    /// The function `m` with `A_3(...)(∂) = m ∂`.
    pub multiplier: SuperScalar,
    pub wronskian: SuperScalar,
    /// `image = m·Y` and `m = -2 W`.
    pub matches: bool,
}

impl Subcritical {
    /// The order-zero operator of multiplication by the multiplier.
    pub fn operator(&self) -> DiffOp {
        DiffOp::multiplication(self.image.domain(), self.multiplier.clone())
    }
}

pub fn subcritical_eval(fields: &[DiffOp; 3], y: &DiffOp) -> Result<Subcritical> {
    let dom = y.domain().clone();
    if dom.n_coords() != 1 {
        return Err(Error::Precondition("subcritical evaluation is on vect(1)".into()));
    }
    for f in fields.iter().chain([y]) {
        if !SuperDomain::same(&dom, f.domain()) {
            return Err(Error::DomainMismatch);
        }
        if !f.is_vector_field() {
            return Err(Error::Precondition("expected vector fields".into()));
        }
    }
    let image = adjoint_antisymmetrizer(fields, y)?;
    let probe = adjoint_antisymmetrizer(fields, &DiffOp::partial(&dom, 0))?;
    let multiplier = probe.field_coefficient(0);
    let coeffs: Vec<SuperScalar> = fields.iter().map(|f| f.field_coefficient(0)).collect();
    let w = wronskian(&dom, &coeffs)?;
    let matches = probe.is_vector_field()
        && image == y.left_mul(&multiplier)
        && multiplier == w.scale(&Rational::from_integer(-2));
    Ok(Subcritical {
        image,
        multiplier,
        wronskian: w,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Arc<SuperDomain> {
        SuperDomain::new(&[("t", vec![])], &[], []).unwrap()
    }

    #[test]
    fn sl2_triple_is_subcritical() {
        let dom = line();
        let t = dom.coord(0);
        let one = SuperScalar::one(dom.table());
        let fields = [
            DiffOp::vector_field(&dom, &[one]),
            DiffOp::vector_field(&dom, &[t.clone()]),
            DiffOp::vector_field(&dom, &[&t * &t]),
        ];
        let y = DiffOp::vector_field(&dom, &[t.pow(3)]);
        let s = subcritical_eval(&fields, &y).unwrap();
        assert_eq!(s.wronskian.as_rational(), Some(Rational::from_integer(2)));
        assert_eq!(s.multiplier.as_rational(), Some(Rational::from_integer(-4)));
        assert!(s.matches);
        assert_eq!(s.image, y.scale(&Rational::from_integer(-4)));
    }

    #[test]
    fn repeated_field_gives_zero() {
        let dom = line();
        let t = dom.coord(0);
        let x = DiffOp::vector_field(&dom, &[&t + &SuperScalar::one(dom.table())]);
        let fields = [x.clone(), x, DiffOp::vector_field(&dom, &[t.pow(2)])];
        let s = subcritical_eval(&fields, &DiffOp::partial(&dom, 0)).unwrap();
        assert!(s.image.is_zero() && s.wronskian.is_zero() && s.matches);
    }

    #[test]
    fn kcomm_two_is_commutator() {
        let dom = line();
        let t = dom.coord(0);
        let x = DiffOp::vector_field(&dom, &[&t * &t]);
        let y = DiffOp::vector_field(&dom, &[&t + &SuperScalar::one(dom.table())]);
        let fam = GenericFieldFamily::from_fields(&[x.clone(), y.clone()]).unwrap();
        let k2 = fam.top_coefficient(&kcomm_first_order(&fam, 2).unwrap()).unwrap();
        assert_eq!(k2, x.commutator(&y).unwrap());
    }

    #[test]
    fn mirror_is_an_involution() {
        for t in vect6_terms() {
            assert_eq!(t.mirrored().mirrored(), t);
            assert_eq!(t.rows.len(), 6);
        }
    }
}
