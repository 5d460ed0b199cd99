use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::diffop::DiffOp;
use super::formulas::GenericFieldFamily;
use super::generic::{algebra_basis, sample_fields, spec_domain, GenericDerivation};
use super::spec::VectorialSpec;
use crate::antisym::{permutation_sum, OperatorTuple};
use crate::error::{Error, Result};

/// `a_N(X_1, …, X_N)` as an operator on functions, by the permutation sum.
pub fn n_commutator(fields: &OperatorTuple, n: usize) -> Result<DiffOp> {
    let ops: Vec<DiffOp> = fields
        .ops
        .iter()
        .map(|o| o.as_diff().cloned())
        .collect::<Option<_>>()
        .ok_or(Error::MixedOperatorKinds)?;
    if ops.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: ops.len() });
    }
    permutation_sum(&ops, &fields.parities)
}

/// `ad_D^k (Y)`.
pub fn ad_power(d: &DiffOp, k: usize, y: &DiffOp) -> Result<DiffOp> {
    let mut cur = y.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = d.commutator(&cur)?;
    }
    Ok(cur)
}

/// Whether `A_k(ad_{X_1}, …, ad_{X_k})(Y)` vanishes at the spec's
/// truncation degree.
///
/// With `samples == 0` the check is symbolic: `ad_D^k(Y) = 0` for the
/// generic odd derivation `D` and every basis field `Y`. Otherwise
/// `samples` random integer tuples `(X_1..X_k, Y)` are drawn from the
/// seeded ChaCha8 generator.
pub fn adjoint_identity_check(spec: &VectorialSpec, k: usize, samples: usize, seed: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if samples == 0 {
        let g = GenericDerivation::new(*spec)?;
        for y in &g.basis {
            if !ad_power(&g.op, k, y)?.is_zero() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let domain = spec_domain(spec, [])?;
    let (basis, _) = algebra_basis(spec, &domain)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let fields = sample_fields(&basis, k, &mut rng)?;
        let y = sample_fields(&basis, 1, &mut rng)?.remove(0);
        if !sampled_adjoint(&fields, &y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A_k(ad_{X_1}, …, ad_{X_k})(Y)` through one odd `η_i` per field.
pub fn sampled_adjoint(fields: &[DiffOp], y: &DiffOp) -> Result<DiffOp> {
    let fam = GenericFieldFamily::from_fields(fields)?;
    let table = fam.domain.table().clone();
    let y = DiffOp::from_terms(
        &fam.domain,
        y.terms()
            .iter()
            .map(|(d, c)| Ok((d.clone(), c.with_table(&table)?)))
            .collect::<Result<Vec<_>>>()?,
    );
    fam.top_coefficient(&ad_power(&fam.field(), fields.len(), &y)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjointKind {
    Zero,
    /// `Y ↦ m·Y` for one function `m`.
    Multiplication,
    Other,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointItem {
    pub k: usize,
    pub kind: AdjointKind,
}

/// For each `k ≤ k_max`, whether `A_k(ad)` vanishes, acts by multiplication
/// by a function, or neither, on the truncated algebra. Exploratory only.
pub fn adjoint_degree_scan(spec: &VectorialSpec, k_max: usize) -> Result<Vec<AdjointItem>> {
    let g = GenericDerivation::new(*spec)?;
    let probe = DiffOp::partial(&g.domain, 0);
    let mut out = Vec::new();
    for k in 1..=k_max {
        let images: Vec<DiffOp> = g.basis.iter().map(|y| ad_power(&g.op, k, y)).collect::<Result<_>>()?;
        let kind = if images.iter().all(|i| i.is_zero()) {
            AdjointKind::Zero
        } else {
            let at_probe = ad_power(&g.op, k, &probe)?;
            let m = at_probe.field_coefficient(0);
            let scalar = at_probe.try_sub(&probe.left_mul(&m))?.is_zero()
                && g.basis.iter().zip(&images).all(|(y, i)| *i == y.left_mul(&m));
            if scalar {
                AdjointKind::Multiplication
            } else {
                AdjointKind::Other
            }
        };
        out.push(AdjointItem { k, kind });
    }
    Ok(out)
}
