use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::supermat::{GenericElement, MatrixAlgebraSpec, SuperMatrix};
use crate::superscalar::{GeneratorTable, Monomial, Parity, SuperScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Closure {
    #[serde(rename = "lands-in-spec")]
    LandsInSpec,
    #[serde(rename = "leaves-spec")]
    LeavesSpec,
}

impl Closure {
    pub fn as_str(self) -> &'static str {
        match self {
            Closure::LandsInSpec => "lands-in-spec",
            Closure::LeavesSpec => "leaves-spec",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanItem {
    pub k: usize,
    /// `X^k = 0`, i.e. `a_k` vanishes identically on the algebra.
    pub zero: bool,
    /// Whether every value of `a_k` lies in the algebra again.
    pub closure: Option<Closure>,
    pub millis: f64,
}

/// Which antisymmetrizers survive on an algebra and which of them map the
/// algebra into itself.
#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub spec: String,
    pub k_max: usize,
    pub items: Vec<SpanItem>,
    /// `k` with `a_k ≢ 0` whose values stay in the algebra.
    pub nonvanishing: Vec<usize>,
    /// Least `r` with `a_r ≡ 0`, if any up to `k_max`.
    pub minimal_identity: Option<usize>,
}

/// The matrices `c_M` in `X^k = Σ_M θ^M Δ^{e(M)} c_M`, where `e(M)` is the
/// number of even arguments encoded by the `θ`-monomial `M`, each with the
/// parity of its odd arguments. Up to sign and multiplicity these are the
/// values of `a_k` on basis tuples.
pub fn theta_coefficients(xk: &SuperMatrix) -> Result<Vec<(Monomial, SuperMatrix)>> {
    let mut monos: FxHashSet<Monomial> = FxHashSet::default();
    for e in xk.entries() {
        monos.extend(e.terms().iter().map(|(m, _)| m.clone()));
    }
    let mut monos: Vec<Monomial> = monos.into_iter().collect();
    monos.sort();
    let (m, n) = xk.format();
    let empty = GeneratorTable::empty();
    let mut out = Vec::with_capacity(monos.len());
    for mono in monos {
        // θ_b odd ⇔ b even; each even argument contributes one Δ factor
        let even_args = mono.odd_degree();
        let odd_args: u32 = mono.even_part().iter().map(|&(_, k)| k as u32).sum();
        let coef = SuperMatrix::from_fn(&empty, m, n, |a, b| SuperScalar::constant(&empty, xk.entry(a, b).coefficient(&mono)));
        let coef = if even_args % 2 == 1 { coef.delta_twist() } else { coef };
        let coef = coef.with_parity(Parity::from_bit(odd_args))?;
        out.push((mono, coef));
    }
    Ok(out)
}

/// Checks each `θ`-coefficient of `X^k` against the membership predicate.
fn closure_of(g: &GenericElement, xk: &SuperMatrix) -> Result<Closure> {
    for (_, coef) in theta_coefficients(xk)? {
        if !g.spec.contains(&coef)? {
            return Ok(Closure::LeavesSpec);
        }
    }
    Ok(Closure::LandsInSpec)
}

/// Whether all values of `a_k` on the algebra lie in it again; `None` when
/// `a_k` vanishes identically.
pub fn closure(spec: &MatrixAlgebraSpec, k: u32) -> Result<Option<Closure>> {
    let g = GenericElement::new(*spec)?;
    let xk = g.matrix.pow(k)?;
    if xk.is_zero() {
        return Ok(None);
    }
    closure_of(&g, &xk).map(Some)
}

pub fn span_scan(spec: &MatrixAlgebraSpec, k_max: usize) -> Result<SpanReport> {
    if k_max < 2 {
        return Err(Error::Precondition("k_max must be at least 2".into()));
    }
    let g = GenericElement::new(*spec)?;
    let mut items = Vec::new();
    let mut power = g.matrix.clone();
    let mut vanished = false;
    for k in 2..=k_max {
        let start = std::time::Instant::now();
        if !vanished {
            power = power.try_mul(&g.matrix)?;
            vanished = power.is_zero();
        }
        let closure = if vanished { None } else { Some(closure_of(&g, &power)?) };
        items.push(SpanItem {
            k,
            zero: vanished,
            closure,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let nonvanishing = items
        .iter()
        .filter(|i| i.closure == Some(Closure::LandsInSpec))
        .map(|i| i.k)
        .collect();
    let minimal_identity = items.iter().find(|i| i.zero).map(|i| i.k);
    Ok(SpanReport {
        spec: spec.to_string(),
        k_max,
        items,
        nonvanishing,
        minimal_identity,
    })
}
