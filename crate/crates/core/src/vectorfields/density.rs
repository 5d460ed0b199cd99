use super::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::superscalar::SuperScalar;

/// `Σ_i (-1)^{p(u_i) p(x_i)} ∂_i u_i` for `X = Σ u_i ∂_i`.
pub fn divergence(x: &DiffOp) -> Result<SuperScalar> {
    if !x.is_vector_field() {
        return Err(Error::Precondition("divergence of a non-vector field".into()));
    }
    let dom = x.domain();
    let mut acc = SuperScalar::zero(dom.table());
    for i in 0..dom.n_coords() {
        let u = x.field_coefficient(i);
        if u.is_zero() {
            continue;
        }
        let id = dom.coord_id(i);
        let term = if dom.coord_parity(i).is_odd() {
            let signed = SuperScalar::from_terms(
                dom.table(),
                u.terms()
                    .iter()
                    .map(|(m, c)| (m.clone(), if m.parity().is_odd() { -c } else { c.clone() })),
            );
            signed.d_odd(id)
        } else {
            u.d_even(id)
        };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Action on `λ`-densities: `X(f vol^λ) = (X(f) + f λ Div X) vol^λ`;
/// returns the coefficient of `vol^λ`.
pub fn lambda_density_action(x: &DiffOp, f: &SuperScalar, lambda: &Rational) -> Result<SuperScalar> {
    let div = divergence(x)?;
    let f = f.with_table(x.domain().table())?;
    Ok(&x.apply(&f) + &(&f * &div).scale(lambda))
}
