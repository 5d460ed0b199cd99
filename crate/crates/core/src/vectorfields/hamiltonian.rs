use std::sync::Arc;

use super::diffop::{Deriv, DiffOp};
use super::domain::SuperDomain;
use super::formulas::row_product;
use crate::error::{Error, Result};
use crate::supermat::leibniz_det;
use crate::superscalar::SuperScalar;

fn half(domain: &SuperDomain) -> Result<usize> {
    if domain.n_odd() != 0 || domain.n_even() % 2 != 0 {
        return Err(Error::Precondition(
            "Hamiltonian fields need an even number of even coordinates p..., q...".into(),
        ));
    }
    Ok(domain.n_even() / 2)
}

/// `X_f = Σ_i (∂_{p_i} f ∂_{q_i} - ∂_{q_i} f ∂_{p_i})`; the first half of
/// the coordinates are the `p_i`, the second half the `q_i`.
pub fn hamiltonian_field(domain: &Arc<SuperDomain>, f: &SuperScalar) -> Result<DiffOp> {
    let h = half(domain)?;
    let mut comps = vec![SuperScalar::zero(domain.table()); 2 * h];
    for i in 0..h {
        let (p, q) = (domain.coord_id(i), domain.coord_id(h + i));
        comps[h + i] = f.d_even(p);
        comps[i] = -f.d_even(q);
    }
    Ok(DiffOp::vector_field(domain, &comps))
}

/// `{f, g} = Σ_i (∂_{p_i} f ∂_{q_i} g - ∂_{q_i} f ∂_{p_i} g)`, so that
/// `X_f(g) = {f, g}` and `[X_f, X_g] = X_{{f,g}}`.
pub fn poisson(domain: &Arc<SuperDomain>, f: &SuperScalar, g: &SuperScalar) -> Result<SuperScalar> {
    let h = half(domain)?;
    let mut acc = SuperScalar::zero(domain.table());
    for i in 0..h {
        let (p, q) = (domain.coord_id(i), domain.coord_id(h + i));
        acc = &acc + &(&(&f.d_even(p) * &g.d_even(q)) - &(&f.d_even(q) * &g.d_even(p)));
    }
    Ok(acc)
}

/// Rows of the five-point determinant on `h(2)`:
/// `∂_q, ∂_p, ∂_p², ∂_q², ∂_p∂_q`, as `(p, q)` exponents.
pub const H5_ROWS: [[u16; 2]; 5] = [[0, 1], [1, 0], [2, 0], [0, 2], [1, 1]];

fn check_plane(domain: &SuperDomain) -> Result<()> {
    if half(domain)? != 1 {
        return Err(Error::Precondition("the five-point determinant lives on h(2)".into()));
    }
    Ok(())
}

/// `det (R_i f_j)` for the five rows of [`H5_ROWS`].
pub fn h5_determinant(domain: &Arc<SuperDomain>, fs: &[SuperScalar; 5]) -> Result<SuperScalar> {
    check_plane(domain)?;
    let grid: Vec<Vec<SuperScalar>> = H5_ROWS
        .iter()
        .map(|r| {
            let d = Deriv::from_parts(r, 0);
            fs.iter().map(|f| DiffOp::apply_deriv(domain, &d, f)).collect()
        })
        .collect();
    if grid.iter().flatten().any(|e| !e.has_parity(crate::superscalar::Parity::Even)) {
        return Err(Error::OddEntry);
    }
    Ok(leibniz_det(domain.table(), 5, |i, j| &grid[i][j]))
}

/// Generating function `Σ_S η_S det(R_i f_{S_j})` of the determinant over
/// an odd generating function `F = Σ η_b f_b`.
pub fn h5_generating(domain: &Arc<SuperDomain>, generating: &SuperScalar) -> Result<SuperScalar> {
    check_plane(domain)?;
    let rows: Vec<(usize, Deriv)> = H5_ROWS.iter().map(|r| (0, Deriv::from_parts(r, 0))).collect();
    Ok(row_product(domain, &rows, std::slice::from_ref(generating)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn plane() -> Arc<SuperDomain> {
        SuperDomain::new(&[("p", vec![]), ("q", vec![])], &[], []).unwrap()
    }

    #[test]
    fn field_of_p_is_d_dq() {
        let dom = plane();
        let p = dom.coord(0);
        assert_eq!(hamiltonian_field(&dom, &p).unwrap(), DiffOp::partial(&dom, 1));
    }

    #[test]
    fn field_of_pq() {
        let dom = plane();
        let (p, q) = (dom.coord(0), dom.coord(1));
        let x = hamiltonian_field(&dom, &(&p * &q)).unwrap();
        // ∂_p(pq) ∂_q - ∂_q(pq) ∂_p = q ∂_q - p ∂_p
        assert_eq!(x, DiffOp::vector_field(&dom, &[-p.clone(), q.clone()]));
    }

    #[test]
    fn bracket_of_coordinates() {
        let dom = plane();
        let (p, q) = (dom.coord(0), dom.coord(1));
        let xp = hamiltonian_field(&dom, &p).unwrap();
        let xq = hamiltonian_field(&dom, &q).unwrap();
        let pb = poisson(&dom, &p, &q).unwrap();
        assert_eq!(pb.as_rational(), Some(Rational::ONE));
        // X_1 = 0 and the two translations commute
        assert_eq!(xp.commutator(&xq).unwrap(), hamiltonian_field(&dom, &pb).unwrap());
        assert!(hamiltonian_field(&dom, &pb).unwrap().is_zero());
    }

    #[test]
    fn equal_columns_vanish() {
        let dom = plane();
        let (p, q) = (dom.coord(0), dom.coord(1));
        let f = &p * &q;
        let d = h5_determinant(&dom, &[f.clone(), f, &p * &p, &q * &q, p]).unwrap();
        assert!(d.is_zero());
    }
}
