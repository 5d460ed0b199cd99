use crate::error::{Error, Result};
use crate::superscalar::Parity;

use super::matrix::SuperMatrix;

/// A nondegenerate bilinear form given by a homogeneous rational Gram
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: SuperMatrix,
    parity: Parity,
}

impl BilinearForm {
    pub fn new(gram: SuperMatrix) -> Result<BilinearForm> {
        let parity = gram.parity()?;
        if gram.to_rationals().is_none() {
            return Err(Error::Precondition("gram matrix must be rational".into()));
        }
        let (m, n) = gram.format();
        let det = gram.clone().with_parity(parity)?;
        // an odd Gram matrix is invertible iff its off-diagonal blocks are
        let full = SuperMatrix::from_rationals(m + n, 0, &det.to_rationals().expect("rational"))?;
        if full.det_even()?.is_zero() {
            return Err(Error::NotInvertible("gram matrix".into()));
        }
        Ok(BilinearForm {
            gram: gram.with_parity(parity)?,
            parity,
        })
    }

    pub fn gram(&self) -> &SuperMatrix {
        &self.gram
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `B X + (-1)^{p(X)p(B)} X^{st} B`.
    pub fn defect(&self, x: &SuperMatrix) -> Result<SuperMatrix> {
        let p = x.parity()?;
        let bx = self.gram.try_mul(x)?;
        let xb = x.supertranspose().try_mul(&self.gram)?;
        if (p * self.parity).is_odd() {
            bx.try_sub(&xb)
        } else {
            bx.try_add(&xb)
        }
    }

    /// True iff `X` preserves the form.
    pub fn preserves(&self, x: &SuperMatrix) -> Result<bool> {
        Ok(self.defect(x)?.is_zero())
    }
}

/// `preserves_form(B, X)`.
pub fn preserves_form(form: &BilinearForm, x: &SuperMatrix) -> Result<bool> {
    form.preserves(x)
}
