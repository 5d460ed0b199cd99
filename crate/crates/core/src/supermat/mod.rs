//! Supermatrices, classical matrix Lie superalgebras and their generic
//! elements.

mod form;
mod matrix;
mod spec;

pub use form::{preserves_form, BilinearForm};
pub(crate) use matrix::leibniz_det;
pub use matrix::SuperMatrix;
pub use spec::{Family, GenericElement, MatrixAlgebraSpec, MATRIX_GRAMMAR};

use crate::error::Result;
use crate::superscalar::SuperScalar;

pub fn mat_mul(a: &SuperMatrix, b: &SuperMatrix) -> Result<SuperMatrix> {
    a.try_mul(b)
}

pub fn supertrace(x: &SuperMatrix) -> Result<SuperScalar> {
    x.supertrace()
}

pub fn queer_trace(x: &SuperMatrix) -> Result<SuperScalar> {
    x.queer_trace()
}

pub fn supertranspose(x: &SuperMatrix) -> SuperMatrix {
    x.supertranspose()
}

pub fn det_even(x: &SuperMatrix) -> Result<SuperScalar> {
    x.det_even()
}

pub fn berezinian(z: &SuperMatrix) -> Result<SuperScalar> {
    z.berezinian()
}

pub fn basis(spec: &MatrixAlgebraSpec) -> Vec<SuperMatrix> {
    spec.basis()
}

pub fn generic_element(spec: &MatrixAlgebraSpec) -> Result<GenericElement> {
    GenericElement::new(*spec)
}
