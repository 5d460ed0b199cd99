use std::sync::Arc;

use crate::error::{Error, Result};
use crate::superscalar::{GenId, Generator, GeneratorTable, Parity, SuperScalar};

/// Coordinates of a superdomain followed by auxiliary coefficient
/// generators, all in one generator table.
///
/// Even coordinates take ids `0..n_even`, odd coordinates the next
/// `n_odd` ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperDomain {
    table: Arc<GeneratorTable>,
    n_even: usize,
    n_odd: usize,
}

impl SuperDomain {
    pub fn new(
        even: &[(&str, Vec<i64>)],
        odd: &[(&str, Vec<i64>)],
        aux: impl IntoIterator<Item = Generator>,
    ) -> Result<Arc<SuperDomain>> {
        let mut b = GeneratorTable::builder();
        for (name, idx) in even {
            b = b.even(name, idx);
        }
        for (name, idx) in odd {
            b = b.odd(name, idx);
        }
        let base = b.build()?;
        let table = base.extended(aux)?;
        if odd.len() > 64 {
            return Err(Error::TooManyGenerators { max: 64, got: odd.len() });
        }
        Ok(Arc::new(SuperDomain {
            table,
            n_even: even.len(),
            n_odd: odd.len(),
        }))
    }

    /// `x[1..n]` even and `xi[1..m]` odd.
    pub fn standard(n_even: usize, n_odd: usize, aux: impl IntoIterator<Item = Generator>) -> Result<Arc<SuperDomain>> {
        let even: Vec<(&str, Vec<i64>)> = (1..=n_even as i64).map(|i| ("x", vec![i])).collect();
        let odd: Vec<(&str, Vec<i64>)> = (1..=n_odd as i64).map(|i| ("xi", vec![i])).collect();
        SuperDomain::new(&even, &odd, aux)
    }

    /// Same coordinates with more auxiliary generators.
    pub fn with_aux(&self, aux: impl IntoIterator<Item = Generator>) -> Result<Arc<SuperDomain>> {
        Ok(Arc::new(SuperDomain {
            table: self.table.extended(aux)?,
            n_even: self.n_even,
            n_odd: self.n_odd,
        }))
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    pub fn n_coords(&self) -> usize {
        self.n_even + self.n_odd
    }

    /// Generator id of coordinate `i` (even coordinates first).
    pub fn coord_id(&self, i: usize) -> GenId {
        debug_assert!(i < self.n_coords());
        i as GenId
    }

    pub fn coord_parity(&self, i: usize) -> Parity {
        if i < self.n_even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn coord(&self, i: usize) -> SuperScalar {
        SuperScalar::generator(&self.table, self.coord_id(i))
    }

    pub fn coord_name(&self, i: usize) -> String {
        self.table.get(self.coord_id(i)).to_string()
    }

    /// True when the scalar involves no coordinate.
    pub fn is_coordinate_free(&self, f: &SuperScalar) -> bool {
        let n = self.n_coords() as GenId;
        f.terms().iter().all(|(m, _)| (0..n).all(|id| m.exponent(id) == 0))
    }

    pub fn same(a: &Arc<SuperDomain>, b: &Arc<SuperDomain>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}
