use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::Parity;
use crate::error::{Error, Result};

/// Dense generator id, assigned in declaration order.
pub type GenId = u16;

/// Odd sets are stored as a 128-bit mask over generator ids.
pub const MAX_GENERATORS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub index: Vec<i64>,
    pub parity: Parity,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.index.is_empty() {
            let idx: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
            write!(f, "[{}]", idx.join(","))?;
        }
        Ok(())
    }
}

/// Ordered, immutable list of named generators with fixed parities.
///
/// A table `T` is *compatible* with a table `U` when one is a prefix of the
/// other; scalars over compatible tables combine over the longer one.
#[derive(Debug, Clone, Default)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    lookup: HashMap<(String, Vec<i64>), GenId>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GeneratorTable {}

impl GeneratorTable {
    pub fn empty() -> Arc<GeneratorTable> {
        Arc::new(GeneratorTable::default())
    }

    pub fn builder() -> TableBuilder {
        TableBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn parity(&self, id: GenId) -> Parity {
        self.gens[id as usize].parity
    }

    pub fn find(&self, name: &str, index: &[i64]) -> Option<GenId> {
        self.lookup.get(&(name.to_string(), index.to_vec())).copied()
    }

    /// Mask of all odd generators.
    pub fn odd_mask(&self) -> u128 {
        self.gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.parity.is_odd())
            .fold(0u128, |m, (i, _)| m | (1u128 << i))
    }

    pub fn is_prefix_of(&self, other: &GeneratorTable) -> bool {
        self.gens.len() <= other.gens.len() && self.gens[..] == other.gens[..self.gens.len()]
    }

    /// A new table with extra generators appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = Generator>) -> Result<Arc<GeneratorTable>> {
        let mut b = TableBuilder {
            gens: self.gens.clone(),
        };
        for g in extra {
            b.gens.push(g);
        }
        b.build()
    }
}

/// Returns the longer of two compatible tables.
pub fn join_tables(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> Result<Arc<GeneratorTable>> {
    if Arc::ptr_eq(a, b) {
        return Ok(a.clone());
    }
    if a.is_prefix_of(b) {
        Ok(b.clone())
    } else if b.is_prefix_of(a) {
        Ok(a.clone())
    } else {
        Err(Error::TableMismatch)
    }
}

#[derive(Debug, Clone, Default)]
pub struct TableBuilder {
    gens: Vec<Generator>,
}

impl TableBuilder {
    pub fn push(mut self, name: &str, index: &[i64], parity: Parity) -> Self {
        self.gens.push(Generator {
            name: name.to_string(),
            index: index.to_vec(),
            parity,
        });
        self
    }

    pub fn even(self, name: &str, index: &[i64]) -> Self {
        self.push(name, index, Parity::Even)
    }

    pub fn odd(self, name: &str, index: &[i64]) -> Self {
        self.push(name, index, Parity::Odd)
    }

    pub fn build(self) -> Result<Arc<GeneratorTable>> {
        if self.gens.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                max: MAX_GENERATORS,
                got: self.gens.len(),
            });
        }
        let mut lookup = HashMap::with_capacity(self.gens.len());
        for (i, g) in self.gens.iter().enumerate() {
            if lookup
                .insert((g.name.clone(), g.index.clone()), i as GenId)
                .is_some()
            {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        Ok(Arc::new(GeneratorTable {
            gens: self.gens,
            lookup,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let r = GeneratorTable::builder().odd("xi", &[1]).even("xi", &[1]).build();
        assert!(matches!(r, Err(Error::DuplicateGenerator(_))));
        let ok = GeneratorTable::builder().odd("xi", &[1]).odd("xi", &[2]).build().unwrap();
        assert_eq!(ok.find("xi", &[2]), Some(1));
    }

    #[test]
    fn prefix_compatibility() {
        let a = GeneratorTable::builder().odd("xi", &[1]).build().unwrap();
        let b = a
            .extended([Generator {
                name: "x".into(),
                index: vec![],
                parity: Parity::Even,
            }])
            .unwrap();
        assert!(Arc::ptr_eq(&join_tables(&a, &b).unwrap(), &b));
        let c = GeneratorTable::builder().even("y", &[]).build().unwrap();
        assert_eq!(join_tables(&a, &c), Err(Error::TableMismatch));
        assert!(join_tables(&GeneratorTable::empty(), &c).is_ok());
    }

    #[test]
    fn table_size_is_capped() {
        let mut b = GeneratorTable::builder();
        for i in 0..=MAX_GENERATORS as i64 {
            b = b.odd("t", &[i]);
        }
        assert!(matches!(b.build(), Err(Error::TooManyGenerators { .. })));
    }
}
