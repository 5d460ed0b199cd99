use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const VECTORIAL_GRAMMAR: &str = "vect(n), svect(n), h(2n)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorialFamily {
    /// All polynomial vector fields.
    Vect,
    /// Divergence-free fields.
    Svect,
    /// Hamiltonian fields.
    H,
}

/// A vectorial Lie algebra in `n` even indeterminates, truncated to
/// coefficients of degree at most `degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VectorialSpec {
    pub family: VectorialFamily,
    /// Number of even coordinates (`2n` for `h(2n)`).
    pub n: usize,
    pub degree: usize,
}

impl VectorialSpec {
    pub fn new(family: VectorialFamily, n: usize, degree: usize) -> Result<VectorialSpec> {
        let spec = VectorialSpec { family, n, degree };
        if n == 0 || (family == VectorialFamily::H && n % 2 != 0) {
            return Err(Error::InvalidSpec {
                input: spec.to_string(),
                reason: "invalid size".into(),
                grammar: VECTORIAL_GRAMMAR,
            });
        }
        Ok(spec)
    }

    pub fn with_degree(self, degree: usize) -> VectorialSpec {
        VectorialSpec { degree, ..self }
    }

    /// Whether scans of this algebra need the long-running flag.
    pub fn is_long_running(&self) -> bool {
        match self.family {
            VectorialFamily::Vect | VectorialFamily::Svect => self.n >= 3,
            VectorialFamily::H => self.n >= 4,
        }
    }
}

impl FromStr for VectorialSpec {
    type Err = Error;

    /// Parses the family and size; the degree defaults to 2.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSpec {
            input: s.to_string(),
            reason: reason.to_string(),
            grammar: VECTORIAL_GRAMMAR,
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, arg) = t
            .strip_suffix(')')
            .and_then(|u| u.split_once('('))
            .ok_or_else(|| invalid("expected name(n)"))?;
        let n: usize = arg.parse().map_err(|_| invalid("bad size"))?;
        let family = match name {
            "vect" => VectorialFamily::Vect,
            "svect" => VectorialFamily::Svect,
            "h" => VectorialFamily::H,
            _ => return Err(invalid("unknown family")),
        };
        if n == 0 {
            return Err(invalid("size must be positive"));
        }
        if family == VectorialFamily::H && n % 2 != 0 {
            return Err(invalid("h needs an even number of indeterminates"));
        }
        Ok(VectorialSpec { family, n, degree: 2 })
    }
}

impl fmt::Display for VectorialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            VectorialFamily::Vect => write!(f, "vect({})", self.n),
            VectorialFamily::Svect => write!(f, "svect({})", self.n),
            VectorialFamily::H => write!(f, "h({})", self.n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["vect(1)", "svect(2)", "h(2)", "h(4)"] {
            assert_eq!(s.parse::<VectorialSpec>().unwrap().to_string(), s);
        }
        for bad in ["h(3)", "vect(0)", "k(3)", "vect"] {
            let e = bad.parse::<VectorialSpec>().unwrap_err();
            assert!(e.to_string().contains("svect(n)"));
        }
        assert!("vect(3)".parse::<VectorialSpec>().unwrap().is_long_running());
        assert!(!"h(2)".parse::<VectorialSpec>().unwrap().is_long_running());
    }
}
