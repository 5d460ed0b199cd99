use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::rational::Rational;
use crate::superscalar::{GeneratorTable, Parity, SuperScalar};

use super::form::BilinearForm;
use super::matrix::SuperMatrix;

pub const MATRIX_GRAMMAR: &str = "gl(m), gl(m|n), sl(m), sl(m|n), o(k), sp(2k), osp(m|2n), pe(n), q(n), sq(n)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gl,
    Sl,
    O,
    Sp,
    Osp,
    Pe,
    Q,
    Sq,
}

/// A classical matrix Lie (super)algebra in its defining representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixAlgebraSpec {
    pub family: Family,
    /// Format `(m|n)` of the defining representation.
    pub m: usize,
    pub n: usize,
}

fn invalid(input: &str, reason: impl Into<String>) -> Error {
    Error::InvalidSpec {
        input: input.to_string(),
        reason: reason.into(),
        grammar: MATRIX_GRAMMAR,
    }
}

impl FromStr for MatrixAlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = t
            .strip_suffix(')')
            .and_then(|u| u.split_once('('))
            .ok_or_else(|| invalid(s, "expected name(args)"))?;
        let nums: Vec<usize> = args
            .split('|')
            .map(|a| a.parse::<usize>().map_err(|_| invalid(s, format!("bad size `{a}`"))))
            .collect::<Result<_>>()?;
        let one = |what: &str| -> Result<usize> {
            match nums.as_slice() {
                [k] => Ok(*k),
                _ => Err(invalid(s, format!("{what} takes a single size"))),
            }
        };
        let positive = |k: usize| if k == 0 { Err(invalid(s, "size must be positive")) } else { Ok(k) };
        let spec = match name {
            "gl" | "sl" => {
                let family = if name == "gl" { Family::Gl } else { Family::Sl };
                let (m, n) = match nums.as_slice() {
                    [m] => (*m, 0),
                    [m, n] => (*m, *n),
                    _ => return Err(invalid(s, "expected one or two sizes")),
                };
                if m + n == 0 {
                    return Err(invalid(s, "size must be positive"));
                }
                MatrixAlgebraSpec { family, m, n }
            }
            "o" => MatrixAlgebraSpec {
                family: Family::O,
                m: positive(one("o")?)?,
                n: 0,
            },
            "sp" => {
                let k = positive(one("sp")?)?;
                if k % 2 != 0 {
                    return Err(invalid(s, "sp requires an even size"));
                }
                MatrixAlgebraSpec {
                    family: Family::Sp,
                    m: k,
                    n: 0,
                }
            }
            "osp" => match nums.as_slice() {
                [m, n2] if n2 % 2 == 0 && m + n2 > 0 => MatrixAlgebraSpec {
                    family: Family::Osp,
                    m: *m,
                    n: *n2,
                },
                [_, _] => return Err(invalid(s, "osp(m|2n) requires an even odd size")),
                _ => return Err(invalid(s, "osp takes two sizes")),
            },
            "pe" | "q" | "sq" => {
                let k = positive(one(name)?)?;
                let family = match name {
                    "pe" => Family::Pe,
                    "q" => Family::Q,
                    _ => Family::Sq,
                };
                MatrixAlgebraSpec { family, m: k, n: k }
            }
            _ => return Err(invalid(s, format!("unknown family `{name}`"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for MatrixAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = (self.m, self.n);
        match self.family {
            Family::Gl | Family::Sl => {
                let name = if self.family == Family::Gl { "gl" } else { "sl" };
                if n == 0 {
                    write!(f, "{name}({m})")
                } else {
                    write!(f, "{name}({m}|{n})")
                }
            }
            Family::O => write!(f, "o({m})"),
            Family::Sp => write!(f, "sp({m})"),
            Family::Osp => write!(f, "osp({m}|{n})"),
            Family::Pe => write!(f, "pe({m})"),
            Family::Q => write!(f, "q({m})"),
            Family::Sq => write!(f, "sq({m})"),
        }
    }
}

/// `J_{2k} = (0 1_k; -1_k 0)` as a row-major rational grid.
fn symplectic_block(k: usize) -> Vec<Vec<Rational>> {
    let s = 2 * k;
    let mut g = vec![vec![Rational::ZERO; s]; s];
    for i in 0..k {
        g[i][i + k] = Rational::ONE;
        g[i + k][i] = Rational::from_integer(-1);
    }
    g
}

fn block_diag(m: usize, n: usize, a: &[Vec<Rational>], d: &[Vec<Rational>]) -> Vec<Rational> {
    let s = m + n;
    let mut out = vec![Rational::ZERO; s * s];
    for i in 0..m {
        for j in 0..m {
            out[i * s + j] = a[i][j].clone();
        }
    }
    for i in 0..n {
        for j in 0..n {
            out[(i + m) * s + j + m] = d[i][j].clone();
        }
    }
    out
}

fn identity_grid(k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect())
        .collect()
}

impl MatrixAlgebraSpec {
    pub fn format(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// The invariant form for o, sp, osp and pe.
    pub fn form(&self) -> Option<BilinearForm> {
        let (m, n) = (self.m, self.n);
        let gram = match self.family {
            Family::O => block_diag(m, 0, &identity_grid(m), &[]),
            Family::Sp => block_diag(m, 0, &symplectic_block(m / 2), &[]),
            Family::Osp => block_diag(m, n, &identity_grid(m), &symplectic_block(n / 2)),
            Family::Pe => {
                // J_{n|n} = (0 1_n; -1_n 0), an odd form
                let s = 2 * m;
                let mut g = vec![Rational::ZERO; s * s];
                for i in 0..m {
                    g[i * s + i + m] = Rational::ONE;
                    g[(i + m) * s + i] = Rational::from_integer(-1);
                }
                g
            }
            _ => return None,
        };
        let gram = SuperMatrix::from_rationals(m, n, &gram).expect("square gram");
        Some(BilinearForm::new(gram).expect("normal-form gram matrices are invertible"))
    }

    /// The odd operator `J = (0 1_n; -1_n 0)` commuting with `q(n)`.
    pub fn queer_operator(n: usize) -> SuperMatrix {
        let s = 2 * n;
        let mut g = vec![Rational::ZERO; s * s];
        for i in 0..n {
            g[i * s + i + n] = Rational::ONE;
            g[(i + n) * s + i] = Rational::from_integer(-1);
        }
        SuperMatrix::from_rationals(n, n, &g)
            .and_then(|j| j.with_parity(Parity::Odd))
            .expect("odd operator")
    }

    /// Membership of a homogeneous matrix in the algebra.
    pub fn contains(&self, x: &SuperMatrix) -> Result<bool> {
        if x.format() != self.format() {
            return Err(Error::FormatMismatch(self.m, self.n, x.format().0, x.format().1));
        }
        let p = x.parity()?;
        Ok(match self.family {
            Family::Gl => true,
            Family::Sl => x.supertrace()?.is_zero(),
            Family::O | Family::Sp | Family::Osp | Family::Pe => {
                self.form().expect("form-preserving family").preserves(x)?
            }
            Family::Q | Family::Sq => {
                let j = MatrixAlgebraSpec::queer_operator(self.m);
                let x = x.clone().with_parity(p)?;
                let commutes = x.supercommutator(&j)?.is_zero();
                commutes && (self.family == Family::Q || x.queer_trace()?.is_zero())
            }
        })
    }

    /// A homogeneous basis, even elements first.
    pub fn basis(&self) -> Vec<SuperMatrix> {
        let (m, n) = (self.m, self.n);
        let s = m + n;
        let unit = |i: usize, j: usize| SuperMatrix::unit(m, n, i, j);
        let mut out: Vec<SuperMatrix> = match self.family {
            Family::Gl => (0..s).flat_map(|i| (0..s).map(move |j| (i, j))).map(|(i, j)| unit(i, j)).collect(),
            Family::Sl => {
                let mut v: Vec<SuperMatrix> = (0..s)
                    .flat_map(|i| (0..s).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| unit(i, j))
                    .collect();
                for k in 0..s.saturating_sub(1) {
                    let d = if k + 1 == m {
                        unit(k, k).try_add(&unit(k + 1, k + 1))
                    } else {
                        unit(k, k).try_sub(&unit(k + 1, k + 1))
                    };
                    v.push(d.expect("same format"));
                }
                v
            }
            Family::O | Family::Sp | Family::Osp | Family::Pe => self.form_basis(),
            Family::Q | Family::Sq => {
                let mut v = Vec::new();
                for i in 0..m {
                    for j in 0..m {
                        v.push(unit(i, j).try_add(&unit(i + m, j + m)).expect("same format"));
                    }
                }
                let odd_blocks: Vec<Vec<Rational>> = if self.family == Family::Q {
                    (0..m * m)
                        .map(|k| (0..m * m).map(|l| if k == l { Rational::ONE } else { Rational::ZERO }).collect())
                        .collect()
                } else {
                    // traceless m×m blocks
                    let trace_row: Vec<Rational> = (0..m * m)
                        .map(|k| if k / m == k % m { Rational::ONE } else { Rational::ZERO })
                        .collect();
                    nullspace(&[trace_row], m * m)
                };
                for b in odd_blocks {
                    let mut g = vec![Rational::ZERO; s * s];
                    for (k, v) in b.iter().enumerate() {
                        let (i, j) = (k / m, k % m);
                        g[i * s + j + m] = v.clone();
                        g[(i + m) * s + j] = v.clone();
                    }
                    v.push(SuperMatrix::from_rationals(m, n, &g).expect("square"));
                }
                v
            }
        };
        out.sort_by_key(|b| b.parity().expect("homogeneous basis element"));
        out.into_iter()
            .map(|b| {
                let p = b.parity().expect("homogeneous");
                b.with_parity(p).expect("homogeneous")
            })
            .collect()
    }

    /// Solves the linear defining equation of the form-preserving
    /// algebra, one parity at a time.
    fn form_basis(&self) -> Vec<SuperMatrix> {
        let (m, n) = (self.m, self.n);
        let s = m + n;
        let form = self.form().expect("form family");
        let mut out = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let slots: Vec<(usize, usize)> = (0..s)
                .flat_map(|i| (0..s).map(move |j| (i, j)))
                .filter(|&(i, j)| Parity::from_bit(((i >= m) != (j >= m)) as u32) == p)
                .collect();
            // columns of the linear map X ↦ B X + sign X^st B on each slot
            let cols: Vec<Vec<Rational>> = slots
                .iter()
                .map(|&(i, j)| {
                    let e = SuperMatrix::unit(m, n, i, j).with_parity(p).expect("unit parity");
                    form.defect(&e)
                        .expect("homogeneous unit")
                        .to_rationals()
                        .expect("rational")
                })
                .collect();
            let rows: Vec<Vec<Rational>> =
                (0..s * s).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            for v in nullspace(&rows, slots.len()) {
                let mut g = vec![Rational::ZERO; s * s];
                for (k, &(i, j)) in slots.iter().enumerate() {
                    g[i * s + j] = v[k].clone();
                }
                out.push(SuperMatrix::from_rationals(m, n, &g).expect("square"));
            }
        }
        out
    }
}

/// `X = Σ θ_b Δ^{p(b)+1} b` over a basis, with `θ_b` of parity `p(b) + 1`
/// and `Δ = diag(1_m, -1_n)`. The twist makes `X` the standard-format
/// matrix of the even-total element `Σ θ_b ⊗ b`, so products of generic
/// elements match products in `A ⊗ Mat(m|n)`.
#[derive(Debug, Clone)]
pub struct GenericElement {
    pub spec: MatrixAlgebraSpec,
    pub basis: Vec<SuperMatrix>,
    pub table: Arc<GeneratorTable>,
    pub matrix: SuperMatrix,
}

impl GenericElement {
    pub fn new(spec: MatrixAlgebraSpec) -> Result<GenericElement> {
        let basis = spec.basis();
        GenericElement::from_basis(spec, basis, "theta")
    }

    pub fn from_basis(spec: MatrixAlgebraSpec, basis: Vec<SuperMatrix>, name: &str) -> Result<GenericElement> {
        let (m, n) = spec.format();
        let mut tb = GeneratorTable::builder();
        for (i, b) in basis.iter().enumerate() {
            tb = tb.push(name, &[i as i64 + 1], b.parity()?.flip());
        }
        let table = tb.build()?;
        let mut x = SuperMatrix::zero(&table, m, n);
        for (i, b) in basis.iter().enumerate() {
            let theta = SuperScalar::generator(&table, i as u16);
            let twisted = if b.parity()?.is_odd() { b.clone() } else { b.delta_twist() };
            x = x.try_add(&twisted.scalar_mul(&theta)?)?;
        }
        let matrix = x.with_parity(Parity::Odd)?;
        Ok(GenericElement {
            spec,
            basis,
            table,
            matrix,
        })
    }
}
