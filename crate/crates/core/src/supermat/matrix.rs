use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::superscalar::{accumulate_product, join_tables, GeneratorTable, Parity, Permutation, SuperScalar, TermMap};

/// Supermatrix of format `(m|n)` in standard format: rows and columns
/// `0..m` are even, `m..m+n` are odd.
#[derive(Clone)]
pub struct SuperMatrix {
    m: usize,
    n: usize,
    table: Arc<GeneratorTable>,
    entries: Vec<SuperScalar>,
    declared: Option<Parity>,
}

/// Equality ignores the declared parity, which only annotates.
impl PartialEq for SuperMatrix {
    fn eq(&self, other: &SuperMatrix) -> bool {
        self.m == other.m && self.n == other.n && self.table == other.table && self.entries == other.entries
    }
}

impl Eq for SuperMatrix {}

/// Entries above this size are multiplied in parallel.
const PAR_MUL_TERMS: usize = 2048;

impl SuperMatrix {
    pub fn zero(table: &Arc<GeneratorTable>, m: usize, n: usize) -> SuperMatrix {
        let s = m + n;
        SuperMatrix {
            m,
            n,
            table: table.clone(),
            entries: vec![SuperScalar::zero(table); s * s],
            declared: None,
        }
    }

    pub fn identity(table: &Arc<GeneratorTable>, m: usize, n: usize) -> SuperMatrix {
        SuperMatrix::from_fn(table, m, n, |i, j| {
            SuperScalar::constant(table, if i == j { Rational::ONE } else { Rational::ZERO })
        })
    }

    pub fn from_fn(
        table: &Arc<GeneratorTable>,
        m: usize,
        n: usize,
        mut f: impl FnMut(usize, usize) -> SuperScalar,
    ) -> SuperMatrix {
        let s = m + n;
        let mut entries = Vec::with_capacity(s * s);
        for i in 0..s {
            for j in 0..s {
                entries.push(f(i, j));
            }
        }
        SuperMatrix::from_entries(table, m, n, entries).expect("entries over the given table")
    }

    /// Row-major entries; every entry must live over a prefix of `table`.
    pub fn from_entries(
        table: &Arc<GeneratorTable>,
        m: usize,
        n: usize,
        entries: Vec<SuperScalar>,
    ) -> Result<SuperMatrix> {
        let s = m + n;
        if entries.len() != s * s {
            return Err(Error::LengthMismatch {
                expected: s * s,
                got: entries.len(),
            });
        }
        let entries = entries
            .into_iter()
            .map(|e| {
                if Arc::ptr_eq(e.table(), table) {
                    Ok(e)
                } else {
                    e.with_table(table)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SuperMatrix {
            m,
            n,
            table: table.clone(),
            entries,
            declared: None,
        })
    }

    /// Rational matrix over the empty generator table.
    pub fn from_rationals(m: usize, n: usize, values: &[Rational]) -> Result<SuperMatrix> {
        let t = GeneratorTable::empty();
        let entries = values.iter().map(|v| SuperScalar::constant(&t, v.clone())).collect();
        SuperMatrix::from_entries(&t, m, n, entries)
    }

    pub fn from_integers(m: usize, n: usize, values: &[i64]) -> Result<SuperMatrix> {
        let v: Vec<Rational> = values.iter().map(|&x| Rational::from_integer(x)).collect();
        SuperMatrix::from_rationals(m, n, &v)
    }

    /// Matrix unit `E_{ij}` (zero-based) with rational entries.
    pub fn unit(m: usize, n: usize, i: usize, j: usize) -> SuperMatrix {
        let t = GeneratorTable::empty();
        SuperMatrix::from_fn(&t, m, n, |a, b| {
            SuperScalar::constant(&t, if (a, b) == (i, j) { Rational::ONE } else { Rational::ZERO })
        })
    }

    pub fn format(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperScalar {
        &self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[SuperScalar] {
        &self.entries
    }

    /// Parity of row/column index `i`.
    pub fn index_parity(&self, i: usize) -> Parity {
        if i < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn declared_parity(&self) -> Option<Parity> {
        self.declared
    }

    /// Declares the parity after checking homogeneity.
    pub fn with_parity(mut self, p: Parity) -> Result<SuperMatrix> {
        if !self.is_homogeneous_of(p) {
            return Err(Error::Inhomogeneous);
        }
        self.declared = Some(p);
        Ok(self)
    }

    /// Every entry at `(i,j)` has parity `p + p(i) + p(j)`.
    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        let s = self.size();
        (0..s).all(|i| {
            (0..s).all(|j| {
                let want = p + self.index_parity(i) + self.index_parity(j);
                self.entry(i, j).has_parity(want)
            })
        })
    }

    /// Declared parity, or the inferred one. The zero matrix is even.
    pub fn parity(&self) -> Result<Parity> {
        if let Some(p) = self.declared {
            return Ok(p);
        }
        if self.is_homogeneous_of(Parity::Even) {
            Ok(Parity::Even)
        } else if self.is_homogeneous_of(Parity::Odd) {
            Ok(Parity::Odd)
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The rational entries, if every entry is constant.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(|e| e.as_rational()).collect()
    }

    fn check_format(&self, other: &SuperMatrix) -> Result<()> {
        if self.format() != other.format() {
            return Err(Error::FormatMismatch(self.m, self.n, other.m, other.n));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &SuperMatrix,
        f: impl Fn(&SuperScalar, &SuperScalar) -> Result<SuperScalar>,
    ) -> Result<SuperMatrix> {
        self.check_format(other)?;
        let table = join_tables(&self.table, &other.table)?;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        SuperMatrix::from_entries(&table, self.m, self.n, entries)
    }

    pub fn try_add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, |a, b| a.try_sub(b))
    }

    /// Exact matrix product.
    pub fn try_mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_format(other)?;
        let table = join_tables(&self.table, &other.table)?;
        let s = self.size();
        let work: usize = self.entries.iter().map(|e| e.len()).sum::<usize>()
            * other.entries.iter().map(|e| e.len()).sum::<usize>();
        let entry = |idx: usize| {
            let (i, k) = (idx / s, idx % s);
            let mut acc = TermMap::default();
            for j in 0..s {
                let (a, b) = (self.entry(i, j), other.entry(j, k));
                if !a.is_zero() && !b.is_zero() {
                    accumulate_product(&mut acc, a.terms(), b.terms(), &Rational::ONE);
                }
            }
            SuperScalar::from_map(&table, acc)
        };
        let entries: Vec<SuperScalar> = if work / (s * s).max(1) > PAR_MUL_TERMS {
            (0..s * s).into_par_iter().map(entry).collect()
        } else {
            (0..s * s).map(entry).collect()
        };
        Ok(SuperMatrix {
            m: self.m,
            n: self.n,
            table,
            entries,
            declared: None,
        })
    }

    pub fn scale(&self, c: &Rational) -> SuperMatrix {
        SuperMatrix {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            declared: None,
            ..self.clone()
        }
    }

    /// Entrywise left multiplication `c · X`.
    pub fn scalar_mul(&self, c: &SuperScalar) -> Result<SuperMatrix> {
        let table = join_tables(&self.table, c.table())?;
        let entries = self.entries.iter().map(|e| c.try_mul(e)).collect::<Result<Vec<_>>>()?;
        SuperMatrix::from_entries(&table, self.m, self.n, entries)
    }

    /// Multiplies row `i` by `sign(i)`.
    pub fn scale_rows(&self, sign: impl Fn(usize) -> bool) -> SuperMatrix {
        let s = self.size();
        SuperMatrix {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(idx, e)| if sign(idx / s) { -e } else { e.clone() })
                .collect(),
            declared: self.declared,
            ..self.clone()
        }
    }

    /// `Δ X` with `Δ = diag(1_m, -1_n)`.
    pub fn delta_twist(&self) -> SuperMatrix {
        let m = self.m;
        self.scale_rows(|i| i >= m)
    }

    pub fn pow(&self, k: u32) -> Result<SuperMatrix> {
        let mut out = SuperMatrix::identity(&self.table, self.m, self.n);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// `[X, Y] = XY - (-1)^{p(X)p(Y)} YX`.
    pub fn supercommutator(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        let (p, q) = (self.parity()?, other.parity()?);
        let xy = self.try_mul(other)?;
        let yx = other.try_mul(self)?;
        if (p * q).is_odd() {
            xy.try_add(&yx)
        } else {
            xy.try_sub(&yx)
        }
    }

    /// `str X = tr A - (-1)^{p(X)} tr D`.
    pub fn supertrace(&self) -> Result<SuperScalar> {
        let p = self.parity()?;
        let mut acc = SuperScalar::zero(&self.table);
        for i in 0..self.size() {
            let e = self.entry(i, i);
            let odd_row = i >= self.m;
            // row sign for D is -(-1)^p: minus when p even
            acc = if odd_row && !p.is_odd() { acc.try_sub(e)? } else { acc.try_add(e)? };
        }
        Ok(acc)
    }

    /// Ordinary trace of all diagonal entries.
    pub fn trace(&self) -> SuperScalar {
        let mut acc = SuperScalar::zero(&self.table);
        for i in 0..self.size() {
            acc = &acc + self.entry(i, i);
        }
        acc
    }

    /// True for `(A B; B A)` with square blocks.
    pub fn is_queer_shape(&self) -> bool {
        if self.m != self.n {
            return false;
        }
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.entry(i, j) == self.entry(i + n, j + n) && self.entry(i, j + n) == self.entry(i + n, j)
            })
        })
    }

    /// `qtr (A B; B A) = tr B`.
    pub fn queer_trace(&self) -> Result<SuperScalar> {
        if !self.is_queer_shape() {
            return Err(Error::NotQueerShape);
        }
        let mut acc = SuperScalar::zero(&self.table);
        for i in 0..self.n {
            acc = &acc + self.entry(i, i + self.n);
        }
        Ok(acc)
    }

    /// `(A B; C D) ↦ (Aᵗ -Cᵗ; Bᵗ Dᵗ)`.
    pub fn supertranspose(&self) -> SuperMatrix {
        let m = self.m;
        let mut out = SuperMatrix::from_fn(&self.table, self.m, self.n, |i, j| {
            let e = self.entry(j, i);
            if i < m && j >= m {
                -e
            } else {
                e.clone()
            }
        });
        out.declared = self.declared;
        out
    }

    /// Leibniz determinant; every entry must be even.
    pub fn det_even(&self) -> Result<SuperScalar> {
        if !self.entries.iter().all(|e| e.has_parity(Parity::Even)) {
            return Err(Error::OddEntry);
        }
        let s = self.size();
        Ok(leibniz_det(&self.table, s, |i, j| self.entry(i, j)))
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<SuperScalar>> {
        rows.map(|i| cols.clone().map(|j| self.entry(i, j).clone()).collect()).collect()
    }

    /// `Ber (A B; C D) = det(A - B D^{-1} C) · det(D)^{-1}`.
    pub fn berezinian(&self) -> Result<SuperScalar> {
        if self.parity()? != Parity::Even {
            return Err(Error::Inhomogeneous);
        }
        let (m, n) = (self.m, self.n);
        let s = m + n;
        let a = self.block(0..m, 0..m);
        let b = self.block(0..m, m..s);
        let c = self.block(m..s, 0..m);
        let d = self.block(m..s, m..s);
        let det_d = leibniz_det(&self.table, n, |i, j| &d[i][j]);
        let det_d_inv = det_d
            .invert_unipotent()
            .map_err(|_| Error::NotInvertible("odd-odd block of the Berezinian argument".into()))?;
        let adj = adjugate(&self.table, &d);
        // D^{-1} = adj(D) / det(D)
        let d_inv: Vec<Vec<SuperScalar>> =
            adj.iter().map(|row| row.iter().map(|e| e * &det_d_inv).collect()).collect();
        let bd = grid_mul(&self.table, &b, &d_inv);
        let bdc = grid_mul(&self.table, &bd, &c);
        let schur: Vec<Vec<SuperScalar>> = (0..m).map(|i| (0..m).map(|j| &a[i][j] - &bdc[i][j]).collect()).collect();
        let det_s = leibniz_det(&self.table, m, |i, j| &schur[i][j]);
        Ok(&det_s * &det_d_inv)
    }

    /// `Z^Π = (D C; B A)` of format `(n|m)`.
    pub fn parity_change(&self) -> SuperMatrix {
        let (m, n) = (self.m, self.n);
        let s = m + n;
        let src = |i: usize| if i < n { i + m } else { i - n };
        let mut out = SuperMatrix::from_fn(&self.table, n, m, |i, j| self.entry(src(i), src(j)).clone());
        debug_assert_eq!(out.size(), s);
        out.declared = self.declared;
        out
    }
}

fn grid_mul(table: &Arc<GeneratorTable>, a: &[Vec<SuperScalar>], b: &[Vec<SuperScalar>]) -> Vec<Vec<SuperScalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|k| {
                    let mut acc = TermMap::default();
                    for j in 0..inner {
                        accumulate_product(&mut acc, row[j].terms(), b[j][k].terms(), &Rational::ONE);
                    }
                    SuperScalar::from_map(table, acc)
                })
                .collect()
        })
        .collect()
}

/// Determinant over the (commutative) even part.
pub(crate) fn leibniz_det<'a>(
    table: &Arc<GeneratorTable>,
    s: usize,
    entry: impl Fn(usize, usize) -> &'a SuperScalar,
) -> SuperScalar {
    let mut acc = TermMap::default();
    for perm in Permutation::all(s) {
        let mut prod = SuperScalar::one(table);
        for i in 0..s {
            prod = &prod * entry(i, perm.image(i));
            if prod.is_zero() {
                break;
            }
        }
        let sign = Rational::from_integer(perm.signature() as i64);
        for (m, c) in prod.into_terms() {
            crate::superscalar::add_term(&mut acc, m, &c * &sign);
        }
    }
    SuperScalar::from_map(table, acc)
}

fn adjugate(table: &Arc<GeneratorTable>, d: &[Vec<SuperScalar>]) -> Vec<Vec<SuperScalar>> {
    let n = d.len();
    if n == 1 {
        return vec![vec![SuperScalar::one(table)]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adj_{ij} = (-1)^{i+j} det(minor with row j, column i removed)
                    let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                    let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                    let minor = leibniz_det(table, n - 1, |a, b| &d[rows[a]][cols[b]]);
                    if (i + j) % 2 == 1 {
                        -minor
                    } else {
                        minor
                    }
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.size();
        for i in 0..s {
            if i == self.m && self.m > 0 && self.n > 0 {
                writeln!(f, "  --")?;
            }
            let row: Vec<String> = (0..s).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SuperMatrix({}|{})", self.m, self.n)?;
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SuperMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let size = self.size();
        let rows: Vec<Vec<&SuperScalar>> = (0..size).map(|i| (0..size).map(|j| self.entry(i, j)).collect()).collect();
        let mut st = s.serialize_struct("SuperMatrix", 3)?;
        st.serialize_field("format", &[self.m, self.n])?;
        st.serialize_field("parity", &self.declared)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}
