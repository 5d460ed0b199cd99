//! Dense exact linear algebra over the rationals.

use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                    if !pv.is_zero() {
                        *v -= &(&f * pv);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{v : A v = 0}`, one vector per free column, with that free
/// entry set to 1.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::ZERO; ncols];
        v[free] = Rational::ONE;
        for (row, &pc) in m.iter().zip(pivots.iter()) {
            v[pc] = -&row[free];
        }
        out.push(v);
    }
    out
}

/// Solves `A x = b` if consistent, choosing zero for free variables.
pub fn solve(rows: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::ZERO; ncols];
    for (row, &pc) in aug.iter().zip(pivots.iter()) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![q(1), q(2), q(3)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = &(&(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1])) + &(&a[0][2] * &v[2]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![vec![q(2), q(0)], vec![q(0), q(4)]];
        assert_eq!(solve(&a, &[q(2), q(2)], 2).unwrap(), vec![q(1), Rational::new(1, 2)]);
        let b = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&b, &[q(1), q(3)], 2).is_none());
        assert_eq!(rank(&b, 2), 1);
    }
}
