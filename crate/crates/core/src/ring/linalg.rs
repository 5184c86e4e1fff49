//! Dense exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Reduces `rows` (each of length `ncols`) to reduced row-echelon form.
/// Pivots are chosen left to right, first nonzero row wins, so the result
/// only depends on the input order.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for entry in rows[next][col..].iter_mut() {
                *entry *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Rref { rows, pivots, ncols }
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).pivots.len()
}

/// Basis of the right nullspace, one vector per free column (in column
/// order), with a 1 in that free column.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let reduced = rref(rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in reduced.pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..ncols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (r, &pc) in reduced.pivots.iter().enumerate() {
                v[pc] = -reduced.rows[r][free].clone();
            }
            v
        })
        .collect()
}
