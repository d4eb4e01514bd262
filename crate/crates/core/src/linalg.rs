//! Gauss-Jordan elimination over exact rationals.

use num::Zero;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// Consistent but rank-deficient; `particular` sets every free variable to 0.
    Family {
        kernel_dim: usize,
        particular: Vec<Rational>,
    },
    Inconsistent,
}

/// Solves `matrix * x = rhs` for a square or rectangular system.
pub fn solve(mut matrix: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> LinearSolution {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !matrix[i][c].is_zero()) else {
            continue;
        };
        matrix.swap(r, p);
        rhs.swap(r, p);
        let inv = matrix[r][c].recip();
        for v in matrix[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        let pivot_row = matrix[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in (0..rows).filter(|&i| i != r) {
            if matrix[i][c].is_zero() {
                continue;
            }
            let factor = matrix[i][c].clone();
            for (v, p) in matrix[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = rhs[row].clone();
    }
    if pivots.len() == cols {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Family {
            kernel_dim: cols - pivots.len(),
            particular: x,
        }
    }
}
