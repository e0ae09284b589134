use num_traits::Zero;

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Underdetermined { rank: usize },
    Inconsistent,
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination over `Q`.
///
/// `a` is row-major with `ncols` unknowns; extra rows are allowed.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> LinearSolution {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols, "row length");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < ncols {
        return LinearSolution::Underdetermined { rank: pivots.len() };
    }
    LinearSolution::Unique((0..ncols).map(|i| m[i][ncols].clone()).collect())
}
