//! Exact rational rank computation for the point-level intersection checks.

use num_traits::Zero;

use crate::polyring::Rational;

/// Rank of the row span, by fraction-free-enough Gaussian elimination
/// (exact rational pivoting).
pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let pivot = rows[pivot_row][col].clone();
        for r in pivot_row + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..ncols {
                let delta = &rows[pivot_row][c] * &factor;
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![vec![r(0), r(0)]]), 0);
        assert_eq!(rank(vec![vec![r(1), r(2)], vec![r(2), r(4)]]), 1);
        assert_eq!(rank(vec![vec![r(1), r(2)], vec![r(0), r(3)]]), 2);
        assert_eq!(
            rank(vec![
                vec![r(1), r(0), r(1)],
                vec![r(0), r(1), r(1)],
                vec![r(1), r(1), r(2)],
            ]),
            2
        );
    }
}
