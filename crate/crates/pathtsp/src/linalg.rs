//! Small dense exact-rational linear algebra: rank and determinants.

use crate::rational::Rational;
use num_traits::Zero;

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].clone().recip();
        for j in col..ncols {
            let v = rows[r][j].clone() * inv.clone();
            rows[r][j] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..ncols {
                    let sub = rows[r][j].clone() * factor.clone();
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone().recip();
        for i in (col + 1)..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() * inv.clone();
            for j in col..n {
                let sub = m[col][j].clone() * factor.clone();
                m[i][j] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn rank_of_singular_and_full_matrices() {
        let full = vec![vec![rat_int(1), rat_int(0)], vec![rat(1, 2), rat_int(3)]];
        assert_eq!(rank(full), 2);
        let singular = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
            vec![rat_int(0), rat_int(0)],
        ];
        assert_eq!(rank(singular), 1);
    }

    #[test]
    fn determinant_matches_hand_computation() {
        let m = vec![
            vec![rat_int(2), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(2), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(2)],
        ];
        assert_eq!(determinant(m), rat_int(4));
        let sing = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(1)]];
        assert_eq!(determinant(sing), rat_int(0));
    }
}
