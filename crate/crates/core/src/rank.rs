//! Exact rank of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank over `Q` of an integer matrix, by fraction-free Gaussian
/// elimination. Each reduced row is divided by the gcd of its entries, which
/// keeps entries small on sparse incidence-like matrices.
pub fn rank_over_rationals(rows: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(offset) = rows[rank..].iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, rank + offset);
        let (done, rest) = rows.split_at_mut(rank + 1);
        let pivot = &done[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot[col].gcd(&row[col]);
            let p = &pivot[col] / &g;
            let r = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(pivot.iter()).skip(col) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &p;
                    }
                } else {
                    *x = &*x * &p - y * &r;
                }
            }
            normalize(row);
        }
        rank += 1;
    }
    rank
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        *x /= &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_over_rationals(&[]), 0);
        assert_eq!(rank_over_rationals(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_over_rationals(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_over_rationals(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(
            rank_over_rationals(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2], vec![2, -1, 1]]),
            2
        );
        // Full rank over Q even though the determinant is divisible by 2.
        assert_eq!(rank_over_rationals(&[vec![2, 0], vec![0, 2]]), 2);
    }

    #[test]
    fn identity_rank() {
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        assert_eq!(rank_over_rationals(&rows), n);
    }
}
