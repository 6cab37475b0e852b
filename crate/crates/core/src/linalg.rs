//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-reduce in place; returns pivot columns.
fn reduce(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    reduce(&mut m).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
}

/// A solution of `a x = b` (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_solve() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 5], vec![0, 0]]), 2);
        assert_eq!(rank_i64(&[]), 0);
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&sing, &[q(1), q(2)]).is_none());
    }
}
