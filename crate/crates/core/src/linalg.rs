//! Exact linear algebra over the rationals and integer lattice utilities
//! (Hermite normal form, exact square roots).

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant of a square matrix by fraction-preserving Gaussian elimination.
pub fn det(mat: &[Vec<BigRational>]) -> BigRational {
    let n = mat.len();
    let mut m: Vec<Vec<BigRational>> = mat.to_vec();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let pv = m[col][col].clone();
        acc *= pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - t;
            }
        }
    }
    acc
}

/// Rank over the rationals.
pub fn rank(mat: &[Vec<BigRational>]) -> usize {
    if mat.is_empty() {
        return 0;
    }
    let rows = mat.len();
    let cols = mat[0].len();
    let mut m: Vec<Vec<BigRational>> = mat.to_vec();
    let mut r = 0usize;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot, r);
        let pv = m[r][col].clone();
        for i in 0..rows {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &pv;
            for c in col..cols {
                let t = &factor * &m[r][c];
                m[i][c] = &m[i][c] - t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular matrix".into()))?;
        m.swap(pivot, col);
        rhs.swap(pivot, col);
        let pv = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - t;
            }
            let t = &factor * &rhs[col];
            rhs[r] = &rhs[r] - t;
        }
    }
    Ok((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Positive semidefiniteness via rank-revealing symmetric elimination:
/// every pivot encountered must be positive.
pub fn is_positive_semidefinite(mat: &[Vec<BigRational>]) -> bool {
    let n = mat.len();
    let mut m: Vec<Vec<BigRational>> = mat.to_vec();
    let mut row = 0usize;
    for col in 0..n {
        if row >= n {
            break;
        }
        // symmetric pivoting: a PSD matrix with zero diagonal entry has a
        // zero row/column at that index
        let diag = m[col][col].clone();
        if diag.is_zero() {
            if (0..n).any(|c| !m[col][c].is_zero()) {
                return false;
            }
            continue;
        }
        if diag.is_negative() {
            return false;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &diag;
            for c in 0..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - t;
            }
        }
        for c in 0..n {
            if c != col {
                m[col][c] = BigRational::zero();
            }
        }
        row += 1;
    }
    true
}

/// Column-style Hermite normal form of the row lattice spanned by `rows`
/// (integer matrix, full column rank not required).  Returns a row basis in
/// upper-triangular echelon form.
pub fn hnf_row_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| !r.iter().all(|x| x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = vec![];
    for col in 0..cols {
        loop {
            let mut idxs: Vec<usize> =
                (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if idxs.is_empty() {
                break;
            }
            if idxs.len() == 1 {
                let mut row = work.swap_remove(idxs[0]);
                if row[col].is_negative() {
                    for v in row.iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
                basis.push(row);
                break;
            }
            // reduce the larger entries by the smallest
            idxs.sort_by_key(|&i| work[i][col].abs());
            let min_idx = idxs[0];
            let min_val = work[min_idx][col].clone();
            for &i in &idxs[1..] {
                let q = &work[i][col] / &min_val;
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &work[min_idx][c];
                        work[i][c] = &work[i][c] - t;
                    }
                }
            }
        }
    }
    // reduce entries above each pivot
    basis.sort_by_key(|r| r.iter().position(|x| !x.is_zero()).unwrap_or(cols));
    for i in (0..basis.len()).rev() {
        let pivot_col = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        let pv = basis[i][pivot_col].clone();
        for j in 0..i {
            let q = div_floor_big(&basis[j][pivot_col], &pv);
            if !q.is_zero() {
                for c in 0..cols {
                    let t = &q * &basis[i][c];
                    basis[j][c] = &basis[j][c] - t;
                }
            }
        }
    }
    basis
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if r.is_zero() || (r.is_negative() == b.is_negative()) {
        q
    } else {
        q - BigInt::one()
    }
}

/// Exact integer square root; errors if `n` is not a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NotExact("square root of a negative number".into()));
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Ok(r)
    } else {
        Err(Error::NotExact(format!("{n} is not a perfect square")))
    }
}

/// Exact square root of a nonnegative rational.
pub fn exact_sqrt_rational(x: &BigRational) -> Result<BigRational> {
    Ok(BigRational::new(exact_sqrt(x.numer())?, exact_sqrt(x.denom())?))
}

pub fn big(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| big(v)).collect()).collect()
    }

    #[test]
    fn det_and_rank() {
        let m = mat(&[&[2, -1], &[-1, 2]]);
        assert_eq!(det(&m), big(3));
        assert_eq!(rank(&m), 2);
        let sing = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(det(&sing), big(0));
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn solve_small() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![big(5), big(10)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![big(1), big(3)]);
    }

    #[test]
    fn psd_checks() {
        assert!(is_positive_semidefinite(&mat(&[&[2, -1], &[-1, 2]])));
        assert!(is_positive_semidefinite(&mat(&[&[1, 1], &[1, 1]])));
        assert!(!is_positive_semidefinite(&mat(&[&[1, 2], &[2, 1]])));
        assert!(!is_positive_semidefinite(&mat(&[&[-1, 0], &[0, 1]])));
        // PSD with a zero row
        assert!(is_positive_semidefinite(&mat(&[&[0, 0], &[0, 3]])));
        assert!(!is_positive_semidefinite(&mat(&[&[0, 1], &[1, 3]])));
    }

    #[test]
    fn hnf_index() {
        // lattice generated by 2e1, 2e2 and e1+e2 has index 2 in Z^2
        let rows: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let basis = hnf_row_basis(&rows, 2);
        assert_eq!(basis.len(), 2);
        let d: BigInt = &basis[0][0] * &basis[1][1];
        assert_eq!(d, BigInt::from(2));
    }

    #[test]
    fn sqrt_checks() {
        assert_eq!(exact_sqrt(&BigInt::from(625)).unwrap(), BigInt::from(25));
        assert!(exact_sqrt(&BigInt::from(26)).is_err());
        assert_eq!(exact_sqrt_rational(&ratio(25, 81)).unwrap(), ratio(5, 9));
    }
}
