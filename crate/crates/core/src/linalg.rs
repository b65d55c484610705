//! Exact Gaussian elimination with a rational matrix and a right-hand side
//! over any coefficient ring that rationals act on.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};

/// Solve `m x = b` for square, nonsingular rational `m`.
pub fn solve<C: Coeff>(mut m: Vec<Vec<Rational>>, mut b: Vec<C>) -> Result<Vec<C>> {
    let n = m.len();
    if b.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("linear system shape mismatch".into()));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        b[col] = b[col].clone() * C::from_rational(&inv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
            b[r] = b[r].clone() - b[col].clone() * C::from_rational(&f);
        }
    }
    Ok(b)
}

/// Inverse of a square nonsingular rational matrix.
pub fn invert(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("matrix is not square".into()));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *v *= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d1 = &f * &a[col][c];
                a[r][c] -= d1;
                let d2 = &f * &inv[col][c];
                inv[r][c] -= d2;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, PiScalar};

    #[test]
    fn solves_small_system() {
        let m = vec![vec![rat_int(2), rat_int(1)], vec![rat_int(1), rat_int(3)]];
        let b = vec![PiScalar::pi(), PiScalar::from_int(1)];
        let x = solve(m, b).unwrap();
        // 2x + y = pi, x + 3y = 1
        assert_eq!(x[0], PiScalar::pi().scale(&rat(3, 5)) - PiScalar::from_rational(rat(1, 5)));
        assert_eq!(x[1], PiScalar::from_rational(rat(2, 5)) - PiScalar::pi().scale(&rat(1, 5)));
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![
            vec![rat_int(2), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(3), rat_int(1)],
            vec![rat_int(0), rat(1, 2), rat_int(4)],
        ];
        let inv = invert(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn singular_is_reported() {
        let m = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert_eq!(solve(m, vec![rat_int(1), rat_int(2)]), Err(Error::SingularSystem));
    }
}
