//! Dense exact linear algebra over the rationals (Gaussian elimination).

use num_traits::{One, Zero};

use crate::combinat::permutations;
use crate::poly::Polynomial;
use crate::rational::Rat;

pub type Matrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Rat::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row echelon form; returns `(reduced rows, pivot columns, determinant factor)`.
fn eliminate(mut m: Matrix) -> (Matrix, Vec<usize>, Rat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut det = Rat::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            det = -det;
        }
        let piv = m[r][c].clone();
        det *= &piv;
        for j in c..cols {
            m[r][j] = &m[r][j] / &piv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots, det)
}

pub fn rank(rows: &Matrix) -> usize {
    eliminate(rows.clone()).1.len()
}

pub fn det(a: &Matrix) -> Rat {
    let n = a.len();
    let (_, pivots, d) = eliminate(a.clone());
    if pivots.len() < n {
        Rat::zero()
    } else {
        d
    }
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, pivots, _) = eliminate(aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A basis (as rows in reduced echelon form) of the span of `rows`.
pub fn row_space(rows: &Matrix) -> Matrix {
    let (red, pivots, _) = eliminate(rows.clone());
    red.into_iter().take(pivots.len()).collect()
}

/// Determinant of a square matrix of polynomials by permutation expansion.
pub fn poly_det(a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    let nvars = a.first().and_then(|r| r.first()).map(Polynomial::nvars).unwrap_or(0);
    let mut acc = Polynomial::zero(nvars);
    for (perm, sign) in permutations(n) {
        let mut t = Polynomial::constant(nvars, Rat::from_integer(sign.into()));
        for (i, &j) in perm.iter().enumerate() {
            if t.is_zero() {
                break;
            }
            t = &t * &a[i][j];
        }
        acc += &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(v: &[&[i64]]) -> Matrix {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&a), int(-1));
        assert_eq!(inverse(&a).unwrap(), a);
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let bi = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &bi), identity(3));
        assert_eq!(det(&b), int(18));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(rank(&Vec::new()), 0);
    }

    #[test]
    fn polynomial_determinant_matches_numeric() {
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let pb: Vec<Vec<Polynomial>> = b
            .iter()
            .map(|r| r.iter().map(|x| Polynomial::constant(1, x.clone())).collect())
            .collect();
        assert_eq!(poly_det(&pb), Polynomial::constant(1, int(18)));
    }
}
