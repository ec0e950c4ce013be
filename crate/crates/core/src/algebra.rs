//! Weil algebras given by structure constants in a Jordan–Hölder basis.
//!
//! Basis element `e_0` is the unit and `e_1..e_n` span the maximal ideal. The
//! constructor validates the table and computes the powers of the maximal ideal.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constants must form a {expected}^3 array, found {found}")]
    BadShape { expected: usize, found: usize },
    #[error("not commutative: gamma[{a}][{b}][{c}] != gamma[{b}][{a}][{c}]")]
    NotCommutative { a: usize, b: usize, c: usize },
    #[error("e_0 is not the unit: gamma[0][{a}][{b}] != delta")]
    BadUnit { a: usize, b: usize },
    #[error("not associative at (a, e, f, c) = ({a}, {e}, {f}, {c})")]
    NotAssociative { a: usize, e: usize, f: usize, c: usize },
    #[error("basis is not Jordan-Hölder: gamma[{a}][{b}][{c}] != 0 with c <= max(a, b)")]
    NotJordanHolder { a: usize, b: usize, c: usize },
    #[error("the ideal spanned by e_1..e_n is not nilpotent")]
    NotNilpotent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("covector is not Frobenius: det q = 0")]
    NotFrobenius,
    #[error("top power of the maximal ideal has dimension {dim}, not 1")]
    HeightIdealNotLine { dim: usize },
    #[error("covector vanishes on the top basis element e_n")]
    PVanishesOnTop,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coords: Vec<Rat>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Rat>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn basis(dim: usize, a: usize) -> Self {
        let mut x = AlgebraElement::zero(dim);
        x.coords[a] = Rat::one();
        x
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Real part `x^0`.
    pub fn real_part(&self) -> &Rat {
        &self.coords[0]
    }

    pub fn scale(&self, c: &Rat) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), rhs.dim());
        AlgebraElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), rhs.dim());
        AlgebraElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilAlgebra {
    dim: usize,
    gamma: Vec<Rat>,
    height: usize,
    power_dims: Vec<usize>,
    top_ideal: Matrix,
}

impl WeilAlgebra {
    /// Truncated polynomials `R[e]/(e^{n+1})` in the basis `1, e, ..., e^n`.
    pub fn plural(n: usize) -> WeilAlgebra {
        let d = n + 1;
        let mut gamma = vec![Rat::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                if a + b <= n {
                    gamma[(a * d + b) * d + a + b] = Rat::one();
                }
            }
        }
        WeilAlgebra::from_flat(d, gamma).expect("plural numbers are a Weil algebra")
    }

    /// `R[u,v]/(u^2 - v^2, uv)` in the basis `1, u, v, u^2`.
    pub fn width_two() -> WeilAlgebra {
        let d = 4;
        let mut gamma = vec![Rat::zero(); d * d * d];
        let mut set = |a: usize, b: usize, c: usize| {
            gamma[(a * d + b) * d + c] = Rat::one();
            gamma[(b * d + a) * d + c] = Rat::one();
        };
        for a in 0..d {
            set(0, a, a);
        }
        set(1, 1, 3);
        set(2, 2, 3);
        WeilAlgebra::from_flat(d, gamma).expect("width-two algebra is valid")
    }

    /// Builds and validates an algebra from `gamma[a][b][c]`.
    pub fn from_constants(dim: usize, gamma: &[Vec<Vec<Rat>>]) -> Result<WeilAlgebra, AlgebraError> {
        let bad = |found| AlgebraError::BadShape { expected: dim, found };
        if dim == 0 || gamma.len() != dim {
            return Err(bad(gamma.len()));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for plane in gamma {
            if plane.len() != dim {
                return Err(bad(plane.len()));
            }
            for row in plane {
                if row.len() != dim {
                    return Err(bad(row.len()));
                }
                flat.extend(row.iter().cloned());
            }
        }
        WeilAlgebra::from_flat(dim, flat)
    }

    fn from_flat(dim: usize, gamma: Vec<Rat>) -> Result<WeilAlgebra, AlgebraError> {
        assert_eq!(gamma.len(), dim * dim * dim);
        let g = |a: usize, b: usize, c: usize| &gamma[(a * dim + b) * dim + c];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if g(a, b, c) != g(b, a, c) {
                        return Err(AlgebraError::NotCommutative { a, b, c });
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let want = if a == b { Rat::one() } else { Rat::zero() };
                if g(0, a, b) != &want {
                    return Err(AlgebraError::BadUnit { a, b });
                }
            }
        }
        for a in 0..dim {
            for e in 0..dim {
                for f in 0..dim {
                    for c in 0..dim {
                        let mut lhs = Rat::zero();
                        let mut rhs = Rat::zero();
                        for b in 0..dim {
                            lhs += g(a, b, c) * g(e, f, b);
                            rhs += g(a, e, b) * g(b, f, c);
                        }
                        if lhs != rhs {
                            return Err(AlgebraError::NotAssociative { a, e, f, c });
                        }
                    }
                }
            }
        }
        for a in 1..dim {
            for b in 1..dim {
                for c in 0..=a.max(b) {
                    if !g(a, b, c).is_zero() {
                        return Err(AlgebraError::NotJordanHolder { a, b, c });
                    }
                }
            }
        }
        let mut alg = WeilAlgebra {
            dim,
            gamma,
            height: 0,
            power_dims: vec![1],
            top_ideal: Vec::new(),
        };
        alg.compute_powers()?;
        Ok(alg)
    }

    fn compute_powers(&mut self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let gens: Vec<AlgebraElement> = (1..d).map(|a| AlgebraElement::basis(d, a)).collect();
        let mut dims = Vec::new();
        let mut current: Matrix = gens.iter().map(|x| x.coords.clone()).collect();
        let mut last_nonzero: Matrix = vec![AlgebraElement::basis(d, 0).coords];
        let mut steps = 0;
        while !current.is_empty() {
            steps += 1;
            if steps > d + 1 {
                return Err(AlgebraError::NotNilpotent);
            }
            dims.push(current.len());
            last_nonzero = current.clone();
            let mut next = Vec::new();
            for row in &current {
                let x = AlgebraElement::new(row.clone());
                for y in &gens {
                    next.push(self.mul(&x, y).coords);
                }
            }
            current = linalg::row_space(&next);
        }
        self.height = dims.len();
        let mut power_dims = vec![1];
        for k in 0..dims.len() {
            power_dims.push(dims[k] - dims.get(k + 1).copied().unwrap_or(0));
        }
        self.power_dims = power_dims;
        self.top_ideal = last_nonzero;
        Ok(())
    }

    /// Dimension `n + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n`, the dimension of the maximal ideal.
    pub fn nil_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn power_dims(&self) -> &[usize] {
        &self.power_dims
    }

    /// Basis rows of the top nonzero power of the maximal ideal (the whole algebra
    /// when the height is 0).
    pub fn top_ideal(&self) -> &Matrix {
        &self.top_ideal
    }

    #[inline]
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &Rat {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }

    /// Nested copy `gamma[a][b][c]`.
    pub fn gamma_table(&self) -> Vec<Vec<Vec<Rat>>> {
        (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .map(|b| (0..self.dim).map(|c| self.gamma(a, b, c).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::basis(self.dim, 0)
    }

    pub fn basis(&self, a: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, a)
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<AlgebraElement, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(AlgebraElement::new(coords))
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        for z in [x, y] {
            if z.dim() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    found: z.dim(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// `(xy)^c = gamma_ab^c x^a y^b`; panics on a dimension mismatch.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let d = self.dim;
        assert!(x.dim() == d && y.dim() == d, "element dimension");
        let mut out = vec![Rat::zero(); d];
        for a in 0..d {
            if x.coords[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if y.coords[b].is_zero() {
                    continue;
                }
                let xy = &x.coords[a] * &y.coords[b];
                for (c, o) in out.iter_mut().enumerate() {
                    let g = self.gamma(a, b, c);
                    if !g.is_zero() {
                        *o += &xy * g;
                    }
                }
            }
        }
        AlgebraElement::new(out)
    }

    pub fn pow(&self, x: &AlgebraElement, k: usize) -> AlgebraElement {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Coefficients of `e_{a_1} ... e_{a_k}` in the basis.
    pub fn basis_product_coeffs(&self, indices: &[usize]) -> Result<Vec<Rat>, AlgebraError> {
        if let Some(&bad) = indices.iter().find(|&&a| a >= self.dim) {
            return Err(AlgebraError::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        let mut acc = self.unit();
        for &a in indices {
            acc = self.mul(&acc, &self.basis(a));
        }
        Ok(acc.coords)
    }

    /// Re-expresses the algebra in the basis whose rows (old coordinates) are given.
    /// The result is validated, so a change that breaks the Jordan–Hölder shape is
    /// rejected.
    pub fn change_basis(&self, rows: &Matrix) -> Result<WeilAlgebra, AlgebraError> {
        let d = self.dim;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: rows.len(),
            });
        }
        let inv = linalg::inverse(rows).ok_or(AlgebraError::NotJordanHolder { a: 0, b: 0, c: 0 })?;
        let mut flat = Vec::with_capacity(d * d * d);
        for a in 0..d {
            for b in 0..d {
                let prod = self.mul(
                    &AlgebraElement::new(rows[a].clone()),
                    &AlgebraElement::new(rows[b].clone()),
                );
                // new coordinates: row vector prod * inv
                for c in 0..d {
                    let mut s = Rat::zero();
                    for k in 0..d {
                        s += &prod.coords[k] * &inv[k][c];
                    }
                    flat.push(s);
                }
            }
        }
        WeilAlgebra::from_flat(d, flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn el(v: &[i64]) -> AlgebraElement {
        AlgebraElement::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn dual_numbers() {
        let a = WeilAlgebra::plural(1);
        assert!((0..2).all(|c| a.gamma(1, 1, c).is_zero()));
        assert_eq!(a.gamma(0, 1, 1), &int(1));
        assert_eq!(a.mul(&el(&[1, 1]), &el(&[1, 1])), el(&[1, 2]));
        assert_eq!(a.height(), 1);
    }

    #[test]
    fn plural_two_and_zero() {
        let a = WeilAlgebra::plural(2);
        assert_eq!(a.mul(&a.basis(1), &a.basis(1)), a.basis(2));
        assert!(a.mul(&a.basis(1), &a.basis(2)).is_zero());
        assert_eq!(a.power_dims(), &[1, 1, 1]);
        let r = WeilAlgebra::plural(0);
        assert_eq!(r.height(), 0);
        assert_eq!(r.nil_dim(), 0);
        assert_eq!(r.power_dims(), &[1]);
    }

    #[test]
    fn width_two_table() {
        let a = WeilAlgebra::width_two();
        assert_eq!(a.height(), 2);
        assert_eq!(a.power_dims(), &[1, 2, 1]);
        let s = &a.basis(1) + &a.basis(2);
        assert_eq!(a.mul(&s, &s), el(&[0, 0, 0, 2]));
    }

    #[test]
    fn idempotent_generator_is_rejected() {
        let mut g = WeilAlgebra::plural(1).gamma_table();
        g[1][1][1] = int(1);
        assert_eq!(
            WeilAlgebra::from_constants(2, &g),
            Err(AlgebraError::NotJordanHolder { a: 1, b: 1, c: 1 })
        );
    }

    #[test]
    fn validation_errors_name_the_index() {
        let mut g = WeilAlgebra::plural(2).gamma_table();
        g[1][2][0] = int(1);
        assert_eq!(
            WeilAlgebra::from_constants(3, &g),
            Err(AlgebraError::NotCommutative { a: 1, b: 2, c: 0 })
        );
        let mut g = WeilAlgebra::plural(1).gamma_table();
        g[0][1][1] = int(2);
        g[1][0][1] = int(2);
        assert_eq!(
            WeilAlgebra::from_constants(2, &g),
            Err(AlgebraError::BadUnit { a: 1, b: 1 })
        );
        assert!(matches!(
            WeilAlgebra::from_constants(2, &g[..1]),
            Err(AlgebraError::BadShape { .. })
        ));
        // e1^2 = e2 and e2^2 = e3 but e1 e2 = 0 breaks associativity
        let mut g = WeilAlgebra::plural(3).gamma_table();
        g[1][2][3] = int(0);
        g[2][1][3] = int(0);
        g[2][2][3] = int(1);
        assert!(matches!(
            WeilAlgebra::from_constants(4, &g),
            Err(AlgebraError::NotAssociative { .. })
        ));
    }

    #[test]
    fn basis_products() {
        let a = WeilAlgebra::plural(2);
        assert_eq!(a.basis_product_coeffs(&[1, 1]).unwrap(), el(&[0, 0, 1]).coords);
        assert_eq!(a.basis_product_coeffs(&[2]).unwrap(), el(&[0, 0, 1]).coords);
        let b = WeilAlgebra::plural(3);
        assert_eq!(b.basis_product_coeffs(&[1, 1, 1]).unwrap(), el(&[0, 0, 0, 1]).coords);
        assert_eq!(
            a.basis_product_coeffs(&[5]),
            Err(AlgebraError::IndexOutOfRange { index: 5, dim: 3 })
        );
    }

    #[test]
    fn triangular_basis_change_keeps_shape() {
        let a = WeilAlgebra::plural(2);
        let rows = vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(2), int(3)],
            vec![int(0), int(0), int(5)],
        ];
        let b = a.change_basis(&rows).unwrap();
        assert_eq!(b.power_dims(), &[1, 1, 1]);
        // e'_1^2 = 4 e_2 = (4/5) e'_2
        assert_eq!(b.mul(&b.basis(1), &b.basis(1)).coords[2], crate::rational::rat(4, 5));
    }
}
