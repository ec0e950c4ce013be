//! Frobenius covectors on a Weil algebra and the data derived from them.

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, AlgebraError, WeilAlgebra};
use crate::linalg::{self, Matrix};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusStructure {
    algebra: WeilAlgebra,
    p: Vec<Rat>,
    q_lower: Matrix,
    q_upper: Matrix,
    dual_basis: Vec<AlgebraElement>,
    gamma_upper: Vec<Rat>,
}

impl FrobeniusStructure {
    /// Attaches `p` to `algebra`, rescaling so that `p(e_n) = 1`.
    pub fn attach(algebra: &WeilAlgebra, p: &[Rat]) -> Result<FrobeniusStructure, AlgebraError> {
        let d = algebra.dim();
        if p.len() != d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        let top = algebra.top_ideal().len();
        if top != 1 {
            return Err(AlgebraError::HeightIdealNotLine { dim: top });
        }
        if linalg::det(&q_from(algebra, p)).is_zero() {
            return Err(AlgebraError::NotFrobenius);
        }
        let top_p = &p[d - 1];
        if top_p.is_zero() {
            return Err(AlgebraError::PVanishesOnTop);
        }
        let p: Vec<Rat> = p.iter().map(|x| x / top_p).collect();
        let q_lower = q_from(algebra, &p);
        let q_upper = linalg::inverse(&q_lower).expect("nondegenerate q");
        let dual_basis = q_upper.iter().map(|row| AlgebraElement::new(row.clone())).collect();
        let mut gamma_upper = vec![Rat::zero(); d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut s = Rat::zero();
                    for dd in 0..d {
                        s += &q_upper[a][dd] * algebra.gamma(dd, c, b);
                    }
                    gamma_upper[(a * d + b) * d + c] = s;
                }
            }
        }
        Ok(FrobeniusStructure {
            algebra: algebra.clone(),
            p,
            q_lower,
            q_upper,
            dual_basis,
            gamma_upper,
        })
    }

    pub fn algebra(&self) -> &WeilAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn p(&self) -> &[Rat] {
        &self.p
    }

    pub fn q_lower(&self) -> &Matrix {
        &self.q_lower
    }

    pub fn q_upper(&self) -> &Matrix {
        &self.q_upper
    }

    /// `e^a = q^{ab} e_b`.
    pub fn dual(&self, a: usize) -> &AlgebraElement {
        &self.dual_basis[a]
    }

    pub fn dual_basis(&self) -> &[AlgebraElement] {
        &self.dual_basis
    }

    /// `gamma_c^{ab} = q^{ad} gamma_{dc}^b`.
    #[inline]
    pub fn gamma_upper(&self, a: usize, b: usize, c: usize) -> &Rat {
        let d = self.dim();
        &self.gamma_upper[(a * d + b) * d + c]
    }

    /// `p(X) = p_a x^a`.
    pub fn eval_p(&self, x: &AlgebraElement) -> Rat {
        self.p
            .iter()
            .zip(&x.coords)
            .fold(Rat::zero(), |acc, (p, x)| acc + p * x)
    }

    /// `q(X, Y) = q_ab x^a y^b`.
    pub fn q(&self, x: &AlgebraElement, y: &AlgebraElement) -> Rat {
        let qy = linalg::mat_vec(&self.q_lower, &y.coords);
        x.coords.iter().zip(&qy).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The isomorphism `A -> A*`, `X -> q(X, .)`.
    pub fn phi(&self, x: &AlgebraElement) -> Vec<Rat> {
        linalg::mat_vec(&self.q_lower, &x.coords)
    }

    pub fn phi_inv(&self, xi: &[Rat]) -> AlgebraElement {
        AlgebraElement::new(linalg::mat_vec(&self.q_upper, xi))
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Multiplication on covectors transported through `phi`.
    pub fn star_multiply(&self, xi: &[Rat], eta: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        self.check_len(xi)?;
        self.check_len(eta)?;
        let prod = self.algebra.mul(&self.phi_inv(xi), &self.phi_inv(eta));
        Ok(self.phi(&prod))
    }

    /// `q~(xi, eta) = xi(phi^{-1} eta)`.
    pub fn q_tilde(&self, xi: &[Rat], eta: &[Rat]) -> Rat {
        let y = self.phi_inv(eta);
        xi.iter().zip(&y.coords).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Coefficient vector `k_s = p(e_s e_{a_1}..e_{a_k} e^{b_1}..e^{b_l})`, so that
    /// `p(T e_{a..} e^{b..}) = k_s T^s`.
    pub fn realization_kernel(&self, lower: &[usize], upper: &[usize]) -> Vec<Rat> {
        let alg = &self.algebra;
        let mut m = alg.unit();
        for &a in lower {
            m = alg.mul(&m, &alg.basis(a));
        }
        for &b in upper {
            m = alg.mul(&m, &self.dual_basis[b]);
        }
        (0..self.dim())
            .map(|s| self.eval_p(&alg.mul(&alg.basis(s), &m)))
            .collect()
    }

    /// Checks every structural identity of the Frobenius data; returns the name of
    /// the first one that fails.
    pub fn verify_invariants(&self) -> Result<(), String> {
        let d = self.dim();
        let alg = &self.algebra;
        let g = |a, b, c| alg.gamma(a, b, c);
        let delta = |a: usize, b: usize| if a == b { Rat::one() } else { Rat::zero() };
        for a in 0..d {
            for b in 0..d {
                if self.q_lower[a][b] != self.q_lower[b][a] {
                    return Err("q symmetric".into());
                }
            }
        }
        if linalg::mat_mul(&self.q_lower, &self.q_upper) != linalg::identity(d) {
            return Err("q inverse".into());
        }
        for a in 0..d {
            for b in 0..d {
                for dd in 0..d {
                    let mut l = Rat::zero();
                    let mut r = Rat::zero();
                    for c in 0..d {
                        l += &self.q_lower[a][c] * g(b, dd, c);
                        r += g(a, b, c) * &self.q_lower[c][dd];
                    }
                    if l != r {
                        return Err("associativity of q".into());
                    }
                }
            }
        }
        for b in 0..d {
            if self.p[b] != self.q_lower[b][0] {
                return Err("p_b = q_bc delta^c".into());
            }
        }
        for a in 0..d {
            let s = (0..d).fold(Rat::zero(), |acc, b| acc + &self.q_upper[a][b] * &self.p[b]);
            if s != delta(a, 0) {
                return Err("q^ab p_b = delta^a".into());
            }
        }
        for a in 0..d {
            for b in 0..d {
                if self.gamma_upper(a, b, 0) != &self.q_upper[a][b] {
                    return Err("gamma_c^ab delta^c = q^ab".into());
                }
            }
        }
        for a in 0..d {
            for c in 0..d {
                let v = self.eval_p(&alg.mul(&alg.basis(a), &self.dual_basis[c]));
                if v != delta(a, c) {
                    return Err("p(e_a e^c) = delta".into());
                }
            }
        }
        for b in 0..d {
            if self.q_upper[0][b] != delta(b, d - 1) {
                return Err("q^0b = delta_bn".into());
            }
        }
        Ok(())
    }
}

fn q_from(algebra: &WeilAlgebra, p: &[Rat]) -> Matrix {
    let d = algebra.dim();
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| (0..d).fold(Rat::zero(), |acc, c| acc + &p[c] * algebra.gamma(a, b, c)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn second_order_plural_top_covector() {
        let a = WeilAlgebra::plural(2);
        let f = FrobeniusStructure::attach(&a, &ints(&[0, 0, 1])).unwrap();
        assert_eq!(f.q_lower(), &vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
        f.verify_invariants().unwrap();
    }

    #[test]
    fn rejection_and_rescaling() {
        let a = WeilAlgebra::plural(1);
        assert_eq!(
            FrobeniusStructure::attach(&a, &ints(&[1, 0])),
            Err(AlgebraError::NotFrobenius)
        );
        let f = FrobeniusStructure::attach(&a, &ints(&[0, 2])).unwrap();
        assert_eq!(f.p(), &ints(&[0, 1])[..]);
        assert_eq!(f.q_lower(), &vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert!(matches!(
            FrobeniusStructure::attach(&a, &ints(&[1])),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn algebra_with_two_dimensional_socle_has_no_frobenius_form() {
        // R[u,v]/(u,v)^2 has a two-dimensional top ideal
        let mut g = vec![vec![vec![int(0); 3]; 3]; 3];
        for a in 0..3 {
            g[0][a][a] = int(1);
            g[a][0][a] = int(1);
        }
        let a = WeilAlgebra::from_constants(3, &g).unwrap();
        assert_eq!(
            FrobeniusStructure::attach(&a, &ints(&[0, 1, 1])),
            Err(AlgebraError::HeightIdealNotLine { dim: 2 })
        );
    }

    #[test]
    fn star_product_unit_and_dual_numbers() {
        let a = WeilAlgebra::plural(1);
        let f = FrobeniusStructure::attach(&a, &ints(&[0, 1])).unwrap();
        let p = f.p().to_vec();
        assert_eq!(f.star_multiply(&p, &p).unwrap(), p);
        let pe = f.phi(&a.basis(1));
        assert_eq!(pe, ints(&[1, 0]));
        assert_eq!(f.star_multiply(&pe, &pe).unwrap(), ints(&[0, 0]));
    }

    #[test]
    fn width_two_accepts_top_covector() {
        let a = WeilAlgebra::width_two();
        let f = FrobeniusStructure::attach(&a, &ints(&[0, 0, 0, 1])).unwrap();
        f.verify_invariants().unwrap();
    }
}
