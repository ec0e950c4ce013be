//! Prolongation of polynomial functions and maps to `A`-valued functions.
//!
//! The real coordinates on `T^A R^m` are `x^{ia}` with flat index `i * (n+1) + a`
//! (both indices 0-based). An [`AFunction`] stores the `n+1` real components of an
//! `A`-valued polynomial in those coordinates.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraElement, WeilAlgebra};
use crate::combinat::multi_indices;
use crate::poly::{PolyError, Polynomial};
use crate::rational::{factorial, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProlongError {
    #[error("function is not A-smooth: Scheffers equation fails at (b, i, a) = ({b}, {i}, {a})")]
    NotASmooth { b: usize, i: usize, a: usize },
    #[error("chart map has no inverse")]
    NoInverseProvided,
    #[error("supplied inverse does not invert the map")]
    InverseMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Flat real coordinate index of `x^{ia}`.
#[inline]
pub fn flat(i: usize, a: usize, dim: usize) -> usize {
    i * dim + a
}

/// The variable map sending base coordinate `x^i` to `x^{i0}`.
pub fn projection_map(m: usize, dim: usize) -> Vec<usize> {
    (0..m).map(|i| flat(i, 0, dim)).collect()
}

/// Composes a base polynomial with the bundle projection.
pub fn pull_to_base_coords(f: &Polynomial, dim: usize) -> Polynomial {
    let m = f.nvars();
    f.embed(m * dim, &projection_map(m, dim))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AFunction {
    base_dim: usize,
    comps: Vec<Polynomial>,
}

impl AFunction {
    pub fn new(base_dim: usize, comps: Vec<Polynomial>) -> Self {
        let dim = comps.len();
        assert!(
            comps.iter().all(|c| c.nvars() == base_dim * dim),
            "AFunction variable count"
        );
        AFunction { base_dim, comps }
    }

    pub fn zero(base_dim: usize, dim: usize) -> Self {
        AFunction {
            base_dim,
            comps: vec![Polynomial::zero(base_dim * dim); dim],
        }
    }

    pub fn constant(base_dim: usize, x: &AlgebraElement) -> Self {
        let dim = x.dim();
        AFunction {
            base_dim,
            comps: x
                .coords
                .iter()
                .map(|c| Polynomial::constant(base_dim * dim, c.clone()))
                .collect(),
        }
    }

    /// `X^i = x^{ia} e_a`.
    pub fn coordinate(base_dim: usize, dim: usize, i: usize) -> Self {
        let nv = base_dim * dim;
        AFunction {
            base_dim,
            comps: (0..dim).map(|a| Polynomial::var(nv, flat(i, a, dim))).collect(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn nvars(&self) -> usize {
        self.base_dim * self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn component(&self, b: usize) -> &Polynomial {
        &self.comps[b]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &AFunction) -> AFunction {
        AFunction {
            base_dim: self.base_dim,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &AFunction) -> AFunction {
        AFunction {
            base_dim: self.base_dim,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> AFunction {
        AFunction {
            base_dim: self.base_dim,
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Product in `A`: `(FG)^c = gamma_ab^c F^a G^b`.
    pub fn mul(&self, alg: &WeilAlgebra, other: &AFunction) -> AFunction {
        let d = alg.dim();
        assert_eq!(self.dim(), d);
        assert_eq!(other.dim(), d);
        let nv = self.nvars();
        let mut out = vec![Polynomial::zero(nv); d];
        for a in 0..d {
            if self.comps[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if other.comps[b].is_zero() {
                    continue;
                }
                let mut prod: Option<Polynomial> = None;
                for (c, o) in out.iter_mut().enumerate() {
                    let g = alg.gamma(a, b, c);
                    if g.is_zero() {
                        continue;
                    }
                    let p = prod.get_or_insert_with(|| &self.comps[a] * &other.comps[b]);
                    *o += &p.scale(g);
                }
            }
        }
        AFunction {
            base_dim: self.base_dim,
            comps: out,
        }
    }

    /// Product with a constant algebra element.
    pub fn mul_element(&self, alg: &WeilAlgebra, x: &AlgebraElement) -> AFunction {
        self.mul(alg, &AFunction::constant(self.base_dim, x))
    }

    /// Value at a real point of `T^A R^m` (flat coordinates).
    pub fn eval(&self, point: &[Rat]) -> AlgebraElement {
        AlgebraElement::new(self.comps.iter().map(|c| c.eval(point)).collect())
    }

    /// Componentwise partial derivative in the real variable `x^{ia}`.
    pub fn partial(&self, i: usize, a: usize) -> AFunction {
        let d = self.dim();
        AFunction {
            base_dim: self.base_dim,
            comps: self.comps.iter().map(|c| c.diff(flat(i, a, d))).collect(),
        }
    }

    /// Substitutes real polynomials for the flat coordinates.
    pub fn compose(&self, args: &[Polynomial]) -> Result<AFunction, ProlongError> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.try_compose(args))
            .collect::<Result<Vec<_>, _>>()?;
        let nv = args.first().map(Polynomial::nvars).unwrap_or(0);
        let d = comps.len();
        if nv % d != 0 {
            return Err(ProlongError::DimensionMismatch { expected: d, found: nv });
        }
        Ok(AFunction {
            base_dim: nv / d,
            comps,
        })
    }
}

/// `f^A` by substituting `X^i = x^{ia} e_a` and multiplying in `A`.
pub fn prolong_scalar(f: &Polynomial, alg: &WeilAlgebra) -> AFunction {
    let m = f.nvars();
    let d = alg.dim();
    let coords: Vec<AFunction> = (0..m).map(|i| AFunction::coordinate(m, d, i)).collect();
    let mut powers: Vec<Vec<AFunction>> = vec![vec![AFunction::constant(m, &alg.unit())]; m];
    let mut out = AFunction::zero(m, d);
    for (mono, c) in f.terms() {
        let mut term = AFunction::constant(m, &alg.unit().scale(c));
        for (i, &k) in mono.exps().iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(alg, &coords[i]);
                powers[i].push(next);
            }
            term = term.mul(alg, &powers[i][k as usize]);
        }
        out = out.add(&term);
    }
    out
}

/// `f^A` by the truncated Taylor formula `sum_{|p| <= h} D^p f(x^{.0}) X°^p / p!`,
/// where `X°^i = x^{ia} e_a` summed over `a >= 1`.
pub fn prolong_scalar_taylor(f: &Polynomial, alg: &WeilAlgebra) -> AFunction {
    let m = f.nvars();
    let d = alg.dim();
    let nv = m * d;
    let nil: Vec<AFunction> = (0..m)
        .map(|i| {
            let mut comps = vec![Polynomial::zero(nv); d];
            for (a, comp) in comps.iter_mut().enumerate().skip(1) {
                *comp = Polynomial::var(nv, flat(i, a, d));
            }
            AFunction::new(m, comps)
        })
        .collect();
    let base = projection_map(m, d);
    let mut out = AFunction::zero(m, d);
    for p in multi_indices(m, alg.height() as u32) {
        let mut deriv = f.clone();
        let mut denom = Rat::from_integer(1.into());
        for (i, &k) in p.iter().enumerate() {
            for _ in 0..k {
                deriv = deriv.diff(i);
            }
            denom *= factorial(k);
        }
        if deriv.is_zero() {
            continue;
        }
        let coeff = deriv.embed(nv, &base).scale(&(Rat::from_integer(1.into()) / denom));
        let mut mono = AFunction::constant(m, &alg.unit());
        for (i, &k) in p.iter().enumerate() {
            for _ in 0..k {
                mono = mono.mul(alg, &nil[i]);
            }
        }
        let mut term_comps = vec![Polynomial::zero(nv); d];
        for (b, comp) in term_comps.iter_mut().enumerate() {
            *comp = &coeff * mono.component(b);
        }
        out = out.add(&AFunction::new(m, term_comps));
    }
    out
}

/// First Scheffers failure `(b, i, a)` of `df^b/dx^{ia} = gamma_ac^b delta^d df^c/dx^{id}`.
pub fn check_scheffers(alg: &WeilAlgebra, f: &AFunction) -> Result<(), (usize, usize, usize)> {
    let d = alg.dim();
    let m = f.base_dim();
    for b in 0..d {
        for i in 0..m {
            // delta = (1, 0, ..., 0): the right side only involves x^{i0}-derivatives
            let base_derivs: Vec<Polynomial> = (0..d).map(|c| f.component(c).diff(flat(i, 0, d))).collect();
            for a in 0..d {
                let lhs = f.component(b).diff(flat(i, a, d));
                let mut rhs = Polynomial::zero(f.nvars());
                for (c, dc) in base_derivs.iter().enumerate() {
                    let g = alg.gamma(a, c, b);
                    if !g.is_zero() {
                        rhs += &dc.scale(g);
                    }
                }
                if lhs != rhs {
                    return Err((b, i, a));
                }
            }
        }
    }
    Ok(())
}

/// `A`-partial derivative `delta^a dF/dx^{ia}`.
pub fn a_derivative(alg: &WeilAlgebra, f: &AFunction, i: usize) -> Result<AFunction, ProlongError> {
    if i >= f.base_dim() {
        return Err(ProlongError::DimensionMismatch {
            expected: f.base_dim(),
            found: i,
        });
    }
    check_scheffers(alg, f).map_err(|(b, i, a)| ProlongError::NotASmooth { b, i, a })?;
    Ok(f.partial(i, 0))
}

/// Polynomial map between coordinate patches, optionally with a polynomial inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartMap {
    source_dim: usize,
    components: Vec<Polynomial>,
    inverse: Option<Vec<Polynomial>>,
}

impl ChartMap {
    /// Validates arities and, when supplied, that the inverse is a two-sided inverse.
    pub fn new(components: Vec<Polynomial>, inverse: Option<Vec<Polynomial>>) -> Result<ChartMap, ProlongError> {
        let source_dim = components.first().map(Polynomial::nvars).unwrap_or(0);
        if let Some(bad) = components.iter().find(|c| c.nvars() != source_dim) {
            return Err(ProlongError::DimensionMismatch {
                expected: source_dim,
                found: bad.nvars(),
            });
        }
        if let Some(inv) = &inverse {
            let target = components.len();
            if inv.len() != source_dim || inv.iter().any(|c| c.nvars() != target) {
                return Err(ProlongError::DimensionMismatch {
                    expected: source_dim,
                    found: inv.len(),
                });
            }
            let there: Vec<Polynomial> = components
                .iter()
                .map(|c| c.try_compose(inv))
                .collect::<Result<_, _>>()?;
            let back: Vec<Polynomial> = inv
                .iter()
                .map(|c| c.try_compose(&components))
                .collect::<Result<_, _>>()?;
            let id_t = (0..target).all(|j| there[j] == Polynomial::var(target, j));
            let id_s = (0..source_dim).all(|j| back[j] == Polynomial::var(source_dim, j));
            if !(id_t && id_s) {
                return Err(ProlongError::InverseMismatch);
            }
        }
        Ok(ChartMap {
            source_dim,
            components,
            inverse,
        })
    }

    pub fn identity(m: usize) -> ChartMap {
        let id: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(m, i)).collect();
        ChartMap {
            source_dim: m,
            components: id.clone(),
            inverse: Some(id),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn inverse_components(&self) -> Option<&[Polynomial]> {
        self.inverse.as_deref()
    }

    /// The inverse as a chart map (whose inverse is `self`).
    pub fn inverted(&self) -> Result<ChartMap, ProlongError> {
        let inv = self.inverse.clone().ok_or(ProlongError::NoInverseProvided)?;
        Ok(ChartMap {
            source_dim: self.components.len(),
            components: inv,
            inverse: Some(self.components.clone()),
        })
    }

    /// `jac[j][i] = d phi^j / d x^i`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|c| (0..self.source_dim).map(|i| c.diff(i)).collect())
            .collect()
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Rat> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// `self ∘ first`: apply `first`, then `self`. Inverses compose when both exist.
    pub fn after(&self, first: &ChartMap) -> Result<ChartMap, ProlongError> {
        if first.target_dim() != self.source_dim {
            return Err(ProlongError::DimensionMismatch {
                expected: self.source_dim,
                found: first.target_dim(),
            });
        }
        let comps: Vec<Polynomial> = self.components.iter().map(|c| c.compose(&first.components)).collect();
        let inverse = match (&self.inverse, &first.inverse) {
            (Some(a), Some(b)) => Some(b.iter().map(|c| c.compose(a)).collect()),
            _ => None,
        };
        ChartMap::new(comps, inverse)
    }
}

/// Prolongs `phi` and its inverse componentwise to the real coordinates of `T^A`.
pub fn prolong_chart_map(phi: &ChartMap, alg: &WeilAlgebra) -> Result<ChartMap, ProlongError> {
    let inv = phi.inverse_components().ok_or(ProlongError::NoInverseProvided)?;
    let lift = |comps: &[Polynomial]| -> Vec<Polynomial> {
        comps
            .iter()
            .flat_map(|c| prolong_scalar(c, alg).components().to_vec())
            .collect()
    };
    ChartMap::new(lift(phi.components()), Some(lift(inv)))
}

/// Evaluates a polynomial matrix at a point.
pub fn eval_matrix(m: &[Vec<Polynomial>], point: &[Rat]) -> Vec<Vec<Rat>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.eval(point)).collect())
        .collect()
}

/// True when every entry of the matrix is zero.
pub fn is_zero_matrix(m: &[Vec<Polynomial>]) -> bool {
    m.iter().all(|r| r.iter().all(Polynomial::is_zero))
}

/// Real-part evaluation helper: the base point `x^{.0}` of a bundle point.
pub fn base_point(point: &[Rat], m: usize, dim: usize) -> Vec<Rat> {
    (0..m).map(|i| point[flat(i, 0, dim)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn square_on_dual_numbers() {
        let a = WeilAlgebra::plural(1);
        let f = v(1, 0).pow(2);
        let fa = prolong_scalar(&f, &a);
        assert_eq!(fa.component(0), &v(2, 0).pow(2));
        assert_eq!(fa.component(1), &(&v(2, 0) * &v(2, 1)).scale(&int(2)));
        assert_eq!(prolong_scalar_taylor(&f, &a), fa);
    }

    #[test]
    fn product_of_coordinates() {
        let a = WeilAlgebra::plural(1);
        let f = &v(2, 0) * &v(2, 1);
        let fa = prolong_scalar(&f, &a);
        // x1 = x^{1,0}, y1 = x^{1,1}, x2 = x^{2,0}, y2 = x^{2,1}
        assert_eq!(fa.component(0), &(&v(4, 0) * &v(4, 2)));
        assert_eq!(fa.component(1), &(&(&v(4, 0) * &v(4, 3)) + &(&v(4, 2) * &v(4, 1))));
    }

    #[test]
    fn constants_prolong_to_constants() {
        let a = WeilAlgebra::plural(2);
        let fa = prolong_scalar(&Polynomial::constant(2, int(7)), &a);
        assert_eq!(fa.component(0), &Polynomial::constant(6, int(7)));
        assert!(fa.component(1).is_zero() && fa.component(2).is_zero());
        assert!(check_scheffers(&a, &fa).is_ok());
        assert!(a_derivative(&a, &fa, 0).unwrap().is_zero());
    }

    #[test]
    fn scheffers_detects_non_smooth_function() {
        let a = WeilAlgebra::plural(1);
        let f = AFunction::new(1, vec![v(2, 1), Polynomial::zero(2)]);
        // base index 0 here is the first coordinate
        assert_eq!(check_scheffers(&a, &f), Err((0, 0, 1)));
        assert_eq!(
            a_derivative(&a, &f, 0),
            Err(ProlongError::NotASmooth { b: 0, i: 0, a: 1 })
        );
    }

    #[test]
    fn a_derivative_commutes_with_prolongation() {
        let a = WeilAlgebra::plural(2);
        let f = v(1, 0).pow(2);
        let lhs = a_derivative(&a, &prolong_scalar(&f, &a), 0).unwrap();
        assert_eq!(lhs, prolong_scalar(&f.diff(0), &a));
    }

    #[test]
    fn shear_prolongation() {
        let a = WeilAlgebra::plural(1);
        let phi = ChartMap::new(
            vec![&v(2, 0) + &v(2, 1).pow(2), v(2, 1)],
            Some(vec![&v(2, 0) - &v(2, 1).pow(2), v(2, 1)]),
        )
        .unwrap();
        let big = prolong_chart_map(&phi, &a).unwrap();
        // flat: x1=0, y1=1, x2=2, y2=3
        let y1 = &v(4, 1) + &(&v(4, 2) * &v(4, 3)).scale(&int(2));
        assert_eq!(big.components()[1], y1);
        assert_eq!(big.components()[3], v(4, 3));
        let pt = [int(1), int(2), int(3), int(4)];
        let small = crate::linalg::det(&eval_matrix(&phi.jacobian(), &base_point(&pt, 2, 2)));
        let large = crate::linalg::det(&eval_matrix(&big.jacobian(), &pt));
        assert_eq!(small, int(1));
        assert_eq!(large, int(1));
    }

    #[test]
    fn identity_prolongs_to_identity() {
        let a = WeilAlgebra::width_two();
        let big = prolong_chart_map(&ChartMap::identity(2), &a).unwrap();
        assert_eq!(big, ChartMap::identity(8));
        assert_eq!(
            prolong_chart_map(&ChartMap::new(vec![v(1, 0)], None).unwrap(), &a),
            Err(ProlongError::NoInverseProvided)
        );
    }
}
