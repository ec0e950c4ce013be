//! Exact multivariate polynomials over the rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by dense exponent vectors ordered
//! graded-lexicographically, so iteration and printing are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{fmt_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
}

/// Exponent vector with graded-lex ordering (total degree first, then lex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rat::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let nvars = exps.len();
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Rat, Vec<u32>)>) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(PolyError::VarCountMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn try_diff(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * Rat::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Partial derivative; panics on an out-of-range index.
    pub fn diff(&self, i: usize) -> Polynomial {
        self.try_diff(i).expect("diff index")
    }

    /// Substitutes `args[j]` for variable `j`.
    pub fn try_compose(&self, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if args.len() != self.nvars {
            return Err(PolyError::VarCountMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        let target = match args.first() {
            Some(a) => a.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = args.iter().find(|a| a.nvars != target) {
            return Err(PolyError::VarCountMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (j, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().unwrap() * &args[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][k as usize];
            }
            out += &term;
        }
        Ok(out)
    }

    pub fn compose(&self, args: &[Polynomial]) -> Polynomial {
        self.try_compose(args).expect("compose arity")
    }

    pub fn try_eval(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::VarCountMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.try_eval(point).expect("eval arity")
    }

    /// Re-indexes variables: variable `j` becomes variable `map[j]` of a ring with
    /// `new_nvars` variables.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars, "embedding map arity");
        let mut out = Polynomial::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (j, &k) in m.0.iter().enumerate() {
                e[map[j]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// True when the polynomial does not involve variable `i`.
    pub fn independent_of(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.0[i] == 0)
    }

    /// Renders with a caller-supplied variable naming.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| if k == 1 { name(j) } else { format!("{}^{}", name(j), k) })
                    .collect();
            if vars.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|j| format!("x{}", j + 1)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("add arity")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("mul arity")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "add arity");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "sub arity");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = Polynomial::one(1);
        let p = &(&x(1, 0) + &one) * &(&x(1, 0) - &one);
        assert_eq!(p, &x(1, 0).pow(2) - &one);
        assert!((&p * &Polynomial::zero(1)).is_zero());
    }

    #[test]
    fn square_of_sum() {
        let s = &x(2, 0) + &x(2, 1);
        let expect =
            Polynomial::from_terms(2, [(int(1), vec![2, 0]), (int(2), vec![1, 1]), (int(1), vec![0, 2])]).unwrap();
        assert_eq!(s.pow(2), expect);
    }

    #[test]
    fn derivatives() {
        assert_eq!(x(1, 0).pow(2).diff(0), x(1, 0).scale(&int(2)));
        assert_eq!((&x(2, 0) * &x(2, 1)).diff(1), x(2, 0));
        assert!(Polynomial::constant(1, int(5)).diff(0).is_zero());
        assert_eq!(
            x(1, 0).try_diff(3),
            Err(PolyError::IndexOutOfRange { index: 3, nvars: 1 })
        );
    }

    #[test]
    fn composition_and_evaluation() {
        let f = x(1, 0).pow(2);
        let g = &x(1, 0) + &Polynomial::one(1);
        let expect = Polynomial::from_terms(1, [(int(1), vec![2]), (int(2), vec![1]), (int(1), vec![0])]).unwrap();
        assert_eq!(f.compose(&[g]), expect);
        let h = &x(2, 0) + &x(2, 1);
        assert_eq!(h.compose(&[x(2, 1), x(2, 0)]), h);
        let q = &x(1, 0).pow(2) - &Polynomial::one(1);
        assert_eq!(q.eval(&[int(3)]), int(8));
        assert_eq!(Polynomial::constant(3, int(5)).eval(&[int(1), int(2), int(3)]), int(5));
        assert!(matches!(q.try_eval(&[]), Err(PolyError::VarCountMismatch { .. })));
        assert!(matches!(
            q.try_mul(&Polynomial::one(2)),
            Err(PolyError::VarCountMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = Polynomial::from_terms(2, [(int(1), vec![0, 0]), (int(-3), vec![1, 1]), (int(2), vec![0, 1])]).unwrap();
        assert_eq!(p.to_string(), "-3*x1*x2 + 2*x2 + 1");
    }
}
