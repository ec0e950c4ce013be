use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::Zero;

use super::TensorError;
use crate::combinat::{canonical, merge_sign};
use crate::poly::Polynomial;
use crate::rational::Rat;

pub trait Variance: Clone + fmt::Debug + PartialEq + Eq + Default {
    const UPPER: bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Lower;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Upper;

impl Variance for Lower {
    const UPPER: bool = false;
}

impl Variance for Upper {
    const UPPER: bool = true;
}

/// Alternating field with canonical (strictly increasing) index storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternating<V: Variance> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
    _v: PhantomData<V>,
}

pub type DifferentialForm = Alternating<Lower>;
pub type MultiVectorField = Alternating<Upper>;

impl<V: Variance> Alternating<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Alternating {
            dim,
            degree,
            comps: BTreeMap::new(),
            _v: PhantomData,
        }
    }

    /// A degree-0 field.
    pub fn function(f: Polynomial) -> Self {
        let mut out = Alternating::zero(f.nvars(), 0);
        out.add_at(&[], &f);
        out
    }

    /// Accumulates components given in any index order.
    pub fn from_components(
        dim: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Polynomial)>,
    ) -> Result<Self, TensorError> {
        let mut out = Alternating::zero(dim, degree);
        for (idx, p) in comps {
            if idx.len() != degree {
                return Err(TensorError::DegreeMismatch(format!(
                    "index tuple of length {} for degree {}",
                    idx.len(),
                    degree
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(TensorError::IndexOutOfRange { index: bad, dim });
            }
            if p.nvars() != dim {
                return Err(TensorError::PatchMismatch {
                    left: dim,
                    right: p.nvars(),
                });
            }
            out.add_at(&idx, &p);
        }
        Ok(out)
    }

    /// `dx^i` or `∂_i` as a degree-1 field.
    pub fn basis1(dim: usize, i: usize) -> Self {
        let mut out = Alternating::zero(dim, 1);
        out.add_at(&[i], &Polynomial::one(dim));
        out
    }

    /// Wedge of coordinate basis elements, e.g. `∂_0 ∧ ∂_1`.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut out = Alternating::zero(dim, idx.len());
        out.add_at(idx, &Polynomial::one(dim));
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Canonical components in increasing key order.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    /// Full-array component at any index tuple.
    pub fn get(&self, idx: &[usize]) -> Polynomial {
        match canonical(idx) {
            None => Polynomial::zero(self.dim),
            Some((key, sign)) => match self.comps.get(&key) {
                None => Polynomial::zero(self.dim),
                Some(p) if sign > 0 => p.clone(),
                Some(p) => -p,
            },
        }
    }

    /// For degree 0, the function itself.
    pub fn as_function(&self) -> Polynomial {
        self.get(&[])
    }

    /// Adds `p` at `idx` (any order, sign-adjusted); repeated indices are ignored.
    pub fn add_at(&mut self, idx: &[usize], p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let Some((key, sign)) = canonical(idx) else {
            return;
        };
        let entry = self
            .comps
            .entry(key.clone())
            .or_insert_with(|| Polynomial::zero(p.nvars()));
        if sign > 0 {
            *entry += p;
        } else {
            *entry -= p;
        }
        if entry.is_zero() {
            self.comps.remove(&key);
        }
    }

    fn check_patch(&self, other: &Self) -> Result<(), TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::PatchMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_patch(other)?;
        if self.degree != other.degree {
            return Err(TensorError::DegreeMismatch(format!(
                "{} + {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, p) in &other.comps {
            out.add_at(k, p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("alternating add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Alternating::zero(self.dim, self.degree);
        }
        self.map(|p| p.scale(c))
    }

    /// Multiplies every component by a function.
    pub fn mul_function(&self, f: &Polynomial) -> Self {
        self.map(|p| p * f)
    }

    /// Applies `f` to every stored component, dropping zeros.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        self.map_to(self.dim, f)
    }

    /// Like [`Alternating::map`] but for an `f` that changes the variable count to
    /// `new_dim` (composition with a map between patches).
    pub fn map_to(&self, new_dim: usize, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut comps = BTreeMap::new();
        for (k, p) in &self.comps {
            let q = f(p);
            debug_assert_eq!(q.nvars(), new_dim);
            if !q.is_zero() {
                comps.insert(k.clone(), q);
            }
        }
        Alternating {
            dim: new_dim,
            degree: self.degree,
            comps,
            _v: PhantomData,
        }
    }

    /// Determinant-convention wedge product.
    pub fn try_wedge(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_patch(other)?;
        let mut out = Alternating::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.comps {
            for (j, b) in &other.comps {
                if let Some((k, s)) = merge_sign(i, j) {
                    let prod = a * b;
                    out.add_at(&k, &if s > 0 { prod } else { -&prod });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge patch")
    }

    /// Applies `f` to index tuples (re-canonicalizing), e.g. to embed a patch.
    pub fn reindex(&self, new_dim: usize, map: &[usize], f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Alternating::zero(new_dim, self.degree);
        for (k, p) in &self.comps {
            let idx: Vec<usize> = k.iter().map(|&i| map[i]).collect();
            out.add_at(&idx, &f(p));
        }
        out
    }

    /// All polynomials evaluated at a point, as `(key, value)` pairs.
    pub fn eval(&self, point: &[Rat]) -> BTreeMap<Vec<usize>, Rat> {
        self.comps
            .iter()
            .map(|(k, p)| (k.clone(), p.eval(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Renders as a sum of basis elements using the given coordinate naming.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(k, p)| {
                let basis: Vec<String> = k
                    .iter()
                    .map(|&i| {
                        if V::UPPER {
                            format!("d/d{}", name(i))
                        } else {
                            format!("d{}", name(i))
                        }
                    })
                    .collect();
                let coeff = p.render(name);
                if basis.is_empty() {
                    coeff
                } else {
                    format!("({}) {}", coeff, basis.join("^"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// First key where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<Vec<usize>> {
        let keys: std::collections::BTreeSet<&Vec<usize>> = self.comps.keys().chain(other.comps.keys()).collect();
        keys.into_iter()
            .find(|k| self.comps.get(*k) != other.comps.get(*k))
            .cloned()
    }
}

impl<V: Variance> fmt::Display for Alternating<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|j| format!("x{}", j + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn wedge_conventions() {
        let d1 = DifferentialForm::basis1(2, 0);
        let d2 = DifferentialForm::basis1(2, 1);
        assert!(d1.wedge(&d1).is_zero());
        let w = d1.wedge(&d2);
        assert_eq!(w.get(&[0, 1]), Polynomial::one(2));
        assert_eq!(w.get(&[1, 0]), -&Polynomial::one(2));
        assert_eq!(d2.wedge(&d1), w.neg());
    }

    #[test]
    fn sign_extension_on_input() {
        let u = MultiVectorField::from_components(3, 2, [(vec![2, 0], Polynomial::constant(3, int(5)))]).unwrap();
        assert_eq!(u.get(&[0, 2]), Polynomial::constant(3, int(-5)));
        assert!(MultiVectorField::from_components(3, 2, [(vec![0, 3], Polynomial::one(3))]).is_err());
    }

    #[test]
    fn degree_overflow_is_zero() {
        let a = DifferentialForm::basis(2, &[0, 1]);
        assert!(a.wedge(&DifferentialForm::basis1(2, 0)).is_zero());
    }
}
