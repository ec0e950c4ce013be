use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Alternating, TensorError, Variance};
use crate::combinat::all_tuples;
use crate::poly::Polynomial;
use crate::rational::Rat;

/// General `(k, l)` tensor field with full component storage. A key lists the `k`
/// covariant indices followed by the `l` contravariant ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedTensorField {
    dim: usize,
    lower: usize,
    upper: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

impl MixedTensorField {
    pub fn zero(dim: usize, lower: usize, upper: usize) -> Self {
        MixedTensorField {
            dim,
            lower,
            upper,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_components(
        dim: usize,
        lower: usize,
        upper: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Vec<usize>, Polynomial)>,
    ) -> Result<Self, TensorError> {
        let mut out = MixedTensorField::zero(dim, lower, upper);
        for (lo, up, p) in comps {
            if lo.len() != lower || up.len() != upper {
                return Err(TensorError::DegreeMismatch(format!(
                    "index tuple of type ({}, {}) for a ({lower}, {upper}) tensor",
                    lo.len(),
                    up.len()
                )));
            }
            if let Some(&bad) = lo.iter().chain(&up).find(|&&i| i >= dim) {
                return Err(TensorError::IndexOutOfRange { index: bad, dim });
            }
            if p.nvars() != dim {
                return Err(TensorError::PatchMismatch {
                    left: dim,
                    right: p.nvars(),
                });
            }
            let mut key = lo;
            key.extend(up);
            out.add_at(&key, &p);
        }
        Ok(out)
    }

    /// Full expansion of an alternating field.
    pub fn from_alternating<V: Variance>(a: &Alternating<V>) -> Self {
        let k = a.degree();
        let (lower, upper) = if V::UPPER { (0, k) } else { (k, 0) };
        let mut out = MixedTensorField::zero(a.dim(), lower, upper);
        for (key, p) in a.components() {
            for (perm, sign) in crate::combinat::permutations(k) {
                let idx: Vec<usize> = perm.iter().map(|&t| key[t]).collect();
                out.add_at(&idx, &if sign > 0 { p.clone() } else { -p });
            }
        }
        out
    }

    /// Reads back an alternating field; fails unless the tensor is antisymmetric with
    /// the right variance.
    pub fn to_alternating<V: Variance>(&self) -> Result<Alternating<V>, TensorError> {
        let k = if V::UPPER { self.upper } else { self.lower };
        let other = if V::UPPER { self.lower } else { self.upper };
        if other != 0 {
            return Err(TensorError::VarianceMismatch);
        }
        let mut out = Alternating::<V>::zero(self.dim, k);
        for (key, p) in &self.comps {
            if key.windows(2).all(|w| w[0] < w[1]) {
                out.add_at(key, p);
            }
        }
        if MixedTensorField::from_alternating(&out) != *self {
            return Err(TensorError::DegreeMismatch("tensor is not alternating".into()));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    pub fn get(&self, key: &[usize]) -> Polynomial {
        self.comps
            .get(key)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    pub fn add_at(&mut self, key: &[usize], p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let entry = self
            .comps
            .entry(key.to_vec())
            .or_insert_with(|| Polynomial::zero(p.nvars()));
        *entry += p;
        if entry.is_zero() {
            self.comps.remove(key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.dim, self.lower, self.upper),
            (other.dim, other.lower, other.upper)
        );
        let mut out = self.clone();
        for (k, p) in &other.comps {
            out.add_at(k, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        self.map_to(self.dim, f)
    }

    pub fn map_to(&self, new_dim: usize, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut comps = BTreeMap::new();
        for (k, p) in &self.comps {
            let q = f(p);
            if !q.is_zero() {
                comps.insert(k.clone(), q);
            }
        }
        MixedTensorField {
            dim: new_dim,
            lower: self.lower,
            upper: self.upper,
            comps,
        }
    }

    /// `(s ⊗ t)`: lower indices of `s`, then of `t`, then upper of `s`, then of `t`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = MixedTensorField::zero(self.dim, self.lower + other.lower, self.upper + other.upper);
        for (k1, p1) in &self.comps {
            for (k2, p2) in &other.comps {
                let mut key = k1[..self.lower].to_vec();
                key.extend_from_slice(&k2[..other.lower]);
                key.extend_from_slice(&k1[self.lower..]);
                key.extend_from_slice(&k2[other.lower..]);
                out.add_at(&key, &(p1 * p2));
            }
        }
        out
    }

    /// Every full key of this type, in lexicographic order.
    pub fn all_keys(&self) -> Vec<Vec<usize>> {
        all_tuples(self.dim, self.lower + self.upper)
    }

    pub fn first_difference(&self, other: &Self) -> Option<Vec<usize>> {
        let keys: std::collections::BTreeSet<&Vec<usize>> = self.comps.keys().chain(other.comps.keys()).collect();
        keys.into_iter()
            .find(|k| self.comps.get(*k) != other.comps.get(*k))
            .cloned()
    }

    /// Number of stored (nonzero) components.
    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    /// True when every component vanishes at `point`.
    pub fn vanishes_at(&self, point: &[Rat]) -> bool {
        self.comps.values().all(|p| p.eval(point).is_zero())
    }

    /// Renders as a sum of `dx^i ⊗ … ⊗ d/dx^j` terms using the given coordinate naming.
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
                    .enumerate()
                    .map(|(s, &i)| {
                        if s < self.lower {
                            format!("d{}", name(i))
                        } else {
                            format!("d/d{}", name(i))
                        }
                    })
                    .collect();
                let coeff = p.render(name);
                if basis.is_empty() {
                    coeff
                } else {
                    format!("({}) {}", coeff, basis.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MixedTensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|j| format!("x{}", j + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{DifferentialForm, MultiVectorField};

    #[test]
    fn alternating_round_trip() {
        let w = MultiVectorField::basis(3, &[0, 2]);
        let m = MixedTensorField::from_alternating(&w);
        assert_eq!(m.get(&[2, 0]), -&Polynomial::one(3));
        assert_eq!(m.to_alternating::<crate::tensor::Upper>().unwrap(), w);
        assert!(m.to_alternating::<crate::tensor::Lower>().is_err());
    }

    #[test]
    fn tensor_of_one_forms_antisymmetrizes_to_wedge() {
        let a = DifferentialForm::basis1(2, 0);
        let b = DifferentialForm::basis1(2, 1);
        let ma = MixedTensorField::from_alternating(&a);
        let mb = MixedTensorField::from_alternating(&b);
        let alt = ma.tensor(&mb).sub(&mb.tensor(&ma));
        assert_eq!(alt, MixedTensorField::from_alternating(&a.wedge(&b)));
    }
}
