//! Realization of `A`-valued tensors and the complete, vertical, basis and general
//! element lifts of tensor fields from `ℝ^m` to `T^A ℝ^m`.
//!
//! Lifted fields live on the `m(n+1)` flat coordinates `x^{ia}` of
//! [`crate::prolong`]. A lower slot `(i, a)` of a realized tensor carries the factor
//! `e_a`, an upper slot `(j, b)` the dual basis element `e^b`, and the product is
//! fed to the Frobenius covector `p`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraElement, WeilAlgebra};
use crate::combinat::all_tuples;
use crate::frobenius::FrobeniusStructure;
use crate::poly::Polynomial;
use crate::prolong::{flat, prolong_scalar, pull_to_base_coords, AFunction};
use crate::rational::Rat;
use crate::tensor::{
    Alternating, DifferentialForm, Lower, MixedTensorField, MultiVectorField, TensorError, Upper, Variance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("algebra dimension mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for algebra of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Which lift to take: `R(ε t^A)` for `ε = 1`, `e_n`, `e_a` or a general element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lift {
    Complete,
    Vertical,
    Basis(usize),
    Epsilon(AlgebraElement),
}

impl Lift {
    /// The multiplier `ε` in the algebra of `frob`.
    pub fn element(&self, frob: &FrobeniusStructure) -> Result<AlgebraElement, LiftError> {
        let alg = frob.algebra();
        let d = alg.dim();
        match self {
            Lift::Complete => Ok(alg.unit()),
            Lift::Vertical => Ok(alg.basis(d - 1)),
            Lift::Basis(a) if *a < d => Ok(alg.basis(*a)),
            Lift::Basis(a) => Err(LiftError::IndexOutOfRange { index: *a, dim: d }),
            Lift::Epsilon(e) if e.dim() == d => Ok(e.clone()),
            Lift::Epsilon(e) => Err(LiftError::AlgebraMismatch {
                expected: d,
                found: e.dim(),
            }),
        }
    }
}

/// `A`-valued tensor field on `T^A ℝ^m`; keys list lower then upper base indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATensorField {
    base_dim: usize,
    alg_dim: usize,
    lower: usize,
    upper: usize,
    comps: BTreeMap<Vec<usize>, AFunction>,
}

impl ATensorField {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &AFunction)> {
        self.comps.iter()
    }

    pub fn get(&self, key: &[usize]) -> Option<&AFunction> {
        self.comps.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(AFunction::is_zero)
    }

    /// `ε · T` for a constant algebra element.
    pub fn mul_element(&self, alg: &WeilAlgebra, x: &AlgebraElement) -> ATensorField {
        let comps = self
            .comps
            .iter()
            .map(|(k, f)| (k.clone(), f.mul_element(alg, x)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        ATensorField { comps, ..self.clone() }
    }
}

/// Componentwise analytic prolongation `t^A`.
pub fn prolong_tensor(t: &MixedTensorField, alg: &WeilAlgebra) -> ATensorField {
    let comps = t
        .components()
        .map(|(k, p)| (k.clone(), prolong_scalar(p, alg)))
        .collect();
    ATensorField {
        base_dim: t.dim(),
        alg_dim: alg.dim(),
        lower: t.lower(),
        upper: t.upper(),
        comps,
    }
}

/// Real tensor field on `T^A ℝ^m` with flat coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTensorField {
    base_dim: usize,
    alg_dim: usize,
    field: MixedTensorField,
}

impl LiftedTensorField {
    pub fn new(base_dim: usize, alg_dim: usize, field: MixedTensorField) -> Self {
        assert_eq!(field.dim(), base_dim * alg_dim, "lifted field dimension");
        LiftedTensorField {
            base_dim,
            alg_dim,
            field,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn field(&self) -> &MixedTensorField {
        &self.field
    }

    pub fn into_field(self) -> MixedTensorField {
        self.field
    }

    /// `(i, a)` of a flat index.
    pub fn decode(&self, idx: usize) -> (usize, usize) {
        (idx / self.alg_dim, idx % self.alg_dim)
    }

    pub fn as_form(&self) -> Result<DifferentialForm, TensorError> {
        self.field.to_alternating::<Lower>()
    }

    pub fn as_multivector(&self) -> Result<MultiVectorField, TensorError> {
        self.field.to_alternating::<Upper>()
    }
}

/// Memoized `p(e_s e_{a..} e^{b..})` vectors keyed by the slot labels.
struct Kernels<'a> {
    frob: &'a FrobeniusStructure,
    lower: usize,
    cache: HashMap<Vec<usize>, Vec<Rat>>,
}

impl<'a> Kernels<'a> {
    fn new(frob: &'a FrobeniusStructure, lower: usize) -> Self {
        Kernels {
            frob,
            lower,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, labels: &[usize]) -> &[Rat] {
        let (frob, lower) = (self.frob, self.lower);
        self.cache
            .entry(labels.to_vec())
            .or_insert_with(|| frob.realization_kernel(&labels[..lower], &labels[lower..]))
    }
}

fn contract(f: &AFunction, kernel: &[Rat]) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for (c, k) in f.components().iter().zip(kernel) {
        if !num_traits::Zero::is_zero(k) && !c.is_zero() {
            out += &c.scale(k);
        }
    }
    out
}

fn flat_key(base: &[usize], labels: &[usize], d: usize) -> Vec<usize> {
    base.iter().zip(labels).map(|(&i, &a)| flat(i, a, d)).collect()
}

fn check_alg(frob: &FrobeniusStructure, d: usize) -> Result<(), LiftError> {
    if frob.dim() != d {
        return Err(LiftError::AlgebraMismatch {
            expected: frob.dim(),
            found: d,
        });
    }
    Ok(())
}

/// `R(T)`: the component at `((i_1,a_1)…, (j_1,b_1)…)` is
/// `p(T_{i…}^{j…} e_{a_1}… e^{b_1}…)`.
pub fn realize(frob: &FrobeniusStructure, t: &ATensorField) -> Result<LiftedTensorField, LiftError> {
    let d = t.alg_dim;
    check_alg(frob, d)?;
    let rank = t.lower + t.upper;
    let labels = all_tuples(d, rank);
    let mut kernels = Kernels::new(frob, t.lower);
    let mut out = MixedTensorField::zero(t.base_dim * d, t.lower, t.upper);
    for (key, f) in &t.comps {
        for lab in &labels {
            let p = contract(f, kernels.get(lab));
            out.add_at(&flat_key(key, lab, d), &p);
        }
    }
    Ok(LiftedTensorField::new(t.base_dim, d, out))
}

/// `R(ε t^A)` for a mixed tensor.
pub fn lift_mixed(
    frob: &FrobeniusStructure,
    t: &MixedTensorField,
    lift: &Lift,
) -> Result<LiftedTensorField, LiftError> {
    let alg = frob.algebra();
    let eps = lift.element(frob)?;
    realize(frob, &prolong_tensor(t, alg).mul_element(alg, &eps))
}

pub fn complete_lift(frob: &FrobeniusStructure, t: &MixedTensorField) -> LiftedTensorField {
    lift_mixed(frob, t, &Lift::Complete).expect("complete lift")
}

pub fn vertical_lift(frob: &FrobeniusStructure, t: &MixedTensorField) -> LiftedTensorField {
    lift_mixed(frob, t, &Lift::Vertical).expect("vertical lift")
}

pub fn a_lift(frob: &FrobeniusStructure, t: &MixedTensorField, a: usize) -> Result<LiftedTensorField, LiftError> {
    lift_mixed(frob, t, &Lift::Basis(a))
}

pub fn epsilon_lift(
    frob: &FrobeniusStructure,
    t: &MixedTensorField,
    eps: &AlgebraElement,
) -> Result<LiftedTensorField, LiftError> {
    lift_mixed(frob, t, &Lift::Epsilon(eps.clone()))
}

/// Classical `λ`-lift numbering on `ℝ(ε^n)`: `u^{(0)}` is the vertical lift and
/// `u^{(n)}` the complete lift, i.e. the basis lift along `ε^{n-λ}`.
pub fn lambda_lift(
    frob: &FrobeniusStructure,
    t: &MixedTensorField,
    lambda: usize,
) -> Result<LiftedTensorField, LiftError> {
    let n = frob.dim() - 1;
    if lambda > n {
        return Err(LiftError::IndexOutOfRange {
            index: lambda,
            dim: frob.dim(),
        });
    }
    a_lift(frob, t, n - lambda)
}

/// `R(ε u^A)` for an alternating field, computed on canonical keys only.
pub fn lift_alternating<V: Variance>(
    frob: &FrobeniusStructure,
    u: &Alternating<V>,
    lift: &Lift,
) -> Result<Alternating<V>, LiftError> {
    let alg = frob.algebra();
    let d = alg.dim();
    let eps = lift.element(frob)?;
    let k = u.degree();
    let labels = all_tuples(d, k);
    let mut kernels = Kernels::new(frob, if V::UPPER { 0 } else { k });
    let mut out = Alternating::<V>::zero(u.dim() * d, k);
    for (key, p) in u.components() {
        let f = prolong_scalar(p, alg).mul_element(alg, &eps);
        for lab in &labels {
            let c = contract(&f, kernels.get(lab));
            out.add_at(&flat_key(key, lab, d), &c);
        }
    }
    Ok(out)
}

/// `p(ε f^A)` for a function.
pub fn lift_function(frob: &FrobeniusStructure, f: &Polynomial, lift: &Lift) -> Result<Polynomial, LiftError> {
    let alg = frob.algebra();
    let eps = lift.element(frob)?;
    let g = prolong_scalar(f, alg).mul_element(alg, &eps);
    Ok(contract(&g, &frob.realization_kernel(&[], &[])))
}

pub fn complete<V: Variance>(frob: &FrobeniusStructure, u: &Alternating<V>) -> Alternating<V> {
    lift_alternating(frob, u, &Lift::Complete).expect("complete lift")
}

pub fn vertical<V: Variance>(frob: &FrobeniusStructure, u: &Alternating<V>) -> Alternating<V> {
    lift_alternating(frob, u, &Lift::Vertical).expect("vertical lift")
}

/// `π^*ξ`: components copied onto the `dx^{i0}` slots.
pub fn base_pullback(frob: &FrobeniusStructure, xi: &DifferentialForm) -> DifferentialForm {
    let d = frob.dim();
    let mut out = DifferentialForm::zero(xi.dim() * d, xi.degree());
    for (key, p) in xi.components() {
        let k: Vec<usize> = key.iter().map(|&i| flat(i, 0, d)).collect();
        out.add_at(&k, &pull_to_base_coords(p, d));
    }
    out
}

/// Closed coordinate form of the complete lift of a bivector:
/// `(w^C)^{iajb} = (w^{ij})^s γ_s^{ab}`.
pub fn complete_bivector_closed_form(frob: &FrobeniusStructure, w: &MultiVectorField) -> MultiVectorField {
    let alg = frob.algebra();
    let d = alg.dim();
    let mut out = MultiVectorField::zero(w.dim() * d, 2);
    for (key, p) in w.components() {
        let f = prolong_scalar(p, alg);
        for a in 0..d {
            for b in 0..d {
                let mut c = Polynomial::zero(f.nvars());
                for s in 0..d {
                    let g = frob.gamma_upper(a, b, s);
                    if !num_traits::Zero::is_zero(g) {
                        c += &f.component(s).scale(g);
                    }
                }
                out.add_at(&[flat(key[0], a, d), flat(key[1], b, d)], &c);
            }
        }
    }
    out
}

/// Closed coordinate form of the vertical lift: components `t_I^J ∘ π` on
/// `dx^{i0}` and `∂/∂x^{jn}` slots only.
pub fn vertical_closed_form(t: &MixedTensorField, alg_dim: usize) -> MixedTensorField {
    let d = alg_dim;
    let k = t.lower();
    let mut out = MixedTensorField::zero(t.dim() * d, k, t.upper());
    for (key, p) in t.components() {
        let nk: Vec<usize> = key
            .iter()
            .enumerate()
            .map(|(s, &i)| if s < k { flat(i, 0, d) } else { flat(i, d - 1, d) })
            .collect();
        out.add_at(&nk, &pull_to_base_coords(p, d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{standard_structures, with_top_covector};
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn dual() -> FrobeniusStructure {
        with_top_covector(&WeilAlgebra::plural(1))
    }

    #[test]
    fn realize_dx_tensor_dx() {
        let f = dual();
        let t = MixedTensorField::from_components(1, 2, 0, [(vec![0, 0], vec![], Polynomial::one(1))]).unwrap();
        let r = complete_lift(&f, &t);
        let one = Polynomial::one(2);
        let want =
            MixedTensorField::from_components(2, 2, 0, [(vec![0, 1], vec![], one.clone()), (vec![1, 0], vec![], one)])
                .unwrap();
        assert_eq!(r.field(), &want);
    }

    #[test]
    fn complete_lift_of_euler_field() {
        let f = dual();
        let v = MultiVectorField::from_components(1, 1, [(vec![0], x(1, 0))]).unwrap();
        let vc = complete(&f, &v);
        let want = MultiVectorField::from_components(2, 1, [(vec![0], x(2, 0)), (vec![1], x(2, 1))]).unwrap();
        assert_eq!(vc, want);
    }

    #[test]
    fn lifts_of_symplectic_plane() {
        let f = dual();
        let w = MultiVectorField::basis(2, &[0, 1]);
        // flat order: x1=0, y1=1, x2=2, y2=3
        let wc = complete(&f, &w);
        let want = MultiVectorField::basis(4, &[0, 3]).add(&MultiVectorField::basis(4, &[1, 2]));
        assert_eq!(wc, want);
        assert_eq!(vertical(&f, &w), MultiVectorField::basis(4, &[1, 3]));
        assert_eq!(complete_bivector_closed_form(&f, &w), want);
    }

    #[test]
    fn alternating_and_mixed_paths_agree() {
        for (_, f) in standard_structures() {
            let w = crate::fixtures::so3();
            let viam = complete_lift(&f, &MixedTensorField::from_alternating(&w))
                .as_multivector()
                .unwrap();
            assert_eq!(viam, complete(&f, &w));
            assert_eq!(complete_bivector_closed_form(&f, &w), viam);
        }
    }

    #[test]
    fn function_lifts() {
        let f = dual();
        let g = &x(1, 0) * &x(1, 0);
        assert_eq!(
            lift_function(&f, &g, &Lift::Vertical).unwrap(),
            pull_to_base_coords(&g, 2)
        );
        assert_eq!(
            lift_function(&f, &g, &Lift::Complete).unwrap(),
            (&x(2, 0) * &x(2, 1)).scale(&int(2))
        );
        assert!(lift_function(&f, &Polynomial::constant(1, int(5)), &Lift::Complete)
            .unwrap()
            .is_zero());
        assert!(matches!(
            lift_function(&f, &g, &Lift::Basis(2)),
            Err(LiftError::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }

    #[test]
    fn vertical_matches_closed_form() {
        for (_, f) in standard_structures() {
            let t = MixedTensorField::from_components(2, 1, 1, [(vec![0], vec![1], &x(2, 0) * &x(2, 1))]).unwrap();
            assert_eq!(vertical_lift(&f, &t).field(), &vertical_closed_form(&t, f.dim()));
        }
    }
}
