//! Poisson bivectors, Hamiltonian calculus, sharp maps, the Lichnerowicz operator,
//! modular vector fields, and the modular field of lifted Poisson structures.
//!
//! Bivector components are read as full antisymmetric arrays, so `∂_1∧∂_2` has
//! `w^{12} = 1` and `w^{21} = -1`. The bracket is `{f, g} = w^{ij} ∂_i f ∂_j g`.

use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::combinat::increasing_tuples;
use crate::frobenius::FrobeniusStructure;
use crate::lifts::{lift_alternating, vertical, Lift, LiftError};
use crate::poly::Polynomial;
use crate::prolong::pull_to_base_coords;
use crate::rational::int;
use crate::tensor::{
    exterior_d, lie_derive_form, schouten, vector_field, DifferentialForm, MixedTensorField, MultiVectorField,
    TensorError, Upper,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("expected a bivector, found degree {0}")]
    NotBivector(usize),
    #[error("bivector has not been verified to satisfy the Jacobi identity")]
    NotVerified,
    #[error("degree {degree} exceeds patch dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// Why a bivector failed the Jacobi check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFailure {
    /// First canonical key where `[w, w]` is nonzero.
    pub schouten_witness: Option<Vec<usize>>,
    /// First coordinate triple `i < j < k` where the bracket Jacobiator is nonzero.
    pub oracle_witness: Option<[usize; 3]>,
    /// `[w, w]` at the witness key.
    pub component: Polynomial,
}

impl JacobiFailure {
    /// Both criteria found a failure (they can only disagree on a bug).
    pub fn criteria_agree(&self) -> bool {
        self.schouten_witness.is_some() == self.oracle_witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    bivector: MultiVectorField,
    jacobi_verified: bool,
}

impl PoissonStructure {
    /// Wraps a bivector without checking the Jacobi identity.
    pub fn unverified(w: MultiVectorField) -> Result<Self, PoissonError> {
        if w.degree() != 2 {
            return Err(PoissonError::NotBivector(w.degree()));
        }
        Ok(PoissonStructure {
            bivector: w,
            jacobi_verified: false,
        })
    }

    pub fn bivector(&self) -> &MultiVectorField {
        &self.bivector
    }

    pub fn dim(&self) -> usize {
        self.bivector.dim()
    }

    pub fn jacobi_verified(&self) -> bool {
        self.jacobi_verified
    }

    fn verified(&self) -> Result<&MultiVectorField, PoissonError> {
        if self.jacobi_verified {
            Ok(&self.bivector)
        } else {
            Err(PoissonError::NotVerified)
        }
    }

    /// Full-array entry `w^{ij}`.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.bivector.get(&[i, j])
    }
}

/// `w^{ij} ∂_i f ∂_j g` with no Jacobi precondition.
pub fn bracket_unchecked(w: &MultiVectorField, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = w.dim();
    let mut out = Polynomial::zero(n);
    for (key, p) in w.components() {
        let (i, j) = (key[0], key[1]);
        let t = &(&f.diff(i) * &g.diff(j)) - &(&f.diff(j) * &g.diff(i));
        if !t.is_zero() {
            out += &(p * &t);
        }
    }
    out
}

/// First coordinate triple violating `{{x^i,x^j},x^k} + {{x^j,x^k},x^i} + {{x^k,x^i},x^j} = 0`.
pub fn coordinate_jacobi_witness(w: &MultiVectorField) -> Option<[usize; 3]> {
    let n = w.dim();
    let x = |i| Polynomial::var(n, i);
    let br = |f: &Polynomial, g: &Polynomial| bracket_unchecked(w, f, g);
    increasing_tuples(n, 3).into_iter().find_map(|t| {
        let (a, b, c) = (x(t[0]), x(t[1]), x(t[2]));
        let j = &(&br(&br(&a, &b), &c) + &br(&br(&b, &c), &a)) + &br(&br(&c, &a), &b);
        (!j.is_zero()).then(|| [t[0], t[1], t[2]])
    })
}

/// The cyclic sum `w^{js} ∂_s w^{kl} + w^{ks} ∂_s w^{lj} + w^{ls} ∂_s w^{jk}` as a
/// trivector.
pub fn cyclic_jacobiator(w: &MultiVectorField) -> MultiVectorField {
    let n = w.dim();
    let mut out = MultiVectorField::zero(n, 3);
    for t in increasing_tuples(n, 3) {
        let mut acc = Polynomial::zero(n);
        for (a, b, c) in [(t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])] {
            let wbc = w.get(&[b, c]);
            for s in 0..n {
                let was = w.get(&[a, s]);
                if !was.is_zero() {
                    acc += &(&was * &wbc.diff(s));
                }
            }
        }
        out.add_at(&t, &acc);
    }
    out
}

/// Verifies `[w, w] = 0`, cross-checked against the Jacobi identity of the bracket on
/// coordinate functions.
pub fn jacobi_check(w: &MultiVectorField) -> Result<PoissonStructure, JacobiFailure> {
    let ww = schouten(w, w).expect("same patch");
    let oracle = coordinate_jacobi_witness(w);
    let first = ww.components().next().map(|(k, p)| (k.clone(), p.clone()));
    match (first, oracle) {
        (None, None) => Ok(PoissonStructure {
            bivector: w.clone(),
            jacobi_verified: true,
        }),
        (first, oracle) => Err(JacobiFailure {
            component: first
                .as_ref()
                .map(|f| f.1.clone())
                .unwrap_or_else(|| Polynomial::zero(w.dim())),
            schouten_witness: first.map(|f| f.0),
            oracle_witness: oracle,
        }),
    }
}

pub fn poisson_bracket(w: &PoissonStructure, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PoissonError> {
    Ok(bracket_unchecked(w.verified()?, f, g))
}

/// `X_f = w^{ij} ∂_i f ∂_j`.
pub fn hamiltonian(w: &PoissonStructure, f: &Polynomial) -> Result<MultiVectorField, PoissonError> {
    let w = w.verified()?;
    Ok(hamiltonian_unchecked(w, f))
}

fn hamiltonian_unchecked(w: &MultiVectorField, f: &Polynomial) -> MultiVectorField {
    let n = w.dim();
    let mut coeffs = vec![Polynomial::zero(n); n];
    for (key, p) in w.components() {
        let (i, j) = (key[0], key[1]);
        coeffs[j] += &(p * &f.diff(i));
        coeffs[i] -= &(p * &f.diff(j));
    }
    vector_field(&coeffs)
}

pub fn is_casimir(w: &PoissonStructure, f: &Polynomial) -> Result<bool, PoissonError> {
    Ok(hamiltonian(w, f)?.is_zero())
}

/// `(w̃θ)^{j_1…j_k} = (-1)^k w^{i_1j_1} … w^{i_kj_k} θ_{i_1…i_k}`, summed over all
/// index orders.
pub fn sharp(w: &PoissonStructure, theta: &DifferentialForm) -> Result<MultiVectorField, PoissonError> {
    let w = w.verified()?;
    let (n, k) = (w.dim(), theta.degree());
    if k > n {
        return Err(PoissonError::DegreeOverflow { degree: k, dim: n });
    }
    if theta.dim() != n {
        return Err(TensorError::PatchMismatch {
            left: n,
            right: theta.dim(),
        }
        .into());
    }
    let entries: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| w.get(&[i, j])).collect()).collect();
    // same keys reinterpreted as upper slots, raised one slot at a time
    let mut cur = MixedTensorField::zero(n, 0, k);
    for (key, p) in MixedTensorField::from_alternating(theta).components() {
        cur.add_at(key, p);
    }
    for s in 0..k {
        let mut next = MixedTensorField::zero(n, 0, k);
        for (key, p) in cur.components() {
            for (j, wij) in entries[key[s]].iter().enumerate() {
                if wij.is_zero() {
                    continue;
                }
                let mut nk = key.clone();
                nk[s] = j;
                next.add_at(&nk, &(p * wij));
            }
        }
        cur = next;
    }
    let out = cur.to_alternating::<Upper>()?;
    Ok(if k % 2 == 1 { out.neg() } else { out })
}

/// The anchor `α ↦ w^{ij} α_i ∂_j`, so that `(w̃α)(β) = w(α, β)`.
pub fn anchor(w: &PoissonStructure, alpha: &DifferentialForm) -> Result<MultiVectorField, PoissonError> {
    let w = w.verified()?;
    if alpha.degree() != 1 {
        return Err(TensorError::DegreeMismatch(format!("anchor of a degree {} form", alpha.degree())).into());
    }
    let n = w.dim();
    let mut coeffs = vec![Polynomial::zero(n); n];
    for (key, p) in w.components() {
        let (i, j) = (key[0], key[1]);
        coeffs[j] += &(p * &alpha.get(&[i]));
        coeffs[i] -= &(p * &alpha.get(&[j]));
    }
    Ok(vector_field(&coeffs))
}

/// `w(α, β) = w^{ij} α_i β_j`.
pub fn pair(w: &MultiVectorField, alpha: &DifferentialForm, beta: &DifferentialForm) -> Polynomial {
    let mut out = Polynomial::zero(w.dim());
    for (key, p) in w.components() {
        let (i, j) = (key[0], key[1]);
        let t = &(&alpha.get(&[i]) * &beta.get(&[j])) - &(&alpha.get(&[j]) * &beta.get(&[i]));
        if !t.is_zero() {
            out += &(p * &t);
        }
    }
    out
}

/// `{α, β} = L_{w̃α}β - L_{w̃β}α - d(w(α, β))` with the anchor of [`anchor`].
pub fn form_bracket(
    w: &PoissonStructure,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<DifferentialForm, PoissonError> {
    let wa = anchor(w, alpha)?;
    let wb = anchor(w, beta)?;
    if beta.degree() != 1 {
        return Err(TensorError::DegreeMismatch(format!("form bracket with a degree {} form", beta.degree())).into());
    }
    let a = lie_derive_form(&wa, beta)?;
    let b = lie_derive_form(&wb, alpha)?;
    let c = exterior_d(&DifferentialForm::function(pair(w.verified()?, alpha, beta)));
    Ok(a.sub(&b).sub(&c))
}

/// `σu = [w, u]`.
pub fn lichnerowicz(w: &PoissonStructure, u: &MultiVectorField) -> Result<MultiVectorField, PoissonError> {
    Ok(schouten(w.verified()?, u)?)
}

/// Density `ρ = exp(λ)` on a patch, represented by `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDensity {
    pub lambda: Polynomial,
}

impl LogDensity {
    pub fn new(lambda: Polynomial) -> Self {
        LogDensity { lambda }
    }

    pub fn zero(dim: usize) -> Self {
        LogDensity {
            lambda: Polynomial::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.lambda.nvars()
    }
}

/// `Δ^i = Σ_j (∂_j w^{ij} + w^{ij} ∂_j λ)`.
pub fn modular_field(w: &PoissonStructure, density: &LogDensity) -> Result<MultiVectorField, PoissonError> {
    let w = w.verified()?;
    if density.dim() != w.dim() {
        return Err(TensorError::PatchMismatch {
            left: w.dim(),
            right: density.dim(),
        }
        .into());
    }
    Ok(modular_unchecked(w, &density.lambda))
}

fn modular_unchecked(w: &MultiVectorField, lambda: &Polynomial) -> MultiVectorField {
    let n = w.dim();
    let dl: Vec<Polynomial> = (0..n).map(|j| lambda.diff(j)).collect();
    let mut coeffs = vec![Polynomial::zero(n); n];
    for (key, p) in w.components() {
        let (i, j) = (key[0], key[1]);
        // w^{ij} = p and w^{ji} = -p
        coeffs[i] += &(&p.diff(j) + &(p * &dl[j]));
        coeffs[j] -= &(&p.diff(i) + &(p * &dl[i]));
    }
    vector_field(&coeffs)
}

/// `λ̄ = (n+1) · λ ∘ π`.
pub fn lift_density(density: &LogDensity, frob: &FrobeniusStructure) -> LogDensity {
    let d = frob.dim();
    LogDensity {
        lambda: pull_to_base_coords(&density.lambda, d).scale(&int(d as i64)),
    }
}

/// `w_ε = R(ε w^A)`, with the Jacobi identity re-verified on the lift.
pub fn lift_poisson(
    frob: &FrobeniusStructure,
    w: &PoissonStructure,
    eps: &AlgebraElement,
) -> Result<PoissonStructure, PoissonError> {
    let lifted = lift_alternating(frob, w.verified()?, &Lift::Epsilon(eps.clone()))?;
    jacobi_check(&lifted).map_err(|_| PoissonError::NotVerified)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularReport {
    pub epsilon: AlgebraElement,
    pub lhs: MultiVectorField,
    pub rhs: MultiVectorField,
    pub equal: bool,
    /// First flat index where the two sides differ.
    pub counterexample: Option<usize>,
}

/// Compares the modular field of `(T^A ℝ^m, w_ε, λ̄)` with `ε⁰ (n+1) Δ^V`.
pub fn verify_modular_theorem(
    frob: &FrobeniusStructure,
    w: &PoissonStructure,
    density: &LogDensity,
    eps: &AlgebraElement,
) -> Result<ModularReport, PoissonError> {
    let lifted = lift_poisson(frob, w, eps)?;
    let lhs = modular_field(&lifted, &lift_density(density, frob))?;
    let base = modular_field(w, density)?;
    let factor = eps.real_part() * int(frob.dim() as i64);
    let rhs = vertical(frob, &base).scale(&factor);
    let counterexample = lhs.first_difference(&rhs).map(|k| k[0]);
    Ok(ModularReport {
        epsilon: eps.clone(),
        equal: counterexample.is_none(),
        lhs,
        rhs,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WeilAlgebra;
    use crate::fixtures::{linear_plane, so3, symplectic_plane, with_top_covector};
    use crate::rational::rat;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn verified(w: MultiVectorField) -> PoissonStructure {
        jacobi_check(&w).expect("Poisson")
    }

    #[test]
    fn jacobi_check_agrees_with_oracle() {
        assert!(jacobi_check(&so3()).is_ok());
        assert!(jacobi_check(&MultiVectorField::basis(3, &[0, 2])).is_ok());
        let bad = MultiVectorField::from_components(3, 2, [(vec![0, 1], x(3, 2)), (vec![1, 2], x(3, 1))]).unwrap();
        let err = jacobi_check(&bad).unwrap_err();
        assert!(err.criteria_agree());
        assert_eq!(err.oracle_witness, Some([0, 1, 2]));
    }

    #[test]
    fn brackets_and_hamiltonians() {
        let w = verified(symplectic_plane());
        assert_eq!(poisson_bracket(&w, &x(2, 0), &x(2, 1)).unwrap(), Polynomial::one(2));
        assert_eq!(hamiltonian(&w, &x(2, 0)).unwrap(), MultiVectorField::basis1(2, 1));
        let s = verified(so3());
        let c = &(&x(3, 0).pow(2) + &x(3, 1).pow(2)) + &x(3, 2).pow(2);
        assert!(is_casimir(&s, &c).unwrap());
        let raw = PoissonStructure::unverified(symplectic_plane()).unwrap();
        assert_eq!(hamiltonian(&raw, &x(2, 0)), Err(PoissonError::NotVerified));
    }

    #[test]
    fn sharp_follows_printed_sign() {
        let w = verified(symplectic_plane());
        let s = sharp(&w, &DifferentialForm::basis1(2, 0)).unwrap();
        assert_eq!(s, MultiVectorField::basis1(2, 1).neg());
        assert_eq!(
            anchor(&w, &DifferentialForm::basis1(2, 0)).unwrap(),
            MultiVectorField::basis1(2, 1)
        );
        let s2 = sharp(&w, &DifferentialForm::basis(2, &[0, 1])).unwrap();
        assert_eq!(s2, MultiVectorField::basis(2, &[0, 1]));
    }

    #[test]
    fn form_bracket_of_exact_forms() {
        let w = verified(so3());
        let f = &x(3, 0) * &x(3, 1);
        let g = x(3, 2).pow(2);
        let df = exterior_d(&DifferentialForm::function(f.clone()));
        let dg = exterior_d(&DifferentialForm::function(g.clone()));
        let lhs = form_bracket(&w, &df, &dg).unwrap();
        let rhs = exterior_d(&DifferentialForm::function(poisson_bracket(&w, &f, &g).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn modular_field_examples() {
        let w = verified(linear_plane());
        let minus_d2 = MultiVectorField::basis1(2, 1).neg();
        assert_eq!(modular_field(&w, &LogDensity::zero(2)).unwrap(), minus_d2);
        let s = verified(symplectic_plane());
        assert!(modular_field(&s, &LogDensity::zero(2)).unwrap().is_zero());
        assert_eq!(modular_field(&s, &LogDensity::new(x(2, 0))).unwrap(), minus_d2);
    }

    #[test]
    fn lifted_density() {
        let f = with_top_covector(&WeilAlgebra::plural(1));
        let l = lift_density(&LogDensity::new(x(1, 0)), &f);
        assert_eq!(l.lambda, x(2, 0).scale(&int(2)));
    }

    #[test]
    fn modular_theorem_on_linear_plane() {
        let f = with_top_covector(&WeilAlgebra::plural(1));
        let w = verified(linear_plane());
        let alg = f.algebra();
        let r = verify_modular_theorem(&f, &w, &LogDensity::zero(2), &alg.unit()).unwrap();
        assert!(r.equal);
        // -2 ∂/∂x^{2,1}: flat index 1*2 + 1 = 3
        assert_eq!(r.lhs, MultiVectorField::basis1(4, 3).scale(&int(-2)));
        let nil = verify_modular_theorem(&f, &w, &LogDensity::zero(2), &alg.basis(1)).unwrap();
        assert!(nil.equal && nil.lhs.is_zero());
        let e = AlgebraElement::new(vec![int(3), rat(1, 1)]);
        let r3 = verify_modular_theorem(&f, &w, &LogDensity::zero(2), &e).unwrap();
        assert!(r3.equal);
        assert_eq!(r3.lhs, MultiVectorField::basis1(4, 3).scale(&int(-6)));
    }
}
