use super::{DifferentialForm, Lower, MixedTensorField, MultiVectorField, TensorError, Upper};
use crate::combinat::merge_sign;
use crate::poly::Polynomial;
use crate::rational::factorial;

fn signed(p: Polynomial, s: i32) -> Polynomial {
    if s > 0 {
        p
    } else {
        -&p
    }
}

/// Exterior derivative: `d(ξ_I dx^I) = ∂_j ξ_I dx^j ∧ dx^I`.
pub fn exterior_d(xi: &DifferentialForm) -> DifferentialForm {
    let n = xi.dim();
    let mut out = DifferentialForm::zero(n, xi.degree() + 1);
    for (key, p) in xi.components() {
        for j in 0..n {
            let dp = p.diff(j);
            if dp.is_zero() {
                continue;
            }
            let mut idx = vec![j];
            idx.extend_from_slice(key);
            out.add_at(&idx, &dp);
        }
    }
    out
}

/// Full-array contraction `(i(u)ξ)_I = u^J ξ_{JI}` summed over all orderings of `J`.
pub fn interior(u: &MultiVectorField, xi: &DifferentialForm) -> Result<DifferentialForm, TensorError> {
    if u.dim() != xi.dim() {
        return Err(TensorError::PatchMismatch {
            left: u.dim(),
            right: xi.dim(),
        });
    }
    let k = u.degree();
    if k > xi.degree() {
        return Err(TensorError::DegreeMismatch(format!(
            "interior of degree {k} into degree {}",
            xi.degree()
        )));
    }
    // each canonical J stands for k! equal terms of the full sum
    let mult = factorial(k as u32);
    let mut out = DifferentialForm::zero(xi.dim(), xi.degree() - k);
    for (j, up) in u.components() {
        for (key, p) in xi.components() {
            if !j.iter().all(|x| key.contains(x)) {
                continue;
            }
            let rest: Vec<usize> = key.iter().copied().filter(|x| !j.contains(x)).collect();
            let (_, s) = merge_sign(j, &rest).expect("disjoint split");
            out.add_at(&rest, &signed((up * p).scale(&mult), s));
        }
    }
    Ok(out)
}

/// Schouten–Nijenhuis bracket, with the antisymmetric Kronecker symbol contracted
/// over canonically ordered index blocks:
///
/// `[u,v]^K = ε^K_{I'J} u^{rI'} ∂_r v^J + (-1)^p ε^K_{IJ'} v^{rJ'} ∂_r u^I`,
///
/// where `p = |u|` and `I'`, `J'`, `I`, `J` run over increasing tuples. Degree-0
/// fields are functions.
pub fn schouten(u: &MultiVectorField, v: &MultiVectorField) -> Result<MultiVectorField, TensorError> {
    if u.dim() != v.dim() {
        return Err(TensorError::PatchMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let p = u.degree();
    let q = v.degree();
    let n = u.dim();
    if p + q == 0 {
        return Ok(MultiVectorField::zero(n, 0));
    }
    let mut out = MultiVectorField::zero(n, p + q - 1);
    half_bracket(u, v, 1, &mut out, false);
    half_bracket(v, u, if p % 2 == 0 { 1 } else { -1 }, &mut out, true);
    Ok(out)
}

/// Adds `sign * ε^K u^{rA} ∂_r v^B` where `A` is `u`'s key with `r` removed. With
/// `swap` the merged key is ordered `(B, A)` instead of `(A, B)`.
fn half_bracket(u: &MultiVectorField, v: &MultiVectorField, sign: i32, out: &mut MultiVectorField, swap: bool) {
    for (ku, pu) in u.components() {
        for (t, &r) in ku.iter().enumerate() {
            // moving r to the front of ku costs t transpositions
            let s_front = if t % 2 == 0 { 1 } else { -1 };
            let rest: Vec<usize> = ku.iter().copied().filter(|&x| x != r).collect();
            for (kv, pv) in v.components() {
                let dv = pv.diff(r);
                if dv.is_zero() {
                    continue;
                }
                let merged = if swap {
                    merge_sign(kv, &rest)
                } else {
                    merge_sign(&rest, kv)
                };
                if let Some((key, s)) = merged {
                    out.add_at(&key, &signed(pu * &dv, s * s_front * sign));
                }
            }
        }
    }
}

/// Lie derivative of a mixed tensor along a vector field:
/// `(L_v t)_I^J = v^m ∂_m t_I^J + Σ_s t_{..m..}^J ∂_{i_s} v^m - Σ_s t_I^{..m..} ∂_m v^{j_s}`.
pub fn lie_derive(v: &MultiVectorField, t: &MixedTensorField) -> Result<MixedTensorField, TensorError> {
    if v.degree() != 1 {
        return Err(TensorError::NotVectorField(v.degree()));
    }
    if v.dim() != t.dim() {
        return Err(TensorError::PatchMismatch {
            left: v.dim(),
            right: t.dim(),
        });
    }
    let n = t.dim();
    let vs: Vec<Polynomial> = (0..n).map(|m| v.get(&[m])).collect();
    let dv: Vec<Vec<Polynomial>> = vs.iter().map(|f| (0..n).map(|i| f.diff(i)).collect()).collect();
    let k = t.lower();
    let mut out = MixedTensorField::zero(n, k, t.upper());
    for (key, p) in t.components() {
        let mut transport = Polynomial::zero(n);
        for m in 0..n {
            if !vs[m].is_zero() {
                transport += &(&vs[m] * &p.diff(m));
            }
        }
        out.add_at(key, &transport);
        for s in 0..key.len() {
            let m = key[s];
            for i in 0..n {
                let mut nk = key.clone();
                nk[s] = i;
                if s < k {
                    // lower slot: t_{..m..} ∂_i v^m lands at slot value i
                    if !dv[m][i].is_zero() {
                        out.add_at(&nk, &(p * &dv[m][i]));
                    }
                } else if !dv[i][m].is_zero() {
                    // upper slot: -t^{..m..} ∂_m v^i lands at slot value i
                    out.add_at(&nk, &-&(p * &dv[i][m]));
                }
            }
        }
    }
    Ok(out)
}

pub fn lie_derive_form(v: &MultiVectorField, xi: &DifferentialForm) -> Result<DifferentialForm, TensorError> {
    lie_derive(v, &MixedTensorField::from_alternating(xi))?.to_alternating::<Lower>()
}

pub fn lie_derive_multivector(v: &MultiVectorField, u: &MultiVectorField) -> Result<MultiVectorField, TensorError> {
    lie_derive(v, &MixedTensorField::from_alternating(u))?.to_alternating::<Upper>()
}

/// `Σ_j c_j ∂_j` from a list of coefficient polynomials.
pub fn vector_field(coeffs: &[Polynomial]) -> MultiVectorField {
    let n = coeffs.len();
    let mut out = MultiVectorField::zero(n, 1);
    for (j, c) in coeffs.iter().enumerate() {
        out.add_at(&[j], c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn exterior_derivative_sign() {
        let xi = DifferentialForm::from_components(2, 1, [(vec![0], x(2, 1))]).unwrap();
        let d = exterior_d(&xi);
        assert_eq!(d.get(&[0, 1]), Polynomial::constant(2, int(-1)));
        let f = &x(2, 0).pow(3) * &x(2, 1);
        assert!(exterior_d(&exterior_d(&DifferentialForm::function(f))).is_zero());
    }

    #[test]
    fn interior_full_contraction() {
        let e12 = DifferentialForm::basis(2, &[0, 1]);
        let r = interior(&MultiVectorField::basis1(2, 0), &e12).unwrap();
        assert_eq!(r, DifferentialForm::basis1(2, 1));
        let s = interior(&MultiVectorField::basis(2, &[0, 1]), &e12).unwrap();
        assert_eq!(s.as_function(), Polynomial::constant(2, int(2)));
        assert!(interior(&MultiVectorField::basis(2, &[0, 1]), &DifferentialForm::basis1(2, 0)).is_err());
    }

    #[test]
    fn bracket_of_vector_fields_is_lie_bracket() {
        let d1 = MultiVectorField::basis1(1, 0);
        let xd1 = vector_field(&[x(1, 0)]);
        assert_eq!(schouten(&d1, &xd1).unwrap(), d1);
    }

    #[test]
    fn linear_poisson_structure_of_so3() {
        let n = 3;
        let w = MultiVectorField::from_components(
            n,
            2,
            [(vec![0, 1], x(n, 2)), (vec![1, 2], x(n, 0)), (vec![2, 0], x(n, 1))],
        )
        .unwrap();
        assert!(schouten(&w, &w).unwrap().is_zero());
        let bad = MultiVectorField::from_components(n, 2, [(vec![0, 1], x(n, 2)), (vec![1, 2], x(n, 1))]).unwrap();
        assert!(!schouten(&bad, &bad).unwrap().is_zero());
    }

    #[test]
    fn bivector_with_function_gives_hamiltonian_field() {
        let w = MultiVectorField::basis(2, &[0, 1]);
        let f = MultiVectorField::function(x(2, 0));
        let s = schouten(&w, &f).unwrap();
        assert_eq!(s, MultiVectorField::basis1(2, 1));
        assert_eq!(schouten(&f, &w).unwrap(), s);
    }

    #[test]
    fn lie_derivative_of_vector_field_is_bracket() {
        let n = 2;
        let a = vector_field(&[&x(n, 0) * &x(n, 1), x(n, 0).pow(2)]);
        let b = vector_field(&[x(n, 1), Polynomial::constant(n, int(3))]);
        assert_eq!(lie_derive_multivector(&a, &b).unwrap(), schouten(&a, &b).unwrap());
        let d1 = MultiVectorField::basis1(n, 0);
        let t = MixedTensorField::from_components(n, 1, 1, [(vec![0], vec![1], x(n, 0).pow(2))]).unwrap();
        assert_eq!(lie_derive(&d1, &t).unwrap(), t.map(|p| p.diff(0)));
        assert_eq!(
            lie_derive(&MultiVectorField::basis(n, &[0, 1]), &t),
            Err(TensorError::NotVectorField(2))
        );
    }
}
