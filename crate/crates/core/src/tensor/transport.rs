use super::{Alternating, DifferentialForm, MixedTensorField, MultiVectorField, TensorError, Variance};
use crate::poly::Polynomial;
use crate::prolong::ChartMap;

fn check_square(phi: &ChartMap, dim: usize) -> Result<(), TensorError> {
    if phi.target_dim() != phi.source_dim() {
        return Err(TensorError::PatchMismatch {
            left: phi.source_dim(),
            right: phi.target_dim(),
        });
    }
    if phi.source_dim() != dim {
        return Err(TensorError::PatchMismatch {
            left: phi.source_dim(),
            right: dim,
        });
    }
    Ok(())
}

/// `f ∘ φ` for a function `f` on the target patch.
pub fn pullback_function(phi: &ChartMap, f: &Polynomial) -> Polynomial {
    f.compose(phi.components())
}

/// `φ^*ξ`, built as `Σ_J (ξ_J ∘ φ) dφ^{j_1} ∧ … ∧ dφ^{j_k}`.
pub fn pullback_form(phi: &ChartMap, xi: &DifferentialForm) -> Result<DifferentialForm, TensorError> {
    if phi.target_dim() != xi.dim() {
        return Err(TensorError::PatchMismatch {
            left: phi.target_dim(),
            right: xi.dim(),
        });
    }
    let m = phi.source_dim();
    let jac = phi.jacobian();
    let dphi: Vec<DifferentialForm> = jac
        .iter()
        .map(|row| {
            let mut f = DifferentialForm::zero(m, 1);
            for (i, p) in row.iter().enumerate() {
                f.add_at(&[i], p);
            }
            f
        })
        .collect();
    let mut out = DifferentialForm::zero(m, xi.degree());
    for (key, p) in xi.components() {
        let mut term = DifferentialForm::function(p.compose(phi.components()));
        for &j in key {
            term = term.wedge(&dphi[j]);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `φ_*u`: `∂_i ↦ Σ_j ∂_iφ^j ∂_j`, with coefficients composed with `φ^{-1}`.
pub fn pushforward_multivector(phi: &ChartMap, u: &MultiVectorField) -> Result<MultiVectorField, TensorError> {
    check_square(phi, u.dim())?;
    let inv = phi.inverse_components().ok_or(TensorError::NoInverseProvided)?;
    let m = u.dim();
    let jac = phi.jacobian();
    let images: Vec<MultiVectorField> = (0..m)
        .map(|i| {
            let mut v = MultiVectorField::zero(m, 1);
            for (j, row) in jac.iter().enumerate() {
                v.add_at(&[j], &row[i]);
            }
            v
        })
        .collect();
    let mut acc = MultiVectorField::zero(m, u.degree());
    for (key, p) in u.components() {
        let mut term = MultiVectorField::function(p.clone());
        for &i in key {
            term = term.wedge(&images[i]);
        }
        acc = acc.add(&term);
    }
    Ok(compose_all(&acc, inv))
}

fn compose_all<V: Variance>(a: &Alternating<V>, args: &[Polynomial]) -> Alternating<V> {
    a.map_to(args.first().map(Polynomial::nvars).unwrap_or(0), |p| p.compose(args))
}

/// `φ_*t` for a mixed tensor: lower slots transform with `∂x/∂y`, upper slots with
/// `∂y/∂x ∘ φ^{-1}`, all components composed with `φ^{-1}`.
pub fn pushforward_mixed(phi: &ChartMap, t: &MixedTensorField) -> Result<MixedTensorField, TensorError> {
    check_square(phi, t.dim())?;
    let inv = phi.inverse_components().ok_or(TensorError::NoInverseProvided)?;
    let m = t.dim();
    let phi_inv = phi.inverted().map_err(|_| TensorError::NoInverseProvided)?;
    // lower[i][j] = ∂x^i/∂y^j, upper[k][l] = ∂y^l/∂x^k at φ^{-1}(y)
    let lower = phi_inv.jacobian();
    let jac = phi.jacobian();
    let upper: Vec<Vec<Polynomial>> = (0..m)
        .map(|k| (0..m).map(|l| jac[l][k].compose(inv)).collect())
        .collect();
    let mut cur = t.map(|p| p.compose(inv));
    for s in 0..(t.lower() + t.upper()) {
        let mat = if s < t.lower() { &lower } else { &upper };
        let mut next = MixedTensorField::zero(m, t.lower(), t.upper());
        for (key, p) in cur.components() {
            let i = key[s];
            for (j, f) in mat[i].iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let mut nk = key.clone();
                nk[s] = j;
                next.add_at(&nk, &(p * f));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `φ^*ξ` along the inverse, i.e. the pushforward of a form.
pub fn pushforward_form(phi: &ChartMap, xi: &DifferentialForm) -> Result<DifferentialForm, TensorError> {
    let inv = phi.inverted().map_err(|_| TensorError::NoInverseProvided)?;
    pullback_form(&inv, xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn shear() -> ChartMap {
        let n = 2;
        ChartMap::new(
            vec![&x(n, 0) + &x(n, 1).pow(2), x(n, 1)],
            Some(vec![&x(n, 0) - &x(n, 1).pow(2), x(n, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn pullback_of_dx1_under_shear() {
        let phi = shear();
        let r = pullback_form(&phi, &DifferentialForm::basis1(2, 0)).unwrap();
        let want =
            DifferentialForm::from_components(2, 1, [(vec![0], Polynomial::one(2)), (vec![1], x(2, 1).scale(&int(2)))])
                .unwrap();
        assert_eq!(r, want);
        let xi = DifferentialForm::from_components(2, 2, [(vec![0, 1], x(2, 0))]).unwrap();
        assert_eq!(pullback_form(&ChartMap::identity(2), &xi).unwrap(), xi);
    }

    #[test]
    fn pushforward_round_trip() {
        let phi = shear();
        let inv = phi.inverted().unwrap();
        let u = MultiVectorField::from_components(2, 1, [(vec![0], x(2, 1)), (vec![1], &x(2, 0) * &x(2, 0))]).unwrap();
        let there = pushforward_multivector(&inv, &u).unwrap();
        assert_eq!(pushforward_multivector(&phi, &there).unwrap(), u);
        let mixed = MixedTensorField::from_alternating(&u);
        assert_eq!(
            pushforward_mixed(&phi, &mixed).unwrap(),
            MixedTensorField::from_alternating(&pushforward_multivector(&phi, &u).unwrap())
        );
        let w = DifferentialForm::from_components(2, 1, [(vec![1], x(2, 0))]).unwrap();
        assert_eq!(
            pushforward_mixed(&phi, &MixedTensorField::from_alternating(&w)).unwrap(),
            MixedTensorField::from_alternating(&pushforward_form(&phi, &w).unwrap())
        );
    }

    #[test]
    fn missing_inverse() {
        let phi = ChartMap::new(vec![x(1, 0)], None).unwrap();
        assert_eq!(
            pushforward_multivector(&phi, &MultiVectorField::basis1(1, 0)),
            Err(TensorError::NoInverseProvided)
        );
    }
}
