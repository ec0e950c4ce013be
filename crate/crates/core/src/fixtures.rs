//! Named algebras, Frobenius structures, chart maps and bivectors used by tests and
//! the verification suite.

use crate::algebra::WeilAlgebra;
use crate::frobenius::FrobeniusStructure;
use crate::poly::Polynomial;
use crate::prolong::ChartMap;
use crate::rational::{int, one, zero, Rat};
use crate::tensor::MultiVectorField;

/// Covector `p = e^n`, i.e. `p(e_a) = δ_{an}`.
pub fn top_covector(dim: usize) -> Vec<Rat> {
    (0..dim).map(|a| if a + 1 == dim { one() } else { zero() }).collect()
}

pub fn with_top_covector(alg: &WeilAlgebra) -> FrobeniusStructure {
    FrobeniusStructure::attach(alg, &top_covector(alg.dim())).expect("fixture algebra is Frobenius for p = e^n")
}

/// `ℝ(ε)`, `ℝ(ε²)`, `ℝ(ε³)` and the width-two algebra, each with `p = e^n`.
pub fn standard_structures() -> Vec<(String, FrobeniusStructure)> {
    vec![
        ("R(e)".to_string(), with_top_covector(&WeilAlgebra::plural(1))),
        ("R(e^2)".to_string(), with_top_covector(&WeilAlgebra::plural(2))),
        ("R(e^3)".to_string(), with_top_covector(&WeilAlgebra::plural(3))),
        ("width-2".to_string(), with_top_covector(&WeilAlgebra::width_two())),
    ]
}

/// Dual numbers with `p(1) = p(ε) = 1`.
pub fn dual_numbers_unit_p() -> FrobeniusStructure {
    FrobeniusStructure::attach(&WeilAlgebra::plural(1), &[one(), one()]).expect("Frobenius")
}

fn var(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

/// `x^k ↦ x^k + f`, where `f` does not involve `x^k`.
pub fn elementary_shear(n: usize, k: usize, f: &Polynomial) -> ChartMap {
    assert!(
        f.independent_of(k),
        "shear term must not involve the sheared coordinate"
    );
    let mut there: Vec<Polynomial> = (0..n).map(|i| var(n, i)).collect();
    let mut back = there.clone();
    there[k] = &there[k] + f;
    back[k] = &back[k] - f;
    ChartMap::new(there, Some(back)).expect("elementary shear is invertible")
}

/// Three fixed shears on `ℝ²`.
pub fn shears_2d() -> Vec<(String, ChartMap)> {
    let n = 2;
    let x = |i| var(n, i);
    let s1 = elementary_shear(n, 0, &x(1).pow(2));
    let s2 = elementary_shear(n, 1, &(&x(0).pow(3) - &x(0).scale(&int(2))));
    let s3 = elementary_shear(n, 0, &(&x(1) + &x(1).pow(2).scale(&int(3))));
    let s4 = elementary_shear(n, 1, &x(0).pow(2));
    vec![
        ("(x1+x2^2, x2)".to_string(), s1),
        ("(x1, x2+x1^3-2x1)".to_string(), s2),
        (
            "(x2+x1^2)∘(x1+x2+3x2^2)".to_string(),
            s4.after(&s3).expect("composable"),
        ),
    ]
}

/// Three fixed shears on `ℝ³`.
pub fn shears_3d() -> Vec<(String, ChartMap)> {
    let n = 3;
    let x = |i| var(n, i);
    let s1 = elementary_shear(n, 0, &(&x(1) * &x(2)));
    let s2 = elementary_shear(n, 1, &x(2).pow(2));
    let s3 = elementary_shear(n, 2, &(&x(0) * &x(1)));
    let s4 = elementary_shear(n, 0, &x(2).scale(&int(-1)));
    vec![
        ("(x1+x2x3, x2, x3)".to_string(), s1.clone()),
        (
            "(x1, x2+x3^2, x3)∘(x1+x2x3, x2, x3)".to_string(),
            s2.after(&s1).expect("composable"),
        ),
        (
            "(x1-x3, x2, x3)∘(x1, x2, x3+x1x2)".to_string(),
            s4.after(&s3).expect("composable"),
        ),
    ]
}

/// `x³∂_1∧∂_2 + x¹∂_2∧∂_3 + x²∂_3∧∂_1`.
pub fn so3() -> MultiVectorField {
    let n = 3;
    MultiVectorField::from_components(
        n,
        2,
        [
            (vec![0, 1], var(n, 2)),
            (vec![1, 2], var(n, 0)),
            (vec![2, 0], var(n, 1)),
        ],
    )
    .expect("so(3)")
}

/// `x¹∂_1∧∂_2` on `ℝ²`.
pub fn linear_plane() -> MultiVectorField {
    MultiVectorField::from_components(2, 2, [(vec![0, 1], var(2, 0))]).expect("bivector")
}

/// `∂_1∧∂_2` on `ℝ²`.
pub fn symplectic_plane() -> MultiVectorField {
    MultiVectorField::basis(2, &[0, 1])
}

/// `∂_1∧∂_2 + ∂_3∧∂_4` on `ℝ⁴`.
pub fn symplectic_four() -> MultiVectorField {
    MultiVectorField::basis(4, &[0, 1]).add(&MultiVectorField::basis(4, &[2, 3]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        for (_, f) in standard_structures() {
            f.verify_invariants().unwrap();
        }
        dual_numbers_unit_p().verify_invariants().unwrap();
        assert_eq!(shears_2d().len(), 3);
        for (_, phi) in shears_3d() {
            assert!(phi.inverse_components().is_some());
        }
    }
}
