//! Seeded random generators for polynomials, tensors, algebras and Poisson bivectors.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, WeilAlgebra};
use crate::combinat::increasing_tuples;
use crate::frobenius::FrobeniusStructure;
use crate::linalg::identity;
use crate::poly::Polynomial;
use crate::rational::{int, rat, Rat};
use crate::tensor::{Alternating, DifferentialForm, MixedTensorField, MultiVectorField, Variance};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A fresh generator derived from this one, for an independent stream.
    pub fn fork(&mut self) -> Gen {
        Gen::new(self.rng.gen())
    }

    /// A raw seed for a generator that can be recreated on its own.
    pub fn next_seed(&mut self) -> u64 {
        self.rng.gen()
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    /// Small rational: mostly integers in `-3..=3`, sometimes halves and thirds.
    pub fn small_rat(&mut self) -> Rat {
        let num = self.rng.gen_range(-3i64..=3);
        match self.rng.gen_range(0..4) {
            0 => rat(num, 2),
            1 => rat(num, 3),
            _ => int(num),
        }
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.small_rat();
            if r != int(0) {
                return r;
            }
        }
    }

    pub fn point(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| self.small_rat()).collect()
    }

    /// Random polynomial with at most `max_terms` terms of total degree `<= max_deg`.
    pub fn poly(&mut self, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
        let terms = self.rng.gen_range(0..=max_terms);
        let mut out = Polynomial::zero(nvars);
        for _ in 0..terms {
            let deg = self.rng.gen_range(0..=max_deg);
            let mut exps = vec![0u32; nvars];
            if nvars > 0 {
                for _ in 0..deg {
                    exps[self.rng.gen_range(0..nvars)] += 1;
                }
            }
            out += &Polynomial::monomial(exps, self.nonzero_rat());
        }
        out
    }

    /// Like [`Gen::poly`] but never zero.
    pub fn nonzero_poly(&mut self, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
        loop {
            let p = self.poly(nvars, max_deg, max_terms.max(1));
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn alternating<V: Variance>(&mut self, dim: usize, degree: usize, max_deg: u32) -> Alternating<V> {
        let mut out = Alternating::zero(dim, degree);
        for key in increasing_tuples(dim, degree) {
            if self.rng.gen_bool(0.7) {
                let p = self.nonzero_poly(dim, max_deg, 3);
                out.add_at(&key, &p);
            }
        }
        out
    }

    pub fn form(&mut self, dim: usize, degree: usize, max_deg: u32) -> DifferentialForm {
        self.alternating(dim, degree, max_deg)
    }

    pub fn multivector(&mut self, dim: usize, degree: usize, max_deg: u32) -> MultiVectorField {
        self.alternating(dim, degree, max_deg)
    }

    /// Nonzero alternating field of degree `>= 1`.
    pub fn nonzero_alternating<V: Variance>(&mut self, dim: usize, degree: usize, max_deg: u32) -> Alternating<V> {
        loop {
            let a = self.alternating(dim, degree, max_deg);
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn mixed(&mut self, dim: usize, lower: usize, upper: usize, max_deg: u32) -> MixedTensorField {
        let mut out = MixedTensorField::zero(dim, lower, upper);
        for key in out.all_keys() {
            if self.rng.gen_bool(0.5) {
                let p = self.nonzero_poly(dim, max_deg, 3);
                out.add_at(&key, &p);
            }
        }
        out
    }

    pub fn element(&mut self, dim: usize) -> AlgebraElement {
        AlgebraElement::new((0..dim).map(|_| self.small_rat()).collect())
    }

    /// Element with zero real part.
    pub fn nilpotent(&mut self, dim: usize) -> AlgebraElement {
        let mut e = self.element(dim);
        e.coords[0] = int(0);
        e
    }

    /// Element with nonzero real part.
    pub fn unit_element(&mut self, dim: usize) -> AlgebraElement {
        let mut e = self.element(dim);
        e.coords[0] = self.nonzero_rat();
        e
    }

    /// The algebra in a random unitriangular Jordan–Hölder basis change. Changes the
    /// validator rejects are retried.
    pub fn rebased(&mut self, alg: &WeilAlgebra) -> WeilAlgebra {
        let d = alg.dim();
        for _ in 0..32 {
            let mut rows = identity(d);
            for (a, row) in rows.iter_mut().enumerate().skip(1) {
                row[a] = self.nonzero_rat();
                for entry in row.iter_mut().skip(a + 1) {
                    if self.coin() {
                        *entry = self.small_rat();
                    }
                }
            }
            if let Ok(b) = alg.change_basis(&rows) {
                return b;
            }
        }
        alg.clone()
    }

    /// A random Frobenius covector on `alg`.
    pub fn frobenius(&mut self, alg: &WeilAlgebra) -> FrobeniusStructure {
        loop {
            let p: Vec<Rat> = (0..alg.dim()).map(|_| self.small_rat()).collect();
            if let Ok(f) = FrobeniusStructure::attach(alg, &p) {
                return f;
            }
        }
    }

    /// A random nonzero Poisson bivector. On `ℝ²` any `f ∂_1∧∂_2`; on `ℝ³`
    /// `w^{ij} = f ε^{ijk} ∂_k C` with `deg f <= 1`, `deg C <= 2`; on `ℝ⁴` a product
    /// of two planar structures.
    pub fn poisson(&mut self, dim: usize) -> MultiVectorField {
        loop {
            let w = self.poisson_candidate(dim);
            if !w.is_zero() {
                return w;
            }
        }
    }

    fn poisson_candidate(&mut self, dim: usize) -> MultiVectorField {
        match dim {
            2 => {
                let f = self.poly(2, 2, 3);
                MultiVectorField::from_components(2, 2, [(vec![0, 1], f)]).expect("bivector")
            }
            3 => {
                let f = self.nonzero_poly(3, 1, 2);
                let c = self.poly(3, 2, 4);
                let dc: Vec<Polynomial> = (0..3).map(|k| c.diff(k)).collect();
                MultiVectorField::from_components(
                    3,
                    2,
                    [
                        (vec![0, 1], &f * &dc[2]),
                        (vec![1, 2], &f * &dc[0]),
                        (vec![2, 0], &f * &dc[1]),
                    ],
                )
                .expect("bivector")
            }
            4 => {
                // product of two planar structures
                let f = self.nonzero_poly(2, 2, 3).embed(4, &[0, 1]);
                let g = self.nonzero_poly(2, 2, 3).embed(4, &[2, 3]);
                MultiVectorField::from_components(4, 2, [(vec![0, 1], f), (vec![2, 3], g)]).expect("bivector")
            }
            _ => panic!("random Poisson bivectors are generated on R^2, R^3 and R^4"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::schouten;

    #[test]
    fn deterministic_streams() {
        let mut a = Gen::new(7);
        let mut b = Gen::new(7);
        assert_eq!(a.poly(3, 3, 4), b.poly(3, 3, 4));
        assert_eq!(a.element(3), b.element(3));
    }

    #[test]
    fn random_poisson_bivectors_satisfy_jacobi() {
        let mut g = Gen::new(1);
        for _ in 0..10 {
            for n in [2, 3] {
                let w = g.poisson(n);
                assert!(schouten(&w, &w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rebased_algebras_validate() {
        let mut g = Gen::new(3);
        for alg in [WeilAlgebra::plural(2), WeilAlgebra::width_two()] {
            let b = g.rebased(&alg);
            assert_eq!(b.dim(), alg.dim());
            g.frobenius(&b).verify_invariants().unwrap();
        }
    }
}
