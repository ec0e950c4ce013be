use proptest::prelude::*;

use weil_core::algebra::WeilAlgebra;
use weil_core::fixtures::{so3, standard_structures};
use weil_core::frobenius::FrobeniusStructure;
use weil_core::gen::Gen;
use weil_core::lifts::{complete, vertical};
use weil_core::poisson::{coordinate_jacobi_witness, jacobi_check, lift_poisson};
use weil_core::poly::Polynomial;
use weil_core::prolong::{check_scheffers, prolong_scalar, prolong_scalar_taylor};
use weil_core::rational::Rat;
use weil_core::tensor::{exterior_d, interior, lie_derive_multivector, schouten, DifferentialForm, MultiVectorField};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 32,
        ..ProptestConfig::default()
    }
}

fn structure(g: &mut Gen) -> FrobeniusStructure {
    let algs = [WeilAlgebra::plural(1), WeilAlgebra::plural(2), WeilAlgebra::width_two()];
    let k = g.usize_in(0, algs.len() - 1);
    let alg = g.rebased(&algs[k]);
    g.frobenius(&alg)
}

fn sign(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::from_integer(1.into())
    } else {
        Rat::from_integer((-1).into())
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (f, h, k) = (g.poly(3, 3, 4), g.poly(3, 3, 4), g.poly(3, 3, 4));
        prop_assert_eq!(&(&f * &h) * &k, &f * &(&h * &k));
        prop_assert_eq!(&f * &(&h + &k), &(&f * &h) + &(&f * &k));
        prop_assert_eq!(&f * &h, &h * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(seed in any::<u64>(), i in 0usize..3) {
        let mut g = Gen::new(seed);
        let (f, h) = (g.poly(3, 3, 4), g.poly(3, 3, 4));
        prop_assert_eq!((&f * &h).diff(i), &(&f.diff(i) * &h) + &(&f * &h.diff(i)));
    }

    #[test]
    fn euler_identity_on_homogeneous_parts(seed in any::<u64>(), deg in 0u32..4) {
        let mut g = Gen::new(seed);
        let mut f = Polynomial::zero(3);
        for _ in 0..3 {
            let a = g.usize_in(0, deg as usize) as u32;
            let b = g.usize_in(0, (deg - a) as usize) as u32;
            f += &Polynomial::monomial(vec![a, b, deg - a - b], g.small_rat());
        }
        let mut euler = Polynomial::zero(3);
        for i in 0..3 {
            euler += &(&Polynomial::var(3, i) * &f.diff(i));
        }
        prop_assert_eq!(euler, f.scale(&Rat::from_integer(deg.into())));
    }

    #[test]
    fn chain_rule(seed in any::<u64>(), i in 0usize..2) {
        let mut g = Gen::new(seed);
        let f = g.poly(3, 3, 4);
        let inner: Vec<Polynomial> = (0..3).map(|_| g.poly(2, 2, 3)).collect();
        let mut rhs = Polynomial::zero(2);
        for (j, gj) in inner.iter().enumerate() {
            rhs += &(&f.diff(j).compose(&inner) * &gj.diff(i));
        }
        prop_assert_eq!(f.compose(&inner).diff(i), rhs);
    }

    #[test]
    fn evaluation_respects_composition(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.poly(2, 3, 4);
        let inner: Vec<Polynomial> = (0..2).map(|_| g.poly(3, 2, 3)).collect();
        let pt = g.point(3);
        let mid: Vec<Rat> = inner.iter().map(|p| p.eval(&pt)).collect();
        prop_assert_eq!(f.compose(&inner).eval(&pt), f.eval(&mid));
    }

    #[test]
    fn prolongation_is_a_ring_homomorphism(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let alg = frob.algebra();
        let (f, h) = (g.poly(2, 2, 3), g.poly(2, 2, 3));
        let (pf, ph) = (prolong_scalar(&f, alg), prolong_scalar(&h, alg));
        prop_assert_eq!(prolong_scalar(&(&f * &h), alg), pf.mul(alg, &ph));
        prop_assert_eq!(prolong_scalar(&(&f + &h), alg), pf.add(&ph));
    }

    #[test]
    fn prolongation_matches_taylor_and_is_a_smooth(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let f = g.poly(2, 3, 4);
        let direct = prolong_scalar(&f, frob.algebra());
        prop_assert_eq!(&direct, &prolong_scalar_taylor(&f, frob.algebra()));
        prop_assert!(check_scheffers(frob.algebra(), &direct).is_ok());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>(), k in 0usize..3) {
        let mut g = Gen::new(seed);
        let xi = g.form(3, k, 3);
        prop_assert!(exterior_d(&exterior_d(&xi)).is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative_and_d_is_a_graded_derivation(
        seed in any::<u64>(), p in 0usize..3, q in 0usize..2
    ) {
        let mut g = Gen::new(seed);
        let (a, b): (DifferentialForm, DifferentialForm) = (g.form(3, p, 2), g.form(3, q, 2));
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(p * q)));
        let lhs = exterior_d(&a.wedge(&b));
        let rhs = exterior_d(&a).wedge(&b).add(&a.wedge(&exterior_d(&b)).scale(&sign(p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula_for_vector_fields(seed in any::<u64>(), k in 1usize..3) {
        let mut g = Gen::new(seed);
        let x = g.multivector(3, 1, 2);
        let xi = g.form(3, k, 2);
        let lie = weil_core::tensor::lie_derive_form(&x, &xi).unwrap();
        let cartan = interior(&x, &exterior_d(&xi)).unwrap().add(&exterior_d(&interior(&x, &xi).unwrap()));
        prop_assert_eq!(lie, cartan);
    }

    #[test]
    fn schouten_is_supercommutative(seed in any::<u64>(), p in 1usize..3, q in 1usize..3) {
        let mut g = Gen::new(seed);
        let (u, v): (MultiVectorField, MultiVectorField) = (g.multivector(3, p, 2), g.multivector(3, q, 2));
        let uv = schouten(&u, &v).unwrap();
        let vu = schouten(&v, &u).unwrap();
        prop_assert_eq!(uv, vu.scale(&sign(p * q)));
    }

    #[test]
    fn schouten_of_vector_fields_is_the_lie_derivative(seed in any::<u64>(), q in 0usize..3) {
        let mut g = Gen::new(seed);
        let x = g.multivector(3, 1, 2);
        let u = g.multivector(3, q, 2);
        prop_assert_eq!(schouten(&x, &u).unwrap(), lie_derive_multivector(&x, &u).unwrap());
    }

    #[test]
    fn lifts_commute_with_exterior_derivative(seed in any::<u64>(), k in 0usize..2) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let xi = g.form(2, k, 2);
        prop_assert_eq!(complete(&frob, &exterior_d(&xi)), exterior_d(&complete(&frob, &xi)));
        prop_assert_eq!(vertical(&frob, &exterior_d(&xi)), exterior_d(&vertical(&frob, &xi)));
    }

    #[test]
    fn complete_lift_preserves_schouten_brackets(seed in any::<u64>(), p in 1usize..3, q in 0usize..2) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let (u, v) = (g.multivector(2, p, 2), g.multivector(2, q, 2));
        let lifted = schouten(&complete(&frob, &u), &complete(&frob, &v)).unwrap();
        prop_assert_eq!(lifted, complete(&frob, &schouten(&u, &v).unwrap()));
    }

    #[test]
    fn vertical_lifts_commute(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let (u, v) = (g.multivector(2, 1, 2), g.multivector(2, 2, 2));
        prop_assert!(schouten(&vertical(&frob, &u), &vertical(&frob, &v)).unwrap().is_zero());
    }

    #[test]
    fn lifted_poisson_structures_are_poisson(seed in any::<u64>(), dim in 2usize..4) {
        let mut g = Gen::new(seed);
        let frob = structure(&mut g);
        let w = jacobi_check(&g.poisson(dim)).expect("generator yields Poisson bivectors");
        let eps = g.element(frob.dim());
        let lifted = lift_poisson(&frob, &w, &eps).unwrap();
        prop_assert_eq!(coordinate_jacobi_witness(lifted.bivector()), None);
    }
}

#[test]
fn so3_complete_lifts_are_poisson_on_every_standard_algebra() {
    let w = jacobi_check(&so3()).unwrap();
    for (name, frob) in standard_structures() {
        let lifted = lift_poisson(&frob, &w, &frob.algebra().unit()).unwrap();
        assert_eq!(coordinate_jacobi_witness(lifted.bivector()), None, "{name}");
    }
}
