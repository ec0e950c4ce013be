//! Lift identities, naturality under polynomial shears, and the tangent-bundle
//! primitives of lifted closed forms.

use weil_core::algebra::AlgebraElement;
use weil_core::algebra::WeilAlgebra;
use weil_core::combinat::increasing_tuples;
use weil_core::fixtures::{shears_2d, shears_3d, with_top_covector};
use weil_core::frobenius::FrobeniusStructure;
use weil_core::gen::Gen;
use weil_core::lifts::{
    a_lift, base_pullback, complete, complete_bivector_closed_form, complete_lift, lambda_lift, lift_alternating,
    lift_function, lift_mixed, vertical, vertical_closed_form, vertical_lift, Lift,
};
use weil_core::linalg::det;
use weil_core::poly::Polynomial;
use weil_core::prolong::{eval_matrix, flat, is_zero_matrix, prolong_chart_map, pull_to_base_coords, ChartMap};
use weil_core::rational::{fmt_rat, int, one, rat, Rat};
use weil_core::tensor::{
    exterior_d, interior, lie_derive, pullback_form, pushforward_mixed, pushforward_multivector, schouten,
    DifferentialForm, MixedTensorField, MultiVectorField,
};

use super::{
    ensure, fail, fixture, random_structure, same_alt, same_mixed, CaseResult, Cases, Check, Ctx, OrFail, RANDOM,
};

pub(crate) fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "lift.d_commutes_with_complete",
            anchor: "(dξ)^C = d(ξ^C)",
            criterion: 4,
            cases: RANDOM,
            run: d_complete,
        },
        Check {
            name: "lift.d_commutes_with_realization",
            anchor: "R(dΞ) = d(R(Ξ)) for Ξ = Xξ^A",
            criterion: 4,
            cases: RANDOM,
            run: d_realization,
        },
        Check {
            name: "lift.bracket_complete",
            anchor: "[u,v]^C = [u^C,v^C]",
            criterion: 4,
            cases: RANDOM,
            run: bracket_complete,
        },
        Check {
            name: "lift.bracket_realization",
            anchor: "[R(U),R(V)] = R([U,V]) for U = Xu^A, V = Yv^A",
            criterion: 4,
            cases: RANDOM,
            run: bracket_realization,
        },
        Check {
            name: "lift.bracket_vertical",
            anchor: "[u,v]^V = [u^V,v^C] = [u^C,v^V], [u^V,v^V] = 0",
            criterion: 4,
            cases: RANDOM,
            run: bracket_vertical,
        },
        Check {
            name: "lift.interior_realization",
            anchor: "R(i(v)t) = i(R(v))R(t) for v = Xv^A, t = Yξ^A",
            criterion: 4,
            cases: RANDOM,
            run: interior_realization,
        },
        Check {
            name: "lift.interior_complete_vector",
            anchor: "i(v^C)ξ^C = (i(v)ξ)^C for vector fields v",
            criterion: 4,
            cases: RANDOM,
            run: interior_complete,
        },
        Check {
            name: "lift.interior_complete_bivector_fails",
            anchor: "i(v^C)ξ^C ≠ (i(v)ξ)^C for v = ∂_1∧∂_2, ξ = dx^1∧dx^2",
            criterion: 4,
            cases: Cases::Fixed(4),
            run: interior_bivector_fails,
        },
        Check {
            name: "lift.vertical_closed_form",
            anchor: "u^V = (u_I^J∘π) dx^{i0}⊗…⊗∂/∂x^{jn}",
            criterion: 4,
            cases: RANDOM,
            run: vertical_closed,
        },
        Check {
            name: "lift.vertical_tensor_product",
            anchor: "(u⊗v)^V = u^V⊗v^V",
            criterion: 4,
            cases: RANDOM,
            run: vertical_tensor_product,
        },
        Check {
            name: "lift.lie_derivative",
            anchor: "(L_v t)^C = L_{v^C}t^C, (L_v t)^V = L_{v^C}t^V = L_{v^V}t^C, L_{v^V}t^V = 0",
            criterion: 4,
            cases: RANDOM,
            run: lie_derivative,
        },
        Check {
            name: "lift.base_pullback",
            anchor: "π_A^*ξ = R(e_n ξ^A)",
            criterion: 4,
            cases: RANDOM,
            run: base_pullback_vertical,
        },
        Check {
            name: "lift.complete_tensor_product",
            anchor: "(u⊗v)^C = Σ q^{ab} u^{(a)}⊗v^{(b)}",
            criterion: 4,
            cases: RANDOM,
            run: complete_tensor_product,
        },
        Check {
            name: "lift.basis_lift_tensor_product",
            anchor: "(u⊗v)^{(a)} = Σ γ_a^{bd} u^{(b)}⊗v^{(d)}",
            criterion: 4,
            cases: RANDOM,
            run: basis_tensor_product,
        },
        Check {
            name: "lift.lambda_lift_product",
            anchor: "(u⊗v)^{(λ)} = Σ_κ u^{(κ)}⊗v^{(λ−κ)} on R(ε^n)",
            criterion: 4,
            cases: RANDOM,
            run: lambda_product,
        },
        Check {
            name: "lift.basis_lift_endpoints",
            anchor: "u^{(0)} = u^C, u^{(n)} = u^V, R((X+Y)u^A) = R(Xu^A) + R(Yu^A)",
            criterion: 4,
            cases: RANDOM,
            run: basis_endpoints,
        },
        Check {
            name: "lift.bivector_closed_form",
            anchor: "(w^C)^{iajb} = (w^{ij})^s γ_s^{ab}",
            criterion: 4,
            cases: RANDOM,
            run: bivector_closed,
        },
        Check {
            name: "lift.alternating_matches_mixed",
            anchor: "canonical-key lift = full realization of the antisymmetric tensor",
            criterion: 4,
            cases: RANDOM,
            run: alternating_matches_mixed,
        },
        Check {
            name: "lift.injective",
            anchor: "t ≠ 0 ⇒ t^C ≠ 0; R(Xt^A) = 0 ⇒ X = 0 or t = 0",
            criterion: 4,
            cases: RANDOM,
            run: injective,
        },
        Check {
            name: "lift.function_kernel",
            anchor: "f^C = 0 iff f is constant, when p(1) = 0",
            criterion: 4,
            cases: RANDOM,
            run: function_kernel,
        },
        Check {
            name: "natural.complete_forms",
            anchor: "(T^Aφ)^*(ξ^C) = (φ^*ξ)^C",
            criterion: 5,
            cases: Cases::Random { min: 24 },
            run: natural_complete_forms,
        },
        Check {
            name: "natural.vertical_forms",
            anchor: "(T^Aφ)^*(ξ^V) = (φ^*ξ)^V",
            criterion: 5,
            cases: Cases::Random { min: 24 },
            run: natural_vertical_forms,
        },
        Check {
            name: "natural.complete_multivectors",
            anchor: "(T^Aφ)_*(u^C) = (φ_*u)^C",
            criterion: 5,
            cases: Cases::Random { min: 24 },
            run: natural_complete_multivectors,
        },
        Check {
            name: "natural.vertical_multivectors",
            anchor: "(T^Aφ)_*(u^V) = (φ_*u)^V",
            criterion: 5,
            cases: Cases::Random { min: 24 },
            run: natural_vertical_multivectors,
        },
        Check {
            name: "natural.endomorphisms",
            anchor: "(T^Aφ)_*(T^C) = (φ_*T)^C, (T^Aφ)_*(T^V) = (φ_*T)^V for (1,1)-tensors",
            criterion: 5,
            cases: Cases::Random { min: 24 },
            run: natural_endomorphisms,
        },
        Check {
            name: "natural.jacobian_blocks",
            anchor: "∂x^{i'a}/∂x^{jb} = 0 for b > a, diagonal blocks ∂x^{i'}/∂x^j∘π, det J_A = (det J)^{n+1}",
            criterion: 5,
            cases: Cases::Fixed(24),
            run: jacobian_blocks,
        },
        Check {
            name: "tangent.closed_form_primitive",
            anchor: "ξ = dα ⇒ ξ^C = dη with η_{i…} = y^jξ_{j i…}, p = (0,1)",
            criterion: 6,
            cases: RANDOM,
            run: closed_form_primitive,
        },
        Check {
            name: "tangent.unit_covector_split",
            anchor: "ξ^C_{(1)} = π^*ξ + ξ^C_{(0)} for p = (1,1) and p = (0,1)",
            criterion: 6,
            cases: RANDOM,
            run: unit_covector_split,
        },
    ]
}

fn base_dim(g: &mut Gen, f: &FrobeniusStructure) -> usize {
    // keep lifted patches at most 9-dimensional
    let cap = if f.dim() > 3 { 2 } else { 3 };
    g.usize_in(1, cap)
}

fn nonzero_element(g: &mut Gen, d: usize) -> AlgebraElement {
    loop {
        let x = g.element(d);
        if !x.is_zero() {
            return x;
        }
    }
}

fn d_complete(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(0, m.min(2));
    let xi: DifferentialForm = g.form(m, k, 3);
    same_alt(&complete(&f, &exterior_d(&xi)), &exterior_d(&complete(&f, &xi)), || {
        format!("{name}, ξ = {xi}")
    })
}

fn d_realization(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(0, m.min(2));
    let xi: DifferentialForm = g.form(m, k, 3);
    let x = g.element(f.dim());
    let inputs = || format!("{name}, ξ = {xi}, X = {x}");
    let lift = Lift::Epsilon(x.clone());
    let lhs = lift_alternating(&f, &exterior_d(&xi), &lift).or_fail(inputs)?;
    let rhs = exterior_d(&lift_alternating(&f, &xi, &lift).or_fail(inputs)?);
    same_alt(&lhs, &rhs, inputs)
}

/// Two multivectors of degrees `p, q` with `p + q ≥ 1`.
fn multivector_pair(g: &mut Gen, m: usize) -> (MultiVectorField, MultiVectorField) {
    loop {
        let p = g.usize_in(0, m.min(2));
        let q = g.usize_in(0, m.min(2));
        if p + q >= 1 {
            return (g.multivector(m, p, 2), g.multivector(m, q, 2));
        }
    }
}

fn bracket(
    u: &MultiVectorField,
    v: &MultiVectorField,
    inputs: impl Fn() -> String,
) -> Result<MultiVectorField, super::CaseFailure> {
    schouten(u, v).or_fail(inputs)
}

fn bracket_complete(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = multivector_pair(g, m);
    let inputs = || format!("{name}, u = {u}, v = {v}");
    let lhs = complete(&f, &bracket(&u, &v, inputs)?);
    let rhs = bracket(&complete(&f, &u), &complete(&f, &v), inputs)?;
    same_alt(&lhs, &rhs, inputs)
}

fn bracket_realization(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = multivector_pair(g, m);
    let (x, y) = (g.element(f.dim()), g.element(f.dim()));
    let inputs = || format!("{name}, u = {u}, v = {v}, X = {x}, Y = {y}");
    let xy = f.algebra().mul(&x, &y);
    let lhs = lift_alternating(&f, &bracket(&u, &v, inputs)?, &Lift::Epsilon(xy)).or_fail(inputs)?;
    let ux = lift_alternating(&f, &u, &Lift::Epsilon(x.clone())).or_fail(inputs)?;
    let vy = lift_alternating(&f, &v, &Lift::Epsilon(y.clone())).or_fail(inputs)?;
    same_alt(&lhs, &bracket(&ux, &vy, inputs)?, inputs)
}

fn bracket_vertical(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = multivector_pair(g, m);
    let inputs = || format!("{name}, u = {u}, v = {v}");
    let (uc, vc, uv, vv) = (complete(&f, &u), complete(&f, &v), vertical(&f, &u), vertical(&f, &v));
    let lhs = vertical(&f, &bracket(&u, &v, inputs)?);
    same_alt(&lhs, &bracket(&uv, &vc, inputs)?, || {
        format!("{} ([u^V,v^C])", inputs())
    })?;
    same_alt(&lhs, &bracket(&uc, &vv, inputs)?, || {
        format!("{} ([u^C,v^V])", inputs())
    })?;
    let vv_bracket = bracket(&uv, &vv, inputs)?;
    same_alt(
        &vv_bracket,
        &MultiVectorField::zero(vv_bracket.dim(), vv_bracket.degree()),
        || format!("{} ([u^V,v^V])", inputs()),
    )
}

fn interior_realization(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(1, m.min(3));
    let v: MultiVectorField = g.multivector(m, 1, 2);
    let xi: DifferentialForm = g.form(m, k, 2);
    let (x, y) = (g.element(f.dim()), g.element(f.dim()));
    let inputs = || format!("{name}, v = {v}, ξ = {xi}, X = {x}, Y = {y}");
    let xy = f.algebra().mul(&x, &y);
    let lhs = lift_alternating(&f, &interior(&v, &xi).or_fail(inputs)?, &Lift::Epsilon(xy)).or_fail(inputs)?;
    let vx = lift_alternating(&f, &v, &Lift::Epsilon(x.clone())).or_fail(inputs)?;
    let xiy = lift_alternating(&f, &xi, &Lift::Epsilon(y.clone())).or_fail(inputs)?;
    same_alt(&lhs, &interior(&vx, &xiy).or_fail(inputs)?, inputs)
}

fn interior_complete(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(1, m.min(3));
    let v: MultiVectorField = g.multivector(m, 1, 2);
    let xi: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("{name}, v = {v}, ξ = {xi}");
    let lhs = interior(&complete(&f, &v), &complete(&f, &xi)).or_fail(inputs)?;
    same_alt(&lhs, &complete(&f, &interior(&v, &xi).or_fail(inputs)?), inputs)
}

fn interior_bivector_fails(_: &Ctx, _: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = fixture(case);
    let v = MultiVectorField::basis(2, &[0, 1]);
    let xi = DifferentialForm::basis(2, &[0, 1]);
    let inputs = || format!("{name}, v = {v}, ξ = {xi}");
    let lhs = interior(&complete(&f, &v), &complete(&f, &xi)).or_fail(inputs)?;
    let rhs = complete(&f, &interior(&v, &xi).or_fail(inputs)?);
    ensure(lhs != rhs, inputs, || {
        format!("identity unexpectedly holds: both sides {lhs}")
    })
}

/// Mixed tensor of type `(k, l)` with `1 ≤ k + l ≤ 2`.
fn small_mixed(g: &mut Gen, m: usize) -> MixedTensorField {
    let (k, l) = *g.choose(&[(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]);
    g.mixed(m, k, l, 2)
}

fn vertical_closed(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let t = small_mixed(g, m);
    same_mixed(
        vertical_lift(&f, &t).field(),
        &vertical_closed_form(&t, f.dim()),
        || format!("{name}, t = {t}"),
    )
}

fn vertical_tensor_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = (small_1(g, m), small_1(g, m));
    let lhs = vertical_lift(&f, &u.tensor(&v)).into_field();
    let rhs = vertical_lift(&f, &u).field().tensor(vertical_lift(&f, &v).field());
    same_mixed(&lhs, &rhs, || format!("{name}, u = {u}, v = {v}"))
}

/// Mixed tensor with a single index, either slot.
fn small_1(g: &mut Gen, m: usize) -> MixedTensorField {
    if g.coin() {
        g.mixed(m, 1, 0, 2)
    } else {
        g.mixed(m, 0, 1, 2)
    }
}

fn lie_derivative(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let v: MultiVectorField = g.multivector(m, 1, 2);
    let t = small_mixed(g, m);
    let inputs = || format!("{name}, v = {v}, t = {t}");
    let lie = |x: &MultiVectorField, s: &MixedTensorField| lie_derive(x, s).or_fail(inputs);
    let (vc, vv) = (complete(&f, &v), vertical(&f, &v));
    let (tc, tv) = (complete_lift(&f, &t).into_field(), vertical_lift(&f, &t).into_field());
    let base = lie(&v, &t)?;
    same_mixed(&complete_lift(&f, &base).into_field(), &lie(&vc, &tc)?, || {
        format!("{} (complete)", inputs())
    })?;
    let lv = vertical_lift(&f, &base).into_field();
    same_mixed(&lv, &lie(&vc, &tv)?, || format!("{} (L_{{v^C}} t^V)", inputs()))?;
    same_mixed(&lv, &lie(&vv, &tc)?, || format!("{} (L_{{v^V}} t^C)", inputs()))?;
    let zero = lie(&vv, &tv)?;
    ensure(zero.is_zero(), inputs, || format!("L_{{v^V}} t^V = {zero}"))
}

fn base_pullback_vertical(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(0, m.min(3));
    let xi: DifferentialForm = g.form(m, k, 3);
    same_alt(&base_pullback(&f, &xi), &vertical(&f, &xi), || {
        format!("{name}, ξ = {xi}")
    })?;
    let t = g.mixed(m, 2, 0, 2);
    let pulled = vertical_closed_form(&t, f.dim());
    same_mixed(vertical_lift(&f, &t).field(), &pulled, || format!("{name}, t = {t}"))
}

fn basis_lifts(
    f: &FrobeniusStructure,
    t: &MixedTensorField,
    inputs: impl Fn() -> String,
) -> Result<Vec<MixedTensorField>, super::CaseFailure> {
    (0..f.dim())
        .map(|a| a_lift(f, t, a).map(|l| l.into_field()).or_fail(&inputs))
        .collect()
}

fn complete_tensor_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = (small_1(g, m), small_1(g, m));
    let inputs = || format!("{name}, u = {u}, v = {v}");
    let (ua, va) = (basis_lifts(&f, &u, inputs)?, basis_lifts(&f, &v, inputs)?);
    let d = f.dim();
    let mut rhs = MixedTensorField::zero(m * d, u.lower() + v.lower(), u.upper() + v.upper());
    for a in 0..d {
        for b in 0..d {
            let c = &f.q_upper()[a][b];
            if !num_traits::Zero::is_zero(c) {
                rhs = rhs.add(&ua[a].tensor(&va[b]).scale(c));
            }
        }
    }
    same_mixed(&complete_lift(&f, &u.tensor(&v)).into_field(), &rhs, inputs)
}

fn basis_tensor_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let (u, v) = (small_1(g, m), small_1(g, m));
    let inputs = || format!("{name}, u = {u}, v = {v}");
    let (ua, va) = (basis_lifts(&f, &u, inputs)?, basis_lifts(&f, &v, inputs)?);
    let d = f.dim();
    let a = g.usize_in(0, d - 1);
    let mut rhs = MixedTensorField::zero(m * d, u.lower() + v.lower(), u.upper() + v.upper());
    for b in 0..d {
        for e in 0..d {
            let c = f.gamma_upper(b, e, a);
            if !num_traits::Zero::is_zero(c) {
                rhs = rhs.add(&ua[b].tensor(&va[e]).scale(c));
            }
        }
    }
    let lhs = a_lift(&f, &u.tensor(&v), a).or_fail(inputs)?.into_field();
    same_mixed(&lhs, &rhs, || format!("{}, a = {a}", inputs()))
}

fn lambda_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let n = case % 3 + 1;
    let f = with_top_covector(&WeilAlgebra::plural(n));
    let m = g.usize_in(1, 2);
    let (u, v) = (small_1(g, m), small_1(g, m));
    let lambda = g.usize_in(0, n);
    let inputs = || format!("R(e^{n}), λ = {lambda}, u = {u}, v = {v}");
    let mut rhs = MixedTensorField::zero(m * (n + 1), u.lower() + v.lower(), u.upper() + v.upper());
    for kappa in 0..=lambda {
        let uk = lambda_lift(&f, &u, kappa).or_fail(inputs)?.into_field();
        let vk = lambda_lift(&f, &v, lambda - kappa).or_fail(inputs)?.into_field();
        rhs = rhs.add(&uk.tensor(&vk));
    }
    let lhs = lambda_lift(&f, &u.tensor(&v), lambda).or_fail(inputs)?.into_field();
    same_mixed(&lhs, &rhs, inputs)
}

fn basis_endpoints(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let t = small_mixed(g, m);
    let inputs = || format!("{name}, t = {t}");
    let n = f.dim() - 1;
    same_mixed(
        a_lift(&f, &t, 0).or_fail(inputs)?.field(),
        complete_lift(&f, &t).field(),
        inputs,
    )?;
    same_mixed(
        a_lift(&f, &t, n).or_fail(inputs)?.field(),
        vertical_lift(&f, &t).field(),
        inputs,
    )?;
    let (x, y) = (g.element(f.dim()), g.element(f.dim()));
    let mut sum = x.clone();
    for (s, c) in sum.coords.iter_mut().zip(&y.coords) {
        *s += c;
    }
    let lift = |e: &AlgebraElement| {
        lift_mixed(&f, &t, &Lift::Epsilon(e.clone()))
            .map(|l| l.into_field())
            .or_fail(inputs)
    };
    same_mixed(&lift(&sum)?, &lift(&x)?.add(&lift(&y)?), || {
        format!("{}, X = {x}, Y = {y}", inputs())
    })
}

fn bivector_closed(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = g.usize_in(2, 3);
    let w: MultiVectorField = g.multivector(m, 2, 3);
    same_alt(&complete(&f, &w), &complete_bivector_closed_form(&f, &w), || {
        format!("{name}, w = {w}")
    })
}

fn alternating_matches_mixed(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let k = g.usize_in(1, m.min(2));
    let eps = g.element(f.dim());
    let lift = Lift::Epsilon(eps.clone());
    if g.coin() {
        let u: MultiVectorField = g.multivector(m, k, 2);
        let inputs = || format!("{name}, u = {u}, ε = {eps}");
        let alt = lift_alternating(&f, &u, &lift).or_fail(inputs)?;
        let mixed = lift_mixed(&f, &MixedTensorField::from_alternating(&u), &lift).or_fail(inputs)?;
        same_mixed(&MixedTensorField::from_alternating(&alt), mixed.field(), inputs)
    } else {
        let xi: DifferentialForm = g.form(m, k, 2);
        let inputs = || format!("{name}, ξ = {xi}, ε = {eps}");
        let alt = lift_alternating(&f, &xi, &lift).or_fail(inputs)?;
        let mixed = lift_mixed(&f, &MixedTensorField::from_alternating(&xi), &lift).or_fail(inputs)?;
        same_mixed(&MixedTensorField::from_alternating(&alt), mixed.field(), inputs)
    }
}

fn injective(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = base_dim(g, &f);
    let t = loop {
        let t = small_mixed(g, m);
        if !t.is_zero() {
            break t;
        }
    };
    let inputs = || format!("{name}, t = {t}");
    ensure(!complete_lift(&f, &t).field().is_zero(), inputs, || {
        "complete lift vanished".into()
    })?;
    let x = nonzero_element(g, f.dim());
    let lifted = lift_mixed(&f, &t, &Lift::Epsilon(x.clone())).or_fail(inputs)?;
    ensure(!lifted.field().is_zero(), inputs, || {
        format!("realization of X t^A vanished for X = {x}")
    })
}

fn function_kernel(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = fixture(case);
    let m = g.usize_in(1, 3);
    let p = if g.coin() {
        Polynomial::constant(m, g.small_rat())
    } else {
        g.poly(m, 3, 4)
    };
    let inputs = || format!("{name}, f = {p}");
    let lifted = lift_function(&f, &p, &Lift::Complete).or_fail(inputs)?;
    ensure(lifted.is_zero() == p.is_constant(), inputs, || {
        format!("f^C = {lifted}")
    })
}

/// Shear `case mod 6` and fixture algebra `(case / 6) mod 4`.
fn shear_case(case: usize) -> (String, ChartMap, String, FrobeniusStructure) {
    let mut shears = shears_2d();
    shears.extend(shears_3d());
    let (sname, phi) = shears.swap_remove(case % shears.len());
    let (aname, f) = fixture(case / 6);
    (sname, phi, aname, f)
}

fn prolonged(
    phi: &ChartMap,
    f: &FrobeniusStructure,
    inputs: impl Fn() -> String,
) -> Result<ChartMap, super::CaseFailure> {
    prolong_chart_map(phi, f.algebra()).or_fail(inputs)
}

fn natural_forms(g: &mut Gen, case: usize, lift: Lift) -> CaseResult {
    let (sname, phi, aname, f) = shear_case(case);
    let m = phi.source_dim();
    let k = g.usize_in(0, 2);
    let xi: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("{aname}, φ = {sname}, ξ = {xi}");
    let big = prolonged(&phi, &f, inputs)?;
    let lifted = lift_alternating(&f, &xi, &lift).or_fail(inputs)?;
    let lhs = pullback_form(&big, &lifted).or_fail(inputs)?;
    let rhs = lift_alternating(&f, &pullback_form(&phi, &xi).or_fail(inputs)?, &lift).or_fail(inputs)?;
    same_alt(&lhs, &rhs, inputs)
}

fn natural_complete_forms(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    natural_forms(g, case, Lift::Complete)
}

fn natural_vertical_forms(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    natural_forms(g, case, Lift::Vertical)
}

fn natural_multivectors(g: &mut Gen, case: usize, lift: Lift) -> CaseResult {
    let (sname, phi, aname, f) = shear_case(case);
    let m = phi.source_dim();
    let k = g.usize_in(1, 2);
    let u: MultiVectorField = g.multivector(m, k, 2);
    let inputs = || format!("{aname}, φ = {sname}, u = {u}");
    let big = prolonged(&phi, &f, inputs)?;
    let lifted = lift_alternating(&f, &u, &lift).or_fail(inputs)?;
    let lhs = pushforward_multivector(&big, &lifted).or_fail(inputs)?;
    let rhs = lift_alternating(&f, &pushforward_multivector(&phi, &u).or_fail(inputs)?, &lift).or_fail(inputs)?;
    same_alt(&lhs, &rhs, inputs)
}

fn natural_complete_multivectors(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    natural_multivectors(g, case, Lift::Complete)
}

fn natural_vertical_multivectors(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    natural_multivectors(g, case, Lift::Vertical)
}

fn natural_endomorphisms(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (sname, phi, aname, f) = shear_case(case);
    let m = phi.source_dim();
    let t = g.mixed(m, 1, 1, 2);
    let inputs = || format!("{aname}, φ = {sname}, T = {t}");
    let big = prolonged(&phi, &f, inputs)?;
    let moved = pushforward_mixed(&phi, &t).or_fail(inputs)?;
    for lift in [Lift::Complete, Lift::Vertical] {
        let lhs = pushforward_mixed(&big, lift_mixed(&f, &t, &lift).or_fail(inputs)?.field()).or_fail(inputs)?;
        let rhs = lift_mixed(&f, &moved, &lift).or_fail(inputs)?.into_field();
        same_mixed(&lhs, &rhs, || format!("{}, {lift:?}", inputs()))?;
    }
    Ok(())
}

fn sample_points(case: usize, nvars: usize) -> Vec<Vec<Rat>> {
    let mut g = Gen::new(0x9e37_79b9 ^ case as u64);
    let mut pts = vec![vec![int(0); nvars], (0..nvars).map(|i| int(i as i64 + 1)).collect()];
    pts.push((0..nvars).map(|i| rat(1 - 2 * (i as i64 % 2), i as i64 + 2)).collect());
    while pts.len() < 5 {
        pts.push(g.point(nvars));
    }
    pts
}

fn jacobian_blocks(_: &Ctx, _: &mut Gen, case: usize) -> CaseResult {
    let (sname, phi, aname, f) = shear_case(case);
    let m = phi.source_dim();
    let d = f.dim();
    let inputs = || format!("{aname}, φ = {sname}");
    let big = prolonged(&phi, &f, inputs)?;
    let jac = big.jacobian();
    let small = phi.jacobian();
    for i in 0..m {
        for j in 0..m {
            for a in 0..d {
                for b in 0..d {
                    let entry = &jac[flat(i, a, d)][flat(j, b, d)];
                    if b > a {
                        ensure(entry.is_zero(), inputs, || {
                            format!("∂x^{{{},{a}}}/∂x^{{{},{b}}} = {entry}", i + 1, j + 1)
                        })?;
                    } else if a == b {
                        let want = pull_to_base_coords(&small[i][j], d);
                        ensure(entry == &want, inputs, || {
                            format!(
                                "diagonal block ({a},{a}) entry ({}, {}): {entry} vs {want}",
                                i + 1,
                                j + 1
                            )
                        })?;
                    }
                }
            }
        }
    }
    let _ = is_zero_matrix(&jac);
    for pt in sample_points(case, m * d) {
        let lhs = det(&eval_matrix(&jac, &pt));
        let base = weil_core::prolong::base_point(&pt, m, d);
        let s = det(&eval_matrix(&small, &base));
        let mut rhs = one();
        for _ in 0..d {
            rhs *= &s;
        }
        ensure(lhs == rhs, inputs, || {
            let p: Vec<String> = pt.iter().map(fmt_rat).collect();
            format!(
                "at ({}): det = {}, (det J)^{d} = {}",
                p.join(", "),
                fmt_rat(&lhs),
                fmt_rat(&rhs)
            )
        })?;
    }
    Ok(())
}

/// `η_{I'} = y^j ξ_{j I'}` on the base slots of `TR^m`.
fn fibre_contraction(xi: &DifferentialForm) -> DifferentialForm {
    let m = xi.dim();
    let n2 = 2 * m;
    let k = xi.degree();
    let mut eta = DifferentialForm::zero(n2, k - 1);
    for rest in increasing_tuples(m, k - 1) {
        let mut c = Polynomial::zero(n2);
        for j in 0..m {
            let mut key = vec![j];
            key.extend(&rest);
            let coeff = xi.get(&key);
            if !coeff.is_zero() {
                c += &(&Polynomial::var(n2, flat(j, 1, 2)) * &pull_to_base_coords(&coeff, 2));
            }
        }
        let fk: Vec<usize> = rest.iter().map(|&i| flat(i, 0, 2)).collect();
        eta.add_at(&fk, &c);
    }
    eta
}

fn closed_form_primitive(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let f = with_top_covector(&WeilAlgebra::plural(1));
    let k = 2 + case % 2;
    let m = g.usize_in(k, 3);
    let alpha: DifferentialForm = g.form(m, k - 1, 3);
    let xi = exterior_d(&alpha);
    let inputs = || format!("R(e), p = (0,1), ξ = d({alpha}) = {xi}");
    ensure(exterior_d(&xi).is_zero(), inputs, || "ξ is not closed".into())?;
    same_alt(&complete(&f, &xi), &exterior_d(&fibre_contraction(&xi)), inputs)
}

fn unit_covector_split(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let alg = WeilAlgebra::plural(1);
    let f0 = with_top_covector(&alg);
    let f1 = FrobeniusStructure::attach(&alg, &[one(), one()]).map_err(|e| fail("R(e), p = (1,1)", e.to_string()))?;
    let m = g.usize_in(1, 3);
    let k = g.usize_in(1, m);
    let xi: DifferentialForm = g.form(m, k, 3);
    let rhs = base_pullback(&f0, &xi).add(&complete(&f0, &xi));
    same_alt(&complete(&f1, &xi), &rhs, || format!("R(e), ξ = {xi}"))
}
