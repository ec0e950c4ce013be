//! Poisson calculus, lifted Poisson structures, modular vector fields of lifts and
//! the tangent-bundle exactness witnesses.

use weil_core::algebra::{AlgebraElement, WeilAlgebra};
use weil_core::fixtures::{linear_plane, shears_2d, shears_3d, so3, symplectic_plane, with_top_covector};
use weil_core::frobenius::FrobeniusStructure;
use weil_core::gen::Gen;
use weil_core::lifts::{base_pullback, complete, lift_alternating, lift_function, vertical, Lift};
use weil_core::linalg::det;
use weil_core::poisson::{
    anchor, bracket_unchecked, cyclic_jacobiator, form_bracket, hamiltonian, is_casimir, jacobi_check, lichnerowicz,
    lift_density, modular_field, pair, poisson_bracket, sharp, verify_modular_theorem, LogDensity, PoissonStructure,
};
use weil_core::poly::Polynomial;
use weil_core::prolong::{base_point, eval_matrix, flat, prolong_chart_map};
use weil_core::rational::{fmt_rat, int, Rat};
use weil_core::tensor::{
    exterior_d, interior, pullback_function, pushforward_multivector, schouten, DifferentialForm, MultiVectorField,
};

use super::calibrate::{
    fibre_euler, random_constant_symplectic, symplectic_inverse, tangent_complete_parts, tangent_structure,
    vertical_primitive,
};
use super::{
    ensure, fail, fixture, random_structure, same_alt, same_poly, CaseFailure, CaseResult, Cases, Check, CheckRecord,
    Counterexample, Ctx, OrFail, RANDOM,
};

pub(crate) fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "poisson.jacobi_check_oracle",
            anchor: "[w,w] = 0 iff {{x^i,x^j},x^k} + cyclic = 0",
            criterion: 7,
            cases: Cases::Random { min: 50 },
            run: jacobi_oracle,
        },
        Check {
            name: "poisson.sharp_intertwines_d",
            anchor: "σ∘w̃ = c·w̃∘d",
            criterion: 7,
            cases: RANDOM,
            run: sharp_intertwines_d,
        },
        Check {
            name: "poisson.interior_pairing",
            anchor: "i(w)(df∧dg) = c·{f,g}",
            criterion: 7,
            cases: RANDOM,
            run: interior_pairing,
        },
        Check {
            name: "poisson.schouten_jacobiator",
            anchor: "[w,w]^{ijk} = c·(w^{is}∂_s w^{jk} + cyclic)",
            criterion: 7,
            cases: RANDOM,
            run: schouten_jacobiator,
        },
        Check {
            name: "poisson.sharp_on_one_forms",
            anchor: "w̃α = c·w^{ij}α_i∂_j, i(w^{ij}α_i∂_j)β = w(α,β)",
            criterion: 7,
            cases: RANDOM,
            run: sharp_one_forms,
        },
        Check {
            name: "poisson.lichnerowicz_lifts",
            anchor: "(σ_w u)^C = σ_{w^C}u^C, (σ_w u)^V = σ_{w^C}u^V = σ_{w^V}u^C",
            criterion: 7,
            cases: RANDOM,
            run: lichnerowicz_lifts,
        },
        Check {
            name: "poisson.sharp_complete",
            anchor: "w̃^C(ξ^C) = (w̃ξ)^C",
            criterion: 7,
            cases: RANDOM,
            run: sharp_complete,
        },
        Check {
            name: "poisson.cochain_square",
            anchor: "σ_{w^C}(w̃^C ξ^C) = (σ_w w̃ξ)^C = c·w̃^C((dξ)^C)",
            criterion: 7,
            cases: RANDOM,
            run: cochain_square,
        },
        Check {
            name: "poisson.sharp_vertical",
            anchor: "w̃^C(π^*ξ) = (w̃ξ)^V, w̃^V(π^*ξ) = 0, w̃^V(ξ^C) = (w̃ξ)^V or 0",
            criterion: 7,
            cases: RANDOM,
            run: sharp_vertical,
        },
        Check {
            name: "poisson.hamiltonian_lifts",
            anchor: "X^{w^C}_{f^C} = (X_f)^C, X^{w^C}_{f^V} = X^{w^V}_{f^C} = (X_f)^V, X^{w^V}_{f^V} = 0",
            criterion: 7,
            cases: RANDOM,
            run: hamiltonian_lifts,
        },
        Check {
            name: "poisson.casimir_lifts",
            anchor: "C Casimir of w ⇒ C^{(a)} Casimir of w_b",
            criterion: 7,
            cases: RANDOM,
            run: casimir_lifts,
        },
        Check {
            name: "poisson.compatible_lifts",
            anchor: "[w_a,w_b] = 0, w_ε = ε^a w_a",
            criterion: 7,
            cases: RANDOM,
            run: compatible_lifts,
        },
        Check {
            name: "poisson.bracket_laws",
            anchor: "{f,g} = −{g,f}, {f,gh} = {f,g}h + g{f,h}, {f,{g,h}} + cyclic = 0",
            criterion: 7,
            cases: RANDOM,
            run: bracket_laws,
        },
        Check {
            name: "poisson.form_bracket",
            anchor: "{df,dg} = d{f,g}, w̃{α,β} = [w̃α,w̃β]",
            criterion: 7,
            cases: RANDOM,
            run: form_bracket_laws,
        },
        Check {
            name: "poisson.lichnerowicz_complex",
            anchor: "σσ = 0, σ(u∧v) = σu∧v + (−1)^{|u|}u∧σv",
            criterion: 7,
            cases: RANDOM,
            run: lichnerowicz_complex,
        },
        Check {
            name: "poisson.modular_cocycle",
            anchor: "σΔ = 0, Δ_{λ+s} = Δ_λ + X_{−s}",
            criterion: 7,
            cases: RANDOM,
            run: modular_cocycle,
        },
        Check {
            name: "poisson.poisson_map_lifts",
            anchor: "φ Poisson ⇒ T^Aφ Poisson for w^C and w^V",
            criterion: 7,
            cases: RANDOM,
            run: poisson_map_lifts,
        },
        Check {
            name: "poisson.complete_lift_poisson_iff",
            anchor: "[w^C,w^C] = 0 iff [w,w] = 0",
            criterion: 7,
            cases: RANDOM,
            run: complete_poisson_iff,
        },
        Check {
            name: "poisson.symplectic_lift",
            anchor: "w nondegenerate ⇒ w^C nondegenerate",
            criterion: 7,
            cases: RANDOM,
            run: symplectic_lift,
        },
        Check {
            name: "poisson.tangent_complete_lift",
            anchor: "w^C = w^{ij}∂_{x^i}∧∂_{y^j} + c·y^k∂_kw^{ij}∂_{y^i}∧∂_{y^j}",
            criterion: 7,
            cases: RANDOM,
            run: tangent_complete_lift,
        },
        Check {
            name: "modular.lift_theorem_grid",
            anchor: "Δ_{μ̄,w_ε} = ε⁰(n+1)Δ_μ^V",
            criterion: 8,
            cases: Cases::Fixed(GRID),
            run: modular_grid,
        },
        Check {
            name: "modular.linear_plane_instance",
            anchor: "w = x¹∂_1∧∂_2, λ = 0, R(e), ε = 1: Δ̄ = −2∂/∂x^{2,1}",
            criterion: 8,
            cases: Cases::Fixed(1),
            run: linear_plane_instance,
        },
        Check {
            name: "modular.exact_witness",
            anchor: "Δ = X_g ⇒ Δ̄ = (n+1)[w^C, g∘π]; w = ∂_1∧∂_2, λ = x¹, g = −x¹",
            criterion: 9,
            cases: Cases::Fixed(3),
            run: exact_witness,
        },
        Check {
            name: "tangent.lifts_exact",
            anchor: "[w^C,E] = c·w^C, [w^V,E] = c'·w^V, E = y^i∂/∂y^i",
            criterion: 9,
            cases: RANDOM,
            run: lifts_exact,
        },
        Check {
            name: "tangent.vertical_lift_primitive",
            anchor: "[w^V, u] = c·k·v^V, u = y^jω_{js}v^{s…}",
            criterion: 9,
            cases: RANDOM,
            run: vertical_primitive_witness,
        },
    ]
}

fn verified(w: &MultiVectorField, inputs: impl FnOnce() -> String) -> Result<PoissonStructure, CaseFailure> {
    jacobi_check(w).map_err(|e| fail(inputs(), format!("not Poisson: [w,w] has component {}", e.component)))
}

/// Base dimension for Poisson checks, keeping lifted patches at most 9-dimensional.
fn poisson_dim(g: &mut Gen, f: &FrobeniusStructure) -> usize {
    if f.dim() > 3 {
        2
    } else {
        g.usize_in(2, 3)
    }
}

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

fn jacobi_oracle(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let w = match case {
        0 => so3(),
        1 => MultiVectorField::from_components(3, 2, [(vec![0, 1], x(3, 2)), (vec![1, 2], x(3, 1))]).expect("bivector"),
        _ if g.coin() => g.poisson(3),
        _ => g.alternating(3, 2, 2),
    };
    let inputs = || format!("w = {w}");
    // bracket Jacobiator on the coordinate triple, computed here
    let br = |f: &Polynomial, h: &Polynomial| bracket_unchecked(&w, f, h);
    let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
    let jac = &(&br(&br(&a, &b), &c) + &br(&br(&b, &c), &a)) + &br(&br(&c, &a), &b);
    let res = jacobi_check(&w);
    match case {
        0 => ensure(res.is_ok(), inputs, || "so(3) rejected".into())?,
        1 => ensure(res.is_err(), inputs, || "non-Poisson fixture accepted".into())?,
        _ => {}
    }
    match res {
        Ok(_) => ensure(jac.is_zero(), inputs, || {
            format!("accepted, but the Jacobiator is {jac}")
        }),
        Err(e) => {
            ensure(!jac.is_zero(), inputs, || {
                "rejected, but the Jacobiator vanishes".into()
            })?;
            ensure(e.criteria_agree(), inputs, || {
                "Schouten and bracket criteria disagree".into()
            })?;
            ensure(e.oracle_witness == Some([0, 1, 2]), inputs, || {
                format!("witness {:?}", e.oracle_witness)
            })?;
            ensure(!e.component.is_zero(), inputs, || "zero witness component".into())
        }
    }
}

fn sharp_intertwines_d(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let c = ctx.cal.require("sharp_d")?;
    let m = g.usize_in(2, 4);
    let w = g.poisson(m);
    let k = g.usize_in(0, m - 1);
    let theta: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("w = {w}, θ = {theta}");
    let s = verified(&w, inputs)?;
    let lhs = lichnerowicz(&s, &sharp(&s, &theta).or_fail(inputs)?).or_fail(inputs)?;
    let rhs = sharp(&s, &exterior_d(&theta)).or_fail(inputs)?.scale(&c);
    same_alt(&lhs, &rhs, inputs)
}

fn interior_pairing(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let c = ctx.cal.require("interior_pairing")?;
    let m = g.usize_in(2, 3);
    let w = g.poisson(m);
    let (f, h) = (g.poly(m, 3, 3), g.poly(m, 3, 3));
    let inputs = || format!("w = {w}, f = {f}, g = {h}");
    let s = verified(&w, inputs)?;
    let df = exterior_d(&DifferentialForm::function(f.clone()));
    let dh = exterior_d(&DifferentialForm::function(h.clone()));
    let lhs = interior(&w, &df.wedge(&dh)).or_fail(inputs)?.as_function();
    same_poly(&lhs, &poisson_bracket(&s, &f, &h).or_fail(inputs)?.scale(&c), inputs)
}

fn schouten_jacobiator(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let c = ctx.cal.require("jacobiator")?;
    let m = g.usize_in(3, 4);
    let w: MultiVectorField = g.alternating(m, 2, 2);
    let inputs = || format!("w = {w}");
    same_alt(
        &schouten(&w, &w).or_fail(inputs)?,
        &cyclic_jacobiator(&w).scale(&c),
        inputs,
    )
}

fn sharp_one_forms(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let c = ctx.cal.require("sharp_one_forms")?;
    let m = g.usize_in(2, 4);
    let w = g.poisson(m);
    let alpha: DifferentialForm = g.form(m, 1, 2);
    let beta: DifferentialForm = g.form(m, 1, 2);
    let inputs = || format!("w = {w}, α = {alpha}, β = {beta}");
    let s = verified(&w, inputs)?;
    let a = anchor(&s, &alpha).or_fail(inputs)?;
    same_alt(&sharp(&s, &alpha).or_fail(inputs)?, &a.scale(&c), inputs)?;
    let paired = interior(&a, &beta).or_fail(inputs)?.as_function();
    same_poly(&paired, &pair(&w, &alpha, &beta), inputs)
}

fn lichnerowicz_lifts(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let k = g.usize_in(0, 2);
    let u: MultiVectorField = g.multivector(m, k, 2);
    let inputs = || format!("{name}, w = {w}, u = {u}");
    let s = verified(&w, inputs)?;
    let su = lichnerowicz(&s, &u).or_fail(inputs)?;
    let (wc, wv) = (complete(&f, &w), vertical(&f, &w));
    let (uc, uv) = (complete(&f, &u), vertical(&f, &u));
    let br = |a: &MultiVectorField, b: &MultiVectorField| schouten(a, b).or_fail(inputs);
    same_alt(&complete(&f, &su), &br(&wc, &uc)?, || {
        format!("{} (complete)", inputs())
    })?;
    let v = vertical(&f, &su);
    same_alt(&v, &br(&wc, &uv)?, || format!("{} (σ_{{w^C}}u^V)", inputs()))?;
    same_alt(&v, &br(&wv, &uc)?, || format!("{} (σ_{{w^V}}u^C)", inputs()))
}

/// `w^C` and `w^V` as verified structures.
fn lifted_structures(
    f: &FrobeniusStructure,
    w: &MultiVectorField,
    inputs: impl Fn() -> String,
) -> Result<(PoissonStructure, PoissonStructure), CaseFailure> {
    let wc = verified(&complete(f, w), || format!("{} (w^C)", inputs()))?;
    let wv = verified(&vertical(f, w), || format!("{} (w^V)", inputs()))?;
    Ok((wc, wv))
}

fn sharp_complete(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let k = g.usize_in(0, 2);
    let xi: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("{name}, w = {w}, ξ = {xi}");
    let s = verified(&w, inputs)?;
    let wc = verified(&complete(&f, &w), inputs)?;
    let lhs = sharp(&wc, &complete(&f, &xi)).or_fail(inputs)?;
    same_alt(&lhs, &complete(&f, &sharp(&s, &xi).or_fail(inputs)?), inputs)
}

fn cochain_square(ctx: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let c = ctx.cal.require("sharp_d")?;
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let k = g.usize_in(0, m - 1).min(1);
    let xi: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("{name}, w = {w}, ξ = {xi}");
    let s = verified(&w, inputs)?;
    let wc = verified(&complete(&f, &w), inputs)?;
    let top = lichnerowicz(&wc, &sharp(&wc, &complete(&f, &xi)).or_fail(inputs)?).or_fail(inputs)?;
    let base = complete(&f, &lichnerowicz(&s, &sharp(&s, &xi).or_fail(inputs)?).or_fail(inputs)?);
    same_alt(&top, &base, || format!("{} (σ then C)", inputs()))?;
    let via_d = sharp(&wc, &complete(&f, &exterior_d(&xi))).or_fail(inputs)?.scale(&c);
    same_alt(&top, &via_d, || format!("{} (d then w̃^C)", inputs()))
}

fn sharp_vertical(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let k = g.usize_in(1, m.min(2));
    let xi: DifferentialForm = g.form(m, k, 2);
    let inputs = || format!("{name}, w = {w}, ξ = {xi}");
    let s = verified(&w, inputs)?;
    let (wc, wv) = lifted_structures(&f, &w, inputs)?;
    let pulled = base_pullback(&f, &xi);
    let sv = vertical(&f, &sharp(&s, &xi).or_fail(inputs)?);
    same_alt(&sharp(&wc, &pulled).or_fail(inputs)?, &sv, || {
        format!("{} (w̃^C π^*ξ)", inputs())
    })?;
    let zero = sharp(&wv, &pulled).or_fail(inputs)?;
    ensure(zero.is_zero(), inputs, || format!("w̃^V π^*ξ = {zero}"))?;
    let on_complete = sharp(&wv, &complete(&f, &xi)).or_fail(inputs)?;
    if k == 1 {
        same_alt(&on_complete, &sv, || format!("{} (w̃^V ξ^C)", inputs()))
    } else {
        ensure(on_complete.is_zero(), inputs, || format!("w̃^V ξ^C = {on_complete}"))
    }
}

fn hamiltonian_lifts(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let (p, q) = (g.poly(m, 3, 3), g.poly(m, 2, 3));
    let inputs = || format!("{name}, w = {w}, f = {p}, g = {q}");
    let s = verified(&w, inputs)?;
    let (wc, wv) = lifted_structures(&f, &w, inputs)?;
    let lf = |h: &Polynomial, lift: Lift| lift_function(&f, h, &lift).or_fail(inputs);
    let (pc, pv) = (lf(&p, Lift::Complete)?, lf(&p, Lift::Vertical)?);
    let xf = hamiltonian(&s, &p).or_fail(inputs)?;
    let ham = |st: &PoissonStructure, h: &Polynomial| hamiltonian(st, h).or_fail(inputs);
    same_alt(&ham(&wc, &pc)?, &complete(&f, &xf), || {
        format!("{} (X^{{w^C}}_{{f^C}})", inputs())
    })?;
    let xv = vertical(&f, &xf);
    same_alt(&ham(&wc, &pv)?, &xv, || format!("{} (X^{{w^C}}_{{f^V}})", inputs()))?;
    same_alt(&ham(&wv, &pc)?, &xv, || format!("{} (X^{{w^V}}_{{f^C}})", inputs()))?;
    let zero = ham(&wv, &pv)?;
    ensure(zero.is_zero(), inputs, || format!("X^{{w^V}}_{{f^V}} = {zero}"))?;
    let bc = poisson_bracket(&wc, &pc, &lf(&q, Lift::Complete)?).or_fail(inputs)?;
    same_poly(
        &bc,
        &lf(&poisson_bracket(&s, &p, &q).or_fail(inputs)?, Lift::Complete)?,
        || format!("{} ({{f^C,g^C}})", inputs()),
    )
}

/// `w = h ε^{ijk}∂_kC ∂_i∧∂_j` on `R^3` together with its Casimir `C`.
fn casimir_pair(g: &mut Gen) -> (MultiVectorField, Polynomial) {
    loop {
        let h = g.nonzero_poly(3, 1, 2);
        let c = g.poly(3, 2, 4);
        let dc: Vec<Polynomial> = (0..3).map(|k| c.diff(k)).collect();
        let w = MultiVectorField::from_components(
            3,
            2,
            [
                (vec![0, 1], &h * &dc[2]),
                (vec![1, 2], &h * &dc[0]),
                (vec![2, 0], &h * &dc[1]),
            ],
        )
        .expect("bivector");
        if !w.is_zero() {
            return (w, c);
        }
    }
}

fn casimir_lifts(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = fixture(case % 3);
    let (w, c) = if case % 4 == 0 {
        (so3(), &(&x(3, 0).pow(2) + &x(3, 1).pow(2)) + &x(3, 2).pow(2))
    } else {
        casimir_pair(g)
    };
    let inputs = || format!("{name}, w = {w}, C = {c}");
    let s = verified(&w, inputs)?;
    ensure(is_casimir(&s, &c).or_fail(inputs)?, inputs, || {
        "C is not a Casimir of w".into()
    })?;
    let d = f.dim();
    let (a, b) = (g.usize_in(0, d - 1), g.usize_in(0, d - 1));
    let wb = verified(&lift_alternating(&f, &w, &Lift::Basis(b)).or_fail(inputs)?, inputs)?;
    let ca = lift_function(&f, &c, &Lift::Basis(a)).or_fail(inputs)?;
    ensure(is_casimir(&wb, &ca).or_fail(inputs)?, inputs, || {
        format!("C^({a}) is not a Casimir of w_{b}")
    })
}

fn compatible_lifts(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = poisson_dim(g, &f);
    let w = g.poisson(m);
    let inputs = || format!("{name}, w = {w}");
    let d = f.dim();
    let lifts: Vec<MultiVectorField> = (0..d)
        .map(|a| lift_alternating(&f, &w, &Lift::Basis(a)).or_fail(inputs))
        .collect::<Result<_, _>>()?;
    let (a, b) = (g.usize_in(0, d - 1), g.usize_in(0, d - 1));
    let ab = schouten(&lifts[a], &lifts[b]).or_fail(inputs)?;
    ensure(ab.is_zero(), inputs, || format!("[w_{a}, w_{b}] = {ab}"))?;
    let eps = g.element(d);
    let mut sum = MultiVectorField::zero(m * d, 2);
    for (la, c) in lifts.iter().zip(&eps.coords) {
        sum = sum.add(&la.scale(c));
    }
    let we = lift_alternating(&f, &w, &Lift::Epsilon(eps.clone())).or_fail(inputs)?;
    same_alt(&we, &sum, || format!("{}, ε = {eps}", inputs()))?;
    verified(&we, || format!("{}, ε = {eps}", inputs())).map(|_| ())
}

fn bracket_laws(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let m = g.usize_in(2, 4);
    let w = g.poisson(m);
    let (a, b, c) = (g.poly(m, 3, 3), g.poly(m, 3, 3), g.poly(m, 2, 3));
    let inputs = || format!("w = {w}, f = {a}, g = {b}, h = {c}");
    let s = verified(&w, inputs)?;
    let br = |p: &Polynomial, q: &Polynomial| poisson_bracket(&s, p, q).or_fail(inputs);
    same_poly(&br(&a, &b)?, &br(&b, &a)?.scale(&int(-1)), || {
        format!("{} (antisymmetry)", inputs())
    })?;
    let leibniz = &(&br(&a, &b)? * &c) + &(&b * &br(&a, &c)?);
    same_poly(&br(&a, &(&b * &c))?, &leibniz, || format!("{} (Leibniz)", inputs()))?;
    let jac = &(&br(&a, &br(&b, &c)?)? + &br(&b, &br(&c, &a)?)?) + &br(&c, &br(&a, &b)?)?;
    ensure(jac.is_zero(), inputs, || format!("Jacobiator = {jac}"))
}

fn form_bracket_laws(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let m = g.usize_in(2, 3);
    let w = g.poisson(m);
    let (p, q) = (g.poly(m, 3, 3), g.poly(m, 3, 3));
    let alpha: DifferentialForm = g.form(m, 1, 2);
    let beta: DifferentialForm = g.form(m, 1, 2);
    let inputs = || format!("w = {w}, f = {p}, g = {q}, α = {alpha}, β = {beta}");
    let s = verified(&w, inputs)?;
    let d = |h: &Polynomial| exterior_d(&DifferentialForm::function(h.clone()));
    let lhs = form_bracket(&s, &d(&p), &d(&q)).or_fail(inputs)?;
    same_alt(&lhs, &d(&poisson_bracket(&s, &p, &q).or_fail(inputs)?), || {
        format!("{} ({{df,dg}})", inputs())
    })?;
    let ab = form_bracket(&s, &alpha, &beta).or_fail(inputs)?;
    let lhs = anchor(&s, &ab).or_fail(inputs)?;
    let rhs = schouten(
        &anchor(&s, &alpha).or_fail(inputs)?,
        &anchor(&s, &beta).or_fail(inputs)?,
    )
    .or_fail(inputs)?;
    same_alt(&lhs, &rhs, || format!("{} (anchor)", inputs()))
}

fn lichnerowicz_complex(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let m = g.usize_in(2, 4);
    let w = g.poisson(m);
    let (p, q) = (g.usize_in(0, 2), g.usize_in(0, 1));
    let u: MultiVectorField = g.multivector(m, p, 2);
    let v: MultiVectorField = g.multivector(m, q, 2);
    let inputs = || format!("w = {w}, u = {u}, v = {v}");
    let s = verified(&w, inputs)?;
    let sigma = |t: &MultiVectorField| lichnerowicz(&s, t).or_fail(inputs);
    let su = sigma(&u)?;
    let ssu = sigma(&su)?;
    ensure(ssu.is_zero(), inputs, || format!("σσu = {ssu}"))?;
    if p + q > m {
        return Ok(());
    }
    let sign = if p % 2 == 0 { int(1) } else { int(-1) };
    let rhs = su.wedge(&v).add(&u.wedge(&sigma(&v)?).scale(&sign));
    same_alt(&sigma(&u.wedge(&v))?, &rhs, || format!("{} (derivation)", inputs()))
}

fn modular_cocycle(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let m = g.usize_in(2, 4);
    let w = g.poisson(m);
    let lambda = g.poly(m, 2, 3);
    let shift = g.poly(m, 2, 3);
    let inputs = || format!("w = {w}, λ = {lambda}, s = {shift}");
    let s = verified(&w, inputs)?;
    let delta = modular_field(&s, &LogDensity::new(lambda.clone())).or_fail(inputs)?;
    let sd = lichnerowicz(&s, &delta).or_fail(inputs)?;
    ensure(sd.is_zero(), inputs, || format!("σΔ = {sd}"))?;
    let moved = modular_field(&s, &LogDensity::new(&lambda + &shift)).or_fail(inputs)?;
    let rhs = delta.add(&hamiltonian(&s, &shift.scale(&int(-1))).or_fail(inputs)?);
    same_alt(&moved, &rhs, || format!("{} (density change)", inputs()))
}

fn poisson_map_lifts(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let mut shears = shears_2d();
    shears.extend(shears_3d());
    let (sname, phi) = shears.swap_remove(case % shears.len());
    let (name, f) = fixture((case / shears.len().max(1)) % 2);
    let m = phi.source_dim();
    let w = g.poisson(m);
    let inputs = || format!("{name}, φ = {sname}, w = {w}");
    let moved = pushforward_multivector(&phi, &w).or_fail(inputs)?;
    verified(&moved, inputs)?;
    let (p, q) = (g.poly(m, 2, 2), g.poly(m, 2, 2));
    let lhs = bracket_unchecked(&w, &pullback_function(&phi, &p), &pullback_function(&phi, &q));
    let rhs = pullback_function(&phi, &bracket_unchecked(&moved, &p, &q));
    same_poly(&lhs, &rhs, || format!("{}, f = {p}, g = {q} (base)", inputs()))?;
    let big = prolong_chart_map(&phi, f.algebra()).or_fail(inputs)?;
    let n = m * f.dim();
    let (bp, bq) = (g.poly(n, 2, 2), g.poly(n, 2, 2));
    for lift in [Lift::Complete, Lift::Vertical] {
        let wl = lift_alternating(&f, &w, &lift).or_fail(inputs)?;
        let ml = lift_alternating(&f, &moved, &lift).or_fail(inputs)?;
        let lhs = bracket_unchecked(&wl, &pullback_function(&big, &bp), &pullback_function(&big, &bq));
        let rhs = pullback_function(&big, &bracket_unchecked(&ml, &bp, &bq));
        same_poly(&lhs, &rhs, || format!("{}, F = {bp}, G = {bq} ({lift:?})", inputs()))?;
    }
    Ok(())
}

fn complete_poisson_iff(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let w = if g.coin() { g.poisson(3) } else { g.alternating(3, 2, 1) };
    let inputs = || format!("{name}, w = {w}");
    let base = jacobi_check(&w).is_ok();
    let lifted = jacobi_check(&complete(&f, &w)).is_ok();
    ensure(base == lifted, inputs, || {
        format!("w Poisson: {base}, w^C Poisson: {lifted}")
    })
}

fn bivector_matrix(w: &MultiVectorField) -> Vec<Vec<Polynomial>> {
    let n = w.dim();
    (0..n).map(|i| (0..n).map(|j| w.get(&[i, j])).collect()).collect()
}

fn symplectic_lift(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = fixture(case);
    let w = if f.dim() <= 3 && g.coin() {
        random_constant_symplectic(g)
    } else {
        // (1 + x1^2) ∂_1∧∂_2 is Poisson and nondegenerate everywhere
        let h = &Polynomial::one(2) + &x(2, 0).pow(2);
        symplectic_plane().mul_function(&h)
    };
    let inputs = || format!("{name}, w = {w}");
    let wc = complete(&f, &w);
    let n = wc.dim();
    let big = bivector_matrix(&wc);
    let small = bivector_matrix(&w);
    for _ in 0..3 {
        let pt = g.point(n);
        let base = base_point(&pt, w.dim(), f.dim());
        let db = det(&eval_matrix(&small, &base));
        let dl = det(&eval_matrix(&big, &pt));
        let shown = || {
            let p: Vec<String> = pt.iter().map(fmt_rat).collect();
            format!("at ({})", p.join(", "))
        };
        ensure(!num_traits::Zero::is_zero(&db), inputs, || {
            format!("w degenerate {}", shown())
        })?;
        ensure(!num_traits::Zero::is_zero(&dl), inputs, || {
            format!("w^C degenerate {}", shown())
        })?;
    }
    Ok(())
}

fn tangent_complete_lift(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let c = ctx.cal.require("tangent_fibre_term")?;
    let f = tangent_structure();
    let m = g.usize_in(2, 3);
    let w = g.poisson(m);
    let (mixed, fibre) = tangent_complete_parts(&w);
    same_alt(&complete(&f, &w), &mixed.add(&fibre.scale(&c)), || {
        format!("R(e), p = (0,1), w = {w}")
    })
}

const GRID: usize = 4 * 3 * 3 * 4;

fn grid_algebra(i: usize) -> (&'static str, FrobeniusStructure) {
    match i {
        0 => ("R(e)", with_top_covector(&WeilAlgebra::plural(1))),
        1 => ("R(e^2)", with_top_covector(&WeilAlgebra::plural(2))),
        _ => ("width-2", with_top_covector(&WeilAlgebra::width_two())),
    }
}

fn modular_grid(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (wi, li, ai, ei) = (case % 4, (case / 4) % 3, (case / 12) % 3, (case / 36) % 4);
    let w = match wi {
        0 => linear_plane(),
        1 => so3(),
        2 => g.poisson(2),
        _ => g.poisson(3),
    };
    let m = w.dim();
    let lambda = match li {
        0 => Polynomial::zero(m),
        1 => x(m, 0),
        _ => g.poly(m, 2, 3),
    };
    let (aname, f) = grid_algebra(ai);
    let d = f.dim();
    let (ename, eps) = match ei {
        0 => ("1", f.algebra().unit()),
        1 => ("e_n", f.algebra().basis(d - 1)),
        2 => ("unit", g.unit_element(d)),
        _ => ("nilpotent", nonzero_nilpotent(g, d)),
    };
    let inputs = || format!("{aname}, w = {w}, λ = {lambda}, ε = {eps} ({ename})");
    let s = verified(&w, inputs)?;
    let report = verify_modular_theorem(&f, &s, &LogDensity::new(lambda.clone()), &eps).or_fail(inputs)?;
    same_alt(&report.lhs, &report.rhs, inputs)?;
    if num_traits::Zero::is_zero(eps.real_part()) {
        ensure(report.lhs.is_zero(), inputs, || {
            format!("nilpotent ε gives {}", report.lhs)
        })?;
    }
    Ok(())
}

fn nonzero_nilpotent(g: &mut Gen, d: usize) -> AlgebraElement {
    loop {
        let e = g.nilpotent(d);
        if !e.is_zero() {
            return e;
        }
    }
}

fn linear_plane_instance(_: &Ctx, _: &mut Gen, _: usize) -> CaseResult {
    let f = with_top_covector(&WeilAlgebra::plural(1));
    let w = linear_plane();
    let inputs = || format!("R(e), w = {w}, λ = 0, ε = 1");
    let s = verified(&w, inputs)?;
    let report = verify_modular_theorem(&f, &s, &LogDensity::zero(2), &f.algebra().unit()).or_fail(inputs)?;
    let want = MultiVectorField::from_components(4, 1, [(vec![flat(1, 1, 2)], Polynomial::constant(4, int(-2)))])
        .expect("vector field");
    same_alt(&report.lhs, &want, || format!("{} (lhs)", inputs()))?;
    same_alt(&report.rhs, &want, || format!("{} (rhs)", inputs()))
}

fn exact_witness(_: &Ctx, _: &mut Gen, case: usize) -> CaseResult {
    let (aname, f) = grid_algebra(case);
    let w = symplectic_plane();
    let lambda = x(2, 0);
    let gfun = lambda.scale(&int(-1));
    let inputs = || format!("{aname}, w = {w}, λ = {lambda}, g = {gfun}");
    let s = verified(&w, inputs)?;
    let density = LogDensity::new(lambda.clone());
    let delta = modular_field(&s, &density).or_fail(inputs)?;
    same_alt(&delta, &hamiltonian(&s, &gfun).or_fail(inputs)?, || {
        format!("{} (Δ = X_g)", inputs())
    })?;
    let wc = verified(&complete(&f, &w), inputs)?;
    let lifted = modular_field(&wc, &lift_density(&density, &f)).or_fail(inputs)?;
    let n1 = int(f.dim() as i64);
    let g_pi = lift_function(&f, &gfun, &Lift::Vertical).or_fail(inputs)?;
    let rhs = schouten(wc.bivector(), &MultiVectorField::function(g_pi))
        .or_fail(inputs)?
        .scale(&n1);
    same_alt(&lifted, &rhs, inputs)
}

fn lifts_exact(ctx: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let cc = ctx.cal.require("euler_complete")?;
    let cv = ctx.cal.require("euler_vertical")?;
    let f = tangent_structure();
    let m = g.usize_in(2, 3);
    let w = g.poisson(m);
    let inputs = || format!("R(e), p = (0,1), w = {w}");
    let e = fibre_euler(m);
    let (wc, wv) = (complete(&f, &w), vertical(&f, &w));
    same_alt(&schouten(&wc, &e).or_fail(inputs)?, &wc.scale(&cc), || {
        format!("{} ([w^C,E])", inputs())
    })?;
    same_alt(&schouten(&wv, &e).or_fail(inputs)?, &wv.scale(&cv), || {
        format!("{} ([w^V,E])", inputs())
    })
}

fn vertical_primitive_witness(ctx: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let c = ctx.cal.require("symplectic_primitive")?;
    let f = tangent_structure();
    let w = if case % 2 == 0 {
        symplectic_plane()
    } else {
        random_constant_symplectic(g)
    };
    let m = w.dim();
    let omega = symplectic_inverse(&w).ok_or_else(|| fail(format!("w = {w}"), "degenerate"))?;
    let k = g.usize_in(1, m.min(3));
    let v: MultiVectorField = g.multivector(m, k, 2);
    let inputs = || format!("R(e), p = (0,1), w = {w}, v = {v}");
    let u = vertical_primitive(&omega, &v);
    let lhs = schouten(&vertical(&f, &w), &u).or_fail(inputs)?;
    let factor: Rat = &c * int(k as i64);
    same_alt(&lhs, &vertical(&f, &v).scale(&factor), inputs)
}

/// Modular-theorem checks for the Poisson fixtures supplied by a spec file, at
/// `ε = 1` and `ε = e_n`.
pub(crate) fn extra_fixture_records(ctx: &Ctx) -> Vec<CheckRecord> {
    ctx.config
        .extra
        .iter()
        .map(|fx| {
            let d = fx.frobenius.dim();
            let alg = fx.frobenius.algebra();
            let mut counterexample = None;
            for (case, eps) in [alg.unit(), alg.basis(d - 1)].into_iter().enumerate() {
                let inputs = || format!("{}, w = {}, λ = {}, ε = {eps}", fx.name, fx.bivector, fx.density.lambda);
                let outcome = verified(&fx.bivector, inputs).and_then(|s| {
                    let r = verify_modular_theorem(&fx.frobenius, &s, &fx.density, &eps).or_fail(inputs)?;
                    same_alt(&r.lhs, &r.rhs, inputs)
                });
                if let Err(e) = outcome {
                    counterexample = Some(Counterexample {
                        case,
                        case_seed: 0,
                        inputs: e.inputs,
                        detail: e.detail,
                    });
                    break;
                }
            }
            CheckRecord {
                name: format!("spec.{}", fx.name),
                anchor: "Δ_{μ̄,w_ε} = ε⁰(n+1)Δ_μ^V".to_string(),
                criterion: 8,
                cases: 2,
                counterexample,
            }
        })
        .collect()
}
