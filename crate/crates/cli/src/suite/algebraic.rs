//! Frobenius criterion, prolongation oracles, and the algebraic identities of the
//! Frobenius data.

use weil_core::algebra::{AlgebraElement, WeilAlgebra};
use weil_core::frobenius::FrobeniusStructure;
use weil_core::gen::Gen;
use weil_core::linalg::poly_det;
use weil_core::poly::Polynomial;
use weil_core::prolong::{a_derivative, check_scheffers, flat, prolong_scalar, prolong_scalar_taylor, AFunction};
use weil_core::rational::{fmt_rat, one, zero, Rat};

use super::{ensure, fail, fixture, random_structure, same_poly, CaseResult, Cases, Check, Ctx, OrFail, RANDOM};

pub(crate) fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "frobenius.truncated_determinant",
            anchor: "det‖p_cγ_{ab}^c‖ = p_n^{n+1} on R(ε^n)",
            criterion: 1,
            cases: Cases::Fixed(4),
            run: truncated_determinant,
        },
        Check {
            name: "frobenius.truncated_determinant_signed",
            anchor: "det‖p_cγ_{ab}^c‖ = (−1)^{n(n+1)/2} p_n^{n+1} on R(ε^n)",
            criterion: 1,
            cases: Cases::Fixed(4),
            run: signed_truncated_determinant,
        },
        Check {
            name: "frobenius.accepts_iff_top_coefficient",
            anchor: "p is Frobenius on R(ε^n) iff p_n ≠ 0",
            criterion: 1,
            cases: Cases::Random { min: 40 },
            run: accepts_iff_top,
        },
        Check {
            name: "prolong.taylor_matches_substitution",
            anchor: "f^A = Σ_{|p|≤h} (1/p!) D^p f X̊^p",
            criterion: 2,
            cases: Cases::Random { min: 100 },
            run: taylor_matches_substitution,
        },
        Check {
            name: "prolong.scheffers",
            anchor: "∂f^b/∂x^{ia} = γ_{ac}^b δ^d ∂f^c/∂x^{id}",
            criterion: 2,
            cases: Cases::Random { min: 100 },
            run: scheffers,
        },
        Check {
            name: "prolong.sum",
            anchor: "(φ + ψ)^A = φ^A + ψ^A",
            criterion: 3,
            cases: RANDOM,
            run: prolong_sum,
        },
        Check {
            name: "prolong.product",
            anchor: "(φ·ψ)^A = φ^A·ψ^A",
            criterion: 3,
            cases: RANDOM,
            run: prolong_product,
        },
        Check {
            name: "prolong.composition",
            anchor: "(φ∘ψ)^A = φ^A∘ψ^A",
            criterion: 3,
            cases: RANDOM,
            run: prolong_composition,
        },
        Check {
            name: "prolong.derivative",
            anchor: "(∂φ/∂x^i)^A = ∂φ^A/∂X^i = δ^a ∂φ^A/∂x^{ia}",
            criterion: 3,
            cases: RANDOM,
            run: prolong_derivative,
        },
        Check {
            name: "frobenius.invariants",
            anchor: "q_{ab} = p_cγ_{ab}^c symmetric, nondegenerate and associative",
            criterion: 3,
            cases: RANDOM,
            run: invariants,
        },
        Check {
            name: "frobenius.form_is_p_of_product",
            anchor: "q(X,Y) = p(XY)",
            criterion: 3,
            cases: RANDOM,
            run: form_is_p_of_product,
        },
        Check {
            name: "frobenius.dual_form_via_star",
            anchor: "q̃(ξ,η) = (ξ∗η)(1_A)",
            criterion: 3,
            cases: RANDOM,
            run: dual_form_via_star,
        },
        Check {
            name: "frobenius.dual_basis_products",
            anchor: "p(e^a e^b) = q^{ab}",
            criterion: 3,
            cases: RANDOM,
            run: dual_basis_products,
        },
        Check {
            name: "frobenius.raised_constants",
            anchor: "γ_c^{ab} = q^{ad}γ_{dc}^b, γ_{dc}^b = γ_c^{ab}q_{ad}",
            criterion: 3,
            cases: RANDOM,
            run: raised_constants,
        },
        Check {
            name: "frobenius.raised_constants_at_unit",
            anchor: "γ_c^{ab}δ^c = q^{ab}",
            criterion: 3,
            cases: RANDOM,
            run: raised_at_unit,
        },
        Check {
            name: "frobenius.raised_associativity",
            anchor: "γ_c^{af}γ_{bf}^d = γ_f^{ad}γ_{bc}^f",
            criterion: 3,
            cases: RANDOM,
            run: raised_associativity,
        },
        Check {
            name: "frobenius.mixed_basis_products",
            anchor: "e_a e^c = γ_{ab}^c e^b = γ_a^{cb} e_b",
            criterion: 3,
            cases: RANDOM,
            run: mixed_basis_products,
        },
        Check {
            name: "frobenius.dual_basis_pairing",
            anchor: "p(e_a e^c) = δ_a^c",
            criterion: 3,
            cases: RANDOM,
            run: dual_basis_pairing,
        },
        Check {
            name: "frobenius.triple_products",
            anchor: "p(e_a e_b e^c) = γ_{ab}^c, p(e^a e^b e_c) = γ_c^{ab}",
            criterion: 3,
            cases: RANDOM,
            run: triple_products,
        },
        Check {
            name: "frobenius.inverse_form_on_p",
            anchor: "q^{ab}p_b = δ^a",
            criterion: 3,
            cases: RANDOM,
            run: inverse_form_on_p,
        },
        Check {
            name: "frobenius.smooth_function_pairing",
            anchor: "F^a p_a = F_b δ^b",
            criterion: 3,
            cases: RANDOM,
            run: smooth_pairing,
        },
        Check {
            name: "frobenius.smooth_function_derivative",
            anchor: "∂(δ^aF_a)/∂x^b = δ^c ∂F_b/∂x^c",
            criterion: 3,
            cases: RANDOM,
            run: smooth_derivative,
        },
        Check {
            name: "frobenius.unit_free_covector",
            anchor: "p − p(1)e^0 is Frobenius whenever p is",
            criterion: 3,
            cases: RANDOM,
            run: unit_free_covector,
        },
    ]
}

/// `det‖p_cγ_{ab}^c‖` on `R(ε^n)` as a polynomial in the symbols `p_0..p_n`.
fn hankel_det(n: usize) -> Polynomial {
    let alg = WeilAlgebra::plural(n);
    let d = n + 1;
    let q: Vec<Vec<Polynomial>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let mut s = Polynomial::zero(d);
                    for c in 0..d {
                        s += &Polynomial::var(d, c).scale(alg.gamma(a, b, c));
                    }
                    s
                })
                .collect()
        })
        .collect();
    poly_det(&q)
}

fn symbolic_p(p: &Polynomial) -> String {
    p.render(&|i| format!("p{i}"))
}

fn truncated_determinant(_: &Ctx, _: &mut Gen, case: usize) -> CaseResult {
    let n = case + 1;
    let det = hankel_det(n);
    let want = Polynomial::var(n + 1, n).pow(n as u32 + 1);
    ensure(
        det == want,
        || format!("R(e^{n}) with symbolic p_0..p_{n}"),
        || format!("det = {}, expected {}", symbolic_p(&det), symbolic_p(&want)),
    )
}

/// The anti-diagonal Hankel determinant carries the reversal sign `(-1)^{n(n+1)/2}`.
fn signed_truncated_determinant(_: &Ctx, _: &mut Gen, case: usize) -> CaseResult {
    let n = case + 1;
    let det = hankel_det(n);
    let sign = if (n * (n + 1) / 2) % 2 == 0 { one() } else { -one() };
    let want = Polynomial::var(n + 1, n).pow(n as u32 + 1).scale(&sign);
    ensure(
        det == want,
        || format!("R(e^{n}) with symbolic p_0..p_{n}"),
        || format!("det = {}, expected {}", symbolic_p(&det), symbolic_p(&want)),
    )
}

fn accepts_iff_top(_: &Ctx, g: &mut Gen, _: usize) -> CaseResult {
    let n = g.usize_in(1, 4);
    let alg = WeilAlgebra::plural(n);
    let mut p: Vec<Rat> = (0..=n).map(|_| g.small_rat()).collect();
    if g.coin() {
        p[n] = zero();
    }
    let inputs = || {
        format!(
            "R(e^{n}), p = ({})",
            p.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        )
    };
    let res = FrobeniusStructure::attach(&alg, &p);
    let top = p[n] != zero();
    ensure(res.is_ok() == top, inputs, || {
        format!("attach returned {:?} with p_n = {}", res.as_ref().err(), fmt_rat(&p[n]))
    })?;
    if let Ok(f) = res {
        ensure(f.p()[n] == one(), inputs, || {
            "covector not normalized to p_n = 1".into()
        })?;
    }
    Ok(())
}

fn random_poly(g: &mut Gen, m: usize, deg: u32) -> Polynomial {
    g.poly(m, deg, 5)
}

fn taylor_matches_substitution(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = fixture(case);
    let m = g.usize_in(1, 3);
    let p = random_poly(g, m, 4);
    let a = prolong_scalar(&p, f.algebra());
    let b = prolong_scalar_taylor(&p, f.algebra());
    for c in 0..f.dim() {
        same_poly(a.component(c), b.component(c), || {
            format!("{name}, f = {p}, component {c}")
        })?;
    }
    Ok(())
}

fn scheffers(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = g.usize_in(1, 3);
    let p = random_poly(g, m, 4);
    let a = prolong_scalar(&p, f.algebra());
    check_scheffers(f.algebra(), &a).map_err(|(b, i, c)| {
        fail(
            format!("{name}, f = {p}"),
            format!("fails at (b, i, a) = ({b}, {}, {c})", i + 1),
        )
    })
}

fn same_afunction(a: &AFunction, b: &AFunction, inputs: impl Fn() -> String) -> CaseResult {
    for c in 0..a.dim() {
        same_poly(a.component(c), b.component(c), || {
            format!("{}, component {c}", inputs())
        })?;
    }
    Ok(())
}

fn prolong_sum(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = g.usize_in(1, 3);
    let (p, q) = (random_poly(g, m, 3), random_poly(g, m, 3));
    let alg = f.algebra();
    let lhs = prolong_scalar(&(&p + &q), alg);
    let rhs = prolong_scalar(&p, alg).add(&prolong_scalar(&q, alg));
    same_afunction(&lhs, &rhs, || format!("{name}, f = {p}, g = {q}"))
}

fn prolong_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let m = g.usize_in(1, 3);
    let (p, q) = (random_poly(g, m, 2), random_poly(g, m, 2));
    let alg = f.algebra();
    let lhs = prolong_scalar(&(&p * &q), alg);
    let rhs = prolong_scalar(&p, alg).mul(alg, &prolong_scalar(&q, alg));
    same_afunction(&lhs, &rhs, || format!("{name}, f = {p}, g = {q}"))
}

fn prolong_composition(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let d = alg.dim();
    let k = g.usize_in(1, 2);
    let m = g.usize_in(1, 2);
    let outer = random_poly(g, k, 2);
    let inner: Vec<Polynomial> = (0..k).map(|_| random_poly(g, m, 2)).collect();
    let lhs = prolong_scalar(&outer.compose(&inner), alg);
    let inner_a: Vec<AFunction> = inner.iter().map(|p| prolong_scalar(p, alg)).collect();
    let mut args = vec![Polynomial::zero(m * d); k * d];
    for (j, fa) in inner_a.iter().enumerate() {
        for a in 0..d {
            args[flat(j, a, d)] = fa.component(a).clone();
        }
    }
    let inputs = || {
        let ps: Vec<String> = inner.iter().map(|p| p.to_string()).collect();
        format!("{name}, f = {outer}, ψ = ({})", ps.join(", "))
    };
    let rhs = prolong_scalar(&outer, alg).compose(&args).or_fail(inputs)?;
    same_afunction(&lhs, &rhs, inputs)
}

fn prolong_derivative(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let m = g.usize_in(1, 3);
    let p = random_poly(g, m, 4);
    let i = g.usize_in(0, m - 1);
    let inputs = || format!("{name}, f = {p}, i = {}", i + 1);
    let lhs = prolong_scalar(&p.diff(i), alg);
    let rhs = a_derivative(alg, &prolong_scalar(&p, alg), i).or_fail(inputs)?;
    same_afunction(&lhs, &rhs, inputs)
}

fn invariants(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    f.verify_invariants().map_err(|e| fail(name, e))
}

/// Compares two rational quantities indexed by `label`.
fn same_rat(lhs: &Rat, rhs: &Rat, inputs: impl FnOnce() -> String, label: impl FnOnce() -> String) -> CaseResult {
    ensure(lhs == rhs, inputs, || {
        format!("{}: lhs = {}, rhs = {}", label(), fmt_rat(lhs), fmt_rat(rhs))
    })
}

fn form_is_p_of_product(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let (x, y) = (g.element(f.dim()), g.element(f.dim()));
    let rhs = f.eval_p(&f.algebra().mul(&x, &y));
    same_rat(
        &f.q(&x, &y),
        &rhs,
        || format!("{name}, X = {x}, Y = {y}"),
        || "q(X,Y)".into(),
    )
}

fn dual_form_via_star(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let xi = g.element(f.dim()).coords;
    let eta = g.element(f.dim()).coords;
    let inputs = || {
        let s = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ");
        format!("{name}, ξ = ({}), η = ({})", s(&xi), s(&eta))
    };
    let star = f.star_multiply(&xi, &eta).or_fail(inputs)?;
    // a covector evaluated at 1_A = e_0 is its 0-th coordinate
    let lhs = f.q_tilde(&xi, &eta);
    same_rat(&lhs, &star[0], inputs, || "q̃(ξ,η)".into())
}

fn elem_eq(
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    inputs: impl FnOnce() -> String,
    label: impl FnOnce() -> String,
) -> CaseResult {
    ensure(lhs == rhs, inputs, || format!("{}: lhs = {lhs}, rhs = {rhs}", label()))
}

fn dual_basis_products(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    for a in 0..f.dim() {
        for b in 0..f.dim() {
            let v = f.eval_p(&alg.mul(f.dual(a), f.dual(b)));
            same_rat(&v, &f.q_upper()[a][b], || name.clone(), || format!("(a,b) = ({a},{b})"))?;
        }
    }
    Ok(())
}

fn raised_constants(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let d = f.dim();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let raised = (0..d).fold(zero(), |acc, e| acc + &f.q_upper()[a][e] * alg.gamma(e, c, b));
                same_rat(
                    f.gamma_upper(a, b, c),
                    &raised,
                    || name.clone(),
                    || format!("γ_{c}^{{{a}{b}}}"),
                )?;
                let lowered = (0..d).fold(zero(), |acc, e| acc + f.gamma_upper(e, b, c) * &f.q_lower()[e][a]);
                same_rat(
                    alg.gamma(a, c, b),
                    &lowered,
                    || name.clone(),
                    || format!("γ_{{{a}{c}}}^{b}"),
                )?;
            }
        }
    }
    Ok(())
}

fn raised_at_unit(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let d = f.dim();
    let unit = f.algebra().unit();
    for a in 0..d {
        for b in 0..d {
            let v = (0..d).fold(zero(), |acc, c| acc + f.gamma_upper(a, b, c) * &unit.coords[c]);
            same_rat(&v, &f.q_upper()[a][b], || name.clone(), || format!("(a,b) = ({a},{b})"))?;
        }
    }
    Ok(())
}

fn raised_associativity(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let d = f.dim();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let lhs = (0..d).fold(zero(), |acc, s| acc + f.gamma_upper(a, s, c) * alg.gamma(b, s, e));
                    let rhs = (0..d).fold(zero(), |acc, s| acc + f.gamma_upper(a, e, s) * alg.gamma(b, c, s));
                    same_rat(&lhs, &rhs, || name.clone(), || format!("(a,b,c,d) = ({a},{b},{c},{e})"))?;
                }
            }
        }
    }
    Ok(())
}

fn combination(coeffs: impl Fn(usize) -> Rat, basis: &[AlgebraElement]) -> AlgebraElement {
    let d = basis.len();
    let mut out = AlgebraElement::zero(d);
    for (b, e) in basis.iter().enumerate() {
        let c = coeffs(b);
        for (o, x) in out.coords.iter_mut().zip(&e.coords) {
            *o += &c * x;
        }
    }
    out
}

fn mixed_basis_products(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let d = f.dim();
    let lower: Vec<AlgebraElement> = (0..d).map(|a| alg.basis(a)).collect();
    for a in 0..d {
        for c in 0..d {
            let prod = alg.mul(&alg.basis(a), f.dual(c));
            let via_dual = combination(|b| alg.gamma(a, b, c).clone(), f.dual_basis());
            let via_basis = combination(|b| f.gamma_upper(c, b, a).clone(), &lower);
            elem_eq(
                &prod,
                &via_dual,
                || name.clone(),
                || format!("e_{a} e^{c} via dual basis"),
            )?;
            elem_eq(&prod, &via_basis, || name.clone(), || format!("e_{a} e^{c} via basis"))?;
        }
    }
    Ok(())
}

fn dual_basis_pairing(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    for a in 0..f.dim() {
        for c in 0..f.dim() {
            let v = f.eval_p(&alg.mul(&alg.basis(a), f.dual(c)));
            let want = if a == c { one() } else { zero() };
            same_rat(&v, &want, || name.clone(), || format!("(a,c) = ({a},{c})"))?;
        }
    }
    Ok(())
}

fn triple_products(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let alg = f.algebra();
    let d = f.dim();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let low = f.eval_p(&alg.mul(&alg.mul(&alg.basis(a), &alg.basis(b)), f.dual(c)));
                same_rat(
                    &low,
                    alg.gamma(a, b, c),
                    || name.clone(),
                    || format!("p(e_{a} e_{b} e^{c})"),
                )?;
                let up = f.eval_p(&alg.mul(&alg.mul(f.dual(a), f.dual(b)), &alg.basis(c)));
                same_rat(
                    &up,
                    f.gamma_upper(a, b, c),
                    || name.clone(),
                    || format!("p(e^{a} e^{b} e_{c})"),
                )?;
            }
        }
    }
    Ok(())
}

fn inverse_form_on_p(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let unit = f.algebra().unit();
    for a in 0..f.dim() {
        let v = (0..f.dim()).fold(zero(), |acc, b| acc + &f.q_upper()[a][b] * &f.p()[b]);
        same_rat(&v, &unit.coords[a], || name.clone(), || format!("a = {a}"))?;
    }
    Ok(())
}

/// A random `A`-smooth function and its covariant components `F_a = q_{ab} F^b`.
fn smooth_function(g: &mut Gen, f: &FrobeniusStructure) -> (Polynomial, AFunction, Vec<Polynomial>) {
    let m = g.usize_in(1, 2);
    let p = g.poly(m, 3, 4);
    let fa = prolong_scalar(&p, f.algebra());
    let d = f.dim();
    let lowered = (0..d)
        .map(|a| {
            let mut s = Polynomial::zero(fa.nvars());
            for b in 0..d {
                s += &fa.component(b).scale(&f.q_lower()[a][b]);
            }
            s
        })
        .collect();
    (p, fa, lowered)
}

fn smooth_pairing(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let (p, fa, lowered) = smooth_function(g, &f);
    let mut lhs = Polynomial::zero(fa.nvars());
    for a in 0..f.dim() {
        lhs += &fa.component(a).scale(&f.p()[a]);
    }
    let unit = f.algebra().unit();
    let mut rhs = Polynomial::zero(fa.nvars());
    for (b, fb) in lowered.iter().enumerate() {
        rhs += &fb.scale(&unit.coords[b]);
    }
    same_poly(&lhs, &rhs, || format!("{name}, F = ({p})^A"))
}

fn smooth_derivative(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let (p, fa, lowered) = smooth_function(g, &f);
    let d = f.dim();
    let unit = f.algebra().unit();
    let m = fa.base_dim();
    for i in 0..m {
        for b in 0..d {
            let mut lhs = Polynomial::zero(fa.nvars());
            let mut rhs = Polynomial::zero(fa.nvars());
            for a in 0..d {
                lhs += &lowered[a].diff(flat(i, b, d)).scale(&unit.coords[a]);
                rhs += &lowered[b].diff(flat(i, a, d)).scale(&unit.coords[a]);
            }
            same_poly(&lhs, &rhs, || format!("{name}, F = ({p})^A, i = {}, b = {b}", i + 1))?;
        }
    }
    Ok(())
}

fn unit_free_covector(_: &Ctx, g: &mut Gen, case: usize) -> CaseResult {
    let (name, f) = random_structure(g, case);
    let mut p = f.p().to_vec();
    p[0] = zero();
    let res = FrobeniusStructure::attach(f.algebra(), &p);
    ensure(res.is_ok(), || name.clone(), || format!("p̃ rejected: {:?}", res.err()))
}
