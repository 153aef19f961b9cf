//! The verification suites behind `dsbo verify`: each builds a list of
//! exact checks (plus a few floating-point probes) and reports pass/fail
//! per check.

use std::collections::BTreeMap;

use dsbo_core::affine::AffineForm;
use dsbo_core::delta::{
    closed_form_kernel, multiplicity_two_params, same_span, solve_kernels, KernelCase,
};
use dsbo_core::gamma::{gamma_ratio, residue_scalar_check, GammaExpr};
use dsbo_core::identities::{
    verify_bernstein_sato, verify_eps_h_rewrite, verify_expansion_lemma, verify_iterated_scalar,
    verify_multiplicity_two_basis, verify_order_independence, verify_restriction_identities,
    OpKind,
};
use dsbo_core::params::{classify_generic, InductionParams};
use dsbo_core::poly::{ring, Polynomial};
use dsbo_core::ratfun::RatFun;
use dsbo_core::report::{CheckReport, Suite};
use dsbo_core::scalar::{rat, ratq, Rat};
use dsbo_core::covariant::Context;
use dsbo_core::weyl::WeylElement;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::numerics::{classical_gamma_values, gamma_expr_numeric, gamma_numeric, riesz_residue_probe};
use crate::random::{random_generic_params, random_parities, random_rat, seeded_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

/// All six operator factor labels at n = 2: the three raising and the three
/// lowering first-order factors.
fn all_ops_n2() -> Vec<(OpKind, usize)> {
    vec![
        (OpKind::D, 1),
        (OpKind::D, 2),
        (OpKind::D, 3),
        (OpKind::F, 1),
        (OpKind::F, 2),
        (OpKind::F, 3),
    ]
}

/// Restriction identities: every composite of the restriction with a factor
/// operator either vanishes or reduces to a scalar (times a determinant
/// power) in closed form, at both supported ranks.
pub fn suite_restriction() -> Suite {
    let mut suite = Suite::new("restriction");
    for n in 2..=3usize {
        for k in 0..=n {
            for check in verify_restriction_identities(n, k) {
                suite.push(check);
            }
        }
    }
    suite
}

/// Eigenvalue identities of the factor operators on the kernel power
/// product: symbolic at n = 2, plus seeded numeric sample points.
pub fn suite_bernstein_sato(seed: u64, mode: Mode) -> Suite {
    let mut suite = Suite::new("bernstein-sato");
    let sym = InductionParams::symbolic(2);
    for (kind, i) in all_ops_n2() {
        suite.push(verify_bernstein_sato(kind, i, &sym));
    }

    // Iterated compositions: the one-step scalars threaded through the
    // parameter shifts multiply to the multi-step scalar.
    let parities = [(vec![0u8, 0, 0], vec![0u8, 0]), (vec![1u8, 0, 1], vec![0u8, 1])];
    for (xi, eta) in &parities {
        let p = InductionParams::symbolic(2).with_parities(xi.clone(), eta.clone());
        for (kind, i) in all_ops_n2() {
            for alpha in 2..=3u32 {
                suite.push(verify_iterated_scalar(kind, i, alpha, &p));
            }
        }
        for k in 0..=2usize {
            suite.push(verify_order_independence(k, &[1, 2], &p));
        }
    }

    if mode == Mode::Numeric {
        let mut rng = seeded_rng(seed);
        for point in 0..20u32 {
            let p = random_generic_params(&mut rng, 2);
            let mut all = true;
            let mut detail = String::new();
            for (kind, i) in all_ops_n2() {
                let r = verify_bernstein_sato(kind, i, &p);
                if !r.pass {
                    all = false;
                    detail = format!("{:?}_{i}: {}", kind, r.details);
                    break;
                }
            }
            suite.push(CheckReport::new(
                &format!("eigenvalue identities at sample point {point}"),
                &format!("bs-numeric/point{point}"),
                all,
                detail,
            ));
        }
    }
    suite
}

/// The normal-form expansion of composite powers across the restriction:
/// boundary coefficient formulas and the small-group rewrite of the third
/// vector field.
pub fn suite_expansion() -> Suite {
    let mut suite = Suite::new("expansion");
    for n_pow in 0..=4u32 {
        for m_pow in 0..=4u32 {
            if n_pow + m_pow == 0 {
                continue;
            }
            suite.push(verify_expansion_lemma(n_pow, m_pow));
        }
    }
    suite.push(verify_eps_h_rewrite());
    suite
}

/// Scalar residue bookkeeping: the gamma-quotient of the residue operator
/// normalization is constant at small ranks, and the general gamma ratio
/// canonicalizes to a polynomial; numeric probes pin the gamma function and
/// the distributional residue normalization.
pub fn suite_residue_scalar(seed: u64, mode: Mode) -> Suite {
    let mut suite = Suite::new("residue-scalar");
    for n in 1..=2usize {
        for k in 0..=n {
            let (is_free, expr) = residue_scalar_check(n, k);
            suite.push(CheckReport::new(
                &format!("residue normalization is gamma-free (n={n}, k={k})"),
                &format!("residue-scalar/n{n}/k{k}"),
                is_free,
                if is_free { String::new() } else { format!("{expr}") },
            ));
        }
    }

    let mut rng = seeded_rng(seed);
    let r = ring(&["l1", "l2", "l3", "v1", "v2"]);
    for case in 0..10u32 {
        let (xi, eta) = random_parities(&mut rng, 2);
        let p = InductionParams::symbolic(2).with_parities(xi.clone(), eta.clone());
        let ratio = gamma_ratio(&r, &p);
        let pass = match ratio.as_ratfun() {
            Some((rf, _)) => rf.den().as_constant().is_some(),
            None => false,
        };
        suite.push(CheckReport::new(
            &format!("gamma ratio is polynomial for parities {xi:?}/{eta:?}"),
            &format!("gamma-ratio/case{case}"),
            pass,
            if pass { String::new() } else { format!("{ratio}") },
        ));
    }

    if mode == Mode::Numeric {
        let mut worst = 0.0f64;
        for (x, want) in classical_gamma_values() {
            let got = gamma_numeric(x);
            worst = worst.max(((got - want) / want).abs());
        }
        suite.push(CheckReport::new(
            "gamma function against 20 classical closed forms",
            "numeric/gamma-classical",
            worst <= 1e-12,
            format!("worst relative error {worst:.3e}"),
        ));

        let (limit, quad_err) = riesz_residue_probe();
        let pass = (limit - 1.0).abs() <= 1e-4 && quad_err <= 1e-8;
        suite.push(CheckReport::new(
            "power-distribution residue recovers the point evaluation",
            "numeric/riesz-residue",
            pass,
            format!("limit {limit:.8}, quadrature error {quad_err:.3e}"),
        ));
    }
    suite
}

/// Build numeric parameters at rank 2 for given support index, generic base
/// exponents, and target degrees; parities are matched to the degrees.
fn instance_for_degrees(k: usize, lam: &[Rat; 3], n1: i64, n2: i64) -> InductionParams {
    let half = ratq(1, 2);
    let (nu, eta) = match k {
        1 => (
            [&lam[0] + &(rat(n1) + half.clone()), &lam[2] - &(rat(n2) + half)],
            vec![(n1 % 2) as u8, (n2 % 2) as u8],
        ),
        2 => (
            [
                &lam[0] + &(rat(n1) + half.clone()),
                &lam[1] + &(rat(n2 - n1) + half),
            ],
            vec![(n1 % 2) as u8, ((n2 - n1) % 2) as u8],
        ),
        0 => (
            [
                &lam[1] - &(rat(n2 - n1) + half.clone()),
                &lam[2] - &(rat(n1) + half),
            ],
            vec![((n2 - n1) % 2) as u8, (n1 % 2) as u8],
        ),
        _ => panic!("support index out of range"),
    };
    InductionParams::numeric(2, lam, &nu).with_parities(vec![0, 0, 0], eta)
}

/// Kernel classification sweep at n = 2: generic one-dimensional instances
/// at every support index, zero-dimensional degenerations (non-integral
/// degree, parity mismatch, truncation without a matching lower index), and
/// the two-dimensional special family; solver dimension and basis span are
/// checked against the closed forms throughout.
pub fn suite_n2_classify() -> Suite {
    let mut suite = Suite::new("n2-classify");
    let lam: [Rat; 3] = [ratq(1, 3), ratq(1, 5), ratq(22, 7)];

    // Generic instances: degrees (n1, n2) with n2 ≥ n1 so that the shift
    // vector stays natural at every support index.
    let pairs: [(i64, i64); 12] = [
        (0, 0),
        (0, 1),
        (1, 1),
        (1, 2),
        (2, 2),
        (0, 2),
        (2, 3),
        (1, 3),
        (3, 3),
        (2, 4),
        (3, 4),
        (0, 4),
    ];
    for k in 0..=2usize {
        for &(n1, n2) in &pairs {
            let p = instance_for_degrees(k, &lam, n1, n2);
            let hint = classify_generic(&p, k);
            let (basis, dim) = solve_kernels(&p, k);
            let mut pass = hint.generic && dim as u8 == hint.dimension_hint;
            let mut detail = String::new();
            if !pass {
                detail = format!(
                    "solver dim {dim}, membership hint {} (generic: {})",
                    hint.dimension_hint, hint.generic
                );
            } else if dim >= 1 {
                match closed_form_kernel(&p, k, KernelCase::FromZero) {
                    Ok(cf) => {
                        if !same_span(&basis, &[cf]) {
                            pass = false;
                            detail = String::from("solver basis differs from closed form");
                        }
                    }
                    Err(e) => {
                        pass = false;
                        detail = e;
                    }
                }
            }
            suite.push(CheckReport::new(
                &format!("generic instance k={k}, degrees ({n1},{n2})"),
                &format!("classify/k{k}/deg{n1}-{n2}"),
                pass,
                detail,
            ));
        }
    }

    // Zero-dimensional degenerations: a non-integral degree and a parity
    // mismatch at every support index.
    for k in 0..=2usize {
        let mut p = instance_for_degrees(k, &lam, 1, 2);
        p.nu[0] = p.nu[0].add_const(&ratq(1, 3));
        let dim = solve_kernels(&p, k).1;
        suite.push(CheckReport::new(
            &format!("non-integral degree gives empty kernel (k={k})"),
            &format!("classify/k{k}/non-integral"),
            dim == 0,
            format!("solver dim {dim}"),
        ));

        let good = instance_for_degrees(k, &lam, 1, 2);
        let flipped = vec![1 - good.eta[0], good.eta[1]];
        let bad = good.with_parities(vec![0, 0, 0], flipped);
        let dim = solve_kernels(&bad, k).1;
        suite.push(CheckReport::new(
            &format!("parity mismatch gives empty kernel (k={k})"),
            &format!("classify/k{k}/parity"),
            dim == 0,
            format!("solver dim {dim}"),
        ));
    }

    // Truncated recurrences at support index 1 without a matching lower
    // truncation index: only the upper (truncated) kernel survives, since
    // the non-vanishing numerator forces the lower coefficients to zero.
    for (n1, n2, l0) in [(2i64, 2i64, 0u32), (3, 2, 1)] {
        let lam_t: [Rat; 3] = [rat(0), ratq(1, 3), rat(n1 + n2 - l0 as i64)];
        let p = instance_for_degrees(1, &lam_t, n1, n2);
        let (basis, dim) = solve_kernels(&p, 1);
        let mut pass = dim == 1;
        let mut detail = format!("solver dim {dim}");
        if pass {
            match closed_form_kernel(&p, 1, KernelCase::Truncated(l0)) {
                Ok(cf) => {
                    if !same_span(&basis, &[cf]) {
                        pass = false;
                        detail = String::from("solver basis differs from truncated closed form");
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = e;
                }
            }
        }
        suite.push(CheckReport::new(
            &format!("truncation without lower index keeps only the upper kernel (n1={n1}, n2={n2}, l0={l0})"),
            &format!("classify/k1/truncated-{n1}-{n2}-{l0}"),
            pass,
            detail,
        ));
    }

    // Support indices 0 and 2 with an integral spread λ-pair: the recurrence
    // numerator vanishes early and the closed form truncates, but the kernel
    // stays one-dimensional.
    for (k, lam_g) in [
        (2usize, [ratq(4, 3), ratq(1, 3), ratq(22, 7)]),
        (0usize, [ratq(1, 3), ratq(1, 5), ratq(11, 5)]),
    ] {
        let p = instance_for_degrees(k, &lam_g, 2, 3);
        let (basis, dim) = solve_kernels(&p, k);
        let mut pass = dim == 1;
        let mut detail = format!("solver dim {dim}");
        if pass {
            match closed_form_kernel(&p, k, KernelCase::FromZero) {
                Ok(cf) => {
                    if !same_span(&basis, &[cf]) {
                        pass = false;
                        detail = String::from("solver basis differs from truncated closed form");
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = e;
                }
            }
        }
        suite.push(CheckReport::new(
            &format!("truncated-coefficient instance k={k}"),
            &format!("classify/k{k}/gate"),
            pass,
            detail,
        ));
    }

    // The two-dimensional family: solver dimension two and basis span equal
    // to the pair of closed-form kernels.
    for (n1, n2, k0, l0) in [(2u32, 2u32, 0u32, 1u32), (3, 2, 0, 1), (3, 3, 1, 2), (4, 3, 0, 2)] {
        let p = multiplicity_two_params(&AffineForm::zero(), n1, n2, k0, l0, [0, 0, 0]);
        let (basis, dim) = solve_kernels(&p, 1);
        let mut pass = dim == 2;
        let mut detail = format!("solver dim {dim}");
        if pass {
            let upper = closed_form_kernel(&p, 1, KernelCase::Truncated(l0));
            let lower = closed_form_kernel(&p, 1, KernelCase::FromZero);
            match (upper, lower) {
                (Ok(u), Ok(l)) => {
                    if !same_span(&basis, &[u, l]) {
                        pass = false;
                        detail = String::from("solver basis differs from closed-form pair");
                    }
                }
                (u, l) => {
                    pass = false;
                    detail = format!("closed forms unavailable: {u:?} / {l:?}");
                }
            }
        }
        suite.push(CheckReport::new(
            &format!("two-dimensional instance (n1,n2,k0,l0)=({n1},{n2},{k0},{l0})"),
            &format!("classify/k1/dim2-{n1}-{n2}-{k0}-{l0}"),
            pass,
            detail,
        ));
    }

    // The two-operator basis realizing the two-dimensional space upstairs.
    for (n1, n2, k0, l0) in [(2u32, 2u32, 0u32, 1u32), (3, 2, 0, 1), (3, 3, 1, 2)] {
        suite.push(verify_multiplicity_two_basis(&rat(0), n1, n2, k0, l0));
    }
    suite
}

fn random_weyl(rng: &mut ChaCha8Rng, ctx: &Context) -> WeylElement {
    let m = ctx.n + 1;
    let mut w = WeylElement::zero(ctx);
    for _ in 0..2 {
        let mut exp = vec![0u32; ctx.ring.len()];
        for _ in 0..2 {
            let i = rng.gen_range(1..=m);
            let j = rng.gen_range(1..=m);
            exp[ctx.g_index(i, j)] += 1;
        }
        let mono = Polynomial::monomial(&ctx.ring, exp, random_rat(rng));
        let (i, j) = (rng.gen_range(1..=m), rng.gen_range(1..=m));
        let term = WeylElement::mult_op(ctx, &mono).mul(&WeylElement::partial(ctx, i, j));
        w = w.add(&term);
    }
    w
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Context) -> Polynomial {
    let mut p = Polynomial::zero(&ctx.ring);
    for _ in 0..3 {
        let mut exp = vec![0u32; ctx.ring.len()];
        for _ in 0..2 {
            let i = rng.gen_range(1..=ctx.n + 1);
            let j = rng.gen_range(1..=ctx.n + 1);
            exp[ctx.g_index(i, j)] += 1;
        }
        p = &p + &Polynomial::monomial(&ctx.ring, exp, random_rat(rng));
    }
    p
}

fn random_gamma_expr(rng: &mut ChaCha8Rng, r: &dsbo_core::poly::Ring) -> GammaExpr {
    let mut e = GammaExpr::one(r);
    for _ in 0..3 {
        let arg = crate::random::random_affine(rng, "x");
        // Also a shifted copy to exercise the merge of equivalent factors.
        let shift = 2 * rng.gen_range(0i64..=3);
        let exp = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
        e = e.mul(&GammaExpr::gamma(r, arg.clone()).pow(exp));
        e = e.mul(&GammaExpr::gamma(r, arg.add_int(shift)).pow(-exp + 1));
    }
    e.scale(&RatFun::constant(r, random_rat(rng)))
}

/// 1000 seeded random instances of the structural laws the whole workbench
/// rests on: associativity of the operator algebra, the commutation rule of
/// the polarized vector fields, compatibility of composition with the action
/// on polynomials, distributivity with exact division in the polynomial
/// ring, and idempotence plus numeric faithfulness of gamma-expression
/// canonicalization.
pub fn suite_algebra_axioms(seed: u64) -> Suite {
    let mut suite = Suite::new("algebra-axioms");
    let ctx = Context::new(2);
    let mut rng = seeded_rng(seed);
    let gr = ring(&["x"]);

    let mut fails: BTreeMap<&str, (u32, String)> = BTreeMap::new();
    let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
    for round in 0..200u32 {
        // Associativity of operator composition.
        {
            let (a, b, c) = (random_weyl(&mut rng, &ctx), random_weyl(&mut rng, &ctx), random_weyl(&mut rng, &ctx));
            let ok = a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
            *counts.entry("associativity").or_insert(0) += 1;
            if !ok {
                fails.entry("associativity").or_insert((round, String::from("(ab)c != a(bc)")));
            }
        }
        // Commutation rule of the polarized vector fields.
        {
            let pick = |rng: &mut ChaCha8Rng| (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
            let ((i, j), (k, l)) = (pick(&mut rng), pick(&mut rng));
            let lhs = WeylElement::epsilon(&ctx, i, j).commutator(&WeylElement::epsilon(&ctx, k, l));
            let mut rhs = WeylElement::zero(&ctx);
            if j == k {
                rhs = rhs.add(&WeylElement::epsilon(&ctx, i, l));
            }
            if l == i {
                rhs = rhs.sub(&WeylElement::epsilon(&ctx, k, j));
            }
            *counts.entry("commutation").or_insert(0) += 1;
            if lhs != rhs {
                fails
                    .entry("commutation")
                    .or_insert((round, format!("[e{i}{j}, e{k}{l}] mismatch")));
            }
        }
        // Composition agrees with the action on polynomials.
        {
            let (a, b) = (random_weyl(&mut rng, &ctx), random_weyl(&mut rng, &ctx));
            let p = random_poly(&mut rng, &ctx);
            let lhs = a.mul(&b).apply_to_polynomial(&ctx, &p);
            let rhs = a.apply_to_polynomial(&ctx, &b.apply_to_polynomial(&ctx, &p));
            *counts.entry("module-action").or_insert(0) += 1;
            if lhs != rhs {
                fails
                    .entry("module-action")
                    .or_insert((round, String::from("(ab)p != a(bp)")));
            }
        }
        // Polynomial ring laws: distributivity and exact division.
        {
            let (a, b, c) = (random_poly(&mut rng, &ctx), random_poly(&mut rng, &ctx), random_poly(&mut rng, &ctx));
            let dist = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
            let div_ok = if b.is_zero() {
                true
            } else {
                (&a * &b).div_exact(&b).map(|q| q == a).unwrap_or(false)
            };
            *counts.entry("polynomial-ring").or_insert(0) += 1;
            if !(dist && div_ok) {
                fails
                    .entry("polynomial-ring")
                    .or_insert((round, String::from("distributivity or exact division")));
            }
        }
        // Gamma-expression canonicalization: idempotent, and numerically
        // faithful at a random pole-free point.
        {
            let e = random_gamma_expr(&mut rng, &gr);
            let c1 = e.canonicalize();
            let idem = c1.canonicalize() == c1;
            let mut sem = true;
            for _ in 0..20 {
                let mut assign = BTreeMap::new();
                assign.insert(String::from("x"), random_rat(&mut rng));
                if let (Some(v0), Some(v1)) =
                    (gamma_expr_numeric(&e, &assign), gamma_expr_numeric(&c1, &assign))
                {
                    let denom = v0.abs().max(1e-300);
                    sem = (v0 - v1).abs() / denom <= 1e-8;
                    break;
                }
            }
            *counts.entry("gamma-canonicalize").or_insert(0) += 1;
            if !(idem && sem) {
                fails.entry("gamma-canonicalize").or_insert((
                    round,
                    format!("idempotent: {idem}, numerically faithful: {sem}"),
                ));
            }
        }
    }

    for (law, count) in counts {
        let fail = fails.get(law);
        suite.push(CheckReport::new(
            &format!("{law} law, {count} random instances"),
            &format!("axioms/{law}"),
            fail.is_none(),
            match fail {
                None => String::new(),
                Some((round, msg)) => format!("first failure at round {round}: {msg}"),
            },
        ));
    }
    suite
}

/// Every suite, in a fixed order.
pub fn all_suites(seed: u64, mode: Mode) -> Vec<Suite> {
    vec![
        suite_restriction(),
        suite_bernstein_sato(seed, mode),
        suite_expansion(),
        suite_residue_scalar(seed, mode),
        suite_n2_classify(),
        suite_algebra_axioms(seed),
    ]
}
