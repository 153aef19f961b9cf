//! End-to-end acceptance gate: one test per criterion, each printing a
//! single pass/fail line (visible with `--nocapture`; the per-test result
//! line from the harness mirrors it).

use dsbo_core::affine::AffineForm;
use dsbo_core::covariant::{Context, MinorId};
use dsbo_core::gamma::{gamma_ratio, residue_scalar_check};
use dsbo_core::identities::{verify_expansion_lemma, verify_iterated_scalar, OpKind};
use dsbo_core::params::InductionParams;
use dsbo_core::poly::ring;
use dsbo_core::ratfun::RatFun;
use dsbo_core::report::Suite;
use dsbo_core::scalar::rat;
use dsbo_core::weyl::{build_d, build_f, WeylElement};
use dsbo_cli::numerics::{classical_gamma_values, gamma_numeric, riesz_residue_probe};
use dsbo_cli::random::{random_parities, seeded_rng};
use dsbo_cli::suites::{
    suite_algebra_axioms, suite_bernstein_sato, suite_expansion, suite_n2_classify,
    suite_restriction, Mode,
};

const SEED: u64 = 0xD5B0;

fn report(num: u32, name: &str, pass: bool, details: &str) {
    println!(
        "criterion {num:02} ({name}): {}{}",
        if pass { "PASS" } else { "FAIL" },
        if details.is_empty() { String::new() } else { format!(" — {details}") }
    );
    assert!(pass, "criterion {num:02} ({name}) failed: {details}");
}

fn assert_suite(num: u32, name: &str, suite: &Suite) {
    let failed: Vec<&str> =
        suite.checks.iter().filter(|c| !c.pass).map(|c| c.anchor.as_str()).collect();
    report(
        num,
        name,
        failed.is_empty(),
        &if failed.is_empty() {
            format!("{} checks", suite.checks.len())
        } else {
            format!("failing: {failed:?}")
        },
    );
}

#[test]
fn criterion_01_factor_operator_expansions() {
    let ctx = Context::new(2);
    let lambda: Vec<AffineForm> =
        (1..=3).map(|i| AffineForm::var(&format!("l{i}"))).collect();
    let lam = |i: usize, j: usize| {
        RatFun::from_affine(&ctx.ring, &(&lambda[i - 1] - &lambda[j - 1]).add_int(-1))
    };
    let eps = |i, j| WeylElement::epsilon(&ctx, i, j);
    let phi = |i: usize| WeylElement::mult_op(&ctx, &ctx.phi(i));
    let psi = |i: usize| WeylElement::mult_op(&ctx, &ctx.psi(i));

    // Third raising factor: four terms over the column minors of the last row.
    let expect_d3 = phi(1)
        .mul(&eps(2, 1).mul(&eps(3, 2)))
        .sub(&phi(1).mul(&eps(3, 1)).scale(&lam(3, 2)))
        .sub(&phi(2).mul(&eps(3, 2)).scale(&lam(3, 1)))
        .add(&phi(3).scale(&(&lam(3, 1) * &lam(3, 2))));
    let d3 = build_d(&ctx, 3, &lambda);
    let d_ok = d3 == expect_d3;

    // First lowering factor: four terms over the 2x2 minors of the first
    // two columns.
    let expect_f1 = psi(3)
        .mul(&eps(3, 2).mul(&eps(2, 1)))
        .add(&psi(3).mul(&eps(3, 1)).scale(&lam(2, 1)))
        .sub(&psi(2).mul(&eps(2, 1)).scale(&lam(3, 1)))
        .add(&psi(1).scale(&(&lam(3, 1) * &lam(2, 1))));
    let f1 = build_f(&ctx, 1, &lambda);
    let f_ok = f1 == expect_f1;

    report(
        1,
        "factor operators equal their four-term expansions",
        d_ok && f_ok,
        &format!("raising: {d_ok}, lowering: {f_ok}"),
    );
}

#[test]
fn criterion_02_restriction_identities() {
    assert_suite(2, "restriction identities at both ranks", &suite_restriction());
}

#[test]
fn criterion_03_eigenvalue_identities() {
    let suite = suite_bernstein_sato(SEED, Mode::Numeric);
    assert_suite(3, "kernel eigenvalue identities, symbolic and sampled", &suite);
}

#[test]
fn criterion_04_iterated_scalars() {
    let parities = [(vec![0u8, 0, 0], vec![0u8, 0]), (vec![1u8, 0, 1], vec![0u8, 1])];
    let mut all = true;
    let mut first = String::new();
    for (xi, eta) in parities {
        let p = InductionParams::symbolic(2).with_parities(xi, eta);
        for (kind, i) in [
            (OpKind::D, 1),
            (OpKind::D, 2),
            (OpKind::D, 3),
            (OpKind::F, 1),
            (OpKind::F, 2),
            (OpKind::F, 3),
        ] {
            for alpha in 2..=3u32 {
                let r = verify_iterated_scalar(kind, i, alpha, &p);
                if !r.pass && all {
                    all = false;
                    first = r.anchor;
                }
            }
        }
    }
    report(4, "iterated composition scalars telescope", all, &first);
}

#[test]
fn criterion_05_kernel_classification_sweep() {
    assert_suite(5, "kernel classification sweep with two-dimensional family", &suite_n2_classify());
}

#[test]
fn criterion_06_derived_equations() {
    use dsbo_core::delta::{delta_ring, derive_pde, Generator, PdeOperator};
    let r = delta_ring();
    let one = RatFun::one(&r);
    let l = |i: usize| RatFun::var(&r, &format!("l{i}"));
    let v = |j: usize| RatFun::var(&r, &format!("v{j}"));
    let c = |n: i64, d: i64| RatFun::constant(&r, dsbo_core::scalar::ratq(n, d));

    // The three displayed equations at support index one, term for term.
    let g1 = derive_pde(1, Generator::DiagGamma(1));
    let expect_g1 = PdeOperator::new(
        &r,
        &[
            (vec![1, 0, 0], vec![1, 0, 0], one.clone()),
            (vec![0, 0, 1], vec![0, 0, 1], one.clone()),
        ],
        &(&l(1) - &v(1)) - &c(3, 2),
    );

    let d1 = derive_pde(1, Generator::DiagDelta(1));
    let expect_d1 = PdeOperator::new(
        &r,
        &[
            (vec![0, 1, 0], vec![0, 1, 0], one.clone()),
            (vec![0, 0, 1], vec![0, 0, 1], one.clone()),
        ],
        &(&v(2) - &l(3)) - &c(3, 2),
    );

    let u = derive_pde(1, Generator::UnipotentLeft);
    let expect_u = PdeOperator::new(
        &r,
        &[
            (vec![1, 0, 1], vec![1, 0, 0], -&one),
            (vec![0, 0, 2], vec![0, 0, 1], -&one),
            (vec![0, 1, 1], vec![0, 1, 0], -&one),
            (vec![1, 2, 0], vec![0, 1, 0], one.clone()),
            (vec![0, 0, 1], vec![0, 0, 0], &(&l(1) - &l(3)) - &c(2, 1)),
            (vec![1, 1, 0], vec![0, 0, 0], -&(&(&l(2) - &l(3)) - &one)),
        ],
        RatFun::zero(&r),
    );

    let pass = g1 == expect_g1 && d1 == expect_d1 && u == expect_u;
    report(6, "derived differential equations match the displayed system", pass, "");
}

#[test]
fn criterion_07_expansion_coefficients() {
    // Boundary coefficients of the normal-form expansion, including the
    // pure-power single-term case, at all powers up to four.
    let mut all = true;
    let mut first = String::new();
    for n_pow in 0..=4u32 {
        for m_pow in 0..=4u32 {
            if n_pow + m_pow == 0 {
                continue;
            }
            let r = verify_expansion_lemma(n_pow, m_pow);
            if !r.pass && all {
                all = false;
                first = r.anchor;
            }
        }
    }
    // The small-group rewrite backing the expansion is part of the same suite.
    let rw = dsbo_core::identities::verify_eps_h_rewrite();
    if !rw.pass && all {
        all = false;
        first = rw.anchor;
    }
    report(7, "normal-form expansion coefficient formulas", all, &first);
}

#[test]
fn criterion_08_residue_scalars() {
    let mut all = true;
    let mut detail = String::new();
    for n in 1..=2usize {
        for k in 0..=n {
            let (is_free, expr) = residue_scalar_check(n, k);
            if !is_free && all {
                all = false;
                detail = format!("n={n}, k={k}: {expr}");
            }
        }
    }
    report(8, "residue normalizations are gamma-free", all, &detail);
}

#[test]
fn criterion_09_gamma_ratio_polynomiality() {
    let mut rng = seeded_rng(SEED);
    let r = ring(&["l1", "l2", "l3", "v1", "v2"]);
    let mut all = true;
    let mut detail = String::new();
    for _ in 0..10 {
        let (xi, eta) = random_parities(&mut rng, 2);
        let p = InductionParams::symbolic(2).with_parities(xi.clone(), eta.clone());
        let ratio = gamma_ratio(&r, &p);
        let poly = ratio
            .as_ratfun()
            .map(|(rf, _)| rf.den().as_constant().is_some())
            .unwrap_or(false);
        if !poly && all {
            all = false;
            detail = format!("parities {xi:?}/{eta:?}");
        }
    }
    report(9, "gamma ratios canonicalize to polynomials", all, &detail);
}

#[test]
fn criterion_10_numeric_probes() {
    let mut worst = 0.0f64;
    for (x, want) in classical_gamma_values() {
        worst = worst.max(((gamma_numeric(x) - want) / want).abs());
    }
    let (limit, quad_err) = riesz_residue_probe();
    let pass = worst <= 1e-12 && (limit - 1.0).abs() <= 1e-4 && quad_err <= 1e-8;
    report(
        10,
        "numeric gamma and residue probes",
        pass,
        &format!("gamma error {worst:.2e}, residue limit {limit:.8}"),
    );
}

#[test]
fn criterion_11_algebra_axioms() {
    assert_suite(11, "seeded random algebra axioms", &suite_algebra_axioms(SEED));
}

#[test]
fn suites_are_exercised_fully() {
    // Guard on the sweep size and coverage claims the criteria rely on.
    let classify = suite_n2_classify();
    assert!(classify.checks.len() >= 50, "sweep has {} checks", classify.checks.len());
    let dim2 = classify.checks.iter().filter(|c| c.anchor.contains("dim2")).count();
    assert!(dim2 >= 3, "only {dim2} two-dimensional instances");
    let expansion = suite_expansion();
    assert!(expansion.checks.len() >= 24);
    // Smoke-use of the minor catalogue so the construction path stays public.
    let ctx = Context::new(2);
    assert!(!ctx.minor(MinorId::Kappa(1)).is_zero());
    assert_eq!(ctx.det_h().total_degree(), 2);
    let _ = rat(0);
}
