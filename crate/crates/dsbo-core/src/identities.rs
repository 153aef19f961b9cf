//! Cross-cutting symbolic identities: restriction relations, operator
//! identities on formal-power kernels, iterated-composition scalar
//! functoriality, and the two-operator basis at the special parameters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::affine::AffineForm;
use crate::covariant::{kernel_k, Context};
use crate::expansion::{expand_rest1_fd, overall_scalar, NormalFormExpansion};
use crate::gamma::{bs_scalar, BsKind, GammaExpr};
use crate::params::InductionParams;
use crate::poly::{pochhammer, Polynomial};
use crate::ratfun::RatFun;
use crate::report::CheckReport;
use crate::scalar::{self, Rat};
use crate::weyl::{build_d, build_f, WeylElement};

/// Which source-operator family an identity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    D,
    F,
}

/// The restricted symbol of `rest_k o w`: group the normal-ordered terms by
/// derivative multi-index and restrict each coefficient polynomial.  Two
/// operators agree after restriction iff their restricted symbols agree,
/// because jets at a point of the restricted set are unconstrained.
pub fn restricted_symbol(
    ctx: &Context,
    k: usize,
    w: &WeylElement,
) -> BTreeMap<Vec<u32>, Polynomial> {
    let g_ring = ctx.g_ring_indices();
    let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for ((gexp, dexp), coeff) in w.terms() {
        let mut exp = vec![0u32; ctx.ring.len()];
        for (flat, &ri) in g_ring.iter().enumerate() {
            exp[ri] = gexp[flat];
        }
        let mono = Polynomial::monomial(&ctx.ring, exp, Rat::one());
        let poly = coeff
            .as_polynomial()
            .expect("operator coefficient must be polynomial");
        let restricted = ctx.restrict_poly(k, &(&mono * poly));
        if restricted.is_zero() {
            continue;
        }
        let entry = out
            .entry(dexp.clone())
            .or_insert_with(|| Polynomial::zero(&ctx.ring));
        *entry = &*entry + &restricted;
        if entry.is_zero() {
            out.remove(dexp);
        }
    }
    out
}

fn scalar_symbol(ctx: &Context, s: &Polynomial) -> BTreeMap<Vec<u32>, Polynomial> {
    let mut out = BTreeMap::new();
    if !s.is_zero() {
        out.insert(vec![0u32; (ctx.n + 1) * (ctx.n + 1)], s.clone());
    }
    out
}

/// The restriction relations at size n, index k: the first family vanishes
/// below the index, the second above it, and the two boundary cases restrict
/// to explicit scalar multiples (with a sign depending on k resp. n-k).
pub fn verify_restriction_identities(n: usize, k: usize) -> Vec<CheckReport> {
    let ctx = Context::new(n);
    let lambda = ctx.lambda_vec();
    let mut reports = Vec::new();

    for i in 1..=k + 1 {
        let lhs = restricted_symbol(&ctx, k, &build_d(&ctx, i, &lambda));
        let anchor = format!("restriction/n{n}/k{k}/D{i}");
        if i <= k {
            reports.push(CheckReport::new(
                &format!("rest_{k} after D_{i} vanishes (n={n})"),
                &anchor,
                lhs.is_empty(),
                if lhs.is_empty() {
                    String::new()
                } else {
                    "nonzero restricted symbol".to_string()
                },
            ));
        } else {
            // scalar: (-1)^k * prod_{j<=k} (lambda_{k+1} - lambda_j - 1)
            let mut s = Polynomial::constant(&ctx.ring, scalar::rat(if k % 2 == 0 { 1 } else { -1 }));
            for j in 1..=k {
                let a = (&lambda[k] - &lambda[j - 1]).add_int(-1);
                s = &s * &Polynomial::from_affine(&ctx.ring, &a);
            }
            let pass = lhs == scalar_symbol(&ctx, &s);
            reports.push(CheckReport::new(
                &format!("rest_{k} after D_{i} is a scalar multiple (n={n})"),
                &anchor,
                pass,
                if pass { String::new() } else { "symbol mismatch".to_string() },
            ));
        }
    }

    for j in k + 1..=n + 1 {
        let lhs = restricted_symbol(&ctx, k, &build_f(&ctx, j, &lambda));
        let anchor = format!("restriction/n{n}/k{k}/F{j}");
        if j >= k + 2 {
            reports.push(CheckReport::new(
                &format!("rest_{k} after F_{j} vanishes (n={n})"),
                &anchor,
                lhs.is_empty(),
                if lhs.is_empty() {
                    String::new()
                } else {
                    "nonzero restricted symbol".to_string()
                },
            ));
        } else {
            // scalar: (-1)^{n-k} * prod_{i>=k+2} (lambda_i - lambda_{k+1} - 1) * det_h
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            let mut s = ctx.det_h().scale(&scalar::rat(sign));
            for i in k + 2..=n + 1 {
                let a = (&lambda[i - 1] - &lambda[k]).add_int(-1);
                s = &s * &Polynomial::from_affine(&ctx.ring, &a);
            }
            let pass = lhs == scalar_symbol(&ctx, &s);
            reports.push(CheckReport::new(
                &format!("rest_{k} after F_{j} is det times a scalar (n={n})"),
                &anchor,
                pass,
                if pass { String::new() } else { "symbol mismatch".to_string() },
            ));
        }
    }

    reports
}

/// Apply one source operator, built at the negated parameter, to the
/// formal-power kernel; on success return the polynomial eigenvalue `b` with
/// `op(-lambda) K_{lambda,nu} = b * K_shifted`.
pub fn kernel_eigenvalue(
    ctx: &Context,
    kind: OpKind,
    i: usize,
    p: &InductionParams,
) -> Result<RatFun, String> {
    assert_eq!(ctx.n, p.n);
    let neg: Vec<AffineForm> = p.lambda.iter().map(|a| -a).collect();
    let op = match kind {
        OpKind::D => build_d(ctx, i, &neg),
        OpKind::F => build_f(ctx, i, &neg),
    };
    let kernel = kernel_k(ctx, &p.lambda, &p.nu);
    let result = kernel.apply_weyl(ctx, &op);

    let (lp, vp) = shifted_kernel_params(kind, i, p);
    let target = kernel_k(ctx, &lp, &vp);

    let (base, pref) = result
        .collapse(ctx)
        .ok_or_else(|| "non-monomial output".to_string())?;
    if pref.is_zero() {
        return Ok(RatFun::zero(&ctx.ring));
    }
    let (texps, tpref) = target.terms.iter().next().unwrap();
    let minors: Vec<Polynomial> = ctx.catalogue().iter().map(|&id| ctx.minor(id)).collect();
    let mut divisor = Polynomial::one(&ctx.ring);
    for (b_idx, (te, be)) in texps.iter().zip(base.iter()).enumerate() {
        let diff = te
            .constant_difference(be)
            .ok_or_else(|| "incompatible exponent tuples".to_string())?;
        if !scalar::is_natural(&diff) {
            return Err("negative exponent gap".to_string());
        }
        let d = scalar::to_i64(&diff) as u32;
        if d > 0 {
            divisor = &divisor * &minors[b_idx].pow(d);
        }
    }
    let ratio = &(&pref / &RatFun::from_poly(divisor)) / tpref;
    let num = ratio
        .as_polynomial()
        .ok_or_else(|| "eigenvalue is not polynomial".to_string())?;
    let mut forbidden = ctx.g_ring_indices();
    for a in 1..=ctx.n {
        for b in 1..=ctx.n {
            forbidden.push(ctx.h_index(a, b));
        }
    }
    if !num.is_free_of(&forbidden) {
        return Err("eigenvalue depends on matrix entries".to_string());
    }
    Ok(ratio)
}

/// Parameter shift of the kernel induced by one application of the operator.
pub fn shifted_kernel_params(
    kind: OpKind,
    i: usize,
    p: &InductionParams,
) -> (Vec<AffineForm>, Vec<AffineForm>) {
    let mut lp = p.lambda.clone();
    let mut vp = p.nu.clone();
    match kind {
        OpKind::D => {
            lp[i - 1] = lp[i - 1].add_int(1);
        }
        OpKind::F => {
            for (pos, v) in lp.iter_mut().enumerate() {
                if pos + 1 != i {
                    *v = v.add_int(1);
                }
            }
            for v in vp.iter_mut() {
                *v = v.add_int(1);
            }
        }
    }
    (lp, vp)
}

/// The expected eigenvalue pattern: a partial product of the half-shifted
/// parameter differences, over the column indices the operator couples to.
pub fn expected_eigenvalue(ctx: &Context, kind: OpKind, i: usize, p: &InductionParams) -> RatFun {
    let n = ctx.n;
    let half = scalar::ratq(1, 2);
    let mut out = RatFun::one(&ctx.ring);
    match kind {
        OpKind::D => {
            for j in n + 2 - i..=n {
                let a = (&p.lambda[i - 1] - &p.nu[j - 1]).add_const(&half);
                out = &out * &RatFun::from_affine(&ctx.ring, &a);
            }
        }
        OpKind::F => {
            for j in 1..=n + 1 - i {
                let a = (&p.nu[j - 1] - &p.lambda[i - 1]).add_const(&half);
                out = &out * &RatFun::from_affine(&ctx.ring, &a);
            }
        }
    }
    out
}

fn proportional(a: &RatFun, b: &RatFun) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    (a / b).as_constant().is_some()
}

/// One operator identity on the formal-power kernel: PASS iff the operator
/// at the negated parameter maps the kernel to a single scalar multiple of
/// the shifted kernel, with the scalar proportional to the expected pattern
/// (and, at the outermost indices, to the parity-0 composition scalar).
pub fn verify_bernstein_sato(kind: OpKind, i: usize, p: &InductionParams) -> CheckReport {
    let ctx = Context::new(p.n);
    let name = format!(
        "operator identity {:?}_{i} on the formal kernel (n={})",
        kind, p.n
    );
    let anchor = format!("bernstein-sato/n{}/{:?}{}", p.n, kind, i);
    let b = match kernel_eigenvalue(&ctx, kind, i, p) {
        Ok(b) => b,
        Err(e) => return CheckReport::new(&name, &anchor, false, e),
    };
    let expected = expected_eigenvalue(&ctx, kind, i, p);
    if !proportional(&b, &expected) {
        return CheckReport::new(
            &name,
            &anchor,
            false,
            format!("eigenvalue {b} not proportional to pattern {expected}"),
        );
    }
    // at the boundary indices the pattern is the full composition scalar:
    // cross-check against the canonicalized gamma-ratio form.
    let boundary = matches!((kind, i), (OpKind::D, _) if i == p.n + 1)
        || matches!((kind, i), (OpKind::F, 1));
    if boundary {
        let zeroed = InductionParams::new(
            p.n,
            vec![0; p.n + 1],
            p.lambda.clone(),
            vec![0; p.n],
            p.nu.clone(),
        );
        let gkind = match kind {
            OpKind::D => BsKind::Q,
            OpKind::F => BsKind::P,
        };
        let gs = bs_scalar(&ctx.ring, gkind, i, 1, &zeroed).canonicalize();
        match gs.as_ratfun() {
            Some((rf, _)) if proportional(&b, &rf) => {}
            _ => {
                return CheckReport::new(
                    &name,
                    &anchor,
                    false,
                    format!("eigenvalue {b} disagrees with the gamma-ratio scalar"),
                );
            }
        }
    }
    CheckReport::new(&name, &anchor, true, format!("b = {b}"))
}

/// Parameter/parity bookkeeping for one operator application, at the level
/// of the gamma-calculus (parities included).
pub fn step_params(kind: OpKind, i: usize, p: &InductionParams) -> InductionParams {
    let (lp, vp) = shifted_kernel_params(kind, i, p);
    let mut xi = p.xi.clone();
    let mut eta = p.eta.clone();
    match kind {
        OpKind::D => {
            xi[i - 1] ^= 1;
        }
        OpKind::F => {
            for (pos, x) in xi.iter_mut().enumerate() {
                if pos + 1 != i {
                    *x ^= 1;
                }
            }
            for e in eta.iter_mut() {
                *e ^= 1;
            }
        }
    }
    InductionParams::new(p.n, xi, lp, eta, vp)
}

/// Functoriality of the composition scalars: the product of single-step
/// scalars along the threaded parameters has the same gamma multiset as the
/// alpha-step scalar.
pub fn verify_iterated_scalar(
    kind: OpKind,
    i: usize,
    alpha: u32,
    p: &InductionParams,
) -> CheckReport {
    let ctx = Context::new(p.n);
    let gkind = match kind {
        OpKind::D => BsKind::Q,
        OpKind::F => BsKind::P,
    };
    let mut cur = p.clone();
    let mut product = GammaExpr::one(&ctx.ring);
    for _ in 0..alpha {
        product = product.mul(&bs_scalar(&ctx.ring, gkind, i, 1, &cur));
        cur = step_params(kind, i, &cur);
    }
    let lhs = product.canonicalize();
    let rhs = bs_scalar(&ctx.ring, gkind, i, alpha, p).canonicalize();
    let pass = lhs.same_gamma_multiset(&rhs) && proportional(lhs.prefactor(), rhs.prefactor());
    CheckReport::new(
        &format!(
            "iterated composition scalar {:?}_{i}, {alpha} steps (n={})",
            kind, p.n
        ),
        &format!("iterated-bs/n{}/{:?}{}/alpha{}", p.n, kind, i, alpha),
        pass,
        if pass {
            String::new()
        } else {
            format!("{lhs} vs {rhs}")
        },
    )
}

/// Order-independence of mixed compositions: running the factor multiset of
/// the mixed operator family in two different orders yields total scalars
/// with identical gamma multisets.
pub fn verify_order_independence(k: usize, alpha: &[u32], p: &InductionParams) -> CheckReport {
    let ctx = Context::new(p.n);
    let n = p.n;
    assert!(k <= n);
    assert_eq!(alpha.len(), n);
    // factor list in the canonical order: D_{n+1}..D_{k+2} then F_k..F_1.
    let mut canonical: Vec<(OpKind, usize)> = Vec::new();
    for i in (k + 2..=n + 1).rev() {
        for _ in 0..alpha[i - 2] {
            canonical.push((OpKind::D, i));
        }
    }
    for i in (1..=k).rev() {
        for _ in 0..alpha[i - 1] {
            canonical.push((OpKind::F, i));
        }
    }
    let reversed: Vec<(OpKind, usize)> = canonical.iter().rev().cloned().collect();

    let total = |seq: &[(OpKind, usize)]| -> GammaExpr {
        let mut cur = p.clone();
        let mut product = GammaExpr::one(&ctx.ring);
        for &(kind, i) in seq {
            let gkind = match kind {
                OpKind::D => BsKind::Q,
                OpKind::F => BsKind::P,
            };
            product = product.mul(&bs_scalar(&ctx.ring, gkind, i, 1, &cur));
            cur = step_params(kind, i, &cur);
        }
        product.canonicalize()
    };
    let lhs = total(&canonical);
    let rhs = total(&reversed);
    let pass = lhs.same_gamma_multiset(&rhs);
    CheckReport::new(
        &format!("composition order independence k={k}, powers {alpha:?} (n={n})"),
        &format!("order-independence/n{n}/k{k}"),
        pass,
        if pass {
            String::new()
        } else {
            format!("{lhs} vs {rhs}")
        },
    )
}

/// The small-group vector field matched by the third letter: check
/// `eps_H^{2,1} o rest_1 = rest_1 o eps^{3,1}` on polynomial jets at n = 2.
pub fn verify_eps_h_rewrite() -> CheckReport {
    let ctx = Context::new(2);
    // dense degree-3 jet with distinct coefficients
    let mut lin = Polynomial::zero(&ctx.ring);
    let mut c = 2i64;
    for i in 1..=3usize {
        for j in 1..=3usize {
            let mut exp = vec![0u32; ctx.ring.len()];
            exp[ctx.g_index(i, j)] = 1;
            lin = &lin + &Polynomial::monomial(&ctx.ring, exp, scalar::rat(c));
            c += 3;
        }
    }
    let mut pass = true;
    for deg in 1..=3u32 {
        let jet = lin.pow(deg);
        // eps^{3,1} upstairs
        let mut up = Polynomial::zero(&ctx.ring);
        for k in 1..=3usize {
            let mut exp = vec![0u32; ctx.ring.len()];
            exp[ctx.g_index(k, 3)] = 1;
            up = &up
                + &(&Polynomial::monomial(&ctx.ring, exp, Rat::one())
                    * &jet.derivative(ctx.g_index(k, 1)));
        }
        let rhs = ctx.restrict_poly(1, &up);
        // eps_H^{2,1} downstairs
        let restricted = ctx.restrict_poly(1, &jet);
        let mut lhs = Polynomial::zero(&ctx.ring);
        for k in 1..=2usize {
            let mut exp = vec![0u32; ctx.ring.len()];
            exp[ctx.h_index(k, 2)] = 1;
            lhs = &lhs
                + &(&Polynomial::monomial(&ctx.ring, exp, Rat::one())
                    * &restricted.derivative(ctx.h_index(k, 1)));
        }
        if lhs != rhs {
            pass = false;
        }
    }
    CheckReport::new(
        "field rewrite across restriction on jets (n=2)",
        "eps-h-rewrite/n2",
        pass,
        String::new(),
    )
}

/// Expansion coefficient checks for one power pair: the support pattern and
/// the closed forms of the first and last coefficients.
pub fn verify_expansion_lemma(n_pow: u32, m_pow: u32) -> CheckReport {
    let rng = crate::expansion::expansion_ring();
    let lam = vec![
        AffineForm::var("l1"),
        AffineForm::var("l2"),
        AffineForm::var("l3"),
    ];
    let name = format!("expansion coefficients at powers ({n_pow},{m_pow})");
    let anchor = format!("expansion/n{n_pow}m{m_pow}");
    let exp = expand_rest1_fd(n_pow, m_pow, &lam);
    if exp.det_pow() != n_pow {
        return CheckReport::new(&name, &anchor, false, "wrong det power".to_string());
    }
    let top = n_pow.min(m_pow);
    for (&(a, b, c), _) in exp.terms() {
        if c > top || a != n_pow - c || b != m_pow - c {
            return CheckReport::new(&name, &anchor, false, format!("stray word ({a},{b},{c})"));
        }
    }
    let overall = RatFun::from_poly(overall_scalar(&rng, &lam, n_pow, m_pow));
    if n_pow >= 1 {
        let l13 = &lam[0] - &lam[2];
        let a0 = &exp.coefficient(n_pow, m_pow, 0) / &overall;
        let a0_expect = RatFun::from_poly(pochhammer(&rng, &l13.add_int(n_pow as i64 + 1), m_pow));
        if a0 != a0_expect {
            return CheckReport::new(&name, &anchor, false, format!("a_0 = {a0}"));
        }
        if m_pow <= n_pow && m_pow >= 1 {
            let l23 = &lam[1] - &lam[2];
            let margin = pochhammer(
                &rng,
                &AffineForm::from_int((n_pow - m_pow) as i64 + 1),
                m_pow,
            )
            .as_constant()
            .unwrap();
            let am = &exp.coefficient(n_pow - m_pow, 0, m_pow) / &overall;
            let am_expect =
                RatFun::from_poly(pochhammer(&rng, &l23.add_int(1), m_pow)).scale(&margin);
            if am != am_expect {
                return CheckReport::new(&name, &anchor, false, format!("a_m = {am}"));
            }
        }
        if m_pow == 0 && exp.terms().count() != 1 {
            return CheckReport::new(&name, &anchor, false, "m=0 not a single term".to_string());
        }
    }
    CheckReport::new(&name, &anchor, true, String::new())
}

fn expansion_keys(x: &NormalFormExpansion) -> Vec<((u32, (u32, u32, u32)), RatFun)> {
    x.terms()
        .map(|(&w, c)| ((x.det_pow(), w), c.clone()))
        .collect()
}

fn independent(a: &NormalFormExpansion, b: &NormalFormExpansion) -> bool {
    let va = expansion_keys(a);
    let vb = expansion_keys(b);
    if va.is_empty() || vb.is_empty() {
        return false;
    }
    // rank 2 iff some 2x2 minor over the union support is nonzero
    let lookup = |v: &[((u32, (u32, u32, u32)), RatFun)], key: &(u32, (u32, u32, u32))| {
        v.iter()
            .find(|(k, _)| k == key)
            .map(|(_, c)| c.clone())
    };
    for (ka, ca) in &va {
        for (kb, cb) in &vb {
            if ka == kb {
                continue;
            }
            let ab = lookup(&va, kb).unwrap_or_else(|| RatFun::zero(ca.ring()));
            let ba = lookup(&vb, ka).unwrap_or_else(|| RatFun::zero(ca.ring()));
            if !(&(ca * cb) - &(&ab * &ba)).is_zero() {
                return true;
            }
        }
    }
    false
}

/// The two-operator basis at the special parameter family: build both
/// normal-form expansions, check the closed-form boundary coefficients,
/// non-proportionality, and consistency with the distribution-kernel solver.
pub fn verify_multiplicity_two_basis(
    lambda0: &Rat,
    n1: u32,
    n2: u32,
    k0: u32,
    l0: u32,
) -> CheckReport {
    let name = format!("two-operator basis at (n1,n2,k0,l0)=({n1},{n2},{k0},{l0})");
    let anchor = format!("multiplicity-two/{n1}-{n2}-{k0}-{l0}");
    let p = crate::delta::multiplicity_two_params(
        &AffineForm::constant(lambda0.clone()),
        n1,
        n2,
        k0,
        l0,
        [0, 0, 0],
    );

    // first operator: the truncated-power composition, shifted across the
    // restriction by the matched small-group field.
    let b0 = expand_rest1_fd(n1 - l0 - 1, n2 - l0 - 1, &p.lambda);
    let lead = b0.coefficient(n1 - l0 - 1, n2 - l0 - 1, 0);
    let expect0 = &crate::poly::pochhammer_rat(&scalar::rat(-(n1 as i64)), n1 - l0 - 1)
        * &crate::poly::pochhammer_rat(&scalar::rat(-(n2 as i64)), n2 - l0 - 1);
    let lead_ok = lead.as_constant().map(|c| c == expect0).unwrap_or(false)
        && !num_traits::Zero::is_zero(&expect0);
    if !lead_ok {
        return CheckReport::new(
            &name,
            &anchor,
            false,
            format!("leading coefficient {lead} != {expect0}"),
        );
    }
    let op0 = b0.shift_c(l0 + 1);

    // second operator: renormalized limit of the full composition at the
    // column-swapped parameters, then extended by the middle field power.
    let rng = crate::expansion::expansion_ring();
    let sym = vec![
        AffineForm::var("l1"),
        AffineForm::var("l2"),
        AffineForm::var("l3"),
    ];
    let full = expand_rest1_fd(n1, k0, &sym);
    let poch = overall_scalar(&rng, &sym, n1, k0);
    let mut map = BTreeMap::new();
    map.insert("l1".to_string(), p.lambda[0].clone());
    map.insert("l2".to_string(), p.lambda[2].clone());
    map.insert("l3".to_string(), p.lambda[1].clone());
    let b1 = full
        .scale(&RatFun::from_poly(poch).inv())
        .substitute(&rng, &map);
    let a_k0 = b1.coefficient(n1 - k0, 0, k0);
    let expect1 = &crate::poly::pochhammer_rat(&scalar::rat((n1 - k0) as i64 + 1), k0)
        * &crate::poly::pochhammer_rat(&scalar::rat((n2 - k0) as i64 + 1), k0);
    let ak_ok = a_k0.as_constant().map(|c| c == expect1).unwrap_or(false);
    if !ak_ok {
        return CheckReport::new(
            &name,
            &anchor,
            false,
            format!("renormalized trailing coefficient {a_k0} != {expect1}"),
        );
    }
    let op1 = b1.append_b(n2 - k0);

    if op0.is_zero() || op1.is_zero() {
        return CheckReport::new(&name, &anchor, false, "an operator vanished".to_string());
    }
    if !independent(&op0, &op1) {
        return CheckReport::new(&name, &anchor, false, "operators proportional".to_string());
    }
    let (_, dim) = crate::delta::solve_kernels(&p, 1);
    if dim != 2 {
        return CheckReport::new(
            &name,
            &anchor,
            false,
            format!("solver dimension {dim} != 2"),
        );
    }
    CheckReport::new(&name, &anchor, true, String::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};

    #[test]
    fn restriction_identities_all_sizes() {
        for n in 2..=3usize {
            for k in 0..=n {
                for r in verify_restriction_identities(n, k) {
                    assert!(r.pass, "{}: {}", r.check, r.details);
                }
            }
        }
    }

    #[test]
    fn kernel_identities_symbolic_n2() {
        let p = InductionParams::symbolic(2);
        for i in 1..=3 {
            let r = verify_bernstein_sato(OpKind::D, i, &p);
            assert!(r.pass, "{}: {}", r.check, r.details);
            let r = verify_bernstein_sato(OpKind::F, i, &p);
            assert!(r.pass, "{}: {}", r.check, r.details);
        }
    }

    #[test]
    fn kernel_identities_numeric_point() {
        let p = InductionParams::numeric(
            2,
            &[ratq(1, 3), ratq(2, 5), rat(4)],
            &[ratq(9, 7), ratq(-3, 11)],
        );
        for i in 1..=3 {
            assert!(verify_bernstein_sato(OpKind::D, i, &p).pass);
            assert!(verify_bernstein_sato(OpKind::F, i, &p).pass);
        }
    }

    #[test]
    fn iterated_scalars_and_order_independence() {
        let mut p = InductionParams::symbolic(2);
        p = p.with_parities(vec![1, 0, 1], vec![0, 1]);
        for alpha in 2..=3 {
            for i in 1..=3 {
                assert!(verify_iterated_scalar(OpKind::D, i, alpha, &p).pass);
                assert!(verify_iterated_scalar(OpKind::F, i, alpha, &p).pass);
            }
        }
        for k in 0..=2usize {
            let alpha = [1u32, 2];
            let r = verify_order_independence(k, &alpha, &p);
            assert!(r.pass, "{}", r.details);
        }
    }

    #[test]
    fn jet_rewrite_identity() {
        assert!(verify_eps_h_rewrite().pass);
    }

    #[test]
    fn expansion_lemma_reports() {
        for n_pow in 1..=3u32 {
            for m_pow in 0..=3u32 {
                let r = verify_expansion_lemma(n_pow, m_pow);
                assert!(r.pass, "{}: {}", r.check, r.details);
            }
        }
    }

    #[test]
    fn multiplicity_two_instances() {
        for (n1, n2, k0, l0) in [(2u32, 2u32, 0u32, 1u32), (3, 2, 0, 1), (3, 3, 1, 2)] {
            let r = verify_multiplicity_two_basis(&rat(0), n1, n2, k0, l0);
            assert!(r.pass, "{}: {}", r.check, r.details);
        }
    }
}
