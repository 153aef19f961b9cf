//! Normal-form expansion of restricted mixed compositions at n = 2.
//!
//! After restriction to the middle orbit, a composition of the two source
//! operators collapses onto the span of `rest o A^a B^b C^c` where A, B, C
//! are the three lower-triangular vector fields.  This module rewrites such
//! compositions into that basis with exact rational-function coefficients,
//! threading the parameter shifts exactly as the operator powers do.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::affine::AffineForm;
use crate::covariant::Context;
use crate::poly::{ring, Polynomial, Ring};
use crate::ratfun::RatFun;
use crate::scalar::Rat;
use crate::weyl::{shift_d, shift_f, WeylElement};

/// Coefficient ring for expansions: a free family parameter plus the three
/// inducing parameters.
pub fn expansion_ring() -> Ring {
    ring(&["l0", "l1", "l2", "l3"])
}

/// The three normal-form letters: A = eps^{2,1}, B = eps^{3,2}, C = eps^{3,1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub fn indices(self) -> (usize, usize) {
        match self {
            Letter::A => (2, 1),
            Letter::B => (3, 2),
            Letter::C => (3, 1),
        }
    }
}

/// Identifier of a covariant multiplier appearing in the source operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CovId {
    Phi(usize),
    Psi(usize),
}

impl CovId {
    pub fn polynomial(self, ctx: &Context) -> Polynomial {
        match self {
            CovId::Phi(i) => ctx.phi(i),
            CovId::Psi(i) => ctx.psi(i),
        }
    }
}

/// Action table of the three letters on the covariants, derived from the
/// defining polynomials: entry `(letter, cov)` is `Some((cov', scale))` when
/// `letter(cov) = scale * cov'`, absent when the derivative vanishes.
pub fn eps_action_table(ctx: &Context) -> BTreeMap<(Letter, CovId), (CovId, Rat)> {
    assert_eq!(ctx.n, 2);
    let candidates: Vec<CovId> = (1..=3)
        .map(CovId::Phi)
        .chain((1..=3).map(CovId::Psi))
        .collect();
    let mut table = BTreeMap::new();
    for &letter in &[Letter::A, Letter::B, Letter::C] {
        let (i, j) = letter.indices();
        for &cov in &candidates {
            let p = cov.polynomial(ctx);
            let mut image = Polynomial::zero(&ctx.ring);
            for k in 1..=3 {
                let mut exp = vec![0u32; ctx.ring.len()];
                exp[ctx.g_index(k, i)] = 1;
                let gki = Polynomial::monomial(&ctx.ring, exp, Rat::one());
                image = &image + &(&gki * &p.derivative(ctx.g_index(k, j)));
            }
            if image.is_zero() {
                continue;
            }
            let matched = candidates.iter().find_map(|&cand| {
                let q = cand.polynomial(ctx);
                let (em_p, c_p) = image.leading_term().unwrap();
                let (em_q, c_q) = q.leading_term().unwrap();
                if em_p != em_q {
                    return None;
                }
                let ratio = c_p / c_q;
                if image == q.scale(&ratio) {
                    Some((cand, ratio))
                } else {
                    None
                }
            });
            let hit = matched.expect("letter image must be a catalogued covariant");
            table.insert((letter, cov), hit);
        }
    }
    table
}

/// Append one letter on the right of a normal-ordered word `A^a B^b C^c`,
/// re-normal-ordering with `B^b A = A B^b + b B^{b-1} C` (C is central).
fn append_letter(word: (u32, u32, u32), letter: Letter) -> Vec<((u32, u32, u32), Rat)> {
    let (a, b, c) = word;
    match letter {
        Letter::A => {
            let mut out = vec![((a + 1, b, c), Rat::one())];
            if b > 0 {
                out.push(((a, b - 1, c + 1), crate::scalar::rat(b as i64)));
            }
            out
        }
        Letter::B => vec![((a, b + 1, c), Rat::one())],
        Letter::C => vec![((a, b, c + 1), Rat::one())],
    }
}

/// Commute a covariant multiplier leftwards through the word: each letter
/// either stays (and is re-appended on the right of the surviving subword)
/// or acts on the covariant as a derivation.
fn push_cov(
    word: (u32, u32, u32),
    cov: CovId,
    table: &BTreeMap<(Letter, CovId), (CovId, Rat)>,
) -> Vec<((u32, u32, u32), CovId, Rat)> {
    let (a, b, c) = word;
    if (a, b, c) == (0, 0, 0) {
        return vec![((0, 0, 0), cov, Rat::one())];
    }
    let (prefix, letter) = if c > 0 {
        ((a, b, c - 1), Letter::C)
    } else if b > 0 {
        ((a, b - 1, 0), Letter::B)
    } else {
        ((a - 1, 0, 0), Letter::A)
    };
    let mut out = Vec::new();
    for (w, n, r) in push_cov(prefix, cov, table) {
        for (w2, r2) in append_letter(w, letter) {
            out.push((w2, n, &r * &r2));
        }
    }
    if let Some((cov2, s)) = table.get(&(letter, cov)) {
        for (w, n, r) in push_cov(prefix, *cov2, table) {
            out.push((w, n, &r * s));
        }
    }
    out
}

/// One source-operator factor, written as a sum of
/// `coeff * covariant * letter-word` with the letters in composition order.
pub struct Factor {
    terms: Vec<(CovId, Vec<Letter>, RatFun)>,
    adds_det: bool,
}

fn lam_diff(ring: &Ring, lambda: &[AffineForm], i: usize, j: usize) -> RatFun {
    let a = (&lambda[i - 1] - &lambda[j - 1]).add_int(-1);
    RatFun::from_affine(ring, &a)
}

/// The third operator of the first family at n = 2, as covariant/word terms.
pub fn d3_factor(ring: &Ring, lambda: &[AffineForm]) -> Factor {
    let l31 = lam_diff(ring, lambda, 3, 1);
    let l32 = lam_diff(ring, lambda, 3, 2);
    Factor {
        terms: vec![
            (CovId::Phi(1), vec![Letter::A, Letter::B], RatFun::one(ring)),
            (CovId::Phi(1), vec![Letter::C], -&l32),
            (CovId::Phi(2), vec![Letter::B], -&l31),
            (CovId::Phi(3), vec![], &l31 * &l32),
        ],
        adds_det: false,
    }
}

/// The first operator of the second family at n = 2.
pub fn f1_factor(ring: &Ring, lambda: &[AffineForm]) -> Factor {
    let l21 = lam_diff(ring, lambda, 2, 1);
    let l31 = lam_diff(ring, lambda, 3, 1);
    Factor {
        terms: vec![
            (CovId::Psi(3), vec![Letter::B, Letter::A], RatFun::one(ring)),
            (CovId::Psi(3), vec![Letter::C], l21.clone()),
            (CovId::Psi(2), vec![Letter::A], -&l31),
            (CovId::Psi(1), vec![], &l31 * &l21),
        ],
        adds_det: true,
    }
}

/// A restricted operator `det^p * sum coeff_{abc} rest o A^a B^b C^c`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormExpansion {
    ring: Ring,
    det_pow: u32,
    terms: BTreeMap<(u32, u32, u32), RatFun>,
}

impl NormalFormExpansion {
    pub fn identity(ring: &Ring) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0, 0), RatFun::one(ring));
        NormalFormExpansion {
            ring: ring.clone(),
            det_pow: 0,
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn det_pow(&self) -> u32 {
        self.det_pow
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &RatFun)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: u32, b: u32, c: u32) -> RatFun {
        self.terms
            .get(&(a, b, c))
            .cloned()
            .unwrap_or_else(|| RatFun::zero(&self.ring))
    }

    fn add_term(&mut self, key: (u32, u32, u32), c: RatFun) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| RatFun::zero(&self.ring));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = NormalFormExpansion {
            ring: self.ring.clone(),
            det_pow: self.det_pow,
            terms: BTreeMap::new(),
        };
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.det_pow, other.det_pow);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, -v);
        }
        out
    }

    /// Compose on the right with one source-operator factor, restricting the
    /// surviving covariant immediately.
    pub fn compose_factor(
        &self,
        factor: &Factor,
        table: &BTreeMap<(Letter, CovId), (CovId, Rat)>,
    ) -> Self {
        let mut out = NormalFormExpansion {
            ring: self.ring.clone(),
            det_pow: self.det_pow + if factor.adds_det { 1 } else { 0 },
            terms: BTreeMap::new(),
        };
        for (&word, coeff) in &self.terms {
            for (cov, letters, fcoeff) in &factor.terms {
                for (subword, survivor, pc) in push_cov(word, *cov, table) {
                    // restriction values: the middle covariant of each family
                    // restricts to 1 resp. det; the others vanish.
                    match survivor {
                        CovId::Phi(2) => assert!(!factor.adds_det),
                        CovId::Psi(2) => assert!(factor.adds_det),
                        _ => continue,
                    }
                    let mut partial: Vec<((u32, u32, u32), Rat)> = vec![(subword, pc.clone())];
                    for &letter in letters {
                        let mut next = Vec::new();
                        for (w, r) in &partial {
                            for (w2, r2) in append_letter(*w, letter) {
                                next.push((w2, r * &r2));
                            }
                        }
                        partial = next;
                    }
                    let base = &(coeff * fcoeff);
                    for (w, r) in partial {
                        out.add_term(w, base.scale(&r));
                    }
                }
            }
        }
        out
    }

    /// Substitute an affine map into every coefficient (e.g. specialize the
    /// inducing parameters into a one-parameter family).
    pub fn substitute(&self, target: &Ring, map: &BTreeMap<String, AffineForm>) -> Self {
        let mut out = NormalFormExpansion {
            ring: target.clone(),
            det_pow: self.det_pow,
            terms: BTreeMap::new(),
        };
        for (k, v) in &self.terms {
            out.add_term(*k, v.substitute_affine(target, map));
        }
        out
    }

    /// Divide every coefficient exactly by a polynomial scalar; `None` when
    /// some coefficient is not a polynomial multiple of it.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Self> {
        let mut out = NormalFormExpansion {
            ring: self.ring.clone(),
            det_pow: self.det_pow,
            terms: BTreeMap::new(),
        };
        for (k, v) in &self.terms {
            let p = v.as_polynomial()?;
            out.add_term(*k, RatFun::from_poly(p.div_exact(d)?));
        }
        Some(out)
    }

    /// Left composition with the q-th power of the small-group vector field
    /// matched by C under restriction: shifts every word by C^q.  The field
    /// annihilates det, so the det power is unaffected.
    pub fn shift_c(&self, q: u32) -> Self {
        let mut out = NormalFormExpansion {
            ring: self.ring.clone(),
            det_pow: self.det_pow,
            terms: BTreeMap::new(),
        };
        for (&(a, b, c), v) in &self.terms {
            out.add_term((a, b, c + q), v.clone());
        }
        out
    }

    /// Right composition with B^q: appends B^q to every word exactly.
    pub fn append_b(&self, q: u32) -> Self {
        let mut out = NormalFormExpansion {
            ring: self.ring.clone(),
            det_pow: self.det_pow,
            terms: BTreeMap::new(),
        };
        for (&(a, b, c), v) in &self.terms {
            out.add_term((a, b + q, c), v.clone());
        }
        out
    }
}

/// Expand `rest_1 o F_1^{n_pow} o D_3^{m_pow}` with the parameter threaded
/// right to left starting from `lambda` (components over the expansion ring).
pub fn expand_rest1_fd(
    n_pow: u32,
    m_pow: u32,
    lambda: &[AffineForm],
) -> NormalFormExpansion {
    assert_eq!(lambda.len(), 3);
    let rng = expansion_ring();
    let ctx = Context::new(2);
    let table = eps_action_table(&ctx);
    let mut seq: Vec<Factor> = Vec::new();
    let mut cur = lambda.to_vec();
    for _ in 0..m_pow {
        seq.push(d3_factor(&rng, &cur));
        cur = shift_d(&cur, 3);
    }
    for _ in 0..n_pow {
        seq.push(f1_factor(&rng, &cur));
        cur = shift_f(&cur, 1);
    }
    let mut x = NormalFormExpansion::identity(&rng);
    for factor in seq.iter().rev() {
        x = x.compose_factor(factor, &table);
    }
    x
}

/// The scalar prefactor of the expansion: the rising factorial of length
/// `n_pow` starting at `lambda_1 - lambda_3 + 1 + m_pow`.
pub fn overall_scalar(
    rng: &Ring,
    lambda: &[AffineForm],
    n_pow: u32,
    m_pow: u32,
) -> Polynomial {
    let base = (&lambda[0] - &lambda[2]).add_int(1 + m_pow as i64);
    crate::poly::pochhammer(rng, &base, n_pow)
}

/// The word `A^a B^b C^c` as a concrete operator, for cross-checks.
pub fn word_weyl(ctx: &Context, word: (u32, u32, u32)) -> WeylElement {
    let (a, b, c) = word;
    let mut acc = WeylElement::one(ctx);
    for (letter, count) in [(Letter::A, a), (Letter::B, b), (Letter::C, c)] {
        let (i, j) = letter.indices();
        for _ in 0..count {
            acc = acc.mul(&WeylElement::epsilon(ctx, i, j));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pochhammer;
    use crate::weyl::build_l;
    use alloc::string::ToString;

    fn sym_lambda() -> Vec<AffineForm> {
        vec![
            AffineForm::var("l1"),
            AffineForm::var("l2"),
            AffineForm::var("l3"),
        ]
    }

    #[test]
    fn letter_actions_on_covariants() {
        let ctx = Context::new(2);
        let table = eps_action_table(&ctx);
        let one = Rat::one();
        // first family: each letter raises the matching index.
        assert_eq!(table[&(Letter::A, CovId::Phi(1))], (CovId::Phi(2), one.clone()));
        assert_eq!(table[&(Letter::B, CovId::Phi(2))], (CovId::Phi(3), one.clone()));
        assert_eq!(table[&(Letter::C, CovId::Phi(1))], (CovId::Phi(3), one.clone()));
        // second family, with the sign fixed by the defining minors.
        assert_eq!(table[&(Letter::A, CovId::Psi(2))], (CovId::Psi(1), one.clone()));
        assert_eq!(table[&(Letter::B, CovId::Psi(3))], (CovId::Psi(2), one.clone()));
        assert_eq!(table[&(Letter::C, CovId::Psi(3))], (CovId::Psi(1), -&one));
        // every other pair vanishes.
        assert_eq!(table.len(), 6);
    }

    #[test]
    fn single_factors_collapse_to_one_term() {
        let rng = expansion_ring();
        let lam = sym_lambda();
        let expect = RatFun::from_affine(&rng, &(&(&lam[0] - &lam[2])).add_int(1));

        let d = expand_rest1_fd(0, 1, &lam);
        assert_eq!(d.det_pow(), 0);
        assert_eq!(d.terms().count(), 1);
        assert_eq!(d.coefficient(0, 1, 0), expect);

        let f = expand_rest1_fd(1, 0, &lam);
        assert_eq!(f.det_pow(), 1);
        assert_eq!(f.terms().count(), 1);
        assert_eq!(f.coefficient(1, 0, 0), expect);
    }

    #[test]
    fn matches_full_operator_composition() {
        let ctx = Context::new(2);
        let lam_ctx = ctx.lambda_vec();
        let rng = expansion_ring();
        // map the expansion ring into the context ring (the free family
        // parameter is unused here).
        let mut down = BTreeMap::new();
        down.insert("l0".to_string(), AffineForm::zero());

        // dense test jet with distinct prime-ish coefficients.
        let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23];
        let mut lin = Polynomial::zero(&ctx.ring);
        for i in 1..=3usize {
            for j in 1..=3usize {
                let mut exp = vec![0u32; ctx.ring.len()];
                exp[ctx.g_index(i, j)] = 1;
                lin = &lin
                    + &Polynomial::monomial(
                        &ctx.ring,
                        exp,
                        crate::scalar::rat(primes[(i - 1) * 3 + (j - 1)]),
                    );
            }
        }

        let det_restricted = ctx.det_h();
        // jet degree: faithful (order + 1) for the one-factor cases, a
        // moderate truncation for the two- and three-factor cases.
        for (n_pow, m_pow, deg) in [
            (1u32, 0u32, 3u32),
            (0, 1, 3),
            (1, 1, 5),
            (0, 2, 5),
            (2, 1, 4),
            (1, 2, 4),
        ] {
            let full = build_l(&ctx, 1, &[n_pow, m_pow], &lam_ctx);
            let exp = expand_rest1_fd(n_pow, m_pow, &sym_lambda());
            let jet = lin.pow(deg);

            let lhs = ctx.restrict_poly(1, &full.apply_to_polynomial(&ctx, &jet));
            let mut rhs = Polynomial::zero(&ctx.ring);
            for (&word, coeff) in exp.terms() {
                let c = coeff
                    .as_polynomial()
                    .expect("polynomial coefficient")
                    .substitute_affine(&ctx.ring, &down);
                let acted = word_weyl(&ctx, word).apply_to_polynomial(&ctx, &jet);
                rhs = &rhs + &(&c * &ctx.restrict_poly(1, &acted));
            }
            let _ = &rng;
            rhs = &rhs * &det_restricted.pow(exp.det_pow());
            assert_eq!(lhs, rhs, "mismatch at powers ({n_pow},{m_pow})");
        }
    }

    #[test]
    fn expansion_coefficient_formulas() {
        let rng = expansion_ring();
        let lam = sym_lambda();
        let l13 = &lam[0] - &lam[2];
        let l23 = &lam[1] - &lam[2];
        for n_pow in 1u32..=3 {
            for m_pow in 0u32..=3 {
                let exp = expand_rest1_fd(n_pow, m_pow, &lam);
                assert_eq!(exp.det_pow(), n_pow);
                let top = n_pow.min(m_pow);
                for (&(a, b, c), _) in exp.terms() {
                    assert!(c <= top && a == n_pow - c && b == m_pow - c);
                }
                let overall =
                    RatFun::from_poly(overall_scalar(&rng, &lam, n_pow, m_pow));
                // leading coefficient of the expansion.
                let a0 = &exp.coefficient(n_pow, m_pow, 0) / &overall;
                let a0_expect = RatFun::from_poly(pochhammer(
                    &rng,
                    &l13.add_int(n_pow as i64 + 1),
                    m_pow,
                ));
                assert_eq!(a0, a0_expect);
                // trailing coefficient, available when m <= n.
                if m_pow <= n_pow {
                    let margin = crate::poly::pochhammer(
                        &rng,
                        &AffineForm::from_int((n_pow - m_pow) as i64 + 1),
                        m_pow,
                    )
                    .as_constant()
                    .unwrap();
                    let am = &exp.coefficient(n_pow - m_pow, 0, m_pow) / &overall;
                    let am_expect = RatFun::from_poly(pochhammer(
                        &rng,
                        &l23.add_int(1),
                        m_pow,
                    ))
                    .scale(&margin);
                    assert_eq!(am, am_expect);
                }
                if m_pow == 0 {
                    assert_eq!(exp.terms().count(), 1);
                    let c = exp.coefficient(n_pow, 0, 0);
                    assert_eq!(
                        c,
                        RatFun::from_poly(pochhammer(&rng, &l13.add_int(1), n_pow))
                    );
                }
            }
        }
    }
}
