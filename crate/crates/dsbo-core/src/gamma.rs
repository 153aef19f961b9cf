//! Formal calculus of products of Γ(A/2)^±1 with affine arguments A:
//! canonicalization through the functional equation, c-functions and their
//! products over reduced words, the kernel normalizer γ and its residue
//! variant γ′, the e-functions, and the scalar factors of the
//! operator-composition identities.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use alloc::collections::BTreeMap;

use crate::affine::AffineForm;
use crate::params::{nu_k, InductionParams};
use crate::poly::{pochhammer, Ring};
use crate::ratfun::RatFun;
use crate::scalar::{is_natural, rat, ratq, to_i64};

/// Product of Γ(A/2)^{e_A} over affine forms A (stored on the doubled
/// scale), together with an exact rational-function prefactor and an
/// integer power of π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpr {
    ring: Ring,
    prefactor: RatFun,
    pi_pow: i64,
    factors: BTreeMap<AffineForm, i64>,
}

impl GammaExpr {
    pub fn one(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            prefactor: RatFun::one(ring),
            pi_pow: 0,
            factors: BTreeMap::new(),
        }
    }

    /// The single factor Γ(arg/2); `arg` lives on the doubled scale.
    pub fn gamma(ring: &Ring, arg: AffineForm) -> Self {
        let mut e = Self::one(ring);
        e.push(arg, 1);
        e
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn prefactor(&self) -> &RatFun {
        &self.prefactor
    }

    pub fn pi_pow(&self) -> i64 {
        self.pi_pow
    }

    pub fn factors(&self) -> impl Iterator<Item = (&AffineForm, &i64)> {
        self.factors.iter()
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_gamma_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    fn push(&mut self, arg: AffineForm, exp: i64) {
        use alloc::collections::btree_map::Entry;
        match self.factors.entry(arg) {
            Entry::Vacant(v) => {
                if exp != 0 {
                    v.insert(exp);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += exp;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &GammaExpr) -> Self {
        let mut out = self.clone();
        out.prefactor = &out.prefactor * &other.prefactor;
        out.pi_pow += other.pi_pow;
        for (a, e) in &other.factors {
            out.push(a.clone(), *e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        let mut out = Self::one(&self.ring);
        out.prefactor = self.prefactor.inv();
        out.pi_pow = -self.pi_pow;
        for (a, e) in &self.factors {
            out.factors.insert(a.clone(), -e);
        }
        out
    }

    pub fn div(&self, other: &GammaExpr) -> Self {
        self.mul(&other.inv())
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = self.clone();
        out.prefactor = &out.prefactor * c;
        out
    }

    pub fn scale_pi(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.pi_pow += k;
        out
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one(&self.ring);
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one(&self.ring);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Merge factors whose arguments differ by an even integer on the
    /// doubled scale, turning quotients Γ(x+m)/Γ(x) into rising factorials
    /// in the prefactor.  Each shift class keeps a single representative
    /// with the minimal constant term; idempotent.
    pub fn canonicalize(&self) -> Self {
        let mut groups: Vec<Vec<(AffineForm, i64)>> = Vec::new();
        'next: for (a, e) in &self.factors {
            for g in groups.iter_mut() {
                if let Some(d) = a.constant_difference(&g[0].0) {
                    // Same class iff the doubled arguments differ by an
                    // even integer.
                    let half = &d / &rat(2);
                    if half.is_integer() {
                        g.push((a.clone(), *e));
                        continue 'next;
                    }
                }
            }
            groups.push(vec![(a.clone(), *e)]);
        }

        let mut out = Self::one(&self.ring);
        out.prefactor = self.prefactor.clone();
        out.pi_pow = self.pi_pow;
        for g in groups {
            let rep = g
                .iter()
                .map(|(a, _)| a)
                .min_by(|a, b| a.constant_part().cmp(b.constant_part()))
                .unwrap()
                .clone();
            let half_rep = rep.scale(&ratq(1, 2));
            let mut net = 0i64;
            for (a, e) in g {
                let d = a.constant_difference(&rep).unwrap();
                let m = &d / &rat(2);
                debug_assert!(is_natural(&m));
                let m = to_i64(&m) as u32;
                if m > 0 {
                    // Γ(rep/2 + m) = (rep/2)_m Γ(rep/2).
                    let pm = RatFun::from_poly(pochhammer(&self.ring, &half_rep, m));
                    let pm = if e < 0 { pm.inv() } else { pm };
                    for _ in 0..e.unsigned_abs() {
                        out.prefactor = &out.prefactor * &pm;
                    }
                }
                net += e;
            }
            if net != 0 {
                out.factors.insert(rep, net);
            }
        }
        out
    }

    /// Equality of the canonical Γ-multisets, ignoring a prefactor and
    /// π-power: the notion of "up to a nonzero constant" used throughout.
    pub fn same_gamma_multiset(&self, other: &GammaExpr) -> bool {
        self.canonicalize().factors == other.canonicalize().factors
    }

    /// Canonicalized prefactor when no Γ-factors remain.
    pub fn as_ratfun(&self) -> Option<(RatFun, i64)> {
        let c = self.canonicalize();
        if c.is_gamma_free() {
            Some((c.prefactor, c.pi_pow))
        } else {
            None
        }
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.prefactor)?;
        if self.pi_pow != 0 {
            write!(f, " pi^{}", self.pi_pow)?;
        }
        for (a, e) in &self.factors {
            write!(f, " G(({})/2)^{}", a, e)?;
        }
        Ok(())
    }
}

/// Remainder mod 2 of a sum of parity bits plus an integer offset.
pub fn bracket(bits: &[u8], offset: i64) -> u8 {
    let s: i64 = bits.iter().map(|b| *b as i64).sum::<i64>() + offset;
    (s.rem_euclid(2)) as u8
}

/// One-step scalar of the intertwiner composed with its inverse, at the
/// simple transposition i (1-based):
/// (−1)^p π Γ((d+p)/2)Γ((−d+p)/2)/(Γ((d+1+p)/2)Γ((−d+1+p)/2)) with
/// d = λ_i−λ_{i+1} and p the parity bracket of ξ_i+ξ_{i+1}.
pub fn c_i(ring: &Ring, i: usize, xi: &[u8], lambda: &[AffineForm]) -> GammaExpr {
    let d = &lambda[i - 1] - &lambda[i];
    let p = bracket(&[xi[i - 1], xi[i]], 0);
    let pr = rat(p as i64);
    let mut e = GammaExpr::one(ring);
    e = e.scale_pi(1);
    if p == 1 {
        e = e.scale(&RatFun::int(ring, -1));
    }
    e = e.mul(&GammaExpr::gamma(ring, d.add_const(&pr)));
    e = e.mul(&GammaExpr::gamma(ring, (-&d).add_const(&pr)));
    e = e.mul(&GammaExpr::gamma(ring, d.add_const(&pr).add_int(1)).inv());
    e = e.mul(&GammaExpr::gamma(ring, (-&d).add_const(&pr).add_int(1)).inv());
    e
}

/// Apply the simple transposition i (1-based) to a parameter pair in place.
pub fn apply_letter(i: usize, xi: &mut [u8], lambda: &mut [AffineForm]) {
    xi.swap(i - 1, i);
    lambda.swap(i - 1, i);
}

/// Product of one-step scalars for σ given as a reduced word composed left
/// to right (σ = w_{i_1}⋯w_{i_ℓ} as functions).  The recursion
/// c_{w'w} = c_{w'}(w·)·c_w forces evaluation from the last letter inward:
/// the rightmost letter acts on the unmoved parameters.
pub fn c_function(ring: &Ring, word: &[usize], xi: &[u8], lambda: &[AffineForm]) -> GammaExpr {
    let mut xi = xi.to_vec();
    let mut lambda = lambda.to_vec();
    let mut out = GammaExpr::one(ring);
    for &i in word.iter().rev() {
        out = out.mul(&c_i(ring, i, &xi, &lambda));
        apply_letter(i, &mut xi, &mut lambda);
    }
    out
}

/// Act on parameters by a permutation in one-line notation (1-based):
/// output entry i is input entry w^{-1}(i).
pub fn permute(perm: &[usize], xi: &[u8], lambda: &[AffineForm]) -> (Vec<u8>, Vec<AffineForm>) {
    let m = perm.len();
    let mut xo = vec![0u8; m];
    let mut lo = vec![AffineForm::zero(); m];
    for i in 1..=m {
        // perm[i-1] = w(i), so slot w(i) receives entry i.
        xo[perm[i - 1] - 1] = xi[i - 1];
        lo[perm[i - 1] - 1] = lambda[i - 1].clone();
    }
    (xo, lo)
}

/// A reduced word for a permutation (one-line, 1-based): letters i mean the
/// adjacent transposition (i i+1), composed left to right.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut v = perm.to_vec();
    let mut rev = Vec::new();
    loop {
        let mut moved = false;
        for j in 0..v.len() - 1 {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                rev.push(j + 1);
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    rev.reverse();
    rev
}

/// The coset representative permutation at index k on n+1 letters:
/// 1..k fixed, k+1 ↦ n+1, and j ↦ j−1 for j ≥ k+2.
pub fn x_k_perm(n: usize, k: usize) -> Vec<usize> {
    let mut p = vec![0usize; n + 1];
    for i in 1..=n + 1 {
        p[i - 1] = if i <= k {
            i
        } else if i == k + 1 {
            n + 1
        } else {
            i - 1
        };
    }
    p
}

/// The order-reversing permutation on m letters.
pub fn w0_perm(m: usize) -> Vec<usize> {
    (1..=m).map(|i| m + 1 - i).collect()
}

/// The kernel normalizer with the first `skip` boundary factors removed:
/// ∏_{i+j≤n+1, (i,j)≠(i,n+1−i) for i≤skip} Γ((λ_i−ν_j+1/2+[ξ_i+η_j])/2)
/// × ∏_{i+j≥n+2} Γ((ν_j−λ_i+1/2+[η_j+ξ_i])/2).
pub fn gamma_general(
    ring: &Ring,
    xi: &[u8],
    lambda: &[AffineForm],
    eta: &[u8],
    nu: &[AffineForm],
    skip: usize,
) -> GammaExpr {
    let n = nu.len();
    assert_eq!(lambda.len(), n + 1);
    let half = ratq(1, 2);
    let mut out = GammaExpr::one(ring);
    for i in 1..=n + 1 {
        for j in 1..=n {
            let p = rat(bracket(&[xi[i - 1], eta[j - 1]], 0) as i64);
            if i + j <= n + 1 {
                if i <= skip && j == n + 1 - i {
                    continue;
                }
                let arg = (&lambda[i - 1] - &nu[j - 1]).add_const(&half).add_const(&p);
                out = out.mul(&GammaExpr::gamma(ring, arg));
            } else {
                let arg = (&nu[j - 1] - &lambda[i - 1]).add_const(&half).add_const(&p);
                out = out.mul(&GammaExpr::gamma(ring, arg));
            }
        }
    }
    out
}

/// The kernel normalizer γ.
pub fn gamma_normalizer(ring: &Ring, p: &InductionParams) -> GammaExpr {
    gamma_general(ring, &p.xi, &p.lambda, &p.eta, &p.nu, 0)
}

/// The e-function ∏_{i<j} Γ((λ_i−λ_j+1+[ξ_i+ξ_j])/2)^{-1} for either side.
pub fn e_function(ring: &Ring, xi: &[u8], lambda: &[AffineForm]) -> GammaExpr {
    let m = lambda.len();
    let mut out = GammaExpr::one(ring);
    for i in 1..m {
        for j in i + 1..=m {
            let p = rat(bracket(&[xi[i - 1], xi[j - 1]], 0) as i64);
            let arg = (&lambda[i - 1] - &lambda[j - 1]).add_int(1).add_const(&p);
            out = out.mul(&GammaExpr::gamma(ring, arg).inv());
        }
    }
    out
}

/// Which of the two composition-scalar families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsKind {
    /// ∏_j Γ-ratio in ν_j−λ_i.
    P,
    /// ∏_j Γ-ratio in λ_i−ν_j.
    Q,
}

/// Iterated composition scalar: for kind P,
/// ∏_j Γ((ν_j−λ_i+1/2+α+[ξ_i+η_j+α])/2)/Γ((ν_j−λ_i+1/2+[ξ_i+η_j])/2),
/// and the λ_i−ν_j analogue for kind Q.  Unspecified constants are 1.
pub fn bs_scalar(
    ring: &Ring,
    kind: BsKind,
    i: usize,
    alpha: u32,
    p: &InductionParams,
) -> GammaExpr {
    let n = p.n;
    assert!((1..=n + 1).contains(&i));
    let half = ratq(1, 2);
    let mut out = GammaExpr::one(ring);
    for j in 1..=n {
        let base = match kind {
            BsKind::P => &p.nu[j - 1] - &p.lambda[i - 1],
            BsKind::Q => &p.lambda[i - 1] - &p.nu[j - 1],
        };
        let p0 = rat(bracket(&[p.xi[i - 1], p.eta[j - 1]], 0) as i64);
        let pa = rat(bracket(&[p.xi[i - 1], p.eta[j - 1]], alpha as i64) as i64);
        let num = base.add_const(&half).add_int(alpha as i64).add_const(&pa);
        let den = base.add_const(&half).add_const(&p0);
        out = out.mul(&GammaExpr::gamma(ring, num));
        out = out.mul(&GammaExpr::gamma(ring, den).inv());
    }
    out
}

/// Assembles the scalar relating the normalized-kernel residue to the
/// restriction operator at index k with all parities zero, and checks it is
/// independent of the symbolic exponent vector.  Returns (is_free, scalar).
pub fn residue_scalar_check(n: usize, k: usize) -> (bool, GammaExpr) {
    let names: Vec<alloc::string::String> =
        (1..=n + 1).map(|i| alloc::format!("l{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = crate::poly::ring(&name_refs);

    let lambda: Vec<AffineForm> = names.iter().map(|s| AffineForm::var(s)).collect();
    let xi = vec![0u8; n + 1];
    let nu = nu_k(&lambda, k);
    let eta = vec![0u8; n];

    // Two functional-equation Γ-ratio products.
    let mut p1 = GammaExpr::one(&ring);
    for i in 1..n {
        for j in i + 1..=n {
            let d = &nu[i - 1] - &nu[j - 1];
            p1 = p1.mul(&GammaExpr::gamma(&ring, d.add_int(1)));
            p1 = p1.mul(&GammaExpr::gamma(&ring, -&d).inv());
        }
    }
    let mut p2 = GammaExpr::one(&ring);
    for i in k + 2..=n + 1 {
        let d = &lambda[i - 1] - &lambda[k];
        p2 = p2.mul(&GammaExpr::gamma(&ring, d.add_int(1)));
        p2 = p2.mul(&GammaExpr::gamma(&ring, -&d).inv());
    }

    // Intertwiner round-trip scalars over reduced words.
    let gk_h = c_function(&ring, &reduced_word(&w0_perm(n)), &eta, &nu);
    let gk_g = c_function(&ring, &reduced_word(&x_k_perm(n, k)), &xi, &lambda);

    // Residue normalizer at the permuted parameters.
    let (xt, lt) = permute(&x_k_perm(n, k), &xi, &lambda);
    let (et, vt) = permute(&w0_perm(n), &eta, &nu);
    let gp = gamma_general(&ring, &xt, &lt, &et, &vt, k);

    let e_g = e_function(&ring, &xi, &lambda);
    let neg_nu: Vec<AffineForm> = nu.iter().map(|a| -a).collect();
    let e_h = e_function(&ring, &eta, &neg_nu);

    let s = p1
        .mul(&p2)
        .mul(&gk_h)
        .mul(&gk_g)
        .div(&gp)
        .div(&e_g)
        .div(&e_h)
        .canonicalize();
    let free = s.factors.iter().all(|(a, _)| a.is_constant())
        && s.prefactor.as_constant().is_some();
    (free, s)
}

/// The integer exponent shifts (λ′, ν′) induced by multiplying the
/// parity-matching minor powers onto the even vector.
pub fn nonspherical_shift(p: &InductionParams) -> (Vec<AffineForm>, Vec<AffineForm>) {
    let n = p.n;
    // Padded accessors with η_0 = 0 and ξ_{n+2} = 0.
    let xi = |i: usize| if i <= n + 1 { p.xi[i - 1] } else { 0 };
    let eta = |i: usize| if i >= 1 { p.eta[i - 1] } else { 0 };
    let mut lp = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        let mut shift = 0i64;
        for k in i..=n + 1 {
            shift += bracket(&[xi(k), eta(n + 1 - k)], 0) as i64;
            shift += bracket(&[eta(n + 1 - k), xi(k + 1)], 0) as i64;
        }
        lp.push(p.lambda[i - 1].add_int(shift));
    }
    let mut vp = Vec::with_capacity(n);
    for i in 1..=n {
        let mut shift = 0i64;
        for k in n + 1 - i..=n {
            shift += bracket(&[eta(n + 1 - k), xi(k + 1)], 0) as i64;
            shift += bracket(&[xi(k + 1), eta(n - k)], 0) as i64;
        }
        vp.push(p.nu[i - 1].add_int(shift));
    }
    (lp, vp)
}

/// Canonicalized ratio of the even-parity normalizer at the shifted
/// exponents to the normalizer at the given parameters.
pub fn gamma_ratio(ring: &Ring, p: &InductionParams) -> GammaExpr {
    let (lp, vp) = nonspherical_shift(p);
    let num = gamma_general(ring, &vec![0; p.n + 1], &lp, &vec![0; p.n], &vp, 0);
    let den = gamma_normalizer(ring, p);
    num.div(&den).canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring;

    fn r2() -> Ring {
        ring(&["x", "y"])
    }

    #[test]
    fn canonicalize_functional_equation() {
        let rg = r2();
        let x = AffineForm::var("x");
        // Γ(x/2+1)/Γ(x/2) => x/2, stored as doubled args x+2 over x.
        let e = GammaExpr::gamma(&rg, x.add_int(2)).div(&GammaExpr::gamma(&rg, x.clone()));
        let c = e.canonicalize();
        assert!(c.is_gamma_free());
        assert_eq!(c.prefactor, RatFun::var(&rg, "x").scale(&ratq(1, 2)));

        // Γ(x/2+2)/Γ(x/2) => (x/2)(x/2+1).
        let e2 = GammaExpr::gamma(&rg, x.add_int(4)).div(&GammaExpr::gamma(&rg, x.clone()));
        let c2 = e2.canonicalize();
        let expect = {
            let h = RatFun::var(&rg, "x").scale(&ratq(1, 2));
            &h * &(&h + &RatFun::one(&rg))
        };
        assert!(c2.is_gamma_free());
        assert_eq!(c2.prefactor, expect);

        // Odd shifts stay separate: Γ((x+1)/2)/Γ(x/2) is irreducible.
        let e3 = GammaExpr::gamma(&rg, x.add_int(1)).div(&GammaExpr::gamma(&rg, x.clone()));
        assert_eq!(e3.canonicalize().num_factors(), 2);

        // Idempotence.
        let c3 = e2.canonicalize();
        assert_eq!(c3.canonicalize(), c3);
    }

    #[test]
    fn reduced_words_are_reduced() {
        for (perm, len) in [
            (vec![1usize, 2, 3], 0usize),
            (vec![2, 1, 3], 1),
            (vec![3, 2, 1], 3),
            (vec![3, 1, 2], 2),
            (vec![2, 3, 4, 1], 3),
        ] {
            let w = reduced_word(&perm);
            assert_eq!(w.len(), len, "{perm:?}");
            // Recompose left to right: right-multiplying by the adjacent
            // transposition (i i+1) swaps one-line positions i, i+1.
            let m = perm.len();
            let mut v: Vec<usize> = (1..=m).collect();
            for &i in &w {
                v.swap(i - 1, i);
            }
            assert_eq!(v, perm, "word {w:?}");
        }
    }

    #[test]
    fn permutation_action_convention() {
        let lam: Vec<AffineForm> =
            ["a", "b", "c"].iter().map(|s| AffineForm::var(s)).collect();
        let xi = [1u8, 0, 1];
        let (x2, l2) = permute(&x_k_perm(2, 0), &xi, &lam);
        // x_0: 1↦3, 2↦1, 3↦2, so the new first entry is the old second.
        assert_eq!(l2, vec![lam[1].clone(), lam[2].clone(), lam[0].clone()]);
        assert_eq!(x2, vec![0, 1, 1]);
    }

    #[test]
    fn c_function_word_composition() {
        // Two-letter word versus the product of the step scalars.
        let rg = ring(&["l1", "l2", "l3"]);
        let lam: Vec<AffineForm> =
            ["l1", "l2", "l3"].iter().map(|s| AffineForm::var(s)).collect();
        let xi = [0u8, 1, 0];
        let word = [1usize, 2];
        let whole = c_function(&rg, &word, &xi, &lam);
        // Last letter first: c_2 at the base point, then c_1 moved by w_2.
        let step2 = c_i(&rg, 2, &xi, &lam);
        let mut xi2 = xi;
        let mut lam2 = lam.clone();
        apply_letter(2, &mut xi2, &mut lam2);
        let step1 = c_i(&rg, 1, &xi2, &lam2);
        assert_eq!(whole, step2.mul(&step1));
        assert_eq!(whole.pi_pow(), 2);
    }

    #[test]
    fn normalizer_factor_count() {
        let rg = ring(&["l1", "l2", "l3", "v1", "v2"]);
        let p = InductionParams::symbolic(2);
        let g = gamma_normalizer(&rg, &p);
        assert_eq!(g.num_factors(), 6);
    }

    #[test]
    fn residue_scalar_all_k() {
        for (n, k) in [(1, 0), (1, 1), (2, 1), (3, 0), (3, 1), (3, 2), (3, 3)] {
            let (free, s) = residue_scalar_check(n, k);
            assert!(free, "n={n} k={k}: {s}");
        }
    }

    #[test]
    fn residue_scalar_small_cases() {
        let (free1, s1) = residue_scalar_check(1, 1);
        assert!(free1, "{s1}");
        let (free2, s2) = residue_scalar_check(2, 2);
        assert!(free2, "{s2}");
        assert_eq!(s2.pi_pow(), 1);
        let (free0, s0) = residue_scalar_check(2, 0);
        assert!(free0, "{s0}");
    }

    #[test]
    fn bs_scalar_base_case() {
        // α=1, parities zero: kind P canonicalizes to ∏_j (ν_j−λ_i+1/2)/2.
        let rg = ring(&["l1", "l2", "l3", "v1", "v2"]);
        let p = InductionParams::symbolic(2);
        let s = bs_scalar(&rg, BsKind::P, 1, 1, &p);
        let (pref, pi) = s.as_ratfun().expect("gamma-free");
        assert_eq!(pi, 0);
        let term = |j: usize| {
            RatFun::from_affine(
                &rg,
                &(&AffineForm::var(&alloc::format!("v{j}")) - &AffineForm::var("l1"))
                    .add_const(&ratq(1, 2))
                    .scale(&ratq(1, 2)),
            )
        };
        assert_eq!(pref, &term(1) * &term(2));
        // α=0 is the empty product.
        let s0 = bs_scalar(&rg, BsKind::Q, 2, 0, &p);
        assert!(s0.as_ratfun().unwrap().0.is_one());
    }

    #[test]
    fn bs_scalar_composes() {
        // Multiset identity: scalar at α+β equals scalar at α times the
        // scalar at β with λ_i moved by α (kind Q) resp. the full shift
        // (kind P).
        let rg = ring(&["l1", "l2", "l3", "v1", "v2"]);
        let p = InductionParams::symbolic(2);
        for (a, b) in [(1u32, 1u32), (2, 1), (1, 3)] {
            let whole = bs_scalar(&rg, BsKind::Q, 3, a + b, &p);
            let first = bs_scalar(&rg, BsKind::Q, 3, a, &p);
            let mut shifted = p.clone();
            shifted.lambda[2] = shifted.lambda[2].add_int(a as i64);
            shifted.xi[2] = (shifted.xi[2] + a as u8) % 2;
            let second = bs_scalar(&rg, BsKind::Q, 3, b, &shifted);
            assert!(whole.same_gamma_multiset(&first.mul(&second)), "{a},{b}");

            let whole_p = bs_scalar(&rg, BsKind::P, 1, a + b, &p);
            let first_p = bs_scalar(&rg, BsKind::P, 1, a, &p);
            let mut sp = p.clone();
            for v in sp.nu.iter_mut() {
                *v = v.add_int(a as i64);
            }
            for e in sp.eta.iter_mut() {
                *e = (*e + a as u8) % 2;
            }
            let second_p = bs_scalar(&rg, BsKind::P, 1, b, &sp);
            assert!(whole_p.same_gamma_multiset(&first_p.mul(&second_p)), "{a},{b}");
        }
    }

    #[test]
    fn gamma_ratio_is_polynomial() {
        let rg = ring(&["l1", "l2", "l3", "v1", "v2"]);
        for (xi, eta) in [
            (vec![1u8, 0, 0], vec![0u8, 0]),
            (vec![0, 1, 0], vec![1, 0]),
            (vec![1, 1, 1], vec![1, 1]),
            (vec![0, 0, 1], vec![0, 1]),
        ] {
            let p = InductionParams::symbolic(2).with_parities(xi.clone(), eta.clone());
            let r = gamma_ratio(&rg, &p);
            assert!(r.is_gamma_free(), "xi={xi:?} eta={eta:?}: {r}");
            assert!(
                r.prefactor().den().as_constant().is_some(),
                "xi={xi:?} eta={eta:?}: {r}"
            );
        }
    }
}
