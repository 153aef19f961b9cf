//! The Weyl algebra on the (n+1) x (n+1) matrix entries: normal-ordered
//! elements, the distinguished vector fields, column-ordered determinants
//! of operator matrices, and the two families of source operators together
//! with their parameter-shifted powers and mixed compositions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::affine::AffineForm;
use crate::covariant::{permutations, Context};
use crate::poly::Polynomial;
use crate::ratfun::RatFun;
use crate::scalar::{self, Rat};

/// A normal-ordered element `sum coeff * g^A d^B` with multiplication
/// operators written to the left of derivatives.  Exponent vectors are
/// flattened (n+1) x (n+1) matrices; coefficients are rational functions
/// of the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<(Vec<u32>, Vec<u32>), RatFun>,
}

impl WeylElement {
    pub fn zero(ctx: &Context) -> Self {
        WeylElement {
            n: ctx.n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::scalar(ctx, RatFun::one(&ctx.ring))
    }

    pub fn scalar(ctx: &Context, c: RatFun) -> Self {
        let mut w = Self::zero(ctx);
        let size = (ctx.n + 1) * (ctx.n + 1);
        if !c.is_zero() {
            w.terms.insert((vec![0; size], vec![0; size]), c);
        }
        w
    }

    pub fn from_affine(ctx: &Context, a: &AffineForm) -> Self {
        Self::scalar(ctx, RatFun::from_affine(&ctx.ring, a))
    }

    /// The multiplication operator by a polynomial in the matrix entries
    /// (coefficients may involve parameters).
    pub fn mult_op(ctx: &Context, p: &Polynomial) -> Self {
        let size = (ctx.n + 1) * (ctx.n + 1);
        let g_ring_indices = ctx.g_ring_indices();
        let mut w = Self::zero(ctx);
        for (exp, coeff) in p.terms() {
            let mut gexp = vec![0u32; size];
            let mut rest = exp.clone();
            for (flat, &ri) in g_ring_indices.iter().enumerate() {
                gexp[flat] = exp[ri];
                rest[ri] = 0;
            }
            let coeff_poly = Polynomial::monomial(&ctx.ring, rest, coeff.clone());
            w.add_term(
                (gexp, vec![0; size]),
                RatFun::from_poly(coeff_poly),
            );
        }
        w
    }

    /// The single derivative d/d g_{ij}.
    pub fn partial(ctx: &Context, i: usize, j: usize) -> Self {
        let size = (ctx.n + 1) * (ctx.n + 1);
        let mut dexp = vec![0u32; size];
        dexp[ctx.g_flat(i, j)] = 1;
        let mut w = Self::zero(ctx);
        w.terms
            .insert((vec![0; size], dexp), RatFun::one(&ctx.ring));
        w
    }

    /// The vector field `eps^{i,j} = sum_k g_{ki} d/d g_{kj}`.
    pub fn epsilon(ctx: &Context, i: usize, j: usize) -> Self {
        let size = (ctx.n + 1) * (ctx.n + 1);
        let mut w = Self::zero(ctx);
        for k in 1..=ctx.n + 1 {
            let mut gexp = vec![0u32; size];
            let mut dexp = vec![0u32; size];
            gexp[ctx.g_flat(k, i)] = 1;
            dexp[ctx.g_flat(k, j)] = 1;
            w.terms.insert((gexp, dexp), RatFun::one(&ctx.ring));
        }
        w
    }

    /// The signed variant `(-1)^{i+j+1} eps^{i,j}`.
    pub fn epsilon_tilde(ctx: &Context, i: usize, j: usize) -> Self {
        let sign = if (i + j + 1) % 2 == 0 { 1 } else { -1 };
        Self::epsilon(ctx, i, j).scale_rat(&scalar::rat(sign))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, Vec<u32>), &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (Vec<u32>, Vec<u32>), c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &WeylElement) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_rat(&scalar::rat(-1))
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        WeylElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return WeylElement {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        WeylElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// Normal-ordered product (operator composition: `self` after `other`
    /// ... i.e. `self * other` acts as `self(other(f))`).
    pub fn mul(&self, other: &WeylElement) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = WeylElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let coeff = c1 * c2;
                // d^b g^c = sum_k prod_e C(b_e,k_e) C(c_e,k_e) k_e! g^{c-k} d^{b-k}
                let overlap: Vec<usize> = (0..b.len())
                    .filter(|&e| b[e] > 0 && c[e] > 0)
                    .collect();
                let mut stack: Vec<(usize, Vec<u32>, Rat)> =
                    vec![(0, vec![0u32; overlap.len()], Rat::one())];
                while let Some((pos, kvec, factor)) = stack.pop() {
                    if pos == overlap.len() {
                        let mut gexp = a.clone();
                        let mut dexp = d.clone();
                        for i in 0..gexp.len() {
                            gexp[i] += c[i];
                            dexp[i] += b[i];
                        }
                        for (slot, &e) in overlap.iter().enumerate() {
                            gexp[e] -= kvec[slot];
                            dexp[e] -= kvec[slot];
                        }
                        out.add_term((gexp, dexp), coeff.scale(&factor));
                        continue;
                    }
                    let e = overlap[pos];
                    let kmax = b[e].min(c[e]);
                    for k in 0..=kmax {
                        let mut kv = kvec.clone();
                        kv[pos] = k;
                        let f = &factor
                            * &(binom(b[e], k) * binom(c[e], k) * factorial(k));
                        stack.push((pos + 1, kv, f));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &WeylElement) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Apply the operator to a polynomial in the matrix entries: a term
    /// `c * g^A d^B` contributes `c * g^A * d^B(p)`.  Coefficients must be
    /// polynomial in the parameters.
    pub fn apply_to_polynomial(&self, ctx: &Context, p: &Polynomial) -> Polynomial {
        let g_ring = ctx.g_ring_indices();
        let mut out = Polynomial::zero(&ctx.ring);
        for ((a, b), coeff) in &self.terms {
            let mut q = p.clone();
            for (flat, &ri) in g_ring.iter().enumerate() {
                for _ in 0..b[flat] {
                    q = q.derivative(ri);
                }
                if q.is_zero() {
                    break;
                }
            }
            if q.is_zero() {
                continue;
            }
            for (flat, &ri) in g_ring.iter().enumerate() {
                if a[flat] > 0 {
                    let mut exp = vec![0u32; ctx.ring.len()];
                    exp[ri] = a[flat];
                    q = &q * &Polynomial::monomial(&ctx.ring, exp, Rat::one());
                }
            }
            let cp = coeff
                .as_polynomial()
                .expect("operator coefficient must be polynomial")
                .clone();
            out = &out + &(&q * &cp);
        }
        out
    }

    pub fn pow(&self, k: u32, ctx: &Context) -> Self {
        let mut acc = Self::one(ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

fn binom(n: u32, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * scalar::rat((n - i) as i64) / scalar::rat((i + 1) as i64);
    }
    acc
}

fn factorial(k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 1..=k {
        acc *= scalar::rat(i as i64);
    }
    acc
}

/// Column-ordered determinant of a square matrix of Weyl elements: for each
/// permutation the factors are multiplied in increasing column order,
/// `M[sigma(1),1] * M[sigma(2),2] * ...`.
pub fn ordered_det(ctx: &Context, m: &[Vec<WeylElement>]) -> WeylElement {
    let size = m.len();
    for row in m {
        assert_eq!(row.len(), size);
    }
    let mut acc = WeylElement::zero(ctx);
    for (perm, sign) in permutations(size) {
        let mut term = WeylElement::one(ctx).scale_rat(&scalar::rat(sign));
        for (col, &row) in perm.iter().enumerate() {
            term = term.mul(&m[row][col]);
        }
        acc = acc.add(&term);
    }
    acc
}

fn lambda_diff(ctx: &Context, lambda: &[AffineForm], a: usize, b: usize) -> WeylElement {
    let form = (&lambda[a - 1] - &lambda[b - 1]).add_int(-1);
    WeylElement::from_affine(ctx, &form)
}

/// The first source-operator family, as the column-ordered determinant of
/// an i x i matrix: first column phi_1..phi_i; above-diagonal scalars
/// lambda_i - lambda_j - 1; below them the vector fields eps^{r,j}.
pub fn build_d(ctx: &Context, i: usize, lambda: &[AffineForm]) -> WeylElement {
    assert!(1 <= i && i <= ctx.n + 1);
    assert_eq!(lambda.len(), ctx.n + 1);
    let mut m: Vec<Vec<WeylElement>> = Vec::new();
    for r in 1..=i {
        let mut row = Vec::new();
        row.push(WeylElement::mult_op(ctx, &ctx.phi(r)));
        for j in 1..i {
            let entry = if r == j {
                lambda_diff(ctx, lambda, i, j)
            } else if r > j {
                WeylElement::epsilon(ctx, r, j)
            } else {
                WeylElement::zero(ctx)
            };
            row.push(entry);
        }
        m.push(row);
    }
    ordered_det(ctx, &m)
}

/// The second source-operator family, as the column-ordered determinant of
/// an (n+2-i) x (n+2-i) matrix built from psi_{n+1}..psi_i and the signed
/// vector fields.
pub fn build_f(ctx: &Context, i: usize, lambda: &[AffineForm]) -> WeylElement {
    let n = ctx.n;
    assert!(1 <= i && i <= n + 1);
    assert_eq!(lambda.len(), n + 1);
    let size = n + 2 - i;
    let mut m: Vec<Vec<WeylElement>> = Vec::new();
    for r in 1..=size {
        let mut row = Vec::new();
        row.push(WeylElement::mult_op(ctx, &ctx.psi(n + 2 - r)));
        for c in 2..=size {
            let entry = if r + 1 == c {
                lambda_diff(ctx, lambda, n + 2 - r, i)
            } else if r + 1 > c {
                WeylElement::epsilon_tilde(ctx, n + 3 - c, n + 2 - r)
            } else {
                WeylElement::zero(ctx)
            };
            row.push(entry);
        }
        m.push(row);
    }
    ordered_det(ctx, &m)
}

/// Parameter shift of the first family: lambda -> lambda - e_i.
pub fn shift_d(lambda: &[AffineForm], i: usize) -> Vec<AffineForm> {
    let mut out = lambda.to_vec();
    out[i - 1] = out[i - 1].add_int(-1);
    out
}

/// Parameter shift of the second family: lambda -> lambda - (1 - e_i).
pub fn shift_f(lambda: &[AffineForm], i: usize) -> Vec<AffineForm> {
    let mut out = lambda.to_vec();
    for (pos, v) in out.iter_mut().enumerate() {
        if pos + 1 != i {
            *v = v.add_int(-1);
        }
    }
    out
}

/// `alpha`-th power of the first family with the parameter threaded through
/// the shifts: the rightmost factor is built at `lambda`.  Returns the
/// composed element and the outgoing parameter.
pub fn power_d(
    ctx: &Context,
    i: usize,
    alpha: u32,
    lambda: &[AffineForm],
) -> (WeylElement, Vec<AffineForm>) {
    let mut acc = WeylElement::one(ctx);
    let mut cur = lambda.to_vec();
    for _ in 0..alpha {
        acc = build_d(ctx, i, &cur).mul(&acc);
        cur = shift_d(&cur, i);
    }
    (acc, cur)
}

/// `alpha`-th power of the second family, threaded the same way.
pub fn power_f(
    ctx: &Context,
    i: usize,
    alpha: u32,
    lambda: &[AffineForm],
) -> (WeylElement, Vec<AffineForm>) {
    let mut acc = WeylElement::one(ctx);
    let mut cur = lambda.to_vec();
    for _ in 0..alpha {
        acc = build_f(ctx, i, &cur).mul(&acc);
        cur = shift_f(&cur, i);
    }
    (acc, cur)
}

/// The mixed composition
/// `F_1^{a_1} o ... o F_k^{a_k} o D_{k+2}^{a_{k+1}} o ... o D_{n+1}^{a_n}`
/// with the parameter threaded right to left starting from `lambda`.
pub fn build_l(
    ctx: &Context,
    k: usize,
    alpha: &[u32],
    lambda: &[AffineForm],
) -> WeylElement {
    let n = ctx.n;
    assert!(k <= n);
    assert_eq!(alpha.len(), n);
    let mut acc = WeylElement::one(ctx);
    let mut cur = lambda.to_vec();
    // rightmost block: D_{n+1} down to D_{k+2}
    for i in (k + 2..=n + 1).rev() {
        let a = alpha[i - 2];
        let (w, next) = power_d(ctx, i, a, &cur);
        acc = w.mul(&acc);
        cur = next;
    }
    // left block: F_k down to F_1
    for i in (1..=k).rev() {
        let a = alpha[i - 1];
        let (w, next) = power_f(ctx, i, a, &cur);
        acc = w.mul(&acc);
        cur = next;
    }
    acc
}

impl core::fmt::Display for WeylElement {
    /// Plain-text normal form: one summand per term, multiplication
    /// variables as `g{i}{j}` and derivations as `d{i}{j}`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((gexp, dexp), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            let m = (1..=gexp.len()).find(|m| m * m >= gexp.len()).unwrap_or(1);
            for (prefix, exps) in [("g", gexp), ("d", dexp)] {
                for (idx, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let (i, j) = (idx / m + 1, idx % m + 1);
                    write!(f, " {prefix}{i}{j}")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> Context {
        Context::new(2)
    }

    #[test]
    fn heisenberg_relation() {
        // d_{ab} g_{cd} = g_{cd} d_{ab} + delta
        let ctx = ctx2();
        for (a, b) in [(1, 1), (2, 3)] {
            for (c, d) in [(1, 1), (2, 3), (3, 2)] {
                let dd = WeylElement::partial(&ctx, a, b);
                let gg = WeylElement::mult_op(
                    &ctx,
                    &Polynomial::var(&ctx.ring, &ctx.g_name(c, d)),
                );
                let lhs = dd.mul(&gg);
                let mut rhs = gg.mul(&dd);
                if (a, b) == (c, d) {
                    rhs = rhs.add(&WeylElement::one(&ctx));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn epsilon_commutators() {
        // [eps^{i,j}, eps^{k,l}] = delta_{jk} eps^{i,l} - delta_{il} eps^{k,j}
        for n in [2usize, 3] {
            let ctx = Context::new(n);
            let idx: Vec<(usize, usize)> = (1..=n + 1)
                .flat_map(|i| (1..=n + 1).map(move |j| (i, j)))
                .collect();
            for &(i, j) in &idx {
                for &(k, l) in &idx {
                    let lhs = WeylElement::epsilon(&ctx, i, j)
                        .commutator(&WeylElement::epsilon(&ctx, k, l));
                    let mut rhs = WeylElement::zero(&ctx);
                    if j == k {
                        rhs = rhs.add(&WeylElement::epsilon(&ctx, i, l));
                    }
                    if i == l {
                        rhs = rhs.sub(&WeylElement::epsilon(&ctx, k, j));
                    }
                    assert_eq!(lhs, rhs, "[eps^{i}{j}, eps^{k}{l}]");
                }
            }
        }
    }

    #[test]
    fn associativity_spot_check() {
        let ctx = ctx2();
        let a = WeylElement::epsilon(&ctx, 2, 1);
        let b = WeylElement::mult_op(&ctx, &ctx.psi(2));
        let c = WeylElement::partial(&ctx, 1, 1).mul(&WeylElement::partial(&ctx, 2, 2));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let d = WeylElement::mult_op(&ctx, &ctx.minor(crate::covariant::MinorId::Kappa(2)));
        assert_eq!(d.mul(&a).mul(&b), d.mul(&a.mul(&b)));
    }

    #[test]
    fn expanded_source_operators_n2() {
        // The 3x3 column-ordered determinants agree with their printed
        // expansions in terms of the vector fields.
        let ctx = ctx2();
        let lambda = ctx.lambda_vec();
        let lam = |a: usize, b: usize| {
            WeylElement::from_affine(&ctx, &(&ctx.lambda(a) - &ctx.lambda(b)).add_int(-1))
        };
        let eps = |i, j| WeylElement::epsilon(&ctx, i, j);
        let mphi = |i: usize| WeylElement::mult_op(&ctx, &ctx.phi(i));
        let mpsi = |i: usize| WeylElement::mult_op(&ctx, &ctx.psi(i));

        let d3 = build_d(&ctx, 3, &lambda);
        let d3_expect = mphi(1)
            .mul(&eps(2, 1).mul(&eps(3, 2)).sub(&lam(3, 2).mul(&eps(3, 1))))
            .sub(&lam(3, 1).mul(&mphi(2)).mul(&eps(3, 2)))
            .add(&lam(3, 1).mul(&lam(3, 2)).mul(&mphi(3)));
        assert_eq!(d3, d3_expect);

        let f1 = build_f(&ctx, 1, &lambda);
        let f1_expect = mpsi(3)
            .mul(&eps(3, 2).mul(&eps(2, 1)).add(&lam(2, 1).mul(&eps(3, 1))))
            .sub(&lam(3, 1).mul(&mpsi(2)).mul(&eps(2, 1)))
            .add(&lam(3, 1).mul(&lam(2, 1)).mul(&mpsi(1)));
        assert_eq!(f1, f1_expect);

        let d2 = build_d(&ctx, 2, &lambda);
        let d2_expect = mphi(1).mul(&eps(2, 1)).sub(&lam(2, 1).mul(&mphi(2)));
        assert_eq!(d2, d2_expect);

        let f2 = build_f(&ctx, 2, &lambda);
        let f2_expect = mpsi(3).mul(&eps(3, 2)).sub(&lam(3, 2).mul(&mpsi(2)));
        assert_eq!(f2, f2_expect);

        // The 1x1 cases are plain multiplications.
        assert_eq!(build_d(&ctx, 1, &lambda), mphi(1));
        assert_eq!(build_f(&ctx, 3, &lambda), mpsi(3));
    }

    #[test]
    fn parameter_threading() {
        // D_i^2(lambda) = D_i(lambda - e_i) o D_i(lambda)
        let ctx = ctx2();
        let lambda = ctx.lambda_vec();
        let (w, out) = power_d(&ctx, 3, 2, &lambda);
        let expect = build_d(&ctx, 3, &shift_d(&lambda, 3)).mul(&build_d(&ctx, 3, &lambda));
        assert_eq!(w, expect);
        assert_eq!(out[2], ctx.lambda(3).add_int(-2));
        // L at n=2, k=1, alpha=(1,1): F_1(lambda - e_3) o D_3(lambda)
        let l = build_l(&ctx, 1, &[1, 1], &lambda);
        let expect_l = build_f(&ctx, 1, &shift_d(&lambda, 3)).mul(&build_d(&ctx, 3, &lambda));
        assert_eq!(l, expect_l);
    }
}
