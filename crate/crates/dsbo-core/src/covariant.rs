//! The matrix-coordinate context for the pair (GL(n+1,R), GL(n,R)):
//! parameter symbols, matrix-entry variables, the catalogue of corner
//! minors with the two covariant families built from them, the formal
//! power products they generate, the Weyl-algebra action on those, and
//! the restriction maps to the small group.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::affine::AffineForm;
use crate::poly::{Polynomial, Ring};
use crate::ratfun::RatFun;
use crate::scalar::{self, Rat};
use crate::weyl::WeylElement;

/// Identifier of a catalogued corner minor.
///
/// `Kappa(k)` is the k x k minor on the last k rows and first k columns of
/// the (n+1) x (n+1) matrix; `Theta(l)` is the l x l minor on rows
/// n+1-l..n and columns 1..l.  Both are indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinorId {
    Kappa(usize),
    Theta(usize),
}

/// Ring and naming conventions for a fixed n.
///
/// Ring variables, in order: `l1..l{n+1}` (big-group parameters),
/// `v1..vn` (small-group parameters), `g{i}{j}` (big matrix entries,
/// row-major), `h{i}{j}` (small matrix entries, row-major).
#[derive(Debug, Clone)]
pub struct Context {
    pub n: usize,
    pub ring: Ring,
}

impl Context {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1 && n + 1 <= 9, "supported sizes: 1 <= n <= 8");
        let mut names: Vec<String> = Vec::new();
        for i in 1..=n + 1 {
            names.push(alloc::format!("l{i}"));
        }
        for j in 1..=n {
            names.push(alloc::format!("v{j}"));
        }
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                names.push(alloc::format!("g{i}{j}"));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                names.push(alloc::format!("h{i}{j}"));
            }
        }
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Context {
            n,
            ring: Arc::new(crate::poly::VarSet::new(&refs)),
        }
    }

    pub fn g_name(&self, i: usize, j: usize) -> String {
        alloc::format!("g{i}{j}")
    }

    pub fn h_name(&self, i: usize, j: usize) -> String {
        alloc::format!("h{i}{j}")
    }

    /// Ring index of g_{ij} (1-based matrix indices).
    pub fn g_index(&self, i: usize, j: usize) -> usize {
        (n_plus(self.n) + self.n) + (i - 1) * n_plus(self.n) + (j - 1)
    }

    /// Ring index of h_{ij} (1-based matrix indices).
    pub fn h_index(&self, i: usize, j: usize) -> usize {
        (n_plus(self.n) + self.n) + n_plus(self.n) * n_plus(self.n) + (i - 1) * self.n + (j - 1)
    }

    /// Flat position of g_{ij} inside Weyl exponent vectors.
    pub fn g_flat(&self, i: usize, j: usize) -> usize {
        (i - 1) * n_plus(self.n) + (j - 1)
    }

    /// Ring indices of all g variables, in flat order.
    pub fn g_ring_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 1..=n_plus(self.n) {
            for j in 1..=n_plus(self.n) {
                out.push(self.g_index(i, j));
            }
        }
        out
    }

    pub fn lambda(&self, i: usize) -> AffineForm {
        AffineForm::var(&alloc::format!("l{i}"))
    }

    pub fn nu(&self, j: usize) -> AffineForm {
        AffineForm::var(&alloc::format!("v{j}"))
    }

    pub fn lambda_vec(&self) -> Vec<AffineForm> {
        (1..=n_plus(self.n)).map(|i| self.lambda(i)).collect()
    }

    pub fn nu_vec(&self) -> Vec<AffineForm> {
        (1..=self.n).map(|j| self.nu(j)).collect()
    }

    fn g_poly(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, &self.g_name(i, j))
    }

    /// Determinant of the submatrix of g on `rows` x `cols` (1-based).
    pub fn g_minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        let m = rows.len();
        let mut acc = Polynomial::zero(&self.ring);
        for (perm, sign) in permutations(m) {
            let mut term = Polynomial::constant(&self.ring, scalar::rat(sign));
            for (r, &p) in perm.iter().enumerate() {
                term = &term * &self.g_poly(rows[r], cols[p]);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The catalogued minor polynomial.
    pub fn minor(&self, id: MinorId) -> Polynomial {
        let n = self.n;
        match id {
            MinorId::Kappa(k) => {
                assert!(1 <= k && k <= n + 1);
                let rows: Vec<usize> = (n + 2 - k..=n + 1).collect();
                let cols: Vec<usize> = (1..=k).collect();
                self.g_minor(&rows, &cols)
            }
            MinorId::Theta(l) => {
                assert!(1 <= l && l <= n);
                let rows: Vec<usize> = (n + 1 - l..=n).collect();
                let cols: Vec<usize> = (1..=l).collect();
                self.g_minor(&rows, &cols)
            }
        }
    }

    /// The fixed catalogue order: kappa_1..kappa_{n+1}, theta_1..theta_n.
    pub fn catalogue(&self) -> Vec<MinorId> {
        let mut out: Vec<MinorId> = (1..=self.n + 1).map(MinorId::Kappa).collect();
        out.extend((1..=self.n).map(MinorId::Theta));
        out
    }

    pub fn catalogue_index(&self, id: MinorId) -> usize {
        match id {
            MinorId::Kappa(k) => k - 1,
            MinorId::Theta(l) => self.n + l,
        }
    }

    /// Substitution swapping columns i and i+1 of g (the right action of the
    /// plain 0/1 transposition matrix).
    fn swap_cols_map(&self, i: usize) -> BTreeMap<String, Polynomial> {
        let mut map = BTreeMap::new();
        for r in 1..=n_plus(self.n) {
            map.insert(self.g_name(r, i), self.g_poly(r, i + 1));
            map.insert(self.g_name(r, i + 1), self.g_poly(r, i));
        }
        map
    }

    /// The first covariant family: phi_1 = g_{n+1,1} and
    /// phi_{i+1}(g) = phi_i(g w_i), substitution by plain 0/1 transposition
    /// matrices.  For these, phi_i works out to g_{n+1,i}.
    pub fn phi(&self, i: usize) -> Polynomial {
        assert!(1 <= i && i <= self.n + 1);
        let mut p = self.minor(MinorId::Kappa(1));
        for step in 1..i {
            p = p.substitute_poly(&self.ring, &self.swap_cols_map(step));
        }
        p
    }

    /// The second covariant family: psi_{n+1} = theta_n (upper-left n x n
    /// minor) and psi_i(g) = psi_{i+1}(g w_i).
    pub fn psi(&self, i: usize) -> Polynomial {
        assert!(1 <= i && i <= self.n + 1);
        let mut p = self.minor(MinorId::Theta(self.n));
        for step in (i..=self.n).rev() {
            p = p.substitute_poly(&self.ring, &self.swap_cols_map(step));
        }
        p
    }

    /// det of the small symbolic matrix h.
    pub fn det_h(&self) -> Polynomial {
        let m = self.n;
        let mut acc = Polynomial::zero(&self.ring);
        for (perm, sign) in permutations(m) {
            let mut term = Polynomial::constant(&self.ring, scalar::rat(sign));
            for (r, &p) in perm.iter().enumerate() {
                term = &term
                    * &Polynomial::var(&self.ring, &self.h_name(r + 1, perm_col(p)));
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The (n+1) x (n+1) permutation matrix x_k: identity on the first k
    /// coordinates, e_{k+1} -> e_{n+1}, e_j -> e_{j-1} for j >= k+2.
    /// Returned as 0/1 entries.
    pub fn x_matrix(&self, k: usize) -> Vec<Vec<u8>> {
        let m = n_plus(self.n);
        assert!(k <= self.n);
        let mut x = vec![vec![0u8; m]; m];
        for j in 1..=m {
            let image = if j <= k {
                j
            } else if j == k + 1 {
                m
            } else {
                j - 1
            };
            x[image - 1][j - 1] = 1;
        }
        x
    }

    /// Substitution realizing the restriction map: g_{ij} -> (hhat x_k)_{ij}
    /// where hhat = diag(h, 1).
    pub fn restriction_map(&self, k: usize) -> BTreeMap<String, Polynomial> {
        let m = n_plus(self.n);
        let x = self.x_matrix(k);
        let mut map = BTreeMap::new();
        for i in 1..=m {
            for j in 1..=m {
                // (hhat x_k)_{ij} = sum_s hhat_{is} x_{sj}; x has one 1 per column.
                let s = (1..=m).find(|&s| x[s - 1][j - 1] == 1).unwrap();
                let entry = if i <= self.n && s <= self.n {
                    Polynomial::var(&self.ring, &self.h_name(i, s))
                } else if i == m && s == m {
                    Polynomial::one(&self.ring)
                } else {
                    Polynomial::zero(&self.ring)
                };
                map.insert(self.g_name(i, j), entry);
            }
        }
        map
    }

    /// Restrict a polynomial in g (coefficients may involve parameters) to
    /// the small group via the k-th restriction map.
    pub fn restrict_poly(&self, k: usize, p: &Polynomial) -> Polynomial {
        p.substitute_poly(&self.ring, &self.restriction_map(k))
    }
}

fn n_plus(n: usize) -> usize {
    n + 1
}

fn perm_col(p: usize) -> usize {
    p + 1
}

/// All permutations of {0..m-1} with signs.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(m: usize, acc: &mut Vec<(Vec<usize>, i64)>, cur: &mut Vec<usize>, used: &mut Vec<bool>) {
        if cur.len() == m {
            // count inversions
            let mut inv = 0;
            for i in 0..m {
                for j in i + 1..m {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            acc.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(m, acc, cur, used);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut acc = Vec::new();
    go(m, &mut acc, &mut Vec::new(), &mut vec![false; m]);
    acc
}

/// A formal product `prefactor * prod_b base_b^{e_b}` over the minor
/// catalogue, with affine exponents.  A sum of such products with merged
/// like exponent tuples is a [`FunctionCombination`].
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCombination {
    /// exponent tuple (catalogue order) -> prefactor
    pub terms: BTreeMap<Vec<AffineForm>, RatFun>,
}

impl FunctionCombination {
    pub fn zero() -> Self {
        FunctionCombination {
            terms: BTreeMap::new(),
        }
    }

    pub fn power_product(ctx: &Context, exponents: Vec<AffineForm>, prefactor: RatFun) -> Self {
        assert_eq!(exponents.len(), ctx.catalogue().len());
        let mut terms = BTreeMap::new();
        if !prefactor.is_zero() {
            terms.insert(exponents, prefactor);
        }
        FunctionCombination { terms }
    }

    /// A plain function of g: all exponents zero.
    pub fn from_prefactor(ctx: &Context, prefactor: RatFun) -> Self {
        Self::power_product(
            ctx,
            vec![AffineForm::zero(); ctx.catalogue().len()],
            prefactor,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: Vec<AffineForm>, value: RatFun) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &value;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FunctionCombination) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = FunctionCombination::zero();
        for (k, v) in &self.terms {
            out.insert(k.clone(), v * c);
        }
        out
    }

    /// Apply a single derivation d/d g_{ij} by the formal power rule.
    fn apply_partial(&self, ctx: &Context, i: usize, j: usize) -> Self {
        let var = ctx.g_index(i, j);
        let catalogue = ctx.catalogue();
        let minors: Vec<Polynomial> = catalogue.iter().map(|&id| ctx.minor(id)).collect();
        let mut out = FunctionCombination::zero();
        for (exps, pref) in &self.terms {
            // derivative of the prefactor
            out.insert(exps.clone(), pref.derivative(var));
            // power rule on each factor
            for (b, e_b) in exps.iter().enumerate() {
                if e_b.is_zero() {
                    continue;
                }
                let d_minor = minors[b].derivative(var);
                if d_minor.is_zero() {
                    continue;
                }
                let mut new_exps = exps.clone();
                new_exps[b] = e_b.add_int(-1);
                let coeff = pref
                    .mul_poly(&Polynomial::from_affine(&ctx.ring, e_b))
                    .mul_poly(&d_minor);
                out.insert(new_exps, coeff);
            }
        }
        out
    }

    /// Apply a normal-ordered Weyl element: derivatives first, then
    /// multiplication by the g-monomial, per term.
    pub fn apply_weyl(&self, ctx: &Context, w: &WeylElement) -> Self {
        let m = n_plus(ctx.n);
        let mut out = FunctionCombination::zero();
        for ((gexp, dexp), coeff) in w.terms() {
            let mut cur = self.clone();
            for i in 1..=m {
                for j in 1..=m {
                    for _ in 0..dexp[ctx.g_flat(i, j)] {
                        cur = cur.apply_partial(ctx, i, j);
                    }
                }
            }
            // multiply with coeff * g^gexp
            let mut mono = vec![0u32; ctx.ring.len()];
            for i in 1..=m {
                for j in 1..=m {
                    mono[ctx.g_index(i, j)] = gexp[ctx.g_flat(i, j)];
                }
            }
            let mult = coeff.mul_poly(&Polynomial::monomial(&ctx.ring, mono, Rat::one()));
            out = out.add(&cur.scale(&mult));
        }
        out
    }

    /// Merge terms whose exponent tuples differ by integer constants:
    /// rewrite every term relative to the componentwise-minimal exponents,
    /// pushing the integer excess into the prefactor as explicit minor
    /// powers.  Returns the common exponent tuple and the total prefactor,
    /// or None if the terms are not integer-compatible.
    pub fn collapse(&self, ctx: &Context) -> Option<(Vec<AffineForm>, RatFun)> {
        if self.terms.is_empty() {
            let zero_exps = vec![AffineForm::zero(); ctx.catalogue().len()];
            return Some((zero_exps, RatFun::zero(&ctx.ring)));
        }
        let keys: Vec<&Vec<AffineForm>> = self.terms.keys().collect();
        let width = keys[0].len();
        // Componentwise minimal constants relative to the first key.
        let mut base: Vec<AffineForm> = keys[0].clone();
        for key in &keys {
            for b in 0..width {
                let diff = key[b].constant_difference(&base[b])?;
                if num_traits::Signed::is_negative(&diff) {
                    base[b] = key[b].clone();
                }
            }
        }
        let minors: Vec<Polynomial> = ctx.catalogue().iter().map(|&id| ctx.minor(id)).collect();
        let mut total = RatFun::zero(&ctx.ring);
        for (key, pref) in &self.terms {
            let mut term = pref.clone();
            for b in 0..width {
                let diff = key[b].constant_difference(&base[b]).unwrap();
                assert!(scalar::is_natural(&diff));
                let k = scalar::to_i64(&diff) as u32;
                if k > 0 {
                    term = term.mul_poly(&minors[b].pow(k));
                }
            }
            total = &total + &term;
        }
        Some((base, total))
    }

    /// Restriction: requires all exponents to be explicit nonnegative
    /// integers; expands the powers and substitutes g -> hhat x_k.
    pub fn restrict(&self, ctx: &Context, k: usize) -> Polynomial {
        let map = ctx.restriction_map(k);
        let minors: Vec<Polynomial> = ctx.catalogue().iter().map(|&id| ctx.minor(id)).collect();
        let mut acc = Polynomial::zero(&ctx.ring);
        for (exps, pref) in &self.terms {
            let mut p = pref
                .as_polynomial()
                .expect("restriction of non-polynomial prefactor")
                .clone();
            for (b, e) in exps.iter().enumerate() {
                let c = e.as_constant().expect("restriction needs integer exponents");
                assert!(scalar::is_natural(c), "restriction needs exponents in N");
                p = &p * &minors[b].pow(scalar::to_i64(c) as u32);
            }
            acc = &acc + &p.substitute_poly(&ctx.ring, &map);
        }
        acc
    }
}

/// The unnormalized distribution-kernel exponents in formal-power mode:
/// `K = prod kappa_k^{s_k} * prod theta_l^{t_l}` with
/// s_i = l_i - v_{n+1-i} - 1/2 (i <= n), s_{n+1} = l_{n+1} + n/2,
/// t_i = v_{n+1-i} - l_{i+1} - 1/2.
pub fn kernel_exponents(
    ctx: &Context,
    lambda: &[AffineForm],
    nu: &[AffineForm],
) -> Vec<AffineForm> {
    let n = ctx.n;
    assert_eq!(lambda.len(), n + 1);
    assert_eq!(nu.len(), n);
    let half = AffineForm::constant(scalar::ratq(1, 2));
    let mut exps = Vec::new();
    for i in 1..=n {
        exps.push(&(&lambda[i - 1] - &nu[n - i]) - &half);
    }
    exps.push(lambda[n].add_const(&scalar::ratq(n as i64, 2)));
    for i in 1..=n {
        exps.push(&(&nu[n - i] - &lambda[i]) - &half);
    }
    exps
}

/// The kernel as a power product with prefactor 1.
pub fn kernel_k(ctx: &Context, lambda: &[AffineForm], nu: &[AffineForm]) -> FunctionCombination {
    FunctionCombination::power_product(
        ctx,
        kernel_exponents(ctx, lambda, nu),
        RatFun::one(&ctx.ring),
    )
}
