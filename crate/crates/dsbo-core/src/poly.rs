//! Exact multivariate polynomials over the rationals with a fixed,
//! ring-scoped variable set and dense exponent vectors.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::affine::AffineForm;
use crate::scalar::{self, Rat};

/// An ordered set of variable names; fixed at ring construction.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            let prior = index.insert(n.clone(), i);
            assert!(prior.is_none(), "duplicate variable {n}");
        }
        VarSet { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Shared handle to a variable set.
pub type Ring = Arc<VarSet>;

pub fn ring(names: &[&str]) -> Ring {
    Arc::new(VarSet::new(names))
}

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A polynomial with rational coefficients; terms keyed by dense exponent
/// vectors over the ring's variables, ordered lexicographically.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.len()], c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, scalar::rat(n))
    }

    pub fn var(ring: &Ring, name: &str) -> Self {
        let i = ring
            .index_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in ring"));
        let mut exp = vec![0u32; ring.len()];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rat::one());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Ring, exp: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exp.len(), ring.len());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_affine(ring: &Ring, a: &AffineForm) -> Self {
        let mut p = Self::constant(ring, a.constant_part().clone());
        for (name, coeff) in a.linear_part() {
            p = &p + &Self::var(ring, name).scale(coeff);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (exp, c) = self.terms.iter().next().unwrap();
            if exp.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// True when no variable in `vars` occurs.
    pub fn is_free_of(&self, vars: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|exp| vars.iter().all(|&v| exp[v] == 0))
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.len()];
        for exp in self.terms.keys() {
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| if u { Some(i) } else { None })
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn insert_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Leading (lex-largest) term.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Scale so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Full evaluation: every occurring variable must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Rat {
        let values: Vec<Option<Rat>> = self
            .ring
            .names()
            .iter()
            .map(|n| assignment.get(n).cloned())
            .collect();
        let mut acc = Rat::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    let v = values[i]
                        .as_ref()
                        .unwrap_or_else(|| panic!("unassigned variable {}", self.ring.name(i)));
                    for _ in 0..e {
                        term *= v;
                    }
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute every variable by an affine form over `target`; variables
    /// not in `map` must exist verbatim in the target ring.
    pub fn substitute_affine(
        &self,
        target: &Ring,
        map: &BTreeMap<String, AffineForm>,
    ) -> Polynomial {
        let replacements: Vec<Polynomial> = self
            .ring
            .names()
            .iter()
            .map(|n| match map.get(n) {
                Some(a) => Polynomial::from_affine(target, a),
                None => Polynomial::var(target, n),
            })
            .collect();
        let mut acc = Polynomial::zero(target);
        for (exp, coeff) in &self.terms {
            let mut term = Polynomial::constant(target, coeff.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = &term * &replacements[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitute variables by polynomials over `target`.
    pub fn substitute_poly(
        &self,
        target: &Ring,
        map: &BTreeMap<String, Polynomial>,
    ) -> Polynomial {
        let replacements: Vec<Polynomial> = self
            .ring
            .names()
            .iter()
            .map(|n| match map.get(n) {
                Some(p) => {
                    assert!(same_ring(p.ring(), target));
                    p.clone()
                }
                None => Polynomial::var(target, n),
            })
            .collect();
        let mut acc = Polynomial::zero(target);
        for (exp, coeff) in &self.terms {
            let mut term = Polynomial::constant(target, coeff.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = &term * &replacements[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (exp, coeff) in &self.terms {
            if exp[var] == 0 {
                continue;
            }
            let mut e = exp.clone();
            let k = e[var];
            e[var] -= 1;
            out.insert_term(e, coeff * &scalar::rat(k as i64));
        }
        out
    }

    /// Exact division: `Some(q)` with `self = q * d` or `None`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(same_ring(&self.ring, &d.ring));
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dlexp, dlc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((rlexp, rlc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let mut qexp = vec![0u32; rlexp.len()];
            for i in 0..rlexp.len() {
                if rlexp[i] < dlexp[i] {
                    return None;
                }
                qexp[i] = rlexp[i] - dlexp[i];
            }
            let qc = rlc / dlc.clone();
            let qterm = Polynomial::monomial(&self.ring, qexp, qc);
            rem = &rem - &(&qterm * d);
            quot = &quot + &qterm;
        }
        Some(quot)
    }

    /// The per-variable minimum exponent over all terms (monomial content).
    fn monomial_content(&self) -> Vec<u32> {
        let mut min: Option<Vec<u32>> = None;
        for exp in self.terms.keys() {
            match &mut min {
                None => min = Some(exp.clone()),
                Some(m) => {
                    for i in 0..m.len() {
                        if exp[i] < m[i] {
                            m[i] = exp[i];
                        }
                    }
                }
            }
        }
        min.unwrap_or_else(|| vec![0; self.ring.len()])
    }

    fn shift_down(&self, shift: &[u32]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a - b).collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// View as univariate in `var` with polynomial coefficients (exponent of
    /// `var` zeroed inside the coefficients).
    fn univariate_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Polynomial::zero(&self.ring); deg + 1];
        for (exp, c) in &self.terms {
            let k = exp[var] as usize;
            let mut e = exp.clone();
            e[var] = 0;
            coeffs[k].insert_term(e, c.clone());
        }
        coeffs
    }

    fn from_univariate(ring: &Ring, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Polynomial::var(ring, ring.name(var)).pow(k as u32);
            acc = &acc + &(c * &xk);
        }
        acc
    }

    /// GCD, normalized monic in the lex leading coefficient.  Computed by a
    /// primitive pseudo-remainder sequence, recursing on the coefficient
    /// ring; adequate for the small rings used here.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &other.ring));
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        // Pull out monomial content first.
        let ma = self.monomial_content();
        let mb = other.monomial_content();
        let mg: Vec<u32> = ma.iter().zip(&mb).map(|(a, b)| *a.min(b)).collect();
        let a = self.shift_down(&ma);
        let b = other.shift_down(&mb);
        let core = Self::gcd_primitive(&a, &b);
        let g = &core * &Polynomial::monomial(&self.ring, mg, Rat::one());
        g.monic()
    }

    fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let ring = &a.ring;
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return Polynomial::one(ring);
        }
        // Main variable: lowest index occurring in either.
        let sa = a.support();
        let sb = b.support();
        let var = *sa.iter().chain(sb.iter()).min().unwrap();
        if !sb.contains(&var) || !sa.contains(&var) {
            // One operand is free of the main variable: gcd divides the
            // content of the other in that variable.
            let (free, bound) = if sa.contains(&var) { (b, a) } else { (a, b) };
            let cont = bound
                .univariate_in(var)
                .iter()
                .fold(Polynomial::zero(ring), |acc, c| acc.gcd(c));
            return Self::gcd_primitive(free, &cont);
        }
        let ua = a.univariate_in(var);
        let ub = b.univariate_in(var);
        let cont_a = ua.iter().fold(Polynomial::zero(ring), |acc, c| acc.gcd(c));
        let cont_b = ub.iter().fold(Polynomial::zero(ring), |acc, c| acc.gcd(c));
        let cont_g = cont_a.gcd(&cont_b);

        let prim =
            |u: &[Polynomial], cont: &Polynomial| -> Vec<Polynomial> {
                u.iter()
                    .map(|c| c.div_exact(cont).expect("content divides"))
                    .collect()
            };
        let mut r0 = prim(&ua, &cont_a);
        let mut r1 = prim(&ub, &cont_b);
        if r0.len() < r1.len() {
            core::mem::swap(&mut r0, &mut r1);
        }
        loop {
            if r1.len() == 1 {
                // Remainder sequence dropped to degree 0 in the main
                // variable: the primitive parts are coprime in it.
                return cont_g.monic();
            }
            let rem = Self::pseudo_rem(&r0, &r1, ring);
            let rem = Self::trim(rem);
            if rem.is_empty() {
                let g1 = Polynomial::from_univariate(ring, var, &r1);
                let cont1 = r1
                    .iter()
                    .fold(Polynomial::zero(ring), |acc, c| acc.gcd(c));
                let gp = g1.div_exact(&cont1).expect("content divides");
                return (&cont_g * &gp).monic();
            }
            // Make primitive to control growth.
            let cont = rem
                .iter()
                .fold(Polynomial::zero(ring), |acc, c| acc.gcd(c));
            let rem: Vec<Polynomial> = rem
                .iter()
                .map(|c| c.div_exact(&cont).expect("content divides"))
                .collect();
            r0 = r1;
            r1 = rem;
        }
    }

    fn trim(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
        while v.last().map(|p| p.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    }

    /// Pseudo-remainder of univariate polynomials with polynomial
    /// coefficients: lc(b)^(da-db+1) * a mod b.
    fn pseudo_rem(a: &[Polynomial], b: &[Polynomial], _ring: &Ring) -> Vec<Polynomial> {
        let da = a.len() - 1;
        let db = b.len() - 1;
        assert!(db >= 1 && da >= db);
        let lb = b[db].clone();
        let mut r: Vec<Polynomial> = a.to_vec();
        for k in (db..=da).rev() {
            // r <- lb * r - r[k] * x^(k-db) * b
            let rk = r[k].clone();
            for c in r.iter_mut() {
                *c = &*c * &lb;
            }
            for j in 0..=db {
                let t = &rk * &b[j];
                r[k - db + j] = &r[k - db + j] - &t;
            }
            debug_assert!(r[k].is_zero());
        }
        r.truncate(db);
        r
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&scalar::rat(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Display leading terms first (reverse lex).
        for (exp, coeff) in self.terms.iter().rev() {
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.name(i).to_string()
                    } else {
                        alloc::format!("{}^{}", self.ring.name(i), e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (sign, mag) = if coeff.is_negative() {
                ("-", -coeff)
            } else {
                ("+", coeff.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", scalar::rat_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", scalar::rat_string(&mag))?;
            }
        }
        Ok(())
    }
}

/// The rising factorial `(a)_k = a (a+1) ... (a+k-1)` as a polynomial.
pub fn pochhammer(ring: &Ring, a: &AffineForm, k: u32) -> Polynomial {
    let mut acc = Polynomial::one(ring);
    for j in 0..k {
        acc = &acc * &Polynomial::from_affine(ring, &a.add_int(j as i64));
    }
    acc
}

/// The rising factorial of a rational value.
pub fn pochhammer_rat(a: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc *= a + scalar::rat(j as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn r3() -> Ring {
        ring(&["x", "y", "z"])
    }

    #[test]
    fn basic_arithmetic() {
        let r = r3();
        let x = Polynomial::var(&r, "x");
        let y = Polynomial::var(&r, "y");
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert_eq!((&p - &q), Polynomial::zero(&r));
    }

    #[test]
    fn division_and_gcd() {
        let r = r3();
        let x = Polynomial::var(&r, "x");
        let y = Polynomial::var(&r, "y");
        let z = Polynomial::var(&r, "z");
        let a = &(&x + &y) * &(&x + &z);
        let b = &(&x + &y) * &(&y + &z);
        assert_eq!(a.div_exact(&(&x + &y)).unwrap(), &x + &z);
        assert!(a.div_exact(&(&x + &(&y + &z))).is_none());
        let g = a.gcd(&b);
        assert_eq!(g, (&x + &y).monic());
        // gcd with monomial content
        let a2 = &a * &x.pow(2);
        let b2 = &b * &(&x * &y);
        let g2 = a2.gcd(&b2);
        assert_eq!(g2, (&(&x + &y) * &x).monic());
    }

    #[test]
    fn pochhammer_recurrence() {
        let r = ring(&["a"]);
        let a = AffineForm::var("a");
        for k in 1..6u32 {
            let lhs = pochhammer(&r, &a, k);
            let rhs = &pochhammer(&r, &a, k - 1)
                * &Polynomial::from_affine(&r, &a.add_int(k as i64 - 1));
            assert_eq!(lhs, rhs);
        }
        assert_eq!(pochhammer_rat(&rat(3), 4), rat(3 * 4 * 5 * 6));
        assert_eq!(pochhammer_rat(&rat(-2), 3), rat(0));
    }

    #[test]
    fn substitution_and_derivative() {
        let r = r3();
        let r2 = ring(&["u", "v"]);
        let x = Polynomial::var(&r, "x");
        let y = Polynomial::var(&r, "y");
        let p = &(&x * &x) + &(&x * &y);
        let mut map = BTreeMap::new();
        map.insert(
            "x".to_string(),
            &AffineForm::var("u") + &AffineForm::var("v"),
        );
        map.insert("y".to_string(), AffineForm::var("u"));
        map.insert("z".to_string(), AffineForm::zero());
        let q = p.substitute_affine(&r2, &map);
        // (u+v)^2 + (u+v)u = 2u^2 + 3uv + v^2
        let u = Polynomial::var(&r2, "u");
        let v = Polynomial::var(&r2, "v");
        let expect = &(&(&u * &u).scale(&rat(2)) + &(&u * &v).scale(&rat(3))) + &(&v * &v);
        assert_eq!(q, expect);
        let dx = p.derivative(0);
        assert_eq!(dx, &x.scale(&rat(2)) + &y);
    }
}
