//! Rational functions: quotients of polynomials in gcd-reduced canonical
//! form with a monic (lex-leading coefficient 1) denominator.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::affine::AffineForm;
use crate::poly::{Polynomial, Ring};
use crate::scalar::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFun { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let one = Polynomial::one(num.ring());
        RatFun { num, den: one }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_poly(Polynomial::zero(ring))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_poly(Polynomial::one(ring))
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        Self::from_poly(Polynomial::constant(ring, c))
    }

    pub fn int(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, scalar::rat(n))
    }

    pub fn var(ring: &Ring, name: &str) -> Self {
        Self::from_poly(Polynomial::var(ring, name))
    }

    pub fn from_affine(ring: &Ring, a: &AffineForm) -> Self {
        Self::from_poly(Polynomial::from_affine(ring, a))
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `Some(p)` when the denominator is 1 after reduction.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.num.ring());
            return;
        }
        if let Some(d) = self.den.as_constant() {
            let inv = Rat::one() / d;
            self.num = self.num.scale(&inv);
            self.den = Polynomial::one(self.num.ring());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // Normalize: monic denominator.
        if let Some((_, lc)) = self.den.leading_term() {
            if !lc.is_one() {
                let inv = Rat::one() / lc.clone();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
        if let Some(d) = self.den.as_constant() {
            let inv = Rat::one() / d;
            self.num = self.num.scale(&inv);
            self.den = Polynomial::one(self.num.ring());
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RatFun::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &Polynomial) -> Self {
        RatFun::new(self.num.clone(), &self.den * p)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate; panics if the denominator vanishes at the point.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Rat {
        let d = self.den.eval(assignment);
        assert!(!d.is_zero(), "denominator vanishes at evaluation point");
        self.num.eval(assignment) / d
    }

    pub fn substitute_affine(&self, target: &Ring, map: &BTreeMap<String, AffineForm>) -> RatFun {
        RatFun::new(
            self.num.substitute_affine(target, map),
            self.den.substitute_affine(target, map),
        )
    }

    pub fn derivative(&self, var: usize) -> RatFun {
        // (n/d)' = (n' d - n d') / d^2
        let n1 = &self.num.derivative(var) * &self.den;
        let n2 = &self.num * &self.den.derivative(var);
        RatFun::new(&n1 - &n2, &self.den * &self.den)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by zero");
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring;
    use crate::scalar::rat;
    use alloc::string::ToString;

    #[test]
    fn field_arithmetic_reduces() {
        let r = ring(&["x", "y"]);
        let x = RatFun::var(&r, "x");
        let y = RatFun::var(&r, "y");
        let a = &(&x - &y) / &(&x + &y);
        let b = &(&x + &y) / &(&x - &y);
        let prod = &a * &b;
        assert!(prod.is_one());
        // (x^2 - y^2)/(x+y) reduces to polynomial x - y
        let p = &(&(&x * &x) - &(&y * &y)) / &(&x + &y);
        assert_eq!(p.as_polynomial().unwrap(), (&x - &y).num());
        // cross-multiplied equality at a point
        let mut asg = BTreeMap::new();
        asg.insert("x".to_string(), rat(5));
        asg.insert("y".to_string(), rat(2));
        assert_eq!(a.eval(&asg), rat(3) / rat(7));
    }
}
