//! Affine forms: rational-linear combinations of named symbols plus a
//! rational constant.  They serve as symbolic exponents on minor powers,
//! as gamma-function arguments, and as parameter vectors fed into the
//! operator builders.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::{self, Rat};

/// `constant + sum coeffs[v] * v` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AffineForm {
    coeffs: BTreeMap<String, Rat>,
    constant: Rat,
}

impl AffineForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        AffineForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(scalar::rat(n))
    }

    /// The form consisting of the single symbol `name`.
    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), scalar::rat(1));
        AffineForm {
            coeffs,
            constant: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant part.
    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    /// The constant value, if the form is constant.
    pub fn as_constant(&self) -> Option<&Rat> {
        if self.is_constant() {
            Some(&self.constant)
        } else {
            None
        }
    }

    /// The linear part as `(symbol, coefficient)` pairs.
    pub fn linear_part(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// This form with its constant replaced by `c`.
    pub fn with_constant(&self, c: Rat) -> Self {
        AffineForm {
            coeffs: self.coeffs.clone(),
            constant: c,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AffineForm {
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn add_const(&self, c: &Rat) -> Self {
        self.with_constant(&self.constant + c)
    }

    pub fn add_int(&self, n: i64) -> Self {
        self.add_const(&scalar::rat(n))
    }

    /// Evaluate under a full assignment of the symbols that occur.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Rat {
        let mut acc = self.constant.clone();
        for (name, coeff) in &self.coeffs {
            let value = assignment
                .get(name)
                .unwrap_or_else(|| panic!("unassigned symbol {name}"));
            acc += coeff * value;
        }
        acc
    }

    /// Substitute each symbol by an affine form.
    pub fn substitute(&self, map: &BTreeMap<String, AffineForm>) -> AffineForm {
        let mut acc = AffineForm::constant(self.constant.clone());
        for (name, coeff) in &self.coeffs {
            match map.get(name) {
                Some(replacement) => acc = &acc + &replacement.scale(coeff),
                None => {
                    acc = &acc
                        + &AffineForm::var(name).scale(coeff)
                }
            }
        }
        acc
    }

    /// Two forms differ by a constant exactly when their linear parts agree;
    /// returns that constant difference `self - other` if so.
    pub fn constant_difference(&self, other: &AffineForm) -> Option<Rat> {
        if self.coeffs == other.coeffs {
            Some(&self.constant - &other.constant)
        } else {
            None
        }
    }
}

impl Add for &AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: &AffineForm) -> AffineForm {
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &rhs.coeffs {
            let entry = coeffs.entry(k.clone()).or_insert_with(Rat::zero);
            *entry += v;
            if entry.is_zero() {
                coeffs.remove(k);
            }
        }
        AffineForm {
            coeffs,
            constant: &self.constant + &rhs.constant,
        }
    }
}

impl Sub for &AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: &AffineForm) -> AffineForm {
        self + &(-rhs)
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self.scale(&scalar::rat(-1))
    }
}

impl Mul<&Rat> for &AffineForm {
    type Output = AffineForm;
    fn mul(self, rhs: &Rat) -> AffineForm {
        self.scale(rhs)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, coeff) in &self.coeffs {
            if first {
                if coeff == &scalar::rat(1) {
                    write!(f, "{name}")?;
                } else if coeff == &scalar::rat(-1) {
                    write!(f, "-{name}")?;
                } else {
                    write!(f, "{}*{name}", scalar::rat_string(coeff))?;
                }
                first = false;
            } else if coeff == &scalar::rat(1) {
                write!(f, " + {name}")?;
            } else if coeff == &scalar::rat(-1) {
                write!(f, " - {name}")?;
            } else if num_traits::Signed::is_negative(coeff) {
                write!(f, " - {}*{name}", scalar::rat_string(&-coeff))?;
            } else {
                write!(f, " + {}*{name}", scalar::rat_string(coeff))?;
            }
        }
        if first {
            write!(f, "{}", scalar::rat_string(&self.constant))?;
        } else if !self.constant.is_zero() {
            if num_traits::Signed::is_negative(&self.constant) {
                write!(f, " - {}", scalar::rat_string(&-&self.constant))?;
            } else {
                write!(f, " + {}", scalar::rat_string(&self.constant))?;
            }
        }
        Ok(())
    }
}

/// Convenience: a vector of affine parameter symbols `base1 .. baseN`.
pub fn symbol_vector(base: &str, len: usize) -> Vec<AffineForm> {
    (1..=len)
        .map(|i| AffineForm::var(&alloc::format!("{base}{i}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};

    #[test]
    fn arithmetic_and_substitution() {
        let a = &AffineForm::var("l1") - &AffineForm::var("l2");
        let b = a.add_const(&ratq(-1, 2));
        assert_eq!(b.constant_part(), &ratq(-1, 2));
        let mut map = BTreeMap::new();
        map.insert("l1".to_string(), AffineForm::var("l0").add_int(3));
        let c = b.substitute(&map);
        let mut asg = BTreeMap::new();
        asg.insert("l0".to_string(), rat(1));
        asg.insert("l2".to_string(), rat(2));
        assert_eq!(c.eval(&asg), ratq(3, 2));
        assert_eq!(
            b.constant_difference(&a),
            Some(ratq(-1, 2))
        );
        assert_eq!(a.constant_difference(&AffineForm::var("l1")), None);
    }
}
