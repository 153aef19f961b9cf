//! Arbitrary-precision rational scalars and small helpers.

use alloc::string::String;
use alloc::string::ToString;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The scalar field: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True when `r` is a nonnegative integer.
pub fn is_natural(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

/// `r` as `i64`; panics if `r` is not a small integer.
pub fn to_i64(r: &Rat) -> i64 {
    assert!(is_integer(r), "expected integer, got {r}");
    let digits = r.numer().to_string();
    digits.parse::<i64>().expect("integer out of i64 range")
}

/// Parity of an integer rational: `r mod 2` in {0, 1}.
pub fn parity(r: &Rat) -> u8 {
    assert!(is_integer(r), "parity of non-integer {r}");
    let two = BigInt::from(2);
    let m = ((r.numer() % &two) + &two) % &two;
    if m.is_zero() {
        0
    } else {
        1
    }
}

/// Render a rational in plain `p/q` form (no spaces).
pub fn rat_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_integrality() {
        assert!(is_integer(&rat(-3)));
        assert!(!is_integer(&ratq(1, 2)));
        assert!(is_natural(&rat(0)));
        assert!(!is_natural(&rat(-1)));
        assert_eq!(parity(&rat(-3)), 1);
        assert_eq!(parity(&rat(4)), 0);
        assert_eq!(to_i64(&rat(-17)), -17);
        assert_eq!(rat_string(&ratq(3, -6)), "-1/2");
    }
}
