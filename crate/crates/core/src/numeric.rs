//! Float conversions for values that overflow `f64` before they are divided.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::{Nat, Rat};

/// Natural log of a big natural number; `-inf` for zero.
pub fn ln_nat(x: &Nat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("below 2^1000 fits f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as the nearest-ish `f64`, valid even when both exceed `f64`.
pub fn ratio_to_f64(num: &Nat, den: &Nat) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 64+ significant bits.
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mantissa = quotient.to_f64().expect("quotient has about 64 bits");
    ldexp(mantissa, -shift)
}

/// `x * 2^exp`, applied in steps so intermediate powers do not flush to zero.
fn ldexp(mut x: f64, mut exp: i64) -> f64 {
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// Signed variant of [`ratio_to_f64`] for canonical rationals.
pub fn rat_to_f64(x: &Rat) -> f64 {
    let magnitude = ratio_to_f64(
        &x.numer().abs().to_biguint().expect("non-negative"),
        &x.denom().to_biguint().expect("positive denominator"),
    );
    if x.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

pub(crate) fn serialize_nat<S: Serializer>(x: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_matches_float_for_small_values() {
        for v in [1u64, 2, 10, 12345, u64::MAX] {
            let got = ln_nat(&Nat::from(v));
            assert!((got - (v as f64).ln()).abs() < 1e-12, "{v}");
        }
        assert_eq!(ln_nat(&Nat::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn ln_of_huge_power_of_two() {
        let x = Nat::one() << 5000usize;
        let expected = 5000.0 * std::f64::consts::LN_2;
        assert!((ln_nat(&x) - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn ratio_of_huge_values() {
        let den = (Nat::one() << 3000usize) * 3u32;
        let num = Nat::one() << 3000usize;
        assert!((ratio_to_f64(&num, &den) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(ratio_to_f64(&Nat::from(3u32), &Nat::from(4u32)), 0.75);
        assert!(
            (ratio_to_f64(&Nat::from(7u32), &(Nat::one() << 200usize)) - 7.0 * 2f64.powi(-200))
                .abs()
                < 1e-70
        );
    }
}
