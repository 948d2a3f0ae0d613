//! Scalar abstraction shared by the density and threshold computations.
//!
//! Thresholds are evaluated either exactly over [`BigRational`] or in floating
//! point. The only operation that is not closed over the rationals is taking
//! roots, which [`Scalar::root`] reports as `None` when the result is
//! irrational.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive {
    /// Exact flag: true for rational types, where equality is meaningful.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("u64 fits")
    }

    /// Converts a float through its shortest decimal representation, so that
    /// `0.1` becomes exactly `1/10` in rational types.
    fn from_decimal(x: f64) -> Option<Self>;

    /// Principal `n`-th root, `None` if it does not exist in this type.
    fn root(&self, n: u32) -> Option<Self>;

    fn powi(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn floor_count(&self) -> Option<u64>;

    fn ceil_count(&self) -> Option<u64>;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_decimal(x: f64) -> Option<Self> {
                x.is_finite().then_some(x as $t)
            }

            fn root(&self, n: u32) -> Option<Self> {
                match n {
                    0 => None,
                    1 => Some(*self),
                    2 if *self >= 0.0 => Some(self.sqrt()),
                    3 => Some(self.cbrt()),
                    _ if *self >= 0.0 => Some(self.powf(1.0 / n as $t)),
                    _ if n % 2 == 1 => Some(-(-*self).powf(1.0 / n as $t)),
                    _ => None,
                }
            }

            fn floor_count(&self) -> Option<u64> {
                (*self >= 0.0 && self.is_finite()).then(|| self.floor() as u64)
            }

            fn ceil_count(&self) -> Option<u64> {
                (*self >= 0.0 && self.is_finite()).then(|| self.ceil() as u64)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

fn exact_int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_decimal(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        parse_decimal(&format!("{x}"))
    }

    fn root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let num = exact_int_root(self.numer(), n)?;
        let den = exact_int_root(self.denom(), n)?;
        Some(BigRational::new(num, den))
    }

    fn floor_count(&self) -> Option<u64> {
        self.floor().to_integer().to_u64()
    }

    fn ceil_count(&self) -> Option<u64> {
        self.ceil().to_integer().to_u64()
    }
}

/// Parses a plain decimal literal (`-12.034`, `5`, `1e-3`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Exact binomial coefficient as a rational.
pub fn binomial_exact(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// Binomial coefficient in `u128`, saturating on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.1"), Some(q(1, 10)));
        assert_eq!(parse_decimal("-2.50"), Some(q(-5, 2)));
        assert_eq!(parse_decimal("1e-6"), Some(q(1, 1_000_000)));
        assert_eq!(parse_decimal("12"), Some(q(12, 1)));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(BigRational::from_decimal(0.3), Some(q(3, 10)));
    }

    #[test]
    fn rational_roots_exact_or_none() {
        assert_eq!(q(1, 1_000_000).root(3), Some(q(1, 100)));
        assert_eq!(q(1, 1_000_000).root(2), Some(q(1, 1000)));
        assert_eq!(q(2, 1).root(2), None);
        assert_eq!(q(-8, 27).root(3), Some(q(-2, 3)));
        assert_eq!(q(-4, 1).root(2), None);
    }

    #[test]
    fn float_roots() {
        assert!((8.0f64.root(3).unwrap() - 2.0).abs() < 1e-12);
        assert!((16.0f64.root(4).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!((-4.0f64).root(2), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(60, 3), 34220);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_exact(9, 2), q(36, 1));
    }
}
