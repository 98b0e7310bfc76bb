//! Exact rational scalars.
//!
//! Every scalar quantity in this crate (correlator values, walk
//! probabilities, bound values) is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Both
//! invariants are maintained by the underlying representation on every
//! operation, so comparisons are exact equality.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a possibly negative integer exponent.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        pow_u(base, exp as u64)
    } else {
        pow_u(&base.recip(), (-exp) as u64)
    }
}

fn pow_u(base: &Rational, mut exp: u64) -> Rational {
    let mut result = Rational::one();
    let mut acc = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &acc;
        }
        exp >>= 1;
        if exp > 0 {
            acc = &acc * &acc;
        }
    }
    result
}

/// Parses `p`, `-p`, or `p/q` (no spaces).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
