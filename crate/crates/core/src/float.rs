//! High-precision floating point on top of MPFR, plus certified rational
//! enclosures for exact-inequality checks against transcendental bounds.
//!
//! The working precision is given in decimal digits (default 60 throughout
//! the crate) and converted to bits with a guard margin. Enclosures use
//! MPFR's directed rounding, so `[lo, hi]` really brackets the exact value.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use rug::float::{Constant, Round};
use rug::ops::{AssignRound, Pow};
use rug::Float;

use crate::pi_value::PiValue;
use crate::rational::Rational;

pub const DEFAULT_DIGITS: u32 = 60;

const LOG2_10: f64 = 3.321928094887362;

/// Bits of mantissa for a decimal-digit request, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 32
}

/// Precision context carrying the working precision in bits.
#[derive(Clone, Copy, Debug)]
pub struct FloatCtx {
    prec: u32,
}

impl FloatCtx {
    pub fn with_digits(digits: u32) -> Self {
        Self {
            prec: bits_for_digits(digits),
        }
    }

    pub fn with_bits(prec: u32) -> Self {
        Self { prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.prec, x)
    }

    pub fn from_u64(&self, x: u64) -> Float {
        Float::with_val(self.prec, x)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub fn euler_gamma(&self) -> Float {
        Float::with_val(self.prec, Constant::Euler)
    }

    /// `zeta(k)` for integer `k >= 2`.
    pub fn zeta_u32(&self, k: u32) -> Float {
        Float::with_val(self.prec, Float::zeta_u(k))
    }

    pub fn ln_u64(&self, x: u64) -> Float {
        Float::with_val(self.prec, x).ln()
    }

    pub fn from_rational(&self, r: &Rational) -> Float {
        Float::with_val(self.prec, &rug_rational(r))
    }

    /// Evaluates an exact pi-polynomial at this precision.
    pub fn eval_pi_value(&self, v: &PiValue) -> Float {
        let pi = self.pi();
        let mut acc = Float::with_val(self.prec, 0);
        for (k, c) in v.terms() {
            acc += self.from_rational(c) * Float::with_val(self.prec, (&pi).pow(k as i32));
        }
        acc
    }
}

fn rug_integer(x: &BigInt) -> rug::Integer {
    let (sign, bytes) = x.to_bytes_le();
    let mut i = rug::Integer::from_digits(&bytes, rug::integer::Order::Lsf);
    if sign == Sign::Minus {
        i = -i;
    }
    i
}

fn rug_rational(r: &Rational) -> rug::Rational {
    rug::Rational::from((rug_integer(r.numer()), rug_integer(r.denom())))
}

fn bigint_from_rug(x: &rug::Integer) -> BigInt {
    let mut bytes = vec![0u8; x.significant_digits::<u8>()];
    x.write_digits(&mut bytes, rug::integer::Order::Lsf);
    let mag = BigInt::from_bytes_le(Sign::Plus, &bytes);
    if x.cmp0() == std::cmp::Ordering::Less {
        -mag
    } else {
        mag
    }
}

/// Exact rational value of a finite float.
pub fn rational_from_float(f: &Float) -> Rational {
    let q = f.to_rational().expect("finite float");
    let (num, den) = q.into_numer_denom();
    Rational::new(bigint_from_rug(&num), bigint_from_rug(&den))
}

/// A certified rational enclosure `lo <= x <= hi`.
#[derive(Clone, Debug)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    /// Interval power for nonnegative intervals.
    pub fn pow_nonneg(&self, e: u32) -> Enclosure {
        debug_assert!(!self.lo.is_negative());
        Enclosure {
            lo: crate::rational::rat_pow(&self.lo, e as i64),
            hi: crate::rational::rat_pow(&self.hi, e as i64),
        }
    }

    /// Scale by a nonnegative rational.
    pub fn scale(&self, c: &Rational) -> Enclosure {
        debug_assert!(!c.is_negative());
        Enclosure {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}

/// Certified enclosure of pi at `digits` decimal digits.
pub fn pi_enclosure(digits: u32) -> Enclosure {
    let prec = bits_for_digits(digits);
    let mut lo = Float::new(prec);
    lo.assign_round(Constant::Pi, Round::Down);
    let mut hi = Float::new(prec);
    hi.assign_round(Constant::Pi, Round::Up);
    Enclosure {
        lo: rational_from_float(&lo),
        hi: rational_from_float(&hi),
    }
}

/// Certified enclosure of `ln x` for a positive integer `x`.
pub fn ln_enclosure(x: u64, digits: u32) -> Enclosure {
    let prec = bits_for_digits(digits);
    let mut lo = Float::with_val(prec, x);
    lo.ln_round(Round::Down);
    let mut hi = Float::with_val(prec, x);
    hi.ln_round(Round::Up);
    Enclosure {
        lo: rational_from_float(&lo),
        hi: rational_from_float(&hi),
    }
}

/// Certified enclosure of an exact pi-polynomial with nonnegative
/// coefficients and nonnegative powers.
pub fn pi_value_enclosure(v: &PiValue, digits: u32) -> Enclosure {
    let pi = pi_enclosure(digits);
    let mut acc = Enclosure {
        lo: Rational::zero(),
        hi: Rational::zero(),
    };
    for (k, c) in v.terms() {
        assert!(
            !c.is_negative() && k >= 0,
            "enclosure requires nonnegative coefficients and powers"
        );
        acc = acc.add(&pi.pow_nonneg(k as u32).scale(c));
    }
    acc
}

/// `to_f64` of an exact pi-polynomial evaluated at `digits` precision.
pub fn pi_value_to_f64(v: &PiValue, digits: u32) -> f64 {
    FloatCtx::with_digits(digits).eval_pi_value(v).to_f64()
}
