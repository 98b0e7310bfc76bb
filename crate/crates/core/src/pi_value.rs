//! Finite Laurent polynomials in pi with rational coefficients.
//!
//! Values of even zeta arguments, Masur-Veech volumes, and Siegel-Veech
//! constants all live in the ring Q[pi, 1/pi]. Representing them as exact
//! Laurent polynomials keeps every pipeline comparison an exact equality;
//! floating point appears only on explicit conversion.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_traits::Zero;

use crate::rational::Rational;
use crate::{Error, Result};

/// An exact value `sum_k c_k * pi^k` with rational `c_k` and integer `k`
/// (possibly negative). Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiValue {
    terms: BTreeMap<i64, Rational>,
}

impl PiValue {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `c * pi^k`.
    pub fn single(coefficient: Rational, pi_power: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(pi_power, coefficient);
        }
        Self { terms }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::single(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `pi^k` (zero if absent).
    pub fn coefficient(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// For values that are a single Laurent term, the pair `(c, k)`.
    pub fn single_term(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        Self { terms }
    }

    /// Multiplies by `pi^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect();
        Self { terms }
    }

    /// Exact quotient by a nonzero single-term value.
    ///
    /// Volume ratios (as in Siegel-Veech constants) divide a single term by a
    /// single term, which stays inside the ring.
    pub fn div_single(&self, divisor: &PiValue) -> Result<Self> {
        let (c, k) = divisor.single_term().ok_or_else(|| {
            Error::Domain("division requires a nonzero single-term divisor".into())
        })?;
        if c.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self.scale(&c.recip()).shift(-k))
    }

    fn insert_add(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for &PiValue {
    type Output = PiValue;
    fn add(self, rhs: &PiValue) -> PiValue {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }
}

impl Add for PiValue {
    type Output = PiValue;
    fn add(self, rhs: PiValue) -> PiValue {
        &self + &rhs
    }
}

impl AddAssign<&PiValue> for PiValue {
    fn add_assign(&mut self, rhs: &PiValue) {
        for (k, c) in &rhs.terms {
            self.insert_add(*k, c.clone());
        }
    }
}

impl Sub for &PiValue {
    type Output = PiValue;
    fn sub(self, rhs: &PiValue) -> PiValue {
        self + &(-rhs.clone())
    }
}

impl Neg for PiValue {
    type Output = PiValue;
    fn neg(self) -> PiValue {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        PiValue { terms }
    }
}

impl Mul for &PiValue {
    type Output = PiValue;
    fn mul(self, rhs: &PiValue) -> PiValue {
        let mut out = PiValue::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert_add(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Mul for PiValue {
    type Output = PiValue;
    fn mul(self, rhs: PiValue) -> PiValue {
        &self * &rhs
    }
}

impl MulAssign<&PiValue> for PiValue {
    fn mul_assign(&mut self, rhs: &PiValue) {
        *self = &*self * rhs;
    }
}

/// Renders `1/6 * pi^2`-style text: terms joined by ` + `, rational
/// coefficients, signed decimal exponents. Zero renders as `0`.
impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{c} * pi^{k}"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn display_format() {
        let v = PiValue::single(rat(1, 6), 2);
        assert_eq!(v.to_string(), "1/6 * pi^2");
        let w = &v + &PiValue::single(rat(-2, 3), -1);
        assert_eq!(w.to_string(), "-2/3 * pi^-1 + 1/6 * pi^2");
        assert_eq!(PiValue::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_drops_terms() {
        let v = PiValue::single(rat(1, 2), 4);
        let w = PiValue::single(rat(-1, 2), 4);
        assert!((&v + &w).is_zero());
    }

    #[test]
    fn exact_single_division() {
        let v = PiValue::single(rat(3, 4), 6);
        let d = PiValue::single(rat(1, 2), 2);
        let q = v.div_single(&d).unwrap();
        assert_eq!(q, PiValue::single(rat(3, 2), 4));
        assert!(PiValue::zero().div_single(&PiValue::zero()).is_err());
    }

    #[test]
    fn multiplication_mixes_powers() {
        let a = &PiValue::single(rat_int(2), 1) + &PiValue::single(rat_int(1), 0);
        let b = PiValue::single(rat(1, 2), 1);
        let p = &a * &b;
        assert_eq!(p.coefficient(2), rat_int(1));
        assert_eq!(p.coefficient(1), rat(1, 2));
    }
}
