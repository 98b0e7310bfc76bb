//! Factorial-family combinatorics, compositions, Bernoulli numbers, and
//! exact even zeta values.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::pi_value::PiValue;
use crate::rational::{rat_int, Rational};
use crate::{Error, Result};

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// `n!!` for `n >= -1`, with `(-1)!! = 1` (empty product).
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!(
            "double factorial of {n} is undefined (only n >= -1)"
        )));
    }
    let mut acc = BigInt::one();
    let mut j = n;
    while j >= 2 {
        acc *= j;
        j -= 2;
    }
    Ok(acc)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Multinomial coefficient `top! / (parts[0]! ... parts[r-1]!)`.
///
/// The parts must sum to `top`.
pub fn multinomial(top: u64, parts: &[u64]) -> Result<BigInt> {
    if parts.iter().sum::<u64>() != top {
        return Err(Error::Domain(format!(
            "multinomial parts must sum to {top}"
        )));
    }
    let mut acc = BigInt::one();
    let mut remaining = top;
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

/// Whether a composition iterator ranges over positive parts (`C_m(N)`) or
/// nonnegative parts (`K_m(N)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parts {
    Positive,
    Nonnegative,
}

/// The set of length-`m` compositions of `N`, with positive or nonnegative
/// parts. Iteration yields every composition exactly once.
#[derive(Clone, Copy, Debug)]
pub struct CompositionSpec {
    pub length: usize,
    pub total: u64,
    pub parts: Parts,
}

impl CompositionSpec {
    pub fn positive(length: usize, total: u64) -> Self {
        Self {
            length,
            total,
            parts: Parts::Positive,
        }
    }

    pub fn nonnegative(length: usize, total: u64) -> Self {
        Self {
            length,
            total,
            parts: Parts::Nonnegative,
        }
    }

    /// `|C_m(N)| = C(N-1, m-1)` or `|K_m(N)| = C(N+m-1, m-1)`.
    pub fn count(&self) -> BigInt {
        let m = self.length as u64;
        assert!(m >= 1, "compositions have length >= 1");
        match self.parts {
            Parts::Positive => {
                if self.total < m {
                    BigInt::zero()
                } else {
                    binomial(self.total - 1, m - 1)
                }
            }
            Parts::Nonnegative => binomial(self.total + m - 1, m - 1),
        }
    }

    pub fn iter(&self) -> CompositionIter {
        CompositionIter::new(*self)
    }
}

/// Lexicographic iterator over the compositions of a [`CompositionSpec`].
pub struct CompositionIter {
    spec: CompositionSpec,
    next: Option<Vec<u64>>,
}

impl CompositionIter {
    fn new(spec: CompositionSpec) -> Self {
        assert!(spec.length >= 1, "compositions have length >= 1");
        let m = spec.length;
        let first = match spec.parts {
            Parts::Positive => {
                if spec.total < m as u64 {
                    None
                } else {
                    let mut v = vec![1u64; m];
                    v[m - 1] = spec.total - (m as u64 - 1);
                    Some(v)
                }
            }
            Parts::Nonnegative => {
                let mut v = vec![0u64; m];
                v[m - 1] = spec.total;
                Some(v)
            }
        };
        Self { spec, next: first }
    }
}

impl Iterator for CompositionIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let min = match self.spec.parts {
            Parts::Positive => 1u64,
            Parts::Nonnegative => 0u64,
        };
        let m = self.spec.length;
        // Lexicographic successor: bump the rightmost non-final slot whose
        // suffix still has slack to give, then reset the suffix to its
        // minimal configuration (middle slots at `min`, slack on the last).
        let mut succ = current.clone();
        for i in (0..m.saturating_sub(1)).rev() {
            let suffix: u64 = succ[i + 1..].iter().sum();
            let suffix_floor = (m - 1 - i) as u64 * min;
            if suffix > suffix_floor {
                succ[i] += 1;
                let rest = suffix - 1;
                for slot in succ[i + 1..m - 1].iter_mut() {
                    *slot = min;
                }
                succ[m - 1] = rest - (m - 2 - i) as u64 * min;
                self.next = Some(succ);
                return Some(current);
            }
        }
        Some(current)
    }
}

/// Bernoulli number `B_m` under the convention `B_1 = -1/2`, via the
/// defining recurrence `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli(m: u32) -> Rational {
    bernoulli_row(m).pop().unwrap()
}

fn bernoulli_row(m: u32) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(m as usize + 1);
    for j in 0..=m as u64 {
        if j >= 3 && j % 2 == 1 {
            row.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in row.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += Rational::from_integer(binomial(j + 1, k as u64)) * b;
        }
        let value = if j == 0 {
            Rational::one()
        } else {
            -acc / Rational::from_integer(BigInt::from(j + 1))
        };
        row.push(value);
    }
    row
}

/// Exact `zeta(s)` for even `s >= 2`, as a rational multiple of `pi^s`:
/// `(-1)^(s/2+1) B_s (2 pi)^s / (2 s!)`.
///
/// Odd arguments are rejected rather than approximated; every formula in the
/// volume pipeline calls zeta at even arguments only, so an odd argument
/// signals a bug upstream.
pub fn zeta_even(s: u32) -> Result<PiValue> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "zeta is only evaluated exactly at even integers >= 2, got {s}"
        )));
    }
    let sign = if (s / 2 + 1) % 2 == 0 { 1 } else { -1 };
    let coeff = bernoulli(s) * rat_int(sign) * rat_int(2).pow(s as i32)
        / (rat_int(2) * Rational::from_integer(factorial(s as u64)));
    debug_assert!(coeff.is_positive());
    Ok(PiValue::single(coeff, s as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Pascal-triangle oracle, independent of the multiplicative formula.
    fn binomial_pascal(n: usize, k: usize) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
        row.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(17, 11), BigInt::from(12376u32));
        for n in 0..=17u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial_pascal(n as usize, k as usize));
            }
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(9).unwrap(), BigInt::from(945));
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(6, &[1, 2, 3]).unwrap(), BigInt::from(60));
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(
            CompositionSpec::positive(2, 3).count(),
            BigInt::from(2) // C_2(3)
        );
        assert_eq!(
            CompositionSpec::nonnegative(2, 3).count(),
            BigInt::from(4) // K_2(3)
        );
        assert_eq!(CompositionSpec::nonnegative(1, 0).count(), BigInt::one());
        assert_eq!(CompositionSpec::positive(4, 3).count(), BigInt::zero());
    }

    #[test]
    fn composition_iteration_matches_count() {
        for m in 1..=6usize {
            for total in 0..=12u64 {
                for parts in [Parts::Positive, Parts::Nonnegative] {
                    let spec = CompositionSpec {
                        length: m,
                        total,
                        parts,
                    };
                    let mut seen = std::collections::HashSet::new();
                    let mut count = 0u64;
                    for c in spec.iter() {
                        assert_eq!(c.len(), m);
                        assert_eq!(c.iter().sum::<u64>(), total);
                        if parts == Parts::Positive {
                            assert!(c.iter().all(|&x| x >= 1));
                        }
                        assert!(seen.insert(c), "duplicate composition");
                        count += 1;
                    }
                    assert_eq!(BigInt::from(count), spec.count(), "m={m} N={total}");
                }
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for m in (3..=21u32).step_by(2) {
            assert!(bernoulli(m).is_zero(), "B_{m} should vanish");
        }
    }

    #[test]
    fn zeta_even_values() {
        assert_eq!(zeta_even(2).unwrap(), PiValue::single(rat(1, 6), 2));
        assert_eq!(zeta_even(4).unwrap(), PiValue::single(rat(1, 90), 4));
        assert_eq!(zeta_even(6).unwrap(), PiValue::single(rat(1, 945), 6));
        assert_eq!(zeta_even(8).unwrap(), PiValue::single(rat(1, 9450), 8));
        assert!(zeta_even(3).is_err());
        assert!(zeta_even(0).is_err());
    }
}
