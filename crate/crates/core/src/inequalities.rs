//! Brute-force verifiers for the combinatorial estimates feeding the
//! stable-graph bounds: the composition-factorial inequality, the
//! multinomial product inequality, and the exponential Taylor tail bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rug::ops::Pow;
use rug::Float;

use crate::combinatorics::{factorial, multinomial, CompositionSpec};
use crate::float::{bits_for_digits, FloatCtx};
use crate::rational::Rational;
use crate::{Error, Result};

/// Outcome of one exact inequality check.
#[derive(Clone, Debug)]
pub struct FactorialSumReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
    /// True when no composition triple satisfies the constraints (empty sum).
    pub vacuous: bool,
}

/// Exhaustively verifies
/// `sum prod_i (a_i + b_i + c_i - 2)! <= 2^(12m+9) (A + B + C - 3m + 1)!`,
/// where the sum ranges over nonnegative composition triples of `(A, B, C)`
/// of length `m` with `a_i + b_i + c_i >= 3` for every `i`.
pub fn verify_composition_factorial_inequality(
    m: usize,
    a_total: u64,
    b_total: u64,
    c_total: u64,
) -> Result<FactorialSumReport> {
    if m < 1 {
        return Err(Error::Domain("composition length must be >= 1".into()));
    }
    let mut lhs = BigInt::zero();
    let mut any = false;
    for a in CompositionSpec::nonnegative(m, a_total).iter() {
        for b in CompositionSpec::nonnegative(m, b_total).iter() {
            'c: for c in CompositionSpec::nonnegative(m, c_total).iter() {
                let mut product = BigInt::one();
                for i in 0..m {
                    let total = a[i] + b[i] + c[i];
                    if total < 3 {
                        continue 'c;
                    }
                    product *= factorial(total - 2);
                }
                lhs += product;
                any = true;
            }
        }
    }
    let slack = a_total as i64 + b_total as i64 + c_total as i64 - 3 * m as i64 + 1;
    let rhs = if slack < 0 {
        BigInt::zero()
    } else {
        BigInt::from(2u32).pow(12 * m as u32 + 9) * factorial(slack as u64)
    };
    // When the constraint set is empty the sum is zero and the statement is
    // vacuous regardless of the right side.
    let vacuous = !any;
    let holds = vacuous || lhs <= rhs;
    Ok(FactorialSumReport {
        lhs,
        rhs,
        holds,
        vacuous,
    })
}

#[derive(Clone, Debug)]
pub struct MultinomialProductReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

/// Verifies `prod_i binom(A_i; A_{i,1}, ..., A_{i,r}) <=
/// binom(sum A_i; sum_i A_{i,1}, ..., sum_i A_{i,r})` for a grid of
/// nonnegative integers with consistent row sums.
pub fn verify_multinomial_product_inequality(
    grid: &[Vec<u64>],
) -> Result<MultinomialProductReport> {
    if grid.is_empty() {
        return Err(Error::Domain("grid must have at least one row".into()));
    }
    let r = grid[0].len();
    if r == 0 || grid.iter().any(|row| row.len() != r) {
        return Err(Error::Domain("grid rows must share a positive length".into()));
    }
    let mut lhs = BigInt::one();
    let mut column_sums = vec![0u64; r];
    let mut top_sum = 0u64;
    for row in grid {
        let row_total: u64 = row.iter().sum();
        lhs *= multinomial(row_total, row)?;
        top_sum += row_total;
        for (acc, &x) in column_sums.iter_mut().zip(row.iter()) {
            *acc += x;
        }
    }
    let rhs = multinomial(top_sum, &column_sums)?;
    let holds = lhs <= rhs;
    Ok(MultinomialProductReport { lhs, rhs, holds })
}

#[derive(Clone, Debug)]
pub struct TaylorTailReport {
    /// `|e^R - sum_{j<=K} R^j/j!|` at the working precision.
    pub tail: f64,
    /// `delta^-1 (1 + delta)^(-delta R) e^R`.
    pub bound: f64,
    pub holds: bool,
}

/// Verifies the Taylor tail bound
/// `|e^R - sum_{j=0}^K R^j / j!| < delta^-1 (1 + delta)^(-delta R) e^R`
/// in high-precision floating point. Requires `R, delta > 0` and
/// `K > (1 + 2 delta) R`.
pub fn verify_taylor_tail_bound(
    r: &Rational,
    delta: &Rational,
    k: u32,
    digits: u32,
) -> Result<TaylorTailReport> {
    if !r.is_positive() || !delta.is_positive() {
        return Err(Error::Domain("R and delta must be positive".into()));
    }
    let threshold = (Rational::one() + delta * Rational::from_integer(2.into())) * r;
    if Rational::from_integer(k.into()) <= threshold {
        return Err(Error::Domain(format!(
            "need K > (1 + 2 delta) R, got K = {k} <= {threshold}"
        )));
    }
    let ctx = FloatCtx::with_digits(digits);
    let prec = bits_for_digits(digits);
    let rf = ctx.from_rational(r);
    let df = ctx.from_rational(delta);

    let exp_r = Float::with_val(prec, &rf).exp();
    let neg_dr = -Float::with_val(prec, &df * &rf);
    // Partial sum computed with exact rational terms, then rounded once.
    let mut partial = Rational::zero();
    let mut term = Rational::one();
    for j in 0..=k as u64 {
        if j > 0 {
            term = term * r / Rational::from_integer(j.into());
        }
        partial += &term;
    }
    let tail = Float::with_val(prec, &exp_r - &ctx.from_rational(&partial)).abs();
    let bound = Float::with_val(prec, (Float::with_val(prec, 1) + &df).pow(&neg_dr))
        * &exp_r
        / &df;
    let holds = tail < bound;
    Ok(TaylorTailReport {
        tail: tail.to_f64(),
        bound: bound.to_f64(),
        holds,
    })
}
