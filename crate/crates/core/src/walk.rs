//! The absorbing asymmetric random walk and the exact correlator sandwich
//! bounds built from it.
//!
//! The walk starts at `n >= 3`, moves left with probability 2/3 and right
//! with probability 1/3, and is absorbed at 2. Its distribution at any fixed
//! time is computed by exact forward dynamic programming, so every bound
//! comparison downstream is an exact rational inequality.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{rat, rat_pow, Rational};
use crate::{Error, Result};

/// Exact distribution of the walk at a fixed time: state -> probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkDistribution {
    start: u32,
    time: u32,
    mass: BTreeMap<u32, Rational>,
}

impl WalkDistribution {
    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn time(&self) -> u32 {
        self.time
    }

    pub fn mass(&self, state: u32) -> Rational {
        self.mass.get(&state).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.mass.iter().map(|(s, p)| (*s, p))
    }

    pub fn total_mass(&self) -> Rational {
        self.mass.values().sum()
    }
}

fn step(mass: BTreeMap<u32, Rational>) -> BTreeMap<u32, Rational> {
    let left = rat(2, 3);
    let right = rat(1, 3);
    let mut next: BTreeMap<u32, Rational> = BTreeMap::new();
    for (state, p) in mass {
        if state == 2 {
            *next.entry(2).or_insert_with(Rational::zero) += p;
        } else {
            *next.entry(state - 1).or_insert_with(Rational::zero) += &left * &p;
            *next.entry(state + 1).or_insert_with(Rational::zero) += &right * &p;
        }
    }
    next
}

/// Forward DP for the walk distribution at time `t` from start `n >= 3`.
/// State 2 absorbs; a state `s > 2` moves to `s - 1` w.p. 2/3 and `s + 1`
/// w.p. 1/3.
pub fn walk_distribution(n: u32, t: u32) -> Result<WalkDistribution> {
    if n < 3 {
        return Err(Error::Domain(format!("walk starts at n >= 3, got {n}")));
    }
    let mut mass: BTreeMap<u32, Rational> = BTreeMap::new();
    mass.insert(n, Rational::one());
    for _ in 0..t {
        mass = step(mass);
    }
    debug_assert!(mass.keys().all(|&s| s >= 2));
    Ok(WalkDistribution {
        start: n,
        time: t,
        mass,
    })
}

/// `P[w_n(t) = 2]`.
pub fn absorption_probability(n: u32, t: u32) -> Result<Rational> {
    Ok(walk_distribution(n, t)?.mass(2))
}

fn tilted_of(mass: &BTreeMap<u32, Rational>) -> Rational {
    let mut acc = Rational::zero();
    for (state, p) in mass {
        if *state > 2 {
            acc += rat_pow(&rat(3, 2), *state as i64) * p;
        }
    }
    acc
}

/// `E[(3/2)^{w_n(t)} 1_{w_n(t) > 2}]`, exactly.
pub fn tilted_expectation(n: u32, t: u32) -> Result<Rational> {
    Ok(tilted_of(&walk_distribution(n, t)?.mass))
}

/// The lower sandwich bound `f_{g,n}(t)`:
///
/// - `n = 2`: `(6g - 3) / (6g - 1)`;
/// - `n >= 3`: `(1 - 1/(4g - 4t))^t (1 - 2/(6g - 6t - 1)) P[w_n(t) = 2]`.
///
/// Requires `g > t >= 0` and `n >= 2`. Every normalized intersection number
/// `<d>_{G,m}` with `G >= g` and `2 <= m <= n` is at least this value.
pub fn lower_bound_f(g: u32, n: u32, t: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(format!("lower bound needs n >= 2, got {n}")));
    }
    if g <= t {
        return Err(Error::Domain(format!(
            "lower bound needs g > t, got g = {g}, t = {t}"
        )));
    }
    if n == 2 {
        return Ok(rat(6 * g as i64 - 3, 6 * g as i64 - 1));
    }
    let g = g as i64;
    let t64 = t as i64;
    let damping = rat_pow(&(Rational::one() - rat(1, 4 * g - 4 * t64)), t64)
        * (Rational::one() - rat(2, 6 * g - 6 * t64 - 1));
    Ok(damping * absorption_probability(n, t)?)
}

/// The upper sandwich bound `F_{g,n}(t)`:
///
/// - `n = 2`: 1;
/// - `n >= 3`: `(1 + (n + 2t + 9)/(4(g - tn - t^2)))^t (P[w_n(t) = 2] +
///   E[(3/2)^{w_n(t)} 1_{w_n(t) > 2}])`.
///
/// Requires `g > (t + 2) n + t^2` and `n >= 2`. Every `<d>_{g,n}` with
/// `n >= 2` is at most this value.
pub fn upper_bound_f(g: u32, n: u32, t: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(format!("upper bound needs n >= 2, got {n}")));
    }
    let g64 = g as i64;
    let n64 = n as i64;
    let t64 = t as i64;
    if g64 <= (t64 + 2) * n64 + t64 * t64 {
        return Err(Error::Domain(format!(
            "upper bound needs g > (t + 2) n + t^2, got g = {g}, n = {n}, t = {t}"
        )));
    }
    if n == 2 {
        return Ok(Rational::one());
    }
    let growth = rat_pow(
        &(Rational::one() + rat(n64 + 2 * t64 + 9, 4 * (g64 - t64 * n64 - t64 * t64))),
        t64,
    );
    Ok(growth * (absorption_probability(n, t)? + tilted_expectation(n, t)?))
}

/// Report for the tilted-decay inequality
/// `E[(3/2)^{w_n(t)} 1_{w_n(t)>2}] <= (2/3)^{t/10 - n}`.
#[derive(Clone, Debug)]
pub struct TiltedDecayReport {
    pub n_max: u32,
    pub t_max: u32,
    pub cases_checked: usize,
    pub violations: Vec<(u32, u32)>,
}

/// Verifies the tilted-decay inequality exactly on the grid
/// `3 <= n <= n_max`, `0 <= t <= t_max`.
///
/// The fractional exponent is removed by comparing tenth powers:
/// `E^10 <= (2/3)^{t - 10 n}` as exact rationals.
pub fn verify_tilted_decay(n_max: u32, t_max: u32) -> TiltedDecayReport {
    let mut report = TiltedDecayReport {
        n_max,
        t_max,
        cases_checked: 0,
        violations: Vec::new(),
    };
    for n in 3..=n_max {
        // One DP sweep per n, checking every intermediate time.
        let mut mass: BTreeMap<u32, Rational> = BTreeMap::new();
        mass.insert(n, Rational::one());
        for t in 0..=t_max {
            let lhs = rat_pow(&tilted_of(&mass), 10);
            let rhs = rat_pow(&rat(2, 3), t as i64 - 10 * n as i64);
            report.cases_checked += 1;
            if lhs > rhs {
                report.violations.push((n, t));
            }
            if t < t_max {
                mass = step(mass);
            }
        }
    }
    report
}

/// The time parameter `t = min(g - 1, 10 n + 30 ceil(ln g))` used when the
/// lower bound is applied to computed correlators. Natural logarithm.
pub fn default_lower_time(g: u32, n: u32) -> u32 {
    let ceil_log = if g <= 1 {
        0
    } else {
        (g as f64).ln().ceil() as u32
    };
    (g.saturating_sub(1)).min(10 * n + 30 * ceil_log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn one_step_distribution() {
        let d = walk_distribution(3, 1).unwrap();
        assert_eq!(d.mass(2), rat(2, 3));
        assert_eq!(d.mass(4), rat(1, 3));
        assert_eq!(d.total_mass(), rat_int(1));
    }

    #[test]
    fn two_step_distribution() {
        let d = walk_distribution(3, 2).unwrap();
        assert_eq!(d.mass(2), rat(2, 3));
        assert_eq!(d.mass(3), rat(2, 9));
        assert_eq!(d.mass(5), rat(1, 9));
    }

    #[test]
    fn initial_condition() {
        let d = walk_distribution(5, 0).unwrap();
        assert_eq!(d.mass(5), rat_int(1));
        assert!(walk_distribution(2, 0).is_err());
    }

    #[test]
    fn mass_conservation_and_support() {
        for n in 3..=6u32 {
            for t in 0..=20u32 {
                let d = walk_distribution(n, t).unwrap();
                assert_eq!(d.total_mass(), rat_int(1), "n={n} t={t}");
                assert!(d.support().all(|(s, _)| s == 2 || (3..=n + t).contains(&s)));
            }
        }
    }

    #[test]
    fn absorption_values_and_monotonicity() {
        assert_eq!(absorption_probability(3, 1).unwrap(), rat(2, 3));
        assert_eq!(absorption_probability(3, 3).unwrap(), rat(22, 27));
        assert_eq!(absorption_probability(3, 0).unwrap(), rat_int(0));
        for n in 3..=5u32 {
            let mut prev = Rational::zero();
            for t in 0..=30u32 {
                let p = absorption_probability(n, t).unwrap();
                assert!(p >= prev, "absorption not monotone at n={n} t={t}");
                prev = p;
            }
        }
    }

    #[test]
    fn one_step_absorption_recursion() {
        // P[w_n(t) = 2] = (2/3) P[w_{n-1}(t-1) = 2] + (1/3) P[w_{n+1}(t-1) = 2]
        for n in 4..=7u32 {
            for t in 1..=15u32 {
                let lhs = absorption_probability(n, t).unwrap();
                let rhs = rat(2, 3) * absorption_probability(n - 1, t - 1).unwrap()
                    + rat(1, 3) * absorption_probability(n + 1, t - 1).unwrap();
                assert_eq!(lhs, rhs, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn tilted_expectation_values() {
        assert_eq!(tilted_expectation(3, 0).unwrap(), rat(27, 8));
        assert_eq!(tilted_expectation(3, 1).unwrap(), rat(1, 3) * rat(81, 16));
        let d = walk_distribution(4, 2).unwrap();
        let manual =
            rat_pow(&rat(3, 2), 4) * d.mass(4) + rat_pow(&rat(3, 2), 6) * d.mass(6);
        assert_eq!(tilted_expectation(4, 2).unwrap(), manual);
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_f(10, 2, 3).unwrap(), rat(57, 59));
        assert_eq!(lower_bound_f(10, 3, 0).unwrap(), rat_int(0));
        let expected = rat_pow(&rat(31, 32), 2) * rat(45, 47) * rat(2, 3);
        assert_eq!(lower_bound_f(10, 3, 2).unwrap(), expected);
        assert!(lower_bound_f(3, 3, 3).is_err());
        assert!(lower_bound_f(3, 1, 0).is_err());
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(upper_bound_f(100, 2, 3).unwrap(), rat_int(1));
        assert_eq!(upper_bound_f(100, 3, 0).unwrap(), rat(27, 8));
        // (g, n, t) = (200, 4, 5): prefactor (1 + 23/620)^5 times (P + E).
        let p = absorption_probability(4, 5).unwrap();
        let e = tilted_expectation(4, 5).unwrap();
        let expected = rat_pow(&rat(643, 620), 5) * (p + e);
        assert_eq!(upper_bound_f(200, 4, 5).unwrap(), expected);
        assert!(upper_bound_f(19, 2, 3).is_err());
    }

    #[test]
    fn tilted_decay_small_grid() {
        let report = verify_tilted_decay(5, 40);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert_eq!(report.cases_checked, 3 * 41);
        // t = 0 is equality at n = 3: (27/8)^10 = (3/2)^30.
        let lhs = rat_pow(&tilted_expectation(3, 0).unwrap(), 10);
        let rhs = rat_pow(&rat(2, 3), -30);
        assert_eq!(lhs, rhs);
    }
}
