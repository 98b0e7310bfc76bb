//! Normalized intersection numbers via the string, dilaton, and Virasoro
//! recursions, memoized over canonical keys.
//!
//! A key `(g, d)` is valid when `|d| = 3g + n - 3` and `2g + n >= 3`; its
//! value is the normalized intersection number `<d>_{g,n}`. The engine
//! always eliminates the minimal entry of `d`: a minimal 0 uses the string
//! equation, a minimal 1 the dilaton equation, and anything larger the full
//! Virasoro constraint. Any recursion subterm whose implied genus or
//! dimension is invalid contributes exactly zero.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::binomial;
use crate::exec;
use crate::rational::{parse_rational, rat, rat_int, Rational};
use crate::{Error, Result};

/// Canonical cache key: genus plus the exponent multiset, stored descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    genus: u32,
    exponents: Vec<u32>,
}

impl CorrelatorKey {
    /// Validates the dimension constraint `|d| = 3g + n - 3` and stability
    /// `2g + n >= 3`, then canonicalizes by sorting descending.
    pub fn new(genus: u32, exponents: &[u32]) -> Result<Self> {
        let n = exponents.len();
        if 2 * genus as usize + n < 3 {
            return Err(Error::Domain(format!(
                "unstable signature (g, n) = ({genus}, {n})"
            )));
        }
        let total: u64 = exponents.iter().map(|&d| d as u64).sum();
        let expected = 3 * genus as i64 + n as i64 - 3;
        if total as i64 != expected {
            return Err(Error::Dimension {
                genus,
                len: n,
                total,
                expected,
            });
        }
        let mut sorted = exponents.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            genus,
            exponents: sorted,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Exponents in descending order.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub inserts: u64,
}

/// Memoizing evaluator for normalized intersection numbers.
///
/// The cache maps each canonical key to its exact value; entries never
/// change once present, so concurrent duplicate computation is harmless.
pub struct Correlators {
    cache: DashMap<CorrelatorKey, Rational>,
    hits: AtomicU64,
    misses: AtomicU64,
    inserts: AtomicU64,
    dfac_odd: Mutex<Vec<BigInt>>,
}

impl Default for Correlators {
    fn default() -> Self {
        Self::new()
    }
}

impl Correlators {
    pub fn new() -> Self {
        Self {
            cache: DashMap::new(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            inserts: AtomicU64::new(0),
            dfac_odd: Mutex::new(vec![BigInt::one()]),
        }
    }

    /// The normalized intersection number `<d>_{g,n}`.
    pub fn normalized(&self, genus: u32, exponents: &[u32]) -> Result<Rational> {
        let key = CorrelatorKey::new(genus, exponents)?;
        Ok(self.eval(&key))
    }

    /// The raw correlator `<prod tau_{d_i}> = integral of prod psi_i^{d_i}`,
    /// obtained from the normalized value by
    /// `(2|d| + 1)!! / (24^g g! prod (2 d_i + 1)!!)`.
    pub fn raw(&self, genus: u32, exponents: &[u32]) -> Result<Rational> {
        let normalized = self.normalized(genus, exponents)?;
        let total: u64 = exponents.iter().map(|&d| d as u64).sum();
        let mut denom = rat_int(24).pow(genus as i32)
            * Rational::from_integer(crate::combinatorics::factorial(genus as u64));
        for &d in exponents {
            denom *= Rational::from_integer(self.dfac(2 * d as i64 + 1));
        }
        Ok(normalized * Rational::from_integer(self.dfac(2 * total as i64 + 1)) / denom)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            inserts: self.inserts.load(Ordering::Relaxed),
        }
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    fn eval(&self, key: &CorrelatorKey) -> Rational {
        if let Some(v) = self.cache.get(key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = self.compute(key);
        debug_assert!(!value.is_negative(), "negative correlator at {key:?}");
        if self.cache.insert(key.clone(), value.clone()).is_none() {
            self.inserts.fetch_add(1, Ordering::Relaxed);
        }
        value
    }

    /// Value of a not-necessarily-valid subterm: zero unless the key passes
    /// the dimension and stability checks.
    fn eval_sub(&self, genus: u32, exponents: &[u32]) -> Rational {
        match CorrelatorKey::new(genus, exponents) {
            Ok(key) => self.eval(&key),
            Err(_) => Rational::zero(),
        }
    }

    fn compute(&self, key: &CorrelatorKey) -> Rational {
        let g = key.genus;
        let d = &key.exponents;
        // Initial data <0,0,0>_{0,3} = 1 = <1>_{1,1}.
        if g == 0 && d.as_slice() == [0, 0, 0] {
            return Rational::one();
        }
        if g == 1 && d.as_slice() == [1] {
            return Rational::one();
        }
        // Eliminate the minimal entry (the last, since keys sort descending).
        let pivot = *d.last().expect("valid keys are nonempty");
        let rest = &d[..d.len() - 1];
        match pivot {
            0 => self.string_equation(g, rest),
            1 => self.dilaton_equation(g, rest),
            _ => self.virasoro(g, rest, pivot - 1),
        }
    }

    /// String equation, eliminating a 0 entry:
    /// `<d, 0> = (6g + 2n - 3)^{-1} sum_j (2 d_j + 1) <d_j - 1, d \ d_j>`.
    fn string_equation(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len() as i64;
        let mut acc = Rational::zero();
        let mut scratch = d.to_vec();
        for j in 0..d.len() {
            if d[j] == 0 {
                continue;
            }
            scratch[j] -= 1;
            acc += rat_int(2 * d[j] as i64 + 1) * self.eval_sub(g, &scratch);
            scratch[j] = d[j];
        }
        acc / rat_int(6 * g as i64 + 2 * n - 3)
    }

    /// Dilaton equation, eliminating a 1 entry:
    /// `<d, 1> = (6g + 3n - 6) / (6g + 2n - 3) <d>`.
    fn dilaton_equation(&self, g: u32, d: &[u32]) -> Rational {
        let n = d.len() as i64;
        rat(6 * g as i64 + 3 * n - 6, 6 * g as i64 + 2 * n - 3) * self.eval_sub(g, d)
    }

    /// Virasoro constraint eliminating an entry `k + 1 >= 2`:
    ///
    /// `<k+1, d>_{g,n+1} = (6g + 2n - 3)^{-1} sum_j (2d_j + 1) <d_j + k, d \ d_j>`
    /// `  + 12g / ((6g + 2n - 3)(6g + 2n - 5)) sum_{r+s=k-1} <r, s, d>_{g-1}`
    /// `  + 1/2 sum_{r+s=k-1} sum_{(I,J)} c(g', g'') <r, d_I> <s, d_J>`
    ///
    /// where `(I, J)` ranges over ordered pairs of disjoint index sets
    /// covering `{1..n}` and `g'` is fixed by `|d_I| + r = 3g' + |I| - 2`.
    /// The split sum iterates over sub-multisets with binomial
    /// multiplicities, which is the same sum grouped by equal terms.
    fn virasoro(&self, g: u32, d: &[u32], k: u32) -> Rational {
        let n = d.len() as i64;
        let denominator = rat_int(6 * g as i64 + 2 * n - 3);

        // Contact term.
        let mut first = Rational::zero();
        let mut scratch = d.to_vec();
        for j in 0..d.len() {
            scratch[j] = d[j] + k;
            first += rat_int(2 * d[j] as i64 + 1) * self.eval_sub(g, &scratch);
            scratch[j] = d[j];
        }
        first /= denominator.clone();

        // Genus-reducing term.
        let mut second = Rational::zero();
        if g >= 1 {
            let mut extended = d.to_vec();
            extended.push(0);
            extended.push(0);
            for r in 0..k {
                let s = k - 1 - r;
                let idx = extended.len();
                extended[idx - 2] = r;
                extended[idx - 1] = s;
                second += self.eval_sub(g - 1, &extended);
            }
            second *= rat_int(12 * g as i64)
                / (denominator.clone() * rat_int(6 * g as i64 + 2 * n - 5));
        }

        // Splitting term over ordered sub-multiset pairs.
        let counts = multiset_counts(d);
        let mut selection = vec![0u32; counts.len()];
        let mut third = Rational::zero();
        for r in 0..k {
            let s = k - 1 - r;
            third += self.split_sum(g, d, &counts, &mut selection, 0, r, s);
        }
        third /= rat_int(2);

        first + second + third
    }

    /// Recursive walk over sub-multisets of `d` (counts per distinct value),
    /// accumulating `mult * c(g', g'') * <r, d_I> <s, d_J>`.
    fn split_sum(
        &self,
        g: u32,
        d: &[u32],
        counts: &[(u32, u32)],
        selection: &mut Vec<u32>,
        depth: usize,
        r: u32,
        s: u32,
    ) -> Rational {
        if depth == counts.len() {
            return self.split_term(g, d, counts, selection, r, s);
        }
        let mut acc = Rational::zero();
        for take in 0..=counts[depth].1 {
            selection[depth] = take;
            acc += self.split_sum(g, d, counts, selection, depth + 1, r, s);
        }
        selection[depth] = 0;
        acc
    }

    fn split_term(
        &self,
        g: u32,
        d: &[u32],
        counts: &[(u32, u32)],
        selection: &[u32],
        r: u32,
        s: u32,
    ) -> Rational {
        let n = d.len() as i64;
        let mut n1 = 0i64;
        let mut sum1 = 0i64;
        for ((value, _), take) in counts.iter().zip(selection) {
            n1 += *take as i64;
            sum1 += *value as i64 * *take as i64;
        }
        // |d_I| + r = 3g' + n' - 2 fixes g'; drop non-integral or
        // out-of-range splits.
        let triple = sum1 + r as i64 + 2 - n1;
        if triple < 0 || triple % 3 != 0 {
            return Rational::zero();
        }
        let g1 = triple / 3;
        let g2 = g as i64 - g1;
        if g2 < 0 {
            return Rational::zero();
        }
        let n2 = n - n1;

        let mut left = Vec::with_capacity(n1 as usize + 1);
        left.push(r);
        let mut right = Vec::with_capacity(n2 as usize + 1);
        right.push(s);
        for ((value, count), take) in counts.iter().zip(selection) {
            for _ in 0..*take {
                left.push(*value);
            }
            for _ in 0..(count - take) {
                right.push(*value);
            }
        }
        let left_value = self.eval_sub(g1 as u32, &left);
        if left_value.is_zero() {
            return Rational::zero();
        }
        let right_value = self.eval_sub(g2 as u32, &right);
        if right_value.is_zero() {
            return Rational::zero();
        }

        let mut multiplicity = BigInt::one();
        for ((_, count), take) in counts.iter().zip(selection) {
            multiplicity *= binomial(*count as u64, *take as u64);
        }
        let coeff = Rational::from_integer(
            multiplicity
                * binomial(g as u64, g1 as u64)
                * self.dfac(6 * g1 + 2 * n1 - 3)
                * self.dfac(6 * g2 + 2 * n2 - 3),
        ) / Rational::from_integer(self.dfac(6 * g as i64 + 2 * n - 3));
        coeff * left_value * right_value
    }

    /// Grow-only table of odd double factorials, indexed by `(v + 1) / 2`.
    fn dfac(&self, v: i64) -> BigInt {
        debug_assert!(v >= -1 && v % 2 != 0);
        let idx = ((v + 1) / 2) as usize;
        let mut table = self.dfac_odd.lock().unwrap();
        while table.len() <= idx {
            let next = table.last().unwrap() * (2 * table.len() as i64 - 1);
            table.push(next);
        }
        table[idx].clone()
    }

    /// Evaluates `<d>_{g,n}` by eliminating entry `index` (instead of the
    /// minimum) with the recursion dictated by its value. The splitting term
    /// here iterates literally over ordered pairs of disjoint index subsets,
    /// so it doubles as an independent route through the Virasoro sum.
    ///
    /// Well-definedness of the recursion system means the result equals
    /// [`Self::normalized`] for every index.
    pub fn apply_dvv_at(&self, genus: u32, exponents: &[u32], index: usize) -> Result<Rational> {
        let key = CorrelatorKey::new(genus, exponents)?;
        if index >= exponents.len() {
            return Err(Error::Domain(format!(
                "index {index} out of range for a {}-tuple",
                exponents.len()
            )));
        }
        // The two initial-data keys are not reducible by any elimination:
        // removing an entry leaves the stable range.
        if (genus, key.exponents()) == (0, [0, 0, 0].as_slice())
            || (genus, key.exponents()) == (1, [1].as_slice())
        {
            return Ok(Rational::one());
        }
        let g = genus;
        let mut rest = exponents.to_vec();
        let pivot = rest.remove(index);
        match pivot {
            0 => Ok(self.string_equation(g, &rest)),
            1 => Ok(self.dilaton_equation(g, &rest)),
            _ => {
                let k = pivot - 1;
                let n = rest.len() as i64;
                let denominator = rat_int(6 * g as i64 + 2 * n - 3);

                let mut first = Rational::zero();
                let mut scratch = rest.clone();
                for j in 0..rest.len() {
                    scratch[j] = rest[j] + k;
                    first += rat_int(2 * rest[j] as i64 + 1) * self.eval_sub(g, &scratch);
                    scratch[j] = rest[j];
                }
                first /= denominator.clone();

                let mut second = Rational::zero();
                if g >= 1 {
                    for r in 0..k {
                        let s = k - 1 - r;
                        let mut extended = rest.clone();
                        extended.push(r);
                        extended.push(s);
                        second += self.eval_sub(g - 1, &extended);
                    }
                    second *= rat_int(12 * g as i64)
                        / (denominator.clone() * rat_int(6 * g as i64 + 2 * n - 5));
                }

                let mut third = Rational::zero();
                for r in 0..k {
                    let s = k - 1 - r;
                    for mask in 0u32..(1 << rest.len()) {
                        let mut left = vec![r];
                        let mut right = vec![s];
                        for (j, &dj) in rest.iter().enumerate() {
                            if mask & (1 << j) != 0 {
                                left.push(dj);
                            } else {
                                right.push(dj);
                            }
                        }
                        let n1 = (left.len() - 1) as i64;
                        let n2 = n - n1;
                        let sum1: i64 = left[1..].iter().map(|&x| x as i64).sum();
                        let triple = sum1 + r as i64 + 2 - n1;
                        if triple < 0 || triple % 3 != 0 {
                            continue;
                        }
                        let g1 = triple / 3;
                        let g2 = g as i64 - g1;
                        if g2 < 0 {
                            continue;
                        }
                        let coeff = Rational::from_integer(
                            binomial(g as u64, g1 as u64)
                                * self.dfac(6 * g1 + 2 * n1 - 3)
                                * self.dfac(6 * g2 + 2 * n2 - 3),
                        )
                            / Rational::from_integer(self.dfac(6 * g as i64 + 2 * n - 3));
                        third += coeff
                            * self.eval_sub(g1 as u32, &left)
                            * self.eval_sub(g2 as u32, &right);
                    }
                }
                third /= rat_int(2);

                Ok(first + second + third)
            }
        }
    }

    /// Exhaustively verifies `<d> <= (3/2)^(n-1)` over every valid key with
    /// `|d| <= max_dim`. Returns the largest attained value of
    /// `<d> (2/3)^(n-1)` together with any violations (expected none).
    pub fn exhaustive_bound_check(&self, max_dim: u32) -> BoundCheckReport {
        let keys = enumerate_keys(max_dim);
        let results = exec::map_collect(keys, |key| {
            let value = self.eval(&key);
            let ratio =
                value * crate::rational::rat_pow(&rat(2, 3), key.len() as i64 - 1);
            let violated = ratio > Rational::one();
            (key, ratio, violated)
        });
        let mut report = BoundCheckReport {
            keys_checked: results.len(),
            max_ratio: Rational::zero(),
            max_ratio_key: None,
            violations: Vec::new(),
        };
        for (key, ratio, violated) in results {
            if ratio > report.max_ratio {
                report.max_ratio = ratio.clone();
                report.max_ratio_key = Some(key.clone());
            }
            if violated {
                report.violations.push(key);
            }
        }
        report
    }

    /// Checks `(6g - 3)/(6g - 1) <= <k, 3g - k - 1>_{g,2} <= 1` for every
    /// `k` in `[0, 3g - 1]`.
    pub fn two_point_scan(&self, g: u32) -> Result<TwoPointReport> {
        if g < 1 {
            return Err(Error::Domain("two-point scan requires g >= 1".into()));
        }
        let top = 3 * g - 1;
        let values = exec::map_collect((0..=top / 2).collect::<Vec<_>>(), |k| {
            self.eval_sub(g, &[k, top - k])
        });
        let lower = rat(6 * g as i64 - 3, 6 * g as i64 - 1);
        let mut min = values[0].clone();
        let mut max = values[0].clone();
        for v in &values {
            if *v < min {
                min = v.clone();
            }
            if *v > max {
                max = v.clone();
            }
        }
        let holds = min >= lower && max <= Rational::one();
        Ok(TwoPointReport {
            genus: g,
            lower_bound: lower,
            min,
            max,
            holds,
        })
    }

    /// Persists the cache: header `MKCACHE v1`, then one `g|d1,...,dn|p/q`
    /// line per entry, lexicographically sorted.
    pub fn save_cache(&self, path: &Path) -> Result<usize> {
        let mut lines: Vec<String> = self
            .cache
            .iter()
            .map(|entry| {
                let key = entry.key();
                let ds: Vec<String> = key.exponents.iter().map(|d| d.to_string()).collect();
                format!("{}|{}|{}", key.genus, ds.join(","), entry.value())
            })
            .collect();
        lines.sort_unstable();
        let mut out = String::from("MKCACHE v1\n");
        for line in &lines {
            let _ = writeln!(out, "{line}");
        }
        fs::write(path, out)?;
        Ok(lines.len())
    }

    /// Loads entries from a file written by [`Self::save_cache`]. Returns the
    /// number of entries read.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "MKCACHE v1")) => {}
            Some((_, other)) => {
                return Err(Error::Format {
                    line: 1,
                    message: format!("expected header 'MKCACHE v1', found '{other}'"),
                })
            }
            None => {
                return Err(Error::Format {
                    line: 1,
                    message: "empty cache file".into(),
                })
            }
        }
        let mut count = 0;
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let entry = parse_cache_line(line).ok_or_else(|| Error::Format {
                line: idx + 1,
                message: format!("malformed entry '{line}'"),
            })?;
            self.cache.insert(entry.0, entry.1);
            count += 1;
        }
        Ok(count)
    }
}

fn parse_cache_line(line: &str) -> Option<(CorrelatorKey, Rational)> {
    let mut fields = line.split('|');
    let genus: u32 = fields.next()?.parse().ok()?;
    let ds = fields.next()?;
    let value = parse_rational(fields.next()?)?;
    if fields.next().is_some() {
        return None;
    }
    let exponents: Vec<u32> = ds
        .split(',')
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    let key = CorrelatorKey::new(genus, &exponents).ok()?;
    if key.exponents() != exponents.as_slice() {
        return None; // entries must be stored descending
    }
    Some((key, value))
}

/// `(value, count)` pairs for the distinct entries of `d`.
fn multiset_counts(d: &[u32]) -> Vec<(u32, u32)> {
    let mut counts: Vec<(u32, u32)> = Vec::new();
    for &v in d {
        match counts.iter_mut().find(|(value, _)| *value == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v, 1)),
        }
    }
    counts
}

/// All valid keys with `|d| <= max_dim`, in deterministic order.
pub fn enumerate_keys(max_dim: u32) -> Vec<CorrelatorKey> {
    let mut keys = Vec::new();
    for g in 0u32..=(max_dim / 3 + 1) {
        for n in 1u32.. {
            let dim = 3 * g as i64 + n as i64 - 3;
            if dim > max_dim as i64 {
                break;
            }
            if dim < 0 || (2 * g + n) < 3 {
                continue;
            }
            let mut prefix = Vec::new();
            partitions_into(dim as u32, n, dim as u32, &mut prefix, &mut keys, g);
        }
    }
    keys
}

/// Appends all keys for descending length-`slots` sequences summing to
/// `total` with parts bounded by `cap`.
fn partitions_into(
    total: u32,
    slots: u32,
    cap: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<CorrelatorKey>,
    genus: u32,
) {
    if slots == 0 {
        if total == 0 {
            if let Ok(key) = CorrelatorKey::new(genus, prefix) {
                out.push(key);
            }
        }
        return;
    }
    let top = cap.min(total);
    for first in (0..=top).rev() {
        if first as u64 * slots as u64 >= total as u64 {
            prefix.push(first);
            partitions_into(total - first, slots - 1, first, prefix, out, genus);
            prefix.pop();
        }
    }
}

/// `<3g - 2, 1^{n-1}>_{g,n}` in closed form via repeated dilaton steps:
/// `prod_{j=1}^{n-1} (6g + 3j - 6) / (6g + 2j - 3)`.
pub fn dilaton_chain(g: u32, n: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 1..n as i64 {
        acc *= rat(6 * g as i64 + 3 * j - 6, 6 * g as i64 + 2 * j - 3);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct BoundCheckReport {
    pub keys_checked: usize,
    /// Maximum of `<d> (2/3)^(n-1)` over the scanned keys.
    pub max_ratio: Rational,
    pub max_ratio_key: Option<CorrelatorKey>,
    pub violations: Vec<CorrelatorKey>,
}

#[derive(Clone, Debug)]
pub struct TwoPointReport {
    pub genus: u32,
    pub lower_bound: Rational,
    pub min: Rational,
    pub max: Rational,
    pub holds: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{double_factorial, factorial};
    use crate::rational::rat_pow;

    #[test]
    fn base_cases() {
        let c = Correlators::new();
        assert_eq!(c.normalized(0, &[0, 0, 0]).unwrap(), rat_int(1));
        assert_eq!(c.normalized(1, &[1]).unwrap(), rat_int(1));
    }

    #[test]
    fn dimension_and_stability_errors() {
        let c = Correlators::new();
        assert!(matches!(
            c.normalized(0, &[0, 0, 0, 0]),
            Err(Error::Dimension { .. })
        ));
        assert!(c.normalized(0, &[0]).is_err());
        assert!(c.normalized(1, &[2]).is_err());
    }

    #[test]
    fn raw_correlator_values() {
        let c = Correlators::new();
        // <tau_1> = 1/24, <tau_0^3> = 1, and the inverted one-point value at
        // genus two: 9!! / (24^2 2! 9!!) = 1/1152.
        assert_eq!(c.raw(1, &[1]).unwrap(), rat(1, 24));
        assert_eq!(c.raw(0, &[0, 0, 0]).unwrap(), rat_int(1));
        assert_eq!(c.raw(2, &[4]).unwrap(), rat(1, 1152));
    }

    #[test]
    fn one_point_normalization() {
        let c = Correlators::new();
        for g in 1..=8u32 {
            assert_eq!(
                c.normalized(g, &[3 * g - 2]).unwrap(),
                rat_int(1),
                "<3g-2>_{{{g},1}}"
            );
        }
    }

    #[test]
    fn genus_zero_closed_form() {
        let c = Correlators::new();
        for n in 3..=12u32 {
            let mut d = vec![1u32; (n - 3) as usize];
            d.extend_from_slice(&[0, 0, 0]);
            let expected = rat_int(3).pow(n as i32 - 3)
                * Rational::from_integer(factorial(n as u64 - 3))
                / Rational::from_integer(double_factorial(2 * n as i64 - 5).unwrap());
            assert_eq!(c.normalized(0, &d).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn dilaton_chain_matches_engine() {
        let c = Correlators::new();
        for g in 1..=5u32 {
            for n in 1..=5u32 {
                let mut d = vec![3 * g - 2];
                d.extend(std::iter::repeat(1).take(n as usize - 1));
                assert_eq!(
                    c.normalized(g, &d).unwrap(),
                    dilaton_chain(g, n),
                    "g = {g}, n = {n}"
                );
            }
        }
        assert_eq!(dilaton_chain(1, 1), rat_int(1));
        assert_eq!(dilaton_chain(2, 2), rat(9, 11));
        assert_eq!(dilaton_chain(2, 3), rat(9, 11) * rat(12, 13));
    }

    #[test]
    fn permutation_invariance() {
        let c = Correlators::new();
        let a = c.normalized(1, &[2, 0, 1]).unwrap();
        let b = c.normalized(1, &[0, 1, 2]).unwrap();
        let d = c.normalized(1, &[1, 2, 0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, d);
    }

    #[test]
    fn two_point_bounds_small_genus() {
        let c = Correlators::new();
        for g in 1..=4u32 {
            let report = c.two_point_scan(g).unwrap();
            assert!(report.holds, "two-point bounds failed at g = {g}");
        }
        // <1,1>_{1,2} = 3/5 via a single dilaton step from <1>_{1,1}.
        assert_eq!(c.normalized(1, &[1, 1]).unwrap(), rat(3, 5));
    }

    #[test]
    fn string_equation_consistency() {
        // <d, 0>_{g,n+1} recomputed from lower-order values directly. The
        // tuples d satisfy |d| = 3g + n - 2, so (d, 0) is a valid key.
        let c = Correlators::new();
        let cases: [(u32, &[u32]); 4] =
            [(1, &[2, 1]), (2, &[5, 1]), (1, &[4, 0, 0]), (0, &[1, 1, 0, 0])];
        for (g, d) in cases {
            let mut with_zero = d.to_vec();
            with_zero.push(0);
            let lhs = c.normalized(g, &with_zero).unwrap();
            let mut rhs = Rational::zero();
            for j in 0..d.len() {
                if d[j] == 0 {
                    continue;
                }
                let mut sub = d.to_vec();
                sub[j] -= 1;
                rhs += rat_int(2 * d[j] as i64 + 1) * c.normalized(g, &sub).unwrap();
            }
            rhs /= rat_int(6 * g as i64 + 2 * d.len() as i64 - 3);
            assert_eq!(lhs, rhs, "string equation at ({g}, {d:?})");
        }
    }

    #[test]
    fn dvv_index_independence_small() {
        let c = Correlators::new();
        let cases: [(u32, &[u32]); 3] = [(1, &[2, 1, 0]), (3, &[7, 1]), (2, &[3, 2, 1])];
        for (g, d) in cases {
            let reference = c.normalized(g, d).unwrap();
            for i in 0..d.len() {
                assert_eq!(
                    c.apply_dvv_at(g, d, i).unwrap(),
                    reference,
                    "index {i} of ({g}, {d:?})"
                );
            }
        }
    }

    #[test]
    fn exponential_bound_small() {
        let c = Correlators::new();
        let report = c.exhaustive_bound_check(6);
        assert!(report.violations.is_empty());
        assert!(report.keys_checked > 0);
        // The named near-extremal key: <1^6, 0^3>_{0,9}.
        let mut d = vec![1u32; 6];
        d.extend_from_slice(&[0, 0, 0]);
        let ratio = c.normalized(0, &d).unwrap() * rat_pow(&rat(2, 3), 8);
        assert!(report.max_ratio >= ratio);
        assert!(report.max_ratio <= Rational::one());
    }

    #[test]
    fn key_enumeration_is_exhaustive_and_unique() {
        let keys = enumerate_keys(4);
        let set: std::collections::HashSet<_> = keys.iter().cloned().collect();
        assert_eq!(set.len(), keys.len());
        // Spot membership: all three signatures of dimension zero..three.
        assert!(set.contains(&CorrelatorKey::new(0, &[0, 0, 0]).unwrap()));
        assert!(set.contains(&CorrelatorKey::new(1, &[1]).unwrap()));
        assert!(set.contains(&CorrelatorKey::new(2, &[4]).unwrap()));
        assert!(set.contains(&CorrelatorKey::new(1, &[2, 1, 0]).unwrap()));
        assert!(keys.iter().all(|k| {
            k.exponents().iter().map(|&x| x as i64).sum::<i64>()
                == 3 * k.genus() as i64 + k.len() as i64 - 3
        }));
    }

    #[test]
    fn cache_round_trip() {
        let c = Correlators::new();
        c.normalized(2, &[4]).unwrap();
        c.normalized(1, &[1, 1]).unwrap();
        let dir = std::env::temp_dir().join(format!("mkcache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        let written = c.save_cache(&path).unwrap();
        assert!(written >= 2);

        let fresh = Correlators::new();
        let read = fresh.load_cache(&path).unwrap();
        assert_eq!(read, written);
        let resaved = dir.join("cache2.txt");
        fresh.save_cache(&resaved).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            std::fs::read_to_string(&resaved).unwrap()
        );
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn cache_load_errors() {
        let dir = std::env::temp_dir().join(format!("mkcache-err-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();

        let empty_with_header = dir.join("header-only.txt");
        std::fs::write(&empty_with_header, "MKCACHE v1\n").unwrap();
        let c = Correlators::new();
        assert_eq!(c.load_cache(&empty_with_header).unwrap(), 0);

        let corrupted = dir.join("bad.txt");
        std::fs::write(&corrupted, "MKCACHE v1\n1|1|1\n2|zzz|1/2\n").unwrap();
        match c.load_cache(&corrupted) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected format error, got {other:?}"),
        }

        let wrong_header = dir.join("wrong.txt");
        std::fs::write(&wrong_header, "MKCACHE v2\n").unwrap();
        assert!(matches!(
            c.load_cache(&wrong_header),
            Err(Error::Format { line: 1, .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
