//! Convergence report: deviation of normalized correlators from 1 on
//! sampled exponent tuples, volume ratios against their limit, and
//! Siegel-Veech constants against 1/4.

use moduli_core::correlators::Correlators;
use moduli_core::float::pi_value_to_f64;
use moduli_core::rational::Rational;
use moduli_core::{sv, volumes};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct ReportRow {
    pub g: u32,
    pub n: u32,
    pub statistic: String,
    pub value: f64,
    pub deviation: f64,
}

/// Fixed seed: the report must be byte-identical across runs.
const SAMPLE_SEED: u64 = 0x6d6f_6475_6c69;

/// Random composition of `total` into `n` nonnegative parts.
fn random_composition(rng: &mut ChaCha8Rng, total: u32, n: u32) -> Vec<u32> {
    // Stars and bars: sort n-1 uniform cut points.
    let mut cuts: Vec<u32> = (0..n - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(n as usize);
    let mut prev = 0;
    for &c in &cuts {
        parts.push(c - prev);
        prev = c;
    }
    parts.push(total - prev);
    parts
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rows: per (g, n) the worst sampled `|<d> - 1|` (extreme, balanced, and
/// random tuples within the dimension constraint), then volume ratios, then
/// Siegel-Veech constants.
pub fn convergence_report(
    correlators: &Correlators,
    max_g: u32,
    epsilon: f64,
    samples: u64,
    digits: u32,
) -> anyhow::Result<Vec<ReportRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut rows = Vec::new();

    for g in 2..=max_g {
        let n_cap = (epsilon * (g as f64).sqrt()).ceil().max(4.0) as u32;
        for n in 2..=n_cap.min(4) {
            let dim = 3 * g + n - 3;
            let mut tuples: Vec<Vec<u32>> = Vec::new();
            // Extreme: all weight on one entry.
            let mut extreme = vec![0u32; n as usize];
            extreme[0] = dim;
            tuples.push(extreme);
            // Balanced.
            let mut balanced = vec![dim / n; n as usize];
            let mut leftover = dim % n;
            for slot in balanced.iter_mut() {
                if leftover == 0 {
                    break;
                }
                *slot += 1;
                leftover -= 1;
            }
            tuples.push(balanced);
            for _ in 0..samples {
                tuples.push(random_composition(&mut rng, dim, n));
            }
            let mut worst = 0f64;
            for d in &tuples {
                let value = correlators.normalized(g, d)?;
                let deviation = (to_f64(&value) - 1.0).abs();
                worst = worst.max(deviation);
            }
            rows.push(ReportRow {
                g,
                n,
                statistic: "max |<d> - 1| (sampled)".to_string(),
                value: 1.0 + worst,
                deviation: worst,
            });
        }
    }

    // Volume ratios against the limit 1.
    let mut ratio_cells: Vec<(u32, u32)> = vec![(1, 1)];
    for g in 2..=max_g {
        ratio_cells.push((g, 0));
    }
    for (g, n) in ratio_cells {
        let ratio = volumes::normalized_ratio(correlators, g, n, digits)?;
        rows.push(ReportRow {
            g,
            n,
            statistic: "volume ratio".to_string(),
            value: ratio,
            deviation: (ratio - 1.0).abs(),
        });
    }

    // Siegel-Veech constants against 1/4.
    for g in 2..=max_g {
        let decomposition = sv::c_area(correlators, g, 0)?;
        let value = pi_value_to_f64(&decomposition.c_area, digits);
        rows.push(ReportRow {
            g,
            n: 0,
            statistic: "c_area".to_string(),
            value,
            deviation: (value - 0.25).abs(),
        });
    }
    Ok(rows)
}
