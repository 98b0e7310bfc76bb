//! Area Siegel-Veech constants via volume ratios, and Lyapunov exponent
//! sums for the Teichmueller geodesic flow.
//!
//! `c_area(Q_{g,n}) = k1 + k2 + k3`, where each piece is a ratio of
//! principal-strata volumes with combinatorial prefactors. Volumes are
//! single Laurent terms in pi, so the ratios stay exact; each `k_i` has
//! pi-degree -2 and their sum converges to 1/4 as the genus grows.


use crate::combinatorics::factorial;
use crate::correlators::Correlators;
use crate::exec;
use crate::float::pi_value_to_f64;
use crate::pi_value::PiValue;
use crate::rational::{rat, rat_int, Rational};
use crate::volumes::volume;
use crate::{Error, Result};

/// Exact decomposition of the area Siegel-Veech constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvDecomposition {
    pub g: u32,
    pub n: u32,
    pub kappa1: PiValue,
    pub kappa2: PiValue,
    pub kappa3: PiValue,
    pub c_area: PiValue,
}

/// The splitting pairs `((g1, n1), (g2, n2))` with `g1 + g2 = g`,
/// `n1 + n2 = n + 2`, `n_i >= 1`, and `3 g_i + n_i >= 4`, as ordered pairs.
pub fn splitting_pairs(g: u32, n: u32) -> Vec<((u32, u32), (u32, u32))> {
    let mut pairs = Vec::new();
    for g1 in 0..=g {
        let g2 = g - g1;
        for n1 in 1..=(n + 1) {
            let n2 = n + 2 - n1;
            if 3 * g1 + n1 >= 4 && 3 * g2 + n2 >= 4 {
                pairs.push(((g1, n1), (g2, n2)));
            }
        }
    }
    pairs
}

/// `c_area(Q_{g,n})` with its exact three-part decomposition. Requires
/// `g >= 2`.
pub fn c_area(corr: &Correlators, g: u32, n: u32) -> Result<SvDecomposition> {
    if g < 2 {
        return Err(Error::Domain(format!(
            "c_area requires g >= 2, got g = {g}"
        )));
    }
    let g64 = g as i64;
    let n64 = n as i64;
    let vol = volume(corr, g, n)?;

    // k1: sum over boundary splittings into two components.
    let pair_terms = exec::map_collect(splitting_pairs(g, n), |((g1, n1), (g2, n2))| -> Result<PiValue> {
        let factor = Rational::from_integer(factorial(4 * g as u64 + n as u64 - 4))
            / Rational::from_integer(factorial(4 * g1 as u64 + n1 as u64 - 4))
            / Rational::from_integer(factorial(4 * g2 as u64 + n2 as u64 - 4))
            * Rational::from_integer(factorial(n as u64))
            / Rational::from_integer(factorial(n1 as u64 - 1))
            / Rational::from_integer(factorial(n2 as u64 - 1))
            * Rational::from_integer(factorial(6 * g1 as u64 + 2 * n1 as u64 - 7))
            * Rational::from_integer(factorial(6 * g2 as u64 + 2 * n2 as u64 - 7))
            / Rational::from_integer(factorial(6 * g as u64 + 2 * n as u64 - 7));
        let v1 = volume(corr, g1, n1)?;
        let v2 = volume(corr, g2, n2)?;
        Ok((&v1 * &v2).scale(&factor))
    });
    let mut kappa1_numerator = PiValue::zero();
    for term in pair_terms {
        kappa1_numerator += &term?;
    }
    let kappa1 = kappa1_numerator.div_single(&vol)?.scale(&rat(1, 8));

    // k2: vanishes for n <= 1 (factor n (n - 1)).
    let kappa2 = if n >= 2 {
        let prefactor = rat_int(n64 * (n64 - 1) * (4 * g64 + n64 - 4))
            / rat_int((6 * g64 + 2 * n64 - 7) * (6 * g64 + 2 * n64 - 8))
            / rat_int(4);
        volume(corr, g, n - 1)?
            .div_single(&vol)?
            .scale(&prefactor)
    } else {
        PiValue::zero()
    };

    // k3: the non-separating degeneration.
    let kappa3 = {
        let prefactor = rat_int((4 * g64 + n64 - 4) * (4 * g64 + n64 - 5))
            / rat_int((6 * g64 + 2 * n64 - 7) * (6 * g64 + 2 * n64 - 8));
        volume(corr, g - 1, n + 2)?
            .div_single(&vol)?
            .scale(&prefactor)
    };

    let c_area = &(&kappa1 + &kappa2) + &kappa3;
    Ok(SvDecomposition {
        g,
        n,
        kappa1,
        kappa2,
        kappa3,
        c_area,
    })
}

/// `sum_i lambda_i(Q_{g,n}) = (1/24)(20g/3 - 4n/3 - 20/3) + (pi^2/3) c_area`.
pub fn lyapunov_sum(corr: &Correlators, g: u32, n: u32) -> Result<PiValue> {
    let sv = c_area(corr, g, n)?;
    lyapunov_sum_from(&sv)
}

/// Same as [`lyapunov_sum`], reusing an existing decomposition.
pub fn lyapunov_sum_from(sv: &SvDecomposition) -> Result<PiValue> {
    let linear = rat(
        20 * sv.g as i64 - 4 * sv.n as i64 - 20,
        72,
    );
    let weighted = (&PiValue::single(rat(1, 3), 2) * &sv.c_area).clone();
    Ok(PiValue::from_rational(linear) + weighted)
}

/// Row of a Siegel-Veech convergence report.
#[derive(Clone, Debug)]
pub struct SvTrendRow {
    pub g: u32,
    pub c_area: f64,
    pub deviation: f64,
}

/// Floats of `c_area(Q_{g,n})` across a genus range with deviations from
/// the limit 1/4.
pub fn c_area_trend(
    corr: &Correlators,
    g_range: impl IntoIterator<Item = u32>,
    n: u32,
    digits: u32,
) -> Result<Vec<SvTrendRow>> {
    let mut rows = Vec::new();
    for g in g_range {
        let sv = c_area(corr, g, n)?;
        let value = pi_value_to_f64(&sv.c_area, digits);
        rows.push(SvTrendRow {
            g,
            c_area: value,
            deviation: (value - 0.25).abs(),
        });
    }
    Ok(rows)
}
