//! Masur-Veech volumes of principal strata as weighted sums over stable
//! graphs.
//!
//! For each stable graph the per-vertex polynomial attaches one variable per
//! edge (self-loop variables appear twice at their vertex, legs contribute
//! zeros), the graph polynomial multiplies these with a combinatorial
//! prefactor and one factor `b_e` per edge, and the zeta-linear map sends
//! each monomial `prod b_e^{r_e}` to `prod r_e! zeta(r_e + 1)`. Every
//! exponent `r_e` produced this way is odd, so zeta is only evaluated at
//! even arguments and the result lives in `Q[pi]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial, double_factorial, factorial, zeta_even, CompositionSpec,
};
use crate::correlators::Correlators;
use crate::exec;
use crate::float::pi_value_to_f64;
use crate::graphs::{enumerate_stable_graphs, StableGraph};
use crate::pi_value::PiValue;
use crate::rational::{rat, rat_int, rat_pow, Rational};
use crate::{Error, Result};

/// A slot of a per-vertex variable assignment: an edge variable or a zero
/// (coming from a leg).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Zero,
    Var(usize),
}

/// Sparse polynomial in the edge variables of one stable graph; keys are
/// exponent vectors of length `num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl EdgePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; num_vars], c);
        }
        Self { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u16]) -> Rational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn insert_add(&mut self, key: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn mul(&self, other: &EdgePolynomial) -> EdgePolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = EdgePolynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let key: Vec<u16> =
                    ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.insert_add(key, ca * cb);
            }
        }
        out
    }

    /// Multiplies by `prod_e b_e` (one extra power of every variable).
    pub fn shift_all_vars(&self) -> EdgePolynomial {
        let mut out = EdgePolynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            out.insert_add(e.iter().map(|x| x + 1).collect(), c.clone());
        }
        out
    }
}

/// The per-vertex polynomial `N_{g_v, m_v}` with the given variable
/// assignment substituted: zeros for leg slots, edge variables (self-loop
/// variables listed twice) elsewhere.
///
/// `N_{g,m}(b) = (6g + 2m - 5)!! / (2^(5g+m-3) 3^g g!) *`
/// `sum_{d in K_m(3g + m - 3)} <d> prod_j b_j^(2 d_j) / (2 d_j + 1)!`
///
/// Entries of `d` paired with zero slots are forced to zero, so only
/// `<d', 0^z>` coefficients survive.
pub fn n_polynomial(
    corr: &Correlators,
    g_v: u32,
    slots: &[Slot],
    num_vars: usize,
) -> Result<EdgePolynomial> {
    let m = slots.len();
    if 2 * g_v as usize + m < 3 {
        return Err(Error::Domain(format!(
            "unstable vertex: g_v = {g_v}, m_v = {m}"
        )));
    }
    let dim = 3 * g_v as i64 + m as i64 - 3;
    debug_assert!(dim >= 0);
    let dim = dim as u64;

    let active: Vec<usize> = slots
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            Slot::Var(_) => Some(i),
            Slot::Zero => None,
        })
        .collect();

    let prefactor = Rational::from_integer(
        double_factorial(6 * g_v as i64 + 2 * m as i64 - 5).expect("odd argument"),
    ) / (rat_int(2).pow((5 * g_v as usize + m - 3) as i32)
        * rat_int(3).pow(g_v as i32)
        * Rational::from_integer(factorial(g_v as u64)));

    let mut poly = EdgePolynomial::zero(num_vars);
    if active.is_empty() {
        if dim == 0 {
            let coefficient = corr.normalized(g_v, &vec![0; m])?;
            poly.insert_add(vec![0; num_vars], prefactor * coefficient);
        }
        return Ok(poly);
    }

    let spec = CompositionSpec::nonnegative(active.len(), dim);
    let mut full = vec![0u32; m];
    for partial in spec.iter() {
        for (slot, &value) in active.iter().zip(partial.iter()) {
            full[*slot] = value as u32;
        }
        let mut coefficient = corr.normalized(g_v, &full)? * &prefactor;
        if coefficient.is_zero() {
            continue;
        }
        let mut exponents = vec![0u16; num_vars];
        for &slot in &active {
            let d = full[slot];
            coefficient /= Rational::from_integer(factorial(2 * d as u64 + 1));
            if let Slot::Var(v) = slots[slot] {
                exponents[v] += 2 * d as u16;
            }
        }
        poly.insert_add(exponents, coefficient);
        for &slot in &active {
            full[slot] = 0;
        }
    }
    Ok(poly)
}

/// Edge variable layout for a graph: self-loops first (vertex by vertex),
/// then simple edges in `(u, v)` lexicographic order, parallel copies
/// consecutive. Returns per-vertex slot lists and the variable count.
fn edge_layout(graph: &StableGraph) -> (Vec<Vec<Slot>>, usize) {
    let v = graph.vertex_count();
    let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); v];
    let mut next = 0usize;
    for u in 0..v {
        for _ in 0..graph.self_loops()[u] {
            slots[u].push(Slot::Var(next));
            slots[u].push(Slot::Var(next));
            next += 1;
        }
    }
    for u in 0..v {
        for w in u + 1..v {
            for _ in 0..graph.simple_multiplicity(u, w) {
                slots[u].push(Slot::Var(next));
                slots[w].push(Slot::Var(next));
                next += 1;
            }
        }
    }
    for u in 0..v {
        for _ in 0..graph.legs()[u].len() {
            slots[u].push(Slot::Zero);
        }
    }
    (slots, next)
}

/// `a! / b!` for arguments `>= -1` whose quotient is finite (any `-1` must
/// cancel against the other side being `-1` too).
fn factorial_ratio(a: i64, b: i64) -> Rational {
    assert!(a >= -1 && b >= -1);
    if a == b {
        return Rational::one();
    }
    if a > b {
        assert!(b >= 0, "factorial ratio {a}!/{b}! undefined");
        let mut acc = Rational::one();
        for j in (b + 1)..=a {
            acc *= rat_int(j);
        }
        acc
    } else {
        factorial_ratio(b, a).recip()
    }
}

/// The graph polynomial
/// `P(G) = 2^(6g+2n-4) (4g+n-4)!/(6g+2n-7)! / (2^V |Aut|) prod_e b_e
///  prod_v N_{g_v, m_v}(b^(v))`.
pub fn graph_polynomial(
    corr: &Correlators,
    graph: &StableGraph,
    g: u32,
    n: u32,
) -> Result<EdgePolynomial> {
    let (slots, num_vars) = edge_layout(graph);
    let mut product = EdgePolynomial::constant(num_vars, Rational::one());
    for (u, vertex_slots) in slots.iter().enumerate() {
        let factor = n_polynomial(corr, graph.genera()[u], vertex_slots, num_vars)?;
        if factor.is_zero() {
            return Ok(EdgePolynomial::zero(num_vars));
        }
        product = product.mul(&factor);
    }
    let mut poly = product.shift_all_vars();
    let aut = graph.automorphism_order();
    let prefactor = rat_int(2).pow((6 * g + 2 * n) as i32 - 4)
        * factorial_ratio(4 * g as i64 + n as i64 - 4, 6 * g as i64 + 2 * n as i64 - 7)
        / (rat_int(2).pow(graph.vertex_count() as i32)
            * Rational::from_integer(num_bigint::BigInt::from(aut)));
    poly.scale(&prefactor);
    Ok(poly)
}

/// The zeta-linear map: `prod b_e^{r_e} -> prod r_e! zeta(r_e + 1)` on
/// monomials, extended linearly. Exponents must be odd (zeta at even
/// arguments); an even exponent signals a bug upstream.
pub fn zeta_map(poly: &EdgePolynomial) -> Result<PiValue> {
    let mut acc = PiValue::zero();
    for (exponents, coefficient) in poly.terms() {
        let mut term = PiValue::from_rational(coefficient.clone());
        for &r in exponents.iter() {
            if r == 0 {
                continue;
            }
            if r % 2 == 0 {
                return Err(Error::PipelineIntegrity(format!(
                    "zeta map received even exponent {r}"
                )));
            }
            let factor = zeta_even(r as u32 + 1)?
                .scale(&Rational::from_integer(factorial(r as u64)));
            term = &term * &factor;
        }
        acc += &term;
    }
    Ok(acc)
}

/// `Z(P(graph))` for a single stable graph.
pub fn graph_contribution(
    corr: &Correlators,
    graph: &StableGraph,
    g: u32,
    n: u32,
) -> Result<PiValue> {
    zeta_map(&graph_polynomial(corr, graph, g, n)?)
}

/// `Vol Q_{g,n}`: the sum of `Z(P(G))` over all stable graphs of genus `g`
/// with `n` legs. A single Laurent term of pi-degree `6g + 2n - 6`.
pub fn volume(corr: &Correlators, g: u32, n: u32) -> Result<PiValue> {
    Ok(volume_breakdown(corr, g, n)?.total)
}

/// Per-stratum volume contributions.
#[derive(Clone, Debug)]
pub struct VolumeBreakdown {
    pub g: u32,
    pub n: u32,
    /// `(V, S, T) -> contribution`, in canonical stratum order.
    pub strata: Vec<((usize, u32, u32), PiValue)>,
    /// Per-vertex-count totals, indexed implicitly by the `V` values present.
    pub per_vertex_count: Vec<(usize, PiValue)>,
    pub total: PiValue,
}

/// Computes the volume together with its `(V, S, T)` breakdown. The stratum
/// pieces sum exactly to the total.
pub fn volume_breakdown(corr: &Correlators, g: u32, n: u32) -> Result<VolumeBreakdown> {
    let graphs = enumerate_stable_graphs(g, n)?;
    let contributions = exec::map_collect(graphs, |(graph, _)| {
        let key = (
            graph.vertex_count(),
            graph.total_self_loops(),
            graph.total_simple_edges(),
        );
        (key, graph_contribution(corr, &graph, g, n))
    });
    let mut strata: Vec<((usize, u32, u32), PiValue)> = Vec::new();
    for (key, contribution) in contributions {
        let value = contribution?;
        match strata.iter_mut().find(|(k, _)| *k == key) {
            Some((_, acc)) => *acc += &value,
            None => strata.push((key, value)),
        }
    }
    strata.sort_by(|a, b| a.0.cmp(&b.0));
    let mut per_vertex_count: Vec<(usize, PiValue)> = Vec::new();
    let mut total = PiValue::zero();
    for ((v, _, _), value) in &strata {
        total += value;
        match per_vertex_count.iter_mut().find(|(pv, _)| pv == v) {
            Some((_, acc)) => *acc += value,
            None => per_vertex_count.push((*v, value.clone())),
        }
    }
    Ok(VolumeBreakdown {
        g,
        n,
        strata,
        per_vertex_count,
        total,
    })
}

/// Builds the single-vertex graph with `E` self-loops and genus decoration
/// `g - E`.
pub fn one_vertex_graph(g: u32, n: u32, e: u32) -> Result<StableGraph> {
    if e > g {
        return Err(Error::Domain(format!(
            "one-vertex graph needs E <= g, got E = {e}, g = {g}"
        )));
    }
    let legs: std::collections::BTreeSet<u32> = (1..=n).collect();
    let graph = StableGraph::new(vec![g - e], vec![e], vec![vec![0]], vec![legs]);
    graph.validate(g, n)?;
    Ok(graph)
}

/// Closed form for `Z(P(G_{g,n}(E)))`, the contribution of the one-vertex
/// graph with `E` self-loops:
///
/// `12^E / (2^(2g-1) 3^g) * (6g+2n-2E-5)!/(6g+2n-7)! *`
/// `(4g+n-4)!/((3g+n-E-3)! (g-E)!) / E! *`
/// `sum_{d in K_{2E}(3g+n-E-3)} <d, 0^n> prod_j binom(2d_{2j-1}+2d_{2j}+2,
///  2d_{2j}+1) zeta(2d_{2j-1}+2d_{2j}+2) / (d_{2j-1}+d_{2j}+1)`.
///
/// Stated for `g >= 2`; smaller genera fall back to the generic pipeline.
pub fn one_vertex_closed_form(
    corr: &Correlators,
    g: u32,
    n: u32,
    e: u32,
) -> Result<PiValue> {
    if e > g {
        return Err(Error::Domain(format!(
            "closed form needs E <= g, got E = {e}, g = {g}"
        )));
    }
    if g < 2 {
        let graph = one_vertex_graph(g, n, e)?;
        return graph_contribution(corr, &graph, g, n);
    }
    let dim = 3 * g as i64 + n as i64 - e as i64 - 3;
    if dim < 0 {
        return Ok(PiValue::zero());
    }
    let prefactor = rat_int(12).pow(e as i32)
        / (rat_int(2).pow(2 * g as i32 - 1) * rat_int(3).pow(g as i32))
        * factorial_ratio(
            6 * g as i64 + 2 * n as i64 - 2 * e as i64 - 5,
            6 * g as i64 + 2 * n as i64 - 7,
        )
        * factorial_ratio(4 * g as i64 + n as i64 - 4, 3 * g as i64 + n as i64 - e as i64 - 3)
        / (Rational::from_integer(factorial((g - e) as u64))
            * Rational::from_integer(factorial(e as u64)));

    if e == 0 {
        // Empty composition set unless dim == 0.
        if dim != 0 {
            return Ok(PiValue::zero());
        }
        let coefficient = corr.normalized(g, &vec![0; n as usize])?;
        return Ok(PiValue::single(prefactor * coefficient, 0));
    }

    // All summands have pi-degree 2 dim + 2E = 6g + 2n - 6.
    let mut coefficient_sum = Rational::zero();
    let spec = CompositionSpec::nonnegative(2 * e as usize, dim as u64);
    let mut key = vec![0u32; 2 * e as usize + n as usize];
    for d in spec.iter() {
        for (k, &value) in key.iter_mut().zip(d.iter()) {
            *k = value as u32;
        }
        let base = corr.normalized(g - e, &key)?;
        if base.is_zero() {
            continue;
        }
        let mut term = base;
        for j in 0..e as usize {
            let a = d[2 * j];
            let b = d[2 * j + 1];
            let zeta_coeff = zeta_even(2 * (a + b) as u32 + 2)?
                .single_term()
                .expect("zeta_even is a single term")
                .0;
            term *= Rational::from_integer(binomial(2 * a + 2 * b + 2, 2 * b + 1))
                * zeta_coeff
                / rat_int(a as i64 + b as i64 + 1);
        }
        coefficient_sum += term;
    }
    Ok(PiValue::single(
        prefactor * coefficient_sum,
        (6 * g + 2 * n) as i64 - 6,
    ))
}

/// `(pi / 4) 2^{-n} (8/3)^{4-4g-n} Vol Q_{g,n}` as a float; tends to 1 as
/// the genus grows.
pub fn normalized_ratio(corr: &Correlators, g: u32, n: u32, digits: u32) -> Result<f64> {
    let vol = volume(corr, g, n)?;
    let scale = rat_pow(&rat_int(2), -(n as i64))
        * rat_pow(&rat(8, 3), 4 - 4 * g as i64 - n as i64)
        / rat_int(4);
    // Multiply by pi: shift the Laurent polynomial by one power.
    let scaled = vol.scale(&scale).shift(1);
    Ok(pi_value_to_f64(&scaled, digits))
}

/// Expected pi-degree of `Vol Q_{g,n}`.
pub fn expected_pi_degree(g: u32, n: u32) -> i64 {
    6 * g as i64 + 2 * n as i64 - 6
}

/// Float value of a volume at the given precision.
pub fn volume_f64(corr: &Correlators, g: u32, n: u32, digits: u32) -> Result<f64> {
    Ok(pi_value_to_f64(&volume(corr, g, n)?, digits))
}
