//! Enumeration of stable graphs with labeled legs up to isomorphism, with
//! exact automorphism group orders.
//!
//! A stable graph of genus `g` with `n` legs has vertex genera `g_v`,
//! self-loop counts `s_v`, simple-edge multiplicities `t_uv`, and a
//! partition of the leg labels `{1..n}` over the vertices, subject to
//!
//! - genus condition: `sum g_v = g - E + V - 1` with `E = sum s_v + sum t_uv`,
//! - stability: `2 g_v + m_v >= 3` at every vertex, where
//!   `m_v = 2 s_v + n_v + T_v`,
//! - connectivity of the simple-edge skeleton (self-loops never connect).
//!
//! Vertices and edges are unlabeled; legs are labeled. Isomorphism classes
//! are deduplicated by a canonical form: the minimum serialization over
//! vertex orderings compatible with iterated neighborhood refinement. The
//! refinement colors are isomorphism invariants, so restricting the
//! factorial scan to them loses nothing.

use std::collections::{BTreeSet, HashMap};

use crate::exec;
use crate::{Error, Result};

/// A decorated multigraph. Simple-edge multiplicities are stored as a full
/// symmetric matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableGraph {
    genera: Vec<u32>,
    self_loops: Vec<u32>,
    simple: Vec<Vec<u32>>,
    legs: Vec<BTreeSet<u32>>,
}

impl StableGraph {
    pub fn new(
        genera: Vec<u32>,
        self_loops: Vec<u32>,
        simple: Vec<Vec<u32>>,
        legs: Vec<BTreeSet<u32>>,
    ) -> Self {
        let v = genera.len();
        assert_eq!(self_loops.len(), v);
        assert_eq!(simple.len(), v);
        assert!(simple.iter().all(|row| row.len() == v));
        assert_eq!(legs.len(), v);
        Self {
            genera,
            self_loops,
            simple,
            legs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn self_loops(&self) -> &[u32] {
        &self.self_loops
    }

    pub fn legs(&self) -> &[BTreeSet<u32>] {
        &self.legs
    }

    pub fn simple_multiplicity(&self, u: usize, v: usize) -> u32 {
        self.simple[u][v]
    }

    pub fn total_self_loops(&self) -> u32 {
        self.self_loops.iter().sum()
    }

    pub fn total_simple_edges(&self) -> u32 {
        let mut acc = 0;
        for u in 0..self.vertex_count() {
            for v in u + 1..self.vertex_count() {
                acc += self.simple[u][v];
            }
        }
        acc
    }

    pub fn edge_count(&self) -> u32 {
        self.total_self_loops() + self.total_simple_edges()
    }

    /// Half-edges incident to `v` (legs included): `2 s_v + n_v + T_v`.
    pub fn half_degree(&self, v: usize) -> u32 {
        2 * self.self_loops[v]
            + self.legs[v].len() as u32
            + self.simple[v].iter().sum::<u32>()
    }

    /// Checks connectivity, the genus condition, stability, and that the leg
    /// sets partition `{1..n}`.
    pub fn validate(&self, g: u32, n: u32) -> Result<()> {
        let v = self.vertex_count();
        if v == 0 {
            return Err(Error::Domain("stable graphs are nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for set in &self.legs {
            for &l in set {
                if l < 1 || l > n || !seen.insert(l) {
                    return Err(Error::Domain(format!("bad leg label {l}")));
                }
            }
        }
        if seen.len() != n as usize {
            return Err(Error::Domain("legs must partition {1..n}".into()));
        }
        let e = self.edge_count() as i64;
        let genus_sum: i64 = self.genera.iter().map(|&x| x as i64).sum();
        if genus_sum != g as i64 - e + v as i64 - 1 {
            return Err(Error::Domain(format!(
                "genus condition fails: sum g_v = {genus_sum}, expected {}",
                g as i64 - e + v as i64 - 1
            )));
        }
        for u in 0..v {
            if 2 * self.genera[u] + self.half_degree(u) < 3 {
                return Err(Error::Domain(format!("vertex {u} unstable")));
            }
        }
        if !connected(&self.simple) {
            return Err(Error::Domain("graph is disconnected".into()));
        }
        Ok(())
    }

    /// Stable color classes under iterated neighborhood refinement. Colors
    /// are isomorphism invariants: vertices in different classes cannot be
    /// exchanged by any isomorphism.
    fn color_classes(&self) -> Vec<u32> {
        let v = self.vertex_count();
        let initial: Vec<(u32, u32, Vec<u32>, u32)> = (0..v)
            .map(|u| {
                (
                    self.genera[u],
                    self.self_loops[u],
                    self.legs[u].iter().copied().collect(),
                    self.half_degree(u),
                )
            })
            .collect();
        let mut colors = canonical_colors(&initial);
        loop {
            let refined: Vec<(u32, Vec<(u32, u32)>)> = (0..v)
                .map(|u| {
                    let mut neighborhood: Vec<(u32, u32)> = (0..v)
                        .filter(|&w| self.simple[u][w] > 0)
                        .map(|w| (self.simple[u][w], colors[w]))
                        .collect();
                    neighborhood.sort_unstable();
                    (colors[u], neighborhood)
                })
                .collect();
            let next = canonical_colors(&refined);
            if next == colors {
                return colors;
            }
            colors = next;
        }
    }

    /// Color classes as ordered groups: for each color id in ascending
    /// order, the member vertex indices.
    fn color_groups(&self) -> Vec<Vec<usize>> {
        let colors = self.color_classes();
        let max = colors.iter().copied().max().unwrap_or(0);
        let mut groups = vec![Vec::new(); max as usize + 1];
        for (idx, &c) in colors.iter().enumerate() {
            groups[c as usize].push(idx);
        }
        groups
    }

    /// Runs `f` over vertex orders (new position -> old index) formed by
    /// permuting members within each color group, groups concatenated in
    /// color order.
    fn for_each_class_order<F: FnMut(&[usize])>(&self, mut f: F) {
        let groups = self.color_groups();
        let mut order: Vec<usize> = Vec::with_capacity(self.vertex_count());

        fn rec<F: FnMut(&[usize])>(
            groups: &[Vec<usize>],
            gi: usize,
            order: &mut Vec<usize>,
            f: &mut F,
        ) {
            if gi == groups.len() {
                f(order);
                return;
            }
            let mut arrangement = groups[gi].clone();
            let base = order.len();
            order.extend_from_slice(&arrangement);
            permute_all(&mut arrangement, 0, &mut |arr| {
                order[base..base + arr.len()].copy_from_slice(arr);
                rec(groups, gi + 1, order, f);
            });
            order.truncate(base);
        }
        rec(&groups, 0, &mut order, &mut f);
    }

    /// Serialization of the graph with vertices listed in `order`
    /// (`order[i]` = old index of the vertex at position `i`).
    fn serialize_order(&self, order: &[usize]) -> Vec<u32> {
        let v = self.vertex_count();
        let mut out = Vec::with_capacity(v * (v + 4));
        for &u in order {
            out.push(self.genera[u]);
            out.push(self.self_loops[u]);
            out.push(self.legs[u].len() as u32);
            out.extend(self.legs[u].iter().copied());
        }
        for i in 0..v {
            for j in i + 1..v {
                out.push(self.simple[order[i]][order[j]]);
            }
        }
        out
    }

    /// Isomorphism-invariant key; two graphs are isomorphic iff their keys
    /// are equal.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        self.for_each_class_order(|order| {
            let ser = self.serialize_order(order);
            if best.as_ref().map_or(true, |b| ser < *b) {
                best = Some(ser);
            }
        });
        best.expect("at least the identity order")
    }

    fn is_automorphism(&self, sigma: &[usize]) -> bool {
        let v = self.vertex_count();
        for u in 0..v {
            let su = sigma[u];
            if self.genera[su] != self.genera[u]
                || self.self_loops[su] != self.self_loops[u]
                || self.legs[su] != self.legs[u]
            {
                return false;
            }
        }
        for u in 0..v {
            for w in u + 1..v {
                if self.simple[sigma[u]][sigma[w]] != self.simple[u][w] {
                    return false;
                }
            }
        }
        true
    }

    /// `|Aut|`: decorated vertex permutations times `prod_v 2^{s_v} s_v!`
    /// for self-loops and `prod_{u<v} t_uv!` for parallel simple edges.
    pub fn automorphism_order(&self) -> u128 {
        let groups = self.color_groups();
        let v = self.vertex_count();
        let mut sigma: Vec<usize> = (0..v).collect();
        let mut vertex_perms = 0u128;

        fn rec(
            graph: &StableGraph,
            groups: &[Vec<usize>],
            gi: usize,
            sigma: &mut Vec<usize>,
            count: &mut u128,
        ) {
            if gi == groups.len() {
                if graph.is_automorphism(sigma) {
                    *count += 1;
                }
                return;
            }
            let slots = &groups[gi];
            let mut arrangement = slots.clone();
            permute_all(&mut arrangement, 0, &mut |arr| {
                for (slot, &img) in slots.iter().zip(arr.iter()) {
                    sigma[*slot] = img;
                }
                rec(graph, groups, gi + 1, sigma, count);
            });
            for &slot in slots {
                sigma[slot] = slot;
            }
        }
        rec(self, &groups, 0, &mut sigma, &mut vertex_perms);

        let mut order = vertex_perms;
        for &s in &self.self_loops {
            order *= (1u128 << s) * factorial_u128(s);
        }
        for u in 0..v {
            for w in u + 1..v {
                order *= factorial_u128(self.simple[u][w]);
            }
        }
        order
    }

    /// Text form
    /// `V=..;E=..;vertices=[(g,s,legs{..});..];edges=[(u,v,mult);..]`.
    pub fn serialize_text(&self) -> String {
        let v = self.vertex_count();
        let vertices: Vec<String> = (0..v)
            .map(|u| {
                let legs: Vec<String> =
                    self.legs[u].iter().map(|l| l.to_string()).collect();
                format!(
                    "({},{},legs{{{}}})",
                    self.genera[u],
                    self.self_loops[u],
                    legs.join(",")
                )
            })
            .collect();
        let mut edges = Vec::new();
        for u in 0..v {
            for w in u + 1..v {
                if self.simple[u][w] > 0 {
                    edges.push(format!("({},{},{})", u, w, self.simple[u][w]));
                }
            }
        }
        format!(
            "V={};E={};vertices=[{}];edges=[{}]",
            v,
            self.edge_count(),
            vertices.join(";"),
            edges.join(";")
        )
    }
}

fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Recursive permutation generation over `v[at..]`.
fn permute_all<F: FnMut(&[usize])>(v: &mut Vec<usize>, at: usize, f: &mut F) {
    if at == v.len() {
        f(v);
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permute_all(v, at + 1, f);
        v.swap(at, i);
    }
}

/// Assigns dense color ids to equal values, ordered by value.
fn canonical_colors<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = values.iter().collect();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(&v).unwrap() as u32)
        .collect()
}

fn connected(matrix: &[Vec<u32>]) -> bool {
    let v = matrix.len();
    let mut visited = vec![false; v];
    let mut stack = vec![0usize];
    visited[0] = true;
    while let Some(u) = stack.pop() {
        for w in 0..v {
            if !visited[w] && matrix[u][w] > 0 {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    visited.into_iter().all(|b| b)
}

/// A `(V, S, T)` cell of the stratification.
#[derive(Clone, Debug)]
pub struct GraphStratum {
    pub vertices: usize,
    pub self_edges: u32,
    pub simple_edges: u32,
    pub graphs: Vec<(StableGraph, u128)>,
}

/// Enumerates the stable graphs of genus `g` with `n` labeled legs, one
/// representative per isomorphism class, each with `|Aut|`. Output is
/// sorted by `(V, S, T, canonical key)`.
pub fn enumerate_stable_graphs(g: u32, n: u32) -> Result<Vec<(StableGraph, u128)>> {
    if 2 * g + n < 3 {
        return Err(Error::Domain(format!(
            "no stable graphs for (g, n) = ({g}, {n})"
        )));
    }
    let max_v = (2 * g + n - 2) as usize;
    let mut cells = Vec::new();
    for v in 1..=max_v.max(1) {
        let t_min = if v > 1 { v as u32 - 1 } else { 0 };
        let e_max = g + v as u32 - 1; // genus condition: E <= g + V - 1
        for t in t_min..=e_max {
            for s in 0..=(e_max - t) {
                cells.push((v, s, t));
            }
        }
    }
    let per_cell = exec::map_collect(cells, |(v, s, t)| enumerate_cell(g, n, v, s, t));
    let mut dedup: HashMap<Vec<u32>, (StableGraph, u128)> = HashMap::new();
    for cell in per_cell {
        for graph in cell {
            let key = graph.canonical_key();
            dedup.entry(key).or_insert_with(|| {
                let order = graph.automorphism_order();
                (graph, order)
            });
        }
    }
    let mut result: Vec<((usize, u32, u32, Vec<u32>), (StableGraph, u128))> = dedup
        .into_iter()
        .map(|(key, (graph, order))| {
            (
                (
                    graph.vertex_count(),
                    graph.total_self_loops(),
                    graph.total_simple_edges(),
                    key,
                ),
                (graph, order),
            )
        })
        .collect();
    result.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(result.into_iter().map(|(_, gr)| gr).collect())
}

/// Candidates with `v` vertices, `s` total self-loops, `t` total simple-edge
/// multiplicity (not yet deduplicated).
fn enumerate_cell(g: u32, n: u32, v: usize, s: u32, t: u32) -> Vec<StableGraph> {
    let e = s + t;
    let genus_total = g as i64 - e as i64 + v as i64 - 1;
    if genus_total < 0 {
        return Vec::new();
    }
    let genus_total = genus_total as u32;
    let mut out = Vec::new();
    // Stability budget: a vertex of simple-edge degree D needs
    // 2 g_u + 2 s_u + n_u >= 3 - D, and the global supply of loop/genus
    // units and legs is fixed by the cell.
    let units = 2 * (s + genus_total) + n;
    for skeleton in skeletons(v, t, units) {
        if v > 1 && !connected(&skeleton) {
            continue;
        }
        let degrees: Vec<u32> = (0..v).map(|u| skeleton[u].iter().sum()).collect();
        for leg_assignment in leg_assignments(v, n) {
            let leg_counts: Vec<u32> =
                leg_assignment.iter().map(|set| set.len() as u32).collect();
            // Per-vertex deficiency must be covered by that vertex's own
            // loops and genus, two units each.
            let need: u32 = (0..v)
                .map(|u| (3u32.saturating_sub(degrees[u] + leg_counts[u])).div_ceil(2))
                .sum();
            if need > s + genus_total {
                continue;
            }
            distribute_loops_genera(
                &skeleton,
                &degrees,
                &leg_assignment,
                &leg_counts,
                s,
                genus_total,
                &mut out,
            );
        }
    }
    out
}

/// All symmetric multiplicity matrices with zero diagonal and total
/// upper-triangle sum `t`, generated per degree sequence. Degree sequences
/// whose total stability deficiency exceeds `units` are skipped outright.
fn skeletons(v: usize, t: u32, units: u32) -> Vec<Vec<Vec<u32>>> {
    if v == 1 {
        return if t == 0 { vec![vec![vec![0]]] } else { Vec::new() };
    }
    let mut result = Vec::new();
    let mut degrees = vec![0u32; v];
    fill_degrees(&mut degrees, 0, 2 * t, t, &mut |degrees| {
        let deficiency: u32 = degrees.iter().map(|&d| 3u32.saturating_sub(d)).sum();
        if deficiency > units {
            return;
        }
        let mut matrix = vec![vec![0u32; v]; v];
        let mut residual = degrees.to_vec();
        fill_matrix(&mut matrix, &mut residual, 0, 1, &mut result);
    });
    result
}

/// Non-increasing degree sequences with entries in `[1, cap]` summing to
/// `remaining`. Sorted order suffices: decorations are distributed over
/// labeled vertices afterwards, so every isomorphism class keeps at least
/// one representative.
fn fill_degrees<F: FnMut(&[u32])>(
    degrees: &mut Vec<u32>,
    idx: usize,
    remaining: u32,
    cap: u32,
    f: &mut F,
) {
    let v = degrees.len();
    if idx == v {
        if remaining == 0 {
            f(degrees);
        }
        return;
    }
    let slots_left = (v - idx - 1) as u32;
    for d in 1..=cap.min(remaining) {
        let rest = remaining - d;
        if rest < slots_left || rest > slots_left * d {
            continue;
        }
        degrees[idx] = d;
        fill_degrees(degrees, idx + 1, rest, d, f);
    }
    degrees[idx] = 0;
}

/// Fills the upper triangle slot by slot subject to residual degrees.
fn fill_matrix(
    matrix: &mut Vec<Vec<u32>>,
    residual: &mut Vec<u32>,
    row: usize,
    col: usize,
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    let v = matrix.len();
    if row == v - 1 {
        if residual[v - 1] == 0 {
            out.push(matrix.clone());
        }
        return;
    }
    if col == v {
        if residual[row] != 0 {
            return;
        }
        fill_matrix(matrix, residual, row + 1, row + 2, out);
        return;
    }
    let max_here = residual[row].min(residual[col]);
    for m in 0..=max_here {
        // The rest of this row must be able to absorb the residual degree.
        let forward_capacity: u32 = ((col + 1)..v).map(|w| residual[w]).sum();
        if residual[row] - m > forward_capacity {
            continue;
        }
        matrix[row][col] = m;
        matrix[col][row] = m;
        residual[row] -= m;
        residual[col] -= m;
        fill_matrix(matrix, residual, row, col + 1, out);
        residual[row] += m;
        residual[col] += m;
        matrix[row][col] = 0;
        matrix[col][row] = 0;
    }
}

/// All assignments of leg labels `1..=n` to `v` vertices.
fn leg_assignments(v: usize, n: u32) -> Vec<Vec<BTreeSet<u32>>> {
    let mut result = vec![vec![BTreeSet::new(); v]];
    for label in 1..=n {
        let mut next = Vec::with_capacity(result.len() * v);
        for assignment in result {
            for target in 0..v {
                let mut extended = assignment.clone();
                extended[target].insert(label);
                next.push(extended);
            }
        }
        result = next;
    }
    result
}

/// Distributes `s` self-loops and `genus_total` genus over the vertices,
/// pruning with per-vertex stability.
fn distribute_loops_genera(
    skeleton: &[Vec<u32>],
    degrees: &[u32],
    legs: &[BTreeSet<u32>],
    leg_counts: &[u32],
    s: u32,
    genus_total: u32,
    out: &mut Vec<StableGraph>,
) {
    struct Ctx<'a> {
        skeleton: &'a [Vec<u32>],
        degrees: &'a [u32],
        legs: &'a [BTreeSet<u32>],
        leg_counts: &'a [u32],
        /// `suffix_need[u]`: loop/genus units required by vertices `u..`.
        suffix_need: Vec<u32>,
        v: usize,
    }

    fn rec(
        ctx: &Ctx<'_>,
        u: usize,
        s_left: u32,
        g_left: u32,
        loops: &mut Vec<u32>,
        genera: &mut Vec<u32>,
        out: &mut Vec<StableGraph>,
    ) {
        if u == ctx.v {
            if s_left == 0 && g_left == 0 {
                out.push(StableGraph::new(
                    genera.clone(),
                    loops.clone(),
                    ctx.skeleton.to_vec(),
                    ctx.legs.to_vec(),
                ));
            }
            return;
        }
        if ctx.suffix_need[u] > s_left + g_left {
            return;
        }
        for s_u in 0..=s_left {
            for g_u in 0..=g_left {
                // Stability at u: 2 g_u + 2 s_u + n_u + D_u >= 3.
                if 2 * g_u + 2 * s_u + ctx.leg_counts[u] + ctx.degrees[u] < 3 {
                    continue;
                }
                loops[u] = s_u;
                genera[u] = g_u;
                rec(ctx, u + 1, s_left - s_u, g_left - g_u, loops, genera, out);
            }
        }
        loops[u] = 0;
        genera[u] = 0;
    }

    let v = degrees.len();
    let mut suffix_need = vec![0u32; v + 1];
    for u in (0..v).rev() {
        let need = 3u32
            .saturating_sub(degrees[u] + leg_counts[u])
            .div_ceil(2);
        suffix_need[u] = suffix_need[u + 1] + need;
    }
    let ctx = Ctx {
        skeleton,
        degrees,
        legs,
        leg_counts,
        suffix_need,
        v,
    };
    let mut loops = vec![0u32; ctx.v];
    let mut genera = vec![0u32; ctx.v];
    rec(&ctx, 0, s, genus_total, &mut loops, &mut genera, out);
}

/// Partitions enumerated graphs into `(V, S, T)` strata, preserving order.
pub fn stratify(graphs: &[(StableGraph, u128)]) -> Vec<GraphStratum> {
    let mut strata: Vec<GraphStratum> = Vec::new();
    for (graph, order) in graphs {
        let key = (
            graph.vertex_count(),
            graph.total_self_loops(),
            graph.total_simple_edges(),
        );
        match strata
            .iter_mut()
            .find(|s| (s.vertices, s.self_edges, s.simple_edges) == key)
        {
            Some(stratum) => stratum.graphs.push((graph.clone(), *order)),
            None => strata.push(GraphStratum {
                vertices: key.0,
                self_edges: key.1,
                simple_edges: key.2,
                graphs: vec![(graph.clone(), *order)],
            }),
        }
    }
    strata
}

/// Brute-force isomorphism test over all vertex bijections. Test oracle for
/// the canonical form; only suitable for small graphs.
pub fn are_isomorphic(a: &StableGraph, b: &StableGraph) -> bool {
    let v = a.vertex_count();
    if v != b.vertex_count() {
        return false;
    }
    let identity: Vec<usize> = (0..v).collect();
    let target = b.serialize_order(&identity);
    let mut perm = identity;
    let mut found = false;
    permute_all(&mut perm, 0, &mut |p| {
        if !found && a.serialize_order(p) == target {
            found = true;
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_count(g: u32, n: u32) -> usize {
        enumerate_stable_graphs(g, n).unwrap().len()
    }

    #[test]
    fn tiny_signatures() {
        assert_eq!(graph_count(0, 3), 1);
        assert_eq!(graph_count(1, 1), 2);
        assert_eq!(graph_count(2, 0), 7);
        assert!(enumerate_stable_graphs(0, 2).is_err());
    }

    #[test]
    fn g11_graphs_in_detail() {
        let graphs = enumerate_stable_graphs(1, 1).unwrap();
        let mut descriptions: Vec<(u32, u32)> = graphs
            .iter()
            .map(|(gr, _)| (gr.genera()[0], gr.self_loops()[0]))
            .collect();
        descriptions.sort_unstable();
        assert_eq!(descriptions, vec![(0, 1), (1, 0)]);
        for (gr, aut) in &graphs {
            if gr.total_self_loops() == 1 {
                assert_eq!(*aut, 2); // swap the two half-edges of the loop
            } else {
                assert_eq!(*aut, 1);
            }
        }
    }

    #[test]
    fn automorphism_orders() {
        // Single vertex with E self-loops: |Aut| = 2^E E!.
        for e in 0..=3u32 {
            let g = 2 + e;
            let graph = StableGraph::new(
                vec![g - e],
                vec![e],
                vec![vec![0]],
                vec![BTreeSet::new()],
            );
            graph.validate(g, 0).unwrap();
            assert_eq!(graph.automorphism_order(), (1u128 << e) * factorial_u128(e));
        }
        // Two genus-0 vertices joined by three simple edges: 2 * 3! = 12.
        let theta = StableGraph::new(
            vec![0, 0],
            vec![0, 0],
            vec![vec![0, 3], vec![3, 0]],
            vec![BTreeSet::new(), BTreeSet::new()],
        );
        theta.validate(2, 0).unwrap();
        assert_eq!(theta.automorphism_order(), 12);
        // Legs pin the vertices: {1,2} vs {3,4} with one simple edge.
        let legs: Vec<BTreeSet<u32>> = vec![
            [1u32, 2].into_iter().collect(),
            [3u32, 4].into_iter().collect(),
        ];
        let pinned =
            StableGraph::new(vec![0, 0], vec![0, 0], vec![vec![0, 1], vec![1, 0]], legs);
        pinned.validate(0, 4).unwrap();
        assert_eq!(pinned.automorphism_order(), 1);
    }

    #[test]
    fn canonical_form_separates_and_identifies() {
        let a = StableGraph::new(
            vec![1, 0],
            vec![0, 1],
            vec![vec![0, 1], vec![1, 0]],
            vec![BTreeSet::new(), [1u32].into_iter().collect()],
        );
        let b = StableGraph::new(
            vec![0, 1],
            vec![1, 0],
            vec![vec![0, 1], vec![1, 0]],
            vec![[1u32].into_iter().collect(), BTreeSet::new()],
        );
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert!(are_isomorphic(&a, &b));

        let graphs = enumerate_stable_graphs(1, 1).unwrap();
        assert_ne!(graphs[0].0.canonical_key(), graphs[1].0.canonical_key());

        // Swapping leg labels across vertices changes the class.
        let c = StableGraph::new(
            vec![0, 0],
            vec![0, 0],
            vec![vec![0, 1], vec![1, 0]],
            vec![
                [1u32, 2].into_iter().collect(),
                [3u32, 4].into_iter().collect(),
            ],
        );
        let d = StableGraph::new(
            vec![0, 0],
            vec![0, 0],
            vec![vec![0, 1], vec![1, 0]],
            vec![
                [1u32, 3].into_iter().collect(),
                [2u32, 4].into_iter().collect(),
            ],
        );
        assert_ne!(c.canonical_key(), d.canonical_key());
        assert!(!are_isomorphic(&c, &d));
    }

    #[test]
    fn dedup_matches_pairwise_isomorphism() {
        // Canonical-form dedup must agree with the brute-force oracle: all
        // emitted representatives are pairwise non-isomorphic.
        for (g, n) in [
            (0u32, 3u32),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 0),
            (2, 1),
            (2, 2),
            (3, 0),
        ] {
            if 2 * g + n > 6 {
                continue;
            }
            let graphs = enumerate_stable_graphs(g, n).unwrap();
            for i in 0..graphs.len() {
                for j in i + 1..graphs.len() {
                    assert!(
                        !are_isomorphic(&graphs[i].0, &graphs[j].0),
                        "duplicate classes at ({g}, {n}): {i} vs {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn every_graph_validates() {
        for (g, n) in [(0u32, 4u32), (1, 2), (2, 0), (2, 1), (3, 0)] {
            for (graph, _) in enumerate_stable_graphs(g, n).unwrap() {
                graph.validate(g, n).unwrap();
                let v = graph.vertex_count() as u32;
                let e = graph.edge_count();
                assert!(v <= 2 * g + n - 2);
                assert!(e <= 3 * g + n - 3);
                assert!(e <= g + v - 1);
            }
        }
    }

    #[test]
    fn orbit_stabilizer_consistency() {
        // For each class of G_{2,0}: the number of distinct vertex-labeled
        // variants times the decorated vertex-permutation stabilizer equals
        // V!. The stabilizer is |Aut| divided by the loop/parallel-edge
        // factors, so this cross-checks the vertex factor of |Aut|.
        for (graph, aut) in enumerate_stable_graphs(2, 0).unwrap() {
            let v = graph.vertex_count();
            let mut perm: Vec<usize> = (0..v).collect();
            let mut variants: Vec<StableGraph> = Vec::new();
            permute_all(&mut perm, 0, &mut |p| {
                let relabeled = StableGraph::new(
                    p.iter().map(|&u| graph.genera()[u]).collect(),
                    p.iter().map(|&u| graph.self_loops()[u]).collect(),
                    (0..v)
                        .map(|i| {
                            (0..v)
                                .map(|j| graph.simple_multiplicity(p[i], p[j]))
                                .collect()
                        })
                        .collect(),
                    p.iter().map(|&u| graph.legs()[u].clone()).collect(),
                );
                if !variants.contains(&relabeled) {
                    variants.push(relabeled);
                }
            });
            let mut edge_factor = 1u128;
            for &s in graph.self_loops() {
                edge_factor *= (1u128 << s) * factorial_u128(s);
            }
            for u in 0..v {
                for w in u + 1..v {
                    edge_factor *= factorial_u128(graph.simple_multiplicity(u, w));
                }
            }
            let vertex_factor = aut / edge_factor;
            assert_eq!(
                variants.len() as u128 * vertex_factor,
                factorial_u128(v as u32),
                "orbit-stabilizer identity fails for {}",
                graph.serialize_text()
            );
        }
    }

    #[test]
    fn strata_partition_total() {
        let graphs = enumerate_stable_graphs(2, 0).unwrap();
        let strata = stratify(&graphs);
        let total: usize = strata.iter().map(|s| s.graphs.len()).sum();
        assert_eq!(total, graphs.len());
        let theta = strata
            .iter()
            .find(|s| (s.vertices, s.self_edges, s.simple_edges) == (2, 0, 3))
            .expect("missing (2,0,3) stratum");
        assert_eq!(theta.graphs.len(), 1);

        let g11 = enumerate_stable_graphs(1, 1).unwrap();
        let s11 = stratify(&g11);
        assert_eq!(s11.len(), 2);
        assert!(s11.iter().all(|s| s.graphs.len() == 1));
    }

    #[test]
    fn serialization_format() {
        let graphs = enumerate_stable_graphs(1, 1).unwrap();
        let texts: Vec<String> = graphs.iter().map(|(g, _)| g.serialize_text()).collect();
        assert!(texts
            .iter()
            .any(|t| t == "V=1;E=0;vertices=[(1,0,legs{1})];edges=[]"));
        assert!(texts
            .iter()
            .any(|t| t == "V=1;E=1;vertices=[(0,1,legs{1})];edges=[]"));
    }
}
