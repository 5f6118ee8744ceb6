//! Christofides-style algorithms for the s-t path problem.
//!
//! The deterministic variant (minimum spanning tree, parity repair by a
//! minimum T-join, Eulerian traversal, shortcut) and the tree-by-tree
//! variant driven by a convex decomposition of an LP optimum, including the
//! half-integral rounding path. Every emitted path is re-validated, every
//! shortcut is checked not to increase cost, and the expected-cost ledger is
//! compared exactly against the narrow-cut certificate bound.

use crate::decomp::{ConvexDecomposition, Dsu, SpanningTree};
use crate::instance::{edge, Edge, EdgeVector, Instance, VertexId};
use crate::lp::{check_lp1_feasible, check_tjoin_polyhedron};
use crate::narrow::{self, UnifiedParams};
use crate::rational::{rat, rat_int, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A Hamiltonian s-t path with its exact cost; validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamPath {
    pub order: Vec<VertexId>,
    pub cost: Rational,
}

impl HamPath {
    pub fn new(inst: &Instance, order: Vec<VertexId>) -> Result<Self> {
        let n = inst.n();
        if order.len() != n {
            return Err(Error::InvalidInput("path must visit every vertex once".into()));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput("path is not a permutation".into()));
            }
            seen[v] = true;
        }
        if order[0] != inst.s() || order[n - 1] != inst.t() {
            return Err(Error::InvalidInput("path must run from s to t".into()));
        }
        let mut cost = Rational::zero();
        for w in order.windows(2) {
            let c = inst.cost(w[0], w[1]).ok_or_else(|| {
                Error::InvalidInput(format!("missing edge ({},{})", w[0], w[1]))
            })?;
            cost += c;
        }
        Ok(HamPath { order, cost })
    }
}

/// An edge set whose odd-degree vertices are exactly `t_set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TJoin {
    pub t_set: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
    pub cost: Rational,
}

/// Odd-degree vertex set of an edge set.
pub fn odd_degree_set<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> BTreeSet<VertexId> {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (u, v) in edges {
        *deg.entry(*u).or_default() += 1;
        *deg.entry(*v).or_default() += 1;
    }
    deg.into_iter().filter(|(_, d)| d % 2 == 1).map(|(v, _)| v).collect()
}

/// Wrong-degree vertices of a spanning tree: the endpoints when their tree
/// degree is even, internal vertices when odd. Always of even cardinality.
pub fn wrong_degree_set(tree: &SpanningTree, s: VertexId, t: VertexId) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for v in 0..tree.n() {
        let deg = tree.degree(v);
        let endpoint = v == s || v == t;
        if (endpoint && deg % 2 == 0) || (!endpoint && deg % 2 == 1) {
            out.insert(v);
        }
    }
    debug_assert_eq!(out.len() % 2, 0, "wrong-degree set must be even");
    out
}

/// Minimum-cost spanning tree by Kruskal with lexicographic tie-breaking.
pub fn minimum_spanning_tree(inst: &Instance) -> Result<SpanningTree> {
    let mut edges: Vec<(Rational, Edge)> =
        inst.edges().map(|(e, c)| (c.clone(), e)).collect();
    edges.sort();
    let mut dsu = Dsu::new(inst.n());
    let mut chosen = Vec::new();
    for (_, (u, v)) in edges {
        if dsu.union(u, v) {
            chosen.push((u, v));
        }
    }
    SpanningTree::new(inst.n(), chosen)
}

const TJOIN_SET_LIMIT: usize = 20;

/// Minimum-cost T-join on a complete metric instance.
///
/// Realized as a minimum-weight perfect matching on T under the metric
/// costs (edge-disjoint shortest connections; under the triangle inequality
/// the direct edge is a shortest one), found by exact bitmask dynamic
/// programming. Overlaps would be resolved by symmetric difference; with
/// vertex-disjoint matched pairs the edges are already distinct. An empty T
/// yields the empty join of cost zero.
pub fn min_tjoin(inst: &Instance, t_set: &BTreeSet<VertexId>) -> Result<TJoin> {
    if !inst.is_complete_metric() {
        return Err(Error::InvalidInput("T-joins are computed on complete metric instances".into()));
    }
    if t_set.len() % 2 != 0 {
        return Err(Error::InvalidInput("|T| must be even".into()));
    }
    if t_set.is_empty() {
        return Ok(TJoin { t_set: BTreeSet::new(), edges: BTreeSet::new(), cost: Rational::zero() });
    }
    if t_set.len() > TJOIN_SET_LIMIT {
        return Err(Error::InvalidInput(format!("|T| capped at {TJOIN_SET_LIMIT}")));
    }
    let verts: Vec<VertexId> = t_set.iter().copied().collect();
    let k = verts.len();
    let full = (1usize << k) - 1;
    let mut dp: Vec<Option<Rational>> = vec![None; full + 1];
    let mut choice: Vec<(usize, usize)> = vec![(0, 0); full + 1];
    dp[0] = Some(Rational::zero());
    for mask in 1..=full {
        if (mask.count_ones() as usize) % 2 != 0 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        for j in (i + 1)..k {
            if mask >> j & 1 == 0 {
                continue;
            }
            let rest = mask ^ (1 << i) ^ (1 << j);
            let Some(base) = dp[rest].clone() else { continue };
            let cand = base + inst.cost(verts[i], verts[j]).expect("complete instance");
            if dp[mask].as_ref().map_or(true, |cur| cand < *cur) {
                dp[mask] = Some(cand);
                choice[mask] = (i, j);
            }
        }
    }

    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut mask = full;
    while mask != 0 {
        let (i, j) = choice[mask];
        let e = edge(verts[i], verts[j]);
        // Symmetric difference: a duplicate would cancel out.
        if !edges.insert(e) {
            edges.remove(&e);
        }
        mask ^= (1 << i) | (1 << j);
    }
    let cost: Rational = edges.iter().map(|(u, v)| inst.cost(*u, *v).unwrap().clone()).sum();
    if &odd_degree_set(edges.iter()) != t_set {
        return Err(Error::InternalConsistency("T-join parity check failed".into()));
    }
    debug_assert_eq!(Some(&cost), dp[full].as_ref());
    Ok(TJoin { t_set: t_set.clone(), edges, cost })
}

/// Eulerian s-t traversal of an integer multigraph followed by
/// shortcutting. The multigraph must span all vertices with odd degrees
/// exactly at `{s, t}`. Deterministic: the traversal always consumes the
/// lowest-numbered available neighbor, and the shortcut keeps first visits
/// (deferring `t` to the end). The result never costs more than the
/// multigraph, which is asserted.
pub fn euler_shortcut(inst: &Instance, multigraph: &EdgeVector) -> Result<HamPath> {
    let n = inst.n();
    let (s, t) = (inst.s(), inst.t());
    let mut adj: Vec<BTreeMap<VertexId, u64>> = vec![BTreeMap::new(); n];
    let mut total_cost = Rational::zero();
    for ((u, v), val) in multigraph.iter() {
        if !val.is_integer() || val.is_negative() {
            return Err(Error::InvalidInput(format!(
                "multiplicity on ({u},{v}) must be a nonnegative integer"
            )));
        }
        let m: u64 = val
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidInput("multiplicity too large".into()))?;
        if m == 0 {
            continue;
        }
        *adj[u].entry(v).or_default() += m;
        *adj[v].entry(u).or_default() += m;
        let c = inst
            .cost(u, v)
            .ok_or_else(|| Error::InvalidInput(format!("missing edge ({u},{v})")))?;
        total_cost += c * val;
    }

    for v in 0..n {
        let deg: u64 = adj[v].values().sum();
        let odd = deg % 2 == 1;
        let endpoint = v == s || v == t;
        if deg == 0 {
            return Err(Error::InvalidInput(format!("vertex {v} is not covered")));
        }
        if odd != endpoint {
            return Err(Error::InvalidInput(format!("wrong degree parity at vertex {v}")));
        }
    }
    // Connectivity over the support.
    let mut dsu = Dsu::new(n);
    for ((u, v), _) in multigraph.iter() {
        dsu.union(u, v);
    }
    let root = dsu.find(0);
    if (1..n).any(|v| dsu.find(v) != root) {
        return Err(Error::InvalidInput("multigraph is not connected".into()));
    }

    // Hierholzer; the popped sequence is the trail reversed.
    let mut stack = vec![s];
    let mut trail_rev: Vec<VertexId> = Vec::new();
    while let Some(&v) = stack.last() {
        let next = adj[v].iter().find(|(_, &m)| m > 0).map(|(&w, _)| w);
        match next {
            Some(w) => {
                *adj[v].get_mut(&w).unwrap() -= 1;
                *adj[w].get_mut(&v).unwrap() -= 1;
                stack.push(w);
            }
            None => {
                trail_rev.push(v);
                stack.pop();
            }
        }
    }
    let trail: Vec<VertexId> = trail_rev.into_iter().rev().collect();
    if trail.first() != Some(&s) || trail.last() != Some(&t) {
        return Err(Error::InternalConsistency("traversal does not run from s to t".into()));
    }

    // Shortcut: first occurrences in trail order, with t deferred to the end.
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &v in &trail {
        if v != t && !seen[v] {
            seen[v] = true;
            order.push(v);
        }
    }
    order.push(t);
    let path = HamPath::new(inst, order)?;
    if path.cost > total_cost {
        return Err(Error::InternalConsistency(
            "shortcut increased the cost; triangle inequality violated".into(),
        ));
    }
    Ok(path)
}

/// The classic deterministic pipeline: minimum spanning tree, minimum
/// T-join on its wrong-degree set, Eulerian shortcut.
pub fn hoogeveen(inst: &Instance) -> Result<HamPath> {
    if !inst.is_complete_metric() {
        return Err(Error::InvalidInput("need a complete metric instance".into()));
    }
    let tree = minimum_spanning_tree(inst)?;
    let t_set = wrong_degree_set(&tree, inst.s(), inst.t());
    let join = min_tjoin(inst, &t_set)?;
    let mut multi = tree.indicator();
    multi.add_scaled(&EdgeVector::indicator(join.edges.iter()), &Rational::one());
    euler_shortcut(inst, &multi)
}

/// Per-tree ledger of the decomposition-driven algorithm.
#[derive(Debug, Clone)]
pub struct TreeRun {
    pub lambda: Rational,
    pub tree: SpanningTree,
    pub tree_cost: Rational,
    pub t_set: BTreeSet<VertexId>,
    pub tjoin_cost: Rational,
    /// c(J) + c(F): the traversed multigraph cost before shortcutting.
    pub combined: Rational,
    pub path: HamPath,
}

#[derive(Debug, Clone)]
pub struct BestOfMany {
    pub runs: Vec<TreeRun>,
    pub best: HamPath,
    /// Exact expectation of c(J) + c(F) over the decomposition.
    pub expected_combined: Rational,
    /// The certificate-side bound the expectation was checked against.
    pub certified_bound: Rational,
}

/// Run the tree-by-tree variant over every term of a decomposition of `x`
/// and keep the cheapest path.
///
/// Exact assertions per tree: `J \ P` is a T-join for the wrong-degree set
/// (parity argument), so the minimum T-join costs at most `c(J) - c(P)`.
/// The exact expected cost `E(c(J) + c(F))` is compared against the unified
/// certificate bound at the reference parameter setting, which also caps the
/// best path at 8/5 of the LP value.
pub fn best_of_many(
    inst: &Instance,
    x: &EdgeVector,
    dec: &ConvexDecomposition,
) -> Result<BestOfMany> {
    let (s, t) = (inst.s(), inst.t());
    let mut runs = Vec::with_capacity(dec.len());
    let mut expected_combined = Rational::zero();
    for (lambda, tree) in dec.terms() {
        let tree_cost = tree.cost(inst)?;
        let t_set = wrong_degree_set(tree, s, t);
        let join = min_tjoin(inst, &t_set)?;

        // J \ P is a T-join for the wrong-degree set, so the minimum join
        // can never cost more.
        let path_edges = tree.path_edges(s, t);
        let residue: Vec<Edge> =
            tree.edges().filter(|e| !path_edges.contains(e)).copied().collect();
        if odd_degree_set(residue.iter()) != t_set {
            return Err(Error::InternalConsistency(
                "tree minus its s-t path is not a T-join for the wrong-degree set".into(),
            ));
        }
        let residue_cost: Rational =
            residue.iter().map(|(u, v)| inst.cost(*u, *v).unwrap().clone()).sum();
        if join.cost > residue_cost {
            return Err(Error::InternalConsistency(
                "minimum T-join exceeded the tree residue".into(),
            ));
        }

        let mut multi = tree.indicator();
        multi.add_scaled(&EdgeVector::indicator(join.edges.iter()), &Rational::one());
        let path = euler_shortcut(inst, &multi)?;
        let combined = tree_cost.clone() + join.cost.clone();
        expected_combined += lambda * combined.clone();
        runs.push(TreeRun {
            lambda: lambda.clone(),
            tree: tree.clone(),
            tree_cost,
            t_set,
            tjoin_cost: join.cost,
            combined,
            path,
        });
    }
    let best = runs
        .iter()
        .map(|r| &r.path)
        .min_by(|a, b| a.cost.cmp(&b.cost).then_with(|| a.order.cmp(&b.order)))
        .expect("decomposition is nonempty")
        .clone();

    let params = UnifiedParams::from_beta(rat(4, 9))?;
    let report = narrow::certificate_report(inst, x, dec, &params)?;
    if expected_combined > report.certified_total_bound {
        return Err(Error::InternalConsistency(
            "expected combined cost exceeded the certificate bound".into(),
        ));
    }
    Ok(BestOfMany { runs, best, expected_combined, certified_bound: report.certified_total_bound })
}

#[derive(Debug, Clone)]
pub struct HalfIntegralRounding {
    pub result: BestOfMany,
    pub x_cost: Rational,
    /// `(3/2) c(x)`, which the returned path provably does not exceed.
    pub bound: Rational,
}

/// Round a half-integral optimum of the path relaxation to a Hamiltonian
/// path of cost at most `3/2 c(x)`.
///
/// The feasibility of `x/2` for every tree's T-join polyhedron is checked
/// exhaustively (it follows from the degree and parity structure of
/// half-integral solutions), which certifies the bound before the paths are
/// even built.
pub fn round_half_integral(
    inst: &Instance,
    x: &EdgeVector,
    dec: &ConvexDecomposition,
) -> Result<HalfIntegralRounding> {
    let allowed = [rat(1, 2), Rational::one()];
    if !x.values_within(&allowed) {
        return Err(Error::InvalidInput("input vector is not half-integral".into()));
    }
    check_lp1_feasible(inst, x)?;
    let x_cost = x.cost(inst).expect("support checked");
    let half = x.scaled(&rat(1, 2));
    for (_, tree) in dec.terms() {
        let t_set = wrong_degree_set(tree, inst.s(), inst.t());
        if t_set.is_empty() {
            continue;
        }
        let check = check_tjoin_polyhedron(inst, &t_set, &half)?;
        if !check.pass {
            return Err(Error::InternalConsistency(format!(
                "x/2 infeasible for the T-join polyhedron at cut {}",
                check.witness.expect("failed check carries a witness")
            )));
        }
        let join = min_tjoin(inst, &t_set)?;
        if join.cost.clone() * rat_int(2) > x_cost {
            return Err(Error::InternalConsistency(
                "minimum T-join exceeded half the vector cost".into(),
            ));
        }
    }
    let result = best_of_many(inst, x, dec)?;
    let bound = rat(3, 2) * x_cost.clone();
    if result.best.cost > bound {
        return Err(Error::InternalConsistency(
            "rounded path exceeded 3/2 of the vector cost".into(),
        ));
    }
    Ok(HalfIntegralRounding { result, x_cost, bound })
}

const BRUTE_FORCE_LIMIT: usize = 11;

/// Exact minimum-cost Hamiltonian s-t path by pruned exhaustive search.
/// First-class oracle for the acceptance checks; capped at 11 vertices.
pub fn brute_force_opt_path(inst: &Instance) -> Result<HamPath> {
    if !inst.is_complete_metric() {
        return Err(Error::InvalidInput("need a complete metric instance".into()));
    }
    let n = inst.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::InvalidInput(format!(
            "exhaustive path search capped at {BRUTE_FORCE_LIMIT} vertices"
        )));
    }
    let (s, t) = (inst.s(), inst.t());
    let mut best: Option<(Rational, Vec<VertexId>)> = None;
    let mut order = vec![s];
    let mut visited = vec![false; n];
    visited[s] = true;
    search(inst, t, &mut order, &mut visited, Rational::zero(), &mut best);
    let (cost, order) = best.expect("a complete instance always has a Hamiltonian path");
    let path = HamPath::new(inst, order)?;
    debug_assert_eq!(path.cost, cost);
    Ok(path)
}

fn search(
    inst: &Instance,
    t: VertexId,
    order: &mut Vec<VertexId>,
    visited: &mut Vec<bool>,
    cost_so_far: Rational,
    best: &mut Option<(Rational, Vec<VertexId>)>,
) {
    let n = inst.n();
    if let Some((bound, _)) = best {
        if cost_so_far >= *bound {
            return;
        }
    }
    let cur = *order.last().unwrap();
    if order.len() == n - 1 {
        let total = cost_so_far + inst.cost(cur, t).unwrap().clone();
        if best.as_ref().map_or(true, |(b, _)| total < *b) {
            let mut full = order.clone();
            full.push(t);
            *best = Some((total, full));
        }
        return;
    }
    for v in 0..n {
        if visited[v] || v == t {
            continue;
        }
        visited[v] = true;
        order.push(v);
        let next_cost = cost_so_far.clone() + inst.cost(cur, v).unwrap().clone();
        search(inst, t, order, visited, next_cost, best);
        order.pop();
        visited[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decompose;
    use crate::instance::Instance;

    fn unit_path_completion(k: usize) -> Instance {
        Instance::new(k, 0, k - 1, (0..k - 1).map(|i| ((i, i + 1), rat_int(1))), false)
            .unwrap()
            .metric_completion()
            .unwrap()
    }

    #[test]
    fn wrong_degree_examples() {
        // A Hamiltonian s-t path has no wrong-degree vertices.
        let path = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(wrong_degree_set(&path, 0, 3).is_empty());
        // Star centered at s with t a leaf: the two non-t leaves are wrong.
        let star = SpanningTree::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t_set: BTreeSet<usize> = [1, 2].into_iter().collect();
        assert_eq!(wrong_degree_set(&star, 0, 3), t_set);
    }

    #[test]
    fn tjoin_on_endpoint_pair_is_the_direct_edge() {
        let inst = unit_path_completion(4);
        let t_set: BTreeSet<usize> = [0, 3].into_iter().collect();
        let join = min_tjoin(&inst, &t_set).unwrap();
        assert_eq!(join.cost, rat_int(3));
        assert_eq!(join.edges.len(), 1);
        assert!(join.edges.contains(&(0, 3)));
    }

    #[test]
    fn empty_tjoin_costs_nothing() {
        let inst = unit_path_completion(3);
        let join = min_tjoin(&inst, &BTreeSet::new()).unwrap();
        assert!(join.edges.is_empty());
        assert_eq!(join.cost, rat_int(0));
        let odd: BTreeSet<usize> = [1].into_iter().collect();
        assert!(min_tjoin(&inst, &odd).is_err());
    }

    // Exhaustive oracle: all ways to pair up T, metric matching costs.
    fn oracle_pairings(inst: &Instance, verts: &[usize]) -> Rational {
        if verts.is_empty() {
            return Rational::zero();
        }
        let a = verts[0];
        let mut best: Option<Rational> = None;
        for (i, &b) in verts.iter().enumerate().skip(1) {
            let mut rest = verts.to_vec();
            rest.remove(i);
            rest.remove(0);
            let cand = inst.cost(a, b).unwrap().clone() + oracle_pairings(inst, &rest);
            if best.as_ref().map_or(true, |cur| cand < *cur) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    // Exhaustive oracle: minimum-cost edge subset with odd-degree set T.
    fn oracle_subsets(inst: &Instance, t_set: &BTreeSet<usize>) -> Rational {
        let edges = inst.edge_set();
        let mut best: Option<Rational> = None;
        for mask in 0u64..(1 << edges.len()) {
            let chosen: Vec<Edge> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            if &odd_degree_set(chosen.iter()) != t_set {
                continue;
            }
            let cost: Rational =
                chosen.iter().map(|(u, v)| inst.cost(*u, *v).unwrap().clone()).sum();
            if best.as_ref().map_or(true, |cur| cost < *cur) {
                best = Some(cost);
            }
        }
        best.unwrap()
    }

    #[test]
    fn tjoin_matches_both_oracles_on_small_instances() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(4..=5);
            let mut edges: Vec<((usize, usize), Rational)> =
                (0..n - 1).map(|i| ((i, i + 1), rat_int(rng.gen_range(1..=4)))).collect();
            edges.push(((0, n - 1), rat_int(rng.gen_range(1..=4))));
            let base = Instance::new(n, 0, n - 1, edges, false).unwrap();
            let inst = base.metric_completion().unwrap();
            let all: Vec<usize> = (0..n).collect();
            for size in [2usize, 4] {
                let t_vec: Vec<usize> = all.iter().copied().take(size).collect();
                let t_set: BTreeSet<usize> = t_vec.iter().copied().collect();
                let join = min_tjoin(&inst, &t_set).unwrap();
                assert_eq!(join.cost, oracle_pairings(&inst, &t_vec));
                assert_eq!(join.cost, oracle_subsets(&inst, &t_set));
                // The indicator of a T-join is feasible for the T-join
                // polyhedron.
                let ind = EdgeVector::indicator(join.edges.iter());
                assert!(check_tjoin_polyhedron(&inst, &t_set, &ind).unwrap().pass);
            }
        }
    }

    #[test]
    fn euler_shortcut_identity_on_a_path() {
        let inst = unit_path_completion(4);
        let multi = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((2, 3), rat_int(1)),
        ]);
        let path = euler_shortcut(&inst, &multi).unwrap();
        assert_eq!(path.order, vec![0, 1, 2, 3]);
        assert_eq!(path.cost, rat_int(3));
    }

    #[test]
    fn euler_shortcut_skips_a_doubled_pendant() {
        // Path 0-1-2 plus pendant edge (1,3) doubled; trail 0,1,3,1,2
        // shortcuts to 0,1,3,2.
        let base = Instance::new(
            4,
            0,
            2,
            [((0, 1), rat_int(1)), ((1, 2), rat_int(1)), ((1, 3), rat_int(1))],
            false,
        )
        .unwrap();
        let inst = base.metric_completion().unwrap();
        let multi = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((1, 3), rat_int(2)),
        ]);
        let path = euler_shortcut(&inst, &multi).unwrap();
        assert_eq!(path.order, vec![0, 1, 3, 2]);
        assert!(path.cost <= rat_int(4));
    }

    #[test]
    fn euler_shortcut_rejects_bad_parity() {
        let inst = unit_path_completion(3);
        let multi = EdgeVector::from_entries([((0, 1), rat_int(1))]);
        assert!(euler_shortcut(&inst, &multi).is_err());
        let fractional = EdgeVector::from_entries([((0, 1), rat(1, 2))]);
        assert!(euler_shortcut(&inst, &fractional).is_err());
    }

    #[test]
    fn hoogeveen_on_tiny_instances() {
        // Two vertices: the single edge.
        let two = Instance::new(2, 0, 1, [((0, 1), rat_int(3))], true).unwrap();
        let path = hoogeveen(&two).unwrap();
        assert_eq!(path.order, vec![0, 1]);
        assert_eq!(path.cost, rat_int(3));
        // Unit-cost complete graph: any path is optimal.
        let complete = Instance::new(
            5,
            0,
            4,
            (0..5).flat_map(|u| ((u + 1)..5).map(move |v| ((u, v), rat_int(1)))),
            true,
        )
        .unwrap();
        assert_eq!(hoogeveen(&complete).unwrap().cost, rat_int(4));
    }

    #[test]
    fn hoogeveen_respects_the_five_thirds_bound() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..15 {
            let n = rng.gen_range(4..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push(((u, v), rat_int(rng.gen_range(1..=5))));
                }
            }
            let inst =
                Instance::new(n, 0, n - 1, edges, false).unwrap().metric_completion().unwrap();
            let heur = hoogeveen(&inst).unwrap();
            let opt = brute_force_opt_path(&inst).unwrap();
            assert!(heur.cost.clone() * rat_int(3) <= opt.cost.clone() * rat_int(5));
            assert!(heur.cost >= opt.cost);
        }
    }

    #[test]
    fn brute_force_on_unit_paths() {
        for k in 2..=6 {
            let inst = unit_path_completion(k);
            assert_eq!(brute_force_opt_path(&inst).unwrap().cost, rat_int(k as i64 - 1));
        }
    }

    #[test]
    fn best_of_many_on_an_integral_optimum_is_the_path_itself() {
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let dec = decompose(&inst, &x).unwrap();
        let result = best_of_many(&inst, &x, &dec).unwrap();
        assert_eq!(result.runs.len(), 1);
        assert_eq!(result.best.order, vec![0, 1, 2, 3]);
        assert_eq!(result.expected_combined, rat_int(3));
    }

    #[test]
    fn rounding_an_integral_vector_returns_it() {
        let inst = unit_path_completion(5);
        let tree = SpanningTree::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let x = tree.indicator();
        let dec = decompose(&inst, &x).unwrap();
        let rounding = round_half_integral(&inst, &x, &dec).unwrap();
        assert_eq!(rounding.result.best.cost, rat_int(4));
        assert_eq!(rounding.bound, rat_int(6));
    }

    #[test]
    fn rounding_rejects_non_half_integral_input() {
        let inst = unit_path_completion(3);
        let x = EdgeVector::from_entries([((0, 1), rat(1, 3))]);
        let tree = SpanningTree::new(3, [(0, 1), (1, 2)]).unwrap();
        let dec = decompose(&inst, &tree.indicator()).unwrap();
        assert!(matches!(
            round_half_integral(&inst, &x, &dec),
            Err(Error::InvalidInput(msg)) if msg.contains("half-integral")
        ));
    }
}
