//! Spanning trees, exhaustive enumeration, and exact convex decomposition.
//!
//! A point of the spanning tree polytope is decomposed into an exact convex
//! combination of spanning-tree indicators by solving a feasibility LP over
//! the enumerated trees of its support. Basic solutions keep at most
//! `|support| + 1` trees. The enumeration itself is cross-checked against
//! the Kirchhoff matrix-tree determinant, computed in exact rationals.

use crate::instance::{edge, Edge, EdgeVector, Instance, VertexId};
use crate::linalg;
use crate::lp::simplex::{LinearProgram, Row, Sense, SimplexOutcome};
use crate::lp::{check_spanning_tree_polytope, simplex};
use crate::rational::Rational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Default cap on exhaustive tree enumeration.
pub const DEFAULT_TREE_LIMIT: usize = 1_000_000;

/// A spanning tree given by its edge set; validated at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningTree {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl SpanningTree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if edges.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "spanning tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut dsu = Dsu::new(n);
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if !dsu.union(u, v) {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) closes a cycle")));
            }
        }
        Ok(SpanningTree { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    pub fn indicator(&self) -> EdgeVector {
        EdgeVector::indicator(self.edges.iter())
    }

    pub fn cost(&self, inst: &Instance) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (u, v) in &self.edges {
            let c = inst.cost(*u, *v).ok_or_else(|| {
                Error::InvalidInput(format!("tree edge ({u},{v}) missing from instance"))
            })?;
            acc += c;
        }
        Ok(acc)
    }

    /// Vertex sequence of the unique tree path from `u` to `v`.
    pub fn path_vertices(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut stack = vec![u];
        parent[u] = u;
        while let Some(w) = stack.pop() {
            for &z in &adj[w] {
                if parent[z] == usize::MAX {
                    parent[z] = w;
                    stack.push(z);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Edge set of the unique tree path from `u` to `v`.
    pub fn path_edges(&self, u: VertexId, v: VertexId) -> BTreeSet<Edge> {
        let verts = self.path_vertices(u, v);
        verts.windows(2).map(|w| edge(w[0], w[1])).collect()
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Number of spanning trees of the support graph, by the matrix-tree
/// theorem over exact rationals.
pub fn count_spanning_trees(n: usize, edges: &[Edge]) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    // Laplacian minor with row/column 0 removed.
    let mut m = vec![vec![Rational::zero(); n - 1]; n - 1];
    for &(u, v) in edges {
        if u > 0 {
            m[u - 1][u - 1] += Rational::one();
        }
        if v > 0 {
            m[v - 1][v - 1] += Rational::one();
        }
        if u > 0 && v > 0 {
            m[u - 1][v - 1] -= Rational::one();
            m[v - 1][u - 1] -= Rational::one();
        }
    }
    let det = linalg::determinant(m);
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Exhaustive, duplicate-free spanning tree enumeration of a support graph.
/// The matrix-tree count is computed first; if it exceeds `limit` the
/// enumeration refuses to run and reports the count.
pub fn enumerate_spanning_trees(
    n: usize,
    edges: &[Edge],
    limit: usize,
) -> Result<Vec<SpanningTree>> {
    let count = count_spanning_trees(n, edges);
    if count > BigInt::from(limit) {
        return Err(Error::TreeLimit { count: count.to_string() });
    }
    if count.is_zero() {
        return Err(Error::NotConnected);
    }

    let mut result = Vec::new();
    let mut chosen: Vec<Edge> = Vec::new();
    rec_enumerate(n, edges, 0, &mut chosen, &mut result);

    if BigInt::from(result.len()) != count {
        return Err(Error::InternalConsistency(format!(
            "enumerated {} trees but matrix-tree count is {}",
            result.len(),
            count
        )));
    }
    Ok(result)
}

fn rec_enumerate(
    n: usize,
    edges: &[Edge],
    i: usize,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<SpanningTree>,
) {
    if chosen.len() == n - 1 {
        out.push(SpanningTree::new(n, chosen.iter().copied()).expect("forest of n-1 edges spans"));
        return;
    }
    if i == edges.len() || chosen.len() + (edges.len() - i) < n - 1 {
        return;
    }
    // Prune: the rest of the edge list must still be able to connect the
    // current forest.
    let mut dsu = Dsu::new(n);
    for &(u, v) in chosen.iter() {
        dsu.union(u, v);
    }
    let mut components = n - chosen.len();
    for &(u, v) in &edges[i..] {
        if dsu.union(u, v) {
            components -= 1;
        }
    }
    if components > 1 {
        return;
    }

    let (u, v) = edges[i];
    let mut dsu = Dsu::new(n);
    for &(a, b) in chosen.iter() {
        dsu.union(a, b);
    }
    if dsu.find(u) != dsu.find(v) {
        chosen.push(edges[i]);
        rec_enumerate(n, edges, i + 1, chosen, out);
        chosen.pop();
    }
    rec_enumerate(n, edges, i + 1, chosen, out);
}

/// An exact convex combination of spanning trees.
///
/// Invariants (checked by [`ConvexDecomposition::validate`]): positive
/// weights summing to one, pairwise distinct trees, and edge-by-edge
/// re-summation equal to the decomposed vector.
#[derive(Debug, Clone)]
pub struct ConvexDecomposition {
    terms: Vec<(Rational, SpanningTree)>,
}

impl ConvexDecomposition {
    pub fn new(terms: Vec<(Rational, SpanningTree)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        ConvexDecomposition { terms }
    }

    pub fn terms(&self) -> &[(Rational, SpanningTree)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact weighted sum of the tree indicators.
    pub fn expected_vector(&self) -> EdgeVector {
        let mut acc = EdgeVector::new();
        for (lambda, tree) in &self.terms {
            acc.add_scaled(&tree.indicator(), lambda);
        }
        acc
    }

    pub fn validate(&self, x: &EdgeVector) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InternalConsistency("empty decomposition".into()));
        }
        let mut seen = BTreeSet::new();
        let mut total = Rational::zero();
        for (lambda, tree) in &self.terms {
            if !lambda.is_positive() {
                return Err(Error::InternalConsistency("non-positive weight".into()));
            }
            if !seen.insert(tree.edge_set().clone()) {
                return Err(Error::InternalConsistency("duplicate tree".into()));
            }
            total += lambda;
        }
        if total != Rational::one() {
            return Err(Error::InternalConsistency("weights do not sum to one".into()));
        }
        if &self.expected_vector() != x {
            return Err(Error::InternalConsistency("re-summation does not match".into()));
        }
        Ok(())
    }

    /// Exact probability of an event under the sampling distribution.
    pub fn probability(&self, mut pred: impl FnMut(&SpanningTree) -> bool) -> Rational {
        let mut acc = Rational::zero();
        for (lambda, tree) in &self.terms {
            if pred(tree) {
                acc += lambda;
            }
        }
        acc
    }

    /// Exact expectation of a tree functional.
    pub fn expectation(&self, mut f: impl FnMut(&SpanningTree) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (lambda, tree) in &self.terms {
            acc += lambda * f(tree);
        }
        acc
    }

    /// Deterministic sample: the seed fixes the tree. Marginals converge to
    /// the weights; exact analyses use `probability`/`expectation` instead.
    pub fn sample(&self, seed: u64) -> &SpanningTree {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw: u64 = rng.gen();
        // r = draw / 2^64 as an exact rational in [0, 1).
        let r = Rational::new(BigInt::from(draw), BigInt::from(2u8).pow(64));
        let mut acc = Rational::zero();
        for (lambda, tree) in &self.terms {
            acc += lambda;
            if r < acc {
                return tree;
            }
        }
        &self.terms.last().expect("nonempty decomposition").1
    }
}

/// Decompose a spanning-tree-polytope point into an exact convex
/// combination of spanning trees of its support.
///
/// Membership is checked first and a violated constraint is reported
/// otherwise. The decomposition is found as a basic feasible solution of
/// the feasibility LP over all support trees, so it has at most
/// `|support| + 1` terms, and it is re-validated exactly before returning.
pub fn decompose(inst: &Instance, x: &EdgeVector) -> Result<ConvexDecomposition> {
    decompose_with_limit(inst, x, DEFAULT_TREE_LIMIT)
}

pub fn decompose_with_limit(
    inst: &Instance,
    x: &EdgeVector,
    limit: usize,
) -> Result<ConvexDecomposition> {
    let check = check_spanning_tree_polytope(inst, x)?;
    if !check.pass {
        return Err(Error::OutsidePolytope {
            constraint: format!("{:?}", check.witness.expect("failed check carries a witness")),
        });
    }
    let support = x.support();
    let trees = enumerate_spanning_trees(inst.n(), &support, limit)?;

    // Feasibility LP: lambda >= 0, one row per support edge, one for the
    // convex normalization.
    let index: BTreeMap<Edge, usize> = support.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut rows: Vec<Row> = support
        .iter()
        .map(|e| Row { coeffs: Vec::new(), sense: Sense::Eq, rhs: x.get(e.0, e.1) })
        .collect();
    rows.push(Row { coeffs: Vec::new(), sense: Sense::Eq, rhs: Rational::one() });
    for (j, tree) in trees.iter().enumerate() {
        for e in tree.edges() {
            rows[index[e]].coeffs.push((j, Rational::one()));
        }
        rows[support.len()].coeffs.push((j, Rational::one()));
    }
    let prog = LinearProgram {
        num_vars: trees.len(),
        objective: vec![Rational::zero(); trees.len()],
        upper: vec![None; trees.len()],
        rows,
    };
    let sol = match simplex::solve(&prog)? {
        SimplexOutcome::Optimal(sol) => sol,
        _ => {
            return Err(Error::InternalConsistency(
                "polytope member admitted no tree combination".into(),
            ))
        }
    };
    let terms: Vec<(Rational, SpanningTree)> = trees
        .into_iter()
        .zip(sol.values)
        .filter(|(_, lambda)| lambda.is_positive())
        .map(|(tree, lambda)| (lambda, tree))
        .collect();
    let dec = ConvexDecomposition::new(terms);
    dec.validate(x)?;
    Ok(dec)
}

/// The geometric membership test: `tree` appears in some convex
/// decomposition of `x` iff its indicator is tight at every spanning-tree
/// polytope constraint where `x` is tight (zero coordinates and induced-set
/// constraints; the total-size equality holds for both by construction).
pub fn is_in_some_decomposition(inst: &Instance, x: &EdgeVector, tree: &SpanningTree) -> Result<bool> {
    let n = inst.n();
    if n > crate::lp::ENUM_VERTEX_LIMIT {
        return Err(Error::InvalidInput(format!(
            "tight-set enumeration capped at {} vertices",
            crate::lp::ENUM_VERTEX_LIMIT
        )));
    }
    let check = check_spanning_tree_polytope(inst, x)?;
    if !check.pass {
        return Err(Error::OutsidePolytope {
            constraint: format!("{:?}", check.witness.expect("failed check carries a witness")),
        });
    }
    // x_e = 0 is tight at the nonnegativity constraint: the tree must avoid e.
    for e in tree.edges() {
        if x.get(e.0, e.1).is_zero() {
            return Ok(false);
        }
    }
    for mask in 1u64..((1 << n) - 1) {
        let members: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let bound = Rational::from_integer(BigInt::from(members.len() as i64 - 1));
        if x.induced_value(&members) == bound {
            let inside = tree
                .edges()
                .filter(|(u, v)| members.contains(u) && members.contains(v))
                .count();
            if BigInt::from(inside) != bound.to_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn triangle() -> Vec<Edge> {
        vec![(0, 1), (0, 2), (1, 2)]
    }

    #[test]
    fn triangle_has_three_trees() {
        assert_eq!(count_spanning_trees(3, &triangle()), 3.into());
        let trees = enumerate_spanning_trees(3, &triangle(), 100).unwrap();
        assert_eq!(trees.len(), 3);
    }

    #[test]
    fn a_tree_enumerates_to_itself() {
        let edges = vec![(0, 1), (1, 2), (1, 3)];
        let trees = enumerate_spanning_trees(4, &edges, 100).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edge_set().len(), 3);
    }

    #[test]
    fn complete_graph_matches_cayley() {
        let edges: Vec<Edge> = (0..5).flat_map(|u| ((u + 1)..5).map(move |v| (u, v))).collect();
        assert_eq!(count_spanning_trees(5, &edges), 125.into()); // 5^3
        let trees = enumerate_spanning_trees(5, &edges, 1000).unwrap();
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn limit_error_names_the_count() {
        let edges: Vec<Edge> = (0..6).flat_map(|u| ((u + 1)..6).map(move |v| (u, v))).collect();
        match enumerate_spanning_trees(6, &edges, 100) {
            Err(Error::TreeLimit { count }) => assert_eq!(count, "1296"),
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    fn complete_unit_instance(n: usize) -> Instance {
        Instance::new(
            n,
            0,
            n - 1,
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| ((u, v), rat_int(1)))),
            true,
        )
        .unwrap()
    }

    #[test]
    fn single_tree_decomposes_trivially() {
        let inst = complete_unit_instance(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let dec = decompose(&inst, &tree.indicator()).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.terms()[0].0, rat_int(1));
        assert_eq!(dec.terms()[0].1, tree);
    }

    #[test]
    fn midpoint_of_disjoint_trees_decomposes() {
        let inst = complete_unit_instance(4);
        let t1 = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t2 = SpanningTree::new(4, [(0, 3), (0, 2), (1, 3)]).unwrap();
        let mut x = t1.indicator().scaled(&rat(1, 2));
        x.add_scaled(&t2.indicator(), &rat(1, 2));
        let dec = decompose(&inst, &x).unwrap();
        dec.validate(&x).unwrap();
        assert_eq!(dec.expected_vector(), x);
    }

    #[test]
    fn membership_rejects_non_polytope_points() {
        let inst = complete_unit_instance(3);
        let cycle = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((0, 2), rat_int(1)),
        ]);
        assert!(matches!(decompose(&inst, &cycle), Err(Error::OutsidePolytope { .. })));
    }

    #[test]
    fn tightness_membership_on_indicator_points() {
        let inst = complete_unit_instance(4);
        let k = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let other = SpanningTree::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let x = k.indicator();
        assert!(is_in_some_decomposition(&inst, &x, &k).unwrap());
        assert!(!is_in_some_decomposition(&inst, &x, &other).unwrap());
    }

    #[test]
    fn every_decomposition_tree_passes_the_tightness_test() {
        let inst = complete_unit_instance(4);
        let t1 = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t2 = SpanningTree::new(4, [(0, 3), (0, 2), (1, 3)]).unwrap();
        let mut x = t1.indicator().scaled(&rat(1, 2));
        x.add_scaled(&t2.indicator(), &rat(1, 2));
        let dec = decompose(&inst, &x).unwrap();
        for (_, tree) in dec.terms() {
            assert!(is_in_some_decomposition(&inst, &x, tree).unwrap());
        }
    }

    #[test]
    fn distribution_queries_are_exact() {
        let inst = complete_unit_instance(4);
        let t1 = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t2 = SpanningTree::new(4, [(0, 3), (0, 2), (1, 3)]).unwrap();
        let mut x = t1.indicator().scaled(&rat(1, 3));
        x.add_scaled(&t2.indicator(), &rat(2, 3));
        let dec = ConvexDecomposition::new(vec![(rat(1, 3), t1.clone()), (rat(2, 3), t2)]);
        dec.validate(&x).unwrap();
        assert_eq!(dec.probability(|_| true), rat_int(1));
        assert_eq!(dec.probability(|t| t == &t1), rat(1, 3));
        // Linearity: expected cost is the cost of the decomposed point.
        let expected_cost = dec.expectation(|t| t.cost(&inst).unwrap());
        assert_eq!(expected_cost, x.cost(&inst).unwrap());
    }

    #[test]
    fn sampling_is_deterministic_and_consistent() {
        let t1 = SpanningTree::new(3, [(0, 1), (1, 2)]).unwrap();
        let t2 = SpanningTree::new(3, [(0, 2), (1, 2)]).unwrap();
        let dec = ConvexDecomposition::new(vec![(rat(1, 2), t1.clone()), (rat(1, 2), t2)]);
        assert_eq!(dec.sample(42), dec.sample(42));
        let single = ConvexDecomposition::new(vec![(rat_int(1), t1.clone())]);
        for seed in 0..20 {
            assert_eq!(single.sample(seed), &t1);
        }
        let hits = (0..100_000u64).filter(|&s| dec.sample(s) == &t1).count();
        let freq = hits as f64 / 100_000.0;
        assert!((freq - 0.5).abs() < 0.02, "frequency {freq} strayed from 1/2");
    }

    #[test]
    fn tree_paths() {
        let tree = SpanningTree::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(tree.path_vertices(0, 4), vec![0, 1, 3, 4]);
        assert_eq!(tree.path_edges(2, 4).len(), 3);
        assert_eq!(tree.degree(1), 3);
    }
}
