//! Maximum flow with exact rational capacities.
//!
//! Edmonds-Karp on an undirected capacity graph. The augmentation count is
//! bounded by the graph size alone, so exact (unscaled) rational capacities
//! terminate just like integer ones. Used as the separation engine for the
//! cut constraints: min s-t cut directly, global min cut by fixing a source
//! and taking the best of n-1 flows.

use crate::instance::{Cut, EdgeVector};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

/// Max-flow value plus the source side of a minimum cut.
pub struct FlowResult {
    pub value: Rational,
    /// Vertices reachable from the source in the final residual graph.
    pub source_side: Vec<usize>,
}

struct FlowNetwork {
    n: usize,
    // Forward/backward arc pairs: arc 2k and 2k+1 are mutual reverses.
    to: Vec<usize>,
    residual: Vec<Rational>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork { n, to: Vec::new(), residual: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Undirected edge: full capacity in both directions.
    fn add_undirected(&mut self, u: usize, v: usize, cap: Rational) {
        let a = self.to.len();
        self.to.push(v);
        self.residual.push(cap.clone());
        self.adj[u].push(a);
        let b = self.to.len();
        self.to.push(u);
        self.residual.push(cap);
        self.adj[v].push(b);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> FlowResult {
        let mut value = Rational::zero();
        loop {
            // BFS for a shortest augmenting path.
            let mut pred: Vec<Option<usize>> = vec![None; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if !seen[v] && self.residual[a].is_positive() {
                        seen[v] = true;
                        pred[v] = Some(a);
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                let source_side = (0..self.n).filter(|&v| seen[v]).collect();
                return FlowResult { value, source_side };
            }
            // Bottleneck along the path.
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let a = pred[v].unwrap();
                let r = &self.residual[a];
                if bottleneck.as_ref().map_or(true, |b| r < b) {
                    bottleneck = Some(r.clone());
                }
                v = self.to[a ^ 1];
            }
            let push = bottleneck.expect("path has at least one arc");
            let mut v = t;
            while v != s {
                let a = pred[v].unwrap();
                self.residual[a] -= push.clone();
                self.residual[a ^ 1] += push.clone();
                v = self.to[a ^ 1];
            }
            value += push;
        }
    }
}

/// Exact min s-t cut of the weighted graph `x` on vertices `0..n`.
/// Returns the flow value and the source-side cut.
pub fn min_st_cut(n: usize, x: &EdgeVector, s: usize, t: usize) -> (Rational, Cut) {
    let mut net = FlowNetwork::new(n);
    for ((u, v), cap) in x.iter() {
        if cap.is_positive() {
            net.add_undirected(u, v, cap.clone());
        }
    }
    let result = net.max_flow(s, t);
    let cut = Cut::new(result.source_side.iter().copied(), n)
        .expect("source side is nonempty and excludes the sink");
    debug_assert_eq!(x.cut_value(&cut), result.value);
    (result.value, cut)
}

/// Exact global min cut: fixes vertex 0 as a source and takes the minimum
/// over the n-1 flows to every other vertex. Returns the side that does not
/// contain vertex 0.
pub fn global_min_cut(n: usize, x: &EdgeVector) -> Option<(Rational, Vec<usize>)> {
    if n < 2 {
        return None;
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for v in 1..n {
        let mut net = FlowNetwork::new(n);
        for ((a, b), cap) in x.iter() {
            if cap.is_positive() {
                net.add_undirected(a, b, cap.clone());
            }
        }
        let result = net.max_flow(0, v);
        let far_side: Vec<usize> =
            (0..n).filter(|u| !result.source_side.contains(u)).collect();
        if best.as_ref().map_or(true, |(b, _)| result.value < *b) {
            best = Some((result.value, far_side));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::EdgeVector;
    use crate::rational::{rat, rat_int};

    #[test]
    fn min_cut_on_a_fractional_path() {
        // 0 -(1/2)- 1 -(1/3)- 2: bottleneck 1/3.
        let x = EdgeVector::from_entries([((0, 1), rat(1, 2)), ((1, 2), rat(1, 3))]);
        let (value, cut) = min_st_cut(3, &x, 0, 2);
        assert_eq!(value, rat(1, 3));
        assert_eq!(x.cut_value(&cut), rat(1, 3));
        assert!(cut.contains(0) && !cut.contains(2));
    }

    #[test]
    fn flow_saturates_parallel_routes() {
        let x = EdgeVector::from_entries([
            ((0, 1), rat(1, 2)),
            ((1, 3), rat(1, 2)),
            ((0, 2), rat(1, 3)),
            ((2, 3), rat_int(1)),
        ]);
        let (value, _) = min_st_cut(4, &x, 0, 3);
        assert_eq!(value, rat(1, 2) + rat(1, 3));
    }

    #[test]
    fn global_min_cut_of_a_cycle() {
        // Unit 4-cycle: every single vertex is a min cut of value 2.
        let x = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((2, 3), rat_int(1)),
            ((0, 3), rat_int(1)),
        ]);
        let (value, side) = global_min_cut(4, &x).unwrap();
        assert_eq!(value, rat_int(2));
        assert!(!side.contains(&0) && !side.is_empty());
    }

    #[test]
    fn zero_capacity_graph_has_zero_cut() {
        let x = EdgeVector::new();
        let (value, cut) = min_st_cut(3, &x, 0, 2);
        assert_eq!(value, rat_int(0));
        assert_eq!(x.cut_value(&cut), rat_int(0));
    }
}
