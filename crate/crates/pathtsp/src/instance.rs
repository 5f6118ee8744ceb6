//! Instances, sparse edge vectors, cuts, partitions, and the text format.
//!
//! Vertices are dense ids `0..n`. Edges are unordered pairs normalized to
//! `u < v`; parallel edges never appear in an [`Instance`] (multigraph
//! multiplicities live in [`EdgeVector`] values where needed).

use crate::rational::{format_rational, parse_rational, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

pub type VertexId = usize;

/// Unordered vertex pair with `u < v`.
pub type Edge = (VertexId, VertexId);

/// Normalize an unordered pair. Panics on a loop; loops are never valid here.
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    assert_ne!(u, v, "loop edge ({u},{u}) is not allowed");
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A weighted graph with two distinguished endpoints `s` and `t`.
///
/// `is_complete_metric` marks instances whose cost table contains all
/// `n(n-1)/2` pairs and satisfies the triangle inequality; the LP and
/// Christofides layers require it and it is checked, not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    s: VertexId,
    t: VertexId,
    costs: BTreeMap<Edge, Rational>,
    is_complete_metric: bool,
}

impl Instance {
    pub fn new(
        n: usize,
        s: VertexId,
        t: VertexId,
        costs: impl IntoIterator<Item = ((VertexId, VertexId), Rational)>,
        is_complete_metric: bool,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("need at least two vertices".into()));
        }
        if s == t {
            return Err(Error::InvalidInput("s and t must be distinct".into()));
        }
        if s >= n || t >= n {
            return Err(Error::InvalidInput("s or t out of range".into()));
        }
        let mut map = BTreeMap::new();
        for ((u, v), c) in costs {
            if u == v {
                return Err(Error::InvalidInput(format!("loop edge ({u},{v})")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if c < Rational::zero() {
                return Err(Error::InvalidInput(format!("negative cost on ({u},{v})")));
            }
            if map.insert(edge(u, v), c).is_some() {
                return Err(Error::InvalidInput(format!("duplicate edge ({u},{v})")));
            }
        }
        let inst = Instance { n, s, t, costs: map, is_complete_metric };
        if is_complete_metric {
            if !inst.is_complete() {
                return Err(Error::InvalidInput(
                    "metric flag set but edge set is incomplete".into(),
                ));
            }
            if let Some((u, v, w)) = inst.triangle_violation() {
                return Err(Error::InvalidInput(format!(
                    "metric flag set but triangle inequality fails on ({u},{v},{w})"
                )));
            }
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> VertexId {
        self.s
    }

    pub fn t(&self) -> VertexId {
        self.t
    }

    pub fn is_complete_metric(&self) -> bool {
        self.is_complete_metric
    }

    pub fn cost(&self, u: VertexId, v: VertexId) -> Option<&Rational> {
        self.costs.get(&edge(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, &Rational)> {
        self.costs.iter().map(|(e, c)| (*e, c))
    }

    pub fn edge_set(&self) -> Vec<Edge> {
        self.costs.keys().copied().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.costs.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.costs.contains_key(&edge(u, v))
    }

    fn is_complete(&self) -> bool {
        self.costs.len() == self.n * (self.n - 1) / 2
    }

    /// First triple violating `c(u,w) <= c(u,v) + c(v,w)`, if any.
    pub fn triangle_violation(&self) -> Option<(VertexId, VertexId, VertexId)> {
        for u in 0..self.n {
            for w in (u + 1)..self.n {
                let Some(direct) = self.cost(u, w) else { continue };
                for v in 0..self.n {
                    if v == u || v == w {
                        continue;
                    }
                    if let (Some(a), Some(b)) = (self.cost(u, v), self.cost(v, w)) {
                        if *direct > a.clone() + b.clone() {
                            return Some((u, v, w));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.costs.keys() {
            adj[*u].push(*v);
            adj[*v].push(*u);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Complete instance whose costs are shortest-path distances of `self`.
    ///
    /// Declared edge costs never increase; a complete metric instance maps
    /// to itself unchanged.
    pub fn metric_completion(&self) -> Result<Instance> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        if self.is_complete_metric {
            return Ok(self.clone());
        }
        let dist = self.all_pairs_shortest_paths();
        let mut costs = BTreeMap::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let d = dist[u][v].clone().expect("connected instance has all distances");
                costs.insert((u, v), d);
            }
        }
        Instance::new(self.n, self.s, self.t, costs, true)
    }

    /// Floyd-Warshall over exact rationals. `None` marks unreachable pairs.
    pub fn all_pairs_shortest_paths(&self) -> Vec<Vec<Option<Rational>>> {
        let n = self.n;
        let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for v in 0..n {
            dist[v][v] = Some(Rational::zero());
        }
        for ((u, v), c) in &self.costs {
            let better = dist[*u][*v].as_ref().map_or(true, |cur| c < cur);
            if better {
                dist[*u][*v] = Some(c.clone());
                dist[*v][*u] = Some(c.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = dist[i][k].clone() else { continue };
                for j in 0..n {
                    let Some(dkj) = dist[k][j].clone() else { continue };
                    let via = dik.clone() + dkj;
                    if dist[i][j].as_ref().map_or(true, |cur| via < *cur) {
                        dist[i][j] = Some(via);
                    }
                }
            }
        }
        dist
    }

    /// Shortest-path predecessor table with lexicographic tie-breaking:
    /// `pred[u][v]` is the neighbor of `v` on the fixed shortest u-v path.
    pub fn shortest_path_edges(&self, u: VertexId, v: VertexId) -> Result<Vec<Edge>> {
        let dist = self.all_pairs_shortest_paths();
        let d_uv = dist[u][v].clone().ok_or(Error::NotConnected)?;
        // Walk back from v, always picking the lowest-id neighbor that lies
        // on some shortest path.
        let mut path = Vec::new();
        let mut cur = v;
        let mut remaining = d_uv;
        while cur != u {
            let mut next = None;
            for w in 0..self.n {
                if w == cur {
                    continue;
                }
                if let (Some(c), Some(dw)) = (self.cost(w, cur), dist[u][w].clone()) {
                    if dw.clone() + c.clone() == remaining {
                        next = Some((w, dw));
                        break; // lowest id wins
                    }
                }
            }
            let (w, dw) = next.ok_or_else(|| {
                Error::InternalConsistency("shortest path reconstruction failed".into())
            })?;
            path.push(edge(w, cur));
            cur = w;
            remaining = dw;
        }
        path.reverse();
        Ok(path)
    }
}

/// Sparse map from edges to rationals. Zero entries are never stored.
///
/// Doubles as an LP vector, an indicator vector, a fractional T-join, and an
/// integer-valued multigraph multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeVector {
    entries: BTreeMap<Edge, Rational>,
}

impl EdgeVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((VertexId, VertexId), Rational)>) -> Self {
        let mut v = Self::new();
        for ((a, b), r) in entries {
            v.add(a, b, r);
        }
        v
    }

    /// Indicator vector of an edge set.
    pub fn indicator<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Self {
        Self::from_entries(edges.into_iter().map(|e| (*e, Rational::one())))
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Rational {
        self.entries.get(&edge(u, v)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, u: VertexId, v: VertexId, val: Rational) {
        if val.is_zero() {
            self.entries.remove(&edge(u, v));
        } else {
            self.entries.insert(edge(u, v), val);
        }
    }

    /// Add `val` to the entry at `(u,v)`.
    pub fn add(&mut self, u: VertexId, v: VertexId, val: Rational) {
        let cur = self.get(u, v);
        self.set(u, v, cur + val);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &Rational)> {
        self.entries.iter().map(|(e, r)| (*e, r))
    }

    pub fn support(&self) -> Vec<Edge> {
        self.entries.keys().copied().collect()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|r| !r.is_negative())
    }

    /// Sum over all entries.
    pub fn total(&self) -> Rational {
        self.entries.values().cloned().sum()
    }

    /// Exact cost against an instance's table; `None` if some support edge
    /// is missing from the instance.
    pub fn cost(&self, inst: &Instance) -> Option<Rational> {
        let mut acc = Rational::zero();
        for ((u, v), x) in self.iter() {
            acc += inst.cost(u, v)? * x;
        }
        Some(acc)
    }

    /// `self + scale * other`, exactly.
    pub fn add_scaled(&mut self, other: &EdgeVector, scale: &Rational) {
        for ((u, v), r) in other.iter() {
            self.add(u, v, r * scale);
        }
    }

    pub fn scaled(&self, scale: &Rational) -> EdgeVector {
        let mut out = EdgeVector::new();
        out.add_scaled(self, scale);
        out
    }

    /// Exact sum over `delta(S)`.
    pub fn cut_value(&self, cut: &Cut) -> Rational {
        let mut acc = Rational::zero();
        for ((u, v), x) in self.iter() {
            if cut.contains(u) != cut.contains(v) {
                acc += x;
            }
        }
        acc
    }

    /// Exact sum over edges with both ends in `set`.
    pub fn induced_value(&self, set: &BTreeSet<VertexId>) -> Rational {
        let mut acc = Rational::zero();
        for ((u, v), x) in self.iter() {
            if set.contains(&u) && set.contains(&v) {
                acc += x;
            }
        }
        acc
    }

    /// Degree of `v` in the weighted sense: sum over incident edges.
    pub fn degree(&self, v: VertexId) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b), x) in self.iter() {
            if a == v || b == v {
                acc += x;
            }
        }
        acc
    }

    /// True when every entry is one of the given values (plus implicit 0).
    pub fn values_within(&self, allowed: &[Rational]) -> bool {
        self.entries.values().all(|r| allowed.contains(r))
    }
}

/// `x(delta(S))` as a free function, mirroring the paper's notation.
pub fn cut_value(x: &EdgeVector, cut: &Cut) -> Rational {
    x.cut_value(cut)
}

/// A nonempty proper vertex subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cut {
    members: BTreeSet<VertexId>,
    n: usize,
}

impl Cut {
    pub fn new(members: impl IntoIterator<Item = VertexId>, n: usize) -> Result<Self> {
        let members: BTreeSet<VertexId> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::InvalidInput("cut must be nonempty".into()));
        }
        if members.len() >= n {
            return Err(Error::InvalidInput("cut must be a proper subset".into()));
        }
        if members.iter().any(|&v| v >= n) {
            return Err(Error::InvalidInput("cut member out of range".into()));
        }
        Ok(Cut { members, n })
    }

    /// Cut from a bitmask over `0..n`.
    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        Cut::new((0..n).filter(|v| mask >> v & 1 == 1), n)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complement(&self) -> Cut {
        Cut::new((0..self.n).filter(|v| !self.contains(*v)), self.n)
            .expect("complement of a proper nonempty subset is proper nonempty")
    }

    /// Exactly one of s, t inside.
    pub fn is_st_cut(&self, s: VertexId, t: VertexId) -> bool {
        self.contains(s) != self.contains(t)
    }

    /// Zero or two of {s, t} inside.
    pub fn is_st_even(&self, s: VertexId, t: VertexId) -> bool {
        self.contains(s) == self.contains(t)
    }

    /// Odd intersection with `T`.
    pub fn is_t_odd(&self, t_set: &BTreeSet<VertexId>) -> bool {
        self.members.intersection(t_set).count() % 2 == 1
    }

    pub fn is_strict_subset_of(&self, other: &Cut) -> bool {
        self.members.len() < other.members.len() && self.members.is_subset(&other.members)
    }
}

impl std::fmt::Display for Cut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Disjoint nonempty classes covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<BTreeSet<VertexId>>,
    n: usize,
}

impl Partition {
    pub fn new(classes: Vec<BTreeSet<VertexId>>, n: usize) -> Result<Self> {
        if classes.is_empty() || classes.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidInput("partition classes must be nonempty".into()));
        }
        let mut seen = vec![false; n];
        for class in &classes {
            for &v in class {
                if v >= n {
                    return Err(Error::InvalidInput("partition member out of range".into()));
                }
                if seen[v] {
                    return Err(Error::InvalidInput("partition classes must be disjoint".into()));
                }
                seen[v] = true;
            }
        }
        if !seen.iter().all(|&b| b) {
            return Err(Error::InvalidInput("partition must cover all vertices".into()));
        }
        Ok(Partition { classes, n })
    }

    /// Partition from a class-id labelling of `0..n`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![BTreeSet::new(); k];
        for (v, &c) in labels.iter().enumerate() {
            classes[c].insert(v);
        }
        Partition::new(classes, n)
    }

    pub fn classes(&self) -> &[BTreeSet<VertexId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn class_of(&self, v: VertexId) -> usize {
        self.classes.iter().position(|c| c.contains(&v)).expect("covers all vertices")
    }

    /// `x(delta(W))`: sum over edges whose ends lie in different classes,
    /// each crossing edge counted once.
    pub fn cross_value(&self, x: &EdgeVector) -> Rational {
        let mut acc = Rational::zero();
        for ((u, v), val) in x.iter() {
            if self.class_of(u) != self.class_of(v) {
                acc += val;
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Text format.
//
// Instance files:
//     # comment
//     n 8 s 0 t 7 metric 0
//     0 1 1
//     0 3 2/3
//
// EdgeVector files use the same edge lines under the single-token header
// `vector`.
// ---------------------------------------------------------------------------

fn parse_edge_line(line: &str, lineno: usize) -> Result<(VertexId, VertexId, Rational)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected `u v value`, got `{line}`"),
        });
    }
    let u: usize = toks[0]
        .parse()
        .map_err(|_| Error::Parse { line: lineno, msg: format!("bad vertex `{}`", toks[0]) })?;
    let v: usize = toks[1]
        .parse()
        .map_err(|_| Error::Parse { line: lineno, msg: format!("bad vertex `{}`", toks[1]) })?;
    let val = parse_rational(toks[2]).map_err(|msg| Error::Parse { line: lineno, msg })?;
    if u == v {
        return Err(Error::Parse { line: lineno, msg: format!("loop edge ({u},{v})") });
    }
    Ok((u, v, val))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize, usize, bool)> = None;
    let mut edges: Vec<((usize, usize), Rational)> = Vec::new();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 8
                || toks[0] != "n"
                || toks[2] != "s"
                || toks[4] != "t"
                || toks[6] != "metric"
            {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected header `n <int> s <int> t <int> metric <0|1>`".into(),
                });
            }
            let n = toks[1].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad vertex count `{}`", toks[1]),
            })?;
            let s = toks[3].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad s `{}`", toks[3]),
            })?;
            let t = toks[5].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad t `{}`", toks[5]),
            })?;
            let metric = match toks[7] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("bad metric flag `{other}`"),
                    })
                }
            };
            if s == t {
                return Err(Error::Parse { line: lineno, msg: "s and t must be distinct".into() });
            }
            header = Some((n, s, t, metric));
            continue;
        }
        let (u, v, val) = parse_edge_line(line, lineno)?;
        if val.is_negative() {
            return Err(Error::Parse { line: lineno, msg: format!("negative cost on ({u},{v})") });
        }
        if !seen.insert(edge(u, v)) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("asymmetric duplicate edge ({u},{v})"),
            });
        }
        edges.push(((u, v), val));
    }
    let (n, s, t, metric) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    Instance::new(n, s, t, edges, metric)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let metric = if inst.is_complete_metric() { 1 } else { 0 };
    writeln!(out, "n {} s {} t {} metric {}", inst.n(), inst.s(), inst.t(), metric).unwrap();
    for ((u, v), c) in inst.edges() {
        writeln!(out, "{} {} {}", u, v, format_rational(c)).unwrap();
    }
    out
}

pub fn parse_edge_vector(text: &str) -> Result<EdgeVector> {
    let mut saw_header = false;
    let mut vec = EdgeVector::new();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "vector" {
                return Err(Error::Parse { line: lineno, msg: "expected header `vector`".into() });
            }
            saw_header = true;
            continue;
        }
        let (u, v, val) = parse_edge_line(line, lineno)?;
        if val.is_negative() {
            return Err(Error::Parse { line: lineno, msg: format!("negative value on ({u},{v})") });
        }
        if !seen.insert(edge(u, v)) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("asymmetric duplicate edge ({u},{v})"),
            });
        }
        vec.set(u, v, val);
    }
    if !saw_header {
        return Err(Error::Parse { line: 0, msg: "missing `vector` header".into() });
    }
    Ok(vec)
}

pub fn serialize_edge_vector(x: &EdgeVector) -> String {
    let mut out = String::from("vector\n");
    for ((u, v), val) in x.iter() {
        writeln!(out, "{} {} {}", u, v, format_rational(val)).unwrap();
    }
    out
}

/// Every support edge of `x` must exist in `inst`.
pub fn check_support(inst: &Instance, x: &EdgeVector) -> Result<()> {
    for ((u, v), _) in x.iter() {
        if !inst.has_edge(u, v) {
            return Err(Error::InvalidInput(format!(
                "vector supported on ({u},{v}) which is not an instance edge"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn unit_path(k: usize) -> Instance {
        Instance::new(
            k,
            0,
            k - 1,
            (0..k - 1).map(|i| ((i, i + 1), rat_int(1))),
            false,
        )
        .unwrap()
    }

    #[test]
    fn metric_completion_of_unit_path() {
        let inst = unit_path(3).metric_completion().unwrap();
        assert!(inst.is_complete_metric());
        assert_eq!(inst.cost(0, 2), Some(&rat_int(2)));
        assert_eq!(inst.cost(0, 1), Some(&rat_int(1)));
        assert_eq!(inst.cost(1, 2), Some(&rat_int(1)));
        assert!(inst.triangle_violation().is_none());
    }

    #[test]
    fn metric_completion_is_idempotent() {
        let complete = unit_path(4).metric_completion().unwrap();
        assert_eq!(complete.metric_completion().unwrap(), complete);
    }

    #[test]
    fn metric_completion_rejects_disconnected() {
        let inst = Instance::new(4, 0, 3, [((0, 1), rat_int(1))], false).unwrap();
        assert!(matches!(inst.metric_completion(), Err(Error::NotConnected)));
    }

    #[test]
    fn instance_round_trip_is_exact() {
        let inst = Instance::new(
            4,
            0,
            3,
            [
                ((0, 1), rat(2, 3)),
                ((1, 2), rat(4, 6)), // normalizes to 2/3
                ((2, 3), rat_int(5)),
            ],
            false,
        )
        .unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.cost(1, 2), Some(&rat(2, 3)));
    }

    #[test]
    fn parse_errors_are_distinct() {
        let bad_rational = "n 3 s 0 t 2 metric 0\n0 1 x/y\n";
        let dup = "n 3 s 0 t 2 metric 0\n0 1 1\n1 0 2\n";
        let st = "n 3 s 1 t 1 metric 0\n0 1 1\n";
        assert!(matches!(parse_instance(bad_rational), Err(Error::Parse { line: 2, .. })));
        match parse_instance(dup) {
            Err(Error::Parse { line: 3, msg }) => assert!(msg.contains("duplicate")),
            other => panic!("expected duplicate error, got {other:?}"),
        }
        match parse_instance(st) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("distinct")),
            other => panic!("expected s=t error, got {other:?}"),
        }
    }

    #[test]
    fn vector_round_trip() {
        let x = EdgeVector::from_entries([((0, 1), rat(2, 3)), ((1, 2), rat_int(1))]);
        let text = serialize_edge_vector(&x);
        assert_eq!(parse_edge_vector(&text).unwrap(), x);
    }

    #[test]
    fn cut_value_is_complement_symmetric() {
        let x = EdgeVector::from_entries([
            ((0, 1), rat(1, 2)),
            ((1, 2), rat(1, 3)),
            ((0, 3), rat_int(2)),
        ]);
        let s = Cut::new([0, 1], 4).unwrap();
        assert_eq!(x.cut_value(&s), x.cut_value(&s.complement()));
        assert_eq!(x.cut_value(&s), rat(1, 3) + rat_int(2));
    }

    #[test]
    fn cut_classifications() {
        let s = Cut::new([0, 2], 4).unwrap();
        assert!(s.is_st_even(0, 2));
        assert!(s.is_st_cut(0, 3));
        let t_set: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert!(s.is_t_odd(&t_set));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_labels(&[0, 0, 1, 2]).is_ok());
        let classes = vec![[0usize, 1].into_iter().collect(), [1usize, 2].into_iter().collect()];
        assert!(Partition::new(classes, 3).is_err());
    }

    proptest! {
        // Handshake identity: sum of weighted degrees is twice the total.
        #[test]
        fn handshake(edges in proptest::collection::btree_map(
            (0usize..6, 0usize..6).prop_filter_map("no loops", |(a, b)| {
                if a == b { None } else { Some((a.min(b), a.max(b))) }
            }),
            (1i64..20, 1i64..10),
            0..10,
        )) {
            let x = EdgeVector::from_entries(
                edges.into_iter().map(|(e, (n, d))| (e, rat(n, d))),
            );
            let degree_sum: Rational = (0..6).map(|v| x.degree(v)).sum();
            prop_assert_eq!(degree_sum, x.total() * rat_int(2));
        }

        // delta(S) = delta(V\S) for arbitrary cuts of arbitrary vectors.
        #[test]
        fn cut_complement(mask in 1u64..15, edges in proptest::collection::btree_map(
            (0usize..4, 0usize..4).prop_filter_map("no loops", |(a, b)| {
                if a == b { None } else { Some((a.min(b), a.max(b))) }
            }),
            1i64..20,
            0..8,
        )) {
            let x = EdgeVector::from_entries(
                edges.into_iter().map(|(e, n)| (e, rat_int(n))),
            );
            let cut = Cut::from_mask(mask, 4).unwrap();
            prop_assert_eq!(x.cut_value(&cut), x.cut_value(&cut.complement()));
        }
    }
}
