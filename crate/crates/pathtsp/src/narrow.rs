//! Narrow cuts and the unified correction vector.
//!
//! For a relaxation optimum x*, the s-side s-t cuts of value below `1 + tau`
//! form a nested chain. Assigning weight one to the cheapest edge across
//! each such cut corrects the parity of a sampled spanning tree: the
//! resulting fractional vector `alpha X^J + beta x* + corrections` is
//! feasible for the T-join polyhedron whenever `alpha + 2 beta = 1` and
//! `tau = (1 - 2 alpha)/beta - 1`. Everything here is certified per
//! instance in exact arithmetic; the two closed-form analysis layers (the
//! golden-ratio-style and the 8/5-style bounds) are reported exactly where
//! the parameters are rational and as floats where they are not.

use crate::christofides::{min_tjoin, minimum_spanning_tree, wrong_degree_set};
use crate::decomp::{ConvexDecomposition, Dsu, SpanningTree};
use crate::instance::{edge, Cut, Edge, EdgeVector, Instance, VertexId};
use crate::lp::{check_tjoin_polyhedron, PolyhedronCheck, ENUM_VERTEX_LIMIT};
use crate::rational::{rat, rat_int, rational_sqrt, to_f64, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// The nested chain of narrow cuts containing s, the derived partition, and
/// the minimum-cost crossing edge of each cut.
#[derive(Debug, Clone)]
pub struct NarrowCutChain {
    tau: Rational,
    cuts: Vec<Cut>,
    values: Vec<Rational>,
    parts: Vec<BTreeSet<VertexId>>,
    min_edges: Vec<Edge>,
    min_edge_costs: Vec<Rational>,
}

impl NarrowCutChain {
    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn parts(&self) -> &[BTreeSet<VertexId>] {
        &self.parts
    }

    pub fn min_edges(&self) -> &[Edge] {
        &self.min_edges
    }

    pub fn min_edge_costs(&self) -> &[Rational] {
        &self.min_edge_costs
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Index of the derived part containing `v`.
    pub fn part_of(&self, v: VertexId) -> usize {
        self.parts.iter().position(|p| p.contains(&v)).expect("parts partition V")
    }

    /// Exact sum of the minimum crossing-edge costs.
    pub fn sum_min_edge_costs(&self) -> Rational {
        self.min_edge_costs.iter().cloned().sum()
    }
}

/// Extract the chain of tau-narrow cuts containing s, by exhausting all
/// s-side s-t cuts. The nesting property is asserted, not assumed: a pair
/// of incomparable narrow cuts is reported as an internal-consistency error
/// carrying both cuts, since it would falsify the chain lemma.
pub fn narrow_cuts(inst: &Instance, x: &EdgeVector, tau: &Rational) -> Result<NarrowCutChain> {
    let n = inst.n();
    if n > ENUM_VERTEX_LIMIT {
        return Err(Error::InvalidInput(format!(
            "narrow-cut enumeration capped at {ENUM_VERTEX_LIMIT} vertices"
        )));
    }
    if !tau.is_positive() || tau > &Rational::one() {
        return Err(Error::InvalidInput("tau must lie in (0, 1]".into()));
    }
    let (s, t) = (inst.s(), inst.t());
    let threshold = Rational::one() + tau;
    let others: Vec<VertexId> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut narrow: Vec<(Cut, Rational)> = Vec::new();
    for mask in 0u64..(1 << others.len()) {
        let members: Vec<VertexId> = std::iter::once(s)
            .chain(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v))
            .collect();
        let cut = Cut::new(members, n).expect("contains s, excludes t");
        let value = x.cut_value(&cut);
        if value < threshold {
            narrow.push((cut, value));
        }
    }
    narrow.sort_by_key(|(cut, _)| cut.len());
    for w in narrow.windows(2) {
        if !w[0].0.is_strict_subset_of(&w[1].0) {
            return Err(Error::InternalConsistency(format!(
                "narrow cuts {} and {} are incomparable; the chain lemma would be falsified",
                w[0].0, w[1].0
            )));
        }
    }

    let mut parts = Vec::with_capacity(narrow.len() + 1);
    let mut previous: BTreeSet<VertexId> = BTreeSet::new();
    for (cut, _) in &narrow {
        let part: BTreeSet<VertexId> = cut.members().difference(&previous).copied().collect();
        debug_assert!(!part.is_empty());
        parts.push(part);
        previous = cut.members().clone();
    }
    let last: BTreeSet<VertexId> = (0..n).filter(|v| !previous.contains(v)).collect();
    debug_assert!(!last.is_empty());
    parts.push(last);

    let mut min_edges = Vec::with_capacity(narrow.len());
    let mut min_edge_costs = Vec::with_capacity(narrow.len());
    for (cut, _) in &narrow {
        let mut best: Option<(Rational, Edge)> = None;
        for ((u, v), c) in inst.edges() {
            if cut.contains(u) != cut.contains(v) && best.as_ref().map_or(true, |(bc, _)| c < bc) {
                best = Some((c.clone(), (u, v)));
            }
        }
        let (c, e) = best.ok_or_else(|| {
            Error::InvalidInput(format!("no instance edge crosses narrow cut {cut}"))
        })?;
        min_edges.push(e);
        min_edge_costs.push(c);
    }

    let (cuts, values): (Vec<Cut>, Vec<Rational>) = narrow.into_iter().unzip();
    Ok(NarrowCutChain { tau: tau.clone(), cuts, values, parts, min_edges, min_edge_costs })
}

/// The parameter triple of the unified correction analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnifiedParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub tau: Rational,
}

impl UnifiedParams {
    /// Validate the defining identities: `alpha + 2 beta = 1`,
    /// `tau = (1 - 2 alpha)/beta - 1`, `alpha >= 0`, `beta > 0`,
    /// `0 < tau <= 1`.
    pub fn new(alpha: Rational, beta: Rational, tau: Rational) -> Result<Self> {
        if alpha.clone() + rat_int(2) * beta.clone() != Rational::one() {
            return Err(Error::InvalidInput("alpha + 2 beta must equal 1".into()));
        }
        if !beta.is_positive() {
            return Err(Error::InvalidInput("beta must be positive".into()));
        }
        if alpha.is_negative() {
            return Err(Error::InvalidInput("alpha must be nonnegative".into()));
        }
        let derived = (Rational::one() - rat_int(2) * alpha.clone()) / beta.clone() - Rational::one();
        if derived != tau {
            return Err(Error::InvalidInput("tau must equal (1 - 2 alpha)/beta - 1".into()));
        }
        if !tau.is_positive() || tau > Rational::one() {
            return Err(Error::InvalidInput("tau must lie in (0, 1]".into()));
        }
        Ok(UnifiedParams { alpha, beta, tau })
    }

    /// Derive the full triple from beta alone; valid for beta in (1/3, 1/2].
    pub fn from_beta(beta: Rational) -> Result<Self> {
        if !beta.is_positive() {
            return Err(Error::InvalidInput("beta must be positive".into()));
        }
        let alpha = Rational::one() - rat_int(2) * beta.clone();
        let tau = rat_int(3) - beta.clone().recip();
        UnifiedParams::new(alpha, beta, tau)
    }
}

/// The spec'd parameter constructor: beta restricted to `[2/5, 1/2)`.
pub fn make_params(beta: Rational) -> Result<UnifiedParams> {
    if beta < rat(2, 5) || beta >= rat(1, 2) {
        return Err(Error::InvalidInput("beta must lie in [2/5, 1/2)".into()));
    }
    UnifiedParams::from_beta(beta)
}

/// The unified fractional T-join for one sampled tree:
/// `f = alpha X^J + beta x + sum over T-odd narrow cuts Q of
/// (1 - 2 alpha - beta x(delta(Q))) X^{e_Q}`.
#[derive(Debug, Clone)]
pub struct UnifiedFractionalTJoin {
    pub params: UnifiedParams,
    pub tree: SpanningTree,
    pub t_set: BTreeSet<VertexId>,
    pub f: EdgeVector,
    /// The corrected cuts with their coefficients, for reporting.
    pub corrections: Vec<(Cut, Rational)>,
}

pub fn build_unified_fractional_tjoin(
    inst: &Instance,
    x: &EdgeVector,
    tree: &SpanningTree,
    params: &UnifiedParams,
) -> Result<UnifiedFractionalTJoin> {
    let chain = narrow_cuts(inst, x, &params.tau)?;
    build_with_chain(inst, x, tree, params, &chain)
}

fn build_with_chain(
    inst: &Instance,
    x: &EdgeVector,
    tree: &SpanningTree,
    params: &UnifiedParams,
    chain: &NarrowCutChain,
) -> Result<UnifiedFractionalTJoin> {
    let t_set = wrong_degree_set(tree, inst.s(), inst.t());
    let mut f = tree.indicator().scaled(&params.alpha);
    f.add_scaled(x, &params.beta);
    let mut corrections = Vec::new();
    for (i, cut) in chain.cuts().iter().enumerate() {
        if !cut.is_t_odd(&t_set) {
            continue;
        }
        let coef = Rational::one()
            - rat_int(2) * params.alpha.clone()
            - params.beta.clone() * chain.values()[i].clone();
        if coef.is_negative() {
            return Err(Error::InternalConsistency(
                "negative correction coefficient on a narrow cut".into(),
            ));
        }
        let (u, v) = chain.min_edges()[i];
        f.add(u, v, coef.clone());
        corrections.push((cut.clone(), coef));
    }
    Ok(UnifiedFractionalTJoin {
        params: params.clone(),
        tree: tree.clone(),
        t_set,
        f,
        corrections,
    })
}

/// Feasibility of the unified fractional T-join for the T-join polyhedron,
/// by exhaustive T-odd cut enumeration. An empty T passes trivially (the
/// minimum T-join is the empty set by convention).
pub fn check_unified_feasibility(
    inst: &Instance,
    utj: &UnifiedFractionalTJoin,
) -> Result<PolyhedronCheck> {
    if utj.t_set.is_empty() {
        return Ok(PolyhedronCheck { pass: true, witness: None });
    }
    check_tjoin_polyhedron(inst, &utj.t_set, &utj.f)
}

/// The constructive bijection from the chain cuts to the edges of a
/// spanning tree `K` over the contracted parts: each cut is mapped to a
/// K-edge crossing it. Follows the recursive proof: split off the last
/// part, pick the path edge incident to it, contract, recurse.
///
/// `K` is a tree on `chain.parts().len()` vertices (part indices); the
/// returned vector maps cut index `i` to an edge of `K`.
pub fn bijection_cuts_to_edges(k_tree: &SpanningTree, chain: &NarrowCutChain) -> Result<Vec<Edge>> {
    let parts = chain.parts().len();
    if k_tree.n() != parts {
        return Err(Error::InvalidInput(format!(
            "contracted tree has {} vertices but the chain derives {} parts",
            k_tree.n(),
            parts
        )));
    }
    let mut edges: Vec<Edge> = k_tree.edges().copied().collect();
    let mut assignment: Vec<Option<Edge>> = vec![None; chain.len()];
    // in_block[p] marks parts merged into the trailing block.
    let mut in_block = vec![false; parts];
    if parts > 0 {
        in_block[parts - 1] = true;
    }

    for j in (1..parts).rev() {
        // Current nodes: singleton parts 0..j and the block {j..}.
        let node_of = |p: usize| if in_block[p] { usize::MAX } else { p };
        // BFS from part j-1 to the block over the remaining edges.
        let mut adj: BTreeMap<usize, Vec<(usize, Edge)>> = BTreeMap::new();
        for &(a, b) in &edges {
            let (na, nb) = (node_of(a), node_of(b));
            if na == nb {
                return Err(Error::InternalConsistency(
                    "contracted tree degenerated into a loop".into(),
                ));
            }
            adj.entry(na).or_default().push((nb, (a, b)));
            adj.entry(nb).or_default().push((na, (a, b)));
        }
        let start = j - 1;
        let mut pred: BTreeMap<usize, (usize, Edge)> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([start]);
        let mut seen: BTreeSet<usize> = [start].into_iter().collect();
        while let Some(u) = queue.pop_front() {
            if u == usize::MAX {
                break;
            }
            for &(w, e) in adj.get(&u).into_iter().flatten() {
                if seen.insert(w) {
                    pred.insert(w, (u, e));
                    queue.push_back(w);
                }
            }
        }
        let (_, chosen) = pred
            .get(&usize::MAX)
            .ok_or_else(|| Error::InternalConsistency("contracted tree is disconnected".into()))?;
        let chosen = *chosen;

        // The chosen edge must cross the cut separating parts 0..j from the
        // rest.
        let (lo, hi) = (chosen.0.min(chosen.1), chosen.0.max(chosen.1));
        if !(lo < j && j <= hi) {
            return Err(Error::InternalConsistency(format!(
                "assigned edge ({lo},{hi}) does not cross cut {j}"
            )));
        }
        assignment[j - 1] = Some(chosen);
        edges.retain(|e| *e != chosen);
        in_block[j - 1] = true;
    }

    let map: Vec<Edge> = assignment.into_iter().map(|e| e.expect("every cut assigned")).collect();
    let distinct: BTreeSet<Edge> = map.iter().copied().collect();
    if distinct.len() != map.len() || map.len() != k_tree.edge_set().len() {
        return Err(Error::InternalConsistency("cut-to-edge map is not a bijection".into()));
    }
    Ok(map)
}

/// Exact two-sided report for one of the chain inequalities.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

/// `sum of c(e_Q) <= c(x)`, certified constructively: contract the derived
/// parts of a minimum spanning tree, map cuts to tree edges by the
/// bijection, and compare the three exact links
/// `sum c(e_Q) <= sum c(assigned) <= c(MST) <= c(x)`.
pub fn check_ineq_sum_eq_le_cx(
    inst: &Instance,
    x: &EdgeVector,
    chain: &NarrowCutChain,
) -> Result<InequalityReport> {
    let lhs = chain.sum_min_edge_costs();
    let rhs = x.cost(inst).ok_or_else(|| {
        Error::InvalidInput("vector supported outside the instance".into())
    })?;

    let mst = minimum_spanning_tree(inst)?;
    let mst_cost = mst.cost(inst)?;
    let parts = chain.parts().len();

    // Contract the parts of the MST and keep one payload instance edge per
    // contracted tree edge.
    let mut dsu = Dsu::new(parts);
    let mut payload: BTreeMap<Edge, Edge> = BTreeMap::new();
    let mut k_edges: Vec<Edge> = Vec::new();
    for (u, v) in mst.edges() {
        let (pu, pv) = (chain.part_of(*u), chain.part_of(*v));
        if pu != pv && dsu.union(pu, pv) {
            let pe = edge(pu, pv);
            payload.insert(pe, (*u, *v));
            k_edges.push(pe);
        }
    }
    if parts > 0 && k_edges.len() != parts - 1 {
        return Err(Error::InternalConsistency("contracted MST does not span the parts".into()));
    }
    let k_tree = SpanningTree::new(parts, k_edges)?;
    let map = bijection_cuts_to_edges(&k_tree, chain)?;

    let mut assigned_total = Rational::zero();
    for (i, part_edge) in map.iter().enumerate() {
        let (u, v) = payload[part_edge];
        let cut = &chain.cuts()[i];
        if cut.contains(u) == cut.contains(v) {
            return Err(Error::InternalConsistency(format!(
                "payload edge ({u},{v}) does not cross narrow cut {cut}"
            )));
        }
        let c = inst.cost(u, v).expect("MST edge exists").clone();
        if chain.min_edge_costs()[i] > c {
            return Err(Error::InternalConsistency(
                "minimum crossing edge costs more than a crossing edge".into(),
            ));
        }
        assigned_total += c;
    }
    if assigned_total > mst_cost {
        return Err(Error::InternalConsistency("assigned edges exceed the MST cost".into()));
    }
    if mst_cost > rhs {
        return Err(Error::InternalConsistency(
            "minimum spanning tree costs more than the polytope point".into(),
        ));
    }
    Ok(InequalityReport { pass: lhs <= rhs, lhs, rhs })
}

/// `sum of (2 - x(delta(Q))) c(e_Q) <= E(c(P))` where P is the s-t path of
/// the sampled tree; both sides exact.
pub fn check_ineq_expected_path(
    inst: &Instance,
    _x: &EdgeVector,
    dec: &ConvexDecomposition,
    chain: &NarrowCutChain,
) -> Result<InequalityReport> {
    let mut lhs = Rational::zero();
    for (i, value) in chain.values().iter().enumerate() {
        lhs += (rat_int(2) - value.clone()) * chain.min_edge_costs()[i].clone();
    }
    let (s, t) = (inst.s(), inst.t());
    let rhs = dec.expectation(|tree| {
        tree.path_edges(s, t)
            .iter()
            .map(|(u, v)| inst.cost(*u, *v).expect("complete instance").clone())
            .sum()
    });
    Ok(InequalityReport { pass: lhs <= rhs, lhs, rhs })
}

/// Per-cut statistics of a certificate run.
#[derive(Debug, Clone)]
pub struct NarrowCutStat {
    pub cut: Cut,
    pub value: Rational,
    pub min_edge: Edge,
    pub min_edge_cost: Rational,
    /// Exact `Pr(|delta(Q) cap J| = 1)` under the decomposition.
    pub pr_single_crossing: Rational,
    /// Its certified lower bound `2 - x(delta(Q))`.
    pub single_crossing_bound: Rational,
    /// Exact `Pr(Q is T-odd)` under the decomposition.
    pub pr_t_odd: Rational,
    /// Its certified upper bound `x(delta(Q)) - 1`.
    pub t_odd_bound: Rational,
}

/// The full exact certificate for one parameter setting.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub params: UnifiedParams,
    pub lp_cost: Rational,
    /// `E(c(J))`; equals `lp_cost` exactly (asserted).
    pub expected_tree_cost: Rational,
    pub expected_path_cost: Rational,
    /// `E(c(J \ P)) = c(x) - E(c(P))`, the structural T-join bound.
    pub expected_residue_cost: Rational,
    /// Exact `E(c(F))` over the decomposition.
    pub expected_tjoin_cost: Rational,
    /// Exact `E(c(f))` of the unified fractional T-join.
    pub expected_unified_cost: Rational,
    pub sum_min_cut_edges: Rational,
    pub weighted_sum_min_cut_edges: Rational,
    /// `(alpha + beta + beta (tau/2)^2) c(x)`, always rational.
    pub aks_bound: Rational,
    /// `h(beta) = beta (1 - sqrt(1 - tau))^2` when rational.
    pub sebo_h: Option<Rational>,
    pub sebo_h_float: f64,
    /// `(1 - beta) c(x) + h(beta) E(c(P))` when h is rational.
    pub sebo_bound: Option<Rational>,
    pub sebo_bound_float: f64,
    /// The best exact bound on `E(c(F))` this certificate establishes.
    pub combined_tjoin_bound: Rational,
    /// `c(x) +` the combined bound: caps the expected output cost.
    pub certified_total_bound: Rational,
    pub certified_ratio: Rational,
    pub ratio_le_8_5: bool,
    pub trees_checked: usize,
    pub all_trees_feasible: bool,
    pub per_cut: Vec<NarrowCutStat>,
}

/// Assemble the full exact certificate for a decomposition at one
/// parameter setting: per-tree unified T-joins and their feasibility, the
/// probability bounds per narrow cut, both chain inequalities, and the two
/// analysis-layer bounds. Every exact inequality along the derivation is
/// asserted; a failure is an internal-consistency error because it would
/// falsify the underlying lemmas.
pub fn certificate_report(
    inst: &Instance,
    x: &EdgeVector,
    dec: &ConvexDecomposition,
    params: &UnifiedParams,
) -> Result<CertificateReport> {
    let lp_cost = x
        .cost(inst)
        .ok_or_else(|| Error::InvalidInput("vector supported outside the instance".into()))?;
    let chain = narrow_cuts(inst, x, &params.tau)?;
    let (s, t) = (inst.s(), inst.t());

    let expected_tree_cost = dec.expectation(|tree| tree.cost(inst).expect("support edges exist"));
    if expected_tree_cost != lp_cost {
        return Err(Error::InternalConsistency(
            "expected tree cost does not reproduce the vector cost".into(),
        ));
    }
    let expected_path_cost = dec.expectation(|tree| {
        tree.path_edges(s, t)
            .iter()
            .map(|(u, v)| inst.cost(*u, *v).expect("complete instance").clone())
            .sum()
    });
    let expected_residue_cost = lp_cost.clone() - expected_path_cost.clone();

    // Per-tree: minimum T-joins, unified T-joins, exhaustive feasibility.
    let mut expected_tjoin_cost = Rational::zero();
    let mut expected_unified_cost = Rational::zero();
    let mut all_trees_feasible = true;
    for (lambda, tree) in dec.terms() {
        let utj = build_with_chain(inst, x, tree, params, &chain)?;
        let f_cost = utj.f.cost(inst).expect("correction edges exist in the instance");
        let t_set = utj.t_set.clone();
        let join = min_tjoin(inst, &t_set)?;
        if join.cost > f_cost {
            return Err(Error::InternalConsistency(
                "minimum T-join exceeded the unified fractional T-join cost".into(),
            ));
        }
        if !check_unified_feasibility(inst, &utj)?.pass {
            all_trees_feasible = false;
        }
        expected_tjoin_cost += lambda * join.cost;
        expected_unified_cost += lambda * f_cost;
    }

    // Probability bounds per narrow cut, exact.
    let mut per_cut = Vec::with_capacity(chain.len());
    for (i, cut) in chain.cuts().iter().enumerate() {
        let value = chain.values()[i].clone();
        let pr_single = dec.probability(|tree| {
            tree.edges().filter(|(u, v)| cut.contains(*u) != cut.contains(*v)).count() == 1
        });
        let pr_t_odd =
            dec.probability(|tree| cut.is_t_odd(&wrong_degree_set(tree, s, t)));
        let single_bound = rat_int(2) - value.clone();
        let odd_bound = value.clone() - Rational::one();
        if pr_single < single_bound {
            return Err(Error::InternalConsistency(format!(
                "single-crossing probability bound fails on {cut}"
            )));
        }
        if pr_t_odd > odd_bound {
            return Err(Error::InternalConsistency(format!(
                "T-odd probability bound fails on {cut}"
            )));
        }
        per_cut.push(NarrowCutStat {
            cut: cut.clone(),
            value,
            min_edge: chain.min_edges()[i],
            min_edge_cost: chain.min_edge_costs()[i].clone(),
            pr_single_crossing: pr_single,
            single_crossing_bound: single_bound,
            pr_t_odd,
            t_odd_bound: odd_bound,
        });
    }

    // Chain inequalities with their constructive certificates.
    let ineq_sum = check_ineq_sum_eq_le_cx(inst, x, &chain)?;
    if !ineq_sum.pass {
        return Err(Error::InternalConsistency("sum of cut-edge costs exceeded c(x)".into()));
    }
    let ineq_path = check_ineq_expected_path(inst, x, dec, &chain)?;
    if !ineq_path.pass {
        return Err(Error::InternalConsistency(
            "weighted cut-edge sum exceeded the expected path cost".into(),
        ));
    }

    // Analysis layer, exact where the parameters are rational.
    let (alpha, beta, tau) = (&params.alpha, &params.beta, &params.tau);
    let half_tau_sq = (tau.clone() / rat_int(2)).pow(2);
    // Per cut: z (tau - z) <= (tau/2)^2 with z = value - 1.
    for stat in &per_cut {
        let z = stat.value.clone() - Rational::one();
        if z.clone() * (tau.clone() - z.clone()) > half_tau_sq {
            return Err(Error::InternalConsistency(
                "quadratic maximizer bound fails on a narrow cut".into(),
            ));
        }
    }
    let aks_bound =
        (alpha.clone() + beta.clone() + beta.clone() * half_tau_sq.clone()) * lp_cost.clone();
    if expected_unified_cost > aks_bound {
        return Err(Error::InternalConsistency(
            "unified T-join expectation exceeded the quadratic-layer bound".into(),
        ));
    }

    // h(beta) = beta (1 - w)^2 with w = sqrt(1 - tau); rational iff 1 - tau
    // is a perfect rational square.
    let one_minus_tau = Rational::one() - tau.clone();
    let w = rational_sqrt(&one_minus_tau);
    let (sebo_h, sebo_bound) = match w {
        Some(w) => {
            let max_ratio = (Rational::one() - w).pow(2);
            for stat in &per_cut {
                let z = stat.value.clone() - Rational::one();
                // z (tau - z) <= (1 - w)^2 (1 - z), exactly.
                if z.clone() * (tau.clone() - z.clone())
                    > max_ratio.clone() * (Rational::one() - z)
                {
                    return Err(Error::InternalConsistency(
                        "rational-square maximizer bound fails on a narrow cut".into(),
                    ));
                }
            }
            let h = beta.clone() * max_ratio;
            let bound = (Rational::one() - beta.clone()) * lp_cost.clone()
                + h.clone() * expected_path_cost.clone();
            if expected_unified_cost > bound {
                return Err(Error::InternalConsistency(
                    "unified T-join expectation exceeded the path-layer bound".into(),
                ));
            }
            (Some(h), Some(bound))
        }
        None => (None, None),
    };
    let tau_f = to_f64(tau);
    let sebo_h_float = to_f64(beta) * (1.0 - (1.0 - tau_f).sqrt()).powi(2);
    let sebo_bound_float = (1.0 - to_f64(beta)) * to_f64(&lp_cost)
        + sebo_h_float * to_f64(&expected_path_cost);

    if expected_tjoin_cost > expected_unified_cost {
        return Err(Error::InternalConsistency(
            "expected minimum T-join exceeded the unified expectation".into(),
        ));
    }
    if expected_tjoin_cost > expected_residue_cost {
        return Err(Error::InternalConsistency(
            "expected minimum T-join exceeded the expected tree residue".into(),
        ));
    }

    let mut combined_tjoin_bound = expected_residue_cost.clone();
    if let Some(b) = &sebo_bound {
        if b < &combined_tjoin_bound {
            combined_tjoin_bound = b.clone();
        }
    }
    let certified_total_bound = lp_cost.clone() + combined_tjoin_bound.clone();
    let certified_ratio = if lp_cost.is_zero() {
        Rational::one()
    } else {
        certified_total_bound.clone() / lp_cost.clone()
    };
    let ratio_le_8_5 = certified_ratio <= rat(8, 5);

    Ok(CertificateReport {
        params: params.clone(),
        lp_cost,
        expected_tree_cost,
        expected_path_cost,
        expected_residue_cost,
        expected_tjoin_cost,
        expected_unified_cost,
        sum_min_cut_edges: ineq_sum.lhs,
        weighted_sum_min_cut_edges: ineq_path.lhs,
        aks_bound,
        sebo_h,
        sebo_h_float,
        sebo_bound,
        sebo_bound_float,
        combined_tjoin_bound,
        certified_total_bound,
        certified_ratio,
        ratio_le_8_5,
        trees_checked: dec.len(),
        all_trees_feasible,
        per_cut,
    })
}

// ---------------------------------------------------------------------------
// Analytic layer: the closed-form optimal settings are irrational, so this
// side lives in floats and is kept strictly out of the exact certificates.
// ---------------------------------------------------------------------------

/// Maximizer of `z (tau - z)` over `[0, tau)`.
pub fn quadratic_maximizer(tau: f64) -> f64 {
    tau / 2.0
}

/// Maximizer of `z (tau - z) / (1 - z)` over `[0, tau)`.
pub fn path_layer_maximizer(tau: f64) -> f64 {
    1.0 - (1.0 - tau).sqrt()
}

/// Approximation factor of the golden-ratio analysis at its optimal
/// (irrational) parameter setting.
pub fn golden_ratio_factor() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Approximation factor of the path-layer analysis at beta = 4/9.
pub fn eight_fifths_factor() -> f64 {
    1.6
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
    fn params_examples() {
        let p = make_params(rat(4, 9)).unwrap();
        assert_eq!(p.alpha, rat(1, 9));
        assert_eq!(p.tau, rat(3, 4));
        let p = make_params(rat(2, 5)).unwrap();
        assert_eq!(p.alpha, rat(1, 5));
        assert_eq!(p.tau, rat(1, 2));
        let p = make_params(rat(9, 20)).unwrap();
        assert_eq!(p.alpha, rat(1, 10));
        assert_eq!(p.tau, rat(7, 9));
        assert!(make_params(rat(1, 3)).is_err());
        assert!(make_params(rat(1, 2)).is_err());
        // The boundary setting is a valid parameter triple even though the
        // spec'd constructor range excludes it.
        let boundary = UnifiedParams::new(rat_int(0), rat(1, 2), rat_int(1)).unwrap();
        assert_eq!(boundary, UnifiedParams::from_beta(rat(1, 2)).unwrap());
    }

    #[test]
    fn path_indicator_has_all_prefix_cuts_narrow() {
        let inst = unit_path_completion(5);
        let tree = SpanningTree::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let x = tree.indicator();
        let chain = narrow_cuts(&inst, &x, &Rational::one()).unwrap();
        assert_eq!(chain.len(), 4);
        for value in chain.values() {
            assert_eq!(value, &rat_int(1));
        }
        assert_eq!(chain.parts().len(), 5);
        // Each prefix cut's cheapest crossing edge is the path edge.
        assert_eq!(chain.sum_min_edge_costs(), rat_int(4));
    }

    #[test]
    fn chain_respects_tau() {
        // On the 4-cycle completion optimum the even chain shrinks with tau.
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let chain = narrow_cuts(&inst, &x, &rat(1, 2)).unwrap();
        assert_eq!(chain.len(), 3); // path cuts all have value exactly 1
        assert!(narrow_cuts(&inst, &x, &rat_int(2)).is_err());
        assert!(narrow_cuts(&inst, &x, &rat_int(0)).is_err());
    }

    #[test]
    fn unified_coefficients_match_the_display() {
        // A correction on a cut of value 1 at beta = 4/9 carries 1/3.
        let params = make_params(rat(4, 9)).unwrap();
        let coef = Rational::one()
            - rat_int(2) * params.alpha.clone()
            - params.beta.clone() * rat_int(1);
        assert_eq!(coef, rat(1, 3));
    }

    #[test]
    fn unified_tjoin_without_odd_cuts_is_the_blend() {
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let params = make_params(rat(4, 9)).unwrap();
        // The path tree has no wrong-degree vertices, so no corrections.
        let utj = build_unified_fractional_tjoin(&inst, &x, &tree, &params).unwrap();
        assert!(utj.t_set.is_empty());
        assert!(utj.corrections.is_empty());
        let mut expect = tree.indicator().scaled(&params.alpha);
        expect.add_scaled(&x, &params.beta);
        assert_eq!(utj.f, expect);
        assert!(check_unified_feasibility(&inst, &utj).unwrap().pass);
    }

    #[test]
    fn deleted_correction_breaks_feasibility() {
        // Hand-build the blend without corrections for a tree with an even
        // s-degree; the s-singleton (a T-odd narrow cut of value 1) dips
        // below 1.
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let params = make_params(rat(4, 9)).unwrap();
        let t_set = wrong_degree_set(&tree, 0, 3);
        assert!(t_set.contains(&0));
        let mut f = tree.indicator().scaled(&params.alpha);
        f.add_scaled(&x, &params.beta);
        let check = check_tjoin_polyhedron(&inst, &t_set, &f).unwrap();
        assert!(!check.pass);
        let witness = check.witness.unwrap();
        assert!(witness.is_t_odd(&t_set));
    }

    #[test]
    fn bijection_on_a_path_tree_maps_consecutive_parts() {
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let chain = narrow_cuts(&inst, &x, &Rational::one()).unwrap();
        // Parts are singletons; the contracted tree is the path itself.
        let k_tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let map = bijection_cuts_to_edges(&k_tree, &chain).unwrap();
        assert_eq!(map, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn bijection_on_a_star_tree_crosses_every_cut() {
        let inst = unit_path_completion(5);
        let tree = SpanningTree::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let x = tree.indicator();
        let chain = narrow_cuts(&inst, &x, &Rational::one()).unwrap();
        // Star centered at the last part.
        let k_tree = SpanningTree::new(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        let map = bijection_cuts_to_edges(&k_tree, &chain).unwrap();
        let distinct: BTreeSet<Edge> = map.iter().copied().collect();
        assert_eq!(distinct.len(), 4);
        for (i, (lo, hi)) in map.iter().enumerate() {
            assert!(*lo <= i && i + 1 <= *hi, "edge ({lo},{hi}) misses cut {i}");
        }
    }

    #[test]
    fn single_cut_bijection_takes_the_unique_edge() {
        let inst = Instance::new(2, 0, 1, [((0, 1), rat_int(1))], true).unwrap();
        let x = EdgeVector::from_entries([((0, 1), rat_int(1))]);
        let chain = narrow_cuts(&inst, &x, &Rational::one()).unwrap();
        assert_eq!(chain.len(), 1);
        let k_tree = SpanningTree::new(2, [(0, 1)]).unwrap();
        let map = bijection_cuts_to_edges(&k_tree, &chain).unwrap();
        assert_eq!(map, vec![(0, 1)]);
    }

    #[test]
    fn both_inequalities_are_tight_on_a_unit_path() {
        let inst = unit_path_completion(5);
        let tree = SpanningTree::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let x = tree.indicator();
        let dec = decompose(&inst, &x).unwrap();
        let chain = narrow_cuts(&inst, &x, &Rational::one()).unwrap();
        let first = check_ineq_sum_eq_le_cx(&inst, &x, &chain).unwrap();
        assert!(first.pass);
        assert_eq!(first.lhs, first.rhs); // tight: each prefix edge is the path edge
        let second = check_ineq_expected_path(&inst, &x, &dec, &chain).unwrap();
        assert!(second.pass);
        assert_eq!(second.lhs, second.rhs);
    }

    #[test]
    fn certificate_on_a_single_edge_instance() {
        let inst = Instance::new(2, 0, 1, [((0, 1), rat_int(5))], true).unwrap();
        let x = EdgeVector::from_entries([((0, 1), rat_int(1))]);
        let dec = decompose(&inst, &x).unwrap();
        let params = make_params(rat(4, 9)).unwrap();
        let report = certificate_report(&inst, &x, &dec, &params).unwrap();
        assert_eq!(report.lp_cost, rat_int(5));
        assert_eq!(report.expected_path_cost, rat_int(5));
        assert_eq!(report.expected_tjoin_cost, rat_int(0));
        assert_eq!(report.combined_tjoin_bound, rat_int(0));
        assert_eq!(report.certified_ratio, rat_int(1));
        assert!(report.ratio_le_8_5);
        assert!(report.all_trees_feasible);
    }

    #[test]
    fn sebo_h_is_exact_at_four_ninths() {
        let inst = unit_path_completion(4);
        let tree = SpanningTree::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = tree.indicator();
        let dec = decompose(&inst, &x).unwrap();
        let params = make_params(rat(4, 9)).unwrap();
        let report = certificate_report(&inst, &x, &dec, &params).unwrap();
        assert_eq!(report.sebo_h, Some(rat(1, 9)));
        // h irrational at beta = 2/5: only the float is populated.
        let params = make_params(rat(2, 5)).unwrap();
        let report = certificate_report(&inst, &x, &dec, &params).unwrap();
        assert!(report.sebo_h.is_none());
        assert!(report.sebo_h_float > 0.0);
    }

    #[test]
    fn closed_form_maximizers_match_numeric_search() {
        // Ternary search against the closed forms, to one part in 1e9.
        let check = |tau: f64, f: &dyn Fn(f64) -> f64, closed: f64| {
            let (mut lo, mut hi) = (0.0, tau - 1e-15);
            for _ in 0..200 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(m1) < f(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            assert!((f(closed) - f((lo + hi) / 2.0)).abs() < 1e-9);
        };
        for tau in [0.5, 0.75, 7.0 / 9.0, 1.0 - 1e-9] {
            check(tau, &|z| z * (tau - z), quadratic_maximizer(tau));
            check(tau, &|z| z * (tau - z) / (1.0 - z), path_layer_maximizer(tau));
        }
        assert!((golden_ratio_factor() - 1.61803).abs() < 1e-5);
        assert!((eight_fifths_factor() - 1.6).abs() < 1e-12);
    }
}
