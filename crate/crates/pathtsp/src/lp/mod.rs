//! Exact LP solving for both s-t path TSP relaxations.
//!
//! The path Held-Karp relaxation (degree equalities, s-t cut constraints,
//! even-cut constraints, unit bounds) is solved by lazy constraint
//! generation: cut constraints enter only when the flow-based separation
//! oracle finds a violated one. The weaker partition relaxation (partition
//! constraints plus even cuts, defined on the base graph) is solved the same
//! way with exhaustive desk-scale enumeration as its separation oracle.
//!
//! Every optimum is certified before it is returned: the simplex layer
//! re-checks primal/dual optimality, and the cutting-plane loop only stops
//! when separation proves no constraint of the full exponential family is
//! violated.

pub mod flow;
pub mod simplex;

use crate::instance::{check_support, Cut, Edge, EdgeVector, Instance, Partition};
use crate::rational::{format_rational, parse_rational, rat_int, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use simplex::{LinearProgram, Row, Sense, SimplexOutcome};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Cut/partition enumeration is exhaustive; beyond this many vertices the
/// desk-scale checkers refuse to run.
pub const ENUM_VERTEX_LIMIT: usize = 22;
/// Bell-number-bounded partition enumeration limit for the partition LP.
pub const LP4_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// A lazily generated constraint, kept for reporting and re-verification.
#[derive(Debug, Clone)]
pub enum GeneratedConstraint {
    /// `x(delta(S)) >= 1` for an s-t cut S.
    StCut(Cut),
    /// `x(delta(S)) >= 2` for an {s,t}-even cut S.
    EvenCut(Cut),
    /// `x(delta(W)) >= |W| - 1` for a vertex partition W.
    PartitionRow(Partition),
}

impl GeneratedConstraint {
    pub fn describe(&self) -> String {
        match self {
            GeneratedConstraint::StCut(c) => format!("s-t cut {c} >= 1"),
            GeneratedConstraint::EvenCut(c) => format!("even cut {c} >= 2"),
            GeneratedConstraint::PartitionRow(p) => {
                format!("partition with {} classes >= {}", p.len(), p.len() - 1)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: EdgeVector,
    pub value: Rational,
    pub active_constraints: Vec<GeneratedConstraint>,
    pub status: LpStatus,
}

/// Dual certificate for the path Held-Karp relaxation, in the same shape the
/// complementary-slackness argument uses: vertex potentials, nonnegative cut
/// multipliers, nonnegative upper-bound multipliers.
#[derive(Debug, Clone)]
pub struct DualSolution {
    pub y: Vec<Rational>,
    pub d: Vec<(Cut, Rational)>,
    pub u: BTreeMap<Edge, Rational>,
}

impl DualSolution {
    /// `y_s + y_t + 2 sum y_v + sum d_S + 2 sum d_S(even) - sum u_e`.
    pub fn objective(&self, inst: &Instance) -> Rational {
        let mut val = Rational::zero();
        for (v, yv) in self.y.iter().enumerate() {
            let coeff = if v == inst.s() || v == inst.t() { 1 } else { 2 };
            val += yv * rat_int(coeff);
        }
        for (cut, d) in &self.d {
            let coeff = if cut.is_st_cut(inst.s(), inst.t()) { 1 } else { 2 };
            val += d * rat_int(coeff);
        }
        for u in self.u.values() {
            val -= u;
        }
        val
    }
}

// ---------------------------------------------------------------------------
// Separation for the path Held-Karp relaxation.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum Violation {
    /// s-t cut with value < 1.
    StCut(Cut, Rational),
    /// {s,t}-even cut with value < 2.
    EvenCut(Cut, Rational),
}

/// Find a violated cut constraint of the path Held-Karp relaxation, or
/// `None` when every s-t cut has value >= 1 and every even cut value >= 2.
///
/// s-t cuts are separated by one exact max-flow; even cuts by a global min
/// cut after identifying s and t. Any returned cut is re-valued with
/// `cut_value`, so it is a genuine violator.
pub fn separate_lp1(inst: &Instance, x: &EdgeVector) -> Option<Violation> {
    let n = inst.n();
    let (flow, cut) = flow::min_st_cut(n, x, inst.s(), inst.t());
    if flow < Rational::one() {
        let value = x.cut_value(&cut);
        debug_assert!(value < Rational::one());
        return Some(Violation::StCut(cut, value));
    }

    if n >= 3 {
        // Identify s and t into contracted vertex 0; other vertices keep
        // their relative order at ids 1..n-1.
        let mut relabel = vec![usize::MAX; n];
        relabel[inst.s()] = 0;
        relabel[inst.t()] = 0;
        let mut next = 1;
        for v in 0..n {
            if v != inst.s() && v != inst.t() {
                relabel[v] = next;
                next += 1;
            }
        }
        let mut contracted = EdgeVector::new();
        for ((a, b), val) in x.iter() {
            let (ca, cb) = (relabel[a], relabel[b]);
            if ca != cb {
                contracted.add(ca, cb, val.clone());
            }
        }
        if let Some((value, far_side)) = flow::global_min_cut(n - 1, &contracted) {
            if value < rat_int(2) {
                let original: Vec<usize> =
                    (0..n).filter(|&v| relabel[v] != 0 && far_side.contains(&relabel[v])).collect();
                let cut = Cut::new(original, n).expect("far side is nonempty and proper");
                let got = x.cut_value(&cut);
                debug_assert!(got < rat_int(2));
                return Some(Violation::EvenCut(cut, got));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Path Held-Karp relaxation.
// ---------------------------------------------------------------------------

fn edge_index(inst: &Instance) -> (Vec<Edge>, BTreeMap<Edge, usize>) {
    let edges = inst.edge_set();
    let index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    (edges, index)
}

fn cut_row(cut: &Cut, index: &BTreeMap<Edge, usize>, rhs: Rational) -> Row {
    let coeffs = index
        .iter()
        .filter(|((u, v), _)| cut.contains(*u) != cut.contains(*v))
        .map(|(_, &j)| (j, Rational::one()))
        .collect();
    Row { coeffs, sense: Sense::Ge, rhs }
}

fn solve_or_internal_error(prog: &LinearProgram, what: &str) -> Result<simplex::SimplexSolution> {
    match simplex::solve(prog)? {
        SimplexOutcome::Optimal(sol) => Ok(sol),
        SimplexOutcome::Infeasible => {
            Err(Error::InternalConsistency(format!("{what}: LP reported infeasible")))
        }
        SimplexOutcome::Unbounded => {
            Err(Error::InternalConsistency(format!("{what}: LP reported unbounded")))
        }
    }
}

/// Solve the path Held-Karp relaxation on a complete metric instance by
/// cutting planes. The result satisfies every cut constraint (final
/// separation returns none) and carries the generated constraints.
pub fn solve_lp1(inst: &Instance) -> Result<LpSolution> {
    Ok(solve_lp1_with_dual(inst)?.0)
}

/// As [`solve_lp1`], also extracting a dual certificate from the final
/// simplex basis. Ungenerated cut constraints implicitly carry multiplier 0.
pub fn solve_lp1_with_dual(inst: &Instance) -> Result<(LpSolution, DualSolution)> {
    if !inst.is_complete_metric() {
        return Err(Error::InvalidInput(
            "path Held-Karp relaxation needs a complete metric instance".into(),
        ));
    }
    let n = inst.n();
    let (edges, index) = edge_index(inst);
    let objective: Vec<Rational> = edges.iter().map(|(u, v)| inst.cost(*u, *v).unwrap().clone()).collect();
    let upper: Vec<Option<Rational>> = vec![Some(Rational::one()); edges.len()];

    let mut degree_rows: Vec<Row> = Vec::with_capacity(n);
    for v in 0..n {
        let coeffs = edges
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| *a == v || *b == v)
            .map(|(j, _)| (j, Rational::one()))
            .collect();
        let rhs = if v == inst.s() || v == inst.t() { rat_int(1) } else { rat_int(2) };
        degree_rows.push(Row { coeffs, sense: Sense::Eq, rhs });
    }

    let mut generated: Vec<GeneratedConstraint> = Vec::new();
    loop {
        let mut rows = degree_rows.clone();
        for g in &generated {
            match g {
                GeneratedConstraint::StCut(c) => rows.push(cut_row(c, &index, rat_int(1))),
                GeneratedConstraint::EvenCut(c) => rows.push(cut_row(c, &index, rat_int(2))),
                GeneratedConstraint::PartitionRow(_) => unreachable!("not generated here"),
            }
        }
        let prog = LinearProgram { num_vars: edges.len(), objective: objective.clone(), upper: upper.clone(), rows };
        let sol = solve_or_internal_error(&prog, "path Held-Karp relaxation")?;
        let x = EdgeVector::from_entries(
            edges.iter().zip(&sol.values).map(|(e, v)| (*e, v.clone())),
        );
        match separate_lp1(inst, &x) {
            Some(Violation::StCut(c, _)) => generated.push(GeneratedConstraint::StCut(c)),
            Some(Violation::EvenCut(c, _)) => generated.push(GeneratedConstraint::EvenCut(c)),
            None => {
                let value = sol.objective.clone();
                let dual = extract_dual(inst, n, &edges, &generated, &sol);
                let lp = LpSolution {
                    x,
                    value,
                    active_constraints: generated,
                    status: LpStatus::Optimal,
                };
                return Ok((lp, dual));
            }
        }
    }
}

fn extract_dual(
    _inst: &Instance,
    n: usize,
    edges: &[Edge],
    generated: &[GeneratedConstraint],
    sol: &simplex::SimplexSolution,
) -> DualSolution {
    let y = sol.row_duals[..n].to_vec();
    let mut d = Vec::new();
    for (g, dual) in generated.iter().zip(&sol.row_duals[n..]) {
        let cut = match g {
            GeneratedConstraint::StCut(c) | GeneratedConstraint::EvenCut(c) => c.clone(),
            GeneratedConstraint::PartitionRow(_) => unreachable!(),
        };
        if !dual.is_zero() {
            d.push((cut, dual.clone()));
        }
    }
    let u = edges
        .iter()
        .zip(&sol.bound_duals)
        .filter(|(_, w)| !w.is_zero())
        .map(|(e, w)| (*e, w.clone()))
        .collect();
    DualSolution { y, d, u }
}

/// Degree, bound, and (by exact separation) cut feasibility for the path
/// Held-Karp relaxation.
pub fn check_lp1_feasible(inst: &Instance, x: &EdgeVector) -> Result<()> {
    check_support(inst, x)?;
    if !x.is_nonnegative() {
        return Err(Error::InvalidInput("negative entry".into()));
    }
    for ((u, v), val) in x.iter() {
        if *val > Rational::one() {
            return Err(Error::InvalidInput(format!("x({u},{v}) exceeds 1")));
        }
    }
    for v in 0..inst.n() {
        let want = if v == inst.s() || v == inst.t() { rat_int(1) } else { rat_int(2) };
        if x.degree(v) != want {
            return Err(Error::InvalidInput(format!("degree constraint fails at {v}")));
        }
    }
    if let Some(violation) = separate_lp1(inst, x) {
        let what = match violation {
            Violation::StCut(c, got) => format!("s-t cut {c} has value {}", format_rational(&got)),
            Violation::EvenCut(c, got) => {
                format!("even cut {c} has value {}", format_rational(&got))
            }
        };
        return Err(Error::InvalidInput(format!("cut constraint fails: {what}")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Partition relaxation on the base graph.
// ---------------------------------------------------------------------------

/// Visit every partition of `0..n` as a restricted-growth labelling.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, max_used: usize, n: usize, visit: &mut impl FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        for c in 0..=max_used {
            labels.push(c);
            let next_max = if c == max_used { max_used + 1 } else { max_used };
            rec(labels, next_max, n, visit);
            labels.pop();
        }
    }
    if n == 0 {
        return;
    }
    let mut labels = vec![0];
    rec(&mut labels, 1, n, &mut visit);
}

#[derive(Debug, Clone)]
pub enum Lp4Violation {
    Partition(Partition, Rational),
    EvenCut(Cut, Rational),
    Negative(Edge),
}

/// Exhaustive feasibility check for the partition relaxation: every vertex
/// partition and every {s,t}-even cut. Desk scale only.
pub fn check_lp4_feasible(inst: &Instance, x: &EdgeVector) -> Result<Option<Lp4Violation>> {
    let n = inst.n();
    if n > LP4_VERTEX_LIMIT {
        return Err(Error::Lp4TooLarge);
    }
    check_support(inst, x)?;
    for (e, val) in x.iter() {
        if val.is_negative() {
            return Ok(Some(Lp4Violation::Negative(e)));
        }
    }
    let mut worst: Option<Lp4Violation> = None;
    for_each_partition(n, |labels| {
        let k = labels.iter().max().unwrap() + 1;
        if k < 2 {
            return;
        }
        let p = Partition::from_labels(labels).expect("RGS labelling is a valid partition");
        let got = p.cross_value(x);
        if got < rat_int(k as i64 - 1) && worst.is_none() {
            worst = Some(Lp4Violation::Partition(p, got));
        }
    });
    if worst.is_some() {
        return Ok(worst);
    }
    if let Some(v) = first_even_cut_violation(inst, x) {
        return Ok(Some(v));
    }
    Ok(None)
}

fn first_even_cut_violation(inst: &Instance, x: &EdgeVector) -> Option<Lp4Violation> {
    let n = inst.n();
    let free: Vec<usize> = (0..n).filter(|&v| v != inst.s() && v != inst.t()).collect();
    for mask in 1u64..(1 << free.len()) {
        let members: Vec<usize> =
            free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let cut = Cut::new(members, n).expect("nonempty strict subset avoiding s,t");
        let got = x.cut_value(&cut);
        if got < rat_int(2) {
            return Some(Lp4Violation::EvenCut(cut, got));
        }
    }
    None
}

/// Solve the partition relaxation directly on the base graph by cutting
/// planes with exhaustive partition/even-cut separation. `n` is capped by
/// the Bell-number enumeration limit; use the metric-completion equivalence
/// route beyond it.
pub fn solve_lp4(inst: &Instance) -> Result<LpSolution> {
    let n = inst.n();
    if n > LP4_VERTEX_LIMIT {
        return Err(Error::Lp4TooLarge);
    }
    if !inst.is_connected() {
        return Err(Error::NotConnected);
    }
    let (edges, index) = edge_index(inst);
    let objective: Vec<Rational> = edges.iter().map(|(u, v)| inst.cost(*u, *v).unwrap().clone()).collect();
    let upper: Vec<Option<Rational>> = vec![None; edges.len()];

    // Seed rows: the all-singletons partition and each internal vertex as an
    // even singleton cut. Everything else enters lazily.
    let mut generated: Vec<GeneratedConstraint> = Vec::new();
    let singleton_labels: Vec<usize> = (0..n).collect();
    generated.push(GeneratedConstraint::PartitionRow(
        Partition::from_labels(&singleton_labels).unwrap(),
    ));
    for v in 0..n {
        if v != inst.s() && v != inst.t() {
            generated.push(GeneratedConstraint::EvenCut(Cut::new([v], n).unwrap()));
        }
    }

    loop {
        let rows: Vec<Row> = generated
            .iter()
            .map(|g| match g {
                GeneratedConstraint::StCut(_) => unreachable!("not generated here"),
                GeneratedConstraint::EvenCut(c) => cut_row(c, &index, rat_int(2)),
                GeneratedConstraint::PartitionRow(p) => {
                    let coeffs = index
                        .iter()
                        .filter(|((u, v), _)| p.class_of(*u) != p.class_of(*v))
                        .map(|(_, &j)| (j, Rational::one()))
                        .collect();
                    Row { coeffs, sense: Sense::Ge, rhs: rat_int(p.len() as i64 - 1) }
                }
            })
            .collect();
        let prog = LinearProgram {
            num_vars: edges.len(),
            objective: objective.clone(),
            upper: upper.clone(),
            rows,
        };
        let sol = solve_or_internal_error(&prog, "partition relaxation")?;
        let x = EdgeVector::from_entries(
            edges.iter().zip(&sol.values).map(|(e, v)| (*e, v.clone())),
        );

        // Most violated partition, then most violated even cut.
        let mut best: Option<(Rational, Partition)> = None;
        for_each_partition(n, |labels| {
            let k = labels.iter().max().unwrap() + 1;
            if k < 2 {
                return;
            }
            let p = Partition::from_labels(labels).expect("valid partition");
            let slack = p.cross_value(&x) - rat_int(k as i64 - 1);
            if slack.is_negative() && best.as_ref().map_or(true, |(s, _)| slack < *s) {
                best = Some((slack, p));
            }
        });
        if let Some((_, p)) = best {
            generated.push(GeneratedConstraint::PartitionRow(p));
            continue;
        }
        if let Some(Lp4Violation::EvenCut(c, _)) = first_even_cut_violation(inst, &x) {
            generated.push(GeneratedConstraint::EvenCut(c));
            continue;
        }
        return Ok(LpSolution {
            x,
            value: sol.objective,
            active_constraints: generated,
            status: LpStatus::Optimal,
        });
    }
}

// ---------------------------------------------------------------------------
// Polyhedron membership checkers.
// ---------------------------------------------------------------------------

/// Result of a cut-family membership check with an optional witness.
#[derive(Debug, Clone)]
pub struct PolyhedronCheck {
    pub pass: bool,
    pub witness: Option<Cut>,
}

/// Membership in the T-join polyhedron: `f >= 0` and `f(delta(S)) >= 1` for
/// every T-odd cut S, checked by exhaustive enumeration.
pub fn check_tjoin_polyhedron(
    inst: &Instance,
    t_set: &BTreeSet<usize>,
    f: &EdgeVector,
) -> Result<PolyhedronCheck> {
    let n = inst.n();
    if n > ENUM_VERTEX_LIMIT {
        return Err(Error::InvalidInput(format!(
            "T-odd cut enumeration capped at {ENUM_VERTEX_LIMIT} vertices"
        )));
    }
    if t_set.is_empty() || t_set.len() % 2 != 0 {
        return Err(Error::InvalidInput("T must be nonempty with even cardinality".into()));
    }
    if t_set.iter().any(|&v| v >= n) {
        return Err(Error::InvalidInput("T member out of range".into()));
    }
    if !f.is_nonnegative() {
        return Ok(PolyhedronCheck { pass: false, witness: None });
    }
    // Enumerate subsets containing vertex 0; parity and delta are both
    // complement-invariant for even |T|.
    let one = Rational::one();
    for mask in 0u64..(1 << (n - 1)) {
        let full = (mask << 1) | 1;
        if full == (1 << n) - 1 {
            continue;
        }
        let cut = Cut::from_mask(full, n).expect("nonempty proper subset");
        if !cut.is_t_odd(t_set) {
            continue;
        }
        if f.cut_value(&cut) < one {
            return Ok(PolyhedronCheck { pass: false, witness: Some(cut) });
        }
    }
    Ok(PolyhedronCheck { pass: true, witness: None })
}

#[derive(Debug, Clone)]
pub enum TreePolytopeViolation {
    WrongTotal { expected: Rational, got: Rational },
    InducedOverflow { set: Vec<usize>, bound: Rational, got: Rational },
    NegativeEntry(Edge),
}

#[derive(Debug, Clone)]
pub struct TreePolytopeCheck {
    pub pass: bool,
    pub witness: Option<TreePolytopeViolation>,
}

/// Membership in the spanning tree polytope: `x(E) = n - 1` and
/// `x(E(S)) <= |S| - 1` for every nonempty proper S, checked exhaustively.
pub fn check_spanning_tree_polytope(inst: &Instance, x: &EdgeVector) -> Result<TreePolytopeCheck> {
    let n = inst.n();
    if n > ENUM_VERTEX_LIMIT {
        return Err(Error::InvalidInput(format!(
            "induced-set enumeration capped at {ENUM_VERTEX_LIMIT} vertices"
        )));
    }
    check_support(inst, x)?;
    for (e, val) in x.iter() {
        if val.is_negative() {
            return Ok(TreePolytopeCheck {
                pass: false,
                witness: Some(TreePolytopeViolation::NegativeEntry(e)),
            });
        }
    }
    let expected = rat_int(n as i64 - 1);
    let total = x.total();
    if total != expected {
        return Ok(TreePolytopeCheck {
            pass: false,
            witness: Some(TreePolytopeViolation::WrongTotal { expected, got: total }),
        });
    }
    for mask in 1u64..((1 << n) - 1) {
        let members: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let bound = rat_int(members.len() as i64 - 1);
        let got = x.induced_value(&members);
        if got > bound {
            return Ok(TreePolytopeCheck {
                pass: false,
                witness: Some(TreePolytopeViolation::InducedOverflow {
                    set: members.into_iter().collect(),
                    bound,
                    got,
                }),
            });
        }
    }
    Ok(TreePolytopeCheck { pass: true, witness: None })
}

// ---------------------------------------------------------------------------
// Dual certificates.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DualCheckReport {
    pub pass: bool,
    pub primal_value: Rational,
    pub dual_value: Rational,
    pub failures: Vec<String>,
}

/// Verify a claimed optimality certificate for the path Held-Karp
/// relaxation: dual feasibility, complementary slackness, and the exact
/// value identity. All checks are exact; any failure is named.
pub fn verify_dual_certificate(
    inst: &Instance,
    x: &EdgeVector,
    dual: &DualSolution,
) -> Result<DualCheckReport> {
    if !inst.is_complete_metric() {
        return Err(Error::InvalidInput("dual certificates are for complete metric instances".into()));
    }
    if dual.y.len() != inst.n() {
        return Err(Error::InvalidInput("dual has wrong vertex count".into()));
    }
    let mut failures = Vec::new();

    if let Err(e) = check_lp1_feasible(inst, x) {
        failures.push(format!("primal infeasible: {e}"));
    }
    for (cut, d) in &dual.d {
        if d.is_negative() {
            failures.push(format!("d[{cut}] negative"));
        }
    }
    for ((a, b), u) in &dual.u {
        if u.is_negative() {
            failures.push(format!("u[({a},{b})] negative"));
        }
    }

    let (s, t) = (inst.s(), inst.t());
    for ((a, b), cost) in inst.edges() {
        let mut lhs = dual.y[a].clone() + dual.y[b].clone();
        if let Some(u) = dual.u.get(&(a, b)) {
            lhs -= u;
        }
        for (cut, d) in &dual.d {
            if cut.contains(a) != cut.contains(b) {
                lhs += d;
            }
        }
        if lhs > *cost {
            failures.push(format!("dual constraint violated on ({a},{b})"));
        }
        let xe = x.get(a, b);
        if xe.is_positive() && lhs != *cost {
            failures.push(format!("edge ({a},{b}) carries x > 0 but is not tight"));
        }
    }
    for ((a, b), u) in &dual.u {
        if u.is_positive() && x.get(*a, *b) != Rational::one() {
            failures.push(format!("u[({a},{b})] > 0 but x != 1"));
        }
    }
    for (cut, d) in &dual.d {
        if d.is_positive() {
            let bound = if cut.is_st_cut(s, t) { rat_int(1) } else { rat_int(2) };
            if x.cut_value(cut) != bound {
                failures.push(format!("d[{cut}] > 0 but cut not at its bound"));
            }
        }
    }

    let primal_value = x.cost(inst).expect("support checked above");
    let dual_value = dual.objective(inst);
    if primal_value != dual_value {
        failures.push(format!(
            "value mismatch: primal {} vs dual {}",
            format_rational(&primal_value),
            format_rational(&dual_value)
        ));
    }

    Ok(DualCheckReport { pass: failures.is_empty(), primal_value, dual_value, failures })
}

// ---------------------------------------------------------------------------
// Dual file format: header `dual`, then `y <v> <val>`, `u <a> <b> <val>`,
// `d <val> <v1> <v2> ...` lines.
// ---------------------------------------------------------------------------

pub fn parse_dual(text: &str, n: usize) -> Result<DualSolution> {
    let mut saw_header = false;
    let mut y = vec![Rational::zero(); n];
    let mut d = Vec::new();
    let mut u = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "dual" {
                return Err(Error::Parse { line: lineno, msg: "expected header `dual`".into() });
            }
            saw_header = true;
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_v = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse { line: lineno, msg: format!("bad vertex `{tok}`") })
        };
        let parse_r = |tok: &str| -> Result<Rational> {
            parse_rational(tok).map_err(|msg| Error::Parse { line: lineno, msg })
        };
        match toks.first() {
            Some(&"y") if toks.len() == 3 => {
                let v = parse_v(toks[1])?;
                if v >= n {
                    return Err(Error::Parse { line: lineno, msg: format!("vertex {v} out of range") });
                }
                y[v] = parse_r(toks[2])?;
            }
            Some(&"u") if toks.len() == 4 => {
                let a = parse_v(toks[1])?;
                let b = parse_v(toks[2])?;
                u.insert(crate::instance::edge(a, b), parse_r(toks[3])?);
            }
            Some(&"d") if toks.len() >= 3 => {
                let val = parse_r(toks[1])?;
                let members: Result<Vec<usize>> = toks[2..].iter().map(|t| parse_v(t)).collect();
                let cut = Cut::new(members?, n)?;
                d.push((cut, val));
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `y v val`, `u a b val` or `d val v1 v2 ...`, got `{line}`"),
                })
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse { line: 0, msg: "missing `dual` header".into() });
    }
    Ok(DualSolution { y, d, u })
}

pub fn serialize_dual(dual: &DualSolution) -> String {
    let mut out = String::from("dual\n");
    for (v, val) in dual.y.iter().enumerate() {
        if !val.is_zero() {
            writeln!(out, "y {} {}", v, format_rational(val)).unwrap();
        }
    }
    for ((a, b), val) in &dual.u {
        writeln!(out, "u {} {} {}", a, b, format_rational(val)).unwrap();
    }
    for (cut, val) in &dual.d {
        let members: Vec<String> = cut.members().iter().map(|v| v.to_string()).collect();
        writeln!(out, "d {} {}", format_rational(val), members.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::rational::rat;

    fn unit_path(k: usize) -> Instance {
        Instance::new(k, 0, k - 1, (0..k - 1).map(|i| ((i, i + 1), rat_int(1))), false).unwrap()
    }

    fn cycle(len: usize) -> Instance {
        Instance::new(
            len,
            0,
            len / 2,
            (0..len).map(|i| ((i, (i + 1) % len), rat_int(1))),
            false,
        )
        .unwrap()
    }

    #[test]
    fn lp1_value_on_unit_paths() {
        for k in 2..=6 {
            let inst = unit_path(k).metric_completion().unwrap();
            let sol = solve_lp1(&inst).unwrap();
            assert_eq!(sol.value, rat_int(k as i64 - 1), "path on {k} vertices");
            assert!(separate_lp1(&inst, &sol.x).is_none());
        }
    }

    #[test]
    fn lp1_value_on_antipodal_four_cycle() {
        // Two internal even singleton cuts force total >= 4, and a
        // Hamiltonian s-t path of cost 4 exists, so the optimum is exactly 4.
        let inst = cycle(4).metric_completion().unwrap();
        let sol = solve_lp1(&inst).unwrap();
        assert_eq!(sol.value, rat_int(4));
    }

    #[test]
    fn separation_finds_zero_cut() {
        let inst = unit_path(3).metric_completion().unwrap();
        let x = EdgeVector::new();
        match separate_lp1(&inst, &x) {
            Some(Violation::StCut(cut, value)) => {
                assert_eq!(value, rat_int(0));
                assert!(cut.is_st_cut(0, 2));
            }
            other => panic!("expected an s-t violation, got {other:?}"),
        }
    }

    #[test]
    fn lp4_on_single_edge() {
        let inst = Instance::new(2, 0, 1, [((0, 1), rat_int(1))], false).unwrap();
        let sol = solve_lp4(&inst).unwrap();
        assert_eq!(sol.value, rat_int(1));
    }

    #[test]
    fn lp4_matches_lp1_on_small_graphs() {
        for inst in [unit_path(4), cycle(4), cycle(6)] {
            let lp4 = solve_lp4(&inst).unwrap();
            let lp1 = solve_lp1(&inst.metric_completion().unwrap()).unwrap();
            assert_eq!(lp4.value, lp1.value);
            assert!(check_lp4_feasible(&inst, &lp4.x).unwrap().is_none());
        }
    }

    #[test]
    fn lp4_refuses_oversized_instances() {
        let inst = unit_path(13);
        assert!(matches!(solve_lp4(&inst), Err(Error::Lp4TooLarge)));
    }

    #[test]
    fn tjoin_polyhedron_examples() {
        let inst = unit_path(4).metric_completion().unwrap();
        let t_set: BTreeSet<usize> = [0, 3].into_iter().collect();
        // Indicator of a T-join (the path itself) passes.
        let join = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((2, 3), rat_int(1)),
        ]);
        assert!(check_tjoin_polyhedron(&inst, &t_set, &join).unwrap().pass);
        // The zero vector fails with a witness.
        let zero = EdgeVector::new();
        let check = check_tjoin_polyhedron(&inst, &t_set, &zero).unwrap();
        assert!(!check.pass);
        assert!(check.witness.unwrap().is_t_odd(&t_set));
        // Odd T errors out.
        let odd: BTreeSet<usize> = [0].into_iter().collect();
        assert!(check_tjoin_polyhedron(&inst, &odd, &join).is_err());
    }

    #[test]
    fn spanning_tree_polytope_examples() {
        let inst = cycle(4).metric_completion().unwrap();
        let tree = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((2, 3), rat_int(1)),
        ]);
        assert!(check_spanning_tree_polytope(&inst, &tree).unwrap().pass);
        let cycle_ind = EdgeVector::from_entries([
            ((0, 1), rat_int(1)),
            ((1, 2), rat_int(1)),
            ((2, 3), rat_int(1)),
            ((0, 3), rat_int(1)),
        ]);
        let check = check_spanning_tree_polytope(&inst, &cycle_ind).unwrap();
        assert!(!check.pass);
        assert!(matches!(check.witness, Some(TreePolytopeViolation::WrongTotal { .. })));
    }

    #[test]
    fn every_lp1_optimum_lies_in_the_tree_polytope() {
        for inst in [unit_path(5), cycle(4), cycle(6)] {
            let complete = inst.metric_completion().unwrap();
            let sol = solve_lp1(&complete).unwrap();
            assert!(check_spanning_tree_polytope(&complete, &sol.x).unwrap().pass);
        }
    }

    #[test]
    fn extracted_duals_verify() {
        for inst in [unit_path(4), cycle(6)] {
            let complete = inst.metric_completion().unwrap();
            let (sol, dual) = solve_lp1_with_dual(&complete).unwrap();
            let report = verify_dual_certificate(&complete, &sol.x, &dual).unwrap();
            assert!(report.pass, "failures: {:?}", report.failures);
            assert_eq!(report.dual_value, sol.value);
        }
    }

    #[test]
    fn zero_dual_fails_against_positive_cost() {
        let complete = unit_path(3).metric_completion().unwrap();
        let sol = solve_lp1(&complete).unwrap();
        let zero = DualSolution { y: vec![Rational::zero(); 3], d: vec![], u: BTreeMap::new() };
        let report = verify_dual_certificate(&complete, &sol.x, &zero).unwrap();
        assert!(!report.pass);
        assert!(report.failures.iter().any(|f| f.contains("value mismatch")));
    }

    #[test]
    fn dual_file_round_trip() {
        let dual = DualSolution {
            y: vec![rat_int(0), rat_int(1), rat(2, 3)],
            d: vec![(Cut::new([1], 3).unwrap(), rat(1, 3))],
            u: [((0usize, 1usize), rat(2, 3))].into_iter().collect(),
        };
        let text = serialize_dual(&dual);
        let back = parse_dual(&text, 3).unwrap();
        assert_eq!(back.y, dual.y);
        assert_eq!(back.u, dual.u);
        assert_eq!(back.d.len(), 1);
        assert_eq!(back.d[0].1, rat(1, 3));
    }

    #[test]
    fn partition_enumeration_counts_bell_numbers() {
        let mut count = 0u64;
        for_each_partition(5, |_| count += 1);
        assert_eq!(count, 52);
    }
}
