//! Branch-and-bound driver: best-bound node selection, the three
//! branching rules (range, last-customer, arc), the cut loop, incumbent
//! management, and the solve modes.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cuts::{
    base_cut, build_tsp_cuts, route_violating_subpath, separate_rci, separate_tsp_paths, Cut,
    CutKind, Lifting, SeparationParams,
};
use crate::instance::{budget_from_percentage, Budget, Instance, Route, LEN_TOL};
use crate::master::{CgStats, MasterError, Objective, Pricer, RelaxOutcome, Relaxation, Rmp};
use crate::pricing::PricingConfig;
use crate::tsp::TspOracle;

/// Largest customer count the labeling bitmasks support.
pub const MAX_SOLVER_CUSTOMERS: usize = 63;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("instance has {0} customers; this solver supports at most {MAX_SOLVER_CUSTOMERS}")]
    TooLarge(usize),
    #[error("baseline distance run did not reach optimality; cannot resolve a percentage budget")]
    BaselineUnsolved,
    #[error("internal invariant failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Master(#[from] MasterError),
}

/// Branching state of a tree node. Children only ever tighten their
/// parent's restrictions.
#[derive(Debug, Clone)]
pub struct NodeRestrictions {
    /// Every selected route's length must fall in [len_lo, len_hi].
    pub len_lo: f64,
    pub len_hi: f64,
    /// Bounds on the longest-route variable.
    pub eta_lb: f64,
    pub eta_ub: f64,
    /// Bounds on the shortest-route variable.
    pub gamma_lb: f64,
    pub gamma_ub: f64,
    pub forbidden_arcs: BTreeSet<(usize, usize)>,
    pub forced_arcs: BTreeSet<(usize, usize)>,
    pub last_forbidden: BTreeSet<usize>,
    pub last_forced: BTreeSet<usize>,
}

impl NodeRestrictions {
    /// Root restrictions: the budget caps every route length, and the
    /// link variables live in [0, M].
    pub fn root(big_m: f64) -> Self {
        NodeRestrictions {
            len_lo: 0.0,
            len_hi: big_m,
            eta_lb: 0.0,
            eta_ub: big_m,
            gamma_lb: 0.0,
            gamma_ub: big_m,
            forbidden_arcs: BTreeSet::new(),
            forced_arcs: BTreeSet::new(),
            last_forbidden: BTreeSet::new(),
            last_forced: BTreeSet::new(),
        }
    }

    /// Whether the arc may appear in a route at this node.
    pub fn allows_arc(&self, u: usize, v: usize) -> bool {
        if self.forbidden_arcs.contains(&(u, v)) {
            return false;
        }
        for &(a, b) in &self.forced_arcs {
            // A forced arc pins the unique successor of its customer tail
            // and the unique predecessor of its customer head.
            if u == a && a != 0 && v != b {
                return false;
            }
            if v == b && b != 0 && u != a {
                return false;
            }
        }
        true
    }

    /// Whether pricing for this last customer is active at the node.
    pub fn last_enabled(&self, i: usize) -> bool {
        !self.last_forbidden.contains(&i)
    }

    /// Whether `node` may appear on a route ending at `last`: a customer
    /// forced to be last can only be visited by its own subproblem.
    pub fn node_allowed_for_last(&self, node: usize, last: usize) -> bool {
        node == last || !self.last_forced.contains(&node)
    }

    pub fn in_window(&self, length: f64) -> bool {
        length >= self.len_lo - LEN_TOL && length <= self.len_hi + LEN_TOL
    }

    /// Whether a pooled route satisfies every restriction of the node.
    pub fn allows_route(&self, r: &Route) -> bool {
        if !self.in_window(r.length) {
            return false;
        }
        if self.last_forbidden.contains(&r.last()) {
            return false;
        }
        for &f in &self.last_forced {
            if r.covers(f) && r.last() != f {
                return false;
            }
        }
        r.arcs().all(|(u, v)| self.allows_arc(u, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    Exact,
    Postprocess,
    Fcvrp,
    Mindist,
}

#[derive(Debug, Clone)]
pub struct SolveParams {
    pub lifting: Lifting,
    pub rci: bool,
    pub aggressive_lifting: bool,
    pub time_limit: Duration,
    pub node_limit: u64,
    pub threads: usize,
    pub pricing: PricingConfig,
    pub hk_limit: usize,
    /// Most-violated cuts kept per separation round.
    pub cut_cap: usize,
    /// Maximum nodes on a separation path.
    pub bfs_depth: usize,
    /// Cut rounds without bound improvement before branching.
    pub stall_limit: u32,
    /// Primal heuristic cadence in node activations.
    pub rmh_period: u64,
    pub rmh_time: Duration,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            lifting: Lifting::Both,
            rci: true,
            aggressive_lifting: false,
            time_limit: Duration::from_secs(3600),
            node_limit: 1_000_000,
            threads: 1,
            pricing: PricingConfig::default(),
            hk_limit: crate::tsp::DEFAULT_HK_LIMIT,
            cut_cap: 50,
            bfs_depth: 8,
            stall_limit: 5,
            rmh_period: 10,
            rmh_time: Duration::from_secs(5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Limit,
    Infeasible,
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub cuts_rci: u64,
    pub cuts_tsp: u64,
    pub cg_iters: u64,
    pub time_s: f64,
    /// Smallest pool reduced cost at any converged relaxation.
    pub min_certificate: f64,
    /// Smallest (lifted violation - base violation) over all emitted
    /// tour-optimality cuts; nonnegative means lifting never weakened a
    /// cut at its separation point.
    pub min_lift_gain: f64,
    pub rmh_incumbents: u64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub lb: f64,
    pub ub: Option<f64>,
    pub gap: Option<f64>,
    /// Range of the reported routes (also for the distance objective).
    pub range: Option<f64>,
    pub routes: Vec<Route>,
    pub stats: Stats,
    /// Every cut added during the solve, for validation.
    pub cuts: Vec<Cut>,
}

pub fn gap_of(lb: f64, ub: Option<f64>) -> Option<f64> {
    let ub = ub?;
    if ub.abs() <= 1e-12 {
        return Some(if lb.abs() <= 1e-12 { 0.0 } else { 1.0 });
    }
    let lb = lb.clamp(0.0, ub);
    Some((ub - lb) / ub)
}

fn routes_range(routes: &[Route]) -> f64 {
    let max = routes.iter().map(|r| r.length).fold(f64::NEG_INFINITY, f64::max);
    let min = routes.iter().map(|r| r.length).fold(f64::INFINITY, f64::min);
    max - min
}

/// Fathoming tolerance against an incumbent: the relative-gap target,
/// floored by the column-generation tolerance.
fn prune_tol(ub: f64) -> f64 {
    (1e-6 * ub.abs()).max(1e-6)
}

/// Resolve a percentage budget by solving the distance baseline.
pub fn resolve_budget(inst: &Instance, params: &SolveParams) -> Result<Instance, SolveError> {
    match inst.budget {
        Budget::Explicit(_) => Ok(inst.clone()),
        Budget::Percent(pct) => {
            let base = branch_and_price(inst, Objective::TotalDistance, None, false, params)?;
            if base.status != SolveStatus::Optimal {
                return Err(SolveError::BaselineUnsolved);
            }
            let baseline = base.ub.expect("optimal baseline has a value");
            let l = budget_from_percentage(pct, baseline)
                .map_err(|e| SolveError::Internal(e.to_string()))?;
            Ok(inst.with_budget(l))
        }
    }
}

/// Solve an instance in the given mode.
pub fn solve(inst: &Instance, mode: Mode, params: &SolveParams) -> Result<SolveResult, SolveError> {
    if inst.n > MAX_SOLVER_CUSTOMERS {
        return Err(SolveError::TooLarge(inst.n));
    }
    match mode {
        Mode::Mindist => branch_and_price(inst, Objective::TotalDistance, None, false, params),
        Mode::Exact => {
            let inst = resolve_budget(inst, params)?;
            branch_and_price(&inst, Objective::Range, inst.explicit_budget(), true, params)
        }
        Mode::Fcvrp => {
            let inst = resolve_budget(inst, params)?;
            branch_and_price(&inst, Objective::Range, inst.explicit_budget(), false, params)
        }
        Mode::Postprocess => {
            let inst = resolve_budget(inst, params)?;
            let mut res =
                branch_and_price(&inst, Objective::Range, inst.explicit_budget(), false, params)?;
            // Convert every route into its optimal tour; the relaxation
            // bound stays valid because enforcing tour optimality only
            // restricts the feasible set.
            let tsp = TspOracle::new(params.hk_limit, crate::tsp::DEFAULT_CACHE_CAP);
            let converted: Vec<Route> = res
                .routes
                .iter()
                .map(|r| tsp.optimalize_route(&inst, r).expect("within limits"))
                .collect();
            if !converted.is_empty() {
                let range = routes_range(&converted);
                res.ub = Some(range);
                res.range = Some(range);
                res.routes = converted;
            }
            res.gap = gap_of(res.lb, res.ub);
            res.status = match res.gap {
                Some(g) if g <= 1e-6 => SolveStatus::Optimal,
                Some(_) => SolveStatus::Limit,
                None => res.status,
            };
            Ok(res)
        }
    }
}

struct HeapNode {
    bound: f64,
    id: u64,
    depth: u32,
    restrictions: NodeRestrictions,
}

impl PartialEq for HeapNode {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.id == other.id
    }
}
impl Eq for HeapNode {}
impl PartialOrd for HeapNode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapNode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap pops the max; rank by least bound first, and dive on
        // bound plateaus by preferring the deepest, newest node, which
        // reaches integral solutions instead of sweeping the frontier.
        other
            .bound
            .total_cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(self.id.cmp(&other.id))
    }
}

enum BranchRule {
    EtaAt(f64),
    GammaAt(f64),
    LastCustomer(usize),
    Arc(usize, usize),
}

const BRANCH_EPS: f64 = 1e-6;

fn branch_and_price(
    inst: &Instance,
    objective: Objective,
    budget: Option<f64>,
    enforce_tsp: bool,
    params: &SolveParams,
) -> Result<SolveResult, SolveError> {
    if inst.n > MAX_SOLVER_CUSTOMERS {
        return Err(SolveError::TooLarge(inst.n));
    }
    let start = Instant::now();
    let deadline = start + params.time_limit;
    let mut rmp = Rmp::build(inst, objective, budget);
    let big_m = rmp.big_m;
    let tsp = TspOracle::new(params.hk_limit, crate::tsp::DEFAULT_CACHE_CAP);
    let mut pricer = Pricer::new(inst, params.pricing, params.threads);
    let sep_params = SeparationParams {
        max_path_nodes: params.bfs_depth,
        lifting: params.lifting,
        aggressive: params.aggressive_lifting,
    };

    let mut stats = Stats {
        min_certificate: f64::INFINITY,
        min_lift_gain: f64::INFINITY,
        ..Default::default()
    };
    let mut cg_stats = CgStats {
        min_certificate: f64::INFINITY,
        ..Default::default()
    };
    let mut all_cuts: Vec<Cut> = Vec::new();

    let mut heap: BinaryHeap<HeapNode> = BinaryHeap::new();
    heap.push(HeapNode {
        bound: 0.0,
        id: 0,
        depth: 0,
        restrictions: NodeRestrictions::root(big_m),
    });
    let mut next_id: u64 = 1;
    let mut ub = f64::INFINITY;
    let mut incumbent: Vec<Route> = Vec::new();
    let mut lb_open = 0.0;
    let mut hit_limit = false;

    'tree: while let Some(node) = heap.pop() {
        lb_open = node.bound.max(0.0);
        if lb_open >= ub - prune_tol(ub) {
            // Best-bound order: every open node is at least as high.
            lb_open = ub.min(lb_open);
            heap.clear();
            break;
        }
        if stats.nodes >= params.node_limit || Instant::now() >= deadline {
            hit_limit = true;
            heap.push(node);
            break;
        }
        stats.nodes += 1;

        // Primal heuristic at the root and on the configured cadence.
        if objective == Objective::Range
            && (stats.nodes == 1 || stats.nodes % params.rmh_period == 0)
        {
            let room = deadline.saturating_duration_since(Instant::now());
            let rmh_budget = params.rmh_time.min(room);
            if let Some((routes, range)) =
                rmp.rmh(&tsp, (ub.is_finite()).then_some(ub), rmh_budget, enforce_tsp)
            {
                if range < ub - 1e-9 {
                    ub = range;
                    incumbent = routes;
                    stats.rmh_incumbents += 1;
                }
            }
        }

        pricer.reset_node();
        if !rmp.apply_node(&node.restrictions) {
            continue;
        }
        let mut node_lb = node.bound.max(0.0);
        let mut stall: u32 = 0;
        let mut last_cut_bound: Option<f64> = None;

        loop {
            let relax = match rmp.solve_relaxation(
                &node.restrictions,
                &mut pricer,
                &mut cg_stats,
                Some(deadline),
            ) {
                Ok(RelaxOutcome::Optimal(r)) => r,
                Ok(RelaxOutcome::Infeasible) => continue 'tree,
                Err(MasterError::TimeLimit) => {
                    hit_limit = true;
                    heap.push(HeapNode {
                        bound: node_lb,
                        id: node.id,
                        depth: node.depth,
                        restrictions: node.restrictions.clone(),
                    });
                    break 'tree;
                }
                Err(e) => return Err(e.into()),
            };
            node_lb = node_lb.max(relax.objective).max(0.0);
            if let Some(prev) = last_cut_bound {
                if relax.objective - prev <= 1e-6 {
                    stall += 1;
                } else {
                    stall = 0;
                }
            }
            if node_lb >= ub - prune_tol(ub) {
                continue 'tree;
            }

            if let Some(selected) = rmp.integral_selection(&relax.x) {
                let routes: Vec<Route> = selected
                    .iter()
                    .map(|&i| rmp.pool[i].route.clone())
                    .collect();
                let violating: Vec<&Route> = if enforce_tsp {
                    routes
                        .iter()
                        .filter(|r| !tsp.is_tsp_optimal_route(inst, r).unwrap_or(true))
                        .collect()
                } else {
                    Vec::new()
                };
                if violating.is_empty() {
                    let value = match objective {
                        Objective::Range => routes_range(&routes),
                        Objective::TotalDistance => routes.iter().map(|r| r.length).sum(),
                    };
                    if value < ub - 1e-9 {
                        ub = value;
                        incumbent = routes;
                    }
                    continue 'tree;
                }
                // Never accept: cut the tour-violating routes and resolve.
                let flows = rmp.arc_flows(&relax.x);
                let mut added = 0;
                for r in violating {
                    let path = route_violating_subpath(r, inst, &tsp)
                        .expect("violating route has a violating subpath");
                    for cut in build_tsp_cuts(&path, inst, &tsp, &sep_params) {
                        let gain = cut.violation(&flows) - base_cut(&path).violation(&flows);
                        if gain < stats.min_lift_gain {
                            stats.min_lift_gain = gain;
                        }
                        if rmp.add_cut(cut.clone()) {
                            all_cuts.push(cut);
                            stats.cuts_tsp += 1;
                            added += 1;
                        }
                    }
                }
                // Extra cuts from the flow-based search.
                for path in separate_tsp_paths(&flows, inst, &tsp, &sep_params) {
                    for cut in build_tsp_cuts(&path, inst, &tsp, &sep_params) {
                        if cut.violation(&flows) > 1e-6 && rmp.add_cut(cut.clone()) {
                            all_cuts.push(cut);
                            stats.cuts_tsp += 1;
                            added += 1;
                        }
                    }
                }
                if added == 0 {
                    return Err(SolveError::Internal(
                        "tour-violating integer solution admitted no new cut".into(),
                    ));
                }
                last_cut_bound = Some(relax.objective);
                continue;
            }

            // Fractional: separate cuts while they keep moving the bound.
            if stall < params.stall_limit {
                let flows = rmp.arc_flows(&relax.x);
                let mut tsp_cuts: Vec<(f64, Cut)> = Vec::new();
                if enforce_tsp {
                    for path in separate_tsp_paths(&flows, inst, &tsp, &sep_params) {
                        let base_viol = base_cut(&path).violation(&flows);
                        for cut in build_tsp_cuts(&path, inst, &tsp, &sep_params) {
                            let viol = cut.violation(&flows);
                            let gain = viol - base_viol;
                            if gain < stats.min_lift_gain {
                                stats.min_lift_gain = gain;
                            }
                            if viol > 1e-6 {
                                tsp_cuts.push((viol, cut));
                            }
                        }
                    }
                }
                let mut rci_cuts: Vec<(f64, Cut)> = Vec::new();
                if params.rci {
                    for cut in separate_rci(&flows, inst) {
                        let viol = cut.violation(&flows);
                        if viol > 1e-6 {
                            rci_cuts.push((viol, cut));
                        }
                    }
                }
                tsp_cuts.sort_by(|a, b| b.0.total_cmp(&a.0));
                rci_cuts.sort_by(|a, b| b.0.total_cmp(&a.0));
                let mut added = 0;
                for (_, cut) in tsp_cuts.into_iter().chain(rci_cuts.into_iter()) {
                    if added >= params.cut_cap {
                        break;
                    }
                    let kind = cut.kind;
                    if rmp.add_cut(cut.clone()) {
                        all_cuts.push(cut);
                        match kind {
                            CutKind::Rci => stats.cuts_rci += 1,
                            _ => stats.cuts_tsp += 1,
                        }
                        added += 1;
                    }
                }
                if added > 0 {
                    last_cut_bound = Some(relax.objective);
                    continue;
                }
            }

            // Branch.
            let rule = pick_branch(&rmp, &relax, objective).ok_or_else(|| {
                SolveError::Internal("fractional solution without a branching entity".into())
            })?;
            let (left, right) = apply_branch(&node.restrictions, &rule);
            for child in [left, right] {
                heap.push(HeapNode {
                    bound: node_lb,
                    id: next_id,
                    depth: node.depth + 1,
                    restrictions: child,
                });
                next_id += 1;
            }
            continue 'tree;
        }
    }

    // Final bounds.
    let open_min = heap
        .iter()
        .map(|h| h.bound)
        .fold(f64::INFINITY, f64::min);
    let lb = if hit_limit {
        open_min.min(ub).max(0.0).min(if open_min.is_finite() { open_min } else { ub })
    } else if ub.is_finite() {
        ub
    } else {
        lb_open
    };
    let lb = if lb.is_finite() { lb.max(0.0) } else { 0.0 };
    let (status, ub_out, routes) = if ub.is_finite() {
        let gap_now = gap_of(lb, Some(ub)).unwrap_or(1.0);
        let status = if hit_limit && gap_now > 1e-6 {
            SolveStatus::Limit
        } else {
            SolveStatus::Optimal
        };
        (status, Some(ub), incumbent)
    } else if hit_limit {
        (SolveStatus::Limit, None, Vec::new())
    } else {
        (SolveStatus::Infeasible, None, Vec::new())
    };

    stats.cg_iters = cg_stats.iterations;
    stats.min_certificate = cg_stats.min_certificate;
    stats.time_s = start.elapsed().as_secs_f64();
    let range = (!routes.is_empty()).then(|| routes_range(&routes));
    Ok(SolveResult {
        status,
        lb: if status == SolveStatus::Optimal && ub_out.is_some() {
            ub_out.unwrap()
        } else {
            lb
        },
        gap: match status {
            SolveStatus::Optimal => Some(0.0),
            SolveStatus::Limit => gap_of(lb, ub_out),
            SolveStatus::Infeasible => None,
        },
        ub: ub_out,
        range,
        routes,
        stats,
        cuts: all_cuts,
    })
}

/// Branching rule priority: fractional last-customer loads first (they
/// both recover integrality and collapse the big-M slack of the
/// shortest-route links), then the most fractional arc flow, then range
/// thresholds when a support route length escapes the link variables.
fn pick_branch(rmp: &Rmp, relax: &Relaxation, objective: Objective) -> Option<BranchRule> {
    let support: Vec<(usize, f64)> = relax
        .x
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v > 1e-6)
        .map(|(i, &v)| (i, v))
        .collect();
    // Last-customer loads.
    let n = rmp.inst.n;
    let mut z = vec![0.0; n + 1];
    for &(i, v) in &support {
        z[rmp.pool[i].route.last()] += v;
    }
    let mut best: Option<(f64, usize)> = None;
    for (c, &zc) in z.iter().enumerate().skip(1) {
        let frac = (zc - zc.round()).abs();
        if frac > BRANCH_EPS {
            let score = (zc - 0.5).abs();
            if best.map_or(true, |(s, _)| score < s) {
                best = Some((score, c));
            }
        }
    }
    if let Some((_, c)) = best {
        return Some(BranchRule::LastCustomer(c));
    }
    // Arc flows.
    let flows = rmp.arc_flows(&relax.x);
    let mut best: Option<(f64, (usize, usize))> = None;
    for (u, v, f) in flows.support(1e-9) {
        let frac = (f - f.round()).abs();
        if frac > BRANCH_EPS {
            let score = (f - 0.5).abs();
            if best.map_or(true, |(s, _)| score < s) {
                best = Some((score, (u, v)));
            }
        }
    }
    if let Some((_, (u, v))) = best {
        return Some(BranchRule::Arc(u, v));
    }
    // Range thresholds: fractional solutions always expose a fractional
    // arc first, so this fires only on degenerate edge states.
    if objective == Objective::Range {
        let maxlen = support
            .iter()
            .map(|&(i, _)| rmp.pool[i].route.length)
            .fold(f64::NEG_INFINITY, f64::max);
        let minlen = support
            .iter()
            .map(|&(i, _)| rmp.pool[i].route.length)
            .fold(f64::INFINITY, f64::min);
        let eta_excess = maxlen - relax.eta;
        let gamma_excess = relax.gamma - minlen;
        if eta_excess > BRANCH_EPS || gamma_excess > BRANCH_EPS {
            // Midpoint thresholds make both children cut off a constant
            // fraction of the disagreement, so chains of range branches
            // converge geometrically instead of by epsilon steps.
            if eta_excess >= gamma_excess {
                return Some(BranchRule::EtaAt(0.5 * (relax.eta + maxlen)));
            }
            return Some(BranchRule::GammaAt(0.5 * (minlen + relax.gamma)));
        }
    }
    None
}

fn apply_branch(parent: &NodeRestrictions, rule: &BranchRule) -> (NodeRestrictions, NodeRestrictions) {
    let mut left = parent.clone();
    let mut right = parent.clone();
    match *rule {
        BranchRule::EtaAt(t) => {
            // Left: every route at most t; right: the longest route
            // variable exceeds t.
            left.len_hi = left.len_hi.min(t);
            left.eta_ub = left.eta_ub.min(t);
            right.eta_lb = right.eta_lb.max(t + BRANCH_EPS);
        }
        BranchRule::GammaAt(t) => {
            left.len_lo = left.len_lo.max(t);
            left.gamma_lb = left.gamma_lb.max(t);
            right.gamma_ub = right.gamma_ub.min(t - BRANCH_EPS);
        }
        BranchRule::LastCustomer(c) => {
            // Left: the route covering c must end at c; right: no route
            // may end at c.
            left.last_forced.insert(c);
            right.last_forbidden.insert(c);
        }
        BranchRule::Arc(u, v) => {
            left.forced_arcs.insert((u, v));
            right.forbidden_arcs.insert((u, v));
        }
    }
    (left, right)
}


#[cfg(test)]
mod suite_probe {
    use super::*;
    use crate::instance::testutil::random_instance;

    #[test]
    #[ignore]
    fn probe_acceptance_suite_timing() {
        let params = SolveParams::default();
        let none = SolveParams {
            lifting: crate::cuts::Lifting::None,
            ..SolveParams::default()
        };
        let start = std::time::Instant::now();
        for seed in 0..50u64 {
            let n = 5 + (seed as usize % 4);
            let k = 2 + (seed % 2) as u32;
            let q = if seed % 4 < 2 { (n as u32).div_ceil(k) + 1 } else { n as u32 };
            let inst = random_instance(7000 + seed, n, k, q, crate::instance::Budget::Percent(110.0));
            let t = std::time::Instant::now();
            let a = solve(&inst, Mode::Exact, &params).unwrap();
            let b = solve(&inst, Mode::Exact, &none).unwrap();
            let c = solve(&inst, Mode::Postprocess, &params).unwrap();
            println!(
                "seed {seed} n={n} k={k} q={q}: both={:?}/{}n/{:.2}s none={:?}/{}n lift_ok={} pp={:.3} t={:.2}s",
                a.status, a.stats.nodes, a.stats.time_s,
                b.status, b.stats.nodes,
                a.stats.min_lift_gain >= -1e-9,
                c.gap.unwrap_or(9.9),
                t.elapsed().as_secs_f64()
            );
        }
        println!("TOTAL {:.1}s", start.elapsed().as_secs_f64());
    }
}

#[cfg(test)]
mod seed2_probe {
    use super::*;
    use crate::instance::testutil::random_instance;

    #[test]
    #[ignore]
    fn probe_seed2() {
        let params = SolveParams {
            time_limit: Duration::from_secs(20),
            ..Default::default()
        };
        let inst = random_instance(7002, 7, 2, 7, crate::instance::Budget::Percent(110.0));
        let res = solve(&inst, Mode::Exact, &params).unwrap();
        println!(
            "seed2: {:?} lb={} ub={:?} nodes={} cg={} tsp={} rci={} rmh={} t={:.1}",
            res.status, res.lb, res.ub, res.stats.nodes, res.stats.cg_iters,
            res.stats.cuts_tsp, res.stats.cuts_rci, res.stats.rmh_incumbents, res.stats.time_s
        );
    }
}

#[cfg(test)]
mod seed3_probe {
    use super::*;
    use crate::instance::testutil::random_instance;

    #[test]
    #[ignore]
    fn probe_seed3() {
        let params = SolveParams {
            time_limit: Duration::from_secs(30),
            ..Default::default()
        };
        let inst = random_instance(7003, 8, 3, 8, crate::instance::Budget::Percent(110.0));
        let none = SolveParams {
            lifting: crate::cuts::Lifting::None,
            ..params.clone()
        };
        for (label, mode, p) in [
            ("exact", Mode::Exact, &params),
            ("none", Mode::Exact, &none),
            ("pp", Mode::Postprocess, &params),
        ] {
            match solve(&inst, mode, p) {
                Ok(res) => println!(
                    "seed3 {label}: {:?} lb={} ub={:?} nodes={} cg={} t={:.1}",
                    res.status, res.lb, res.ub, res.stats.nodes, res.stats.cg_iters, res.stats.time_s
                ),
                Err(e) => println!("seed3 {label} ERR: {e}"),
            }
        }
    }
}
