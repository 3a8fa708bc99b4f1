//! Restricted master problem: column pool, cut rows, dual extraction, the
//! column-generation loop, and the restricted master heuristic.
//!
//! The master minimizes the range (longest minus shortest route) over
//! selected routes subject to: every customer covered exactly once, the
//! total-distance budget, exactly K routes, and per-customer rows linking
//! the length of a route to the longest/shortest variables through its
//! last customer. A distance objective variant backs the baseline mode.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::bnb::NodeRestrictions;
use crate::cuts::{ArcFlows, Cut};
use crate::instance::{Instance, Route, LEN_TOL};
use crate::lp::{Basis, LpModel, LpStatus, Sense};
use crate::pricing::{
    build_graph, completion_bounds, ng_neighborhoods, price, CompletionBounds, PriceOutcome,
    PricingConfig, PricingGraph, SubproblemCosts,
};
use crate::tsp::TspOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimize the range, formulation with eta/gamma link rows.
    Range,
    /// Minimize total routing distance (baseline mode).
    TotalDistance,
}

#[derive(Debug, Error)]
pub enum MasterError {
    #[error("linear program failed with status {0:?}")]
    Lp(LpStatus),
    #[error("time limit reached")]
    TimeLimit,
}

/// Dual values of the master rows, signs normalized so that all listed
/// multipliers are nonnegative where the formulation requires it.
#[derive(Debug, Clone)]
pub struct DualValues {
    pub mu: Vec<f64>,
    pub lambda: f64,
    pub sigma: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    /// Raw row duals of the active cuts, aligned with `Rmp::cuts`.
    pub cut_duals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PoolColumn {
    pub route: Route,
    pub col: usize,
    pub enabled: bool,
}

pub struct Rmp<'a> {
    pub inst: &'a Instance,
    pub objective: Objective,
    /// Budget L; also the big-M of the shortest-route link rows.
    pub big_m: f64,
    pub budget: Option<f64>,
    pub lp: LpModel,
    pub pool: Vec<PoolColumn>,
    seq_index: HashMap<Vec<usize>, usize>,
    pub eta_col: Option<usize>,
    pub gamma_col: Option<usize>,
    artificials: Vec<usize>,
    partition_rows: Vec<usize>,
    budget_row: Option<usize>,
    fleet_row: usize,
    max_rows: Vec<usize>,
    min_rows: Vec<usize>,
    pub cuts: Vec<Cut>,
    cut_rows: Vec<usize>,
    cut_keys: HashSet<(Vec<(usize, usize)>, bool, i64)>,
    artificial_cost: f64,
}

/// Converged LP relaxation of one node.
#[derive(Debug, Clone)]
pub struct Relaxation {
    pub objective: f64,
    /// x value per pool column.
    pub x: Vec<f64>,
    pub eta: f64,
    pub gamma: f64,
    pub duals: DualValues,
    pub basis: Option<Basis>,
}

#[derive(Debug)]
pub enum RelaxOutcome {
    Optimal(Relaxation),
    Infeasible,
}

#[derive(Debug, Clone, Default)]
pub struct CgStats {
    pub iterations: u64,
    /// Smallest reduced cost seen when re-pricing the pool with final
    /// duals at any convergence; stays above -1e-6 for a sound run.
    pub min_certificate: f64,
}

impl<'a> Rmp<'a> {
    /// Master with all formulation rows, the link variables, artificial
    /// slacks, and one single-customer seed route per customer.
    pub fn build(inst: &'a Instance, objective: Objective, budget: Option<f64>) -> Rmp<'a> {
        let n = inst.n;
        let mut lp = LpModel::new();
        let range = objective == Objective::Range;
        let big_m = match budget {
            Some(l) => l,
            None => inst
                .customers()
                .map(|c| 2.0 * inst.distance(0, c))
                .sum::<f64>(),
        };
        let artificial_cost = 10.0 * big_m.max(1.0);

        let mut partition_rows = vec![usize::MAX; n + 1];
        for i in 1..=n {
            partition_rows[i] = lp.add_row(Sense::Eq, 1.0, &[]);
        }
        let budget_row = if range {
            Some(lp.add_row(Sense::Le, budget.expect("range mode needs a budget"), &[]))
        } else {
            None
        };
        let fleet_row = lp.add_row(Sense::Eq, inst.fleet as f64, &[]);
        let (mut max_rows, mut min_rows) = (vec![usize::MAX; n + 1], vec![usize::MAX; n + 1]);
        let (mut eta_col, mut gamma_col) = (None, None);
        if range {
            for i in 1..=n {
                max_rows[i] = lp.add_row(Sense::Le, 0.0, &[]);
                min_rows[i] = lp.add_row(Sense::Ge, -big_m, &[]);
            }
            let eta_entries: Vec<(usize, f64)> = (1..=n).map(|i| (max_rows[i], -1.0)).collect();
            let gamma_entries: Vec<(usize, f64)> = (1..=n).map(|i| (min_rows[i], -1.0)).collect();
            eta_col = Some(lp.add_col(1.0, 0.0, big_m, eta_entries.clone()));
            let g = lp.add_col(-1.0, 0.0, big_m, gamma_entries.clone());
            // Entries were moved in via add_col taking ownership.
            let _ = (eta_entries, gamma_entries);
            gamma_col = Some(g);
        }
        let mut artificials = Vec::new();
        for i in 1..=n {
            artificials.push(lp.add_col(
                artificial_cost,
                0.0,
                f64::INFINITY,
                vec![(partition_rows[i], 1.0)],
            ));
        }
        artificials.push(lp.add_col(artificial_cost, 0.0, f64::INFINITY, vec![(fleet_row, 1.0)]));
        artificials.push(lp.add_col(artificial_cost, 0.0, f64::INFINITY, vec![(fleet_row, -1.0)]));

        let mut rmp = Rmp {
            inst,
            objective,
            big_m,
            budget,
            lp,
            pool: Vec::new(),
            seq_index: HashMap::new(),
            eta_col,
            gamma_col,
            artificials,
            partition_rows,
            budget_row,
            fleet_row,
            max_rows,
            min_rows,
            cuts: Vec::new(),
            cut_rows: Vec::new(),
            cut_keys: HashSet::new(),
            artificial_cost,
        };
        for i in 1..=n {
            let seed = Route::new(inst, vec![i]).expect("singleton route");
            rmp.add_route(seed);
        }
        rmp
    }

    /// Add a route column; None when the sequence is already pooled.
    pub fn add_route(&mut self, route: Route) -> Option<usize> {
        if self.seq_index.contains_key(route.seq()) {
            return None;
        }
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for &c in route.seq() {
            entries.push((self.partition_rows[c], 1.0));
        }
        if let Some(b) = self.budget_row {
            entries.push((b, route.length));
        }
        entries.push((self.fleet_row, 1.0));
        if self.objective == Objective::Range {
            let last = route.last();
            entries.push((self.max_rows[last], route.length));
            entries.push((self.min_rows[last], route.length - self.big_m));
        }
        for (cut, &row) in self.cuts.iter().zip(self.cut_rows.iter()) {
            let coeff = cut.route_coeff(&route);
            if coeff > 0.0 {
                entries.push((row, coeff));
            }
        }
        let obj = match self.objective {
            Objective::Range => 0.0,
            Objective::TotalDistance => route.length,
        };
        let col = self.lp.add_col(obj, 0.0, 1.0, entries);
        let idx = self.pool.len();
        self.seq_index.insert(route.seq().to_vec(), idx);
        self.pool.push(PoolColumn {
            route,
            col,
            enabled: true,
        });
        Some(idx)
    }

    /// Add a cut row over all pooled columns; false on a duplicate.
    pub fn add_cut(&mut self, cut: Cut) -> bool {
        let key = cut.canonical_key();
        if !self.cut_keys.insert(key) {
            return false;
        }
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for pc in &self.pool {
            let coeff = cut.route_coeff(&pc.route);
            if coeff > 0.0 {
                entries.push((pc.col, coeff));
            }
        }
        let row = self.lp.add_row(cut.sense, cut.rhs, &entries);
        self.cuts.push(cut);
        self.cut_rows.push(row);
        true
    }

    /// Enable exactly the pool columns that satisfy the node's
    /// restrictions and apply the node's link-variable bounds. False when
    /// the bounds are already contradictory.
    pub fn apply_node(&mut self, node: &NodeRestrictions) -> bool {
        if node.eta_lb > node.eta_ub + 1e-12 || node.gamma_lb > node.gamma_ub + 1e-12 {
            return false;
        }
        for i in 0..self.pool.len() {
            let enabled = node.allows_route(&self.pool[i].route);
            self.pool[i].enabled = enabled;
            let col = self.pool[i].col;
            self.lp
                .set_col_bounds(col, 0.0, if enabled { 1.0 } else { 0.0 });
        }
        if let Some(eta) = self.eta_col {
            self.lp.set_col_bounds(eta, node.eta_lb, node.eta_ub);
        }
        if let Some(gamma) = self.gamma_col {
            self.lp.set_col_bounds(gamma, node.gamma_lb, node.gamma_ub);
        }
        true
    }

    pub fn extract_duals(&self, duals: &[f64]) -> DualValues {
        let n = self.inst.n;
        let mut mu = vec![0.0; n + 1];
        for i in 1..=n {
            mu[i] = duals[self.partition_rows[i]];
        }
        let lambda = self
            .budget_row
            .map_or(0.0, |r| (-duals[r]).max(0.0));
        let sigma = duals[self.fleet_row];
        let mut alpha = vec![0.0; n + 1];
        let mut beta = vec![0.0; n + 1];
        if self.objective == Objective::Range {
            for i in 1..=n {
                alpha[i] = (-duals[self.max_rows[i]]).max(0.0);
                beta[i] = duals[self.min_rows[i]].max(0.0);
            }
        }
        let cut_duals = self.cut_rows.iter().map(|&r| duals[r]).collect();
        DualValues {
            mu,
            lambda,
            sigma,
            alpha,
            beta,
            cut_duals,
        }
    }

    /// Reduced cost of a route under master duals and the active cuts:
    /// a length term scaled by the last customer's link multipliers, the
    /// big-M release, minus the covered customers' prices, the fleet dual
    /// and the cut contributions.
    pub fn reduced_cost(&self, r: &Route, d: &DualValues, cuts: &[Cut]) -> f64 {
        let last = r.last();
        let (theta, constant) = match self.objective {
            Objective::Range => (
                d.lambda + d.alpha[last] - d.beta[last],
                self.big_m * d.beta[last] - d.sigma,
            ),
            Objective::TotalDistance => (1.0, -d.sigma),
        };
        let mut rc = theta * r.length + constant;
        for &c in r.seq() {
            rc -= d.mu[c];
        }
        for (cut, &dual) in cuts.iter().zip(d.cut_duals.iter()) {
            if dual != 0.0 {
                rc -= cut.route_coeff(r) * dual;
            }
        }
        rc
    }

    /// Arc-level cut penalties shared by all pricing subproblems.
    fn arc_penalties(&self, d: &DualValues) -> Vec<f64> {
        let n1 = self.inst.n + 1;
        let mut pen = vec![0.0; n1 * n1];
        for (cut, &dual) in self.cuts.iter().zip(d.cut_duals.iter()) {
            if dual.abs() <= 1e-12 {
                continue;
            }
            for &(u, v) in &cut.arcs {
                pen[u * n1 + v] -= dual;
            }
        }
        pen
    }

    pub fn subproblem_costs(&self, last: usize, d: &DualValues, pen: &[f64]) -> SubproblemCosts {
        let (theta, constant) = match self.objective {
            Objective::Range => (
                d.lambda + d.alpha[last] - d.beta[last],
                self.big_m * d.beta[last] - d.sigma,
            ),
            Objective::TotalDistance => (1.0, -d.sigma),
        };
        SubproblemCosts {
            theta,
            constant,
            node_price: d.mu.clone(),
            arc_penalty: pen.to_vec(),
        }
    }

    pub fn artificial_level(&self, primal: &[f64]) -> f64 {
        self.artificials.iter().map(|&c| primal[c]).sum()
    }

    /// Column generation at the given node: alternate LP solves with the
    /// per-last-customer pricing subproblems until none prices below
    /// -1e-6; the converged objective is the node's lower bound.
    pub fn solve_relaxation(
        &mut self,
        node: &NodeRestrictions,
        pricer: &mut Pricer,
        stats: &mut CgStats,
        deadline: Option<Instant>,
    ) -> Result<RelaxOutcome, MasterError> {
        let mut warm: Option<Basis> = None;
        loop {
            if let Some(dl) = deadline {
                if Instant::now() >= dl {
                    return Err(MasterError::TimeLimit);
                }
            }
            stats.iterations += 1;
            let sol = self.lp.solve(warm.as_ref());
            match sol.status {
                LpStatus::Optimal => {}
                LpStatus::Infeasible => return Ok(RelaxOutcome::Infeasible),
                other => return Err(MasterError::Lp(other)),
            }
            let duals = self.extract_duals(&sol.duals);
            let outcomes = pricer.price_all(self, node, &duals);
            let mut added = 0;
            for (_, out) in outcomes {
                for pr in out.columns {
                    if pr.reduced_cost < -LEN_TOL && self.add_route(pr.route).is_some() {
                        added += 1;
                    }
                }
            }
            if added > 0 {
                warm = sol.basis;
                continue;
            }
            if self.artificial_level(&sol.primal) > 1e-6 {
                return Ok(RelaxOutcome::Infeasible);
            }
            // Independent certificate: re-price every enabled pooled
            // column with the final duals.
            let cert = self
                .pool
                .iter()
                .filter(|pc| pc.enabled)
                .map(|pc| self.reduced_cost(&pc.route, &duals, &self.cuts))
                .fold(f64::INFINITY, f64::min);
            if cert < stats.min_certificate {
                stats.min_certificate = cert;
            }
            let x = self.pool.iter().map(|pc| sol.primal[pc.col]).collect();
            let eta = self.eta_col.map_or(0.0, |c| sol.primal[c]);
            let gamma = self.gamma_col.map_or(0.0, |c| sol.primal[c]);
            return Ok(RelaxOutcome::Optimal(Relaxation {
                objective: sol.objective,
                x,
                eta,
                gamma,
                duals,
                basis: sol.basis,
            }));
        }
    }

    /// Total arc flows of a fractional solution.
    pub fn arc_flows(&self, x: &[f64]) -> ArcFlows {
        let mut flows = ArcFlows::new(self.inst.n);
        for (pc, &v) in self.pool.iter().zip(x.iter()) {
            if v > 1e-9 {
                for (i, j) in pc.route.arcs() {
                    flows.add(i, j, v);
                }
            }
        }
        flows
    }

    /// Pool indices of an integral selection, or None if fractional.
    pub fn integral_selection(&self, x: &[f64]) -> Option<Vec<usize>> {
        let mut selected = Vec::new();
        for (idx, &v) in x.iter().enumerate() {
            if v > 1.0 - 1e-6 {
                selected.push(idx);
            } else if v > 1e-6 {
                return None;
            }
        }
        Some(selected)
    }

    /// Restricted master heuristic: solve the integer master over the
    /// current pool by depth-first search within a time budget. When
    /// shortest-tour routes are enforced, every pooled column is first
    /// replaced by its optimal tour (deduplicated) and the output is
    /// checked route by route, so any solution found is feasible for the
    /// tour-optimal problem. Returns a solution only when it strictly
    /// beats the incumbent.
    pub fn rmh(
        &self,
        tsp: &TspOracle,
        incumbent: Option<f64>,
        time_budget: std::time::Duration,
        convert: bool,
    ) -> Option<(Vec<Route>, f64)> {
        if self.objective != Objective::Range {
            return None;
        }
        let start = Instant::now();
        let inst = self.inst;
        let n = inst.n;
        let mut converted: Vec<Route> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for pc in &self.pool {
            let cand = if convert {
                match tsp.optimalize_route(inst, &pc.route) {
                    Ok(conv) => conv,
                    Err(_) => continue,
                }
            } else {
                pc.route.clone()
            };
            if seen.insert(cand.seq().to_vec()) {
                converted.push(cand);
            }
        }
        // Integer master over the converted pool.
        let mut lp = LpModel::new();
        let mut partition = vec![usize::MAX; n + 1];
        for i in 1..=n {
            partition[i] = lp.add_row(Sense::Eq, 1.0, &[]);
        }
        let budget_row = lp.add_row(Sense::Le, self.budget.unwrap_or(self.big_m), &[]);
        let fleet_row = lp.add_row(Sense::Eq, inst.fleet as f64, &[]);
        let mut max_rows = vec![usize::MAX; n + 1];
        let mut min_rows = vec![usize::MAX; n + 1];
        for i in 1..=n {
            max_rows[i] = lp.add_row(Sense::Le, 0.0, &[]);
            min_rows[i] = lp.add_row(Sense::Ge, -self.big_m, &[]);
        }
        lp.add_col(
            1.0,
            0.0,
            self.big_m,
            (1..=n).map(|i| (max_rows[i], -1.0)).collect(),
        );
        lp.add_col(
            -1.0,
            0.0,
            self.big_m,
            (1..=n).map(|i| (min_rows[i], -1.0)).collect(),
        );
        let first_route_col = lp.num_cols();
        for r in &converted {
            let mut entries: Vec<(usize, f64)> = Vec::new();
            for &c in r.seq() {
                entries.push((partition[c], 1.0));
            }
            entries.push((budget_row, r.length));
            entries.push((fleet_row, 1.0));
            entries.push((max_rows[r.last()], r.length));
            entries.push((min_rows[r.last()], r.length - self.big_m));
            lp.add_col(0.0, 0.0, 1.0, entries);
        }

        // Depth-first dive on the route variables.
        let mut best: Option<(Vec<Route>, f64)> = None;
        let mut best_val = incumbent.unwrap_or(f64::INFINITY);
        let mut stack: Vec<Vec<(usize, f64)>> = vec![Vec::new()];
        while let Some(fixings) = stack.pop() {
            if start.elapsed() > time_budget {
                break;
            }
            for (idx, _) in converted.iter().enumerate() {
                lp.set_col_bounds(first_route_col + idx, 0.0, 1.0);
            }
            for &(col, val) in &fixings {
                lp.set_col_bounds(col, val, val);
            }
            let sol = lp.solve(None);
            if sol.status != LpStatus::Optimal {
                continue;
            }
            if sol.objective >= best_val - 1e-9 {
                continue;
            }
            // Most fractional route variable.
            let mut branch: Option<(usize, f64)> = None;
            for idx in 0..converted.len() {
                let v = sol.primal[first_route_col + idx];
                let frac = (v - v.round()).abs();
                if frac > 1e-6 {
                    let score = (v - 0.5).abs();
                    if branch.map_or(true, |(_, s)| score < s) {
                        branch = Some((idx, score));
                    }
                }
            }
            match branch {
                Some((idx, _)) => {
                    let col = first_route_col + idx;
                    let mut zero = fixings.clone();
                    zero.push((col, 0.0));
                    let mut one = fixings;
                    one.push((col, 1.0));
                    stack.push(zero);
                    stack.push(one); // dive on the one-branch first
                }
                None => {
                    let routes: Vec<Route> = (0..converted.len())
                        .filter(|&i| sol.primal[first_route_col + i] > 0.5)
                        .map(|i| converted[i].clone())
                        .collect();
                    if routes.is_empty() {
                        continue;
                    }
                    if convert
                        && !routes
                            .iter()
                            .all(|r| tsp.is_tsp_optimal_route(inst, r).unwrap_or(false))
                    {
                        continue;
                    }
                    let max = routes.iter().map(|r| r.length).fold(f64::NEG_INFINITY, f64::max);
                    let min = routes.iter().map(|r| r.length).fold(f64::INFINITY, f64::min);
                    let range = max - min;
                    if range < best_val - 1e-9 {
                        best_val = range;
                        best = Some((routes, range));
                    }
                }
            }
        }
        best
    }
}

/// Per-node pricing driver: caches subproblem topologies and distance
/// bounds, which only depend on the node, and dispatches the subproblems
/// (in parallel when configured) with fresh duals each round.
pub struct Pricer {
    pub cfg: PricingConfig,
    ng: Vec<u64>,
    threads: usize,
    cache: Vec<Option<(PricingGraph, CompletionBounds)>>,
}

impl Pricer {
    pub fn new(inst: &Instance, cfg: PricingConfig, threads: usize) -> Self {
        Pricer {
            cfg,
            ng: ng_neighborhoods(inst, cfg.ng_size),
            threads: threads.max(1),
            cache: vec![None; inst.n + 1],
        }
    }

    /// Drop cached topologies; call when switching nodes.
    pub fn reset_node(&mut self) {
        self.cache.iter_mut().for_each(|c| *c = None);
    }

    /// Price every enabled subproblem; results in last-customer order.
    pub fn price_all(
        &mut self,
        rmp: &Rmp,
        node: &NodeRestrictions,
        duals: &DualValues,
    ) -> Vec<(usize, PriceOutcome)> {
        let inst = rmp.inst;
        for last in 1..=inst.n {
            if self.cache[last].is_none() && node.last_enabled(last) {
                if let Some(g) = build_graph(inst, last, node) {
                    let b = completion_bounds(inst, &g);
                    self.cache[last] = Some((g, b));
                }
            }
        }
        let pen = rmp.arc_penalties(duals);
        let jobs: Vec<(usize, &(PricingGraph, CompletionBounds), SubproblemCosts)> = (1..=inst.n)
            .filter(|&last| node.last_enabled(last))
            .filter_map(|last| {
                self.cache[last]
                    .as_ref()
                    .map(|gb| (last, gb, rmp.subproblem_costs(last, duals, &pen)))
            })
            .collect();
        let cfg = self.cfg;
        let ng = &self.ng;
        let run = |(last, gb, costs): &(usize, &(PricingGraph, CompletionBounds), SubproblemCosts)| {
            let (g, b) = gb;
            (*last, price(inst, g, b, costs, node, &cfg, ng))
        };
        let mut results: Vec<(usize, PriceOutcome)> = if self.threads > 1 {
            jobs.par_iter().map(run).collect()
        } else {
            jobs.iter().map(run).collect()
        };
        results.sort_by_key(|&(last, _)| last);
        results
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::testutil::*;
    use crate::instance::Budget;

    fn demo_budget() -> f64 {
        let inst = demo8();
        let tsp = TspOracle::default();
        let a = tsp.tour_len(&inst, &[1, 2, 3]).unwrap();
        let b = tsp.tour_len(&inst, &[4, 5, 6, 7]).unwrap();
        (a + b) * 1.05
    }

    #[test]
    fn build_counts() {
        let inst = demo8();
        let l = demo_budget();
        let rmp = Rmp::build(&inst, Objective::Range, Some(l));
        // 7 partition + 1 budget + 1 fleet + 14 link rows.
        assert_eq!(rmp.lp.num_rows(), 23);
        assert_eq!(rmp.pool.len(), 7);
        // eta, gamma, 7 + 2 artificials, 7 seed columns.
        assert_eq!(rmp.lp.num_cols(), 2 + 9 + 7);
    }

    #[test]
    fn reduced_cost_hand_values() {
        let inst = demo8();
        let rmp = Rmp::build(&inst, Objective::Range, Some(demo_budget()));
        let r = Route::new(&inst, vec![1, 2, 3]).unwrap();
        let n = inst.n;
        let zero = DualValues {
            mu: vec![0.0; n + 1],
            lambda: 0.0,
            sigma: 0.0,
            alpha: vec![0.0; n + 1],
            beta: vec![0.0; n + 1],
            cut_duals: vec![],
        };
        assert_eq!(rmp.reduced_cost(&r, &zero, &[]), 0.0);

        let mut d = zero.clone();
        d.mu[1] = 100.0;
        d.mu[2] = 200.0;
        d.mu[3] = 300.0;
        d.sigma = 50.0;
        assert!((rmp.reduced_cost(&r, &d, &[]) - -650.0).abs() < 1e-9);

        let mut d = zero;
        d.lambda = 1.0;
        let rc = rmp.reduced_cost(&r, &d, &[]);
        assert!((rc - 1296.56).abs() < 0.01);
    }

    #[test]
    fn lp_seeded_with_both_demo_solutions_bounds_the_relaxation() {
        let inst = demo8();
        let l = demo_budget();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        rmp.add_route(Route::new(&inst, vec![1, 2, 3]).unwrap());
        rmp.add_route(Route::new(&inst, vec![1, 3, 2]).unwrap());
        rmp.add_route(Route::new(&inst, vec![4, 5, 6, 7]).unwrap());
        let sol = rmp.lp.solve(None);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!(sol.objective <= 87.1, "objective {}", sol.objective);
        assert!(rmp.artificial_level(&sol.primal) < 1e-6);
    }

    #[test]
    fn root_relaxation_bound_sandwich() {
        let inst = demo8();
        let l = demo_budget();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        let node = NodeRestrictions::root(l);
        rmp.apply_node(&node);
        let mut pricer = Pricer::new(&inst, PricingConfig::default(), 1);
        let mut stats = CgStats::default();
        let out = rmp
            .solve_relaxation(&node, &mut pricer, &mut stats, None)
            .unwrap();
        let RelaxOutcome::Optimal(relax) = out else {
            panic!("root must be feasible");
        };
        assert!(relax.objective <= 227.0 + 1.0);
        assert!(stats.min_certificate >= -LEN_TOL);
        assert!(stats.iterations >= 1);
        // Flow conservation of the fractional solution.
        let flows = rmp.arc_flows(&relax.x);
        for c in inst.customers() {
            let inflow: f64 = (0..=inst.n).map(|u| flows.get(u, c)).sum();
            let outflow: f64 = (0..=inst.n).map(|v| flows.get(c, v)).sum();
            assert!((inflow - outflow).abs() < 1e-6);
            assert!((inflow - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn pool_of_optimum_converges_in_one_round() {
        let inst = demo8();
        let l = demo_budget();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        let node = NodeRestrictions::root(l);
        rmp.apply_node(&node);
        let mut pricer = Pricer::new(&inst, PricingConfig::default(), 1);
        let mut stats = CgStats::default();
        let RelaxOutcome::Optimal(relax) = rmp
            .solve_relaxation(&node, &mut pricer, &mut stats, None)
            .unwrap()
        else {
            panic!()
        };
        // Re-seed a fresh master with the full converged pool.
        let mut again = Rmp::build(&inst, Objective::Range, Some(l));
        for pc in &rmp.pool {
            again.add_route(pc.route.clone());
        }
        again.apply_node(&node);
        let mut pricer = Pricer::new(&inst, PricingConfig::default(), 1);
        let mut stats = CgStats::default();
        let RelaxOutcome::Optimal(relax2) = again
            .solve_relaxation(&node, &mut pricer, &mut stats, None)
            .unwrap()
        else {
            panic!()
        };
        assert_eq!(stats.iterations, 1, "only the certification round");
        assert!((relax2.objective - relax.objective).abs() < 1e-6);
    }

    #[test]
    fn single_customer_instance_has_zero_bound() {
        let inst = Instance::from_coords(
            "one",
            vec![(0.0, 0.0), (3.0, 4.0)],
            vec![1],
            1,
            1,
            Budget::Explicit(100.0),
            crate::instance::Rounding::Exact,
        )
        .unwrap();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(100.0));
        let node = NodeRestrictions::root(100.0);
        rmp.apply_node(&node);
        let mut pricer = Pricer::new(&inst, PricingConfig::default(), 1);
        let mut stats = CgStats::default();
        let RelaxOutcome::Optimal(relax) = rmp
            .solve_relaxation(&node, &mut pricer, &mut stats, None)
            .unwrap()
        else {
            panic!()
        };
        assert!(relax.objective.abs() < 1e-6);
        let sel = rmp.integral_selection(&relax.x).unwrap();
        assert_eq!(sel.len(), 1);
    }

    #[test]
    fn seed_violating_an_arc_ban_is_disabled() {
        let inst = demo8();
        let l = demo_budget();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        let mut node = NodeRestrictions::root(l);
        node.forbidden_arcs.insert((0, 1));
        rmp.apply_node(&node);
        let pc = &rmp.pool[0];
        assert_eq!(pc.route.seq(), &[1]);
        assert!(!pc.enabled);
        assert_eq!(rmp.lp.col_bounds(pc.col), (0.0, 0.0));
    }

    #[test]
    fn arc_flows_of_integer_solution() {
        let inst = demo8();
        let l = demo_budget();
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        let a = rmp
            .add_route(Route::new(&inst, vec![1, 3, 2]).unwrap())
            .unwrap();
        let b = rmp
            .add_route(Route::new(&inst, vec![4, 5, 6, 7]).unwrap())
            .unwrap();
        let mut x = vec![0.0; rmp.pool.len()];
        x[a] = 1.0;
        x[b] = 1.0;
        let flows = rmp.arc_flows(&x);
        let expected = [
            (0, 1),
            (1, 3),
            (3, 2),
            (2, 0),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 0),
        ];
        for &(i, j) in &expected {
            assert_eq!(flows.get(i, j), 1.0);
        }
        assert_eq!(flows.support(1e-9).len(), 9);
        // Additivity over a half-half mix sharing arcs.
        let c = rmp
            .add_route(Route::new(&inst, vec![1, 2, 3]).unwrap())
            .unwrap();
        let mut x = vec![0.0; rmp.pool.len()];
        x[a] = 0.5;
        x[c] = 0.5;
        let flows = rmp.arc_flows(&x);
        assert!((flows.get(0, 1) - 1.0).abs() < 1e-12);
        assert!((flows.get(1, 3) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rmh_finds_the_balanced_solution() {
        let inst = demo8();
        let l = demo_budget();
        let tsp = TspOracle::default();
        // Pool with exactly the two tour-optimal demo routes (plus seeds,
        // which cannot cover everything within the fleet).
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        rmp.add_route(Route::new(&inst, vec![1, 2, 3]).unwrap());
        rmp.add_route(Route::new(&inst, vec![4, 5, 6, 7]).unwrap());
        let (routes, range) = rmp
            .rmh(&tsp, None, std::time::Duration::from_secs(5), true)
            .expect("feasible pool");
        assert!((range - 227.0).abs() < 1.0);
        assert_eq!(routes.len(), 2);

        // Same pool but with the TSP-violating twin: conversion maps it
        // to the same solution.
        let mut rmp = Rmp::build(&inst, Objective::Range, Some(l));
        rmp.add_route(Route::new(&inst, vec![1, 3, 2]).unwrap());
        rmp.add_route(Route::new(&inst, vec![4, 5, 6, 7]).unwrap());
        let (_, range2) = rmp
            .rmh(&tsp, None, std::time::Duration::from_secs(5), true)
            .expect("feasible pool");
        assert!((range2 - range).abs() < 1e-9);

        // A pool that cannot cover customer 7 yields nothing.
        let mut lonely = Rmp::build(&inst, Objective::Range, Some(l));
        // Seeds alone need 7 routes but the fleet row demands 2.
        assert!(lonely
            .rmh(&tsp, None, std::time::Duration::from_secs(5), true)
            .is_none());
        let _ = &mut lonely;
    }

    #[test]
    fn mindist_master_matches_oracle_on_demo() {
        let inst = demo8();
        let mut rmp = Rmp::build(&inst, Objective::TotalDistance, None);
        let node = NodeRestrictions::root(rmp.big_m);
        rmp.apply_node(&node);
        let mut pricer = Pricer::new(&inst, PricingConfig::default(), 1);
        let mut stats = CgStats::default();
        let RelaxOutcome::Optimal(relax) = rmp
            .solve_relaxation(&node, &mut pricer, &mut stats, None)
            .unwrap()
        else {
            panic!()
        };
        // The LP bound cannot exceed the integer optimum 2820.08.
        assert!(relax.objective <= 2820.08 + 0.01);
        assert!(relax.objective > 0.0);
    }
}
