//! Independent ground truth for tiny instances: exhaustive enumeration of
//! all partitions into exactly K capacity-feasible routes, with and
//! without the shortest-tour requirement, plus a cut validator.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::cuts::Cut;
use crate::instance::{route_length, Instance, LEN_TOL};
use crate::tsp::TspOracle;

pub const MAX_CUSTOMERS: usize = 9;
pub const MAX_FLEET: u32 = 4;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance beyond enumeration limits (n <= {MAX_CUSTOMERS}, K <= {MAX_FLEET})")]
    TooLarge,
    #[error(transparent)]
    Tsp(#[from] crate::tsp::TspError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OracleMode {
    Fcvrp,
    FcvrpTsp,
    Mindist,
}

#[derive(Debug, Clone, Default)]
pub struct EnumeratedOptimum {
    /// Best range over all feasible solutions, any visiting orders.
    pub best_range_fcvrp: Option<f64>,
    /// Best range over solutions whose routes are all shortest tours.
    pub best_range_tsp: Option<f64>,
    /// Minimum total routing distance over all feasible partitions.
    pub best_total_distance: Option<f64>,
    pub witness_fcvrp: Vec<Vec<usize>>,
    pub witness_tsp: Vec<Vec<usize>>,
    pub witness_distance: Vec<Vec<usize>>,
    /// Capacity-feasible partitions whose shortest-tour total fits the
    /// budget.
    pub count_feasible: u64,
}

/// All partitions of 1..=n into exactly k nonempty blocks, generated via
/// restricted-growth strings; deterministic order.
fn partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        used: usize,
        n: usize,
        k: usize,
        assign: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == n {
            if used == k {
                let mut blocks = vec![Vec::new(); k];
                for (c, &b) in assign.iter().enumerate() {
                    blocks[b].push(c + 1);
                }
                out.push(blocks);
            }
            return;
        }
        // Prune: remaining customers cannot open enough new blocks.
        if used + (n - i) < k {
            return;
        }
        for b in 0..used.min(k) {
            assign[i] = b;
            rec(i + 1, used, n, k, assign, out);
        }
        if used < k {
            assign[i] = used;
            rec(i + 1, used + 1, n, k, assign, out);
        }
    }
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    rec(0, 0, n, k, &mut assign, &mut out);
    out
}

/// Distinct achievable lengths of a block under all visiting orders,
/// sorted ascending, paired with one witness order per length.
fn block_length_options(inst: &Instance, block: &[usize]) -> Vec<(f64, Vec<usize>)> {
    let mut opts: Vec<(f64, Vec<usize>)> = Vec::new();
    for perm in block.iter().copied().permutations(block.len()) {
        let len = route_length(inst, &perm);
        opts.push((len, perm));
    }
    opts.sort_by(|a, b| a.0.total_cmp(&b.0));
    opts.dedup_by(|a, b| a.0 == b.0);
    opts
}

/// Best range over one length choice per block subject to the budget.
/// Scans every candidate minimum value; for a fixed minimum the greedy
/// smallest-length-at-least-minimum choice minimizes both the maximum and
/// the total simultaneously, so the scan is exact.
fn best_range_by_threshold(
    options: &[Vec<(f64, Vec<usize>)>],
    budget: Option<f64>,
) -> Option<(f64, Vec<Vec<usize>>)> {
    let mut candidates: Vec<f64> = options
        .iter()
        .flat_map(|o| o.iter().map(|&(l, _)| l))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let mut best: Option<(f64, Vec<Vec<usize>>)> = None;
    for &m in &candidates {
        let mut total = 0.0;
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        let mut picks = Vec::with_capacity(options.len());
        let mut ok = true;
        for opts in options {
            match opts.iter().find(|&&(l, _)| l >= m) {
                Some((l, order)) => {
                    total += l;
                    max = max.max(*l);
                    min = min.min(*l);
                    picks.push(order.clone());
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || budget.map_or(false, |b| total > b + LEN_TOL) {
            continue;
        }
        let range = max - min;
        if best.as_ref().map_or(true, |(r, _)| range < *r) {
            best = Some((range, picks));
        }
    }
    best
}

pub fn enumerate(
    inst: &Instance,
    mode: OracleMode,
    tsp: &TspOracle,
) -> Result<EnumeratedOptimum, OracleError> {
    if inst.n > MAX_CUSTOMERS || inst.fleet > MAX_FLEET {
        return Err(OracleError::TooLarge);
    }
    let k = inst.fleet as usize;
    let budget = inst.explicit_budget();
    let mut res = EnumeratedOptimum::default();
    if inst.n < k {
        return Ok(res);
    }

    for blocks in partitions(inst.n, k) {
        let loads_ok = blocks.iter().all(|b| {
            b.iter().map(|&c| inst.demand[c] as u64).sum::<u64>() <= inst.capacity as u64
        });
        if !loads_ok {
            continue;
        }
        let mut hk_orders = Vec::with_capacity(k);
        let mut hk_lens = Vec::with_capacity(k);
        for b in &blocks {
            let (order, len) = tsp.tour(inst, b)?;
            hk_orders.push(order);
            hk_lens.push(len);
        }
        let hk_total: f64 = hk_lens.iter().sum();
        let hk_fits = budget.map_or(true, |l| hk_total <= l + LEN_TOL);
        if hk_fits {
            res.count_feasible += 1;
        }

        if matches!(mode, OracleMode::Mindist)
            && res.best_total_distance.map_or(true, |b| hk_total < b)
        {
            res.best_total_distance = Some(hk_total);
            res.witness_distance = hk_orders.clone();
        }

        if matches!(mode, OracleMode::FcvrpTsp | OracleMode::Fcvrp) && hk_fits {
            let max = hk_lens.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = hk_lens.iter().cloned().fold(f64::INFINITY, f64::min);
            let range = max - min;
            if res.best_range_tsp.map_or(true, |b| range < b) {
                res.best_range_tsp = Some(range);
                res.witness_tsp = hk_orders.clone();
            }
        }

        if matches!(mode, OracleMode::Fcvrp) {
            let options: Vec<Vec<(f64, Vec<usize>)>> = blocks
                .iter()
                .map(|b| block_length_options(inst, b))
                .collect();
            if let Some((range, picks)) = best_range_by_threshold(&options, budget) {
                if res.best_range_fcvrp.map_or(true, |b| range < b) {
                    res.best_range_fcvrp = Some(range);
                    res.witness_fcvrp = picks;
                }
            }
        }
    }
    Ok(res)
}

#[derive(Debug, Clone)]
pub struct CutViolationWitness {
    pub cut_index: usize,
    pub routes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Default)]
pub struct CutReport {
    pub solutions_checked: u64,
    pub violations: Vec<CutViolationWitness>,
}

impl CutReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every cut against every feasible solution whose routes are all
/// shortest tours (including equally long reorderings of an optimal tour).
pub fn validate_cuts(
    inst: &Instance,
    cuts: &[Cut],
    tsp: &TspOracle,
) -> Result<CutReport, OracleError> {
    if inst.n > MAX_CUSTOMERS || inst.fleet > MAX_FLEET {
        return Err(OracleError::TooLarge);
    }
    let k = inst.fleet as usize;
    let budget = inst.explicit_budget();
    let mut report = CutReport::default();
    if inst.n < k {
        return Ok(report);
    }

    for blocks in partitions(inst.n, k) {
        let loads_ok = blocks.iter().all(|b| {
            b.iter().map(|&c| inst.demand[c] as u64).sum::<u64>() <= inst.capacity as u64
        });
        if !loads_ok {
            continue;
        }
        // Per block: every visiting order that ties the optimal tour.
        let mut tied_orders: Vec<Vec<(f64, Vec<usize>)>> = Vec::with_capacity(k);
        let mut possible = true;
        for b in &blocks {
            let best = tsp.tour_len(inst, b)?;
            let tied: Vec<(f64, Vec<usize>)> = b
                .iter()
                .copied()
                .permutations(b.len())
                .filter_map(|perm| {
                    let len = route_length(inst, &perm);
                    (len <= best + 1e-9).then_some((len, perm))
                })
                .collect();
            if tied.is_empty() {
                possible = false;
                break;
            }
            tied_orders.push(tied);
        }
        if !possible {
            continue;
        }
        // Cross product of tied orders across blocks.
        let mut combos: Vec<(f64, Vec<Vec<usize>>)> = vec![(0.0, Vec::new())];
        for tied in &tied_orders {
            let mut next = Vec::with_capacity(combos.len() * tied.len());
            for (total, picked) in &combos {
                for (len, order) in tied {
                    let mut p = picked.clone();
                    p.push(order.clone());
                    next.push((total + len, p));
                }
            }
            combos = next;
        }
        for (total, orders) in combos {
            if budget.map_or(false, |l| total > l + LEN_TOL) {
                continue;
            }
            report.solutions_checked += 1;
            let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
            for order in &orders {
                arcs.insert((0, order[0]));
                for w in order.windows(2) {
                    arcs.insert((w[0], w[1]));
                }
                arcs.insert((*order.last().unwrap(), 0));
            }
            for (idx, cut) in cuts.iter().enumerate() {
                if !cut.satisfied_by_arcs(&arcs, 1e-6) {
                    report.violations.push(CutViolationWitness {
                        cut_index: idx,
                        routes: orders.clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}
