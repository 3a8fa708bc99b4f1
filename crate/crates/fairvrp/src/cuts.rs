//! Separation and lifting of shortest-tour optimality cuts and rounded
//! capacity inequalities over arc flows.
//!
//! A path is TSP-violating when some reordering of its interior nodes with
//! the same endpoints is strictly shorter. No route of a solution in which
//! every route is a shortest tour can traverse all arcs of such a path, so
//! `x(A(P)) <= |A(P)| - 1` is valid. Lifting adds arcs whose use after a
//! traversed prefix (or before a traversed suffix) would violate
//! elementarity, tour optimality, or capacity, keeping the right-hand side.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::instance::{path_length, Instance, Route, LEN_TOL};
use crate::lp::Sense;
use crate::tsp::TspOracle;

/// Arc flows of a fractional master solution, dense over node pairs.
#[derive(Debug, Clone)]
pub struct ArcFlows {
    n: usize,
    flow: Vec<f64>,
}

impl ArcFlows {
    pub fn new(n: usize) -> Self {
        let m = n + 1;
        ArcFlows {
            n,
            flow: vec![0.0; m * m],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.flow[i * (self.n + 1) + j]
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.flow[i * (self.n + 1) + j] += v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs with positive flow, in deterministic (tail, head) order.
    pub fn support(&self, eps: f64) -> Vec<(usize, usize, f64)> {
        let m = self.n + 1;
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let f = self.flow[i * m + j];
                if i != j && f > eps {
                    out.push((i, j, f));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CutKind {
    TspBase,
    TspForward,
    TspBackward,
    Rci,
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CutKind::TspBase => "TSP_BASE",
            CutKind::TspForward => "TSP_FWD",
            CutKind::TspBackward => "TSP_BWD",
            CutKind::Rci => "RCI",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub enum CutOrigin {
    /// The violating node sequence that generated a tour-optimality cut.
    Path(Vec<usize>),
    /// The customer set of a rounded capacity inequality.
    Set(Vec<usize>),
}

/// An arc-coefficient inequality over arc flows; all coefficients are one.
#[derive(Debug, Clone)]
pub struct Cut {
    pub kind: CutKind,
    pub arcs: Vec<(usize, usize)>,
    pub sense: Sense,
    pub rhs: f64,
    pub origin: CutOrigin,
}

impl Cut {
    pub fn lhs(&self, flows: &ArcFlows) -> f64 {
        self.arcs.iter().map(|&(i, j)| flows.get(i, j)).sum()
    }

    /// Amount by which `flows` violates the cut; positive means violated.
    pub fn violation(&self, flows: &ArcFlows) -> f64 {
        match self.sense {
            Sense::Le => self.lhs(flows) - self.rhs,
            Sense::Ge => self.rhs - self.lhs(flows),
            Sense::Eq => (self.lhs(flows) - self.rhs).abs(),
        }
    }

    /// Number of the route's arcs on the cut's left-hand side.
    pub fn route_coeff(&self, r: &Route) -> f64 {
        r.arcs().filter(|a| self.arcs.binary_search(a).is_ok()).count() as f64
    }

    pub fn satisfied_by_arcs(&self, arcs: &BTreeSet<(usize, usize)>, tol: f64) -> bool {
        let lhs = self.arcs.iter().filter(|a| arcs.contains(a)).count() as f64;
        match self.sense {
            Sense::Le => lhs <= self.rhs + tol,
            Sense::Ge => lhs >= self.rhs - tol,
            Sense::Eq => (lhs - self.rhs).abs() <= tol,
        }
    }

    pub fn canonical_key(&self) -> (Vec<(usize, usize)>, bool, i64) {
        (
            self.arcs.clone(),
            matches!(self.sense, Sense::Le),
            self.rhs.round() as i64,
        )
    }
}

impl fmt::Display for Cut {
    /// Debug dump format: `KIND rhs arc,arc,...` with arcs as `i-j` pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.rhs)?;
        let body = self
            .arcs
            .iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect::<Vec<_>>()
            .join(",");
        write!(f, " {body}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Lifting {
    None,
    Forward,
    Backward,
    Both,
}

#[derive(Debug, Clone, Copy)]
pub struct SeparationParams {
    /// Maximum number of nodes on a BFS path.
    pub max_path_nodes: usize,
    pub lifting: Lifting,
    /// Also lift over the terminal position; not covered by the validity
    /// argument, off by default.
    pub aggressive: bool,
}

impl Default for SeparationParams {
    fn default() -> Self {
        SeparationParams {
            max_path_nodes: 8,
            lifting: Lifting::Both,
            aggressive: false,
        }
    }
}

const VIOL_EPS: f64 = 1e-6;

/// Depot-anchored breadth-first search for violated tour-optimality cuts.
/// Returns the violating node sequences; paths start at the depot (forward
/// pass) or end at it (backward pass over reversed arcs), and a partial
/// path is only extended while its own cut could still be violated.
pub fn separate_tsp_paths(
    flows: &ArcFlows,
    inst: &Instance,
    tsp: &TspOracle,
    params: &SeparationParams,
) -> Vec<Vec<usize>> {
    let n = inst.n;
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();

    // Forward pass: paths (0, v, ...), possibly closing back at the depot.
    let mut queue: VecDeque<(Vec<usize>, f64)> = VecDeque::new();
    for v in 1..=n {
        let f = flows.get(0, v);
        if f > VIOL_EPS {
            queue.push_back((vec![0, v], f));
        }
    }
    while let Some((path, flowsum)) = queue.pop_front() {
        let tail = *path.last().unwrap();
        if path.len() >= params.max_path_nodes {
            continue;
        }
        for next in (1..=n).chain(std::iter::once(0)) {
            if next != 0 && path.contains(&next) {
                continue;
            }
            if next == 0 && tail == 0 {
                continue;
            }
            let f = flows.get(tail, next);
            let newsum = flowsum + f;
            // Extend only while x(A(P)) > |A(P)| - 1 can still hold.
            if newsum <= (path.len() - 1) as f64 + VIOL_EPS {
                continue;
            }
            let mut newpath = path.clone();
            newpath.push(next);
            if newpath.len() >= 3 && tsp.is_violating_path(inst, &newpath).unwrap_or(false) {
                if seen.insert(newpath.clone()) {
                    found.push(newpath.clone());
                }
            }
            if next != 0 {
                queue.push_back((newpath, newsum));
            }
        }
    }

    // Backward pass: paths (..., v, 0) grown leftward over reversed arcs.
    // Prepending the depot is skipped since the forward pass already covers
    // depot-to-depot cycles.
    let mut queue: VecDeque<(Vec<usize>, f64)> = VecDeque::new();
    for v in 1..=n {
        let f = flows.get(v, 0);
        if f > VIOL_EPS {
            queue.push_back((vec![v, 0], f));
        }
    }
    while let Some((path, flowsum)) = queue.pop_front() {
        let front = path[0];
        if path.len() >= params.max_path_nodes {
            continue;
        }
        for prev in 1..=n {
            if path.contains(&prev) {
                continue;
            }
            let f = flows.get(prev, front);
            let newsum = flowsum + f;
            if newsum <= (path.len() - 1) as f64 + VIOL_EPS {
                continue;
            }
            let mut newpath = Vec::with_capacity(path.len() + 1);
            newpath.push(prev);
            newpath.extend_from_slice(&path);
            if newpath.len() >= 3 && tsp.is_violating_path(inst, &newpath).unwrap_or(false) {
                if seen.insert(newpath.clone()) {
                    found.push(newpath.clone());
                }
            }
            queue.push_back((newpath, newsum));
        }
    }

    found
}

/// Base cut of a violating path: its arcs may not all be used together.
pub fn base_cut(path: &[usize]) -> Cut {
    let mut arcs: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    arcs.sort_unstable();
    Cut {
        kind: CutKind::TspBase,
        rhs: (path.len() - 2) as f64,
        sense: Sense::Le,
        arcs,
        origin: CutOrigin::Path(path.to_vec()),
    }
}

/// Forward-lifted cut: for every proper prefix, add the arcs whose use
/// right after the prefix would violate elementarity, tour optimality, or
/// capacity. Lifted heads are customers only.
pub fn lift_forward(path: &[usize], inst: &Instance, tsp: &TspOracle, aggressive: bool) -> Cut {
    let p = path.len();
    let mut arcs: BTreeSet<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let top = if aggressive && path[p - 1] != 0 {
        p
    } else {
        p - 1
    };
    let mut prefix_demand: u64 = 0;
    for h in 1..=top {
        let tail = path[h - 1];
        prefix_demand += inst.demand[tail] as u64;
        if tail == 0 {
            continue;
        }
        // Elementarity: arcs back to earlier customers of the path.
        for &node in &path[..h - 1] {
            if node != 0 {
                arcs.insert((tail, node));
            }
        }
        // Banned set for new heads: the prefix plus the next path node.
        let banned: &[usize] = &path[..(h + 1).min(p)];
        for j in 1..=inst.n {
            if banned.contains(&j) {
                continue;
            }
            // Capacity: the prefix plus j cannot fit in one vehicle.
            if prefix_demand + inst.demand[j] as u64 > inst.capacity as u64 {
                arcs.insert((tail, j));
                continue;
            }
            // Tour optimality: the extended prefix is itself violating.
            if h >= 2 {
                let mut probe = path[..h].to_vec();
                probe.push(j);
                if tsp.is_violating_path(inst, &probe).unwrap_or(false) {
                    arcs.insert((tail, j));
                }
            }
        }
    }
    Cut {
        kind: CutKind::TspForward,
        rhs: (p - 2) as f64,
        sense: Sense::Le,
        arcs: arcs.into_iter().collect(),
        origin: CutOrigin::Path(path.to_vec()),
    }
}

/// Backward-lifted cut: mirror of the forward lifting over path suffixes.
pub fn lift_backward(path: &[usize], inst: &Instance, tsp: &TspOracle, aggressive: bool) -> Cut {
    let p = path.len();
    let mut arcs: BTreeSet<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let bottom = if aggressive && path[0] != 0 { 1 } else { 2 };
    let mut suffix_demand: u64 = 0;
    for h in (bottom..=p).rev() {
        let head = path[h - 1];
        suffix_demand += inst.demand[head] as u64;
        if head == 0 {
            continue;
        }
        // Elementarity: arcs from later customers of the path back to the
        // suffix head.
        for &node in &path[h..] {
            if node != 0 {
                arcs.insert((node, head));
            }
        }
        let banned_lo = h.saturating_sub(2);
        let banned: &[usize] = &path[banned_lo..];
        for j in 1..=inst.n {
            if banned.contains(&j) {
                continue;
            }
            if inst.demand[j] as u64 + suffix_demand > inst.capacity as u64 {
                arcs.insert((j, head));
                continue;
            }
            if p - h + 1 >= 2 {
                let mut probe = Vec::with_capacity(p - h + 2);
                probe.push(j);
                probe.extend_from_slice(&path[h - 1..]);
                if probe.len() >= 3 && tsp.is_violating_path(inst, &probe).unwrap_or(false) {
                    arcs.insert((j, head));
                }
            }
        }
    }
    Cut {
        kind: CutKind::TspBackward,
        rhs: (p - 2) as f64,
        sense: Sense::Le,
        arcs: arcs.into_iter().collect(),
        origin: CutOrigin::Path(path.to_vec()),
    }
}

/// Cuts for one violating path under the configured lifting mode. Forward
/// and backward lifting give two separate inequalities.
pub fn build_tsp_cuts(
    path: &[usize],
    inst: &Instance,
    tsp: &TspOracle,
    params: &SeparationParams,
) -> Vec<Cut> {
    match params.lifting {
        Lifting::None => vec![base_cut(path)],
        Lifting::Forward => vec![lift_forward(path, inst, tsp, params.aggressive)],
        Lifting::Backward => vec![lift_backward(path, inst, tsp, params.aggressive)],
        Lifting::Both => vec![
            lift_forward(path, inst, tsp, params.aggressive),
            lift_backward(path, inst, tsp, params.aggressive),
        ],
    }
}

/// Smallest violating contiguous subpath of a route's depot-to-depot
/// cycle, or None when the route is a shortest tour. Scanning includes the
/// full cycle, so a TSP-violating route always yields a path.
pub fn route_violating_subpath(
    route: &Route,
    inst: &Instance,
    tsp: &TspOracle,
) -> Option<Vec<usize>> {
    let mut cycle = Vec::with_capacity(route.seq().len() + 2);
    cycle.push(0);
    cycle.extend_from_slice(route.seq());
    cycle.push(0);
    let m = cycle.len();
    for span in 2..m {
        for s in 0..m - span {
            let sub = &cycle[s..=s + span];
            if sub[1..sub.len() - 1].contains(&0) {
                continue;
            }
            if tsp.is_violating_path(inst, sub).unwrap_or(false) {
                return Some(sub.to_vec());
            }
        }
    }
    None
}

/// Heuristic separation of rounded capacity inequalities: connected
/// components of the customer support graph refined by greedy single-node
/// moves; emits `x(delta_out(S)) >= ceil(d(S)/Q)` when violated.
pub fn separate_rci(flows: &ArcFlows, inst: &Instance) -> Vec<Cut> {
    let n = inst.n;
    let support = flows.support(1e-4);
    // Undirected customer adjacency.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(i, j, _) in &support {
        if i >= 1 && j >= 1 {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut comp = vec![usize::MAX; n + 1];
    let mut ncomp = 0;
    for start in 1..=n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = ncomp;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = ncomp;
                    stack.push(v);
                }
            }
        }
        ncomp += 1;
    }

    let out_flow = |s: &BTreeSet<usize>| -> f64 {
        let mut x = 0.0;
        for &i in s.iter() {
            for j in 0..=n {
                if j != i && !s.contains(&j) {
                    x += flows.get(i, j);
                }
            }
        }
        x
    };
    let demand_of = |s: &BTreeSet<usize>| -> u64 { s.iter().map(|&i| inst.demand[i] as u64).sum() };
    let rhs_of = |s: &BTreeSet<usize>| -> f64 {
        (demand_of(s) as f64 / inst.capacity as f64).ceil()
    };

    let mut cuts = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for c in 0..ncomp {
        let mut set: BTreeSet<usize> = (1..=n).filter(|&i| comp[i] == c).collect();
        if set.is_empty() {
            continue;
        }
        // Greedy improvement of the violation by single add/drop moves.
        let mut viol = rhs_of(&set) - out_flow(&set);
        for _ in 0..2 * n {
            let mut best: Option<(f64, bool, usize)> = None;
            for j in 1..=n {
                let inside = set.contains(&j);
                if inside && set.len() == 1 {
                    continue;
                }
                let mut cand = set.clone();
                if inside {
                    cand.remove(&j);
                } else {
                    cand.insert(j);
                }
                let v = rhs_of(&cand) - out_flow(&cand);
                if v > viol + 1e-9 && best.map_or(true, |(bv, _, _)| v > bv) {
                    best = Some((v, inside, j));
                }
            }
            match best {
                Some((v, inside, j)) => {
                    if inside {
                        set.remove(&j);
                    } else {
                        set.insert(j);
                    }
                    viol = v;
                }
                None => break,
            }
        }
        if viol > VIOL_EPS {
            let members: Vec<usize> = set.iter().copied().collect();
            if !seen.insert(members.clone()) {
                continue;
            }
            let mut arcs = Vec::new();
            for &i in &members {
                for j in 0..=n {
                    if j != i && !set.contains(&j) {
                        arcs.push((i, j));
                    }
                }
            }
            arcs.sort_unstable();
            cuts.push(Cut {
                kind: CutKind::Rci,
                arcs,
                sense: Sense::Ge,
                rhs: rhs_of(&set),
                origin: CutOrigin::Set(members),
            });
        }
    }
    cuts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::testutil::*;
    use crate::instance::{Budget, Route};
    use itertools::Itertools;

    fn flows_of_routes(inst: &Instance, routes: &[Route]) -> ArcFlows {
        let mut f = ArcFlows::new(inst.n);
        for r in routes {
            for (i, j) in r.arcs() {
                f.add(i, j, 1.0);
            }
        }
        f
    }

    /// Independent violation check by permutation enumeration.
    fn perm_violating(inst: &Instance, p: &[usize]) -> bool {
        let interior = &p[1..p.len() - 1];
        let best = interior
            .iter()
            .copied()
            .permutations(interior.len())
            .map(|mid| {
                let mut nodes = vec![p[0]];
                nodes.extend(mid);
                nodes.push(p[p.len() - 1]);
                path_length(inst, &nodes)
            })
            .fold(f64::INFINITY, f64::min);
        best < path_length(inst, p) - LEN_TOL
    }

    #[test]
    fn separation_finds_cut_on_tsp_violating_integer_solution() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let routes = vec![
            Route::new(&inst, vec![1, 3, 2]).unwrap(),
            Route::new(&inst, vec![4, 5, 6, 7]).unwrap(),
        ];
        let flows = flows_of_routes(&inst, &routes);
        let paths = separate_tsp_paths(&flows, &inst, &tsp, &SeparationParams::default());
        assert!(!paths.is_empty());
        assert!(
            paths.iter().any(|p| p == &[1, 3, 2, 0]),
            "expected the suffix path, got {paths:?}"
        );
        for p in &paths {
            assert!(perm_violating(&inst, p), "not violating: {p:?}");
            let cut = base_cut(p);
            assert!(cut.violation(&flows) > 1e-6);
            assert!(!p[1..p.len() - 1].contains(&0));
        }
        let cut = base_cut(&[1, 3, 2, 0]);
        assert_eq!(cut.rhs, 2.0);
    }

    #[test]
    fn no_cuts_on_tsp_optimal_integer_solution() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let routes = vec![
            Route::new(&inst, vec![1, 2, 3]).unwrap(),
            Route::new(&inst, vec![4, 5, 6, 7]).unwrap(),
        ];
        let flows = flows_of_routes(&inst, &routes);
        let paths = separate_tsp_paths(&flows, &inst, &tsp, &SeparationParams::default());
        assert!(paths.is_empty(), "unexpected cuts: {paths:?}");
    }

    #[test]
    fn no_cuts_on_zero_flows() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let flows = ArcFlows::new(inst.n);
        let paths = separate_tsp_paths(&flows, &inst, &tsp, &SeparationParams::default());
        assert!(paths.is_empty());
    }

    #[test]
    fn rci_never_violated_for_covered_single_customer() {
        // A customer covered once has unit outflow, matching its rhs.
        let inst = demo8();
        let routes = vec![
            Route::new(&inst, vec![1]).unwrap(),
            Route::new(&inst, vec![2, 3]).unwrap(),
            Route::new(&inst, vec![4, 5, 6, 7]).unwrap(),
        ];
        let flows = flows_of_routes(&inst, &routes);
        for i in inst.customers() {
            let singleton: BTreeSet<usize> = [i].into_iter().collect();
            let out: f64 = (0..=inst.n)
                .filter(|&j| j != i)
                .map(|j| flows.get(i, j))
                .sum();
            let rhs = (inst.demand[i] as f64 / inst.capacity as f64).ceil();
            assert!(out >= rhs - 1e-9, "singleton {singleton:?}");
        }
    }

    #[test]
    fn forward_lifting_matches_definitions() {
        let inst = demo8();
        let tsp = TspOracle::default();
        // (0, 5, 4, 6) is violating: 0-4-5-6 over the same nodes is shorter.
        let path = [0usize, 5, 4, 6];
        assert!(perm_violating(&inst, &path));
        let cut = lift_forward(&path, &inst, &tsp, false);
        assert_eq!(cut.rhs, 2.0);
        // Path arcs are present.
        for w in path.windows(2) {
            assert!(cut.arcs.contains(&(w[0], w[1])));
        }
        // Elementarity arc of the prefix (0, 5, 4): back from 4 to 5.
        assert!(cut.arcs.contains(&(4, 5)));
        // No arc may point back to the depot.
        assert!(cut.arcs.iter().all(|&(_, j)| j != 0));
        // Tour-optimality heads: j with (0, 5, 4, j) violating.
        for j in [1usize, 2, 3, 7] {
            let probe = [0usize, 5, 4, j];
            assert_eq!(
                perm_violating(&inst, &probe),
                cut.arcs.contains(&(4, j)),
                "head {j}"
            );
        }
        // Prefix of length one lifts nothing: no arc leaves the depot
        // except the path arc itself.
        assert_eq!(cut.arcs.iter().filter(|&&(i, _)| i == 0).count(), 1);
    }

    #[test]
    fn backward_lifting_matches_definitions() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let path = [1usize, 3, 2, 0];
        assert!(perm_violating(&inst, &path));
        let cut = lift_backward(&path, &inst, &tsp, false);
        assert_eq!(cut.rhs, 2.0);
        for w in path.windows(2) {
            assert!(cut.arcs.contains(&(w[0], w[1])));
        }
        // Elementarity arcs into suffix heads from later path customers:
        // suffix (3, 2, 0) at head 3 gains (2, 3).
        assert!(cut.arcs.contains(&(2, 3)));
        // Suffix of length one lifts nothing: the only arc into the depot
        // is the path's own final arc.
        assert_eq!(cut.arcs.iter().filter(|&&(_, j)| j == 0).count(), 1);
        // The first path node is never a suffix head, so no lifted arc may
        // end at it.
        assert!(cut.arcs.iter().all(|&(i, j)| j != 1 || i == 0));
        // Tour-optimality tails at the suffix (3, 2, 0): customers j
        // outside the path with (j, 3, 2, 0) violating give arcs (j, 3).
        for j in [4usize, 5, 6, 7] {
            let probe = [j, 3, 2, 0];
            assert_eq!(
                perm_violating(&inst, &probe),
                cut.arcs.contains(&(j, 3)),
                "tail {j}"
            );
        }
    }

    #[test]
    fn capacity_lifting_arcs() {
        // Tight capacity: demands 3,3,2 with Q=4, so customers 1 and 2 can
        // never ride together, nor 2 and 3.
        let inst = Instance::from_coords(
            "cap",
            vec![(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)],
            vec![3, 3, 2],
            4,
            2,
            Budget::Explicit(1e6),
            crate::instance::Rounding::Exact,
        )
        .unwrap();
        let tsp = TspOracle::default();
        let path = [0usize, 2, 1, 3];
        // Forward: after prefix (0, 2) with load 3, adding customer 3
        // (demand 2) overflows, so (2, 3) is a capacity arc.
        let fwd = lift_forward(&path, &inst, &tsp, false);
        assert!(fwd.arcs.contains(&(2, 3)));
        // Backward: ahead of suffix (3) the load is 2; prepending customer
        // 2 (demand 3) overflows, so (2, 3) is a capacity arc there too.
        let bwd = lift_backward(&path, &inst, &tsp, false);
        assert!(bwd.arcs.contains(&(2, 3)));
    }

    #[test]
    fn lifted_violation_at_least_base_violation() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let routes = vec![
            Route::new(&inst, vec![1, 3, 2]).unwrap(),
            Route::new(&inst, vec![4, 5, 6, 7]).unwrap(),
        ];
        let flows = flows_of_routes(&inst, &routes);
        let paths = separate_tsp_paths(&flows, &inst, &tsp, &SeparationParams::default());
        for p in &paths {
            let b = base_cut(p).violation(&flows);
            let f = lift_forward(p, &inst, &tsp, false).violation(&flows);
            let w = lift_backward(p, &inst, &tsp, false).violation(&flows);
            assert!(f >= b - 1e-9);
            assert!(w >= b - 1e-9);
        }
    }

    #[test]
    fn rci_on_overloaded_cycle() {
        // Three customers with total demand Q+1 joined in one fractional
        // cycle: one crossing, but two vehicles are needed.
        let inst = Instance::from_coords(
            "rci",
            vec![(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)],
            vec![2, 2, 1],
            4,
            2,
            Budget::Explicit(1e6),
            crate::instance::Rounding::Exact,
        )
        .unwrap();
        let mut flows = ArcFlows::new(inst.n);
        flows.add(0, 1, 1.0);
        flows.add(1, 2, 1.0);
        flows.add(2, 3, 1.0);
        flows.add(3, 0, 1.0);
        let cuts = separate_rci(&flows, &inst);
        assert_eq!(cuts.len(), 1);
        let cut = &cuts[0];
        assert_eq!(cut.rhs, 2.0);
        assert!(cut.violation(&flows) > 0.5);
        match &cut.origin {
            CutOrigin::Set(s) => assert_eq!(s, &vec![1, 2, 3]),
            _ => panic!("wrong origin"),
        }
    }

    #[test]
    fn rci_not_violated_by_feasible_integer_solutions() {
        let inst = demo8();
        let routes = vec![
            Route::new(&inst, vec![1, 2, 3]).unwrap(),
            Route::new(&inst, vec![4, 5, 6, 7]).unwrap(),
        ];
        let flows = flows_of_routes(&inst, &routes);
        assert!(separate_rci(&flows, &inst).is_empty());
    }

    #[test]
    fn route_subpath_scan_matches_route_optimality() {
        let inst = demo8();
        let tsp = TspOracle::default();
        let bad = Route::new(&inst, vec![1, 3, 2]).unwrap();
        let sub = route_violating_subpath(&bad, &inst, &tsp);
        assert!(sub.is_some());
        assert!(perm_violating(&inst, &sub.unwrap()));
        let good = Route::new(&inst, vec![4, 5, 6, 7]).unwrap();
        assert!(route_violating_subpath(&good, &inst, &tsp).is_none());
    }

    #[test]
    fn cut_display_dump_format() {
        let cut = base_cut(&[0, 5, 4, 6]);
        assert_eq!(format!("{cut}"), "TSP_BASE 2 0-5,4-6,5-4");
    }
}
