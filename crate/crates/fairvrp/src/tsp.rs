//! Held-Karp dynamic programs over node subsets: optimal depot tours for
//! route conversion and optimal fixed-endpoint paths for cut separation.

use std::collections::HashMap;
use std::sync::Mutex;
use thiserror::Error;

use crate::instance::{path_length, route_length, Instance, Route, LEN_TOL};

pub const DEFAULT_HK_LIMIT: usize = 20;
pub const DEFAULT_CACHE_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum TspError {
    #[error("subset of size {0} exceeds the Held-Karp limit {1}")]
    TooLarge(usize, usize),
    #[error("empty customer set")]
    EmptySet,
    #[error("invalid path query: {0}")]
    BadQuery(String),
}

/// Shortest-path query: best `start -> (all interior) -> end` length.
#[derive(Debug, Clone)]
pub struct PathQuery {
    pub start: usize,
    pub end: usize,
    pub interior: Vec<usize>,
}

impl PathQuery {
    pub fn new(start: usize, end: usize, interior: Vec<usize>) -> Result<Self, TspError> {
        if interior.contains(&start) || interior.contains(&end) {
            return Err(TspError::BadQuery("endpoint inside interior".into()));
        }
        if start == end && interior.is_empty() {
            return Err(TspError::BadQuery("degenerate query".into()));
        }
        if interior.contains(&0) {
            return Err(TspError::BadQuery("depot in interior".into()));
        }
        let mut sorted = interior.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != interior.len() {
            return Err(TspError::BadQuery("repeated interior node".into()));
        }
        Ok(PathQuery {
            start,
            end,
            interior,
        })
    }
}

/// Least-recently-used cache with a fixed capacity.
struct LruCache<K, V> {
    map: HashMap<K, (V, u64)>,
    order: std::collections::BTreeMap<u64, K>,
    tick: u64,
    cap: usize,
}

impl<K: std::hash::Hash + Eq + Clone, V: Clone> LruCache<K, V> {
    fn new(cap: usize) -> Self {
        LruCache {
            map: HashMap::new(),
            order: std::collections::BTreeMap::new(),
            tick: 0,
            cap,
        }
    }

    fn get(&mut self, k: &K) -> Option<V> {
        self.tick += 1;
        let tick = self.tick;
        if let Some((v, stamp)) = self.map.get_mut(k) {
            let old = *stamp;
            *stamp = tick;
            let key = self.order.remove(&old).expect("stamp tracked");
            self.order.insert(tick, key);
            Some(v.clone())
        } else {
            None
        }
    }

    fn put(&mut self, k: K, v: V) {
        self.tick += 1;
        if let Some((_, old)) = self.map.insert(k.clone(), (v, self.tick)) {
            self.order.remove(&old);
        }
        self.order.insert(self.tick, k);
        if self.map.len() > self.cap {
            if let Some((_, victim)) = self.order.pop_first() {
                self.map.remove(&victim);
            }
        }
    }
}

/// Subset-DP oracle with a bounded cache; queries are pure, the cache is
/// internally synchronized so the oracle can be shared across workers.
pub struct TspOracle {
    pub hk_limit: usize,
    cache: Mutex<LruCache<(u32, u32, u64), f64>>,
}

impl Default for TspOracle {
    fn default() -> Self {
        TspOracle::new(DEFAULT_HK_LIMIT, DEFAULT_CACHE_CAP)
    }
}

impl TspOracle {
    pub fn new(hk_limit: usize, cache_cap: usize) -> Self {
        TspOracle {
            hk_limit,
            cache: Mutex::new(LruCache::new(cache_cap)),
        }
    }

    /// Minimum-length depot tour over `customers`; ties between a tour and
    /// its reverse are broken toward the lexicographically smaller order.
    pub fn tour(&self, inst: &Instance, customers: &[usize]) -> Result<(Vec<usize>, f64), TspError> {
        if customers.is_empty() {
            return Err(TspError::EmptySet);
        }
        if customers.len() > self.hk_limit {
            return Err(TspError::TooLarge(customers.len(), self.hk_limit));
        }
        if customers.len() == 1 {
            let c = customers[0];
            return Ok((vec![c], route_length(inst, &[c])));
        }
        let mut nodes = customers.to_vec();
        nodes.sort_unstable();
        let order = dp_order(inst, 0, 0, &nodes);
        let fwd_len = route_length(inst, &order);
        let mut rev = order.clone();
        rev.reverse();
        let rev_len = route_length(inst, &rev);
        if rev_len == fwd_len && rev < order {
            return Ok((rev, rev_len));
        }
        Ok((order, fwd_len))
    }

    /// Length of the optimal tour over `customers` (cached).
    pub fn tour_len(&self, inst: &Instance, customers: &[usize]) -> Result<f64, TspError> {
        if customers.is_empty() {
            return Err(TspError::EmptySet);
        }
        self.path_len_parts(inst, 0, 0, customers)
    }

    /// Shortest `start -> interior -> end` path length (cached).
    pub fn path_len(&self, inst: &Instance, q: &PathQuery) -> Result<f64, TspError> {
        self.path_len_parts(inst, q.start, q.end, &q.interior)
    }

    fn path_len_parts(
        &self,
        inst: &Instance,
        start: usize,
        end: usize,
        interior: &[usize],
    ) -> Result<f64, TspError> {
        if interior.len() > self.hk_limit {
            return Err(TspError::TooLarge(interior.len(), self.hk_limit));
        }
        if interior.is_empty() {
            return Ok(inst.distance(start, end));
        }
        // Cache only sets that fit in a 64-bit mask.
        let cacheable = interior.iter().all(|&c| c < 64);
        let key = if cacheable {
            let mut mask: u64 = 0;
            for &c in interior {
                mask |= 1 << c;
            }
            let key = (start as u32, end as u32, mask);
            if let Some(v) = self.cache.lock().unwrap().get(&key) {
                return Ok(v);
            }
            Some(key)
        } else {
            None
        };
        let mut nodes = interior.to_vec();
        nodes.sort_unstable();
        let len = dp_len(inst, start, end, &nodes);
        if let Some(key) = key {
            self.cache.lock().unwrap().put(key, len);
        }
        Ok(len)
    }

    /// True iff some path over the same nodes with the same endpoints is
    /// strictly shorter than `p`. Intermediate nodes must be customers.
    pub fn is_violating_path(&self, inst: &Instance, p: &[usize]) -> Result<bool, TspError> {
        if p.len() < 3 {
            return Err(TspError::BadQuery("path needs at least 3 nodes".into()));
        }
        let interior = &p[1..p.len() - 1];
        if interior.contains(&0) {
            return Err(TspError::BadQuery(
                "depot as intermediate node violates the path contract".into(),
            ));
        }
        let len = path_length(inst, p);
        let best = self.path_len_parts(inst, p[0], p[p.len() - 1], interior)?;
        Ok(best < len - LEN_TOL)
    }

    pub fn is_tsp_optimal_route(&self, inst: &Instance, r: &Route) -> Result<bool, TspError> {
        let customers: Vec<usize> = r.seq().to_vec();
        let best = self.tour_len(inst, &customers)?;
        Ok(r.length <= best + LEN_TOL)
    }

    /// Convert a route into the optimal tour over the same customers.
    pub fn optimalize_route(&self, inst: &Instance, r: &Route) -> Result<Route, TspError> {
        let (order, _) = self.tour(inst, r.seq())?;
        Ok(Route::new(inst, order).expect("tour over valid customers"))
    }
}

/// Subset DP returning only the optimal length.
///
/// `g[mask][j]` is the exact left-to-right partial sum of the best order of
/// the nodes in `mask` that starts at `start` and currently ends at node
/// `nodes[j]`; additions happen in visiting order, so the returned minimum
/// is bit-identical to a brute-force enumeration of permutations.
fn dp_len(inst: &Instance, start: usize, end: usize, nodes: &[usize]) -> f64 {
    let k = nodes.len();
    let full = (1usize << k) - 1;
    let mut g = vec![f64::INFINITY; (full + 1) * k];
    for j in 0..k {
        g[(1 << j) * k + j] = inst.distance(start, nodes[j]);
    }
    for mask in 1..=full {
        for j in 0..k {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = g[mask * k + j];
            if !cur.is_finite() {
                continue;
            }
            for t in 0..k {
                if mask & (1 << t) != 0 {
                    continue;
                }
                let next = mask | (1 << t);
                let cand = cur + inst.distance(nodes[j], nodes[t]);
                if cand < g[next * k + t] {
                    g[next * k + t] = cand;
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    for j in 0..k {
        let cand = g[full * k + j] + inst.distance(nodes[j], end);
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Subset DP with parent tracking; returns the optimal visiting order.
/// Ties are broken toward the smallest predecessor and last-node index,
/// which makes the result deterministic.
fn dp_order(inst: &Instance, start: usize, end: usize, nodes: &[usize]) -> Vec<usize> {
    let k = nodes.len();
    let full = (1usize << k) - 1;
    let mut g = vec![f64::INFINITY; (full + 1) * k];
    let mut parent = vec![usize::MAX; (full + 1) * k];
    for j in 0..k {
        g[(1 << j) * k + j] = inst.distance(start, nodes[j]);
    }
    for mask in 1..=full {
        for j in 0..k {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = g[mask * k + j];
            if !cur.is_finite() {
                continue;
            }
            for t in 0..k {
                if mask & (1 << t) != 0 {
                    continue;
                }
                let next = mask | (1 << t);
                let cand = cur + inst.distance(nodes[j], nodes[t]);
                if cand < g[next * k + t] {
                    g[next * k + t] = cand;
                    parent[next * k + t] = j;
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut last = 0;
    for j in 0..k {
        let cand = g[full * k + j] + inst.distance(nodes[j], end);
        if cand < best {
            best = cand;
            last = j;
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut mask = full;
    let mut j = last;
    loop {
        order.push(nodes[j]);
        let p = parent[mask * k + j];
        mask &= !(1 << j);
        if mask == 0 {
            break;
        }
        j = p;
    }
    order.reverse();
    order
}
