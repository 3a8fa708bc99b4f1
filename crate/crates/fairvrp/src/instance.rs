//! Problem data: instances, distances, demands, budgets, and routes.
//!
//! An instance lives on a complete directed graph with node 0 as the depot
//! and customers 1..=n. Distances are Euclidean (exact or rounded to the
//! nearest integer) when coordinates are given, or taken verbatim from an
//! explicit matrix.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used for all length and budget comparisons.
pub const LEN_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("invalid route: {0}")]
    Route(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rounding {
    Exact,
    NearestInt,
}

/// Total-distance budget, either explicit or as a percentage of the
/// minimum total routing distance (resolved by the solver).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Budget {
    Explicit(f64),
    Percent(f64),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    /// Number of customers; nodes are 0..=n with 0 the depot.
    pub n: usize,
    pub coords: Option<Vec<(f64, f64)>>,
    /// Dense (n+1) x (n+1) distance matrix, row-major.
    dist: Vec<f64>,
    /// Demand per node; index 0 is the depot and holds 0.
    pub demand: Vec<u32>,
    pub capacity: u32,
    pub fleet: u32,
    pub budget: Budget,
    pub rounding: Rounding,
}

impl Instance {
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<(f64, f64)>,
        demands: Vec<u32>,
        capacity: u32,
        fleet: u32,
        budget: Budget,
        rounding: Rounding,
    ) -> Result<Self, InstanceError> {
        if coords.is_empty() {
            return Err(InstanceError::Invalid("no nodes given".into()));
        }
        let n = coords.len() - 1;
        if demands.len() != n {
            return Err(InstanceError::Invalid(format!(
                "expected {} demands, got {}",
                n,
                demands.len()
            )));
        }
        let mut demand = Vec::with_capacity(n + 1);
        demand.push(0);
        demand.extend(demands);
        let dist = materialize_distances(&coords, rounding);
        let inst = Instance {
            name: name.into(),
            n,
            coords: Some(coords),
            dist,
            demand,
            capacity,
            fleet,
            budget,
            rounding,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Build from an explicit distance matrix (row-major over nodes 0..=n).
    pub fn from_matrix(
        name: impl Into<String>,
        matrix: Vec<Vec<f64>>,
        demands: Vec<u32>,
        capacity: u32,
        fleet: u32,
        budget: Budget,
    ) -> Result<Self, InstanceError> {
        let m = matrix.len();
        if m == 0 {
            return Err(InstanceError::Invalid("empty distance matrix".into()));
        }
        let n = m - 1;
        if demands.len() != n {
            return Err(InstanceError::Invalid(format!(
                "expected {} demands, got {}",
                n,
                demands.len()
            )));
        }
        let mut dist = Vec::with_capacity(m * m);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != m {
                return Err(InstanceError::Invalid(format!(
                    "matrix row {i} has length {}, expected {m}",
                    row.len()
                )));
            }
            dist.extend_from_slice(row);
        }
        let mut demand = Vec::with_capacity(n + 1);
        demand.push(0);
        demand.extend(demands);
        let inst = Instance {
            name: name.into(),
            n,
            coords: None,
            dist,
            demand,
            capacity,
            fleet,
            budget,
            rounding: Rounding::Exact,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<(), InstanceError> {
        if self.n == 0 {
            return Err(InstanceError::Invalid("instance has no customers".into()));
        }
        if self.capacity == 0 {
            return Err(InstanceError::Invalid("capacity Q must be positive".into()));
        }
        if self.fleet == 0 {
            return Err(InstanceError::Invalid("fleet size K must be positive".into()));
        }
        for i in self.customers() {
            let d = self.demand[i];
            if d == 0 {
                return Err(InstanceError::Invalid(format!(
                    "customer {i} has nonpositive demand"
                )));
            }
            if d > self.capacity {
                return Err(InstanceError::Invalid(format!(
                    "customer {i} has demand {d} exceeding capacity {}",
                    self.capacity
                )));
            }
        }
        let total: u64 = self.demand.iter().map(|&d| d as u64).sum();
        let cap = self.fleet as u64 * self.capacity as u64;
        if total > cap {
            return Err(InstanceError::Invalid(format!(
                "total demand {total} exceeds fleet capacity {cap}"
            )));
        }
        match self.budget {
            Budget::Explicit(l) if !(l > 0.0) => {
                return Err(InstanceError::Invalid("budget must be positive".into()))
            }
            Budget::Percent(p) if !(p >= 100.0) => {
                return Err(InstanceError::Invalid(
                    "percentage budget below 100% is infeasible by definition".into(),
                ))
            }
            _ => {}
        }
        let m = self.n + 1;
        for i in 0..m {
            if self.dist[i * m + i] != 0.0 {
                return Err(InstanceError::Invalid(format!("d({i},{i}) is nonzero")));
            }
            for j in 0..m {
                let d = self.dist[i * m + j];
                if !(d >= 0.0) {
                    return Err(InstanceError::Invalid(format!("d({i},{j}) is negative")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * (self.n + 1) + j]
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn customers(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn total_demand(&self) -> u64 {
        self.demand.iter().map(|&d| d as u64).sum()
    }

    /// Explicit budget if one is available without solving a baseline.
    pub fn explicit_budget(&self) -> Option<f64> {
        match self.budget {
            Budget::Explicit(l) => Some(l),
            Budget::Percent(_) => None,
        }
    }

    /// Replace the budget with a concrete value.
    pub fn with_budget(&self, l: f64) -> Instance {
        let mut inst = self.clone();
        inst.budget = Budget::Explicit(l);
        inst
    }

    /// Parse the line-oriented instance format.
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        #[derive(PartialEq)]
        enum Section {
            Header,
            Coords,
            Demands,
        }
        let mut name = String::from("unnamed");
        let mut n: Option<usize> = None;
        let mut k: Option<u32> = None;
        let mut q: Option<u32> = None;
        let mut budget: Option<Budget> = None;
        let mut rounding = Rounding::Exact;
        let mut coords: Vec<Option<(f64, f64)>> = Vec::new();
        let mut demands: Vec<Option<u32>> = Vec::new();
        let mut section = Section::Header;

        let err = |line: usize, msg: String| InstanceError::Parse { line, msg };

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "NAME" => {
                    name = tokens.get(1).unwrap_or(&"unnamed").to_string();
                }
                "N" => {
                    let v = tokens
                        .get(1)
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| err(line_no, "N expects an integer".into()))?;
                    n = Some(v);
                    coords = vec![None; v + 1];
                    demands = vec![None; v + 1];
                }
                "K" => {
                    k = Some(
                        tokens
                            .get(1)
                            .and_then(|t| t.parse::<u32>().ok())
                            .ok_or_else(|| err(line_no, "K expects an integer".into()))?,
                    );
                }
                "Q" => {
                    q = Some(
                        tokens
                            .get(1)
                            .and_then(|t| t.parse::<u32>().ok())
                            .ok_or_else(|| err(line_no, "Q expects an integer".into()))?,
                    );
                }
                "BUDGET" => {
                    let v = tokens
                        .get(1)
                        .and_then(|t| t.parse::<f64>().ok())
                        .ok_or_else(|| err(line_no, "BUDGET expects a number".into()))?;
                    budget = Some(Budget::Explicit(v));
                }
                "BUDGET_PCT" => {
                    let v = tokens
                        .get(1)
                        .and_then(|t| t.parse::<f64>().ok())
                        .ok_or_else(|| err(line_no, "BUDGET_PCT expects a number".into()))?;
                    if v < 100.0 {
                        return Err(err(line_no, "BUDGET_PCT below 100 is infeasible".into()));
                    }
                    budget = Some(Budget::Percent(v));
                }
                "ROUNDING" => {
                    rounding = match tokens.get(1).copied() {
                        Some("EXACT") => Rounding::Exact,
                        Some("INT") => Rounding::NearestInt,
                        other => {
                            return Err(err(
                                line_no,
                                format!("unknown rounding mode {:?}", other.unwrap_or("")),
                            ))
                        }
                    };
                }
                "COORDS" => section = Section::Coords,
                "DEMANDS" => section = Section::Demands,
                _ => match section {
                    Section::Coords => {
                        if tokens.len() != 3 {
                            return Err(err(line_no, "coordinate line expects `id x y`".into()));
                        }
                        let id: usize = tokens[0]
                            .parse()
                            .map_err(|_| err(line_no, "bad node id".into()))?;
                        let x: f64 = tokens[1]
                            .parse()
                            .map_err(|_| err(line_no, "bad x coordinate".into()))?;
                        let y: f64 = tokens[2]
                            .parse()
                            .map_err(|_| err(line_no, "bad y coordinate".into()))?;
                        if id >= coords.len() {
                            return Err(err(line_no, format!("node id {id} out of range")));
                        }
                        coords[id] = Some((x, y));
                    }
                    Section::Demands => {
                        if tokens.len() != 2 {
                            return Err(err(line_no, "demand line expects `id d`".into()));
                        }
                        let id: usize = tokens[0]
                            .parse()
                            .map_err(|_| err(line_no, "bad node id".into()))?;
                        let d: u32 = tokens[1]
                            .parse()
                            .map_err(|_| err(line_no, "bad demand".into()))?;
                        if id == 0 || id >= demands.len() {
                            return Err(err(line_no, format!("customer id {id} out of range")));
                        }
                        demands[id] = Some(d);
                    }
                    Section::Header => {
                        return Err(err(line_no, format!("unknown header line {:?}", tokens[0])));
                    }
                },
            }
        }

        n.ok_or_else(|| err(0, "missing N header".into()))?;
        let k = k.ok_or_else(|| err(0, "missing K header".into()))?;
        let q = q.ok_or_else(|| err(0, "missing Q header".into()))?;
        let budget = budget.ok_or_else(|| err(0, "missing BUDGET or BUDGET_PCT header".into()))?;
        let coords: Vec<(f64, f64)> = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| err(0, format!("missing coordinates for node {i}"))))
            .collect::<Result<_, _>>()?;
        let demands: Vec<u32> = demands
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(i, d)| d.ok_or_else(|| err(0, format!("missing demand for customer {i}"))))
            .collect::<Result<_, _>>()?;
        Instance::from_coords(name, coords, demands, q, k, budget, rounding)
    }

    /// Serialize back to the instance file format. `parse(emit(x))`
    /// reproduces `x` bit-exactly for coordinate-based instances.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("NAME {}\n", self.name));
        out.push_str(&format!("N {}\n", self.n));
        out.push_str(&format!("K {}\n", self.fleet));
        out.push_str(&format!("Q {}\n", self.capacity));
        match self.budget {
            Budget::Explicit(l) => out.push_str(&format!("BUDGET {l}\n")),
            Budget::Percent(p) => out.push_str(&format!("BUDGET_PCT {p}\n")),
        }
        out.push_str(match self.rounding {
            Rounding::Exact => "ROUNDING EXACT\n",
            Rounding::NearestInt => "ROUNDING INT\n",
        });
        if let Some(coords) = &self.coords {
            out.push_str("COORDS\n");
            for (i, (x, y)) in coords.iter().enumerate() {
                out.push_str(&format!("{i} {x} {y}\n"));
            }
        }
        out.push_str("DEMANDS\n");
        for i in self.customers() {
            out.push_str(&format!("{i} {}\n", self.demand[i]));
        }
        out
    }
}

fn materialize_distances(coords: &[(f64, f64)], rounding: Rounding) -> Vec<f64> {
    let m = coords.len();
    let mut dist = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let dx = coords[i].0 - coords[j].0;
            let dy = coords[i].1 - coords[j].1;
            let d = (dx * dx + dy * dy).sqrt();
            dist[i * m + j] = match rounding {
                Rounding::Exact => d,
                Rounding::NearestInt => (d + 0.5).floor(),
            };
        }
    }
    dist
}

/// Budget from a percentage of a baseline total distance.
pub fn budget_from_percentage(pct: f64, baseline: f64) -> Result<f64, InstanceError> {
    if pct < 100.0 {
        return Err(InstanceError::Invalid(format!(
            "budget percentage {pct} is below 100"
        )));
    }
    if !(baseline > 0.0) {
        return Err(InstanceError::Invalid(format!(
            "baseline distance {baseline} must be positive"
        )));
    }
    Ok(baseline * pct / 100.0)
}

/// Set of customers, backed by a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CustomerSet {
    bits: Vec<u64>,
}

impl CustomerSet {
    pub fn new(n: usize) -> Self {
        CustomerSet {
            bits: vec![0; n / 64 + 1],
        }
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = CustomerSet::new(n);
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits
            .get(i / 64)
            .map_or(false, |w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &CustomerSet) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a & !b == 0)
            && self.bits[other.bits.len().min(self.bits.len())..]
                .iter()
                .all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits & (1 << b) != 0)
                .map(move |b| w * 64 + b)
        })
    }
}

/// An elementary depot-to-depot route over one or more customers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Route {
    seq: Vec<usize>,
    pub length: f64,
    pub load: u32,
}

impl Route {
    /// Validates elementarity and capacity, and computes length and load.
    pub fn new(inst: &Instance, seq: Vec<usize>) -> Result<Route, InstanceError> {
        if seq.is_empty() {
            return Err(InstanceError::Route("route visits no customer".into()));
        }
        let mut seen = CustomerSet::new(inst.n);
        let mut load: u64 = 0;
        for &c in &seq {
            if c == 0 || c > inst.n {
                return Err(InstanceError::Route(format!("invalid customer id {c}")));
            }
            if seen.contains(c) {
                return Err(InstanceError::Route(format!("customer {c} repeated")));
            }
            seen.insert(c);
            load += inst.demand[c] as u64;
        }
        if load > inst.capacity as u64 {
            return Err(InstanceError::Route(format!(
                "route load {load} exceeds capacity {}",
                inst.capacity
            )));
        }
        let length = route_length(inst, &seq);
        Ok(Route {
            seq,
            length,
            load: load as u32,
        })
    }

    #[inline]
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    #[inline]
    pub fn last(&self) -> usize {
        *self.seq.last().unwrap()
    }

    pub fn covered(&self, n: usize) -> CustomerSet {
        CustomerSet::from_iter(n, self.seq.iter().copied())
    }

    pub fn covers(&self, c: usize) -> bool {
        self.seq.contains(&c)
    }

    /// Directed arcs of the route, including both depot arcs.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let first = std::iter::once((0, self.seq[0]));
        let mid = self.seq.windows(2).map(|w| (w[0], w[1]));
        let last = std::iter::once((self.last(), 0));
        first.chain(mid).chain(last)
    }

    pub fn uses_arc(&self, a: (usize, usize)) -> bool {
        self.arcs().any(|b| b == a)
    }
}

/// Length of a depot-to-depot tour over `seq`, accumulated left to right.
/// All length computations in the crate go through this function so that
/// equal sequences always produce bit-identical totals.
pub fn route_length(inst: &Instance, seq: &[usize]) -> f64 {
    let mut acc = inst.distance(0, seq[0]);
    for w in seq.windows(2) {
        acc += inst.distance(w[0], w[1]);
    }
    acc += inst.distance(*seq.last().unwrap(), 0);
    acc
}

/// Length of an open path given as a node sequence (nodes may include the
/// depot at either end), accumulated left to right.
pub fn path_length(inst: &Instance, nodes: &[usize]) -> f64 {
    let mut acc = 0.0;
    for w in nodes.windows(2) {
        acc += inst.distance(w[0], w[1]);
    }
    acc
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// The 8-node demo instance: depot plus seven unit-demand customers,
    /// two vehicles of capacity 4, budget 105% of the distance optimum.
    pub fn demo8() -> Instance {
        demo8_with_budget(Budget::Percent(105.0))
    }

    pub fn demo8_with_budget(budget: Budget) -> Instance {
        Instance::from_coords(
            "demo8",
            demo8_coords(),
            vec![1; 7],
            4,
            2,
            budget,
            Rounding::Exact,
        )
        .unwrap()
    }

    pub fn demo8_coords() -> Vec<(f64, f64)> {
        vec![
            (500.0, 80.0),
            (600.0, 400.0),
            (750.0, 600.0),
            (850.0, 350.0),
            (350.0, 250.0),
            (180.0, 370.0),
            (120.0, 570.0),
            (280.0, 710.0),
        ]
    }

    pub fn random_instance(seed: u64, n: usize, k: u32, q: u32, budget: Budget) -> Instance {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<(f64, f64)> = (0..=n)
            .map(|_| (rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
            .collect();
        Instance::from_coords("rand", coords, vec![1; n], q, k, budget, Rounding::Exact).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    #[test]
    fn parses_demo_instance_file() {
        let text = "\
# demo instance
NAME demo8
N 7
K 2
Q 7
BUDGET_PCT 110
ROUNDING EXACT
COORDS
0 500 80
1 600 400
2 750 600
3 850 350
4 350 250
5 180 370
6 120 570
7 280 710
DEMANDS
1 1
2 1
3 1
4 1
5 1
6 1
7 1
";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.n, 7);
        assert_eq!(inst.fleet, 2);
        assert_eq!(inst.capacity, 7);
        assert_eq!(inst.budget, Budget::Percent(110.0));
    }

    #[test]
    fn parses_minimal_instance() {
        let text = "N 1\nK 1\nQ 1\nBUDGET 10\nCOORDS\n0 0 0\n1 1 0\nDEMANDS\n1 1\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.n, 1);
        assert_eq!(inst.distance(0, 1), 1.0);
    }

    #[test]
    fn rejects_demand_above_capacity() {
        let text = "N 1\nK 1\nQ 3\nBUDGET 10\nCOORDS\n0 0 0\n1 1 0\nDEMANDS\n1 5\n";
        let err = Instance::parse(text).unwrap_err();
        assert!(err.to_string().contains("demand"), "{err}");
    }

    #[test]
    fn rejects_malformed_lines_with_line_number() {
        let text = "N 1\nK 1\nQ 1\nBUDGET 10\nCOORDS\n0 0\n";
        let err = Instance::parse(text).unwrap_err();
        assert!(err.to_string().contains("line 6"), "{err}");
    }

    #[test]
    fn exact_distance_matches_hand_arithmetic() {
        let inst = demo8();
        // depot (500,80) -> customer 1 (600,400): sqrt(100^2 + 320^2)
        assert!((inst.distance(0, 1) - 335.2611).abs() < 1e-4);
        assert_eq!(inst.distance(3, 3), 0.0);
    }

    #[test]
    fn nearest_int_distance_rounds() {
        let inst = Instance::from_coords(
            "r",
            demo8_coords(),
            vec![1; 7],
            7,
            2,
            Budget::Explicit(1e6),
            Rounding::NearestInt,
        )
        .unwrap();
        assert_eq!(inst.distance(0, 1), 335.0);
    }

    #[test]
    fn budget_percentage_arithmetic() {
        assert_eq!(budget_from_percentage(105.0, 1000.0).unwrap(), 1050.0);
        assert_eq!(budget_from_percentage(100.0, 1000.0).unwrap(), 1000.0);
        assert!((budget_from_percentage(110.0, 2820.08).unwrap() - 3102.088).abs() < 1e-9);
        assert!(budget_from_percentage(99.0, 1000.0).is_err());
    }

    #[test]
    fn emit_parse_round_trip_is_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(1..=9);
            let coords: Vec<(f64, f64)> = (0..=n)
                .map(|_| (rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
                .collect();
            let demands: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            let total: u32 = demands.iter().sum();
            let inst = Instance::from_coords(
                "rt",
                coords,
                demands,
                4,
                total.div_ceil(4) + 1,
                Budget::Explicit(rng.gen_range(100.0..10000.0)),
                Rounding::Exact,
            )
            .unwrap();
            let again = Instance::parse(&inst.emit()).unwrap();
            assert_eq!(inst.coords, again.coords);
            assert_eq!(inst.demand, again.demand);
            assert_eq!(inst.budget, again.budget);
            assert_eq!(inst.dist, again.dist);
        }
    }

    #[test]
    fn triangle_inequality_on_random_coords() {
        let inst = random_instance(3, 8, 2, 8, Budget::Explicit(1e6));
        for i in 0..=8 {
            for j in 0..=8 {
                for k in 0..=8 {
                    assert!(inst.distance(i, j) <= inst.distance(i, k) + inst.distance(k, j) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn route_validation_and_length() {
        let inst = demo8();
        let r = Route::new(&inst, vec![1, 2, 3]).unwrap();
        assert!((r.length - 1296.56).abs() < 0.01);
        assert_eq!(r.load, 3);
        assert_eq!(r.last(), 3);
        assert!(Route::new(&inst, vec![1, 1]).is_err());
        assert!(Route::new(&inst, vec![]).is_err());
        let arcs: Vec<_> = r.arcs().collect();
        assert_eq!(arcs, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
    }

    #[test]
    fn customer_set_basics() {
        let mut s = CustomerSet::new(70);
        s.insert(1);
        s.insert(65);
        assert!(s.contains(1) && s.contains(65) && !s.contains(2));
        assert_eq!(s.len(), 2);
        let t = CustomerSet::from_iter(70, [1, 65, 3]);
        assert!(s.is_subset(&t));
        assert!(!t.is_subset(&s));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![1, 3, 65]);
    }
}
