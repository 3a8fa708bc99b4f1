//! Linear-programming engine behind the restricted master problem.
//!
//! A dense bounded-variable revised simplex: two phases with an artificial
//! starting basis, Dantzig pricing with a Bland fallback after degenerate
//! streaks, and an explicitly maintained basis inverse refactorized
//! periodically. Scale target is a few hundred rows and a few thousand
//! columns, which is all the master ever needs here.

const RC_TOL: f64 = 1e-7;
const PIV_TOL: f64 = 1e-9;
/// Steps below this make no usable progress and count toward the
/// anti-cycling fallback.
const PROGRESS_TOL: f64 = 1e-7;
const FEAS_TOL: f64 = 1e-7;
const REFRESH_EVERY: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
    Unbounded,
}

#[derive(Debug, Clone)]
struct Col {
    obj: f64,
    lb: f64,
    ub: f64,
    entries: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
struct Row {
    sense: Sense,
    rhs: f64,
}

/// Variable reference that stays stable across incremental model edits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRef {
    Col(usize),
    Slack(usize),
    Artificial { row: usize, negative: bool },
}

/// Basis snapshot for warm starts. Valid as long as no row is added and no
/// bound referenced by it changed; `solve` falls back to a cold start when
/// the snapshot no longer yields a primal-feasible basis.
#[derive(Debug, Clone)]
pub struct Basis {
    basic: Vec<VarRef>,
    at_upper: Vec<VarRef>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal value per structural column.
    pub primal: Vec<f64>,
    /// Dual value per row (raw sign convention of a minimization LP:
    /// nonpositive for binding `<=` rows, nonnegative for `>=` rows).
    pub duals: Vec<f64>,
    pub objective: f64,
    pub basis: Option<Basis>,
}

impl LpSolution {
    fn failed(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            duals: Vec::new(),
            objective: f64::NAN,
            basis: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct LpModel {
    cols: Vec<Col>,
    rows: Vec<Row>,
    iter_limit: u32,
}

impl LpModel {
    pub fn new() -> Self {
        LpModel {
            cols: Vec::new(),
            rows: Vec::new(),
            iter_limit: 200_000,
        }
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn set_iter_limit(&mut self, limit: u32) {
        self.iter_limit = limit;
    }

    /// Column indices are stable across all later edits.
    pub fn add_col(&mut self, obj: f64, lb: f64, ub: f64, entries: Vec<(usize, f64)>) -> usize {
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rows.len()));
        debug_assert!(lb <= ub);
        self.cols.push(Col {
            obj,
            lb,
            ub,
            entries,
        });
        self.cols.len() - 1
    }

    /// Row indices are stable across all later edits.
    pub fn add_row(&mut self, sense: Sense, rhs: f64, entries: &[(usize, f64)]) -> usize {
        let row = self.rows.len();
        self.rows.push(Row { sense, rhs });
        for &(col, coeff) in entries {
            self.cols[col].entries.push((row, coeff));
        }
        row
    }

    pub fn set_col_bounds(&mut self, col: usize, lb: f64, ub: f64) {
        debug_assert!(lb <= ub);
        self.cols[col].lb = lb;
        self.cols[col].ub = ub;
    }

    pub fn col_bounds(&self, col: usize) -> (f64, f64) {
        (self.cols[col].lb, self.cols[col].ub)
    }

    pub fn solve(&self, warm: Option<&Basis>) -> LpSolution {
        if self.cols.is_empty() {
            return LpSolution::failed(LpStatus::Infeasible);
        }
        Simplex::new(self).run(warm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
    Free,
}

struct Simplex<'a> {
    model: &'a LpModel,
    m: usize,
    nc: usize,
    /// Per internal variable: bounds and objective (structurals, slacks,
    /// then artificials).
    lb: Vec<f64>,
    ub: Vec<f64>,
    obj: Vec<f64>,
    art_negative: Vec<bool>,
    state: Vec<VarState>,
    basic: Vec<usize>,
    binv: Vec<f64>,
    x_basic: Vec<f64>,
    pivots_since_refresh: u32,
    iterations: u32,
}

enum StepOutcome {
    Optimal,
    Unbounded,
    Limit,
    NumericalFailure,
}

impl<'a> Simplex<'a> {
    fn new(model: &'a LpModel) -> Self {
        let m = model.rows.len();
        let nc = model.cols.len();
        let total = nc + 2 * m;
        let mut lb = vec![0.0; total];
        let mut ub = vec![0.0; total];
        let mut obj = vec![0.0; total];
        for (j, c) in model.cols.iter().enumerate() {
            lb[j] = c.lb;
            ub[j] = c.ub;
            obj[j] = c.obj;
        }
        for (i, r) in model.rows.iter().enumerate() {
            let (l, u) = match r.sense {
                Sense::Le => (0.0, f64::INFINITY),
                Sense::Eq => (0.0, 0.0),
                Sense::Ge => (f64::NEG_INFINITY, 0.0),
            };
            lb[nc + i] = l;
            ub[nc + i] = u;
        }
        for i in 0..m {
            lb[nc + m + i] = 0.0;
            ub[nc + m + i] = f64::INFINITY;
        }
        Simplex {
            model,
            m,
            nc,
            lb,
            ub,
            obj,
            art_negative: vec![false; m],
            state: vec![VarState::AtLower; total],
            basic: Vec::new(),
            binv: Vec::new(),
            x_basic: Vec::new(),
            pivots_since_refresh: 0,
            iterations: 0,
        }
    }

    #[inline]
    fn is_artificial(&self, var: usize) -> bool {
        var >= self.nc + self.m
    }

    /// Dense column of an internal variable.
    fn column(&self, var: usize, out: &mut [f64]) {
        out.fill(0.0);
        if var < self.nc {
            for &(r, v) in &self.model.cols[var].entries {
                out[r] += v;
            }
        } else if var < self.nc + self.m {
            out[var - self.nc] = 1.0;
        } else {
            let row = var - self.nc - self.m;
            out[row] = if self.art_negative[row] { -1.0 } else { 1.0 };
        }
    }

    fn nonbasic_value(&self, var: usize) -> f64 {
        match self.state[var] {
            VarState::AtLower => self.lb[var],
            VarState::AtUpper => self.ub[var],
            VarState::Free => 0.0,
            VarState::Basic(_) => unreachable!(),
        }
    }

    fn default_nonbasic_state(&self, var: usize) -> VarState {
        if self.lb[var].is_finite() {
            VarState::AtLower
        } else if self.ub[var].is_finite() {
            VarState::AtUpper
        } else {
            VarState::Free
        }
    }

    /// Residual b - A x over the current nonbasic values.
    fn residual(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.model.rows.iter().map(|row| row.rhs).collect();
        for var in 0..self.nc + 2 * self.m {
            if matches!(self.state[var], VarState::Basic(_)) {
                continue;
            }
            let v = self.nonbasic_value(var);
            if v == 0.0 {
                continue;
            }
            if var < self.nc {
                for &(row, coeff) in &self.model.cols[var].entries {
                    r[row] -= coeff * v;
                }
            } else if var < self.nc + self.m {
                r[var - self.nc] -= v;
            } else {
                let row = var - self.nc - self.m;
                r[row] -= if self.art_negative[row] { -v } else { v };
            }
        }
        r
    }

    /// Rebuild the basis inverse from scratch; false on a singular basis.
    fn refactorize(&mut self) -> bool {
        let m = self.m;
        let mut mat = vec![0.0; m * m];
        let mut col = vec![0.0; m];
        for (r, &var) in self.basic.iter().enumerate() {
            self.column(var, &mut col);
            for i in 0..m {
                mat[i * m + r] = col[i];
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for k in 0..m {
            let mut piv = k;
            let mut best = mat[k * m + k].abs();
            for r in k + 1..m {
                let v = mat[r * m + k].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-12 {
                return false;
            }
            if piv != k {
                for c in 0..m {
                    mat.swap(k * m + c, piv * m + c);
                    inv.swap(k * m + c, piv * m + c);
                }
            }
            let p = mat[k * m + k];
            for c in 0..m {
                mat[k * m + c] /= p;
                inv[k * m + c] /= p;
            }
            for r in 0..m {
                if r == k {
                    continue;
                }
                let f = mat[r * m + k];
                if f == 0.0 {
                    continue;
                }
                for c in 0..m {
                    mat[r * m + c] -= f * mat[k * m + c];
                    inv[r * m + c] -= f * inv[k * m + c];
                }
            }
        }
        self.binv = inv;
        self.pivots_since_refresh = 0;
        true
    }

    fn recompute_basics(&mut self) {
        let r = self.residual();
        let m = self.m;
        self.x_basic = (0..m)
            .map(|i| (0..m).map(|k| self.binv[i * m + k] * r[k]).sum())
            .collect();
    }

    fn duals(&self, costs: &[f64]) -> Vec<f64> {
        let m = self.m;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|r| costs[self.basic[r]] * self.binv[r * m + i])
                    .sum()
            })
            .collect()
    }

    fn reduced_cost(&self, var: usize, y: &[f64], costs: &[f64]) -> f64 {
        let mut d = costs[var];
        if var < self.nc {
            for &(row, coeff) in &self.model.cols[var].entries {
                d -= y[row] * coeff;
            }
        } else if var < self.nc + self.m {
            d -= y[var - self.nc];
        } else {
            let row = var - self.nc - self.m;
            d -= if self.art_negative[row] { -y[row] } else { y[row] };
        }
        d
    }

    /// Primal simplex loop for a given cost vector.
    fn optimize(&mut self, costs: &[f64]) -> StepOutcome {
        let total = self.nc + 2 * self.m;
        let mut degen_streak: u32 = 0;
        let mut bland = false;
        let mut w = vec![0.0; self.m];
        let mut a_col = vec![0.0; self.m];
        loop {
            self.iterations += 1;
            if self.iterations > self.model.iter_limit {
                return StepOutcome::Limit;
            }
            let y = self.duals(costs);

            // Entering variable.
            let mut enter: Option<(usize, f64, f64)> = None; // (var, |score|, direction)
            for var in 0..total {
                let (dir, score) = match self.state[var] {
                    VarState::Basic(_) => continue,
                    VarState::AtLower => {
                        if self.lb[var] == self.ub[var] {
                            continue;
                        }
                        let d = self.reduced_cost(var, &y, costs);
                        if d < -RC_TOL {
                            (1.0, -d)
                        } else {
                            continue;
                        }
                    }
                    VarState::AtUpper => {
                        if self.lb[var] == self.ub[var] {
                            continue;
                        }
                        let d = self.reduced_cost(var, &y, costs);
                        if d > RC_TOL {
                            (-1.0, d)
                        } else {
                            continue;
                        }
                    }
                    VarState::Free => {
                        let d = self.reduced_cost(var, &y, costs);
                        if d < -RC_TOL {
                            (1.0, -d)
                        } else if d > RC_TOL {
                            (-1.0, d)
                        } else {
                            continue;
                        }
                    }
                };
                match enter {
                    None => enter = Some((var, score, dir)),
                    Some((_, best, _)) if !bland && score > best => {
                        enter = Some((var, score, dir));
                    }
                    _ => {}
                }
                if bland {
                    break; // smallest index wins
                }
            }
            let Some((evar, _, dir)) = enter else {
                return StepOutcome::Optimal;
            };

            self.column(evar, &mut a_col);
            let m = self.m;
            for i in 0..m {
                w[i] = (0..m).map(|k| self.binv[i * m + k] * a_col[k]).sum();
            }

            // Ratio test: largest step the entering variable can take.
            let own_range = self.ub[evar] - self.lb[evar];
            let mut t_best = if own_range.is_finite() {
                own_range
            } else {
                f64::INFINITY
            };
            let mut blocker: Option<usize> = None; // row index
            for r in 0..m {
                let delta = dir * w[r];
                if delta > PIV_TOL {
                    let bound = self.lb[self.basic[r]];
                    if bound.is_finite() {
                        let t = (self.x_basic[r] - bound) / delta;
                        if t < t_best - 1e-12
                            || (t < t_best + 1e-12 && better_blocker(self, blocker, r, &w, bland))
                        {
                            t_best = t.max(0.0);
                            blocker = Some(r);
                        }
                    }
                } else if delta < -PIV_TOL {
                    let bound = self.ub[self.basic[r]];
                    if bound.is_finite() {
                        let t = (self.x_basic[r] - bound) / delta;
                        if t < t_best - 1e-12
                            || (t < t_best + 1e-12 && better_blocker(self, blocker, r, &w, bland))
                        {
                            t_best = t.max(0.0);
                            blocker = Some(r);
                        }
                    }
                }
            }

            if !t_best.is_finite() {
                return StepOutcome::Unbounded;
            }
            if t_best <= PROGRESS_TOL {
                degen_streak += 1;
                if degen_streak > 2 * (self.m as u32) + 20 {
                    bland = true;
                }
            } else {
                // Real progress; Bland's rule can stand down.
                degen_streak = 0;
                bland = false;
            }

            match blocker {
                None => {
                    // Bound flip: the entering variable crosses its own range.
                    for i in 0..m {
                        self.x_basic[i] -= t_best * dir * w[i];
                    }
                    self.state[evar] = if dir > 0.0 {
                        VarState::AtUpper
                    } else {
                        VarState::AtLower
                    };
                }
                Some(r) => {
                    let lvar = self.basic[r];
                    let enter_val = match self.state[evar] {
                        VarState::AtLower => self.lb[evar] + t_best,
                        VarState::AtUpper => self.ub[evar] - t_best,
                        VarState::Free => dir * t_best,
                        VarState::Basic(_) => unreachable!(),
                    };
                    for i in 0..m {
                        self.x_basic[i] -= t_best * dir * w[i];
                    }
                    self.state[lvar] = if dir * w[r] > 0.0 {
                        VarState::AtLower
                    } else {
                        VarState::AtUpper
                    };
                    self.basic[r] = evar;
                    self.state[evar] = VarState::Basic(r);
                    self.x_basic[r] = enter_val;

                    // Rank-one update of the basis inverse.
                    let p = w[r];
                    if p.abs() < PIV_TOL {
                        if !self.refactorize() {
                            return StepOutcome::NumericalFailure;
                        }
                        self.recompute_basics();
                        continue;
                    }
                    for c in 0..m {
                        self.binv[r * m + c] /= p;
                    }
                    for i in 0..m {
                        if i == r {
                            continue;
                        }
                        let f = w[i];
                        if f == 0.0 {
                            continue;
                        }
                        for c in 0..m {
                            self.binv[i * m + c] -= f * self.binv[r * m + c];
                        }
                    }
                    self.pivots_since_refresh += 1;
                    if self.pivots_since_refresh >= REFRESH_EVERY {
                        if !self.refactorize() {
                            return StepOutcome::NumericalFailure;
                        }
                        self.recompute_basics();
                    }
                }
            }
        }
    }

    fn var_ref(&self, var: usize) -> VarRef {
        if var < self.nc {
            VarRef::Col(var)
        } else if var < self.nc + self.m {
            VarRef::Slack(var - self.nc)
        } else {
            let row = var - self.nc - self.m;
            VarRef::Artificial {
                row,
                negative: self.art_negative[row],
            }
        }
    }

    fn resolve_ref(&self, r: VarRef) -> Option<usize> {
        match r {
            VarRef::Col(c) if c < self.nc => Some(c),
            VarRef::Slack(i) if i < self.m => Some(self.nc + i),
            VarRef::Artificial { row, .. } if row < self.m => Some(self.nc + self.m + row),
            _ => None,
        }
    }

    /// Try to install a warm basis; true on success (primal feasible).
    fn try_warm(&mut self, warm: &Basis) -> bool {
        if warm.basic.len() != self.m {
            return false;
        }
        let total = self.nc + 2 * self.m;
        // Outside phase one every artificial is pinned to zero.
        for i in 0..self.m {
            self.ub[self.nc + self.m + i] = 0.0;
        }
        for var in 0..total {
            self.state[var] = self.default_nonbasic_state(var);
        }
        let mut basic = Vec::with_capacity(self.m);
        for (row, &vref) in warm.basic.iter().enumerate() {
            let Some(var) = self.resolve_ref(vref) else {
                return false;
            };
            if let VarRef::Artificial { negative, .. } = vref {
                self.art_negative[var - self.nc - self.m] = negative;
            }
            if matches!(self.state[var], VarState::Basic(_)) {
                return false;
            }
            self.state[var] = VarState::Basic(row);
            basic.push(var);
        }
        for &vref in &warm.at_upper {
            let Some(var) = self.resolve_ref(vref) else {
                return false;
            };
            if matches!(self.state[var], VarState::Basic(_)) {
                return false;
            }
            if !self.ub[var].is_finite() {
                return false;
            }
            self.state[var] = VarState::AtUpper;
        }
        self.basic = basic;
        if !self.refactorize() {
            return false;
        }
        self.recompute_basics();
        for r in 0..self.m {
            let var = self.basic[r];
            let v = self.x_basic[r];
            if v < self.lb[var] - FEAS_TOL || v > self.ub[var] + FEAS_TOL {
                return false;
            }
        }
        true
    }

    fn install_artificial_basis(&mut self) {
        let total = self.nc + 2 * self.m;
        for var in 0..total {
            self.state[var] = self.default_nonbasic_state(var);
        }
        let r = self.residual();
        self.basic = Vec::with_capacity(self.m);
        self.x_basic = Vec::with_capacity(self.m);
        let m = self.m;
        for i in 0..m {
            self.art_negative[i] = r[i] < 0.0;
            let var = self.nc + m + i;
            self.ub[var] = f64::INFINITY;
            self.state[var] = VarState::Basic(i);
            self.basic.push(var);
            self.x_basic.push(r[i].abs());
        }
        self.binv = vec![0.0; m * m];
        for i in 0..m {
            self.binv[i * m + i] = if self.art_negative[i] { -1.0 } else { 1.0 };
        }
        self.pivots_since_refresh = 0;
    }

    fn run(mut self, warm: Option<&Basis>) -> LpSolution {
        let total = self.nc + 2 * self.m;
        let mut warm_ok = false;
        if let Some(b) = warm {
            warm_ok = self.try_warm(b);
        }
        if !warm_ok {
            self.install_artificial_basis();
            let needs_phase1 = (0..self.m).any(|i| {
                self.is_artificial(self.basic[i]) && self.x_basic[i].abs() > FEAS_TOL
            });
            if needs_phase1 {
                let mut p1 = vec![0.0; total];
                for i in 0..self.m {
                    p1[self.nc + self.m + i] = 1.0;
                }
                match self.optimize(&p1) {
                    StepOutcome::Optimal => {}
                    StepOutcome::Limit => return LpSolution::failed(LpStatus::IterationLimit),
                    StepOutcome::Unbounded | StepOutcome::NumericalFailure => {
                        return LpSolution::failed(LpStatus::IterationLimit)
                    }
                }
                let infeas: f64 = (0..self.m)
                    .filter(|&i| self.is_artificial(self.basic[i]))
                    .map(|i| self.x_basic[i].max(0.0))
                    .sum();
                if infeas > FEAS_TOL {
                    return LpSolution::failed(LpStatus::Infeasible);
                }
            }
            // Pin artificials to zero for phase two.
            for i in 0..self.m {
                let var = self.nc + self.m + i;
                self.ub[var] = 0.0;
                if !matches!(self.state[var], VarState::Basic(_)) {
                    self.state[var] = VarState::AtLower;
                }
            }
        }

        let costs = self.obj.clone();
        let status = match self.optimize(&costs) {
            StepOutcome::Optimal => LpStatus::Optimal,
            StepOutcome::Unbounded => return LpSolution::failed(LpStatus::Unbounded),
            StepOutcome::Limit | StepOutcome::NumericalFailure => LpStatus::IterationLimit,
        };

        let mut primal = vec![0.0; self.nc];
        for var in 0..self.nc {
            primal[var] = match self.state[var] {
                VarState::Basic(r) => self.x_basic[r],
                _ => self.nonbasic_value(var),
            };
        }
        let objective = primal
            .iter()
            .zip(self.model.cols.iter())
            .map(|(x, c)| x * c.obj)
            .sum();
        let duals = self.duals(&costs);
        let basis = Basis {
            basic: self.basic.iter().map(|&v| self.var_ref(v)).collect(),
            at_upper: (0..total)
                .filter(|&v| self.state[v] == VarState::AtUpper)
                .map(|v| self.var_ref(v))
                .collect(),
        };
        LpSolution {
            status,
            primal,
            duals,
            objective,
            basis: Some(basis),
        }
    }
}

/// Tie-break for the ratio test: prefer the larger pivot magnitude for
/// stability; under Bland's rule prefer the smaller variable index.
fn better_blocker(s: &Simplex, current: Option<usize>, cand: usize, w: &[f64], bland: bool) -> bool {
    match current {
        None => true,
        Some(cur) => {
            if bland {
                s.basic[cand] < s.basic[cur]
            } else {
                w[cand].abs() > w[cur].abs()
            }
        }
    }
}
