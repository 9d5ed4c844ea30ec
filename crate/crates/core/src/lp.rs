//! Exact linear programming.
//!
//! A dense two-phase primal simplex over any [`Scalar`], using Bland's rule
//! for both the entering and the leaving variable so that it terminates on
//! degenerate programs. Results are exact: a feasible outcome carries a basic
//! solution, an infeasible one carries a Farkas ray over the input rows.
//!
//! The kernel is sized for instances with a few hundred columns and at most a
//! few dozen rows.

use std::fmt::{self, Write as _};


use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row<S> {
    /// Sparse `(variable, coefficient)` pairs; repeated indices are summed.
    pub coeffs: Vec<(usize, S)>,
    pub relation: Relation,
    pub rhs: S,
}

/// `None` stands for an infinite bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarBound<S> {
    pub lower: Option<S>,
    pub upper: Option<S>,
}

impl<S: Scalar> VarBound<S> {
    pub fn nonnegative() -> Self {
        VarBound {
            lower: Some(S::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBound {
            lower: None,
            upper: None,
        }
    }

    fn contains(&self, v: &S) -> bool {
        self.lower.as_ref().map_or(true, |l| v >= l) && self.upper.as_ref().map_or(true, |u| v <= u)
    }
}

/// A minimization program. Variables default to `[0, +∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram<S> {
    num_vars: usize,
    objective: Vec<S>,
    rows: Vec<Row<S>>,
    bounds: Vec<VarBound<S>>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![S::zero(); num_vars],
            rows: Vec::new(),
            bounds: vec![VarBound::nonnegative(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row<S>] {
        &self.rows
    }

    pub fn objective(&self) -> &[S] {
        &self.objective
    }

    pub fn bounds(&self) -> &[VarBound<S>] {
        &self.bounds
    }

    pub fn set_objective(&mut self, var: usize, coeff: S) {
        self.objective[var] = coeff;
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<S>, upper: Option<S>) {
        self.bounds[var] = VarBound { lower, upper };
    }

    /// Appends a row and returns its index.
    pub fn add_row(&mut self, coeffs: Vec<(usize, S)>, relation: Relation, rhs: S) -> usize {
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
        self.rows.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars || self.bounds.len() != self.num_vars {
            return Err(Error::MalformedProgram(format!(
                "objective/bounds length does not match {} variables",
                self.num_vars
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(&(j, _)) = row.coeffs.iter().find(|(j, _)| *j >= self.num_vars) {
                return Err(Error::MalformedProgram(format!(
                    "row {r} references variable {j} of {}",
                    self.num_vars
                )));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(Error::MalformedProgram(format!(
                        "variable {j} has empty domain [{l}, {u}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Left-hand side of a row at `x`.
    pub fn row_activity(&self, row: usize, x: &[S]) -> S {
        self.rows[row]
            .coeffs
            .iter()
            .fold(S::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone())
    }

    pub fn objective_value(&self, x: &[S]) -> S {
        self.objective
            .iter()
            .zip(x)
            .fold(S::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
    }

    fn summed_row(&self, row: usize) -> Vec<(usize, S)> {
        let mut dense: std::collections::BTreeMap<usize, S> = Default::default();
        for (j, a) in &self.rows[row].coeffs {
            let e = dense.entry(*j).or_insert_with(S::zero);
            *e = e.clone() + a.clone();
        }
        dense.into_iter().filter(|(_, a)| !a.is_zero()).collect()
    }

    /// One line per objective, row and non-default bound; rationals as `p/q`.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        let term_list = |coeffs: &[(usize, S)]| -> String {
            if coeffs.is_empty() {
                return "0".to_string();
            }
            coeffs
                .iter()
                .map(|(j, a)| format!("{a} x{j}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let obj: Vec<(usize, S)> = self
            .objective
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let _ = writeln!(out, "vars {}", self.num_vars);
        let _ = writeln!(out, "min {}", term_list(&obj));
        for r in 0..self.rows.len() {
            let row = &self.rows[r];
            let _ = writeln!(
                out,
                "r{r}: {} {} {}",
                term_list(&self.summed_row(r)),
                row.relation.symbol(),
                row.rhs
            );
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if *b == VarBound::nonnegative() {
                continue;
            }
            let lo = b.lower.as_ref().map_or("-inf".to_string(), |v| v.to_string());
            let hi = b.upper.as_ref().map_or("+inf".to_string(), |v| v.to_string());
            let _ = writeln!(out, "x{j} in [{lo}, {hi}]");
        }
        out
    }
}

impl<S: Scalar> fmt::Display for LinearProgram<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SolverStats {
    pub pivots: usize,
    /// Rows and columns of the standard-form tableau, artificials included.
    pub rows: usize,
    pub columns: usize,
}

impl SolverStats {
    pub fn absorb(&mut self, other: SolverStats) {
        self.pivots += other.pivots;
        self.rows = self.rows.max(other.rows);
        self.columns = self.columns.max(other.columns);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome<S> {
    pub status: LpStatus,
    /// A basic optimal solution (Feasible only).
    pub solution: Option<Vec<S>>,
    pub objective_value: Option<S>,
    /// Row multipliers proving infeasibility (Infeasible only); see
    /// [`verify_farkas`] for the sign convention.
    pub farkas_ray: Option<Vec<S>>,
    /// Optimal dual multipliers per row (Feasible only): nonpositive on `<=`
    /// rows, nonnegative on `>=` rows for this minimization.
    pub duals: Option<Vec<S>>,
    pub stats: SolverStats,
}

impl<S: Scalar> LpOutcome<S> {
    fn infeasible(ray: Vec<S>, stats: SolverStats) -> Self {
        LpOutcome {
            status: LpStatus::Infeasible,
            solution: None,
            objective_value: None,
            farkas_ray: Some(ray),
            duals: None,
            stats,
        }
    }
}

/// True iff `x` satisfies every row and bound exactly.
pub fn verify_solution<S: Scalar>(lp: &LinearProgram<S>, x: &[S]) -> bool {
    if x.len() != lp.num_vars {
        return false;
    }
    if !lp.bounds.iter().zip(x).all(|(b, v)| b.contains(v)) {
        return false;
    }
    (0..lp.rows.len()).all(|r| {
        let lhs = lp.row_activity(r, x);
        let rhs = &lp.rows[r].rhs;
        match lp.rows[r].relation {
            Relation::Le => &lhs <= rhs,
            Relation::Eq => &lhs == rhs,
            Relation::Ge => &lhs >= rhs,
        }
    })
}

/// Checks a Farkas ray `λ` (one entry per row).
///
/// Sign convention: `λ_r >= 0` on `<=` rows, `λ_r <= 0` on `>=` rows, free on
/// `=` rows. Every feasible `x` then satisfies `Σ λ_r a_r·x <= Σ λ_r b_r`. The
/// ray is valid iff the minimum of the aggregated left side over the variable
/// bounds is finite and strictly exceeds the aggregated right side.
pub fn verify_farkas<S: Scalar>(lp: &LinearProgram<S>, ray: &[S]) -> bool {
    if ray.len() != lp.rows.len() {
        return false;
    }
    let mut agg = vec![S::zero(); lp.num_vars];
    let mut rhs = S::zero();
    for (row, lambda) in lp.rows.iter().zip(ray) {
        let sign_ok = match row.relation {
            Relation::Le => !lambda.is_negative(),
            Relation::Ge => !lambda.is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        if lambda.is_zero() {
            continue;
        }
        for (j, a) in &row.coeffs {
            agg[*j] = agg[*j].clone() + lambda.clone() * a.clone();
        }
        rhs = rhs + lambda.clone() * row.rhs.clone();
    }
    let mut lhs_min = S::zero();
    for (g, b) in agg.iter().zip(&lp.bounds) {
        if g.is_positive() {
            match &b.lower {
                Some(l) => lhs_min = lhs_min + g.clone() * l.clone(),
                None => return false,
            }
        } else if g.is_negative() {
            match &b.upper {
                Some(u) => lhs_min = lhs_min + g.clone() * u.clone(),
                None => return false,
            }
        }
    }
    lhs_min > rhs
}

/// Checks that `x` is a vertex-style solution: the number of variables off
/// their lower bound is at most the number of equality and active rows
/// (identically-zero rows excluded), counting active upper bounds as rows.
pub fn is_basic_solution<S: Scalar>(lp: &LinearProgram<S>, x: &[S]) -> bool {
    let mut off_bound = 0usize;
    let mut active = 0usize;
    for (v, b) in x.iter().zip(&lp.bounds) {
        let moved = match (&b.lower, &b.upper) {
            (Some(l), _) => v != l,
            (None, Some(u)) => v != u,
            (None, None) => !v.is_zero(),
        };
        if moved {
            off_bound += 1;
        }
        if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
            if v == u && l != u {
                active += 1;
            }
        }
    }
    for r in 0..lp.rows.len() {
        if lp.summed_row(r).is_empty() {
            continue;
        }
        match lp.rows[r].relation {
            Relation::Eq => active += 1,
            _ => {
                if lp.row_activity(r, x) == lp.rows[r].rhs {
                    active += 1;
                }
            }
        }
    }
    off_bound <= active
}

/// Solves `lp` exactly. See the module docs for the guarantees.
pub fn solve<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpOutcome<S>> {
    lp.validate()?;
    let std = match StandardForm::build(lp) {
        Ok(std) => std,
        Err(ray) => return Ok(LpOutcome::infeasible(ray, SolverStats::default())),
    };
    Ok(std.solve(lp))
}

/// How an original variable is expressed by standard-form columns:
/// `x = shift + Σ sign·col`.
struct VarMap<S> {
    shift: S,
    cols: Vec<(usize, bool)>,
}

enum RowOrigin {
    Original(usize),
    UpperBound,
}

struct StandardForm<S> {
    var_maps: Vec<VarMap<S>>,
    /// Dense rows over structural and slack columns, sign-normalized.
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    flipped: Vec<bool>,
    origin: Vec<RowOrigin>,
    /// Column giving the initial identity for each row (slack or artificial).
    unit_col: Vec<usize>,
    cost: Vec<S>,
    cost_offset: S,
    art_start: usize,
    ncols: usize,
}

impl<S: Scalar> StandardForm<S> {
    /// Returns `Err(ray)` when an identically-zero row is already violated.
    fn build(lp: &LinearProgram<S>) -> std::result::Result<Self, Vec<S>> {
        let mut var_maps = Vec::with_capacity(lp.num_vars);
        let mut n_struct = 0usize;
        let mut uppers: Vec<(usize, S)> = Vec::new();
        for b in &lp.bounds {
            let map = match (&b.lower, &b.upper) {
                (Some(l), upper) => {
                    let c = n_struct;
                    n_struct += 1;
                    if let Some(u) = upper {
                        uppers.push((c, u.clone() - l.clone()));
                    }
                    VarMap {
                        shift: l.clone(),
                        cols: vec![(c, true)],
                    }
                }
                (None, Some(u)) => {
                    let c = n_struct;
                    n_struct += 1;
                    VarMap {
                        shift: u.clone(),
                        cols: vec![(c, false)],
                    }
                }
                (None, None) => {
                    let c = n_struct;
                    n_struct += 2;
                    VarMap {
                        shift: S::zero(),
                        cols: vec![(c, true), (c + 1, false)],
                    }
                }
            };
            var_maps.push(map);
        }

        struct Pending<S> {
            coeffs: Vec<(usize, S)>,
            rhs: S,
            slack: Option<bool>,
            origin: RowOrigin,
        }
        let mut pending: Vec<Pending<S>> = Vec::new();
        for r in 0..lp.rows.len() {
            let row = &lp.rows[r];
            let summed = lp.summed_row(r);
            if summed.is_empty() {
                let ok = match row.relation {
                    Relation::Le => !row.rhs.is_negative(),
                    Relation::Eq => row.rhs.is_zero(),
                    Relation::Ge => !row.rhs.is_positive(),
                };
                if !ok {
                    let mut ray = vec![S::zero(); lp.rows.len()];
                    ray[r] = -row.rhs.signum();
                    return Err(ray);
                }
                continue;
            }
            let mut coeffs = Vec::new();
            let mut rhs = row.rhs.clone();
            for (j, a) in summed {
                let map = &var_maps[j];
                rhs = rhs - a.clone() * map.shift.clone();
                for &(c, positive) in &map.cols {
                    coeffs.push((c, if positive { a.clone() } else { -a.clone() }));
                }
            }
            let slack = match row.relation {
                Relation::Le => Some(true),
                Relation::Ge => Some(false),
                Relation::Eq => None,
            };
            pending.push(Pending {
                coeffs,
                rhs,
                slack,
                origin: RowOrigin::Original(r),
            });
        }
        for (c, cap) in uppers {
            pending.push(Pending {
                coeffs: vec![(c, S::one())],
                rhs: cap,
                slack: Some(true),
                origin: RowOrigin::UpperBound,
            });
        }

        let n_slack = pending.iter().filter(|p| p.slack.is_some()).count();
        let slack_start = n_struct;
        let art_start = n_struct + n_slack;
        let mut n_art = 0usize;
        let mut rows = Vec::with_capacity(pending.len());
        let mut rhs = Vec::with_capacity(pending.len());
        let mut flipped = Vec::with_capacity(pending.len());
        let mut origin = Vec::with_capacity(pending.len());
        let mut unit_col = Vec::with_capacity(pending.len());
        let mut next_slack = slack_start;
        for p in &pending {
            let flip = p.rhs.is_negative();
            let mut dense = vec![S::zero(); art_start];
            for (c, a) in &p.coeffs {
                dense[*c] = dense[*c].clone() + a.clone();
            }
            let mut unit = None;
            if let Some(positive) = p.slack {
                dense[next_slack] = if positive { S::one() } else { -S::one() };
                if positive != flip {
                    unit = Some(next_slack);
                }
                next_slack += 1;
            }
            if flip {
                for v in dense.iter_mut() {
                    *v = -v.clone();
                }
            }
            let unit = unit.unwrap_or_else(|| {
                n_art += 1;
                art_start + n_art - 1
            });
            rows.push(dense);
            rhs.push(if flip { -p.rhs.clone() } else { p.rhs.clone() });
            flipped.push(flip);
            unit_col.push(unit);
        }
        for p in pending {
            origin.push(p.origin);
        }
        let ncols = art_start + n_art;

        let mut cost = vec![S::zero(); ncols];
        let mut cost_offset = S::zero();
        for (j, c) in lp.objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let map = &var_maps[j];
            cost_offset = cost_offset + c.clone() * map.shift.clone();
            for &(col, positive) in &map.cols {
                cost[col] = if positive { c.clone() } else { -c.clone() };
            }
        }

        Ok(StandardForm {
            var_maps,
            rows,
            rhs,
            flipped,
            origin,
            unit_col,
            cost,
            cost_offset,
            art_start,
            ncols,
        })
    }

    fn solve(self, lp: &LinearProgram<S>) -> LpOutcome<S> {
        let m = self.rows.len();
        let mut tab = Tableau::new(&self);
        let stats = |t: &Tableau<S>| SolverStats {
            pivots: t.pivots,
            rows: m,
            columns: self.ncols,
        };

        // Phase 1: minimize the sum of artificials.
        let phase1_cost: Vec<S> = (0..self.ncols)
            .map(|j| if j >= self.art_start { S::one() } else { S::zero() })
            .collect();
        tab.price(&phase1_cost);
        tab.run(self.art_start);
        if tab.value.is_positive() {
            let y = tab.row_multipliers(&phase1_cost, &self.unit_col);
            let mut ray = vec![S::zero(); lp.rows.len()];
            for (r, origin) in self.origin.iter().enumerate() {
                if let RowOrigin::Original(orig) = origin {
                    let sigma_y = if self.flipped[r] { -y[r].clone() } else { y[r].clone() };
                    ray[*orig] = -sigma_y;
                }
            }
            return LpOutcome::infeasible(ray, stats(&tab));
        }
        tab.evict_artificials(self.art_start);

        // Phase 2.
        tab.price(&self.cost);
        if !tab.run(self.art_start) {
            return LpOutcome {
                status: LpStatus::Unbounded,
                solution: None,
                objective_value: None,
                farkas_ray: None,
                duals: None,
                stats: stats(&tab),
            };
        }

        let mut xbar = vec![S::zero(); self.ncols];
        for (r, &b) in tab.basis.iter().enumerate() {
            xbar[b] = tab.b[r].clone();
        }
        let x: Vec<S> = self
            .var_maps
            .iter()
            .map(|map| {
                map.cols.iter().fold(map.shift.clone(), |acc, &(c, positive)| {
                    if positive {
                        acc + xbar[c].clone()
                    } else {
                        acc - xbar[c].clone()
                    }
                })
            })
            .collect();
        let y = tab.row_multipliers(&self.cost, &self.unit_col);
        let mut duals = vec![S::zero(); lp.rows.len()];
        for (r, origin) in self.origin.iter().enumerate() {
            if let RowOrigin::Original(orig) = origin {
                duals[*orig] = if self.flipped[r] { -y[r].clone() } else { y[r].clone() };
            }
        }
        let objective_value = tab.value.clone() + self.cost_offset.clone();
        debug_assert_eq!(objective_value, lp.objective_value(&x));
        LpOutcome {
            status: LpStatus::Feasible,
            solution: Some(x),
            objective_value: Some(objective_value),
            farkas_ray: None,
            duals: Some(duals),
            stats: stats(&tab),
        }
    }
}

struct Tableau<S> {
    a: Vec<Vec<S>>,
    b: Vec<S>,
    basis: Vec<usize>,
    /// Reduced costs for the current phase.
    d: Vec<S>,
    /// Current objective value `c_B · x_B`.
    value: S,
    pivots: usize,
}

impl<S: Scalar> Tableau<S> {
    fn new(std: &StandardForm<S>) -> Self {
        let a = std
            .rows
            .iter()
            .zip(&std.unit_col)
            .map(|(row, &unit)| {
                let mut full = row.clone();
                full.resize(std.ncols, S::zero());
                if unit >= std.art_start {
                    full[unit] = S::one();
                }
                full
            })
            .collect();
        Tableau {
            a,
            b: std.rhs.clone(),
            basis: std.unit_col.clone(),
            d: vec![S::zero(); std.ncols],
            value: S::zero(),
            pivots: 0,
        }
    }

    fn price(&mut self, cost: &[S]) {
        self.d = cost.to_vec();
        self.value = S::zero();
        for (r, &bc) in self.basis.iter().enumerate() {
            let cb = &cost[bc];
            if cb.is_zero() {
                continue;
            }
            for (dj, arj) in self.d.iter_mut().zip(&self.a[r]) {
                if !arj.is_zero() {
                    *dj = dj.clone() - cb.clone() * arj.clone();
                }
            }
            self.value = self.value.clone() + cb.clone() * self.b[r].clone();
        }
    }

    /// Bland's rule iterations over columns `< col_limit`. Returns false if
    /// the program is unbounded.
    fn run(&mut self, col_limit: usize) -> bool {
        loop {
            let Some(q) = (0..col_limit).find(|&j| self.d[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for r in 0..self.a.len() {
                let arq = &self.a[r][q];
                if !arq.is_positive() {
                    continue;
                }
                let ratio = self.b[r].clone() / arq.clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, q),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.pivots += 1;
        let piv = self.a[r][q].clone();
        if !piv.is_one() {
            for v in self.a[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / piv.clone();
                }
            }
            self.b[r] = self.b[r].clone() / piv;
        }
        let support: Vec<usize> = (0..self.a[r].len())
            .filter(|&j| !self.a[r][j].is_zero())
            .collect();
        let pivot_row = self.a[r].clone();
        let pivot_rhs = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][q].is_zero() {
                continue;
            }
            let f = self.a[i][q].clone();
            for &j in &support {
                self.a[i][j] = self.a[i][j].clone() - f.clone() * pivot_row[j].clone();
            }
            self.b[i] = self.b[i].clone() - f * pivot_rhs.clone();
        }
        let f = self.d[q].clone();
        if !f.is_zero() {
            for &j in &support {
                self.d[j] = self.d[j].clone() - f.clone() * pivot_row[j].clone();
            }
            self.value = self.value.clone() + f * pivot_rhs;
        }
        self.basis[r] = q;
    }

    /// Pivots zero-level artificials out of the basis where possible. Rows
    /// where no structural column is available are redundant; their
    /// artificial stays basic at zero and never moves again.
    fn evict_artificials(&mut self, art_start: usize) {
        for r in 0..self.a.len() {
            if self.basis[r] < art_start {
                continue;
            }
            if let Some(j) = (0..art_start).find(|&j| !self.a[r][j].is_zero()) {
                self.pivot(r, j);
            }
        }
    }

    /// `y = c_B B^{-1}`, read from the columns that started as the identity.
    fn row_multipliers(&self, cost: &[S], unit_col: &[usize]) -> Vec<S> {
        unit_col
            .iter()
            .map(|&u| cost[u].clone() - self.d[u].clone())
            .collect()
    }
}
