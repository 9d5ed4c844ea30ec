//! Approximate extension: the replacement ratio and bounds on `α*`.
//!
//! `α*` is the least `α >= 1` for which some coverage function satisfies
//! `f_i <= f(T_i) <= α f_i` for every point. Viewing `H` as a bipartite graph
//! (one left vertex per point, one right vertex per ground element), a
//! *replacement* for a left vertex `v` is a set of other left vertices whose
//! neighbourhoods jointly cover `N(v)`. The replacement ratio `κ` is the
//! least `f(R) / f_v` over vertices and replacements, and brackets `α*`:
//!
//! ```text
//! 1/κ <= α* <= max(1, min(d, m^(2/3)) / κ)
//! ```
//!
//! `κ` is exact for small `d` (a subset DP over `N(v)` per vertex) and can be
//! approximated within `H_d` by greedy weighted set cover.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extension::covering_columns;
use crate::lp::{self, LinearProgram, LpStatus, Relation, SolverStats};
use crate::scalar::{ceil_log2, ceil_pow_two_thirds, harmonic, isqrt, Extended, Rational};
use crate::set::{all_subsets, check_enumerable, SetMask, DEFAULT_ENUMERATION_CAP};
use crate::PartialFunction;

/// Bipartite view of a partial function: left vertex `i` is the point
/// `(T_i, f_i)`, right vertices are ground elements, and `i ~ j` iff `j ∈ T_i`.
#[derive(Clone, Copy, Debug)]
pub struct BipartiteView<'a> {
    h: &'a PartialFunction,
}

impl<'a> BipartiteView<'a> {
    pub fn new(h: &'a PartialFunction) -> Self {
        BipartiteView { h }
    }

    pub fn left_len(&self) -> usize {
        self.h.len()
    }

    pub fn right_len(&self) -> usize {
        self.h.ground_size()
    }

    pub fn weight(&self, v: usize) -> &Rational {
        self.h.value(v)
    }

    /// `N(v)` for a left vertex.
    pub fn neighbors(&self, v: usize) -> SetMask {
        self.h.set(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.h.set(v).len()
    }

    /// `N(S)` for a set of right vertices: the points whose set meets `S`.
    pub fn neighbors_of(&self, s: SetMask) -> Vec<usize> {
        (0..self.h.len()).filter(|&i| self.h.set(i).intersects(s)).collect()
    }

    /// `N(R)` for a set of left vertices.
    pub fn cover_of(&self, r: &[usize]) -> SetMask {
        r.iter().fold(SetMask::EMPTY, |acc, &i| acc.union(self.h.set(i)))
    }
}

/// Limits for exact computation of `κ`.
#[derive(Clone, Copy, Debug)]
pub struct KappaLimits {
    /// Use the per-vertex subset DP when `d` is at most this.
    pub degree_cap: usize,
    /// Otherwise enumerate replacements outright when `n` is at most this.
    pub points_cap: usize,
}

impl Default for KappaLimits {
    fn default() -> Self {
        KappaLimits {
            degree_cap: 6,
            points_cap: 20,
        }
    }
}

/// Exact `κ`, or `+∞` when no vertex with positive value has a replacement.
/// Vertices with `f_v = 0` are skipped.
pub fn replacement_ratio_exact(h: &PartialFunction) -> Result<Extended<Rational>> {
    replacement_ratio_exact_with(h, KappaLimits::default())
}

pub fn replacement_ratio_exact_with(
    h: &PartialFunction,
    limits: KappaLimits,
) -> Result<Extended<Rational>> {
    let d = h.max_set_size();
    let per_vertex: fn(&PartialFunction, usize) -> Option<Rational> = if d <= limits.degree_cap {
        min_replacement_dp
    } else if h.len() <= limits.points_cap {
        min_replacement_enumerate
    } else {
        return Err(Error::InvalidArgument(format!(
            "exact replacement ratio needs d <= {} or n <= {} (got d = {d}, n = {})",
            limits.degree_cap,
            limits.points_cap,
            h.len()
        )));
    };
    Ok(ratio_min(h, per_vertex))
}

fn ratio_min(
    h: &PartialFunction,
    per_vertex: impl Fn(&PartialFunction, usize) -> Option<Rational>,
) -> Extended<Rational> {
    (0..h.len())
        .filter(|&v| h.value(v).is_positive())
        .filter_map(|v| per_vertex(h, v).map(|cost| cost / h.value(v).clone()))
        .map(Extended::Finite)
        .min()
        .unwrap_or(Extended::Infinite)
}

/// Cheapest cover of `T_v` by other points, via a DP over subsets of `T_v`.
fn min_replacement_dp(h: &PartialFunction, v: usize) -> Option<Rational> {
    let target = h.set(v).elements();
    let k = target.len();
    let covers: Vec<(usize, &Rational)> = (0..h.len())
        .filter(|&w| w != v)
        .filter_map(|w| {
            let t = h.set(w);
            let local = target
                .iter()
                .enumerate()
                .filter(|(_, &e)| t.contains(e))
                .fold(0usize, |acc, (bit, _)| acc | 1 << bit);
            (local != 0).then(|| (local, h.value(w)))
        })
        .collect();
    let full = (1usize << k) - 1;
    let mut best: Vec<Option<Rational>> = vec![None; full + 1];
    best[0] = Some(Rational::zero());
    for state in 0..=full {
        let Some(cost) = best[state].clone() else {
            continue;
        };
        for &(cov, f) in &covers {
            let next = state | cov;
            if next == state {
                continue;
            }
            let cand = cost.clone() + f.clone();
            if best[next].as_ref().map_or(true, |b| cand < *b) {
                best[next] = Some(cand);
            }
        }
    }
    best[full].take()
}

/// Cheapest replacement by enumerating every subset of the other points.
fn min_replacement_enumerate(h: &PartialFunction, v: usize) -> Option<Rational> {
    let others: Vec<usize> = (0..h.len()).filter(|&w| w != v).collect();
    let target = h.set(v);
    let mut best: Option<Rational> = None;
    for pick in all_subsets(others.len()) {
        let chosen: Vec<usize> = pick.elements().iter().map(|&b| others[b - 1]).collect();
        let covered = chosen.iter().fold(SetMask::EMPTY, |acc, &w| acc.union(h.set(w)));
        if !target.is_subset_of(covered) {
            continue;
        }
        let cost = chosen
            .iter()
            .fold(Rational::zero(), |acc, &w| acc + h.value(w).clone());
        if best.as_ref().map_or(true, |b| cost < *b) {
            best = Some(cost);
        }
    }
    best
}

/// `κ'` from greedy weighted set cover per vertex; `κ <= κ' <= H_d κ`.
pub fn replacement_ratio_greedy(h: &PartialFunction) -> Extended<Rational> {
    ratio_min(h, greedy_replacement)
}

/// Repeatedly takes the point with the least value per newly covered element
/// (lowest index on ties) until `T_v` is covered.
fn greedy_replacement(h: &PartialFunction, v: usize) -> Option<Rational> {
    let mut uncovered = h.set(v);
    let mut used = vec![false; h.len()];
    used[v] = true;
    let mut cost = Rational::zero();
    while !uncovered.is_empty() {
        let mut pick: Option<(usize, Rational)> = None;
        for w in 0..h.len() {
            if used[w] {
                continue;
            }
            let gain = h.set(w).intersection(uncovered).len();
            if gain == 0 {
                continue;
            }
            let price = h.value(w).clone() / Rational::from_integer((gain as i64).into());
            if pick.as_ref().map_or(true, |(_, p)| price < *p) {
                pick = Some((w, price));
            }
        }
        let (w, _) = pick?;
        used[w] = true;
        cost = cost + h.value(w).clone();
        uncovered = uncovered.difference(h.set(w));
    }
    Some(cost)
}

/// The program `min α` s.t. `f_i <= Σ_{S ∩ T_i ≠ ∅} w(S) <= α f_i`,
/// `w >= 0`, `α >= 1`. Column `2^m - 1` is `α`.
pub fn alpha_program(h: &PartialFunction) -> LinearProgram<Rational> {
    let m = h.ground_size();
    let alpha = (1usize << m) - 1;
    let mut lp = LinearProgram::new(alpha + 1);
    lp.set_objective(alpha, Rational::one());
    lp.set_bounds(alpha, Some(Rational::one()), None);
    for (t, f) in h.points() {
        let cols = covering_columns(m, *t);
        lp.add_row(cols.clone(), Relation::Ge, f.clone());
        let mut upper = cols;
        upper.push((alpha, -f.clone()));
        lp.add_row(upper, Relation::Le, Rational::zero());
    }
    lp
}

/// Exact `α*`, or `+∞` when no `α` admits a coverage function.
pub fn alpha_star_exact(h: &PartialFunction) -> Result<Extended<Rational>> {
    alpha_star_exact_with_stats(h, DEFAULT_ENUMERATION_CAP).map(|(a, _)| a)
}

pub fn alpha_star_exact_with_stats(
    h: &PartialFunction,
    cap: usize,
) -> Result<(Extended<Rational>, SolverStats)> {
    check_enumerable(h.ground_size(), cap)?;
    let lp = alpha_program(h);
    let out = lp::solve(&lp)?;
    match out.status {
        LpStatus::Feasible => Ok((
            Extended::Finite(out.objective_value.expect("feasible outcome has a value")),
            out.stats,
        )),
        LpStatus::Infeasible => Ok((Extended::Infinite, out.stats)),
        LpStatus::Unbounded => Err(Error::Internal("α program reported unbounded".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaMode {
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBounds {
    /// `κ` in exact mode, `κ'` in greedy mode.
    pub kappa_estimate: Extended<Rational>,
    pub kappa_is_exact: bool,
    /// `1/κ` (or `1/κ'`); `1` when the ratio is infinite.
    pub lower: Extended<Rational>,
    /// `min(d, ⌈m^(2/3)⌉)/κ`, times `H_d` in greedy mode, floored at 1.
    pub upper: Extended<Rational>,
    pub alpha_star: Option<Extended<Rational>>,
    /// No vertex has a replacement; the bounds carry no information.
    pub degenerate: bool,
    /// The ratio bound fell below 1 and was replaced by the trivial `α* >= 1`.
    pub floor_applied: bool,
}

/// `min(d, ⌈m^(2/3)⌉)`.
pub fn upper_bound_factor(h: &PartialFunction) -> u64 {
    (h.max_set_size() as u64).min(ceil_pow_two_thirds(h.ground_size() as u64))
}

pub fn alpha_bounds(h: &PartialFunction, mode: KappaMode, with_alpha_star: bool) -> Result<AlphaBounds> {
    let (kappa, slack) = match mode {
        KappaMode::Exact => (replacement_ratio_exact(h)?, Rational::one()),
        KappaMode::Greedy => (replacement_ratio_greedy(h), harmonic(h.max_set_size())),
    };
    let factor = Rational::from_integer((upper_bound_factor(h) as i64).into()) * slack;
    let degenerate = kappa.is_infinite();
    let lower = if degenerate {
        Extended::Finite(Rational::one())
    } else {
        kappa.recip()
    };
    let raw_upper = kappa.recip().scale(&factor);
    let raw_upper = if degenerate { Extended::Infinite } else { raw_upper };
    let one = Extended::Finite(Rational::one());
    let floor_applied = raw_upper < one;
    let upper = if floor_applied { one } else { raw_upper };
    let alpha_star = if with_alpha_star {
        Some(alpha_star_exact(h)?)
    } else {
        None
    };
    Ok(AlphaBounds {
        kappa_estimate: kappa,
        kappa_is_exact: mode == KappaMode::Exact,
        lower,
        upper,
        alpha_star,
        degenerate,
        floor_applied,
    })
}

/// A generated lower-bound instance: the first `√m` points are the blocks.
#[derive(Clone, Debug)]
pub struct TightInstance {
    pub function: PartialFunction,
    pub blocks: usize,
    pub seed: u64,
    pub attempts: usize,
}

pub const TIGHT_RETRY_CAP: usize = 1000;

/// Blocks `{1..r}, {r+1..2r}, ...` (`r = √m`) with value `r`, plus
/// `k·r·⌈log₂ m⌉` random transversals (one uniform element per block) with
/// value 1, deduplicated. Resamples until every `S ⊆ [m]` meets at least as
/// many transversals as blocks.
pub fn generate_tight_instance(m: usize, k: usize, seed: u64) -> Result<TightInstance> {
    let r = isqrt(m as u64) as usize;
    if m == 0 || r * r != m {
        return Err(Error::InvalidArgument(format!("m = {m} is not a perfect square")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    check_enumerable(m, DEFAULT_ENUMERATION_CAP)?;
    let draws = k * r * ceil_log2(m as u64) as usize;
    let blocks: Vec<SetMask> = (0..r)
        .map(|b| SetMask::full(m).intersection(SetMask((((1u64 << r) - 1) << (b * r)) as u64)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=TIGHT_RETRY_CAP {
        let mut transversals: Vec<SetMask> = Vec::with_capacity(draws);
        for _ in 0..draws {
            let t = (0..r).fold(SetMask::EMPTY, |acc, b| {
                acc.union(SetMask::singleton(b * r + rng.gen_range(0..r) + 1))
            });
            if !transversals.contains(&t) && !blocks.contains(&t) {
                transversals.push(t);
            }
        }
        let value = Rational::from_integer((r as i64).into());
        let mut points: Vec<(SetMask, Rational)> =
            blocks.iter().map(|b| (*b, value.clone())).collect();
        points.extend(transversals.into_iter().map(|t| (t, Rational::one())));
        let h = PartialFunction::new(m, points)?;
        if span_dominates(&h, r) {
            return Ok(TightInstance {
                function: h,
                blocks: r,
                seed,
                attempts: attempt,
            });
        }
    }
    Err(Error::SeedExhausted {
        attempts: TIGHT_RETRY_CAP,
        seed,
    })
}

/// `|N(S) ∩ rest| >= |N(S) ∩ first|` for every `S ⊆ [m]`, where `first` is
/// the first `split` points.
pub fn span_dominates(h: &PartialFunction, split: usize) -> bool {
    all_subsets(h.ground_size()).all(|s| {
        let (mut pos, mut neg) = (0usize, 0usize);
        for (i, (t, _)) in h.points().iter().enumerate() {
            if t.intersects(s) {
                if i < split {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
        neg >= pos
    })
}
