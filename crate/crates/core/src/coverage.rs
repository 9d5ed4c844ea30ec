//! Set functions, W-coefficients and partial functions.
//!
//! For a set function `f` on `2^[m]` the W-coefficients are
//!
//! ```text
//! w(S) = Σ_{T : S ∪ T = [m]} (-1)^{|S ∩ T| + 1} f(T)        (S ≠ ∅)
//! ```
//!
//! and `f` is recovered by `f(T) = Σ_{S ∩ T ≠ ∅} w(S)`. A function is a
//! coverage function exactly when every coefficient is nonnegative; the
//! positive coefficients are then the weighted universe elements.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::set::{all_subsets, check_enumerable, SetMask, DEFAULT_ENUMERATION_CAP, MAX_GROUND_SET};

/// A set function given on every subset of `[m]`. `f(∅) = 0` is enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSetFunction<S> {
    m: usize,
    /// Indexed by mask bits.
    values: Vec<S>,
}

impl<S: Scalar> TotalSetFunction<S> {
    pub fn new(m: usize, values: Vec<S>) -> Result<Self> {
        Self::with_cap(m, values, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(m: usize, values: Vec<S>, cap: usize) -> Result<Self> {
        check_enumerable(m, cap)?;
        if values.len() != 1usize << m {
            return Err(Error::InvalidFunction(format!(
                "expected {} values for m = {m}, got {}",
                1usize << m,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidFunction(format!(
                "f(∅) must be 0, got {}",
                values[0]
            )));
        }
        Ok(TotalSetFunction { m, values })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(SetMask) -> S) -> Result<Self> {
        check_enumerable(m, DEFAULT_ENUMERATION_CAP)?;
        Self::new(m, all_subsets(m).map(&mut f).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn value(&self, t: SetMask) -> &S {
        &self.values[t.bits() as usize]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Sparse W-coefficients of a set function on `[m]`; zero weights are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCoefficients<S> {
    m: usize,
    support: BTreeMap<SetMask, S>,
}

impl<S: Scalar> WCoefficients<S> {
    pub fn zero(m: usize) -> Self {
        WCoefficients {
            m,
            support: BTreeMap::new(),
        }
    }

    /// Repeated masks are summed; masks must be nonempty subsets of `[m]`.
    pub fn new(m: usize, weights: impl IntoIterator<Item = (SetMask, S)>) -> Result<Self> {
        if m > MAX_GROUND_SET {
            return Err(Error::EnumerationLimit {
                size: m,
                cap: MAX_GROUND_SET,
            });
        }
        let full = SetMask::full(m);
        let mut support: BTreeMap<SetMask, S> = BTreeMap::new();
        for (s, w) in weights {
            if s.is_empty() || !s.is_subset_of(full) {
                return Err(Error::InvalidFunction(format!(
                    "coefficient set {s} is empty or outside [{m}]"
                )));
            }
            let e = support.entry(s).or_insert_with(S::zero);
            *e = e.clone() + w;
        }
        support.retain(|_, w| !w.is_zero());
        Ok(WCoefficients { m, support })
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn weight(&self, s: SetMask) -> S {
        self.support.get(&s).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero coefficients in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (SetMask, &S)> {
        self.support.iter().map(|(s, w)| (*s, w))
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.support.values().all(|w| !w.is_negative())
    }

    /// `f(T) = Σ_{S ∩ T ≠ ∅} w(S)`; zero for `T = ∅`.
    pub fn eval(&self, t: SetMask) -> S {
        self.support
            .iter()
            .filter(|(s, _)| s.intersects(t))
            .fold(S::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// Materializes the represented function on all of `2^[m]`.
    pub fn to_total(&self) -> Result<TotalSetFunction<S>> {
        self.to_total_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn to_total_with_cap(&self, cap: usize) -> Result<TotalSetFunction<S>> {
        check_enumerable(self.m, cap)?;
        // f(T) = total - Σ_{S ⊆ [m]∖T} w(S): a subset-sum (zeta) transform.
        let size = 1usize << self.m;
        let mut zeta = vec![S::zero(); size];
        let mut total = S::zero();
        for (s, w) in &self.support {
            zeta[s.bits() as usize] = w.clone();
            total = total + w.clone();
        }
        for bit in 0..self.m {
            let step = 1usize << bit;
            for x in 0..size {
                if x & step != 0 {
                    let add = zeta[x ^ step].clone();
                    zeta[x] = zeta[x].clone() + add;
                }
            }
        }
        let full = size - 1;
        let values = (0..size)
            .map(|t| total.clone() - zeta[full & !t].clone())
            .collect();
        TotalSetFunction::with_cap(self.m, values, cap)
    }
}

/// Computes the W-coefficients of `f` in `O(m 2^m)`.
///
/// Substituting `T = [m] ∖ V` with `V ⊆ S` turns the defining sum into a
/// subset Möbius transform of `h(V) = f([m] ∖ V)`: `w(S) = -μh(S)`.
pub fn w_transform<S: Scalar>(f: &TotalSetFunction<S>) -> WCoefficients<S> {
    let m = f.ground_size();
    let size = 1usize << m;
    let full = size - 1;
    let mut mu: Vec<S> = (0..size).map(|v| f.values[full & !v].clone()).collect();
    for bit in 0..m {
        let step = 1usize << bit;
        for x in 0..size {
            if x & step != 0 {
                let sub = mu[x ^ step].clone();
                mu[x] = mu[x].clone() - sub;
            }
        }
    }
    let support = mu
        .into_iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| (SetMask(s as u64), -v))
        .collect();
    WCoefficients { m, support }
}

/// `f(T)` from W-coefficients.
pub fn eval_from_w<S: Scalar>(w: &WCoefficients<S>, t: SetMask) -> S {
    w.eval(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageVerdict<S> {
    Coverage,
    /// The smallest mask with a negative coefficient.
    NotCoverage { violating_set: SetMask, coefficient: S },
}

impl<S> CoverageVerdict<S> {
    pub fn is_coverage(&self) -> bool {
        matches!(self, CoverageVerdict::Coverage)
    }
}

pub fn is_coverage<S: Scalar>(f: &TotalSetFunction<S>) -> CoverageVerdict<S> {
    w_transform(f)
        .iter()
        .find(|(_, w)| w.is_negative())
        .map_or(CoverageVerdict::Coverage, |(s, w)| CoverageVerdict::NotCoverage {
            violating_set: s,
            coefficient: w.clone(),
        })
}

/// Whether transforming the function represented by `w` reproduces `w`.
pub fn w_roundtrip_check<S: Scalar>(w: &WCoefficients<S>) -> Result<bool> {
    Ok(w_transform(&w.to_total()?) == *w)
}

/// The input `H = {(T_i, f_i)}`: distinct nonempty sets with nonnegative
/// values on a ground set `[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFunction<S> {
    m: usize,
    points: Vec<(SetMask, S)>,
}

impl<S: Scalar> PartialFunction<S> {
    pub fn new(m: usize, points: Vec<(SetMask, S)>) -> Result<Self> {
        if m == 0 || m > MAX_GROUND_SET {
            return Err(Error::InvalidFunction(format!(
                "ground set size {m} outside 1..={MAX_GROUND_SET}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidFunction("no defined points".into()));
        }
        let full = SetMask::full(m);
        let mut seen = std::collections::HashSet::new();
        for (i, (t, f)) in points.iter().enumerate() {
            if t.is_empty() {
                return Err(Error::InvalidFunction(format!("point {i} has an empty set")));
            }
            if !t.is_subset_of(full) {
                return Err(Error::InvalidFunction(format!(
                    "point {i} set {t} is outside [{m}]"
                )));
            }
            if f.is_negative() {
                return Err(Error::InvalidFunction(format!(
                    "point {i} has negative value {f}"
                )));
            }
            if !seen.insert(*t) {
                return Err(Error::InvalidFunction(format!(
                    "point {i} repeats set {t}"
                )));
            }
        }
        Ok(PartialFunction { m, points })
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &[(SetMask, S)] {
        &self.points
    }

    pub fn set(&self, i: usize) -> SetMask {
        self.points[i].0
    }

    pub fn value(&self, i: usize) -> &S {
        &self.points[i].1
    }

    /// Number of defined points `n`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `d = max |T_i|`.
    pub fn max_set_size(&self) -> usize {
        self.points.iter().map(|(t, _)| t.len()).max().unwrap_or(0)
    }

    /// `F = Σ f_i`.
    pub fn total_value(&self) -> S {
        self.points
            .iter()
            .fold(S::zero(), |acc, (_, f)| acc + f.clone())
    }

    /// `Σ_{i : S ∩ T_i ≠ ∅} y_i` for a vector indexed like the points.
    pub fn span_sum(&self, s: SetMask, y: &[S]) -> S {
        self.points
            .iter()
            .zip(y)
            .filter(|((t, _), _)| t.intersects(s))
            .fold(S::zero(), |acc, (_, v)| acc + v.clone())
    }
}
