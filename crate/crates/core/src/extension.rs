//! Exact coverage extension.
//!
//! `H` extends to a coverage function iff the program
//!
//! ```text
//! Σ_{S : S ∩ T_i ≠ ∅} w(S) = f_i   for all i,     w(S) >= 0
//! ```
//!
//! over all nonempty `S ⊆ [m]` is feasible. A vertex of this polyhedron has at
//! most `n` nonzero coordinates, so basic solutions are short witnesses. When
//! it is infeasible, the Farkas multipliers of the `n` rows negate into a
//! vector `l` with every span sum `Σ_{i : S ∩ T_i ≠ ∅} l_i <= 0` and
//! `Σ f_i l_i > 0`.

use num_traits::{Signed, Zero};

use crate::coverage::WCoefficients;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation, SolverStats};
use crate::scalar::Rational;
use crate::set::{check_enumerable, nonempty_subsets, SetMask, DEFAULT_ENUMERATION_CAP};
use crate::PartialFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionStatus {
    Extendible,
    NotExtendible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionVerdict {
    pub status: ExtensionStatus,
    pub witness: Option<WCoefficients<Rational>>,
    pub certificate: Option<Vec<Rational>>,
    pub stats: SolverStats,
}

impl ExtensionVerdict {
    pub fn is_extendible(&self) -> bool {
        self.status == ExtensionStatus::Extendible
    }
}

/// Column `k` of the returned program is `w(S)` for the mask `S = k + 1`.
pub fn extension_program(h: &PartialFunction) -> LinearProgram<Rational> {
    let m = h.ground_size();
    let mut lp = LinearProgram::new((1usize << m) - 1);
    for (t, f) in h.points() {
        lp.add_row(covering_columns(m, *t), Relation::Eq, f.clone());
    }
    lp
}

/// Unit coefficients on every `w(S)` column with `S ∩ t ≠ ∅`.
pub(crate) fn covering_columns(m: usize, t: SetMask) -> Vec<(usize, Rational)> {
    nonempty_subsets(m)
        .filter(|s| s.intersects(t))
        .map(|s| (s.bits() as usize - 1, Rational::from_integer(1.into())))
        .collect()
}

pub fn decide_extension(h: &PartialFunction) -> Result<ExtensionVerdict> {
    decide_extension_with_cap(h, DEFAULT_ENUMERATION_CAP)
}

pub fn decide_extension_with_cap(h: &PartialFunction, cap: usize) -> Result<ExtensionVerdict> {
    let m = h.ground_size();
    check_enumerable(m, cap)?;
    let lp = extension_program(h);
    let out = lp::solve(&lp)?;
    match out.status {
        LpStatus::Feasible => {
            let x = out.solution.expect("feasible outcome carries a solution");
            let witness = WCoefficients::new(
                m,
                x.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (SetMask(k as u64 + 1), v)),
            )?;
            if witness.support_size() > h.len() || !verify_witness(h, &witness) {
                return Err(Error::Internal(
                    "extension witness failed verification".into(),
                ));
            }
            Ok(ExtensionVerdict {
                status: ExtensionStatus::Extendible,
                witness: Some(witness),
                certificate: None,
                stats: out.stats,
            })
        }
        LpStatus::Infeasible => {
            let ray = out.farkas_ray.expect("infeasible outcome carries a ray");
            let certificate: Vec<Rational> = ray.into_iter().map(|v| -v).collect();
            if !verify_certificate_with_cap(h, &certificate, cap)? {
                return Err(Error::Internal(
                    "non-extendibility certificate failed verification".into(),
                ));
            }
            Ok(ExtensionVerdict {
                status: ExtensionStatus::NotExtendible,
                witness: None,
                certificate: Some(certificate),
                stats: out.stats,
            })
        }
        LpStatus::Unbounded => Err(Error::Internal(
            "feasibility program reported unbounded".into(),
        )),
    }
}

/// All weights nonnegative and `f(T_i) = f_i` for every point.
pub fn verify_witness(h: &PartialFunction, w: &WCoefficients<Rational>) -> bool {
    w.ground_size() == h.ground_size()
        && w.is_nonnegative()
        && h.points().iter().all(|(t, f)| &w.eval(*t) == f)
}

pub fn verify_certificate(h: &PartialFunction, l: &[Rational]) -> Result<bool> {
    verify_certificate_with_cap(h, l, DEFAULT_ENUMERATION_CAP)
}

/// Every span sum `Σ_{i : S ∩ T_i ≠ ∅} l_i <= 0` (all nonempty `S`) and
/// `Σ f_i l_i > 0`.
pub fn verify_certificate_with_cap(h: &PartialFunction, l: &[Rational], cap: usize) -> Result<bool> {
    let m = h.ground_size();
    check_enumerable(m, cap)?;
    if l.len() != h.len() {
        return Ok(false);
    }
    let gain = h
        .points()
        .iter()
        .zip(l)
        .fold(Rational::zero(), |acc, ((_, f), li)| acc + f.clone() * li.clone());
    if !gain.is_positive() {
        return Ok(false);
    }
    Ok(nonempty_subsets(m).all(|s| !h.span_sum(s, l).is_positive()))
}
