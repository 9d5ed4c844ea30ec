use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Graph, MembershipInstance, Polytope};
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Rational};
use crate::set::{check_enumerable, nonempty_subsets, SetMask, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Inside,
    /// The first set in ascending mask order whose constraint is positive.
    Violated {
        set: SetMask,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// Coordinate `index` (0-based) has absolute value above 1.
    OutsideBox { index: usize },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

fn check(
    y: &[Rational],
    ground: usize,
    constraint: impl Fn(SetMask) -> Rational,
) -> Result<Membership> {
    check_enumerable(ground, DEFAULT_ENUMERATION_CAP)?;
    if let Some(index) = y.iter().position(|v| v.abs() > Rational::one()) {
        return Ok(Membership::OutsideBox { index });
    }
    Ok(nonempty_subsets(ground)
        .map(|s| (s, constraint(s)))
        .find(|(_, v)| v.is_positive())
        .map_or(Membership::Inside, |(set, value)| Membership::Violated { set, value }))
}

fn aligned(g: &Graph, y: &[Rational]) -> Result<Graph> {
    g.clone().with_weights(y.to_vec())
}

/// `||y||_∞ <= 1` and `Σ_{e ∈ δ(S)} y_e <= 0` for every nonempty `S ⊆ V`.
pub fn check_cut_membership(g: &Graph, y: &[Rational]) -> Result<Membership> {
    let w = aligned(g, y)?;
    check(y, g.num_vertices(), |s| w.cut_weight(s))
}

/// `||y||_∞ <= 1` and `Σ_{e ∈ E⁺(S)} y_e <= 0` for every nonempty `S ⊆ V`.
pub fn check_span_membership(g: &Graph, y: &[Rational]) -> Result<Membership> {
    let w = aligned(g, y)?;
    check(y, g.num_vertices(), |s| w.span_weight(s))
}

/// `Σ_{i : S ∩ T_i ≠ ∅} y_i`.
pub fn family_span_sum(family: &[SetMask], y: &[Rational], s: SetMask) -> Rational {
    family
        .iter()
        .zip(y)
        .filter(|(t, _)| t.intersects(s))
        .fold(Rational::zero(), |acc, (_, v)| acc + v.clone())
}

/// `||y||_∞ <= 1` and every span sum over nonempty `S ⊆ [m]` is at most 0.
pub fn check_coverage_membership(ground_size: usize, family: &[SetMask], y: &[Rational]) -> Result<Membership> {
    if family.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "{} values for {} sets",
            y.len(),
            family.len()
        )));
    }
    check(y, ground_size, |s| family_span_sum(family, y, s))
}

/// The largest span sum and the first set attaining it.
pub fn max_span_sum(ground_size: usize, family: &[SetMask], y: &[Rational]) -> Result<(SetMask, Rational)> {
    check_enumerable(ground_size, DEFAULT_ENUMERATION_CAP)?;
    nonempty_subsets(ground_size)
        .map(|s| (s, family_span_sum(family, y, s)))
        .fold(None, |best: Option<(SetMask, Rational)>, (s, v)| match best {
            Some((_, ref b)) if *b >= v => best,
            _ => Some((s, v)),
        })
        .ok_or_else(|| Error::InvalidArgument("empty ground set".into()))
}

pub fn check_membership(instance: &MembershipInstance) -> Result<Membership> {
    match &instance.polytope {
        Polytope::Cut { graph } => check_cut_membership(graph, &instance.point),
        Polytope::Span { graph } => check_span_membership(graph, &instance.point),
        Polytope::Coverage { ground_size, family } => {
            check_coverage_membership(*ground_size, family, &instance.point)
        }
    }
}
