use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Rational, ScaledRoot};
use crate::set::{all_subsets, SetMask, MAX_GROUND_SET};

/// The polytope a membership point is tested against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Polytope {
    /// `Σ_{e ∈ δ(S)} y_e <= 0` for all `S`.
    Cut { graph: Graph },
    /// `Σ_{e ∈ E⁺(S)} y_e <= 0` for all `S`.
    Span { graph: Graph },
    /// `Σ_{i : S ∩ T_i ≠ ∅} y_i <= 0` for all nonempty `S ⊆ [m]`. The family
    /// is a list: repeated and empty sets are allowed.
    Coverage { ground_size: usize, family: Vec<SetMask> },
}

/// A point `ŷ` for one of the polytopes above, all of which also require
/// `||y||_∞ <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipInstance {
    pub polytope: Polytope,
    #[serde(with = "serde_rational::vec")]
    pub point: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<ScaledRoot>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverGadget {
    pub instance: MembershipInstance,
    #[serde(with = "serde_rational")]
    pub scale: Rational,
}

fn int(v: usize) -> Rational {
    Rational::from_integer((v as i64).into())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Builds the coverage membership point for a set-cover instance over
/// universe `1..=n'` with sets `S_1..S_{m'}` and budget `k`. The ground set
/// is `[m']` and the family lists, in order, `{j}` for each `j` (point
/// `-1/L`), `[m']` (point `(k - kn' + 1/2)/L`) and, for each universe
/// element `u`, `{j : u ∈ S_j}` (point `k/L`), with `L = kn' - k - 1/2`.
/// A cover of size at most `k` gives a span sum of at least `1/(2L)`;
/// otherwise every span sum is at most `-1/(2L)`. `δ = 1/(4L√n)` with `n`
/// the family size.
pub fn setcover_membership_gadget(universe_size: usize, sets: &[SetMask], k: usize) -> Result<SetCoverGadget> {
    let m = sets.len();
    if k == 0 || universe_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "need k >= 1 and universe size >= 2 (got k = {k}, n' = {universe_size})"
        )));
    }
    if m == 0 || m > MAX_GROUND_SET || universe_size > MAX_GROUND_SET {
        return Err(Error::InvalidArgument(format!(
            "family size {m} and universe size {universe_size} must lie in 1..={MAX_GROUND_SET}"
        )));
    }
    if let Some(s) = sets.iter().find(|s| !s.is_subset_of(SetMask::full(universe_size))) {
        return Err(Error::InvalidArgument(format!("set {s} outside the universe")));
    }
    let (kq, nq) = (int(k), int(universe_size));
    let scale = kq.clone() * nq.clone() - kq.clone() - half();
    let mut family: Vec<SetMask> = (1..=m).map(SetMask::singleton).collect();
    let mut point: Vec<Rational> = vec![-scale.recip(); m];
    family.push(SetMask::full(m));
    point.push((kq.clone() - kq.clone() * nq + half()) / scale.clone());
    for u in 1..=universe_size {
        let owners = (0..m).filter(|&j| sets[j].contains(u)).map(|j| SetMask::singleton(j + 1));
        family.push(owners.fold(SetMask::EMPTY, SetMask::union));
        point.push(kq.clone() / scale.clone());
    }
    let n = int(family.len());
    let delta = ScaledRoot::new((int(4) * scale.clone() * n.clone()).recip(), n);
    Ok(SetCoverGadget {
        instance: MembershipInstance {
            polytope: Polytope::Coverage { ground_size: m, family },
            point,
            delta: Some(delta),
        },
        scale,
    })
}

/// Some `k` of the sets cover `1..=n'`, by enumeration.
pub fn has_set_cover(universe_size: usize, sets: &[SetMask], k: usize) -> bool {
    let universe = SetMask::full(universe_size);
    all_subsets(sets.len())
        .filter(|pick| pick.len() <= k)
        .any(|pick| {
            let covered = pick
                .elements()
                .iter()
                .fold(SetMask::EMPTY, |acc, &j| acc.union(sets[j - 1]));
            universe.is_subset_of(covered)
        })
}

/// A weighted graph produced by a reduction, with the scale `L` that appears
/// in its identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledGraph {
    pub graph: Graph,
    #[serde(with = "serde_rational")]
    pub scale: Rational,
}

impl ScaledGraph {
    /// The weights as a point for `polytope(graph)`.
    pub fn membership_instance(&self, span: bool) -> MembershipInstance {
        let graph = self.graph.clone();
        MembershipInstance {
            point: graph.weights().map(<[Rational]>::to_vec).unwrap_or_default(),
            polytope: if span {
                Polytope::Span { graph }
            } else {
                Polytope::Cut { graph }
            },
            delta: None,
        }
    }
}

/// Adds vertices `s = n + 1` and `t = n + 2`. Edges are the original ones
/// (weight `y_e / L`), then `{v, s}` for each `v` in order (weight
/// `-w(δ(v)) / (2L)`), then `{s, t}` (weight `-1`), with `L = 2|E| + |V||E|`.
/// For `S ⊆ V`, `L · w(E⁺(S))` in the new graph equals `w(δ(S)) / 2`.
pub fn cut_to_span_gadget(g: &Graph) -> Result<ScaledGraph> {
    let weights = g
        .weights()
        .ok_or_else(|| Error::InvalidArgument("cut to span needs edge weights".into()))?;
    if let Some(k) = weights.iter().position(|w| w.abs() > Rational::one()) {
        return Err(Error::InvalidArgument(format!(
            "weight {} on edge {} lies outside [-1, 1]",
            weights[k],
            k + 1
        )));
    }
    cut_to_span_gadget_unbounded(g)
}

/// [`cut_to_span_gadget`] without the `||y||_∞ <= 1` precondition.
pub fn cut_to_span_gadget_unbounded(g: &Graph) -> Result<ScaledGraph> {
    let weights = g
        .weights()
        .ok_or_else(|| Error::InvalidArgument("cut to span needs edge weights".into()))?;
    let (n, e) = (g.num_vertices(), g.edges().len());
    if e == 0 {
        return Err(Error::InvalidArgument("cut to span needs at least one edge".into()));
    }
    if n + 2 > MAX_GROUND_SET {
        return Err(Error::InvalidArgument(format!("{n} vertices leave no room for s and t")));
    }
    let scale = int(2 * e + n * e);
    let (s, t) = (n + 1, n + 2);
    let mut edges = g.edges().to_vec();
    let mut new_weights: Vec<Rational> = weights.iter().map(|w| w.clone() / scale.clone()).collect();
    for v in 1..=n {
        edges.push((v, s));
        new_weights.push(-g.weighted_degree(v) / (int(2) * scale.clone()));
    }
    edges.push((s, t));
    new_weights.push(-Rational::one());
    Ok(ScaledGraph {
        graph: Graph::new(n + 2, edges)?.with_weights(new_weights)?,
        scale,
    })
}

/// Complete graph on `V` with weight `(1 - M)/L` on edges of `G` and `-M/L`
/// on non-edges, `L = 2 max{M, |1 - M|}`, edges in lexicographic order.
/// `L · w(δ(S)) = |δ_G(S)| - M |S| |V ∖ S|`.
pub fn densest_cut_gadget(g: &Graph, density: &Rational) -> Result<ScaledGraph> {
    if *density <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("density {density} must be positive")));
    }
    let one = Rational::one();
    let gap = (one.clone() - density.clone()).abs();
    let scale = int(2) * density.clone().max(gap);
    let complete = Graph::complete(g.num_vertices());
    let weights = complete
        .edges()
        .iter()
        .map(|&(u, v)| {
            if g.has_edge(u, v) {
                (one.clone() - density.clone()) / scale.clone()
            } else {
                -density.clone() / scale.clone()
            }
        })
        .collect();
    Ok(ScaledGraph {
        graph: complete.with_weights(weights)?,
        scale,
    })
}

/// `max |δ(S)| / (|S| |V ∖ S|)` over proper nonempty `S`, with the first
/// maximizer in ascending mask order. `None` on a single vertex.
pub fn max_cut_density(g: &Graph) -> Option<(SetMask, Rational)> {
    let n = g.num_vertices();
    let full = SetMask::full(n);
    all_subsets(n)
        .filter(|s| !s.is_empty() && *s != full)
        .map(|s| {
            let d = int(g.cut_size(s)) / int(s.len() * (n - s.len()));
            (s, d)
        })
        .fold(None, |best: Option<(SetMask, Rational)>, (s, d)| match best {
            Some((_, ref b)) if *b >= d => best,
            _ => Some((s, d)),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn figure_one_four_cycle() {
        let g = Graph::cycle(4).with_weights(vec![q(5), q(-7), q(1), q(-3)]).unwrap();
        assert!(cut_to_span_gadget(&g).is_err());
        let out = cut_to_span_gadget_unbounded(&g).unwrap();
        assert_eq!(out.scale, q(24));
        let w = out.graph.weights().unwrap();
        let scaled: Vec<Rational> = w[4..8].iter().map(|x| x.clone() * q(24)).collect();
        assert_eq!(scaled, vec![q(-1), q(1), q(3), q(1)]);
        assert_eq!(w[8].clone() * q(24), q(-24));
        for s in all_subsets(4) {
            assert_eq!(out.scale.clone() * out.graph.span_weight(s), g.cut_weight(s) / q(2));
        }
    }

    #[test]
    fn cut_to_span_edge_cases() {
        let g = Graph::path(2).with_weights(vec![q(1)]).unwrap();
        let out = cut_to_span_gadget(&g).unwrap();
        assert_eq!(out.scale, q(4));
        assert!(all_subsets(4).any(|s| out.graph.span_weight(s) > Rational::zero()));
        assert!(cut_to_span_gadget(&Graph::path(2)).is_err());
        let empty = Graph::new(3, vec![]).unwrap().with_weights(vec![]).unwrap();
        assert!(cut_to_span_gadget(&empty).is_err());
    }

    #[test]
    fn densest_cut_examples() {
        let p = Graph::path(3);
        assert_eq!(max_cut_density(&p), Some((SetMask(0b010), q(1))));
        let tight = densest_cut_gadget(&Graph::path(2), &q(1)).unwrap();
        assert_eq!(tight.graph.cut_weight(SetMask(0b01)), Rational::zero());
        for m in [rat(1, 2), q(2)] {
            let out = densest_cut_gadget(&p, &m).unwrap();
            for s in all_subsets(3) {
                let rhs = q(p.cut_size(s) as i64) - m.clone() * q((s.len() * (3 - s.len())) as i64);
                assert_eq!(out.scale.clone() * out.graph.cut_weight(s), rhs);
            }
        }
        assert!(densest_cut_gadget(&p, &q(0)).is_err());
    }

    #[test]
    fn set_cover_gadget_shape() {
        let sets = [SetMask(0b11)];
        let out = setcover_membership_gadget(2, &sets, 1).unwrap();
        assert_eq!(out.scale, rat(1, 2));
        let Polytope::Coverage { ground_size, family } = &out.instance.polytope else {
            panic!("expected coverage variant");
        };
        assert_eq!(*ground_size, 1);
        assert_eq!(family, &vec![SetMask(1), SetMask(1), SetMask(1), SetMask(1)]);
        assert_eq!(out.instance.point, vec![q(-2), q(-1), q(2), q(2)]);
        let delta = out.instance.delta.unwrap();
        assert_eq!(delta.coefficient, rat(1, 8));
        assert_eq!(delta.radicand, q(4));
        assert!(has_set_cover(2, &sets, 1));
        assert!(!has_set_cover(2, &[SetMask(0b01), SetMask(0b10)], 1));
        assert!(setcover_membership_gadget(1, &sets, 1).is_err());
        assert!(setcover_membership_gadget(2, &sets, 0).is_err());
        assert!(setcover_membership_gadget(2, &[SetMask(0b100)], 1).is_err());
    }
}
