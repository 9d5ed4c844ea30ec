use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Relation};
use crate::scalar::{serde_rational, Rational};
use crate::set::{check_enumerable, nonempty_subsets, SetMask, DEFAULT_ENUMERATION_CAP};
use crate::PartialFunction;

/// Weights on independent sets; zero weights are dropped and sets are kept in
/// ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub independent_sets: Vec<SetMask>,
    #[serde(with = "serde_rational::vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub total: Rational,
}

impl FractionalColoring {
    fn from_map(map: BTreeMap<SetMask, Rational>) -> FractionalColoring {
        let (independent_sets, weights): (Vec<_>, Vec<_>) =
            map.into_iter().filter(|(_, w)| !w.is_zero()).unzip();
        let total = weights.iter().fold(Rational::zero(), |a, w| a + w.clone());
        FractionalColoring {
            independent_sets,
            weights,
            total,
        }
    }

    pub fn singletons(n: usize) -> FractionalColoring {
        FractionalColoring::from_map((1..=n).map(|v| (SetMask::singleton(v), Rational::one())).collect())
    }

    /// `Σ_{I ∋ v} x_I`.
    pub fn coverage_of(&self, v: usize) -> Rational {
        self.independent_sets
            .iter()
            .zip(&self.weights)
            .filter(|(s, _)| s.contains(v))
            .fold(Rational::zero(), |a, (_, w)| a + w.clone())
    }

    pub fn is_valid_for(&self, g: &Graph, exact: bool) -> bool {
        let one = Rational::one();
        self.independent_sets.iter().all(|s| g.is_independent(*s))
            && self.weights.iter().all(|w| *w >= Rational::zero())
            && (1..=g.num_vertices()).all(|v| {
                let c = self.coverage_of(v);
                if exact {
                    c == one
                } else {
                    c >= one
                }
            })
    }
}

fn independent_sets(g: &Graph) -> Result<Vec<SetMask>> {
    check_enumerable(g.num_vertices(), DEFAULT_ENUMERATION_CAP)?;
    Ok(nonempty_subsets(g.num_vertices()).filter(|s| g.is_independent(*s)).collect())
}

fn coloring_program(g: &Graph, sets: &[SetMask], relation: Relation) -> Result<FractionalColoring> {
    let mut lp = LinearProgram::new(sets.len());
    for k in 0..sets.len() {
        lp.set_objective(k, Rational::one());
    }
    for v in 1..=g.num_vertices() {
        let cols = (0..sets.len())
            .filter(|&k| sets[k].contains(v))
            .map(|k| (k, Rational::one()))
            .collect();
        lp.add_row(cols, relation, Rational::one());
    }
    let out = lp::solve(&lp)?;
    if out.status != LpStatus::Feasible {
        return Err(Error::Internal(format!("colouring program reported {:?}", out.status)));
    }
    let x = out.solution.expect("feasible outcome carries a solution");
    Ok(FractionalColoring::from_map(sets.iter().copied().zip(x).collect()))
}

/// `χ*(G)` from the covering program over every independent set.
pub fn fractional_chromatic(g: &Graph) -> Result<(Rational, FractionalColoring)> {
    let sets = independent_sets(g)?;
    let c = coloring_program(g, &sets, Relation::Ge)?;
    Ok((c.total.clone(), c))
}

/// A colouring with total exactly `t` and every vertex covered exactly once,
/// mixing an optimal equality-form colouring with the all-singletons one.
pub fn equalize_coloring(g: &Graph, t: &Rational) -> Result<FractionalColoring> {
    let n = Rational::from_integer((g.num_vertices() as i64).into());
    let sets = independent_sets(g)?;
    let x = coloring_program(g, &sets, Relation::Eq)?;
    let chi = x.total.clone();
    if *t < chi || *t > n {
        return Err(Error::InvalidArgument(format!("t = {t} outside [{chi}, {n}]")));
    }
    if chi == n {
        return Ok(FractionalColoring::singletons(g.num_vertices()));
    }
    let lambda = (n.clone() - t.clone()) / (n - chi);
    let mut z: BTreeMap<SetMask, Rational> = BTreeMap::new();
    for (s, w) in x.independent_sets.iter().zip(&x.weights) {
        *z.entry(*s).or_insert_with(Rational::zero) += lambda.clone() * w.clone();
    }
    for v in 1..=g.num_vertices() {
        *z.entry(SetMask::singleton(v)).or_insert_with(Rational::zero) += Rational::one() - lambda.clone();
    }
    Ok(FractionalColoring::from_map(z))
}

/// Ground set `V`; singletons map to 1, edges to 2 and `V` itself to `k`.
/// Coverage-extendible exactly when `χ*(G) <= k`.
pub fn chromatic_gadget(g: &Graph, k: &Rational) -> Result<PartialFunction> {
    let n = g.num_vertices();
    if *k < Rational::one() || *k > Rational::from_integer((n as i64).into()) {
        return Err(Error::InvalidArgument(format!("k = {k} outside [1, {n}]")));
    }
    let mut points: Vec<(SetMask, Rational)> = (1..=n)
        .map(|v| (SetMask::singleton(v), Rational::one()))
        .collect();
    points.extend((0..g.edges().len()).map(|e| (g.edge_mask(e), Rational::from_integer(2.into()))));
    let full = g.vertex_set();
    match points.iter().find(|(s, _)| *s == full) {
        Some((_, v)) if v == k => {}
        Some((_, v)) => {
            return Err(Error::InvalidArgument(format!(
                "vertex set is already a point with value {v}, cannot also take k = {k}"
            )))
        }
        None => points.push((full, k.clone())),
    }
    PartialFunction::new(n, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::decide_extension;
    use crate::scalar::{int, rat};

    #[test]
    fn known_values() {
        assert_eq!(fractional_chromatic(&Graph::complete(3)).unwrap().0, int(3));
        assert_eq!(fractional_chromatic(&Graph::cycle(5)).unwrap().0, rat(5, 2));
        assert_eq!(fractional_chromatic(&Graph::new(4, vec![]).unwrap()).unwrap().0, int(1));
        let (_, c) = fractional_chromatic(&Graph::cycle(5)).unwrap();
        assert!(c.is_valid_for(&Graph::cycle(5), false));
    }

    #[test]
    fn equalized_endpoints() {
        let k3 = Graph::complete(3);
        assert_eq!(equalize_coloring(&k3, &int(3)).unwrap(), FractionalColoring::singletons(3));
        let c5 = Graph::cycle(5);
        assert_eq!(equalize_coloring(&c5, &int(5)).unwrap(), FractionalColoring::singletons(5));
        let z = equalize_coloring(&c5, &rat(5, 2)).unwrap();
        assert!(z.is_valid_for(&c5, true));
        assert_eq!(z.total, rat(5, 2));
        let mid = equalize_coloring(&c5, &rat(7, 2)).unwrap();
        assert!(mid.is_valid_for(&c5, true));
        assert_eq!(mid.total, rat(7, 2));
        assert!(equalize_coloring(&c5, &int(2)).is_err());
        assert!(equalize_coloring(&c5, &int(6)).is_err());
    }

    #[test]
    fn gadget_examples() {
        let ext = |g: &Graph, k: Rational| decide_extension(&chromatic_gadget(g, &k).unwrap()).unwrap().is_extendible();
        assert!(ext(&Graph::complete(3), int(3)));
        assert!(!ext(&Graph::complete(3), int(2)));
        assert!(ext(&Graph::cycle(5), rat(5, 2)));
        assert!(!ext(&Graph::cycle(5), int(2)));
    }

    #[test]
    fn gadget_on_tiny_graphs() {
        let k2 = Graph::complete(2);
        assert_eq!(chromatic_gadget(&k2, &int(2)).unwrap().len(), 3);
        assert!(chromatic_gadget(&k2, &rat(3, 2)).is_err());
        assert!(chromatic_gadget(&k2, &int(3)).is_err());
        let k1 = Graph::new(1, vec![]).unwrap();
        assert_eq!(chromatic_gadget(&k1, &int(1)).unwrap().len(), 1);
    }
}
