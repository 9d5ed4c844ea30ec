//! Norm extension: the closest coverage function in L1 on the defined points.
//!
//! The full program minimizes `Σ |ε_i|` subject to `f(T_i) - f_i = ε_i` over
//! every `w(S) >= 0`. Restricting to singleton variables `w({j})` gives a
//! polynomial program whose optimum `OPT^R` satisfies
//!
//! ```text
//! OPT <= OPT^R <= OPT + (1 - 1/d) F
//! ```
//!
//! Its optimal duals `y^R` are feasible for the singleton constraints of the
//! dual; dividing the positive entries by `d` makes them feasible for every
//! constraint of the full dual.

use num_traits::{One, Signed, Zero};

use crate::coverage::WCoefficients;
use crate::error::{Error, Result};
use crate::extension::covering_columns;
use crate::lp::{self, LinearProgram, LpStatus, Relation, SolverStats};
use crate::scalar::Rational;
use crate::set::{check_enumerable, nonempty_subsets, SetMask, DEFAULT_ENUMERATION_CAP};
use crate::PartialFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormResult {
    pub opt_restricted: Rational,
    /// Supported on singletons only.
    pub witness: WCoefficients<Rational>,
    /// `ε_i = f(T_i) - f_i` under the witness.
    pub primal_errors: Vec<Rational>,
    pub dual_restricted: Vec<Rational>,
    pub dual_rounded: Vec<Rational>,
    /// `(1 - 1/d) F`.
    pub additive_bound: Rational,
    pub opt_exact: Option<Rational>,
    pub stats: SolverStats,
}

/// Appends `ε⁺_i, ε⁻_i` columns after the first `base` columns and one
/// equality row per point with the given `w` coefficients.
fn with_error_columns(h: &PartialFunction, base: usize, rows: Vec<Vec<(usize, Rational)>>) -> LinearProgram<Rational> {
    let n = h.len();
    let mut lp = LinearProgram::new(base + 2 * n);
    for i in 0..n {
        lp.set_objective(base + 2 * i, Rational::one());
        lp.set_objective(base + 2 * i + 1, Rational::one());
    }
    for (i, mut coeffs) in rows.into_iter().enumerate() {
        coeffs.push((base + 2 * i, -Rational::one()));
        coeffs.push((base + 2 * i + 1, Rational::one()));
        lp.add_row(coeffs, Relation::Eq, h.value(i).clone());
    }
    lp
}

/// Columns `0..m` are `w({j})`, followed by `ε⁺_i, ε⁻_i` per point.
pub fn restricted_program(h: &PartialFunction) -> LinearProgram<Rational> {
    let m = h.ground_size();
    let rows = h
        .points()
        .iter()
        .map(|(t, _)| t.elements().into_iter().map(|j| (j - 1, Rational::one())).collect())
        .collect();
    with_error_columns(h, m, rows)
}

/// Columns `0..2^m - 1` are `w(S)` with `S = k + 1`, followed by the errors.
pub fn full_program(h: &PartialFunction) -> LinearProgram<Rational> {
    let m = h.ground_size();
    let rows = h.points().iter().map(|(t, _)| covering_columns(m, *t)).collect();
    with_error_columns(h, (1usize << m) - 1, rows)
}

fn solve_optimal(lp: &LinearProgram<Rational>) -> Result<lp::LpOutcome<Rational>> {
    let out = lp::solve(lp)?;
    if out.status != LpStatus::Feasible {
        return Err(Error::Internal(format!("norm program reported {:?}", out.status)));
    }
    Ok(out)
}

pub fn norm_extension_approx(h: &PartialFunction) -> Result<NormResult> {
    let m = h.ground_size();
    let out = solve_optimal(&restricted_program(h))?;
    let x = out.solution.expect("feasible outcome carries a solution");
    let witness = WCoefficients::new(
        m,
        x[..m]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (SetMask::singleton(j + 1), v.clone())),
    )?;
    let primal_errors: Vec<Rational> = h
        .points()
        .iter()
        .map(|(t, f)| witness.eval(*t) - f.clone())
        .collect();
    let dual_restricted = out.duals.expect("feasible outcome carries duals");
    let d = Rational::from_integer((h.max_set_size() as i64).into());
    let dual_rounded = dual_restricted
        .iter()
        .map(|y| if y.is_positive() { y.clone() / d.clone() } else { y.clone() })
        .collect();
    Ok(NormResult {
        opt_restricted: out.objective_value.expect("feasible outcome has a value"),
        witness,
        primal_errors,
        dual_restricted,
        dual_rounded,
        additive_bound: (Rational::one() - d.recip()) * h.total_value(),
        opt_exact: None,
        stats: out.stats,
    })
}

/// [`norm_extension_approx`] plus the exact optimum from the full program.
pub fn norm_extension_with_oracle(h: &PartialFunction) -> Result<NormResult> {
    let mut r = norm_extension_approx(h)?;
    let (opt, stats) = norm_opt_exact_with_stats(h, DEFAULT_ENUMERATION_CAP)?;
    r.opt_exact = Some(opt);
    r.stats.absorb(stats);
    Ok(r)
}

pub fn norm_opt_exact(h: &PartialFunction) -> Result<Rational> {
    norm_opt_exact_with_stats(h, DEFAULT_ENUMERATION_CAP).map(|(v, _)| v)
}

pub fn norm_opt_exact_with_stats(h: &PartialFunction, cap: usize) -> Result<(Rational, SolverStats)> {
    check_enumerable(h.ground_size(), cap)?;
    let out = solve_optimal(&full_program(h))?;
    Ok((out.objective_value.expect("feasible outcome has a value"), out.stats))
}

/// `-1 <= y_i <= 1` and `Σ_{i : S ∩ T_i ≠ ∅} y_i <= 0` for every nonempty `S`.
pub fn verify_dual_feasible(h: &PartialFunction, y: &[Rational]) -> bool {
    if y.len() != h.len() || check_enumerable(h.ground_size(), DEFAULT_ENUMERATION_CAP).is_err() {
        return false;
    }
    let one = Rational::one();
    y.iter().all(|v| v.abs() <= one)
        && nonempty_subsets(h.ground_size()).all(|s| !h.span_sum(s, y).is_positive())
}

/// `Σ f_i y_i`.
pub fn dual_objective(h: &PartialFunction, y: &[Rational]) -> Rational {
    h.points()
        .iter()
        .zip(y)
        .fold(Rational::zero(), |acc, ((_, f), v)| acc + f.clone() * v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn pf(m: usize, pts: &[(&[usize], i64)]) -> PartialFunction {
        PartialFunction::new(
            m,
            pts.iter()
                .map(|(s, v)| (SetMask::from_elements(s, m).unwrap(), int(*v)))
                .collect(),
        )
        .unwrap()
    }

    fn check(h: &PartialFunction) -> NormResult {
        let r = norm_extension_with_oracle(h).unwrap();
        let opt = r.opt_exact.clone().unwrap();
        assert!(opt <= r.opt_restricted);
        assert!(r.opt_restricted <= opt.clone() + r.additive_bound.clone());
        let l1 = r.primal_errors.iter().fold(int(0), |a, e| a + e.abs());
        assert_eq!(l1, r.opt_restricted);
        assert!(r.witness.iter().all(|(s, _)| s.len() == 1));
        assert!(verify_dual_feasible(h, &r.dual_rounded));
        assert!(dual_objective(h, &r.dual_rounded) <= opt);
        assert_eq!(dual_objective(h, &r.dual_restricted), r.opt_restricted);
        r
    }

    #[test]
    fn shared_pair() {
        let r = check(&pf(2, &[(&[1], 1), (&[2], 1), (&[1, 2], 1)]));
        assert_eq!(r.opt_restricted, int(1));
        assert_eq!(r.opt_exact, Some(int(0)));
        assert_eq!(r.additive_bound, rat(3, 2));
    }

    #[test]
    fn superadditive_pair() {
        let r = check(&pf(2, &[(&[1], 1), (&[2], 1), (&[1, 2], 3)]));
        assert_eq!(r.opt_restricted, int(1));
        assert_eq!(r.opt_exact, Some(int(1)));
        assert_eq!(r.additive_bound, rat(5, 2));
    }

    #[test]
    fn singletons_are_exact() {
        let r = check(&pf(3, &[(&[1], 2), (&[2], 5), (&[3], 1)]));
        assert_eq!(r.opt_restricted, int(0));
        assert_eq!(r.additive_bound, int(0));
    }

    #[test]
    fn zero_point_needs_outside_weight() {
        let h = pf(2, &[(&[1], 0), (&[1, 2], 1)]);
        assert_eq!(norm_opt_exact(&h).unwrap(), int(0));
        check(&h);
    }

    #[test]
    fn dual_feasibility_examples() {
        let h = pf(2, &[(&[1], 1), (&[1, 2], 1)]);
        assert!(verify_dual_feasible(&h, &[int(0), int(0)]));
        assert!(verify_dual_feasible(&h, &[int(1), int(-1)]));
        assert!(!verify_dual_feasible(&h, &[int(2), int(-1)]));
        assert!(!verify_dual_feasible(&h, &[int(1), int(0)]));
        assert!(!verify_dual_feasible(&h, &[int(0)]));
    }

    #[test]
    fn exact_oracle_respects_cap() {
        let h = pf(3, &[(&[1, 2, 3], 1)]);
        assert!(matches!(
            norm_opt_exact_with_stats(&h, 2),
            Err(Error::EnumerationLimit { .. })
        ));
    }
}
