mod common;

use common::*;
use coverext::coverage::is_coverage;
use coverext::extension::{decide_extension, verify_certificate, verify_witness};
use coverext::{PartialFunction, Rational, SetMask};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance() -> impl Strategy<Value = PartialFunction> {
    any::<u64>().prop_map(|seed| random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 5, 7, false))
}

/// Certificate conditions evaluated directly from the point list.
fn certificate_holds(h: &PartialFunction, l: &[Rational]) -> bool {
    let gain = h
        .points()
        .iter()
        .zip(l)
        .fold(Rational::zero(), |a, ((_, f), x)| a + f.clone() * x.clone());
    let spans_ok = (1..(1u64 << h.ground_size())).all(|s| {
        let sum = (0..h.len())
            .filter(|&i| h.set(i).0 & s != 0)
            .fold(Rational::zero(), |a, i| a + l[i].clone());
        sum <= Rational::zero()
    });
    gain > Rational::zero() && spans_ok
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn verdicts_carry_valid_evidence(h in instance()) {
        let v = decide_extension(&h).unwrap();
        match (&v.witness, &v.certificate) {
            (Some(w), None) => {
                prop_assert!(v.is_extendible());
                prop_assert!(w.support_size() <= h.len());
                prop_assert!(verify_witness(&h, w));
                prop_assert!(is_coverage(&w.to_total().unwrap()).is_coverage());
                for (t, f) in h.points() {
                    let direct: Vec<(u64, Rational)> = w.iter().map(|(s, x)| (s.0, x.clone())).collect();
                    prop_assert_eq!(&eval_direct(&direct, t.0), f);
                }
            }
            (None, Some(l)) => {
                prop_assert!(!v.is_extendible());
                prop_assert!(certificate_holds(&h, l));
                prop_assert!(verify_certificate(&h, l).unwrap());
            }
            _ => prop_assert!(false, "verdict without exactly one piece of evidence"),
        }
    }

    #[test]
    fn coverage_samples_extend(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 4;
        let w = random_w(&mut rng, m, 3);
        let points: Vec<(SetMask, Rational)> =
            (1..(1u64 << m)).step_by(2).map(|t| (SetMask(t), eval_direct(&w, t))).collect();
        let h = PartialFunction::new(m, points).unwrap();
        prop_assert!(decide_extension(&h).unwrap().is_extendible());
    }

    #[test]
    fn dropping_points_preserves_extendibility(h in instance(), keep in any::<u64>()) {
        if decide_extension(&h).unwrap().is_extendible() {
            let pts: Vec<_> = h.points().iter().enumerate()
                .filter(|(i, _)| keep & (1 << i) != 0)
                .map(|(_, p)| p.clone())
                .collect();
            if !pts.is_empty() {
                let sub = PartialFunction::new(h.ground_size(), pts).unwrap();
                prop_assert!(decide_extension(&sub).unwrap().is_extendible());
            }
        }
    }
}
