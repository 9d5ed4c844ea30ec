mod common;

use common::*;
use coverext::extension::decide_extension;
use coverext::gadgets::{
    check_span_membership, chromatic_gadget, cut_to_span_gadget, densest_cut_gadget, equalize_coloring,
    fractional_chromatic, has_set_cover, max_span_sum, setcover_membership_gadget, Graph, Polytope,
};
use coverext::{Rational, SetMask};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn weighted_graph() -> impl Strategy<Value = Graph> {
    any::<u64>().prop_map(|seed| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), 6, true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cut_to_span_identity_and_sign(g in weighted_graph()) {
        prop_assume!(!g.edges().is_empty());
        let out = cut_to_span_gadget(&g).unwrap();
        let n = g.num_vertices();
        for s in masks(n) {
            prop_assert_eq!(
                out.scale.clone() * out.graph.span_weight(SetMask(s)),
                g.cut_weight(SetMask(s)) / z(2)
            );
        }
        let (max_cut, _) = cut_and_span_max(n, g.edges(), g.weights().unwrap());
        let (_, max_span) = cut_and_span_max(n + 2, out.graph.edges(), out.graph.weights().unwrap());
        prop_assert_eq!(max_cut > Rational::zero(), max_span > Rational::zero());
        let inside = check_span_membership(&out.graph, out.graph.weights().unwrap()).unwrap().is_inside();
        prop_assert_eq!(inside, max_cut <= Rational::zero());
    }

    #[test]
    fn densest_cut_identity(seed in any::<u64>(), num in 1i64..12, den in 1i64..5) {
        let g = random_graph(&mut ChaCha8Rng::seed_from_u64(seed), 6, false);
        let m = q(num, den);
        let out = densest_cut_gadget(&g, &m).unwrap();
        let n = g.num_vertices();
        let mut strict = false;
        let mut weak = false;
        let mut any_dense = false;
        let mut any_at_least = false;
        for s in masks(n).filter(|&s| s != 0 && s != (1 << n) - 1) {
            let size = s.count_ones() as i64;
            let cut = g.cut_size(SetMask(s)) as i64;
            let gadget = out.scale.clone() * out.graph.cut_weight(SetMask(s));
            prop_assert_eq!(gadget.clone(), z(cut) - m.clone() * z(size * (n as i64 - size)));
            let density = q(cut, size * (n as i64 - size));
            strict |= gadget > Rational::zero();
            weak |= gadget >= Rational::zero();
            any_dense |= density > m;
            any_at_least |= density >= m;
        }
        prop_assert_eq!(strict, any_dense);
        prop_assert_eq!(weak, any_at_least);
    }

    #[test]
    fn set_cover_margins(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let universe = rng.gen_range(2..=5);
        let sets: Vec<u64> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..(1u64 << universe))).collect();
        let k = rng.gen_range(1..=sets.len());
        let masks_: Vec<SetMask> = sets.iter().map(|&s| SetMask(s)).collect();
        let out = setcover_membership_gadget(universe, &masks_, k).unwrap();
        let Polytope::Coverage { ground_size, family } = &out.instance.polytope else { unreachable!() };
        let (_, best) = max_span_sum(*ground_size, family, &out.instance.point).unwrap();
        let margin = (z(2) * out.scale.clone()).recip();
        let yes = cover_search((1u64 << universe) - 1, &sets, k);
        prop_assert_eq!(yes, has_set_cover(universe, &masks_, k));
        if yes {
            prop_assert!(best >= margin);
        } else {
            prop_assert!(best <= -margin);
        }
    }
}

#[test]
fn chromatic_gadget_tracks_fractional_chromatic_number() {
    let graphs = [
        Graph::complete(3),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::path(4),
        Graph::new(3, vec![]).unwrap(),
    ];
    for g in &graphs {
        let (chi, coloring) = fractional_chromatic(g).unwrap();
        assert!(coloring.is_valid_for(g, false));
        let n = g.num_vertices() as i64;
        for den in 1..=3 {
            for num in den..=n * den {
                let k = q(num, den);
                let Ok(h) = chromatic_gadget(g, &k) else { continue };
                assert_eq!(decide_extension(&h).unwrap().is_extendible(), chi <= k, "k = {k}, chi* = {chi}");
            }
        }
    }
}

#[test]
fn equalized_colorings_are_exact() {
    for g in [Graph::cycle(5), Graph::complete(4), Graph::path(3)] {
        let (chi, _) = fractional_chromatic(&g).unwrap();
        let n = z(g.num_vertices() as i64);
        for step in 0..=4 {
            let t = chi.clone() + (n.clone() - chi.clone()) * q(step, 4);
            let c = equalize_coloring(&g, &t).unwrap();
            assert!(c.is_valid_for(&g, true));
            assert_eq!(c.total, t);
        }
    }
}
