//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls the algorithms it is used to check.
#![allow(dead_code)]

use coverext::gadgets::Graph;
use coverext::{PartialFunction, Rational, SetMask, TotalSetFunction, WCoefficients};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn masks(m: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << m)
}

/// `w(S) = Σ_{T : S ∪ T = [m]} (-1)^{|S ∩ T| + 1} f(T)`, term by term.
pub fn w_direct(f: &TotalSetFunction, s: u64) -> Rational {
    let m = f.ground_size();
    let full = (1u64 << m) - 1;
    let mut acc = Rational::zero();
    for t in masks(m) {
        if s | t != full {
            continue;
        }
        let v = f.value(SetMask(t)).clone();
        if (s & t).count_ones() % 2 == 1 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

/// `f(T) = Σ_{S ∩ T ≠ ∅} w(S)`, term by term.
pub fn eval_direct(w: &[(u64, Rational)], t: u64) -> Rational {
    w.iter()
        .filter(|(s, _)| s & t != 0)
        .fold(Rational::zero(), |a, (_, v)| a + v.clone())
}

/// Minimum `f(R)/f_v` over every `v` with `f_v > 0` and every `R ⊆ A ∖ {v}`
/// covering `T_v`; `None` for `+∞`.
pub fn kappa_brute(h: &PartialFunction) -> Option<Rational> {
    let n = h.len();
    let mut best: Option<Rational> = None;
    for v in 0..n {
        let fv = h.value(v).clone();
        if fv <= Rational::zero() {
            continue;
        }
        for r in 0u64..(1 << n) {
            if r & (1 << v) != 0 {
                continue;
            }
            let mut cover = 0u64;
            let mut cost = Rational::zero();
            for w in 0..n {
                if r & (1 << w) != 0 {
                    cover |= h.set(w).0;
                    cost += h.value(w).clone();
                }
            }
            if h.set(v).0 & !cover != 0 {
                continue;
            }
            let ratio = cost / fv.clone();
            if best.as_ref().map_or(true, |b| ratio < *b) {
                best = Some(ratio);
            }
        }
    }
    best
}

/// Recursive search for `k` sets covering `1..=n`.
pub fn cover_search(universe: u64, sets: &[u64], k: usize) -> bool {
    if universe == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let pivot = universe.trailing_zeros();
    sets.iter()
        .filter(|s| *s & (1 << pivot) != 0)
        .any(|s| cover_search(universe & !s, sets, k - 1))
}

/// `(max_S w(δ(S)), max_S w(E⁺(S)))` over nonempty `S`, straight from the
/// edge list.
pub fn cut_and_span_max(n: usize, edges: &[(usize, usize)], y: &[Rational]) -> (Rational, Rational) {
    let mut cut: Option<Rational> = None;
    let mut span: Option<Rational> = None;
    for s in 1u64..(1 << n) {
        let inside = |v: usize| s & (1 << (v - 1)) != 0;
        let mut c = Rational::zero();
        let mut p = Rational::zero();
        for (&(u, v), w) in edges.iter().zip(y) {
            if inside(u) != inside(v) {
                c += w.clone();
            }
            if inside(u) || inside(v) {
                p += w.clone();
            }
        }
        if cut.as_ref().map_or(true, |b| c > *b) {
            cut = Some(c);
        }
        if span.as_ref().map_or(true, |b| p > *b) {
            span = Some(p);
        }
    }
    (cut.unwrap(), span.unwrap())
}

pub fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(lo * d..=hi * d), d)
}

/// Sparse nonnegative coefficients on `m` elements.
pub fn random_w(rng: &mut impl Rng, m: usize, support: usize) -> Vec<(u64, Rational)> {
    (0..support)
        .map(|_| (rng.gen_range(1..(1u64 << m)), random_rational(rng, 0, 5, 6)))
        .collect()
}

/// Distinct nonempty sets; values come from a random coverage function half
/// of the time (so the instance is extendible) and are otherwise arbitrary.
pub fn random_instance(rng: &mut impl Rng, max_m: usize, max_n: usize, positive: bool) -> PartialFunction {
    let m = rng.gen_range(1..=max_m);
    let cap = (1usize << m) - 1;
    let n = rng.gen_range(1..=max_n.min(cap));
    let mut all: Vec<u64> = (1..(1u64 << m)).collect();
    all.shuffle(rng);
    let sets = &all[..n];
    let from_coverage = rng.gen_bool(0.5);
    let support = rng.gen_range(1..=4);
    let w = random_w(rng, m, support);
    let points = sets
        .iter()
        .map(|&t| {
            let mut v = if from_coverage {
                eval_direct(&w, t)
            } else {
                random_rational(rng, 0, 6, 3)
            };
            if positive && v <= Rational::zero() {
                v = Rational::one();
            }
            (SetMask(t), v)
        })
        .collect();
    PartialFunction::new(m, points).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, max_n: usize, weighted: bool) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.2..0.9);
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    let len = edges.len();
    let g = Graph::new(n, edges).unwrap();
    if weighted {
        let w = (0..len).map(|_| random_rational(rng, -1, 1, 4)).collect();
        g.with_weights(w).unwrap()
    } else {
        g
    }
}

pub fn coefficients(w: &[(u64, Rational)], m: usize) -> WCoefficients {
    WCoefficients::new(m, w.iter().map(|(s, v)| (SetMask(*s), v.clone()))).unwrap()
}
