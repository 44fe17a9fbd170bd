//! Shared test helpers: seeded random graphs and exhaustive enumeration
//! over small weight alphabets.

#![allow(dead_code)]

use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use stochstab::graph::PerturbationGraph;
use stochstab::semiring::MonomialClass;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fresh state names `s0`, `s1`, ….
pub fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// A random exponent p/q in [0, 5] with denominator up to 4.
pub fn random_exponent(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.gen_range(1..=4);
    let num: i64 = rng.gen_range(0..=5 * den);
    BigRational::new(num.into(), den.into())
}

/// A random weight: an arc with probability `arc_probability`, else zero.
pub fn random_weight(rng: &mut ChaCha8Rng, arc_probability: f64) -> MonomialClass {
    if rng.gen_bool(arc_probability) {
        MonomialClass::from_exponent(random_exponent(rng))
    } else {
        MonomialClass::Zero
    }
}

/// Random graph on `n` singleton vertices.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    arc_probability: f64,
) -> PerturbationGraph<MonomialClass> {
    let names = state_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut g = PerturbationGraph::from_singletons(&refs, &[]);
    let slots: Vec<(usize, usize)> = g.off_diagonal_pairs().collect();
    for (i, j) in slots {
        let w = random_weight(rng, arc_probability);
        g.set_weight(i, j, w);
    }
    g
}

/// Random strongly connected graph: a random full cycle plus extra arcs.
pub fn random_strongly_connected(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> PerturbationGraph<MonomialClass> {
    assert!(n >= 2);
    let mut g = random_graph(rng, n, 0.4);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 0..n {
        let i = order[k];
        let j = order[(k + 1) % n];
        g.set_weight(i, j, MonomialClass::from_exponent(random_exponent(rng)));
    }
    g
}

/// Dense graph with uniform integer exponents, as used by the runtime
/// scaling benchmark.
pub fn dense_benchmark_graph(rng: &mut ChaCha8Rng, n: usize) -> PerturbationGraph<MonomialClass> {
    let names = state_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut g = PerturbationGraph::from_singletons(&refs, &[]);
    let slots: Vec<(usize, usize)> = g.off_diagonal_pairs().collect();
    for (i, j) in slots {
        let w = MonomialClass::exp(rng.gen_range(0..=15));
        g.set_weight(i, j, w);
    }
    g
}

/// Visits every assignment of `alphabet` weights to the off-diagonal slots
/// of an `n`-vertex graph, mutating a single graph in place (odometer
/// order, so consecutive graphs differ in few slots). The first
/// `prefix.len()` slots are pinned to the given alphabet indices, which
/// lets callers split the enumeration across threads. Returns the number
/// of graphs visited.
pub fn for_each_graph<F>(
    n: usize,
    alphabet: &[MonomialClass],
    prefix: &[usize],
    mut f: F,
) -> u64
where
    F: FnMut(&PerturbationGraph<MonomialClass>),
{
    let names = state_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut g = PerturbationGraph::from_singletons(&refs, &[]);
    let slots: Vec<(usize, usize)> = g.off_diagonal_pairs().collect();
    assert!(prefix.len() <= slots.len());
    for (pos, &digit) in prefix.iter().enumerate() {
        let (i, j) = slots[pos];
        g.set_weight(i, j, alphabet[digit].clone());
    }
    let free = &slots[prefix.len()..];
    let mut digits = vec![0usize; free.len()];
    for &(i, j) in free {
        g.set_weight(i, j, alphabet[0].clone());
    }

    let base = alphabet.len();
    let mut count = 0u64;
    loop {
        f(&g);
        count += 1;
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return count;
            }
            digits[pos] += 1;
            let (i, j) = free[pos];
            if digits[pos] < base {
                g.set_weight(i, j, alphabet[digits[pos]].clone());
                break;
            }
            digits[pos] = 0;
            g.set_weight(i, j, alphabet[0].clone());
            pos += 1;
        }
    }
}

/// The exponent alphabet {Zero, 1, ε, ε²} used by the exhaustive checks.
pub fn small_alphabet() -> Vec<MonomialClass> {
    vec![
        MonomialClass::Zero,
        MonomialClass::exp(0),
        MonomialClass::exp(1),
        MonomialClass::exp(2),
    ]
}
