#![allow(dead_code)]

use proptest::prelude::*;
use sofic_core::automata::trim_essential;
use sofic_core::shift::{Alphabet, Edge, LabeledGraph};

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| i.to_string())).unwrap()
}

pub fn graph(k: usize, n: usize, edges: &[(usize, usize, usize)]) -> LabeledGraph {
    LabeledGraph::new(
        alphabet(k),
        (0..n).map(|v| format!("v{v}")).collect(),
        edges.iter().map(|&(s, r, l)| Edge::new(s, r, l)).collect(),
    )
    .unwrap()
}

/// Arbitrary labeled graphs with at most `max_vertices` vertices and
/// `max_letters` letters, possibly inessential or empty.
pub fn arb_graph(max_vertices: usize, max_letters: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_vertices, 1..=max_letters).prop_flat_map(|(n, k)| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * n * k).prop_map(move |bits| {
            let edges: Vec<(usize, usize, usize)> = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i / (n * k), (i / k) % n, i % k))
                .collect();
            graph(k, n, &edges)
        })
    })
}

/// Essential parts of arbitrary graphs; empty shifts are filtered out.
pub fn arb_essential(max_vertices: usize, max_letters: usize) -> impl Strategy<Value = LabeledGraph> {
    arb_graph(max_vertices, max_letters).prop_filter_map("empty shift", |g| trim_essential(&g).ok())
}

/// Fixed seed and no failure files, so runs are reproducible.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x50f1c),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
