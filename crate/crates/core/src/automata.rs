//! Conditioning of presentations: trimming and forward determinization.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::shift::{words_of_length, Edge, LabeledGraph};
use crate::{Error, Result, VertexSet};

/// Vertices that lie on a bi-infinite path, i.e. survive repeated removal
/// of vertices lacking an incoming or an outgoing edge.
fn essential_vertices(g: &LabeledGraph) -> VertexSet {
    let n = g.vertex_count();
    let mut alive = VertexSet::full(n);
    loop {
        let mut has_in = alloc::vec![false; n];
        let mut has_out = alloc::vec![false; n];
        for e in g.edges() {
            if alive.contains(e.source) && alive.contains(e.range) {
                has_out[e.source] = true;
                has_in[e.range] = true;
            }
        }
        let next = VertexSet::from_members(n, alive.iter().filter(|&v| has_in[v] && has_out[v]));
        if next == alive {
            return alive;
        }
        alive = next;
    }
}

/// Restricts `g` to its essential part.
pub fn trim_essential(g: &LabeledGraph) -> Result<LabeledGraph> {
    let keep = essential_vertices(g);
    if keep.is_empty() {
        return Err(Error::EmptyShift);
    }
    Ok(g.induced(&keep))
}

/// Subset construction run forward from every singleton, followed by
/// trimming. States are the reachable nonempty vertex sets, numbered in
/// shortlex order of their member lists.
pub fn make_right_resolving(g: &LabeledGraph) -> LabeledGraph {
    let n = g.vertex_count();
    let letters = g.alphabet().len();
    let mut seen: BTreeMap<VertexSet, ()> = BTreeMap::new();
    let mut queue: VecDeque<VertexSet> = (0..n).map(|v| VertexSet::singleton(n, v)).collect();
    let mut transitions = Vec::new();
    while let Some(state) = queue.pop_front() {
        if seen.insert(state.clone(), ()).is_some() {
            continue;
        }
        for a in 0..letters {
            let next = g.successors(&state, a);
            if next.is_empty() {
                continue;
            }
            transitions.push((state.clone(), next.clone(), a));
            if !seen.contains_key(&next) {
                queue.push_back(next);
            }
        }
    }
    let index: BTreeMap<&VertexSet, usize> =
        seen.keys().enumerate().map(|(i, s)| (s, i)).collect();
    let names = seen
        .keys()
        .map(|s| {
            if s.len() == 1 {
                String::from(g.vertex_name(s.iter().next().unwrap()))
            } else {
                let parts: Vec<&str> = s.iter().map(|v| g.vertex_name(v)).collect();
                alloc::format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let mut edges: Vec<Edge> = transitions
        .iter()
        .map(|(s, t, a)| Edge::new(index[s], index[t], *a))
        .collect();
    edges.sort();
    let det = LabeledGraph::from_parts(g.alphabet().clone(), names, edges);
    let keep = essential_vertices(&det);
    det.induced(&keep)
}

/// Whether `g1` and `g2` admit the same words of every length up to `k`.
pub fn language_equal_upto(g1: &LabeledGraph, g2: &LabeledGraph, k: usize) -> bool {
    g1.alphabet() == g2.alphabet()
        && (0..=k).all(|j| words_of_length(g1, j) == words_of_length(g2, j))
}
