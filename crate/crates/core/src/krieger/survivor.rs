use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::semigroup::TransitionSemigroup;
use crate::shift::{LabeledGraph, Ray, Word};
use crate::VertexSet;

/// Vertices emitting `period` repeated forever: the greatest fixed point of
/// `C ↦ pre_period(C)`, reached by iterating down from all vertices.
pub fn periodic_emitters(g: &LabeledGraph, period: &[usize]) -> VertexSet {
    let mut current = g.all_vertices();
    loop {
        let next = g.word_predecessors(&current, period);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// The survivor set `I(x)`: vertices of `g` from which the ray `x` can be
/// emitted. Empty exactly when `x` is not a ray of the presentation.
pub fn survivor_set(g: &LabeledGraph, x: &Ray) -> VertexSet {
    let tail = periodic_emitters(g, x.period());
    g.word_predecessors(&tail, x.preperiod())
}

/// `{v : v -letter-> u, u ∈ set}`, which equals `I(letter·x)` when `set = I(x)`.
pub fn prepend(g: &LabeledGraph, letter: usize, set: &VertexSet) -> VertexSet {
    g.predecessors(set, letter)
}

/// A realized survivor set with a ray attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedSet {
    pub set: VertexSet,
    pub witness: Ray,
}

/// Every survivor set `I(x)` of a ray `x` of the presentation.
///
/// `dom(R_w)` is the set of vertices emitting `w`, and `I(x)` is the
/// eventual value of `dom(R_{x_1…x_n})`. So a domain `d` is realized iff
/// some element with domain `d` starts an infinite walk (element to element
/// by appending letters) along which the domain stays `d`. Such walks are
/// exactly those reaching a cycle of the constant-domain subgraph; elements
/// that cannot are pruned until none remain.
///
/// Sets are returned in shortlex order, each with a witness ray.
pub fn realized_survivor_sets(g: &LabeledGraph, semigroup: &TransitionSemigroup) -> Vec<RealizedSet> {
    let letters = g.alphabet().len();
    let n = semigroup.len();
    let domains: Vec<VertexSet> = semigroup.elements().iter().map(|r| r.domain()).collect();
    let same_domain_succ: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|i| {
            (0..letters)
                .map(|a| (a, semigroup.step(i, a)))
                .filter(|&(_, j)| domains[j] == domains[i])
                .collect()
        })
        .collect();

    let mut alive: Vec<bool> = domains.iter().map(|d| !d.is_empty()).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if alive[i] && !same_domain_succ[i].iter().any(|&(_, j)| alive[j]) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut best: BTreeMap<VertexSet, Ray> = BTreeMap::new();
    for start in (0..n).filter(|&i| alive[i]) {
        if best.contains_key(&domains[start]) {
            // elements are in shortlex witness order; the first hit is kept
            continue;
        }
        let mut visited: BTreeMap<usize, usize> = BTreeMap::new();
        let mut letters_taken: Vec<usize> = Vec::new();
        let mut cur = start;
        while !visited.contains_key(&cur) {
            visited.insert(cur, letters_taken.len());
            let &(a, j) = same_domain_succ[cur]
                .iter()
                .find(|&&(_, j)| alive[j])
                .expect("alive element keeps an alive successor");
            letters_taken.push(a);
            cur = j;
        }
        let loop_start = visited[&cur];
        let pre = semigroup.witness(start).concat(&letters_taken[..loop_start]);
        let period = Word::from(&letters_taken[loop_start..]);
        let ray = Ray::new(pre, period).expect("cycle is nonempty");
        best.insert(domains[start].clone(), ray);
    }
    best.into_iter()
        .map(|(set, witness)| RealizedSet { set, witness })
        .collect()
}

/// Brute-force survivor sets over all ultimately periodic rays `u·v^∞`
/// with `|u| ≤ bound` and `1 ≤ |v| ≤ bound`.
///
/// Each distinct relation `R_v` and each distinct set `pre_u(C)` is
/// expanded once per length, which yields the same collection as listing
/// every pair `(u, v)` explicitly. A level equal to an earlier one starts
/// a cycle that adds nothing new, so iteration stops there.
pub fn enumerate_survivor_sets(g: &LabeledGraph, bound: usize) -> BTreeSet<VertexSet> {
    use super::semigroup::TransitionRelation;
    let letters = g.alphabet().len();
    let letter_rel: Vec<TransitionRelation> =
        (0..letters).map(|a| TransitionRelation::of_letter(g, a)).collect();

    let mut tails: BTreeSet<VertexSet> = BTreeSet::new();
    let mut level: BTreeSet<TransitionRelation> = BTreeSet::new();
    level.insert(TransitionRelation::identity(g.vertex_count()));
    let mut seen_levels = BTreeSet::new();
    for _ in 0..bound {
        level = level
            .iter()
            .flat_map(|r| letter_rel.iter().map(move |l| r.then(l)))
            .collect();
        if !seen_levels.insert(level.clone()) {
            break;
        }
        for r in &level {
            tails.insert(gfp_of_relation(g, r));
        }
    }

    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    let mut frontier: BTreeSet<VertexSet> = tails.into_iter().filter(|t| !t.is_empty()).collect();
    found.extend(frontier.iter().cloned());
    let mut seen_frontiers = BTreeSet::new();
    for _ in 0..bound {
        frontier = frontier
            .iter()
            .flat_map(|c| (0..letters).map(move |a| prepend(g, a, c)))
            .filter(|c| !c.is_empty())
            .collect();
        if !seen_frontiers.insert(frontier.clone()) {
            break;
        }
        found.extend(frontier.iter().cloned());
    }
    found
}

fn gfp_of_relation(g: &LabeledGraph, r: &super::semigroup::TransitionRelation) -> VertexSet {
    let mut current = g.all_vertices();
    loop {
        let next = VertexSet::from_members(
            g.vertex_count(),
            current
                .iter()
                .filter(|&s| current.iter().any(|t| r.contains(s, t))),
        );
        if next == current {
            return current;
        }
        current = next;
    }
}
