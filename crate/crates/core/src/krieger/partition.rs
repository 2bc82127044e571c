use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::semigroup::TransitionSemigroup;
use super::survivor::prepend;
use crate::shift::LabeledGraph;
use crate::VertexSet;

/// A partition of realized survivor sets into past-equivalence classes.
///
/// Blocks are listed in shortlex order of their least member, and members
/// within a block are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastPartition {
    blocks: Vec<Vec<VertexSet>>,
}

impl PastPartition {
    fn from_groups<K: Ord>(groups: BTreeMap<K, Vec<VertexSet>>) -> Self {
        let mut blocks: Vec<Vec<VertexSet>> = groups
            .into_values()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        blocks.sort_by(|a, b| a[0].cmp(&b[0]));
        PastPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<VertexSet>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, set: &VertexSet) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(set))
    }
}

/// Partitions by which words may precede: `C ≡ C'` iff every semigroup
/// element's range meets `C` exactly when it meets `C'`.
pub fn past_partition(realized: &[VertexSet], semigroup: &TransitionSemigroup) -> PastPartition {
    partition_by_words(realized, semigroup, usize::MAX)
}

/// Partition by preceding words of length at most `max_len` only.
pub fn partition_by_words(
    realized: &[VertexSet],
    semigroup: &TransitionSemigroup,
    max_len: usize,
) -> PastPartition {
    let ranges: Vec<VertexSet> = (0..semigroup.len())
        .filter(|&i| semigroup.witness(i).len() <= max_len)
        .map(|i| semigroup.element(i).range())
        .collect();
    let mut groups: BTreeMap<Vec<bool>, Vec<VertexSet>> = BTreeMap::new();
    for c in realized {
        let signature = ranges.iter().map(|r| r.intersects(c)).collect();
        groups.entry(signature).or_default().push(c.clone());
    }
    PastPartition::from_groups(groups)
}

/// The least `l` such that words of length at most `l` already separate
/// the classes of `partition`.
pub fn stabilization_level(
    realized: &[VertexSet],
    semigroup: &TransitionSemigroup,
    partition: &PastPartition,
) -> usize {
    let longest = (0..semigroup.len())
        .map(|i| semigroup.witness(i).len())
        .max()
        .unwrap_or(0);
    (0..=longest)
        .find(|&l| partition_by_words(realized, semigroup, l) == *partition)
        .unwrap_or(longest)
}

/// One Moore refinement step: split blocks by, for each letter, the block
/// reached by prepending that letter (or none when the result is empty).
pub fn refine_once(g: &LabeledGraph, partition: &PastPartition) -> PastPartition {
    let mut groups: BTreeMap<(usize, Vec<Option<usize>>), Vec<VertexSet>> = BTreeMap::new();
    for (b, block) in partition.blocks().iter().enumerate() {
        for c in block {
            let signature = g
                .alphabet()
                .letters()
                .map(|a| {
                    let p = prepend(g, a, c);
                    if p.is_empty() {
                        None
                    } else {
                        Some(partition.block_of(&p).unwrap_or(usize::MAX))
                    }
                })
                .collect();
            groups.entry((b, signature)).or_default().push(c.clone());
        }
    }
    PastPartition::from_groups(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krieger::semigroup::transition_semigroup;
    use crate::krieger::survivor::realized_survivor_sets;
    use crate::shift::{Alphabet, Edge};
    use alloc::vec;

    fn even_shift() -> LabeledGraph {
        LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into()],
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap()
    }

    fn pipeline(g: &LabeledGraph) -> (Vec<VertexSet>, TransitionSemigroup, PastPartition) {
        let s = transition_semigroup(g).unwrap();
        let r: Vec<VertexSet> = realized_survivor_sets(g, &s).into_iter().map(|r| r.set).collect();
        let p = past_partition(&r, &s);
        (r, s, p)
    }

    #[test]
    fn even_shift_three_singleton_blocks() {
        let (r, s, p) = pipeline(&even_shift());
        assert_eq!(p.len(), 3);
        assert!(p.blocks().iter().all(|b| b.len() == 1));
        assert_eq!(stabilization_level(&r, &s, &p), 2);
        assert_eq!(partition_by_words(&r, &s, 1).len(), 2);
        assert_eq!(partition_by_words(&r, &s, 0).len(), 1);
    }

    #[test]
    fn two_copies_merge() {
        let g = LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                Edge::new(0, 0, 1),
                Edge::new(0, 1, 0),
                Edge::new(1, 0, 0),
                Edge::new(2, 2, 1),
                Edge::new(2, 3, 0),
                Edge::new(3, 2, 0),
            ],
        )
        .unwrap();
        // survivor sets are unions across the copies: {a,c}, {b,d}, {a,b,c,d}
        let (r, _, p) = pipeline(&g);
        assert_eq!(r.len(), 3);
        assert_eq!(p.len(), 3);
        assert_eq!(r[0], VertexSet::from_members(4, [0, 2]));
    }

    #[test]
    fn full_shift_single_block() {
        let g = LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["v".into()],
            vec![Edge::new(0, 0, 0), Edge::new(0, 0, 1)],
        )
        .unwrap();
        let (r, s, p) = pipeline(&g);
        assert_eq!(p.len(), 1);
        assert_eq!(stabilization_level(&r, &s, &p), 0);
    }

    #[test]
    fn moore_step_is_stable() {
        let g = even_shift();
        let (_, _, p) = pipeline(&g);
        assert_eq!(refine_once(&g, &p), p);
    }
}
