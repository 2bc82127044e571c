use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::partition::{past_partition, stabilization_level, PastPartition};
use super::semigroup::{transition_semigroup_with_limit, DEFAULT_SEMIGROUP_LIMIT};
use super::survivor::{periodic_emitters, prepend, realized_survivor_sets, survivor_set, RealizedSet};
use crate::automata::{make_right_resolving, trim_essential};
use crate::shift::{words_of_length, Alphabet, Edge, LabeledGraph, Ray, Word};
use crate::{Error, Result, VertexSet};

/// Cap on survivor-set evaluations spent searching for least
/// representatives before falling back to the constructed witnesses.
const REPRESENTATIVE_BUDGET: usize = 200_000;

/// One past-equivalence class: its realized survivor sets and a
/// representative ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverClass {
    survivor_sets: Vec<VertexSet>,
    representative: Ray,
}

impl CoverClass {
    pub fn survivor_sets(&self) -> &[VertexSet] {
        &self.survivor_sets
    }

    pub fn representative(&self) -> &Ray {
        &self.representative
    }
}

/// The left Krieger cover: one vertex per past-equivalence class and an
/// edge labeled `j` from `k` to `i` whenever prepending `j` to class `i`
/// lands in class `k`.
///
/// Class indices are 0-based; renderings show them 1-based as `E1, E2, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KriegerCover {
    presentation: LabeledGraph,
    classes: Vec<CoverClass>,
    edges: Vec<Edge>,
    class_of_set: BTreeMap<VertexSet, usize>,
    semigroup_size: usize,
    stabilization_level: usize,
}

pub fn build_cover(g: &LabeledGraph) -> Result<KriegerCover> {
    build_cover_with_limit(g, DEFAULT_SEMIGROUP_LIMIT)
}

pub fn build_cover_with_limit(g: &LabeledGraph, semigroup_limit: usize) -> Result<KriegerCover> {
    let presentation = make_right_resolving(&trim_essential(g)?);
    let semigroup = transition_semigroup_with_limit(&presentation, semigroup_limit)?;
    let realized = realized_survivor_sets(&presentation, &semigroup);
    let sets: Vec<VertexSet> = realized.iter().map(|r| r.set.clone()).collect();
    let partition = past_partition(&sets, &semigroup);
    let level = stabilization_level(&sets, &semigroup, &partition);
    let edges = cover_edges(&presentation, &partition)?;
    let reps = representatives(&presentation, &partition, &realized);

    let mut class_of_set = BTreeMap::new();
    for (i, block) in partition.blocks().iter().enumerate() {
        for c in block {
            class_of_set.insert(c.clone(), i);
        }
    }
    let classes = partition
        .blocks()
        .iter()
        .zip(reps)
        .map(|(b, representative)| CoverClass {
            survivor_sets: b.clone(),
            representative,
        })
        .collect();
    let cover = KriegerCover {
        presentation,
        classes,
        edges,
        class_of_set,
        semigroup_size: semigroup.len(),
        stabilization_level: level,
    };
    for i in 0..cover.class_count() {
        if !cover.edges.iter().any(|e| e.range == i) || !cover.edges.iter().any(|e| e.source == i) {
            return Err(Error::CoverInconsistency(format!(
                "class E{} lacks an incoming or an outgoing edge",
                i + 1
            )));
        }
    }
    Ok(cover)
}

fn cover_edges(g: &LabeledGraph, partition: &PastPartition) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for (i, block) in partition.blocks().iter().enumerate() {
        for a in g.alphabet().letters() {
            let mut target: Option<Option<usize>> = None;
            for c in block {
                let p = prepend(g, a, c);
                let k = if p.is_empty() {
                    None
                } else {
                    Some(partition.block_of(&p).ok_or_else(|| {
                        Error::CoverInconsistency(format!(
                            "prepending letter {a} gives an unrealized survivor set {p:?}"
                        ))
                    })?)
                };
                match target {
                    None => target = Some(k),
                    Some(t) if t != k => {
                        return Err(Error::CoverInconsistency(format!(
                            "members of class E{} disagree on letter {a}",
                            i + 1
                        )))
                    }
                    Some(_) => {}
                }
            }
            if let Some(Some(k)) = target {
                edges.push(Edge::new(k, i, a));
            }
        }
    }
    edges.sort();
    Ok(edges)
}

type RayKey = (usize, Word, Word);

fn ray_key(r: &Ray) -> RayKey {
    (
        r.preperiod().len() + r.period().len(),
        r.preperiod().clone(),
        r.period().clone(),
    )
}

/// Least ray `u·v^∞` per class under (|u| + |v|, u, v), found by
/// enumeration; witnesses from the realized-set computation bound the
/// search and stand in when the evaluation budget runs out.
fn representatives(g: &LabeledGraph, partition: &PastPartition, realized: &[RealizedSet]) -> Vec<Ray> {
    let m = partition.len();
    let mut fallback: Vec<Option<Ray>> = alloc::vec![None; m];
    for r in realized {
        let b = partition.block_of(&r.set).expect("realized set is partitioned");
        if fallback[b].as_ref().is_none_or(|f| ray_key(&r.witness) < ray_key(f)) {
            fallback[b] = Some(r.witness.clone());
        }
    }
    let fallback: Vec<Ray> = fallback.into_iter().map(|r| r.expect("block is nonempty")).collect();
    let max_total = fallback.iter().map(|r| ray_key(r).0).max().unwrap_or(0);

    let mut found: Vec<Option<Ray>> = alloc::vec![None; m];
    let mut remaining = m;
    let mut spent = 0usize;
    'search: for total in 1..=max_total {
        for ulen in 0..total {
            let vlen = total - ulen;
            let k = g.alphabet().len();
            let too_many = |len: usize| {
                k.checked_pow(len as u32)
                    .is_none_or(|c| c > REPRESENTATIVE_BUDGET)
            };
            if too_many(vlen) || too_many(ulen) {
                break 'search;
            }
            let tails: Vec<(Word, VertexSet)> = all_words(g.alphabet(), vlen)
                .into_iter()
                .map(|v| {
                    let t = periodic_emitters(g, &v);
                    (v, t)
                })
                .filter(|(_, t)| !t.is_empty())
                .collect();
            for u in words_of_length(g, ulen) {
                for (v, tail) in &tails {
                    spent += 1;
                    if spent > REPRESENTATIVE_BUDGET {
                        break 'search;
                    }
                    let set = g.word_predecessors(tail, &u);
                    if set.is_empty() {
                        continue;
                    }
                    let Some(b) = partition.block_of(&set) else {
                        continue;
                    };
                    if found[b].is_none() {
                        found[b] = Some(Ray::new(u.clone(), v.clone()).expect("nonempty period"));
                        remaining -= 1;
                        if remaining == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .zip(fallback)
        .map(|(f, fb)| f.unwrap_or(fb))
        .collect()
}

fn all_words(alphabet: &Alphabet, len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| alphabet.letters().map(move |a| w.concat(&[a])))
            .collect();
    }
    out
}

impl KriegerCover {
    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    /// The right-resolving essential presentation the classes live on.
    pub fn presentation(&self) -> &LabeledGraph {
        &self.presentation
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[CoverClass] {
        &self.classes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn semigroup_size(&self) -> usize {
        self.semigroup_size
    }

    /// Least `l` for which pasts of length at most `l` separate the classes.
    pub fn stabilization_level(&self) -> usize {
        self.stabilization_level
    }

    pub fn class_of_set(&self, set: &VertexSet) -> Option<usize> {
        self.class_of_set.get(set).copied()
    }

    /// The class of an admissible ray, `None` when the ray is not admissible.
    pub fn class_of_ray(&self, x: &Ray) -> Option<usize> {
        let s = survivor_set(&self.presentation, x);
        if s.is_empty() {
            None
        } else {
            self.class_of_set(&s)
        }
    }

    /// A copy carrying a different edge list. Used to build corrupted
    /// covers for negative controls; no invariant is re-checked.
    pub fn with_edges(&self, edges: Vec<Edge>) -> KriegerCover {
        KriegerCover {
            edges,
            ..self.clone()
        }
    }

    /// The path labeled `word` ending at class `end`, found by walking in-edges
    /// backwards. Left-resolving covers have at most one. The empty word
    /// yields the empty path.
    pub fn unique_labeled_path(&self, word: &[usize], end: usize) -> Option<Vec<usize>> {
        let mut path = Vec::with_capacity(word.len());
        let mut cur = end;
        for &a in word.iter().rev() {
            let e = self
                .edges
                .iter()
                .position(|e| e.range == cur && e.label == a)?;
            path.push(e);
            cur = self.edges[e].source;
        }
        path.reverse();
        Some(path)
    }

    /// Classes `i` with a path labeled `word` ending at `i`, found by
    /// forward simulation from every class.
    pub fn ranges_of_word(&self, word: &[usize]) -> BTreeSet<usize> {
        let mut cur: BTreeSet<usize> = (0..self.class_count()).collect();
        for &a in word {
            cur = self
                .edges
                .iter()
                .filter(|e| e.label == a && cur.contains(&e.source))
                .map(|e| e.range)
                .collect();
        }
        cur
    }

    /// Every path (as edge indices) whose label sequence is `word`.
    pub fn paths_labeled(&self, word: &[usize]) -> Vec<Vec<usize>> {
        let Some((&first, rest)) = word.split_first() else {
            return Vec::new();
        };
        let mut out_edges: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.class_count()];
        for (i, e) in self.edges.iter().enumerate() {
            if e.source < out_edges.len() {
                out_edges[e.source].push(i);
            }
        }
        let mut paths: Vec<Vec<usize>> = (0..self.edges.len())
            .filter(|&e| self.edges[e].label == first)
            .map(|e| alloc::vec![e])
            .collect();
        for &a in rest {
            let mut next = Vec::new();
            for p in &paths {
                let end = self.edges[*p.last().unwrap()].range;
                for &f in out_edges.get(end).into_iter().flatten() {
                    if self.edges[f].label == a {
                        let mut q = Vec::with_capacity(p.len() + 1);
                        q.extend_from_slice(p);
                        q.push(f);
                        next.push(q);
                    }
                }
            }
            paths = next;
        }
        paths
    }

    pub fn edge_matrix(&self) -> Result<EdgeMatrix> {
        edge_matrix(self)
    }
}

/// Square 0/1 matrix over cover edges: `B(e, f) = 1` iff `r(e) = s(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeMatrix {
    size: usize,
    entries: Vec<u8>,
}

impl EdgeMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "edge matrix must be square");
        EdgeMatrix {
            size,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, e: usize, f: usize) -> u8 {
        self.entries[e * self.size + f]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    /// `P B Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> EdgeMatrix {
        let n = self.size;
        let mut entries = alloc::vec![0; n * n];
        for e in 0..n {
            for f in 0..n {
                entries[perm[e] * n + perm[f]] = self.get(e, f);
            }
        }
        EdgeMatrix { size: n, entries }
    }
}

pub fn edge_matrix(cover: &KriegerCover) -> Result<EdgeMatrix> {
    let edges = cover.edges();
    let n = edges.len();
    let mut entries = alloc::vec![0u8; n * n];
    for (i, e) in edges.iter().enumerate() {
        for (j, f) in edges.iter().enumerate() {
            if e.range == f.source {
                entries[i * n + j] = 1;
            }
        }
    }
    let m = EdgeMatrix { size: n, entries };
    for i in 0..n {
        if (0..n).all(|j| m.get(i, j) == 0) {
            return Err(Error::ZeroRowOrColumn { index: i, row: true });
        }
        if (0..n).all(|j| m.get(j, i) == 0) {
            return Err(Error::ZeroRowOrColumn { index: i, row: false });
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::{sft_to_graph, SftSpec};
    use alloc::vec;

    fn even_shift() -> LabeledGraph {
        LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into()],
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap()
    }

    fn full_shift(n: usize) -> LabeledGraph {
        let symbols: Vec<alloc::string::String> = (0..n).map(|i| format!("{i}")).collect();
        LabeledGraph::new(
            Alphabet::new(symbols).unwrap(),
            vec!["v".into()],
            (0..n).map(|a| Edge::new(0, 0, a)).collect(),
        )
        .unwrap()
    }

    fn golden_mean() -> LabeledGraph {
        sft_to_graph(&SftSpec {
            alphabet: Alphabet::new(["0", "1"]).unwrap(),
            forbidden: vec![Word::from(vec![1, 1])],
        })
        .unwrap()
    }

    fn ray(u: &[usize], v: &[usize]) -> Ray {
        Ray::new(u.into(), v.into()).unwrap()
    }

    #[test]
    fn even_shift_cover_matches_printed_graph() {
        let c = build_cover(&even_shift()).unwrap();
        assert_eq!(c.class_count(), 3);
        // 1-based: (1→1:1), (1→2:0), (2→1:0), (1→3:1), (3→3:0)
        assert_eq!(
            c.edges(),
            &[
                Edge::new(0, 0, 1),
                Edge::new(0, 1, 0),
                Edge::new(0, 2, 1),
                Edge::new(1, 0, 0),
                Edge::new(2, 2, 0),
            ]
        );
        assert_eq!(c.class_of_ray(&ray(&[1], &[0])), Some(0));
        assert_eq!(c.class_of_ray(&ray(&[0, 1], &[0])), Some(1));
        assert_eq!(c.class_of_ray(&ray(&[], &[0])), Some(2));
        assert_eq!(c.stabilization_level(), 2);
    }

    #[test]
    fn even_shift_representatives() {
        let c = build_cover(&even_shift()).unwrap();
        let reps: Vec<&Ray> = c.classes().iter().map(|k| k.representative()).collect();
        assert_eq!(reps, vec![&ray(&[], &[1]), &ray(&[0], &[1]), &ray(&[], &[0])]);
        for (i, k) in c.classes().iter().enumerate() {
            assert_eq!(c.class_of_ray(k.representative()), Some(i));
        }
    }

    #[test]
    fn full_two_shift_cover() {
        let c = build_cover(&full_shift(2)).unwrap();
        assert_eq!(c.class_count(), 1);
        assert_eq!(c.edges(), &[Edge::new(0, 0, 0), Edge::new(0, 0, 1)]);
        assert_eq!(
            c.edge_matrix().unwrap(),
            EdgeMatrix::from_rows(&[vec![1, 1], vec![1, 1]])
        );
    }

    #[test]
    fn single_loop_matrix() {
        let c = build_cover(&full_shift(1)).unwrap();
        assert_eq!(c.edge_matrix().unwrap(), EdgeMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn golden_mean_cover() {
        let c = build_cover(&golden_mean()).unwrap();
        assert_eq!(c.class_count(), 2);
        // E1 = rays starting with 1 ({p}), E2 = rays starting with 0 ({p,q})
        assert_eq!(c.class_of_ray(&ray(&[1], &[0])), Some(0));
        assert_eq!(c.class_of_ray(&ray(&[], &[0])), Some(1));
        assert_eq!(
            c.edges(),
            &[Edge::new(0, 1, 1), Edge::new(1, 0, 0), Edge::new(1, 1, 0)]
        );
        assert_eq!(c.stabilization_level(), 1);
    }

    #[test]
    fn unique_paths_on_even_shift() {
        let c = build_cover(&even_shift()).unwrap();
        let p = c.unique_labeled_path(&[1], 2).unwrap();
        assert_eq!(c.edges()[p[0]], Edge::new(0, 2, 1));
        assert_eq!(c.unique_labeled_path(&[1, 0], 0), None);
        let p = c.unique_labeled_path(&[0, 1], 2).unwrap();
        let p: Vec<Edge> = p.iter().map(|&e| c.edges()[e]).collect();
        assert_eq!(p, vec![Edge::new(1, 0, 0), Edge::new(0, 2, 1)]);
    }

    #[test]
    fn paths_and_ranges_agree() {
        let c = build_cover(&even_shift()).unwrap();
        for w in crate::shift::words_up_to(c.presentation(), 6) {
            let via_paths: BTreeSet<usize> = c
                .paths_labeled(&w)
                .iter()
                .map(|p| c.edges()[*p.last().unwrap()].range)
                .collect();
            if !w.is_empty() {
                assert_eq!(via_paths, c.ranges_of_word(&w));
            }
        }
    }

    #[test]
    fn zero_row_is_reported() {
        let c = build_cover(&even_shift()).unwrap();
        let bad = c.with_edges(vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0)]);
        assert!(matches!(bad.edge_matrix(), Err(Error::ZeroRowOrColumn { .. })));
    }

    #[test]
    fn left_resolving_cover() {
        for g in [even_shift(), golden_mean(), full_shift(3)] {
            let c = build_cover(&g).unwrap();
            let mut seen = BTreeSet::new();
            assert!(c.edges().iter().all(|e| seen.insert((e.range, e.label))));
        }
    }
}
