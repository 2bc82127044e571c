use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::shift::{LabeledGraph, Word};
use crate::{Error, Result, VertexSet};

/// Default cap on the number of semigroup elements.
pub const DEFAULT_SEMIGROUP_LIMIT: usize = 1 << 20;

/// The relation `R_w` of a word: `(s, t)` is present when some path labeled
/// `w` runs from `s` to `t`. Row `s` holds the ends reachable from `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionRelation {
    rows: Vec<VertexSet>,
}

impl TransitionRelation {
    pub fn identity(n: usize) -> Self {
        TransitionRelation {
            rows: (0..n).map(|v| VertexSet::singleton(n, v)).collect(),
        }
    }

    pub fn of_letter(g: &LabeledGraph, letter: usize) -> Self {
        let n = g.vertex_count();
        let mut rows: Vec<VertexSet> = (0..n).map(|_| VertexSet::empty(n)).collect();
        for e in g.edges().iter().filter(|e| e.label == letter) {
            rows[e.source].insert(e.range);
        }
        TransitionRelation { rows }
    }

    pub fn of_word(g: &LabeledGraph, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(g.vertex_count()), |r, &a| {
            r.then(&Self::of_letter(g, a))
        })
    }

    /// Relational composition, `self` applied first.
    pub fn then(&self, next: &TransitionRelation) -> Self {
        let n = self.rows.len();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = VertexSet::empty(n);
                for mid in row.iter() {
                    out.union_with(&next.rows[mid]);
                }
                out
            })
            .collect();
        TransitionRelation { rows }
    }

    pub fn contains(&self, start: usize, end: usize) -> bool {
        self.rows[start].contains(end)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().map(move |t| (s, t)))
    }

    /// Start vertices: those emitting the word.
    pub fn domain(&self) -> VertexSet {
        VertexSet::from_members(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_empty())
                .map(|(s, _)| s),
        )
    }

    /// End vertices.
    pub fn range(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.rows.len());
        for r in &self.rows {
            out.union_with(r);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(VertexSet::is_empty)
    }

    /// Vertices with some end in `set`; for `R_w` this is `pre_w(set)`.
    pub fn preimage(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_members(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.intersects(set))
                .map(|(s, _)| s),
        )
    }
}

/// The relations of all nonempty words, closed under appending a letter.
///
/// Elements are numbered in discovery order of a breadth-first search over
/// words in shortlex order, so each element's witness is the shortlex-least
/// word realizing it.
#[derive(Debug, Clone)]
pub struct TransitionSemigroup {
    elements: Vec<TransitionRelation>,
    witnesses: Vec<Word>,
    generators: Vec<usize>,
    step: Vec<Vec<usize>>,
}

impl TransitionSemigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &TransitionRelation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[TransitionRelation] {
        &self.elements
    }

    /// The shortlex-least word whose relation is element `i`.
    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    /// Element index of `R_a`.
    pub fn generator(&self, letter: usize) -> usize {
        self.generators[letter]
    }

    /// Element index of `element(i)` followed by `letter`.
    pub fn step(&self, i: usize, letter: usize) -> usize {
        self.step[i][letter]
    }

    pub fn index_of(&self, r: &TransitionRelation) -> Option<usize> {
        self.elements.iter().position(|e| e == r)
    }
}

pub fn transition_semigroup(g: &LabeledGraph) -> Result<TransitionSemigroup> {
    transition_semigroup_with_limit(g, DEFAULT_SEMIGROUP_LIMIT)
}

pub fn transition_semigroup_with_limit(
    g: &LabeledGraph,
    limit: usize,
) -> Result<TransitionSemigroup> {
    let letters = g.alphabet().len();
    let letter_rel: Vec<TransitionRelation> = (0..letters)
        .map(|a| TransitionRelation::of_letter(g, a))
        .collect();
    let mut index: BTreeMap<TransitionRelation, usize> = BTreeMap::new();
    let mut elements = Vec::new();
    let mut witnesses = Vec::new();

    let mut intern = |r: TransitionRelation,
                      w: Word,
                      elements: &mut Vec<TransitionRelation>,
                      witnesses: &mut Vec<Word>|
     -> Result<usize> {
        if let Some(&i) = index.get(&r) {
            return Ok(i);
        }
        if elements.len() >= limit {
            return Err(Error::SemigroupTooLarge { limit });
        }
        let i = elements.len();
        index.insert(r.clone(), i);
        elements.push(r);
        witnesses.push(w);
        Ok(i)
    };

    let mut generators = Vec::with_capacity(letters);
    for (a, r) in letter_rel.iter().enumerate() {
        let i = intern(r.clone(), Word::from(alloc::vec![a]), &mut elements, &mut witnesses)?;
        generators.push(i);
    }
    let mut step: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(letters);
        for (a, r) in letter_rel.iter().enumerate() {
            let composed = elements[next].then(r);
            let w = witnesses[next].concat(&[a]);
            row.push(intern(composed, w, &mut elements, &mut witnesses)?);
        }
        step.push(row);
        next += 1;
    }
    Ok(TransitionSemigroup {
        elements,
        witnesses,
        generators,
        step,
    })
}
