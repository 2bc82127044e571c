//! Alphabets, words, rays, and labeled-graph presentations of shifts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use crate::{automata, krieger, Error, Result, VertexSet};

/// An ordered list of distinct symbol tokens. Letters are indices into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, letter: usize) -> &str {
        &self.symbols[letter]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == token)
    }

    pub fn letters(&self) -> core::ops::Range<usize> {
        0..self.symbols.len()
    }

    /// Parses a whitespace-free concatenation of single-character tokens,
    /// or a space-separated token list.
    pub fn parse_word(&self, text: &str) -> Result<Word, String> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(char::is_whitespace) {
            text.split_whitespace().collect()
        } else if self.symbols.iter().all(|s| s.chars().count() == 1) {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        } else if text.is_empty() {
            Vec::new()
        } else {
            alloc::vec![text]
        };
        tokens
            .into_iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| alloc::format!("unknown symbol `{t}`"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from)
    }

    /// Renders a word by concatenating tokens, with `.` separators when
    /// some token is longer than one character. The empty word renders as `ε`.
    pub fn render(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return String::from("ε");
        }
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            "."
        };
        let parts: Vec<&str> = word.iter().map(|&a| self.symbol(a)).collect();
        parts.join(sep)
    }
}

/// A finite word over an alphabet, stored as letter indices.
///
/// Words order shortlex: shorter words first, then lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &[usize]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn prepend(&self, letter: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl Deref for Word {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// A labeled edge. The derived order is the canonical edge order
/// (source, range, label).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub range: usize,
    pub label: usize,
}

impl Edge {
    pub fn new(source: usize, range: usize, label: usize) -> Self {
        Edge {
            source,
            range,
            label,
        }
    }
}

/// A finite labeled directed graph presenting a shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.source >= vertices.len() {
                return Err(Error::InvalidVertex(e.source));
            }
            if e.range >= vertices.len() {
                return Err(Error::InvalidVertex(e.range));
            }
            if e.label >= alphabet.len() {
                return Err(Error::InvalidLetter(e.label));
            }
            if !seen.insert(*e) {
                return Err(Error::DuplicateEdge {
                    source: vertices[e.source].clone(),
                    range: vertices[e.range].clone(),
                    label: alphabet.symbol(e.label).into(),
                });
            }
        }
        Ok(LabeledGraph {
            alphabet,
            vertices,
            edges,
        })
    }

    /// Builds a graph whose parts are known to be valid; duplicate edges
    /// are dropped.
    pub(crate) fn from_parts(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut seen = BTreeSet::new();
        let edges = edges.into_iter().filter(|e| seen.insert(*e)).collect();
        LabeledGraph {
            alphabet,
            vertices,
            edges,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.source == v)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.range == v)
    }

    /// Vertices reached from `from` by one edge labeled `letter`.
    pub fn successors(&self, from: &VertexSet, letter: usize) -> VertexSet {
        let mut out = VertexSet::empty(self.vertex_count());
        for e in &self.edges {
            if e.label == letter && from.contains(e.source) {
                out.insert(e.range);
            }
        }
        out
    }

    /// Vertices with an edge labeled `letter` into `into`.
    pub fn predecessors(&self, into: &VertexSet, letter: usize) -> VertexSet {
        let mut out = VertexSet::empty(self.vertex_count());
        for e in &self.edges {
            if e.label == letter && into.contains(e.range) {
                out.insert(e.source);
            }
        }
        out
    }

    /// Vertices from which some path labeled `word` ends in `into`.
    pub fn word_predecessors(&self, into: &VertexSet, word: &[usize]) -> VertexSet {
        word.iter()
            .rev()
            .fold(into.clone(), |acc, &a| self.predecessors(&acc, a))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Every vertex has an incoming and an outgoing edge.
    pub fn is_essential(&self) -> bool {
        let n = self.vertex_count();
        let mut has_in = alloc::vec![false; n];
        let mut has_out = alloc::vec![false; n];
        for e in &self.edges {
            has_out[e.source] = true;
            has_in[e.range] = true;
        }
        has_in.iter().zip(&has_out).all(|(&i, &o)| i && o)
    }

    /// No vertex has two out-edges carrying the same label.
    pub fn is_right_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.source, e.label)))
    }

    /// No vertex has two in-edges carrying the same label.
    pub fn is_left_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.range, e.label)))
    }

    /// The subgraph induced on `keep`, with vertices renumbered in order.
    pub fn induced(&self, keep: &VertexSet) -> LabeledGraph {
        let mut index = alloc::vec![usize::MAX; self.vertex_count()];
        let mut vertices = Vec::new();
        for v in keep.iter() {
            index[v] = vertices.len();
            vertices.push(self.vertices[v].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.source) && keep.contains(e.range))
            .map(|e| Edge::new(index[e.source], index[e.range], e.label))
            .collect();
        LabeledGraph {
            alphabet: self.alphabet.clone(),
            vertices,
            edges,
        }
    }
}

/// The right-infinite sequence `preperiod · period · period · …`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    preperiod: Word,
    period: Word,
}

impl Ray {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Ray { preperiod, period })
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn letter_at(&self, n: usize) -> usize {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        (0..len).map(|n| self.letter_at(n)).collect::<Vec<_>>().into()
    }

    /// The ray with its first `n` letters removed.
    pub fn shift(&self, n: usize) -> Ray {
        if n <= self.preperiod.len() {
            return Ray {
                preperiod: self.preperiod[n..].into(),
                period: self.period.clone(),
            };
        }
        let p = self.period.len();
        let k = (n - self.preperiod.len()) % p;
        let mut rotated = self.period[k..].to_vec();
        rotated.extend_from_slice(&self.period[..k]);
        Ray {
            preperiod: Word::empty(),
            period: rotated.into(),
        }
    }

    pub fn prepend(&self, word: &[usize]) -> Ray {
        Ray {
            preperiod: Word::from(word).concat(&self.preperiod),
            period: self.period.clone(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        if !self.preperiod.is_empty() {
            s.push_str(&alphabet.render(&self.preperiod));
        }
        s.push('(');
        s.push_str(&alphabet.render(&self.period));
        s.push_str(")^∞");
        s
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray({:?}, {:?}^inf)", self.preperiod.0, self.period.0)
    }
}

/// A shift of finite type given by an alphabet and forbidden words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    pub alphabet: Alphabet,
    pub forbidden: Vec<Word>,
}

fn contains_factor(word: &[usize], forbidden: &[Word]) -> bool {
    forbidden
        .iter()
        .any(|f| f.len() <= word.len() && word.windows(f.len()).any(|w| w == &f[..]))
}

/// Higher-block presentation of a shift of finite type.
///
/// With `m` the longest forbidden length (at least 2), vertices are the
/// allowed words of length `m - 1` and `w -a-> w'` whenever `w·a` is allowed
/// and `w'` is its length-`m - 1` suffix. The result is trimmed to its
/// essential part.
pub fn sft_to_graph(spec: &SftSpec) -> Result<LabeledGraph> {
    if spec.forbidden.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyForbiddenWord);
    }
    if let Some(&bad) = spec
        .forbidden
        .iter()
        .flat_map(|w| w.iter())
        .find(|&&a| a >= spec.alphabet.len())
    {
        return Err(Error::InvalidLetter(bad));
    }
    let m = spec.forbidden.iter().map(|w| w.len()).max().unwrap_or(0).max(2);
    let k = spec.alphabet.len();

    let mut blocks: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..m - 1 {
        let mut next = Vec::with_capacity(blocks.len() * k);
        for b in &blocks {
            for a in 0..k {
                let mut w = b.clone();
                w.push(a);
                if !contains_factor(&w, &spec.forbidden) {
                    next.push(w);
                }
            }
        }
        blocks = next;
    }
    if blocks.is_empty() {
        return Err(Error::EmptyShift);
    }
    let index: BTreeMap<&[usize], usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for a in 0..k {
            let mut w = b.clone();
            w.push(a);
            if contains_factor(&w, &spec.forbidden) {
                continue;
            }
            if let Some(&j) = index.get(&w[1..]) {
                edges.push(Edge::new(i, j, a));
            }
        }
    }
    let vertices = blocks.iter().map(|b| spec.alphabet.render(b)).collect();
    let g = LabeledGraph::from_parts(spec.alphabet.clone(), vertices, edges);
    automata::trim_essential(&g)
}

/// Label sequences of length-`k` paths in `g`.
pub fn words_of_length(g: &LabeledGraph, k: usize) -> BTreeSet<Word> {
    let mut frontier: Vec<(Word, VertexSet)> = alloc::vec![(Word::empty(), g.all_vertices())];
    if g.vertex_count() == 0 {
        return if k == 0 {
            frontier.into_iter().map(|(w, _)| w).collect()
        } else {
            BTreeSet::new()
        };
    }
    for _ in 0..k {
        let mut next = Vec::new();
        for (w, ends) in &frontier {
            for a in g.alphabet().letters() {
                let s = g.successors(ends, a);
                if !s.is_empty() {
                    next.push((w.concat(&[a]), s));
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().map(|(w, _)| w).collect()
}

/// All admissible words of length at most `k`, in shortlex order.
pub fn words_up_to(g: &LabeledGraph, k: usize) -> BTreeSet<Word> {
    (0..=k).flat_map(|j| words_of_length(g, j)).collect()
}

/// Whether some path in `g` is labeled `word`.
pub fn is_admissible(g: &LabeledGraph, word: &[usize]) -> bool {
    let mut ends = g.all_vertices();
    for &a in word {
        if a >= g.alphabet().len() {
            return false;
        }
        ends = g.successors(&ends, a);
        if ends.is_empty() {
            return false;
        }
    }
    true
}

/// Whether some vertex of `g` emits the ray `x`.
pub fn ray_admissible(g: &LabeledGraph, x: &Ray) -> bool {
    !krieger::survivor_set(g, x).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    pub(crate) fn even_shift() -> LabeledGraph {
        LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into()],
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap()
    }

    fn golden_mean() -> LabeledGraph {
        sft_to_graph(&SftSpec {
            alphabet: Alphabet::new(["0", "1"]).unwrap(),
            forbidden: vec![w(&[1, 1])],
        })
        .unwrap()
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn graph_rejects_duplicate_edge() {
        let err = LabeledGraph::new(
            Alphabet::new(["0"]).unwrap(),
            vec!["a".into()],
            vec![Edge::new(0, 0, 0), Edge::new(0, 0, 0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { .. }));
    }

    #[test]
    fn golden_mean_graph() {
        let g = golden_mean();
        assert_eq!(g.vertex_names(), &[String::from("0"), String::from("1")]);
        let mut edges = g.edges().to_vec();
        edges.sort();
        assert_eq!(
            edges,
            vec![Edge::new(0, 0, 0), Edge::new(0, 1, 1), Edge::new(1, 0, 0)]
        );
        assert!(g.is_essential() && g.is_right_resolving());
    }

    #[test]
    fn one_letter_full_shift() {
        let g = sft_to_graph(&SftSpec {
            alphabet: Alphabet::new(["a"]).unwrap(),
            forbidden: vec![],
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), &[Edge::new(0, 0, 0)]);
    }

    #[test]
    fn constant_sequences_only() {
        let g = sft_to_graph(&SftSpec {
            alphabet: Alphabet::new(["0", "1"]).unwrap(),
            forbidden: vec![w(&[0, 1]), w(&[1, 0])],
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[Edge::new(0, 0, 0), Edge::new(1, 1, 1)]);
    }

    #[test]
    fn everything_forbidden_is_empty() {
        let spec = SftSpec {
            alphabet: Alphabet::new(["0", "1"]).unwrap(),
            forbidden: vec![w(&[0]), w(&[1])],
        };
        assert_eq!(sft_to_graph(&spec), Err(Error::EmptyShift));
        let spec = SftSpec {
            alphabet: Alphabet::new(["0", "1"]).unwrap(),
            forbidden: vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 1])],
        };
        assert_eq!(sft_to_graph(&spec), Err(Error::EmptyShift));
    }

    #[test]
    fn words_even_shift() {
        let g = even_shift();
        assert_eq!(words_of_length(&g, 0), [Word::empty()].into());
        let two: BTreeSet<Word> = [w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])].into();
        assert_eq!(words_of_length(&g, 2), two);
    }

    #[test]
    fn words_golden_mean() {
        let two: BTreeSet<Word> = [w(&[0, 0]), w(&[0, 1]), w(&[1, 0])].into();
        assert_eq!(words_of_length(&golden_mean(), 2), two);
    }

    #[test]
    fn admissibility() {
        let g = even_shift();
        assert!(!is_admissible(&g, &[1, 0, 1]));
        assert!(is_admissible(&g, &[1, 0, 0, 1]));
        assert!(is_admissible(&g, &[]));
        assert!(is_admissible(&golden_mean(), &[]));
    }

    #[test]
    fn rays() {
        let g = even_shift();
        assert!(ray_admissible(&g, &Ray::new(w(&[]), w(&[0])).unwrap()));
        assert!(ray_admissible(&g, &Ray::new(w(&[1]), w(&[0])).unwrap()));
        assert!(!ray_admissible(&golden_mean(), &Ray::new(w(&[]), w(&[1, 1])).unwrap()));
        assert_eq!(Ray::new(w(&[1]), w(&[])), Err(Error::EmptyPeriod));
    }

    #[test]
    fn ray_shift_and_prefix() {
        let x = Ray::new(w(&[2]), w(&[0, 1])).unwrap();
        assert_eq!(x.prefix(5), w(&[2, 0, 1, 0, 1]));
        assert_eq!(x.shift(1), Ray::new(w(&[]), w(&[0, 1])).unwrap());
        assert_eq!(x.shift(2), Ray::new(w(&[]), w(&[1, 0])).unwrap());
        for n in 0..6 {
            assert_eq!(x.shift(n).prefix(4), Word::from(&x.prefix(n + 4)[n..]));
        }
    }

    #[test]
    fn word_order_is_shortlex() {
        let mut v = vec![w(&[1]), w(&[0, 0]), w(&[]), w(&[0])];
        v.sort();
        assert_eq!(v, vec![w(&[]), w(&[0]), w(&[1]), w(&[0, 0])]);
    }

    #[test]
    fn parse_and_render_words() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        assert_eq!(a.parse_word("101").unwrap(), w(&[1, 0, 1]));
        assert_eq!(a.parse_word("1 0").unwrap(), w(&[1, 0]));
        assert!(a.parse_word("2").is_err());
        assert_eq!(a.render(&[1, 0]), "10");
        assert_eq!(a.render(&[]), "ε");
        let b = Alphabet::new(["ab", "c"]).unwrap();
        assert_eq!(b.render(&[0, 1]), "ab.c");
    }
}
