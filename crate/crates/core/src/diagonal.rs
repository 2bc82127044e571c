//! The commutative diagonal as an algebra of clopen sets of rays.
//!
//! A clopen set is a finite union of marked cylinders `w·E_i`, the rays
//! `w x` with `x` in class `E_i`. At a fixed depth the nonempty marked
//! cylinders partition the ray space, so a clopen set is exactly a subset
//! of them. Sets of different depths are compared after refining to a
//! common depth, splitting `w·E_i` along the out-edges of class `i`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::krieger::KriegerCover;
use crate::shift::{Ray, Word};

/// The marked cylinder `word·E_class`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub word: Word,
    pub class: usize,
}

impl Cell {
    pub fn new(word: Word, class: usize) -> Self {
        Cell { word, class }
    }
}

/// A union of marked cylinders of a common depth, kept at the least depth
/// that represents it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    depth: usize,
    cells: BTreeSet<Cell>,
}

impl ClopenSet {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Clopen-set operations over one cover.
#[derive(Debug, Clone)]
pub struct Diagonal<'c> {
    cover: &'c KriegerCover,
    out_edges: Vec<Vec<usize>>,
}

impl<'c> Diagonal<'c> {
    pub fn new(cover: &'c KriegerCover) -> Self {
        let mut out_edges = alloc::vec![Vec::new(); cover.class_count()];
        for (i, e) in cover.edges().iter().enumerate() {
            out_edges[e.source].push(i);
        }
        Diagonal { cover, out_edges }
    }

    pub fn cover(&self) -> &'c KriegerCover {
        self.cover
    }

    fn path_exists(&self, word: &[usize], class: usize) -> bool {
        self.cover.unique_labeled_path(word, class).is_some()
    }

    fn children(&self, cell: &Cell) -> impl Iterator<Item = Cell> + '_ {
        let word = cell.word.clone();
        self.out_edges[cell.class].iter().map(move |&i| {
            let e = self.cover.edges()[i];
            Cell::new(word.concat(&[e.label]), e.range)
        })
    }

    fn parent(&self, cell: &Cell) -> Option<Cell> {
        let (&last, head) = cell.word.split_last()?;
        let e = self
            .cover
            .edges()
            .iter()
            .find(|e| e.range == cell.class && e.label == last)?;
        Some(Cell::new(Word::from(head), e.source))
    }

    fn canonical(&self, mut depth: usize, mut cells: BTreeSet<Cell>) -> ClopenSet {
        if cells.is_empty() {
            return ClopenSet { depth: 0, cells };
        }
        while depth > 0 {
            let mut parents: BTreeMap<Cell, usize> = BTreeMap::new();
            let mut ok = true;
            for c in &cells {
                match self.parent(c) {
                    Some(p) => *parents.entry(p).or_default() += 1,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            ok = ok && parents.iter().all(|(p, &n)| self.children(p).count() == n);
            if !ok {
                break;
            }
            cells = parents.into_keys().collect();
            depth -= 1;
        }
        ClopenSet { depth, cells }
    }

    /// Builds a clopen set from cells of length `depth`; cells that denote
    /// empty sets are dropped.
    pub fn from_cells(&self, depth: usize, cells: impl IntoIterator<Item = Cell>) -> ClopenSet {
        let cells = cells
            .into_iter()
            .filter(|c| {
                debug_assert_eq!(c.word.len(), depth);
                self.path_exists(&c.word, c.class)
            })
            .collect();
        self.canonical(depth, cells)
    }

    /// The same set written with cells of length `depth`.
    pub fn refine(&self, f: &ClopenSet, depth: usize) -> ClopenSet {
        let mut cells = f.cells.clone();
        for _ in f.depth..depth {
            cells = cells.iter().flat_map(|c| self.children(c)).collect();
        }
        ClopenSet {
            depth: depth.max(f.depth),
            cells,
        }
    }

    pub fn empty(&self) -> ClopenSet {
        ClopenSet {
            depth: 0,
            cells: BTreeSet::new(),
        }
    }

    /// All rays.
    pub fn whole(&self) -> ClopenSet {
        ClopenSet {
            depth: 0,
            cells: (0..self.cover.class_count())
                .map(|i| Cell::new(Word::empty(), i))
                .collect(),
        }
    }

    fn combine(
        &self,
        f: &ClopenSet,
        g: &ClopenSet,
        op: impl Fn(&BTreeSet<Cell>, &BTreeSet<Cell>) -> BTreeSet<Cell>,
    ) -> ClopenSet {
        let depth = f.depth.max(g.depth);
        let a = self.refine(f, depth);
        let b = self.refine(g, depth);
        self.canonical(depth, op(&a.cells, &b.cells))
    }

    pub fn union(&self, f: &ClopenSet, g: &ClopenSet) -> ClopenSet {
        self.combine(f, g, |a, b| a.union(b).cloned().collect())
    }

    pub fn intersect(&self, f: &ClopenSet, g: &ClopenSet) -> ClopenSet {
        self.combine(f, g, |a, b| a.intersection(b).cloned().collect())
    }

    pub fn difference(&self, f: &ClopenSet, g: &ClopenSet) -> ClopenSet {
        self.combine(f, g, |a, b| a.difference(b).cloned().collect())
    }

    pub fn complement(&self, f: &ClopenSet) -> ClopenSet {
        self.difference(&self.whole(), f)
    }

    /// Semantic equality by refinement to a common depth.
    pub fn equal(&self, f: &ClopenSet, g: &ClopenSet) -> bool {
        let depth = f.depth.max(g.depth);
        self.refine(f, depth).cells == self.refine(g, depth).cells
    }

    /// `U_μ`: rays beginning with `μ`.
    pub fn cylinder(&self, mu: &[usize]) -> ClopenSet {
        self.from_cells(
            mu.len(),
            (0..self.cover.class_count()).map(|i| Cell::new(Word::from(mu), i)),
        )
    }

    /// Classes `i` with `μ·E_i` nonempty.
    pub fn post_classes(&self, mu: &[usize]) -> BTreeSet<usize> {
        (0..self.cover.class_count())
            .filter(|&i| self.path_exists(mu, i))
            .collect()
    }

    /// `σ^|μ|(U_μ)`: the union of the classes `E_i` with `μ·E_i` nonempty.
    pub fn post_image(&self, mu: &[usize]) -> ClopenSet {
        self.from_cells(
            0,
            self.post_classes(mu)
                .into_iter()
                .map(|i| Cell::new(Word::empty(), i)),
        )
    }

    /// `{j x : x ∈ F, j x admissible}`.
    pub fn conj_by_letter(&self, letter: usize, f: &ClopenSet) -> ClopenSet {
        self.from_cells(
            f.depth + 1,
            f.cells
                .iter()
                .map(|c| Cell::new(c.word.prepend(letter), c.class)),
        )
    }

    /// `σ^{-1}(F)`: every admissible one-letter extension to the left.
    pub fn shift_preimage(&self, f: &ClopenSet) -> ClopenSet {
        let cells: Vec<Cell> = self
            .cover
            .alphabet()
            .letters()
            .flat_map(|a| {
                f.cells
                    .iter()
                    .map(move |c| Cell::new(c.word.prepend(a), c.class))
            })
            .collect();
        self.from_cells(f.depth + 1, cells)
    }

    /// `U_μ ∩ σ^{-|μ|}(σ^|ν|(U_ν))`.
    pub fn phi_generator(&self, mu: &[usize], nu: &[usize]) -> ClopenSet {
        let cells: Vec<Cell> = (0..self.cover.class_count())
            .filter(|&i| self.path_exists(mu, i) && self.path_exists(nu, i))
            .map(|i| Cell::new(Word::from(mu), i))
            .collect();
        self.from_cells(mu.len(), cells)
    }

    pub fn class_projection(&self, class: usize) -> ClopenSet {
        self.from_cells(0, [Cell::new(Word::empty(), class)])
    }

    /// One shortest, then lexicographically least, word for each distinct
    /// post image other than the whole space, in shortlex order.
    pub fn post_image_representatives(&self) -> Vec<(Word, BTreeSet<usize>)> {
        let all: BTreeSet<usize> = (0..self.cover.class_count()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut reps = Vec::new();
        let mut queue: VecDeque<(Word, BTreeSet<usize>)> = VecDeque::new();
        queue.push_back((Word::empty(), all));
        while let Some((w, ends)) = queue.pop_front() {
            for a in self.cover.alphabet().letters() {
                let next: BTreeSet<usize> = self
                    .cover
                    .edges()
                    .iter()
                    .filter(|e| e.label == a && ends.contains(&e.source))
                    .map(|e| e.range)
                    .collect();
                if next.is_empty() || !seen.insert(next.clone()) {
                    continue;
                }
                let w2 = w.concat(&[a]);
                reps.push((w2.clone(), next.clone()));
                queue.push_back((w2, next));
            }
        }
        reps
    }

    /// Word sets `(M, N)` with
    /// `E_i = ⋂_{μ∈M} σ^|μ|(U_μ) ∩ ⋂_{μ∈N} (X ∖ σ^|μ|(U_μ))`.
    pub fn express_class_projection(&self, class: usize) -> (Vec<Word>, Vec<Word>) {
        let mut keep = Vec::new();
        let mut drop = Vec::new();
        for (w, ends) in self.post_image_representatives() {
            if ends.contains(&class) {
                keep.push(w);
            } else {
                drop.push(w);
            }
        }
        if keep.is_empty() {
            keep.push(Word::empty());
        }
        (keep, drop)
    }

    /// Evaluates the product of post images over `keep` times the
    /// complements of post images over `drop`.
    pub fn evaluate_projection_expression(&self, keep: &[Word], drop: &[Word]) -> ClopenSet {
        let mut acc = self.whole();
        for w in keep {
            acc = self.intersect(&acc, &self.post_image(w));
        }
        for w in drop {
            acc = self.intersect(&acc, &self.complement(&self.post_image(w)));
        }
        acc
    }

    /// Membership of an admissible ray, decided through its survivor set.
    pub fn contains_ray(&self, f: &ClopenSet, x: &Ray) -> bool {
        let prefix = x.prefix(f.depth);
        match self.cover.class_of_ray(&x.shift(f.depth)) {
            Some(class) => f.cells.contains(&Cell::new(prefix, class)),
            None => false,
        }
    }

    /// Sorted `w·E_i` list; `E_i` alone for the empty word, `∅` for the
    /// empty set.
    pub fn render(&self, f: &ClopenSet) -> String {
        if f.cells.is_empty() {
            return String::from("∅");
        }
        let alphabet = self.cover.alphabet();
        let parts: Vec<String> = f
            .cells
            .iter()
            .map(|c| {
                if c.word.is_empty() {
                    alloc::format!("E{}", c.class + 1)
                } else {
                    alloc::format!("{}·E{}", alphabet.render(&c.word), c.class + 1)
                }
            })
            .collect();
        parts.join(", ")
    }
}
