//! Finite checks behind the isomorphism between the shift's algebra and
//! the Cuntz-Krieger algebra of its left Krieger cover.
//!
//! Each family compares what the cover predicts against what the
//! presentation says. Clopen-set identities are checked both in the cell
//! algebra and pointwise on sample rays, whose classes come from survivor
//! sets rather than from the cover's edges. Word-quantified identities are
//! checked for every admissible word up to a length bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diagonal::{Cell, ClopenSet, Diagonal};
use crate::krieger::{survivor_set, KriegerCover, TransitionRelation};
use crate::shift::{words_up_to, Ray, Word};
use crate::VertexSet;

/// Default bound on word length for word-quantified checks.
pub const DEFAULT_MAX_WORD_LEN: usize = 8;

/// Longest prefix prepended to class representatives to form sample rays.
const SAMPLE_PREFIX_LEN: usize = 3;

/// Longest word `ν` used in the conjugation checks.
const CONJUGATION_WORD_LEN: usize = 5;

/// Witnesses kept per family.
const MAX_WITNESSES: usize = 5;

/// Outcome of one check family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    /// The first few failing instances.
    pub witnesses: Vec<String>,
}

impl FamilyReport {
    fn new(name: &'static str) -> Self {
        FamilyReport {
            name,
            checks: 0,
            failed: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// All families, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub families: Vec<FamilyReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn failed_families(&self) -> usize {
        self.families.iter().filter(|f| !f.passed()).count()
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.name == name)
    }
}

/// Depths up to which sample tails are classified in advance.
const TAIL_DEPTH: usize = 4;

/// A sample ray with its survivor sets and the classes of its first tails,
/// computed once from the presentation.
struct Sample {
    ray: Ray,
    survivor: VertexSet,
    tail_survivor: VertexSet,
    /// Class of `σ^d x` for `d ≤ TAIL_DEPTH`.
    tail_classes: Vec<Option<usize>>,
}

/// An admissible word with its relation `R_w` and the index of the word
/// without its last letter.
struct WordNode {
    word: Word,
    parent: Option<usize>,
    relation: TransitionRelation,
}

struct Checker<'c> {
    cover: &'c KriegerCover,
    diag: Diagonal<'c>,
    samples: Vec<Sample>,
}

impl<'c> Checker<'c> {
    fn new(cover: &'c KriegerCover) -> Self {
        let g = cover.presentation();
        let mut samples = Vec::new();
        let mut seen = BTreeSet::new();
        for class in cover.classes() {
            for w in words_up_to(g, SAMPLE_PREFIX_LEN) {
                let x = class.representative().prepend(&w);
                let survivor = survivor_set(g, &x);
                if !survivor.is_empty() && seen.insert(x.prefix(SAMPLE_PREFIX_LEN + 8)) {
                    let tail_classes = (0..=TAIL_DEPTH).map(|d| cover.class_of_ray(&x.shift(d))).collect();
                    samples.push(Sample {
                        tail_survivor: survivor_set(g, &x.shift(1)),
                        survivor,
                        tail_classes,
                        ray: x,
                    });
                }
            }
        }
        Checker {
            cover,
            diag: Diagonal::new(cover),
            samples,
        }
    }

    /// Admissible words up to `max_len` in shortlex order, built by
    /// breadth-first extension so each word's relation comes from its parent.
    fn word_tree(&self, max_len: usize) -> Vec<WordNode> {
        let g = self.cover.presentation();
        let letters: Vec<TransitionRelation> = g
            .alphabet()
            .letters()
            .map(|a| TransitionRelation::of_letter(g, a))
            .collect();
        let mut nodes = alloc::vec![WordNode {
            word: Word::empty(),
            parent: None,
            relation: TransitionRelation::identity(g.vertex_count()),
        }];
        let mut level = 0..1;
        for _ in 0..max_len {
            let start = nodes.len();
            for p in level {
                for (a, rel) in letters.iter().enumerate() {
                    let relation = nodes[p].relation.then(rel);
                    if !relation.is_empty() {
                        nodes.push(WordNode {
                            word: nodes[p].word.concat(&[a]),
                            parent: Some(p),
                            relation,
                        });
                    }
                }
            }
            level = start..nodes.len();
        }
        nodes
    }

    fn render_word(&self, w: &[usize]) -> String {
        self.cover.alphabet().render(w)
    }

    fn render_ray(&self, x: &Ray) -> String {
        x.render(self.cover.alphabet())
    }

    fn render_set(&self, f: &ClopenSet) -> String {
        self.diag.render(f)
    }

    /// Whether `μ x` is admissible, given `I(x)`: `I(μx) = pre_μ(I(x))`.
    fn precedes(&self, mu: &[usize], survivor: &VertexSet) -> bool {
        !self.cover.presentation().word_predecessors(survivor, mu).is_empty()
    }

    /// `diag.contains_ray`, reusing the precomputed tail classes.
    fn contains(&self, f: &ClopenSet, x: &Sample) -> bool {
        match x.tail_classes.get(f.depth()) {
            Some(Some(class)) => f.cells().contains(&Cell::new(x.ray.prefix(f.depth()), *class)),
            Some(None) => false,
            None => self.diag.contains_ray(f, &x.ray),
        }
    }

    /// Classes `i` with `μ·E_i` nonempty, from the presentation: some
    /// member survivor set meets the range of `R_μ`.
    fn true_post_classes(&self, relation: &TransitionRelation) -> BTreeSet<usize> {
        let range = relation.range();
        self.cover
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.survivor_sets().iter().any(|s| s.intersects(&range)))
            .map(|(i, _)| i)
            .collect()
    }

    fn class_union(&self, classes: impl IntoIterator<Item = usize>) -> ClopenSet {
        classes.into_iter().fold(self.diag.empty(), |acc, i| {
            self.diag.union(&acc, &self.diag.class_projection(i))
        })
    }

    /// `⋃ conj_by_letter(L(e), E_{r(e)})` over the given edges.
    fn edge_images(&self, edges: impl IntoIterator<Item = usize>) -> ClopenSet {
        edges.into_iter().fold(self.diag.empty(), |acc, i| {
            let e = self.cover.edges()[i];
            let img = self
                .diag
                .conj_by_letter(e.label, &self.diag.class_projection(e.range));
            self.diag.union(&acc, &img)
        })
    }

    fn letter_cylinders(&self) -> FamilyReport {
        let mut r = FamilyReport::new("letter-cylinders");
        let letters = self.cover.alphabet().len();
        for a in 0..letters {
            for b in (a + 1)..letters {
                let meet = self
                    .diag
                    .intersect(&self.diag.cylinder(&[a]), &self.diag.cylinder(&[b]));
                r.check(meet.is_empty(), || {
                    format!(
                        "U_{} ∩ U_{} = {}",
                        self.render_word(&[a]),
                        self.render_word(&[b]),
                        self.render_set(&meet)
                    )
                });
            }
        }
        for a in 0..letters {
            let u = self.diag.cylinder(&[a]);
            for x in &self.samples {
                let expected = x.ray.letter_at(0) == a;
                r.check(self.contains(&u, x) == expected, || {
                    format!(
                        "ray {} {} U_{}",
                        self.render_ray(&x.ray),
                        if expected { "missing from" } else { "wrongly in" },
                        self.render_word(&[a])
                    )
                });
            }
        }
        r
    }

    fn conjugation(&self, max_len: usize) -> FamilyReport {
        let mut r = FamilyReport::new("conjugation");
        let nodes = self.word_tree(max_len.min(CONJUGATION_WORD_LEN));
        for a in self.cover.alphabet().letters() {
            let cyl = self.diag.cylinder(&[a]);
            for node in &nodes {
                let nu = &node.word;
                let post = self.diag.post_image(nu);
                let conj = self.diag.conj_by_letter(a, &post);
                let generator = self.diag.phi_generator(&[a], nu);
                let lifted = self.diag.intersect(&cyl, &self.diag.shift_preimage(&post));
                r.check(
                    self.diag.equal(&conj, &generator) && self.diag.equal(&conj, &lifted),
                    || {
                        format!(
                            "letter {}, ν = {}: conj = {}, generator = {}, lifted = {}",
                            self.render_word(&[a]),
                            self.render_word(nu),
                            self.render_set(&conj),
                            self.render_set(&generator),
                            self.render_set(&lifted)
                        )
                    },
                );
                for x in &self.samples {
                    let expected = x.ray.letter_at(0) == a && !node.relation.preimage(&x.tail_survivor).is_empty();
                    r.check(self.contains(&conj, x) == expected, || {
                        format!(
                            "letter {}, ν = {}: ray {} membership should be {expected}",
                            self.render_word(&[a]),
                            self.render_word(nu),
                            self.render_ray(&x.ray)
                        )
                    });
                }
            }
        }
        r
    }

    fn post_images(&self, max_len: usize) -> FamilyReport {
        let mut r = FamilyReport::new("post-images");
        let mut unions: BTreeMap<BTreeSet<usize>, ClopenSet> = BTreeMap::new();
        for node in self.word_tree(max_len) {
            let mu = &node.word;
            let got = self.diag.post_image(mu);
            let expected = self.true_post_classes(&node.relation);
            let want = unions
                .entry(expected)
                .or_insert_with_key(|e| self.class_union(e.iter().copied()));
            r.check(self.diag.equal(&got, want), || {
                format!(
                    "μ = {}: post image {} but presentation gives {}",
                    self.render_word(mu),
                    self.render_set(&got),
                    self.render_set(want)
                )
            });
        }
        r
    }

    fn unique_paths(&self, max_len: usize) -> FamilyReport {
        let mut r = FamilyReport::new("unique-paths");
        for node in self.word_tree(max_len).iter().skip(1) {
            let mu = &node.word;
            for (i, class) in self.cover.classes().iter().enumerate() {
                let path = self.cover.unique_labeled_path(mu, i);
                for c in class.survivor_sets() {
                    let pre = node.relation.preimage(c);
                    let ok = match &path {
                        None => pre.is_empty(),
                        Some(p) => {
                            let start = self.cover.edges()[p[0]].source;
                            !pre.is_empty() && self.cover.class_of_set(&pre) == Some(start)
                        }
                    };
                    r.check(ok, || {
                        format!(
                            "μ = {} into E{}: path {:?}, prepended survivor set {:?}",
                            self.render_word(mu),
                            i + 1,
                            path,
                            pre
                        )
                    });
                }
            }
        }
        r
    }

    fn class_expressions(&self) -> FamilyReport {
        let mut r = FamilyReport::new("class-expressions");
        for i in 0..self.cover.class_count() {
            let (keep, drop) = self.diag.express_class_projection(i);
            let value = self.diag.evaluate_projection_expression(&keep, &drop);
            let render_words = |ws: &[Word]| {
                let v: Vec<String> = ws.iter().map(|w| self.render_word(w)).collect();
                v.join(",")
            };
            r.check(self.diag.equal(&value, &self.diag.class_projection(i)), || {
                format!(
                    "E{} expressed by M = {{{}}}, N = {{{}}} evaluates to {}",
                    i + 1,
                    render_words(&keep),
                    render_words(&drop),
                    self.render_set(&value)
                )
            });
            for x in &self.samples {
                let by_words = keep.iter().all(|m| self.precedes(m, &x.survivor))
                    && drop.iter().all(|n| !self.precedes(n, &x.survivor));
                let in_class = x.tail_classes[0] == Some(i);
                r.check(by_words == in_class, || {
                    format!(
                        "E{}: ray {} satisfies the word conditions = {by_words}, in class = {in_class}",
                        i + 1,
                        self.render_ray(&x.ray)
                    )
                });
            }
        }
        r
    }

    fn class_decomposition(&self) -> FamilyReport {
        let mut r = FamilyReport::new("class-decomposition");
        let edges = self.cover.edges();
        for i in 0..self.cover.class_count() {
            let outgoing: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].source == i).collect();
            let rhs = self.edge_images(outgoing.iter().copied());
            r.check(self.diag.equal(&self.diag.class_projection(i), &rhs), || {
                format!("E{} ≠ {}", i + 1, self.render_set(&rhs))
            });
            for x in &self.samples {
                let tail = x.tail_classes[1];
                let predicted = outgoing.iter().any(|&k| {
                    edges[k].label == x.ray.letter_at(0) && Some(edges[k].range) == tail
                });
                let actual = x.tail_classes[0] == Some(i);
                r.check(predicted == actual, || {
                    format!(
                        "E{}: ray {} predicted by out-edges = {predicted}, in class = {actual}",
                        i + 1,
                        self.render_ray(&x.ray)
                    )
                });
            }
        }
        r
    }

    fn ck_relations(&self) -> FamilyReport {
        let mut r = FamilyReport::new("ck-relations");
        let edges = self.cover.edges();
        let images: Vec<ClopenSet> = (0..edges.len()).map(|k| self.edge_images([k])).collect();
        for e in 0..edges.len() {
            for f in (e + 1)..edges.len() {
                let meet = self.diag.intersect(&images[e], &images[f]);
                r.check(meet.is_empty(), || {
                    format!(
                        "edge ranges of {:?} and {:?} overlap in {}",
                        edges[e],
                        edges[f],
                        self.render_set(&meet)
                    )
                });
            }
        }
        for e in edges {
            let following: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].source == e.range).collect();
            let rhs = self.edge_images(following);
            let lhs = self.diag.class_projection(e.range);
            r.check(self.diag.equal(&lhs, &rhs), || {
                format!(
                    "source projection of {e:?}: E{} ≠ {}",
                    e.range + 1,
                    self.render_set(&rhs)
                )
            });
        }
        let all = self.edge_images(0..edges.len());
        r.check(self.diag.equal(&all, &self.diag.whole()), || {
            format!("edge ranges cover only {}", self.render_set(&all))
        });
        for x in &self.samples {
            let tail = x.tail_classes[1];
            let hits = edges
                .iter()
                .filter(|e| e.label == x.ray.letter_at(0) && Some(e.range) == tail)
                .count();
            r.check(hits == 1, || {
                format!("ray {} lies in {hits} edge ranges", self.render_ray(&x.ray))
            });
        }
        r
    }

    fn edge_map(&self, max_len: usize) -> FamilyReport {
        let mut r = FamilyReport::new("edge-map");
        let edges = self.cover.edges();
        for v in 0..self.cover.class_count() {
            for a in self.cover.alphabet().letters() {
                let n = edges.iter().filter(|e| e.range == v && e.label == a).count();
                r.check(n <= 1, || {
                    format!(
                        "E{} has {n} incoming edges labeled {}",
                        v + 1,
                        self.render_word(&[a])
                    )
                });
            }
        }
        let by_label: usize = self
            .cover
            .alphabet()
            .letters()
            .map(|a| edges.iter().filter(|e| e.label == a).count())
            .sum();
        r.check(by_label == edges.len(), || {
            format!("{} of {} edges carry a valid label", by_label, edges.len())
        });
        let nodes = self.word_tree(max_len);
        let paths_of: Vec<Vec<Vec<usize>>> =
            nodes.iter().map(|n| self.cover.paths_labeled(&n.word)).collect();
        let mut letter_node = BTreeMap::new();
        for (j, n) in nodes.iter().enumerate().filter(|(_, n)| n.word.len() == 1) {
            letter_node.insert(n.word[0], j);
        }
        for (j, node) in nodes.iter().enumerate().skip(1) {
            let mu = &node.word;
            let paths = &paths_of[j];
            let ends: BTreeSet<usize> = paths
                .iter()
                .map(|p| edges[*p.last().unwrap()].range)
                .collect();
            let expected = self.true_post_classes(&node.relation);
            r.check(ends == expected, || {
                format!(
                    "μ = {}: path ranges {:?}, classes with μE_i ≠ ∅ {:?}",
                    self.render_word(mu),
                    ends,
                    expected
                )
            });
            let whole: BTreeSet<&[usize]> = paths.iter().map(Vec::as_slice).collect();
            // Joining is associative, so splitting off the last letter of
            // every word covers every other split by induction.
            if mu.len() >= 2 {
                let (head, tail) = mu.split_at(mu.len() - 1);
                let tails = &paths_of[letter_node[&tail[0]]];
                let joined: Vec<Vec<usize>> = paths_of[node.parent.unwrap()]
                    .iter()
                    .flat_map(|a| {
                        let end = edges[*a.last().unwrap()].range;
                        tails
                            .iter()
                            .filter(move |b| edges[b[0]].source == end)
                            .map(move |b| {
                                let mut p = a.clone();
                                p.extend_from_slice(b);
                                p
                            })
                    })
                    .collect();
                let joined_set: BTreeSet<&[usize]> = joined.iter().map(Vec::as_slice).collect();
                r.check(joined_set == whole, || {
                    format!(
                        "paths labeled {} do not factor as {}·{}",
                        self.render_word(mu),
                        self.render_word(head),
                        self.render_word(tail)
                    )
                });
            }
        }
        r
    }

    fn round_trips(&self) -> FamilyReport {
        let mut r = FamilyReport::new("round-trips");
        let g = self.cover.presentation();
        let edges = self.cover.edges();
        for a in self.cover.alphabet().letters() {
            let ranges: BTreeSet<usize> = edges.iter().filter(|e| e.label == a).map(|e| e.range).collect();
            let expected: BTreeSet<usize> = self
                .cover
                .classes()
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    c.survivor_sets()
                        .iter()
                        .any(|s| !crate::krieger::prepend(g, a, s).is_empty())
                })
                .map(|(j, _)| j)
                .collect();
            r.check(ranges == expected, || {
                format!(
                    "letter {}: edge ranges {:?} but {}·E_j ≠ ∅ for {:?}",
                    self.render_word(&[a]),
                    ranges,
                    self.render_word(&[a]),
                    expected
                )
            });
        }
        let all = self.class_union(0..self.cover.class_count());
        r.check(self.diag.equal(&all, &self.diag.whole()), || {
            format!("class projections sum to {}", self.render_set(&all))
        });
        for (i, e) in edges.iter().enumerate() {
            for (j, f) in edges.iter().enumerate() {
                if i != j && e.label == f.label {
                    r.check(e.range != f.range, || {
                        format!("edges {e:?} and {f:?} share label and range")
                    });
                }
            }
        }
        r
    }
}

/// Cuntz-Krieger relations for the edge generators, modeled on clopen sets.
pub fn verify_ck_relations(cover: &KriegerCover) -> FamilyReport {
    Checker::new(cover).ck_relations()
}

/// Hypotheses for extending the letter map to the whole shift algebra:
/// left-resolving cover, labels partitioning the edges, path ranges
/// matching post images, and path concatenation.
pub fn verify_psi_hypotheses(cover: &KriegerCover, max_len: usize) -> FamilyReport {
    Checker::new(cover).edge_map(max_len)
}

/// The two compositions of the letter and edge maps are identities.
pub fn verify_round_trips(cover: &KriegerCover) -> FamilyReport {
    Checker::new(cover).round_trips()
}

/// Every check family, in a fixed order.
pub fn verify_all(cover: &KriegerCover, max_len: usize) -> Report {
    let c = Checker::new(cover);
    Report {
        families: alloc::vec![
            c.letter_cylinders(),
            c.conjugation(max_len),
            c.post_images(max_len),
            c.unique_paths(max_len),
            c.class_expressions(),
            c.class_decomposition(),
            c.ck_relations(),
            c.edge_map(max_len),
            c.round_trips(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krieger::build_cover;
    use crate::shift::{Alphabet, Edge, LabeledGraph};
    use alloc::vec;

    fn even_cover() -> KriegerCover {
        let g = LabeledGraph::new(
            Alphabet::new(["0", "1"]).unwrap(),
            vec!["a".into(), "b".into()],
            vec![Edge::new(0, 0, 1), Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap();
        build_cover(&g).unwrap()
    }

    #[test]
    fn even_shift_passes() {
        let c = even_cover();
        let report = verify_all(&c, DEFAULT_MAX_WORD_LEN);
        assert!(report.passed(), "{report:?}");
        assert!(report.families.len() >= 7);
        // 5 choose 2 disjointness checks, 5 source checks, 1 partition check
        assert_eq!(verify_ck_relations(&c).checks, 10 + 5 + 1 + Checker::new(&c).samples.len());
    }

    #[test]
    fn duplicated_label_names_vertex() {
        let c = even_cover();
        let mut edges = c.edges().to_vec();
        edges.push(Edge::new(1, 2, 1));
        let bad = c.with_edges(edges);
        let r = verify_psi_hypotheses(&bad, 4);
        assert!(!r.passed());
        assert!(r.witnesses[0].contains("E3"), "{:?}", r.witnesses);
    }

    #[test]
    fn reassigned_range_fails_ck() {
        let c = even_cover();
        let mut edges = c.edges().to_vec();
        edges[2] = Edge::new(0, 1, 1);
        let r = verify_ck_relations(&c.with_edges(edges));
        assert!(!r.passed());
    }

    #[test]
    fn dropped_edge_fails_round_trip() {
        let c = even_cover();
        let mut edges = c.edges().to_vec();
        edges.remove(2);
        let r = verify_round_trips(&c.with_edges(edges));
        assert!(!r.passed());
        assert!(r.witnesses[0].starts_with("letter 1"));
    }

    #[test]
    fn reports_are_deterministic() {
        let c = even_cover();
        assert_eq!(verify_all(&c, 5), verify_all(&c, 5));
    }
}
