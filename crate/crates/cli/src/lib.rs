//! File format, renderings, and the test-only cover corruption hook behind
//! the `sofic` binary.

pub mod format;
pub mod output;

use std::str::FromStr;

use sofic_core::krieger::KriegerCover;
use sofic_core::shift::Edge;

/// A deliberate change to a cover's edge list, used for negative controls.
/// Edge and class indices are 0-based; edges are in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    Drop(usize),
    Range(usize, usize),
    Source(usize, usize),
    Label(usize, usize),
    Add(usize, usize, usize),
}

impl FromStr for Corruption {
    type Err = String;

    /// `drop:E`, `range:E:C`, `source:E:C`, `label:E:L`, `add:S:R:L`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or("");
        let nums: Vec<usize> = parts
            .map(|p| p.parse().map_err(|_| format!("bad index `{p}` in `{s}`")))
            .collect::<Result<_, _>>()?;
        match (kind, nums.as_slice()) {
            ("drop", &[e]) => Ok(Corruption::Drop(e)),
            ("range", &[e, c]) => Ok(Corruption::Range(e, c)),
            ("source", &[e, c]) => Ok(Corruption::Source(e, c)),
            ("label", &[e, l]) => Ok(Corruption::Label(e, l)),
            ("add", &[a, b, l]) => Ok(Corruption::Add(a, b, l)),
            _ => Err(format!("unrecognized corruption `{s}`")),
        }
    }
}

impl Corruption {
    pub fn apply(self, cover: &KriegerCover) -> Result<KriegerCover, String> {
        let mut edges = cover.edges().to_vec();
        let n = cover.class_count();
        let k = cover.alphabet().len();
        let count = edges.len();
        let edge = |e: usize| {
            if e < count {
                Ok(e)
            } else {
                Err(format!("edge index {e} out of range"))
            }
        };
        let class = |c: usize| if c < n { Ok(c) } else { Err(format!("class index {c} out of range")) };
        let letter = |l: usize| if l < k { Ok(l) } else { Err(format!("letter index {l} out of range")) };
        match self {
            Corruption::Drop(e) => {
                edges.remove(edge(e)?);
            }
            Corruption::Range(e, c) => edges[edge(e)?].range = class(c)?,
            Corruption::Source(e, c) => edges[edge(e)?].source = class(c)?,
            Corruption::Label(e, l) => edges[edge(e)?].label = letter(l)?,
            Corruption::Add(a, b, l) => edges.push(Edge::new(class(a)?, class(b)?, letter(l)?)),
        }
        edges.sort();
        edges.dedup();
        Ok(cover.with_edges(edges))
    }
}
