//! Line-based presentation files.
//!
//! ```text
//! # even shift
//! alphabet 0 1
//! vertex a
//! vertex b
//! edge a a 1
//! edge a b 0
//! edge b a 0
//! ```
//!
//! A file either lists `vertex`/`edge` lines (graph mode) or `forbid`
//! lines (SFT mode), never both. A file with neither presents the full
//! shift.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use sofic_core::shift::{sft_to_graph, Alphabet, Edge, LabeledGraph, SftSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Graph(LabeledGraph),
    Sft(SftSpec),
}

impl Presentation {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Presentation::Graph(g) => g.alphabet(),
            Presentation::Sft(s) => &s.alphabet,
        }
    }

    pub fn to_graph(&self) -> sofic_core::Result<LabeledGraph> {
        match self {
            Presentation::Graph(g) => Ok(g.clone()),
            Presentation::Sft(s) => sft_to_graph(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(PartialEq)]
enum Mode {
    Unknown,
    Graph,
    Sft,
}

pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut mode = Mode::Unknown;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen_edges: BTreeSet<Edge> = BTreeSet::new();
    let mut forbidden: Vec<Word> = Vec::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let err = |message: String| ParseError { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();

        if directive == "alphabet" {
            if alphabet.is_some() {
                return Err(err("`alphabet` given twice".into()));
            }
            alphabet = Some(Alphabet::new(args.iter().copied()).map_err(|e| err(e.to_string()))?);
            continue;
        }
        let Some(alpha) = &alphabet else {
            return Err(err(format!("expected `alphabet` before `{directive}`")));
        };
        let mut enter = |wanted: Mode| -> Result<(), ParseError> {
            if mode == Mode::Unknown {
                mode = wanted;
            } else if mode != wanted {
                return Err(err("graph directives and `forbid` cannot be mixed".into()));
            }
            Ok(())
        };
        let letter = |tok: &str| {
            alpha
                .index_of(tok)
                .ok_or_else(|| err(format!("unknown symbol `{tok}`")))
        };
        match directive {
            "vertex" => {
                enter(Mode::Graph)?;
                let [name] = args[..] else {
                    return Err(err("usage: vertex <id>".into()));
                };
                if vertex_index.contains_key(name) {
                    return Err(err(format!("duplicate vertex `{name}`")));
                }
                vertex_index.insert(name.to_string(), vertices.len());
                vertices.push(name.to_string());
            }
            "edge" => {
                enter(Mode::Graph)?;
                let [src, dst, label] = args[..] else {
                    return Err(err("usage: edge <src> <dst> <label>".into()));
                };
                let vertex = |name: &str| {
                    vertex_index
                        .get(name)
                        .copied()
                        .ok_or_else(|| err(format!("undeclared vertex `{name}`")))
                };
                let e = Edge::new(vertex(src)?, vertex(dst)?, letter(label)?);
                if !seen_edges.insert(e) {
                    return Err(err(format!("duplicate edge {src} {dst} {label}")));
                }
                edges.push(e);
            }
            "forbid" => {
                enter(Mode::Sft)?;
                if args.is_empty() {
                    return Err(err("forbidden words must be nonempty".into()));
                }
                let word: Vec<usize> = args.iter().map(|t| letter(t)).collect::<Result<_, _>>()?;
                forbidden.push(Word::from(word));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let Some(alphabet) = alphabet else {
        return Err(ParseError {
            line: last_line.max(1),
            message: "missing `alphabet` line".into(),
        });
    };
    match mode {
        Mode::Graph => LabeledGraph::new(alphabet, vertices, edges)
            .map(Presentation::Graph)
            .map_err(|e| ParseError {
                line: last_line,
                message: e.to_string(),
            }),
        Mode::Sft | Mode::Unknown => Ok(Presentation::Sft(SftSpec { alphabet, forbidden })),
    }
}

pub fn serialize(p: &Presentation) -> String {
    let alphabet = p.alphabet();
    let mut out = format!("alphabet {}\n", alphabet.symbols().join(" "));
    match p {
        Presentation::Graph(g) => {
            for v in g.vertex_names() {
                out.push_str(&format!("vertex {v}\n"));
            }
            for e in g.edges() {
                out.push_str(&format!(
                    "edge {} {} {}\n",
                    g.vertex_name(e.source),
                    g.vertex_name(e.range),
                    alphabet.symbol(e.label)
                ));
            }
        }
        Presentation::Sft(s) => {
            for w in &s.forbidden {
                let tokens: Vec<&str> = w.iter().map(|&a| alphabet.symbol(a)).collect();
                out.push_str(&format!("forbid {}\n", tokens.join(" ")));
            }
        }
    }
    out
}
