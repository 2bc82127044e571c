//! Text renderings of covers, matrices, and verification reports.

use std::fmt::Write;

use sofic_core::isocheck::Report;
use sofic_core::krieger::{EdgeMatrix, KriegerCover};

pub fn cover_text(cover: &KriegerCover) -> String {
    let alphabet = cover.alphabet();
    let mut out = String::new();
    writeln!(out, "classes: {}", cover.class_count()).unwrap();
    writeln!(out, "semigroup: {}", cover.semigroup_size()).unwrap();
    writeln!(out, "stabilization level: {}", cover.stabilization_level()).unwrap();
    for (i, class) in cover.classes().iter().enumerate() {
        writeln!(out, "E{} {}", i + 1, class.representative().render(alphabet)).unwrap();
    }
    writeln!(out, "edges: {}", cover.edges().len()).unwrap();
    for e in cover.edges() {
        writeln!(
            out,
            "E{} -> E{} {}",
            e.source + 1,
            e.range + 1,
            alphabet.symbol(e.label)
        )
        .unwrap();
    }
    out
}

pub fn matrix_text(b: &EdgeMatrix) -> String {
    let mut out = String::new();
    for row in b.rows() {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dot(cover: &KriegerCover) -> String {
    let alphabet = cover.alphabet();
    let mut out = String::from("digraph cover {\n");
    for i in 0..cover.class_count() {
        writeln!(out, "    E{0} [label=\"E{0}\"];", i + 1).unwrap();
    }
    for e in cover.edges() {
        writeln!(
            out,
            "    E{} -> E{} [label={}];",
            e.source + 1,
            e.range + 1,
            quote(alphabet.symbol(e.label))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    for f in &report.families {
        if f.passed() {
            writeln!(out, "PASS {} checks={}", f.name, f.checks).unwrap();
        } else {
            let witness = f.witnesses.first().map(String::as_str).unwrap_or("");
            writeln!(
                out,
                "FAIL {} checks={} failed={} witness: {}",
                f.name, f.checks, f.failed, witness
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "families={} failed={}",
        report.families.len(),
        report.failed_families()
    )
    .unwrap();
    out
}
