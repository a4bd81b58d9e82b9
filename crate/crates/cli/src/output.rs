//! Final rendering of an [`OutputDoc`] in the requested format.

use quotvol_core::scalars::parse_rational;
use quotvol_core::TPoly;

use crate::compute::{OutputDoc, VerifyDoc, VolumeDoc};
use crate::job::Format;
use crate::render;

pub fn render(doc: &OutputDoc, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Latex => latex(doc),
        Format::Plain => plain(doc),
    }
}

pub fn json(doc: &OutputDoc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("output document serializes");
    out.push('\n');
    out
}

/// Rebuilds the polynomial from its coefficient strings.
pub fn volume_poly(v: &VolumeDoc) -> Option<TPoly> {
    v.coefficients
        .iter()
        .map(|c| parse_rational(c))
        .collect::<Option<Vec<_>>>()
        .map(TPoly::new)
}

fn verdict(v: &VerifyDoc) -> String {
    let status = if v.pass { "pass" } else { "FAIL" };
    let suite = serde_json::to_value(v.suite).expect("enum");
    let suite = suite.as_str().expect("string");
    match v.candidates {
        Some(c) => format!("{suite}: {status} ({c} candidates)"),
        None => format!("{suite}: {status} ({} checks)", v.checks),
    }
}

fn plain(doc: &OutputDoc) -> String {
    let mut lines = Vec::new();
    if let Some(p) = doc.volume.as_ref().and_then(volume_poly) {
        lines.push(format!("v(𝔱) = {}", render::plain(&p)));
    }
    if let Some(e) = &doc.evaluation {
        lines.push(format!("v({}) = {}", e.ttilde, e.value));
    }
    if let Some(p) = &doc.physical {
        lines.push(format!(
            "{}; {} (not exact)",
            p.substitution, p.volume_expression
        ));
        if let (Some(pi), Some(v)) = (&p.pi_probe, &p.volume) {
            lines.push(format!("with π ≈ {pi}: Vol ≈ {v}"));
        }
    }
    if let Some(d) = &doc.degree {
        lines.push(format!("degree = {d}"));
    }
    if let Some(v) = &doc.verify {
        lines.push(verdict(v));
    }
    for row in doc.rows.iter().flatten() {
        let l: Vec<String> = row.l.iter().map(i64::to_string).collect();
        lines.push(format!(
            "g={} r={} d={} l=({}): {}",
            row.g,
            row.r,
            row.d,
            l.join(","),
            row.plain
        ));
    }
    for w in &doc.warnings {
        lines.push(format!("warning: {w}"));
    }
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn latex(doc: &OutputDoc) -> String {
    let mut lines = Vec::new();
    if let Some(p) = doc.volume.as_ref().and_then(volume_poly) {
        lines.push(format!("v(\\mathfrak{{t}}) = {}", render::latex(&p)));
    }
    if let Some(d) = &doc.degree {
        let n = doc.embedding.as_ref().map_or(0, |e| e.n);
        lines.push(format!("\\deg j_{{{n}}} = {d}"));
    }
    if let Some(v) = &doc.verify {
        lines.push(format!("\\text{{{}}}", verdict(v)));
    }
    if let Some(rows) = &doc.rows {
        lines.push("\\begin{array}{cccc|l}".into());
        lines.push("g & r & d & l & v(\\mathfrak{t}) \\\\ \\hline".into());
        for row in rows {
            let l: Vec<String> = row.l.iter().map(i64::to_string).collect();
            let v = volume_poly(&row.volume)
                .map(|p| render::latex(&p))
                .unwrap_or_default();
            lines.push(format!(
                "{} & {} & {} & ({}) & {} \\\\",
                row.g,
                row.r,
                row.d,
                l.join(","),
                v
            ));
        }
        lines.push("\\end{array}".into());
    }
    lines.iter().map(|l| format!("{l}\n")).collect()
}
