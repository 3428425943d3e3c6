//! Plain-text renderings for `--format text`.

use serde_json::Value;
use zeroseq::decomp::{LayeredInstance, PathDecomposition};
use zeroseq::{BlockWitness, SignedSeq};

pub fn fields(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

/// The sequence with a caret under every chosen position.
pub fn witness(f: &SignedSeq, w: &BlockWitness) -> String {
    if !f.is_pm1() {
        return format!("indices {:?} weight {}\n", w.indices, w.weight);
    }
    let mut marks = vec![' '; f.len()];
    for &i in &w.indices {
        marks[i - 1] = '^';
    }
    let marks: String = marks.into_iter().collect();
    format!(
        "{}\n{}\nweight {}\n",
        f.to_text(),
        marks.trim_end(),
        w.weight
    )
}

pub fn decomposition(inst: &LayeredInstance, dec: &PathDecomposition) -> String {
    let mut out = format!("band [{}, {}]\n", dec.lambda, dec.upper);
    for (p, w) in dec.paths.iter().zip(&dec.weights) {
        let cells: Vec<String> = p
            .iter()
            .enumerate()
            .map(|(layer, &c)| format!("{:>3}", inst.cell(layer, c)))
            .collect();
        out.push_str(&format!("{} | {w:>4}\n", cells.join(" ")));
    }
    out
}

/// Flattens a JSON object into `key  value` lines.
pub fn value(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let rows: Vec<(&str, String)> = map
                .iter()
                .map(|(k, v)| {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    (k.as_str(), shown)
                })
                .collect();
            fields(&rows)
        }
        other => format!("{other}\n"),
    }
}
