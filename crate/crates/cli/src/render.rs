//! Plain-text summaries. These read the JSON that would otherwise be
//! printed, so the text view never disagrees with the machine output.

use std::fmt::Write;

use serde_json::Value;

fn flag(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn classify_lines(out: &mut String, v: &Value) {
    let flags = &v["flags"];
    let _ = writeln!(out, "group {} (order {})", v["group"].as_str().unwrap_or("?"), v["order"]);
    let _ = writeln!(
        out,
        "  monomial: {}  strongly monomial: {}  generalized strongly monomial: {}",
        flag(&flags["monomial"]),
        flag(&flags["strongly_monomial"]),
        flag(&flags["generalized_strongly_monomial"])
    );
    if let Some(sets) = v["level_sets"].as_array() {
        for s in sets {
            let _ = writeln!(
                out,
                "  {:<26} idempotents: {:>3}  covered dimension: {:>4}  sum is 1: {}",
                s["level"].as_str().unwrap_or("?"),
                s["pairs"].as_array().map_or(0, Vec::len),
                s["covered_dimension"],
                flag(&s["idempotent_sum_is_one"])
            );
        }
    }
    let _ = writeln!(out, "  uncovered dimension: {}", v["uncovered_dimension"]);
}

fn corpus_lines(out: &mut String, v: &Value) {
    let _ = writeln!(out, "{:<28} {:>6} {:>9} {:>9} {:>12}  note", "group", "order", "monomial", "strongly", "generalized");
    for e in v["entries"].as_array().into_iter().flatten() {
        let flags = &e["report"]["flags"];
        let _ = writeln!(
            out,
            "{:<28} {:>6} {:>9} {:>9} {:>12}  {}",
            e["name"].as_str().unwrap_or("?"),
            e["order"].as_u64().map_or("-".into(), |o| o.to_string()),
            flag(&flags["monomial"]),
            flag(&flags["strongly_monomial"]),
            flag(&flags["generalized_strongly_monomial"]),
            e["error"].as_str().unwrap_or("")
        );
    }
    let s = &v["summary"];
    let g = &s["generalized_strongly_monomial"];
    let _ = writeln!(
        out,
        "\n{} groups, {} errors; monomial {}, strongly monomial {}, generalized {} (no {}, unknown {})",
        s["groups"], s["errors"], s["monomial"], s["strongly_monomial"], g["true"], g["false"], g["unknown"]
    );
}

fn suite_lines(out: &mut String, v: &Value) {
    let _ = writeln!(out, "suite {}", v["suite"].as_str().unwrap_or("?"));
    for i in v["instances"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  {:<48} {:<8} {}",
            i["construction"].as_str().unwrap_or("?"),
            i["verdict"].as_str().unwrap_or("?"),
            i["note"].as_str().unwrap_or("")
        );
    }
    let _ = writeln!(
        out,
        "passed {}, failed {}, unknown {}, skipped {}",
        v["passed"], v["failed"], v["unknown"], v["skipped"]
    );
}

/// A short human-readable view of a report; unrecognized shapes fall back
/// to pretty-printed JSON.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if v.get("entries").is_some() && v.get("summary").is_some() {
        corpus_lines(&mut out, v);
    } else if v.get("level_sets").is_some() {
        classify_lines(&mut out, v);
    } else if v.get("instances").is_some() {
        suite_lines(&mut out, v);
    } else {
        out = serde_json::to_string_pretty(v).unwrap_or_default();
        out.push('\n');
    }
    out
}
