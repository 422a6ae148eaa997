//! Result documents: JSON by default, an indented table with `--pretty`.
//!
//! Every scalar appears twice, as the authoritative exact form (`"13/15"`)
//! and an advisory 12-significant-digit decimal under `"approx"`. Output is
//! fully deterministic: same input, same bytes.

use fri_core::{
    render_approx, render_exact, Assignment, Error, MinimalityCertificate, Rational,
    ReductionTrace, RowMinimaxTrace, UnitScalar,
};
use serde_json::{json, Value};

pub const APPROX_DIGITS: usize = 12;

pub fn rational_json(r: &Rational) -> Value {
    json!({
        "exact": render_exact(r),
        "approx": render_approx(r, APPROX_DIGITS),
    })
}

pub fn unit_json(u: &UnitScalar) -> Value {
    rational_json(u.ratio())
}

pub fn assignment_json(x: &Assignment) -> Value {
    Value::Array(x.coords().iter().map(unit_json).collect())
}

pub fn assignments_json(xs: &[Assignment]) -> Value {
    Value::Array(xs.iter().map(assignment_json).collect())
}

/// Column indices leave the library 0-based and reach files and humans
/// 1-based.
fn one_based(indices: impl IntoIterator<Item = usize>) -> Vec<usize> {
    indices.into_iter().map(|j| j + 1).collect()
}

pub fn certificate_json(cert: &MinimalityCertificate) -> Value {
    json!({
        "minimal": cert.minimal,
        "tight_row": cert.tight_row.map(|i| i + 1),
        "support": one_based(cert.support.indices().iter().copied()),
        "strict_flags": cert
            .strict_flags
            .iter()
            .map(|(j, ok)| ((j + 1).to_string(), Value::Bool(*ok)))
            .collect::<serde_json::Map<String, Value>>(),
        "fixed_point_deltas": cert.fixed_point_deltas.iter().map(unit_json).collect::<Vec<_>>(),
    })
}

pub fn reduction_trace_json(trace: &ReductionTrace) -> Value {
    json!({
        "initial_deltas": trace.initial_deltas.iter().map(unit_json).collect::<Vec<_>>(),
        "shortcut": trace.shortcut,
        "steps": trace
            .steps
            .iter()
            .map(|s| json!({"column": s.column + 1, "delta": unit_json(&s.delta)}))
            .collect::<Vec<_>>(),
    })
}

pub fn row_trace_json(trace: &RowMinimaxTrace) -> Value {
    json!({
        "steps": trace
            .steps
            .iter()
            .map(|s| json!({
                "k": s.k,
                "u": unit_json(&s.u),
                "active_set": one_based(s.active_set.iter().copied()),
                "row_sum": rational_json(&s.row_sum),
            }))
            .collect::<Vec<_>>(),
        "final_u": unit_json(&trace.final_u),
    })
}

pub fn ok_document(command: &str, payload: Value) -> Value {
    json!({
        "status": "ok",
        "command": command,
        "payload": payload,
    })
}

/// Maps an error onto the document status and process exit code:
/// input errors exit 2, infeasibility 1, resource and internal failures 3.
pub fn error_document(command: &str, error: &Error) -> (i32, Value) {
    let (status, exit) = match error {
        Error::Input(_) => ("input-error", 2),
        Error::Infeasible(_) => ("infeasible", 1),
        Error::Resource(_) | Error::Internal(_) => ("resource-error", 3),
    };
    (
        exit,
        json!({
            "status": status,
            "command": command,
            "error": error.to_string(),
        }),
    )
}

pub fn render(doc: &Value, pretty: bool) -> String {
    if pretty {
        let mut out = String::new();
        match doc {
            Value::Object(map) => {
                for (key, value) in map {
                    write_entry(&mut out, key, value, 0);
                }
            }
            other => write_entry(&mut out, "value", other, 0),
        }
        out
    } else {
        let mut text = serde_json::to_string(doc).expect("result documents serialize");
        text.push('\n');
        text
    }
}

/// A `{exact, approx}` pair collapses to one token.
fn scalar_inline(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    if obj.len() != 2 {
        return None;
    }
    let exact = obj.get("exact")?.as_str()?;
    let approx = obj.get("approx")?.as_str()?;
    if exact == approx {
        Some(exact.to_string())
    } else {
        Some(format!("{exact} (~{approx})"))
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("({})", p.join(", ")))
        }
        Value::Object(_) => scalar_inline(v),
    }
}

fn write_entry(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(text) = inline(value) {
        out.push_str(&format!("{pad}{key}: {text}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                write_entry(out, k, v, depth + 1);
            }
        }
        Value::Array(items) => {
            for (idx, item) in items.iter().enumerate() {
                write_entry(out, &format!("[{idx}]"), item, depth + 1);
            }
        }
        _ => unreachable!("inline covers scalars"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_render_both_forms() {
        let v = rational_json(&fri_core::parse_rational("13/15").unwrap());
        assert_eq!(v["exact"], "13/15");
        assert_eq!(v["approx"], "0.866666666667");
    }

    #[test]
    fn pretty_collapses_scalar_pairs() {
        let doc = json!({
            "status": "ok",
            "u_star": {"exact": "13/15", "approx": "0.866666666667"},
            "x": [{"exact": "1", "approx": "1"}, {"exact": "3/5", "approx": "0.6"}],
        });
        let text = render(&doc, true);
        assert!(text.contains("u_star: 13/15 (~0.866666666667)"));
        assert!(text.contains("x: (1, 3/5 (~0.6))"));
    }

    #[test]
    fn json_rendering_is_single_line() {
        let doc = ok_document("check", json!({"solvable": true}));
        let text = render(&doc, false);
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("{\"status\":\"ok\""));
    }
}
