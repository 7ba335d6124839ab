//! Formula file format: leaves are `"x<i>"`, `"~x<i>"` (1-indexed), `"0"`,
//! `"1"`; gates are `{"and": […]}` / `{"or": […]}`; the top level is
//! `{"format": "formula/1", "n": <int>, "formula": …}`. Emission follows
//! canonical child order, so files are byte-stable.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::formula::{Formula, FormulaView, GateOp};

pub const FORMULA_FORMAT: &str = "formula/1";

fn node_to_value(f: &Formula) -> Value {
    match f.view() {
        FormulaView::Const(v) => Value::String(if v { "1".into() } else { "0".into() }),
        FormulaView::Literal { var, negated } => {
            Value::String(format!("{}x{}", if negated { "~" } else { "" }, var + 1))
        }
        FormulaView::Gate { op, children } => {
            let items: Vec<Value> = children.iter().map(node_to_value).collect();
            json!({ op.name(): items })
        }
    }
}

pub fn formula_to_json(f: &Formula) -> Value {
    json!({
        "format": FORMULA_FORMAT,
        "n": f.ambient_dim(),
        "formula": node_to_value(f),
    })
}

pub fn formula_to_json_string(f: &Formula) -> String {
    let mut s = serde_json::to_string_pretty(&formula_to_json(f)).expect("formula serializes");
    s.push('\n');
    s
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        msg: msg.into(),
    }
}

fn node_from_value(value: &Value, n: usize) -> Result<Formula> {
    match value {
        Value::String(s) => match s.as_str() {
            "0" => Formula::constant(n, false),
            "1" => Formula::constant(n, true),
            other => {
                let (negated, rest) = match other.strip_prefix('~') {
                    Some(rest) => (true, rest),
                    None => (false, other),
                };
                let idx = rest
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(format!("invalid leaf `{other}`")))?;
                if idx == 0 {
                    return Err(parse_err("variable indices are 1-based"));
                }
                Formula::literal(n, idx - 1, negated)
            }
        },
        Value::Object(map) => {
            let (op, children) = gate_entry(map)?;
            let parsed: Result<Vec<Formula>> =
                children.iter().map(|c| node_from_value(c, n)).collect();
            Formula::gate(op, parsed?)
        }
        other => Err(parse_err(format!("unexpected formula node `{other}`"))),
    }
}

fn gate_entry(map: &Map<String, Value>) -> Result<(GateOp, &Vec<Value>)> {
    if map.len() != 1 {
        return Err(parse_err("gate object must have exactly one key"));
    }
    let (key, value) = map.iter().next().unwrap();
    let op = match key.as_str() {
        "and" => GateOp::And,
        "or" => GateOp::Or,
        other => return Err(parse_err(format!("unknown gate `{other}`"))),
    };
    let children = value
        .as_array()
        .ok_or_else(|| parse_err("gate children must form an array"))?;
    Ok((op, children))
}

pub fn formula_from_json_str(input: &str) -> Result<Formula> {
    let value: Value = serde_json::from_str(input)?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("top level must be an object"))?;
    if let Some(fmt) = obj.get("format") {
        if fmt.as_str() != Some(FORMULA_FORMAT) {
            return Err(parse_err(format!(
                "unsupported format tag {fmt}, expected \"{FORMULA_FORMAT}\""
            )));
        }
    }
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing positive integer field `n`"))? as usize;
    let root = obj
        .get("formula")
        .ok_or_else(|| parse_err("missing field `formula`"))?;
    node_from_value(root, n)
}
