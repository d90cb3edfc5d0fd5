//! JSON import and export.
//!
//! Words are written as space-separated symbol names, so multi-character
//! names survive the trip. The control is a regular-expression string, or an
//! object `{states, start, accepting, transitions}` where each transition is
//! `[from, table id or null, to]`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::{Control, Et0lSystem, Table};
use crate::automaton::Nfa;
use crate::control::ControlExpr;
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

impl Et0lSystem {
    pub fn to_json_value(&self) -> Value {
        let mut tables = Map::new();
        for t in &self.tables {
            let mut rules = Map::new();
            for (x, imgs) in &t.rules {
                let imgs: Vec<Value> = imgs.iter().map(|w| Value::String(self.word_text(w))).collect();
                rules.insert(self.symbols[*x as usize].clone(), Value::Array(imgs));
            }
            tables.insert(t.id.clone(), Value::Object(rules));
        }
        let control = match &self.control {
            Control::Expr(e) => Value::String(e.to_string()),
            Control::Automaton(n) => {
                let mut transitions = Vec::new();
                for (q, edges) in n.trans.iter().enumerate() {
                    for (s, p) in edges {
                        let id = s.map_or(Value::Null, |x| Value::String(self.tables[x as usize].id.clone()));
                        transitions.push(json!([q, id, p]));
                    }
                }
                json!({
                    "states": n.num_states(),
                    "start": n.start,
                    "accepting": n.accepting.iter().collect::<Vec<_>>(),
                    "transitions": transitions,
                })
            }
        };
        let terminals: Vec<&str> =
            self.symbols.iter().zip(&self.terminal).filter(|(_, t)| **t).map(|(s, _)| s.as_str()).collect();
        let mut obj = Map::new();
        if let Some(k) = self.k {
            obj.insert("k".into(), json!(k));
        }
        obj.insert("alphabet".into(), json!(self.symbols));
        obj.insert("terminals".into(), json!(terminals));
        obj.insert("axiom".into(), Value::String(self.word_text(&self.axiom)));
        obj.insert("tables".into(), Value::Object(tables));
        obj.insert("control".into(), control);
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("values are always serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(text)?)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("system must be an object"))?;
        let k = match obj.get("k") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_u64().ok_or_else(|| bad("k must be an integer"))? as u32),
        };
        let strings = |key: &str| -> Result<Vec<String>> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("missing array {key:?}")))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad(format!("{key:?} must hold strings"))))
                .collect()
        };
        let alphabet = strings("alphabet")?;
        let terminals: BTreeSet<String> = strings("terminals")?.into_iter().collect();
        if let Some(t) = terminals.iter().find(|t| !alphabet.contains(t)) {
            return Err(Error::InvalidSystem(format!("terminal {t:?} is not in the alphabet")));
        }
        let mut sys = Et0lSystem {
            k,
            terminal: alphabet.iter().map(|s| terminals.contains(s)).collect(),
            symbols: alphabet,
            tables: Vec::new(),
            control: Control::Expr(ControlExpr::Epsilon),
            axiom: Vec::new(),
        };
        let axiom = obj.get("axiom").and_then(Value::as_str).ok_or_else(|| bad("missing string \"axiom\""))?;
        sys.axiom = sys.parse_word(axiom)?;
        let tables = obj.get("tables").and_then(Value::as_object).ok_or_else(|| bad("missing object \"tables\""))?;
        for (id, rules) in tables {
            let rules = rules.as_object().ok_or_else(|| bad(format!("table {id:?} must be an object")))?;
            let mut t = Table { id: id.clone(), rules: BTreeMap::new() };
            for (letter, imgs) in rules {
                let x = sys.sym(letter).ok_or_else(|| Error::InvalidSystem(format!("undeclared letter {letter:?} in table {id:?}")))?;
                let imgs = imgs.as_array().ok_or_else(|| bad("rule images must be an array"))?;
                let imgs = imgs
                    .iter()
                    .map(|i| i.as_str().ok_or_else(|| bad("images must be strings")).and_then(|s| sys.parse_word(s)))
                    .collect::<Result<Vec<_>>>()?;
                t.rules.insert(x, imgs);
            }
            sys.tables.push(t);
        }
        sys.control = match obj.get("control") {
            Some(Value::String(s)) => Control::Expr(ControlExpr::parse(s)?),
            Some(Value::Object(a)) => Control::Automaton(automaton_from_json(&sys, a)?),
            _ => return Err(bad("missing \"control\"")),
        };
        let report = sys.validate();
        if !report.is_valid() {
            return Err(Error::InvalidSystem(report.errors.join("; ")));
        }
        Ok(sys)
    }
}

fn automaton_from_json(sys: &Et0lSystem, a: &Map<String, Value>) -> Result<Nfa> {
    let num = |v: Option<&Value>, what: &str| -> Result<usize> {
        v.and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(format!("automaton needs integer {what:?}")))
    };
    let states = num(a.get("states"), "states")?;
    let mut n = Nfa::new(sys.tables.len());
    n.trans = vec![Vec::new(); states.max(1)];
    n.start = num(a.get("start"), "start")?;
    for q in a.get("accepting").and_then(Value::as_array).ok_or_else(|| bad("automaton needs \"accepting\""))? {
        n.accepting.insert(num(Some(q), "accepting")?);
    }
    let ids = sys.table_ids();
    for tr in a.get("transitions").and_then(Value::as_array).ok_or_else(|| bad("automaton needs \"transitions\""))? {
        let tr = tr.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("transition must be [from, id, to]"))?;
        let (from, to) = (num(Some(&tr[0]), "from")?, num(Some(&tr[2]), "to")?);
        let sym = match &tr[1] {
            Value::Null => None,
            Value::String(id) => Some(*ids.get(id).ok_or_else(|| Error::InvalidSystem(format!("control names unknown table {id:?}")))?),
            _ => return Err(bad("transition label must be a table id or null")),
        };
        if from >= states || to >= states {
            return Err(bad("transition state out of range"));
        }
        n.add_edge(from, sym, to);
    }
    if n.start >= states || n.accepting.iter().any(|&q| q >= states) {
        return Err(bad("automaton state out of range"));
    }
    Ok(n)
}
