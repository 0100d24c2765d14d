//! JSON and DOT serialization of pushdown automata.
//!
//! Both formats carry the full machine and import back to an equal value.
//! The DOT form keeps the alphabets in `//` comments so Graphviz ignores them.

use serde::{Deserialize, Serialize};

use super::{stack_symbol, PushdownAutomaton, StackSymbol, Transition};
use crate::error::{Error, Result};
use crate::words::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Serialize, Deserialize)]
struct MachineJson {
    states: Vec<String>,
    input: Vec<String>,
    stack: Vec<String>,
    bottom: String,
    initial: String,
    finals: Vec<String>,
    transitions: Vec<TransitionJson>,
}

#[derive(Serialize, Deserialize)]
struct TransitionJson {
    from: String,
    read: Option<String>,
    top: String,
    to: String,
    push: Vec<String>,
}

const LAMBDA: &str = "λ";

impl PushdownAutomaton {
    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => self.to_json(),
            ExportFormat::Dot => self.to_dot(),
        }
    }

    pub fn import(text: &str, format: ExportFormat) -> Result<Self> {
        match format {
            ExportFormat::Json => Self::from_json(text),
            ExportFormat::Dot => Self::from_dot(text),
        }
    }

    fn to_json_value(&self) -> MachineJson {
        MachineJson {
            states: self.states.clone(),
            input: self.input.symbols().to_vec(),
            stack: self.stack.clone(),
            bottom: self.stack_name(self.bottom).to_string(),
            initial: self.states[self.initial].clone(),
            finals: (0..self.states.len())
                .filter(|&q| self.finals[q])
                .map(|q| self.states[q].clone())
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionJson {
                    from: self.states[t.from].clone(),
                    read: t.read.map(|l| self.input.symbol(l).to_string()),
                    top: self.stack_name(t.top).to_string(),
                    to: self.states[t.to].clone(),
                    push: t.push.iter().map(|&s| self.stack_name(s).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MachineJson = serde_json::from_str(text)
            .map_err(|e| Error::Import(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        from_raw(raw)
    }

    pub fn to_dot(&self) -> String {
        let q = |s: &str| quote(s);
        let mut out = String::from("digraph pda {\n");
        out.push_str(&format!("  // input: {}\n", serde_json::to_string(self.input.symbols()).unwrap()));
        out.push_str(&format!("  // stack: {}\n", serde_json::to_string(&self.stack).unwrap()));
        out.push_str(&format!("  // bottom: {}\n", serde_json::to_string(self.stack_name(self.bottom)).unwrap()));
        out.push_str("  rankdir=LR;\n");
        out.push_str("  __start [shape=point];\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if self.finals[i] { "doublecircle" } else { "circle" };
            out.push_str(&format!("  {} [shape={shape}];\n", q(s)));
        }
        out.push_str(&format!("  __start -> {};\n", q(&self.states[self.initial])));
        for t in &self.transitions {
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                q(&self.states[t.from]),
                q(&self.states[t.to]),
                q(&self.edge_label(t))
            ));
        }
        out.push_str("}\n");
        out
    }

    /// `a, Z / β` with `λ` for an empty read or push.
    fn edge_label(&self, t: &Transition) -> String {
        let read = t.read.map_or(LAMBDA, |l| self.input.symbol(l));
        let push = if t.push.is_empty() {
            LAMBDA.to_string()
        } else {
            t.push.iter().map(|&s| self.stack_name(s)).collect::<Vec<_>>().join(" ")
        };
        format!("{read}, {} / {push}", self.stack_name(t.top))
    }

    pub fn from_dot(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Import(format!("line {}: {msg}", line + 1));
        let mut input = None;
        let mut stack = None;
        let mut bottom = None;
        let mut states = Vec::new();
        let mut finals = Vec::new();
        let mut initial = None;
        let mut transitions = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(meta) = line.strip_prefix("//") {
                let (key, value) = meta.split_once(':').ok_or_else(|| err(n, "bad metadata comment"))?;
                let parse_err = |e: serde_json::Error| err(n, &e.to_string());
                match key.trim() {
                    "input" => input = Some(serde_json::from_str::<Vec<String>>(value).map_err(parse_err)?),
                    "stack" => stack = Some(serde_json::from_str::<Vec<String>>(value).map_err(parse_err)?),
                    "bottom" => bottom = Some(serde_json::from_str::<String>(value).map_err(parse_err)?),
                    other => return Err(err(n, &format!("unknown metadata `{other}`"))),
                }
                continue;
            }
            if line.is_empty()
                || line.starts_with("digraph")
                || line == "}"
                || line.starts_with("rankdir")
                || line.starts_with("__start [")
            {
                continue;
            }
            let body = line.strip_suffix(';').ok_or_else(|| err(n, "missing `;`"))?;
            if let Some(target) = body.strip_prefix("__start -> ") {
                initial = Some(unquote(target).ok_or_else(|| err(n, "bad initial edge"))?.0);
                continue;
            }
            let (first, rest) = unquote(body).ok_or_else(|| err(n, "expected a quoted state"))?;
            let rest = rest.trim_start();
            if let Some(edge) = rest.strip_prefix("-> ") {
                let (to, rest) = unquote(edge).ok_or_else(|| err(n, "expected a quoted target"))?;
                let label = rest
                    .trim()
                    .strip_prefix("[label=")
                    .and_then(|l| l.strip_suffix(']'))
                    .and_then(unquote)
                    .ok_or_else(|| err(n, "expected a label"))?
                    .0;
                let (read, rest) = label.split_once(", ").ok_or_else(|| err(n, "label lacks `, `"))?;
                let (top, push) = rest.split_once(" / ").ok_or_else(|| err(n, "label lacks ` / `"))?;
                transitions.push(TransitionJson {
                    from: first,
                    read: (read != LAMBDA).then(|| read.to_string()),
                    top: top.to_string(),
                    to,
                    push: if push == LAMBDA {
                        Vec::new()
                    } else {
                        push.split(' ').map(str::to_string).collect()
                    },
                });
            } else if rest.starts_with("[shape=") {
                if rest.contains("doublecircle") {
                    finals.push(first.clone());
                }
                states.push(first);
            } else {
                return Err(err(n, "unrecognized statement"));
            }
        }
        let missing = |what: &str| Error::Import(format!("missing {what}"));
        from_raw(MachineJson {
            states,
            input: input.ok_or_else(|| missing("input alphabet"))?,
            stack: stack.ok_or_else(|| missing("stack alphabet"))?,
            bottom: bottom.ok_or_else(|| missing("bottom symbol"))?,
            initial: initial.ok_or_else(|| missing("initial state"))?,
            finals,
            transitions,
        })
    }
}

fn from_raw(raw: MachineJson) -> Result<PushdownAutomaton> {
    let input = Alphabet::new(raw.input.clone()).map_err(|e| Error::Import(e.to_string()))?;
    let state = |n: &str| {
        raw.states
            .iter()
            .position(|s| s == n)
            .ok_or_else(|| Error::Import(format!("unknown state `{n}`")))
    };
    let sym = |n: &str| -> Result<StackSymbol> {
        raw.stack
            .iter()
            .position(|s| s == n)
            .map(stack_symbol)
            .ok_or_else(|| Error::Import(format!("unknown stack symbol `{n}`")))
    };
    let mut finals = vec![false; raw.states.len()];
    for f in &raw.finals {
        finals[state(f)?] = true;
    }
    let transitions = raw
        .transitions
        .iter()
        .map(|t| {
            Ok(Transition {
                from: state(&t.from)?,
                read: t.read.as_deref().map(|a| input.letter(a)).transpose()?,
                top: sym(&t.top)?,
                to: state(&t.to)?,
                push: t.push.iter().map(|p| sym(p)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PushdownAutomaton::new(
        raw.states.clone(),
        input,
        raw.stack.clone(),
        sym(&raw.bottom)?,
        state(&raw.initial)?,
        finals,
        transitions,
    )
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Reads one quoted string from the start of `s`; returns it and the rest.
fn unquote(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    let mut chars = s.char_indices();
    if chars.next()?.1 != '"' {
        return None;
    }
    let mut out = String::new();
    let mut escaped = false;
    for (i, c) in chars {
        if escaped {
            out.push(c);
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '"' {
            return Some((out, &s[i + 1..]));
        } else {
            out.push(c);
        }
    }
    None
}
