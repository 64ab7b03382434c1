use serde_json::{json, Value};

use pathhom::chain::Coeff;
use pathhom::io::{chain_to_json, chain_to_text, digraph_to_json, digraph_to_text};
use pathhom::{Chain, Digraph};

/// What a command found: whether its property holds, and the same content
/// for human readers and as JSON.
pub struct Report {
    pub holds: bool,
    pub human: String,
    pub json: Value,
}

impl Report {
    pub fn ok(human: String, json: Value) -> Self {
        Report {
            holds: true,
            human,
            json,
        }
    }

    pub fn verdict(holds: bool, human: String, mut json: Value) -> Self {
        if let Value::Object(m) = &mut json {
            m.insert("holds".into(), Value::Bool(holds));
        }
        Report { holds, human, json }
    }
}

pub fn chain_text<R: Coeff>(c: &Chain<R>) -> String {
    chain_to_text(c, false)
}

pub fn form_text<R: Coeff>(c: &Chain<R>) -> String {
    chain_to_text(c, true)
}

pub fn chain_json<R: Coeff>(c: &Chain<R>) -> Value {
    chain_to_json(c, false)
}

pub fn form_json<R: Coeff>(c: &Chain<R>) -> Value {
    chain_to_json(c, true)
}

pub fn digraph_text(g: &Digraph) -> String {
    digraph_to_text(g)
}

pub fn digraph_json(g: &Digraph) -> Value {
    digraph_to_json(g)
}

pub fn chains_block<R: Coeff>(cs: &[Chain<R>]) -> String {
    cs.iter().map(|c| format!("{}\n", chain_text(c))).collect()
}

pub fn chains_json<R: Coeff>(cs: &[Chain<R>]) -> Value {
    json!(cs.iter().map(chain_json).collect::<Vec<_>>())
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
