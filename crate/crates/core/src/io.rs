//! JSON files for chains and blowup sequences.
//!
//! Chain: `{"field":"Q","swap_xy":false,"chain":[{"Q":"y","beta":"3/2"}],"omega":null}`.
//! Sequence: `{"field":"Q","steps":[{"chart":"X","c":"0"},{"chart":"Y"}],"terminal":"divisor"}`.

use serde::{Deserialize, Serialize};

use crate::blowup::{BlowupSeq, BlowupStep};
use crate::error::{Error, Result};
use crate::exact::{parse_poly, parse_rational, BaseField, Elem};
use crate::valuation::{ChainEntry, MacLaneChain};

/// A rational written either as a JSON string (`"3/2"`) or a JSON integer.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Number {
    Text(String),
    Int(i64),
}

impl Number {
    fn text(&self) -> String {
        match self {
            Number::Text(s) => s.clone(),
            Number::Int(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    #[serde(rename = "Q")]
    q: String,
    beta: Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OmegaFile {
    #[serde(rename = "Q")]
    q: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    field: String,
    #[serde(default)]
    swap_xy: bool,
    chain: Vec<EntryFile>,
    #[serde(default)]
    omega: Option<OmegaFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    chart: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Number>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqFile {
    field: String,
    steps: Vec<StepFile>,
    #[serde(default = "divisor")]
    terminal: String,
}

fn divisor() -> String {
    "divisor".into()
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

/// Reads a chain without checking its invariants.
pub fn chain_from_json_unchecked(text: &str) -> Result<MacLaneChain> {
    let file: ChainFile = serde_json::from_str(text).map_err(format_err)?;
    let field: BaseField = file.field.parse()?;
    if file.chain.is_empty() {
        return Err(Error::Format("chain has no entries".into()));
    }
    let mut entries = Vec::with_capacity(file.chain.len());
    for e in &file.chain {
        let key = parse_poly(&e.q, field)?;
        let beta = parse_rational(&e.beta.text())?;
        entries.push(ChainEntry::new(key, beta));
    }
    let omega = match &file.omega {
        Some(w) => Some(parse_poly(&w.q, field)?),
        None => None,
    };
    Ok(MacLaneChain::from_parts(field, file.swap_xy, entries, omega))
}

/// Reads a chain and rejects it on the first violated invariant.
pub fn chain_from_json(text: &str) -> Result<MacLaneChain> {
    let c = chain_from_json_unchecked(text)?;
    MacLaneChain::new(c.field(), c.swap_xy(), c.entries().to_vec(), c.omega().cloned())
}

pub fn chain_to_json(chain: &MacLaneChain) -> String {
    let file = ChainFile {
        field: chain.field().to_string(),
        swap_xy: chain.swap_xy(),
        chain: chain
            .entries()
            .iter()
            .map(|e| EntryFile { q: e.key.to_string(), beta: Number::Text(e.beta.to_string()) })
            .collect(),
        omega: chain.omega().map(|w| OmegaFile { q: w.to_string() }),
    };
    serde_json::to_string_pretty(&file).expect("chain files serialize")
}

fn parse_elem(s: &str, field: BaseField) -> Result<Elem> {
    field.from_rational(&parse_rational(s)?)
}

pub fn seq_from_json(text: &str) -> Result<BlowupSeq> {
    let file: SeqFile = serde_json::from_str(text).map_err(format_err)?;
    let field: BaseField = file.field.parse()?;
    if file.terminal != "divisor" {
        return Err(Error::Format(format!("unknown terminal marker {:?}", file.terminal)));
    }
    let mut steps = Vec::with_capacity(file.steps.len());
    for s in &file.steps {
        let step = match (s.chart.as_str(), &s.c) {
            ("X", Some(c)) => BlowupStep::X(parse_elem(&c.text(), field)?),
            ("X", None) => return Err(Error::Format("chart X needs a constant c".into())),
            ("Y", None) => BlowupStep::Y,
            ("Y", Some(_)) => return Err(Error::Format("chart Y takes no constant".into())),
            (other, _) => return Err(Error::Format(format!("unknown chart {other:?}"))),
        };
        steps.push(step);
    }
    BlowupSeq::new(field, steps)
}

pub fn seq_to_json(seq: &BlowupSeq) -> String {
    let file = SeqFile {
        field: seq.field.to_string(),
        steps: seq
            .steps
            .iter()
            .map(|s| StepFile { chart: s.chart().to_string(), c: s.constant().map(|c| Number::Text(c.to_string())) })
            .collect(),
        terminal: divisor(),
    };
    serde_json::to_string_pretty(&file).expect("sequence files serialize")
}
