use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{redexes, rewrite_once, root_step, rule, RuleSet};
use crate::reason::{Position, Reason};

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    LeftmostInnermost,
    LeftmostOutermost,
    /// Uniform choice among all (position, rule) redexes, from a seeded stream.
    Random(u64),
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::LeftmostInnermost
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::LeftmostInnermost => f.write_str("li"),
            Strategy::LeftmostOutermost => f.write_str("lo"),
            Strategy::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// `li`, `lo`, `random` (seed 0) or `random(N)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "li" => Ok(Strategy::LeftmostInnermost),
            "lo" => Ok(Strategy::LeftmostOutermost),
            "random" => Ok(Strategy::Random(0)),
            other => other
                .strip_prefix("random(")
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|n| n.trim().parse().ok())
                .map(Strategy::Random)
                .ok_or_else(|| format!("unknown strategy '{other}' (expected li, lo or random)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: u8,
    pub position: Position,
    pub result: Reason,
}

/// A rewrite sequence starting at `initial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Reason,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new(initial: Reason) -> Self {
        Trace {
            initial,
            steps: Vec::new(),
        }
    }

    /// The last term of the sequence.
    pub fn last(&self) -> &Reason {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.initial)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step and checks that it yields the recorded result.
    /// Returns the index of the first step that does not.
    pub fn replay(&self, rules: &RuleSet) -> Result<(), usize> {
        let mut cur = self.initial.clone();
        for (i, s) in self.steps.iter().enumerate() {
            match rewrite_once(&cur, s.rule, &s.position, rules) {
                Ok(Some(next)) if next == s.result => cur = next,
                _ => return Err(i),
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "initial": self.initial.to_string(),
            "steps": self.steps.iter().map(|s| serde_json::json!({
                "rule": s.rule,
                "name": rule(s.rule).name,
                "pos": s.position,
                "result": s.result.to_string(),
            })).collect::<Vec<_>>(),
            "normal": self.last().to_string(),
        })
    }

    /// Graphviz rendering: one node per distinct term, one edge per step.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph trace {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
        let mut nodes: Vec<String> = Vec::new();
        let mut id_of = |t: &Reason, out: &mut String| -> usize {
            let label = t.to_string();
            match nodes.iter().position(|n| *n == label) {
                Some(i) => i,
                None => {
                    out.push_str(&format!("  n{} [label={}];\n", nodes.len(), dot_quote(&label)));
                    nodes.push(label);
                    nodes.len() - 1
                }
            }
        };
        let mut prev = id_of(&self.initial, &mut out);
        for s in &self.steps {
            let next = id_of(&s.result, &mut out);
            let label = format!("{}@{}", rule(s.rule).name, s.position);
            out.push_str(&format!("  n{prev} -> n{next} [label={}];\n", dot_quote(&label)));
            prev = next;
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("fuel must be positive")]
    ZeroFuel,
    #[error("fuel exhausted after {} steps; last term {}", .0.len(), .0.last())]
    FuelExhausted(Box<Trace>),
}

fn leftmost_innermost(r: &Reason, path: &mut Vec<usize>, rules: &RuleSet) -> Option<(Position, u8, Reason)> {
    for (i, c) in r.children().into_iter().enumerate() {
        path.push(i);
        let found = leftmost_innermost(c, path, rules);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    root_step(r, rules).map(|(id, out)| (Position::from(path.clone()), id, out))
}

fn leftmost_outermost(r: &Reason, path: &mut Vec<usize>, rules: &RuleSet) -> Option<(Position, u8, Reason)> {
    if let Some((id, out)) = root_step(r, rules) {
        return Some((Position::from(path.clone()), id, out));
    }
    for (i, c) in r.children().into_iter().enumerate() {
        path.push(i);
        let found = leftmost_outermost(c, path, rules);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Rewrites `r` until no rule of `rules` applies, taking at most `fuel` steps.
pub fn normalize(r: &Reason, strategy: Strategy, fuel: usize, rules: &RuleSet) -> Result<Trace, NormalizeError> {
    if fuel == 0 {
        return Err(NormalizeError::ZeroFuel);
    }
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut trace = Trace::new(r.clone());
    let mut cur = r.clone();
    loop {
        let next = match strategy {
            Strategy::LeftmostInnermost => leftmost_innermost(&cur, &mut Vec::new(), rules),
            Strategy::LeftmostOutermost => leftmost_outermost(&cur, &mut Vec::new(), rules),
            Strategy::Random(_) => {
                let choices: Vec<(Position, u8)> = redexes(&cur, rules)
                    .into_iter()
                    .flat_map(|(p, ids)| ids.into_iter().map(move |id| (p.clone(), id)))
                    .collect();
                if choices.is_empty() {
                    None
                } else {
                    let rng = rng.as_mut().expect("seeded");
                    let (p, id) = choices[rng.gen_range(0..choices.len())].clone();
                    let sub = cur.subterm_at(&p).expect("redex position");
                    let out = super::rules::apply_root(id, sub, rules).expect("redex fires");
                    Some((p, id, out))
                }
            }
        };
        let Some((p, id, contractum)) = next else {
            return Ok(trace);
        };
        if trace.len() == fuel {
            return Err(NormalizeError::FuelExhausted(Box::new(trace)));
        }
        cur = cur.replace_at(&p, contractum).expect("redex position");
        trace.steps.push(Step {
            rule: id,
            position: p,
            result: cur.clone(),
        });
    }
}
