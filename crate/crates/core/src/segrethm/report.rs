//! Theorem verification reports.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub id: String,
    pub pass: bool,
    /// Evidence for the verdict; never null on a failure.
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub theorem: String,
    pub inputs: Value,
    pub clauses: Vec<Clause>,
    pub caveats: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: &str, inputs: Value) -> Self {
        TheoremReport { theorem: theorem.to_string(), inputs, clauses: Vec::new(), caveats: Vec::new() }
    }

    pub fn clause(&mut self, id: impl Into<String>, pass: bool, witness: Value) {
        debug_assert!(pass || !witness.is_null(), "failing clause without witness");
        self.clauses.push(Clause { id: id.into(), pass, witness });
    }

    pub fn caveat(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.caveats.contains(&s) {
            self.caveats.push(s);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "inputs": self.inputs,
            "clauses": self.clauses.iter().map(|c| json!({"id": c.id, "pass": c.pass, "witness": c.witness})).collect::<Vec<_>>(),
            "caveats": self.caveats,
        })
    }
}
