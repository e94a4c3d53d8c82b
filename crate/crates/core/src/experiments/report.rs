use std::collections::BTreeMap;

use serde::Serialize;

/// Scalar cell or parameter value.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(f) => Some(*f),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    /// Panics when the row width does not match the header.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch in table {}", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }
}

/// A number together with the precision it was computed at.
#[derive(Clone, Debug, Serialize)]
pub struct Metric {
    pub value: Value,
    pub precision_digits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust_floor: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated { at: String },
    /// Operands below their trust floor; no decision possible.
    Untrusted,
}

impl Verdict {
    /// `Holds` when `ok`, otherwise `Violated` at `at`.
    pub fn from_bool(ok: bool, at: impl Into<String>) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated { at: at.into() }
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }
}

/// Aggregated verdicts of one inequality or property over many instances.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub verdict: Verdict,
    pub holds: usize,
    pub violated: usize,
    pub untrusted: usize,
    pub precision_digits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust_floor: Option<f64>,
}

impl Check {
    /// Violated if any instance is, otherwise holds if any instance was
    /// decidable, otherwise untrusted.
    pub fn aggregate(verdicts: impl IntoIterator<Item = Verdict>, precision_digits: u32, trust_floor: Option<f64>) -> Self {
        let (mut holds, mut violated, mut untrusted) = (0, 0, 0);
        let mut first = None;
        for v in verdicts {
            match v {
                Verdict::Holds => holds += 1,
                Verdict::Untrusted => untrusted += 1,
                Verdict::Violated { at } => {
                    violated += 1;
                    first.get_or_insert(at);
                }
            }
        }
        let verdict = match first {
            Some(at) => Verdict::Violated { at },
            None if holds > 0 => Verdict::Holds,
            None => Verdict::Untrusted,
        };
        Check {
            verdict,
            holds,
            violated,
            untrusted,
            precision_digits,
            trust_floor,
        }
    }

    pub fn single(verdict: Verdict, precision_digits: u32) -> Self {
        Self::aggregate([verdict], precision_digits, None)
    }
}

/// A polyline for semilog plots.
#[derive(Clone, Debug)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub metrics: BTreeMap<String, Metric>,
    pub checks: BTreeMap<String, Check>,
    pub notices: Vec<String>,
    /// False when an iterative method stopped before meeting its tolerance.
    pub converged: bool,
    #[serde(skip)]
    pub tables: Vec<Table>,
    #[serde(skip)]
    pub series: Vec<Series>,
    pub artifacts: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>) -> Self {
        ExperimentReport {
            name: name.into(),
            parameters: BTreeMap::new(),
            metrics: BTreeMap::new(),
            checks: BTreeMap::new(),
            notices: Vec::new(),
            converged: true,
            tables: Vec::new(),
            series: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_owned(), value.into());
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>, precision_digits: u32, trust_floor: Option<f64>) {
        self.metrics.insert(
            key.to_owned(),
            Metric {
                value: value.into(),
                precision_digits,
                trust_floor,
            },
        );
    }

    pub fn check(&mut self, key: &str, check: Check) {
        self.checks.insert(key.to_owned(), check);
    }

    pub fn notice(&mut self, text: impl Into<String>) {
        self.notices.push(text.into());
    }

    pub fn metric_f64(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).and_then(|m| m.value.as_f64())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn has_violation(&self) -> bool {
        self.checks.values().any(|c| c.verdict.is_violated())
    }

    pub fn violations(&self) -> Vec<(&str, &Verdict)> {
        self.checks
            .iter()
            .filter(|(_, c)| c.verdict.is_violated())
            .map(|(k, c)| (k.as_str(), &c.verdict))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation() {
        let c = Check::aggregate([Verdict::Holds, Verdict::Untrusted], 15, None);
        assert_eq!(c.verdict, Verdict::Holds);
        let c = Check::aggregate([Verdict::Untrusted], 15, None);
        assert_eq!(c.verdict, Verdict::Untrusted);
        let c = Check::aggregate(
            [Verdict::Holds, Verdict::from_bool(false, "i=3"), Verdict::from_bool(false, "i=4")],
            15,
            None,
        );
        assert_eq!(c.verdict, Verdict::Violated { at: "i=3".into() });
        assert_eq!((c.holds, c.violated), (1, 2));
    }

    #[test]
    fn table_columns() {
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec![1usize.into(), 2.5.into()]);
        assert_eq!(t.column("b").unwrap()[0].as_f64(), Some(2.5));
        assert!(t.column("c").is_none());
    }

    #[test]
    #[should_panic]
    fn ragged_row() {
        Table::new("t", &["a"]).push(vec![1usize.into(), 2usize.into()]);
    }
}
