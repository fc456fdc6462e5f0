//! Sectioned reports with exact and numeric entries.

use std::fmt::{self, Write as _};

use lcwlab_core::ratmath::{Matrix, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Exact(Rational),
    Numeric {
        value: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        residual: Option<f64>,
    },
    Text(String),
    Bool(bool),
    Integer(i64),
    ExactVector(Vec<Rational>),
    ExactMatrix(Vec<Vec<Rational>>),
    NumericVector(Vec<f64>),
}

impl Value {
    pub fn matrix(m: &Matrix) -> Self {
        Value::ExactMatrix(m.to_rows())
    }

    pub fn numeric(value: f64) -> Self {
        Value::Numeric {
            value,
            residual: None,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }
}

/// Twelve significant digits.
fn float(x: f64) -> String {
    format!("{x:.11e}")
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Numeric {
                value,
                residual: None,
            } => write!(f, "~{}", float(*value)),
            Value::Numeric {
                value,
                residual: Some(res),
            } => {
                write!(f, "~{} (residual {})", float(*value), float(*res))
            }
            Value::Text(s) => f.write_str(s),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Integer(n) => write!(f, "{n}"),
            Value::ExactVector(v) => write!(f, "({})", join(v, |r| r.to_string())),
            Value::ExactMatrix(rows) => {
                write!(
                    f,
                    "[{}]",
                    join(rows, |row| format!("[{}]", join(row, |r| r.to_string())))
                )
            }
            Value::NumericVector(v) => write!(f, "~({})", join(v, |x| float(*x))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) {
        self.entries.push(Entry {
            key: key.into(),
            value,
        });
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            sections: Vec::new(),
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&Value> {
        self.section(section)?.get(key)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports hold finite values");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.title);
        for section in &self.sections {
            let _ = writeln!(out, "\n[{}]", section.name);
            for e in &section.entries {
                let _ = writeln!(out, "{} = {}", e.key, e.value);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcwlab_core::ratmath::q;
    use proptest::prelude::*;

    #[test]
    fn text_rendering() {
        assert_eq!(Value::Exact(q(-11, 16)).to_string(), "-11/16");
        assert_eq!(Value::numeric(1.0 / 3.0).to_string(), "~3.33333333333e-1");
        assert_eq!(
            Value::ExactVector(vec![q(1, 2), q(0, 1)]).to_string(),
            "(1/2, 0)"
        );
    }

    fn value() -> impl Strategy<Value = Value> {
        let rat = (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d));
        prop_oneof![
            rat.clone().prop_map(Value::Exact),
            (-1e6f64..1e6, proptest::option::of(0f64..1.0))
                .prop_map(|(value, residual)| Value::Numeric { value, residual }),
            "[a-z ]{0,12}".prop_map(Value::Text),
            any::<bool>().prop_map(Value::Bool),
            any::<i64>().prop_map(Value::Integer),
            proptest::collection::vec(rat.clone(), 0..4).prop_map(Value::ExactVector),
            proptest::collection::vec(proptest::collection::vec(rat, 2), 0..3)
                .prop_map(Value::ExactMatrix),
            proptest::collection::vec(-1e3f64..1e3, 0..4).prop_map(Value::NumericVector),
        ]
    }

    proptest! {
        #[test]
        fn json_round_trip(entries in proptest::collection::vec(("[a-z]{1,6}", value()), 0..8)) {
            let mut section = Section::new("s");
            for (k, v) in entries {
                section.push(k, v);
            }
            let report = Report { title: "t".into(), sections: vec![section] };
            prop_assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
        }
    }
}
