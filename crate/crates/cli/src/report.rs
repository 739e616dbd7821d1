//! Reports as `key=value` lines or one JSON object, keys in insertion order.

use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            // Repeated keys (one per violation, say) collapse into arrays.
            let mut map = Map::new();
            for (k, v) in &self.entries {
                match map.get_mut(k) {
                    Some(Value::Array(items)) if self.repeats(k) => items.push(v.clone()),
                    _ if self.repeats(k) => {
                        map.insert(k.clone(), Value::Array(vec![v.clone()]));
                    }
                    _ => {
                        map.insert(k.clone(), v.clone());
                    }
                }
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
            out.push('\n');
            return out;
        }
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(&plain(v));
            out.push('\n');
        }
        out
    }

    fn repeats(&self, key: &str) -> bool {
        self.entries.iter().filter(|(k, _)| k == key).count() > 1
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// 1-indexed vertex list, matching the file format.
pub fn vertices(set: &[usize]) -> Value {
    Value::Array(set.iter().map(|&v| Value::from(v + 1)).collect())
}

/// 1-indexed `u-v` edge list.
pub fn edges(list: &[(usize, usize)]) -> Value {
    Value::Array(
        list.iter()
            .map(|&(u, v)| Value::from(format!("{}-{}", u + 1, v + 1)))
            .collect(),
    )
}
