//! Number formatting shared by the JSON and CSV writers.
//!
//! Values carry 17 significant digits (enough to round-trip an `f64`), error
//! estimates 3. Formatting never depends on the locale.

use serde_json::{Map, Number, Value};

/// 17 significant digits in scientific notation.
pub fn full(x: f64) -> String {
    // no negative zero in output
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// 3 significant digits in scientific notation.
pub fn short(x: f64) -> String {
    format!("{x:.2e}")
}

fn number(text: String) -> Value {
    // arbitrary_precision keeps the text exactly as written
    match text.parse::<Number>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::Null,
    }
}

pub fn full_num(x: f64) -> Value {
    number(full(x))
}

pub fn short_num(x: f64) -> Value {
    number(short(x))
}

/// Ordered JSON object builder.
#[derive(Default)]
pub struct Object(Map<String, Value>);

impl Object {
    pub fn new() -> Self {
        Object(Map::new())
    }

    pub fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn value(self) -> Value {
        Value::Object(self.0)
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields.join(",")
}
