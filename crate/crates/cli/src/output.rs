//! Rendering a command result as JSON, CSV or plain text.

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A table: header plus string rows.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub trait Render {
    fn command(&self) -> &'static str;
    /// Payload fields; `schema_version` and `command` are added around them.
    fn json_fields(&self) -> Map<String, Value>;
    fn table(&self) -> Table;
    fn plain(&self) -> String;
}

pub fn render(result: &dyn Render, format: Format) -> String {
    match format {
        Format::Json => {
            let mut object = Map::new();
            object.insert("schema_version".into(), SCHEMA_VERSION.into());
            object.insert("command".into(), result.command().into());
            object.extend(result.json_fields());
            let mut text = serde_json::to_string_pretty(&Value::Object(object))
                .expect("JSON values always serialize");
            text.push('\n');
            text
        }
        Format::Csv => {
            let table = result.table();
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(&table.header)
                .expect("writing to memory");
            for row in &table.rows {
                writer.write_record(row).expect("writing to memory");
            }
            String::from_utf8(writer.into_inner().expect("flush to memory"))
                .expect("CSV of UTF-8 fields is UTF-8")
        }
        Format::Plain => {
            let mut text = result.plain();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text
        }
    }
}

/// `[1, 5]`
pub fn bracketed<T: ToString>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", inner.join(", "))
}

/// `1;5` for list-valued CSV cells.
pub fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

/// The members of a JSON object literal.
pub fn fields(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        other => panic!("expected a JSON object, got {other}"),
    }
}
