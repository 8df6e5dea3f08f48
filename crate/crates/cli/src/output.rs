use serde_json::Value;

pub enum Format {
    Json,
    Csv,
}

pub fn generated_by() -> String {
    format!("selberg-cli {}", env!("CARGO_PKG_VERSION"))
}

/// Pretty JSON with a trailing newline. Objects get a `generated_by` key;
/// arrays are wrapped as `{"generated_by": …, "rows": […]}`.
pub fn emit_json(v: Value) -> String {
    let v = match v {
        Value::Object(mut m) => {
            m.insert("generated_by".into(), Value::String(generated_by()));
            Value::Object(m)
        }
        other => serde_json::json!({ "generated_by": generated_by(), "rows": other }),
    };
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn emit_csv<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}
