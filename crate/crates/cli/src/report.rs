//! Output envelope, exit codes and the human-readable summary table.

use serde_json::{json, Value};

pub mod exit {
    pub const OK: i32 = 0;
    /// A requested check did not hold.
    pub const VERIFICATION: i32 = 2;
    /// Element, node or class budget exhausted.
    pub const RESOURCE: i32 = 3;
    /// Bad arguments or parameters outside what a command supports.
    pub const USAGE: i32 = 4;
}

pub const SCHEMA: u32 = 1;

pub fn success(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "result": result })
}

pub fn failure(kind: &str, detail: &str) -> Value {
    json!({ "schema": SCHEMA, "error": kind, "detail": detail })
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always render");
    s.push('\n');
    s
}

pub struct Row {
    pub name: String,
    pub command: String,
    pub code: i32,
}

fn status(code: i32) -> &'static str {
    match code {
        exit::OK => "PASS",
        exit::VERIFICATION => "FAIL",
        exit::RESOURCE => "RESOURCE",
        _ => "ERROR",
    }
}

pub fn table(rows: &[Row]) -> String {
    let name_w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max(4);
    let cmd_w = rows.iter().map(|r| r.command.len()).max().unwrap_or(0).max(7);
    let mut s = format!("{:<name_w$}  {:<cmd_w$}  {:>4}  STATUS\n", "NAME", "COMMAND", "EXIT");
    for r in rows {
        s.push_str(&format!("{:<name_w$}  {:<cmd_w$}  {:>4}  {}\n", r.name, r.command, r.code, status(r.code)));
    }
    let passed = rows.iter().filter(|r| r.code == exit::OK).count();
    s.push_str(&format!("{passed}/{} passed\n", rows.len()));
    s
}
