use grfrob::frobenius::{Certificate, Verdict};
use serde_json::{json, Value};

/// Result of one invocation: exit code plus the text and JSON renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub exit_code: u8,
    pub text: String,
    pub json: Value,
    /// Diagnostics for standard error.
    pub error: Option<String>,
    json_mode: bool,
}

impl Report {
    pub(crate) fn new(exit_code: u8, text: String, json: Value, json_mode: bool) -> Self {
        Report {
            exit_code,
            text,
            json,
            error: None,
            json_mode,
        }
    }

    pub(crate) fn text_only(exit_code: u8, text: String) -> Self {
        Report {
            exit_code,
            text,
            json: Value::Null,
            error: None,
            json_mode: false,
        }
    }

    pub(crate) fn error(exit_code: u8, command: &str, message: &str, json_mode: bool) -> Self {
        let json = json!({ "command": command, "error": { "exit_code": exit_code, "message": message } });
        Report {
            exit_code,
            text: String::new(),
            json,
            error: Some(message.trim_end().to_string()),
            json_mode,
        }
    }

    /// What goes to standard output.
    pub fn stdout(&self) -> String {
        if self.json_mode {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub(crate) fn certificate_json<E: grfrob::Scalar>(c: &Certificate<E>) -> Value {
    let p = &c.payload;
    let rows: Vec<Vec<String>> = (0..p.rows())
        .map(|r| p.row(r).iter().map(ToString::to_string).collect())
        .collect();
    json!({ "kind": c.kind.to_string(), "sigma": c.sigma, "payload": rows })
}

pub(crate) fn verdict_json<E: grfrob::Scalar>(v: &Verdict<E>) -> Value {
    let mut m = json!({ "sigma": v.sigma, "outcome": v.outcome.to_string(), "method": v.method.to_string() });
    if let Some(b) = v.error_bound() {
        m["error_bound"] = json!(b.to_string());
    }
    if let Some(c) = &v.certificate {
        m["certificate"] = certificate_json(c);
    }
    if let Some(r) = &v.refutation {
        m["refutation"] = json!(r.to_string());
    }
    m
}

pub(crate) fn verdict_line<E: std::fmt::Display>(v: &Verdict<E>) -> String {
    let mut s = format!("sigma {}: {} (method {})\n", v.sigma, v.outcome, v.method);
    if let Some(r) = &v.refutation {
        s += &format!("reason: {r}\n");
    }
    s
}
