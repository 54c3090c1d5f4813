use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use shapefib::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 2,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v.decided() {
            Some(b) => Status::from_bool(b),
            None => Status::Undecided,
        }
    }
}

/// What a command produced. `lines` is the human rendering of `result`.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
    pub lines: Vec<String>,
    /// Rendering written to `--dot`, when the command has one.
    pub dot: Option<String>,
}

impl Report {
    pub fn new(command: &str, status: impl Into<Status>, result: Value, lines: Vec<String>) -> Self {
        Report { command: command.to_string(), status: status.into(), result, lines, dot: None }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render_text(&self, elapsed: Option<Duration>) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", status_word(self.status)));
        if let Some(t) = elapsed {
            out.push_str(&format!("time: {:.3}s\n", t.as_secs_f64()));
        }
        out
    }

    pub fn render_json(&self, elapsed: Option<Duration>) -> String {
        let mut v = serde_json::json!({
            "command": self.command,
            "status": self.status,
            "result": self.result,
        });
        if let Some(t) = elapsed {
            v["seconds"] = serde_json::json!(t.as_secs_f64());
        }
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Undecided => "undecided",
    }
}
