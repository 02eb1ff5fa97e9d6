use sha2::{Digest, Sha256};

use crate::report::{Check, Role, Verdict};

pub const ARTIFACT: &str = "skewheyting";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconsistent,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconsistent => "INCONSISTENT",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconsistent => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Machine,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "machine" => Ok(ReportFormat::Machine),
            other => Err(format!("unknown format `{other}`, expected text or machine")),
        }
    }
}

/// Everything a command reports. Witness elements are named through `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// `sha256:<hex>` of the input bytes, when there is an input file.
    pub input: Option<String>,
    pub names: Vec<String>,
    pub checks: Vec<Check>,
    pub payload: Vec<String>,
    pub error: Option<String>,
    pub outcome: Outcome,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            input: None,
            names: Vec::new(),
            checks: Vec::new(),
            payload: Vec::new(),
            error: None,
            outcome: Outcome::Pass,
        }
    }

    /// PASS unless a requirement fails.
    pub fn settle(&mut self) {
        let failed = self
            .checks
            .iter()
            .any(|c| c.role == Role::Requirement && c.is_fails());
        if failed && self.outcome == Outcome::Pass {
            self.outcome = Outcome::Fail;
        }
    }

    fn name(&self, e: usize) -> String {
        self.names.get(e).cloned().unwrap_or_else(|| format!("#{e}"))
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.render_text(),
            ReportFormat::Machine => self.render_machine(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("artifact: {ARTIFACT} {VERSION}\n"));
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input: {}\n", self.input.as_deref().unwrap_or("none")));
        for c in &self.checks {
            let info = if c.role == Role::Classification { " (info)" } else { "" };
            let line = match &c.verdict {
                Verdict::Holds => format!("check {}: holds{info} [tuples={}]", c.name, c.tuples),
                Verdict::Fails => {
                    let w = c
                        .witness
                        .as_ref()
                        .map(|w| format!(" witness: {}", w.render(|e| self.name(e))))
                        .unwrap_or_default();
                    format!("check {}: fails{info} [tuples={}]{w}", c.name, c.tuples)
                }
                Verdict::Skipped(why) => format!("check {}: skipped{info} ({why})", c.name),
            };
            out.push_str(line.trim_end());
            out.push('\n');
        }
        for line in &self.payload {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(&format!("VERDICT: {}\n", self.outcome.label()));
        out
    }

    fn render_machine(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("artifact={ARTIFACT}\nversion={VERSION}\n"));
        out.push_str(&format!("command={:?}\n", self.command));
        out.push_str(&format!("input={}\n", self.input.as_deref().unwrap_or("none")));
        for c in &self.checks {
            let role = match c.role {
                Role::Requirement => "requirement",
                Role::Classification => "classification",
            };
            let mut line = format!("check={} role={role}", c.name);
            match &c.verdict {
                Verdict::Holds => line.push_str(&format!(" verdict=holds tuples={}", c.tuples)),
                Verdict::Fails => {
                    line.push_str(&format!(" verdict=fails tuples={}", c.tuples));
                    if let Some(w) = &c.witness {
                        let tuple: Vec<String> = w
                            .labels
                            .iter()
                            .zip(&w.tuple)
                            .map(|(l, &e)| format!("{l}:{}", self.name(e)))
                            .collect();
                        line.push_str(&format!(" witness={}", tuple.join(",")));
                        if let Some((l, r)) = w.sides {
                            line.push_str(&format!(" lhs={} rhs={}", self.name(l), self.name(r)));
                        }
                        if let Some(n) = &w.note {
                            line.push_str(&format!(" note={n:?}"));
                        }
                    }
                }
                Verdict::Skipped(why) => line.push_str(&format!(" verdict=skipped reason={why:?}")),
            }
            out.push_str(&line);
            out.push('\n');
        }
        for p in &self.payload {
            out.push_str(&format!("payload={p:?}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error={e:?}\n"));
        }
        out.push_str(&format!("verdict={}\n", self.outcome.label()));
        out
    }
}
