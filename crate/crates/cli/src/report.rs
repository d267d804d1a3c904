use alexdimer::dimer::Caps;
use alexdimer::{Error, LaurentPoly};
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Input problems and unmet hypotheses exit with 2, exhausted caps with 3,
/// and internal inconsistencies count as verification failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap(_) => EXIT_CAP,
        Error::Internal(_) => EXIT_FAILED,
        Error::Parse(_)
        | Error::Validation(_)
        | Error::Degenerate(_)
        | Error::Ambiguity(_)
        | Error::Precondition(_)
        | Error::LengthZero(_)
        | Error::Length { .. }
        | Error::Hypothesis(_) => EXIT_INPUT,
    }
}

/// One check. Checks whose hypotheses fail on the input are still computed
/// and reported, with `asserted` false, and never fail the run.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    /// What the check establishes, in words.
    pub statement: &'static str,
    pub asserted: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Verdict {
    pub fn new(check: impl Into<String>, statement: &'static str, passed: bool) -> Self {
        Verdict { check: check.into(), statement, asserted: true, passed, detail: Value::Null }
    }

    pub fn observed(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn asserted_if(mut self, hypothesis: bool) -> Self {
        self.asserted = hypothesis;
        self
    }

    pub fn with(mut self, detail: impl Serialize) -> Self {
        self.detail = serde_json::to_value(detail).expect("report details serialize");
        self
    }

    pub fn failed(&self) -> bool {
        self.asserted && !self.passed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyOut {
    pub terms: LaurentPoly,
    pub text: String,
}

impl From<&LaurentPoly> for PolyOut {
    fn from(p: &LaurentPoly) -> Self {
        PolyOut { terms: p.clone(), text: p.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CapStatus {
    pub max_matchings: u64,
    pub max_crossings: usize,
    pub exceeded: Option<String>,
}

impl CapStatus {
    pub fn new(caps: &Caps) -> Self {
        CapStatus { max_matchings: caps.max_matchings, max_crossings: caps.max_crossings, exceeded: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub diagram: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolyOut>,
    pub verdicts: Vec<Verdict>,
    pub caps: CapStatus,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    pub fn new(command: &'static str, diagram: &str, caps: &Caps) -> Self {
        Report {
            command,
            diagram: diagram.to_string(),
            polynomial: None,
            verdicts: Vec::new(),
            caps: CapStatus::new(caps),
            data: Value::Null,
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| v.failed()).count()
    }

    pub fn exit(&self) -> u8 {
        if self.failures() > 0 {
            EXIT_FAILED
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable summary: one line per verdict.
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.diagram);
        if let Some(p) = &self.polynomial {
            out += &format!("  Delta = {}\n", p.text);
        }
        for v in &self.verdicts {
            let mark = match (v.asserted, v.passed) {
                (true, true) => "ok  ",
                (true, false) => "FAIL",
                (false, true) => "obs+",
                (false, false) => "obs-",
            };
            out += &format!("  [{mark}] {}: {}\n", v.check, v.statement);
        }
        out
    }
}
