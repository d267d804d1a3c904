//! Directory runs. Files are processed in parallel but reported in file-name
//! order, and nothing time-dependent is recorded, so the aggregate is
//! byte-identical across runs and worker counts.

use std::path::Path;

use alexdimer::murasugi::{certify_trapezoid, remainder_observation, split, SplitContext};
use alexdimer::{Error, LinkDiagram, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{exit_code, PolyOut, Report, EXIT_CAP, EXIT_FAILED, EXIT_OK};
use crate::suites::{verify, Env, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
    ResourceCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertSummary {
    pub verdict: bool,
    pub nodes: usize,
    pub leaves: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemainderEntry {
    pub circle: usize,
    pub length: usize,
    pub centered: bool,
    pub trapezoidal: bool,
    pub polynomial: PolyOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct FileResult {
    pub file: String,
    pub status: Status,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertSummary>,
    /// Why no certificate was attempted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_skipped: Option<String>,
    pub remainders: Vec<RemainderEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<Report>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RemainderCounts {
    pub observed: usize,
    pub centered: usize,
    pub trapezoidal: usize,
    pub both: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub files: usize,
    pub passed: usize,
    pub failed: usize,
    pub input_errors: usize,
    pub resource_caps: usize,
    pub remainder: RemainderCounts,
    pub results: Vec<FileResult>,
}

impl Aggregate {
    fn from_results(results: Vec<FileResult>) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let mut remainder = RemainderCounts::default();
        for e in results.iter().flat_map(|r| &r.remainders) {
            remainder.observed += 1;
            remainder.centered += usize::from(e.centered);
            remainder.trapezoidal += usize::from(e.trapezoidal);
            remainder.both += usize::from(e.centered && e.trapezoidal);
        }
        Aggregate {
            files: results.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            input_errors: count(Status::InputError),
            resource_caps: count(Status::ResourceCap),
            remainder,
            results,
        }
    }

    pub fn exit(&self) -> u8 {
        if self.failed + self.input_errors > 0 {
            EXIT_FAILED
        } else if self.resource_caps > 0 {
            EXIT_CAP
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("aggregate serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::InputError => "input-error",
                Status::ResourceCap => "resource-cap",
            };
            let cert = match &r.certificate {
                Some(c) => format!(" certificate={} ({} nodes)", c.verdict, c.nodes),
                None => String::new(),
            };
            let err = r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
            out += &format!("{:<12} {}{cert}{err}\n", status, r.file);
        }
        out += &format!(
            "{} files: {} passed, {} failed, {} input errors, {} resource caps; remainders centered+trapezoidal {}/{}\n",
            self.files,
            self.passed,
            self.failed,
            self.input_errors,
            self.resource_caps,
            self.remainder.both,
            self.remainder.observed
        );
        out
    }
}

fn errored(file: String, e: &Error) -> FileResult {
    let status = match exit_code(e) {
        EXIT_CAP => Status::ResourceCap,
        EXIT_FAILED => Status::Fail,
        _ => Status::InputError,
    };
    FileResult {
        file,
        status,
        failures: usize::from(status == Status::Fail),
        error: Some(e.to_string()),
        certificate: None,
        certificate_skipped: None,
        remainders: Vec::new(),
        verify: None,
    }
}

fn remainders(d: &LinkDiagram, env: &Env) -> Result<Vec<RemainderEntry>> {
    let mut out = Vec::new();
    if !d.is_alternating() {
        return Ok(out);
    }
    for c in d.t2_circles() {
        if d.t2_length(c)? < 2 {
            continue;
        }
        let ctx = SplitContext::new(d, split(d, Some(c.id))?, env.rule, env.caps)?;
        let obs = remainder_observation(&ctx)?;
        out.push(RemainderEntry {
            circle: c.id,
            length: ctx.split.length,
            centered: obs.centered,
            trapezoidal: obs.trapezoidal,
            polynomial: PolyOut::from(&obs.polynomial),
        });
    }
    Ok(out)
}

fn process(path: &Path, env: &Env) -> FileResult {
    let file = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let d = match crate::read(path) {
        Ok(d) => d,
        Err(e) => return errored(file, &e),
    };
    let report = match verify(&d, Suite::All, env) {
        Ok(r) => r,
        Err(e) => return errored(file, &e),
    };
    let (certificate, certificate_skipped) = match certify_trapezoid(&d, &env.rule, &env.caps) {
        Ok(c) => (Some(CertSummary { verdict: c.verdict, nodes: c.nodes, leaves: c.leaves }), None),
        Err(Error::Hypothesis(why)) => (None, Some(why)),
        Err(e) => return errored(file, &e),
    };
    let remainders = match remainders(&d, env) {
        Ok(r) => r,
        Err(e) => return errored(file, &e),
    };
    let failures = report.failures() + usize::from(certificate.as_ref().is_some_and(|c| !c.verdict));
    FileResult {
        file,
        status: if failures == 0 { Status::Pass } else { Status::Fail },
        failures,
        error: None,
        certificate,
        certificate_skipped,
        remainders,
        verify: Some(report),
    }
}

pub fn run(dir: &Path, jobs: Option<usize>, env: &Env) -> Result<Aggregate> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Precondition(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build().map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results = pool.install(|| paths.par_iter().map(|p| process(p, env)).collect());
    Ok(Aggregate::from_results(results))
}
