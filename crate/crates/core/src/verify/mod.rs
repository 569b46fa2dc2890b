//! Regression suites over the identities the engine is built to reproduce,
//! and the line-oriented run report.
//!
//! Report format, one check per line after a `#` header:
//!
//! ```text
//! # lashof verify <suite> seed=<s>
//! check <id> <pass|fail|skip> anchor="<source statement>" [ms=<n>]
//! ```
//!
//! `ms=` appears only when timing is requested, so untimed reports are
//! byte-identical across runs with the same seed.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};

mod coherence;
mod suites;

pub use coherence::CoherenceStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Status::Pass),
            "fail" => Some(Status::Fail),
            "skip" => Some(Status::Skip),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub anchor: String,
    pub detail: String,
    pub ms: Option<u128>,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, anchor: &str, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            anchor: anchor.to_string(),
            detail: detail.into(),
            ms: None,
        }
    }

    /// A check from a fallible computation: errors become failures.
    pub fn from_result(id: impl Into<String>, anchor: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((ok, detail)) => Check::new(id, ok, anchor, detail),
            Err(e) => Check::new(id, false, anchor, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides each suite's default dimension bound.
    pub max_dim: Option<u32>,
    /// Number of randomized cases for the coherence suite.
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, max_dim: None, cases: 10_000 }
    }
}

impl VerifyConfig {
    fn bound(&self, default: u32) -> u32 {
        self.max_dim.unwrap_or(default)
    }
}

/// A suite: name, one-line description, anchor, runner.
pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub anchor: &'static str,
    run: fn(&VerifyConfig) -> Vec<Check>,
}

impl Suite {
    pub fn run(&self, cfg: &VerifyConfig, timing: bool) -> Vec<Check> {
        let start = Instant::now();
        let mut checks = (self.run)(cfg);
        if timing {
            let ms = start.elapsed().as_millis();
            for c in &mut checks {
                c.ms = Some(ms);
            }
        }
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        checks
    }
}

pub fn suites() -> &'static [Suite] {
    suites::ALL
}

pub fn suite(name: &str) -> Result<&'static Suite> {
    suites()
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{name}`")))
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render_report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.command);
        for c in &self.checks {
            let _ = write!(s, "check {} {} anchor=\"{}\"", c.id, c.status.as_str(), c.anchor.replace('"', "'"));
            if let Some(ms) = c.ms {
                let _ = write!(s, " ms={ms}");
            }
            s.push('\n');
        }
        s
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for c in &self.checks {
            let _ = write!(s, "{:<4} {}", c.status.as_str().to_uppercase(), c.id);
            if !c.detail.is_empty() {
                let _ = write!(s, "  {}", c.detail);
            }
            if let Some(ms) = c.ms {
                let _ = write!(s, "  ({ms} ms)");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        );
        s
    }

    /// Parses the structured format back; details are not part of it.
    pub fn parse_report(text: &str) -> Result<RunReport> {
        let mut r = RunReport::default();
        for (n, line) in text.lines().enumerate() {
            let err = |m: &str| Error::Syntax { line: n + 1, column: 1, message: m.to_string() };
            if let Some(cmd) = line.strip_prefix("# ") {
                r.command = cmd.to_string();
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let rest = line.strip_prefix("check ").ok_or_else(|| err("expected `check`"))?;
            let (head, tail) = rest.split_once(" anchor=\"").ok_or_else(|| err("missing anchor"))?;
            let (anchor, after) = tail.split_once('"').ok_or_else(|| err("unterminated anchor"))?;
            let mut parts = head.split_whitespace();
            let id = parts.next().ok_or_else(|| err("missing id"))?;
            let status = parts
                .next()
                .and_then(Status::parse)
                .ok_or_else(|| err("bad status"))?;
            let ms = match after.trim().strip_prefix("ms=") {
                Some(v) => Some(v.parse().map_err(|_| err("bad ms"))?),
                None => None,
            };
            r.checks.push(Check {
                id: id.to_string(),
                status,
                anchor: anchor.to_string(),
                detail: String::new(),
                ms,
            });
        }
        Ok(r)
    }
}

/// Runs the named suites (all if empty) into one report.
pub fn run(names: &[&str], cfg: &VerifyConfig, timing: bool) -> Result<RunReport> {
    let selected: Vec<&Suite> = if names.is_empty() {
        suites().iter().collect()
    } else {
        names.iter().map(|n| suite(n)).collect::<Result<_>>()?
    };
    let label = if names.is_empty() { "--all".to_string() } else { names.join(" ") };
    let mut report = RunReport {
        command: format!("lashof verify {label} seed={}", cfg.seed),
        checks: Vec::new(),
    };
    for s in selected {
        report.checks.extend(s.run(cfg, timing));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let r = RunReport {
            command: "lashof verify x seed=0".into(),
            checks: vec![
                Check::new("a/1", true, "some \"quoted\" statement", "d"),
                Check { ms: Some(12), ..Check::new("b", false, "t", "") },
            ],
        };
        let text = r.render_report();
        let back = RunReport::parse_report(&text).unwrap();
        assert_eq!(back.command, r.command);
        assert_eq!(back.checks.len(), 2);
        assert_eq!(back.checks[0].anchor, "some 'quoted' statement");
        assert_eq!(back.checks[1].ms, Some(12));
        assert_eq!(back.render_report(), text);
        assert_eq!(back.failures(), 1);
    }

    #[test]
    fn suite_names_unique_and_anchored() {
        let mut names: Vec<&str> = suites().iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), suites().len());
        assert!(suites().iter().all(|s| !s.anchor.is_empty()));
        assert!(suite("nope").is_err());
    }
}
