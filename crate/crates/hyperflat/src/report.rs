//! Check records and their two renderings.
//!
//! The machine format is one `key = value` per line. Keys are dotted paths:
//!
//! ```text
//! report.name = quaternionic-heisenberg-r1
//! report.dim = 8
//! report.overall = pass
//! convention.curvature-form = determinant
//! convention.covector-action = pullback
//! check.jacobi.verdict = pass
//! check.jacobi.violations = 0
//! check.unipotence.verdict = not-applicable
//! check.unipotence.reason = not-flat
//! filtration.chain = 8 > 4 > 0
//! ```
//!
//! Checks appear in pipeline order, payload keys in insertion order.
//! Rationals are always written `p/q` with `q > 0`. Timings are left out so
//! that identical input gives identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
  Pass,
  Fail,
  /// A prerequisite check failed.
  Skipped(String),
  /// The hypotheses of the check do not hold for this input.
  NotApplicable(String),
}

impl Verdict {
  pub fn label(&self) -> &'static str {
    match self {
      Verdict::Pass => "pass",
      Verdict::Fail => "fail",
      Verdict::Skipped(_) => "skipped",
      Verdict::NotApplicable(_) => "not-applicable",
    }
  }

  pub fn reason(&self) -> Option<&str> {
    match self {
      Verdict::Skipped(r) | Verdict::NotApplicable(r) => Some(r),
      _ => None,
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
  pub name: String,
  pub verdict: Verdict,
  pub payload: Vec<(String, String)>,
  pub elapsed: Duration,
}

impl Check {
  pub fn get(&self, key: &str) -> Option<&str> {
    self.payload.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
  pub name: String,
  pub dim: usize,
  pub checks: Vec<Check>,
  /// Dimensions of `g = g_0^H ⊇ g_1^H ⊇ …` when the filtration was computed.
  pub filtration: Option<Vec<usize>>,
  pub conventions: Vec<(&'static str, &'static str)>,
}

impl Report {
  pub fn check(&self, name: &str) -> Option<&Check> {
    self.checks.iter().find(|c| c.name == name)
  }

  /// True when no check failed. Skips only follow failures, so they need no separate handling.
  pub fn passed(&self) -> bool {
    self.checks.iter().all(|c| c.verdict != Verdict::Fail)
  }

  /// The same report restricted to the named checks, in report order.
  pub fn select(&self, names: &[&str]) -> Report {
    Report {
      checks: self.checks.iter().filter(|c| names.contains(&c.name.as_str())).cloned().collect(),
      ..self.clone()
    }
  }

  pub fn chain_text(&self) -> Option<String> {
    self.filtration.as_ref().map(|d| chain(d))
  }
}

/// `[8, 4, 0]` as `8 > 4 > 0`.
pub fn chain(dims: &[usize]) -> String {
  dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
  Human,
  Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown report format `{0}` (expected `human` or `machine`)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
  type Err = UnknownFormat;

  fn from_str(s: &str) -> Result<Self, Self::Err> {
    match s {
      "human" => Ok(Format::Human),
      "machine" => Ok(Format::Machine),
      other => Err(UnknownFormat(other.to_string())),
    }
  }
}

pub fn emit_report(r: &Report, format: Format) -> String {
  match format {
    Format::Human => human(r),
    Format::Machine => machine(r),
  }
}

fn overall(r: &Report) -> &'static str {
  if r.passed() {
    "pass"
  } else {
    "fail"
  }
}

fn machine(r: &Report) -> String {
  let mut out = String::new();
  let mut kv = |k: &str, v: &str| writeln!(out, "{k} = {v}").unwrap();
  kv("report.name", &r.name);
  kv("report.dim", &r.dim.to_string());
  kv("report.overall", overall(r));
  for (k, v) in &r.conventions {
    kv(&format!("convention.{k}"), v);
  }
  for c in &r.checks {
    kv(&format!("check.{}.verdict", c.name), c.verdict.label());
    if let Some(reason) = c.verdict.reason() {
      kv(&format!("check.{}.reason", c.name), reason);
    }
    for (k, v) in &c.payload {
      kv(&format!("check.{}.{k}", c.name), v);
    }
  }
  if let Some(chain) = r.chain_text() {
    kv("filtration.chain", &chain);
  }
  out
}

fn human_duration(d: Duration) -> String {
  let us = d.as_micros();
  if us < 1000 {
    format!("{us}µs")
  } else if us < 1_000_000 {
    format!("{:.1}ms", us as f64 / 1e3)
  } else {
    format!("{:.2}s", us as f64 / 1e6)
  }
}

fn human(r: &Report) -> String {
  let mut out = String::new();
  writeln!(out, "{} (dim {})", r.name, r.dim).unwrap();
  let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
  writeln!(out, "  {:<width$}  {:<14}  {:>8}  detail", "check", "verdict", "time").unwrap();
  for c in &r.checks {
    let mut detail: Vec<String> = c.verdict.reason().map(|x| vec![format!("({x})")]).unwrap_or_default();
    detail
      .extend(c.payload.iter().filter(|(k, _)| !k.starts_with("level.")).map(|(k, v)| format!("{k}={v}")));
    writeln!(
      out,
      "  {:<width$}  {:<14}  {:>8}  {}",
      c.name,
      c.verdict.label(),
      human_duration(c.elapsed),
      detail.join(" ")
    )
    .unwrap();
  }
  if let Some(chain) = r.chain_text() {
    writeln!(out, "  filtration: {chain}").unwrap();
  }
  let conv: Vec<String> = r.conventions.iter().map(|(k, v)| format!("{k}={v}")).collect();
  writeln!(out, "  conventions: {}", conv.join(" ")).unwrap();
  writeln!(out, "  overall: {}", overall(r).to_uppercase()).unwrap();
  out
}
