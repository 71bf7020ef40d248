//! The ordered verification pipeline.

use std::time::Instant;

use hyperflat_core::hypercomplex::h_solvable_filtration;
use hyperflat_core::obata::{
  curvature, curvature_form, is_representation, maps_into, obata_connection, parallelism_defect, torsion,
};
use hyperflat_core::scalar::PQ;
use hyperflat_core::{
  descent_step, holonomy_generators, is_unipotent_rep, unipotent_log, Connection, FiltrationVerdict,
  HyperStruct, LieAlgebra, Mat, Scalar, Unipotence, WedgeConvention,
};

use crate::format::{parse_algebra, AlgebraFile, ParseError};
use crate::report::{chain, Check, Report, Verdict};

/// Every check, in the order it runs and is reported.
pub const CHECKS: &[&str] = &[
  "parse",
  "jacobi",
  "nilpotency",
  "quaternionic",
  "integrability-I",
  "integrability-J",
  "integrability-K",
  "obata",
  "torsion",
  "parallelism",
  "curvature",
  "representation",
  "unipotence",
  "holonomy",
  "filtration",
  "descent",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
  /// Upper bound on the number of filtration steps.
  pub max_depth: usize,
}

impl Default for Options {
  fn default() -> Self {
    Self { max_depth: 32 }
  }
}

pub fn vector_text(v: &[Scalar]) -> String {
  v.iter().map(|x| PQ(x).to_string()).collect::<Vec<_>>().join(" ")
}

struct Run {
  checks: Vec<Check>,
  blocked: Option<String>,
}

impl Run {
  /// Times `f` unless an earlier failure blocks it.
  fn step<T>(
    &mut self,
    name: &str,
    f: impl FnOnce() -> (Verdict, Vec<(String, String)>, Option<T>),
  ) -> Option<T> {
    if let Some(reason) = &self.blocked {
      self.checks.push(Check {
        name: name.to_string(),
        verdict: Verdict::Skipped(reason.clone()),
        payload: vec![],
        elapsed: Default::default(),
      });
      return None;
    }
    let start = Instant::now();
    let (verdict, payload, value) = f();
    self.checks.push(Check { name: name.to_string(), verdict, payload, elapsed: start.elapsed() });
    value
  }

  fn block(&mut self, reason: &str) {
    if self.blocked.is_none() {
      self.blocked = Some(reason.to_string());
    }
  }

  fn not_applicable(&mut self, name: &str, reason: &str) {
    match &self.blocked {
      Some(r) => self.checks.push(Check {
        name: name.to_string(),
        verdict: Verdict::Skipped(r.clone()),
        payload: vec![],
        elapsed: Default::default(),
      }),
      None => self.checks.push(Check {
        name: name.to_string(),
        verdict: Verdict::NotApplicable(reason.to_string()),
        payload: vec![],
        elapsed: Default::default(),
      }),
    }
  }
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
  (k.to_string(), v.to_string())
}

fn pass_if(ok: bool) -> Verdict {
  if ok {
    Verdict::Pass
  } else {
    Verdict::Fail
  }
}

const CONVENTIONS: [(&str, &str); 2] = [("curvature-form", "determinant"), ("covector-action", "pullback")];

/// Parses `text` and runs the pipeline. A parse failure yields a report whose
/// `parse` check failed and whose other checks are skipped, plus the error.
pub fn run_text(text: &str, fallback_name: &str, options: Options) -> (Report, Option<ParseError>) {
  let start = Instant::now();
  let parsed = parse_algebra(text);
  let parse_time = start.elapsed();
  match parsed {
    Ok(file) => {
      let mut r = run_pipeline(&file, options);
      r.checks[0].elapsed += parse_time;
      (r, None)
    }
    Err(e) => {
      let mut checks = vec![Check {
        name: "parse".into(),
        verdict: Verdict::Fail,
        payload: vec![kv("line", e.line), kv("column", e.column), kv("error", &e.kind)],
        elapsed: parse_time,
      }];
      checks.extend(CHECKS[1..].iter().map(|name| Check {
        name: name.to_string(),
        verdict: Verdict::Skipped("parse-failed".into()),
        payload: vec![],
        elapsed: Default::default(),
      }));
      let r = Report {
        name: fallback_name.to_string(),
        dim: 0,
        checks,
        filtration: None,
        conventions: CONVENTIONS.to_vec(),
      };
      (r, Some(e))
    }
  }
}

/// Runs every check of [`CHECKS`] on a parsed file. Failures become
/// verdicts; checks whose prerequisites failed are skipped with a reason.
pub fn run_pipeline(file: &AlgebraFile, options: Options) -> Report {
  let mut run = Run { checks: Vec::new(), blocked: None };
  let mut filtration_dims = None;

  let (alg, h) = run
    .step("parse", || {
      let payload = vec![kv("brackets", file.brackets.len()), kv("meta-lines", file.meta.len())];
      (Verdict::Pass, payload, Some((file.algebra(), file.hyper())))
    })
    .expect("parse always runs");

  let jacobi = run.step("jacobi", || {
    let jacobi = alg.jacobi_check();
    let mut payload = vec![kv("violations", jacobi.violations.len())];
    if let Some(&(i, j, k)) = jacobi.violations.first() {
      payload.push(kv("first-violation", format!("{} {} {}", i + 1, j + 1, k + 1)));
    }
    (pass_if(jacobi.holds()), payload, Some(jacobi.holds()))
  });
  if jacobi != Some(true) {
    run.block("jacobi-failed");
  }

  let nilpotent = run
    .step("nilpotency", || match alg.lower_central_series() {
      Ok(cs) => {
        let mut payload = vec![kv("central-series", chain(&cs.dims()))];
        if let Some(step) = cs.step {
          payload.push(kv("step", step));
        }
        (pass_if(cs.nilpotent), payload, Some(cs.nilpotent))
      }
      Err(e) => (Verdict::Fail, vec![kv("error", e)], Some(false)),
    })
    .unwrap_or(false);

  let quaternionic = run.step("quaternionic", || {
    let quaternionic = h.check_quaternionic();
    let payload =
      if quaternionic.holds() { vec![] } else { vec![kv("failed", quaternionic.failed.join(", "))] };
    (pass_if(quaternionic.holds()), payload, Some(quaternionic.holds()))
  });
  if quaternionic != Some(true) {
    run.block("not-quaternionic");
  }

  integrability(&mut run, &alg, &h);

  let conn = run.step("obata", || match obata_connection(&alg, &h) {
    Ok(c) => {
      let nonzero = c.operators().iter().filter(|m| !m.is_zero()).count();
      (Verdict::Pass, vec![kv("nonzero-operators", nonzero)], Some(c))
    }
    Err(e) => (Verdict::Fail, vec![kv("error", e)], None),
  });
  if conn.is_none() {
    run.block("obata-failed");
  }
  let conn = conn.unwrap_or_else(|| Connection::zero(alg.dim()));

  run.step("torsion", || match torsion(&alg, &conn) {
    Ok(t) => (pass_if(t.is_torsion_free()), vec![kv("defects", t.defects.len())], Some(())),
    Err(e) => (Verdict::Fail, vec![kv("error", e)], None),
  });

  run.step("parallelism", || {
    let mut payload = Vec::new();
    let mut ok = true;
    for (name, q) in h.operators() {
      let defects = parallelism_defect(&conn, q).map(|d| d.len()).unwrap_or(usize::MAX);
      ok &= defects == 0;
      payload.push(kv(&format!("defects-{name}"), defects));
    }
    (pass_if(ok), payload, Some(()))
  });

  let flat = run.step("curvature", || {
    let (Ok(r), Ok(theta)) =
      (curvature(&alg, &conn), curvature_form(&alg, &conn, WedgeConvention::Determinant))
    else {
      return (Verdict::Fail, vec![kv("error", "dimension mismatch")], None);
    };
    let agree = r == theta;
    let payload = vec![
      kv("flat", r.is_flat()),
      kv("nonzero-components", r.nonzero_components().len()),
      kv("paths-agree", agree),
    ];
    (pass_if(agree), payload, Some(r.is_flat()))
  });

  run.step("representation", || {
    let rep = is_representation(&alg, &conn).unwrap_or(false);
    let agrees = Some(rep) == flat;
    (pass_if(agrees), vec![kv("representation", rep), kv("agrees-with-curvature", agrees)], Some(()))
  });

  let flat = flat.unwrap_or(false);
  if !nilpotent {
    run.block("not-nilpotent");
  }

  if flat {
    run.step("unipotence", || match is_unipotent_rep(&conn) {
      Unipotence::Unipotent(w) => {
        let valid = w.verify(conn.operators());
        (pass_if(valid), vec![kv("flag", chain(&w.dims())), kv("witness-valid", valid)], Some(()))
      }
      Unipotence::NotUnipotent { stage, stuck, operator } => (
        Verdict::Fail,
        vec![kv("stage", stage), kv("stuck-dim", stuck.dim()), kv("operator", operator + 1)],
        None,
      ),
    });
    run.step("holonomy", || holonomy_check(&conn));
  } else {
    run.not_applicable("unipotence", "not-flat");
    run.not_applicable("holonomy", "not-flat");
  }

  let filtration = run.step("filtration", || match h_solvable_filtration(&alg, &h, options.max_depth) {
    Ok(f) => {
      let preserved = f.chain.iter().all(|s| maps_into(&conn, s, s));
      let verdict_text = match f.verdict {
        FiltrationVerdict::HSolvable => "h-solvable",
        FiltrationVerdict::StabilizedNonzero => "stabilized-nonzero",
        FiltrationVerdict::DepthExceeded => "depth-exceeded",
      };
      let mut payload = vec![kv("outcome", verdict_text), kv("chain", chain(&f.dims()))];
      if let Some(d) = f.depth() {
        payload.push(kv("depth", d));
      }
      if let Some(p) = f.first_term_proper() {
        payload.push(kv("first-term-proper", p));
      }
      payload.push(kv("connection-preserves-terms", preserved));
      let solvable = f.verdict == FiltrationVerdict::HSolvable;
      // Without flatness there is no claim to test; the chain is still reported.
      let verdict = match (solvable && preserved, flat) {
        (true, _) => Verdict::Pass,
        (false, true) => Verdict::Fail,
        (false, false) => Verdict::NotApplicable("not-flat".into()),
      };
      (verdict, payload, Some(f))
    }
    Err(e) => (Verdict::Fail, vec![kv("error", e)], None),
  });
  if let Some(f) = &filtration {
    filtration_dims = Some(f.dims());
  }

  match (&filtration, flat) {
    (Some(f), true) => {
      run.step("descent", || {
        let mut payload = Vec::new();
        let mut ok = true;
        let levels: Vec<_> = f.chain.iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
        for (level, s) in levels {
          let p = |k: &str| format!("level.{level}.{k}");
          match descent_step(&alg, &h, s, level) {
            Ok(d) => {
              let matches_chain = f.chain.get(level + 1).is_none_or(|t| *t == d.next);
              ok &= d.passed() && matches_chain && d.sign_convention_robust;
              payload.extend([
                kv(&p("alpha"), vector_text(&d.alpha)),
                kv(&p("parallel-dim"), d.parallel_dim),
                kv(&p("sigma-dim"), d.sigma.dim()),
                kv(&p("sigma-h-invariant"), d.sigma_h_invariant),
                kv(&p("sigma-proper"), d.sigma_proper),
                kv(&p("next-contained"), d.next_contained),
                kv(&p("alpha-closed"), d.alpha_closed),
                kv(&p("sign-robust"), d.sign_convention_robust),
                kv(&p("next-matches-filtration"), matches_chain),
              ]);
            }
            Err(e) => {
              ok = false;
              payload.push(kv(&p("error"), e));
            }
          }
        }
        payload.insert(0, kv("levels", f.chain.iter().filter(|s| !s.is_zero()).count()));
        (pass_if(ok), payload, Some(()))
      });
    }
    (None, true) => {
      run.block("filtration-failed");
      run.not_applicable("descent", "");
    }
    (_, false) => run.not_applicable("descent", "not-flat"),
  }

  debug_assert_eq!(run.checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), CHECKS);
  Report {
    name: file.name.clone(),
    dim: file.dim,
    checks: run.checks,
    filtration: filtration_dims,
    conventions: CONVENTIONS.to_vec(),
  }
}

fn integrability(run: &mut Run, alg: &LieAlgebra, h: &HyperStruct) {
  let start = Instant::now();
  let results = if run.blocked.is_none() { h.integrability(alg).ok() } else { None };
  // The three verdicts come from one pass; its time is split evenly.
  let share = start.elapsed() / 3;
  let mut all = true;
  for (idx, name) in ["integrability-I", "integrability-J", "integrability-K"].into_iter().enumerate() {
    let before = run.checks.len();
    run.step(name, || match results.as_ref().map(|r| &r[idx]) {
      Some(op) => {
        all &= op.integrable();
        let payload =
          vec![kv("one-zero-closed", op.one_zero_closed), kv("nijenhuis-vanishes", op.nijenhuis_vanishes)];
        (pass_if(op.integrable()), payload, Some(()))
      }
      None => {
        all = false;
        (Verdict::Fail, vec![kv("error", "integrability not computable")], None)
      }
    });
    if run.blocked.is_none() {
      run.checks[before].elapsed += share;
    }
  }
  if !all {
    run.block("not-integrable");
  }
}

fn holonomy_check(conn: &Connection) -> (Verdict, Vec<(String, String)>, Option<()>) {
  let gens = match holonomy_generators(conn) {
    Ok(g) => g,
    Err(e) => return (Verdict::Fail, vec![kv("error", e)], None),
  };
  let n = conn.dim();
  let unipotent = gens.iter().all(|m| (m - &Mat::identity(n)).pow(n).is_zero());
  let roundtrip = gens.iter().zip(conn.operators()).all(|(m, op)| unipotent_log(m).as_ref() == Ok(op));
  let trivial = gens.iter().filter(|m| **m == Mat::identity(n)).count();
  let payload = vec![
    kv("generators", gens.len()),
    kv("identity-generators", trivial),
    kv("unipotent", unipotent),
    kv("log-roundtrip", roundtrip),
  ];
  (pass_if(unipotent && roundtrip), payload, Some(()))
}
