use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperflat::catalog::{self, ENTRIES};
use hyperflat::{emit_report, run_text, Format, Options, Report};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "hyperflat", version, about = "Obata flatness, holonomy and H-solvability checks")]
struct Cli {
  /// Emit the stable key-value format instead of a table.
  #[arg(long, global = true)]
  machine: bool,

  /// Report format: `human` or `machine`.
  #[arg(long, global = true, value_name = "FORMAT")]
  format: Option<String>,

  /// Upper bound on the number of filtration steps.
  #[arg(long, global = true, default_value_t = Options::default().max_depth)]
  max_depth: usize,

  #[command(subcommand)]
  command: Command,
}

#[derive(Subcommand)]
enum Command {
  /// Run every check.
  Check { input: String },
  /// Filtration and descent, with their prerequisites.
  Filtration { input: String },
  /// Unipotence and holonomy generators, with their prerequisites.
  Holonomy { input: String },
  /// Torsion, parallelism, curvature and the representation check.
  Curvature { input: String },
  /// List bundled algebras, or print one as an `.alg` file.
  Catalog { name: Option<String> },
}

const PREREQS: &[&str] =
  &["parse", "jacobi", "nilpotency", "quaternionic", "integrability-I", "integrability-J", "integrability-K"];

fn selection(command: &Command) -> Option<Vec<&'static str>> {
  let extra: &[&str] = match command {
    Command::Check { .. } | Command::Catalog { .. } => return None,
    Command::Filtration { .. } => &["filtration", "descent"],
    Command::Holonomy { .. } => &["obata", "curvature", "unipotence", "holonomy"],
    Command::Curvature { .. } => &["obata", "torsion", "parallelism", "curvature", "representation"],
  };
  Some(PREREQS.iter().chain(extra).copied().collect())
}

enum Source {
  File(PathBuf),
  Bundled(&'static catalog::Entry),
}

fn sources(input: &str) -> Result<Vec<Source>, String> {
  if let Some(name) = input.strip_prefix("catalog:") {
    return catalog::find(name)
      .map(|e| vec![Source::Bundled(e)])
      .ok_or_else(|| format!("no bundled algebra `{name}`"));
  }
  let path = Path::new(input);
  if path.is_dir() {
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
      .map_err(|e| format!("{input}: {e}"))?
      .filter_map(|entry| entry.ok().map(|e| e.path()))
      .filter(|p| p.extension().is_some_and(|x| x == "alg"))
      .collect();
    files.sort();
    if files.is_empty() {
      return Err(format!("{input}: no .alg files"));
    }
    Ok(files.into_iter().map(Source::File).collect())
  } else {
    Ok(vec![Source::File(path.to_path_buf())])
  }
}

/// The report, or an input error message.
fn run_one(source: &Source, options: Options) -> Result<Report, String> {
  let (text, label) = match source {
    Source::File(p) => {
      (std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?, p.display().to_string())
    }
    Source::Bundled(e) => (e.text.to_string(), format!("catalog:{}", e.name)),
  };
  match run_text(&text, &label, options) {
    (report, None) => Ok(report),
    (_, Some(e)) => Err(format!("{label}: {e}")),
  }
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  let format = match (cli.machine, cli.format.as_deref()) {
    (true, _) => Format::Machine,
    (false, None) => Format::Human,
    (false, Some(f)) => match f.parse() {
      Ok(f) => f,
      Err(e) => {
        eprintln!("error: {e}");
        return ExitCode::from(2);
      }
    },
  };

  let input = match &cli.command {
    Command::Catalog { name: None } => {
      for e in ENTRIES {
        let file = e.parse();
        println!("{:<28} dim {:>2}  {}", e.name, file.dim, if e.expect_flat { "flat" } else { "non-flat" });
      }
      return ExitCode::SUCCESS;
    }
    Command::Catalog { name: Some(name) } => match catalog::find(name) {
      Some(e) => {
        print!("{}", e.text);
        return ExitCode::SUCCESS;
      }
      None => {
        eprintln!("error: no bundled algebra `{name}`");
        return ExitCode::from(2);
      }
    },
    Command::Check { input }
    | Command::Filtration { input }
    | Command::Holonomy { input }
    | Command::Curvature { input } => input,
  };

  let sources = match sources(input) {
    Ok(s) => s,
    Err(e) => {
      eprintln!("error: {e}");
      return ExitCode::from(2);
    }
  };
  let options = Options { max_depth: cli.max_depth };
  let results: Vec<Result<Report, String>> = sources.par_iter().map(|s| run_one(s, options)).collect();
  let keep = selection(&cli.command);

  let mut input_error = false;
  let mut failed = false;
  for (idx, result) in results.iter().enumerate() {
    match result {
      Ok(report) => {
        let report = keep.as_ref().map_or_else(|| report.clone(), |names| report.select(names));
        failed |= !report.passed();
        if idx > 0 {
          println!();
        }
        print!("{}", emit_report(&report, format));
      }
      Err(e) => {
        input_error = true;
        eprintln!("error: {e}");
      }
    }
  }
  if input_error {
    ExitCode::from(2)
  } else if failed {
    ExitCode::from(1)
  } else {
    ExitCode::SUCCESS
  }
}
