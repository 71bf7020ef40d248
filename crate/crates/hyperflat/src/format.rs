//! The `.alg` text format.
//!
//! ```text
//! # comment
//! name quaternionic-heisenberg-r1
//! dim 8
//! meta free-form provenance, may repeat
//! bracket 1 2 -> 5:1, 6:-1/2
//! matrix I
//! 0 -1 0 0 ...        (dim rows of dim rationals)
//! matrix J
//! ...
//! ```
//!
//! Indices are 1-based, `bracket i j` requires `i < j`, and matrices act on
//! column vectors: column `c` of `I` holds the coordinates of `I e_c`.

use std::fmt::Write as _;

use hyperflat_core::lie::pairs;
use hyperflat_core::{HyperStruct, LieAlgebra, Mat, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;

/// `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`, 1-based.
pub type BracketLine = (usize, usize, Vec<(usize, Scalar)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
  pub name: String,
  pub dim: usize,
  pub brackets: Vec<BracketLine>,
  pub i: Mat,
  pub j: Mat,
  pub k: Mat,
  pub meta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
  pub line: usize,
  pub column: usize,
  pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
  #[error("unknown directive `{0}`")]
  UnknownDirective(String),
  #[error("expected {0}")]
  Expected(&'static str),
  #[error("invalid number `{0}`")]
  BadNumber(String),
  #[error("zero denominator in `{0}`")]
  ZeroDenominator(String),
  #[error("{0} given twice")]
  Duplicate(String),
  #[error("index {index} out of range 1..={dim}")]
  OutOfRange { index: usize, dim: usize },
  #[error("bracket indices must satisfy i < j, got {i} {j}")]
  BadOrder { i: usize, j: usize },
  #[error("`dim` must come before `{0}`")]
  DimFirst(&'static str),
  #[error("row has {found} entries, expected {expected}")]
  RowLength { expected: usize, found: usize },
  #[error("missing {0}")]
  Missing(&'static str),
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
  ParseError { line, column, kind }
}

/// Whitespace-separated tokens of `line[from..]` with 1-based character columns.
fn tokens(line: &str, from: usize) -> Vec<(usize, &str)> {
  let mut out = Vec::new();
  let mut start = None;
  for (pos, ch) in line[from..].char_indices().map(|(p, c)| (p + from, c)) {
    match (ch.is_whitespace(), start) {
      (true, Some(s)) => {
        out.push((s, &line[s..pos]));
        start = None;
      }
      (false, None) => start = Some(pos),
      _ => {}
    }
  }
  if let Some(s) = start {
    out.push((s, &line[s..]));
  }
  out.into_iter().map(|(s, t)| (column(line, s), t)).collect()
}

fn column(line: &str, byte: usize) -> usize {
  line[..byte].chars().count() + 1
}

/// Parses `p`, `-p`, `p/q` with `q > 0` written without sign.
pub fn parse_rational(text: &str) -> Result<Scalar, ParseErrorKind> {
  let bad = || ParseErrorKind::BadNumber(text.to_string());
  let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
  let (num, den) = text.split_once('/').map_or((text, None), |(n, d)| (n, Some(d)));
  if !digits(num.strip_prefix(['-', '+']).unwrap_or(num)) {
    return Err(bad());
  }
  let num: BigInt = num.parse().map_err(|_| bad())?;
  let den: BigInt = match den {
    Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
    Some(_) => return Err(bad()),
    None => BigInt::from(1),
  };
  if den.is_zero() {
    return Err(ParseErrorKind::ZeroDenominator(text.to_string()));
  }
  Ok(Scalar::new(num, den))
}

fn rational_at(line: usize, col: usize, text: &str) -> Result<Scalar, ParseError> {
  parse_rational(text).map_err(|kind| err(line, col, kind))
}

fn index_at(line: usize, col: usize, text: &str, dim: usize) -> Result<usize, ParseError> {
  let idx: usize = text
    .parse()
    .ok()
    .filter(|_| text.bytes().all(|b| b.is_ascii_digit()))
    .ok_or_else(|| err(line, col, ParseErrorKind::BadNumber(text.to_string())))?;
  if idx == 0 || idx > dim {
    return Err(err(line, col, ParseErrorKind::OutOfRange { index: idx, dim }));
  }
  Ok(idx)
}

fn strip_comment(line: &str) -> &str {
  line.split_once('#').map_or(line, |(code, _)| code)
}

/// Parses an algebra file. Every error carries the 1-based line and column.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
  let lines: Vec<&str> = text.lines().map(strip_comment).collect();
  let mut name: Option<String> = None;
  let mut dim: Option<usize> = None;
  let mut brackets: Vec<BracketLine> = Vec::new();
  let mut mats: [Option<Mat>; 3] = [None, None, None];
  let mut meta = Vec::new();

  let mut ln = 0;
  while ln < lines.len() {
    let line = lines[ln];
    let lineno = ln + 1;
    ln += 1;
    let toks = tokens(line, 0);
    let Some(&(col, directive)) = toks.first() else { continue };
    let rest_start = line.find(directive).expect("token comes from line") + directive.len();
    match directive {
      "name" => {
        if name.is_some() {
          return Err(err(lineno, col, ParseErrorKind::Duplicate("`name`".into())));
        }
        let value = line[rest_start..].trim();
        if value.is_empty() {
          return Err(err(lineno, col + directive.len() + 1, ParseErrorKind::Expected("a name")));
        }
        name = Some(value.to_string());
      }
      "meta" => meta.push(line[rest_start..].trim().to_string()),
      "dim" => {
        if dim.is_some() {
          return Err(err(lineno, col, ParseErrorKind::Duplicate("`dim`".into())));
        }
        match toks.as_slice() {
          [_, (c, n)] => {
            let n: usize = n
              .parse()
              .ok()
              .filter(|&n| n > 0)
              .ok_or_else(|| err(lineno, *c, ParseErrorKind::BadNumber(n.to_string())))?;
            dim = Some(n);
          }
          [_] => return Err(err(lineno, col + 4, ParseErrorKind::Expected("a dimension"))),
          [_, _, (c, _), ..] => return Err(err(lineno, *c, ParseErrorKind::Expected("end of line"))),
          [] => unreachable!(),
        }
      }
      "bracket" => {
        let n = dim.ok_or_else(|| err(lineno, col, ParseErrorKind::DimFirst("bracket")))?;
        let arrow = line[rest_start..]
          .find("->")
          .map(|a| a + rest_start)
          .ok_or_else(|| err(lineno, line.len() + 1, ParseErrorKind::Expected("`->`")))?;
        let lhs: Vec<_> = tokens(&line[..arrow], rest_start);
        let (i, j) = match lhs.as_slice() {
          [(ci, i), (cj, j)] => (index_at(lineno, *ci, i, n)?, index_at(lineno, *cj, j, n)?),
          [.., (c, _)] if lhs.len() > 2 => return Err(err(lineno, *c, ParseErrorKind::Expected("`->`"))),
          _ => return Err(err(lineno, column(line, arrow), ParseErrorKind::Expected("two indices"))),
        };
        if i >= j {
          return Err(err(lineno, lhs[0].0, ParseErrorKind::BadOrder { i, j }));
        }
        if brackets.iter().any(|(a, b, _)| (*a, *b) == (i, j)) {
          return Err(err(lineno, col, ParseErrorKind::Duplicate(format!("bracket {i} {j}"))));
        }
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        let mut offset = arrow + 2;
        for piece in line[arrow + 2..].split(',') {
          let piece_start = offset + (piece.len() - piece.trim_start().len());
          offset += piece.len() + 1;
          let piece = piece.trim();
          let pcol = column(line, piece_start);
          if piece.is_empty() {
            if line[arrow + 2..].trim().is_empty() {
              break;
            }
            return Err(err(lineno, pcol, ParseErrorKind::Expected("`k:value`")));
          }
          let (k, value) =
            piece.split_once(':').ok_or_else(|| err(lineno, pcol, ParseErrorKind::Expected("`k:value`")))?;
          let k = index_at(lineno, pcol, k.trim(), n)?;
          let vcol = pcol + piece.find(':').expect("split on ':'") + 1;
          let value = rational_at(lineno, vcol, value.trim())?;
          if terms.iter().any(|(kk, _)| *kk == k) {
            return Err(err(lineno, pcol, ParseErrorKind::Duplicate(format!("coefficient of e{k}"))));
          }
          terms.push((k, value));
        }
        brackets.push((i, j, terms));
      }
      "matrix" => {
        let n = dim.ok_or_else(|| err(lineno, col, ParseErrorKind::DimFirst("matrix")))?;
        let slot = match toks.get(1) {
          Some((_, "I")) if toks.len() == 2 => 0,
          Some((_, "J")) if toks.len() == 2 => 1,
          Some((_, "K")) if toks.len() == 2 => 2,
          Some((c, _)) => return Err(err(lineno, *c, ParseErrorKind::Expected("`I`, `J` or `K`"))),
          None => return Err(err(lineno, col + 6, ParseErrorKind::Expected("`I`, `J` or `K`"))),
        };
        if mats[slot].is_some() {
          return Err(err(
            lineno,
            col,
            ParseErrorKind::Duplicate(format!("matrix {}", ["I", "J", "K"][slot])),
          ));
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        while rows < n {
          let Some(row) = lines.get(ln) else {
            return Err(err(ln + 1, 1, ParseErrorKind::Missing("matrix rows")));
          };
          let rowno = ln + 1;
          ln += 1;
          let row_toks = tokens(row, 0);
          if row_toks.is_empty() {
            continue;
          }
          if row_toks.len() != n {
            return Err(err(rowno, 1, ParseErrorKind::RowLength { expected: n, found: row_toks.len() }));
          }
          for (c, t) in row_toks {
            entries.push(rational_at(rowno, c, t)?);
          }
          rows += 1;
        }
        mats[slot] = Some(Mat::from_entries(n, n, entries));
      }
      other => return Err(err(lineno, col, ParseErrorKind::UnknownDirective(other.to_string()))),
    }
  }

  let end = lines.len() + 1;
  let name = name.ok_or_else(|| err(end, 1, ParseErrorKind::Missing("`name`")))?;
  let dim = dim.ok_or_else(|| err(end, 1, ParseErrorKind::Missing("`dim`")))?;
  let [i, j, k] = mats;
  let i = i.ok_or_else(|| err(end, 1, ParseErrorKind::Missing("`matrix I`")))?;
  let j = j.ok_or_else(|| err(end, 1, ParseErrorKind::Missing("`matrix J`")))?;
  let k = k.ok_or_else(|| err(end, 1, ParseErrorKind::Missing("`matrix K`")))?;
  Ok(AlgebraFile { name, dim, brackets, i, j, k, meta })
}

/// Renders a file that parses back to `file`.
pub fn emit_algebra(file: &AlgebraFile) -> String {
  let mut out = String::new();
  writeln!(out, "name {}", file.name).unwrap();
  writeln!(out, "dim {}", file.dim).unwrap();
  for m in &file.meta {
    writeln!(out, "meta {m}").unwrap();
  }
  for (i, j, terms) in &file.brackets {
    let rhs: Vec<String> = terms.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    writeln!(out, "bracket {i} {j} -> {}", rhs.join(", ")).unwrap();
  }
  for (label, m) in [("I", &file.i), ("J", &file.j), ("K", &file.k)] {
    writeln!(out, "matrix {label}").unwrap();
    for r in 0..m.rows() {
      let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
      writeln!(out, "{}", row.join(" ")).unwrap();
    }
  }
  out
}

impl AlgebraFile {
  /// Builds a file from an algebra and a triple, listing only nonzero constants.
  pub fn from_parts(name: &str, alg: &LieAlgebra, h: &HyperStruct, meta: Vec<String>) -> Self {
    let brackets = pairs(alg.dim())
      .filter_map(|(i, j)| {
        let terms: Vec<(usize, Scalar)> = alg
          .basis_bracket(i, j)
          .into_iter()
          .enumerate()
          .filter(|(_, c)| !c.is_zero())
          .map(|(k, c)| (k + 1, c))
          .collect();
        (!terms.is_empty()).then_some((i + 1, j + 1, terms))
      })
      .collect();
    Self {
      name: name.to_string(),
      dim: alg.dim(),
      brackets,
      i: h.i.clone(),
      j: h.j.clone(),
      k: h.k.clone(),
      meta,
    }
  }

  pub fn algebra(&self) -> LieAlgebra {
    let entries = self.brackets.iter().map(|(i, j, terms)| {
      let mut v = vec![Scalar::zero(); self.dim];
      for (k, c) in terms {
        v[k - 1] += c;
      }
      (i - 1, j - 1, v)
    });
    LieAlgebra::from_brackets(self.dim, entries).expect("indices validated by the parser")
  }

  pub fn hyper(&self) -> HyperStruct {
    HyperStruct::new(self.i.clone(), self.j.clone(), self.k.clone())
      .expect("matrix sizes validated by the parser")
  }
}

#[cfg(test)]
mod tests {
  use hyperflat_core::scalar::{int, ratio};

  use super::*;

  fn abelian_text() -> String {
    let h = HyperStruct::standard(1);
    emit_algebra(&AlgebraFile::from_parts("abelian", &LieAlgebra::abelian(4), &h, vec![]))
  }

  #[test]
  fn minimal_abelian_file() {
    let f = parse_algebra(&abelian_text()).unwrap();
    assert_eq!(f.dim, 4);
    assert!(f.brackets.is_empty());
    assert_eq!(f.hyper(), HyperStruct::standard(1));
  }

  #[test]
  fn rationals() {
    assert_eq!(parse_rational("3"), Ok(int(3)));
    assert_eq!(parse_rational("-6/4"), Ok(ratio(-3, 2)));
    assert_eq!(parse_rational("1/0"), Err(ParseErrorKind::ZeroDenominator("1/0".into())));
    assert!(parse_rational("1/-2").is_err());
    assert!(parse_rational("1.5").is_err());
    assert!(parse_rational("").is_err());
  }

  fn with_bracket(line: &str) -> String {
    abelian_text().replace("matrix I", &format!("{line}\nmatrix I"))
  }

  #[test]
  fn bracket_errors_carry_location() {
    let e = parse_algebra(&with_bracket("bracket 2 1 -> 3:1")).unwrap_err();
    assert_eq!((e.line, e.column), (3, 9));
    assert_eq!(e.kind, ParseErrorKind::BadOrder { i: 2, j: 1 });

    let e = parse_algebra(&with_bracket("bracket 1 2 -> 5:1")).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::OutOfRange { index: 5, dim: 4 });
    assert_eq!(e.column, 16);

    let e = parse_algebra(&with_bracket("bracket 1 2 -> 3:1/0")).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::ZeroDenominator("1/0".into()));
    assert_eq!(e.column, 18);

    let e = parse_algebra(&with_bracket("bracket 1 2 -> 3:1\nbracket 1 2 -> 4:1")).unwrap_err();
    assert_eq!(e.line, 4);
    assert!(matches!(e.kind, ParseErrorKind::Duplicate(_)));

    let e = parse_algebra(&with_bracket("bracket 1 2 -> 3:1, 3:2")).unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Duplicate(_)));
  }

  #[test]
  fn structural_errors() {
    let e = parse_algebra("name x\nbracket 1 2 -> 3:1\n").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::DimFirst("bracket"));
    let e = parse_algebra("name x\ndim 2\nfrobnicate\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 1));
    let e = parse_algebra("name x\ndim 2\nmatrix I\n0 -1\n1\n").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::RowLength { expected: 2, found: 1 });
    let e = parse_algebra("name x\ndim 2\n").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::Missing("`matrix I`"));
  }

  #[test]
  fn comments_and_blank_lines() {
    let text = with_bracket("bracket 1 2 -> 3:1/2 # half\n\n# nothing");
    let f = parse_algebra(&text).unwrap();
    assert_eq!(f.brackets, vec![(1, 2, vec![(3, ratio(1, 2))])]);
    assert_eq!(f.algebra().basis_bracket(0, 1), vec![int(0), int(0), ratio(1, 2), int(0)]);
  }
}
