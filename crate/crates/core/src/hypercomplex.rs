//! Quaternionic triples on a Lie algebra and the H-solvable filtration.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{pairs, LieAlgebra, Vector};
use crate::matrix::{CMat, Mat};
use crate::scalar::{imag_unit, CScalar, Scalar};
use crate::subspace::{unit, Subspace};

/// Three endomorphisms `I, J, K` of the algebra, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperStruct {
  pub i: Mat,
  pub j: Mat,
  pub k: Mat,
}

/// Failed quaternionic identities, named as in `"IJ=K"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionicReport {
  pub failed: Vec<&'static str>,
}

impl QuaternionicReport {
  pub fn holds(&self) -> bool {
    self.failed.is_empty()
  }
}

/// Integrability of one complex-structure operator, decided two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorIntegrability {
  pub name: &'static str,
  /// `[g^{1,0}, g^{1,0}] ⊆ g^{1,0}` in `g ⊗ ℚ(i)`.
  pub one_zero_closed: bool,
  /// The Nijenhuis tensor vanishes on all basis pairs.
  pub nijenhuis_vanishes: bool,
}

impl OperatorIntegrability {
  pub fn integrable(&self) -> bool {
    self.one_zero_closed && self.nijenhuis_vanishes
  }
}

impl HyperStruct {
  /// Wraps three square matrices of equal size.
  pub fn new(i: Mat, j: Mat, k: Mat) -> Result<Self> {
    let n = i.rows();
    for m in [&i, &j, &k] {
      if !m.is_square() || m.rows() != n {
        return Err(Error::DimensionMismatch {
          expected: n,
          found: if m.rows() != n { m.rows() } else { m.cols() },
        });
      }
    }
    Ok(Self { i, j, k })
  }

  /// The standard triple on `ℍ^m`: left multiplication by `i, j, k` on each
  /// block `(1, i, j, k)` of four basis vectors.
  pub fn standard(quaternionic_dim: usize) -> Self {
    let blocks: [[i64; 16]; 3] = [
      [0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0],
      [0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0],
      [0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    ];
    let n = 4 * quaternionic_dim;
    let build = |b: &[i64; 16]| {
      let mut m = Mat::zeros(n, n);
      for q in 0..quaternionic_dim {
        for r in 0..4 {
          for c in 0..4 {
            m[(4 * q + r, 4 * q + c)] = Scalar::from_integer(b[4 * r + c].into());
          }
        }
      }
      m
    };
    Self { i: build(&blocks[0]), j: build(&blocks[1]), k: build(&blocks[2]) }
  }

  pub fn dim(&self) -> usize {
    self.i.rows()
  }

  pub fn operators(&self) -> [(&'static str, &Mat); 3] {
    [("I", &self.i), ("J", &self.j), ("K", &self.k)]
  }

  /// Checks `I² = J² = K² = −Id`, `IJ = K`, `JI = −K`, `JK = I`, `KI = J` exactly.
  pub fn check_quaternionic(&self) -> QuaternionicReport {
    let minus_id = -&Mat::identity(self.dim());
    let (i, j, k) = (&self.i, &self.j, &self.k);
    let checks: [(&'static str, Mat, Mat); 7] = [
      ("I^2=-Id", i * i, minus_id.clone()),
      ("J^2=-Id", j * j, minus_id.clone()),
      ("K^2=-Id", k * k, minus_id),
      ("IJ=K", i * j, k.clone()),
      ("JI=-K", j * i, -k),
      ("JK=I", j * k, i.clone()),
      ("KI=J", k * i, j.clone()),
    ];
    QuaternionicReport { failed: checks.into_iter().filter(|(_, l, r)| l != r).map(|(n, _, _)| n).collect() }
  }

  /// Integrability verdicts for `I`, `J` and `K` separately.
  pub fn integrability(&self, alg: &LieAlgebra) -> Result<Vec<OperatorIntegrability>> {
    self.check_dim(alg)?;
    self
      .operators()
      .into_iter()
      .map(|(name, a)| {
        Ok(OperatorIntegrability {
          name,
          one_zero_closed: one_zero_subalgebra_closed(alg, a).map_err(|e| rename(e, name))?,
          nijenhuis_vanishes: nijenhuis_vanishes(alg, a)?,
        })
      })
      .collect()
  }

  /// `S + I(S) + J(S) + K(S)`, the smallest H-invariant subspace containing `S`.
  pub fn h_span(&self, s: &Subspace) -> Result<Subspace> {
    if s.ambient_dim() != self.dim() {
      return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
    }
    let mut out = s.clone();
    for (_, m) in self.operators() {
      out = out.sum(&s.image(m)?)?;
    }
    Ok(out)
  }

  pub fn is_h_invariant(&self, s: &Subspace) -> bool {
    self.operators().iter().all(|(_, m)| s.is_invariant_under(m))
  }

  /// Matrices of `I, J, K` restricted to an H-invariant subspace, in its canonical basis.
  pub fn restrict(&self, s: &Subspace) -> Result<HyperStruct> {
    let restrict_one = |m: &Mat| -> Result<Mat> {
      let cols = s
        .basis_vectors()
        .iter()
        .map(|v| {
          s.coordinates(&m.apply(v))
            .ok_or_else(|| Error::NotInvariant { what: "subspace is not H-invariant".into() })
        })
        .collect::<Result<Vec<_>>>()?;
      Ok(Mat::from_columns(s.dim(), &cols))
    };
    Ok(HyperStruct { i: restrict_one(&self.i)?, j: restrict_one(&self.j)?, k: restrict_one(&self.k)? })
  }

  /// The same structure in the basis given by the columns of `p`: `P⁻¹ Q P`.
  pub fn change_basis(&self, p: &Mat) -> Result<HyperStruct> {
    let inv = p.inverse().ok_or_else(|| Error::Internal("change of basis matrix is singular".into()))?;
    let conj = |m: &Mat| &(&inv * m) * p;
    Ok(HyperStruct { i: conj(&self.i), j: conj(&self.j), k: conj(&self.k) })
  }

  fn check_dim(&self, alg: &LieAlgebra) -> Result<()> {
    if alg.dim() != self.dim() {
      return Err(Error::DimensionMismatch { expected: alg.dim(), found: self.dim() });
    }
    Ok(())
  }
}

fn rename(e: Error, name: &str) -> Error {
  match e {
    Error::NotAlmostComplex { .. } => Error::NotAlmostComplex { name: name.to_string() },
    other => other,
  }
}

fn check_almost_complex(a: &Mat, n: usize) -> Result<()> {
  if !a.is_square() || a.rows() != n {
    return Err(Error::DimensionMismatch { expected: n, found: a.rows() });
  }
  if a * a != -&Mat::identity(n) {
    return Err(Error::NotAlmostComplex { name: "A".to_string() });
  }
  Ok(())
}

/// The `+i` eigenspace `g^{1,0}` of an almost-complex operator inside `g ⊗ ℚ(i)`.
pub fn one_zero_space(a: &Mat) -> Subspace<CScalar> {
  let n = a.rows();
  let shifted = &a.complexify() - &CMat::identity(n).scale(&imag_unit());
  Subspace::span(n, &shifted.nullspace()).expect("nullspace vectors have matching length")
}

/// Decides integrability of `A` by checking that `g^{1,0}` is closed under the
/// complex-bilinear extension of the bracket.
pub fn one_zero_subalgebra_closed(alg: &LieAlgebra, a: &Mat) -> Result<bool> {
  check_almost_complex(a, alg.dim())?;
  let space = one_zero_space(a);
  let basis = space.basis_vectors();
  for (p, q) in pairs(basis.len()) {
    if !space.contains(&complex_bracket(alg, &basis[p], &basis[q])) {
      return Ok(false);
    }
  }
  Ok(true)
}

fn complex_bracket(alg: &LieAlgebra, x: &[CScalar], y: &[CScalar]) -> Vec<CScalar> {
  let n = alg.dim();
  let mut out = vec![CScalar::zero(); n];
  for (i, j) in pairs(n) {
    let coeff = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
    if coeff.is_zero() {
      continue;
    }
    for (k, o) in out.iter_mut().enumerate() {
      let c = alg.structure_constant(i, j, k);
      if !c.is_zero() {
        *o = o.clone() + coeff.clone() * CScalar::new(c, Scalar::zero());
      }
    }
  }
  out
}

/// `N_A(X, Y) = [X, Y] + A[AX, Y] + A[X, AY] − [AX, AY]`.
pub fn nijenhuis(alg: &LieAlgebra, a: &Mat, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
  alg.check_len(x)?;
  alg.check_len(y)?;
  if a.rows() != alg.dim() || !a.is_square() {
    return Err(Error::DimensionMismatch { expected: alg.dim(), found: a.rows() });
  }
  let (ax, ay) = (a.apply(x), a.apply(y));
  let t1 = alg.br(x, y);
  let t2 = a.apply(&alg.br(&ax, y));
  let t3 = a.apply(&alg.br(x, &ay));
  let t4 = alg.br(&ax, &ay);
  Ok(t1.into_iter().zip(t2).zip(t3).zip(t4).map(|(((p, q), r), s)| p + q + r - s).collect())
}

/// True when the Nijenhuis tensor of `A` vanishes on every pair of basis vectors.
pub fn nijenhuis_vanishes(alg: &LieAlgebra, a: &Mat) -> Result<bool> {
  let n = alg.dim();
  for (i, j) in pairs(n) {
    if nijenhuis(alg, a, &unit(n, i), &unit(n, j))?.iter().any(|x| !x.is_zero()) {
      return Ok(false);
    }
  }
  Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationVerdict {
  /// The chain reached the zero subspace.
  HSolvable,
  /// Two consecutive terms coincide and are nonzero.
  StabilizedNonzero,
  /// `max_depth` steps were taken without reaching zero or stabilizing.
  DepthExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
  /// `g = g_0^H ⊇ g_1^H ⊇ …`; a repeated term is not appended twice.
  pub chain: Vec<Subspace>,
  pub verdict: FiltrationVerdict,
}

impl FiltrationReport {
  pub fn dims(&self) -> Vec<usize> {
    self.chain.iter().map(Subspace::dim).collect()
  }

  /// Number of steps needed to reach zero, when the chain does.
  pub fn depth(&self) -> Option<usize> {
    (self.verdict == FiltrationVerdict::HSolvable).then(|| self.chain.len() - 1)
  }

  /// Whether `g_1^H` is a proper subspace of `g`; `None` when it was never computed.
  pub fn first_term_proper(&self) -> Option<bool> {
    match (self.chain.get(1), self.verdict) {
      (Some(g1), _) => Some(g1.dim() < self.chain[0].dim()),
      (None, FiltrationVerdict::DepthExceeded) => None,
      (None, _) => Some(false),
    }
  }
}

/// Iterates `g_i^H = H[g_{i−1}^H, g_{i−1}^H]` from `g_0^H = g`.
///
/// Stops at zero, at the first repeated term, or after `max_depth` steps.
/// Every term is checked to be an H-invariant subalgebra contained in its
/// predecessor; a failure there is an internal inconsistency of the inputs
/// (Jacobi or quaternionic relations broken), reported as an error.
pub fn h_solvable_filtration(
  alg: &LieAlgebra,
  h: &HyperStruct,
  max_depth: usize,
) -> Result<FiltrationReport> {
  h.check_dim(alg)?;
  let mut chain = vec![Subspace::full(alg.dim())];
  loop {
    let last = chain.last().expect("chain is nonempty");
    if last.is_zero() {
      return Ok(FiltrationReport { chain, verdict: FiltrationVerdict::HSolvable });
    }
    if chain.len() > max_depth {
      return Ok(FiltrationReport { chain, verdict: FiltrationVerdict::DepthExceeded });
    }
    let next = h.h_span(&alg.bracket_subspace(last, last)?)?;
    if !last.contains_subspace(&next) {
      return Err(Error::Internal("filtration term is not contained in its predecessor".into()));
    }
    if !h.is_h_invariant(&next) {
      return Err(Error::Internal("filtration term is not H-invariant".into()));
    }
    if !alg.is_subalgebra(&next)? {
      return Err(Error::Internal("filtration term is not a subalgebra".into()));
    }
    if next == *last {
      return Ok(FiltrationReport { chain, verdict: FiltrationVerdict::StabilizedNonzero });
    }
    chain.push(next);
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::scalar::int;

  fn e(n: usize, i: usize) -> Vector {
    unit(n, i)
  }

  /// `h3 ⊕ ℝ` with `[e1,e2] = e3` and an operator mixing `e1` with the centre.
  fn twisted_h3() -> (LieAlgebra, Mat) {
    let alg = LieAlgebra::from_brackets(4, [(0, 1, e(4, 2))]).unwrap();
    // A e1 = e3, A e3 = −e1, A e2 = e4, A e4 = −e2
    let mut a = Mat::zeros(4, 4);
    a[(2, 0)] = int(1);
    a[(0, 2)] = int(-1);
    a[(3, 1)] = int(1);
    a[(1, 3)] = int(-1);
    (alg, a)
  }

  /// `h3 ⊕ ℝ` with `A e1 = e2`, `A e3 = e4`: the standard integrable structure.
  fn standard_h3() -> (LieAlgebra, Mat) {
    let alg = LieAlgebra::from_brackets(4, [(0, 1, e(4, 2))]).unwrap();
    let mut a = Mat::zeros(4, 4);
    a[(1, 0)] = int(1);
    a[(0, 1)] = int(-1);
    a[(3, 2)] = int(1);
    a[(2, 3)] = int(-1);
    (alg, a)
  }

  #[test]
  fn standard_triple_is_quaternionic() {
    let h = HyperStruct::standard(2);
    assert!(h.check_quaternionic().holds());
    let flipped = HyperStruct::new(h.i.clone(), h.j.clone(), -&h.k).unwrap();
    let failed = flipped.check_quaternionic().failed;
    assert!(failed.contains(&"IJ=K"));
  }

  #[test]
  fn product_triple_passes_ij_k() {
    let h = HyperStruct::standard(1);
    let built = HyperStruct::new(h.i.clone(), h.j.clone(), &h.i * &h.j).unwrap();
    assert!(!built.check_quaternionic().failed.contains(&"IJ=K"));
  }

  #[test]
  fn size_mismatch_rejected() {
    assert!(HyperStruct::new(Mat::identity(4), Mat::identity(4), Mat::identity(8)).is_err());
  }

  #[test]
  fn abelian_is_integrable() {
    let h = HyperStruct::standard(1);
    let alg = LieAlgebra::abelian(4);
    for r in h.integrability(&alg).unwrap() {
      assert!(r.integrable(), "{}", r.name);
    }
  }

  #[test]
  fn twisted_operator_is_not_integrable() {
    let (alg, a) = twisted_h3();
    assert!(!one_zero_subalgebra_closed(&alg, &a).unwrap());
    assert!(!nijenhuis_vanishes(&alg, &a).unwrap());
    assert_eq!(nijenhuis(&alg, &a, &e(4, 0), &e(4, 1)).unwrap(), e(4, 2));
  }

  #[test]
  fn standard_h3_structure_is_integrable() {
    let (alg, a) = standard_h3();
    assert!(one_zero_subalgebra_closed(&alg, &a).unwrap());
    assert!(nijenhuis_vanishes(&alg, &a).unwrap());
  }

  #[test]
  fn non_almost_complex_rejected() {
    let alg = LieAlgebra::abelian(2);
    assert!(matches!(
      one_zero_subalgebra_closed(&alg, &Mat::identity(2)),
      Err(Error::NotAlmostComplex { .. })
    ));
  }

  #[test]
  fn nijenhuis_diagonal_vanishes() {
    let (alg, a) = twisted_h3();
    let x = vec![int(1), int(2), int(-1), int(3)];
    assert!(nijenhuis(&alg, &a, &x, &x).unwrap().iter().all(Zero::is_zero));
  }

  #[test]
  fn h_span_examples() {
    let h = HyperStruct::standard(1);
    assert_eq!(h.h_span(&Subspace::zero(4)).unwrap(), Subspace::zero(4));
    let s = Subspace::span(4, &[e(4, 0)]).unwrap();
    let full = h.h_span(&s).unwrap();
    assert!(full.is_full());
    assert_eq!(h.h_span(&full).unwrap(), full);
    let h2 = HyperStruct::standard(2);
    let s2 = Subspace::span(8, &[e(8, 5)]).unwrap();
    let w = h2.h_span(&s2).unwrap();
    assert_eq!(w.dim(), 4);
    assert!(h2.is_h_invariant(&w));
    assert_eq!(h2.h_span(&w).unwrap(), w);
  }

  #[test]
  fn abelian_filtration() {
    for m in 1..=2 {
      let h = HyperStruct::standard(m);
      let r = h_solvable_filtration(&LieAlgebra::abelian(4 * m), &h, 4 * m).unwrap();
      assert_eq!(r.verdict, FiltrationVerdict::HSolvable);
      assert_eq!(r.dims(), vec![4 * m, 0]);
      assert_eq!(r.depth(), Some(1));
      assert_eq!(r.first_term_proper(), Some(true));
    }
  }

  #[test]
  fn restriction_to_invariant_block() {
    let h = HyperStruct::standard(2);
    let s = Subspace::span(8, &(4..8).map(|i| e(8, i)).collect::<Vec<_>>()).unwrap();
    assert_eq!(h.restrict(&s).unwrap(), HyperStruct::standard(1));
    let bad = Subspace::span(8, &[e(8, 0)]).unwrap();
    assert!(h.restrict(&bad).is_err());
  }
}
