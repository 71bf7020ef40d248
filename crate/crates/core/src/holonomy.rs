//! Nilpotent exponentials, unipotent logarithms, algebraic holonomy
//! generators, unipotence witnesses and the parallel-form descent step.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hypercomplex::HyperStruct;
use crate::lie::{Covector, LieAlgebra};
use crate::matrix::Mat;
use crate::obata::{curvature, obata_connection, Connection};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// `e^N = Id + N + N²/2! + … + N^{n−1}/(n−1)!` for nilpotent `N`.
pub fn nilpotent_exp(n: &Mat) -> Result<Mat> {
  if !n.is_nilpotent() {
    return Err(Error::NotNilpotent);
  }
  let size = n.rows();
  let mut out = Mat::identity(size);
  let mut term = Mat::identity(size);
  for k in 1..size.max(1) {
    term = (&term * n).scale(&Scalar::new(BigInt::one(), BigInt::from(k)));
    if term.is_zero() {
      break;
    }
    out = &out + &term;
  }
  Ok(out)
}

/// `log U = γ − γ²/2 + γ³/3 − …` with `γ = U − Id`, for unipotent `U`.
pub fn unipotent_log(u: &Mat) -> Result<Mat> {
  if !u.is_square() {
    return Err(Error::NotUnipotent);
  }
  let size = u.rows();
  let gamma = u - &Mat::identity(size);
  if !gamma.is_nilpotent() {
    return Err(Error::NotUnipotent);
  }
  let mut out = Mat::zeros(size, size);
  let mut power = Mat::identity(size);
  for k in 1..size.max(1) {
    power = &power * &gamma;
    if power.is_zero() {
      break;
    }
    let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    out = &out + &power.scale(&Scalar::new(sign, BigInt::from(k)));
  }
  Ok(out)
}

/// `e^{∇_{e_i}}` for every basis vector, generating the algebraic holonomy group at `t = 1`.
pub fn holonomy_generators(c: &Connection) -> Result<Vec<Mat>> {
  c.operators()
    .iter()
    .enumerate()
    .map(|(index, op)| nilpotent_exp(op).map_err(|_| Error::GeneratorNotNilpotent { index }))
    .collect()
}

/// A flag `0 = V_0 ⊊ V_1 ⊊ … ⊊ V_m = g` with `∇_{e_i}(V_k) ⊆ V_{k−1}` for all `i, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagWitness {
  pub chain: Vec<Subspace>,
}

impl FlagWitness {
  pub fn dims(&self) -> Vec<usize> {
    self.chain.iter().map(Subspace::dim).collect()
  }

  /// Re-checks the defining containments and strictness against `ops`.
  pub fn verify(&self, ops: &[Mat]) -> bool {
    let Some(first) = self.chain.first() else { return false };
    let n = first.ambient_dim();
    let last = self.chain.last().expect("nonempty chain");
    if !first.is_zero() || !last.is_full() {
      return false;
    }
    self.chain.windows(2).all(|w| {
      let (lower, upper) = (&w[0], &w[1]);
      lower.dim() < upper.dim()
        && upper.contains_subspace(lower)
        && ops
          .iter()
          .all(|op| op.rows() == n && lower.contains_subspace(&upper.image(op).expect("square operator")))
    })
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unipotence {
  Unipotent(FlagWitness),
  /// The flag stopped growing at `stuck = V_stage ≠ g`: no vector outside
  /// `stuck` is mapped into it by every operator, and `operator` acts
  /// nontrivially on the quotient.
  NotUnipotent {
    stage: usize,
    stuck: Subspace,
    operator: usize,
  },
}

impl Unipotence {
  pub fn is_unipotent(&self) -> bool {
    matches!(self, Unipotence::Unipotent(_))
  }

  pub fn witness(&self) -> Option<&FlagWitness> {
    match self {
      Unipotence::Unipotent(w) => Some(w),
      Unipotence::NotUnipotent { .. } => None,
    }
  }
}

/// Decides whether the operators `∇_{e_i}` are simultaneously strictly
/// upper-triangular in some basis, by growing `V_{k+1} = {v : ∇_{e_i} v ∈ V_k}`.
pub fn is_unipotent_rep(c: &Connection) -> Unipotence {
  common_flag(c.operators(), c.dim())
}

/// [`is_unipotent_rep`] for an arbitrary family of `n × n` operators.
pub fn common_flag(ops: &[Mat], n: usize) -> Unipotence {
  let mut chain = alloc::vec![Subspace::zero(n)];
  loop {
    let current = chain.last().expect("nonempty chain");
    if current.is_full() {
      return Unipotence::Unipotent(FlagWitness { chain });
    }
    let ann = current.annihilator().basis_vectors();
    let rows: Vec<Vec<Scalar>> =
      ops.iter().flat_map(|op| ann.iter().map(move |w| op.apply_left(w))).collect();
    let next = if rows.is_empty() {
      Subspace::full(n)
    } else {
      Subspace::span(n, &Mat::from_rows(n, &rows).nullspace()).expect("nullspace vectors have length n")
    };
    if next == *current {
      let operator = ops
        .iter()
        .position(|op| !current.contains_subspace(&Subspace::column_space(op)))
        .expect("some operator leaves a stuck proper subspace");
      return Unipotence::NotUnipotent { stage: chain.len() - 1, stuck: next, operator };
    }
    chain.push(next);
  }
}

/// Covectors `α` on `ambient` with `α(∇_X Y) = 0` for all `X, Y` in `ambient`,
/// in coordinates of the canonical basis of `ambient`.
///
/// `∇_X Y` must stay inside `ambient`; otherwise the restriction is undefined
/// and [`Error::NotInvariant`] is returned.
pub fn parallel_covectors(c: &Connection, ambient: &Subspace) -> Result<Subspace> {
  if ambient.ambient_dim() != c.dim() {
    return Err(Error::DimensionMismatch { expected: c.dim(), found: ambient.ambient_dim() });
  }
  let basis = ambient.basis_vectors();
  let mut values = Vec::with_capacity(basis.len() * basis.len());
  for x in &basis {
    let op = c.along(x);
    for y in &basis {
      let v = op.apply(y);
      values.push(
        ambient
          .coordinates(&v)
          .ok_or_else(|| Error::NotInvariant { what: "connection leaves the ambient subspace".into() })?,
      );
    }
  }
  Ok(Subspace::span(ambient.dim(), &values)?.annihilator())
}

/// One step of the descent `g_i^H ⊋ Σ ⊇ g_{i+1}^H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
  pub level: usize,
  /// The chosen parallel covector, in coordinates of the canonical basis of `g_i^H`.
  pub alpha: Covector,
  /// Dimension of the space of parallel covectors on `g_i^H`.
  pub parallel_dim: usize,
  /// `ker α ∩ ker αI ∩ ker αJ ∩ ker αK`, in coordinates of `g`.
  pub sigma: Subspace,
  /// `g_{i+1}^H = H[g_i^H, g_i^H]`, in coordinates of `g`.
  pub next: Subspace,
  pub sigma_h_invariant: bool,
  pub sigma_proper: bool,
  pub next_contained: bool,
  pub alpha_closed: bool,
  /// `Σ` computed with `−α∘Q` in place of `α∘Q` coincides with `Σ`.
  pub sign_convention_robust: bool,
}

impl DescentReport {
  pub fn passed(&self) -> bool {
    self.sigma_h_invariant && self.sigma_proper && self.next_contained && self.alpha_closed
  }
}

/// Runs the descent step on the H-invariant subalgebra `s = g_i^H`.
///
/// The Obata connection is rebuilt on `(s, H|_s)` in the canonical basis of
/// `s`, checked to be flat with unipotent holonomy, and the first canonical
/// basis vector of its parallel covectors is taken as `α`. Quaternions act on
/// covectors by pullback, `(Qα)(X) = α(QX)`.
pub fn descent_step(alg: &LieAlgebra, h: &HyperStruct, s: &Subspace, level: usize) -> Result<DescentReport> {
  let sub_alg = alg.restrict(s)?;
  let sub_h = h.restrict(s)?;
  let conn = obata_connection(&sub_alg, &sub_h)?;
  if !curvature(&sub_alg, &conn)?.is_flat() {
    return Err(Error::NotFlat);
  }
  if !is_unipotent_rep(&conn).is_unipotent() {
    return Err(Error::NotUnipotentRep);
  }
  let m = s.dim();
  let parallel = parallel_covectors(&conn, &Subspace::full(m))?;
  let alpha = parallel.basis_vectors().into_iter().next().ok_or(Error::NoParallelCovector)?;

  let pullbacks: Vec<Covector> = sub_h.operators().iter().map(|(_, q)| q.apply_left(&alpha)).collect();
  let mut forms = alloc::vec![alpha.clone()];
  forms.extend(pullbacks.iter().cloned());
  let sigma_local = Subspace::span(m, &forms)?.annihilator();

  let mut flipped = alloc::vec![alpha.clone()];
  flipped.extend(pullbacks.iter().map(|f| f.iter().map(|x| -x.clone()).collect::<Covector>()));
  let sign_convention_robust = Subspace::span(m, &flipped)?.annihilator() == sigma_local;

  let sigma_vectors: Vec<Vec<Scalar>> = sigma_local.basis_vectors().iter().map(|c| s.combine(c)).collect();
  let sigma = Subspace::span(alg.dim(), &sigma_vectors)?;
  let next = h.h_span(&alg.bracket_subspace(s, s)?)?;

  Ok(DescentReport {
    level,
    parallel_dim: parallel.dim(),
    sigma_h_invariant: h.is_h_invariant(&sigma),
    sigma_proper: sigma.dim() < s.dim() && s.contains_subspace(&sigma),
    next_contained: sigma.contains_subspace(&next),
    alpha_closed: sub_alg.ce_d1(&alpha)?.is_zero(),
    alpha,
    sigma,
    next,
    sign_convention_robust,
  })
}

/// `(M − Id)^n = 0`.
pub fn is_unipotent_matrix(m: &Mat) -> bool {
  m.is_square() && (m - &Mat::identity(m.rows())).is_nilpotent()
}

#[cfg(test)]
mod tests {
  use alloc::vec;

  use proptest::prelude::*;

  use super::*;
  use crate::scalar::{int, ratio};
  use crate::subspace::unit;

  fn m(n: usize, e: &[Scalar]) -> Mat {
    Mat::from_entries(n, n, e.to_vec())
  }

  fn mi(n: usize, e: &[i64]) -> Mat {
    m(n, &e.iter().map(|&x| int(x)).collect::<Vec<_>>())
  }

  #[test]
  fn exp_examples() {
    assert_eq!(nilpotent_exp(&Mat::zeros(3, 3)).unwrap(), Mat::identity(3));
    assert_eq!(nilpotent_exp(&mi(2, &[0, 1, 0, 0])).unwrap(), mi(2, &[1, 1, 0, 1]));
    let n3 = mi(3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
    let expected = m(3, &[int(1), int(1), ratio(1, 2), int(0), int(1), int(1), int(0), int(0), int(1)]);
    assert_eq!(nilpotent_exp(&n3).unwrap(), expected);
    assert_eq!(nilpotent_exp(&Mat::identity(2)), Err(Error::NotNilpotent));
  }

  #[test]
  fn log_examples() {
    assert_eq!(unipotent_log(&Mat::identity(4)).unwrap(), Mat::zeros(4, 4));
    assert_eq!(unipotent_log(&mi(2, &[1, 2, 0, 1])).unwrap(), mi(2, &[0, 2, 0, 0]));
    assert_eq!(unipotent_log(&mi(2, &[2, 0, 0, 1])), Err(Error::NotUnipotent));
  }

  #[test]
  fn generators_of_zero_connection() {
    let gens = holonomy_generators(&Connection::zero(3)).unwrap();
    assert_eq!(gens, vec![Mat::identity(3); 3]);
  }

  #[test]
  fn generators_reject_non_nilpotent() {
    let c = Connection::new(vec![Mat::zeros(2, 2), Mat::identity(2)]).unwrap();
    assert_eq!(holonomy_generators(&c), Err(Error::GeneratorNotNilpotent { index: 1 }));
  }

  #[test]
  fn unipotence_examples() {
    let zero = is_unipotent_rep(&Connection::zero(3));
    let w = zero.witness().unwrap();
    assert_eq!(w.dims(), vec![0, 3]);
    assert!(w.verify(Connection::zero(3).operators()));

    let diag = Connection::new(vec![mi(2, &[1, 0, 0, -1]), Mat::zeros(2, 2)]).unwrap();
    match is_unipotent_rep(&diag) {
      Unipotence::NotUnipotent { stage, stuck, operator } => {
        assert_eq!((stage, operator), (0, 0));
        assert!(stuck.is_zero());
      }
      other => panic!("expected failure, got {other:?}"),
    }
  }

  #[test]
  fn partial_flag_then_stuck() {
    // e1 is killed by both; on the quotient span{e2, e3} the operator swaps them.
    let a = mi(3, &[0, 1, 0, 0, 0, 1, 0, 1, 0]);
    match common_flag(&[a], 3) {
      Unipotence::NotUnipotent { stage, stuck, .. } => {
        assert_eq!(stage, 1);
        assert_eq!(stuck, Subspace::span(3, &[unit(3, 0)]).unwrap());
      }
      other => panic!("expected failure, got {other:?}"),
    }
  }

  #[test]
  fn jordan_block_flag() {
    let n3 = mi(3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
    let u = common_flag(core::slice::from_ref(&n3), 3);
    let w = u.witness().unwrap();
    assert_eq!(w.dims(), vec![0, 1, 2, 3]);
    assert!(w.verify(&[n3]));
  }

  #[test]
  fn parallel_covectors_of_zero_connection() {
    let p = parallel_covectors(&Connection::zero(4), &Subspace::full(4)).unwrap();
    assert!(p.is_full());
  }

  #[test]
  fn abelian_descent() {
    let h = HyperStruct::standard(1);
    let alg = LieAlgebra::abelian(4);
    let r = descent_step(&alg, &h, &Subspace::full(4), 0).unwrap();
    assert_eq!(r.alpha, unit(4, 0));
    assert!(r.sigma.is_zero());
    assert!(r.next.is_zero());
    assert!(r.passed() && r.sign_convention_robust);
  }

  fn strict_upper(n: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec((-4i64..5, 1i64..4), n * n).prop_map(move |xs| {
      let mut out = Mat::zeros(n, n);
      for r in 0..n {
        for c in r + 1..n {
          let (p, q) = xs[r * n + c];
          out[(r, c)] = ratio(p, q);
        }
      }
      out
    })
  }

  proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_log_are_inverse(n in (2usize..7).prop_flat_map(strict_upper)) {
      let u = nilpotent_exp(&n).unwrap();
      prop_assert!(is_unipotent_matrix(&u));
      prop_assert_eq!(&unipotent_log(&u).unwrap(), &n);
      prop_assert_eq!(nilpotent_exp(&unipotent_log(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn strictly_upper_families_are_unipotent(
      a in strict_upper(4),
      b in strict_upper(4),
    ) {
      let u = common_flag(&[a.clone(), b.clone()], 4);
      let w = u.witness().expect("upper triangular family is unipotent");
      prop_assert!(w.verify(&[a, b]));
    }
  }
}
