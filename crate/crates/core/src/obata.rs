//! Algebraic connections, the Obata connection, torsion and curvature.
//!
//! A connection on `g` is stored as the operators `∇_{e_1}, …, ∇_{e_n}`;
//! `∇_X` for general `X` is their linear combination.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypercomplex::HyperStruct;
use crate::lie::{pair_index, pairs, LieAlgebra, Vector};
use crate::matrix::Mat;
use crate::scalar::{ratio, Scalar};
use crate::subspace::{unit, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Connection {
  ops: Vec<Mat>,
}

impl Connection {
  /// Wraps `n` operators of size `n × n`; entry `i` is `∇_{e_i}`.
  pub fn new(ops: Vec<Mat>) -> Result<Self> {
    let n = ops.len();
    if let Some(bad) = ops.iter().find(|m| m.rows() != n || m.cols() != n) {
      return Err(Error::DimensionMismatch { expected: n, found: bad.rows() });
    }
    Ok(Self { ops })
  }

  pub fn zero(n: usize) -> Self {
    Self { ops: (0..n).map(|_| Mat::zeros(n, n)).collect() }
  }

  pub fn dim(&self) -> usize {
    self.ops.len()
  }

  pub fn operators(&self) -> &[Mat] {
    &self.ops
  }

  /// `∇_{e_i}`.
  pub fn operator(&self, i: usize) -> &Mat {
    &self.ops[i]
  }

  /// `∇_X = Σ X_i ∇_{e_i}`.
  pub fn along(&self, x: &[Scalar]) -> Mat {
    let n = self.dim();
    let mut out = Mat::zeros(n, n);
    for (xi, op) in x.iter().zip(&self.ops) {
      if !xi.is_zero() {
        out = &out + &op.scale(xi);
      }
    }
    out
  }

  /// `∇_X Y`.
  pub fn covariant(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
    self.along(x).apply(y)
  }

  fn check_dim(&self, alg: &LieAlgebra) -> Result<()> {
    if alg.dim() != self.dim() {
      return Err(Error::DimensionMismatch { expected: alg.dim(), found: self.dim() });
    }
    Ok(())
  }
}

/// The Obata connection of an integrable hypercomplex structure.
///
/// `∇_X Y = ½([X,Y] + I[IX,Y] − J[X,JY] + K[IX,JY])`. The quaternionic
/// relations and the integrability of `I`, `J` and `K` are verified first;
/// without them the formula is neither torsion-free nor parallel.
pub fn obata_connection(alg: &LieAlgebra, h: &HyperStruct) -> Result<Connection> {
  if alg.dim() != h.dim() {
    return Err(Error::DimensionMismatch { expected: alg.dim(), found: h.dim() });
  }
  let q = h.check_quaternionic();
  if !q.holds() {
    return Err(Error::NotQuaternionic { failed: q.failed.join(", ") });
  }
  for r in h.integrability(alg)? {
    if !r.integrable() {
      return Err(Error::NotIntegrable { name: String::from(r.name) });
    }
  }
  Ok(obata_formula(alg, h))
}

/// The Obata formula evaluated on basis pairs without validating `h`.
pub fn obata_formula(alg: &LieAlgebra, h: &HyperStruct) -> Connection {
  let n = alg.dim();
  let half = ratio(1, 2);
  let basis: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
  let ie: Vec<Vector> = basis.iter().map(|x| h.i.apply(x)).collect();
  let je: Vec<Vector> = basis.iter().map(|y| h.j.apply(y)).collect();
  let ops = (0..n)
    .map(|a| {
      let cols: Vec<Vector> = (0..n)
        .map(|b| {
          let t1 = alg.br(&basis[a], &basis[b]);
          let t2 = h.i.apply(&alg.br(&ie[a], &basis[b]));
          let t3 = h.j.apply(&alg.br(&basis[a], &je[b]));
          let t4 = h.k.apply(&alg.br(&ie[a], &je[b]));
          t1.into_iter().zip(t2).zip(t3).zip(t4).map(|(((p, q), r), s)| (p + q - r + s) * &half).collect()
        })
        .collect();
      Mat::from_columns(n, &cols)
    })
    .collect();
  Connection { ops }
}

/// Nonzero values of `T(e_i, e_j) = ∇_{e_i} e_j − ∇_{e_j} e_i − [e_i, e_j]` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
  pub defects: Vec<(usize, usize, Vector)>,
}

impl TorsionReport {
  pub fn is_torsion_free(&self) -> bool {
    self.defects.is_empty()
  }
}

pub fn torsion(alg: &LieAlgebra, c: &Connection) -> Result<TorsionReport> {
  c.check_dim(alg)?;
  let n = alg.dim();
  let defects = pairs(n)
    .filter_map(|(i, j)| {
      let a = c.ops[i].column(j);
      let b = c.ops[j].column(i);
      let br = alg.basis_bracket(i, j);
      let t: Vector = a.into_iter().zip(b).zip(br).map(|((x, y), z)| x - y - z).collect();
      t.iter().any(|x| !x.is_zero()).then_some((i, j, t))
    })
    .collect();
  Ok(TorsionReport { defects })
}

/// Nonzero commutators `[∇_{e_i}, A]`; empty exactly when `A` is parallel.
pub fn parallelism_defect(c: &Connection, a: &Mat) -> Result<Vec<(usize, Mat)>> {
  if a.rows() != c.dim() || !a.is_square() {
    return Err(Error::DimensionMismatch { expected: c.dim(), found: a.rows() });
  }
  Ok(c.ops.iter().enumerate().map(|(i, op)| (i, op.commutator(a))).filter(|(_, m)| !m.is_zero()).collect())
}

/// Curvature operators `R(e_i, e_j)` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
  dim: usize,
  components: Vec<Mat>,
}

impl CurvatureTensor {
  pub fn dim(&self) -> usize {
    self.dim
  }

  /// `R(e_i, e_j)`, antisymmetric in `i, j`.
  pub fn get(&self, i: usize, j: usize) -> Mat {
    match i.cmp(&j) {
      core::cmp::Ordering::Equal => Mat::zeros(self.dim, self.dim),
      core::cmp::Ordering::Less => self.components[pair_index(self.dim, i, j)].clone(),
      core::cmp::Ordering::Greater => -&self.components[pair_index(self.dim, j, i)],
    }
  }

  /// `R(X, Y)` by bilinear extension.
  pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Mat {
    let mut out = Mat::zeros(self.dim, self.dim);
    for (i, j) in pairs(self.dim) {
      let coeff = &x[i] * &y[j] - &x[j] * &y[i];
      if !coeff.is_zero() {
        out = &out + &self.components[pair_index(self.dim, i, j)].scale(&coeff);
      }
    }
    out
  }

  pub fn is_flat(&self) -> bool {
    self.components.iter().all(Mat::is_zero)
  }

  /// Pairs `(i, j)`, `i < j`, with `R(e_i, e_j) ≠ 0`.
  pub fn nonzero_components(&self) -> Vec<(usize, usize)> {
    pairs(self.dim).filter(|&(i, j)| !self.components[pair_index(self.dim, i, j)].is_zero()).collect()
  }
}

/// `R(e_i, e_j) = [∇_{e_i}, ∇_{e_j}] − ∇_{[e_i, e_j]}`.
pub fn curvature(alg: &LieAlgebra, c: &Connection) -> Result<CurvatureTensor> {
  c.check_dim(alg)?;
  let n = alg.dim();
  let components =
    pairs(n).map(|(i, j)| &c.ops[i].commutator(&c.ops[j]) - &c.along(&alg.basis_bracket(i, j))).collect();
  Ok(CurvatureTensor { dim: n, components })
}

/// How `θ_i∧θ_j` evaluates on a pair of vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeConvention {
  /// `(θ∧φ)(x, y) = θ(x)φ(y) − θ(y)φ(x)`.
  Determinant,
  /// `(θ∧φ)(x, y) = ½(θ(x)φ(y) − θ(y)φ(x))`.
  Half,
}

impl WedgeConvention {
  pub fn name(self) -> &'static str {
    match self {
      WedgeConvention::Determinant => "determinant",
      WedgeConvention::Half => "half",
    }
  }

  fn factor(self) -> Scalar {
    match self {
      WedgeConvention::Determinant => Scalar::one(),
      WedgeConvention::Half => ratio(1, 2),
    }
  }
}

/// The curvature form `Θ = dω + ω∧ω` of `ω = Σ θ_i ⊗ A_i`, with `θ_i = e_i*`
/// and `A_i = ∇_{e_i}`, returned as `Θ(e_a, e_b)`.
///
/// `dω = Σ dθ_i ⊗ A_i` uses the Chevalley–Eilenberg differential and
/// `ω∧ω = Σ_{i<j} θ_i∧θ_j ⊗ [A_i, A_j]`. Only [`WedgeConvention::Determinant`]
/// reproduces [`curvature`].
pub fn curvature_form(
  alg: &LieAlgebra,
  c: &Connection,
  convention: WedgeConvention,
) -> Result<CurvatureTensor> {
  c.check_dim(alg)?;
  let n = alg.dim();
  let thetas: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
  let d_thetas = thetas.iter().map(|t| alg.ce_d1(t)).collect::<Result<Vec<_>>>()?;
  let commutators: Vec<Mat> = pairs(n).map(|(i, j)| c.ops[i].commutator(&c.ops[j])).collect();
  let factor = convention.factor();
  let components = pairs(n)
    .map(|(a, b)| {
      let (x, y) = (unit::<Scalar>(n, a), unit::<Scalar>(n, b));
      let mut theta = Mat::zeros(n, n);
      for (i, d) in d_thetas.iter().enumerate() {
        let v = d.eval(&x, &y);
        if !v.is_zero() {
          theta = &theta + &c.ops[i].scale(&v);
        }
      }
      for (idx, (i, j)) in pairs(n).enumerate() {
        let w = (&thetas[i][a] * &thetas[j][b] - &thetas[i][b] * &thetas[j][a]) * &factor;
        if !w.is_zero() {
          theta = &theta + &commutators[idx].scale(&w);
        }
      }
      theta
    })
    .collect();
  Ok(CurvatureTensor { dim: n, components })
}

/// True when `X ↦ ∇_X` is a Lie algebra representation: `[∇_{e_i}, ∇_{e_j}] = ∇_{[e_i, e_j]}`.
pub fn is_representation(alg: &LieAlgebra, c: &Connection) -> Result<bool> {
  c.check_dim(alg)?;
  Ok(pairs(alg.dim()).all(|(i, j)| {
    let lhs = &(&c.ops[i] * &c.ops[j]) - &(&c.ops[j] * &c.ops[i]);
    lhs == c.along(&alg.basis_bracket(i, j))
  }))
}

/// True when `∇_X Y ∈ t` for all basis vectors `X, Y` of `s`.
pub fn maps_into(c: &Connection, s: &Subspace, t: &Subspace) -> bool {
  let basis = s.basis_vectors();
  basis.iter().all(|x| {
    let op = c.along(x);
    basis.iter().all(|y| t.contains(&op.apply(y)))
  })
}

#[cfg(test)]
mod tests {
  use alloc::vec;

  use super::*;
  use crate::scalar::int;

  fn e(n: usize, i: usize) -> Vector {
    unit(n, i)
  }

  fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets(3, [(0, 1, e(3, 2))]).unwrap()
  }

  /// Quaternionic Heisenberg ⊕ ℝ with the standard triple on ℍ².
  fn quaternionic_heisenberg() -> (LieAlgebra, HyperStruct) {
    let v = |k: usize, s: i64| {
      let mut x = vec![Scalar::zero(); 8];
      x[k] = int(s);
      x
    };
    let alg = LieAlgebra::from_brackets(
      8,
      [
        (0, 1, v(4, 1)),
        (0, 2, v(5, 1)),
        (0, 3, v(6, 1)),
        (1, 2, v(6, -1)),
        (1, 3, v(5, 1)),
        (2, 3, v(4, -1)),
      ],
    )
    .unwrap();
    (alg, HyperStruct::standard(2))
  }

  #[test]
  fn abelian_obata_is_zero() {
    for m in 1..=2 {
      let c = obata_connection(&LieAlgebra::abelian(4 * m), &HyperStruct::standard(m)).unwrap();
      assert_eq!(c, Connection::zero(4 * m));
    }
  }

  #[test]
  fn quaternionic_heisenberg_is_torsion_free_parallel_and_flat() {
    let (alg, h) = quaternionic_heisenberg();
    assert!(alg.jacobi_check().holds());
    let c = obata_connection(&alg, &h).unwrap();
    assert!(c.operators().iter().any(|m| !m.is_zero()));
    assert!(torsion(&alg, &c).unwrap().is_torsion_free());
    for (_, q) in h.operators() {
      assert!(parallelism_defect(&c, q).unwrap().is_empty());
    }
    assert!(curvature(&alg, &c).unwrap().is_flat());
    assert!(is_representation(&alg, &c).unwrap());
  }

  #[test]
  fn obata_rejects_broken_structures() {
    let (alg, h) = quaternionic_heisenberg();
    let flipped = HyperStruct::new(h.i.clone(), h.j.clone(), -&h.k).unwrap();
    assert!(matches!(obata_connection(&alg, &flipped), Err(Error::NotQuaternionic { .. })));
    // h3 ⊕ ℝ carries an integrable I from the standard triple, but not J.
    let h3r = LieAlgebra::from_brackets(4, [(0, 1, e(4, 2))]).unwrap();
    assert_eq!(
      obata_connection(&h3r, &HyperStruct::standard(1)),
      Err(Error::NotIntegrable { name: "J".into() })
    );
  }

  #[test]
  fn obata_is_linear_in_lower_slot() {
    let (alg, h) = quaternionic_heisenberg();
    let c = obata_connection(&alg, &h).unwrap();
    let x: Vector = (0..8).map(|i| int(i as i64 - 3)).collect();
    let x2: Vector = (0..8).map(|i| int((i * i) as i64 % 5)).collect();
    let y: Vector = (0..8).map(|i| int(2 - i as i64)).collect();
    let sum: Vector = x.iter().zip(&x2).map(|(a, b)| a + b).collect();
    let lhs = c.covariant(&sum, &y);
    let rhs: Vector = c.covariant(&x, &y).into_iter().zip(c.covariant(&x2, &y)).map(|(a, b)| a + b).collect();
    assert_eq!(lhs, rhs);
  }

  #[test]
  fn zero_connection_torsion() {
    let t = torsion(&heisenberg3(), &Connection::zero(3)).unwrap();
    assert_eq!(t.defects, vec![(0, 1, vec![int(0), int(0), int(-1)])]);
    assert!(torsion(&LieAlgebra::abelian(3), &Connection::zero(3)).unwrap().is_torsion_free());
  }

  #[test]
  fn zero_connection_is_parallel_and_representation() {
    let c = Connection::zero(3);
    assert!(parallelism_defect(&c, &Mat::identity(3)).unwrap().is_empty());
    assert!(is_representation(&heisenberg3(), &c).unwrap());
    assert!(curvature(&heisenberg3(), &c).unwrap().is_flat());
  }

  #[test]
  fn curvature_form_zero_and_abelian() {
    let c = Connection::zero(3);
    assert!(curvature_form(&heisenberg3(), &c, WedgeConvention::Determinant).unwrap().is_flat());
    let mut a = Mat::zeros(3, 3);
    a[(0, 1)] = int(1);
    let mut b = Mat::zeros(3, 3);
    b[(1, 2)] = int(1);
    let c = Connection::new(vec![a.clone(), b.clone(), Mat::zeros(3, 3)]).unwrap();
    let theta = curvature_form(&LieAlgebra::abelian(3), &c, WedgeConvention::Determinant).unwrap();
    assert_eq!(theta.get(0, 1), a.commutator(&b));
    assert_eq!(theta.get(1, 0), b.commutator(&a));
  }

  #[test]
  fn only_determinant_convention_matches() {
    let mut a = Mat::zeros(3, 3);
    a[(0, 1)] = int(1);
    let mut b = Mat::zeros(3, 3);
    b[(1, 2)] = int(2);
    let c = Connection::new(vec![a, b, Mat::identity(3)]).unwrap();
    let alg = heisenberg3();
    let r = curvature(&alg, &c).unwrap();
    assert_eq!(curvature_form(&alg, &c, WedgeConvention::Determinant).unwrap(), r);
    assert_ne!(curvature_form(&alg, &c, WedgeConvention::Half).unwrap(), r);
  }

  #[test]
  fn curvature_antisymmetry() {
    let (alg, _) = quaternionic_heisenberg();
    let c = Connection::new((0..8).map(|i| Mat::identity(8).scale(&int(i))).collect()).unwrap();
    let r = curvature(&alg, &c).unwrap();
    let x: Vector = (0..8).map(|i| int(i as i64)).collect();
    assert!(r.eval(&x, &x).is_zero());
    assert_eq!(r.get(3, 1), -&r.get(1, 3));
  }

  #[test]
  fn filtration_is_preserved_by_obata() {
    let (alg, h) = quaternionic_heisenberg();
    let c = obata_connection(&alg, &h).unwrap();
    let g = Subspace::full(8);
    let g1 = h.h_span(&alg.commutator_ideal()).unwrap();
    assert_eq!(g1.dim(), 4);
    assert!(maps_into(&c, &g, &g1));
    assert!(maps_into(&c, &g1, &Subspace::zero(8)));
  }
}
