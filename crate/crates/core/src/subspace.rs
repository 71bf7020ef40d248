//! Linear subspaces in canonical form.
//!
//! A [`Subspace`] stores the reduced row-echelon form of a spanning set with
//! zero rows dropped. Two subspaces of the same ambient space are equal
//! exactly when those basis matrices are equal entrywise, so `==` is the
//! mathematical equality of subspaces.
//!
//! Covectors are coordinate rows in the dual basis; the dual of an
//! `n`-dimensional space is identified with `F^n` the same way.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{axpy, Matrix};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F = Scalar> {
  ambient: usize,
  basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
  pub fn zero(ambient: usize) -> Self {
    Self { ambient, basis: Matrix::zeros(0, ambient) }
  }

  pub fn full(ambient: usize) -> Self {
    Self { ambient, basis: Matrix::identity(ambient) }
  }

  /// Canonical span of `vectors`, each of length `ambient`.
  pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
    if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
      return Err(Error::DimensionMismatch { expected: ambient, found: bad.len() });
    }
    Ok(Self::from_matrix(Matrix::from_rows(ambient, vectors)))
  }

  /// Canonical row space of `m`.
  pub fn row_space(m: &Matrix<F>) -> Self {
    Self::from_matrix(m.clone())
  }

  /// Canonical column space of `m`.
  pub fn column_space(m: &Matrix<F>) -> Self {
    Self::from_matrix(m.transpose())
  }

  fn from_matrix(mut m: Matrix<F>) -> Self {
    let ambient = m.cols();
    let rank = m.rref_in_place();
    let entries = m.entries()[..rank * ambient].to_vec();
    Self { ambient, basis: Matrix::from_entries(rank, ambient, entries) }
  }

  pub fn ambient_dim(&self) -> usize {
    self.ambient
  }

  pub fn dim(&self) -> usize {
    self.basis.rows()
  }

  pub fn is_zero(&self) -> bool {
    self.dim() == 0
  }

  pub fn is_full(&self) -> bool {
    self.dim() == self.ambient
  }

  /// The canonical basis matrix, one basis vector per row, in RREF.
  pub fn basis(&self) -> &Matrix<F> {
    &self.basis
  }

  pub fn basis_vectors(&self) -> Vec<Vec<F>> {
    self.basis.row_vectors()
  }

  /// Pivot column of each basis row.
  pub fn pivots(&self) -> Vec<usize> {
    (0..self.dim())
      .map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).expect("canonical basis rows are nonzero"))
      .collect()
  }

  /// Coordinates of `v` in the canonical basis, or `None` when `v` is not in the subspace.
  ///
  /// For an RREF basis the coordinates are read off the pivot entries, and
  /// membership is confirmed by reconstructing `v`.
  pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
    if v.len() != self.ambient {
      return None;
    }
    let coords: Vec<F> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
    (self.combine(&coords) == v).then_some(coords)
  }

  /// The vector `Σ coords[a] · basis[a]`.
  pub fn combine(&self, coords: &[F]) -> Vec<F> {
    assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
    let mut out = alloc::vec![F::zero(); self.ambient];
    for (a, c) in coords.iter().enumerate() {
      axpy(&mut out, c, self.basis.row(a));
    }
    out
  }

  pub fn contains(&self, v: &[F]) -> bool {
    self.coordinates(v).is_some()
  }

  /// True when `other ⊆ self`.
  pub fn contains_subspace(&self, other: &Self) -> bool {
    self.ambient == other.ambient && (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
  }

  pub fn sum(&self, other: &Self) -> Result<Self> {
    self.check_ambient(other)?;
    let mut rows = self.basis_vectors();
    rows.extend(other.basis_vectors());
    Self::span(self.ambient, &rows)
  }

  /// Canonical intersection, computed as the annihilator of the sum of annihilators.
  pub fn intersect(&self, other: &Self) -> Result<Self> {
    self.check_ambient(other)?;
    Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
  }

  /// Covectors vanishing on the subspace, as a subspace of the dual.
  pub fn annihilator(&self) -> Self {
    if self.is_zero() {
      return Self::full(self.ambient);
    }
    let ns = self.basis.nullspace();
    Self::span(self.ambient, &ns).expect("nullspace vectors have ambient length")
  }

  /// Image under a square matrix acting on column vectors.
  pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
    if m.cols() != self.ambient || m.rows() != self.ambient {
      return Err(Error::DimensionMismatch { expected: self.ambient, found: m.cols() });
    }
    let imgs: Vec<Vec<F>> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
    Self::span(self.ambient, &imgs)
  }

  /// True when `m` maps the subspace into itself.
  pub fn is_invariant_under(&self, m: &Matrix<F>) -> bool {
    (0..self.dim()).all(|r| self.contains(&m.apply(self.basis.row(r))))
  }

  fn check_ambient(&self, other: &Self) -> Result<()> {
    if self.ambient != other.ambient {
      return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
    }
    Ok(())
  }
}

impl<F: Field + core::fmt::Display> core::fmt::Debug for Subspace<F> {
  fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
    f.debug_list().entries(self.basis_vectors().iter().map(|v| alloc::format!("{:?}", v))).finish()
  }
}

/// The `i`-th standard basis vector of `F^n`.
pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
  let mut v = alloc::vec![F::zero(); n];
  v[i] = F::one();
  v
}

#[cfg(test)]
mod tests {

  use proptest::prelude::*;

  use super::*;
  use crate::scalar::int;

  fn e(n: usize, i: usize) -> Vec<Scalar> {
    unit(n, i)
  }

  fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
  }

  #[test]
  fn span_collapses_duplicates() {
    let s = Subspace::span(3, &[e(3, 0), e(3, 0)]).unwrap();
    assert_eq!(s.dim(), 1);
    assert_eq!(s, Subspace::span(3, &[e(3, 0)]).unwrap());
  }

  #[test]
  fn empty_span_is_zero() {
    assert_eq!(Subspace::<Scalar>::span(3, &[]).unwrap(), Subspace::zero(3));
  }

  #[test]
  fn independent_pair_spans_plane() {
    let s = Subspace::span(2, &[v(&[1, 1]), v(&[1, -1])]).unwrap();
    assert!(s.is_full());
    assert_eq!(s, Subspace::full(2));
  }

  #[test]
  fn span_rejects_wrong_length() {
    assert_eq!(Subspace::span(3, &[v(&[1, 2])]), Err(Error::DimensionMismatch { expected: 3, found: 2 }));
  }

  #[test]
  fn intersection_examples() {
    let s = Subspace::span(3, &[e(3, 0), e(3, 1)]).unwrap();
    let t = Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap();
    assert_eq!(s.intersect(&s).unwrap(), s);
    assert_eq!(s.intersect(&Subspace::full(3)).unwrap(), s);
    assert_eq!(s.intersect(&t).unwrap(), Subspace::span(3, &[e(3, 1)]).unwrap());
    assert!(s.intersect(&Subspace::full(2)).is_err());
  }

  #[test]
  fn annihilator_examples() {
    assert_eq!(Subspace::<Scalar>::zero(3).annihilator(), Subspace::full(3));
    assert_eq!(Subspace::<Scalar>::full(3).annihilator(), Subspace::zero(3));
    let s = Subspace::span(3, &[e(3, 2)]).unwrap();
    assert_eq!(s.annihilator(), Subspace::span(3, &[e(3, 0), e(3, 1)]).unwrap());
  }

  #[test]
  fn coordinates_roundtrip() {
    let s = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
    let x = v(&[2, 7, 9]);
    let c = s.coordinates(&x).unwrap();
    assert_eq!(s.combine(&c), x);
    assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
  }

  fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(proptest::collection::vec(-2i64..3, n), 0..=n)
      .prop_map(move |rows| Subspace::span(n, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap())
  }

  proptest! {
    #[test]
    fn grassmann_identity((s, t) in (subspace(5), subspace(5))) {
      let sum = s.sum(&t).unwrap();
      let cap = s.intersect(&t).unwrap();
      prop_assert_eq!(sum.dim() + cap.dim(), s.dim() + t.dim());
      prop_assert!(s.contains_subspace(&cap) && t.contains_subspace(&cap));
    }

    #[test]
    fn double_annihilator(s in subspace(6)) {
      prop_assert_eq!(s.annihilator().dim(), 6 - s.dim());
      prop_assert_eq!(s.annihilator().annihilator(), s);
    }
  }
}
