//! Dense exact matrices and reduced row-echelon form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::{CScalar, Field, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
  rows: usize,
  cols: usize,
  entries: Vec<F>,
}

/// Rational matrix. Endomorphisms of an algebra act on column vectors.
pub type Mat = Matrix<Scalar>;

/// Matrix over ℚ(i).
pub type CMat = Matrix<CScalar>;

impl<F: Field> Matrix<F> {
  pub fn zeros(rows: usize, cols: usize) -> Self {
    Self { rows, cols, entries: vec![F::zero(); rows * cols] }
  }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = F::one();
    }
    m
  }

  /// Builds a matrix from row-major entries. Panics when the length is wrong.
  pub fn from_entries(rows: usize, cols: usize, entries: Vec<F>) -> Self {
    assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
    Self { rows, cols, entries }
  }

  /// Builds a matrix whose rows are the given vectors, all of length `cols`.
  pub fn from_rows(cols: usize, rows: &[Vec<F>]) -> Self {
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for r in rows {
      assert_eq!(r.len(), cols, "row length mismatch");
      entries.extend(r.iter().cloned());
    }
    Self { rows: rows.len(), cols, entries }
  }

  /// Builds a matrix whose columns are the given vectors, all of length `rows`.
  pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
    Self::from_rows(rows, columns).transpose()
  }

  pub fn rows(&self) -> usize {
    self.rows
  }

  pub fn cols(&self) -> usize {
    self.cols
  }

  pub fn is_square(&self) -> bool {
    self.rows == self.cols
  }

  pub fn entries(&self) -> &[F] {
    &self.entries
  }

  pub fn row(&self, r: usize) -> &[F] {
    &self.entries[r * self.cols..(r + 1) * self.cols]
  }

  pub fn column(&self, c: usize) -> Vec<F> {
    (0..self.rows).map(|r| self[(r, c)].clone()).collect()
  }

  pub fn row_vectors(&self) -> Vec<Vec<F>> {
    (0..self.rows).map(|r| self.row(r).to_vec()).collect()
  }

  pub fn is_zero(&self) -> bool {
    self.entries.iter().all(Zero::is_zero)
  }

  pub fn transpose(&self) -> Self {
    let mut t = Self::zeros(self.cols, self.rows);
    for r in 0..self.rows {
      for c in 0..self.cols {
        t[(c, r)] = self[(r, c)].clone();
      }
    }
    t
  }

  pub fn scale(&self, s: &F) -> Self {
    Self {
      rows: self.rows,
      cols: self.cols,
      entries: self.entries.iter().map(|x| x.clone() * s.clone()).collect(),
    }
  }

  /// `self · v` for a column vector `v`.
  pub fn apply(&self, v: &[F]) -> Vec<F> {
    assert_eq!(v.len(), self.cols, "vector length mismatch");
    (0..self.rows)
      .map(|r| {
        let mut acc = F::zero();
        for (a, b) in self.row(r).iter().zip(v) {
          if !a.is_zero() && !b.is_zero() {
            acc = acc + a.clone() * b.clone();
          }
        }
        acc
      })
      .collect()
  }

  /// `w · self` for a row vector `w`; the pullback of a covector.
  pub fn apply_left(&self, w: &[F]) -> Vec<F> {
    assert_eq!(w.len(), self.rows, "covector length mismatch");
    let mut out = vec![F::zero(); self.cols];
    for (r, wr) in w.iter().enumerate() {
      if wr.is_zero() {
        continue;
      }
      for (c, o) in out.iter_mut().enumerate() {
        let a = &self[(r, c)];
        if !a.is_zero() {
          *o = o.clone() + wr.clone() * a.clone();
        }
      }
    }
    out
  }

  pub fn commutator(&self, other: &Self) -> Self {
    &(self * other) - &(other * self)
  }

  /// `self^k`; `self^0` is the identity.
  pub fn pow(&self, k: usize) -> Self {
    assert!(self.is_square(), "power of a non-square matrix");
    let mut acc = Self::identity(self.rows);
    for _ in 0..k {
      acc = &acc * self;
    }
    acc
  }

  /// True when `self^n = 0` for `n = self.rows()`, which decides nilpotency.
  pub fn is_nilpotent(&self) -> bool {
    self.is_square() && self.pow(self.rows).is_zero()
  }

  /// Reduced row-echelon form and rank.
  pub fn rref(&self) -> (Self, usize) {
    let mut m = self.clone();
    let rank = m.rref_in_place();
    (m, rank)
  }

  /// Row-reduces in place and returns the rank.
  pub fn rref_in_place(&mut self) -> usize {
    let (rows, cols) = (self.rows, self.cols);
    let mut pivot_row = 0;
    for c in 0..cols {
      if pivot_row == rows {
        break;
      }
      let Some(p) = (pivot_row..rows).find(|&r| !self[(r, c)].is_zero()) else { continue };
      self.swap_rows(p, pivot_row);
      let inv = F::one() / self[(pivot_row, c)].clone();
      for k in c..cols {
        let v = self[(pivot_row, k)].clone() * inv.clone();
        self[(pivot_row, k)] = v;
      }
      for r in 0..rows {
        if r == pivot_row || self[(r, c)].is_zero() {
          continue;
        }
        let factor = self[(r, c)].clone();
        for k in c..cols {
          let p = self[(pivot_row, k)].clone();
          if !p.is_zero() {
            let v = self[(r, k)].clone() - factor.clone() * p;
            self[(r, k)] = v;
          }
        }
      }
      pivot_row += 1;
    }
    pivot_row
  }

  pub fn rank(&self) -> usize {
    self.rref().1
  }

  /// Inverse of a square matrix, or `None` when it is singular.
  pub fn inverse(&self) -> Option<Self> {
    if !self.is_square() {
      return None;
    }
    let n = self.rows;
    let mut aug = Self::zeros(n, 2 * n);
    for r in 0..n {
      for c in 0..n {
        aug[(r, c)] = self[(r, c)].clone();
      }
      aug[(r, n + r)] = F::one();
    }
    aug.rref_in_place();
    if (0..n).any(|i| aug[(i, i)] != F::one()) {
      return None;
    }
    let mut inv = Self::zeros(n, n);
    for r in 0..n {
      for c in 0..n {
        inv[(r, c)] = aug[(r, n + c)].clone();
      }
    }
    Some(inv)
  }

  /// Basis of `{x : self · x = 0}`, one vector per free column.
  pub fn nullspace(&self) -> Vec<Vec<F>> {
    let (r, rank) = self.rref();
    let pivots: Vec<usize> =
      (0..rank).map(|i| (0..self.cols).find(|&c| !r[(i, c)].is_zero()).expect("nonzero rref row")).collect();
    let mut basis = Vec::new();
    for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
      let mut v = vec![F::zero(); self.cols];
      v[free] = F::one();
      for (i, &p) in pivots.iter().enumerate() {
        v[p] = -r[(i, free)].clone();
      }
      basis.push(v);
    }
    basis
  }

  fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for c in 0..self.cols {
      self.entries.swap(a * self.cols + c, b * self.cols + c);
    }
  }
}

impl Mat {
  /// Lifts a rational matrix into ℚ(i).
  pub fn complexify(&self) -> CMat {
    Matrix {
      rows: self.rows,
      cols: self.cols,
      entries: self.entries.iter().cloned().map(CScalar::from_rational).collect(),
    }
  }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
  type Output = F;

  fn index(&self, (r, c): (usize, usize)) -> &F {
    assert!(r < self.rows && c < self.cols, "matrix index out of range");
    &self.entries[r * self.cols + c]
  }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
  fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
    assert!(r < self.rows && c < self.cols, "matrix index out of range");
    &mut self.entries[r * self.cols + c]
  }
}

impl<F: Field> Mul for &Matrix<F> {
  type Output = Matrix<F>;

  fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
    let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
    for r in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(r, k)];
        if a.is_zero() {
          continue;
        }
        for c in 0..rhs.cols {
          let b = &rhs[(k, c)];
          if !b.is_zero() {
            let v = out[(r, c)].clone() + a.clone() * b.clone();
            out[(r, c)] = v;
          }
        }
      }
    }
    out
  }
}

impl<F: Field> Add for &Matrix<F> {
  type Output = Matrix<F>;

  fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
    }
  }
}

impl<F: Field> Sub for &Matrix<F> {
  type Output = Matrix<F>;

  fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() - b.clone()).collect(),
    }
  }
}

impl<F: Field> Neg for &Matrix<F> {
  type Output = Matrix<F>;

  fn neg(self) -> Matrix<F> {
    Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| -a.clone()).collect() }
  }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
    for r in 0..self.rows {
      write!(f, "  ")?;
      for c in 0..self.cols {
        write!(f, "{} ", self.entries[r * self.cols + c])?;
      }
      writeln!(f)?;
    }
    write!(f, "]")
  }
}

/// Adds `coeff · src` into `dst`.
pub(crate) fn axpy<F: Field>(dst: &mut [F], coeff: &F, src: &[F]) {
  if coeff.is_zero() {
    return;
  }
  for (d, s) in dst.iter_mut().zip(src) {
    if !s.is_zero() {
      *d = d.clone() + coeff.clone() * s.clone();
    }
  }
}
