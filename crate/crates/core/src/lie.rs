//! Lie algebras given by structure constants.
//!
//! Basis vectors are indexed from 0 here; file formats and reports shift to
//! 1-based indices. `[e_i, e_j] = Σ_k c_{ij}^k e_k` is stored only for
//! `i < j`, so antisymmetry holds by construction and the Jacobi identity is
//! something to check.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{axpy, Mat};
use crate::scalar::Scalar;
use crate::subspace::{unit, Subspace};

/// Element of the algebra, coordinates in the basis `e_1 … e_n`.
pub type Vector = Vec<Scalar>;

/// Element of the dual, coordinates in the dual basis `e_1* … e_n*`.
pub type Covector = Vec<Scalar>;

/// Position of the pair `(i, j)`, `i < j < n`, in lexicographic order.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
  debug_assert!(i < j && j < n);
  i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `i < j < n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
  (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// All triples `i < j < k < n` in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
  (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
  dim: usize,
  brackets: Vec<Vector>,
}

impl core::fmt::Debug for LieAlgebra {
  fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    write!(f, "LieAlgebra(dim {}) {{", self.dim)?;
    for (i, j) in pairs(self.dim) {
      let b = &self.brackets[pair_index(self.dim, i, j)];
      if b.iter().any(|x| !x.is_zero()) {
        write!(f, " [{},{}]=", i + 1, j + 1)?;
        for (k, c) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
          write!(f, "{}e{} ", c, k + 1)?;
        }
      }
    }
    write!(f, "}}")
  }
}

impl LieAlgebra {
  pub fn abelian(dim: usize) -> Self {
    Self { dim, brackets: vec![vec![Scalar::zero(); dim]; dim * dim.saturating_sub(1) / 2] }
  }

  /// Builds an algebra from `(i, j, [e_i, e_j])` entries with `i < j`.
  ///
  /// Pairs not listed bracket to zero. A repeated pair overwrites the earlier entry.
  pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self>
  where
    I: IntoIterator<Item = (usize, usize, Vector)>,
  {
    let mut alg = Self::abelian(dim);
    for (i, j, v) in entries {
      alg.set_bracket(i, j, v)?;
    }
    Ok(alg)
  }

  /// Sets `[e_i, e_j]` for `i < j`.
  pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
    if i >= j || j >= self.dim {
      return Err(Error::DimensionMismatch { expected: self.dim, found: j.max(i) + 1 });
    }
    self.check_len(&value)?;
    let idx = pair_index(self.dim, i, j);
    self.brackets[idx] = value;
    Ok(())
  }

  pub fn dim(&self) -> usize {
    self.dim
  }

  /// The structure constant `c_{ij}^k`, antisymmetric in `i, j`.
  pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
    match i.cmp(&j) {
      core::cmp::Ordering::Equal => Scalar::zero(),
      core::cmp::Ordering::Less => self.brackets[pair_index(self.dim, i, j)][k].clone(),
      core::cmp::Ordering::Greater => -self.brackets[pair_index(self.dim, j, i)][k].clone(),
    }
  }

  /// `[e_i, e_j]` for any pair of basis indices.
  pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
    match i.cmp(&j) {
      core::cmp::Ordering::Equal => vec![Scalar::zero(); self.dim],
      core::cmp::Ordering::Less => self.brackets[pair_index(self.dim, i, j)].clone(),
      core::cmp::Ordering::Greater => {
        self.brackets[pair_index(self.dim, j, i)].iter().map(|x| -x.clone()).collect()
      }
    }
  }

  pub fn is_abelian(&self) -> bool {
    self.brackets.iter().all(|b| b.iter().all(Zero::is_zero))
  }

  /// `[X, Y]`, the bilinear extension of the structure constants.
  pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
    self.check_len(x)?;
    self.check_len(y)?;
    Ok(self.br(x, y))
  }

  pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = self.dim;
    let mut out = vec![Scalar::zero(); n];
    for (i, j) in pairs(n) {
      let coeff = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
      axpy(&mut out, &coeff, &self.brackets[pair_index(n, i, j)]);
    }
    out
  }

  /// Matrix of `ad_X = [X, ·]`.
  pub fn ad(&self, x: &[Scalar]) -> Mat {
    let cols: Vec<Vector> = (0..self.dim).map(|j| self.br(x, &unit(self.dim, j))).collect();
    Mat::from_columns(self.dim, &cols)
  }

  /// Violating basis triples `i < j < k` of the Jacobi identity.
  pub fn jacobi_check(&self) -> JacobiReport {
    let violations = triples(self.dim)
      .filter(|&(i, j, k)| {
        let (ei, ej, ek) = (unit(self.dim, i), unit(self.dim, j), unit(self.dim, k));
        let mut s = self.br(&self.br(&ei, &ej), &ek);
        let t = self.br(&self.br(&ej, &ek), &ei);
        let u = self.br(&self.br(&ek, &ei), &ej);
        for ((a, b), c) in s.iter_mut().zip(t).zip(u) {
          *a = a.clone() + b + c;
        }
        s.iter().any(|x| !x.is_zero())
      })
      .collect();
    JacobiReport { violations }
  }

  /// `span{[x, y]}` over basis vectors `x` of `s` and `y` of `t`.
  pub fn bracket_subspace(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
    self.check_sub(s)?;
    self.check_sub(t)?;
    let (sb, tb) = (s.basis_vectors(), t.basis_vectors());
    let mut out = Vec::with_capacity(sb.len() * tb.len());
    for x in &sb {
      for y in &tb {
        out.push(self.br(x, y));
      }
    }
    Subspace::span(self.dim, &out)
  }

  /// `[g, g]`, the span of all basis brackets.
  pub fn commutator_ideal(&self) -> Subspace {
    Subspace::span(self.dim, &self.brackets).expect("brackets have algebra length")
  }

  /// True when `[s, s] ⊆ s`.
  pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
    Ok(s.contains_subspace(&self.bracket_subspace(s, s)?))
  }

  /// True when `[s, g] ⊆ s`.
  pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
    Ok(s.contains_subspace(&self.bracket_subspace(s, &Subspace::full(self.dim))?))
  }

  /// The descending series `g_0 = g`, `g_k = [g_{k-1}, g]` until it reaches zero or stops shrinking.
  ///
  /// Each term is checked to be an ideal contained in its predecessor; a
  /// failure means the structure constants violate the Jacobi identity.
  pub fn lower_central_series(&self) -> Result<CentralSeries> {
    let full = Subspace::full(self.dim);
    let mut terms = vec![full.clone()];
    loop {
      let last = terms.last().expect("series is nonempty");
      if last.is_zero() {
        break;
      }
      let next = self.bracket_subspace(last, &full)?;
      if !last.contains_subspace(&next) {
        return Err(Error::Internal("descending series term is not contained in its predecessor".into()));
      }
      if next == *last {
        break;
      }
      terms.push(next);
    }
    let nilpotent = terms.last().is_some_and(Subspace::is_zero);
    let step = nilpotent.then(|| terms.len() - 1);
    Ok(CentralSeries { terms, nilpotent, step })
  }

  /// Chevalley–Eilenberg differential on 1-forms: `(dα)_{ij} = −α([e_i, e_j])`.
  pub fn ce_d1(&self, alpha: &[Scalar]) -> Result<TwoForm> {
    self.check_len(alpha)?;
    let coeffs = self.brackets.iter().map(|b| -dot(alpha, b)).collect();
    Ok(TwoForm { dim: self.dim, coeffs })
  }

  /// Chevalley–Eilenberg differential on 2-forms, extended from `ce_d1` by the Leibniz rule.
  ///
  /// Returns the coefficients of `e_i*∧e_j*∧e_k*` for `i < j < k` in lexicographic order.
  pub fn ce_d2(&self, omega: &TwoForm) -> Result<Vec<Scalar>> {
    self.check_len_n(omega.dim)?;
    let n = self.dim;
    let d_basis: Vec<TwoForm> =
      (0..n).map(|a| self.ce_d1(&unit(n, a)).expect("unit covector has algebra length")).collect();
    let mut out = vec![Scalar::zero(); triples(n).count()];
    for (a, b) in pairs(n) {
      let w = omega.get(a, b);
      if w.is_zero() {
        continue;
      }
      // d(e_a* ∧ e_b*) = d(e_a*) ∧ e_b* − d(e_b*) ∧ e_a*
      let left = d_basis[a].wedge_one(&unit(n, b));
      let right = d_basis[b].wedge_one(&unit(n, a));
      for (o, (l, r)) in out.iter_mut().zip(left.into_iter().zip(right)) {
        *o = o.clone() + w.clone() * (l - r);
      }
    }
    Ok(out)
  }

  /// Closed 1-forms `{α : dα = 0}`, as the nullspace of the differential.
  pub fn closed_one_forms(&self) -> Subspace {
    let n = self.dim;
    // Row (i, j) of the differential's matrix is −[e_i, e_j]; the sign does not affect the kernel.
    let rows = Mat::from_rows(n, &self.brackets);
    let ns = rows.nullspace();
    Subspace::span(n, &ns).expect("nullspace vectors have algebra length")
  }

  /// `⋂ ker α` over closed 1-forms `α`.
  pub fn closed_forms_kernel(&self) -> Subspace {
    self.closed_one_forms().annihilator()
  }

  /// Structure constants of the subalgebra `s` in its canonical basis.
  ///
  /// Fails when `s` is not closed under the bracket.
  pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
    self.check_sub(s)?;
    let basis = s.basis_vectors();
    let m = basis.len();
    let mut out = LieAlgebra::abelian(m);
    for (a, b) in pairs(m) {
      let v = self.br(&basis[a], &basis[b]);
      let coords = s
        .coordinates(&v)
        .ok_or_else(|| Error::NotInvariant { what: "subspace is not a subalgebra".into() })?;
      out.brackets[pair_index(m, a, b)] = coords;
    }
    Ok(out)
  }

  /// The same algebra in the basis given by the columns of `p`.
  pub fn change_basis(&self, p: &Mat) -> Result<LieAlgebra> {
    self.check_len_n(p.rows())?;
    let inv = p.inverse().ok_or_else(|| Error::Internal("change of basis matrix is singular".into()))?;
    let cols: Vec<Vector> = (0..self.dim).map(|a| p.column(a)).collect();
    let mut out = LieAlgebra::abelian(self.dim);
    for (a, b) in pairs(self.dim) {
      out.brackets[pair_index(self.dim, a, b)] = inv.apply(&self.br(&cols[a], &cols[b]));
    }
    Ok(out)
  }

  /// `g ⊕ h` with the basis of `g` first.
  pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
    let n = self.dim + other.dim;
    let mut out = LieAlgebra::abelian(n);
    for (i, j) in pairs(self.dim) {
      let mut v = self.brackets[pair_index(self.dim, i, j)].clone();
      v.resize(n, Scalar::zero());
      out.brackets[pair_index(n, i, j)] = v;
    }
    for (i, j) in pairs(other.dim) {
      let mut v = vec![Scalar::zero(); self.dim];
      v.extend(other.brackets[pair_index(other.dim, i, j)].iter().cloned());
      out.brackets[pair_index(n, self.dim + i, self.dim + j)] = v;
    }
    out
  }

  pub(crate) fn check_len(&self, v: &[Scalar]) -> Result<()> {
    self.check_len_n(v.len())
  }

  fn check_len_n(&self, found: usize) -> Result<()> {
    if found != self.dim {
      return Err(Error::DimensionMismatch { expected: self.dim, found });
    }
    Ok(())
  }

  pub(crate) fn check_sub(&self, s: &Subspace) -> Result<()> {
    self.check_len_n(s.ambient_dim())
  }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
  let mut acc = Scalar::zero();
  for (x, y) in a.iter().zip(b) {
    if !x.is_zero() && !y.is_zero() {
      acc += x * y;
    }
  }
  acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
  /// Basis triples `(i, j, k)`, `i < j < k`, where the Jacobiator is nonzero.
  pub violations: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
  pub fn holds(&self) -> bool {
    self.violations.is_empty()
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
  /// `g = g_0 ⊋ g_1 ⊋ …`, ending at zero or at the first repeated term.
  pub terms: Vec<Subspace>,
  pub nilpotent: bool,
  /// First `s` with `g_s = 0`.
  pub step: Option<usize>,
}

impl CentralSeries {
  pub fn dims(&self) -> Vec<usize> {
    self.terms.iter().map(Subspace::dim).collect()
  }
}

/// `Σ_{i<j} a_{ij} e_i*∧e_j*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
  dim: usize,
  coeffs: Vec<Scalar>,
}

impl TwoForm {
  pub fn zero(dim: usize) -> Self {
    Self { dim, coeffs: vec![Scalar::zero(); dim * dim.saturating_sub(1) / 2] }
  }

  /// Builds a form from `(i, j, a_ij)` entries with `i < j`.
  pub fn from_entries<I>(dim: usize, entries: I) -> Self
  where
    I: IntoIterator<Item = (usize, usize, Scalar)>,
  {
    let mut f = Self::zero(dim);
    for (i, j, a) in entries {
      f.coeffs[pair_index(dim, i, j)] = a;
    }
    f
  }

  pub fn dim(&self) -> usize {
    self.dim
  }

  /// Coefficient of `e_i*∧e_j*`, antisymmetric in `i, j`.
  pub fn get(&self, i: usize, j: usize) -> Scalar {
    match i.cmp(&j) {
      core::cmp::Ordering::Equal => Scalar::zero(),
      core::cmp::Ordering::Less => self.coeffs[pair_index(self.dim, i, j)].clone(),
      core::cmp::Ordering::Greater => -self.coeffs[pair_index(self.dim, j, i)].clone(),
    }
  }

  /// Coefficients for `i < j` in lexicographic order.
  pub fn coefficients(&self) -> &[Scalar] {
    &self.coeffs
  }

  pub fn is_zero(&self) -> bool {
    self.coeffs.iter().all(Zero::is_zero)
  }

  /// `ω(x, y) = Σ_{i<j} a_{ij} (x_i y_j − x_j y_i)`.
  pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, j) in pairs(self.dim) {
      let a = &self.coeffs[pair_index(self.dim, i, j)];
      if !a.is_zero() {
        acc += a * (&x[i] * &y[j] - &x[j] * &y[i]);
      }
    }
    acc
  }

  /// `ω ∧ β` for a 1-form `β`, as 3-form coefficients in triple order.
  fn wedge_one(&self, beta: &[Scalar]) -> Vec<Scalar> {
    triples(self.dim)
      .map(|(i, j, k)| self.get(i, j) * &beta[k] - self.get(i, k) * &beta[j] + self.get(j, k) * &beta[i])
      .collect()
  }
}
