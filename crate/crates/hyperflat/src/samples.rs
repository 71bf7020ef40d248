//! Seeded random inputs: Jacobi-valid algebras, connections, covectors and
//! almost-complex operators, integrable or not.
//!
//! Every algebra is built from a construction that satisfies Jacobi by
//! design (semidirect products `ℝ ⋉ V`, 2-step algebras, filiform `n_k`,
//! realified complex algebras), then possibly summed and base-changed.

use hyperflat_core::scalar::{int, ratio};
use hyperflat_core::{LieAlgebra, Mat, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
  ChaCha8Rng::seed_from_u64(seed)
}

/// Mostly small integers, sometimes a fraction with denominator up to 3.
pub fn rational(rng: &mut SampleRng) -> Scalar {
  let p = rng.gen_range(-3i64..=3);
  if rng.gen_bool(0.2) {
    ratio(p, rng.gen_range(1..=3))
  } else {
    int(p)
  }
}

/// Zero with probability `1 − density`.
fn sparse(rng: &mut SampleRng, density: f64) -> Scalar {
  if rng.gen_bool(density) {
    rational(rng)
  } else {
    int(0)
  }
}

pub fn vector(rng: &mut SampleRng, n: usize) -> Vec<Scalar> {
  (0..n).map(|_| rational(rng)).collect()
}

pub fn matrix(rng: &mut SampleRng, n: usize, density: f64) -> Mat {
  Mat::from_entries(n, n, (0..n * n).map(|_| sparse(rng, density)).collect())
}

pub fn strictly_upper(rng: &mut SampleRng, n: usize) -> Mat {
  let mut m = Mat::zeros(n, n);
  for r in 0..n {
    for c in r + 1..n {
      m[(r, c)] = sparse(rng, 0.7);
    }
  }
  m
}

/// Unit lower-triangular times unit upper-triangular, with a random row
/// permutation; always invertible.
pub fn invertible(rng: &mut SampleRng, n: usize) -> Mat {
  let mut l = Mat::identity(n);
  let mut u = Mat::identity(n);
  for r in 0..n {
    for c in 0..r {
      l[(r, c)] = sparse(rng, 0.5);
      u[(c, r)] = sparse(rng, 0.5);
    }
  }
  let mut perm: Vec<usize> = (0..n).collect();
  perm.shuffle(rng);
  let p = Mat::from_rows(n, &perm.iter().map(|&i| hyperflat_core::subspace::unit(n, i)).collect::<Vec<_>>());
  &p * &(&l * &u)
}

/// `ℝ e_1 ⋉ ℝ^{n−1}` with `ad(e_1)|_V = A`; nilpotent when `A` is.
pub fn semidirect(rng: &mut SampleRng, n: usize, nilpotent: bool) -> LieAlgebra {
  let a = if nilpotent { strictly_upper(rng, n - 1) } else { matrix(rng, n - 1, 0.5) };
  let entries = (1..n).map(|j| {
    let mut v = vec![int(0)];
    v.extend(a.column(j - 1));
    (0, j, v)
  });
  LieAlgebra::from_brackets(n, entries).expect("valid indices")
}

/// Brackets of the first `n − c` basis vectors land in the last `c`, which are central.
pub fn two_step(rng: &mut SampleRng, n: usize) -> LieAlgebra {
  let c = rng.gen_range(1..=(n / 2).max(1));
  let free = n - c;
  let mut entries = Vec::new();
  for i in 0..free {
    for j in i + 1..free {
      let mut v = vec![int(0); n];
      for slot in v.iter_mut().skip(free) {
        *slot = sparse(rng, 0.5);
      }
      entries.push((i, j, v));
    }
  }
  LieAlgebra::from_brackets(n, entries).expect("valid indices")
}

/// The filiform algebra `[e_1, e_i] = e_{i+1}`.
pub fn filiform(n: usize) -> LieAlgebra {
  LieAlgebra::from_brackets(
    n,
    (1..n.saturating_sub(1)).map(|i| {
      let mut v = vec![int(0); n];
      v[i + 1] = int(1);
      (0, i, v)
    }),
  )
  .expect("valid indices")
}

fn base_change(rng: &mut SampleRng, alg: &LieAlgebra) -> LieAlgebra {
  alg.change_basis(&invertible(rng, alg.dim())).expect("invertible change of basis")
}

/// A Jacobi-valid algebra of dimension in `2..=max_dim`, not necessarily nilpotent.
pub fn algebra(rng: &mut SampleRng, max_dim: usize) -> LieAlgebra {
  let n = rng.gen_range(2..=max_dim.max(2));
  let base = match rng.gen_range(0..5) {
    0 => semidirect(rng, n, false),
    1 => two_step(rng, n),
    2 => filiform(n),
    3 if n >= 4 => {
      let k = rng.gen_range(2..=n - 2);
      let a = nilpotent_algebra(rng, k);
      a.direct_sum(&semidirect(rng, n - k, false))
    }
    _ => semidirect(rng, n, true),
  };
  if rng.gen_bool(0.5) {
    base_change(rng, &base)
  } else {
    base
  }
}

/// A nilpotent algebra of dimension exactly `n`.
pub fn nilpotent_algebra(rng: &mut SampleRng, n: usize) -> LieAlgebra {
  let base = match rng.gen_range(0..3) {
    0 if n >= 2 => semidirect(rng, n, true),
    1 => two_step(rng, n),
    _ => filiform(n),
  };
  if rng.gen_bool(0.5) {
    base_change(rng, &base)
  } else {
    base
  }
}

/// An arbitrary (generally non-flat, torsionful) connection on `ℝ^n`.
pub fn connection(rng: &mut SampleRng, n: usize) -> hyperflat_core::Connection {
  let density = [0.2, 0.5, 0.9][rng.gen_range(0..3)];
  hyperflat_core::Connection::new((0..n).map(|_| matrix(rng, n, density)).collect())
    .expect("square operators")
}

/// `e_{2a} ↦ e_{2a+1} ↦ −e_{2a}` on `ℝ^n`, `n` even.
pub fn standard_complex(n: usize) -> Mat {
  let mut m = Mat::zeros(n, n);
  for a in 0..n / 2 {
    m[(2 * a + 1, 2 * a)] = int(1);
    m[(2 * a, 2 * a + 1)] = int(-1);
  }
  m
}

pub fn conjugate(p: &Mat, a: &Mat) -> Mat {
  &(&p.inverse().expect("invertible") * a) * p
}

/// A random almost-complex operator `P J₀ P⁻¹`.
pub fn almost_complex(rng: &mut SampleRng, n: usize) -> Mat {
  conjugate(&invertible(rng, n), &standard_complex(n))
}

/// `h ⊗ ℂ` as a real algebra of dimension `2m` with multiplication by `i`,
/// in the basis `e_1, ie_1, e_2, ie_2, …`. Always integrable.
pub fn realification(h: &LieAlgebra) -> (LieAlgebra, Mat) {
  let m = h.dim();
  let n = 2 * m;
  let mut entries = Vec::new();
  let re = |a: usize| 2 * a;
  let im = |a: usize| 2 * a + 1;
  for a in 0..m {
    for b in 0..m {
      if a == b {
        continue;
      }
      let c = h
        .bracket(&hyperflat_core::subspace::unit(m, a), &hyperflat_core::subspace::unit(m, b))
        .expect("dims");
      let mut real = vec![int(0); n];
      let mut imag = vec![int(0); n];
      for (k, ck) in c.iter().enumerate() {
        real[re(k)] = ck.clone();
        imag[im(k)] = ck.clone();
      }
      let neg: Vec<Scalar> = real.iter().map(|x| -x).collect();
      if a < b {
        entries.push((re(a), re(b), real.clone()));
        entries.push((im(a), im(b), neg));
      }
      // [e_a, i e_b] = i c for every ordered pair.
      let (x, y, v) =
        if re(a) < im(b) { (re(a), im(b), imag) } else { (im(b), re(a), imag.iter().map(|x| -x).collect()) };
      entries.push((x, y, v));
    }
  }
  let alg = LieAlgebra::from_brackets(n, entries).expect("valid indices");
  (alg, standard_complex(n))
}

/// An (algebra, almost-complex operator) pair of dimension in `4..=max_dim`
/// (even), integrable when `integrable` is set and usually not otherwise.
pub fn complex_pair(rng: &mut SampleRng, max_dim: usize, integrable: bool) -> (LieAlgebra, Mat) {
  let n = 2 * rng.gen_range(2..=(max_dim / 2).max(2));
  let (alg, a) = if integrable {
    match rng.gen_range(0..3) {
      0 => realification(&algebra(rng, n / 2)),
      1 => (LieAlgebra::abelian(n), almost_complex(rng, n)),
      _ => {
        // h_3 ⊕ ℝ^{n−3} with A e_1 = e_2, A e_3 = e_4, standard on the rest.
        (filiform(3).direct_sum(&LieAlgebra::abelian(n - 3)), standard_complex(n))
      }
    }
  } else {
    let alg = algebra(rng, n);
    let alg = if alg.dim() == n { alg } else { alg.direct_sum(&LieAlgebra::abelian(n - alg.dim())) };
    let a = almost_complex(rng, n);
    (alg, a)
  };
  let p = invertible(rng, alg.dim());
  (alg.change_basis(&p).expect("invertible"), conjugate(&p, &a))
}

/// A flat connection on `alg`: either `X ↦ ad_X`, or `X ↦ λ(X)·A` for a
/// random closed 1-form `λ` and operator `A`, or zero.
pub fn flat_connection(rng: &mut SampleRng, alg: &LieAlgebra) -> hyperflat_core::Connection {
  let n = alg.dim();
  let ops = match rng.gen_range(0..3) {
    0 => (0..n).map(|i| alg.ad(&hyperflat_core::subspace::unit(n, i))).collect(),
    1 => {
      let closed = alg.closed_one_forms().basis_vectors();
      let mut lambda = vec![int(0); n];
      for form in &closed {
        let c = rational(rng);
        for (l, f) in lambda.iter_mut().zip(form) {
          *l += &c * f;
        }
      }
      let a = matrix(rng, n, 0.5);
      lambda.iter().map(|l| a.scale(l)).collect()
    }
    _ => vec![Mat::zeros(n, n); n],
  };
  hyperflat_core::Connection::new(ops).expect("square operators")
}

/// `∇_X Y = ½[X, Y] + S(X, Y)` with `S` symmetric and valued in the span of
/// the first `k` basis vectors; torsion-free by construction.
pub fn torsion_free_connection(rng: &mut SampleRng, alg: &LieAlgebra) -> hyperflat_core::Connection {
  let n = alg.dim();
  let k = rng.gen_range(0..n);
  let half = ratio(1, 2);
  let mut ops: Vec<Mat> =
    (0..n).map(|i| alg.ad(&hyperflat_core::subspace::unit(n, i)).scale(&half)).collect();
  for i in 0..n {
    for j in i..n {
      for r in 0..k {
        let s = sparse(rng, 0.3);
        ops[i][(r, j)] += &s;
        if i != j {
          ops[j][(r, i)] += &s;
        }
      }
    }
  }
  hyperflat_core::Connection::new(ops).expect("square operators")
}
