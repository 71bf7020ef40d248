//! End-to-end use of the public surface: build an algebra, a triple, the
//! Obata connection, and walk the filtration with the descent step.

use hyperflat_core::hypercomplex::h_solvable_filtration;
use hyperflat_core::obata::{curvature, curvature_form, is_representation, obata_connection, torsion};
use hyperflat_core::scalar::{int, ratio};
use hyperflat_core::subspace::unit;
use hyperflat_core::*;

fn v(xs: &[i64]) -> Vec<Scalar> {
  xs.iter().map(|&x| int(x)).collect()
}

/// Quaternionic Heisenberg ⊕ ℝ: `[x, y] = Σ_m Re(ȳ x λ_m) z_m` on ℍ ⊕ Im ℍ ⊕ ℝ.
fn quaternionic_heisenberg() -> LieAlgebra {
  let b = |i, j, k: usize, c| {
    let mut out = vec![int(0); 8];
    out[k] = int(c);
    (i, j, out)
  };
  LieAlgebra::from_brackets(
    8,
    [b(0, 1, 4, 1), b(0, 2, 5, 1), b(0, 3, 6, 1), b(1, 2, 6, -1), b(1, 3, 5, 1), b(2, 3, 4, -1)],
  )
  .unwrap()
}

#[test]
fn heisenberg_three() {
  let h3 = LieAlgebra::from_brackets(3, [(0, 1, v(&[0, 0, 1]))]).unwrap();
  assert!(h3.jacobi_check().holds());
  assert_eq!(h3.lower_central_series().unwrap().dims(), [3, 1, 0]);
  assert_eq!(h3.closed_one_forms(), Subspace::span(3, &[unit(3, 0), unit(3, 1)]).unwrap());
  assert_eq!(h3.commutator_ideal(), Subspace::span(3, &[unit(3, 2)]).unwrap());
  let d = h3.ce_d1(&v(&[0, 0, 1])).unwrap();
  assert_eq!(d.get(0, 1), int(-1));
}

#[test]
fn quaternionic_heisenberg_end_to_end() {
  let alg = quaternionic_heisenberg();
  let h = HyperStruct::standard(2);
  assert!(alg.jacobi_check().holds());
  assert!(h.check_quaternionic().holds());
  assert!(h.integrability(&alg).unwrap().iter().all(|o| o.integrable()));

  let c = obata_connection(&alg, &h).unwrap();
  assert!(torsion(&alg, &c).unwrap().is_torsion_free());
  let r = curvature(&alg, &c).unwrap();
  assert!(r.is_flat());
  assert_eq!(r, curvature_form(&alg, &c, WedgeConvention::Determinant).unwrap());
  assert!(is_representation(&alg, &c).unwrap());

  let w = is_unipotent_rep(&c);
  assert!(w.witness().unwrap().verify(c.operators()));
  for (m, op) in holonomy_generators(&c).unwrap().iter().zip(c.operators()) {
    assert_eq!(&unipotent_log(m).unwrap(), op);
  }

  let f = h_solvable_filtration(&alg, &h, 8).unwrap();
  assert_eq!(f.dims(), [8, 4, 0]);
  for (level, s) in f.chain.iter().enumerate().take_while(|(_, s)| !s.is_zero()) {
    let d = descent_step(&alg, &h, s, level).unwrap();
    assert!(d.passed() && d.sign_convention_robust);
    assert_eq!(d.next, f.chain[level + 1]);
  }
}

#[test]
fn descent_rejects_non_integrable_triple() {
  let alg = LieAlgebra::from_brackets(4, [(0, 1, v(&[0, 0, 1, 0]))]).unwrap();
  let err = descent_step(&alg, &HyperStruct::standard(1), &Subspace::full(4), 0).unwrap_err();
  assert!(matches!(err, Error::NotIntegrable { .. }));
}

#[test]
fn exp_of_jordan_block() {
  let n = Mat::from_rows(3, &[v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[0, 0, 0])]);
  let e = nilpotent_exp(&n).unwrap();
  assert_eq!(e[(0, 2)], ratio(1, 2));
  assert_eq!(unipotent_log(&e).unwrap(), n);
}
