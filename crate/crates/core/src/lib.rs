//! Exact algebra for nilpotent Lie algebras with hypercomplex structures.
//!
//! Everything here is pure computation over ℚ (and ℚ(i) for complex
//! eigenspaces): structure constants, Chevalley–Eilenberg differentials in
//! low degree, quaternionic triples and their integrability, the Obata
//! connection with its torsion and curvature, nilpotent exponentials and
//! unipotent logarithms, unipotence witnesses, and the H-solvable
//! filtration with the parallel-form descent that shrinks it.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, reports and
//! the command-line tool live in the `hyperflat` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod holonomy;
pub mod hypercomplex;
pub mod lie;
pub mod matrix;
pub mod obata;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use holonomy::{
  common_flag, descent_step, holonomy_generators, is_unipotent_rep, nilpotent_exp, parallel_covectors,
  unipotent_log, DescentReport, FlagWitness, Unipotence,
};
pub use hypercomplex::{FiltrationReport, FiltrationVerdict, HyperStruct, QuaternionicReport};
pub use lie::{CentralSeries, Covector, JacobiReport, LieAlgebra, TwoForm, Vector};
pub use matrix::{CMat, Mat, Matrix};
pub use obata::{Connection, CurvatureTensor, WedgeConvention};
pub use scalar::{CScalar, Field, Scalar};
pub use subspace::Subspace;
