//! Exact scalars: rationals and Gaussian rationals.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Element of ℚ(i), stored as a pair of rationals.
pub type CScalar = Complex<Scalar>;

/// The arithmetic the dense kernel needs from its scalar field.
///
/// Implemented for [`Scalar`] and [`CScalar`] only.
pub trait Field:
  Clone
  + PartialEq
  + fmt::Debug
  + Zero
  + One
  + Neg<Output = Self>
  + Add<Output = Self>
  + Sub<Output = Self>
  + Mul<Output = Self>
  + Div<Output = Self>
{
  fn from_rational(q: Scalar) -> Self;
}

impl Field for Scalar {
  fn from_rational(q: Scalar) -> Self {
    q
  }
}

impl Field for CScalar {
  fn from_rational(q: Scalar) -> Self {
    Complex::new(q, Scalar::zero())
  }
}

/// Integer-valued scalar.
pub fn int(n: i64) -> Scalar {
  Scalar::from_integer(BigInt::from(n))
}

/// The rational `p/q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
  Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// The Gaussian rational `re + im·i`.
pub fn complex(re: Scalar, im: Scalar) -> CScalar {
  Complex::new(re, im)
}

/// The imaginary unit in ℚ(i).
pub fn imag_unit() -> CScalar {
  Complex::new(Scalar::zero(), Scalar::one())
}

/// Displays a rational as `p/q` even when `q == 1`.
///
/// This is the canonical rendering used by machine-readable reports.
pub struct PQ<'a>(pub &'a Scalar);

impl fmt::Display for PQ<'_> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{}/{}", self.0.numer(), self.0.denom())
  }
}
