//! Generic scalar abstraction: every algorithm in this crate is written over
//! a real floating-point type `T: Real` and complex numbers `Complex<T>`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Shorthand for embedding an f64 literal (tolerances, reference constants).
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the generic scalar.
pub type Cplx<T> = Complex<T>;

/// Complex literal from f64 parts.
pub fn cplx<T: Real>(re: f64, im: f64) -> Cplx<T> {
    Complex::new(T::real(re), T::real(im))
}

/// Complex zero.
pub fn c_zero<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::zero())
}

/// Complex one.
pub fn c_one<T: Real>() -> Cplx<T> {
    Complex::new(T::one(), T::zero())
}

/// Real scalar as a complex number.
pub fn c_re<T: Real>(x: T) -> Cplx<T> {
    Complex::new(x, T::zero())
}

/// e^{iθ} for real θ.
pub fn unit<T: Real>(theta: T) -> Cplx<T> {
    Complex::new(theta.cos(), theta.sin())
}
