//! Scalar abstractions: everything numeric in this crate is generic over either
//! a floating-point type ([`Real`]) or, for the combinatorial closed forms, any
//! exact field built from integers ([`Num`], satisfied by `BigRational`).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Field-like scalar for closed-form fidelity combinatorics.
///
/// Satisfied by `f32`/`f64` and by `num_rational::BigRational`, so the same
/// expression can be evaluated in floating point or exactly.
pub trait Num: num_traits::Num + Clone + PartialOrd + FromPrimitive {}

impl<T> Num for T where T: num_traits::Num + Clone + PartialOrd + FromPrimitive {}

/// Floating-point scalar used throughout the parameter algebra and analytics.
pub trait Real:
    Float + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Floating-point scalar that can also drive the dense linear algebra
/// (eigendecompositions) behind the Fock-space engine.
pub trait LinalgReal: Real + nalgebra::RealField {}

impl<T> LinalgReal for T where T: Real + nalgebra::RealField {}

/// Shorthand for pulling an `f64` constant into a generic context.
#[inline]
pub(crate) fn r<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("constant representable in scalar type")
}

/// Tolerance used by constructor sanity checks: the documented `1e-12` for
/// `f64`, scaled up proportionally for lower-precision scalars.
pub(crate) fn strict_tol<R: Real>() -> R {
    let documented = r::<R>(1e-12);
    let machine = R::epsilon() * r::<R>(100.0);
    if machine > documented {
        machine
    } else {
        documented
    }
}
