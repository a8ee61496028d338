//! Scalar abstraction and the numerical tolerance record.
//!
//! Every algorithm in this crate is written against [`Real`], so the same
//! code runs in `f64` (the reference precision) and `f32`. Thresholds are
//! stored once per precision in a [`Tolerances`] record and converted to the
//! working scalar at the point of use.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the library (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + LowerExp
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Threshold set calibrated for this precision.
    fn tolerances() -> &'static Tolerances;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

/// Numerical thresholds, stored in `f64` and converted on use.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Maximum entry-wise asymmetry `|a_ij - conj(a_ji)|` accepted as Hermitian.
    pub hermitian: f64,
    /// Allowed deviation of a state's trace from one.
    pub trace: f64,
    /// Eigenvalues in `[-positivity, 0)` are clamped to zero; below is an error.
    pub positivity: f64,
    /// Eigenvalues below this are treated as exactly zero inside `x log x`.
    pub entropy_clamp: f64,
    /// Jacobi stops when the off-diagonal Frobenius norm falls below this
    /// (relative to the input norm, floored at one).
    pub jacobi_offdiag: f64,
    /// Taylor series truncation threshold for the matrix exponential.
    pub expm_residual: f64,
    /// Branch probabilities below this are treated as null outcomes.
    pub null_probability: f64,
    /// Completeness tolerance for Kraus sets.
    pub kraus_completeness: f64,
    /// `sin(theta)` below which the azimuth is meaningless and set to zero.
    pub pole: f64,
    /// Objective values closer than this count as ties in basis selection.
    pub tie: f64,
    /// Default simplex spread at which the local refinement stops.
    pub refine_spread: f64,
    /// Relative threshold on squared singular values for the generator null space.
    pub null_space: f64,
    /// Residual `|| L vec(rho) ||` accepted for a steady state.
    pub steady_residual: f64,
    /// Disagreement between the two lost-work formulas that signals a bug.
    pub work_crosscheck: f64,
    /// Allowed change of the S marginal under an update on X.
    pub marginal_drift: f64,
}

/// Thresholds for `f64`.
pub static F64_TOLERANCES: Tolerances = Tolerances {
    hermitian: 1e-10,
    trace: 1e-10,
    positivity: 1e-9,
    entropy_clamp: 1e-12,
    jacobi_offdiag: 1e-13,
    expm_residual: 1e-16,
    null_probability: 1e-12,
    kraus_completeness: 1e-10,
    pole: 1e-9,
    tie: 1e-12,
    refine_spread: 1e-11,
    null_space: 1e-12,
    steady_residual: 1e-9,
    work_crosscheck: 1e-8,
    marginal_drift: 1e-10,
};

/// Thresholds for `f32`, scaled to single-precision round-off.
pub static F32_TOLERANCES: Tolerances = Tolerances {
    hermitian: 1e-5,
    trace: 1e-5,
    positivity: 1e-5,
    entropy_clamp: 1e-7,
    jacobi_offdiag: 1e-6,
    expm_residual: 1e-8,
    null_probability: 1e-7,
    kraus_completeness: 1e-5,
    pole: 1e-5,
    tie: 1e-6,
    refine_spread: 1e-6,
    null_space: 1e-6,
    steady_residual: 1e-4,
    work_crosscheck: 1e-4,
    marginal_drift: 1e-5,
};

impl Real for f64 {
    fn tolerances() -> &'static Tolerances {
        &F64_TOLERANCES
    }
}

impl Real for f32 {
    fn tolerances() -> &'static Tolerances {
        &F32_TOLERANCES
    }
}

/// Fetch a tolerance converted to the working scalar.
#[inline]
pub(crate) fn tol<T: Real>(pick: impl Fn(&Tolerances) -> f64) -> T {
    T::lit(pick(T::tolerances()))
}

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `x log2 x` with the `0 log 0 = 0` convention applied below `clamp`.
#[inline]
pub(crate) fn xlog2x<T: Real>(x: T, clamp: T) -> T {
    if x <= clamp {
        T::zero()
    } else {
        x * x.log2()
    }
}
