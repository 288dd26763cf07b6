//! Floating-point abstraction shared by the model, trainer and evaluator.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use ndarray::{LinalgScalar, ScalarOperand};
use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the model can be instantiated with: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + LinalgScalar
    + ScalarOperand
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion used for constants and sampled values.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable in every Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar always converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `ln(1 + exp(-|s|))` plus the rectified part: the logistic loss
/// `-[y log σ(s) + (1-y) log σ(-s)]` in a form that never overflows.
pub fn logistic_loss<F: Scalar>(s: F, positive: bool) -> F {
    let y = if positive { F::one() } else { F::zero() };
    s.max(F::zero()) - s * y + (-s.abs()).exp().ln_1p()
}

pub fn sigmoid<F: Scalar>(s: F) -> F {
    if s >= F::zero() {
        F::one() / (F::one() + (-s).exp())
    } else {
        let e = s.exp();
        e / (F::one() + e)
    }
}
