//! Arithmetic foundations: big rationals, Gaussian rationals, rational
//! interval arithmetic with certified elementary functions, symbolic
//! linear combinations of declared irrationals, and exact linear algebra.

mod cinterval;
mod elementary;
mod fint;
mod gauss;
mod interval;
mod number;
mod qmat;
pub(crate) mod rat;

pub use cinterval::CInt;
pub use fint::{CF64, F64I};
pub use elementary::{
    atan2_interval, cos_sin_2pi_frac, cos_sin_angle, ln_interval, pi, sqrt_interval,
};
pub use gauss::GRat;
pub use interval::RatInterval;
pub use number::{GenId, GenRegistry, Number};
pub use qmat::{hermite_normal_form, CMat, QMat};
pub use rat::{
    exact_sqrt, rat, rat_from_f64_approx, rat_i, rat_pow2, rat_to_f64, round_dyadic, Rat,
};
