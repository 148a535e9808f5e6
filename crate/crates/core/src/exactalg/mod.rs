//! Exact arithmetic: integers, rationals, integer polynomials and their
//! factorization, number fields, and linear algebra over Q and number fields.

pub mod arith;
pub mod factor;
pub mod forms;
pub mod matrix;
pub mod modp;
pub mod numfield;
pub mod poly;
pub mod ratstr;

pub use arith::kronecker_symbol;
pub use factor::factor_int_poly;
pub use forms::{iq_class_number, Form};
pub use matrix::{kernel_over_field, RatMatrix};
pub use numfield::{NFElem, NumberField};
pub use poly::IntPoly;
