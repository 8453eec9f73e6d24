//! Single-mode boson operator algebra: parsing, normal ordering with
//! `[a, a†] = 1`, and coherent-state expectation values.

mod coherent;
mod expr;
mod forgetful;
mod normal;

pub use coherent::{coherent_expectation, coherent_expectation_at};
pub use expr::{parse, OperatorExpr};
pub use forgetful::{
    verify_forgetful_identity, verify_forgetful_identity_with, ForgetfulReport, OrderCheck,
};
pub use normal::{
    normal_order, normal_order_word_naive, stirling_from_normal_ordering, BosonWord, Letter,
    NormalPolynomial, NormalTerm,
};
pub use crate::poly::ZPolynomial;
