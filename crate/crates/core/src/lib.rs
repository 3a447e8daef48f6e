//! Exact computation of higher Alexander polynomials and Levine–Tristram
//! signature functions of links from Seifert matrices, together with
//! checkers for the jump bounds and congruences those invariants satisfy.

pub mod circle;
pub mod error;
pub mod laurent;
pub mod localdiag;
pub mod poly;
pub mod seifert;
pub mod signature;
pub mod smith;
pub mod verify;

pub use error::{Error, Result};
