//! Askey's bi-orthogonal polynomials on the unit circle,
//!
//! Pₙ(z; α, β) = ₂F₁(−n, α+β+1; 2α+1; 1−z),   Qₙ(z; α, β) = Pₙ(z; α, −β),
//!
//! with exact evaluation, large-n factorial-series expansions carrying
//! computable error bounds, an expansion of Pₙ(e^{iθ/n}) in powers of iθ/n,
//! and the electrostatic characterisation of the zeros of the associated
//! para-orthogonal polynomials.

pub mod askey;
pub mod cnum;
pub mod dd;
pub mod electro;
pub mod error;
pub mod hyp;
pub mod expansion;
pub mod quad;

pub use cnum::{c64, Complex};
pub use error::{Error, Result};
pub use hyp::Params;
pub use quad::QuadratureRule;
