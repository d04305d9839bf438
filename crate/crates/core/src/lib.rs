//! Explicit Yamabe-type threshold constants.
//!
//! * [`constants`]: Γ at half-integers, sphere volumes, Q*(Sᵐ).
//! * [`model_space`]: predicates on the model spaces 𝕄_c^{m,k}.
//! * [`codim3`]: the codimension-3 lower bound L_{m,m−3} and its minimization.
//! * [`aggregate`]: the bound registry and aggregated bounds for Λ^spin_m.
//! * [`relations`]: the inequality graph between the invariant families.

pub mod aggregate;
pub mod codim3;
pub mod constants;
pub mod error;
pub mod model_space;
pub mod quadrature;
pub mod relations;
pub mod rounding;
mod serde_ext;

pub use error::{Error, Result};
