//! Operators on forms and the explicit cocycle families.

pub mod adjoint;
pub mod cup;
pub mod label;
pub mod scalar;
pub mod tilde;

pub use adjoint::{eval_cochain, phi_cochain, psi_cochain, psi_cochain_cached, tau};
pub use cup::{cup_product, CupProduct};
pub use label::{CocycleLabel, Family};
pub use scalar::{apply_d1, apply_d2, apply_dminus1, omega, omega_cocycle, tilde_dminus1_explicit, w_cocycle};
pub use tilde::{tilde_dminus1, TildeCache};
