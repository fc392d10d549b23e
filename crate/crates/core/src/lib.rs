pub mod dd;
pub mod error;
pub mod eta;
pub mod gamma;
pub mod figures;
pub mod geometry;
pub mod cache;
pub mod cli;
pub mod config;
pub mod render;
pub mod strings;
pub mod zeros;

pub use error::{Error, Result};
pub use eta::{
    eta, eta_term, eta_truncated, reflection_residual, trivial_zero_t, truncation_length,
    zeta_from_eta, ComplexValue, EtaArgument, PrecisionSpec, Strategy, TruncationPlan,
};
