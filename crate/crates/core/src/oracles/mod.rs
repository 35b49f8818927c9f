//! Independent reference implementations used to check the engine.

pub mod characters;
pub mod hurwitz;
pub mod incomplete_gamma;
pub mod smoothed;
pub mod tau;

pub use characters::{gauss_sum_root_number, kronecker_symbol, DirichletCharacter, Parity};
pub use hurwitz::{dirichlet_l, hurwitz_zeta, hurwitz_zeta_with_cutoff};
pub use incomplete_gamma::upper_incomplete_gamma;
pub use smoothed::smoothed_sum_oracle;
pub use tau::{delta_coefficients, ramanujan_tau};
