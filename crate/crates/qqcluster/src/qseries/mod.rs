//! The truncated ring `K_ℤ`: monomials, series, Q-variables and `χ`.

pub mod chi;
pub mod monomial;
pub mod qvar;
pub mod series;

pub use chi::{chi, ChiSeries};
pub use monomial::{monomial_a, monomial_psitilde, monomial_y, omega2, renormalize_monomial, KMonomial, Lattice};
pub use qvar::{hw_monomial, qq_instances, shift_renormalized, FLabel, PathComponentState, QEngine, QqInstance};
pub use series::{ratio_decompose, sigma_plus, KSeries, TermKey, DEFAULT_BUDGET};
