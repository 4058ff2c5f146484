//! Sieved arithmetic functions and brute-force checks of the discrete
//! identities behind the mean-value computation.

mod identities;
mod residue;
mod summation;
mod table;

pub use identities::{
    arithmetic_factor_naive, mu_log_power, verify_arithmetic_factor, verify_combinatorial_identity,
    verify_lambda2_identity, verify_lambda_k_recursion, IdentitySides,
};
pub use residue::{verify_residue_formula, ResidueCheck, CONTOUR_NODES};
pub use summation::{verify_summation_lemma, ConvSpec, Leading, SummationCheck};
pub use table::{
    build_table, build_table_with, dirichlet_convolve, dirichlet_convolve_int, identity,
    ArithTable, DEFAULT_MAX_K, MAX_LIMIT,
};
