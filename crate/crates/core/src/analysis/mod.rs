//! Numerical checks on Hilbert functions, random instances, the batch scan,
//! and the sl2 degeneration matrices.

pub mod numerics;
pub mod random;
pub mod scan;
pub mod sl2;

pub use numerics::{
    binomial, concave_differences_check, growth_check, inclusion_matrix, log_concavity_check,
    macaulay_check, pseudopower, uniform_hilbert, wilson_det_check, wilson_formula, BinomialDecomposition,
    CheckOutcome, CheckViolation, WilsonCheck,
};
pub use random::{random_rep, UniformityMode, DEFAULT_ENTRY_BOUND};
pub use scan::{
    scan_instance_rep, scan_log_concavity, scan_log_concavity_with_threads, threads_from_env, ScanInstance,
    ScanProfile, ScanReport, ScanViolation, THREADS_ENV,
};
pub use sl2::{
    sl2_degeneration, sl2_degeneration_seeded, sl2_matrices, valid_pairs, LaurentMatrix, Sl2Degeneration,
    Sl2Report,
};
