//! The elimination-chain solver and its certificates.

pub mod chain;
pub mod families;
pub mod lift;
pub mod numeric;
pub mod realness;
pub mod solve;
pub mod trees;
pub mod verify;

pub use chain::{build_chain, normalize_system, BuiltChain, ChainLevel};
pub use families::{detect_families, FamilyReport, FamilyVerdict};
pub use lift::{check_mu_shortcut, lift_branch, slices, JetSet, Lift, RegularityReport, RegularityStatus};
pub use numeric::{convergence_check, newton_refine, numeric_check, ConvergenceCheck, NumericSample};
pub use realness::{classify_realness, RealClass};
pub use trees::{enumerate_trees, multiple_vertices, Tree, TreeChain, MAX_TREE_SIZE};
pub use verify::{residuals, verify_residuals, Residual};
pub use solve::{
    compare_branches, solve_chain, solve_effective, Discard, DiscardReason, LevelCertificate, SolutionBranch,
    SolveOptions, SolveReport, SolveStatus, Strategy,
};
