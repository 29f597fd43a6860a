//! Branches of `z^n = A x^n + y^n` with fixed leg difference `x' = x - y`.
//!
//! Integrality of `z_p` is always decided by exact integer roots. Intervals
//! are used only for inequalities, never to certify equality.

mod branch;
mod gaps;
mod limit;
pub mod report;
mod step;

pub use branch::{
    branch_point, branch_point_at, brute_force_solutions, verify_branch_identity, Branch,
    BranchPoint, IdentityCheck, Solution, DEFAULT_SEARCH_BUDGET,
};
pub use gaps::{
    conditional_gap_bound, fermat_y_bound, frac_accumulation, gap_audit, gap_threshold,
    integer_points, min_gap, FracAccumulation, FracEntry, GapAuditReport,
};
pub use limit::{asymptotic_step, in_limit_domain, step_limit};
pub use step::{
    certify_step_bounds, certify_step_monotone, certify_steps, step, step_upper_bound, BoundGrade,
    MonotoneReport, StepBoundsReport, StepCertificate, StepValue,
};
