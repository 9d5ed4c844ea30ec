//! Reduction instances from the hardness results, and brute-force checkers
//! for the polytopes they target.

mod chromatic;
mod graph;
mod membership;
mod reductions;

pub use chromatic::{chromatic_gadget, equalize_coloring, fractional_chromatic, FractionalColoring};
pub use graph::Graph;
pub use membership::{
    check_coverage_membership, check_cut_membership, check_membership, check_span_membership,
    family_span_sum, max_span_sum, Membership,
};
pub use reductions::{
    cut_to_span_gadget, cut_to_span_gadget_unbounded, densest_cut_gadget, has_set_cover,
    max_cut_density, setcover_membership_gadget, MembershipInstance, Polytope, ScaledGraph,
    SetCoverGadget,
};
