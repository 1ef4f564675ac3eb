//! Permutation voltages on vertex links and the branched covers they define.

mod branch2d;
mod branch3d;
mod link;
mod morse_lift;
mod perm;
mod rep;
mod voltage;

pub use branch2d::{
    branched_link_2d, link_voltage_assignment, BranchedLink2d, FourCycleLift, LinkVoltages, UnchangedLink,
};
pub use branch3d::{
    branch3d_certificate, branch_pair, branch_vertices, certificate_for, product_action, Branch3dCertificate,
    CertificateParameters, SpatialBranching, TypeCheck, PAIRS, TYPE_NAMES,
};
pub use morse_lift::{branched_morse_links, lifted_vertex_links, BranchSetting, LiftedLink, LiftedLinks};
pub use perm::Permutation;
pub use rep::{
    check_commutator_cycles, commutator_entry, is_prime, least_primitive_root, make_branching_rep, next_prime_above,
    BranchingRep, CommutatorEntry, CommutatorTable,
};
pub use voltage::{
    adjacency_from_edges, bipartition, components, derived_cover, derived_cover_complex, find_four_cycle, girth_report,
    graph_girth, sizeable_check, DerivedComplexCover, DerivedCover, GirthReport, SizeableReport, Step, VoltageComplex,
    VoltageGraph,
};
