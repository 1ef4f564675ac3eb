//! Exact integral homology of simplicial complexes, connectivity levels,
//! fundamental-group presentations and a search for finite quotients.

mod chain;
mod matrix;
mod presentation;
mod quotient;

pub use chain::{
    boundary_matrix, homological_connectivity, is_homologically_connected, reduced_homology, reduced_homology_all,
    HomologyGroup, HomologyResult, ACYCLIC,
};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};
pub use presentation::{
    cyclically_reduce, generator_of, graph_presentation, inverse_word, letter, pi1_presentation, simplify,
    GroupPresentation, Letter, Simplified, SimplifyStatus, Word,
};
pub use quotient::{finite_quotient_witness, search_size, QuotientWitness, DEFAULT_SEARCH_LIMIT};
