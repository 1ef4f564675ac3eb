//! Combinatorial machinery for the cube complex `K_Γ` of an n-partite flag
//! complex: links and the flag condition, permutation-voltage branched covers
//! of vertex links, Bestvina–Brady ascending/descending links, exact integer
//! homology, and finiteness certificates assembled from those pieces.
//!
//! Every value is immutable once built and every operation is a pure
//! function, so independent computations can run on separate threads.

pub mod classifier;
pub mod covers;
pub mod cubical;
mod error;
pub mod homology;
pub mod io;
pub mod simplicial;

pub use error::{Error, Result};
