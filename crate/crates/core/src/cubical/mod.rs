//! The cube complex `K_Γ ⊂ ∏ Θᵢ`, kept implicit behind a membership
//! predicate, with vertex links, the flag-link curvature check and
//! ascending/descending links of orientation-induced height functions.

mod kgamma;
mod morse;

pub use kgamma::{
    all_vertices, base_label, build_kgamma, vertex_name, CageGraph, Coord, KGammaView, NpcReport, ProductCell,
    VertexNpc,
};
pub use morse::{ascending_descending_links, product_morse_links, Direction, MorseData, MorseFactor, ProductLinks};
