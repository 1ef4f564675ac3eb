//! Finite abstract simplicial complexes with optional n-partite structure,
//! and the complex-building constructions used downstream: flag completion,
//! links and stars, joins, barycentric subdivision, link normalization,
//! octahedralisation and the complex `R(L)`.

mod complex;
mod iso;
mod ops;
mod star;

pub(crate) use complex::components_of;
pub use complex::{PartiteStructure, Simplex, SimplicialComplex};
pub use iso::{find_isomorphism, is_isomorphism};
pub(crate) use ops::intersect_sorted;
pub use ops::{
    barycentre_name, barycentric_subdivision, build_rl, check_rl_input, find_unspanned_clique, flag_completion,
    full_subcomplex, full_subcomplex_by, graph_from_edges, is_flag, join, join_partite, link, minus_name,
    normalize_links, octahedralize, octahedralize_partite, plus_name, sign_forgetting_is_retraction, star,
    subcomplex_query, surgery_vertex_name, SubcomplexKind, CONE_VERTEX_NAMES,
};
pub use star::{four_cycle_cover, verify_star_ordering, StarOrderingCertificate, StarStep};

/// Small standard complexes used throughout tests and pipelines.
pub mod standard {
    use super::SimplicialComplex;

    /// Two points `{a, b}`.
    pub fn s0(a: &str, b: &str) -> SimplicialComplex {
        SimplicialComplex::new(&[a, b], &[]).unwrap()
    }

    /// Cycle graph on the given vertices in order.
    pub fn cycle(names: &[&str]) -> SimplicialComplex {
        let n = names.len();
        let edges: Vec<Vec<&str>> = (0..n).map(|i| vec![names[i], names[(i + 1) % n]]).collect();
        SimplicialComplex::new(names, &edges).unwrap()
    }

    /// Full simplex on the given vertices.
    pub fn simplex(names: &[&str]) -> SimplicialComplex {
        SimplicialComplex::new(names, &[names.to_vec()]).unwrap()
    }

    /// Boundary of the simplex on the given vertices.
    pub fn simplex_boundary(names: &[&str]) -> SimplicialComplex {
        let facets: Vec<Vec<&str>> = (0..names.len())
            .map(|skip| names.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect())
            .collect();
        SimplicialComplex::new(names, &facets).unwrap()
    }

    /// Octahedron `S⁰ ∗ S⁰ ∗ S⁰` on `{p+, p-}` for each prefix `p`.
    pub fn octahedron(prefixes: [&str; 3]) -> SimplicialComplex {
        let mut verts = Vec::new();
        let mut facets = Vec::new();
        for p in prefixes {
            verts.push(format!("{p}+"));
            verts.push(format!("{p}-"));
        }
        for mask in 0..8u32 {
            let facet: Vec<String> = prefixes
                .iter()
                .enumerate()
                .map(|(i, p)| format!("{p}{}", if mask >> i & 1 == 1 { '-' } else { '+' }))
                .collect();
            facets.push(facet);
        }
        SimplicialComplex::new(&verts, &facets).unwrap()
    }

    /// Complete bipartite graph on the given sides.
    pub fn complete_bipartite(left: &[&str], right: &[&str]) -> SimplicialComplex {
        let verts: Vec<&str> = left.iter().chain(right).copied().collect();
        let edges: Vec<Vec<&str>> = left.iter().flat_map(|&a| right.iter().map(move |&b| vec![a, b])).collect();
        SimplicialComplex::new(&verts, &edges).unwrap()
    }

    /// The 6-vertex triangulation of the real projective plane.
    pub fn rp2() -> SimplicialComplex {
        let facets = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 2],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 2],
            [5, 6, 3],
            [6, 2, 4],
        ];
        let names: Vec<String> = (1..=6).map(|i| format!("p{i}")).collect();
        let facets: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|i| format!("p{i}")).collect()).collect();
        SimplicialComplex::new(&names, &facets).unwrap()
    }
}
