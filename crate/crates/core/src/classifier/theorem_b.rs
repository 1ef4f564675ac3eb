use serde::Serialize;

use super::bb::{bb_morse_classify, LinkTable};
use super::report::FinitenessReport;
use crate::error::{Error, Result};
use crate::homology::HomologyResult;
use crate::simplicial::standard::{cycle, octahedron, s0};
use crate::simplicial::{join, SimplicialComplex};

#[derive(Clone, Debug, Serialize)]
pub struct FactorDescriptor {
    pub group: String,
    pub description: String,
    /// Ascending and descending links of the factor's Morse function.
    pub link: String,
    pub link_sphere_dim: usize,
}

fn factor(i: usize) -> FactorDescriptor {
    let (description, link) = match i {
        1 => ("free group of rank 2 acting on the 4-valent tree, exponent-sum map", "S^0: two points"),
        2 => ("branched cover of K_Γ for Γ = K_{3,3}, with links S^1", "S^1: a 4-cycle"),
        _ => ("hyperbolic CAT(0) cube group with links S^2", "S^2: the octahedron"),
    };
    FactorDescriptor {
        group: format!("G{i}"),
        description: description.into(),
        link: link.into(),
        link_sphere_dim: i - 1,
    }
}

fn factor_link(i: usize, tag: &str) -> SimplicialComplex {
    match i {
        1 => s0(&format!("{tag}a"), &format!("{tag}b")),
        2 => {
            let names: Vec<String> = (0..4).map(|k| format!("{tag}{k}")).collect();
            cycle(&names.iter().map(String::as_str).collect::<Vec<_>>())
        }
        _ => {
            let p: Vec<String> = ["x", "y", "z"].iter().map(|c| format!("{tag}{c}")).collect();
            octahedron([&p[0], &p[1], &p[2]])
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremB {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub factors: Vec<FactorDescriptor>,
    pub morse: String,
    pub predicted_sphere_dim: usize,
    pub rank_bound: usize,
    pub link_vertices: usize,
    pub link_top_cells: usize,
    pub homology: HomologyResult,
    /// Homology is `Z` in degree `n − 1` and zero elsewhere through `n + 1`.
    pub concentrated: bool,
    pub report: FinitenessReport,
}

/// The product `G₃^l × G_m` with `l = ⌊n/3⌋`, `m = n mod 3`, and a check
/// that the join of its factor links has the homology of `S^{n−1}`.
pub fn theorem_b_calculator(n: usize) -> Result<TheoremB> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let (l, m) = (n / 3, n % 3);
    let mut kinds = vec![3; l];
    if m > 0 {
        kinds.push(m);
    }
    let factors: Vec<FactorDescriptor> = kinds.iter().map(|&i| factor(i)).collect();
    let link =
        kinds.iter().enumerate().map(|(k, &i)| factor_link(i, &format!("f{k}."))).reduce(|a, b| join(&a, &b)).unwrap();
    let top = link.dim().max(0) as usize;
    let table = LinkTable::from_links("all", &link, &link, n + 1);
    let homology = table.ascending.clone();
    let concentrated = (-1..=n as i64 + 1).all(|d| {
        let g = homology.group(d);
        if d == n as i64 - 1 {
            homology.betti(d) == 1 && homology.torsion(d).is_empty()
        } else {
            g.is_none_or(|g| g.is_zero())
        }
    });
    let report = bb_morse_classify(&[table], None)?;
    Ok(TheoremB {
        n,
        l,
        m,
        morse: "sum of the factor Morse functions on the product complex".into(),
        predicted_sphere_dim: n - 1,
        rank_bound: kinds.len(),
        link_vertices: link.num_vertices(),
        link_top_cells: link.simplices_of_dim(top).len(),
        factors,
        homology,
        concentrated,
        report,
    })
}
