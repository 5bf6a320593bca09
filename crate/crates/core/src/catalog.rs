//! Built-in matroids with golden Whitney numbers.

use crate::input::{MatroidSpec, ScalarInput};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: MatroidSpec,
    /// `(|L^0|, ..., |L^r|)`.
    pub whitney: Vec<usize>,
    pub graphic: bool,
}

fn uniform(name: &'static str, description: &'static str, n: usize, r: usize, w: &[usize]) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        spec: MatroidSpec::Uniform { n, r },
        whitney: w.to_vec(),
        graphic: false,
    }
}

fn complete_graph(k: u64) -> Vec<[u64; 2]> {
    (1..=k)
        .flat_map(|u| (u + 1..=k).map(move |v| [u, v]))
        .collect()
}

/// The seven nonzero 0/1 vectors of length 3, as columns.
fn binary_points(field: &str) -> MatroidSpec {
    let cols = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ];
    MatroidSpec::Linear {
        field: field.to_string(),
        matrix: (0..3)
            .map(|r| cols.iter().map(|c| ScalarInput::Int(c[r])).collect())
            .collect(),
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        uniform("u23", "uniform U(2,3)", 3, 2, &[1, 3, 1]),
        uniform("u24", "uniform U(2,4)", 4, 2, &[1, 4, 1]),
        uniform("u34", "uniform U(3,4)", 4, 3, &[1, 4, 6, 1]),
        uniform("u35", "uniform U(3,5)", 5, 3, &[1, 5, 10, 1]),
        uniform("u36", "uniform U(3,6)", 6, 3, &[1, 6, 15, 1]),
        uniform("b3", "Boolean matroid on 3 elements", 3, 3, &[1, 3, 3, 1]),
        uniform("b4", "Boolean matroid on 4 elements", 4, 4, &[1, 4, 6, 4, 1]),
        CatalogEntry {
            name: "k4",
            description: "cycle matroid of K4",
            spec: MatroidSpec::Graphic {
                edges: complete_graph(4),
            },
            whitney: vec![1, 6, 7, 1],
            graphic: true,
        },
        CatalogEntry {
            name: "k5",
            description: "cycle matroid of K5",
            spec: MatroidSpec::Graphic {
                edges: complete_graph(5),
            },
            whitney: vec![1, 10, 25, 15, 1],
            graphic: true,
        },
        CatalogEntry {
            name: "fano",
            description: "Fano plane over GF(2)",
            spec: binary_points("GF(2)"),
            whitney: vec![1, 7, 7, 1],
            graphic: false,
        },
        CatalogEntry {
            name: "nonfano",
            description: "non-Fano configuration over Q",
            spec: binary_points("Q"),
            whitney: vec![1, 7, 9, 1],
            graphic: false,
        },
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
