//! The named example corpus shared by the test suite and the `check`
//! command: every generator-backed graph with its known invariants.

use crate::error::Result;
use crate::graph::{generator, Graph};

/// One corpus graph with the invariants that are pinned for it.
pub struct CorpusEntry {
    pub name: &'static str,
    pub params: &'static [usize],
    /// Exact rational Betti vector, when pinned.
    pub expected_betti: Option<&'static [usize]>,
    /// Evako sphere dimension, for the entries that are spheres.
    pub sphere_dim: Option<i64>,
}

impl CorpusEntry {
    pub fn graph(&self) -> Result<Graph> {
        generator(self.name, self.params)
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            format!("{}({})", self.name, ps.join(","))
        }
    }
}

/// Every named example. Betti vectors listed here are cross-checked against
/// the rank computation by the acceptance suite.
pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry { name: "complete", params: &[1], expected_betti: Some(&[1]), sphere_dim: None },
    CorpusEntry { name: "complete", params: &[3], expected_betti: Some(&[1, 0, 0]), sphere_dim: None },
    CorpusEntry { name: "complete", params: &[4], expected_betti: Some(&[1, 0, 0, 0]), sphere_dim: None },
    CorpusEntry { name: "path", params: &[5], expected_betti: Some(&[1, 0]), sphere_dim: None },
    CorpusEntry { name: "star", params: &[4], expected_betti: Some(&[1, 0]), sphere_dim: None },
    CorpusEntry { name: "cycle", params: &[4], expected_betti: Some(&[1, 1]), sphere_dim: Some(1) },
    CorpusEntry { name: "cycle", params: &[5], expected_betti: Some(&[1, 1]), sphere_dim: Some(1) },
    CorpusEntry { name: "cycle", params: &[7], expected_betti: Some(&[1, 1]), sphere_dim: Some(1) },
    CorpusEntry { name: "wheel", params: &[5], expected_betti: Some(&[1, 0, 0]), sphere_dim: None },
    CorpusEntry { name: "kite", params: &[], expected_betti: Some(&[1, 0, 0]), sphere_dim: None },
    CorpusEntry { name: "octahedron", params: &[], expected_betti: Some(&[1, 0, 1]), sphere_dim: Some(2) },
    CorpusEntry { name: "cross_polytope", params: &[3], expected_betti: Some(&[1, 0, 0, 1]), sphere_dim: Some(3) },
    CorpusEntry { name: "cube", params: &[], expected_betti: Some(&[1, 5]), sphere_dim: None },
    CorpusEntry { name: "figure_eight", params: &[], expected_betti: Some(&[1, 2]), sphere_dim: None },
    CorpusEntry { name: "moebius7", params: &[], expected_betti: Some(&[1, 1, 0]), sphere_dim: None },
    CorpusEntry { name: "torus", params: &[], expected_betti: Some(&[1, 2, 1]), sphere_dim: None },
    CorpusEntry { name: "klein", params: &[], expected_betti: Some(&[1, 1, 0]), sphere_dim: None },
    CorpusEntry { name: "rp2", params: &[], expected_betti: Some(&[1, 0, 0]), sphere_dim: None },
    CorpusEntry { name: "dunce_hat", params: &[], expected_betti: Some(&[1, 0, 0]), sphere_dim: None },
];

/// Entries whose sphere dimension is pinned.
pub fn spheres() -> impl Iterator<Item = &'static CorpusEntry> {
    CORPUS.iter().filter(|e| e.sphere_dim.is_some())
}
