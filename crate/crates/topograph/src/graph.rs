//! Finite simple graphs with ordered vertex labels, induced subgraphs, unit
//! spheres, graph operations and the generator catalog.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Result, TopoError};

/// A finite simple graph. Vertex labels are stored strictly increasing; the
/// stored order is the canonical order used for orientation downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<u32>,
    edges: BTreeSet<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Build a graph from arbitrary labels and unordered edge pairs,
    /// validating the simple-graph invariants.
    pub fn new(vertices: Vec<u32>, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Graph> {
        let vset: BTreeSet<u32> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return Err(TopoError::InvalidGraph("duplicate vertex label".into()));
        }
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(TopoError::InvalidGraph(format!("self-loop at {a}")));
            }
            if !vset.contains(&a) {
                return Err(TopoError::UnknownVertex(a));
            }
            if !vset.contains(&b) {
                return Err(TopoError::UnknownVertex(b));
            }
            es.insert((a.min(b), a.max(b)));
        }
        let mut vs: Vec<u32> = vset.into_iter().collect();
        vs.sort_unstable();
        Ok(Graph {
            vertices: vs,
            edges: es,
        })
    }

    /// The empty graph.
    pub fn empty() -> Graph {
        Graph {
            vertices: vec![],
            edges: BTreeSet::new(),
        }
    }

    /// Relabel vertices to 0..n-1 preserving the stored (increasing) order.
    pub fn canonical_labels(&self) -> Graph {
        let index: BTreeMap<u32, u32> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        Graph {
            vertices: (0..self.vertices.len() as u32).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (index[&a], index[&b]))
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Induced subgraph on a label set, relabeled to 0..k-1 in input order.
    pub fn induced_subgraph(&self, s: &BTreeSet<u32>) -> Result<Graph> {
        for &v in s {
            if !self.has_vertex(v) {
                return Err(TopoError::UnknownVertex(v));
            }
        }
        let g = Graph {
            vertices: s.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| s.contains(a) && s.contains(b))
                .copied()
                .collect(),
        };
        Ok(g.canonical_labels())
    }

    /// Same as `induced_subgraph` but keeping the original labels.
    pub fn induced_subgraph_keep_labels(&self, s: &BTreeSet<u32>) -> Result<Graph> {
        for &v in s {
            if !self.has_vertex(v) {
                return Err(TopoError::UnknownVertex(v));
            }
        }
        Ok(Graph {
            vertices: s.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| s.contains(a) && s.contains(b))
                .copied()
                .collect(),
        })
    }

    /// The unit sphere S(v): induced subgraph on the neighbors of v.
    pub fn unit_sphere(&self, v: u32) -> Result<Graph> {
        if !self.has_vertex(v) {
            return Err(TopoError::UnknownVertex(v));
        }
        let nbrs: BTreeSet<u32> = self.neighbors(v).into_iter().collect();
        self.induced_subgraph_keep_labels(&nbrs)
    }

    /// G \ v.
    pub fn remove_vertex(&self, v: u32) -> Result<Graph> {
        if !self.has_vertex(v) {
            return Err(TopoError::UnknownVertex(v));
        }
        let rest: BTreeSet<u32> = self.vertices.iter().copied().filter(|&w| w != v).collect();
        self.induced_subgraph_keep_labels(&rest)
    }

    /// Edge complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                if !self.edges.contains(&(a, b)) {
                    edges.insert((a, b));
                }
            }
        }
        Graph {
            vertices: self.vertices.clone(),
            edges,
        }
        .canonical_labels()
    }

    /// Disjoint union; the right operand is shifted past the left.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let a = self.canonical_labels();
        let b = other.canonical_labels();
        let off = a.n() as u32;
        let mut vertices: Vec<u32> = a.vertices.clone();
        vertices.extend(b.vertices.iter().map(|&v| v + off));
        let mut edges = a.edges.clone();
        edges.extend(b.edges.iter().map(|&(x, y)| (x + off, y + off)));
        Graph { vertices, edges }
    }

    /// Zykov join: disjoint union plus all cross edges.
    pub fn zykov_join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        let na = self.n() as u32;
        let nb = other.n() as u32;
        for x in 0..na {
            for y in na..na + nb {
                g.edges.insert((x, y));
            }
        }
        g
    }

    /// Shannon (strong) product. Vertex (x,y) maps to label x*|H|+y.
    pub fn shannon_product(&self, other: &Graph) -> Graph {
        let a = self.canonical_labels();
        let b = other.canonical_labels();
        let nb = b.n() as u32;
        let vertices: Vec<u32> = (0..a.n() as u32 * nb).collect();
        let mut edges = BTreeSet::new();
        for (x, y) in vertices.iter().flat_map(|&p| {
            vertices
                .iter()
                .filter(move |&&q| q > p)
                .map(move |&q| (p, q))
        }) {
            let (x0, x1) = (x / nb, x % nb);
            let (y0, y1) = (y / nb, y % nb);
            let first = x0 == y0 || a.has_edge(x0, y0);
            let second = x1 == y1 || b.has_edge(x1, y1);
            if first && second {
                edges.insert((x, y));
            }
        }
        Graph { vertices, edges }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edges.len() == n * (n - 1) / 2
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<u32>> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut comps = vec![];
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            while let Some(w) = stack.pop() {
                if !comp.insert(w) {
                    continue;
                }
                stack.extend(self.neighbors(w));
            }
            seen.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(s)?;
        Graph::new(raw.vertices, raw.edges)
    }
}

/// A directed graph; at most one arc per ordered pair, no self-arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<u32>,
    arcs: BTreeSet<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    vertices: Vec<u32>,
    arcs: Vec<(u32, u32)>,
}

impl Digraph {
    pub fn new(vertices: Vec<u32>, arcs: impl IntoIterator<Item = (u32, u32)>) -> Result<Digraph> {
        let vset: BTreeSet<u32> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return Err(TopoError::InvalidGraph("duplicate vertex label".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in arcs {
            if a == b {
                return Err(TopoError::InvalidGraph(format!("self-arc at {a}")));
            }
            if !vset.contains(&a) {
                return Err(TopoError::UnknownVertex(a));
            }
            if !vset.contains(&b) {
                return Err(TopoError::UnknownVertex(b));
            }
            set.insert((a, b));
        }
        let mut vs: Vec<u32> = vset.into_iter().collect();
        vs.sort_unstable();
        Ok(Digraph {
            vertices: vs,
            arcs: set,
        })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, a: u32, b: u32) -> bool {
        self.arcs.contains(&(a, b))
    }

    /// Underlying simple graph: edge wherever at least one arc exists.
    pub fn underlying(&self) -> Graph {
        Graph::new(self.vertices.clone(), self.arcs.iter().copied())
            .expect("underlying graph is simple")
    }

    pub fn from_json(s: &str) -> Result<Digraph> {
        let raw: DigraphJson = serde_json::from_str(s)?;
        Digraph::new(raw.vertices, raw.arcs)
    }
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(TopoError::InvalidParams(format!(
            "cycle needs n >= 4 (C3 = K3 is a simplex, use `complete 3`); got {n}"
        )));
    }
    Graph::new(
        (0..n as u32).collect(),
        (0..n as u32).map(|i| (i, (i + 1) % n as u32)),
    )
}

fn complete(n: usize) -> Result<Graph> {
    let vs: Vec<u32> = (0..n as u32).collect();
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    Graph::new(vs, edges)
}

fn path(n: usize) -> Result<Graph> {
    Graph::new(
        (0..n as u32).collect(),
        (1..n as u32).map(|i| (i - 1, i)),
    )
}

fn star(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(TopoError::InvalidParams("star needs n >= 1 leaves".into()));
    }
    Graph::new((0..=n as u32).collect(), (1..=n as u32).map(|i| (0, i)))
}

fn wheel(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(TopoError::InvalidParams("wheel rim needs n >= 4".into()));
    }
    let mut edges: Vec<(u32, u32)> = (0..n as u32)
        .map(|i| (1 + i, 1 + (i + 1) % n as u32))
        .collect();
    edges.extend((1..=n as u32).map(|i| (0, i)));
    Graph::new((0..=n as u32).collect(), edges)
}

fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() || parts.iter().any(|&p| p == 0) {
        return Err(TopoError::InvalidParams(
            "multipartite parts must be nonempty".into(),
        ));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = vec![0usize; n];
    let mut idx = 0;
    for (p, &sz) in parts.iter().enumerate() {
        for _ in 0..sz {
            part_of[idx] = p;
            idx += 1;
        }
    }
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| part_of[a as usize] != part_of[b as usize])
        .collect();
    Graph::new((0..n as u32).collect(), edges)
}

/// Two triangles sharing an edge.
fn kite() -> Graph {
    Graph::new(vec![0, 1, 2, 3], [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// 12-vertex triangulation of the 2-torus whose clique complex is the
/// surface itself: every unit sphere is an induced cycle, so the graph
/// carries exactly the 24 surface triangles and nothing more. Found by
/// simulated annealing over edge flips and verified exactly (all links
/// induced 6-cycles, Betti vector (1,2,1)). No smaller such graph exists:
/// on 9 vertices a closed-surface graph with Euler characteristic 0 would
/// have to be 6-regular with 18 triangles, and none of the four 6-regular
/// 9-vertex graphs qualifies; searches on 10 and 11 vertices also come up
/// empty.
pub const TORUS_EDGES: &[(u32, u32)] = &[
    (0, 5), (0, 6), (0, 7), (0, 8), (0, 10), (0, 11), (1, 3), (1, 4), (1, 5),
    (1, 7), (1, 10), (1, 11), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
    (3, 5), (3, 6), (3, 9), (3, 11), (4, 7), (4, 8), (4, 9), (4, 10), (5, 8),
    (5, 10), (6, 7), (6, 9), (6, 10), (7, 11), (8, 9), (8, 11), (9, 10),
    (9, 11),
];

fn torus() -> Graph {
    Graph::new((0..12).collect(), TORUS_EDGES.iter().copied()).unwrap()
}

/// 11-vertex projective plane with the same clique-complex property: all
/// unit spheres are induced cycles and the Betti vector is (1,0,0) over the
/// rationals. Found by the same annealing search; 7 to 10 vertices admit no
/// such graph (degree counting rules out 7 and 8 outright).
pub const PROJECTIVE_PLANE_EDGES: &[(u32, u32)] = &[
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 7), (0, 9), (1, 3), (1, 5), (1, 6),
    (1, 9), (2, 6), (2, 7), (2, 8), (2, 9), (3, 4), (3, 6), (3, 8), (3, 10),
    (4, 5), (4, 7), (4, 10), (5, 6), (5, 7), (5, 9), (5, 10), (6, 7), (6, 8),
    (8, 9), (8, 10), (9, 10),
];

fn projective_plane() -> Graph {
    Graph::new((0..11).collect(), PROJECTIVE_PLANE_EDGES.iter().copied()).unwrap()
}

/// 14-vertex Klein bottle, again with all unit spheres induced cycles;
/// Betti vector (1,1,0). Discovered by annealing; a glide-reflection
/// quotient of the triangular lattice gives an independent 16-vertex
/// construction with the same invariants.
pub const KLEIN_BOTTLE_EDGES: &[(u32, u32)] = &[
    (0, 4), (0, 7), (0, 9), (0, 11), (0, 12), (0, 13), (1, 2), (1, 9),
    (1, 10), (1, 11), (1, 13), (2, 3), (2, 5), (2, 8), (2, 9), (2, 13),
    (3, 4), (3, 5), (3, 6), (3, 7), (3, 9), (3, 12), (4, 6), (4, 9), (4, 13),
    (5, 8), (5, 10), (5, 11), (5, 12), (6, 7), (6, 8), (6, 13), (7, 8),
    (7, 11), (7, 12), (8, 11), (8, 13), (9, 11), (10, 11), (10, 12),
    (10, 13), (12, 13),
];

fn klein_bottle() -> Graph {
    Graph::new((0..14).collect(), KLEIN_BOTTLE_EDGES.iter().copied()).unwrap()
}

/// Facets of an 11-vertex dunce hat complex: a triangulated 12-gon disk
/// (inner hexagon 4..9 and centre 10) whose boundary runs around the circle
/// 0 1 2 3 twice forward and once backward. The four boundary edges each
/// bound three triangles, the singular circle of the dunce hat.
pub const DUNCE_HAT_FACETS: &[[u32; 3]] = &[
    [0, 1, 4], [0, 1, 6], [0, 1, 9], [0, 3, 5], [0, 3, 7], [0, 3, 8],
    [0, 4, 9], [0, 5, 6], [0, 7, 8], [1, 2, 4], [1, 2, 6], [1, 2, 9],
    [2, 3, 5], [2, 3, 7], [2, 3, 8], [2, 4, 5], [2, 6, 7], [2, 8, 9],
    [4, 5, 10], [4, 9, 10], [5, 6, 10], [6, 7, 10], [7, 8, 10], [8, 9, 10],
];

/// Dunce hat graph: the Barycentric refinement of the facet complex above,
/// whose clique complex reproduces the dunce hat exactly. It has the
/// rational cohomology of a point but no vertex with a contractible unit
/// sphere, hence is not contractible in the removal sense.
fn dunce_hat() -> Graph {
    let facets: Vec<Vec<u32>> = DUNCE_HAT_FACETS.iter().map(|f| f.to_vec()).collect();
    crate::complex::SimplicialComplex::from_facets(&facets)
        .expect("facet list is simplicial")
        .barycentric_refinement()
}

/// 1-skeleton of the 3-cube: triangle-free, so it is its own clique complex.
fn cube() -> Graph {
    let edges = (0u32..8).flat_map(|a| {
        (0..3).filter_map(move |bit| {
            let b = a ^ (1 << bit);
            (a < b).then_some((a, b))
        })
    });
    Graph::new((0..8).collect(), edges).unwrap()
}

/// Two 4-cycles sharing a single vertex.
fn figure_eight() -> Graph {
    Graph::new(
        (0..7).collect(),
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 0),
        ],
    )
    .unwrap()
}

/// Generator catalog. Every named example used in tests is constructed here.
pub fn generator(name: &str, params: &[usize]) -> Result<Graph> {
    let one = |what: &str| -> Result<usize> {
        params
            .first()
            .copied()
            .ok_or_else(|| TopoError::InvalidParams(format!("{what} needs one parameter")))
    };
    match name {
        "cycle" => cycle(one("cycle")?),
        "complete" => complete(one("complete")?),
        "path" => path(one("path")?),
        "star" => star(one("star")?),
        "wheel" => wheel(one("wheel")?),
        "complete_multipartite" => complete_multipartite(params),
        "cross_polytope" => {
            let d = one("cross_polytope")?;
            complete_multipartite(&vec![2; d + 1])
        }
        "kite" => Ok(kite()),
        "octahedron" => complete_multipartite(&[2, 2, 2]),
        "torus" | "torus_9" => Ok(torus()),
        "rp2" | "projective_plane" | "rp2_6" => Ok(projective_plane()),
        "klein" | "klein_bottle" | "klein_8" => Ok(klein_bottle()),
        "dunce_hat" | "dunce_hat_8" => Ok(dunce_hat()),
        "cube" => Ok(cube()),
        "figure_eight" => Ok(figure_eight()),
        "moebius7" => Ok(cycle(7)?.complement()),
        _ => Err(TopoError::UnknownGenerator(name.to_string())),
    }
}

/// Divisibility graph on 2..n: edge (a,b) iff a divides b or b divides a.
pub fn mertens_graph(n: u64) -> Result<Graph> {
    if n < 2 {
        return Err(TopoError::InvalidParams("mertens graph needs n >= 2".into()));
    }
    let vs: Vec<u32> = (2..=n as u32).collect();
    let mut edges = vec![];
    for &a in &vs {
        for &b in &vs {
            if b > a && b % a == 0 {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::new(vs, edges)?.canonical_labels())
}
