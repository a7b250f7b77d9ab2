//! Whitney (clique) complexes: f-vectors, Euler characteristic,
//! f-polynomials, Barycentric refinement, skeletons, incidence signs and the
//! Stanley-Reisner product.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Result, TopoError};
use crate::graph::Graph;

pub const DEFAULT_SIMPLEX_BUDGET: usize = 100_000;

/// A finite abstract simplicial complex. Simplices are stored
/// dimension-major; each simplex is a strictly increasing vertex list, which
/// is the global orientation convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    dims: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, (usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl SimplicialComplex {
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            dims: vec![],
            index: HashMap::new(),
        }
    }

    /// Build from an explicit simplex list, checking closure under non-empty
    /// subsets and rejecting duplicates.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Vec<u32>>) -> Result<SimplicialComplex> {
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for mut s in simplices {
            if s.is_empty() {
                return Err(TopoError::InvalidGraph("empty simplex".into()));
            }
            s.sort_unstable();
            s.dedup();
            if !seen.insert(s) {
                return Err(TopoError::InvalidGraph("duplicate simplex".into()));
            }
        }
        // closure check: every codimension-1 face must be present
        for s in &seen {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if !seen.contains(&face) {
                        return Err(TopoError::InvalidGraph(format!(
                            "complex not closed under subsets: missing face {face:?} of {s:?}"
                        )));
                    }
                }
            }
        }
        let mut dims: Vec<Vec<Vec<u32>>> = vec![];
        for s in seen {
            let k = s.len() - 1;
            while dims.len() <= k {
                dims.push(vec![]);
            }
            dims[k].push(s);
        }
        Ok(Self::from_dims(dims))
    }

    /// Build from maximal simplices, closing under all non-empty subsets.
    pub fn from_facets(facets: &[Vec<u32>]) -> Result<SimplicialComplex> {
        let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for sub in 1u32..1 << f.len() {
                let s: Vec<u32> = (0..f.len())
                    .filter(|&i| sub >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                all.insert(s);
            }
        }
        Self::from_simplices(all)
    }

    fn from_dims(dims: Vec<Vec<Vec<u32>>>) -> SimplicialComplex {
        let mut index = HashMap::new();
        for (k, level) in dims.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), (k, i));
            }
        }
        SimplicialComplex { dims, index }
    }

    /// All cliques of the graph, enumerated by extending sorted cliques with
    /// larger common neighbors.
    pub fn whitney(g: &Graph) -> Result<SimplicialComplex> {
        Self::whitney_with_budget(g, DEFAULT_SIMPLEX_BUDGET)
    }

    pub fn whitney_with_budget(g: &Graph, budget: usize) -> Result<SimplicialComplex> {
        let mut dims: Vec<Vec<Vec<u32>>> = vec![];
        let mut total = 0usize;
        let verts: Vec<u32> = g.vertices().to_vec();
        let nbrs: HashMap<u32, Vec<u32>> = verts.iter().map(|&v| (v, g.neighbors(v))).collect();
        // frontier of cliques at current dimension, with their candidate
        // extension sets (neighbors of all members, larger than the max)
        let mut frontier: Vec<(Vec<u32>, Vec<u32>)> = verts
            .iter()
            .map(|&v| {
                let cand: Vec<u32> = nbrs[&v].iter().copied().filter(|&w| w > v).collect();
                (vec![v], cand)
            })
            .collect();
        while !frontier.is_empty() {
            total += frontier.len();
            if total > budget {
                return Err(TopoError::SimplexBudget(budget));
            }
            dims.push(frontier.iter().map(|(s, _)| s.clone()).collect());
            let mut next = vec![];
            for (s, cand) in &frontier {
                for (i, &v) in cand.iter().enumerate() {
                    let ncand: Vec<u32> = cand[i + 1..]
                        .iter()
                        .copied()
                        .filter(|&w| nbrs[&v].binary_search(&w).is_ok())
                        .collect();
                    let mut ns = s.clone();
                    ns.push(v);
                    next.push((ns, ncand));
                }
            }
            frontier = next;
        }
        Ok(Self::from_dims(dims))
    }

    /// Dimension of the complex; -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.dims.len() as i64 - 1
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.dims.iter().map(|l| l.len()).collect())
    }

    pub fn total_count(&self) -> usize {
        self.dims.iter().map(|l| l.len()).sum()
    }

    pub fn simplices_of_dim(&self, k: usize) -> &[Vec<u32>] {
        if k < self.dims.len() {
            &self.dims[k]
        } else {
            &[]
        }
    }

    /// All simplices in dimension-major order.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.dims.iter().flatten()
    }

    pub fn position(&self, s: &[u32]) -> Option<(usize, usize)> {
        self.index.get(s).copied()
    }

    /// Global index in dimension-major order.
    pub fn global_index(&self, s: &[u32]) -> Option<usize> {
        let (k, i) = self.position(s)?;
        Some(self.dims[..k].iter().map(|l| l.len()).sum::<usize>() + i)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// f-polynomial 1 + f_0 t + f_1 t^2 + ... as coefficient vector
    /// (constant term first).
    pub fn f_polynomial(&self) -> Vec<BigRational> {
        let mut coeffs = vec![BigRational::one()];
        for l in &self.dims {
            coeffs.push(BigRational::from(BigInt::from(l.len())));
        }
        coeffs
    }

    /// Simplices of dimension <= m.
    pub fn skeleton(&self, m: i64) -> Result<SimplicialComplex> {
        if m < 0 {
            return Err(TopoError::NegativeSkeleton);
        }
        let keep = self
            .dims
            .iter()
            .take(m as usize + 1)
            .cloned()
            .collect::<Vec<_>>();
        Ok(Self::from_dims(keep))
    }

    /// One vertex per simplex; edge iff strict containment either way.
    /// Vertices are numbered in dimension-major order.
    pub fn barycentric_refinement(&self) -> Graph {
        let simplices: Vec<&Vec<u32>> = self.all_simplices().collect();
        let n = simplices.len() as u32;
        let mut edges = vec![];
        for (i, x) in simplices.iter().enumerate() {
            for (j, y) in simplices.iter().enumerate().skip(i + 1) {
                let (small, large) = if x.len() < y.len() { (x, y) } else { (y, x) };
                if small.len() < large.len() && is_subset(small, large) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Graph::new((0..n).collect(), edges).expect("refinement graph is simple")
    }

    /// Facets: simplices not strictly contained in any other simplex.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = vec![];
        for (k, level) in self.dims.iter().enumerate() {
            for s in level {
                let mut maximal = true;
                if k + 1 < self.dims.len() {
                    'outer: for t in &self.dims[k + 1] {
                        if is_subset(s, t) {
                            maximal = false;
                            break 'outer;
                        }
                    }
                }
                if maximal {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn dump_json(&self) -> String {
        serde_json::to_string(&self.dims).expect("complex serializes")
    }
}

pub fn is_subset(small: &[u32], large: &[u32]) -> bool {
    let mut it = large.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

/// Incidence sign between sorted simplices: 0 unless y is a codimension-1
/// face of x; otherwise (-1)^(j-1) where the removed vertex is the j-th
/// (1-based) smallest of x.
pub fn incidence_sign(x: &[u32], y: &[u32]) -> i32 {
    if x.len() != y.len() + 1 || !is_subset(y, x) {
        return 0;
    }
    let j = x
        .iter()
        .position(|v| !y.contains(v))
        .expect("one vertex of x is missing from y");
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Stanley-Reisner (topological) product: vertices are pairs of simplices of
/// the two Whitney complexes, joined by componentwise containment.
pub fn stanley_reisner_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let kg = SimplicialComplex::whitney(g)?;
    let kh = SimplicialComplex::whitney(h)?;
    let xs: Vec<&Vec<u32>> = kg.all_simplices().collect();
    let ys: Vec<&Vec<u32>> = kh.all_simplices().collect();
    let ny = ys.len() as u32;
    let n = xs.len() as u32 * ny;
    let mut edges = vec![];
    let leq = |a: &[u32], b: &[u32]| a.len() <= b.len() && is_subset(a, b);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (xs[(i / ny) as usize], ys[(i % ny) as usize]);
            let (a, b) = (xs[(j / ny) as usize], ys[(j % ny) as usize]);
            if (leq(x, a) && leq(y, b)) || (leq(a, x) && leq(b, y)) {
                edges.push((i, j));
            }
        }
    }
    Graph::new((0..n).collect(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generator;
    use num_traits::Zero;

    fn whitney(name: &str, params: &[usize]) -> SimplicialComplex {
        SimplicialComplex::whitney(&generator(name, params).unwrap()).unwrap()
    }

    #[test]
    fn k3_has_seven_simplices() {
        let k = whitney("complete", &[3]);
        assert_eq!(k.total_count(), 7);
        assert_eq!(k.f_vector().0, vec![3, 3, 1]);
    }

    #[test]
    fn c4_f_vector() {
        assert_eq!(whitney("cycle", &[4]).f_vector().0, vec![4, 4]);
    }

    #[test]
    fn kite_f_vector() {
        assert_eq!(whitney("kite", &[]).f_vector().0, vec![4, 5, 2]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(whitney("octahedron", &[]).euler_characteristic(), 2);
        for n in 1..6 {
            assert_eq!(whitney("complete", &[n]).euler_characteristic(), 1);
        }
        assert_eq!(whitney("moebius7", &[]).euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::empty().euler_characteristic(), 0);
    }

    #[test]
    fn moebius7_counts() {
        assert_eq!(whitney("moebius7", &[]).f_vector().0, vec![7, 14, 7]);
    }

    #[test]
    fn f_polynomial_matches_euler() {
        // chi(G) = 1 - f_G(-1) on every corpus-style graph here
        for (name, params) in [
            ("cycle", vec![4]),
            ("complete", vec![1]),
            ("kite", vec![]),
            ("octahedron", vec![]),
            ("wheel", vec![5]),
        ] {
            let k = whitney(name, &params);
            let coeffs = k.f_polynomial();
            let mut at_minus_one = BigRational::zero();
            let mut sign = BigRational::one();
            for c in &coeffs {
                at_minus_one += c * &sign;
                sign = -sign;
            }
            let chi = BigRational::from(num_bigint::BigInt::from(k.euler_characteristic()));
            assert_eq!(BigRational::one() - at_minus_one, chi);
        }
        let c4 = whitney("cycle", &[4]);
        let coeffs = c4.f_polynomial();
        assert_eq!(
            coeffs,
            vec![
                BigRational::one(),
                BigRational::from(num_bigint::BigInt::from(4)),
                BigRational::from(num_bigint::BigInt::from(4)),
            ]
        );
    }

    #[test]
    fn refinement_of_k3_is_wheel() {
        let k = whitney("complete", &[3]);
        let r = k.barycentric_refinement();
        assert_eq!(r.n(), 7);
        // 6 vertex-edge, 3 vertex-triangle and 3 edge-triangle incidences,
        // the same size profile as the 7-vertex wheel
        assert_eq!(r.edge_count(), 12);
        // refinement has chi 1 like K3
        let rk = SimplicialComplex::whitney(&r).unwrap();
        assert_eq!(rk.euler_characteristic(), 1);
        // hub = the triangle simplex, adjacent to all 6 others
        assert!(r.vertices().iter().any(|&v| r.degree(v) == 6));
    }

    #[test]
    fn refinement_of_c4_is_c8() {
        let r = whitney("cycle", &[4]).barycentric_refinement();
        assert_eq!(r.n(), 8);
        assert_eq!(r.edge_count(), 8);
        assert!(r.vertices().iter().all(|&v| r.degree(v) == 2));
        assert!(r.is_connected());
    }

    #[test]
    fn refinement_preserves_euler_characteristic() {
        for (name, params) in [("kite", vec![]), ("octahedron", vec![]), ("cycle", vec![5])] {
            let k = whitney(name, &params);
            let rk = SimplicialComplex::whitney(&k.barycentric_refinement()).unwrap();
            assert_eq!(rk.euler_characteristic(), k.euler_characteristic());
        }
    }

    /// Stirling partition numbers S(n, k), the independent oracle for the
    /// refinement f-vector: f_j(G1) = sum_k S(k+1, j+1) f_k(G).
    fn stirling2(n: usize, k: usize) -> u64 {
        if n == 0 && k == 0 {
            return 1;
        }
        if n == 0 || k == 0 {
            return 0;
        }
        k as u64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    }

    #[test]
    fn refinement_f_vector_matches_stirling_oracle() {
        for (name, params) in [("kite", vec![]), ("cycle", vec![6]), ("complete", vec![4])] {
            let k = whitney(name, &params);
            let f = k.f_vector().0;
            let rf = SimplicialComplex::whitney(&k.barycentric_refinement())
                .unwrap()
                .f_vector()
                .0;
            for (j, &fj) in rf.iter().enumerate() {
                // chains of length j+1 ending in a (k+1)-set are ordered set
                // partitions: (j+1)! S(k+1, j+1) of them
                let fact: u64 = (1..=(j as u64 + 1)).product();
                let expect: u64 = f
                    .iter()
                    .enumerate()
                    .map(|(kk, &fk)| fact * stirling2(kk + 1, j + 1) * fk as u64)
                    .sum();
                assert_eq!(fj as u64, expect, "dim {j} of refinement of {name}");
            }
        }
    }

    #[test]
    fn skeleton_cases() {
        let k = whitney("complete", &[3]);
        let sk = k.skeleton(1).unwrap();
        assert_eq!(sk.total_count(), 6);
        assert_eq!(k.skeleton(2).unwrap(), k);
        assert_eq!(k.skeleton(0).unwrap().f_vector().0, vec![3]);
        assert!(k.skeleton(-1).is_err());
    }

    #[test]
    fn incidence_signs_match_convention() {
        assert_eq!(incidence_sign(&[1, 2, 3], &[1, 3]), -1);
        assert_eq!(incidence_sign(&[1, 2, 3], &[2, 3]), 1);
        assert_eq!(incidence_sign(&[1, 2, 3], &[1, 2]), 1);
        assert_eq!(incidence_sign(&[1, 2, 3], &[1, 2, 3]), 0);
        assert_eq!(incidence_sign(&[1, 2, 3], &[4]), 0);
    }

    #[test]
    fn boundary_of_boundary_sign_identity() {
        // for every x > z of codimension 2: sum_y sign(x,y) sign(y,z) = 0
        for (name, params) in [("octahedron", vec![]), ("kite", vec![]), ("complete", vec![4])] {
            let k = whitney(name, &params);
            for dim in 2..=k.dim() as usize {
                for x in k.simplices_of_dim(dim) {
                    for z in k.simplices_of_dim(dim - 2) {
                        if !is_subset(z, x) {
                            continue;
                        }
                        let total: i32 = k
                            .simplices_of_dim(dim - 1)
                            .iter()
                            .map(|y| incidence_sign(x, y) * incidence_sign(y, z))
                            .sum();
                        assert_eq!(total, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn closure_is_checked() {
        assert!(SimplicialComplex::from_simplices([vec![1, 2]]).is_err());
        assert!(SimplicialComplex::from_simplices([vec![1], vec![2], vec![1, 2]]).is_ok());
    }

    #[test]
    fn closure_holds_for_whitney_complexes() {
        for (name, params) in [("octahedron", vec![]), ("kite", vec![])] {
            let k = whitney(name, &params);
            let all: Vec<Vec<u32>> = k.all_simplices().cloned().collect();
            SimplicialComplex::from_simplices(all).unwrap();
        }
    }

    #[test]
    fn stanley_reisner_unit_is_refinement() {
        let g = generator("cycle", &[4]).unwrap();
        let k1 = generator("complete", &[1]).unwrap();
        let p = stanley_reisner_product(&k1, &g).unwrap();
        let r = SimplicialComplex::whitney(&g).unwrap().barycentric_refinement();
        assert_eq!(p.n(), r.n());
        assert_eq!(p.edge_count(), r.edge_count());
    }

    #[test]
    fn simplex_budget_is_enforced() {
        let g = generator("complete", &[18]).unwrap();
        assert!(SimplicialComplex::whitney_with_budget(&g, 1000).is_err());
    }
}
