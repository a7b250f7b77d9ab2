//! Alexandrov topology on the simplex set of a complex: stars and cores,
//! open/closed sets, delta sets obtained by restricting the exterior
//! derivative, cohomology of open sets, the fusion inequality, and the
//! topological (covering) dimension.
//!
//! A subset of simplices is closed when it is closed under taking faces and
//! open when its complement is closed (equivalently, when it is closed
//! under taking cofaces).  Open sets are no longer simplicial complexes,
//! but the exterior derivative restricts to them with d² = 0 intact, so
//! they still carry a cohomology.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{incidence_sign, is_subset, SimplicialComplex};
use crate::error::{Result, TopoError};
use crate::linalg::{rat, SparseMatrix};

/// Default simplex-count cap below which [`topological_dimension`] also
/// verifies the cover characterization by brute force.
pub const DEFAULT_DIMENSION_VERIFY_CAP: usize = 12;

/// A set of simplices of a host complex, stored as global simplex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSet {
    pub members: BTreeSet<usize>,
}

impl SimplexSet {
    pub fn new(host: &SimplicialComplex, simplices: &[Vec<u32>]) -> Result<SimplexSet> {
        let mut members = BTreeSet::new();
        for s in simplices {
            let idx = host
                .global_index(s)
                .ok_or_else(|| TopoError::UnknownSimplex(s.clone()))?;
            members.insert(idx);
        }
        Ok(SimplexSet { members })
    }

    pub fn from_indices(host: &SimplicialComplex, indices: impl IntoIterator<Item = usize>) -> Result<SimplexSet> {
        let members: BTreeSet<usize> = indices.into_iter().collect();
        if members.iter().any(|&i| i >= host.total_count()) {
            return Err(TopoError::InvalidGraph("simplex index out of range".into()));
        }
        Ok(SimplexSet { members })
    }

    pub fn full(host: &SimplicialComplex) -> SimplexSet {
        SimplexSet {
            members: (0..host.total_count()).collect(),
        }
    }

    pub fn complement(&self, host: &SimplicialComplex) -> SimplexSet {
        SimplexSet {
            members: (0..host.total_count())
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, host: &SimplicialComplex, s: &[u32]) -> bool {
        host.global_index(s).is_some_and(|i| self.members.contains(&i))
    }

    /// The member simplices as vertex lists.
    pub fn simplices<'a>(&'a self, host: &'a SimplicialComplex) -> Vec<&'a Vec<u32>> {
        let all: Vec<&Vec<u32>> = host.all_simplices().collect();
        self.members.iter().map(|&i| all[i]).collect()
    }

    /// Alternating count Σ (−1)^dim over members; additive under disjoint
    /// union of simplex sets.
    pub fn euler_characteristic(&self, host: &SimplicialComplex) -> i64 {
        self.simplices(host)
            .iter()
            .map(|s| if (s.len() - 1) % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// JSON form: {"members": [[sorted vertices], ...]}.
    pub fn to_json(&self, host: &SimplicialComplex) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            members: Vec<&'a Vec<u32>>,
        }
        serde_json::to_string(&Wire {
            members: self.simplices(host),
        })
        .expect("vertex lists serialize")
    }

    pub fn from_json(host: &SimplicialComplex, text: &str) -> Result<SimplexSet> {
        #[derive(serde::Deserialize)]
        struct Wire {
            members: Vec<Vec<u32>>,
        }
        let wire: Wire = serde_json::from_str(text)?;
        let members: Vec<Vec<u32>> = wire
            .members
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        SimplexSet::new(host, &members)
    }
}

/// The star U(x): all simplices containing x, including x itself.  Always
/// an open set; the stars form a basis of the Alexandrov topology.
pub fn star(host: &SimplicialComplex, x: &[u32]) -> Result<SimplexSet> {
    host.global_index(x)
        .ok_or_else(|| TopoError::UnknownSimplex(x.to_vec()))?;
    let indices = host
        .all_simplices()
        .enumerate()
        .filter(|(_, y)| is_subset(x, y))
        .map(|(i, _)| i);
    SimplexSet::from_indices(host, indices)
}

/// The core C(x): all non-empty subsets of x.  Always a closed set.
pub fn core(host: &SimplicialComplex, x: &[u32]) -> Result<SimplexSet> {
    host.global_index(x)
        .ok_or_else(|| TopoError::UnknownSimplex(x.to_vec()))?;
    let indices = host
        .all_simplices()
        .enumerate()
        .filter(|(_, y)| is_subset(y, x))
        .map(|(i, _)| i);
    SimplexSet::from_indices(host, indices)
}

/// Closed means face-closed: every face of a member is a member.
pub fn is_closed(host: &SimplicialComplex, s: &SimplexSet) -> bool {
    let all: Vec<&Vec<u32>> = host.all_simplices().collect();
    s.members.iter().all(|&i| {
        let x = all[i];
        if x.len() == 1 {
            return true;
        }
        (0..x.len()).all(|j| {
            let mut face = x.clone();
            face.remove(j);
            s.contains(host, &face)
        })
    })
}

/// Open means coface-closed, equivalently the complement is closed.
pub fn is_open(host: &SimplicialComplex, s: &SimplexSet) -> bool {
    is_closed(host, &s.complement(host))
}

/// A delta set: labelled elements with dimensions, plus a degree-raising
/// derivative with d² = 0.  The symmetric Dirac matrix is d + dᵀ.
#[derive(Clone, Debug)]
pub struct DeltaSet {
    /// One (dimension, vertex list) pair per element, grouped by dimension.
    pub elements: Vec<(usize, Vec<u32>)>,
    /// Full n×n derivative: d[i][j] ≠ 0 only when element j is a facet of
    /// element i one dimension up.
    pub d: SparseMatrix,
    /// Top dimension of the host complex; Betti vectors are padded to this
    /// length because empty dimension classes are part of the data.
    pub host_dim: usize,
}

impl DeltaSet {
    pub fn dirac(&self) -> SparseMatrix {
        self.d.add(&self.d.transpose())
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d.mul(&self.d).is_zero_matrix()
    }

    /// The block of d mapping dimension-k elements to dimension-(k+1)
    /// elements.
    fn block(&self, k: usize) -> SparseMatrix {
        let rows: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.elements[i].0 == k + 1)
            .collect();
        let cols: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.elements[i].0 == k)
            .collect();
        let mut m = SparseMatrix::zero(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                let v = self.d.get(i, j);
                if !num_traits::Zero::is_zero(&v) {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Human/JSON dump: elements with dimensions plus matrix triplets.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (dim, verts) in &self.elements {
            out.push_str(&format!("{} {:?}\n", dim, verts));
        }
        out.push_str(&self.d.dump_triplets());
        out
    }
}

/// Restricts the host's exterior derivative to an open or closed set of
/// simplices.  For any other set the restriction would break d² = 0, so it
/// is rejected.
pub fn delta_from_simplex_set(host: &SimplicialComplex, s: &SimplexSet) -> Result<DeltaSet> {
    if !is_open(host, s) && !is_closed(host, s) {
        return Err(TopoError::NotOpenOrClosed);
    }
    let all: Vec<&Vec<u32>> = host.all_simplices().collect();
    let members: Vec<usize> = s.members.iter().copied().collect();
    let elements: Vec<(usize, Vec<u32>)> = members
        .iter()
        .map(|&i| (all[i].len() - 1, all[i].clone()))
        .collect();
    let n = elements.len();
    let mut d = SparseMatrix::zero(n, n);
    for (r, (dr, xr)) in elements.iter().enumerate() {
        for (c, (dc, xc)) in elements.iter().enumerate() {
            if *dr == dc + 1 && is_subset(xc, xr) {
                d.set(r, c, rat(incidence_sign(xr, xc) as i64));
            }
        }
    }
    Ok(DeltaSet {
        elements,
        d,
        host_dim: host.dim().max(0) as usize,
    })
}

/// Betti vector of a delta set: b_k = n_k − rank d_k − rank d_{k−1} over
/// the rationals, one entry per host dimension class (empty classes give
/// zero entries).
pub fn betti_delta(ds: &DeltaSet) -> Vec<usize> {
    (0..=ds.host_dim)
        .map(|k| {
            let n_k = ds.elements.iter().filter(|(d, _)| *d == k).count();
            let up = ds.block(k).rank();
            let down = if k == 0 { 0 } else { ds.block(k - 1).rank() };
            n_k - up - down
        })
        .collect()
}

/// Fusion inequality report for an open-closed partition G = U ⊔ K.
#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub betti_open: Vec<usize>,
    pub betti_closed: Vec<usize>,
    pub betti_host: Vec<usize>,
    pub chi_open: i64,
    pub chi_closed: i64,
    pub chi_host: i64,
    pub betti_dominates: bool,
    pub chi_additive: bool,
    pub passes: bool,
}

/// Checks b(U) + b(K) ≥ b(G) componentwise and χ(U) + χ(K) = χ(G) for the
/// partition of the host into a closed set and its open complement.
pub fn fusion_check(host: &SimplicialComplex, closed: &SimplexSet) -> Result<FusionReport> {
    if !is_closed(host, closed) {
        return Err(TopoError::NotClosed);
    }
    let open = closed.complement(host);
    let b_u = betti_delta(&delta_from_simplex_set(host, &open)?);
    let b_k = betti_delta(&delta_from_simplex_set(host, closed)?);
    let b_g = betti_delta(&delta_from_simplex_set(host, &SimplexSet::full(host))?);
    let betti_dominates = b_g
        .iter()
        .enumerate()
        .all(|(k, &b)| b_u[k] + b_k[k] >= b);
    let chi_open = open.euler_characteristic(host);
    let chi_closed = closed.euler_characteristic(host);
    let chi_host = SimplexSet::full(host).euler_characteristic(host);
    let chi_additive = chi_open + chi_closed == chi_host;
    Ok(FusionReport {
        betti_open: b_u,
        betti_closed: b_k,
        betti_host: b_g,
        chi_open,
        chi_closed,
        chi_host,
        betti_dominates,
        chi_additive,
        passes: betti_dominates && chi_additive,
    })
}

/// The maximum over members of the count of covering sets containing that
/// member, i.e. the multiplicity of the cover (its order is multiplicity
/// as used here: the largest number of sets sharing a point).
fn cover_multiplicity(total: usize, cover: &[&SimplexSet]) -> usize {
    (0..total)
        .map(|i| cover.iter().filter(|s| s.members.contains(&i)).count())
        .max()
        .unwrap_or(0)
}

/// Topological dimension of a complex.  Returns the maximal simplex
/// dimension; when the complex has at most `verify_cap` simplices this is
/// additionally certified against the covering characterization: the
/// vertex-star cover has multiplicity dim+1, and no cover by basic stars
/// refining it does better.  (In an Alexandrov space every open set is a
/// union of basic stars U(x), and shrinking each cover element to the
/// minimal neighborhoods of the points it must cover never raises the
/// multiplicity, so basic-star covers realize the minimum.)
pub fn topological_dimension(host: &SimplicialComplex, verify_cap: usize) -> Result<i64> {
    let dim = host.dim();
    if dim < 0 {
        return Ok(-1);
    }
    let total = host.total_count();
    if total == 0 || total > verify_cap {
        return Ok(dim);
    }
    // The vertex stars cover everything; a k-simplex lies in exactly k+1
    // of them.
    let vertex_stars: Vec<SimplexSet> = host
        .simplices_of_dim(0)
        .iter()
        .map(|v| star(host, v).expect("vertex present"))
        .collect();
    let refs: Vec<&SimplexSet> = vertex_stars.iter().collect();
    if cover_multiplicity(total, &refs) != dim as usize + 1 {
        return Err(TopoError::InvalidGraph(
            "vertex-star cover has unexpected multiplicity".into(),
        ));
    }
    // Brute force over subfamilies of the basic stars U(x) (each U(x) sits
    // inside U(v) for any vertex v of x, so each is a refinement of the
    // vertex-star cover): no covering subfamily has smaller multiplicity.
    let basic: Vec<SimplexSet> = host
        .all_simplices()
        .map(|x| star(host, x).expect("simplex present"))
        .collect();
    let mut best = usize::MAX;
    for pick in 0u64..(1u64 << basic.len()) {
        let family: Vec<&SimplexSet> = (0..basic.len())
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| &basic[i])
            .collect();
        if family.is_empty() {
            continue;
        }
        let mut covered = BTreeSet::new();
        for s in &family {
            covered.extend(s.members.iter().copied());
        }
        if covered.len() != total {
            continue;
        }
        best = best.min(cover_multiplicity(total, &family));
    }
    if best != dim as usize + 1 {
        return Err(TopoError::InvalidGraph(
            "a basic cover beats the vertex-star multiplicity".into(),
        ));
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generator;
    use crate::graph::Graph;
    use crate::hodge::HodgeData;

    fn whitney(name: &str, params: &[usize]) -> SimplicialComplex {
        SimplicialComplex::whitney(&generator(name, params).unwrap()).unwrap()
    }

    #[test]
    fn star_of_vertex_in_cycle() {
        let k = whitney("cycle", &[5]);
        let s = star(&k, &[1]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&k, &[1]));
        assert!(s.contains(&k, &[0, 1]));
        assert!(s.contains(&k, &[1, 2]));
        assert!(is_open(&k, &s));
        assert!(!is_closed(&k, &s));
    }

    #[test]
    fn star_of_facet_is_itself() {
        let k = whitney("complete", &[3]);
        let s = star(&k, &[0, 1, 2]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(&k, &[0, 1, 2]));
        let e = star(&k, &[0, 1]).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.contains(&k, &[0, 1, 2]));
    }

    #[test]
    fn core_of_top_simplex_is_whole_k3() {
        let k = whitney("complete", &[3]);
        let c = core(&k, &[0, 1, 2]).unwrap();
        assert_eq!(c.len(), 7);
        assert!(is_closed(&k, &c));
        let v = core(&k, &[2]).unwrap();
        assert_eq!(v.len(), 1);
        assert!(is_closed(&k, &v));
    }

    #[test]
    fn openness_of_k3_subsets() {
        let k = whitney("complete", &[3]);
        let top = SimplexSet::new(&k, &[vec![0, 1, 2]]).unwrap();
        assert!(is_open(&k, &top));
        assert!(!is_closed(&k, &top));
        let skel = top.complement(&k);
        assert!(is_closed(&k, &skel));
        assert!(!is_open(&k, &skel));
        let full = SimplexSet::full(&k);
        assert!(is_open(&k, &full));
        assert!(is_closed(&k, &full));
    }

    #[test]
    fn unknown_simplex_is_rejected() {
        let k = whitney("cycle", &[4]);
        assert!(star(&k, &[0, 2]).is_err());
        assert!(core(&k, &[9]).is_err());
    }

    #[test]
    fn neither_open_nor_closed_is_rejected() {
        let k = whitney("complete", &[3]);
        // An edge without its vertices and without its coface.
        let s = SimplexSet::new(&k, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            delta_from_simplex_set(&k, &s),
            Err(TopoError::NotOpenOrClosed)
        ));
    }

    #[test]
    fn worked_betti_vectors_on_k2() {
        let k = whitney("complete", &[2]);
        let u = SimplexSet::new(&k, &[vec![0, 1]]).unwrap();
        let du = delta_from_simplex_set(&k, &u).unwrap();
        assert_eq!(betti_delta(&du), vec![0, 1]);
        let kk = u.complement(&k);
        let dk = delta_from_simplex_set(&k, &kk).unwrap();
        assert_eq!(betti_delta(&dk), vec![2, 0]);
    }

    #[test]
    fn worked_betti_vectors_on_k3() {
        let k = whitney("complete", &[3]);
        let u = SimplexSet::new(&k, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(
            betti_delta(&delta_from_simplex_set(&k, &u).unwrap()),
            vec![0, 0, 1]
        );
        let skel = u.complement(&k);
        assert_eq!(
            betti_delta(&delta_from_simplex_set(&k, &skel).unwrap()),
            vec![1, 1, 0]
        );
        let full = SimplexSet::full(&k);
        assert_eq!(
            betti_delta(&delta_from_simplex_set(&k, &full).unwrap()),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn half_open_interval_has_trivial_cohomology() {
        let k = whitney("complete", &[2]);
        let u = SimplexSet::new(&k, &[vec![0], vec![0, 1]]).unwrap();
        assert!(is_closed(&k, &u) || is_open(&k, &u));
        assert_eq!(
            betti_delta(&delta_from_simplex_set(&k, &u).unwrap()),
            vec![0, 0]
        );
    }

    #[test]
    fn full_restriction_matches_hodge() {
        for (name, params) in [
            ("octahedron", &[][..]),
            ("cycle", &[6][..]),
            ("kite", &[][..]),
            ("figure_eight", &[][..]),
        ] {
            let g = generator(name, params).unwrap();
            let k = SimplicialComplex::whitney(&g).unwrap();
            let ds = delta_from_simplex_set(&k, &SimplexSet::full(&k)).unwrap();
            assert!(ds.d_squared_is_zero());
            let h = HodgeData::from_graph(&g).unwrap();
            assert_eq!(betti_delta(&ds), h.betti());
        }
    }

    #[test]
    fn fusion_on_k2_and_k3() {
        let k2 = whitney("complete", &[2]);
        let verts = SimplexSet::new(&k2, &[vec![0], vec![1]]).unwrap();
        let r = fusion_check(&k2, &verts).unwrap();
        assert!(r.passes);
        assert_eq!(r.betti_open, vec![0, 1]);
        assert_eq!(r.betti_closed, vec![2, 0]);
        assert_eq!(r.betti_host, vec![1, 0]);

        let k3 = whitney("complete", &[3]);
        let skel = SimplexSet::new(&k3, &[vec![0, 1, 2]])
            .unwrap()
            .complement(&k3);
        let r3 = fusion_check(&k3, &skel).unwrap();
        assert!(r3.passes);
        assert_eq!(r3.betti_closed, vec![1, 1, 0]);
        assert_eq!(r3.betti_open, vec![0, 0, 1]);
    }

    #[test]
    fn trivial_fusion_split_is_equality() {
        let k = whitney("cycle", &[5]);
        let r = fusion_check(&k, &SimplexSet::full(&k)).unwrap();
        assert!(r.passes);
        assert_eq!(r.betti_closed, r.betti_host);
        assert!(r.betti_open.iter().all(|&b| b == 0));
    }

    #[test]
    fn exhaustive_partitions_satisfy_fusion() {
        // Every down-set of the face poset gives an open-closed partition.
        for (name, params) in [("complete", &[3][..]), ("cycle", &[4][..]), ("path", &[4][..])] {
            let k = whitney(name, params);
            let total = k.total_count();
            assert!(total <= 15);
            let mut checked = 0;
            for pick in 0u64..(1 << total) {
                let s = SimplexSet::from_indices(&k, (0..total).filter(|&i| pick >> i & 1 == 1))
                    .unwrap();
                if !is_closed(&k, &s) {
                    continue;
                }
                let r = fusion_check(&k, &s).unwrap();
                assert!(r.passes, "{} partition {:b}", name, pick);
                checked += 1;
            }
            assert!(checked > 2);
        }
    }

    #[test]
    fn random_star_unions_are_open() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let k = whitney("octahedron", &[]);
        let all: Vec<Vec<u32>> = k.all_simplices().cloned().collect();
        for _ in 0..20 {
            let mut u = SimplexSet::from_indices(&k, []).unwrap();
            for _ in 0..3 {
                let x = &all[rng.gen_range(0..all.len())];
                u = u.union(&star(&k, x).unwrap());
            }
            assert!(is_open(&k, &u));
        }
    }

    #[test]
    fn dimension_of_complete_graphs() {
        for n in 1..=3 {
            let k = whitney("complete", &[n + 1]);
            assert_eq!(topological_dimension(&k, DEFAULT_DIMENSION_VERIFY_CAP).unwrap(), n as i64);
        }
    }

    #[test]
    fn dimension_of_cycle_and_kite() {
        assert_eq!(
            topological_dimension(&whitney("cycle", &[4]), DEFAULT_DIMENSION_VERIFY_CAP).unwrap(),
            1
        );
        assert_eq!(
            topological_dimension(&whitney("kite", &[]), DEFAULT_DIMENSION_VERIFY_CAP).unwrap(),
            2
        );
    }

    #[test]
    fn simplex_set_json_round_trip() {
        let k = whitney("cycle", &[4]);
        let s = star(&k, &[2]).unwrap();
        let text = s.to_json(&k);
        let back = SimplexSet::from_json(&k, &text).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn empty_graph_dimension() {
        let k = SimplicialComplex::whitney(&Graph::empty()).unwrap();
        assert_eq!(topological_dimension(&k, DEFAULT_DIMENSION_VERIFY_CAP).unwrap(), -1);
    }
}
