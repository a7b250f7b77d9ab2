//! Homotopy recursion on graphs: contractibility in the inductive sense
//! (some vertex has a contractible unit sphere and removing it leaves a
//! contractible graph), sphere and manifold recognition, and the inductive
//! dimension.
//!
//! All searches run over vertex subsets of a fixed host graph, encoded as
//! 128-bit masks, with memoization per host. Definite answers are cached;
//! budget exhaustion surfaces as an explicit `Unknown`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, TopoError};
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
pub const HOST_CAP: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
    pub fn is_no(self) -> bool {
        self == Verdict::No
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereVerdict {
    Sphere(i64),
    NotSphere,
    Unknown,
}

/// Search state over induced subgraphs of one host graph.
pub struct HomotopyEngine {
    adj: Vec<u128>,
    labels: Vec<u32>,
    full: u128,
    contract_memo: HashMap<u128, bool>,
    sphere_memo: HashMap<u128, Option<i64>>,
    dim_memo: HashMap<u128, BigRational>,
    budget: u64,
    used: u64,
}

impl HomotopyEngine {
    pub fn new(g: &Graph) -> Result<HomotopyEngine> {
        Self::with_budget(g, DEFAULT_NODE_BUDGET)
    }

    pub fn with_budget(g: &Graph, budget: u64) -> Result<HomotopyEngine> {
        let n = g.n();
        if n > HOST_CAP {
            return Err(TopoError::CapExceeded(n, HOST_CAP));
        }
        let labels: Vec<u32> = g.vertices().to_vec();
        let pos: HashMap<u32, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![0u128; n];
        for (a, b) in g.edges() {
            let (i, j) = (pos[&a], pos[&b]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        Ok(HomotopyEngine {
            adj,
            labels,
            full,
            contract_memo: HashMap::new(),
            sphere_memo: HashMap::new(),
            dim_memo: HashMap::new(),
            budget,
            used: 0,
        })
    }

    pub fn nodes_used(&self) -> u64 {
        self.used
    }

    pub fn full_mask(&self) -> u128 {
        self.full
    }

    pub fn label_of(&self, bit: usize) -> u32 {
        self.labels[bit]
    }

    pub fn mask_of_labels(&self, vs: &[u32]) -> Result<u128> {
        let mut m = 0u128;
        for &v in vs {
            let bit = self
                .labels
                .iter()
                .position(|&l| l == v)
                .ok_or(TopoError::UnknownVertex(v))?;
            m |= 1 << bit;
        }
        Ok(m)
    }

    pub fn link_mask(&self, v_bit: usize, mask: u128) -> u128 {
        self.adj[v_bit] & mask
    }

    fn bits(mask: u128) -> impl Iterator<Item = usize> {
        (0..128).filter(move |i| mask >> i & 1 == 1)
    }

    fn is_connected_mask(&self, mask: u128) -> bool {
        let Some(start) = Self::bits(mask).next() else {
            return false;
        };
        let mut seen = 1u128 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for i in Self::bits(frontier) {
                next |= self.adj[i] & mask & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    /// Contractibility by the removal recursion, with memoized definite
    /// answers. `Unknown` only on budget exhaustion.
    pub fn contractible(&mut self, mask: u128) -> Verdict {
        if let Some(&v) = self.contract_memo.get(&mask) {
            return if v { Verdict::Yes } else { Verdict::No };
        }
        self.used += 1;
        if self.used > self.budget {
            return Verdict::Unknown;
        }
        let n = mask.count_ones();
        if n == 0 {
            return self.remember(mask, false);
        }
        if n == 1 {
            return self.remember(mask, true);
        }
        // a vertex adjacent to everything else makes the graph a cone
        for i in Self::bits(mask) {
            if self.adj[i] & mask == mask & !(1 << i) {
                return self.remember(mask, true);
            }
        }
        if !self.is_connected_mask(mask) {
            return self.remember(mask, false);
        }
        let mut any_unknown = false;
        for i in Self::bits(mask) {
            let link = self.adj[i] & mask;
            match self.contractible(link) {
                Verdict::Yes => match self.contractible(mask & !(1 << i)) {
                    Verdict::Yes => return self.remember(mask, true),
                    Verdict::No => {}
                    Verdict::Unknown => any_unknown = true,
                },
                Verdict::No => {}
                Verdict::Unknown => any_unknown = true,
            }
        }
        if any_unknown {
            Verdict::Unknown
        } else {
            self.remember(mask, false)
        }
    }

    fn remember(&mut self, mask: u128, v: bool) -> Verdict {
        self.contract_memo.insert(mask, v);
        if v {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    /// A removal order certifying contractibility, if one exists: each listed
    /// vertex has a contractible unit sphere at its removal time.
    pub fn contraction_witness(&mut self, mask: u128) -> Option<Vec<u32>> {
        if !self.contractible(mask).is_yes() {
            return None;
        }
        let mut cur = mask;
        let mut order = vec![];
        while cur.count_ones() > 1 {
            let mut step = None;
            for i in Self::bits(cur) {
                let link = self.adj[i] & cur;
                if self.contractible(link).is_yes()
                    && self.contractible(cur & !(1 << i)).is_yes()
                {
                    step = Some(i);
                    break;
                }
            }
            let i = step?;
            order.push(self.labels[i]);
            cur &= !(1 << i);
        }
        order.push(self.labels[Self::bits(cur).next()?]);
        Some(order)
    }

    /// Evako sphere recognition: the empty graph is the (-1)-sphere; a
    /// d-sphere has all unit spheres (d-1)-spheres and becomes contractible
    /// with one vertex removed.
    pub fn sphere_dimension(&mut self, mask: u128) -> SphereVerdict {
        if let Some(&v) = self.sphere_memo.get(&mask) {
            return match v {
                Some(d) => SphereVerdict::Sphere(d),
                None => SphereVerdict::NotSphere,
            };
        }
        let out = self.sphere_dimension_uncached(mask);
        match out {
            SphereVerdict::Sphere(d) => {
                self.sphere_memo.insert(mask, Some(d));
            }
            SphereVerdict::NotSphere => {
                self.sphere_memo.insert(mask, None);
            }
            SphereVerdict::Unknown => {}
        }
        out
    }

    fn sphere_dimension_uncached(&mut self, mask: u128) -> SphereVerdict {
        if mask == 0 {
            return SphereVerdict::Sphere(-1);
        }
        let mut dim = None;
        for i in Self::bits(mask) {
            let link = self.adj[i] & mask;
            match self.sphere_dimension(link) {
                SphereVerdict::Sphere(d) => match dim {
                    None => dim = Some(d),
                    Some(prev) if prev == d => {}
                    Some(_) => return SphereVerdict::NotSphere,
                },
                SphereVerdict::NotSphere => return SphereVerdict::NotSphere,
                SphereVerdict::Unknown => return SphereVerdict::Unknown,
            }
        }
        let d = dim.expect("nonempty graph has vertices");
        // spheres are not contractible but puncture to something contractible
        match self.contractible(mask) {
            Verdict::Yes => return SphereVerdict::NotSphere,
            Verdict::Unknown => return SphereVerdict::Unknown,
            Verdict::No => {}
        }
        let mut any_unknown = false;
        for i in Self::bits(mask) {
            match self.contractible(mask & !(1 << i)) {
                Verdict::Yes => return SphereVerdict::Sphere(d + 1),
                Verdict::No => {}
                Verdict::Unknown => any_unknown = true,
            }
        }
        if any_unknown {
            SphereVerdict::Unknown
        } else {
            SphereVerdict::NotSphere
        }
    }

    /// d-manifold check: every unit sphere is a (d-1)-sphere for one common d.
    pub fn manifold_dimension(&mut self, mask: u128) -> SphereVerdict {
        if mask == 0 {
            return SphereVerdict::NotSphere;
        }
        let mut dim = None;
        for i in Self::bits(mask) {
            let link = self.adj[i] & mask;
            match self.sphere_dimension(link) {
                SphereVerdict::Sphere(d) => match dim {
                    None => dim = Some(d + 1),
                    Some(prev) if prev == d + 1 => {}
                    Some(_) => return SphereVerdict::NotSphere,
                },
                SphereVerdict::NotSphere => return SphereVerdict::NotSphere,
                SphereVerdict::Unknown => return SphereVerdict::Unknown,
            }
        }
        SphereVerdict::Sphere(dim.expect("nonempty"))
    }

    /// Inductive dimension: dim(empty) = -1, else 1 + average link dimension.
    pub fn inductive_dimension(&mut self, mask: u128) -> BigRational {
        if mask == 0 {
            return -BigRational::one();
        }
        if let Some(v) = self.dim_memo.get(&mask) {
            return v.clone();
        }
        let n = mask.count_ones();
        let mut total = BigRational::zero();
        for i in Self::bits(mask) {
            total += self.inductive_dimension(self.adj[i] & mask);
        }
        let out = BigRational::one() + total / BigRational::from(BigInt::from(n));
        self.dim_memo.insert(mask, out.clone());
        out
    }
}

pub fn is_contractible(g: &Graph) -> Result<Verdict> {
    let mut e = HomotopyEngine::new(g)?;
    Ok(e.contractible(e.full_mask()))
}

pub fn contraction_witness(g: &Graph) -> Result<Option<Vec<u32>>> {
    let mut e = HomotopyEngine::new(g)?;
    Ok(e.contraction_witness(e.full_mask()))
}

pub fn sphere_dimension(g: &Graph) -> Result<SphereVerdict> {
    let mut e = HomotopyEngine::new(g)?;
    Ok(e.sphere_dimension(e.full_mask()))
}

pub fn manifold_dimension(g: &Graph) -> Result<SphereVerdict> {
    let mut e = HomotopyEngine::new(g)?;
    Ok(e.manifold_dimension(e.full_mask()))
}

pub fn inductive_dimension(g: &Graph) -> Result<BigRational> {
    let mut e = HomotopyEngine::new(g)?;
    Ok(e.inductive_dimension(e.full_mask()))
}

/// Greedy homotopy reduction: repeatedly delete a vertex whose unit sphere
/// is contractible. Returns the reduced graph and the removal sequence.
pub fn homotopy_reduce(g: &Graph) -> Result<(Graph, Vec<u32>)> {
    let mut e = HomotopyEngine::new(g)?;
    let mut mask = e.full_mask();
    let mut removed = vec![];
    loop {
        if mask.count_ones() <= 1 {
            break;
        }
        let mut step = None;
        for i in 0..128 {
            if mask >> i & 1 == 1 {
                let link = e.link_mask(i, mask);
                if e.contractible(link).is_yes() {
                    step = Some(i);
                    break;
                }
            }
        }
        match step {
            Some(i) => {
                removed.push(e.label_of(i));
                mask &= !(1u128 << i);
            }
            None => break,
        }
    }
    let keep: std::collections::BTreeSet<u32> = (0..128)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| e.label_of(i))
        .collect();
    Ok((g.induced_subgraph_keep_labels(&keep)?, removed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generator;

    fn gen(name: &str, params: &[usize]) -> Graph {
        generator(name, params).unwrap()
    }

    #[test]
    fn complete_graphs_are_contractible() {
        for n in 1..7 {
            assert!(is_contractible(&gen("complete", &[n])).unwrap().is_yes());
        }
    }

    #[test]
    fn empty_and_disconnected_are_not_contractible() {
        assert!(is_contractible(&Graph::empty()).unwrap().is_no());
        let g = gen("complete", &[2]).disjoint_union(&gen("complete", &[3]));
        assert!(is_contractible(&g).unwrap().is_no());
    }

    #[test]
    fn trees_and_wheels_are_contractible() {
        assert!(is_contractible(&gen("path", &[6])).unwrap().is_yes());
        assert!(is_contractible(&gen("star", &[7])).unwrap().is_yes());
        assert!(is_contractible(&gen("wheel", &[6])).unwrap().is_yes());
        assert!(is_contractible(&gen("kite", &[])).unwrap().is_yes());
    }

    #[test]
    fn spheres_are_not_contractible() {
        for n in 4..8 {
            assert!(is_contractible(&gen("cycle", &[n])).unwrap().is_no());
        }
        assert!(is_contractible(&gen("octahedron", &[])).unwrap().is_no());
    }

    #[test]
    fn witness_exists_and_has_full_length() {
        let g = gen("wheel", &[6]);
        let w = contraction_witness(&g).unwrap().unwrap();
        assert_eq!(w.len(), g.n());
        assert!(contraction_witness(&gen("cycle", &[5])).unwrap().is_none());
    }

    #[test]
    fn witness_steps_have_contractible_spheres() {
        let g = gen("moebius7", &[]);
        // Moebius strip is homotopic to a circle, hence reduces but is not
        // contractible
        assert!(is_contractible(&g).unwrap().is_no());
        let g2 = gen("wheel", &[5]);
        let w = contraction_witness(&g2).unwrap().unwrap();
        let mut cur = g2;
        for &v in &w[..w.len() - 1] {
            let s = cur.unit_sphere(v).unwrap();
            assert!(is_contractible(&s).unwrap().is_yes());
            cur = cur.remove_vertex(v).unwrap();
        }
    }

    #[test]
    fn sphere_dimensions_across_the_catalog() {
        assert_eq!(
            sphere_dimension(&Graph::empty()).unwrap(),
            SphereVerdict::Sphere(-1)
        );
        assert_eq!(
            sphere_dimension(&gen("cross_polytope", &[0])).unwrap(),
            SphereVerdict::Sphere(0)
        );
        for n in 4..8 {
            assert_eq!(
                sphere_dimension(&gen("cycle", &[n])).unwrap(),
                SphereVerdict::Sphere(1)
            );
        }
        assert_eq!(
            sphere_dimension(&gen("octahedron", &[])).unwrap(),
            SphereVerdict::Sphere(2)
        );
        assert_eq!(
            sphere_dimension(&gen("cross_polytope", &[3])).unwrap(),
            SphereVerdict::Sphere(3)
        );
        assert_eq!(
            sphere_dimension(&gen("complete", &[3])).unwrap(),
            SphereVerdict::NotSphere
        );
        assert_eq!(
            sphere_dimension(&gen("path", &[3])).unwrap(),
            SphereVerdict::NotSphere
        );
    }

    #[test]
    fn join_of_spheres_adds_dimensions() {
        // independent cross-check of the sphere recogniser: the join of a
        // p-sphere and a q-sphere is a (p+q+1)-sphere
        let c4 = gen("cycle", &[4]);
        let s0 = gen("cross_polytope", &[0]);
        assert_eq!(
            sphere_dimension(&c4.zykov_join(&s0)).unwrap(),
            SphereVerdict::Sphere(2)
        );
        assert_eq!(
            sphere_dimension(&c4.zykov_join(&c4)).unwrap(),
            SphereVerdict::Sphere(3)
        );
    }

    #[test]
    fn manifold_recognition() {
        assert_eq!(
            manifold_dimension(&gen("octahedron", &[])).unwrap(),
            SphereVerdict::Sphere(2)
        );
        assert_eq!(
            manifold_dimension(&gen("cycle", &[6])).unwrap(),
            SphereVerdict::Sphere(1)
        );
        assert_eq!(
            manifold_dimension(&gen("kite", &[])).unwrap(),
            SphereVerdict::NotSphere
        );
        // Moebius strip has boundary vertices, so it is not a closed 2-graph
        assert_eq!(
            manifold_dimension(&gen("moebius7", &[])).unwrap(),
            SphereVerdict::NotSphere
        );
    }

    #[test]
    fn surfaces_are_closed_2_manifolds() {
        for name in ["torus", "klein_bottle", "projective_plane"] {
            assert_eq!(
                manifold_dimension(&gen(name, &[])).unwrap(),
                SphereVerdict::Sphere(2),
                "{name}"
            );
            assert!(is_contractible(&gen(name, &[])).unwrap().is_no(), "{name}");
        }
    }

    #[test]
    fn dunce_hat_is_a_homology_point_but_not_contractible() {
        let g = gen("dunce_hat", &[]);
        assert!(is_contractible(&g).unwrap().is_no());
        // no single vertex can be removed: every unit sphere is either a
        // cycle, a theta graph or a complete bipartite K(2,3)
        let mut e = HomotopyEngine::new(&g).unwrap();
        for bit in 0..g.n() {
            let link = e.link_mask(bit, e.full_mask());
            assert!(e.contractible(link).is_no());
        }
    }

    #[test]
    fn inductive_dimension_values() {
        assert_eq!(inductive_dimension(&Graph::empty()).unwrap(), rat_i(-1));
        assert_eq!(inductive_dimension(&gen("complete", &[5])).unwrap(), rat_i(4));
        assert_eq!(inductive_dimension(&gen("cycle", &[5])).unwrap(), rat_i(1));
        assert_eq!(inductive_dimension(&gen("octahedron", &[])).unwrap(), rat_i(2));
        // every kite link is a path or an edge, so the kite has dimension 2
        assert_eq!(inductive_dimension(&gen("kite", &[])).unwrap(), rat_i(2));
        // mixing an isolated point with an edge gives the fractional value
        // 1 + (-1 + 0 + 0)/3 = 2/3
        let mixed = gen("complete", &[1]).disjoint_union(&gen("complete", &[2]));
        assert_eq!(
            inductive_dimension(&mixed).unwrap(),
            BigRational::new(BigInt::from(2), BigInt::from(3))
        );
    }

    fn rat_i(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn dimension_of_join_formula() {
        // Betre-Salinger: dim+(G + H) = dim+(G) + dim+(H) where
        // dim+ = dim + 1
        for (a, pa, b, pb) in [
            ("cycle", vec![4usize], "complete", vec![2usize]),
            ("complete", vec![3], "complete", vec![2]),
            ("cross_polytope", vec![0], "cycle", vec![5]),
        ] {
            let g = gen(a, &pa);
            let h = gen(b, &pb);
            let dim_sum = inductive_dimension(&g).unwrap()
                + inductive_dimension(&h).unwrap()
                + BigRational::one();
            assert_eq!(inductive_dimension(&g.zykov_join(&h)).unwrap(), dim_sum);
        }
    }

    #[test]
    fn reduction_shrinks_contractible_graphs_to_a_point() {
        let (r, removed) = homotopy_reduce(&gen("wheel", &[8])).unwrap();
        assert_eq!(r.n(), 1);
        assert_eq!(removed.len(), 8);
        let (r, _) = homotopy_reduce(&gen("cycle", &[5])).unwrap();
        assert_eq!(r.n(), 5);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = gen("octahedron", &[]);
        let mut e = HomotopyEngine::with_budget(&g, 3).unwrap();
        assert_eq!(e.contractible(e.full_mask()), Verdict::Unknown);
    }
}
