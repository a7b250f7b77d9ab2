//! Poincare-Hopf indices of locally injective vertex functions, Morse
//! classification of orderings, minimal critical-point searches and the
//! three curvature notions (combinatorial, exact index expectation, Monte
//! Carlo index averaging).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Result, TopoError};
use crate::graph::{Digraph, Graph};
use crate::homotopy::{HomotopyEngine, SphereVerdict, Verdict};
use crate::linalg::rat;

/// A rational-valued vertex function. Only local injectivity (distinct
/// values across every edge) is required.
#[derive(Debug, Clone)]
pub struct VertexFunction {
    values: BTreeMap<u32, BigRational>,
}

impl VertexFunction {
    pub fn from_values(values: BTreeMap<u32, BigRational>) -> VertexFunction {
        VertexFunction { values }
    }

    /// order[i] receives value i.
    pub fn from_order(order: &[u32]) -> VertexFunction {
        VertexFunction {
            values: order
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, rat(i as i64)))
                .collect(),
        }
    }

    pub fn random(g: &Graph, rng: &mut ChaCha8Rng) -> VertexFunction {
        let mut order: Vec<u32> = g.vertices().to_vec();
        order.shuffle(rng);
        Self::from_order(&order)
    }

    pub fn value(&self, v: u32) -> Result<&BigRational> {
        self.values.get(&v).ok_or(TopoError::MissingValue(v))
    }

    pub fn check_locally_injective(&self, g: &Graph) -> Result<()> {
        for v in g.vertices() {
            self.value(*v)?;
        }
        for (a, b) in g.edges() {
            if self.value(a)? == self.value(b)? {
                return Err(TopoError::NotLocallyInjective(a, b));
            }
        }
        Ok(())
    }
}

/// S^-(v): the part of the unit sphere where the function is smaller.
pub fn stable_sphere(g: &Graph, f: &VertexFunction, v: u32) -> Result<Graph> {
    let fv = f.value(v)?.clone();
    let below: std::collections::BTreeSet<u32> = g
        .neighbors(v)
        .into_iter()
        .filter(|&w| f.values.get(&w).is_some_and(|x| *x < fv))
        .collect();
    g.induced_subgraph_keep_labels(&below)
}

/// i_f(v) = 1 - chi(S^-(v)).
pub fn ph_indices(g: &Graph, f: &VertexFunction) -> Result<BTreeMap<u32, i64>> {
    f.check_locally_injective(g)?;
    let mut out = BTreeMap::new();
    for &v in g.vertices() {
        let s = stable_sphere(g, f, v)?;
        let chi = SimplicialComplex::whitney(&s)?.euler_characteristic();
        out.insert(v, 1 - chi);
    }
    Ok(out)
}

/// The index sum telescopes to the Euler characteristic.
pub fn ph_sum_matches_euler(g: &Graph, f: &VertexFunction) -> Result<bool> {
    let total: i64 = ph_indices(g, f)?.values().sum();
    Ok(total == SimplicialComplex::whitney(g)?.euler_characteristic())
}

/// Transfer identity between f-polynomials:
/// f_G(t) = 1 + t * sum_v f_{S^-(v)}(t).
pub fn ph_polynomial_identity_holds(g: &Graph, f: &VertexFunction) -> Result<bool> {
    f.check_locally_injective(g)?;
    let lhs = SimplicialComplex::whitney(g)?.f_polynomial();
    let mut rhs = vec![BigRational::one()];
    for &v in g.vertices() {
        let s = stable_sphere(g, f, v)?;
        for (i, c) in SimplicialComplex::whitney(&s)?.f_polynomial().into_iter().enumerate() {
            if rhs.len() <= i + 1 {
                rhs.resize(i + 2, BigRational::zero());
            }
            rhs[i + 1] += c;
        }
    }
    while rhs.last().is_some_and(|c| c.is_zero()) {
        rhs.pop();
    }
    Ok(lhs == rhs)
}

/// Energized index: each simplex hands its energy to the vertex where the
/// function is largest. Index sums then equal total energy.
pub fn energized_indices(
    complex: &SimplicialComplex,
    energy: &HashMap<Vec<u32>, BigRational>,
    f: &VertexFunction,
) -> Result<BTreeMap<u32, BigRational>> {
    let mut out: BTreeMap<u32, BigRational> = BTreeMap::new();
    for x in complex.all_simplices() {
        let h = energy
            .get(x)
            .ok_or_else(|| TopoError::MissingEnergy(x.clone()))?;
        let mut best: Option<u32> = None;
        for &v in x {
            let fv = f.value(v)?;
            match best {
                None => best = Some(v),
                Some(b) if fv > f.value(b)? => best = Some(v),
                _ => {}
            }
        }
        let v = best.expect("simplices are non-empty");
        *out.entry(v).or_insert_with(BigRational::zero) += h;
    }
    Ok(out)
}

/// Poincare-Hopf for a digraph: every clique must carry an acyclic
/// orientation; each simplex counts (-1)^dim toward its unique sink.
pub fn digraph_indices(dg: &Digraph) -> Result<BTreeMap<u32, i64>> {
    let g = dg.underlying();
    let complex = SimplicialComplex::whitney(&g)?;
    // local non-circularity: on each simplex the arc relation must have a
    // unique sink, i.e. no directed cycle among its vertices
    let mut out: BTreeMap<u32, i64> = g.vertices().iter().map(|&v| (v, 0)).collect();
    for k in 0..=complex.dim().max(0) as usize {
        for x in complex.simplices_of_dim(k) {
            let mut sinks = x
                .iter()
                .filter(|&&v| x.iter().all(|&w| w == v || !dg.has_arc(v, w)));
            let sink = sinks.next();
            let extra = sinks.next();
            match (sink, extra) {
                (Some(&s), None) => {
                    *out.get_mut(&s).expect("vertex present") +=
                        if k % 2 == 0 { 1 } else { -1 };
                }
                // no sink or two sinks means a directed cycle inside the
                // clique, or a missing orientation
                _ => return Err(TopoError::LocallyCircular(x.clone())),
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorseOutcome {
    /// c_k: number of critical points of each index.
    Morse(Vec<usize>),
    /// First vertex whose stable sphere is neither contractible nor a sphere.
    NotMorse(u32),
}

/// Classify every vertex of a locally injective function: regular when
/// S^-(v) is contractible, critical of index k when S^-(v) is a
/// (k-1)-sphere.
pub fn morse_profile(g: &Graph, f: &VertexFunction) -> Result<MorseOutcome> {
    f.check_locally_injective(g)?;
    let mut engine = HomotopyEngine::new(g)?;
    let mut order: Vec<u32> = g.vertices().to_vec();
    order.sort_by(|&a, &b| f.values[&a].cmp(&f.values[&b]));
    let mut counts: Vec<usize> = vec![];
    for &v in &order {
        let fv = &f.values[&v];
        let below: Vec<u32> = g
            .neighbors(v)
            .into_iter()
            .filter(|&w| f.values[&w] < *fv)
            .collect();
        let mask = engine.mask_of_labels(&below)?;
        match engine.contractible(mask) {
            Verdict::Yes => continue,
            Verdict::Unknown => return Err(TopoError::SearchBudget(engine.nodes_used())),
            Verdict::No => {}
        }
        match engine.sphere_dimension(mask) {
            SphereVerdict::Sphere(d) => {
                let k = (d + 1) as usize;
                if counts.len() <= k {
                    counts.resize(k + 1, 0);
                }
                counts[k] += 1;
            }
            SphereVerdict::NotSphere => return Ok(MorseOutcome::NotMorse(v)),
            SphereVerdict::Unknown => return Err(TopoError::SearchBudget(engine.nodes_used())),
        }
    }
    Ok(MorseOutcome::Morse(counts))
}

/// Strong Morse inequalities for counts c against Betti numbers b: all
/// partial alternating sums are nonnegative and the full one is zero.
pub fn strong_morse_inequalities_hold(c: &[usize], b: &[usize]) -> bool {
    let top = c.len().max(b.len());
    let at = |v: &[usize], k: usize| *v.get(k).unwrap_or(&0) as i64;
    for m in 0..top {
        let partial: i64 = (0..=m)
            .map(|k| {
                let s = if (m - k) % 2 == 0 { 1 } else { -1 };
                s * (at(c, k) - at(b, k))
            })
            .sum();
        if partial < 0 {
            return false;
        }
    }
    let full: i64 = (0..top)
        .map(|k| if k % 2 == 0 { at(c, k) - at(b, k) } else { at(b, k) - at(c, k) })
        .sum();
    full == 0
}

/// Subset dynamic program shared by the two exact searches. cost(P, v)
/// scores adding v on top of prefix P; u32::MAX marks an inadmissible step.
fn order_dp(
    g: &Graph,
    cap: usize,
    mut cost: impl FnMut(&mut HomotopyEngine, u128, usize) -> Result<u32>,
) -> Result<Option<(u32, Vec<u32>)>> {
    let n = g.n();
    if n > cap {
        return Err(TopoError::CapExceeded(n, cap));
    }
    if n == 0 {
        return Ok(Some((0, vec![])));
    }
    let mut engine = HomotopyEngine::new(g)?;
    let full: u128 = engine.full_mask();
    let size = 1usize << n;
    const INF: u32 = u32::MAX;
    // best[P] = fewest critical points needed to extend prefix P to a full
    // ordering; filled from the full set downward
    let mut best = vec![INF; size];
    let mut choice = vec![usize::MAX; size];
    best[size - 1] = 0;
    for p in (0..size - 1).rev() {
        let pm = p as u128;
        let mut b = INF;
        let mut pick = usize::MAX;
        for v in 0..n {
            if pm >> v & 1 == 1 {
                continue;
            }
            let c = cost(&mut engine, pm, v)?;
            if c == INF {
                continue;
            }
            let rest = best[p | (1 << v)];
            if rest == INF {
                continue;
            }
            if c + rest < b {
                b = c + rest;
                pick = v;
            }
        }
        best[p] = b;
        choice[p] = pick;
        let _ = full;
    }
    if best[0] == INF {
        return Ok(None);
    }
    let mut order = vec![];
    let mut p = 0usize;
    while p != size - 1 {
        let v = choice[p];
        order.push(engine.label_of(v));
        p |= 1 << v;
    }
    Ok(Some((best[0], order)))
}

/// Minimum number of critical points over all injective orderings, with a
/// witness ordering. A vertex is critical when its stable sphere is not
/// contractible (the empty stable sphere of a minimum included).
pub fn cri_exact(g: &Graph, cap: usize) -> Result<(usize, Vec<u32>)> {
    let out = order_dp(g, cap, |engine, prefix, v| {
        let below = engine.link_mask(v, prefix);
        Ok(match engine.contractible(below) {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Unknown => return Err(TopoError::SearchBudget(engine.nodes_used())),
        })
    })?;
    let (c, order) = out.expect("every graph admits an ordering");
    Ok((c as usize, order))
}

/// Minimum number of critical points over Morse orderings only (every
/// stable sphere contractible or a sphere); None when the graph has no
/// Morse function.
pub fn morse_min_exact(g: &Graph, cap: usize) -> Result<Option<(usize, Vec<u32>)>> {
    let out = order_dp(g, cap, |engine, prefix, v| {
        let below = engine.link_mask(v, prefix);
        match engine.contractible(below) {
            Verdict::Yes => return Ok(0),
            Verdict::Unknown => return Err(TopoError::SearchBudget(engine.nodes_used())),
            Verdict::No => {}
        }
        match engine.sphere_dimension(below) {
            SphereVerdict::Sphere(_) => Ok(1),
            SphereVerdict::NotSphere => Ok(u32::MAX),
            SphereVerdict::Unknown => Err(TopoError::SearchBudget(engine.nodes_used())),
        }
    })?;
    Ok(out.map(|(c, order)| (c as usize, order)))
}

/// Randomized search for an ordering with few critical points: random
/// restarts plus greedy adjacent transpositions. Returns (count, ordering).
pub fn cri_heuristic(g: &Graph, seed: u64, restarts: usize) -> Result<(usize, Vec<u32>)> {
    let mut engine = HomotopyEngine::new(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = |engine: &mut HomotopyEngine, order: &[u32]| -> Result<usize> {
        let mut prefix = 0u128;
        let mut crit = 0;
        for &v in order {
            let bit = (0..g.n()).find(|&i| engine.label_of(i) == v).unwrap();
            let below = engine.link_mask(bit, prefix);
            match engine.contractible(below) {
                Verdict::Yes => {}
                Verdict::No => crit += 1,
                Verdict::Unknown => return Err(TopoError::SearchBudget(engine.nodes_used())),
            }
            prefix |= 1 << bit;
        }
        Ok(crit)
    };
    let mut best: Option<(usize, Vec<u32>)> = None;
    for _ in 0..restarts.max(1) {
        let mut order: Vec<u32> = g.vertices().to_vec();
        order.shuffle(&mut rng);
        let mut c = count(&mut engine, &order)?;
        // greedy improvement by adjacent swaps until a local optimum
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..order.len().saturating_sub(1) {
                order.swap(i, i + 1);
                let nc = count(&mut engine, &order)?;
                if nc < c {
                    c = nc;
                    improved = true;
                } else {
                    order.swap(i, i + 1);
                }
            }
        }
        if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
            best = Some((c, order));
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Combinatorial curvature: K(v) = sum_k (-1)^k f_{k-1}(S(v)) / (k+1) with
/// f_{-1} = 1.
pub fn curvature_levitt(g: &Graph) -> Result<BTreeMap<u32, BigRational>> {
    let mut out = BTreeMap::new();
    for &v in g.vertices() {
        let sphere = g.unit_sphere(v)?;
        let f = SimplicialComplex::whitney(&sphere)?.f_vector().0;
        let mut k_v = BigRational::one();
        for (k, &fk) in f.iter().enumerate() {
            let term = BigRational::new(BigInt::from(fk as i64), BigInt::from(k as i64 + 2));
            if k % 2 == 0 {
                k_v -= term;
            } else {
                k_v += term;
            }
        }
        out.insert(v, k_v);
    }
    Ok(out)
}

pub const EXACT_EXPECTATION_DEGREE_BOUND: usize = 16;

/// Curvature as the exact expectation of the Poincare-Hopf index over all
/// orderings: K(v) = sum over subsets W of the neighborhood of
/// (1 - chi(W)) / ((d+1) * C(d, |W|)), since every subset size is equally
/// likely and each size-m subset equally probable as a stable sphere.
pub fn curvature_exact_expectation(g: &Graph) -> Result<BTreeMap<u32, BigRational>> {
    let mut out = BTreeMap::new();
    for &v in g.vertices() {
        out.insert(v, curvature_exact_expectation_vertex(g, v)?);
    }
    Ok(out)
}

/// Exact expected index of one vertex; usable on mixed-degree graphs where
/// only some vertices fall under the degree bound.
pub fn curvature_exact_expectation_vertex(g: &Graph, v: u32) -> Result<BigRational> {
    let nbrs = g.neighbors(v);
    let d = nbrs.len();
    if d > EXACT_EXPECTATION_DEGREE_BOUND {
        return Err(TopoError::DegreeBound(d, v, EXACT_EXPECTATION_DEGREE_BOUND));
    }
    // cliques of the unit sphere as bitmasks over the neighbor list
    let sphere = g.unit_sphere(v)?;
    let complex = SimplicialComplex::whitney(&sphere)?;
    let mut cliques: Vec<(u64, i64)> = vec![];
    for x in complex.all_simplices() {
        let mut m = 0u64;
        for w in x {
            m |= 1 << nbrs.iter().position(|u| u == w).expect("neighbor");
        }
        cliques.push((m, if (x.len() - 1) % 2 == 0 { 1 } else { -1 }));
    }
    let binom = |n: usize, k: usize| -> BigInt {
        let mut b = BigInt::one();
        for i in 0..k {
            b = b * BigInt::from((n - i) as i64) / BigInt::from(i as i64 + 1);
        }
        b
    };
    let mut k_v = BigRational::zero();
    for sub in 0u64..1 << d {
        let chi: i64 = cliques
            .iter()
            .filter(|(m, _)| m & sub == *m)
            .map(|&(_, s)| s)
            .sum();
        let weight = BigRational::new(
            BigInt::one(),
            BigInt::from(d as i64 + 1) * binom(d, sub.count_ones() as usize),
        );
        k_v += BigRational::from(BigInt::from(1 - chi)) * weight;
    }
    Ok(k_v)
}

/// Monte Carlo curvature: average Poincare-Hopf indices over `samples`
/// random orderings. Each sample's index vector sums to chi exactly, so the
/// returned averages always sum to chi regardless of sample count.
pub fn curvature_monte_carlo(
    g: &Graph,
    seed: u64,
    samples: usize,
) -> Result<BTreeMap<u32, BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chi = SimplicialComplex::whitney(g)?.euler_characteristic();
    let mut totals: BTreeMap<u32, i64> = g.vertices().iter().map(|&v| (v, 0)).collect();
    for _ in 0..samples.max(1) {
        let f = VertexFunction::random(g, &mut rng);
        let idx = ph_indices(g, &f)?;
        debug_assert_eq!(idx.values().sum::<i64>(), chi);
        for (v, i) in idx {
            *totals.get_mut(&v).expect("vertex") += i;
        }
    }
    let m = BigInt::from(samples.max(1) as i64);
    Ok(totals
        .into_iter()
        .map(|(v, t)| (v, BigRational::new(BigInt::from(t), m.clone())))
        .collect())
}
