//! Search tool used to discover the explicit surface triangulations shipped
//! in the generator catalog. A graph qualifies as a closed surface when every
//! unit sphere is an induced cycle with at least four vertices; simulated
//! annealing over edge flips drives the link penalties to zero, then exact
//! Betti vectors sort the finds into homeomorphism types.
//!
//! Run with e.g. `cargo run --release --bin flagsearch -- surfaces 10 12`
//! or `cargo run --release --bin flagsearch -- dunce`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

use topograph::complex::SimplicialComplex;
use topograph::graph::Graph;
use topograph::hodge::{betti_of_graph, HodgeData};
use topograph::homotopy::{is_contractible, manifold_dimension, SphereVerdict};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    match args.get(1).map(String::as_str) {
        Some("surfaces") => {
            let lo: usize = args[2].parse().unwrap();
            let hi: usize = args[3].parse().unwrap();
            for n in lo..=hi {
                // chi = 0 (torus / Klein bottle) and chi = 1 (projective
                // plane) degree budgets
                search_surfaces(n, 3 * n, "chi=0");
                search_surfaces(n, 3 * (n - 1), "chi=1");
            }
        }
        Some("dunce") => build_dunce(),
        Some("klein") => {
            // long nonorientable hunt: chi = 0 with Betti (1,1,0)
            let n: usize = args[2].parse().unwrap();
            let seeds: u64 = args[3].parse().unwrap();
            hunt(n, 3 * n, seeds, &[1, 1, 0]);
        }
        Some("torus") => {
            let n: usize = args[2].parse().unwrap();
            let seeds: u64 = args[3].parse().unwrap();
            hunt(n, 3 * n, seeds, &[1, 2, 1]);
        }
        Some("twist") => twisted_quotients(),
        _ => eprintln!(
            "usage: flagsearch surfaces LO HI | flagsearch dunce | flagsearch klein N SEEDS | flagsearch twist"
        ),
    }
}

/// Adjacency matrix state for annealing.
struct State {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl State {
    fn random(n: usize, edges: usize, rng: &mut StdRng) -> State {
        let mut s = State {
            n,
            adj: vec![vec![false; n]; n],
        };
        let mut placed = 0;
        while placed < edges {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && !s.adj[a][b] {
                s.adj[a][b] = true;
                s.adj[b][a] = true;
                placed += 1;
            }
        }
        s
    }

    fn edge_count(&self) -> usize {
        (0..self.n)
            .map(|a| (a + 1..self.n).filter(|&b| self.adj[a][b]).count())
            .sum()
    }

    /// Distance of one link from being an induced cycle with >= 4 vertices.
    fn link_penalty(&self, v: usize) -> usize {
        let link: Vec<usize> = (0..self.n).filter(|&u| self.adj[v][u]).collect();
        let k = link.len();
        let mut pen = if k < 4 { 2 * (4 - k) } else { 0 };
        if k == 0 {
            return pen + 4;
        }
        // degree-2 condition inside the link
        for &u in &link {
            let d = link.iter().filter(|&&w| self.adj[u][w]).count();
            pen += d.abs_diff(2);
        }
        // connectivity of the link
        let mut seen = vec![false; self.n];
        let mut stack = vec![link[0]];
        seen[link[0]] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &w in &link {
                if !seen[w] && self.adj[x][w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        pen + 2 * (k - count)
    }

    fn energy(&self, target_edges: usize) -> usize {
        let links: usize = (0..self.n).map(|v| self.link_penalty(v)).sum();
        links + 3 * self.edge_count().abs_diff(target_edges)
    }

    fn to_graph(&self) -> Graph {
        let mut edges = vec![];
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a][b] {
                    edges.push((a as u32, b as u32));
                }
            }
        }
        Graph::new((0..self.n as u32).collect(), edges).unwrap()
    }
}

/// Triangular lattice quotients by a glide reflection: vertex (i, j) with
/// 0 <= i < m, 0 <= j < n, where crossing the i boundary flips j. Edge
/// directions (1,0), (0,1), (1,1).
fn twisted_quotients() {
    for m in 2..=7usize {
        for n in 2..=7usize {
            let norm = |i: i64, j: i64| -> u32 {
                let (m, n) = (m as i64, n as i64);
                let q = i.div_euclid(m);
                let i2 = i.rem_euclid(m);
                let j2 = if q.rem_euclid(2) == 1 {
                    (-j).rem_euclid(n)
                } else {
                    j.rem_euclid(n)
                };
                (i2 * n + j2) as u32
            };
            let mut edges = BTreeSet::new();
            for i in 0..m as i64 {
                for j in 0..n as i64 {
                    let v = norm(i, j);
                    for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                        let w = norm(i + di, j + dj);
                        if v != w {
                            edges.insert((v.min(w), v.max(w)));
                        }
                    }
                }
            }
            let g = Graph::new((0..(m * n) as u32).collect(), edges).unwrap();
            if matches!(manifold_dimension(&g), Ok(SphereVerdict::Sphere(2))) {
                let betti = betti_of_graph(&g).unwrap();
                println!(
                    "m={m} n={n} vertices={} betti={betti:?} edges={:?}",
                    g.n(),
                    g.edges().collect::<Vec<_>>()
                );
            }
        }
    }
}

fn hunt(n: usize, target_edges: usize, seeds: u64, want: &[usize]) {
    for seed in 0..seeds {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut s = State::random(n, target_edges, &mut rng);
        let mut e = s.energy(target_edges);
        let mut temp = 3.0f64;
        for step in 0..400_000 {
            if e == 0 {
                break;
            }
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            s.adj[a][b] = !s.adj[a][b];
            s.adj[b][a] = !s.adj[b][a];
            let ne = s.energy(target_edges);
            let accept = ne <= e || rng.gen_bool(((e as f64 - ne as f64) / temp).exp().min(1.0));
            if accept {
                e = ne;
            } else {
                s.adj[a][b] = !s.adj[a][b];
                s.adj[b][a] = !s.adj[b][a];
            }
            if step % 1000 == 999 {
                temp = (temp * 0.97).max(0.05);
            }
        }
        if e == 0 {
            let g = s.to_graph();
            if matches!(manifold_dimension(&g), Ok(SphereVerdict::Sphere(2))) {
                let betti = betti_of_graph(&g).unwrap();
                if betti == want {
                    println!(
                        "n={n} seed={seed} betti={betti:?} edges={:?}",
                        g.edges().collect::<Vec<_>>()
                    );
                    return;
                }
            }
        }
    }
    println!("n={n}: target not found in {seeds} seeds");
}

fn search_surfaces(n: usize, target_edges: usize, label: &str) {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for seed in 0..60u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut s = State::random(n, target_edges, &mut rng);
        let mut e = s.energy(target_edges);
        let mut temp = 3.0f64;
        for step in 0..400_000 {
            if e == 0 {
                break;
            }
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            s.adj[a][b] = !s.adj[a][b];
            s.adj[b][a] = !s.adj[b][a];
            let ne = s.energy(target_edges);
            let accept = ne <= e || rng.gen_bool(((e as f64 - ne as f64) / temp).exp().min(1.0));
            if accept {
                e = ne;
            } else {
                s.adj[a][b] = !s.adj[a][b];
                s.adj[b][a] = !s.adj[b][a];
            }
            if step % 1000 == 999 {
                temp = (temp * 0.97).max(0.05);
            }
        }
        if e == 0 {
            let g = s.to_graph();
            if matches!(manifold_dimension(&g), Ok(SphereVerdict::Sphere(2))) {
                let betti = betti_of_graph(&g).unwrap();
                if found.insert(betti.clone()) {
                    println!(
                        "n={n} {label} seed={seed} betti={betti:?} edges={:?}",
                        g.edges().collect::<Vec<_>>()
                    );
                }
            }
        }
    }
    if found.is_empty() {
        println!("n={n} {label}: nothing found");
    }
}

/// Dunce hat as a quotient complex: a triangulated 12-gon disk whose
/// boundary runs around a 4-cycle forward, forward, then backward (the
/// a a a^-1 identification). The shipped generator graph is the Barycentric
/// refinement, whose Whitney complex reproduces this complex exactly.
fn build_dunce() {
    // boundary word around the 12-gon, two forward laps and one backward lap
    // of the circle z0 z1 z2 z3
    let sigma: [u32; 12] = [0, 1, 2, 3, 0, 1, 2, 3, 0, 3, 2, 1];
    let z = |i: usize| sigma[i % 12];
    let h = |j: usize| 4 + (j % 6) as u32; // inner hexagon h0..h5 = 4..9
    let c = 10u32; // centre
    let mut facets: BTreeSet<Vec<u32>> = BTreeSet::new();
    let add = |facets: &mut BTreeSet<Vec<u32>>, mut t: Vec<u32>| {
        t.sort_unstable();
        t.dedup();
        assert_eq!(t.len(), 3, "degenerate facet {t:?}");
        assert!(facets.insert(t.clone()), "duplicate facet {t:?}");
    };
    for j in 0..6 {
        // annulus: (w_2j, w_2j+1, h_j), (w_2j+1, w_2j+2, h_j),
        // (w_2j+2, h_j, h_j+1), then the centre fan (h_j, h_j+1, c)
        add(&mut facets, vec![z(2 * j), z(2 * j + 1), h(j)]);
        add(&mut facets, vec![z(2 * j + 1), z(2 * j + 2), h(j)]);
        add(&mut facets, vec![z(2 * j + 2), h(j), h(j + 1)]);
        add(&mut facets, vec![h(j), h(j + 1), c]);
    }
    assert_eq!(facets.len(), 24);
    // close under faces and verify the complex itself
    let mut simplices: BTreeSet<Vec<u32>> = BTreeSet::new();
    for f in &facets {
        for sub in 1usize..8 {
            let s: Vec<u32> = (0..3).filter(|i| sub >> i & 1 == 1).map(|i| f[i]).collect();
            simplices.insert(s);
        }
    }
    let complex = SimplicialComplex::from_simplices(simplices).unwrap();
    let hd = HodgeData::new(complex.clone());
    println!(
        "quotient complex: f={:?} chi={} betti={:?}",
        complex.f_vector().0,
        complex.euler_characteristic(),
        hd.betti()
    );
    let g = complex.barycentric_refinement();
    let betti = betti_of_graph(&g).unwrap();
    let contractible = is_contractible(&g).unwrap();
    println!(
        "dunce graph: n={} betti={betti:?} contractible={contractible:?}",
        g.n(),
    );
    println!("facets = {:?}", facets.iter().collect::<Vec<_>>());
}
