//! Seeded fixture families: flow networks, graph incidence matrices, network
//! matrices and random rational matrices. Identical spec and seed give
//! identical output.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augment::FlowNetwork;
use crate::error::{Error, Result};
use crate::imbalance::is_tu;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Connected network with capacities, costs and demands met by a random flow.
    Flow { nodes: usize, arcs: usize, seed: u64 },
    /// Node-edge incidence of the complete graph `K_nodes`.
    Incidence { nodes: usize },
    /// Two triangles joined by a bridge: 6 nodes, 7 edges.
    Dumbbell,
    /// Network matrix of a random directed tree with `rows` arcs.
    TuNetwork { rows: usize, cols: usize, seed: u64 },
    /// Entries `p/q` with `|p| ≤ max_abs`, `1 ≤ q ≤ max_den`.
    RandomRational { rows: usize, cols: usize, seed: u64, max_abs: i64, max_den: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Matrix(RatMatrix),
    Flow(FlowNetwork),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    Ok(match *spec {
        GeneratorSpec::Flow { nodes, arcs, seed } => Generated::Flow(flow_network(nodes, arcs, seed)?),
        GeneratorSpec::Incidence { nodes } => Generated::Matrix(complete_graph_incidence(nodes)?),
        GeneratorSpec::Dumbbell => Generated::Matrix(dumbbell()),
        GeneratorSpec::TuNetwork { rows, cols, seed } => Generated::Matrix(tu_network(rows, cols, seed)?),
        GeneratorSpec::RandomRational { rows, cols, seed, max_abs, max_den } => {
            Generated::Matrix(random_rational(rows, cols, seed, max_abs, max_den)?)
        }
    })
}

/// Undirected incidence: a 1 at both ends of every edge.
fn undirected_incidence(nodes: usize, edges: &[(usize, usize)]) -> RatMatrix {
    let mut a = RatMatrix::zeros(nodes, edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        a[(u, e)] = num::rat(1);
        a[(v, e)] = num::rat(1);
    }
    a
}

pub fn complete_graph_incidence(nodes: usize) -> Result<RatMatrix> {
    if nodes < 2 {
        return Err(Error::BadParameters("complete graph needs at least 2 nodes".into()));
    }
    let edges: Vec<(usize, usize)> = (0..nodes).flat_map(|u| (u + 1..nodes).map(move |v| (u, v))).collect();
    Ok(undirected_incidence(nodes, &edges))
}

pub fn dumbbell() -> RatMatrix {
    undirected_incidence(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
}

/// Arcs `(tail, head)` of a random spanning tree on `nodes`, random orientations.
fn random_tree(nodes: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    (1..nodes)
        .map(|v| {
            let p = rng.gen_range(0..v);
            if rng.gen_bool(0.5) { (p, v) } else { (v, p) }
        })
        .collect()
}

pub fn flow_network(nodes: usize, arcs: usize, seed: u64) -> Result<FlowNetwork> {
    if nodes < 2 || arcs + 1 < nodes {
        return Err(Error::BadParameters(format!("flow family needs nodes ≥ 2 and arcs ≥ nodes − 1, got {nodes}, {arcs}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = random_tree(nodes, &mut rng);
    while all.len() < arcs {
        let t = rng.gen_range(0..nodes);
        let h = rng.gen_range(0..nodes);
        if t != h {
            all.push((t, h));
        }
    }
    let caps: Vec<i64> = all.iter().map(|_| rng.gen_range(1..=6)).collect();
    let cost: Vec<Rational> = all.iter().map(|_| num::rat(rng.gen_range(-4..=6))).collect();
    let flow: Vec<Rational> = caps.iter().map(|&u| num::rat(rng.gen_range(0..=u))).collect();
    let capacity = caps.into_iter().map(|u| Some(num::rat(u))).collect();
    let mut net = FlowNetwork { nodes, arcs: all, capacity, cost, demand: Vec::new() };
    net.demand = net.incidence().mul_vec(&flow)?;
    Ok(net)
}

/// Columns are signed arc indicators of tree paths between random node
/// pairs; certified TU before returning.
pub fn tu_network(rows: usize, cols: usize, seed: u64) -> Result<RatMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParameters("network matrix needs at least one row and column".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rows + 1;
    let tree = random_tree(nodes, &mut rng);
    // parent[v] = (parent node, tree arc, arc points towards the parent)
    let mut parent = alloc::vec![None; nodes];
    for (e, &(t, h)) in tree.iter().enumerate() {
        let child = t.max(h);
        parent[child] = Some((t.min(h), e, t == child));
    }
    let depth = |mut v: usize| {
        let mut d = 0;
        while let Some((p, _, _)) = parent[v] {
            v = p;
            d += 1;
        }
        d
    };
    let mut a = RatMatrix::zeros(rows, cols);
    for j in 0..cols {
        let mut u = rng.gen_range(0..nodes);
        let mut v = rng.gen_range(0..nodes);
        while u == v {
            v = rng.gen_range(0..nodes);
        }
        // Walk both ends up to their common ancestor; u-side arcs are
        // traversed towards the root, v-side arcs away from it.
        let (mut du, mut dv) = (depth(u), depth(v));
        while u != v {
            if du >= dv {
                let (p, e, up) = parent[u].expect("non-root");
                a[(e, j)] = num::rat(if up { 1 } else { -1 });
                u = p;
                du -= 1;
            } else {
                let (p, e, up) = parent[v].expect("non-root");
                a[(e, j)] = num::rat(if up { -1 } else { 1 });
                v = p;
                dv -= 1;
            }
        }
    }
    if let Err(v) = is_tu(&a) {
        return Err(Error::CrossCheck(format!("network matrix has subdeterminant {}", num::fmt_rational(&v.det))));
    }
    Ok(a)
}

pub fn random_rational(rows: usize, cols: usize, seed: u64, max_abs: i64, max_den: i64) -> Result<RatMatrix> {
    if rows == 0 || cols == 0 || max_abs < 1 || max_den < 1 {
        return Err(Error::BadParameters("random matrix needs positive sizes and bounds".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| num::frac(rng.gen_range(-max_abs..=max_abs), rng.gen_range(1..=max_den))).collect();
    RatMatrix::from_vec(rows, cols, data)
}
