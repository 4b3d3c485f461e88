//! Maximum geometric-mean cycles of the circuit ratio digraph.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use super::CircuitRatioDigraph;
use crate::error::Result;
use crate::num::{self, Rational};
use crate::subspace::Subspace;

/// `product^(1/length)`, compared exactly by cross-powering.
#[derive(Clone, Debug)]
pub struct GeoMeanValue {
    pub product: Rational,
    pub length: usize,
}

impl GeoMeanValue {
    pub fn new(product: Rational, length: usize) -> Self {
        assert!(length > 0, "geometric mean over an empty cycle");
        GeoMeanValue { product, length }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), 1)
    }

    pub fn to_f64(&self) -> f64 {
        libm::pow(num::to_f64(&self.product), 1.0 / self.length as f64)
    }
}

impl Ord for GeoMeanValue {
    fn cmp(&self, other: &Self) -> Ordering {
        num::pow(&self.product, other.length).cmp(&num::pow(&other.product, self.length))
    }
}

impl PartialOrd for GeoMeanValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for GeoMeanValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GeoMeanValue {}

/// Positive scaling `d_i = powers_i^(1/root)`; kept in powered form since
/// the optimal `d` is irrational whenever `κ*` is.
#[derive(Clone, Debug, PartialEq)]
pub struct PoweredScaling {
    pub powers: Vec<Rational>,
    pub root: usize,
}

impl PoweredScaling {
    /// Checks `κ_ij d_j / d_i ≤ t` on every arc, raised to the power `root`.
    pub fn satisfies(&self, g: &CircuitRatioDigraph, t: &GeoMeanValue) -> bool {
        // t^root as a GeoMeanValue of length 1 compared against arc values.
        g.ratio_sets.iter().all(|(&(i, j), set)| {
            let k = set.last().expect("nonempty ratio set");
            let arc = num::pow(k, self.root) * &self.powers[j] / &self.powers[i];
            GeoMeanValue::new(arc, self.root) <= *t
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KappaStar {
    pub value: GeoMeanValue,
    pub cycle: Vec<usize>,
    pub scaling: PoweredScaling,
}

/// Calls `f` once per simple directed cycle (length ≥ 2) of the complete
/// digraph on `n` nodes; each cycle starts at its smallest node.
pub fn for_each_simple_cycle(n: usize, mut f: impl FnMut(&[usize])) {
    fn extend(n: usize, path: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
        if path.len() >= 2 {
            f(path);
        }
        let start = path[0];
        for v in start + 1..n {
            if !used[v] {
                used[v] = true;
                path.push(v);
                extend(n, path, used, f);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut used = alloc::vec![false; n];
    for s in 0..n {
        used[s] = true;
        let mut path = alloc::vec![s];
        extend(n, &mut path, &mut used, &mut f);
        used[s] = false;
    }
}

/// `κ*_W`: the maximum geometric mean of `κ_ij` over cycles, with an
/// attaining cycle and a scaling that certifies optimality.
///
/// The value comes from Karp's recurrence on products. The scaling solves
/// `κ_ij^ℓ P_j ≤ ρ P_i` by multiplicative Bellman-Ford; arcs tight under
/// `P` contain an optimal cycle.
pub fn kappa_star(w: &Subspace) -> Result<KappaStar> {
    let g = super::pairwise(w)?;
    Ok(kappa_star_of(&g))
}

pub fn kappa_star_of(g: &CircuitRatioDigraph) -> KappaStar {
    let n = g.n;
    if g.ratio_sets.is_empty() {
        return KappaStar {
            value: GeoMeanValue::one(),
            cycle: alloc::vec![0],
            scaling: PoweredScaling { powers: alloc::vec![Rational::one(); n], root: 1 },
        };
    }
    let arc = |i: usize, j: usize| g.kappa_ij(i, j).cloned();

    // best[k][v]: largest product of a k-arc walk from node 0 to v.
    let mut best: Vec<Vec<Option<Rational>>> = alloc::vec![alloc::vec![None; n]; n + 1];
    best[0][0] = Some(Rational::one());
    for k in 1..=n {
        for v in 0..n {
            let mut top: Option<Rational> = None;
            for (u, prev) in best[k - 1].iter().enumerate() {
                if let (Some(p), Some(a)) = (prev, arc(u, v)) {
                    let cand = p * a;
                    if top.as_ref().is_none_or(|t| cand > *t) {
                        top = Some(cand);
                    }
                }
            }
            best[k][v] = top;
        }
    }
    let mut value: Option<GeoMeanValue> = None;
    for (v, full) in best[n].iter().enumerate() {
        let Some(full) = full else { continue };
        let worst = (0..n)
            .filter_map(|k| best[k][v].as_ref().map(|p| GeoMeanValue::new(full / p, n - k)))
            .min();
        if let Some(wv) = worst {
            if value.as_ref().is_none_or(|cur| wv > *cur) {
                value = Some(wv);
            }
        }
    }
    let value = value.expect("a connected digraph with arcs has cycles");

    let (rho, len) = (value.product.clone(), value.length);
    let mut powers = alloc::vec![Rational::one(); n];
    for _ in 0..n {
        let mut changed = false;
        for (&(i, j), set) in &g.ratio_sets {
            let bound = &rho * &powers[i] / num::pow(set.last().expect("nonempty"), len);
            if bound < powers[j] {
                powers[j] = bound;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let tight = |i: usize, j: usize| {
        arc(i, j).is_some_and(|k| num::pow(&k, len) * &powers[j] == &rho * &powers[i])
    };
    let cycle = find_cycle(n, &tight).expect("tight arcs of an optimal scaling contain a cycle");
    let value = g.cycle_value(&cycle).expect("cycle uses existing arcs");
    KappaStar { value, cycle, scaling: PoweredScaling { powers, root: len } }
}

/// Some directed cycle in the graph given by `arc`, by depth-first search.
fn find_cycle(n: usize, arc: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = alloc::vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        v: usize,
        n: usize,
        arc: &dyn Fn(usize, usize) -> bool,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for u in 0..n {
            if u == v || !arc(v, u) {
                continue;
            }
            if state[u] == 1 {
                let pos = stack.iter().position(|&x| x == u).expect("on stack");
                return Some(stack[pos..].to_vec());
            }
            if state[u] == 0 {
                if let Some(c) = dfs(u, n, arc, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    (0..n).find_map(|s| if state[s] == 0 { dfs(s, n, arc, &mut state, &mut stack) } else { None })
}

/// Largest geometric mean over all simple cycles, by enumeration.
pub fn kappa_star_brute(g: &CircuitRatioDigraph) -> Option<(GeoMeanValue, Vec<usize>)> {
    let mut best: Option<(GeoMeanValue, Vec<usize>)> = None;
    for_each_simple_cycle(g.n, |c| {
        if let Some(v) = g.cycle_value(c) {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, c.to_vec()));
            }
        }
    });
    best
}
