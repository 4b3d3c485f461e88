//! Circuit imbalance measures and the structures derived from them.

mod condition;
mod cycles;
mod tu;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use condition::{chibar, delta, diameter_bound, knuth_basis, KnuthBasis};
pub use cycles::{
    for_each_simple_cycle, kappa_star, kappa_star_brute, kappa_star_of, GeoMeanValue, KappaStar, PoweredScaling,
};
pub use tu::{check_kappa_star_one, is_tu, KappaStarOne, TuViolation};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, ElementaryVector, Subspace};

/// `κ_W`, `κ̇_W`, `κ̄_W` with the circuits attaining them.
#[derive(Clone, Debug, PartialEq)]
pub struct ImbalanceReport {
    pub kappa: Rational,
    pub kappa_dot: BigInt,
    pub kappa_bar: BigInt,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Witnesses {
    /// Circuit and ordered pair `(i, j)` with `|g_j / g_i| = κ`.
    pub kappa: Option<(ElementaryVector, usize, usize)>,
    /// Circuit and index of an entry of absolute value `κ̄`.
    pub kappa_bar: Option<(ElementaryVector, usize)>,
    /// Circuits whose lcms already multiply out to `κ̇`.
    pub kappa_dot: Vec<ElementaryVector>,
}

pub fn imbalances(w: &Subspace) -> ImbalanceReport {
    imbalances_from(&subspace::circuits(w))
}

/// Imbalances over a precomputed circuit list. No circuits means a trivial
/// subspace, where all three measures are 1.
pub fn imbalances_from(circs: &[ElementaryVector]) -> ImbalanceReport {
    let mut kappa = Rational::one();
    let mut kappa_bar = BigInt::one();
    let mut kappa_dot = BigInt::one();
    let mut witnesses = Witnesses::default();
    for g in circs {
        let (lo, hi) = g
            .support
            .iter()
            .minmax_by_key(|&&i| g.vector[i].abs())
            .into_option()
            .expect("circuits are nonempty");
        let ratio = g.ratio(*lo, *hi);
        if ratio > kappa || witnesses.kappa.is_none() {
            kappa = kappa.max(ratio);
            witnesses.kappa = Some((g.clone(), *lo, *hi));
        }
        let top = g.vector[*hi].abs();
        if top > kappa_bar || witnesses.kappa_bar.is_none() {
            kappa_bar = kappa_bar.max(top);
            witnesses.kappa_bar = Some((g.clone(), *hi));
        }
        let next = num::lcm(&kappa_dot, &g.lcm());
        if next != kappa_dot {
            kappa_dot = next;
            witnesses.kappa_dot.push(g.clone());
        }
    }
    ImbalanceReport { kappa, kappa_dot, kappa_bar, witnesses }
}

/// `max_B ‖A_B^{-1} A‖_max` over all column bases.
pub fn kappa_via_basis_forms(a: &RatMatrix) -> Result<Rational> {
    if linalg::rank(a) < a.rows() {
        return Err(Error::RankDeficient);
    }
    let mut best = Rational::one();
    for basis in (0..a.cols()).combinations(a.rows()) {
        if let Ok(bf) = linalg::basis_form(a, &basis) {
            best = best.max(bf.max_abs());
        }
    }
    Ok(best)
}

/// Pairwise imbalances `κ_ij = max K_ij`, `K_ij = {|g_j/g_i|}` over
/// circuits containing both `i` and `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitRatioDigraph {
    pub n: usize,
    pub ratio_sets: BTreeMap<(usize, usize), BTreeSet<Rational>>,
}

impl CircuitRatioDigraph {
    pub fn from_circuits(n: usize, circs: &[ElementaryVector]) -> Self {
        let mut ratio_sets: BTreeMap<(usize, usize), BTreeSet<Rational>> = BTreeMap::new();
        for g in circs {
            for (&i, &j) in g.support.iter().tuple_combinations() {
                ratio_sets.entry((i, j)).or_default().insert(g.ratio(i, j));
                ratio_sets.entry((j, i)).or_default().insert(g.ratio(j, i));
            }
        }
        CircuitRatioDigraph { n, ratio_sets }
    }

    /// `κ_ij`, absent when no circuit holds both or `i == j`.
    pub fn kappa_ij(&self, i: usize, j: usize) -> Option<&Rational> {
        self.ratio_sets.get(&(i, j)).and_then(|s| s.last())
    }

    pub fn ratios(&self, i: usize, j: usize) -> Option<&BTreeSet<Rational>> {
        self.ratio_sets.get(&(i, j))
    }

    /// `κ_W` as the largest pairwise imbalance.
    pub fn kappa(&self) -> Rational {
        self.ratio_sets.values().filter_map(|s| s.last()).max().cloned().unwrap_or_else(Rational::one)
    }

    /// Product of `κ_ij` along a closed walk `cycle[0] → cycle[1] → … → cycle[0]`.
    pub fn cycle_product(&self, cycle: &[usize]) -> Option<Rational> {
        let mut p = Rational::one();
        for k in 0..cycle.len() {
            let (i, j) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            p *= self.kappa_ij(i, j)?;
        }
        Some(p)
    }

    /// `κ(H)^{1/|H|}` for a cycle `H`.
    pub fn cycle_value(&self, cycle: &[usize]) -> Option<GeoMeanValue> {
        Some(GeoMeanValue::new(self.cycle_product(cycle)?, cycle.len()))
    }
}

fn require_connected(w: &Subspace, circs: &[ElementaryVector]) -> Result<()> {
    if subspace::components_with(w.ambient_dim(), circs).len() > 1 {
        return Err(Error::SeparableInput);
    }
    Ok(())
}

pub fn pairwise(w: &Subspace) -> Result<CircuitRatioDigraph> {
    let circs = subspace::circuits(w);
    require_connected(w, &circs)?;
    Ok(CircuitRatioDigraph::from_circuits(w.ambient_dim(), &circs))
}

/// Estimates `hat κ_ij` from the lexicographically first circuit holding
/// `i` and `j`, with `ξ` their maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaEstimate {
    pub xi: Rational,
    pub hat: BTreeMap<(usize, usize), Rational>,
}

pub(crate) fn estimates_from(circs: &[ElementaryVector]) -> BTreeMap<(usize, usize), Rational> {
    let mut hat = BTreeMap::new();
    // Circuits come sorted by support, so the first hit is the lexicographically smallest.
    for g in circs {
        for (&i, &j) in g.support.iter().tuple_combinations() {
            hat.entry((i, j)).or_insert_with(|| g.ratio(i, j));
            hat.entry((j, i)).or_insert_with(|| g.ratio(j, i));
        }
    }
    hat
}

pub fn estimate_kappa(w: &Subspace) -> Result<KappaEstimate> {
    let circs = subspace::circuits(w);
    require_connected(w, &circs)?;
    let hat = estimates_from(&circs);
    let xi = hat.values().max().cloned().unwrap_or_else(Rational::one);
    Ok(KappaEstimate { xi, hat })
}

/// Integer matrix with kernel `W` whose entries divide `κ̇_W`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntRepresentation {
    pub matrix: RatMatrix,
    /// Column carrying the diagonal entry of each row.
    pub basis: Vec<usize>,
    /// True when the diagonal block became the identity.
    pub unit_diagonal: bool,
}

/// Rows of a basis form scaled to primitive integer vectors. Each row is an
/// elementary vector of `W^⊥`, so its entries divide `κ̇_W`. When `W^⊥` is
/// anchored, pivoting on `±1` entries turns the diagonal into the identity.
pub fn int_representation(w: &Subspace) -> IntRepresentation {
    let rref = w.kernel_rep();
    let mut basis: Vec<usize> =
        (0..rref.rows()).map(|i| rref.row(i).iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    let mut rows: Vec<Vec<BigInt>> =
        (0..rref.rows()).map(|i| linalg::integer_normalize(rref.row(i)).expect("nonzero row").0).collect();
    let anchored = subspace::is_anchored(&subspace::dual(w)).is_ok();
    if anchored {
        for i in 0..rows.len() {
            if rows[i][basis[i]].abs().is_one() {
                continue;
            }
            let Some(k) = (0..w.ambient_dim()).find(|&k| !basis.contains(&k) && rows[i][k].abs().is_one()) else {
                continue;
            };
            if rows[i][k].is_negative() {
                rows[i].iter_mut().for_each(|x| *x = -x.clone());
            }
            let pivot = rows[i].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == i || row[k].is_zero() {
                    continue;
                }
                let f = row[k].clone();
                row.iter_mut().zip(&pivot).for_each(|(x, p)| *x -= &f * p);
                let g = row.iter().fold(BigInt::zero(), |acc, x| num::gcd(&acc, x));
                row.iter_mut().for_each(|x| *x /= &g);
            }
            basis[i] = k;
        }
    }
    let unit_diagonal = (0..rows.len()).all(|i| rows[i][basis[i]].abs().is_one());
    let data = rows.iter().map(|r| r.iter().map(num::from_int).collect::<Vec<_>>()).collect::<Vec<_>>();
    let matrix = RatMatrix::from_rows(w.ambient_dim(), &data).expect("rectangular");
    IntRepresentation { matrix, basis, unit_diagonal }
}
