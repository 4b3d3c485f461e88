//! Exhaustive search for conformal circuit decompositions with
//! `1/κ̇`-integral terms.

use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::imbalance;
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, ElementaryVector, Subspace};

/// Search nodes (candidate coefficient vectors) allowed per target.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum ConjectureStatus {
    /// Terms `(λ_k, g^k)` with `κ̇ λ_k` a positive integer.
    Holds { terms: Vec<(Rational, ElementaryVector)> },
    /// No decomposition exists; the search was exhaustive.
    Violated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub target: Vec<BigInt>,
    pub kappa_dot: BigInt,
    pub status: ConjectureStatus,
    /// Candidate coefficient vectors examined.
    pub searched: u64,
    /// Circuits conformal to the target, oriented along it. For a
    /// violation this is the certificate: no positive `1/κ̇`-integral
    /// combination of at most `n` of them sums to the target.
    pub conformal: Vec<ElementaryVector>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        matches!(self.status, ConjectureStatus::Holds { .. })
    }

    /// Re-checks a decomposition from scratch: exact sum, at most `n`
    /// terms, conformity and per-term `1/κ̇`-integrality.
    pub fn verify(&self) -> bool {
        let ConjectureStatus::Holds { terms } = &self.status else {
            return true;
        };
        let z: Vec<Rational> = self.target.iter().map(num::from_int).collect();
        let mut sum = alloc::vec![Rational::zero(); z.len()];
        for (lambda, g) in terms {
            let term = num::scale(&g.to_rational(), lambda);
            if !lambda.is_positive() || !g.conforms_to(&z) || !term.iter().all(|v| num::is_k_integral(v, &self.kappa_dot)) {
                return false;
            }
            sum = num::add(&sum, &term);
        }
        sum == z && terms.len() <= z.len()
    }
}

/// Circuits and `κ̇` of a subspace, computed once for many targets.
#[derive(Clone, Debug)]
pub struct ConjectureSearch {
    w: Subspace,
    circuits: Vec<ElementaryVector>,
    kappa_dot: BigInt,
    budget: u64,
}

impl ConjectureSearch {
    pub fn new(w: &Subspace) -> Self {
        let circuits = subspace::circuits(w);
        let kappa_dot = imbalance::imbalances_from(&circuits).kappa_dot;
        ConjectureSearch { w: w.clone(), circuits, kappa_dot, budget: DEFAULT_NODE_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn kappa_dot(&self) -> &BigInt {
        &self.kappa_dot
    }

    /// Fewest terms first; within a size, circuit subsets in lexicographic
    /// order of the circuit list. A subset is only tried if its supports
    /// cover `supp(z)`, since conformal terms cannot cancel.
    pub fn decompose(&self, z: &[BigInt]) -> Result<ConjectureReport> {
        let zr: Vec<Rational> = z.iter().map(num::from_int).collect();
        if zr.len() != self.w.ambient_dim() || !self.w.contains(&zr) {
            return Err(Error::NotIntegerKernelVector);
        }
        let conformal: Vec<ElementaryVector> = self.circuits.iter().filter_map(|g| g.oriented_to(&zr)).collect();
        let mut report = ConjectureReport {
            target: z.to_vec(),
            kappa_dot: self.kappa_dot.clone(),
            status: ConjectureStatus::Violated,
            searched: 0,
            conformal,
        };
        if z.iter().all(Zero::is_zero) {
            report.status = ConjectureStatus::Holds { terms: Vec::new() };
            return Ok(report);
        }
        let support = num::support(&zr);
        let rhs: Vec<Rational> = zr.iter().map(|v| v * num::from_int(&self.kappa_dot)).collect();
        // Largest admissible multiplier κ̇λ for each conformal circuit.
        let caps: Vec<BigInt> = report
            .conformal
            .iter()
            .map(|g| {
                g.support.iter().map(|&i| num::floor(&(&rhs[i] / num::from_int(&g.vector[i])))).min().expect("nonempty")
            })
            .collect();
        let n = z.len();
        for h in 1..=n.min(report.conformal.len()) {
            for subset in (0..report.conformal.len()).combinations(h) {
                let covered = support.iter().all(|&i| subset.iter().any(|&k| report.conformal[k].contains(i)));
                if !covered || subset.iter().any(|&k| caps[k] < BigInt::from(1)) {
                    continue;
                }
                if let Some(mu) = self.solve_subset(&report.conformal, &subset, &caps, &rhs, &mut report.searched)? {
                    let kd = num::from_int(&self.kappa_dot);
                    let terms = subset
                        .iter()
                        .zip(mu)
                        .map(|(&k, m)| (num::from_int(&m) / &kd, report.conformal[k].clone()))
                        .collect();
                    report.status = ConjectureStatus::Holds { terms };
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }

    /// Positive integers `μ` with `Σ μ_k g^k = κ̇ z` over the chosen
    /// circuits. Free multipliers of a dependent subset are enumerated
    /// within their caps; pivot multipliers follow.
    fn solve_subset(
        &self,
        circs: &[ElementaryVector],
        subset: &[usize],
        caps: &[BigInt],
        rhs: &[Rational],
        searched: &mut u64,
    ) -> Result<Option<Vec<BigInt>>> {
        let n = rhs.len();
        let cols: Vec<Vec<Rational>> = subset.iter().map(|&k| circs[k].to_rational()).collect();
        let g = RatMatrix::from_rows(n, &cols)?.transpose();
        let Some(particular) = linalg::solve_linear(&g, rhs)? else {
            *searched += 1;
            return Ok(None);
        };
        let (_, pivots, dirs) = linalg::rref_kernel(&g);
        let free: Vec<usize> = (0..subset.len()).filter(|j| !pivots.contains(j)).collect();
        let mut chosen: Vec<BigInt> = Vec::with_capacity(free.len());
        self.enumerate_free(&particular, &dirs, &free, subset, caps, &mut chosen, searched)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_free(
        &self,
        particular: &[Rational],
        dirs: &RatMatrix,
        free: &[usize],
        subset: &[usize],
        caps: &[BigInt],
        chosen: &mut Vec<BigInt>,
        searched: &mut u64,
    ) -> Result<Option<Vec<BigInt>>> {
        let k = chosen.len();
        if k == free.len() {
            *searched += 1;
            if *searched > self.budget {
                return Err(Error::SearchBudget(self.budget));
            }
            let mut mu = particular.to_vec();
            for (t, &f) in free.iter().enumerate() {
                let shift = num::from_int(&chosen[t]) - &particular[f];
                mu = num::axpy(&mu, &shift, dirs.row(t));
            }
            let ok = mu.iter().enumerate().all(|(j, v)| v.is_integer() && v.is_positive() && v.to_integer() <= caps[subset[j]]);
            return Ok(ok.then(|| mu.iter().map(|v| v.to_integer()).collect()));
        }
        let cap = caps[subset[free[k]]].to_u64().unwrap_or(u64::MAX);
        for m in 1..=cap {
            chosen.push(BigInt::from(m));
            let found = self.enumerate_free(particular, dirs, free, subset, caps, chosen, searched)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// One-shot form of [`ConjectureSearch::decompose`].
pub fn conjecture_decompose(w: &Subspace, z: &[BigInt]) -> Result<ConjectureReport> {
    ConjectureSearch::new(w).decompose(z)
}
