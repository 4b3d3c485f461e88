//! Numeric condition measures: `χ̄`, `δ`, and Knuth's local basis search.

use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::project_rows;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 100_000;

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration, restarted from every unit vector so no start is orthogonal to
/// the top eigenspace.
fn top_eigenvalue(g: &[Vec<f64>]) -> f64 {
    let m = g.len();
    let apply = |v: &[f64]| -> Vec<f64> { (0..m).map(|i| (0..m).map(|j| g[i][j] * v[j]).sum()).collect() };
    let mut best: f64 = 0.0;
    for start in 0..m {
        let mut v = alloc::vec![0.0; m];
        v[start] = 1.0;
        let mut lambda = 0.0;
        for _ in 0..POWER_MAX_ITERS {
            let w = apply(&v);
            let norm = libm::sqrt(w.iter().map(|x| x * x).sum::<f64>());
            if norm == 0.0 {
                break;
            }
            let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
            let rq: f64 = next.iter().zip(apply(&next)).map(|(a, b)| a * b).sum();
            v = next;
            let done = (rq - lambda).abs() <= POWER_TOL * rq.abs().max(1.0);
            lambda = rq;
            if done {
                break;
            }
        }
        best = best.max(lambda);
    }
    best
}

fn spectral_norm(m: &RatMatrix) -> f64 {
    let rows: Vec<Vec<f64>> = (0..m.rows()).map(|i| m.row(i).iter().map(num::to_f64).collect()).collect();
    let gram: Vec<Vec<f64>> = (0..rows.len())
        .map(|i| (0..rows.len()).map(|j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    libm::sqrt(top_eigenvalue(&gram))
}

/// `χ̄_A = max_B ‖A_B^{-1} A‖₂`. Floating point.
pub fn chibar(a: &RatMatrix) -> Result<f64> {
    if linalg::rank(a) < a.rows() {
        return Err(Error::RankDeficient);
    }
    let mut best: f64 = 0.0;
    for basis in (0..a.cols()).combinations(a.rows()) {
        if let Ok(bf) = linalg::basis_form(a, &basis) {
            best = best.max(spectral_norm(&bf));
        }
    }
    Ok(best)
}

/// Smallest sine between a vector of `vs` and the span of an independent
/// subset not containing it. Zero vectors are ignored; 1 when no pair exists.
pub fn delta(vs: &[Vec<Rational>]) -> f64 {
    let live: Vec<&Vec<Rational>> = vs.iter().filter(|v| !num::is_zero_vec(v)).collect();
    let Some(dim) = live.first().map(|v| v.len()) else {
        return 1.0;
    };
    let mut best_sq: Option<Rational> = None;
    for mask in 0u64..(1u64 << live.len()) {
        let chosen: Vec<usize> = (0..live.len()).filter(|&k| mask >> k & 1 == 1).collect();
        let rows: Vec<Vec<Rational>> = chosen.iter().map(|&k| live[k].clone()).collect();
        let span = RatMatrix::from_rows(dim, &rows).expect("equal lengths");
        if linalg::rank(&span) < chosen.len() {
            continue;
        }
        for (j, v) in live.iter().enumerate() {
            if chosen.contains(&j) {
                continue;
            }
            let resid = num::sub(v, &project_rows(&span, v));
            if num::is_zero_vec(&resid) {
                continue;
            }
            let sin_sq = num::norm2_sq(&resid) / num::norm2_sq(v);
            if best_sq.as_ref().is_none_or(|b| sin_sq < *b) {
                best_sq = Some(sin_sq);
            }
        }
    }
    best_sq.map_or(1.0, |s| libm::sqrt(num::to_f64(&s)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnuthBasis {
    /// Basis column for each row of the basis form.
    pub basis: Vec<usize>,
    pub swaps: usize,
}

/// Swaps a basic column for any nonbasic one with basis-form entry above
/// `mu` in absolute value until none remains. Each swap multiplies the
/// basis determinant by more than `mu`.
pub fn knuth_basis(a: &RatMatrix, mu: &Rational) -> Result<KnuthBasis> {
    if !mu.is_positive() || *mu <= num::rat(1) {
        return Err(Error::BadParameters("mu must exceed 1".into()));
    }
    let (_, mut basis) = linalg::rref(a);
    if basis.len() < a.rows() {
        return Err(Error::RankDeficient);
    }
    let mut swaps = 0;
    loop {
        let bf = linalg::basis_form(a, &basis)?;
        let hit = (0..bf.rows())
            .cartesian_product(0..bf.cols())
            .find(|&(i, j)| !basis.contains(&j) && bf[(i, j)].abs() > *mu);
        match hit {
            Some((i, j)) => {
                basis[i] = j;
                swaps += 1;
            }
            None => return Ok(KnuthBasis { basis, swaps }),
        }
    }
}

/// `(n−m)³ · m · κ · log₂(κ + n)`: the shape of the diameter bound with
/// constant 1. Floating point because of the logarithm.
pub fn diameter_bound(n: usize, m: usize, kappa: &Rational) -> f64 {
    let k = num::to_f64(kappa);
    let d = (n - m) as f64;
    d * d * d * m as f64 * k * libm::log2(k + n as f64)
}
