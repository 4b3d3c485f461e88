//! Total unimodularity and the rescaling test for `κ* = 1`.

use alloc::format;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{estimates_from, CircuitRatioDigraph};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, Subspace};

/// A square submatrix whose determinant is outside `{0, ±1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TuViolation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: Rational,
}

/// Brute-force check of every square subdeterminant.
pub fn is_tu(a: &RatMatrix) -> core::result::Result<(), TuViolation> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            if !(x.is_zero() || x.abs().is_one()) {
                return Err(TuViolation { rows: alloc::vec![i], cols: alloc::vec![j], det: x.clone() });
            }
        }
    }
    let ints = a.to_integer_rows();
    for k in 2..=a.rows().min(a.cols()) {
        for rs in (0..a.rows()).combinations(k) {
            for cs in (0..a.cols()).combinations(k) {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| ints[i][j].clone()).collect()).collect();
                let det = linalg::bareiss_det_int(sub);
                if det.abs() > BigInt::one() {
                    return Err(TuViolation { rows: rs, cols: cs, det: num::from_int(&det) });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum KappaStarOne {
    /// `A · diag(scaling)` has `κ = 1`; entries are positive integers dividing `κ̇_A`.
    RescaledTu { scaling: Vec<BigInt> },
    /// A cycle whose product of pairwise imbalances exceeds 1.
    NotRescalable { cycle: Vec<usize>, product: Rational },
}

/// Decides whether some positive column scaling of `A` has unit imbalance.
///
/// Per component, the first circuit through each pair gives an estimate of
/// `κ_ij`; a scaling consistent with all estimates is derived from one root
/// column. Inconsistency exposes a 3-cycle with estimate product > 1. A
/// consistent scaling is confirmed by a TU test of the rescaled basis form;
/// failure there means some `K_ij` holds two values, giving a 2-cycle.
///
/// Orientation: the returned entries scale the columns of `A`, so the
/// kernel coordinates are divided by them.
pub fn check_kappa_star_one(a: &RatMatrix) -> Result<KappaStarOne> {
    let w = Subspace::kernel_of(a);
    let n = w.ambient_dim();
    let circs = subspace::circuits(&w);
    let hat = estimates_from(&circs);
    let digraph = CircuitRatioDigraph::from_circuits(n, &circs);
    let mut scaling = alloc::vec![BigInt::one(); n];

    for block in subspace::components_with(n, &circs) {
        let root = block[0];
        // Column scale for j relative to the root: hat κ_{root,j} = |g_j / g_root|.
        let rel: Vec<Rational> =
            block.iter().map(|&j| if j == root { Rational::one() } else { hat[&(root, j)].clone() }).collect();
        for (x, &i) in block.iter().enumerate() {
            for (y, &j) in block.iter().enumerate() {
                if i == j || rel[y] == (&rel[x] * &hat[&(i, j)]) {
                    continue;
                }
                let forward = vec_cycle(&digraph, &[root, i, j]);
                let backward = vec_cycle(&digraph, &[root, j, i]);
                let (cycle, product) = if forward.1 > backward.1 { forward } else { backward };
                if product <= Rational::one() {
                    return Err(Error::CrossCheck(format!("inconsistent estimates without a >1 cycle at {i},{j}")));
                }
                return Ok(KappaStarOne::NotRescalable { cycle, product });
            }
        }
        let den = num::denominator_lcm(&rel);
        let ints: Vec<BigInt> = rel.iter().map(|r| (r * num::from_int(&den)).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| num::gcd(&acc, x));
        for (&j, v) in block.iter().zip(&ints) {
            scaling[j] = v / &g;
        }
    }

    let kernel_rep = w.kernel_rep();
    let mut scaled = kernel_rep.clone();
    for (j, s) in scaling.iter().enumerate() {
        scaled.scale_column(j, &num::from_int(s));
    }
    let pivots = linalg::rref(kernel_rep).1;
    let bf = linalg::basis_form(&scaled, &pivots)?;
    if is_tu(&bf).is_ok() {
        return Ok(KappaStarOne::RescaledTu { scaling });
    }
    for (&(i, j), set) in &digraph.ratio_sets {
        if set.len() >= 2 {
            let product = digraph.cycle_product(&[i, j]).expect("arcs exist both ways");
            return Ok(KappaStarOne::NotRescalable { cycle: alloc::vec![i, j], product });
        }
    }
    Err(Error::CrossCheck("rescaled basis form is not TU but every ratio set is a singleton".into()))
}

fn vec_cycle(g: &CircuitRatioDigraph, c: &[usize]) -> (Vec<usize>, Rational) {
    (c.to_vec(), g.cycle_product(c).expect("component pairs share circuits"))
}
