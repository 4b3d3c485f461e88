//! Exact feasibility from approximate solutions: a seeded stand-in for an
//! approximate LP solver and the recursive projection-and-lift scheme
//! built on it.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imbalance;
use crate::lp::{self, LpInstance, LpStatus};
use crate::num::{self, Rational};
use crate::subspace::{self, MinorMode, Subspace};

/// Halvings of the perturbation before giving up on a direction.
const MAX_HALVINGS: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct ApxSolution {
    pub x_tilde: Vec<Rational>,
    pub epsilon: Rational,
    pub seed: u64,
    /// Exact optimum the perturbation started from.
    pub opt: Rational,
}

impl ApxSolution {
    /// Affine membership plus both approximation inequalities, compared
    /// through squares so that Euclidean norms stay rational.
    pub fn satisfies(&self, w: &Subspace, d: &[Rational], c: &[Rational]) -> bool {
        within_budget(&self.x_tilde, c, d, &self.opt, &self.epsilon, &Rational::one())
            && w.contains(&num::sub(&self.x_tilde, d))
    }
}

/// `⟨c,x⟩ − OPT ≤ f·ε‖c‖‖d‖` and `‖x⁻‖ ≤ f·ε‖d‖`.
fn within_budget(x: &[Rational], c: &[Rational], d: &[Rational], opt: &Rational, eps: &Rational, f: &Rational) -> bool {
    let scale = f * f * eps * eps;
    let dd = num::norm2_sq(d);
    let gap = num::dot(c, x) - opt;
    let cost_ok = !gap.is_positive() || &gap * &gap <= &scale * num::norm2_sq(c) * &dd;
    cost_ok && num::norm2_sq(&num::negative_part(x)) <= scale * dd
}

fn solve_exact(w: &Subspace, d: &[Rational], c: &[Rational]) -> Result<(Vec<Rational>, Rational)> {
    let res = lp::solve(&LpInstance::subspace(w.clone(), d.to_vec(), c.to_vec())?)?;
    match res.status {
        LpStatus::Optimal => Ok((res.primal, res.objective.expect("optimal"))),
        LpStatus::Infeasible => Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() }),
        LpStatus::Unbounded => Err(Error::Unbounded { ray: res.ray.unwrap_or_default() }),
    }
}

/// Solves exactly, then moves along a seeded random direction of `W`,
/// oriented to push a zero coordinate negative, halving the step until both
/// approximation inequalities hold with half of their budget.
pub fn apx_oracle(w: &Subspace, d: &[Rational], c: &[Rational], epsilon: &Rational, seed: u64) -> Result<ApxSolution> {
    if epsilon.is_negative() {
        return Err(Error::BadParameters("epsilon must be nonnegative".into()));
    }
    let (x_star, opt) = solve_exact(w, d, c)?;
    let exact = |x_tilde| ApxSolution { x_tilde, epsilon: epsilon.clone(), seed, opt: opt.clone() };
    if epsilon.is_zero() || num::is_zero_vec(d) || w.dim() == 0 {
        return Ok(exact(x_star));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = w.span_rep();
    let mut dir = alloc::vec![Rational::zero(); d.len()];
    while num::is_zero_vec(&dir) {
        let coefs: Vec<Rational> = (0..basis.rows()).map(|_| num::rat(rng.gen_range(-4..=4))).collect();
        dir = basis.vec_mul(&coefs)?;
    }
    if let Some(i) = (0..d.len()).find(|&i| x_star[i].is_zero() && !dir[i].is_zero()) {
        if dir[i].is_positive() {
            dir = dir.iter().map(|v| -v).collect();
        }
    }
    let half = num::frac(1, 2);
    let mut step = Rational::one();
    for _ in 0..MAX_HALVINGS {
        let x_tilde = num::axpy(&x_star, &step, &dir);
        if within_budget(&x_tilde, c, d, &opt, epsilon, &half) {
            return Ok(exact(x_tilde));
        }
        step *= &half;
    }
    Ok(exact(x_star))
}

/// One oracle call of the recursion, in that level's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionLevel {
    /// Original coordinates this level works on.
    pub coords: Vec<usize>,
    pub kappa: Rational,
    pub x_tilde: Vec<Rational>,
    /// Positions (within `coords`) judged large and projected out.
    pub large: Vec<usize>,
    /// Minimum-norm lift added to `x̃`; empty when nothing was lifted.
    pub lift: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityRun {
    pub x: Vec<Rational>,
    /// Outermost level first.
    pub levels: Vec<RecursionLevel>,
}

impl FeasibilityRun {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// `1/(κ̄_W + n)³`.
pub fn default_epsilon(w: &Subspace) -> Rational {
    let base = num::from_int(&imbalance::imbalances(w).kappa_bar) + num::rat(w.ambient_dim() as i64);
    num::pow(&base, 3).recip()
}

/// Feasible point of `x ∈ W + d, x ≥ 0` from approximate solutions:
/// project `d` onto `W^⊥`, stop if it vanishes, otherwise call the oracle,
/// drop the coordinates with `x̃_i ≥ κ_W ‖x̃⁻‖`, recurse on the projection
/// of `W` to the rest and lift the answer back by the minimum-norm lift.
///
/// The output is verified exactly; a lift that breaks nonnegativity is
/// reported as an audit failure rather than repaired.
pub fn feasibility_simplified(w: &Subspace, d: &[Rational], epsilon: &Rational, seed: u64) -> Result<FeasibilityRun> {
    if d.len() != w.ambient_dim() {
        return Err(Error::DimensionMismatch("d does not match the subspace".into()));
    }
    let coords: Vec<usize> = (0..d.len()).collect();
    let mut levels = Vec::new();
    let x = recurse(w, d, &coords, epsilon, seed, &mut levels)?;
    if !w.contains(&num::sub(&x, d)) {
        return Err(Error::AuditFailure { lemma: "affine membership", step: levels.len(), detail: "output left W + d".into() });
    }
    if let Some(i) = x.iter().position(Signed::is_negative) {
        return Err(Error::AuditFailure {
            lemma: "lift nonnegativity",
            step: levels.len(),
            detail: alloc::format!("coordinate {i} is {}", num::fmt_rational(&x[i])),
        });
    }
    Ok(FeasibilityRun { x, levels })
}

fn recurse(
    w: &Subspace,
    d: &[Rational],
    coords: &[usize],
    epsilon: &Rational,
    seed: u64,
    levels: &mut Vec<RecursionLevel>,
) -> Result<Vec<Rational>> {
    let n = d.len();
    let d = w.project_complement(d);
    if num::is_zero_vec(&d) {
        return Ok(alloc::vec![Rational::zero(); n]);
    }
    let zero_cost = alloc::vec![Rational::zero(); n];
    let apx = apx_oracle(w, &d, &zero_cost, epsilon, seed.wrapping_add(levels.len() as u64)).map_err(|e| match e {
        Error::Infeasible { farkas } => Error::OracleInfeasible { farkas },
        other => other,
    })?;
    let x_tilde = apx.x_tilde;
    let kappa = imbalance::imbalances(w).kappa;
    let threshold = &kappa * &kappa * num::norm2_sq(&num::negative_part(&x_tilde));
    let large: Vec<usize> = (0..n).filter(|&i| !x_tilde[i].is_negative() && &x_tilde[i] * &x_tilde[i] >= threshold).collect();
    if large.is_empty() {
        return Err(Error::EmptyLargeSet);
    }
    let rest: Vec<usize> = (0..n).filter(|i| !large.contains(i)).collect();
    let at = levels.len();
    levels.push(RecursionLevel {
        coords: coords.to_vec(),
        kappa,
        x_tilde: x_tilde.clone(),
        large,
        lift: Vec::new(),
    });
    if rest.is_empty() {
        return Ok(x_tilde);
    }
    let inner = subspace::minor(w, &rest, MinorMode::Project)?;
    let d_rest: Vec<Rational> = rest.iter().map(|&i| d[i].clone()).collect();
    let sub_coords: Vec<usize> = rest.iter().map(|&i| coords[i]).collect();
    let z = recurse(&inner, &d_rest, &sub_coords, epsilon, seed, levels)?;
    let gap: Vec<Rational> = rest.iter().zip(&z).map(|(&i, zi)| zi - &x_tilde[i]).collect();
    let lift = subspace::lift_min_norm(w, &rest, &gap)?;
    let x = num::add(&x_tilde, &lift);
    levels[at].lift = lift;
    Ok(x)
}
