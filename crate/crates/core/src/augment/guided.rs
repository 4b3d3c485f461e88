//! Circuit walk steered by a known basic target.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{maximal_step, AugmentationTrace, Rule, Step, TraceStatus};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::LpInstance;
use crate::num::{self, Rational};
use crate::subspace::{self, DecompositionRule, ElementaryVector, Subspace};

const WALK_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GuidedWalk {
    pub trace: AugmentationTrace,
    /// Step length relative to the chosen decomposition term.
    pub step_lengths: Vec<Rational>,
    /// `‖x_N‖₁` at every iterate, start included.
    pub nonbasic_mass: Vec<Rational>,
    /// Nonbasic columns of the slack-expanded form.
    pub nonbasic: Vec<usize>,
}

/// From `start`, repeatedly decomposes `target − x` conformally, takes the
/// term with the largest mass on nonbasic columns, and steps maximally
/// along it. Works on the slack-expanded standard form; `target` must be
/// a vertex. Each relative step length must lie in `[1, n]`.
pub fn guided_walk(lp: &LpInstance, start: &[Rational], target: &[Rational]) -> Result<GuidedWalk> {
    lp.validate()?;
    if !lp.is_feasible(start) {
        return Err(Error::InfeasiblePoint("start".into()));
    }
    if !lp.is_feasible(target) {
        return Err(Error::InfeasiblePoint("target".into()));
    }
    let ex = lp.expand();
    let width = ex.a.cols();
    let lift = |x: &[Rational]| -> Vec<Rational> {
        let (_, _, u) = lp.constraints();
        let mut out = x.to_vec();
        out.extend(ex.bounded.iter().map(|&j| u[j].clone().expect("bounded") - &x[j]));
        out
    };
    let goal = lift(target);
    let support = num::support(&goal);
    if linalg::rank(&ex.a.select_columns(&support)) < support.len() {
        return Err(Error::TargetNotBasic);
    }
    let mut basis = support.clone();
    let full = linalg::rank(&ex.a);
    for j in 0..width {
        if basis.len() == full {
            break;
        }
        if !basis.contains(&j) {
            basis.push(j);
            if linalg::rank(&ex.a.select_columns(&basis)) < basis.len() {
                basis.pop();
            }
        }
    }
    let nonbasic: Vec<usize> = (0..width).filter(|j| !basis.contains(j)).collect();
    let mass = |x: &[Rational]| nonbasic.iter().map(|&j| x[j].clone()).fold(Rational::zero(), |a, b| a + b);

    let circs = subspace::circuits(&Subspace::kernel_of(&ex.a));
    let none = alloc::vec![None; width];
    let n_bound = num::rat(width as i64);
    let mut x = lift(start);
    let mut trace = AugmentationTrace {
        rule: Rule::GuidedWalk,
        start: start.to_vec(),
        start_objective: num::dot(lp.cost(), start),
        start_epsilon: None,
        steps: Vec::new(),
        status: TraceStatus::Optimal,
    };
    let mut step_lengths = Vec::new();
    let mut nonbasic_mass = alloc::vec![mass(&x)];
    let mut iterations = 0u64;
    while x != goal {
        iterations += 1;
        if iterations > WALK_LIMIT {
            return Err(Error::SearchBudget(WALK_LIMIT));
        }
        let gap = num::sub(&goal, &x);
        let dec = subspace::decompose_with(&circs, &gap, DecompositionRule::GreedyMaximal)?;
        let (coef, g) = dec
            .terms
            .iter()
            .map(|(c, g)| {
                let on_n: Rational = nonbasic.iter().map(|&j| num::from_int(&g.vector[j]).abs()).sum();
                (c * on_n, c, g)
            })
            .fold(None::<(Rational, &Rational, &ElementaryVector)>, |best, cur| match best {
                Some(b) if b.0 >= cur.0 => Some(b),
                _ => Some(cur),
            })
            .map(|(_, c, g)| (c.clone(), g.clone()))
            .expect("nonzero gap has terms");
        let h = num::scale(&g.to_rational(), &coef);
        let alpha = maximal_step(&x, &h, &none)?;
        if alpha < num::rat(1) || alpha > n_bound {
            return Err(Error::AuditFailure {
                lemma: "guided step length",
                step: trace.steps.len() + 1,
                detail: alloc::format!("relative step {} outside [1, {width}]", num::fmt_rational(&alpha)),
            });
        }
        x = num::axpy(&x, &alpha, &h);
        let orig = &g.to_rational()[..ex.n];
        let ev = ElementaryVector::from_rational(orig)?;
        let k = ev.support[0];
        let rescale = &orig[k] / num::from_int(&ev.vector[k]);
        let point = x[..ex.n].to_vec();
        trace.steps.push(Step {
            objective: num::dot(lp.cost(), &point),
            x: point,
            circuit: ev,
            alpha: &alpha * &coef * rescale,
            epsilon: None,
        });
        step_lengths.push(alpha);
        nonbasic_mass.push(mass(&x));
    }
    Ok(GuidedWalk { trace, step_lengths, nonbasic_mass, nonbasic })
}
