//! Exact checks of the convergence statements on recorded traces.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{maximal_step, AugmentationTrace, Engine, ResidualIndexSet, Rule};
use crate::error::{Error, Result};
use crate::imbalance;
use crate::linalg;
use crate::num::{self, Rational};
use crate::subspace::{self, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    /// `ε` at every iterate, start included, recomputed from the points.
    pub epsilons: Vec<Rational>,
    /// Per-window contraction factor demanded of `ε`.
    pub factor: Rational,
    /// `1 − 1/(1 + rank(A)·κ)`, the factor that allows circuits of size
    /// `rank + 1`; reported alongside the demanded one.
    pub rank_factor: Rational,
    pub rank_factor_holds: bool,
    pub kappa: Rational,
    pub windows_checked: usize,
    /// Largest observed `ε(t+n)/ε(t)` over windows with `ε(t) > 0`.
    pub worst_window_ratio: Option<Rational>,
    /// `(index in [2n], first iterate from which it stays out of the residual set)`.
    pub frozen: Vec<(usize, usize)>,
}

fn fail(lemma: &'static str, step: usize, detail: alloc::string::String) -> Error {
    Error::AuditFailure { lemma, step, detail }
}

/// `1 − 1/(1 + kκ)`.
pub fn window_factor(k: usize, kappa: &Rational) -> Rational {
    Rational::one() - (Rational::one() + num::rat(k as i64) * kappa).recip()
}

/// Replays a steepest-descent trace and checks feasibility, maximality,
/// strict descent, monotonicity of `ε`, and its decay over every window
/// of `n` steps by `1 − 1/(1 + (m − 1)κ)` with `m` the row count of `A`.
///
/// With a single row that factor is 0 although two-element circuits
/// exist, so one-row instances can fail the decay check.
pub fn audit_trace(trace: &AugmentationTrace, engine: &Engine) -> Result<AuditReport> {
    if trace.rule != Rule::SteepestDescent {
        return Err(Error::BadParameters("audits apply to steepest-descent traces".into()));
    }
    let a = engine.matrix();
    let (m, n) = (a.rows(), a.cols());
    let b = a.mul_vec(&trace.start)?;
    let points = trace.points();
    for (t, x) in points.iter().enumerate() {
        if !engine.is_feasible_at(x, &b) {
            return Err(fail("feasibility", t, "iterate leaves the feasible region".into()));
        }
    }
    let mut prev_obj = engine.objective(&trace.start);
    if prev_obj != trace.start_objective {
        return Err(fail("objective record", 0, "start objective mismatch".into()));
    }
    for (t, step) in trace.steps.iter().enumerate() {
        let x = points[t];
        let g = step.circuit.to_rational();
        if !subspace::Subspace::kernel_of(a).contains(&g) {
            return Err(fail("circuit step", t + 1, "direction is not in the kernel".into()));
        }
        let alpha = maximal_step(x, &g, engine.bounds()).map_err(|e| fail("maximal step", t + 1, format!("{e}")))?;
        if alpha != step.alpha || num::axpy(x, &alpha, &g) != step.x {
            return Err(fail("maximal step", t + 1, "step is not the maximal one along its circuit".into()));
        }
        let obj = engine.objective(&step.x);
        if obj != step.objective || obj >= prev_obj {
            return Err(fail("strict descent", t + 1, "objective did not strictly decrease".into()));
        }
        prev_obj = obj;
    }

    let epsilons: Vec<Rational> = points.iter().map(|x| engine.epsilon(x)).collect::<Result<_>>()?;
    for (t, (stored, fresh)) in trace.epsilons().iter().zip(&epsilons).enumerate() {
        if stored.is_some_and(|s| s != fresh) {
            return Err(fail("epsilon record", t, "stored epsilon differs from recomputation".into()));
        }
    }
    for t in 1..epsilons.len() {
        if epsilons[t] > epsilons[t - 1] {
            return Err(fail(
                "epsilon monotonicity",
                t,
                format!("{} after {}", num::fmt_rational(&epsilons[t]), num::fmt_rational(&epsilons[t - 1])),
            ));
        }
    }

    let kappa = imbalance::imbalances_from(engine.circuits()).kappa;
    let factor = window_factor(m.saturating_sub(1), &kappa);
    let rank_factor = window_factor(linalg::rank(a), &kappa);
    let rank_factor_holds =
        (0..epsilons.len().saturating_sub(n)).all(|t| epsilons[t + n] <= &rank_factor * &epsilons[t]);
    let mut windows_checked = 0;
    let mut worst: Option<Rational> = None;
    for t in 0..epsilons.len().saturating_sub(n) {
        windows_checked += 1;
        let (early, late) = (&epsilons[t], &epsilons[t + n]);
        if early.is_positive() {
            let r = late / early;
            if worst.as_ref().is_none_or(|w| r > *w) {
                worst = Some(r);
            }
        }
        if *late > &factor * early {
            return Err(fail(
                "epsilon window decay",
                t + n,
                format!(
                    "{} exceeds {} times {}",
                    num::fmt_rational(late),
                    num::fmt_rational(&factor),
                    num::fmt_rational(early)
                ),
            ));
        }
    }

    let residuals: Vec<ResidualIndexSet> = points.iter().map(|x| ResidualIndexSet::of(x, engine.bounds())).collect();
    let mut frozen = Vec::new();
    for k in 0..2 * n {
        if residuals.last().is_some_and(|r| r.contains(k)) {
            continue;
        }
        let since = residuals.iter().rposition(|r| r.contains(k)).map_or(0, |p| p + 1);
        frozen.push((k, since));
    }
    Ok(AuditReport { epsilons, factor, rank_factor, rank_factor_holds, kappa, windows_checked, worst_window_ratio: worst, frozen })
}

/// Checks `⟨c,x'⟩ − OPT ≤ (1 − 1/n)(⟨c,x⟩ − OPT)` on every step.
pub fn ratio_decrease_holds(trace: &AugmentationTrace, opt: &Rational, n: usize) -> Result<()> {
    let shrink = Rational::one() - num::rat(n as i64).recip();
    let mut prev = &trace.start_objective;
    for (t, step) in trace.steps.iter().enumerate() {
        if &step.objective - opt > &shrink * (prev - opt) {
            return Err(fail("ratio-circuit decrease", t + 1, "gap shrank by less than 1 - 1/n".into()));
        }
        prev = &step.objective;
    }
    Ok(())
}

/// Distinct values of `⟨c,g⟩/‖g‖₁` over all elementary vectors, both signs.
pub fn steepness_spectrum(w: &Subspace, c: &[Rational]) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for circ in subspace::circuits(w) {
        let g = circ.to_rational();
        let v = num::dot(c, &g) / num::norm1(&g);
        out.insert(-v.clone());
        out.insert(v);
    }
    out
}

/// `½ ‖c‖∞ (n−m+1) κ̄ ((n−m+1) κ̄ + 1)` for integer costs, `m` the rank.
pub fn spectrum_bound(n: usize, m: usize, kappa_bar: &BigInt, c_inf: &Rational) -> Rational {
    let k = num::from_int(kappa_bar) * num::rat((n - m + 1) as i64);
    c_inf * &k * (&k + Rational::one()) / num::rat(2)
}
