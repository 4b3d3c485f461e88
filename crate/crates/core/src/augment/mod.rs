//! Circuit augmentation: direction rules, maximal steps, and instrumented runs.

mod audit;
mod flow;
mod guided;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

pub use audit::{audit_trace, window_factor, ratio_decrease_holds, spectrum_bound, steepness_spectrum, AuditReport};
pub use flow::{flow_to_lp, max_flow_lp, FlowNetwork};
pub use guided::{guided_walk, GuidedWalk};

use crate::error::{Error, Result};
use crate::lp::{self, LpBuilder, LpInstance, LpStatus};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, ElementaryVector, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    SteepestDescent,
    Dantzig,
    DeepestDescent,
    RatioCircuit,
    SupportCircuit,
    GuidedWalk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    Optimal,
    IterationCap,
    /// Support-circuit runs stop at the first basic point.
    BasicReached,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    /// Iterate after the step.
    pub x: Vec<Rational>,
    /// Integer direction, oriented as it was applied.
    pub circuit: ElementaryVector,
    /// Multiplier of `circuit`.
    pub alpha: Rational,
    pub objective: Rational,
    pub epsilon: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentationTrace {
    pub rule: Rule,
    pub start: Vec<Rational>,
    pub start_objective: Rational,
    pub start_epsilon: Option<Rational>,
    pub steps: Vec<Step>,
    pub status: TraceStatus,
}

impl AugmentationTrace {
    pub fn last_point(&self) -> &[Rational] {
        self.steps.last().map_or(&self.start, |s| &s.x)
    }

    /// Iterates including the start.
    pub fn points(&self) -> Vec<&[Rational]> {
        core::iter::once(self.start.as_slice()).chain(self.steps.iter().map(|s| s.x.as_slice())).collect()
    }

    pub fn epsilons(&self) -> Vec<Option<&Rational>> {
        core::iter::once(self.start_epsilon.as_ref()).chain(self.steps.iter().map(|s| s.epsilon.as_ref())).collect()
    }
}

/// Residual directions over `[2n]`: `i` when `x_i` may grow, `n + i` when it may shrink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualIndexSet {
    pub n: usize,
    pub members: Vec<usize>,
}

impl ResidualIndexSet {
    pub fn of(x: &[Rational], u: &[Option<Rational>]) -> Self {
        let n = x.len();
        let up = (0..n).filter(|&i| u[i].as_ref().is_none_or(|ub| x[i] < *ub));
        let down = (0..n).filter(|&i| x[i].is_positive()).map(|i| n + i);
        let mut members: Vec<usize> = up.chain(down).collect();
        members.sort_unstable();
        ResidualIndexSet { n, members }
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }
}

/// A chosen circuit with the score its rule maximized or minimized.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    pub circuit: ElementaryVector,
    pub score: Rational,
    /// Maximal step, when the rule computed it.
    pub alpha: Option<Rational>,
}

/// Costs on moving each coordinate down or up; `None` forbids the move.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioWeights {
    pub minus: Vec<Option<Rational>>,
    pub plus: Vec<Option<Rational>>,
}

impl RatioWeights {
    /// Decreases weighted by `w`, increases free.
    pub fn decreasing(w: Vec<Option<Rational>>) -> Self {
        let n = w.len();
        RatioWeights { minus: w, plus: alloc::vec![Some(Rational::zero()); n] }
    }

    /// `1/x` on decreases and `1/(u − x)` on increases.
    pub fn at(x: &[Rational], u: &[Option<Rational>]) -> Self {
        let inv = |v: Rational| if v.is_positive() { Some(v.recip()) } else { None };
        let minus = x.iter().map(|v| inv(v.clone())).collect();
        let plus = x
            .iter()
            .zip(u)
            .map(|(v, ub)| match ub {
                Some(ub) => inv(ub - v),
                None => Some(Rational::zero()),
            })
            .collect();
        RatioWeights { minus, plus }
    }

    fn weight(&self, g: &[Rational]) -> Option<Rational> {
        let mut total = Rational::zero();
        for (i, v) in g.iter().enumerate() {
            let w = if v.is_negative() {
                self.minus[i].as_ref()?
            } else if v.is_positive() {
                self.plus[i].as_ref()?
            } else {
                continue;
            };
            total += w * v.abs();
        }
        Some(total)
    }
}

/// Largest `α` keeping `x + αg` inside `0 ≤ x ≤ u`.
pub fn maximal_step(x: &[Rational], g: &[Rational], u: &[Option<Rational>]) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for i in 0..x.len() {
        let limit = if g[i].is_negative() {
            Some(&x[i] / -&g[i])
        } else if g[i].is_positive() {
            u[i].as_ref().map(|ub| (ub - &x[i]) / &g[i])
        } else {
            None
        };
        if let Some(l) = limit {
            if best.as_ref().is_none_or(|b| l < *b) {
                best = Some(l);
            }
        }
    }
    match best {
        None => Err(Error::UnboundedDirection),
        Some(a) if !a.is_positive() => Err(Error::NotAugmenting),
        Some(a) => Ok(a),
    }
}

fn steepness(c: &[Rational], g: &[Rational]) -> Rational {
    -num::dot(c, g) / num::norm1(g)
}

/// Circuit data for `min cᵀx, Ax = b, 0 ≤ x ≤ u` with directions in `ker A`.
#[derive(Clone, Debug)]
pub struct Engine {
    a: RatMatrix,
    c: Vec<Rational>,
    u: Vec<Option<Rational>>,
    circuits: Vec<ElementaryVector>,
}

impl Engine {
    pub fn new(a: &RatMatrix, c: &[Rational], u: &[Option<Rational>]) -> Result<Self> {
        if c.len() != a.cols() || u.len() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, cost {}, bounds {}",
                a.cols(),
                c.len(),
                u.len()
            )));
        }
        let circuits = subspace::circuits(&Subspace::kernel_of(a));
        Ok(Engine { a: a.clone(), c: c.to_vec(), u: u.to_vec(), circuits })
    }

    pub fn for_subspace(w: &Subspace, c: &[Rational], u: &[Option<Rational>]) -> Result<Self> {
        Self::new(w.kernel_rep(), c, u)
    }

    /// Engine and right-hand side of an LP in any form.
    pub fn from_lp(lp: &LpInstance) -> Result<(Self, Vec<Rational>)> {
        lp.validate()?;
        let (a, b, u) = lp.constraints();
        Ok((Self::new(&a, lp.cost(), &u)?, b))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn cost(&self) -> &[Rational] {
        &self.c
    }

    pub fn bounds(&self) -> &[Option<Rational>] {
        &self.u
    }

    pub fn circuits(&self) -> &[ElementaryVector] {
        &self.circuits
    }

    pub fn objective(&self, x: &[Rational]) -> Rational {
        num::dot(&self.c, x)
    }

    pub fn is_feasible_at(&self, x: &[Rational], b: &[Rational]) -> bool {
        self.a.mul_vec(x).is_ok_and(|ax| ax == b)
            && x.iter().zip(&self.u).all(|(v, ub)| !v.is_negative() && ub.as_ref().is_none_or(|ub| v <= ub))
    }

    fn check_point(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.a.cols() {
            return Err(Error::DimensionMismatch(format!("point has length {}", x.len())));
        }
        if x.iter().zip(&self.u).any(|(v, ub)| v.is_negative() || ub.as_ref().is_some_and(|ub| v > ub)) {
            return Err(Error::InfeasiblePoint("outside the box".into()));
        }
        Ok(())
    }

    /// `g` can move from `x` by a positive amount.
    pub fn is_feasible_direction(&self, x: &[Rational], g: &[Rational]) -> bool {
        g.iter().enumerate().all(|(i, v)| {
            !(v.is_negative() && x[i].is_zero()
                || v.is_positive() && self.u[i].as_ref().is_some_and(|ub| x[i] == *ub))
        })
    }

    /// Oriented circuits that are feasible at `x` and strictly decrease cost.
    pub fn augmenting(&self, x: &[Rational]) -> Vec<(ElementaryVector, Vec<Rational>)> {
        let mut out = Vec::new();
        for circ in &self.circuits {
            for g in [circ.clone(), circ.negated()] {
                let gr = g.to_rational();
                if num::dot(&self.c, &gr).is_negative() && self.is_feasible_direction(x, &gr) {
                    out.push((g, gr));
                }
            }
        }
        out
    }

    /// First maximizer of `score` in circuit order.
    fn best_by(
        &self,
        x: &[Rational],
        mut score: impl FnMut(&[Rational]) -> Result<Rational>,
    ) -> Result<Direction> {
        self.check_point(x)?;
        let mut best: Option<Direction> = None;
        for (g, gr) in self.augmenting(x) {
            let s = score(&gr)?;
            if best.as_ref().is_none_or(|b| s > b.score) {
                best = Some(Direction { circuit: g, score: s, alpha: None });
            }
        }
        best.ok_or(Error::AlreadyOptimal)
    }

    /// Maximizes `−⟨c,g⟩/‖g‖₁`, cross-checked against the LP over the
    /// residual set.
    pub fn steepest(&self, x: &[Rational]) -> Result<Direction> {
        let scan = self.best_by(x, |g| Ok(steepness(&self.c, g)));
        let lp_eps = self.epsilon(x)?;
        match &scan {
            Ok(d) if d.score != lp_eps => {
                return Err(Error::CrossCheck(format!(
                    "steepness {} by enumeration, {} by LP",
                    num::fmt_rational(&d.score),
                    num::fmt_rational(&lp_eps)
                )))
            }
            Err(Error::AlreadyOptimal) if !lp_eps.is_zero() => {
                return Err(Error::CrossCheck("LP found a descent direction the scan missed".into()))
            }
            _ => {}
        }
        scan
    }

    /// Optimum of `min c̄ᵀz, Āz = 0, 1ᵀz = 1, z ≥ 0` over the residual set;
    /// `None` when that set admits no such `z`.
    pub fn steepest_lp_value(&self, x: &[Rational]) -> Result<Option<Rational>> {
        self.check_point(x)?;
        let n = self.a.cols();
        let res = ResidualIndexSet::of(x, &self.u);
        let mut lp = LpBuilder::new();
        let z: Vec<usize> = lp.vars(res.members.len());
        let column = |k: usize| if k < n { (k, num::rat(1)) } else { (k - n, num::rat(-1)) };
        for r in 0..self.a.rows() {
            let terms = res
                .members
                .iter()
                .zip(&z)
                .filter_map(|(&k, &v)| {
                    let (j, s) = column(k);
                    let coef = &self.a[(r, j)] * s;
                    (!coef.is_zero()).then_some((v, coef))
                })
                .collect();
            lp.constrain(terms, lp::Cmp::Eq, Rational::zero());
        }
        lp.constrain(z.iter().map(|&v| (v, num::rat(1))).collect(), lp::Cmp::Eq, num::rat(1));
        let cost: Vec<(usize, Rational)> = res
            .members
            .iter()
            .zip(&z)
            .map(|(&k, &v)| {
                let (j, s) = column(k);
                (v, &self.c[j] * s)
            })
            .collect();
        let sol = lp.minimize(&cost)?;
        Ok(match sol.status {
            LpStatus::Optimal => sol.objective,
            _ => None,
        })
    }

    /// `ε(x) = max(0, −LP value)`; zero when no residual direction exists.
    pub fn epsilon(&self, x: &[Rational]) -> Result<Rational> {
        Ok(match self.steepest_lp_value(x)? {
            Some(v) if v.is_negative() => -v,
            _ => Rational::zero(),
        })
    }

    /// Maximizes `−⟨c,g⟩` over gcd-normalized integer circuits.
    pub fn dantzig(&self, x: &[Rational]) -> Result<Direction> {
        self.best_by(x, |g| Ok(-num::dot(&self.c, g)))
    }

    /// Maximizes `−α⟨c,g⟩` with `α` the maximal step.
    pub fn deepest(&self, x: &[Rational]) -> Result<Direction> {
        let mut d = self.best_by(x, |g| Ok(-maximal_step(x, g, &self.u)? * num::dot(&self.c, g)))?;
        d.alpha = Some(maximal_step(x, &d.circuit.to_rational(), &self.u)?);
        Ok(d)
    }

    /// Minimizes `⟨c,g⟩ / weight(g)` over circuits, cross-checked against
    /// the LP `min cᵀz, Az = 0, weight(z) ≤ 1`. The score is the LP value.
    pub fn ratio(&self, w: &RatioWeights) -> Result<Direction> {
        let mut best: Option<Direction> = None;
        for circ in &self.circuits {
            for g in [circ.clone(), circ.negated()] {
                let gr = g.to_rational();
                let cost = num::dot(&self.c, &gr);
                if !cost.is_negative() {
                    continue;
                }
                let Some(weight) = w.weight(&gr) else { continue };
                if weight.is_zero() {
                    return Err(Error::UnboundedDirection);
                }
                let score = cost / weight;
                if best.as_ref().is_none_or(|b| score < b.score) {
                    best = Some(Direction { circuit: g, score, alpha: None });
                }
            }
        }
        let lp_value = self.ratio_lp_value(w)?;
        let scan_value = best.as_ref().map_or(Rational::zero(), |d| d.score.clone());
        if lp_value != Some(scan_value.clone()) {
            return Err(Error::CrossCheck(format!(
                "ratio value {} by enumeration, {:?} by LP",
                num::fmt_rational(&scan_value),
                lp_value.map(|v| num::fmt_rational(&v))
            )));
        }
        best.ok_or(Error::NoAugmentingCircuit)
    }

    /// `None` when the ratio LP is unbounded.
    pub fn ratio_lp_value(&self, w: &RatioWeights) -> Result<Option<Rational>> {
        let n = self.a.cols();
        let mut lp = LpBuilder::new();
        let plus: Vec<Option<usize>> = (0..n).map(|i| w.plus[i].as_ref().map(|_| lp.var())).collect();
        let minus: Vec<Option<usize>> = (0..n).map(|i| w.minus[i].as_ref().map(|_| lp.var())).collect();
        for r in 0..self.a.rows() {
            let mut terms = Vec::new();
            for j in 0..n {
                let a = &self.a[(r, j)];
                if a.is_zero() {
                    continue;
                }
                if let Some(v) = plus[j] {
                    terms.push((v, a.clone()));
                }
                if let Some(v) = minus[j] {
                    terms.push((v, -a.clone()));
                }
            }
            lp.constrain(terms, lp::Cmp::Eq, Rational::zero());
        }
        let mut budget = Vec::new();
        let mut cost = Vec::new();
        for j in 0..n {
            if let (Some(v), Some(wt)) = (plus[j], &w.plus[j]) {
                budget.push((v, wt.clone()));
                cost.push((v, self.c[j].clone()));
            }
            if let (Some(v), Some(wt)) = (minus[j], &w.minus[j]) {
                budget.push((v, wt.clone()));
                cost.push((v, -self.c[j].clone()));
            }
        }
        lp.constrain(budget, lp::Cmp::Le, num::rat(1));
        let sol = lp.minimize(&cost)?;
        Ok(match sol.status {
            LpStatus::Optimal => sol.objective,
            _ => None,
        })
    }

    /// Indices strictly between their bounds.
    pub fn free_set(&self, x: &[Rational]) -> Vec<usize> {
        (0..x.len())
            .filter(|&i| x[i].is_positive() && self.u[i].as_ref().is_none_or(|ub| x[i] < *ub))
            .collect()
    }

    /// A circuit inside the free set with `⟨c,g⟩ ≤ 0` whose maximal step
    /// pushes some free coordinate onto a bound.
    pub fn support_circuit(&self, x: &[Rational]) -> Result<Direction> {
        self.check_point(x)?;
        let free = self.free_set(x);
        let Some(circ) = self.circuits.iter().find(|g| g.support.iter().all(|i| free.contains(i))) else {
            return Err(Error::AlreadyBasic);
        };
        let cost = num::dot(&self.c, &circ.to_rational());
        let candidates = if cost.is_positive() {
            alloc::vec![circ.negated()]
        } else if cost.is_negative() {
            alloc::vec![circ.clone()]
        } else {
            alloc::vec![circ.clone(), circ.negated()]
        };
        for g in candidates {
            match maximal_step(x, &g.to_rational(), &self.u) {
                Ok(alpha) => {
                    let score = -num::dot(&self.c, &g.to_rational());
                    return Ok(Direction { circuit: g, score, alpha: Some(alpha) });
                }
                Err(Error::UnboundedDirection) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::UnboundedDirection)
    }

    fn direction(&self, x: &[Rational], rule: Rule) -> Result<Direction> {
        match rule {
            Rule::SteepestDescent => self.steepest(x),
            Rule::Dantzig => self.dantzig(x),
            Rule::DeepestDescent => self.deepest(x),
            Rule::RatioCircuit => self.ratio(&RatioWeights::at(x, &self.u)).map_err(|e| match e {
                Error::NoAugmentingCircuit => Error::AlreadyOptimal,
                other => other,
            }),
            Rule::SupportCircuit => self.support_circuit(x),
            Rule::GuidedWalk => Err(Error::BadParameters("use guided_walk for guided runs".into())),
        }
    }

    /// Augments from `start` until no direction remains or `cap` steps.
    /// An optimal finish is confirmed against the simplex optimum.
    pub fn run(&self, start: &[Rational], rule: Rule, cap: usize) -> Result<AugmentationTrace> {
        self.check_point(start)?;
        let b = self.a.mul_vec(start)?;
        let track_eps = rule == Rule::SteepestDescent;
        let mut trace = AugmentationTrace {
            rule,
            start: start.to_vec(),
            start_objective: self.objective(start),
            start_epsilon: if track_eps { Some(self.epsilon(start)?) } else { None },
            steps: Vec::new(),
            status: TraceStatus::IterationCap,
        };
        let mut x = start.to_vec();
        loop {
            let dir = match self.direction(&x, rule) {
                Ok(d) => d,
                Err(Error::AlreadyOptimal) => {
                    trace.status = TraceStatus::Optimal;
                    break;
                }
                Err(Error::AlreadyBasic) => {
                    trace.status = TraceStatus::BasicReached;
                    break;
                }
                Err(e) => return Err(e),
            };
            if trace.steps.len() >= cap {
                break;
            }
            let g = dir.circuit.to_rational();
            let alpha = maximal_step(&x, &g, &self.u)?;
            let next = num::axpy(&x, &alpha, &g);
            debug_assert!(self.is_feasible_at(&next, &b));
            debug_assert!(g.iter().enumerate().any(|(i, v)| !v.is_zero()
                && (next[i].is_zero() || self.u[i].as_ref().is_some_and(|ub| next[i] == *ub))));
            let objective = self.objective(&next);
            let prev = trace.steps.last().map_or(&trace.start_objective, |s| &s.objective);
            let decreased = if rule == Rule::SupportCircuit { objective <= *prev } else { objective < *prev };
            if !decreased {
                return Err(Error::CrossCheck("augmentation failed to decrease the objective".into()));
            }
            let epsilon = if track_eps { Some(self.epsilon(&next)?) } else { None };
            x = next;
            trace.steps.push(Step { x: x.clone(), circuit: dir.circuit, alpha, objective, epsilon });
        }
        if trace.status == TraceStatus::Optimal {
            let lp = LpInstance::bounded(self.a.clone(), b, self.c.clone(), self.u.clone())?;
            let opt = lp::solve(&lp)?;
            let last = trace.steps.last().map_or(&trace.start_objective, |s| &s.objective);
            if opt.objective.as_ref() != Some(last) {
                return Err(Error::CrossCheck(format!(
                    "augmentation stopped at {} but the simplex optimum is {:?}",
                    num::fmt_rational(last),
                    opt.objective.map(|v| num::fmt_rational(&v))
                )));
            }
        }
        Ok(trace)
    }
}

/// Feasible start from phase one, then [`Engine::run`].
pub fn run(lp: &LpInstance, rule: Rule, cap: usize, start: Option<Vec<Rational>>) -> Result<AugmentationTrace> {
    let (engine, b) = Engine::from_lp(lp)?;
    let start = match start {
        Some(x) => {
            if !engine.is_feasible_at(&x, &b) {
                return Err(Error::InfeasiblePoint("start violates the constraints".into()));
            }
            x
        }
        None => {
            let zero = alloc::vec![Rational::zero(); lp.num_vars()];
            let res = lp::solve(&lp.with_cost(zero))?;
            if res.status != LpStatus::Optimal {
                return Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() });
            }
            res.primal
        }
    };
    engine.run(&start, rule, cap)
}

/// `10 · n² · m · κ · (log₂(κ + n) + 1)`, saturating.
pub fn default_cap(n: usize, m: usize, kappa: &Rational) -> usize {
    let k = num::to_f64(kappa);
    let v = 10.0 * (n * n * m.max(1)) as f64 * k * (libm::log2(k + n as f64) + 1.0);
    if v >= usize::MAX as f64 {
        usize::MAX
    } else {
        libm::ceil(v) as usize
    }
}

pub fn steepest_direction(
    w: &Subspace,
    c: &[Rational],
    x: &[Rational],
    u: &[Option<Rational>],
) -> Result<Direction> {
    Engine::for_subspace(w, c, u)?.steepest(x)
}

pub fn dantzig_direction(w: &Subspace, c: &[Rational], x: &[Rational], u: &[Option<Rational>]) -> Result<Direction> {
    Engine::for_subspace(w, c, u)?.dantzig(x)
}

pub fn deepest_direction(w: &Subspace, c: &[Rational], x: &[Rational], u: &[Option<Rational>]) -> Result<Direction> {
    Engine::for_subspace(w, c, u)?.deepest(x)
}

pub fn ratio_circuit(a: &RatMatrix, c: &[Rational], w: &RatioWeights) -> Result<Direction> {
    Engine::new(a, c, &alloc::vec![None; a.cols()])?.ratio(w)
}

pub fn support_circuit(a: &RatMatrix, c: &[Rational], x: &[Rational]) -> Result<Direction> {
    Engine::new(a, c, &alloc::vec![None; a.cols()])?.support_circuit(x)
}

pub fn epsilon_of(a: &RatMatrix, c: &[Rational], x: &[Rational], u: &[Option<Rational>]) -> Result<Rational> {
    Engine::new(a, c, u)?.epsilon(x)
}
