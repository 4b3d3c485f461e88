//! Hoffman-type proximity: nearby feasible and optimal points, transfer of
//! optimality between right-hand sides, and variable fixing under cost
//! perturbation. Every bound is checked in exact arithmetic.

mod blackbox;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

pub use blackbox::{apx_oracle, default_epsilon, feasibility_simplified, ApxSolution, FeasibilityRun, RecursionLevel};

use crate::error::{Error, Result};
use crate::imbalance;
use crate::lp::{self, Cmp, LpBuilder, LpInstance, LpStatus};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq)]
pub struct ProximityWitness {
    pub point: Vec<Rational>,
    pub bound: Rational,
    /// `‖point − d‖∞`.
    pub distance: Rational,
    /// `bound − distance`, never negative.
    pub slack: Rational,
}

/// `supp(d⁻) ∪ supp(c⁺)`, sorted.
pub fn lambda_set(d: &[Rational], c: &[Rational]) -> Vec<usize> {
    (0..d.len().max(c.len()))
        .filter(|&i| d.get(i).is_some_and(|v| v.is_negative()) || c.get(i).is_some_and(|v| v.is_positive()))
        .collect()
}

fn check_len(w: &Subspace, v: &[Rational], what: &str) -> Result<()> {
    if v.len() != w.ambient_dim() {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {}", v.len(), w.ambient_dim())));
    }
    Ok(())
}

/// Builder holding `x ∈ W + d, x ≥ 0`; returns the `x` variables too.
fn affine_system(w: &Subspace, d: &[Rational]) -> (LpBuilder, Vec<usize>) {
    let a = w.kernel_rep();
    let rhs = a.mul_vec(d).expect("length checked");
    let mut lp = LpBuilder::new();
    let xs = lp.vars(d.len());
    for (i, r) in rhs.into_iter().enumerate() {
        lp.constrain(LpBuilder::terms(&xs, a.row(i)), Cmp::Eq, r);
    }
    (lp, xs)
}

/// Adds `t ≥ |x_i − p_i|` and `e_i ≥ |x_i − p_i|`, then minimizes `t` and
/// afterwards `Σ e_i`. `None` when the system is infeasible.
fn nearest(mut lp: LpBuilder, xs: &[usize], p: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let t = lp.var();
    let es = lp.vars(xs.len());
    let one = Rational::one();
    for ((&x, &e), pi) in xs.iter().zip(&es).zip(p) {
        lp.constrain(alloc::vec![(x, one.clone()), (t, -one.clone())], Cmp::Le, pi.clone());
        lp.constrain(alloc::vec![(x, -one.clone()), (t, -one.clone())], Cmp::Le, -pi.clone());
        lp.constrain(alloc::vec![(x, one.clone()), (e, -one.clone())], Cmp::Le, pi.clone());
        lp.constrain(alloc::vec![(x, -one.clone()), (e, -one.clone())], Cmp::Le, -pi.clone());
    }
    let l1: Vec<(usize, Rational)> = es.iter().map(|&e| (e, one.clone())).collect();
    let sol = lp.minimize_lex(&[alloc::vec![(t, one.clone())], l1])?;
    Ok(sol.is_optimal().then(|| xs.iter().map(|&x| sol.x[x].clone()).collect()))
}

fn witness(point: Vec<Rational>, d: &[Rational], bound: Rational, lemma: &'static str) -> Result<ProximityWitness> {
    let distance = num::norm_inf(&num::sub(&point, d));
    if distance > bound {
        return Err(Error::AuditFailure {
            lemma,
            step: 0,
            detail: format!("distance {} exceeds {}", num::fmt_rational(&distance), num::fmt_rational(&bound)),
        });
    }
    let slack = &bound - &distance;
    Ok(ProximityWitness { point, bound, distance, slack })
}

fn farkas_of(w: &Subspace, d: &[Rational]) -> Result<Error> {
    let zero = alloc::vec![Rational::zero(); d.len()];
    let res = lp::solve(&LpInstance::subspace(w.clone(), d.to_vec(), zero)?)?;
    Ok(Error::Infeasible { farkas: res.farkas.unwrap_or_default() })
}

/// The feasible point of `W + d, x ≥ 0` closest to `d` in `ℓ∞` (ties by
/// `ℓ1`), checked against `κ_W ‖d⁻‖₁`.
pub fn hoffman_feasibility_witness(w: &Subspace, d: &[Rational]) -> Result<ProximityWitness> {
    check_len(w, d, "d")?;
    let (lp, xs) = affine_system(w, d);
    let Some(point) = nearest(lp, &xs, d)? else {
        return Err(farkas_of(w, d)?);
    };
    let bound = imbalance::imbalances(w).kappa * num::norm1(&num::negative_part(d));
    witness(point, d, bound, "feasibility proximity")
}

/// The optimal point of `min ⟨c,x⟩, x ∈ W + d, x ≥ 0` closest to `d`,
/// checked against `κ_W ‖d_Λ‖₁` with `Λ = supp(d⁻) ∪ supp(c⁺)`.
pub fn hoffman_opt_witness(w: &Subspace, d: &[Rational], c: &[Rational]) -> Result<ProximityWitness> {
    check_len(w, d, "d")?;
    check_len(w, c, "c")?;
    if c.iter().any(Signed::is_negative) {
        return Err(Error::NegativeCost);
    }
    let res = lp::solve(&LpInstance::subspace(w.clone(), d.to_vec(), c.to_vec())?)?;
    let opt = match res.status {
        LpStatus::Optimal => res.objective.expect("optimal"),
        LpStatus::Infeasible => return Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() }),
        LpStatus::Unbounded => return Err(Error::Unbounded { ray: res.ray.unwrap_or_default() }),
    };
    let (mut lp, xs) = affine_system(w, d);
    lp.constrain(LpBuilder::terms(&xs, c), Cmp::Eq, opt);
    let point = nearest(lp, &xs, d)?.expect("optimal face is nonempty");
    let mass: Rational = lambda_set(d, c).iter().map(|&i| d[i].abs()).sum();
    witness(point, d, imbalance::imbalances(w).kappa * mass, "optimality proximity")
}

/// Checks that `(x̃, s)` is a primal-dual optimal pair of
/// `min ⟨s,x⟩, x ∈ W + x̃, x ≥ 0`; the cost is only relevant modulo `W^⊥`,
/// so `s` itself serves as the cost.
fn check_pair(w: &Subspace, x: &[Rational], s: &[Rational]) -> Result<()> {
    check_len(w, x, "x")?;
    check_len(w, s, "s")?;
    if x.iter().any(Signed::is_negative) {
        return Err(Error::NotOptimalPair("primal has a negative entry".into()));
    }
    if s.iter().any(Signed::is_negative) {
        return Err(Error::NotOptimalPair("dual slack has a negative entry".into()));
    }
    if !num::dot(x, s).is_zero() {
        return Err(Error::NotOptimalPair("complementary slackness fails".into()));
    }
    Ok(())
}

/// `((κ_W + 1)‖Π_{W^⊥}(d − x̃)‖₁, R)` with `R = {i : x̃_i > bound}`: every
/// dual optimum of the problem moved to `W + d` vanishes on `R`.
pub fn transfer_bound(w: &Subspace, x_tilde: &[Rational], s: &[Rational], d: &[Rational]) -> Result<(Rational, Vec<usize>)> {
    check_pair(w, x_tilde, s)?;
    check_len(w, d, "d")?;
    let shift = w.project_complement(&num::sub(d, x_tilde));
    let bound = (imbalance::imbalances(w).kappa + Rational::one()) * num::norm1(&shift);
    let r = (0..x_tilde.len()).filter(|&i| x_tilde[i] > bound).collect();
    Ok((bound, r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferCheck {
    pub bound: Rational,
    pub r: Vec<usize>,
    /// Least `‖x* − x̃‖∞` over optimal `x*` of the moved problem.
    pub nearest_distance: Rational,
    pub nearest: Vec<Rational>,
    /// Largest `s*_i` over dual optima, for each `i ∈ R`.
    pub dual_maxima: Vec<(usize, Rational)>,
}

impl TransferCheck {
    pub fn holds(&self) -> bool {
        self.nearest_distance <= self.bound && self.dual_maxima.iter().all(|(_, v)| v.is_zero())
    }
}

/// Solves the moved problem and measures both conclusions exactly: the
/// nearest optimal point by a lexicographic LP over the optimal face, and
/// each `max s*_i` over the dual optimal face.
pub fn verify_transfer(w: &Subspace, x_tilde: &[Rational], s: &[Rational], d: &[Rational]) -> Result<TransferCheck> {
    let (bound, r) = transfer_bound(w, x_tilde, s, d)?;
    let res = lp::solve(&LpInstance::subspace(w.clone(), d.to_vec(), s.to_vec())?)?;
    let opt = match res.status {
        LpStatus::Optimal => res.objective.expect("optimal"),
        LpStatus::Infeasible => return Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() }),
        LpStatus::Unbounded => unreachable!("nonnegative costs are bounded below"),
    };
    let (mut primal, xs) = affine_system(w, d);
    primal.constrain(LpBuilder::terms(&xs, s), Cmp::Eq, opt.clone());
    let nearest = nearest(primal, &xs, x_tilde)?.expect("optimal face is nonempty");
    let nearest_distance = num::norm_inf(&num::sub(&nearest, x_tilde));

    // Dual face: σ = s + Aᵀy ≥ 0 with ⟨s − σ, d⟩ = OPT, where ker(A) = W.
    let a = w.kernel_rep();
    let mut dual = LpBuilder::new();
    let ys: Vec<usize> = (0..a.rows()).map(|_| dual.free_var()).collect();
    let col = |j: usize| -> Vec<(usize, Rational)> { LpBuilder::terms(&ys, &a.column(j)) };
    for (j, sj) in s.iter().enumerate() {
        dual.constrain(col(j), Cmp::Ge, -sj.clone());
    }
    // ⟨s − σ, d⟩ = −⟨y, Ad⟩ must reach OPT.
    let ad = a.mul_vec(d)?;
    dual.constrain(LpBuilder::terms(&ys, &ad), Cmp::Eq, -opt);
    let dual_maxima = r
        .iter()
        .map(|&i| {
            let sol = dual.maximize(&col(i))?;
            let top = sol.objective.ok_or_else(|| Error::CrossCheck("dual face is empty or unbounded".into()))?;
            Ok((i, &s[i] + top))
        })
        .collect::<Result<_>>()?;
    Ok(TransferCheck { bound, r, nearest_distance, nearest, dual_maxima })
}

/// Sets of variables pinned at 0 and at their upper bounds for every
/// optimum under cost `c2`, predicted from an optimal pair for `c1`.
pub fn fixing_sets_bounds(
    a: &RatMatrix,
    b: &[Rational],
    u: &[Option<Rational>],
    c1: &[Rational],
    c2: &[Rational],
    x1: &[Rational],
    y1: &[Rational],
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = a.cols();
    if c2.len() != n || y1.len() != a.rows() {
        return Err(Error::DimensionMismatch("cost or dual length".into()));
    }
    let lp1 = LpInstance::bounded(a.clone(), b.to_vec(), c1.to_vec(), u.to_vec())?;
    if !lp1.is_feasible(x1) {
        return Err(Error::NotOptimalPair("primal is infeasible".into()));
    }
    let ay = a.vec_mul(y1)?;
    for i in 0..n {
        let below_cap = u[i].as_ref().is_none_or(|ub| x1[i] < *ub);
        if below_cap && ay[i] > c1[i] {
            return Err(Error::NotOptimalPair(format!("column {i} below its bound has negative reduced cost")));
        }
        if x1[i].is_positive() && ay[i] < c1[i] {
            return Err(Error::NotOptimalPair(format!("positive column {i} has positive reduced cost")));
        }
    }
    let kappa = imbalance::imbalances(&Subspace::kernel_of(a)).kappa;
    let tau = (kappa + Rational::one()) * num::norm1(&num::sub(c1, c2));
    let r0 = (0..n).filter(|&i| ay[i] < &c1[i] - &tau).collect();
    let ru = (0..n).filter(|&i| ay[i] > &c1[i] + &tau).collect();
    Ok((r0, ru))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixingCheck {
    pub r0: Vec<usize>,
    pub ru: Vec<usize>,
    /// Largest value of `x_i`, `i ∈ R0`, over optima for `c2`.
    pub r0_maxima: Vec<(usize, Rational)>,
    /// Smallest value of `x_i`, `i ∈ Ru`, over optima for `c2`.
    pub ru_minima: Vec<(usize, Rational)>,
    pub holds: bool,
}

/// Re-solves with `c2` and extremizes each predicted coordinate over the
/// whole optimal face.
#[allow(clippy::too_many_arguments)]
pub fn verify_fixing(
    a: &RatMatrix,
    b: &[Rational],
    u: &[Option<Rational>],
    c1: &[Rational],
    c2: &[Rational],
    x1: &[Rational],
    y1: &[Rational],
) -> Result<FixingCheck> {
    let (r0, ru) = fixing_sets_bounds(a, b, u, c1, c2, x1, y1)?;
    let res = lp::solve(&LpInstance::bounded(a.clone(), b.to_vec(), c2.to_vec(), u.to_vec())?)?;
    let opt = match res.status {
        LpStatus::Optimal => res.objective.expect("optimal"),
        LpStatus::Infeasible => return Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() }),
        LpStatus::Unbounded => return Err(Error::Unbounded { ray: res.ray.unwrap_or_default() }),
    };
    let mut face = LpBuilder::new();
    let xs = face.vars(a.cols());
    for (i, bi) in b.iter().enumerate() {
        face.constrain(LpBuilder::terms(&xs, a.row(i)), Cmp::Eq, bi.clone());
    }
    for (j, ub) in u.iter().enumerate() {
        if let Some(ub) = ub {
            face.constrain(alloc::vec![(xs[j], Rational::one())], Cmp::Le, ub.clone());
        }
    }
    face.constrain(LpBuilder::terms(&xs, c2), Cmp::Eq, opt);
    let extreme = |i: usize, max: bool| -> Result<Rational> {
        let obj = alloc::vec![(xs[i], Rational::one())];
        let sol = if max { face.maximize(&obj)? } else { face.minimize(&obj)? };
        sol.objective.ok_or_else(|| Error::CrossCheck("optimal face is empty".into()))
    };
    let r0_maxima: Vec<(usize, Rational)> = r0.iter().map(|&i| Ok((i, extreme(i, true)?))).collect::<Result<_>>()?;
    let ru_minima: Vec<(usize, Rational)> = ru.iter().map(|&i| Ok((i, extreme(i, false)?))).collect::<Result<_>>()?;
    let holds = r0_maxima.iter().all(|(_, v)| v.is_zero())
        && ru_minima.iter().all(|(i, v)| u[*i].as_ref().is_some_and(|ub| v == ub));
    Ok(FixingCheck { r0, ru, r0_maxima, ru_minima, holds })
}
