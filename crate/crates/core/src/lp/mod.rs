//! Exact linear programming: Bland simplex, vertex enumeration, edge-graph
//! diameter, and fractionality.

mod builder;
mod polyhedron;
mod simplex;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use builder::{Cmp, LpBuilder, LpSolution};
pub use polyhedron::{edge_graph_diameter, fractionality, is_bounded, vertices, Vertex};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::Subspace;
use simplex::StdOutcome;

#[derive(Clone, Debug, PartialEq)]
pub enum LpInstance {
    /// `min cᵀx, Ax = b, x ≥ 0`.
    Standard { a: RatMatrix, b: Vec<Rational>, c: Vec<Rational> },
    /// `min cᵀx, Ax = b, 0 ≤ x ≤ u`; `None` is an absent bound.
    Bounded { a: RatMatrix, b: Vec<Rational>, c: Vec<Rational>, u: Vec<Option<Rational>> },
    /// `min cᵀx, x ∈ W + d, x ≥ 0`.
    SubspaceForm { w: Subspace, d: Vec<Rational>, c: Vec<Rational> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Optimal point, or a feasible point when unbounded; empty when infeasible.
    pub primal: Vec<Rational>,
    pub objective: Option<Rational>,
    /// Basic columns of the slack-expanded standard form (original columns
    /// first, then one slack per finite upper bound).
    pub basis: Vec<usize>,
    /// Equality duals `y`.
    pub dual: Vec<Rational>,
    /// Upper-bound duals `t ≥ 0` (zero where no bound).
    pub bound_dual: Vec<Rational>,
    /// Reduced costs `s = c − Aᵀy + t`.
    pub reduced: Vec<Rational>,
    /// Farkas vector over the expanded rows when infeasible.
    pub farkas: Option<Vec<Rational>>,
    /// Improving ray in the original variables when unbounded.
    pub ray: Option<Vec<Rational>>,
}

/// Slack-expanded standard form of an instance.
#[derive(Clone, Debug)]
pub(crate) struct Expanded {
    pub a: RatMatrix,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    /// Number of original variables.
    pub n: usize,
    /// Original rows (before the bound rows).
    pub m: usize,
    /// Variable owning each bound row.
    pub bounded: Vec<usize>,
}

impl LpInstance {
    pub fn standard(a: RatMatrix, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        let lp = LpInstance::Standard { a, b, c };
        lp.validate()?;
        Ok(lp)
    }

    pub fn bounded(a: RatMatrix, b: Vec<Rational>, c: Vec<Rational>, u: Vec<Option<Rational>>) -> Result<Self> {
        let lp = LpInstance::Bounded { a, b, c, u };
        lp.validate()?;
        Ok(lp)
    }

    pub fn subspace(w: Subspace, d: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        let lp = LpInstance::SubspaceForm { w, d, c };
        lp.validate()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        match self {
            LpInstance::Standard { a, .. } | LpInstance::Bounded { a, .. } => a.cols(),
            LpInstance::SubspaceForm { w, .. } => w.ambient_dim(),
        }
    }

    pub fn cost(&self) -> &[Rational] {
        match self {
            LpInstance::Standard { c, .. } | LpInstance::Bounded { c, .. } | LpInstance::SubspaceForm { c, .. } => c,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        let mismatch = |what: &str, got: usize, want: usize| {
            Err(Error::DimensionMismatch(format!("{what} has length {got}, expected {want}")))
        };
        if self.cost().len() != n {
            return mismatch("c", self.cost().len(), n);
        }
        match self {
            LpInstance::Standard { a, b, .. } if b.len() != a.rows() => mismatch("b", b.len(), a.rows()),
            LpInstance::Bounded { a, b, u, .. } => {
                if b.len() != a.rows() {
                    return mismatch("b", b.len(), a.rows());
                }
                if u.len() != n {
                    return mismatch("u", u.len(), n);
                }
                if u.iter().flatten().any(|v| v < &Rational::zero()) {
                    return Err(Error::BadParameters("upper bounds must be nonnegative".into()));
                }
                Ok(())
            }
            LpInstance::SubspaceForm { d, .. } if d.len() != n => mismatch("d", d.len(), n),
            _ => Ok(()),
        }
    }

    /// Constraint data `(A, b, u)` with `u` all absent outside bounded form.
    pub fn constraints(&self) -> (RatMatrix, Vec<Rational>, Vec<Option<Rational>>) {
        match self {
            LpInstance::Standard { a, b, .. } => (a.clone(), b.clone(), alloc::vec![None; a.cols()]),
            LpInstance::Bounded { a, b, u, .. } => (a.clone(), b.clone(), u.clone()),
            LpInstance::SubspaceForm { w, d, .. } => {
                let a = w.kernel_rep().clone();
                let b = a.mul_vec(d).expect("validated length");
                let n = a.cols();
                (a, b, alloc::vec![None; n])
            }
        }
    }

    /// Same constraints, different objective.
    pub fn with_cost(&self, c: Vec<Rational>) -> Self {
        let mut out = self.clone();
        match &mut out {
            LpInstance::Standard { c: old, .. }
            | LpInstance::Bounded { c: old, .. }
            | LpInstance::SubspaceForm { c: old, .. } => *old = c,
        }
        out
    }

    /// Whether `x` satisfies every constraint.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        let (a, b, u) = self.constraints();
        x.len() == a.cols()
            && a.mul_vec(x).is_ok_and(|ax| ax == b)
            && x.iter().zip(&u).all(|(v, ub)| *v >= Rational::zero() && ub.as_ref().is_none_or(|ub| v <= ub))
    }

    pub(crate) fn expand(&self) -> Expanded {
        let (a, b, u) = self.constraints();
        let (m, n) = (a.rows(), a.cols());
        let bounded: Vec<usize> = (0..n).filter(|&i| u[i].is_some()).collect();
        let k = bounded.len();
        let mut big = RatMatrix::zeros(m + k, n + k);
        for i in 0..m {
            for j in 0..n {
                big[(i, j)] = a[(i, j)].clone();
            }
        }
        let mut rhs = b;
        for (r, &j) in bounded.iter().enumerate() {
            big[(m + r, j)] = Rational::one();
            big[(m + r, n + r)] = Rational::one();
            rhs.push(u[j].clone().expect("bounded index"));
        }
        let mut c = self.cost().to_vec();
        c.extend((0..k).map(|_| Rational::zero()));
        Expanded { a: big, b: rhs, c, n, m, bounded }
    }
}

pub fn solve(lp: &LpInstance) -> Result<LpResult> {
    lp.validate()?;
    let ex = lp.expand();
    let n = ex.n;
    let outcome = simplex::solve_standard(&ex.a, &ex.b, &ex.c);
    let empty = LpResult {
        status: LpStatus::Infeasible,
        primal: Vec::new(),
        objective: None,
        basis: Vec::new(),
        dual: Vec::new(),
        bound_dual: Vec::new(),
        reduced: Vec::new(),
        farkas: None,
        ray: None,
    };
    Ok(match outcome {
        StdOutcome::Infeasible { farkas } => LpResult { farkas: Some(farkas), ..empty },
        StdOutcome::Unbounded { x, ray } => LpResult {
            status: LpStatus::Unbounded,
            primal: x[..n].to_vec(),
            ray: Some(ray[..n].to_vec()),
            ..empty
        },
        StdOutcome::Optimal { x, y, basis } => {
            let primal = x[..n].to_vec();
            let objective = num::dot(lp.cost(), &primal);
            let dual = y[..ex.m].to_vec();
            let mut bound_dual = alloc::vec![Rational::zero(); n];
            for (r, &j) in ex.bounded.iter().enumerate() {
                bound_dual[j] = -y[ex.m + r].clone();
            }
            let (a, _, _) = lp.constraints();
            let aty = a.vec_mul(&dual).expect("row count");
            let reduced =
                (0..n).map(|j| &lp.cost()[j] - &aty[j] + &bound_dual[j]).collect();
            LpResult {
                status: LpStatus::Optimal,
                primal,
                objective: Some(objective),
                basis,
                dual,
                bound_dual,
                reduced,
                ..empty
            }
        }
    })
}
