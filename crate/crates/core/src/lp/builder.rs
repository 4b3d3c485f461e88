//! Incremental construction of LPs with inequality rows and free variables.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{solve, LpInstance, LpStatus};
use crate::error::Result;
use crate::matrix::RatMatrix;
use crate::num::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    terms: Vec<(usize, Rational)>,
    cmp: Cmp,
    rhs: Rational,
}

/// Variables are nonnegative unless created with [`LpBuilder::free_var`],
/// which splits them into a difference of two nonnegative columns.
#[derive(Clone, Debug, Default)]
pub struct LpBuilder {
    /// Column of each user variable, plus the negative column for free ones.
    cols: Vec<(usize, Option<usize>)>,
    ncols: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Values of the user variables; empty unless optimal.
    pub x: Vec<Rational>,
    pub objective: Option<Rational>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(&mut self) -> usize {
        self.cols.push((self.ncols, None));
        self.ncols += 1;
        self.cols.len() - 1
    }

    pub fn vars(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.var()).collect()
    }

    pub fn free_var(&mut self) -> usize {
        self.cols.push((self.ncols, Some(self.ncols + 1)));
        self.ncols += 2;
        self.cols.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.cols.len()
    }

    pub fn constrain(&mut self, terms: Vec<(usize, Rational)>, cmp: Cmp, rhs: Rational) {
        self.rows.push(Row { terms, cmp, rhs });
    }

    /// Minimizes `Σ cost_k · x_k` over the constraints added so far.
    pub fn minimize(&self, cost: &[(usize, Rational)]) -> Result<LpSolution> {
        let slacks = self.rows.iter().filter(|r| r.cmp != Cmp::Eq).count();
        let width = self.ncols + slacks;
        let mut a = RatMatrix::zeros(self.rows.len(), width);
        let mut b = Vec::with_capacity(self.rows.len());
        let mut next_slack = self.ncols;
        for (i, row) in self.rows.iter().enumerate() {
            for (v, coef) in &row.terms {
                let (pos, neg) = self.cols[*v];
                a[(i, pos)] += coef;
                if let Some(neg) = neg {
                    a[(i, neg)] -= coef;
                }
            }
            match row.cmp {
                Cmp::Le => a[(i, next_slack)] = Rational::one(),
                Cmp::Ge => a[(i, next_slack)] = -Rational::one(),
                Cmp::Eq => {}
            }
            if row.cmp != Cmp::Eq {
                next_slack += 1;
            }
            b.push(row.rhs.clone());
        }
        let mut c = alloc::vec![Rational::zero(); width];
        for (v, coef) in cost {
            let (pos, neg) = self.cols[*v];
            c[pos] += coef;
            if let Some(neg) = neg {
                c[neg] -= coef;
            }
        }
        let res = solve(&LpInstance::standard(a, b, c)?)?;
        let x = if res.status == LpStatus::Optimal {
            self.cols
                .iter()
                .map(|&(pos, neg)| match neg {
                    Some(neg) => &res.primal[pos] - &res.primal[neg],
                    None => res.primal[pos].clone(),
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(LpSolution { status: res.status, x, objective: res.objective })
    }

    pub fn maximize(&self, cost: &[(usize, Rational)]) -> Result<LpSolution> {
        let neg: Vec<(usize, Rational)> = cost.iter().map(|(v, c)| (*v, -c.clone())).collect();
        let mut sol = self.minimize(&neg)?;
        sol.objective = sol.objective.map(|o| -o);
        Ok(sol)
    }

    /// Minimizes each objective in turn, pinning earlier optima as equalities.
    pub fn minimize_lex(&self, objectives: &[Vec<(usize, Rational)>]) -> Result<LpSolution> {
        let mut stage = self.clone();
        let mut last = LpSolution { status: LpStatus::Optimal, x: Vec::new(), objective: None };
        for obj in objectives {
            last = stage.minimize(obj)?;
            let Some(opt) = last.objective.clone() else {
                return Ok(last);
            };
            stage.constrain(obj.clone(), Cmp::Eq, opt);
        }
        Ok(last)
    }

    /// Helper for `Σ coef_k x_k` as a term list.
    pub fn terms(vars: &[usize], coefs: &[Rational]) -> Vec<(usize, Rational)> {
        vars.iter().copied().zip(coefs.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn value(sol: &LpSolution, terms: &[(usize, Rational)]) -> Rational {
        terms.iter().map(|(v, c)| c * &sol.x[*v]).fold(Rational::zero(), |a, b| a + b)
    }
}
