//! Dense two-phase tableau simplex with Bland's rule on `min cᵀx, Ax = b, x ≥ 0`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::matrix::RatMatrix;
use crate::num::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum StdOutcome {
    Optimal { x: Vec<Rational>, y: Vec<Rational>, basis: Vec<usize> },
    /// `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible { farkas: Vec<Rational> },
    /// Feasible point and a ray `d ≥ 0`, `Ad = 0`, `cᵀd < 0`.
    Unbounded { x: Vec<Rational>, ray: Vec<Rational> },
}

struct Tableau {
    m: usize,
    width: usize,
    /// `m` constraint rows then the objective row; last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    #[cfg(debug_assertions)]
    seen: alloc::collections::BTreeSet<Vec<usize>>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for v in self.t[row].iter_mut() {
            *v *= &inv;
        }
        let prow = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[row] = col;
        #[cfg(debug_assertions)]
        {
            let mut key = self.basis.clone();
            key.sort_unstable();
            debug_assert!(self.seen.insert(key), "Bland's rule revisited a basis");
        }
    }

    /// Sets the objective row to `cost` reduced against the current basis.
    fn load_cost(&mut self, cost: &[Rational]) {
        let m = self.m;
        let mut z: Vec<Rational> = cost.iter().cloned().chain(core::iter::once(Rational::zero())).collect();
        for i in 0..m {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (v, p) in z.iter_mut().zip(&self.t[i]) {
                *v -= cb * p;
            }
        }
        self.t[m] = z;
        #[cfg(debug_assertions)]
        self.seen.clear();
    }

    /// Runs Bland pivots over columns `< limit`. Returns the entering column
    /// of an unbounded direction, if one is found.
    fn optimize(&mut self, limit: usize) -> Option<usize> {
        let m = self.m;
        loop {
            let col = (0..limit).find(|&j| self.t[m][j].is_negative())?;
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(col),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<Rational> {
        let mut x = alloc::vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

pub(crate) fn solve_standard(a: &RatMatrix, b: &[Rational], c: &[Rational]) -> StdOutcome {
    let (m, n) = (a.rows(), a.cols());
    let width = n + m;
    let signs: Vec<Rational> =
        b.iter().map(|v| if v.is_negative() { -Rational::one() } else { Rational::one() }).collect();
    let mut t = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<Rational> = a.row(i).iter().map(|v| v * &signs[i]).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(&b[i] * &signs[i]);
        t.push(row);
    }
    t.push(alloc::vec![Rational::zero(); width + 1]);
    let mut tab = Tableau {
        m,
        width,
        t,
        basis: (n..n + m).collect(),
        #[cfg(debug_assertions)]
        seen: alloc::collections::BTreeSet::new(),
    };

    let phase1: Vec<Rational> =
        (0..width).map(|j| if j < n { Rational::zero() } else { Rational::one() }).collect();
    tab.load_cost(&phase1);
    tab.optimize(width);
    if !tab.t[m][width].is_zero() {
        // y_norm_k = 1 - reduced cost of artificial k; undo the row signs.
        let farkas = (0..m).map(|k| (Rational::one() - &tab.t[m][n + k]) * &signs[k]).collect();
        return StdOutcome::Infeasible { farkas };
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let phase2: Vec<Rational> =
        (0..width).map(|j| if j < n { c[j].clone() } else { Rational::zero() }).collect();
    tab.load_cost(&phase2);
    if let Some(col) = tab.optimize(n) {
        let mut ray = alloc::vec![Rational::zero(); n];
        ray[col] = Rational::one();
        for i in 0..m {
            if tab.basis[i] < n {
                ray[tab.basis[i]] = -tab.t[i][col].clone();
            }
        }
        return StdOutcome::Unbounded { x: tab.primal(n), ray };
    }
    let y = (0..m).map(|k| -tab.t[m][n + k].clone() * &signs[k]).collect();
    let basis = tab.basis.iter().copied().filter(|&j| j < n).collect();
    StdOutcome::Optimal { x: tab.primal(n), y, basis }
}
