//! Elimination, determinants and normalization over the rationals.

use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut r = m.clone();
    let (rows, cols) = (r.rows(), r.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                let tmp = r[(p, j)].clone();
                r[(p, j)] = r[(row, j)].clone();
                r[(row, j)] = tmp;
            }
        }
        let inv = r[(row, col)].recip();
        for j in col..cols {
            r[(row, j)] *= &inv;
        }
        let pivot_row: Vec<Rational> = r.row(row).to_vec();
        for i in 0..rows {
            if i == row || r[(i, col)].is_zero() {
                continue;
            }
            let f = r[(i, col)].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    r[(i, j)] -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Rank, pivot columns, and a basis of `ker(m)` as rows.
///
/// One basis row per free column `f`: entry 1 at `f`, minus the reduced
/// column at the pivots.
pub fn rref_kernel(m: &RatMatrix) -> (usize, Vec<usize>, RatMatrix) {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut basis = RatMatrix::zeros(free.len(), n);
    for (k, &f) in free.iter().enumerate() {
        basis[(k, f)] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            basis[(k, p)] = -r[(i, f)].clone();
        }
    }
    (pivots.len(), pivots, basis)
}

/// Nonzero rows of the RREF: a canonical basis of the row space.
pub fn row_space_basis(m: &RatMatrix) -> RatMatrix {
    let (r, pivots) = rref(m);
    let keep: Vec<usize> = (0..pivots.len()).collect();
    r.select_rows(&keep)
}

/// Some solution of `m x = b`, or `None` when inconsistent.
pub fn solve_linear(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let bcol = RatMatrix::from_vec(b.len(), 1, b.to_vec())?;
    let aug = m.hstack(&bcol)?;
    let (r, pivots) = rref(&aug);
    let n = m.cols();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = alloc::vec![Rational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, n)].clone();
    }
    Ok(Some(x))
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let aug = m.hstack(&RatMatrix::identity(n))?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularBasis((0..n).collect()));
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(r.select_columns(&cols))
}

/// `A_B^{-1} A` for a column basis `B`.
pub fn basis_form(a: &RatMatrix, basis: &[usize]) -> Result<RatMatrix> {
    if basis.len() != a.rows() {
        return Err(Error::DimensionMismatch("basis size must equal row count".into()));
    }
    if let Some(&j) = basis.iter().find(|&&j| j >= a.cols()) {
        return Err(Error::IndexOutOfRange(j));
    }
    let ab = a.select_columns(basis);
    let inv = inverse(&ab).map_err(|_| Error::SingularBasis(basis.to_vec()))?;
    inv.mul(a)
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant. Rows are cleared of denominators before elimination.
pub fn bareiss_det(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let l = num::denominator_lcm(m.row(i));
            scale *= &l;
            let lr = num::from_int(&l);
            m.row(i).iter().map(|x| (x * &lr).to_integer()).collect()
        })
        .collect();
    Ok(Rational::new(bareiss_det_int(rows), scale))
}

/// Largest subdeterminant, lcm of all nonzero ones, and where the largest sits.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdetStats {
    pub delta_max: Rational,
    pub delta_lcm: BigInt,
    pub witness_max: (Vec<usize>, Vec<usize>),
}

pub fn subdet_stats(a: &RatMatrix) -> Result<SubdetStats> {
    a.check_integral()?;
    let ints = a.to_integer_rows();
    let mut best = BigInt::zero();
    let mut lcm = BigInt::one();
    let mut witness = (Vec::new(), Vec::new());
    for k in 1..=a.rows().min(a.cols()) {
        for rs in (0..a.rows()).combinations(k) {
            for cs in (0..a.cols()).combinations(k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| ints[i][j].clone()).collect()).collect();
                let d = bareiss_det_int(sub).abs();
                if d.is_zero() {
                    continue;
                }
                lcm = num::lcm(&lcm, &d);
                if d > best {
                    best = d;
                    witness = (rs.clone(), cs);
                }
            }
        }
    }
    Ok(SubdetStats { delta_max: num::from_int(&best), delta_lcm: lcm, witness_max: witness })
}

/// Primitive integer vector `g` and `scale` with `v = scale * g`; the first
/// nonzero entry of `g` is positive.
pub fn integer_normalize(v: &[Rational]) -> Result<(Vec<BigInt>, Rational)> {
    let first = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let den = num::denominator_lcm(v);
    let dr = num::from_int(&den);
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &dr).to_integer()).collect();
    let mut g = scaled.iter().fold(BigInt::zero(), |acc, x| num::gcd(&acc, x));
    if first.is_negative() {
        g = -g;
    }
    let ints: Vec<BigInt> = scaled.iter().map(|x| x / &g).collect();
    Ok((ints, Rational::new(g, den)))
}
