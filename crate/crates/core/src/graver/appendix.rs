//! A rational subspace with `κ̇ = 5850` that has no integer representation
//! in which every nonsingular 2×2 submatrix has a `1/κ̇`-integral inverse.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::imbalance;
use crate::matrix::RatMatrix;
use crate::num;
use crate::subspace::Subspace;

pub const APPENDIX_KAPPA_DOT: u64 = 5850;

const A_APP: [[i64; 4]; 2] = [[1, 3, 4, 3], [0, 13, 9, 10]];

/// The six row pairs, in the order the products are usually displayed.
const PAIRS: [[[i64; 2]; 2]; 6] = [
    [[9, -4], [10, -3]],
    [[13, -3], [10, -3]],
    [[9, -4], [13, -3]],
    [[0, 1], [9, -4]],
    [[0, 1], [10, -3]],
    [[0, 1], [13, -3]],
];

/// Integer representation `B · A` and its offending column pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub b: [[i64; 2]; 2],
    pub product: [[i64; 4]; 2],
    /// Column pairs `(j, k)`, 0-based, whose 2×2 submatrix is nonsingular
    /// with an inverse that is not `1/5850`-integral.
    pub bad_columns: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixReport {
    pub kappa_dot: BigInt,
    /// Primitive `v` (both signs) with every nonzero entry of `vᵀA` dividing 5850.
    pub rows: Vec<[i64; 2]>,
    pub representations: Vec<Representation>,
}

impl AppendixReport {
    pub fn kappa_leg(&self) -> bool {
        self.kappa_dot == BigInt::from(APPENDIX_KAPPA_DOT)
    }

    pub fn rows_leg(&self) -> bool {
        let mut expected: Vec<[i64; 2]> =
            [[9, -4], [10, -3], [13, -3], [0, 1]].iter().flat_map(|&[a, b]| [[a, b], [-a, -b]]).collect();
        expected.sort_unstable();
        self.rows == expected
    }

    pub fn representation_leg(&self) -> bool {
        self.representations.len() == 6 && self.representations.iter().all(|r| !r.bad_columns.is_empty())
    }

    pub fn passes(&self) -> bool {
        self.kappa_leg() && self.rows_leg() && self.representation_leg()
    }
}

fn divides_kappa(v: i64) -> bool {
    v == 0 || (APPENDIX_KAPPA_DOT as i64) % v == 0
}

fn row_times_a(v: [i64; 2]) -> [i64; 4] {
    core::array::from_fn(|j| v[0] * A_APP[0][j] + v[1] * A_APP[1][j])
}

/// Rows `v` with every nonzero entry of `vᵀA` dividing 5850, `gcd(v) = 1`.
///
/// Column 1 of `A` is `(1, 0)`, so `v₁` itself is 0 or a divisor of 5850.
/// Column 2 is `(3, 13)`, so `|3v₁ + 13v₂| ≤ 5850`, which bounds `v₂` for
/// each `v₁`. Non-primitive rows are dropped: scaling a row of a
/// representation by `k` divides the matching column of every submatrix
/// inverse by `k`, so it cannot repair a non-integral inverse.
pub fn divisor_rows() -> Vec<[i64; 2]> {
    let k = APPENDIX_KAPPA_DOT as i64;
    let mut firsts: Vec<i64> = alloc::vec![0];
    for d in num::divisors(APPENDIX_KAPPA_DOT) {
        firsts.push(d as i64);
        firsts.push(-(d as i64));
    }
    let mut rows = Vec::new();
    for v1 in firsts {
        let lo = Integer::div_ceil(&(-k - 3 * v1), &13);
        let hi = Integer::div_floor(&(k - 3 * v1), &13);
        for v2 in lo..=hi {
            if v1.gcd(&v2) != 1 {
                continue;
            }
            if row_times_a([v1, v2]).iter().all(|&e| divides_kappa(e)) {
                rows.push([v1, v2]);
            }
        }
    }
    rows.sort_unstable();
    rows
}

/// Nonsingular column pairs of a 2×4 matrix whose inverse times 5850 is
/// not integral; the inverse is `adj / det`, so this is `det ∤ 5850·adj`.
fn bad_columns(m: &[[i64; 4]; 2]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..4 {
        for k in j + 1..4 {
            let det = m[0][j] * m[1][k] - m[0][k] * m[1][j];
            if det == 0 {
                continue;
            }
            let adj = [m[1][k], -m[0][k], -m[1][j], m[0][j]];
            if adj.iter().any(|&e| (APPENDIX_KAPPA_DOT as i64 * e) % det != 0) {
                out.push((j, k));
            }
        }
    }
    out
}

fn canonical(v: [i64; 2]) -> [i64; 2] {
    let first = if v[0] != 0 { v[0] } else { v[1] };
    if first < 0 { [-v[0], -v[1]] } else { v }
}

pub fn appendix_counterexample() -> AppendixReport {
    let a = RatMatrix::from_i64(&[&A_APP[0], &A_APP[1]]);
    let kappa_dot = imbalance::imbalances(&Subspace::kernel_of(&a)).kappa_dot;
    let rows = divisor_rows();
    let mut reps: Vec<[i64; 2]> = rows.iter().map(|&v| canonical(v)).collect();
    reps.sort_unstable();
    reps.dedup();
    // Keep the displayed order for the pairs the search produces; any
    // further pair would be listed after them.
    let mut pairs: Vec<[[i64; 2]; 2]> =
        PAIRS.iter().copied().filter(|[u, v]| reps.contains(u) && reps.contains(v)).collect();
    for (i, &u) in reps.iter().enumerate() {
        for &v in &reps[i + 1..] {
            if !pairs.iter().any(|p| (p[0] == u && p[1] == v) || (p[0] == v && p[1] == u)) {
                pairs.push([u, v]);
            }
        }
    }
    let representations = pairs
        .into_iter()
        .map(|b| {
            let product = [row_times_a(b[0]), row_times_a(b[1])];
            Representation { b, bad_columns: bad_columns(&product), product }
        })
        .collect();
    debug_assert!(!kappa_dot.is_zero());
    AppendixReport { kappa_dot, rows, representations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_legs() {
        let r = appendix_counterexample();
        assert!(r.kappa_leg(), "{}", r.kappa_dot);
        assert!(r.rows_leg(), "{:?}", r.rows);
        assert!(r.representation_leg());
        assert!(r.passes());
    }

    #[test]
    fn displayed_products_and_columns() {
        type Displayed = ([[i64; 4]; 2], (usize, usize));
        let expected: [Displayed; 6] = [
            ([[9, -25, 0, -13], [10, -9, 13, 0]], (0, 1)),
            ([[13, 0, 25, 9], [10, -9, 13, 0]], (0, 2)),
            ([[9, -25, 0, -13], [13, 0, 25, 9]], (0, 3)),
            ([[0, 13, 9, 10], [9, -25, 0, -13]], (1, 3)),
            ([[0, 13, 9, 10], [10, -9, 13, 0]], (1, 2)),
            ([[0, 13, 9, 10], [13, 0, 25, 9]], (2, 3)),
        ];
        let r = appendix_counterexample();
        for (rep, (product, cols)) in r.representations.iter().zip(expected) {
            assert_eq!(rep.product, product);
            assert!(rep.bad_columns.contains(&cols), "{rep:?}");
        }
    }

    #[test]
    fn primitivity_matters() {
        // (0, 5) passes the divisor test but is a multiple of (0, 1).
        assert!(row_times_a([0, 5]).iter().all(|&e| divides_kappa(e)));
        assert!(!divisor_rows().contains(&[0, 5]));
    }
}
