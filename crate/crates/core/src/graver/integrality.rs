//! `1/κ̇`-integrality of polyhedra `{x ∈ W + d, x ≥ 0}` and the
//! column-sum test for `κ̇ ∈ {1, 2}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imbalance;
use crate::linalg;
use crate::lp::{self, LpInstance};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, ElementaryVector, Subspace};

/// Vertex realizing the denominator `|g_ℓ|` of a circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct HkWitness {
    pub circuit: ElementaryVector,
    pub ell: usize,
    /// Column basis of the kernel representation containing `C \ {ℓ}`.
    pub basis: Vec<usize>,
    pub d: Vec<BigInt>,
    pub vertex: Vec<Rational>,
    pub denominator: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HkReport {
    pub kappa_dot: BigInt,
    /// Seeded shifts whose polyhedron was nonempty.
    pub trials: usize,
    pub skipped: usize,
    /// Fractionality of each nonempty random polyhedron.
    pub denominators: BTreeSet<BigInt>,
    /// Every random fractionality divides `κ̇`.
    pub random_ok: bool,
    pub witnesses: Vec<HkWitness>,
    /// lcm of the witness denominators; equals `κ̇` when the bound is tight.
    pub witness_lcm: BigInt,
}

impl HkReport {
    pub fn holds(&self) -> bool {
        self.random_ok && self.witness_lcm == self.kappa_dot
    }
}

/// Random integer shifts `d ∈ [−4, 4]ⁿ`: every vertex must be
/// `1/κ̇`-integral. Then, for every circuit `C` and `ℓ ∈ C`, the shift
/// `d = t` on a basis `B ⊇ C \ {ℓ}`, `d_ℓ = −1`, zero elsewhere yields
/// the vertex `d + g^C/g^C_ℓ` with denominator `|g^C_ℓ|`.
pub fn hk_check(w: &Subspace, trials: usize, seed: u64) -> Result<HkReport> {
    let n = w.ambient_dim();
    let circs = subspace::circuits(w);
    let kappa_dot = imbalance::imbalances_from(&circs).kappa_dot;
    let zero_cost = alloc::vec![Rational::zero(); n];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HkReport {
        kappa_dot: kappa_dot.clone(),
        trials: 0,
        skipped: 0,
        denominators: BTreeSet::new(),
        random_ok: true,
        witnesses: Vec::new(),
        witness_lcm: BigInt::one(),
    };
    for _ in 0..trials {
        let d: Vec<Rational> = (0..n).map(|_| num::rat(rng.gen_range(-4..=4))).collect();
        match lp::fractionality(&LpInstance::subspace(w.clone(), d, zero_cost.clone())?) {
            Ok(k) => {
                report.trials += 1;
                report.random_ok &= kappa_dot.is_multiple_of(&k);
                report.denominators.insert(k);
            }
            Err(Error::Infeasible { .. }) => report.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let a = w.kernel_rep();
    for g in &circs {
        for &ell in &g.support {
            let wit = witness(a, g, ell)?;
            report.witness_lcm = num::lcm(&report.witness_lcm, &wit.denominator);
            report.witnesses.push(wit);
        }
    }
    Ok(report)
}

fn witness(a: &RatMatrix, g: &ElementaryVector, ell: usize) -> Result<HkWitness> {
    let n = a.cols();
    let target = linalg::rank(a);
    let mut basis: Vec<usize> = g.support.iter().copied().filter(|&j| j != ell).collect();
    for j in 0..n {
        if basis.len() == target {
            break;
        }
        if j == ell || basis.contains(&j) {
            continue;
        }
        basis.push(j);
        if linalg::rank(&a.select_columns(&basis)) < basis.len() {
            basis.pop();
        }
    }
    basis.sort_unstable();
    let scaled = num::scale(&g.to_rational(), &num::from_int(&g.vector[ell]).recip());
    let t = num::ceil(&num::norm_inf(&scaled));
    let mut d = alloc::vec![BigInt::zero(); n];
    for &j in &basis {
        d[j] = t.clone();
    }
    d[ell] = -BigInt::one();
    let dr: Vec<Rational> = d.iter().map(num::from_int).collect();
    let vertex = num::add(&dr, &scaled);
    let independent = linalg::rank(&a.select_columns(&basis)) == basis.len() && basis.len() == target;
    let support_ok = vertex.iter().enumerate().all(|(j, v)| v.is_zero() || basis.contains(&j));
    if !independent || !support_ok || vertex.iter().any(Signed::is_negative) {
        return Err(Error::CrossCheck(alloc::format!("integrality witness for circuit {:?} at {ell} is not a vertex", g.support)));
    }
    let denominator = num::denominator_lcm(&vertex);
    Ok(HkWitness { circuit: g.clone(), ell, basis, d, vertex, denominator })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EjCheck {
    /// Some column has absolute sum above 2.
    NotApplicable,
    Confirmed { kappa_dot: BigInt },
    Refuted { kappa_dot: BigInt },
}

impl EjCheck {
    /// False only for a refutation.
    pub fn holds(&self) -> bool {
        !matches!(self, EjCheck::Refuted { .. })
    }
}

/// Integer matrices whose columns have absolute sum at most 2 have `κ̇ ∈ {1, 2}`.
pub fn ej_check(a: &RatMatrix) -> Result<EjCheck> {
    a.check_integral()?;
    let qualifies = (0..a.cols()).all(|j| a.column(j).iter().map(|v| v.abs()).sum::<Rational>() <= num::rat(2));
    if !qualifies {
        return Ok(EjCheck::NotApplicable);
    }
    let kappa_dot = imbalance::imbalances(&Subspace::kernel_of(a)).kappa_dot;
    Ok(if kappa_dot <= BigInt::from(2) { EjCheck::Confirmed { kappa_dot } } else { EjCheck::Refuted { kappa_dot } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::num::int;

    #[test]
    fn unimodular_vertices_are_integral() {
        let a = generate::tu_network(3, 4, 1).unwrap().hstack(&RatMatrix::identity(3)).unwrap();
        let r = hk_check(&Subspace::kernel_of(&a), 20, 0).unwrap();
        assert_eq!(r.kappa_dot, int(1));
        assert!(r.denominators.iter().all(|d| d.is_one()));
        assert!(r.holds());
    }

    #[test]
    fn dumbbell_half_integral() {
        let w = Subspace::kernel_of(&generate::dumbbell());
        let r = hk_check(&w, 40, 7).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.denominators.iter().all(|d| d <= &int(2)));
        assert!(r.witnesses.iter().any(|x| x.denominator == int(2)));
    }

    #[test]
    fn column_sum_check() {
        assert_eq!(ej_check(&generate::dumbbell()).unwrap(), EjCheck::Confirmed { kappa_dot: int(2) });
        let a_int = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(ej_check(&a_int).unwrap(), EjCheck::Confirmed { kappa_dot: int(1) });
        let a_app = RatMatrix::from_i64(&[&[1, 3, 4, 3], &[0, 13, 9, 10]]);
        assert_eq!(ej_check(&a_app).unwrap(), EjCheck::NotApplicable);
    }
}
