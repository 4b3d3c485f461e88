//! Graver bases by bounded lattice enumeration or completion, integer-programming
//! proximity, the conformal decomposition search, integrality checks and
//! the non-representability example.

mod appendix;
mod completion;
mod conjecture;
mod integrality;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use appendix::{appendix_counterexample, divisor_rows, AppendixReport, Representation, APPENDIX_KAPPA_DOT};
pub use completion::{graver_by_completion, kernel_lattice_basis, COMPLETION_LIMIT};
pub use conjecture::{conjecture_decompose, ConjectureReport, ConjectureSearch, ConjectureStatus, DEFAULT_NODE_BUDGET};
pub use integrality::{ej_check, hk_check, EjCheck, HkReport, HkWitness};

use crate::error::{Error, Result};
use crate::imbalance;
use crate::linalg;
use crate::lp::{self, Cmp, LpBuilder, LpInstance, LpStatus};
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};
use crate::subspace::{self, DecompositionRule, Subspace};

/// Enumeration points allowed before giving up.
pub const DEFAULT_POINT_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GraverBasis {
    /// Sorted by `ℓ1` norm, then lexicographically; closed under negation.
    pub elements: Vec<Vec<BigInt>>,
    pub g1: BigInt,
    pub ginf: BigInt,
    /// `ℓ1` radius containing every element.
    pub radius: BigInt,
    /// Lattice points visited, or normal forms computed by completion.
    pub points: u128,
    pub method: GraverMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraverMethod {
    Enumeration,
    Completion,
}

/// Integer points of `{x : Ax = b}` written through the free columns of
/// the reduced row echelon form: `x = base + Σ_f x_f · dir_f`.
struct Lattice {
    free: Vec<usize>,
    base: Vec<Rational>,
    dirs: RatMatrix,
}

impl Lattice {
    fn new(a: &RatMatrix, b: &[Rational]) -> Result<Option<Self>> {
        let Some(base) = linalg::solve_linear(a, b)? else {
            return Ok(None);
        };
        let (_, pivots, dirs) = linalg::rref_kernel(a);
        let free = (0..a.cols()).filter(|j| !pivots.contains(j)).collect();
        Ok(Some(Lattice { free, base, dirs }))
    }

    fn point(&self, coords: &[BigInt]) -> Vec<Rational> {
        let mut x = self.base.clone();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                x = num::axpy(&x, &num::from_int(c), self.dirs.row(k));
            }
        }
        x
    }
}

/// Visits every integer vector `v` with `Σ|v_k − center_k| ≤ radius` and
/// `v_k ≥ lower_k` where given. Stops with `BoxTooLarge` after `limit` visits.
fn for_each_in_ball(
    center: &[Rational],
    radius: &Rational,
    lower: Option<&[BigInt]>,
    limit: u128,
    visit: &mut dyn FnMut(&[BigInt]),
) -> Result<u128> {
    fn walk(
        center: &[Rational],
        lower: Option<&[BigInt]>,
        rem: Rational,
        cur: &mut Vec<BigInt>,
        count: &mut u128,
        limit: u128,
        visit: &mut dyn FnMut(&[BigInt]),
    ) -> Result<()> {
        let k = cur.len();
        if k == center.len() {
            *count += 1;
            if *count > limit {
                return Err(Error::BoxTooLarge { points: *count, limit });
            }
            visit(cur);
            return Ok(());
        }
        let mut lo = num::ceil(&(&center[k] - &rem));
        if let Some(l) = lower {
            lo = lo.max(l[k].clone());
        }
        let hi = num::floor(&(&center[k] + &rem));
        let mut v = lo;
        while v <= hi {
            let used = (num::from_int(&v) - &center[k]).abs();
            cur.push(v.clone());
            walk(center, lower, &rem - used, cur, count, limit, visit)?;
            cur.pop();
            v += 1;
        }
        Ok(())
    }
    let mut count = 0;
    walk(center, lower, radius.clone(), &mut Vec::with_capacity(center.len()), &mut count, limit, visit)?;
    Ok(count)
}

/// Integer points of the `k`-dimensional `ℓ1` ball of radius `r`:
/// `Σ_i 2^i C(k,i) C(r,i)`.
fn ball_size(k: usize, r: &BigInt) -> BigInt {
    let mut total = BigInt::zero();
    let mut ck = BigInt::one();
    let mut cr = BigInt::one();
    let mut pow2 = BigInt::one();
    for i in 0..=k {
        if BigInt::from(i) > *r {
            break;
        }
        total += &pow2 * &ck * &cr;
        ck = ck * BigInt::from(k - i) / BigInt::from(i + 1);
        cr = cr * (r - BigInt::from(i)) / BigInt::from(i + 1);
        pow2 *= 2;
    }
    total
}

fn conformal_le(h: &[BigInt], g: &[BigInt]) -> bool {
    h.iter().zip(g).all(|(h, g)| h.is_zero() || (h.signum() == g.signum() && h.abs() <= g.abs()))
}

fn norm1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn norm_inf(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// `ℓ1` radius containing every Graver element: the smaller of
/// `(2m‖A‖max + 1)^m` and `dim(W) · max_C ‖g^C‖₁`. The second holds because
/// a Graver element that is not itself a primitive circuit vector is a
/// conformal sum of at most `dim(W)` circuit terms, each with coefficient
/// below 1.
pub fn graver_radius(a: &RatMatrix) -> Result<BigInt> {
    a.check_integral()?;
    let w = Subspace::kernel_of(a);
    let circs = subspace::circuits(&w);
    let by_circuits = BigInt::from(w.dim()) * circs.iter().map(|g| g.norm1()).max().unwrap_or_else(BigInt::zero);
    let m = a.rows();
    let base = BigInt::from(2 * m) * num::ceil(&a.max_abs()) + 1;
    let steinitz = num_traits::pow(base, m);
    Ok(by_circuits.min(steinitz))
}

/// Enumeration within [`DEFAULT_POINT_LIMIT`] points, completion beyond.
pub fn graver_basis(a: &RatMatrix) -> Result<GraverBasis> {
    match graver_basis_with_limit(a, DEFAULT_POINT_LIMIT) {
        Err(Error::BoxTooLarge { .. }) => graver_basis_by_completion(a),
        other => other,
    }
}

pub fn graver_basis_by_completion(a: &RatMatrix) -> Result<GraverBasis> {
    let radius = graver_radius(a)?;
    let (mut elements, points) = graver_by_completion(a)?;
    elements.sort_by(|x, y| norm1(x).cmp(&norm1(y)).then_with(|| x.cmp(y)));
    Ok(finish(elements, radius, points, GraverMethod::Completion))
}

fn finish(elements: Vec<Vec<BigInt>>, radius: BigInt, points: u128, method: GraverMethod) -> GraverBasis {
    let g1 = elements.iter().map(|g| norm1(g)).max().unwrap_or_else(BigInt::zero);
    let ginf = elements.iter().map(|g| norm_inf(g)).max().unwrap_or_else(BigInt::zero);
    GraverBasis { elements, g1, ginf, radius, points, method }
}

/// Enumerates integer kernel vectors in the `ℓ1` ball of [`graver_radius`]
/// through the free coordinates of the kernel, then keeps the
/// conformally minimal ones.
pub fn graver_basis_with_limit(a: &RatMatrix, limit: u128) -> Result<GraverBasis> {
    let radius = graver_radius(a)?;
    let zero_rhs = alloc::vec![Rational::zero(); a.rows()];
    let lattice = Lattice::new(a, &zero_rhs)?.expect("homogeneous system");
    let k = lattice.free.len();
    let size = ball_size(k, &radius);
    if size > BigInt::from(limit) {
        return Err(Error::BoxTooLarge { points: size.to_u128().unwrap_or(u128::MAX), limit });
    }
    let mut candidates: Vec<Vec<BigInt>> = Vec::new();
    let center = alloc::vec![Rational::zero(); k];
    let points = for_each_in_ball(&center, &num::from_int(&radius), None, limit, &mut |coords| {
        if coords.iter().all(Zero::is_zero) {
            return;
        }
        let x = lattice.point(coords);
        if x.iter().all(|v| v.is_integer()) {
            let v: Vec<BigInt> = x.iter().map(|v| v.to_integer()).collect();
            if norm1(&v) <= radius {
                candidates.push(v);
            }
        }
    })?;
    candidates.sort_by(|x, y| norm1(x).cmp(&norm1(y)).then_with(|| x.cmp(y)));
    let mut elements: Vec<Vec<BigInt>> = Vec::new();
    for g in candidates {
        if !elements.iter().any(|h| conformal_le(h, &g)) {
            elements.push(g);
        }
    }
    Ok(finish(elements, radius, points, GraverMethod::Enumeration))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraverSandwich {
    pub kappa_bar: BigInt,
    pub ginf: BigInt,
    pub n: usize,
    /// `κ̄ ≤ 𝔤∞ ≤ n κ̄`.
    pub holds: bool,
    /// Every primitive circuit vector is a Graver element.
    pub contains_circuits: bool,
    /// Every element is a circuit or decomposes with all coefficients below 1.
    pub fractional_decompositions: bool,
}

pub fn graver_sandwich(a: &RatMatrix, basis: &GraverBasis) -> Result<GraverSandwich> {
    let w = Subspace::kernel_of(a);
    let circs = subspace::circuits(&w);
    let kappa_bar = imbalance::imbalances_from(&circs).kappa_bar;
    let n = a.cols();
    let holds = !circs.is_empty() && kappa_bar <= basis.ginf && basis.ginf <= BigInt::from(n) * &kappa_bar;
    let set: BTreeSet<&Vec<BigInt>> = basis.elements.iter().collect();
    let contains_circuits = circs.iter().all(|g| set.contains(&g.vector) && set.contains(&g.negated().vector));
    let mut fractional_decompositions = true;
    for g in &basis.elements {
        let z: Vec<Rational> = g.iter().map(num::from_int).collect();
        let dec = subspace::decompose_with(&circs, &z, DecompositionRule::GreedyMaximal)?;
        let single = dec.terms.len() == 1 && dec.terms[0].0.is_one();
        if !single && dec.terms.iter().any(|(c, _)| *c >= Rational::one()) {
            fractional_decompositions = false;
        }
    }
    Ok(GraverSandwich { kappa_bar, ginf: basis.ginf.clone(), n, holds, contains_circuits, fractional_decompositions })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IpProximity {
    pub x_lp: Vec<Rational>,
    pub lp_objective: Rational,
    /// Optimal integer point closest to `x_lp` in `ℓ1`.
    pub x_ip: Vec<Rational>,
    pub ip_objective: Rational,
    /// `‖x_ip − x_lp‖₁`.
    pub distance: Rational,
    /// Least `‖x − x_lp‖∞` over optimal integer points.
    pub distance_inf: Rational,
    /// `n κ̄`.
    pub bound: Rational,
    /// Whether the whole feasible box was enumerated as a cross-check.
    pub full_enumeration: bool,
}

impl IpProximity {
    pub fn holds(&self) -> bool {
        self.distance <= self.bound
    }
}

/// Largest value of each coordinate over `{Ax = b, x ≥ 0}`; `None` if unbounded.
fn coordinate_caps(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let mut lp = LpBuilder::new();
    let xs = lp.vars(a.cols());
    for (i, bi) in b.iter().enumerate() {
        lp.constrain(LpBuilder::terms(&xs, a.row(i)), Cmp::Eq, bi.clone());
    }
    let mut caps = Vec::with_capacity(xs.len());
    for &x in &xs {
        let sol = lp.maximize(&[(x, Rational::one())])?;
        match sol.objective {
            Some(v) if sol.is_optimal() => caps.push(v),
            _ => return Ok(None),
        }
    }
    Ok(Some(caps))
}

/// LP optimum, then the best integer points within `ℓ1` distance `n κ̄`,
/// cross-checked against a scan of the whole feasible box when the region
/// is bounded and small enough.
pub fn ip_proximity_check(a: &RatMatrix, b: &[Rational], c: &[Rational]) -> Result<IpProximity> {
    ip_proximity_with_limit(a, b, c, DEFAULT_POINT_LIMIT)
}

pub fn ip_proximity_with_limit(a: &RatMatrix, b: &[Rational], c: &[Rational], limit: u128) -> Result<IpProximity> {
    a.check_integral()?;
    let res = lp::solve(&LpInstance::standard(a.clone(), b.to_vec(), c.to_vec())?)?;
    let (x_lp, lp_objective) = match res.status {
        LpStatus::Optimal => (res.primal, res.objective.expect("optimal")),
        LpStatus::Infeasible => return Err(Error::Infeasible { farkas: res.farkas.unwrap_or_default() }),
        LpStatus::Unbounded => return Err(Error::Unbounded { ray: res.ray.unwrap_or_default() }),
    };
    let kappa_bar = imbalance::imbalances(&Subspace::kernel_of(a)).kappa_bar;
    let bound = num::from_int(&kappa_bar) * num::rat(a.cols() as i64);
    let lattice = Lattice::new(a, b)?.expect("LP is feasible");
    let zeros = alloc::vec![BigInt::zero(); lattice.free.len()];

    // Collect (objective, point) of all optimal integer points seen.
    let mut best: Option<(Rational, Vec<Vec<Rational>>)> = None;
    let mut offer = |x: Vec<Rational>| {
        if !x.iter().all(|v| v.is_integer() && !v.is_negative()) {
            return;
        }
        let obj = num::dot(c, &x);
        match &mut best {
            Some((o, pts)) if *o == obj => pts.push(x),
            Some((o, _)) if *o < obj => {}
            _ => best = Some((obj, alloc::vec![x])),
        }
    };

    let caps = coordinate_caps(a, b)?;
    let mut full_enumeration = false;
    if let Some(caps) = &caps {
        let hi: Vec<BigInt> = lattice.free.iter().map(|&j| num::floor(&caps[j])).collect();
        let size = hi.iter().fold(BigInt::one(), |acc, h| acc * (h + 1));
        if size <= BigInt::from(limit) {
            let mut cur = Vec::with_capacity(hi.len());
            box_scan(&hi, &mut cur, &mut |coords| offer(lattice.point(coords)));
            full_enumeration = true;
        }
    }
    if !full_enumeration {
        let center: Vec<Rational> = lattice.free.iter().map(|&j| x_lp[j].clone()).collect();
        for_each_in_ball(&center, &bound, Some(&zeros), limit, &mut |coords| {
            let x = lattice.point(coords);
            if num::norm1(&num::sub(&x, &x_lp)) <= bound {
                offer(x);
            }
        })?;
    }
    let Some((ip_objective, optima)) = best else {
        return Err(Error::Infeasible { farkas: Vec::new() });
    };
    let dist1 = |x: &Vec<Rational>| num::norm1(&num::sub(x, &x_lp));
    let x_ip = optima.iter().min_by_key(|x| dist1(x)).expect("nonempty").clone();
    let distance = dist1(&x_ip);
    let distance_inf = optima.iter().map(|x| num::norm_inf(&num::sub(x, &x_lp))).min().expect("nonempty");
    Ok(IpProximity { x_lp, lp_objective, x_ip, ip_objective, distance, distance_inf, bound, full_enumeration })
}

fn box_scan(hi: &[BigInt], cur: &mut Vec<BigInt>, visit: &mut dyn FnMut(&[BigInt])) {
    if cur.len() == hi.len() {
        visit(cur);
        return;
    }
    let mut v = BigInt::zero();
    while v <= hi[cur.len()] {
        cur.push(v.clone());
        box_scan(hi, cur, visit);
        cur.pop();
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::num::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size(1, &int(3)), int(7));
        assert_eq!(ball_size(2, &int(1)), int(5));
        assert_eq!(ball_size(2, &int(2)), int(13));
        let mut n = 0;
        for_each_in_ball(&[rat(0), rat(0)], &rat(2), None, 100, &mut |_| n += 1).unwrap();
        assert_eq!(n, 13);
    }

    #[test]
    fn one_dimensional_kernel() {
        let a = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let gb = graver_basis(&a).unwrap();
        assert_eq!(gb.elements, alloc::vec![ints(&[-1, 1, -1]), ints(&[1, -1, 1])]);
        assert_eq!((gb.g1, gb.ginf), (int(3), int(1)));
    }

    #[test]
    fn dumbbell_graver_contains_long_circuit() {
        let a = generate::dumbbell();
        let gb = graver_basis(&a).unwrap();
        assert!(gb.elements.iter().any(|g| norm_inf(g) == int(2)));
        let s = graver_sandwich(&a, &gb).unwrap();
        assert!(s.holds && s.contains_circuits && s.fractional_decompositions, "{s:?}");
    }

    #[test]
    fn box_limit_reported() {
        let a = RatMatrix::from_i64(&[&[1, 3, 4, 3], &[0, 13, 9, 10]]);
        assert!(matches!(graver_basis_with_limit(&a, 10), Err(Error::BoxTooLarge { limit: 10, .. })));
    }

    #[test]
    fn integral_lp_has_zero_gap() {
        // Transportation problem on K_{2,2} with one redundant row dropped.
        let a = RatMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 1, 0]]);
        assert!(crate::imbalance::is_tu(&a).is_ok());
        let b = alloc::vec![rat(3), rat(2), rat(4)];
        let c = alloc::vec![rat(1), rat(3), rat(2), rat(5)];
        let r = ip_proximity_check(&a, &b, &c).unwrap();
        assert_eq!(r.distance, rat(0));
        assert_eq!(r.ip_objective, r.lp_objective);
    }

    #[test]
    fn dumbbell_ip_within_bound() {
        // Matching on the dumbbell that ignores the bridge: the LP puts 1/2
        // on every triangle edge, integer points take one edge per triangle.
        let a = generate::dumbbell().hstack(&RatMatrix::identity(6)).unwrap();
        let b = alloc::vec![rat(1); 6];
        let mut c = alloc::vec![rat(-1); 7];
        c[3] = rat(0);
        c.extend(alloc::vec![rat(0); 6]);
        let r = ip_proximity_check(&a, &b, &c).unwrap();
        assert!(r.full_enumeration);
        assert!(r.lp_objective < r.ip_objective);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn infeasible_ip() {
        let a = RatMatrix::from_i64(&[&[2, 2]]);
        let err = ip_proximity_check(&a, &[rat(1)], &[rat(0), rat(0)]).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }
}
