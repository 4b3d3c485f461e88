use circuitkit_core::lp::{self, LpInstance, LpStatus};
use circuitkit_core::num::{self, frac, rat};
use circuitkit_core::proximity::{
    apx_oracle, default_epsilon, feasibility_simplified, hoffman_feasibility_witness, hoffman_opt_witness, verify_fixing,
    verify_transfer,
};
use circuitkit_core::{Error, RatMatrix, Rational, Subspace};
use num_traits::Signed;
use proptest::prelude::*;

/// `W = ker(A)`, a nonnegative point `x0` with many zeros, and a shift of
/// `x0` inside `W`, so `W + d` always meets the orthant.
#[derive(Debug, Clone)]
struct Fixture {
    a: RatMatrix,
    w: Subspace,
    x0: Vec<Rational>,
    d: Vec<Rational>,
    c: Vec<Rational>,
}

fn fixture() -> impl Strategy<Value = Fixture> {
    (1usize..=3, 3usize..=6).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(-3i64..=3, m * n),
            prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => 1i64..=3], n),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(-2i64..=4, n),
        )
            .prop_map(move |(a, x0, k, c)| {
                let a = RatMatrix::from_vec(m, n, a.into_iter().map(rat).collect()).unwrap();
                let w = Subspace::kernel_of(&a);
                let x0: Vec<Rational> = x0.into_iter().map(rat).collect();
                let coefs: Vec<Rational> = k.into_iter().take(w.dim()).map(rat).collect();
                let shift = w.span_rep().vec_mul(&coefs).unwrap();
                let d = num::add(&x0, &shift);
                let c = c.into_iter().map(rat).collect();
                Fixture { a, w, x0, d, c }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn feasibility_witness_within_bound(f in fixture()) {
        let wit = hoffman_feasibility_witness(&f.w, &f.d).unwrap();
        prop_assert!(!wit.slack.is_negative());
        prop_assert!(f.w.contains(&num::sub(&wit.point, &f.d)));
    }

    #[test]
    fn optimal_witness_within_bound(f in fixture()) {
        let c: Vec<Rational> = f.c.iter().map(|v| v.abs()).collect();
        let wit = hoffman_opt_witness(&f.w, &f.d, &c).unwrap();
        let opt = lp::solve(&LpInstance::subspace(f.w.clone(), f.d.clone(), c.clone()).unwrap()).unwrap();
        prop_assert_eq!(num::dot(&c, &wit.point), opt.objective.unwrap());
        prop_assert!(!wit.slack.is_negative());
    }

    #[test]
    fn transfer_conclusions_hold(f in fixture(), num_shift in prop::collection::vec(-2i64..=2, 6), den in 1i64..=8) {
        let res = lp::solve(&LpInstance::subspace(f.w.clone(), f.x0.clone(), f.c.clone()).unwrap()).unwrap();
        prop_assume!(res.status == LpStatus::Optimal);
        let d: Vec<Rational> = res.primal.iter().zip(&num_shift).map(|(x, k)| x + frac(*k, den)).collect();
        match verify_transfer(&f.w, &res.primal, &res.reduced, &d) {
            Ok(chk) => prop_assert!(chk.holds(), "{:?}", chk),
            Err(Error::Infeasible { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn fixing_predictions_hold(f in fixture(), caps in prop::collection::vec(prop::option::of(1i64..=5), 6), dc in prop::collection::vec(-1i64..=1, 6), den in 4i64..=40) {
        let n = f.x0.len();
        let u: Vec<Option<Rational>> = caps.into_iter().take(n).map(|v| v.map(rat)).collect();
        let start: Vec<Rational> = f.x0.iter().zip(&u).map(|(x, ub)| match ub { Some(ub) if x > ub => ub.clone(), _ => x.clone() }).collect();
        let b = f.a.mul_vec(&start).unwrap();
        let res = lp::solve(&LpInstance::bounded(f.a.clone(), b.clone(), f.c.clone(), u.clone()).unwrap()).unwrap();
        prop_assume!(res.status == LpStatus::Optimal);
        let c2: Vec<Rational> = f.c.iter().zip(&dc).map(|(c, k)| c + frac(*k, den)).collect();
        match verify_fixing(&f.a, &b, &u, &f.c, &c2, &res.primal, &res.dual) {
            Ok(chk) => prop_assert!(chk.holds, "{:?}", chk),
            // No optimum under c2, so nothing to pin.
            Err(Error::Unbounded { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn oracle_meets_its_contract(f in fixture(), seed in any::<u64>()) {
        let c: Vec<Rational> = f.c.iter().map(|v| v.abs()).collect();
        let apx = apx_oracle(&f.w, &f.d, &c, &frac(1, 20), seed).unwrap();
        prop_assert!(apx.satisfies(&f.w, &f.d, &c));
    }

    #[test]
    fn simplified_feasibility_is_exact(f in fixture(), seed in any::<u64>()) {
        let run = feasibility_simplified(&f.w, &f.d, &default_epsilon(&f.w), seed).unwrap();
        prop_assert!(run.x.iter().all(|v| !v.is_negative()));
        prop_assert!(f.w.contains(&num::sub(&run.x, &f.d)));
        prop_assert!(run.depth() <= f.x0.len() - f.w.dim());
    }
}
