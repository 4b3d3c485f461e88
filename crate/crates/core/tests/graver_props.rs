use circuitkit_core::graver::{self, ConjectureSearch, EjCheck};
use circuitkit_core::imbalance;
use circuitkit_core::matrix::RatMatrix;
use circuitkit_core::num::{self, Rational};
use circuitkit_core::subspace::{self, Subspace};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Small integer matrices of full row rank with a nontrivial kernel.
fn small_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=2, 3usize..=5)
        .prop_flat_map(|(m, n)| proptest::collection::vec(-2i64..=2, m * n).prop_map(move |v| (m, n, v)))
        .prop_filter_map("rank deficient", |(m, n, v)| {
            let a = RatMatrix::from_vec(m, n, v.into_iter().map(num::rat).collect()).ok()?;
            (circuitkit_core::linalg::rank(&a) == m).then_some(a)
        })
}

fn conformal_le(h: &[BigInt], g: &[BigInt]) -> bool {
    h.iter().zip(g).all(|(h, g)| h.is_zero() || (h.signum() == g.signum() && h.abs() <= g.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graver_basis_invariants(a in small_matrix()) {
        let gb = graver::graver_basis(&a).unwrap();
        let w = Subspace::kernel_of(&a);
        for g in &gb.elements {
            let gr: Vec<Rational> = g.iter().map(num::from_int).collect();
            prop_assert!(w.contains(&gr));
            let neg: Vec<BigInt> = g.iter().map(|v| -v).collect();
            prop_assert!(gb.elements.contains(&neg));
            prop_assert!(!gb.elements.iter().any(|h| h != g && conformal_le(h, g)));
        }
        let s = graver::graver_sandwich(&a, &gb).unwrap();
        prop_assert!(s.holds && s.contains_circuits && s.fractional_decompositions, "{:?}", s);
    }

    #[test]
    fn completion_matches_enumeration(a in small_matrix()) {
        let enumerated = graver::graver_basis_with_limit(&a, graver::DEFAULT_POINT_LIMIT).unwrap();
        let completed = graver::graver_basis_by_completion(&a).unwrap();
        prop_assert_eq!(enumerated.elements, completed.elements);
    }

    #[test]
    fn graver_elements_decompose(a in small_matrix()) {
        let gb = graver::graver_basis(&a).unwrap();
        let search = ConjectureSearch::new(&Subspace::kernel_of(&a));
        for g in &gb.elements {
            let r = search.decompose(g).unwrap();
            prop_assert!(r.holds() && r.verify(), "{:?}", r);
        }
    }

    #[test]
    fn ip_proximity_bound(a in small_matrix(), x0 in proptest::collection::vec(0i64..=3, 5), c in proptest::collection::vec(-3i64..=3, 5)) {
        let n = a.cols();
        let x0: Vec<Rational> = x0[..n].iter().map(|&v| num::rat(v)).collect();
        let b = a.mul_vec(&x0).unwrap();
        let c: Vec<Rational> = c[..n].iter().map(|&v| num::rat(v)).collect();
        match graver::ip_proximity_check(&a, &b, &c) {
            Ok(r) => {
                prop_assert!(r.holds(), "{:?}", r);
                prop_assert!(r.distance_inf <= r.bound);
            }
            Err(circuitkit_core::error::Error::Unbounded { .. }) => {}
            Err(e) => prop_assert!(false, "{e:?}"),
        }
    }

    #[test]
    fn integrality_of_vertices(a in small_matrix(), seed in any::<u64>()) {
        let r = graver::hk_check(&Subspace::kernel_of(&a), 10, seed).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn column_sum_two_gives_small_lcm(a in small_matrix()) {
        prop_assert!(graver::ej_check(&a).unwrap().holds());
    }
}

#[test]
fn kappa_bar_attained_by_graver_ginf_on_unimodular() {
    let a = circuitkit_core::generate::tu_network(3, 3, 4).unwrap().hstack(&RatMatrix::identity(3)).unwrap();
    let gb = graver::graver_basis(&a).unwrap();
    let circs = subspace::circuits(&Subspace::kernel_of(&a));
    // Unimodular: the Graver basis is exactly the set of circuits.
    assert_eq!(gb.elements.len(), 2 * circs.len());
    assert_eq!(gb.ginf, imbalance::imbalances_from(&circs).kappa_bar);
    assert!(matches!(graver::ej_check(&a).unwrap(), EjCheck::NotApplicable | EjCheck::Confirmed { .. }));
}
