use proptest::prelude::*;
use qjoin_core::corep::{clutching_inverse_check, fundamental_u, ComoduleVector};
use qjoin_core::hopfalg::{su_q2, HopfElement};
use qjoin_core::join::milnor_idempotent;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let alg = su_q2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = alg.random_element(&mut rng, 5, 3);
        let back = alg.element_from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back, x);
    }

    /// `χ` followed by its inverse is the identity on random vectors.
    #[test]
    fn clutching_round_trip(seed in any::<u64>()) {
        let v = ComoduleVector::new(fundamental_u(&su_q2()).unwrap()).unwrap();
        let alg = su_q2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<Vec<HopfElement>> = (0..3).map(|_| (0..2).map(|_| alg.random_element(&mut rng, 3, 2)).collect()).collect();
        prop_assert!(clutching_inverse_check(&v, &xs).unwrap().passed());
    }
}

#[test]
fn idempotent_for_u_and_ustar() {
    let u = fundamental_u(&su_q2()).unwrap();
    for a in [u.clone(), u.adjoint()] {
        let p = milnor_idempotent(&a).unwrap();
        assert!(p.is_idempotent().unwrap());
        assert!(p.is_self_adjoint());
        assert!(p.has_scalar_endpoints().unwrap());
    }
}
