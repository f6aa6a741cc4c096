use std::sync::Arc;

use holim_core::fincat::{comma_category, find_isomorphism, opposite, over_category, validate_category, FinFunctor};
use holim_core::nerve::nerve_dimension;
use holim_core::samples::{random_poset, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn posets_have_thin_homs(seed: u64, n in 0usize..8, density in 0.0f64..1.0) {
        let c = random_poset(&mut rng(seed), n, density);
        prop_assert!(validate_category(&c.tables()).unwrap().is_valid());
        for x in c.objects() {
            for y in c.objects() {
                prop_assert!(c.hom(x, y).count() <= 1);
            }
        }
    }

    #[test]
    fn over_categories_have_smaller_nerves(seed: u64, n in 1usize..8) {
        let c = Arc::new(random_poset(&mut rng(seed), n, 0.5));
        let whole = nerve_dimension(&c).finite().unwrap();
        for i in c.objects() {
            let (over, forget) = over_category(&c, i).unwrap();
            prop_assert!(nerve_dimension(&over).finite().unwrap() <= whole);
            prop_assert_eq!(forget.source().num_objects(), c.incoming(i).len());
        }
    }

    #[test]
    fn comma_of_identity_is_the_over_category(seed: u64, n in 1usize..=8) {
        let c = Arc::new(random_poset(&mut rng(seed), n, 0.4));
        let id = FinFunctor::identity(c.clone());
        for j in c.objects() {
            let comma = comma_category(&id, j).unwrap();
            let (over, _) = over_category(&c, j).unwrap();
            prop_assert!(find_isomorphism(&comma, &over).unwrap().is_some());
        }
    }

    #[test]
    fn opposite_is_an_involution(seed: u64, n in 0usize..7) {
        let c = random_poset(&mut rng(seed), n, 0.5);
        let op = opposite(&c);
        prop_assert!(validate_category(&op.tables()).unwrap().is_valid());
        prop_assert_eq!(opposite(&op), c);
    }
}
