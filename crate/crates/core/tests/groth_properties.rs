use std::sync::Arc;

use holim_core::fincat::{validate_functor, FinFunctor};
use holim_core::groth::{grothendieck, hoc, thomason_cofiber_check, CatDiagram};
use holim_core::nerve::Limits;
use holim_core::samples::{random_poset, random_poset_functor, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projections_are_functors(seed: u64, k in 1usize..5, p in 1usize..4) {
        let mut r = rng(seed);
        let shape = Arc::new(random_poset(&mut r, k, 0.5));
        let fiber = Arc::new(random_poset(&mut r, p, 0.5));
        let action = shape.morphism_ids().map(|_| FinFunctor::identity(fiber.clone())).collect();
        let d = CatDiagram::new(shape.clone(), vec![fiber.clone(); k], action).unwrap();
        let (g, proj) = grothendieck(&d).unwrap();
        prop_assert_eq!(g.num_objects(), k * p);
        let report = validate_functor(proj.source(), proj.target(), proj.object_map(), proj.morphism_map()).unwrap();
        prop_assert!(report.is_valid());
    }

    #[test]
    fn cofiber_inclusions(seed: u64) {
        let f = random_poset_functor(&mut rng(seed), 5);
        let h = hoc(&f).unwrap();
        let (i_cat, j_cat, c) = (f.source(), f.target(), &h.cofiber);
        for a in j_cat.objects() {
            for b in j_cat.objects() {
                prop_assert_eq!(c.hom(h.iota.obj(a), h.iota.obj(b)).count(), j_cat.hom(a, b).count());
            }
            for i in i_cat.objects() {
                prop_assert_eq!(c.hom(h.iota.obj(a), h.kappa.obj(i)).count(), j_cat.hom(a, f.obj(i)).count());
            }
        }
        for m in i_cat.morphism_ids() {
            for m2 in i_cat.morphism_ids() {
                if m != m2 {
                    prop_assert_ne!(h.kappa.mor(m), h.kappa.mor(m2));
                }
            }
        }
        for i in i_cat.objects() {
            prop_assert_eq!(c.hom(h.star, h.kappa.obj(i)).count(), 1);
        }
    }

    #[test]
    fn thomason_comparison_holds(seed: u64) {
        let f = random_poset_functor(&mut rng(seed), 5);
        let r = thomason_cofiber_check(&f, 3, Limits::default()).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }
}
