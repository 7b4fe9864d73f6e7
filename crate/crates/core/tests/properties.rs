use proptest::prelude::*;
use thompson_core::exact::pow2_exponent;
use thompson_core::plmap::fixed_structure;
use thompson_core::roots::root_in_f;
use thompson_core::sigma::{bump_chains, sigma_of};
use thompson_core::{
    centralizer_structure, check_in_f, conjugate_in_f, conjugate_in_pl, conjugator_witness, delta_equal,
    delta_of, root_extract, word_to_element, FElement, Letter,
};

fn word(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(proptest::sample::select(Letter::ALL.to_vec()), 0..=max)
}

fn element(max: usize) -> impl Strategy<Value = FElement> {
    word(max).prop_map(|w| word_to_element(&w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(f in element(6), g in element(6), h in element(6)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.power(3), f.compose(&f).compose(&f));
        prop_assert_eq!(f.power(-2), f.inverse().power(2));
        prop_assert!(check_in_f(f.compose(&g).map()).is_ok());
    }

    #[test]
    fn sigma_and_delta_are_invariant(f in element(8), h in element(6)) {
        let g = f.conjugate_by(&h);
        prop_assert!(conjugate_in_pl(&f, &g).unwrap());
        prop_assert_eq!(sigma_of(f.map()).unwrap().sign_seq, sigma_of(g.map()).unwrap().sign_seq);
        prop_assert!(delta_equal(&delta_of(&f).unwrap(), &delta_of(&g).unwrap()));
    }

    #[test]
    fn witnesses_verify(f in element(8), h in element(6)) {
        let g = f.conjugate_by(&h);
        prop_assert!(conjugate_in_f(&f, &g).unwrap());
        let k = conjugator_witness(&f, &g).unwrap().expect("conjugate pairs get a witness");
        prop_assert_eq!(k.compose(&f), g.compose(&k));
        // The witness maps each chain start with a power-of-2 slope.
        for chain in bump_chains(f.map(), &fixed_structure(f.map())) {
            let start = &chain[0].start;
            let idx = k.map().breakpoints().iter().rposition(|(x, _)| x <= start).unwrap();
            let idx = idx.min(k.map().breakpoints().len() - 2);
            prop_assert!(pow2_exponent(&k.map().slope(idx)).unwrap().is_some());
        }
    }

    #[test]
    fn witness_absent_iff_not_conjugate(f in element(5), g in element(5)) {
        let decided = conjugate_in_f(&f, &g).unwrap();
        let w = conjugator_witness(&f, &g).unwrap();
        prop_assert_eq!(decided, w.is_some());
        if let Some(k) = w {
            prop_assert_eq!(k.compose(&f), g.compose(&k));
        }
    }

    #[test]
    fn roots_are_unique(f in element(7), p in 2u64..=3) {
        prop_assume!(!f.is_identity());
        let fp = f.power(p as i64);
        prop_assert_eq!(root_extract(&fp, p).unwrap(), Some(f));
    }

    #[test]
    fn root_existence_matches_extraction(f in element(6)) {
        prop_assume!(!f.is_identity());
        for p in 1..=8u64 {
            let exists = root_in_f(&f, p).unwrap();
            let root = root_extract(&f, p).unwrap();
            prop_assert_eq!(exists, root.is_some());
            if let Some(g) = root {
                prop_assert_eq!(g.power(p as i64), f.clone());
            }
        }
    }

    #[test]
    fn chain_generators_commute(f in element(8)) {
        let c = centralizer_structure(&f).unwrap();
        prop_assert_eq!(c.generators.len(), c.chains);
        for g in &c.generators {
            prop_assert_eq!(g.compose(&f), f.compose(g));
        }
    }
}
