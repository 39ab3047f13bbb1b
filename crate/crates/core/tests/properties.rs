use std::sync::OnceLock;

use knotfert::codes::{enumerate_shadows_with, EnumerationOptions, Reading};
use knotfert::fertility::{support_census, Atlas, FertilityOptions};
use knotfert::polynomial::homfly;
use knotfert::{Diagram, KnotBase, Shadow};
use proptest::prelude::*;

fn base() -> &'static KnotBase {
    static BASE: OnceLock<KnotBase> = OnceLock::new();
    BASE.get_or_init(KnotBase::standard)
}

fn shadows(n: usize) -> &'static [Shadow] {
    static LEVELS: OnceLock<Vec<Vec<Shadow>>> = OnceLock::new();
    &LEVELS.get_or_init(|| {
        (0..=6).map(|n| enumerate_shadows_with(n, EnumerationOptions::default())).collect()
    })[n]
}

fn any_diagram() -> impl Strategy<Value = Diagram> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 0..shadows(n).len(), 0u64..1 << n))
        .prop_map(|(n, i, mask)| Diagram::from_mask(&shadows(n)[i], mask))
}

fn any_reading(len: usize) -> impl Strategy<Value = Reading> {
    (0..len, any::<bool>()).prop_map(|(start, reversed)| Reading { start, reversed })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rereading_keeps_keys_and_polynomial(
        (d, r) in any_diagram().prop_flat_map(|d| {
            let len = 2 * d.crossing_count();
            (Just(d), any_reading(len))
        })
    ) {
        let e = d.reread(r);
        prop_assert_eq!(e.shadow().key(), d.shadow().key());
        prop_assert_eq!(e.key(), d.key());
        prop_assert_eq!(e.stats(), d.stats());
        prop_assert_eq!(homfly(&e).unwrap(), homfly(&d).unwrap());
    }

    #[test]
    fn mirror_and_reflection(d in any_diagram()) {
        let p = homfly(&d).unwrap();
        prop_assert_eq!(homfly(&d.mirror()).unwrap(), p.mirror());
        prop_assert_eq!(homfly(&d.reflect()).unwrap(), p.mirror());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
        prop_assert_eq!(d.reflect().writhe(), -d.writhe());
        prop_assert_eq!(base().identify(&d).unwrap(), base().identify(&d.mirror()).unwrap());
    }

    #[test]
    fn simplification_keeps_the_knot(d in any_diagram()) {
        let s = d.simplify();
        prop_assert!(s.crossing_count() <= d.crossing_count());
        prop_assert_eq!(homfly(&s).unwrap(), homfly(&d).unwrap());
    }

    #[test]
    fn census_ignores_reflection(n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let s = &shadows(n)[pick.index(shadows(n).len())];
        let a = support_census(s, base()).unwrap();
        let b = support_census(&s.reflect(), base()).unwrap();
        prop_assert_eq!(a.names(), b.names());
        for name in a.names() {
            let d = a.witness_diagram(name).unwrap();
            prop_assert_eq!(base().identify(&d).unwrap(), vec![name.clone()]);
        }
    }

    #[test]
    fn identified_knots_fit_the_shadow(d in any_diagram()) {
        let st = d.stats();
        for name in base().identify(&d).unwrap() {
            let r = base().get(&name).unwrap();
            prop_assert!(r.crossing_number <= st.c);
            prop_assert!(r.canonical_genus.unwrap() <= st.g);
            prop_assert!(r.braid_index.unwrap() <= st.s);
        }
    }
}

#[test]
fn parity_identities_on_all_small_diagrams() {
    for n in 0..=6 {
        for s in shadows(n) {
            let ss = s.stats();
            assert_eq!((1 + ss.c - ss.s) % 2, 0, "{s}");
            for mask in 0..1u64 << n {
                let d = Diagram::from_mask(s, mask);
                let st = d.stats();
                assert_eq!(st.s, ss.s);
                assert_eq!(st.g, ss.g);
                assert_eq!(st.sl.rem_euclid(2), 1, "{d}");
                assert_eq!(st.c_plus + st.c_minus, st.c);
            }
        }
    }
}

#[test]
fn fertility_is_monotone_in_m() {
    let atlas = Atlas::new(base(), FertilityOptions { ceiling: 6, ..Default::default() });
    for name in ["3_1", "4_1", "5_2", "6_2"] {
        for n in 3..=6 {
            let mut previous = true;
            for m in 0..=n {
                let verdict = atlas.is_mn_fertile(name, m, n).unwrap().verdict;
                assert!(previous || !verdict, "{name} ({m},{n})");
                previous = verdict;
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let atlas = Atlas::new(base(), FertilityOptions { ceiling: 6, ..Default::default() });
            let reports: Vec<_> = ["3_1", "5_1", "6_2"]
                .iter()
                .map(|k| atlas.is_fertile(k).unwrap())
                .collect();
            serde_json::to_string(&reports).unwrap()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn reflection_quotient_gives_the_same_verdicts() {
    let plain = Atlas::new(base(), FertilityOptions { ceiling: 6, ..Default::default() });
    let quotient = Atlas::new(
        base(),
        FertilityOptions { ceiling: 6, reflection_quotient: true, ..Default::default() },
    );
    for r in base().knots_through(6) {
        let a = plain.is_fertile(&r.name).unwrap();
        let b = quotient.is_fertile(&r.name).unwrap();
        assert_eq!((a.verdict, a.unsupported), (b.verdict, b.unsupported), "{}", r.name);
        let x = plain.minimal_diagrams(&r.name).unwrap();
        let y = quotient.minimal_diagrams(&r.name).unwrap();
        assert_eq!(x, y, "{}", r.name);
    }
}
