use braidforge::algebra::BasisLabel;
use braidforge::braid::SignCase;
use braidforge::fixtures::FixtureStore;
use braidforge::rtt::{
    claimed_classes, classify, decompose_by_blocks, derive_all, diff_sets, maps_onto, pair_exchange,
};

#[test]
fn every_case_matches_its_transcribed_list() {
    let store = FixtureStore::default();
    for d in derive_all() {
        assert_eq!(d.dimension, 40);
        assert!(d.strategies_agree);
        assert!(d.relations_tilde.is_monomial(), "{}", d.case);
        let fx = store.relations(d.case).unwrap();
        let diff = diff_sets(
            &d.relations_tilde,
            &fx.relations().unwrap(),
            BasisLabel::Tilde,
        );
        assert!(diff.is_empty(), "{}: {diff:?}", d.case);
        assert!(fx
            .relation_set()
            .unwrap()
            .equals(&d.relations_tilde)
            .unwrap());
    }
}

#[test]
fn corrupted_transcription_is_itemized() {
    let store = FixtureStore::default();
    let all = derive_all();
    let d = &all[0];
    let mut rels = store.relations(d.case).unwrap().relations().unwrap();
    rels.pop();
    let wrong = store
        .relations(SignCase::new(-1, -1, -1))
        .unwrap()
        .relations()
        .unwrap();
    rels.push(
        wrong
            .into_iter()
            .find(|r| !d.relations_tilde.contains(&r.vector))
            .unwrap(),
    );
    let diff = diff_sets(&d.relations_tilde, &rels, BasisLabel::Tilde);
    assert_eq!(diff.not_derived.len(), 1);
}

#[test]
fn blocks_reassemble_every_case() {
    let blocks = FixtureStore::default().blocks().unwrap();
    for d in derive_all() {
        let b = decompose_by_blocks(&d, &blocks).unwrap();
        assert!(b.as_predicted, "{}: {:?}", d.case, b.blocks);
        assert_eq!(b.blocks.len(), 7);
    }
}

#[test]
fn four_classes() {
    let all = derive_all();
    let r = classify(&all).unwrap();
    assert!(r.claims.iter().all(|c| c.holds), "{:?}", r.claims);
    assert!(r.cross_class_witnesses.is_empty());
    assert_eq!(r.classes.len(), 4);
    for cl in claimed_classes() {
        assert!(r.classes.iter().any(|c| {
            let mut a = c.clone();
            let mut b = cl.clone();
            a.sort();
            b.sort();
            a == b
        }));
    }
}

#[test]
fn stated_exchange_does_not_cross_classes() {
    let all = derive_all();
    let get = |s: &str| {
        &all.iter()
            .find(|d| d.case == s.parse().unwrap())
            .unwrap()
            .relations_tilde
    };
    let pe = pair_exchange();
    assert!(maps_onto(get("+++"), get("+--"), &pe.change));
    assert!(!maps_onto(get("+++"), get("-+-"), &pe.change));
}

#[test]
fn fixture_store_basics() {
    let store = FixtureStore::default();
    assert!(store.load("nonexistent").is_err());
    let names = store.names().unwrap();
    // 8 lists + hat list, 13 blocks, 3 coproduct tables, counit, 2 changes,
    // 2 dual displays, 1 basis display
    assert_eq!(names.len(), 31, "{names:?}");
    let ids = store.dual_identities().unwrap();
    assert!(ids.statements.iter().any(|s| s.contains("- 2 \\hat{K}")));
}
