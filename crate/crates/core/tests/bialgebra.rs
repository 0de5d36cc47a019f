use braidforge::algebra::basis_change::{hat, hat_as_displayed, tilde};
use braidforge::algebra::relations::change_basis_deg2;
use braidforge::algebra::BasisLabel;
use braidforge::bialgebra::*;
use braidforge::braid::SignCase;
use braidforge::fixtures::{matches_expected, FixtureStore};
use braidforge::rtt::derive_all;

#[test]
fn every_case_is_a_bialgebra_in_every_basis() {
    for d in derive_all() {
        for (b, rel) in [
            (BasisLabel::Original, d.relations_original.clone()),
            (BasisLabel::Tilde, d.relations_tilde.clone()),
            (
                BasisLabel::Hat,
                change_basis_deg2(&d.relations_tilde, &hat(), BasisLabel::Hat),
            ),
        ] {
            let c = check_coproduct_compatibility(&rel, &CoproductTable::in_basis(b)).unwrap();
            assert!(c.ok, "{} {b}: {:?}", d.case, c.failures);
            assert!(
                check_counit(&rel, &CounitVector::in_basis(b)).unwrap().ok,
                "{} {b}",
                d.case
            );
        }
    }
}

#[test]
fn coproduct_transcriptions_differ_only_where_expected() {
    let store = FixtureStore::default();
    for b in [BasisLabel::Original, BasisLabel::Tilde, BasisLabel::Hat] {
        let fx = store.coproducts(b).unwrap();
        let diff = diff_coproducts(&CoproductTable::in_basis(b), &fx).unwrap();
        assert!(matches_expected(&diff, &fx.expected_diff), "{b}: {diff:?}");
    }
}

#[test]
fn counit_transcription_matches() {
    let fx = FixtureStore::default().counit().unwrap();
    for b in [BasisLabel::Original, BasisLabel::Hat] {
        assert!(diff_counit(&CounitVector::in_basis(b), &fx)
            .unwrap()
            .is_empty());
    }
}

#[test]
fn basis_change_transcriptions() {
    let store = FixtureStore::default();
    let t = store.basis_change(BasisLabel::Tilde).unwrap();
    assert!(diff_basis_change(&tilde(), &t).unwrap().is_empty());
    let h = store.basis_change(BasisLabel::Hat).unwrap();
    let diff = diff_basis_change(&hat(), &h).unwrap();
    assert!(matches_expected(&diff, &h.expected_diff), "{diff:?}");
    assert!(diff_basis_change(&hat_as_displayed(), &h)
        .unwrap()
        .is_empty());
}

#[test]
fn hat_relations_transcription_matches_derivation() {
    let store = FixtureStore::default();
    let d = derive_all()
        .into_iter()
        .find(|d| d.case == "-+-".parse::<SignCase>().unwrap())
        .unwrap();
    let derived = change_basis_deg2(&d.relations_tilde, &hat(), BasisLabel::Hat);
    let fx = store.hat_relations().unwrap();
    let diff = braidforge::rtt::diff_sets(&derived, &fx.relations().unwrap(), BasisLabel::Hat);
    assert!(diff.is_empty(), "{diff:?}");
}
