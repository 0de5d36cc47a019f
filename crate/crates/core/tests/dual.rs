use std::sync::OnceLock;

use braidforge::algebra::Generator;
use braidforge::dual::*;
use braidforge::fixtures::{matches_expected, FixtureStore};

fn ctx() -> &'static DualContext {
    static C: OnceLock<DualContext> = OnceLock::new();
    C.get_or_init(|| minus_plus_context(4).unwrap())
}

#[test]
fn normal_word_counts() {
    let q = ctx().quotient();
    let counts: Vec<usize> = (0..=4).map(|d| q.basis(d).len()).collect();
    assert_eq!(counts, vec![1, 9, 41, 187, 853]);
    assert!(q.relations().is_monomial());
    for w in ["kl", "lk", "kr", "rk", "lr", "rl"] {
        assert!(q.index_of(&parse_word(w).unwrap()).is_some(), "{w}");
    }
    assert!(q
        .normal_form(&parse_word("pp").unwrap())
        .unwrap()
        .is_empty());
    assert!(q
        .normal_form(&parse_word("km").unwrap())
        .unwrap()
        .is_empty());
}

#[test]
fn coproduct_of_r() {
    let c = ctx();
    let i = c.quotient().index_of(&[Generator::R]).unwrap();
    let mut terms: Vec<String> = c
        .coproducts()
        .of(i)
        .iter()
        .map(|(k, a, b)| format!("{k} {}⊗{}", c.word_text(*a), c.word_text(*b)))
        .collect();
    terms.sort();
    assert_eq!(terms, vec!["1 r⊗r", "2 q⊗p", "2 s⊗t"]);
}

#[test]
fn quotient_structure_laws() {
    let c = ctx();
    assert_eq!(c.check_coassociativity(3), None);
    assert_eq!(c.check_counit_laws(), None);
    assert_eq!(c.check_unit(), None);
    assert_eq!(c.check_multiplicativity(3).unwrap(), None);
}

#[test]
fn dual_associativity() {
    assert_eq!(ctx().check_associativity(), None);
}

#[test]
fn suite_report() {
    let store = FixtureStore::default();
    let r = run_dual_suite(
        ctx(),
        &store.dual_identities().unwrap(),
        &store.dual_coproducts().unwrap(),
        false,
    )
    .unwrap();
    for f in r.failed_identities() {
        println!("FAIL {} at {:?} = {:?}", f.label, f.witness, f.value);
    }
    for p in &r.primitivity {
        println!("prim {} {:?}", p.generator, p.witness);
    }
    println!("total {}", r.identities.len());
    assert!(!r.negative_control.holds);
    assert_eq!(r.negative_control.witness.as_deref(), Some("p"));
}

#[test]
fn basis_display() {
    let fx = FixtureStore::default().basis_display().unwrap();
    let r = compare_basis_display(ctx().quotient(), &fx, 2).unwrap();
    assert!(matches_expected(&r.diff, &fx.expected_diff), "{:?}", r.diff);
    println!("{r:#?}");
}
