//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidforge::algebra::basis_change::hat;
use braidforge::algebra::relations::change_basis_deg2;
use braidforge::algebra::{BasisLabel, Generator};
use braidforge::bialgebra::*;
use braidforge::braid::*;
use braidforge::dual::{minus_plus_context, run_dual_suite};
use braidforge::fixtures::{matches_expected, FixtureStore};
use braidforge::linalg::FloatMatrix;
use braidforge::rtt::{classify, derive_all, diff_sets};
use braidforge::scalar::{half, q, Q};

const TOL: f64 = 1e-9;
const SAMPLES: usize = 100;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let dt = t.elapsed();
    (
        ok && dt < limit,
        format!(
            "{detail}; {:.2}s (limit {}s)",
            dt.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

fn constant_ybe() -> Outcome {
    timed(Duration::from_secs(5), || {
        let all = SignCase::ALL.iter().all(|&c| check_constant_ybe(c));
        let mut bad = build_constant_rhat(SignCase::new(1, 1, 1)).matrix;
        bad[(0, 8)] = bad[(0, 8)].clone() + half();
        let control = !check_constant_ybe_matrix(&bad).unwrap();
        (
            all && control,
            format!("8 cases exact: {all}; corrupted matrix rejected: {control}"),
        )
    })
}

fn baxterized() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut worst = [0f64; 4];
        for _ in 0..SAMPLES {
            let p = BraidParams::sample(&mut rng, 2.0);
            let (t1, t2) = (rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
            let r = [
                check_braid_baxterized(&p, t1, t2).unwrap(),
                check_ybe_baxterized(&p, t1, t2, Embed13::Conjugated).unwrap(),
                build_rhat(&p, 0.0)
                    .unwrap()
                    .max_abs_diff(&FloatMatrix::identity(9))
                    .unwrap(),
                inverse_residual(&p, t1).unwrap(),
            ];
            for (w, x) in worst.iter_mut().zip(r) {
                *w = w.max(x);
            }
        }
        (
            worst.iter().all(|&w| w < TOL),
            format!(
                "braid {:.1e}, YBE {:.1e}, R(0)-I {:.1e}, R(t)R(-t)-I {:.1e} over {SAMPLES} samples",
                worst[0], worst[1], worst[2], worst[3]
            ),
        )
    })
}

fn rtt() -> Outcome {
    let store = FixtureStore::default();
    timed(Duration::from_secs(60), || {
        let mut bad = Vec::new();
        for d in derive_all() {
            let fx = store.relations(d.case).unwrap();
            let diff = diff_sets(
                &d.relations_tilde,
                &fx.relations().unwrap(),
                BasisLabel::Tilde,
            );
            if d.dimension != 40 || !d.strategies_agree || !diff.is_empty() {
                bad.push(format!(
                    "{} (dim {}, {} diffs)",
                    d.case,
                    d.dimension,
                    diff.len()
                ));
            }
        }
        (bad.is_empty(), format!("cases off: {bad:?}"))
    })
}

fn classification() -> Outcome {
    let r = classify(&derive_all()).unwrap();
    let claims = r.claims.iter().filter(|c| c.holds).count();
    let ok = claims == r.claims.len() && r.cross_class_witnesses.is_empty() && r.classes.len() == 4;
    (
        ok,
        format!(
            "{claims}/{} claims, {} classes, {} cross-class witnesses",
            r.claims.len(),
            r.classes.len(),
            r.cross_class_witnesses.len()
        ),
    )
}

fn axioms() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut bad = Vec::new();
        for d in derive_all() {
            let hat_rel = change_basis_deg2(&d.relations_tilde, &hat(), BasisLabel::Hat);
            for (b, rel) in [
                (BasisLabel::Original, &d.relations_original),
                (BasisLabel::Tilde, &d.relations_tilde),
                (BasisLabel::Hat, &hat_rel),
            ] {
                let c = check_coproduct_compatibility(rel, &CoproductTable::in_basis(b)).unwrap();
                let e = check_counit(rel, &CounitVector::in_basis(b)).unwrap();
                if !c.ok || !e.ok {
                    bad.push(format!("{} {b}", d.case));
                }
            }
        }
        for b in [BasisLabel::Original, BasisLabel::Tilde, BasisLabel::Hat] {
            let t = CoproductTable::in_basis(b);
            if !check_coassociativity(&t).ok
                || !check_counit_laws(&t, &CounitVector::in_basis(b)).ok
            {
                bad.push(format!("coalgebra {b}"));
            }
        }
        (bad.is_empty(), format!("failures: {bad:?}"))
    })
}

fn coproduct_table() -> Outcome {
    let store = FixtureStore::default();
    let mut bad = Vec::new();
    for b in [BasisLabel::Tilde, BasisLabel::Hat] {
        let fx = store.coproducts(b).unwrap();
        let diff = diff_coproducts(&CoproductTable::in_basis(b), &fx).unwrap();
        if !matches_expected(&diff, &fx.expected_diff) {
            bad.push(format!("{b}: {diff:?}"));
        }
    }
    let eps = CounitVector::in_basis(BasisLabel::Hat);
    let counit: [(Generator, Q); 3] = [
        (Generator::K, half()),
        (Generator::L, half()),
        (Generator::R, q(1)),
    ];
    for (g, want) in counit {
        if *eps.of(g) != want {
            bad.push(format!("counit {}", g.name()));
        }
    }
    (bad.is_empty(), format!("beyond documented typos: {bad:?}"))
}

fn dual_suite() -> Outcome {
    let store = FixtureStore::default();
    timed(Duration::from_secs(300), || {
        let ctx = minus_plus_context(4).unwrap();
        let r = run_dual_suite(
            &ctx,
            &store.dual_identities().unwrap(),
            &store.dual_coproducts().unwrap(),
            true,
        )
        .unwrap();
        let failed: Vec<String> = r
            .failed_identities()
            .map(|f| format!("{} at {}", f.label, f.witness.as_deref().unwrap_or("?")))
            .collect();
        let not_primitive: Vec<&str> = r
            .primitivity
            .iter()
            .filter(|p| !p.holds)
            .map(|p| p.generator.as_str())
            .collect();
        let control = r.negative_control.witness.as_deref().unwrap_or("none");
        (
            r.all_pass(),
            format!(
                "{} of {} identities fail [{}]; not primitive: {:?}; associativity {}; unit {}; [K,P]=3P witness {control}",
                failed.len(),
                r.identities.len(),
                failed.join("; "),
                not_primitive,
                if r.associativity.is_none() { "ok" } else { "FAILS" },
                if r.unit.is_none() { "ok" } else { "FAILS" },
            ),
        )
    })
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("braidforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let runs = [
        vec!["verify-ybe", "--seed", "11"],
        vec!["derive", "--diff-paper"],
        vec!["dual", "--max-degree", "3"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let bytes: Vec<Vec<u8>> = (0..2)
            .map(|i| {
                let out = dir.join(format!("r{i}.json"));
                Command::new(env!("CARGO_BIN_EXE_braidforge"))
                    .args(&args)
                    .arg("--json")
                    .arg(&out)
                    .env_remove("SOURCE_DATE_EPOCH")
                    .stdout(std::process::Stdio::null())
                    .status()
                    .unwrap();
                std::fs::read(&out).unwrap()
            })
            .collect();
        if bytes[0] != bytes[1] || bytes[0].is_empty() {
            differing.push(args.join(" "));
        }
    }
    (differing.is_empty(), format!("differing: {differing:?}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 constant YBE", constant_ybe),
        ("2 baxterized identities", baxterized),
        ("3 RTT derivation", rtt),
        ("4 classification", classification),
        ("5 bialgebra axioms", axioms),
        ("6 hat coproduct table and counit", coproduct_table),
        ("7 dual suite at L=4", dual_suite),
        ("8 deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let (ok, detail) = f();
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!(
        "{}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
