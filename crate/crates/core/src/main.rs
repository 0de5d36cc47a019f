use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidforge::algebra::basis_change::{hat, tilde};
use braidforge::algebra::relations::{change_basis_deg2, vector_text};
use braidforge::algebra::{BasisLabel, Generator};
use braidforge::bialgebra::{
    check_coassociativity, check_coproduct_compatibility, check_counit, check_counit_laws,
    diff_basis_change, diff_coproducts, diff_counit, CoproductTable, CounitVector,
};
use braidforge::braid::{
    build_constant_rhat, build_rhat, check_braid_baxterized, check_constant_braid_matrix,
    check_constant_ybe, check_ybe_baxterized, inverse_residual, BraidParams, Embed13, SignCase,
};
use braidforge::dual::{
    check_identity_str, compare_basis_display, minus_plus_context, run_dual_suite, word_text,
    GradedQuotient, IdentityRecord, MAX_TRUNCATION,
};
use braidforge::fixtures::{matches_expected, DiffItem, FixtureStore};
use braidforge::linalg::FloatMatrix;
use braidforge::report::{report_timestamp, RunReport};
use braidforge::rtt::{
    claimed_classes, classify, decompose_by_blocks, derive_all, derive_case, diff_sets,
    ordering_report, RttDerivation,
};
use braidforge::Result;

#[derive(Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Exact checks for 9x9 braid matrices and their RTT bialgebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the run report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Stamp the report with the wall clock when SOURCE_DATE_EPOCH is unset.
    #[arg(long, global = true)]
    timestamp: bool,
    /// Tolerance for floating-point residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Random samples for numeric checks.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Seed for numeric sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CaseSel {
    /// Sign case such as `+-+`.
    #[arg(long, allow_hyphen_values = true)]
    case: Option<SignCase>,
    /// All eight sign cases (the default when no case is given).
    #[arg(long)]
    all_cases: bool,
}

impl CaseSel {
    fn cases(&self) -> Vec<SignCase> {
        match (self.all_cases, self.case) {
            (false, Some(c)) => vec![c],
            _ => SignCase::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Braid and Yang-Baxter equations, constant (exact) or spectral (sampled).
    VerifyYbe {
        #[arg(long)]
        constant: bool,
        #[command(flatten)]
        sel: CaseSel,
        /// Print the matrices that were checked.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// RTT relations of one or all sign cases.
    Derive {
        #[command(flatten)]
        sel: CaseSel,
        /// Compare with the transcribed relation lists.
        #[arg(long)]
        diff_paper: bool,
    },
    /// Isomorphism classes under generator exchanges.
    Classify,
    /// Every transcribed display against its recomputation.
    DiffPaper,
    /// Coproduct and counit compatibility with the relation ideals.
    CheckBialgebra {
        #[command(flatten)]
        sel: CaseSel,
    },
    /// The coproduct table in a generator basis.
    ShowCoproducts {
        #[arg(long, default_value = "hat")]
        basis: BasisLabel,
        #[arg(long)]
        diff_paper: bool,
    },
    /// Dual relations and coproducts of the (-,+,-) bialgebra.
    Dual {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Check only this identity, e.g. "[K,P]-2P" or "P*P".
        #[arg(long)]
        identity: Option<String>,
    },
    /// Normal words of the (-,+,-) quotient.
    Basis {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("BRAIDFORGE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let argv = command_echo(std::env::args().skip(1));
    let mut report = RunReport::new(argv, report_timestamp(cli.common.timestamp));
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    print!("{}", report.text());
    if let Some(path) = &cli.common.json {
        let written = report.to_json().and_then(|s| Ok(std::fs::write(path, s)?));
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_status as u8)
}

/// Arguments minus the output path, so reports do not depend on where
/// they are written.
fn command_echo(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--json" {
            skip = true;
        } else if !a.starts_with("--json=") {
            out.push(a);
        }
    }
    out
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<()> {
    let c = &cli.common;
    match &cli.cmd {
        Cmd::VerifyYbe {
            constant: true,
            sel,
            dump_matrix,
        } => verify_constant(&sel.cases(), *dump_matrix, report),
        Cmd::VerifyYbe { dump_matrix, .. } => verify_spectral(c, *dump_matrix, report),
        Cmd::Derive { sel, diff_paper } => derive(&sel.cases(), *diff_paper, report),
        Cmd::Classify => classify_cmd(report),
        Cmd::DiffPaper => diff_paper(report),
        Cmd::CheckBialgebra { sel } => check_bialgebra(&sel.cases(), report),
        Cmd::ShowCoproducts { basis, diff_paper } => show_coproducts(*basis, *diff_paper, report),
        Cmd::Dual {
            max_degree,
            identity,
        } => dual(*max_degree, identity.as_deref(), report),
        Cmd::Basis { degree } => basis(*degree, report),
    }
}

fn diff_detail(diff: &[DiffItem]) -> String {
    diff.iter()
        .map(|d| format!("{}: {}", d.item, d.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn verify_constant(cases: &[SignCase], dump: bool, report: &mut RunReport) -> Result<()> {
    for &case in cases {
        let m = build_constant_rhat(case).matrix;
        if dump {
            println!("{case} {}", m.to_json());
        }
        report.push(
            format!("constant YBE {case}"),
            check_constant_ybe(case),
            "exact",
            "braid:constant",
        );
        report.push(
            format!("constant braid relation {case}"),
            check_constant_braid_matrix(&m)?,
            "exact",
            "braid:constant",
        );
    }
    Ok(())
}

fn verify_spectral(c: &Common, dump: bool, report: &mut RunReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let (mut braid, mut ybe, mut ybe_alt, mut inv, mut zero) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for i in 0..c.samples {
        let p = BraidParams::sample(&mut rng, 2.0);
        let (t1, t2) = (rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
        if dump && i == 0 {
            println!("theta={t1} {}", build_rhat(&p, t1)?.to_json());
        }
        braid = braid.max(check_braid_baxterized(&p, t1, t2)?);
        ybe = ybe.max(check_ybe_baxterized(&p, t1, t2, Embed13::Conjugated)?);
        ybe_alt = ybe_alt.max(check_ybe_baxterized(&p, t1, t2, Embed13::Alternative)?);
        inv = inv.max(inverse_residual(&p, t1)?);
        zero = zero.max(build_rhat(&p, 0.0)?.max_abs_diff(&FloatMatrix::identity(9))?);
    }
    let n = c.samples;
    for (name, r) in [
        ("braid equation", braid),
        ("YBE", ybe),
        ("YBE (alternative 13 embedding)", ybe_alt),
        ("R(theta)R(-theta) = I", inv),
        ("R(0) = I", zero),
    ] {
        report.push(
            name,
            r < c.tol,
            format!("max residual {r:.3e} over {n} samples"),
            "braid:baxterized",
        );
    }
    Ok(())
}

fn derive(cases: &[SignCase], diff_paper: bool, report: &mut RunReport) -> Result<()> {
    let store = FixtureStore::default();
    for &case in cases {
        let d = derive_case(case);
        let fx = store.relations(case)?;
        report.push(
            format!("dimension {case}"),
            d.dimension == 40 && d.strategies_agree,
            format!("dense {}, shuffled sparse {}", d.dimension, d.dimension_alt),
            &fx.anchor,
        );
        if diff_paper {
            let diff = diff_sets(&d.relations_tilde, &fx.relations()?, BasisLabel::Tilde);
            let detail = if diff.is_empty() {
                String::new()
            } else {
                format!(
                    "not derived: {:?}; not transcribed: {:?}",
                    diff.not_derived, diff.not_transcribed
                )
            };
            report.push(
                format!("transcribed list {case}"),
                diff.is_empty(),
                detail,
                &fx.anchor,
            );
        } else {
            println!("# {case} (tilde generators)");
            for v in d.relations_tilde.vectors() {
                println!("{}", vector_text(v));
            }
            let o = ordering_report(&d);
            println!("# components {}", o.components.join(" "));
        }
    }
    Ok(())
}

fn classify_cmd(report: &mut RunReport) -> Result<()> {
    let all = derive_all();
    let r = classify(&all)?;
    for c in &r.claims {
        report.push(
            format!("{} -> {} ({})", c.from, c.to, c.origin),
            c.holds,
            c.witness.clone().unwrap_or_default(),
            "classes",
        );
    }
    let classes: Vec<String> = r
        .classes
        .iter()
        .map(|cl| cl.iter().map(|c| c.label()).collect::<Vec<_>>().join(","))
        .collect();
    report.push(
        "four classes",
        r.classes == claimed_classes_sorted(),
        classes.join(" | "),
        "classes",
    );
    let cross: Vec<String> = r
        .cross_class_witnesses
        .iter()
        .map(|(a, b, w)| format!("{a}~{b} by {w}"))
        .collect();
    report.push(
        "no cross-class witness",
        cross.is_empty(),
        cross.join("; "),
        "classes",
    );
    Ok(())
}

/// Claimed classes in the order the partition search reports them.
fn claimed_classes_sorted() -> Vec<Vec<SignCase>> {
    let pos = |c: &SignCase| SignCase::ALL.iter().position(|x| x == c).unwrap_or(8);
    let mut cl: Vec<Vec<SignCase>> = claimed_classes()
        .into_iter()
        .map(|mut v| {
            v.sort_by_key(pos);
            v
        })
        .collect();
    cl.sort_by_key(|v| pos(&v[0]));
    cl
}

fn diff_paper(report: &mut RunReport) -> Result<()> {
    let store = FixtureStore::default();
    let all = derive_all();
    let blocks = store.blocks()?;
    for d in &all {
        let fx = store.relations(d.case)?;
        let diff = diff_sets(&d.relations_tilde, &fx.relations()?, BasisLabel::Tilde);
        report.push(
            format!("relations {}", d.case),
            diff.is_empty(),
            format!("{} differences", diff.len()),
            &fx.anchor,
        );
        let dec = decompose_by_blocks(d, &blocks);
        let (ok, detail) = match &dec {
            Ok(b) => (b.as_predicted, b.blocks.join(" + ")),
            Err(e) => (false, e.to_string()),
        };
        report.push(
            format!("block decomposition {}", d.case),
            ok,
            detail,
            &fx.anchor,
        );
    }
    for (label, b) in &blocks {
        let t = change_basis_deg2(&b.original_set()?, &tilde(), BasisLabel::Tilde);
        report.push(
            format!("block {label} tilde form"),
            t.equals(&b.tilde_set()?)?,
            "",
            &b.anchor,
        );
    }
    let mpm = all
        .iter()
        .find(|d| d.case == SignCase::new(-1, 1, -1))
        .expect("all cases");
    let hat_fx = store.hat_relations()?;
    let hat_set = change_basis_deg2(&mpm.relations_tilde, &hat(), BasisLabel::Hat);
    let diff = diff_sets(&hat_set, &hat_fx.relations()?, BasisLabel::Hat);
    report.push(
        "relations (-,+,-) hat",
        diff.is_empty(),
        format!("{} differences", diff.len()),
        &hat_fx.anchor,
    );
    for b in [BasisLabel::Original, BasisLabel::Tilde, BasisLabel::Hat] {
        let fx = store.coproducts(b)?;
        let diff = diff_coproducts(&CoproductTable::in_basis(b), &fx)?;
        report.push(
            format!("coproducts {b}"),
            matches_expected(&diff, &fx.expected_diff),
            diff_detail(&diff),
            &fx.anchor,
        );
    }
    let cfx = store.counit()?;
    for b in [BasisLabel::Original, BasisLabel::Hat] {
        let diff = diff_counit(&CounitVector::in_basis(b), &cfx)?;
        report.push(
            format!("counit {b}"),
            matches_expected(&diff, &cfx.expected_diff),
            diff_detail(&diff),
            &cfx.anchor,
        );
    }
    for (b, g) in [(BasisLabel::Tilde, tilde()), (BasisLabel::Hat, hat())] {
        let fx = store.basis_change(b)?;
        let diff = diff_basis_change(&g, &fx)?;
        report.push(
            format!("generator change {b}"),
            matches_expected(&diff, &fx.expected_diff),
            diff_detail(&diff),
            &fx.anchor,
        );
    }
    let q = GradedQuotient::new(hat_set, 2)?;
    let bfx = store.basis_display()?;
    let r = compare_basis_display(&q, &bfx, 2)?;
    report.push(
        "basis display",
        matches_expected(&r.diff, &bfx.expected_diff),
        diff_detail(&r.diff),
        &bfx.anchor,
    );
    Ok(())
}

fn check_bialgebra(cases: &[SignCase], report: &mut RunReport) -> Result<()> {
    for &case in cases {
        let d: RttDerivation = derive_case(case);
        let sets = [
            (BasisLabel::Original, d.relations_original.clone()),
            (BasisLabel::Tilde, d.relations_tilde.clone()),
            (
                BasisLabel::Hat,
                change_basis_deg2(&d.relations_tilde, &hat(), BasisLabel::Hat),
            ),
        ];
        for (b, rel) in sets {
            let c = check_coproduct_compatibility(&rel, &CoproductTable::in_basis(b))?;
            report.push(
                format!("coproduct preserves ideal {case} {b}"),
                c.ok,
                c.failures.join(", "),
                "coproduct:T",
            );
            let e = check_counit(&rel, &CounitVector::in_basis(b))?;
            report.push(
                format!("counit kills ideal {case} {b}"),
                e.ok,
                e.failures.join(", "),
                "counit",
            );
        }
    }
    for b in [BasisLabel::Original, BasisLabel::Tilde, BasisLabel::Hat] {
        let t = CoproductTable::in_basis(b);
        let a = check_coassociativity(&t);
        report.push(
            format!("coassociativity {b}"),
            a.ok,
            a.failures.join(", "),
            "coproduct:T",
        );
        let u = check_counit_laws(&t, &CounitVector::in_basis(b));
        report.push(
            format!("counit laws {b}"),
            u.ok,
            u.failures.join(", "),
            "counit",
        );
    }
    Ok(())
}

fn show_coproducts(b: BasisLabel, diff_paper: bool, report: &mut RunReport) -> Result<()> {
    let t = CoproductTable::in_basis(b);
    let e = CounitVector::in_basis(b);
    for g in Generator::all() {
        println!(
            "delta({g}) = {}    eps({g}) = {}",
            t.text(g),
            braidforge::scalar::fmt_q_short(e.of(g))
        );
    }
    if diff_paper {
        let fx = FixtureStore::default().coproducts(b)?;
        let diff = diff_coproducts(&t, &fx)?;
        for d in &diff {
            println!("# {}: {}", d.item, d.detail);
        }
        report.push(
            format!("coproducts {b}"),
            matches_expected(&diff, &fx.expected_diff),
            diff_detail(&diff),
            &fx.anchor,
        );
    }
    Ok(())
}

fn identity_detail(r: &IdentityRecord) -> String {
    match (&r.witness, &r.value) {
        (Some(w), Some(v)) => format!("lhs - rhs = {v} on {w}"),
        _ => String::new(),
    }
}

fn dual(max_degree: usize, identity: Option<&str>, report: &mut RunReport) -> Result<()> {
    if max_degree == MAX_TRUNCATION {
        eprintln!("warning: degree {max_degree} builds a 59049-word space; this is slow");
    }
    let ctx = minus_plus_context(max_degree)?;
    let upto = format!("up to degree {max_degree}");
    if let Some(s) = identity {
        for r in check_identity_str(&ctx, s)? {
            report.push(
                format!("{} ({upto})", r.label),
                r.holds,
                identity_detail(&r),
                "dual:relations",
            );
        }
        return Ok(());
    }
    let store = FixtureStore::default();
    let s = run_dual_suite(
        &ctx,
        &store.dual_identities()?,
        &store.dual_coproducts()?,
        true,
    )?;
    for r in &s.identities {
        report.push(
            format!("{} ({upto})", r.label),
            r.holds,
            identity_detail(r),
            "dual:relations",
        );
    }
    for p in &s.primitivity {
        let detail = p
            .witness
            .as_ref()
            .map(|w| {
                format!(
                    "X({}·{}) = {}, expected {}",
                    w.left, w.right, w.value, w.expected
                )
            })
            .unwrap_or_default();
        report.push(
            format!("{} primitive ({upto})", p.generator),
            p.holds,
            detail,
            "dual:coproducts",
        );
    }
    report.push(
        "dual associativity",
        s.associativity.is_none(),
        s.associativity.clone().unwrap_or_default(),
        "dual:relations",
    );
    report.push(
        "unit 1_U",
        s.unit.is_none(),
        s.unit.clone().unwrap_or_default(),
        "dual:relations",
    );
    let n = &s.negative_control;
    report.push(
        format!("negative control {} is rejected", n.label),
        !n.holds,
        identity_detail(n),
        "dual:relations",
    );
    Ok(())
}

fn basis(degree: usize, report: &mut RunReport) -> Result<()> {
    let ctx_q = {
        let d = derive_case(SignCase::new(-1, 1, -1));
        braidforge::dual::hat_quotient(&d.relations_tilde, degree)?
    };
    for d in 0..=degree {
        let words: Vec<String> = ctx_q.basis(d).iter().map(|w| word_text(w)).collect();
        println!("degree {d} ({}): {}", words.len(), words.join(" "));
    }
    let fx = FixtureStore::default().basis_display()?;
    let r = compare_basis_display(&ctx_q, &fx, degree)?;
    report.push(
        "display lines",
        matches_expected(&r.diff, &fx.expected_diff),
        diff_detail(&r.diff),
        &fx.anchor,
    );
    let wrong: Vec<String> = r
        .lines
        .iter()
        .flat_map(|l| l.not_normal.iter().cloned())
        .collect();
    report.push(
        "displayed words are normal",
        wrong.is_empty(),
        wrong.join(" "),
        &fx.anchor,
    );
    println!(
        "# normal words outside the display ({}): {}",
        r.uncovered.len(),
        r.uncovered.join(" ")
    );
    Ok(())
}
