//! Transcribed reference data, kept as JSON beside the crate so that
//! auditing a transcription never needs a rebuild.
//!
//! Layout under the fixture root:
//!
//! ```text
//! relations/<slug>.json      eight case lists (+ hat_mpm.json)
//! blocks/<name>.json         the thirteen block families
//! coproducts/{original,tilde,hat}.json
//! basis_change/{tilde,hat}.json
//! counit.json
//! dual/{identities,coproducts}.json
//! basis/display.json
//! ```
//!
//! Each file carries an `anchor` naming the display it transcribes and an
//! `expected_diff` list of documented misprints.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::latex::parse_relation_chain;
use crate::algebra::{BasisLabel, QuadraticRelationSet};
use crate::braid::SignCase;
use crate::error::{Error, Result};
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDiff {
    pub item: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationsFixture {
    pub anchor: String,
    pub case: SignCase,
    pub basis: BasisLabel,
    pub statements: Vec<String>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockFixture {
    pub anchor: String,
    pub block: String,
    pub original: Vec<String>,
    pub tilde: Vec<String>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoproductEntry {
    pub generator: String,
    pub terms: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoproductsFixture {
    pub anchor: String,
    pub basis: BasisLabel,
    pub entries: Vec<CoproductEntry>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounitFixture {
    pub anchor: String,
    pub values: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisChangeFixture {
    pub anchor: String,
    pub from: BasisLabel,
    pub to: BasisLabel,
    pub statements: Vec<String>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualIdentitiesFixture {
    pub anchor: String,
    pub exponents: Vec<String>,
    pub statements: Vec<String>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualCoproductsFixture {
    pub anchor: String,
    pub statements: Vec<String>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DisplayLine {
    pub raw: String,
    pub pattern: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisDisplayFixture {
    pub anchor: String,
    pub letters: String,
    pub lines: Vec<DisplayLine>,
    #[serde(default)]
    pub expected_diff: Vec<ExpectedDiff>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fixture {
    Relations(RelationsFixture),
    Block(BlockFixture),
    Coproducts(CoproductsFixture),
    Counit(CounitFixture),
    BasisChange(BasisChangeFixture),
    DualIdentities(DualIdentitiesFixture),
    DualCoproducts(DualCoproductsFixture),
    BasisDisplay(BasisDisplayFixture),
}

impl Fixture {
    pub fn anchor(&self) -> &str {
        match self {
            Fixture::Relations(f) => &f.anchor,
            Fixture::Block(f) => &f.anchor,
            Fixture::Coproducts(f) => &f.anchor,
            Fixture::Counit(f) => &f.anchor,
            Fixture::BasisChange(f) => &f.anchor,
            Fixture::DualIdentities(f) => &f.anchor,
            Fixture::DualCoproducts(f) => &f.anchor,
            Fixture::BasisDisplay(f) => &f.anchor,
        }
    }

    pub fn expected_diff(&self) -> &[ExpectedDiff] {
        match self {
            Fixture::Relations(f) => &f.expected_diff,
            Fixture::Block(f) => &f.expected_diff,
            Fixture::Coproducts(f) => &f.expected_diff,
            Fixture::Counit(f) => &f.expected_diff,
            Fixture::BasisChange(f) => &f.expected_diff,
            Fixture::DualIdentities(f) => &f.expected_diff,
            Fixture::DualCoproducts(f) => &f.expected_diff,
            Fixture::BasisDisplay(f) => &f.expected_diff,
        }
    }
}

/// One transcribed relation, kept with the statement it came from.
#[derive(Clone, Debug)]
pub struct TaggedRelation {
    pub statement: usize,
    pub source: String,
    pub vector: Vec<Q>,
}

pub fn parse_statements(statements: &[String]) -> Result<Vec<TaggedRelation>> {
    let mut out = Vec::new();
    for (i, s) in statements.iter().enumerate() {
        for v in parse_relation_chain(s)? {
            out.push(TaggedRelation {
                statement: i,
                source: s.clone(),
                vector: v,
            });
        }
    }
    Ok(out)
}

pub fn span_of(basis: BasisLabel, rels: &[TaggedRelation]) -> QuadraticRelationSet {
    QuadraticRelationSet::from_vectors(basis, rels.iter().map(|r| r.vector.clone()).collect())
}

impl RelationsFixture {
    pub fn relations(&self) -> Result<Vec<TaggedRelation>> {
        parse_statements(&self.statements)
    }

    pub fn relation_set(&self) -> Result<QuadraticRelationSet> {
        Ok(span_of(self.basis, &self.relations()?))
    }
}

impl BlockFixture {
    pub fn original_set(&self) -> Result<QuadraticRelationSet> {
        Ok(span_of(
            BasisLabel::Original,
            &parse_statements(&self.original)?,
        ))
    }

    pub fn tilde_set(&self) -> Result<QuadraticRelationSet> {
        Ok(span_of(BasisLabel::Tilde, &parse_statements(&self.tilde)?))
    }
}

/// Root directory holding the fixture tree.
#[derive(Clone, Debug)]
pub struct FixtureStore {
    root: PathBuf,
}

pub const BLOCK_FILES: [(&str, &str); 13] = [
    ("N", "n"),
    ("A+", "a_plus"),
    ("A-", "a_minus"),
    ("B+", "b_plus"),
    ("B-", "b_minus"),
    ("C+", "c_plus"),
    ("C-", "c_minus"),
    ("AB+", "ab_plus"),
    ("AB-", "ab_minus"),
    ("AC+", "ac_plus"),
    ("AC-", "ac_minus"),
    ("BC+", "bc_plus"),
    ("BC-", "bc_minus"),
];

impl Default for FixtureStore {
    /// `BRAIDFORGE_FIXTURES` if set, else the tree shipped with the crate.
    fn default() -> Self {
        let root = std::env::var_os("BRAIDFORGE_FIXTURES")
            .map(PathBuf::from)
            .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
        FixtureStore { root }
    }
}

impl FixtureStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        FixtureStore { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Loads `name` (e.g. `"relations/ppp"`) and validates its payload.
    pub fn load(&self, name: &str) -> Result<Fixture> {
        let path = self.root.join(format!("{name}.json"));
        let fail = |msg: String| Error::Fixture {
            name: name.to_string(),
            msg,
        };
        let text =
            fs::read_to_string(&path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
        let fx: Fixture = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
        validate(&fx).map_err(|e| fail(e.to_string()))?;
        Ok(fx)
    }

    /// Every fixture name under the root, sorted.
    pub fn names(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        walk(&self.root, &self.root, &mut out)?;
        out.sort();
        Ok(out)
    }

    pub fn relations(&self, case: SignCase) -> Result<RelationsFixture> {
        match self.load(&format!("relations/{}", case.slug()))? {
            Fixture::Relations(f) => Ok(f),
            _ => Err(self.kind_error("relations")),
        }
    }

    pub fn hat_relations(&self) -> Result<RelationsFixture> {
        match self.load("relations/hat_mpm")? {
            Fixture::Relations(f) => Ok(f),
            _ => Err(self.kind_error("relations")),
        }
    }

    pub fn block(&self, label: &str) -> Result<BlockFixture> {
        let file = BLOCK_FILES
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, f)| *f)
            .ok_or_else(|| Error::Fixture {
                name: label.to_string(),
                msg: "unknown block".into(),
            })?;
        match self.load(&format!("blocks/{file}"))? {
            Fixture::Block(f) => Ok(f),
            _ => Err(self.kind_error("block")),
        }
    }

    pub fn blocks(&self) -> Result<BTreeMap<String, BlockFixture>> {
        BLOCK_FILES
            .iter()
            .map(|(l, _)| Ok((l.to_string(), self.block(l)?)))
            .collect()
    }

    pub fn coproducts(&self, basis: BasisLabel) -> Result<CoproductsFixture> {
        match self.load(&format!("coproducts/{basis}"))? {
            Fixture::Coproducts(f) => Ok(f),
            _ => Err(self.kind_error("coproducts")),
        }
    }

    pub fn counit(&self) -> Result<CounitFixture> {
        match self.load("counit")? {
            Fixture::Counit(f) => Ok(f),
            _ => Err(self.kind_error("counit")),
        }
    }

    pub fn basis_change(&self, to: BasisLabel) -> Result<BasisChangeFixture> {
        match self.load(&format!("basis_change/{to}"))? {
            Fixture::BasisChange(f) => Ok(f),
            _ => Err(self.kind_error("basis_change")),
        }
    }

    pub fn dual_identities(&self) -> Result<DualIdentitiesFixture> {
        match self.load("dual/identities")? {
            Fixture::DualIdentities(f) => Ok(f),
            _ => Err(self.kind_error("dual_identities")),
        }
    }

    pub fn dual_coproducts(&self) -> Result<DualCoproductsFixture> {
        match self.load("dual/coproducts")? {
            Fixture::DualCoproducts(f) => Ok(f),
            _ => Err(self.kind_error("dual_coproducts")),
        }
    }

    pub fn basis_display(&self) -> Result<BasisDisplayFixture> {
        match self.load("basis/display")? {
            Fixture::BasisDisplay(f) => Ok(f),
            _ => Err(self.kind_error("basis_display")),
        }
    }

    fn kind_error(&self, want: &str) -> Error {
        Error::Fixture {
            name: want.to_string(),
            msg: "unexpected fixture kind".into(),
        }
    }
}

fn walk(root: &Path, dir: &Path, out: &mut Vec<String>) -> Result<()> {
    for entry in fs::read_dir(dir)? {
        let p = entry?.path();
        if p.is_dir() {
            walk(root, &p, out)?;
        } else if p.extension().is_some_and(|e| e == "json") {
            let rel = p.strip_prefix(root).expect("under root").with_extension("");
            out.push(rel.to_string_lossy().replace('\\', "/"));
        }
    }
    Ok(())
}

fn validate(fx: &Fixture) -> Result<()> {
    match fx {
        Fixture::Relations(f) => {
            f.relations()?;
        }
        Fixture::Block(f) => {
            parse_statements(&f.original)?;
            parse_statements(&f.tilde)?;
        }
        Fixture::BasisDisplay(f) => {
            for l in &f.lines {
                regex::Regex::new(&l.pattern)
                    .map_err(|e| Error::parse(&l.pattern, e.to_string()))?;
            }
        }
        Fixture::Counit(f) => {
            for vals in f.values.values() {
                for v in vals.values() {
                    crate::scalar::parse_q(v)?;
                }
            }
        }
        // Coproduct and identity strings may hold documented misprints, so
        // they are only parsed when diffed.
        _ => {}
    }
    if fx.anchor().trim().is_empty() {
        return Err(Error::parse("anchor", "empty anchor"));
    }
    Ok(())
}

/// One discrepancy between a recomputed object and its transcription.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffItem {
    pub item: String,
    pub detail: String,
}

/// True when the diff names exactly the documented items, no more, no less.
pub fn matches_expected(diff: &[DiffItem], expected: &[ExpectedDiff]) -> bool {
    let mut got: Vec<&str> = diff.iter().map(|d| d.item.as_str()).collect();
    let mut want: Vec<&str> = expected.iter().map(|e| e.item.as_str()).collect();
    got.sort_unstable();
    got.dedup();
    want.sort_unstable();
    want.dedup();
    got == want
}
