use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;

use super::expr::{expand_statement, DualIdentity, Evaluator};
use super::functional::{DualContext, PrimitivityWitness};
use super::quotient::hat_quotient;
use crate::algebra::latex::normalize;
use crate::algebra::{BasisLabel, Generator};
use crate::bialgebra::{CoproductTable, CounitVector};
use crate::braid::SignCase;
use crate::error::{Error, Result};
use crate::fixtures::{DualCoproductsFixture, DualIdentitiesFixture};
use crate::rtt::derive_case;
use crate::scalar::fmt_q_short;

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 4;

/// Dual context for the (−,+,−) bialgebra in the hat generators.
pub fn minus_plus_context(max_degree: usize) -> Result<DualContext> {
    let d = derive_case(SignCase::new(-1, 1, -1));
    let q = hat_quotient(&d.relations_tilde, max_degree)?;
    DualContext::new(
        q,
        &CoproductTable::in_basis(BasisLabel::Hat),
        CounitVector::in_basis(BasisLabel::Hat),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub label: String,
    pub holds: bool,
    /// First normal word where the two sides differ.
    pub witness: Option<String>,
    /// `lhs − rhs` on the witness.
    pub value: Option<String>,
}

pub fn check_identity(
    ev: &mut Evaluator<'_>,
    ctx: &DualContext,
    id: &DualIdentity,
) -> IdentityRecord {
    let d = ev.difference(id);
    let (witness, value) = match d.first_nonzero() {
        Some((i, v)) => (Some(ctx.word_text(i)), Some(fmt_q_short(v))),
        None => (None, None),
    };
    IdentityRecord {
        label: id.label.clone(),
        holds: witness.is_none(),
        witness,
        value,
    }
}

/// Checks an identity string, expanding exponent symbols up to `L − 1`.
pub fn check_identity_str(ctx: &DualContext, stmt: &str) -> Result<Vec<IdentityRecord>> {
    let ids = expand_statement(stmt, exponent_ceiling(ctx))?;
    let mut ev = Evaluator::new(ctx);
    Ok(ids
        .iter()
        .map(|id| check_identity(&mut ev, ctx, id))
        .collect())
}

fn exponent_ceiling(ctx: &DualContext) -> u32 {
    ctx.quotient().max_degree().saturating_sub(1).max(1) as u32
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimitivityRecord {
    pub generator: String,
    pub holds: bool,
    pub witness: Option<PrimitivityWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualSuiteReport {
    pub max_degree: usize,
    pub identities: Vec<IdentityRecord>,
    pub primitivity: Vec<PrimitivityRecord>,
    /// Failing triple for `(XY)Z = X(YZ)`, if any.
    pub associativity: Option<String>,
    /// Failing generator for the unit law, if any.
    pub unit: Option<String>,
    /// `[K,P] = 3P`, which must fail.
    pub negative_control: IdentityRecord,
}

impl DualSuiteReport {
    pub fn failed_identities(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.identities.iter().filter(|r| !r.holds)
    }

    pub fn identities_hold(&self) -> bool {
        self.failed_identities().next().is_none()
    }

    pub fn primitivity_holds(&self) -> bool {
        self.primitivity.iter().all(|p| p.holds)
    }

    pub fn all_pass(&self) -> bool {
        self.identities_hold()
            && self.primitivity_holds()
            && self.associativity.is_none()
            && self.unit.is_none()
            && !self.negative_control.holds
    }
}

fn primitive_statement() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\\delta\(([A-Z])\)=([A-Z])⊗1_U\+1_U⊗([A-Z])$").unwrap())
}

/// Reads `δ(X) = X⊗1_U + 1_U⊗X` and returns `X`.
pub fn parse_primitive_statement(stmt: &str) -> Result<Generator> {
    let n = normalize(stmt);
    let caps = primitive_statement()
        .captures(&n)
        .ok_or_else(|| Error::parse(stmt, "expected δ(X) = X⊗1_U + 1_U⊗X"))?;
    if caps[1] != caps[2] || caps[1] != caps[3] {
        return Err(Error::parse(
            stmt,
            "mixed generators in a primitivity statement",
        ));
    }
    Generator::from_char(caps[1].chars().next().expect("one letter"))
}

/// Evaluates every displayed identity and coproduct. `with_associativity`
/// adds the 729-triple convolution check.
pub fn run_dual_suite(
    ctx: &DualContext,
    identities: &DualIdentitiesFixture,
    coproducts: &DualCoproductsFixture,
    with_associativity: bool,
) -> Result<DualSuiteReport> {
    let max_exp = exponent_ceiling(ctx);
    let mut ev = Evaluator::new(ctx);
    let mut records = Vec::new();
    for stmt in &identities.statements {
        for id in expand_statement(stmt, max_exp)? {
            records.push(check_identity(&mut ev, ctx, &id));
        }
    }
    let mut primitivity = Vec::new();
    for stmt in &coproducts.statements {
        let g = parse_primitive_statement(stmt)?;
        let witness = ctx.check_primitivity(&ctx.generator(g))?;
        primitivity.push(PrimitivityRecord {
            generator: g.name().to_ascii_uppercase().to_string(),
            holds: witness.is_none(),
            witness,
        });
    }
    let negative = expand_statement("[K,P] = 3P", max_exp)?;
    let negative_control = check_identity(&mut ev, ctx, &negative[0]);
    Ok(DualSuiteReport {
        max_degree: ctx.quotient().max_degree(),
        identities: records,
        primitivity,
        associativity: if with_associativity {
            ctx.check_associativity()
        } else {
            None
        },
        unit: ctx.check_unit(),
        negative_control,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_statements() {
        let g = parse_primitive_statement(
            "\\delta(\\hat{K}) = \\hat{K}\\otimes 1_U + 1_U\\otimes \\hat{K}",
        )
        .unwrap();
        assert_eq!(g, Generator::K);
        assert!(parse_primitive_statement("\\delta(K) = K\\otimes 1_U + 1_U\\otimes L").is_err());
    }

    #[test]
    fn small_truncation_identities() {
        let ctx = minus_plus_context(2).unwrap();
        let r = check_identity_str(&ctx, "P*P").unwrap();
        assert!(r[0].holds);
        let r = check_identity_str(&ctx, "[K,P] = 3P").unwrap();
        assert!(!r[0].holds);
        assert_eq!(r[0].witness.as_deref(), Some("p"));
    }
}
