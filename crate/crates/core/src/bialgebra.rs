//! Coproduct `δ(T) = T⊗T` and counit `ε(T) = 1`, their conjugates in the
//! tilde and hat generators, and the compatibility checks with a relation
//! ideal.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::basis_change::{from_original, GeneratorBasisChange};
use crate::algebra::latex::{parse_poly, parse_tensor_sum};
use crate::algebra::relations::{counit_on_deg2, vector_text};
use crate::algebra::{BasisLabel, Generator, QuadraticRelationSet};
use crate::error::{Error, Result};
use crate::fixtures::{BasisChangeFixture, CoproductsFixture, CounitFixture, DiffItem};
use crate::linalg::quotient_projection;
use crate::scalar::{fmt_q_short, parse_q, q, Q};

/// `δ(g)` for every generator, as a coefficient vector over `x⊗y`
/// (coordinate `9x+y`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoproductTable {
    basis: BasisLabel,
    rows: Vec<Vec<Q>>,
}

impl CoproductTable {
    /// `δ(Tᵢⱼ) = Σₐ Tᵢₐ ⊗ Tₐⱼ`.
    pub fn original() -> Self {
        let mut rows = vec![vec![Q::zero(); 81]; 9];
        for i in 0..3 {
            for j in 0..3 {
                let g = Generator::at(i, j).index();
                for a in 0..3 {
                    let x = 9 * Generator::at(i, a).index() + Generator::at(a, j).index();
                    rows[g][x] = rows[g][x].clone() + Q::one();
                }
            }
        }
        CoproductTable {
            basis: BasisLabel::Original,
            rows,
        }
    }

    /// `δ(T) = T⊗T` rewritten in the given generators.
    pub fn in_basis(basis: BasisLabel) -> Self {
        Self::original().conjugate(&from_original(basis), basis)
    }

    /// Rewrites the table through a change of generators:
    /// `δ(new_x) = Σₐ S⁻¹[x][a]·(S⊗S)δ(old_a)`.
    pub fn conjugate(&self, g: &GeneratorBasisChange, to: BasisLabel) -> Self {
        let inv = g.inverse_matrix();
        let moved: Vec<Vec<Q>> = self.rows.iter().map(|r| g.apply_deg2(r)).collect();
        let rows = (0..9)
            .map(|x| {
                let mut out = vec![Q::zero(); 81];
                for (a, row) in moved.iter().enumerate() {
                    let c = &inv[(x, a)];
                    if c.is_zero() {
                        continue;
                    }
                    for (o, v) in out.iter_mut().zip(row) {
                        if !v.is_zero() {
                            *o = o.clone() + c.clone() * v.clone();
                        }
                    }
                }
                out
            })
            .collect();
        CoproductTable { basis: to, rows }
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn of(&self, g: Generator) -> &[Q] {
        &self.rows[g.index()]
    }

    /// `(coeff, left, right)` terms of `δ(g)`.
    pub fn terms(&self, g: Generator) -> Vec<(Q, Generator, Generator)> {
        crate::algebra::relations::vector_terms(self.of(g))
    }

    pub fn text(&self, g: Generator) -> String {
        tensor_text(self.of(g))
    }
}

/// `2k⊗k - 2m⊗n + p⊗q`.
pub fn tensor_text(v: &[Q]) -> String {
    vector_text(v)
        .split(' ')
        .map(|tok| {
            // monomials print as two trailing letters: split them with ⊗
            let n = tok.chars().count();
            if n >= 2 && tok.chars().rev().take(2).all(|c| c.is_ascii_lowercase()) {
                let mut cs: Vec<char> = tok.chars().collect();
                let b = cs.pop().unwrap();
                let a = cs.pop().unwrap();
                format!("{}{a}⊗{b}", cs.into_iter().collect::<String>())
            } else {
                tok.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Counit values per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct CounitVector {
    pub basis: BasisLabel,
    pub values: [Q; 9],
}

impl CounitVector {
    /// `ε(T) = 1₃`: one on `k`, `r`, `n`.
    pub fn original() -> Self {
        let values = std::array::from_fn(|i| if [0, 4, 8].contains(&i) { q(1) } else { q(0) });
        CounitVector {
            basis: BasisLabel::Original,
            values,
        }
    }

    /// `ε(new_x) = Σₐ S⁻¹[x][a]·ε(old_a)`.
    pub fn in_basis(basis: BasisLabel) -> Self {
        let g = from_original(basis);
        let old = Self::original().values;
        let values = std::array::from_fn(|x| {
            (0..9).fold(Q::zero(), |acc, a| {
                acc + g.inverse_matrix()[(x, a)].clone() * old[a].clone()
            })
        });
        CounitVector { basis, values }
    }

    pub fn of(&self, g: Generator) -> &Q {
        &self.values[g.index()]
    }
}

/// `δ(r)` for a degree-2 vector, as a dense grid indexed
/// `(9a+b)·81 + (9c+d)` for the term `ab ⊗ cd`.
pub fn coproduct_deg2(r: &[Q], table: &CoproductTable) -> Vec<Q> {
    let mut out = vec![Q::zero(); 81 * 81];
    for (ab, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (ab / 9, ab % 9);
        for (x1, c1) in table.rows[a]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
        {
            for (x2, c2) in table.rows[b]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                let left = 9 * (x1 / 9) + x2 / 9;
                let right = 9 * (x1 % 9) + x2 % 9;
                let t = &mut out[left * 81 + right];
                *t = t.clone() + c.clone() * c1.clone() * c2.clone();
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomCheck {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// `(q⊗q)δ(r) = 0` for every basis relation `r`, i.e. `δ(R) ⊆ R⊗M + M⊗R`.
pub fn check_coproduct_compatibility(
    rel: &QuadraticRelationSet,
    table: &CoproductTable,
) -> Result<AxiomCheck> {
    if rel.basis() != table.basis {
        return Err(Error::Basis {
            expected: rel.basis().to_string(),
            found: table.basis.to_string(),
        });
    }
    let qm = quotient_projection(rel.subspace());
    // column c of q as a sparse list over free coordinates
    let cols: Vec<Vec<(usize, Q)>> = (0..81)
        .map(|c| {
            (0..qm.rank())
                .filter(|&f| !qm.matrix()[(f, c)].is_zero())
                .map(|f| (f, qm.matrix()[(f, c)].clone()))
                .collect()
        })
        .collect();
    let mut failures = Vec::new();
    for r in rel.vectors() {
        let d = coproduct_deg2(r, table);
        let mut image: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (idx, c) in d.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (f, x) in &cols[idx / 81] {
                for (g, y) in &cols[idx % 81] {
                    let e = image.entry((*f, *g)).or_insert_with(Q::zero);
                    *e = e.clone() + c.clone() * x.clone() * y.clone();
                }
            }
        }
        if image.values().any(|v| !v.is_zero()) {
            failures.push(vector_text(r));
        }
    }
    Ok(AxiomCheck {
        ok: failures.is_empty(),
        failures,
    })
}

pub fn check_counit(rel: &QuadraticRelationSet, eps: &CounitVector) -> Result<AxiomCheck> {
    if rel.basis() != eps.basis {
        return Err(Error::Basis {
            expected: rel.basis().to_string(),
            found: eps.basis.to_string(),
        });
    }
    let failures: Vec<String> = rel
        .vectors()
        .iter()
        .filter(|v| !counit_on_deg2(v, &eps.values).is_zero())
        .map(|v| vector_text(v))
        .collect();
    Ok(AxiomCheck {
        ok: failures.is_empty(),
        failures,
    })
}

/// `(δ⊗id)δ(g) = (id⊗δ)δ(g)` for every generator.
pub fn check_coassociativity(table: &CoproductTable) -> AxiomCheck {
    let mut failures = Vec::new();
    for g in Generator::all() {
        let mut left = vec![Q::zero(); 729];
        let mut right = vec![Q::zero(); 729];
        for (xy, c) in table.of(g).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (x, y) = (xy / 9, xy % 9);
            for (uv, d) in table.rows[x]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                let i = 81 * (uv / 9) + 9 * (uv % 9) + y;
                left[i] = left[i].clone() + c.clone() * d.clone();
            }
            for (uv, d) in table.rows[y]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                let i = 81 * x + uv;
                right[i] = right[i].clone() + c.clone() * d.clone();
            }
        }
        if left != right {
            failures.push(g.to_string());
        }
    }
    AxiomCheck {
        ok: failures.is_empty(),
        failures,
    }
}

/// `(ε⊗id)δ(g) = g = (id⊗ε)δ(g)` for every generator.
pub fn check_counit_laws(table: &CoproductTable, eps: &CounitVector) -> AxiomCheck {
    let mut failures = Vec::new();
    for g in Generator::all() {
        let mut left = vec![Q::zero(); 9];
        let mut right = vec![Q::zero(); 9];
        for (xy, c) in table.of(g).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (x, y) = (xy / 9, xy % 9);
            left[y] = left[y].clone() + c.clone() * eps.values[x].clone();
            right[x] = right[x].clone() + c.clone() * eps.values[y].clone();
        }
        let unit: Vec<Q> = (0..9)
            .map(|i| if i == g.index() { q(1) } else { q(0) })
            .collect();
        if left != unit || right != unit {
            failures.push(g.to_string());
        }
    }
    AxiomCheck {
        ok: failures.is_empty(),
        failures,
    }
}

/// Line-by-line comparison of a recomputed table with a transcription.
pub fn diff_coproducts(table: &CoproductTable, fx: &CoproductsFixture) -> Result<Vec<DiffItem>> {
    if fx.basis != table.basis {
        return Err(Error::Basis {
            expected: table.basis.to_string(),
            found: fx.basis.to_string(),
        });
    }
    let mut out = Vec::new();
    for e in &fx.entries {
        let g: Generator = e.generator.parse()?;
        match parse_tensor_sum(&e.terms) {
            Err(err) => out.push(DiffItem {
                item: e.generator.clone(),
                detail: format!(
                    "unparseable transcription ({err}); recomputed {}",
                    table.text(g)
                ),
            }),
            Ok(terms) => {
                let mut v = vec![Q::zero(); 81];
                for (c, a, b) in terms {
                    let i = 9 * a.index() + b.index();
                    v[i] = v[i].clone() + c;
                }
                if v != table.of(g) {
                    out.push(DiffItem {
                        item: e.generator.clone(),
                        detail: format!(
                            "transcribed {} but recomputed {}",
                            tensor_text(&v),
                            table.text(g)
                        ),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn diff_counit(eps: &CounitVector, fx: &CounitFixture) -> Result<Vec<DiffItem>> {
    let Some(vals) = fx.values.get(eps.basis.as_str()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (name, v) in vals {
        let g: Generator = name.parse()?;
        let want = parse_q(v)?;
        if &want != eps.of(g) {
            out.push(DiffItem {
                item: name.clone(),
                detail: format!(
                    "transcribed {} but recomputed {}",
                    fmt_q_short(&want),
                    fmt_q_short(eps.of(g))
                ),
            });
        }
    }
    Ok(out)
}

/// Compares `old = Σ c·new` statements with the rows of a change matrix.
pub fn diff_basis_change(
    g: &GeneratorBasisChange,
    fx: &BasisChangeFixture,
) -> Result<Vec<DiffItem>> {
    let mut out = Vec::new();
    for s in &fx.statements {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::parse(s, "expected '='"))?;
        let lhs = parse_poly(lhs)?;
        let old = match lhs.iter().next() {
            Some((w, c)) if lhs.len() == 1 && w.len() == 1 && c.is_one() => w[0],
            _ => return Err(Error::parse(s, "left side must be one generator")),
        };
        let mut row = vec![Q::zero(); 9];
        for (w, c) in parse_poly(rhs)? {
            match w[..] {
                [x] => row[x.index()] = c,
                _ => return Err(Error::parse(s, "right side must be linear")),
            }
        }
        if row != g.old_in_new(old) {
            out.push(DiffItem {
                item: old.to_string(),
                detail: format!("transcribed `{s}` differs from the change in use"),
            });
        }
    }
    Ok(out)
}
