//! Alexander modules of primary presentations.
//!
//! A relation `R_{x_1}^{k_1} … R_{x_n}^{k_n}(y) = z` linearizes by applying
//! the affine rule `v ↦ t^k v + (1 − t^k) e_x` for each translation in turn,
//! starting from `e_y`; the matrix row is the result minus `e_z`. The
//! basepoint generator (the first one in symbol order) is set to zero.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::laurent::LaurentPoly;
use crate::lmatrix::{LMatrix, MatrixError};
use crate::presentation::{
    present_knot, GroupWord, Letter, PresentationError, QPresentation, QRelation, Symbol,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("relation involves the non-primary generator {0}")]
    NotPrimary(Symbol),
    #[error("Δ1 is a unit: the knot is not colorable by any nontrivial affine quandle")]
    NotColorable,
    #[error("Alexander polynomials are indexed from 1")]
    BadIndex,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `R_{x_1}^{k_1} … R_{x_n}^{k_n}(source) = target`, translations listed in
/// the order they are applied to `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedRelation {
    pub source: Symbol,
    pub translations: Vec<(Symbol, i64)>,
    pub target: Symbol,
}

/// Move all translations to the left-hand side: `a·u = b·v` becomes
/// `a·(u v⁻¹) = b`, with runs of the same generator merged into one power.
pub fn normalize_relation(r: &QRelation) -> TranslatedRelation {
    let letters = r
        .lhs
        .actions
        .iter()
        .cloned()
        .chain(r.rhs.actions.iter().rev().map(Letter::inverse));
    TranslatedRelation {
        source: r.lhs.base.clone(),
        translations: GroupWord::from_letters(letters).syllables(),
        target: r.rhs.base.clone(),
    }
}

/// A linearized relation: coefficient of each generator's `e_x`.
pub type LinearizedRelation = BTreeMap<Symbol, LaurentPoly>;

fn add_term(v: &mut LinearizedRelation, g: &Symbol, c: LaurentPoly) {
    let entry = v.entry(g.clone()).or_insert_with(LaurentPoly::zero);
    *entry += &c;
    if entry.is_zero() {
        v.remove(g);
    }
}

/// The full linearization of a relation, before the basepoint is dropped.
pub fn linearize_relation(r: &TranslatedRelation) -> LinearizedRelation {
    let mut v = LinearizedRelation::new();
    add_term(&mut v, &r.source, LaurentPoly::one());
    for (g, k) in &r.translations {
        let tk = LaurentPoly::monomial(1, *k);
        for c in v.values_mut() {
            *c = &*c * &tk;
        }
        add_term(&mut v, g, LaurentPoly::one() - tk);
    }
    add_term(&mut v, &r.target, -LaurentPoly::one());
    v
}

/// A presentation matrix together with its column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    pub matrix: LMatrix,
    pub basepoint: Option<Symbol>,
    pub columns: Vec<Symbol>,
}

pub fn linearize_labeled(p: &QPresentation) -> Result<Linearization, AlexanderError> {
    if let Some(op) = p.operators.first() {
        return Err(AlexanderError::NotPrimary(op.clone()));
    }
    let basepoint = p.primary.iter().min().cloned();
    let columns: Vec<Symbol> = p
        .primary
        .iter()
        .filter(|s| Some(*s) != basepoint.as_ref())
        .cloned()
        .collect();
    let index: BTreeMap<&Symbol, usize> = columns.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rows = Vec::with_capacity(p.relations.len());
    for r in &p.relations {
        let row = linearize_relation(&normalize_relation(r));
        let mut dense = vec![LaurentPoly::zero(); columns.len()];
        for (g, c) in row {
            if Some(&g) == basepoint.as_ref() {
                continue;
            }
            match index.get(&g) {
                Some(&j) => dense[j] = c,
                None => return Err(AlexanderError::NotPrimary(g)),
            }
        }
        rows.push(dense);
    }
    Ok(Linearization {
        matrix: LMatrix::from_rows(columns.len(), rows),
        basepoint,
        columns,
    })
}

/// The Alexander presentation matrix of a primary presentation: one row per
/// relation, one column per non-basepoint generator.
pub fn linearize(p: &QPresentation) -> Result<LMatrix, AlexanderError> {
    Ok(linearize_labeled(p)?.matrix)
}

/// `linearize(present_knot(d))`.
pub fn knot_matrix(d: &Diagram) -> Result<LMatrix, AlexanderError> {
    linearize(&present_knot(d)?)
}

/// The normalized n-th Alexander polynomial of the module presented by `m`.
pub fn delta(m: &LMatrix, n: usize) -> Result<LaurentPoly, AlexanderError> {
    if n == 0 {
        return Err(AlexanderError::BadIndex);
    }
    Ok(m.alexander_poly(n).normalize())
}

/// One cyclic summand `Λ/(f)` of the formal module decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFactor {
    /// The quotient `Δ_i / Δ_{i+1}` when `exact`, otherwise the numerator
    /// `Δ_i`.
    pub poly: LaurentPoly,
    pub exact: bool,
}

/// With `n` the smallest index such that `Δ_n` is a unit, the generators
/// `Δ_{n−1}, Δ_{n−2}/Δ_{n−1}, …, Δ_1/Δ_2` of the formal decomposition
/// `Λ/(Δ_{n−1}) ⊕ … ⊕ Λ/(Δ_1/Δ_2)`. A quotient that is not exact in Λ
/// (including `0/0`) is reported with `exact = false`.
pub fn module_factors(m: &LMatrix) -> Vec<ModuleFactor> {
    let ds = m.alexander_polys();
    let n = ds
        .iter()
        .position(LaurentPoly::is_unit)
        .expect("the last Alexander polynomial is 1");
    (0..n)
        .rev()
        .map(|i| {
            let num = &ds[i];
            let den = &ds[i + 1];
            match num.div_exact(den) {
                Some(q) => ModuleFactor {
                    poly: q.normalize(),
                    exact: true,
                },
                None => ModuleFactor {
                    poly: num.normalize(),
                    exact: false,
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colorability {
    Colorable,
    NotColorable,
}

/// Not colorable by any nontrivial affine quandle iff `Δ_1` is a unit.
/// `Δ_1 = 0` counts as colorable.
pub fn affine_colorability(m: &LMatrix) -> Colorability {
    if m.alexander_poly(1).is_unit() {
        Colorability::NotColorable
    } else {
        Colorability::Colorable
    }
}

/// The affine quandle `Aff(Λ/(Δ_1), t)` that colors the knot, and the
/// multiplier `Δ_{j+1}` of the embedding `x ↦ Δ_{j+1}·x + (Δ_1)`, where `j`
/// is the largest index with `Δ_j / Δ_{j+1}` not a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringTarget {
    pub delta1: LaurentPoly,
    pub j: usize,
    pub multiplier: LaurentPoly,
}

pub fn coloring_target(m: &LMatrix) -> Result<ColoringTarget, AlexanderError> {
    let ds: Vec<LaurentPoly> = m
        .alexander_polys()
        .iter()
        .map(LaurentPoly::normalize)
        .collect();
    if ds[0].is_unit() {
        return Err(AlexanderError::NotColorable);
    }
    let j = (0..ds.len() - 1)
        .rev()
        .find(|&i| !ds[i].is_associate(&ds[i + 1]))
        .expect("Δ1 is not a unit while the last entry is");
    Ok(ColoringTarget {
        delta1: ds[0].clone(),
        j: j + 1,
        multiplier: ds[j + 1].clone(),
    })
}

impl std::fmt::Display for ColoringTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Aff(Λ/({}), t); j = {}; multiplier Δ{} = {}",
            self.delta1,
            self.j,
            self.j + 1,
            self.multiplier
        )
    }
}
