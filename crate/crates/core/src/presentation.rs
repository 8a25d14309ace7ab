//! Free-quandle elements and quandle presentations.
//!
//! An element of the free (extended) quandle is a pair `[a, w]` with `a` a
//! primary generator and `w` a word in the free group on all generators,
//! modulo `[a, w] ~ [a, a w]`. Multiplication is
//! `[a, w] * [b, z] = [a, w z⁻¹ b z]` and the group acts on the right by
//! `[a, w]^g = [a, w g]`.
//!
//! Presentations keep relations in their raw diagram form: a base generator
//! followed by a sequence of right translations (`* x`, `/ x`) and operator
//! actions (`^ a1`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{ArcId, Diagram, DiagramError, DiagramKind, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("expected a presentation with the single operator generator a1")]
    NotSolidTorusPresentation,
    #[error("cannot parse group word {input:?}: {reason}")]
    ParseWord { input: String, reason: String },
}

/// A generator name. Ordered naturally: alphabetic prefix first, then the
/// numeric suffix by value, so `x2 < x10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn indexed(prefix: &str, i: usize) -> Self {
        Symbol::new(&format!("{prefix}{i}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, &str) {
        let s = self.as_str();
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        s.split_at(cut)
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        let (p1, d1) = self.split();
        let (p2, d2) = other.split();
        let num = |d: &str| {
            let t = d.trim_start_matches('0');
            (t.len(), t.to_string())
        };
        p1.cmp(p2)
            .then_with(|| num(d1).cmp(&num(d2)))
            .then_with(|| self.as_str().cmp(other.as_str()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Name of the arc `i` of a diagram under the given prefix.
pub fn arc_symbol(prefix: &str, arc: ArcId) -> Symbol {
    Symbol::indexed(prefix, arc)
}

/// The operator generator of solid-torus and lens presentations.
pub fn axis_symbol() -> Symbol {
    Symbol::new("a1")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Symbol,
    /// `+1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Symbol, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.gen.clone(), -self.exp)
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn gen(g: Symbol) -> Self {
        GroupWord {
            letters: vec![Letter::new(g, 1)],
        }
    }

    /// `g^k` for any integer `k`.
    pub fn gen_pow(g: Symbol, k: i64) -> Self {
        let e = if k < 0 { -1 } else { 1 };
        GroupWord {
            letters: (0..k.unsigned_abs())
                .map(|_| Letter::new(g.clone(), e))
                .collect(),
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Append a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(last) if last.gen == l.gen && last.exp == -l.exp => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `g⁻¹ self g`.
    pub fn conjugate(&self, g: &GroupWord) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// The commutator `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Delete every occurrence of the given generators and reduce.
    pub fn kill(&self, gens: &BTreeSet<Symbol>) -> Self {
        GroupWord::from_letters(
            self.letters
                .iter()
                .filter(|l| !gens.contains(&l.gen))
                .cloned(),
        )
    }

    /// Replace each generator by its image under `f`.
    pub fn rename(&self, f: impl Fn(&Symbol) -> Symbol) -> Self {
        GroupWord::from_letters(self.letters.iter().map(|l| Letter::new(f(&l.gen), l.exp)))
    }

    pub fn exponent_sum(&self, g: &Symbol) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.gen == g)
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.letters.iter().map(|l| l.gen.clone()).collect()
    }

    /// Maximal runs of one generator as `(generator, exponent)` pairs.
    pub fn syllables(&self) -> Vec<(Symbol, i64)> {
        let mut out: Vec<(Symbol, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, k)) if *g == l.gen => *k += l.exp as i64,
                _ => out.push((l.gen.clone(), l.exp as i64)),
            }
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, (g, k)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if k == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl FromStr for GroupWord {
    type Err = PresentationError;

    /// Whitespace-separated syllables `g` or `g^k`; `1` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PresentationError::ParseWord {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut w = GroupWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, k) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (tok, 1),
            };
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(err("bad generator name"));
            }
            w = w.mul(&GroupWord::gen_pow(Symbol::new(name), k));
        }
        Ok(w)
    }
}

/// An element `[base, word]` of a free quandle, stored in reduced form: the
/// word is freely reduced and does not begin with a power of `base`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    base: Symbol,
    word: GroupWord,
}

impl FqElement {
    pub fn new(base: Symbol, word: GroupWord) -> Self {
        let skip = word.letters.iter().take_while(|l| l.gen == base).count();
        let word = GroupWord {
            letters: word.letters[skip..].to_vec(),
        };
        FqElement { base, word }
    }

    pub fn generator(g: Symbol) -> Self {
        FqElement {
            base: g,
            word: GroupWord::identity(),
        }
    }

    pub fn base(&self) -> &Symbol {
        &self.base
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    /// The augmentation `ε([a, w]) = w⁻¹ a w`.
    pub fn augmentation(&self) -> GroupWord {
        GroupWord::gen(self.base.clone()).conjugate(&self.word)
    }

    /// `self * y`, or `self ∗̄ y` when `inverse` is set.
    pub fn mult(&self, y: &FqElement, inverse: bool) -> FqElement {
        let e = y.augmentation();
        self.act(&if inverse { e.inverse() } else { e })
    }

    /// The right action `[a, w]^g = [a, w g]`.
    pub fn act(&self, g: &GroupWord) -> FqElement {
        FqElement::new(self.base.clone(), self.word.mul(g))
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "[{}, {}]", self.base, self.word)
        }
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {}]", self.base, self.word)
    }
}

/// A generator followed by a sequence of right actions, kept unreduced so
/// that relations print as they were read off a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTerm {
    pub base: Symbol,
    pub actions: Vec<Letter>,
}

impl QTerm {
    pub fn gen(base: Symbol) -> Self {
        QTerm {
            base,
            actions: Vec::new(),
        }
    }

    pub fn acted(base: Symbol, by: Symbol, exp: i8) -> Self {
        QTerm {
            base,
            actions: vec![Letter::new(by, exp)],
        }
    }

    /// The reduced free-quandle element this term denotes.
    pub fn element(&self) -> FqElement {
        FqElement::new(
            self.base.clone(),
            GroupWord::from_letters(self.actions.iter().cloned()),
        )
    }

    pub fn is_generator(&self) -> bool {
        self.actions.is_empty()
    }

    fn render(&self, operators: &BTreeSet<Symbol>) -> String {
        let mut s = self.base.to_string();
        for l in &self.actions {
            if operators.contains(&l.gen) {
                if l.exp == 1 {
                    s.push_str(&format!(" ^ {}", l.gen));
                } else {
                    s.push_str(&format!(" ^ {}^-1", l.gen));
                }
            } else if l.exp == 1 {
                s.push_str(&format!(" * {}", l.gen));
            } else {
                s.push_str(&format!(" / {}", l.gen));
            }
        }
        s
    }
}

/// A primary relation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRelation {
    pub lhs: QTerm,
    pub rhs: QTerm,
}

impl QRelation {
    pub fn new(lhs: QTerm, rhs: QTerm) -> Self {
        QRelation { lhs, rhs }
    }

    /// Whether both sides reduce to the same free-quandle element.
    pub fn is_trivial(&self) -> bool {
        self.lhs.element() == self.rhs.element()
    }
}

/// An operator (group) relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpRelation {
    /// `[a, b] = 1`.
    Commutator(GroupWord, GroupWord),
    /// `lhs = rhs`.
    Equal(GroupWord, GroupWord),
    /// `w = 1`.
    Relator(GroupWord),
}

impl OpRelation {
    /// The relation as a single reduced relator word.
    pub fn relator(&self) -> GroupWord {
        match self {
            OpRelation::Commutator(a, b) => GroupWord::commutator(a, b),
            OpRelation::Equal(l, r) => l.mul(&r.inverse()),
            OpRelation::Relator(w) => w.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.relator().is_identity()
    }
}

impl fmt::Display for OpRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpRelation::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            OpRelation::Equal(l, r) => write!(f, "{l} = {r}"),
            OpRelation::Relator(w) => write!(f, "{w}"),
        }
    }
}

/// A general quandle presentation `[S_P, S_O : R_P, R_O]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPresentation {
    pub primary: Vec<Symbol>,
    pub operators: Vec<Symbol>,
    pub relations: Vec<QRelation>,
    pub operator_relations: Vec<OpRelation>,
}

impl QPresentation {
    pub fn is_primary(&self) -> bool {
        self.operators.is_empty() && self.operator_relations.is_empty()
    }

    fn operator_set(&self) -> BTreeSet<Symbol> {
        self.operators.iter().cloned().collect()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        let ops = self.operator_set();
        self.relations
            .iter()
            .map(|r| format!("{} = {}", r.lhs.render(&ops), r.rhs.render(&ops)))
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let names = |v: &[Symbol]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "primary": names(&self.primary),
            "operators": names(&self.operators),
            "relations": self.relation_strings(),
            "operator_relations": self
                .operator_relations
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Symbol]| v.iter().map(|s| format!(" {s}")).collect::<String>();
        writeln!(f, "primary:{}", join(&self.primary))?;
        writeln!(f, "operators:{}", join(&self.operators))?;
        for r in self.relation_strings() {
            writeln!(f, "rel: {r}")?;
        }
        for r in &self.operator_relations {
            writeln!(f, "oprel: {r}")?;
        }
        Ok(())
    }
}

/// A finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<Symbol>,
    pub relations: Vec<OpRelation>,
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relations {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

fn crossing_relations(d: &Diagram, prefix: &str) -> Vec<QRelation> {
    let x = |a| arc_symbol(prefix, a);
    d.crossings()
        .iter()
        .map(|c| {
            let (src, dst) = match c.sign {
                Sign::Positive => (c.under_in, c.under_out),
                Sign::Negative => (c.under_out, c.under_in),
            };
            QRelation::new(QTerm::acted(x(src), x(c.over), 1), QTerm::gen(x(dst)))
        })
        .collect()
}

fn arc_symbols(d: &Diagram, prefix: &str) -> Vec<Symbol> {
    d.arcs().map(|a| arc_symbol(prefix, a)).collect()
}

/// The primary presentation of a classical diagram: one generator per arc,
/// one relation per crossing.
pub fn present_knot(d: &Diagram) -> Result<QPresentation, PresentationError> {
    d.require_kind(DiagramKind::Classical)?;
    Ok(QPresentation {
        primary: arc_symbols(d, "x"),
        operators: Vec::new(),
        relations: crossing_relations(d, "x"),
        operator_relations: Vec::new(),
    })
}

/// The meridian word of the axis: the product of `ε(x_i)^{δ_i}` over the
/// axis passes in axis order.
pub fn axis_meridian(d: &Diagram) -> GroupWord {
    let mut w = GroupWord::identity();
    for p in d.axis() {
        let e = FqElement::generator(arc_symbol("x", p.meridian_arc())).augmentation();
        w = w.mul(&e.pow(p.sign.value()));
    }
    w
}

fn solid_torus_parts(d: &Diagram) -> QPresentation {
    let a = axis_symbol();
    let mut relations = crossing_relations(d, "x");
    for p in d.axis() {
        let (src, dst) = p.action();
        relations.push(QRelation::new(
            QTerm::acted(arc_symbol("x", src), a.clone(), 1),
            QTerm::gen(arc_symbol("x", dst)),
        ));
    }
    QPresentation {
        primary: arc_symbols(d, "x"),
        operators: vec![a.clone()],
        relations,
        operator_relations: vec![OpRelation::Commutator(GroupWord::gen(a), axis_meridian(d))],
    }
}

/// The general presentation of a link in the solid torus, with the single
/// operator generator `a1`.
pub fn present_solid_torus(d: &Diagram) -> Result<QPresentation, PresentationError> {
    d.require_kind(DiagramKind::SolidTorus)?;
    Ok(solid_torus_parts(d))
}

/// The solid-torus presentation plus the surgery relation `a1^p = μ^q`.
pub fn present_lens(d: &Diagram) -> Result<QPresentation, PresentationError> {
    d.require_kind(DiagramKind::Lens)?;
    let s = d.surgery().expect("lens diagrams carry surgery data");
    let mut p = solid_torus_parts(d);
    p.operator_relations.push(OpRelation::Equal(
        GroupWord::gen_pow(axis_symbol(), s.p),
        axis_meridian(d).pow(s.q),
    ));
    Ok(p)
}

/// Dispatch on the diagram kind.
pub fn present(d: &Diagram) -> Result<QPresentation, PresentationError> {
    match d.kind() {
        DiagramKind::Classical => present_knot(d),
        DiagramKind::SolidTorus => present_solid_torus(d),
        DiagramKind::Lens => present_lens(d),
    }
}

/// Send `a1` to the identity: every relation `x ^ a1 = y` becomes `x = y`
/// and the operator relations disappear. The result is a primary
/// presentation in raw form; see [`merge_generators`] for the identification
/// of generators.
pub fn close_in_sphere(p: &QPresentation) -> Result<QPresentation, PresentationError> {
    let a = axis_symbol();
    if p.operators != [a.clone()]
        || p.operator_relations
            .iter()
            .any(|r| !matches!(r, OpRelation::Commutator(..)))
    {
        return Err(PresentationError::NotSolidTorusPresentation);
    }
    let relations = p
        .relations
        .iter()
        .map(|r| {
            let strip = |t: &QTerm| QTerm {
                base: t.base.clone(),
                actions: t.actions.iter().filter(|l| l.gen != a).cloned().collect(),
            };
            QRelation::new(strip(&r.lhs), strip(&r.rhs))
        })
        .collect();
    Ok(QPresentation {
        primary: p.primary.clone(),
        operators: Vec::new(),
        relations,
        operator_relations: Vec::new(),
    })
}

/// Identify generators related by equalities `x = y` (union-find, smallest
/// generator as representative), drop those equalities and any relation
/// that became trivial, and rename the remaining ones.
pub fn merge_generators(p: &QPresentation) -> QPresentation {
    let mut rep: BTreeMap<Symbol, Symbol> =
        p.primary.iter().map(|s| (s.clone(), s.clone())).collect();
    fn find(rep: &mut BTreeMap<Symbol, Symbol>, s: &Symbol) -> Symbol {
        let mut r = s.clone();
        while let Some(next) = rep.get(&r).filter(|n| **n != r) {
            r = next.clone();
        }
        rep.insert(s.clone(), r.clone());
        r
    }
    for r in &p.relations {
        if r.lhs.is_generator() && r.rhs.is_generator() {
            let a = find(&mut rep, &r.lhs.base);
            let b = find(&mut rep, &r.rhs.base);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            rep.insert(hi, lo);
        }
    }
    let mut ren = |s: &Symbol| {
        if rep.contains_key(s) {
            find(&mut rep, s)
        } else {
            s.clone()
        }
    };
    let primary: Vec<Symbol> = p
        .primary
        .iter()
        .filter(|s| ren(s) == **s)
        .cloned()
        .collect();
    let relations = p
        .relations
        .iter()
        .filter(|r| !(r.lhs.is_generator() && r.rhs.is_generator()))
        .map(|r| {
            let mut term = |t: &QTerm| QTerm {
                base: ren(&t.base),
                actions: t
                    .actions
                    .iter()
                    .map(|l| Letter::new(ren(&l.gen), l.exp))
                    .collect(),
            };
            QRelation::new(term(&r.lhs), term(&r.rhs))
        })
        .collect();
    QPresentation {
        primary,
        operators: p.operators.clone(),
        relations,
        operator_relations: p.operator_relations.clone(),
    }
}

/// The Wirtinger presentation of the knot group of a classical diagram,
/// with generators `{prefix}{arc}`. A positive crossing gives
/// `over⁻¹ under_in over = under_out`, a negative one
/// `over under_in over⁻¹ = under_out`.
pub fn wirtinger_group(d: &Diagram, prefix: &str) -> Result<GroupPresentation, PresentationError> {
    d.require_kind(DiagramKind::Classical)?;
    let y = |a| GroupWord::gen(arc_symbol(prefix, a));
    let relations = d
        .crossings()
        .iter()
        .map(|c| {
            let over = match c.sign {
                Sign::Positive => y(c.over),
                Sign::Negative => y(c.over).inverse(),
            };
            OpRelation::Equal(y(c.under_in).conjugate(&over), y(c.under_out))
        })
        .collect();
    Ok(GroupPresentation {
        generators: arc_symbols(d, prefix),
        relations,
    })
}
