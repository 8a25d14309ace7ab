//! Combinatorial diagrams: classical knot/link diagrams, diagrams in the
//! solid torus (with passes under the axis curve) and lens-space surgery
//! diagrams.
//!
//! Arcs are numbered `1..=arcs`. Each arc begins at the undercrossing where it
//! is `under_out` and ends where it is `under_in`; the successor map
//! `under_in → under_out` is a permutation whose cycles are the components.
//! An arc that never passes under anything is a closed component on its own
//! (e.g. the 0-crossing unknot) and is its own successor.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram JSON: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("invalid surgery data: {0}")]
    Surgery(String),
    #[error("expected a {expected} diagram, found {found}")]
    WrongKind {
        expected: String,
        found: DiagramKind,
    },
    #[error("expected a knot, found a link with {0} components")]
    NotAKnot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramKind {
    Classical,
    SolidTorus,
    Lens,
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramKind::Classical => "classical",
            DiagramKind::SolidTorus => "solid_torus",
            DiagramKind::Lens => "lens",
        })
    }
}

/// Crossing sign, `+1` or `-1` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// A crossing between link arcs. With sign +1 the quandle relation is
/// `under_in * over = under_out`, with sign -1 it is
/// `under_out * over = under_in`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub under_in: ArcId,
    pub over: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

/// A strand of the link passing under the axis (surgery) curve. Passes are
/// kept in the order they occur along the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisPass {
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

impl AxisPass {
    /// `(source, target)` of the operator relation `source ^ a1 = target`:
    /// `under_in ^ a1 = under_out` for sign +1, and
    /// `under_out ^ a1 = under_in` for sign -1.
    pub fn action(&self) -> (ArcId, ArcId) {
        match self.sign {
            Sign::Positive => (self.under_in, self.under_out),
            Sign::Negative => (self.under_out, self.under_in),
        }
    }

    /// The arc whose augmentation enters the meridian word of the axis.
    pub fn meridian_arc(&self) -> ArcId {
        self.action().1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Surgery {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    kind: DiagramKind,
    arcs: usize,
    crossings: Vec<Crossing>,
    axis: Vec<AxisPass>,
    surgery: Option<Surgery>,
    successor: Vec<ArcId>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    kind: DiagramKind,
    arcs: usize,
    #[serde(default)]
    crossings: Vec<Crossing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    axis: Vec<AxisPass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surgery: Option<Surgery>,
}

impl Diagram {
    pub fn new(
        kind: DiagramKind,
        arcs: usize,
        crossings: Vec<Crossing>,
        axis: Vec<AxisPass>,
        surgery: Option<Surgery>,
    ) -> Result<Self, DiagramError> {
        let successor = validate(kind, arcs, &crossings, &axis, surgery)?;
        Ok(Self {
            kind,
            arcs,
            crossings,
            axis,
            surgery,
            successor,
        })
    }

    pub fn classical(arcs: usize, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        Self::new(DiagramKind::Classical, arcs, crossings, Vec::new(), None)
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        Self::new(doc.kind, doc.arcs, doc.crossings, doc.axis, doc.surgery)
    }

    pub fn to_json(&self) -> String {
        let doc = DiagramDoc {
            kind: self.kind,
            arcs: self.arcs,
            crossings: self.crossings.clone(),
            axis: self.axis.clone(),
            surgery: self.surgery,
        };
        serde_json::to_string_pretty(&doc).expect("diagram serializes")
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> {
        1..=self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn axis(&self) -> &[AxisPass] {
        &self.axis
    }

    pub fn surgery(&self) -> Option<Surgery> {
        self.surgery
    }

    /// The arc that follows `arc` along the orientation.
    pub fn successor(&self, arc: ArcId) -> ArcId {
        self.successor[arc - 1]
    }

    /// Number of cycles of the successor permutation.
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Components as arc sequences in traversal order, each starting at its
    /// smallest arc; components sorted by that arc.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let mut seen = vec![false; self.arcs + 1];
        let mut out = Vec::new();
        for start in self.arcs() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                cycle.push(a);
                a = self.successor(a);
            }
            out.push(cycle);
        }
        out
    }

    /// All arcs, component by component, in traversal order.
    pub fn trace_order(&self) -> Vec<ArcId> {
        self.components().into_iter().flatten().collect()
    }

    /// Sum of the axis-pass signs. Signed; see the README for the
    /// orientation convention.
    pub fn winding_number(&self) -> Result<i64, DiagramError> {
        if self.kind == DiagramKind::Classical {
            return Err(DiagramError::WrongKind {
                expected: "solid_torus or lens".into(),
                found: self.kind,
            });
        }
        Ok(self.axis.iter().map(|p| p.sign.value()).sum())
    }

    /// Sum of the crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn require_kind(&self, kind: DiagramKind) -> Result<(), DiagramError> {
        if self.kind != kind {
            return Err(DiagramError::WrongKind {
                expected: kind.to_string(),
                found: self.kind,
            });
        }
        Ok(())
    }

    pub fn require_knot(&self) -> Result<(), DiagramError> {
        match self.component_count() {
            1 => Ok(()),
            n => Err(DiagramError::NotAKnot(n)),
        }
    }

    /// The classical diagram obtained by deleting the axis: arcs joined by an
    /// axis pass are merged. Merged arcs are renumbered densely in order of
    /// their smallest original id. Returns the diagram and the map from old
    /// arc ids (index `a - 1`) to new ones.
    pub fn forget_axis(&self) -> (Diagram, Vec<ArcId>) {
        let mut parent: Vec<usize> = (0..=self.arcs).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for pass in &self.axis {
            let a = find(&mut parent, pass.under_in);
            let b = find(&mut parent, pass.under_out);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let mut new_id = vec![0usize; self.arcs + 1];
        let mut next = 0;
        for a in self.arcs() {
            let r = find(&mut parent, a);
            if r == a {
                next += 1;
                new_id[a] = next;
            }
        }
        let map: Vec<ArcId> = self.arcs().map(|a| new_id[find(&mut parent, a)]).collect();
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: map[c.under_in - 1],
                over: map[c.over - 1],
                under_out: map[c.under_out - 1],
                sign: c.sign,
            })
            .collect();
        let d = Diagram::classical(next, crossings)
            .expect("merging axis passes preserves arc bookkeeping");
        (d, map)
    }

    /// The same diagram with its arcs renamed by `perm` (`perm[a - 1]` is the
    /// new id of arc `a`); crossings and axis passes keep their order.
    pub fn relabel(&self, perm: &[ArcId]) -> Result<Diagram, DiagramError> {
        if perm.len() != self.arcs {
            return Err(DiagramError::Validation(
                "relabeling has the wrong length".into(),
            ));
        }
        let m = |a: ArcId| perm[a - 1];
        Diagram::new(
            self.kind,
            self.arcs,
            self.crossings
                .iter()
                .map(|c| Crossing {
                    under_in: m(c.under_in),
                    over: m(c.over),
                    under_out: m(c.under_out),
                    sign: c.sign,
                })
                .collect(),
            self.axis
                .iter()
                .map(|p| AxisPass {
                    under_in: m(p.under_in),
                    under_out: m(p.under_out),
                    sign: p.sign,
                })
                .collect(),
            self.surgery,
        )
    }
}

fn validate(
    kind: DiagramKind,
    arcs: usize,
    crossings: &[Crossing],
    axis: &[AxisPass],
    surgery: Option<Surgery>,
) -> Result<Vec<ArcId>, DiagramError> {
    let invalid = |msg: String| Err(DiagramError::Validation(msg));
    if arcs == 0 {
        return invalid("a diagram needs at least one arc".into());
    }
    match kind {
        DiagramKind::Classical => {
            if !axis.is_empty() {
                return invalid("classical diagrams have no axis passes".into());
            }
            if surgery.is_some() {
                return Err(DiagramError::Surgery(
                    "surgery data is only allowed on lens diagrams".into(),
                ));
            }
        }
        DiagramKind::SolidTorus => {
            if surgery.is_some() {
                return Err(DiagramError::Surgery(
                    "surgery data is only allowed on lens diagrams".into(),
                ));
            }
        }
        DiagramKind::Lens => match surgery {
            None => return Err(DiagramError::Surgery("lens diagram without surgery".into())),
            Some(Surgery { p, q }) => {
                if p.gcd(&q) != 1 {
                    return Err(DiagramError::Surgery(format!(
                        "p = {p} and q = {q} are not coprime"
                    )));
                }
            }
        },
    }

    let in_range = |a: ArcId| (1..=arcs).contains(&a);
    let mut succ = vec![0usize; arcs];
    let mut outs = vec![0usize; arcs];
    let mut ends = vec![0usize; arcs];
    let strands = crossings
        .iter()
        .map(|c| (c.under_in, c.under_out))
        .chain(axis.iter().map(|p| (p.under_in, p.under_out)));
    for (i, o) in strands {
        if !in_range(i) || !in_range(o) {
            return invalid(format!(
                "arc id out of range 1..={arcs} in strand {i} -> {o}"
            ));
        }
        ends[i - 1] += 1;
        outs[o - 1] += 1;
        succ[i - 1] = o;
    }
    for c in crossings {
        if !in_range(c.over) {
            return invalid(format!("over arc {} out of range 1..={arcs}", c.over));
        }
    }
    for a in 1..=arcs {
        let (e, o) = (ends[a - 1], outs[a - 1]);
        match (e, o) {
            (1, 1) => {}
            (0, 0) => succ[a - 1] = a,
            _ => {
                return invalid(format!(
                    "arc {a} ends at {e} undercrossings and starts at {o}; expected one of each"
                ))
            }
        }
    }
    Ok(succ)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = r#"{"kind": "classical", "arcs": 3, "crossings": [
        {"under_in": 1, "over": 2, "under_out": 3, "sign": 1},
        {"under_in": 2, "over": 3, "under_out": 1, "sign": 1},
        {"under_in": 3, "over": 1, "under_out": 2, "sign": 1}]}"#;

    // Whitehead-type pattern with clasp crossings and two axis passes.
    const DOUBLE_PATTERN: &str = r#"{"kind": "solid_torus", "arcs": 4,
        "crossings": [
            {"under_in": 2, "over": 4, "under_out": 1, "sign": -1},
            {"under_in": 3, "over": 1, "under_out": 4, "sign": -1}],
        "axis": [
            {"under_in": 1, "under_out": 3, "sign": -1},
            {"under_in": 4, "under_out": 2, "sign": 1}]}"#;

    #[test]
    fn trefoil_has_one_component() {
        let d = Diagram::from_json(TREFOIL).unwrap();
        assert_eq!(d.kind(), DiagramKind::Classical);
        assert_eq!(d.component_count(), 1);
        // 1 -> 3 -> 2 -> 1
        assert_eq!(d.trace_order(), vec![1, 3, 2]);
        assert_eq!(d.crossings().len(), d.arc_count());
    }

    #[test]
    fn two_kinks_are_two_components() {
        let d = Diagram::from_json(
            r#"{"kind": "classical", "arcs": 2, "crossings": [
                {"under_in": 1, "over": 1, "under_out": 1, "sign": 1},
                {"under_in": 2, "over": 2, "under_out": 2, "sign": -1}]}"#,
        )
        .unwrap();
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn zero_crossing_unknot() {
        let d = Diagram::from_json(r#"{"kind": "classical", "arcs": 1, "crossings": []}"#).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.successor(1), 1);
    }

    #[test]
    fn pattern_components_and_winding() {
        let d = Diagram::from_json(DOUBLE_PATTERN).unwrap();
        assert_eq!(d.kind(), DiagramKind::SolidTorus);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.winding_number().unwrap(), 0);
        let actions: Vec<_> = d.axis().iter().map(|p| p.action()).collect();
        assert_eq!(actions, vec![(3, 1), (4, 2)]);
    }

    #[test]
    fn winding_number_cases() {
        let d = Diagram::new(
            DiagramKind::SolidTorus,
            2,
            vec![],
            vec![
                AxisPass {
                    under_in: 1,
                    under_out: 2,
                    sign: Sign::Positive,
                },
                AxisPass {
                    under_in: 2,
                    under_out: 1,
                    sign: Sign::Positive,
                },
            ],
            None,
        )
        .unwrap();
        assert_eq!(d.winding_number().unwrap(), 2);
        let empty = Diagram::new(DiagramKind::SolidTorus, 1, vec![], vec![], None).unwrap();
        assert_eq!(empty.winding_number().unwrap(), 0);
        let classical = Diagram::from_json(TREFOIL).unwrap();
        assert!(matches!(
            classical.winding_number(),
            Err(DiagramError::WrongKind { .. })
        ));
    }

    #[test]
    fn surgery_checks() {
        let bad = r#"{"kind": "lens", "arcs": 1, "crossings": [], "surgery": {"p": 2, "q": 4}}"#;
        assert!(matches!(
            Diagram::from_json(bad),
            Err(DiagramError::Surgery(_))
        ));
        let missing = r#"{"kind": "lens", "arcs": 1, "crossings": []}"#;
        assert!(matches!(
            Diagram::from_json(missing),
            Err(DiagramError::Surgery(_))
        ));
        let ok = r#"{"kind": "lens", "arcs": 1, "crossings": [], "surgery": {"p": 1, "q": 0}}"#;
        assert!(Diagram::from_json(ok).is_ok());
        let stray = r#"{"kind": "classical", "arcs": 1, "surgery": {"p": 1, "q": 0}}"#;
        assert!(matches!(
            Diagram::from_json(stray),
            Err(DiagramError::Surgery(_))
        ));
    }

    #[test]
    fn validation_errors() {
        let cases = [
            // unknown field
            r#"{"kind": "classical", "arcs": 1, "crossings": [], "extra": 1}"#,
            // bad sign
            r#"{"kind": "classical", "arcs": 1, "crossings": [
                {"under_in": 1, "over": 1, "under_out": 1, "sign": 2}]}"#,
            // malformed
            r#"{"kind": "classical", "arcs": "#,
        ];
        for c in cases {
            assert!(
                matches!(Diagram::from_json(c), Err(DiagramError::Parse(_))),
                "{c}"
            );
        }
        let invalid = [
            r#"{"kind": "classical", "arcs": 0, "crossings": []}"#,
            r#"{"kind": "classical", "arcs": 2, "crossings": [
                {"under_in": 1, "over": 1, "under_out": 2, "sign": 1}]}"#,
            r#"{"kind": "classical", "arcs": 1, "crossings": [
                {"under_in": 1, "over": 5, "under_out": 1, "sign": 1}]}"#,
            r#"{"kind": "classical", "arcs": 1, "crossings": [],
                "axis": [{"under_in": 1, "under_out": 1, "sign": 1}]}"#,
        ];
        for c in invalid {
            assert!(
                matches!(Diagram::from_json(c), Err(DiagramError::Validation(_))),
                "{c}"
            );
        }
    }

    #[test]
    fn json_roundtrip() {
        for text in [TREFOIL, DOUBLE_PATTERN] {
            let d = Diagram::from_json(text).unwrap();
            assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
        }
        let classical = Diagram::from_json(TREFOIL).unwrap().to_json();
        assert!(!classical.contains("axis"));
    }

    #[test]
    fn forget_axis_merges_arcs() {
        let d = Diagram::from_json(DOUBLE_PATTERN).unwrap();
        let (c, map) = d.forget_axis();
        assert_eq!(map, vec![1, 2, 1, 2]);
        assert_eq!(c.arc_count(), 2);
        assert_eq!(c.kind(), DiagramKind::Classical);
        assert_eq!(c.component_count(), 1);
    }

    #[test]
    fn relabel_preserves_components() {
        let d = Diagram::from_json(TREFOIL).unwrap();
        let r = d.relabel(&[3, 1, 2]).unwrap();
        assert_eq!(r.component_count(), 1);
        assert_eq!(r.crossings()[0].under_in, 3);
        assert!(d.relabel(&[1, 2]).is_err());
    }
}
