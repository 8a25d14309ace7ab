//! Satellite knots from a pattern in the solid torus and a classical
//! companion.
//!
//! The companion's arcs are named `y1, y2, …` and its Wirtinger relations
//! become operator relations. The pattern axis is glued to the companion by
//! identifying the axis meridian with a companion meridian `y_m` and the
//! operator `a1` with the companion longitude.

use thiserror::Error;

use crate::alexander::{knot_matrix, linearize, AlexanderError};
use crate::diagram::{ArcId, Diagram, DiagramError, DiagramKind, Sign};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LMatrix;
use crate::presentation::{
    arc_symbol, axis_meridian, axis_symbol, close_in_sphere, present_solid_torus, wirtinger_group,
    GroupWord, OpRelation, PresentationError, QPresentation,
};

/// Prefix of companion arc generators.
pub const COMPANION_PREFIX: &str = "y";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatelliteError {
    #[error("companion arc {arc} does not exist (companion has {arcs} arcs)")]
    BadArc { arc: ArcId, arcs: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatelliteSpec {
    pattern: Diagram,
    companion: Diagram,
    meridian_arc: ArcId,
    longitude_start: Option<ArcId>,
    preferred_framing: bool,
}

impl SatelliteSpec {
    /// The meridian defaults to companion arc 1 and the longitude is read
    /// starting from the meridian arc.
    pub fn new(pattern: Diagram, companion: Diagram) -> Result<Self, SatelliteError> {
        pattern.require_kind(DiagramKind::SolidTorus)?;
        companion.require_kind(DiagramKind::Classical)?;
        companion.require_knot()?;
        Ok(SatelliteSpec {
            pattern,
            companion,
            meridian_arc: 1,
            longitude_start: None,
            preferred_framing: false,
        })
    }

    fn check_arc(&self, arc: ArcId) -> Result<(), SatelliteError> {
        if arc == 0 || arc > self.companion.arc_count() {
            return Err(SatelliteError::BadArc {
                arc,
                arcs: self.companion.arc_count(),
            });
        }
        Ok(())
    }

    pub fn with_meridian_arc(mut self, arc: ArcId) -> Result<Self, SatelliteError> {
        self.check_arc(arc)?;
        self.meridian_arc = arc;
        Ok(self)
    }

    /// Read the companion longitude starting at `arc` instead of the
    /// meridian arc.
    pub fn with_longitude_start(mut self, arc: ArcId) -> Result<Self, SatelliteError> {
        self.check_arc(arc)?;
        self.longitude_start = Some(arc);
        Ok(self)
    }

    /// Correct the blackboard longitude by `μ^{-writhe}`.
    pub fn with_preferred_framing(mut self, on: bool) -> Self {
        self.preferred_framing = on;
        self
    }

    pub fn pattern(&self) -> &Diagram {
        &self.pattern
    }

    pub fn companion(&self) -> &Diagram {
        &self.companion
    }

    pub fn meridian_arc(&self) -> ArcId {
        self.meridian_arc
    }

    pub fn longitude_start(&self) -> ArcId {
        self.longitude_start.unwrap_or(self.meridian_arc)
    }

    pub fn winding_number(&self) -> i64 {
        self.pattern
            .winding_number()
            .expect("pattern kind checked on construction")
    }

    /// The companion longitude word used in the gluing, including the framing
    /// correction when enabled.
    pub fn longitude(&self) -> GroupWord {
        let lambda = companion_longitude(&self.companion, self.longitude_start())
            .expect("companion checked on construction");
        if self.preferred_framing {
            let mu = GroupWord::gen(arc_symbol(COMPANION_PREFIX, self.meridian_arc));
            lambda.mul(&mu.pow(-self.companion.writhe()))
        } else {
            lambda
        }
    }
}

/// The blackboard longitude of a knot diagram: walking once around the knot
/// from `start`, the product of `over^sign` over the undercrossings passed.
pub fn companion_longitude(d: &Diagram, start: ArcId) -> Result<GroupWord, SatelliteError> {
    d.require_kind(DiagramKind::Classical)?;
    d.require_knot()?;
    if start == 0 || start > d.arc_count() {
        return Err(SatelliteError::BadArc {
            arc: start,
            arcs: d.arc_count(),
        });
    }
    let mut ending_at = vec![None; d.arc_count() + 1];
    for c in d.crossings() {
        ending_at[c.under_in] = Some(c);
    }
    let mut word = GroupWord::identity();
    let mut arc = start;
    while let Some(c) = ending_at[arc] {
        let over = GroupWord::gen(arc_symbol(COMPANION_PREFIX, c.over));
        word = word.mul(&match c.sign {
            Sign::Positive => over,
            Sign::Negative => over.inverse(),
        });
        arc = c.under_out;
        if arc == start {
            break;
        }
    }
    Ok(word)
}

/// The general presentation of the satellite: the pattern's presentation,
/// with the companion generators added as operators and the relations
/// `y_m = μ_U` and `a1 = λ_V` gluing the two pieces.
pub fn satellite_presentation(s: &SatelliteSpec) -> Result<QPresentation, SatelliteError> {
    let mut p = present_solid_torus(&s.pattern)?;
    let group = wirtinger_group(&s.companion, COMPANION_PREFIX)?;
    p.operators.extend(group.generators);
    p.operator_relations.extend(group.relations);
    p.operator_relations.push(OpRelation::Equal(
        GroupWord::gen(arc_symbol(COMPANION_PREFIX, s.meridian_arc)),
        axis_meridian(&s.pattern),
    ));
    p.operator_relations.push(OpRelation::Equal(
        GroupWord::gen(axis_symbol()),
        s.longitude(),
    ));
    Ok(p)
}

/// `block_diag(V_P(t), V_C(t^w))`: the pattern closed in the sphere and the
/// companion with `t` replaced by `t^w`.
pub fn satellite_alexander_matrix(s: &SatelliteSpec) -> Result<LMatrix, SatelliteError> {
    let closed = close_in_sphere(&present_solid_torus(&s.pattern)?)?;
    let vp = linearize(&closed)?;
    let vc = knot_matrix(&s.companion)?.subst_power(s.winding_number());
    Ok(vp.block_diag(&vc))
}

/// Normalized Δ1 of the satellite.
pub fn satellite_delta(s: &SatelliteSpec) -> Result<LaurentPoly, SatelliteError> {
    Ok(satellite_alexander_matrix(s)?.alexander_poly(1).normalize())
}
