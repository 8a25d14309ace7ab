//! Quandle presentations and Alexander invariants of knots, satellites and
//! links in the solid torus and lens spaces.
//!
//! The pipeline runs from combinatorial diagrams ([`diagram`]) to quandle
//! presentations ([`presentation`], [`satellite`]), linearizes them into
//! presentation matrices over `Z[t, t⁻¹]` ([`laurent`], [`lmatrix`],
//! [`alexander`]) and decides colorings by finite quandles ([`coloring`],
//! [`finiteq`]).

pub mod alexander;
pub mod cli;
pub mod coloring;
pub mod diagram;
pub mod finiteq;
pub mod laurent;
pub mod lmatrix;
pub mod presentation;
pub mod satellite;
