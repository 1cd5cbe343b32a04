//! Exact monomer-dimer partition functions on planar graphs via Pfaffians.
//!
//! A monomer-dimer covering of a graph places dimers on a matching and
//! monomers on every uncovered vertex.  For planar graphs whose monomers are
//! confined to the outer boundary, the weighted sum over all coverings — the
//! boundary monomer-dimer partition function — equals the Pfaffian of a
//! single signed adjacency-style matrix built from a Kasteleyn orientation
//! and a positive boundary labeling.  This crate implements that reduction
//! end to end with exact rational arithmetic, together with:
//!
//! * planar embeddings with exact rational coordinates, face tracing and
//!   circuit/enclosure queries ([`embedding`]);
//! * reduction of an arbitrary planar graph to an *enclosed* graph whose
//!   boundary is an even circuit ([`reduce`]);
//! * Kasteleyn orientations, boundary labelings, covering signs, and the
//!   auxiliary ring graph with its covering bijection ([`kasteleyn`]);
//! * sparse exact polynomials and Pfaffian evaluation
//!   ([`poly`], [`pfaffian`]);
//! * boundary partition functions, monomer correlations and the pairing
//!   (Wick-style) formula at close packing ([`partition`]);
//! * full monomer-dimer partition functions through boundary-slit skeletons
//!   and through the interior/exterior decomposition along a Hamiltonian
//!   cycle, plus upper and lower bounds ([`fullmd`]);
//! * a definition-level brute-force oracle every fast path is tested against
//!   ([`oracle`]);
//! * stored reference matrices and polynomials ([`fixtures`]), deterministic
//!   test-graph generators ([`corpus`]), and JSON input/output ([`json`]).

#![forbid(unsafe_code)]

pub mod corpus;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod fullmd;
pub mod json;
pub mod oracle;
pub mod scalar;
pub mod kasteleyn;
pub mod partition;
pub mod poly;
pub mod pfaffian;
pub mod reduce;

pub use error::{Error, Result};
